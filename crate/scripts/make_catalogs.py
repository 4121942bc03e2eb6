"""Writes the graph6 catalogs under catalogs/.

atlas.g6      every graph in the networkx atlas (up to 7 vertices), for codec round trips
dense3c.g6    simple 3-connected graphs on 6 to 9 vertices with at least 13 edges,
              one per isomorphism class found by a seeded random search
"""

import random
from pathlib import Path

import networkx as nx

out = Path(__file__).resolve().parent.parent / "catalogs"
out.mkdir(exist_ok=True)


def g6(g):
    return nx.to_graph6_bytes(g, header=False).decode().strip()


atlas = [g for g in nx.graph_atlas_g() if g.number_of_nodes() > 0]
(out / "atlas.g6").write_text("".join(g6(g) + "\n" for g in atlas))

rng = random.Random(0)
seen = {}
for _ in range(20000):
    n = rng.randint(6, 9)
    m = rng.randint(max(13, (3 * n + 1) // 2), min(18, n * (n - 1) // 2))
    g = nx.gnm_random_graph(n, m, seed=rng.randrange(1 << 30))
    if nx.node_connectivity(g) < 3:
        continue
    h = nx.weisfeiler_lehman_graph_hash(g)
    if any(nx.is_isomorphic(g, k) for k in seen.get(h, [])):
        continue
    seen.setdefault(h, []).append(g)
dense = sorted((g for gs in seen.values() for g in gs), key=lambda g: (g.number_of_edges(), g6(g)))
(out / "dense3c.g6").write_text("".join(g6(g) + "\n" for g in dense))
print(len(atlas), len(dense))
