//! Uniform random graphs with a fixed vertex and edge count, kept only when
//! simple and 3-connected.

use detachable::{Error, Graph, Result};
use rand::seq::index::sample;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub const MAX_ATTEMPTS: u64 = 1_000_000;

/// Vertex counts the sweep uses for graphs with `edges` edges.
pub fn vertex_counts(edges: usize) -> Vec<usize> {
    (6..=10)
        .filter(|&v| 3 * v <= 2 * edges && edges <= v * (v - 1) / 2)
        .collect()
}

/// One draw from the `edges`-subsets of the complete graph on `vertices`.
pub fn draw<R: Rng>(rng: &mut R, vertices: usize, edges: usize) -> Graph {
    let all: Vec<(usize, usize)> = (0..vertices)
        .flat_map(|a| (a + 1..vertices).map(move |b| (a, b)))
        .collect();
    let mut picked = sample(rng, all.len(), edges).into_vec();
    picked.sort_unstable();
    Graph::new(vertices, picked.into_iter().map(|i| all[i]).collect()).expect("vertices in range")
}

/// Rejection sampling up to `max_attempts` draws.
pub fn sample_3connected<R: Rng>(
    rng: &mut R,
    vertices: usize,
    edges: usize,
    max_attempts: u64,
) -> Result<Graph> {
    if edges > vertices * (vertices - 1) / 2 || 3 * vertices > 2 * edges {
        return Err(Error::Parameter(format!(
            "no simple 3-connected graph has {vertices} vertices and {edges} edges"
        )));
    }
    for _ in 0..max_attempts {
        let g = draw(rng, vertices, edges);
        if g.is_simple_3connected() {
            return Ok(g);
        }
    }
    Err(Error::Sampling(max_attempts))
}

/// The generator for instance `index` of a run seeded with `seed`. Each
/// instance owns its stream, so results do not depend on scheduling.
pub fn instance_rng(seed: u64, index: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index);
    rng
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Sampled {
    pub index: usize,
    pub vertices: usize,
    pub graph: Graph,
}

/// `count` graphs with edge counts cycling through `lo..=hi` and, within an
/// edge count, vertex counts cycling through [`vertex_counts`].
pub fn sample_sweep(seed: u64, count: usize, lo: usize, hi: usize) -> Result<Vec<Sampled>> {
    use rayon::prelude::*;
    if lo > hi {
        return Err(Error::Parameter(format!("empty edge range {lo}..={hi}")));
    }
    let span = hi - lo + 1;
    (0..count)
        .into_par_iter()
        .map(|index| {
            let edges = lo + index % span;
            let vs = vertex_counts(edges);
            if vs.is_empty() {
                return Err(Error::Parameter(format!(
                    "no vertex count fits {edges} edges"
                )));
            }
            let vertices = vs[(index / span) % vs.len()];
            let mut rng = instance_rng(seed, index as u64);
            let graph = sample_3connected(&mut rng, vertices, edges, MAX_ATTEMPTS)?;
            Ok(Sampled {
                index,
                vertices,
                graph,
            })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sweep_is_deterministic() {
        let a = sample_sweep(7, 12, 13, 16).unwrap();
        let b = sample_sweep(7, 12, 13, 16).unwrap();
        assert_eq!(a, b);
        assert!(a
            .iter()
            .all(|s| s.graph.is_simple_3connected() && (13..=16).contains(&s.graph.edge_count())));
    }

    #[test]
    fn impossible_counts_are_rejected() {
        let mut rng = instance_rng(0, 0);
        assert!(matches!(
            sample_3connected(&mut rng, 10, 13, 10),
            Err(Error::Parameter(_))
        ));
        assert!(matches!(
            sample_3connected(&mut rng, 6, 9, 0),
            Err(Error::Sampling(0))
        ));
    }
}
