//! The rank tables and the kernels built on them, checked against rank
//! functions written from scratch here.

use detachable::connectivity::is_3connected;
use detachable::detach::{graph_pair_status, pair_status};
use detachable::gfp::LinearRep;
use detachable::io::{decode_graph6, encode_graph6};
use detachable::{Graph, Mask, Matroid};
use proptest::prelude::*;

fn uf_rank(n: usize, edges: &[(usize, usize)], x: u32) -> usize {
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(p: &mut [usize], mut v: usize) -> usize {
        while p[v] != v {
            p[v] = p[p[v]];
            v = p[v];
        }
        v
    }
    let mut r = 0;
    for (i, &(u, v)) in edges.iter().enumerate() {
        if x >> i & 1 == 1 {
            let (a, b) = (find(&mut parent, u), find(&mut parent, v));
            if a != b {
                parent[a] = b;
                r += 1;
            }
        }
    }
    r
}

fn gauss_rank(p: i64, cols: &[Vec<i64>], x: u32) -> usize {
    let mut rows: Vec<Vec<i64>> = cols
        .iter()
        .enumerate()
        .filter(|(i, _)| x >> i & 1 == 1)
        .map(|(_, c)| c.clone())
        .collect();
    let width = cols.first().map_or(0, Vec::len);
    let mut r = 0;
    for c in 0..width {
        let Some(piv) = (r..rows.len()).find(|&i| rows[i][c].rem_euclid(p) != 0) else {
            continue;
        };
        rows.swap(r, piv);
        let inv = (1..p)
            .find(|k| k * rows[r][c].rem_euclid(p) % p == 1)
            .unwrap();
        for i in 0..rows.len() {
            if i != r {
                let f = rows[i][c].rem_euclid(p) * inv % p;
                for k in 0..width {
                    rows[i][k] = (rows[i][k] - f * rows[r][k]).rem_euclid(p);
                }
            }
        }
        r += 1;
    }
    r
}

fn oracle_3connected(n: usize, rank: &dyn Fn(u32) -> usize) -> bool {
    let full = (1u32 << n) - 1;
    let rm = rank(full);
    (1..full).all(|x| {
        let lam = rank(x) + rank(full & !x) - rm;
        let (a, b) = (x.count_ones() as usize, n - x.count_ones() as usize);
        !(lam == 0 || (lam == 1 && a >= 2 && b >= 2))
    })
}

/// Rank in `M \ deleted / contracted` on the kept elements, renumbered in order.
fn minor_rank(
    n: usize,
    rank: &dyn Fn(u32) -> usize,
    deleted: u32,
    contracted: u32,
) -> impl Fn(u32) -> usize + '_ {
    let kept: Vec<usize> = (0..n)
        .filter(|&i| (deleted | contracted) >> i & 1 == 0)
        .collect();
    let rc = rank(contracted);
    move |y: u32| {
        let x = kept
            .iter()
            .enumerate()
            .filter(|(j, _)| y >> j & 1 == 1)
            .fold(0u32, |a, (_, &i)| a | 1 << i);
        rank(x | contracted) - rc
    }
}

fn graphs(max_v: usize, max_e: usize) -> impl Strategy<Value = Graph> {
    (2..=max_v).prop_flat_map(move |n| {
        prop::collection::vec((0..n, 0..n), 1..=max_e).prop_map(move |e| Graph::new(n, e).unwrap())
    })
}

fn dense_simple(max_v: usize) -> impl Strategy<Value = Graph> {
    (5..=max_v).prop_flat_map(|n| {
        let all: Vec<(usize, usize)> = (0..n)
            .flat_map(|a| (a + 1..n).map(move |b| (a, b)))
            .collect();
        prop::collection::vec(prop::bool::weighted(0.7), all.len()).prop_map(move |keep| {
            Graph::new(
                n,
                all.iter()
                    .zip(&keep)
                    .filter(|(_, &k)| k)
                    .map(|(&e, _)| e)
                    .collect(),
            )
            .unwrap()
        })
    })
}

fn matrices() -> impl Strategy<Value = (i64, Vec<Vec<i64>>)> {
    (
        prop::sample::select(vec![2i64, 3, 5, 7]),
        1..=4usize,
        1..=10usize,
    )
        .prop_flat_map(|(p, r, n)| {
            prop::collection::vec(prop::collection::vec(0..p, r), n).prop_map(move |cols| (p, cols))
        })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn graphic_rank_matches_union_find(g in graphs(7, 12)) {
        let m = Matroid::from_graph(&g).unwrap();
        for x in 0u32..1 << g.edge_count() {
            prop_assert_eq!(m.rank(Mask(x)), uf_rank(g.vertex_count(), g.edges(), x));
        }
    }

    #[test]
    fn linear_rank_matches_elimination((p, cols) in matrices()) {
        let rep = LinearRep::from_columns(p as u32, cols[0].len(), &cols).unwrap();
        let m = Matroid::from_gfp(&rep).unwrap();
        for x in 0u32..1 << cols.len() {
            prop_assert_eq!(m.rank(Mask(x)), gauss_rank(p, &cols, x));
        }
        prop_assert!(m.rank_axiom_violation().is_none());
    }

    #[test]
    fn dual_rank_and_connectivity((p, cols) in matrices()) {
        let m = Matroid::from_gfp(&LinearRep::from_columns(p as u32, cols[0].len(), &cols).unwrap()).unwrap();
        let d = m.dual();
        let e = m.ground();
        for x in e.subsets() {
            prop_assert_eq!(d.rank(x), x.len() + gauss_rank(p, &cols, (e - x).0) - gauss_rank(p, &cols, e.0));
            prop_assert_eq!(m.lambda(x), m.lambda(e - x));
            prop_assert_eq!(m.lambda(x), d.lambda(x));
        }
        let dd = d.dual();
        prop_assert_eq!(dd.table(), m.table());
    }

    #[test]
    fn closure_is_the_spanned_elements((p, cols) in matrices()) {
        let m = Matroid::from_gfp(&LinearRep::from_columns(p as u32, cols[0].len(), &cols).unwrap()).unwrap();
        for x in m.ground().subsets() {
            let want: Mask = m.ground().iter().filter(|&e| gauss_rank(p, &cols, x.with(e).0) == gauss_rank(p, &cols, x.0)).collect();
            prop_assert_eq!(m.closure(x, false), want);
        }
    }

    #[test]
    fn minors_match_the_rank_formula(g in graphs(6, 10), d in any::<u32>(), c in any::<u32>()) {
        let n = g.edge_count();
        let full = (1u32 << n) - 1;
        let (d, c) = (d & full, c & full & !d);
        prop_assume!((d | c) != full);
        let m = Matroid::from_graph(&g).unwrap();
        let minor = m.minor2(Mask(d), Mask(c)).unwrap();
        let rank = |x: u32| uf_rank(g.vertex_count(), g.edges(), x);
        let want = minor_rank(n, &rank, d, c);
        for y in minor.ground().subsets() {
            prop_assert_eq!(minor.rank(y), want(y.0));
        }
    }

    #[test]
    fn three_connectivity_matches_brute_force(g in graphs(6, 11)) {
        let m = Matroid::from_graph(&g).unwrap();
        let rank = |x: u32| uf_rank(g.vertex_count(), g.edges(), x);
        prop_assert_eq!(is_3connected(&m), oracle_3connected(g.edge_count(), &rank));
    }

    #[test]
    fn pair_flags_match_brute_force(g in dense_simple(6)) {
        let n = g.edge_count();
        prop_assume!(n >= 6);
        let m = Matroid::from_graph(&g).unwrap();
        let rank = |x: u32| uf_rank(g.vertex_count(), g.edges(), x);
        for e in 0..n {
            for f in e + 1..n {
                let s = 1u32 << e | 1 << f;
                let v = pair_status(&m, e, f).unwrap();
                prop_assert_eq!(v.delete_ok, oracle_3connected(n - 2, &minor_rank(n, &rank, s, 0)));
                prop_assert_eq!(v.contract_ok, oracle_3connected(n - 2, &minor_rank(n, &rank, 0, s)));
            }
        }
    }

    #[test]
    fn graph_and_matroid_pair_flags_agree(g in dense_simple(7)) {
        prop_assume!(g.edge_count() >= 6 && g.is_simple_3connected());
        let m = Matroid::from_graph(&g).unwrap();
        for e in 0..g.edge_count() {
            for f in e + 1..g.edge_count() {
                prop_assert_eq!(graph_pair_status(&g, e, f).unwrap(), pair_status(&m, e, f).unwrap());
            }
        }
    }

    #[test]
    fn graph6_round_trips(g in dense_simple(12)) {
        let s = encode_graph6(&g).unwrap();
        let h = decode_graph6(&s).unwrap();
        prop_assert_eq!(h.adjacency(), g.adjacency());
        prop_assert_eq!(encode_graph6(&h).unwrap(), s);
    }
}
