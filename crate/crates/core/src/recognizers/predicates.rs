//! The defining conditions of each family, evaluated directly on a proposed
//! partition. Nothing here searches beyond the handful of labellings a
//! definition quantifies over, so a certificate can be replayed without
//! trusting the code that found it.

use std::sync::OnceLock;

use crate::graph::Graph;
use crate::mask::{k_subsets, Mask};
use crate::matroid::Matroid;
use crate::structures::{fan_orderings, flower_classify_in, FanCatalog, FanStart, FlowerKind};

use super::{AccordionCert, EndKind, PetalKind};

pub fn mask_of(v: &[usize]) -> Mask {
    v.iter().copied().collect()
}

/// Whether `parts` are nonempty, pairwise disjoint and cover exactly `within`.
pub fn partitions(parts: &[Mask], within: Mask) -> bool {
    let mut seen = Mask::EMPTY;
    for &p in parts {
        if p.is_empty() || !p.is_disjoint(seen) {
            return false;
        }
        seen = seen | p;
    }
    seen == within
}

fn flower_kind(m: &Matroid, parts: &[Mask], within: Mask) -> Option<FlowerKind> {
    let rep = flower_classify_in(m, parts, within).ok()?;
    rep.is_anemone.then_some(rep.subkind)
}

pub fn is_paddle(m: &Matroid, parts: &[Mask]) -> bool {
    flower_kind(m, parts, m.ground()) == Some(FlowerKind::Paddle)
}

/// Fan orderings of an even set of size ≥ 4 whose first triple is a triad;
/// for a 2-element set, its one unordered pair.
pub fn triad_first_orderings(m: &Matroid, set: Mask) -> Vec<Vec<usize>> {
    match set.len() {
        2 => vec![set.to_vec()],
        n if n >= 4 && n % 2 == 0 => fan_orderings(m, set)
            .into_iter()
            .filter(|(_, s)| *s == FanStart::Triad)
            .map(|(o, _)| o)
            .collect(),
        _ => Vec::new(),
    }
}

pub fn is_even_fan(m: &Matroid, set: Mask, min_len: usize) -> bool {
    let n = set.len();
    n >= min_len && n % 2 == 0 && (n == 2 || !fan_orderings(m, set).is_empty())
}

/// The triad condition of an even-fan-spike for one pair of petals.
pub fn efs_pair_ok(m: &Matroid, p: Mask, q: Mask) -> bool {
    let (ps, qs) = (triad_first_orderings(m, p), triad_first_orderings(m, q));
    ps.iter().any(|a| {
        qs.iter().any(|b| {
            let head = Mask::from_elems([a[0], a[1], b[0], b[1]]);
            let tail = Mask::from_elems([
                a[a.len() - 2],
                a[a.len() - 1],
                b[b.len() - 2],
                b[b.len() - 1],
            ]);
            m.is_circuit(head) && m.is_cocircuit(tail)
        })
    })
}

/// Tipless non-degenerate even-fan-spike with the given petals.
pub fn is_even_fan_spike(m: &Matroid, petals: &[Mask]) -> bool {
    petals.len() >= 3
        && partitions(petals, m.ground())
        && petals.iter().all(|&p| is_even_fan(m, p, 2))
        && flower_kind(m, petals, m.ground()) == Some(FlowerKind::SpikeLike)
        && pairs(petals.len()).all(|(i, j)| efs_pair_ok(m, petals[i], petals[j]))
}

pub fn is_degenerate_even_fan_spike(m: &Matroid, p: Mask, q: Mask) -> bool {
    partitions(&[p, q], m.ground())
        && is_even_fan(m, p, 4)
        && is_even_fan(m, q, 4)
        && efs_pair_ok(m, p, q)
}

/// Whether `set` is an even fan of length ≥ 4 with an ordering whose ends are `x` and `y`.
pub fn even_fan_with_ends(m: &Matroid, set: Mask, x: usize, y: usize) -> bool {
    set.len() >= 4
        && set.len() % 2 == 0
        && fan_orderings(m, set).iter().any(|(o, _)| {
            let (a, b) = (o[0], o[o.len() - 1]);
            (a, b) == (x, y) || (a, b) == (y, x)
        })
}

/// Even-fan-spike with tip and cotip; two petals is the degenerate case.
pub fn is_efs_tip_cotip(m: &Matroid, petals: &[Mask], x: usize, y: usize) -> bool {
    let xy = Mask::from_elems([x, y]);
    let within = m.ground() - xy;
    x != y
        && petals.len() >= 2
        && partitions(petals, within)
        && petals.iter().all(|&p| even_fan_with_ends(m, p | xy, x, y))
        && (petals.len() == 2 || flower_kind(m, petals, within) == Some(FlowerKind::SpikeLike))
}

/// The first two elements of each fan ordering of `set` that ends at `x`.
fn heads_ending_at(m: &Matroid, set: Mask, x: usize) -> Vec<Mask> {
    if set.len() == 2 {
        return vec![set];
    }
    let mut out: Vec<Mask> = fan_orderings(m, set)
        .into_iter()
        .filter(|(o, _)| o[o.len() - 1] == x)
        .map(|(o, _)| Mask::from_elems([o[0], o[1]]))
        .collect();
    out.sort();
    out.dedup();
    out
}

/// Even-fan-paddle with hinge `x`; `x` lies in the last petal.
pub fn is_even_fan_paddle(m: &Matroid, petals: &[Mask], x: usize) -> bool {
    let k = petals.len();
    if k < 3 || !partitions(petals, m.ground()) || !petals[k - 1].contains(x) {
        return false;
    }
    let last = petals[k - 1];
    if !is_even_fan(m, last, 2) || (last.len() == 2 && k != 3) {
        return false;
    }
    let full: Vec<Mask> = petals.iter().map(|p| p.with(x)).collect();
    if full[..k - 1].iter().any(|&f| !is_even_fan(m, f, 4)) {
        return false;
    }
    let heads: Vec<Vec<Mask>> = full.iter().map(|&f| heads_ending_at(m, f, x)).collect();
    heads.iter().all(|h| !h.is_empty())
        && is_paddle(m, petals)
        && pairs(k).all(|(i, j)| {
            heads[i]
                .iter()
                .any(|&a| heads[j].iter().any(|&b| m.is_circuit(a | b)))
        })
}

fn pairs(k: usize) -> impl Iterator<Item = (usize, usize)> {
    (0..k).flat_map(move |i| (i + 1..k).map(move |j| (i, j)))
}

fn canonical_k3(k: usize) -> Matroid {
    let edges = (0..k)
        .flat_map(|j| (0..3).map(move |a| (a, 3 + j)))
        .collect();
    Matroid::from_graph(&Graph::new(3 + k, edges).expect("valid")).expect("small")
}

fn k32() -> &'static Matroid {
    static M: OnceLock<Matroid> = OnceLock::new();
    M.get_or_init(|| canonical_k3(2))
}

fn k23() -> &'static Matroid {
    // Series pairs (a c_i, b c_i) in the order a c1, b c1, a c2, b c2, a c3, b c3.
    static M: OnceLock<Matroid> = OnceLock::new();
    M.get_or_init(|| {
        let g = Graph::new(5, vec![(0, 2), (1, 2), (0, 3), (1, 3), (0, 4), (1, 4)]).expect("valid");
        Matroid::from_graph(&g).expect("small")
    })
}

const PERMS3: [[usize; 3]; 6] = [
    [0, 1, 2],
    [0, 2, 1],
    [1, 0, 2],
    [1, 2, 0],
    [2, 0, 1],
    [2, 1, 0],
];

/// Labels each triad as `(u1, u2, u3)` so that petal `j` is the star of `v_j`
/// in M(K_{3,k}); `None` unless `m` is isomorphic to M(K_{3,k}) that way.
pub fn triad_paddle_labelling(m: &Matroid, petals: &[Mask]) -> Option<Vec<[usize; 3]>> {
    let k = petals.len();
    if k < 2
        || m.size() != 3 * k
        || !partitions(petals, m.ground())
        || petals.iter().any(|&p| !m.is_triad(p))
    {
        return None;
    }
    let first: [usize; 3] = petals[0].to_vec().try_into().ok()?;
    let mut labels = vec![first];
    for &p in &petals[1..] {
        let e = p.to_vec();
        let found = PERMS3
            .iter()
            .map(|s| [e[s[0]], e[s[1]], e[s[2]]])
            .find(|cand| {
                let map = [first[0], first[1], first[2], cand[0], cand[1], cand[2]];
                m.restriction_matches(k32(), &map)
            })?;
        labels.push(found);
    }
    let map: Vec<usize> = labels.iter().flatten().copied().collect();
    m.restriction_matches(&canonical_k3(k), &map)
        .then_some(labels)
}

/// Whether M restricted to the six elements `a ∪ b` is isomorphic to M(K_{2,3}).
pub fn is_mk23(m: &Matroid, set: Mask) -> bool {
    if set.len() != 6 {
        return false;
    }
    let e = set.to_vec();
    // Every perfect matching of the six elements into series pairs.
    let rest: Vec<usize> = e[1..].to_vec();
    for (i, &p1) in rest.iter().enumerate() {
        let left: Vec<usize> = rest
            .iter()
            .enumerate()
            .filter(|&(j, _)| j != i)
            .map(|(_, &x)| x)
            .collect();
        for (j, &p2) in left[1..].iter().enumerate() {
            let last: Vec<usize> = left[1..]
                .iter()
                .enumerate()
                .filter(|&(l, _)| l != j)
                .map(|(_, &x)| x)
                .collect();
            let map = [e[0], p1, left[0], p2, last[0], last[1]];
            if m.restriction_matches(k23(), &map) {
                return true;
            }
        }
    }
    false
}

/// Some 4-element circuit `C` with `{a, b} ⊆ C ⊆ {a, b} ∪ t`.
pub fn affixed_circuit(m: &Matroid, a: usize, b: usize, t: Mask) -> bool {
    k_subsets(t, 2).any(|s| m.is_circuit(s.with(a).with(b)))
}

/// `x` is a 4-element fan affixed to the triad `t`.
pub fn is_fan4_affixed(m: &Matroid, x: Mask, t: Mask) -> bool {
    if x.len() != 4 || !x.is_disjoint(t) || !m.is_triad(t) {
        return false;
    }
    fan_orderings(m, x).into_iter().any(|(o, s)| {
        s == FanStart::Triad
            && m.closure(t, false).contains(o[3])
            && affixed_circuit(m, o[0], o[1], t)
            && affixed_circuit(m, o[0], o[2], t)
    })
}

/// Hinged triad-paddle with hinge `x`; the last petal is `P_m`.
pub fn is_hinged_triad_paddle(m: &Matroid, petals: &[Mask], x: usize) -> bool {
    let k = petals.len();
    if k < 3 || !partitions(petals, m.ground().without(x)) || petals.iter().any(|&p| !m.is_triad(p))
    {
        return false;
    }
    let pm = petals[k - 1];
    let mut parts = petals.to_vec();
    parts[k - 1] = pm.with(x);
    m.closure(pm, false).contains(x)
        && fan_orderings(m, pm.with(x)).is_empty()
        && is_paddle(m, &parts)
        && petals[..k - 1]
            .iter()
            .all(|&p| is_fan4_affixed(m, p.with(x), pm) || is_mk23(m, p | pm))
}

/// Paddle whose deletion of the last petal is a triad-paddle on the rest.
pub fn is_quasi_triad_paddle(m: &Matroid, petals: &[Mask]) -> bool {
    let k = petals.len();
    if k < 3 || !partitions(petals, m.ground()) || !is_paddle(m, petals) {
        return false;
    }
    let last = petals[k - 1];
    let Ok(rest) = m.delete(last) else {
        return false;
    };
    // Reindex the remaining petals to the compacted ground set.
    let kept: Vec<usize> = (m.ground() - last).to_vec();
    let reindex = |p: Mask| {
        p.iter()
            .map(|e| kept.iter().position(|&k| k == e).expect("kept"))
            .collect::<Mask>()
    };
    let inner: Vec<Mask> = petals[..k - 1].iter().map(|&p| reindex(p)).collect();
    triad_paddle_labelling(&rest, &inner).is_some()
}

pub fn is_augmented_fan_affixed(m: &Matroid, x: Mask, t: Mask) -> bool {
    x.len() == 6
        && x.iter().any(|h| {
            fan_orderings(m, x.without(h)).into_iter().any(|(e, s)| {
                s == FanStart::Triad
                    && m.is_circuit(Mask::from_elems([e[0], e[2], e[4], h]))
                    && t.iter().any(|t1| {
                        even_fan_with_ends(m, t.with(h), h, t1)
                            && (t.without(t1)).iter().any(|t2| {
                                let t3 = (t.without(t1).without(t2)).first().expect("triad");
                                m.is_circuit(Mask::from_elems([t1, t2, e[0], e[1]]))
                                    && m.is_circuit(Mask::from_elems([t1, t3, e[3], e[4]]))
                            })
                    })
            })
        })
}

pub fn is_co_augmented_fan_affixed(m: &Matroid, x: Mask, t: Mask) -> bool {
    x.len() == 6
        && x.iter().any(|h| {
            fan_orderings(m, x.without(h)).into_iter().any(|(e, s)| {
                s == FanStart::Triangle
                    && m.is_cocircuit(Mask::from_elems([e[0], e[2], e[4], h]))
                    && t.iter().any(|t1| {
                        (t.without(t1)).iter().any(|t2| {
                            let t3 = (t.without(t1).without(t2)).first().expect("triad");
                            m.is_circuit(Mask::from_elems([t1, t2, e[0], h]))
                                && m.is_circuit(Mask::from_elems([t1, t3, e[4], h]))
                        })
                    })
            })
        })
}

fn two_affixed(m: &Matroid, x: Mask, h: usize, t: Mask) -> bool {
    x.without(h)
        .iter()
        .filter(|&xi| affixed_circuit(m, h, xi, t))
        .count()
        >= 2
}

pub fn is_quad_affixed(m: &Matroid, x: Mask, t: Mask) -> bool {
    x.len() == 4 && m.is_quad(x) && x.iter().all(|h| two_affixed(m, x, h, t))
}

pub fn is_near_quad_affixed(m: &Matroid, x: Mask, t: Mask) -> bool {
    x.len() == 4
        && m.is_cocircuit(x)
        && x.iter()
            .any(|h| m.is_triangle(x.without(h)) && two_affixed(m, x, h, t))
}

pub fn petal_affixed(m: &Matroid, kind: PetalKind, x: Mask, t: Mask) -> bool {
    match kind {
        PetalKind::AugmentedFan => is_augmented_fan_affixed(m, x, t),
        PetalKind::CoAugmentedFan => is_co_augmented_fan_affixed(m, x, t),
        PetalKind::Quad => is_quad_affixed(m, x, t),
        PetalKind::NearQuad => is_near_quad_affixed(m, x, t),
    }
}

/// The petal kind of a quasi-triad-paddle, if the last petal is affixed to
/// every other petal in one of the four ways.
pub fn quasi_triad_paddle_kind(m: &Matroid, petals: &[Mask]) -> Option<PetalKind> {
    if !is_quasi_triad_paddle(m, petals) {
        return None;
    }
    let (last, rest) = petals.split_last()?;
    PetalKind::ALL
        .into_iter()
        .find(|&kind| rest.iter().all(|&t| petal_affixed(m, kind, *last, t)))
}

pub fn is_tri_paddle_copaddle(m: &Matroid, p: &[Mask], q: &[Mask]) -> bool {
    let (s, t) = (p.len(), q.len());
    if s < 2 || t < 2 {
        return false;
    }
    let all: Vec<Mask> = p.iter().chain(q).copied().collect();
    if !partitions(&all, m.ground()) {
        return false;
    }
    let pu = p.iter().fold(Mask::EMPTY, |a, &b| a | b);
    let qu = q.iter().fold(Mask::EMPTY, |a, &b| a | b);
    let mut primal = p.to_vec();
    primal.push(qu);
    let mut dual = q.to_vec();
    dual.push(pu);
    is_quasi_triad_paddle(m, &primal) && is_quasi_triad_paddle(&m.dual(), &dual)
}

/// `t` is a triangle (or triad) with no element extending it to a 4-element fan.
pub fn in_no_four_fan(m: &Matroid, t: Mask) -> bool {
    (m.ground() - t)
        .iter()
        .all(|z| fan_orderings(m, t.with(z)).is_empty())
}

fn is_maximal_fan(cat: &FanCatalog, set: Mask) -> bool {
    cat.is_fan(set) && !cat.orderings.keys().any(|&k| k != set && set.is_subset(k))
}

/// The end `g` of the fan `f`; `dual` reads the right-hand definitions,
/// which are the left-hand ones in M*.
fn end_ok(m: &Matroid, cat: &FanCatalog, g: Mask, kind: EndKind, f: &[usize], right: bool) -> bool {
    // Work from the left: for the right-hand end, reverse F and swap the roles of
    // circuits and cocircuits.
    let (e1, e2) = if right {
        (f[f.len() - 1], f[f.len() - 2])
    } else {
        (f[0], f[1])
    };
    let tri = |x: Mask| {
        if right {
            m.is_triad(x)
        } else {
            m.is_triangle(x)
        }
    };
    let cocirc = |x: Mask| {
        if right {
            m.is_circuit(x)
        } else {
            m.is_cocircuit(x)
        }
    };
    let first = if right {
        FanStart::Triad
    } else {
        FanStart::Triangle
    };
    match (kind, right) {
        (EndKind::Fan, _) => {
            let x = g.with(e1);
            g.len() == 4
                && is_maximal_fan(cat, x)
                && cat.orderings_of(x).iter().any(|(o, s)| {
                    o[0] == e1 && *s == first && cocirc(Mask::from_elems([e1, e2, o[2], o[4]]))
                })
        }
        (EndKind::Quad, _) => {
            g.len() == 4
                && m.is_quad(g)
                && g.without(g.first().expect("nonempty"))
                    .iter()
                    .any(|partner| {
                        let a = Mask::from_elems([g.first().expect("nonempty"), partner]);
                        let b = g - a;
                        let (av, bv) = (a.to_vec(), b.to_vec());
                        tri(a.with(e1))
                            && tri(b.with(e1))
                            && in_no_four_fan(m, a.with(e1))
                            && in_no_four_fan(m, b.with(e1))
                            && [(0, 0), (0, 1)].iter().any(|&(i, j)| {
                                cocirc(Mask::from_elems([e1, e2, av[i], bv[j]]))
                                    && cocirc(Mask::from_elems([e1, e2, av[1 - i], bv[1 - j]]))
                            })
                    })
        }
        (EndKind::Triangle, false) | (EndKind::Triad, true) => {
            g.len() == 2
                && tri(g.with(e1))
                && in_no_four_fan(m, g.with(e1))
                && cocirc(g.with(e1).with(e2))
        }
        _ => false,
    }
}

pub fn is_accordion(m: &Matroid, cert: &AccordionCert) -> bool {
    FanCatalog::build(m).is_ok_and(|cat| is_accordion_in(m, &cat, cert))
}

/// [`is_accordion`] against a prebuilt fan catalog.
pub fn is_accordion_in(m: &Matroid, cat: &FanCatalog, cert: &AccordionCert) -> bool {
    let f = &cert.fan;
    let (g, h, fm) = (mask_of(&cert.left), mask_of(&cert.right), mask_of(f));
    if f.len() < 4 || f.len() % 2 == 1 || !partitions(&[g, fm, h], m.ground()) {
        return false;
    }
    if !crate::structures::is_fan_ordering_from(m, f, FanStart::Triangle) {
        return false;
    }
    is_maximal_fan(cat, fm)
        && end_ok(m, cat, g, cert.left_kind, f, false)
        && end_ok(m, cat, h, cert.right_kind, f, true)
}

/// The local-connectivity values the structure lemmas give for accordion ends.
pub fn accordion_lemmas_hold(m: &Matroid, cert: &AccordionCert) -> bool {
    let Ok(cat) = FanCatalog::build(m) else {
        return false;
    };
    let f = &cert.fan;
    let e1 = f[0];
    let (g, h) = (mask_of(&cert.left), mask_of(&cert.right));
    let pi = |x: Mask, y: Mask| m.local_conn(x, y, false);
    let pid = |x: Mask, y: Mask| m.local_conn(x, y, true);
    match cert.left_kind {
        EndKind::Fan => cat.orderings_of(g.with(e1)).iter().any(|(o, s)| {
            o[0] == e1
                && *s == FanStart::Triangle
                && pi(Mask::from_elems([o[1], o[3]]), h) == 1
                && pid(Mask::from_elems([o[3], o[4]]), h) == 1
        }),
        EndKind::Triangle => pi(g, h) == 1 && pid(g, h) == 1,
        EndKind::Quad => {
            let e = g.to_vec();
            // Some labelling a1 a2 b1 b2 with the triangle and cocircuit pattern.
            [[0, 1, 2, 3], [0, 2, 1, 3], [0, 3, 1, 2]]
                .iter()
                .any(|&[a1, a2, b1, b2]| {
                    [
                        (e[a1], e[a2], e[b1], e[b2]),
                        (e[a1], e[a2], e[b2], e[b1]),
                        (e[a2], e[a1], e[b1], e[b2]),
                        (e[a2], e[a1], e[b2], e[b1]),
                    ]
                    .iter()
                    .any(|&(a1, a2, b1, b2)| {
                        m.is_triangle(Mask::from_elems([e1, a1, a2]))
                            && m.is_triangle(Mask::from_elems([e1, b1, b2]))
                            && m.is_cocircuit(Mask::from_elems([e1, f[1], a1, b1]))
                            && m.is_cocircuit(Mask::from_elems([e1, f[1], a2, b2]))
                            && pi(Mask::from_elems([a1, b1]), h) == 1
                            && pi(Mask::from_elems([a2, b2]), h) == 1
                            && pid(Mask::from_elems([a1, a2]), h) == 1
                            && pid(Mask::from_elems([b1, b2]), h) == 1
                    })
                })
        }
        EndKind::Triad => false,
    }
}
