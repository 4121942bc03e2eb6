//! Small circuits and cocircuits, fans, M(K4)-separators and flowers.

use std::collections::{BTreeMap, HashSet};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::mask::{k_subsets, Mask};
use crate::matroid::Matroid;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum DepKind {
    Circuit,
    Cocircuit,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SmallSet {
    pub mask: Mask,
    pub kind: DepKind,
    pub size: usize,
}

/// All circuits (or cocircuits) with at most `kmax` elements, ascending by mask.
pub fn small_dependents(m: &Matroid, kind: DepKind, kmax: usize) -> Result<Vec<SmallSet>> {
    if !(3..=5).contains(&kmax) {
        return Err(Error::arg(format!("kmax must be 3, 4 or 5, not {kmax}")));
    }
    let mut out: Vec<SmallSet> = (1..=kmax)
        .flat_map(|k| k_subsets(m.ground(), k))
        .filter(|&x| match kind {
            DepKind::Circuit => m.is_circuit(x),
            DepKind::Cocircuit => m.is_cocircuit(x),
        })
        .map(|mask| SmallSet {
            mask,
            kind,
            size: mask.len(),
        })
        .collect();
    out.sort_by_key(|s| s.mask);
    Ok(out)
}

pub fn triangles(m: &Matroid) -> Vec<Mask> {
    k_subsets(m.ground(), 3)
        .filter(|&x| m.is_triangle(x))
        .collect()
}

pub fn triads(m: &Matroid) -> Vec<Mask> {
    k_subsets(m.ground(), 3)
        .filter(|&x| m.is_triad(x))
        .collect()
}

pub fn quads(m: &Matroid) -> Vec<Mask> {
    k_subsets(m.ground(), 4).filter(|&x| m.is_quad(x)).collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FanStart {
    Triangle,
    Triad,
}

impl FanStart {
    pub fn flip(self) -> FanStart {
        match self {
            FanStart::Triangle => FanStart::Triad,
            FanStart::Triad => FanStart::Triangle,
        }
    }

    fn holds(self, m: &Matroid, t: Mask) -> bool {
        match self {
            FanStart::Triangle => m.is_triangle(t),
            FanStart::Triad => m.is_triad(t),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Fan {
    pub ordering: Vec<usize>,
    /// Kind of the first triple; `None` for 2-element fans.
    pub start: Option<FanStart>,
    pub maximal: bool,
    /// The whole ground set of a wheel or whirl, read cyclically.
    #[serde(default)]
    pub cyclic: bool,
}

impl Fan {
    pub fn mask(&self) -> Mask {
        self.ordering.iter().copied().collect()
    }

    pub fn len(&self) -> usize {
        self.ordering.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ordering.is_empty()
    }
}

/// Whether consecutive triples of `ord` alternate starting with `start`.
pub fn is_fan_ordering_from(m: &Matroid, ord: &[usize], start: FanStart) -> bool {
    let distinct = ord.iter().copied().collect::<Mask>().len() == ord.len();
    distinct
        && ord.len() >= 3
        && ord.windows(3).enumerate().all(|(i, w)| {
            let kind = if i % 2 == 0 { start } else { start.flip() };
            kind.holds(m, Mask::from_elems(w.iter().copied()))
        })
}

/// The start kind under which `ord` is a fan ordering (triangle preferred).
pub fn fan_start(m: &Matroid, ord: &[usize]) -> Option<FanStart> {
    [FanStart::Triangle, FanStart::Triad]
        .into_iter()
        .find(|&s| is_fan_ordering_from(m, ord, s))
}

/// Every fan ordering of exactly the elements of `set` (|set| ≥ 3), with its
/// start kind.
pub fn fan_orderings(m: &Matroid, set: Mask) -> Vec<(Vec<usize>, FanStart)> {
    let mut out = Vec::new();
    if set.len() < 3 {
        return out;
    }
    let elems = set.to_vec();
    for start in [FanStart::Triangle, FanStart::Triad] {
        for &a in &elems {
            for &b in &elems {
                for &c in &elems {
                    if a == b || b == c || a == c || !start.holds(m, Mask::from_elems([a, b, c])) {
                        continue;
                    }
                    let mut seq = vec![a, b, c];
                    extend_within(m, set, &mut seq, start.flip(), &mut |s| {
                        if s.len() == set.len() {
                            out.push((s.to_vec(), start));
                        }
                    });
                }
            }
        }
    }
    out
}

/// Depth-first extension of `seq` by elements of `within`; `next` is the kind
/// the next triple must have. Calls `visit` on every sequence reached,
/// including the initial one.
fn extend_within(
    m: &Matroid,
    within: Mask,
    seq: &mut Vec<usize>,
    next: FanStart,
    visit: &mut dyn FnMut(&[usize]),
) {
    visit(seq);
    let used: Mask = seq.iter().copied().collect();
    let (b, c) = (seq[seq.len() - 2], seq[seq.len() - 1]);
    for d in (within - used).iter() {
        if next.holds(m, Mask::from_elems([b, c, d])) {
            seq.push(d);
            extend_within(m, within, seq, next.flip(), visit);
            seq.pop();
        }
    }
}

/// Every fan of length ≥ 3 in a matroid, with all of its orderings.
#[derive(Clone, Debug, Default)]
pub struct FanCatalog {
    /// Fan set → its orderings (both directions, all middle-pair variants).
    pub orderings: BTreeMap<Mask, Vec<(Vec<usize>, FanStart)>>,
    /// A cyclic ordering of the ground set when the matroid is a wheel or whirl.
    pub cyclic: Option<Vec<usize>>,
}

/// Limit on the number of fan orderings walked while building a catalog.
pub const FAN_NODE_CAP: u64 = 1_000_000;

impl FanCatalog {
    pub fn build(m: &Matroid) -> Result<FanCatalog> {
        let mut cat = FanCatalog::default();
        let mut nodes = 0u64;
        let all = m.ground();
        let tris = triangles(m);
        let tds = triads(m);
        for (start, seeds) in [(FanStart::Triangle, &tris), (FanStart::Triad, &tds)] {
            for t in seeds {
                let e = t.to_vec();
                for (a, b, c) in [
                    (0, 1, 2),
                    (0, 2, 1),
                    (1, 0, 2),
                    (1, 2, 0),
                    (2, 0, 1),
                    (2, 1, 0),
                ] {
                    let mut seq = vec![e[a], e[b], e[c]];
                    let mut overflow = false;
                    extend_within(m, all, &mut seq, start.flip(), &mut |s| {
                        nodes += 1;
                        if nodes > FAN_NODE_CAP {
                            overflow = true;
                            return;
                        }
                        let key: Mask = s.iter().copied().collect();
                        cat.orderings
                            .entry(key)
                            .or_default()
                            .push((s.to_vec(), start));
                    });
                    if overflow {
                        return Err(Error::SearchCap(FAN_NODE_CAP));
                    }
                }
            }
        }
        for v in cat.orderings.values_mut() {
            v.sort();
            v.dedup();
        }
        cat.cyclic = cyclic_ordering(m, &cat);
        Ok(cat)
    }

    /// Fan sets not strictly contained in another fan set.
    pub fn maximal_sets(&self) -> Vec<Mask> {
        let keys: Vec<Mask> = self.orderings.keys().copied().collect();
        keys.iter()
            .copied()
            .filter(|&k| !keys.iter().any(|&o| o != k && k.is_subset(o)))
            .collect()
    }

    pub fn is_fan(&self, set: Mask) -> bool {
        self.orderings.contains_key(&set)
    }

    pub fn orderings_of(&self, set: Mask) -> &[(Vec<usize>, FanStart)] {
        self.orderings.get(&set).map_or(&[], |v| v.as_slice())
    }

    /// The canonical (lexicographically least) ordering of a fan set.
    pub fn canonical(&self, set: Mask) -> Option<Fan> {
        let (ord, start) = self.orderings.get(&set)?.iter().min()?.clone();
        Some(Fan {
            ordering: ord,
            start: Some(start),
            maximal: false,
            cyclic: false,
        })
    }
}

/// A cyclic ordering of E in which every three cyclically consecutive
/// elements alternate between triangles and triads, starting with a triangle.
fn cyclic_ordering(m: &Matroid, cat: &FanCatalog) -> Option<Vec<usize>> {
    let n = m.size();
    if n < 6 || n % 2 == 1 {
        return None;
    }
    let full = cat.orderings.get(&m.ground())?;
    full.iter()
        .filter(|(ord, start)| *start == FanStart::Triangle && closes_cyclically(m, ord))
        .map(|(ord, _)| ord.clone())
        .min()
}

/// Whether a triangle-first fan ordering of even length wraps around.
pub fn closes_cyclically(m: &Matroid, ord: &[usize]) -> bool {
    let n = ord.len();
    n >= 6
        && n % 2 == 0
        && (0..n).all(|i| {
            let t = Mask::from_elems([ord[i], ord[(i + 1) % n], ord[(i + 2) % n]]);
            if i % 2 == 0 {
                m.is_triangle(t)
            } else {
                m.is_triad(t)
            }
        })
}

/// The maximal fans of length ≥ 3, each under its canonical ordering. A wheel
/// or whirl comes back as one cyclic fan covering the ground set.
pub fn maximal_fans(m: &Matroid) -> Result<Vec<Fan>> {
    let cat = FanCatalog::build(m)?;
    Ok(maximal_fans_in(&cat))
}

pub fn maximal_fans_in(cat: &FanCatalog) -> Vec<Fan> {
    if let Some(c) = &cat.cyclic {
        return vec![Fan {
            ordering: c.clone(),
            start: Some(FanStart::Triangle),
            maximal: true,
            cyclic: true,
        }];
    }
    cat.maximal_sets()
        .into_iter()
        .filter_map(|s| cat.canonical(s))
        .map(|f| Fan { maximal: true, ..f })
        .collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum EndsFlag {
    /// Length ≥ 4: the ends are determined.
    Unique,
    /// Length 3: every element is an end under some ordering.
    Triple,
    /// Length 2: both elements are ends.
    Pair,
}

pub fn fan_ends(f: &Fan) -> Result<((usize, usize), EndsFlag)> {
    let n = f.ordering.len();
    if n < 2 {
        return Err(Error::arg("a fan has at least two elements"));
    }
    let ends = (f.ordering[0], f.ordering[n - 1]);
    let flag = match n {
        2 => EndsFlag::Pair,
        3 => EndsFlag::Triple,
        _ => EndsFlag::Unique,
    };
    Ok((ends, flag))
}

/// Whether some labeling `{a,b,c,x,y,z}` of the 6-set has `{x,y,z}` a triad
/// and `{a,b,c}`, `{a,x,y}`, `{b,x,z}`, `{c,y,z}` triangles.
pub fn is_mk4_separator(m: &Matroid, x: Mask) -> Result<bool> {
    if x.len() != 6 {
        return Err(Error::arg(format!(
            "an M(K4)-separator has 6 elements, not {}",
            x.len()
        )));
    }
    for t in k_subsets(x, 3) {
        if !m.is_triad(t) || !m.is_triangle(x - t) {
            continue;
        }
        let [p, q, r] = <[usize; 3]>::try_from(t.to_vec()).expect("three elements");
        let others = (x - t).to_vec();
        // Each pair of the triad must close to a triangle with a distinct element.
        let completes = |u: usize, v: usize| -> Vec<usize> {
            others
                .iter()
                .copied()
                .filter(|&o| m.is_triangle(Mask::from_elems([u, v, o])))
                .collect()
        };
        let (ab, ac, bc) = (completes(p, q), completes(p, r), completes(q, r));
        for &a in &ab {
            for &b in &ac {
                for &c in &bc {
                    if a != b && b != c && a != c {
                        return Ok(true);
                    }
                }
            }
        }
    }
    Ok(false)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FlowerKind {
    Paddle,
    SpikeLike,
    Copaddle,
    Mixed,
    None,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FlowerReport {
    pub parts: Vec<Mask>,
    pub is_flower: bool,
    pub is_anemone: bool,
    pub subkind: FlowerKind,
    /// ⊓(P_i, P_j); the diagonal holds r(P_i).
    pub pairwise_pi: Vec<Vec<usize>>,
}

/// Largest number of petals for which every union is checked.
pub const ANEMONE_PART_CAP: usize = 12;

pub fn flower_classify(m: &Matroid, parts: &[Mask]) -> Result<FlowerReport> {
    flower_classify_in(m, parts, m.ground())
}

/// As [`flower_classify`], but `parts` need only partition `within`.
pub fn flower_classify_in(m: &Matroid, parts: &[Mask], within: Mask) -> Result<FlowerReport> {
    let mut seen = Mask::EMPTY;
    for &p in parts {
        if p.is_empty() || !p.is_disjoint(seen) {
            return Err(Error::arg("parts must be nonempty and disjoint"));
        }
        seen = seen | p;
    }
    if seen != within {
        return Err(Error::arg("parts do not cover the ground set"));
    }
    let k = parts.len();
    if k > ANEMONE_PART_CAP {
        return Err(Error::CapExceeded {
            size: k,
            cap: ANEMONE_PART_CAP,
        });
    }
    let pairwise_pi: Vec<Vec<usize>> = (0..k)
        .map(|i| {
            (0..k)
                .map(|j| m.local_conn(parts[i], parts[j], false))
                .collect()
        })
        .collect();
    let is_flower = k >= 2
        && parts.iter().all(|p| p.len() >= 2 && m.lambda(*p) <= 2)
        && (0..k).all(|i| m.lambda(parts[i] | parts[(i + 1) % k]) <= 2);
    let is_anemone = is_flower
        && (1u32..1 << k).all(|sel| {
            let u = Mask(sel).iter().fold(Mask::EMPTY, |acc, i| acc | parts[i]);
            m.lambda(u) <= 2
        });
    let subkind = if !is_anemone || k < 3 {
        FlowerKind::None
    } else {
        let off: HashSet<usize> = (0..k)
            .flat_map(|i| (0..k).filter(move |&j| j != i).map(move |j| (i, j)))
            .map(|(i, j)| pairwise_pi[i][j])
            .collect();
        match off.iter().copied().collect::<Vec<_>>().as_slice() {
            [2] => FlowerKind::Paddle,
            [1] => FlowerKind::SpikeLike,
            [0] => FlowerKind::Copaddle,
            _ => FlowerKind::Mixed,
        }
    };
    Ok(FlowerReport {
        parts: parts.to_vec(),
        is_flower,
        is_anemone,
        subkind,
        pairwise_pi,
    })
}
