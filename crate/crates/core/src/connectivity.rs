//! Separations and 3-connectivity.
//!
//! Everything here reads the parent rank table directly. A minor
//! `M \ D / C` is never materialised: its rank is `r(X ∪ C) − r(C)`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::mask::Mask;
use crate::matroid::{Matroid, Reduction};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SeparationKind {
    Plain,
    Vertical(usize),
    Cyclic(usize),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Separation {
    pub side: Mask,
    /// Order of the separation: λ(side) + 1.
    pub k: usize,
    pub kind: SeparationKind,
}

/// λ of `x` in `M \ deleted / contracted`, where `x` avoids both sets.
#[inline]
fn view_lambda(m: &Matroid, ground: u32, con: u32, rcon: i32, rtop: i32, x: u32) -> i32 {
    m.r(x | con) + m.r((ground & !x) | con) - rcon - rtop
}

/// Whether `M \ deleted / contracted` is 3-connected.
///
/// A set `X` of the minor is a witness when λ(X) < min(|X|, |E−X|, 2). Singletons
/// and pairs are tried first because they are by far the most common
/// witnesses; then every side avoiding the top element is scanned.
pub fn is_3connected_minor(m: &Matroid, deleted: Mask, contracted: Mask) -> bool {
    let ground = m.ground().0 & !deleted.0 & !contracted.0;
    let k = ground.count_ones() as i32;
    if k <= 1 {
        return true;
    }
    let con = contracted.0;
    let rcon = m.r(con);
    let rtop = m.r(ground | con);
    let bad = |x: u32| {
        let s = x.count_ones() as i32;
        view_lambda(m, ground, con, rcon, rtop, x) < s.min(k - s).min(2)
    };
    let mut a = ground;
    while a != 0 {
        let e = a & a.wrapping_neg();
        if bad(e) {
            return false;
        }
        let mut b = a & (a - 1);
        while b != 0 {
            let f = b & b.wrapping_neg();
            if bad(e | f) {
                return false;
            }
            b &= b - 1;
        }
        a &= a - 1;
    }
    let top = 1u32 << (31 - ground.leading_zeros());
    let scan = ground & !top;
    // Subsets of `scan` in increasing order; the empty set is skipped.
    let mut x = scan.wrapping_neg() & scan;
    while x != 0 {
        if x.count_ones() > 2 && bad(x) {
            return false;
        }
        x = x.wrapping_sub(scan) & scan;
    }
    true
}

pub fn is_3connected(m: &Matroid) -> bool {
    is_3connected_minor(m, Mask::EMPTY, Mask::EMPTY)
}

/// An exact k-separation (λ = k−1, both sides of size ≥ k) for k ∈ {1, 2}:
/// the side of minimum size, lowest mask among ties.
pub fn find_k_separation(m: &Matroid, k: usize) -> Result<Option<Separation>> {
    if !(1..=2).contains(&k) {
        return Err(Error::arg(format!("k must be 1 or 2, not {k}")));
    }
    let n = m.size();
    let best = (1u32..1 << n)
        .map(Mask)
        .filter(|&x| x.len() >= k && n - x.len() >= k && m.lambda(x) == k - 1)
        .min_by_key(|x| (x.len(), x.0));
    Ok(best.map(|side| Separation {
        side,
        k,
        kind: SeparationKind::Plain,
    }))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SeparationMode {
    Vertical,
    Cyclic,
}

/// All vertical (or cyclic) 3-separations `(X, {e}, Y)`, each listed once
/// with `X` the side holding the lowest element of `E − e`.
pub fn three_separations_at(
    m: &Matroid,
    e: usize,
    mode: SeparationMode,
) -> Result<Vec<Separation>> {
    if e >= m.size() {
        return Err(Error::arg(format!("element {e} out of range")));
    }
    let rest = m.ground().without(e);
    let Some(low) = rest.first() else {
        return Ok(Vec::new());
    };
    let dual = mode == SeparationMode::Cyclic;
    let rk = |x: Mask| if dual { m.corank(x) } else { m.rank(x) };
    let spans = |x: Mask| rk(x.with(e)) == rk(x);
    let mut out = Vec::new();
    for x in (rest.without(low)).subsets() {
        let x = x.with(low);
        let y = rest - x;
        if y.is_empty() || m.lambda(x) != 2 || m.lambda(y) != 2 {
            continue;
        }
        if rk(x) >= 3 && rk(y) >= 3 && spans(x) && spans(y) {
            let kind = if dual {
                SeparationKind::Cyclic(e)
            } else {
                SeparationKind::Vertical(e)
            };
            out.push(Separation {
                side: x,
                k: 3,
                kind,
            });
        }
    }
    Ok(out)
}

/// Whether si(M/e) (vertical) or co(M\e) (cyclic) is 3-connected.
pub fn reduced_minor_is_3connected(m: &Matroid, e: usize, mode: SeparationMode) -> Result<bool> {
    let s = Mask::single(e);
    let reduced = match mode {
        SeparationMode::Vertical => m.contract(s)?.simplify(Reduction::Si),
        SeparationMode::Cyclic => m.delete(s)?.simplify(Reduction::Co),
    };
    match reduced {
        Ok(r) => Ok(is_3connected(&r)),
        // An empty reduction has no separations at all.
        Err(Error::Degenerate(_)) => Ok(true),
        Err(err) => Err(err),
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum BixbySplit {
    SiOk,
    CoOk,
    Both,
}

/// Which of si(M/e) and co(M\e) is 3-connected. At least one always is.
pub fn bixby_split(m: &Matroid, e: usize) -> Result<BixbySplit> {
    if m.size() < 4 || !is_3connected(m) {
        return Err(Error::Precondition(
            "Bixby split needs a 3-connected matroid on at least 4 elements".into(),
        ));
    }
    let si = reduced_minor_is_3connected(m, e, SeparationMode::Vertical)?;
    let co = reduced_minor_is_3connected(m, e, SeparationMode::Cyclic)?;
    match (si, co) {
        (true, true) => Ok(BixbySplit::Both),
        (true, false) => Ok(BixbySplit::SiOk),
        (false, true) => Ok(BixbySplit::CoOk),
        (false, false) => Err(Error::ConstructionBug(format!(
            "neither si(M/{e}) nor co(M\\{e}) is 3-connected in a 3-connected matroid"
        ))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::Graph;

    fn k4() -> Matroid {
        Matroid::from_graph(
            &Graph::new(4, vec![(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]).unwrap(),
        )
        .unwrap()
    }

    fn u(r: usize, n: usize) -> Matroid {
        let b: Vec<Mask> = crate::mask::k_subsets(Mask::full(n), r).collect();
        Matroid::from_bases(n, &b).unwrap()
    }

    /// Literal definition, for comparison.
    fn brute_3conn(m: &Matroid) -> bool {
        let n = m.size();
        m.ground().subsets().all(|x| {
            let s = x.len();
            m.lambda(x) >= s.min(n - s).min(2)
        })
    }

    #[test]
    fn small_examples() {
        assert!(is_3connected(&k4()));
        assert!(!is_3connected(&k4().delete(Mask::single(0)).unwrap()));
        assert!(is_3connected(&u(2, 4)));
        assert!(is_3connected(&u(2, 3)));
        assert_eq!(find_k_separation(&u(2, 4), 2).unwrap(), None);
    }

    #[test]
    fn minor_views_agree_with_materialised_minors() {
        let m = k4();
        for d in m.ground().subsets() {
            for c in (m.ground() - d).subsets() {
                if (d | c) == m.ground() {
                    continue;
                }
                let built = m.minor2(d, c).unwrap();
                assert_eq!(
                    is_3connected_minor(&m, d, c),
                    brute_3conn(&built),
                    "d={d} c={c}"
                );
            }
        }
    }

    #[test]
    fn direct_sum_of_triangles_separates() {
        let g = Graph::new(6, vec![(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5)]).unwrap();
        let m = Matroid::from_graph(&g).unwrap();
        let s = find_k_separation(&m, 1).unwrap().unwrap();
        assert_eq!(s.side, Mask::from_elems([0, 1, 2]));
    }

    #[test]
    fn two_sum_of_k4s_has_a_two_separation() {
        // Two K4s glued along the edge 01, which is then removed.
        let g = Graph::new(
            6,
            vec![
                (0, 2),
                (0, 3),
                (1, 2),
                (1, 3),
                (2, 3),
                (0, 4),
                (0, 5),
                (1, 4),
                (1, 5),
                (4, 5),
            ],
        )
        .unwrap();
        let m = Matroid::from_graph(&g).unwrap();
        assert!(!is_3connected(&m));
        let s = find_k_separation(&m, 2).unwrap().unwrap();
        assert_eq!(s.side, Mask::full(5));
        assert_eq!(m.lambda(s.side), 1);
    }

    #[test]
    fn uniform_has_no_vertical_separation() {
        let m = u(2, 4);
        for e in 0..4 {
            assert!(three_separations_at(&m, e, SeparationMode::Vertical)
                .unwrap()
                .is_empty());
        }
    }

    #[test]
    fn k4_splits_both_ways() {
        let m = k4();
        for e in 0..6 {
            assert_eq!(bixby_split(&m, e).unwrap(), BixbySplit::Both);
        }
    }
}
