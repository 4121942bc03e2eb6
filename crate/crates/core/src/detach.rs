//! Detachable pairs: `{e, f}` such that `M\e\f` or `M/e/f` is 3-connected.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::connectivity::{is_3connected, is_3connected_minor};
use crate::error::{Error, Result};
use crate::graph::{Graph, MinorOp};
use crate::mask::Mask;
use crate::matroid::Matroid;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PairVerdict {
    pub e: usize,
    pub f: usize,
    pub delete_ok: bool,
    pub contract_ok: bool,
}

impl PairVerdict {
    pub fn detachable(&self) -> bool {
        self.delete_ok || self.contract_ok
    }

    /// The same verdict read in the dual.
    pub fn dual(self) -> PairVerdict {
        PairVerdict {
            delete_ok: self.contract_ok,
            contract_ok: self.delete_ok,
            ..self
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SearchMode {
    First,
    All,
}

/// Smallest ground set for which pairs are checked.
pub const MIN_PAIR_GROUND: usize = 6;

fn check_pair(n: usize, e: usize, f: usize) -> Result<(usize, usize)> {
    if e == f {
        return Err(Error::arg(format!(
            "pair needs two distinct elements, got {e} twice"
        )));
    }
    if e >= n || f >= n {
        return Err(Error::arg(format!("pair ({e},{f}) out of range")));
    }
    if n < MIN_PAIR_GROUND {
        return Err(Error::Precondition(format!(
            "pairs are checked on at least {MIN_PAIR_GROUND} elements, got {n}"
        )));
    }
    Ok((e.min(f), e.max(f)))
}

pub fn pair_status(m: &Matroid, e: usize, f: usize) -> Result<PairVerdict> {
    let (e, f) = check_pair(m.size(), e, f)?;
    Ok(verdict(m, e, f))
}

fn verdict(m: &Matroid, e: usize, f: usize) -> PairVerdict {
    let s = Mask::from_elems([e, f]);
    PairVerdict {
        e,
        f,
        delete_ok: is_3connected_minor(m, s, Mask::EMPTY),
        contract_ok: is_3connected_minor(m, Mask::EMPTY, s),
    }
}

fn all_pairs(n: usize) -> Vec<(usize, usize)> {
    (0..n)
        .flat_map(|e| (e + 1..n).map(move |f| (e, f)))
        .collect()
}

/// Detachable pairs in lexicographic order. `First` returns at most one.
pub fn find_detachable_pairs(m: &Matroid, mode: SearchMode) -> Result<Vec<PairVerdict>> {
    if m.size() < MIN_PAIR_GROUND {
        return Err(Error::Precondition(format!(
            "pairs are checked on at least {MIN_PAIR_GROUND} elements"
        )));
    }
    let pairs = all_pairs(m.size());
    Ok(match mode {
        SearchMode::First => pairs
            .par_iter()
            .find_map_first(|&(e, f)| Some(verdict(m, e, f)).filter(PairVerdict::detachable))
            .into_iter()
            .collect(),
        SearchMode::All => pairs
            .par_iter()
            .map(|&(e, f)| verdict(m, e, f))
            .filter(PairVerdict::detachable)
            .collect(),
    })
}

/// Every pair with its flags, detachable or not.
pub fn all_pair_verdicts(m: &Matroid) -> Result<Vec<PairVerdict>> {
    if m.size() < MIN_PAIR_GROUND {
        return Err(Error::Precondition(format!(
            "pairs are checked on at least {MIN_PAIR_GROUND} elements"
        )));
    }
    Ok(all_pairs(m.size())
        .par_iter()
        .map(|&(e, f)| verdict(m, e, f))
        .collect())
}

/// Whether the matroid has no detachable pair, after checking it is 3-connected.
pub fn has_no_detachable_pair(m: &Matroid) -> Result<bool> {
    if !is_3connected(m) {
        return Err(Error::Precondition("matroid is not 3-connected".into()));
    }
    Ok(find_detachable_pairs(m, SearchMode::First)?.is_empty())
}

fn both(g: &Graph, op: MinorOp, e: usize, f: usize) -> Graph {
    // Remove the higher edge first so the lower index stays valid.
    g.minor(op, f)
        .and_then(|h| h.minor(op, e))
        .expect("edges in range")
}

pub fn graph_pair_status(g: &Graph, e: usize, f: usize) -> Result<PairVerdict> {
    let (e, f) = check_pair(g.edge_count(), e, f)?;
    Ok(graph_verdict(g, e, f))
}

fn graph_verdict(g: &Graph, e: usize, f: usize) -> PairVerdict {
    PairVerdict {
        e,
        f,
        delete_ok: both(g, MinorOp::Delete, e, f).is_simple_3connected(),
        contract_ok: both(g, MinorOp::Contract, e, f).is_simple_3connected(),
    }
}

pub fn find_graph_detachable_pairs(g: &Graph, mode: SearchMode) -> Result<Vec<PairVerdict>> {
    if !g.is_simple_3connected() {
        return Err(Error::Precondition(
            "graph is not simple and 3-connected".into(),
        ));
    }
    if g.edge_count() < MIN_PAIR_GROUND {
        return Err(Error::Precondition(format!(
            "pairs are checked on at least {MIN_PAIR_GROUND} edges"
        )));
    }
    let pairs = all_pairs(g.edge_count());
    Ok(match mode {
        SearchMode::First => pairs
            .par_iter()
            .find_map_first(|&(e, f)| Some(graph_verdict(g, e, f)).filter(PairVerdict::detachable))
            .into_iter()
            .collect(),
        SearchMode::All => pairs
            .par_iter()
            .map(|&(e, f)| graph_verdict(g, e, f))
            .filter(PairVerdict::detachable)
            .collect(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mask::k_subsets;

    fn complete(n: usize) -> Graph {
        Graph::new(
            n,
            (0..n)
                .flat_map(|a| (a + 1..n).map(move |b| (a, b)))
                .collect(),
        )
        .unwrap()
    }

    fn wheel(r: usize) -> Graph {
        let mut edges = Vec::new();
        for i in 0..r {
            edges.push((0, 1 + i));
            edges.push((1 + i, 1 + (i + 1) % r));
        }
        Graph::new(r + 1, edges).unwrap()
    }

    #[test]
    fn uniform_pairs_delete() {
        let b: Vec<Mask> = k_subsets(Mask::full(6), 2).collect();
        let m = Matroid::from_bases(6, &b).unwrap();
        let v = pair_status(&m, 0, 1).unwrap();
        assert!(v.delete_ok && !v.contract_ok);
        assert!(pair_status(&m, 2, 2).is_err());
    }

    #[test]
    fn wheels_have_none() {
        let g = wheel(5);
        let m = Matroid::from_graph(&g).unwrap();
        assert!(find_detachable_pairs(&m, SearchMode::All)
            .unwrap()
            .is_empty());
        assert!(find_graph_detachable_pairs(&g, SearchMode::All)
            .unwrap()
            .is_empty());
    }

    #[test]
    fn k6_has_some() {
        let g = complete(6);
        let m = Matroid::from_graph(&g).unwrap();
        let first = find_detachable_pairs(&m, SearchMode::First).unwrap();
        let all = find_detachable_pairs(&m, SearchMode::All).unwrap();
        assert_eq!(first.len(), 1);
        assert_eq!(first[0], all[0]);
        assert!(!find_graph_detachable_pairs(&g, SearchMode::First)
            .unwrap()
            .is_empty());
    }
}
