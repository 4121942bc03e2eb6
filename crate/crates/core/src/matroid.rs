//! Matroids as complete subset-rank tables.

use std::sync::Arc;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::gfp::{EchelonBasis, LinearRep};
use crate::graph::Graph;
use crate::mask::{Mask, HARD_CAP};

/// Default ceiling on the ground-set size for a table build.
pub const DEFAULT_CAP: usize = 22;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MinorMode {
    Delete,
    Contract,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Reduction {
    /// Simplification: loops and non-lowest parallel elements are deleted.
    Si,
    /// Cosimplification: coloops and non-lowest series elements are contracted.
    Co,
}

/// Where a table came from. Only used for reporting and writing.
#[derive(Clone, Debug, PartialEq)]
pub enum Provenance {
    Graphic(Graph),
    LinearGfp(LinearRep),
    Bases {
        validated: bool,
    },
    /// `kept[i]` is the parent index of element `i`.
    MinorOf {
        deleted: Mask,
        contracted: Mask,
        kept: Vec<usize>,
    },
    DualOf,
    Relaxed {
        hyperplane: Mask,
    },
}

impl Provenance {
    pub fn tag(&self) -> &'static str {
        match self {
            Provenance::Graphic(_) => "graphic",
            Provenance::LinearGfp(_) => "linear-gfp",
            Provenance::Bases { .. } => "bases",
            Provenance::MinorOf { .. } => "minor-of",
            Provenance::DualOf => "dual-of",
            Provenance::Relaxed { .. } => "relaxed",
        }
    }
}

#[derive(Clone, Debug)]
pub struct Matroid {
    n: usize,
    table: Arc<[u8]>,
    names: Option<Arc<[String]>>,
    provenance: Provenance,
}

impl PartialEq for Matroid {
    /// Equal ground sets and equal rank tables; names and provenance are ignored.
    fn eq(&self, other: &Matroid) -> bool {
        self.n == other.n && self.table == other.table
    }
}

fn check_cap(size: usize, cap: usize) -> Result<()> {
    if cap > HARD_CAP {
        return Err(Error::arg(format!(
            "cap {cap} is above the hard limit {HARD_CAP}"
        )));
    }
    if size > cap {
        return Err(Error::CapExceeded { size, cap });
    }
    Ok(())
}

/// Incremental independence oracle used by the table builder.
trait Oracle {
    /// Adds `e` to the current set and reports whether the rank went up.
    /// Only a successful add changes the state.
    fn add(&mut self, e: usize) -> bool;
    /// Reverts the most recent successful add.
    fn undo(&mut self);
}

struct UnionFind {
    ends: Arc<[(u8, u8)]>,
    parent: Vec<u8>,
    size: Vec<u8>,
    /// Roots that were attached below another root, most recent last.
    history: Vec<u8>,
}

impl UnionFind {
    fn root(&self, mut v: u8) -> u8 {
        while self.parent[v as usize] != v {
            v = self.parent[v as usize];
        }
        v
    }
}

impl Oracle for UnionFind {
    fn add(&mut self, e: usize) -> bool {
        let (a, b) = self.ends[e];
        let (mut ra, mut rb) = (self.root(a), self.root(b));
        if ra == rb {
            return false;
        }
        if self.size[ra as usize] < self.size[rb as usize] {
            std::mem::swap(&mut ra, &mut rb);
        }
        self.parent[rb as usize] = ra;
        self.size[ra as usize] += self.size[rb as usize];
        self.history.push(rb);
        true
    }

    fn undo(&mut self) {
        let rb = self.history.pop().expect("undo without add");
        let ra = self.parent[rb as usize];
        self.size[ra as usize] -= self.size[rb as usize];
        self.parent[rb as usize] = rb;
    }
}

struct Columns {
    basis: EchelonBasis,
    cols: Arc<[Vec<u32>]>,
}

impl Oracle for Columns {
    fn add(&mut self, e: usize) -> bool {
        self.basis.insert(&self.cols[e])
    }

    fn undo(&mut self) {
        self.basis.pop();
    }
}

fn fill<O: Oracle>(o: &mut O, i: usize, low: usize, rank: u8, out: &mut [u8]) {
    if i == 0 {
        out[low] = rank;
        return;
    }
    let e = i - 1;
    fill(o, e, low, rank, out);
    if o.add(e) {
        fill(o, e, low | 1 << e, rank + 1, out);
        o.undo();
    } else {
        fill(o, e, low | 1 << e, rank, out);
    }
}

/// Tabulates the rank of every subset. The top `d` elements are fixed per
/// worker so each worker owns one contiguous block of the table; inside a
/// block a depth-first walk adds one element at a time and asks the oracle
/// whether the rank grows.
fn build_table<O: Oracle>(n: usize, make: impl Fn() -> O + Sync) -> Vec<u8> {
    let d = n.min(6);
    let low_bits = n - d;
    let mut table = vec![0u8; 1usize << n];
    table
        .par_chunks_mut(1usize << low_bits)
        .enumerate()
        .for_each(|(prefix, chunk)| {
            let mut o = make();
            let mut rank = 0u8;
            for b in 0..d {
                if prefix >> b & 1 == 1 && o.add(low_bits + b) {
                    rank += 1;
                }
            }
            fill(&mut o, low_bits, 0, rank, chunk);
        });
    table
}

impl Matroid {
    /// Wraps an existing table. The caller guarantees the rank axioms.
    pub(crate) fn from_table(n: usize, table: Vec<u8>, provenance: Provenance) -> Matroid {
        debug_assert_eq!(table.len(), 1usize << n);
        Matroid {
            n,
            table: table.into(),
            names: None,
            provenance,
        }
    }

    /// Builds a matroid from a raw rank table after checking the rank axioms.
    pub fn from_rank_table(n: usize, table: Vec<u8>) -> Result<Matroid> {
        check_cap(n, DEFAULT_CAP)?;
        if table.len() != 1usize << n {
            return Err(Error::arg(format!(
                "table of length {} for {} elements",
                table.len(),
                n
            )));
        }
        let m = Matroid::from_table(n, table, Provenance::Bases { validated: false });
        if let Some(bad) = m.rank_axiom_violation() {
            return Err(Error::arg(format!("rank axioms fail at {bad}")));
        }
        Ok(m)
    }

    /// The cycle matroid of `g`; element `i` is edge `i`.
    pub fn from_graph(g: &Graph) -> Result<Matroid> {
        Matroid::from_graph_capped(g, DEFAULT_CAP)
    }

    pub fn from_graph_capped(g: &Graph, cap: usize) -> Result<Matroid> {
        let n = g.edge_count();
        if n == 0 {
            return Err(Error::EmptyMatroid);
        }
        check_cap(n, cap)?;
        // Compact to the touched vertices so the union-find stays small.
        let mut index = vec![u8::MAX; g.vertex_count()];
        let mut next = 0u8;
        let mut ends = Vec::with_capacity(n);
        for &(u, v) in g.edges() {
            for w in [u, v] {
                if index[w] == u8::MAX {
                    index[w] = next;
                    next += 1;
                }
            }
            ends.push((index[u], index[v]));
        }
        let ends: Arc<[(u8, u8)]> = ends.into();
        let vcount = next as usize;
        let table = build_table(n, || UnionFind {
            ends: Arc::clone(&ends),
            parent: (0..vcount as u8).collect(),
            size: vec![1; vcount],
            history: Vec::with_capacity(vcount),
        });
        let mut m = Matroid::from_table(n, table, Provenance::Graphic(g.clone()));
        if let Some(labels) = g.labels() {
            if distinct(labels) {
                m.names = Some(labels.to_vec().into());
            }
        }
        Ok(m)
    }

    /// The column matroid of a matrix over GF(p).
    pub fn from_gfp(rep: &LinearRep) -> Result<Matroid> {
        Matroid::from_gfp_capped(rep, DEFAULT_CAP)
    }

    pub fn from_gfp_capped(rep: &LinearRep, cap: usize) -> Result<Matroid> {
        let n = rep.col_count();
        if n == 0 {
            return Err(Error::EmptyMatroid);
        }
        check_cap(n, cap)?;
        let cols: Arc<[Vec<u32>]> = (0..n).map(|c| rep.column(c)).collect::<Vec<_>>().into();
        let (p, dim) = (rep.prime(), rep.row_count());
        let table = build_table(n, || Columns {
            basis: EchelonBasis::new(p, dim),
            cols: Arc::clone(&cols),
        });
        Ok(Matroid::from_table(
            n,
            table,
            Provenance::LinearGfp(rep.clone()),
        ))
    }

    /// The matroid on `n` elements with the given bases.
    ///
    /// The family is checked to be a basis family: equal sizes, and a rank
    /// function that is submodular. On failure a pair of bases breaking the
    /// exchange axiom is reported.
    pub fn from_bases(n: usize, bases: &[Mask]) -> Result<Matroid> {
        Matroid::from_bases_capped(n, bases, DEFAULT_CAP)
    }

    pub fn from_bases_capped(n: usize, bases: &[Mask], cap: usize) -> Result<Matroid> {
        if n == 0 {
            return Err(Error::EmptyMatroid);
        }
        check_cap(n, cap)?;
        let Some(first) = bases.first() else {
            return Err(Error::arg("a matroid needs at least one basis"));
        };
        let r = first.len();
        let full = Mask::full(n);
        if let Some(b) = bases.iter().find(|b| b.len() != r || !b.is_subset(full)) {
            return Err(Error::arg(format!(
                "basis {b} has the wrong size or leaves the ground set"
            )));
        }
        let size = 1usize << n;
        let mut indep = vec![false; size];
        for b in bases {
            indep[b.0 as usize] = true;
        }
        for x in (0..size).rev() {
            if indep[x] || (x.count_ones() as usize) >= r {
                continue;
            }
            let mut rest = !x & (size - 1);
            while rest != 0 {
                let e = rest & rest.wrapping_neg();
                if indep[x | e] {
                    indep[x] = true;
                    break;
                }
                rest &= rest - 1;
            }
        }
        let mut table = vec![0u8; size];
        for x in 1..size {
            if indep[x] {
                table[x] = x.count_ones() as u8;
            } else {
                let mut best = 0;
                let mut rest = x;
                while rest != 0 {
                    let e = rest & rest.wrapping_neg();
                    best = best.max(table[x ^ e]);
                    rest &= rest - 1;
                }
                table[x] = best;
            }
        }
        let m = Matroid::from_table(n, table, Provenance::Bases { validated: true });
        if !m.is_locally_submodular() {
            return Err(exchange_witness(bases)
                .unwrap_or_else(|| Error::arg("bases do not form a matroid")));
        }
        Ok(m)
    }

    pub fn with_names(mut self, names: Vec<String>) -> Result<Matroid> {
        if names.len() != self.n || !distinct(&names) {
            return Err(Error::arg(
                "element names must be distinct, one per element",
            ));
        }
        self.names = Some(names.into());
        Ok(self)
    }

    pub fn names(&self) -> Option<&[String]> {
        self.names.as_deref()
    }

    /// Name of element `e`, or its index when unnamed.
    pub fn name(&self, e: usize) -> String {
        match &self.names {
            Some(n) => n[e].clone(),
            None => e.to_string(),
        }
    }

    pub fn provenance(&self) -> &Provenance {
        &self.provenance
    }

    pub fn size(&self) -> usize {
        self.n
    }

    pub fn ground(&self) -> Mask {
        Mask::full(self.n)
    }

    pub fn table(&self) -> &[u8] {
        &self.table
    }

    #[inline]
    pub(crate) fn r(&self, x: u32) -> i32 {
        self.table[x as usize] as i32
    }

    #[inline]
    pub fn rank(&self, x: Mask) -> usize {
        debug_assert!(
            x.is_subset(self.ground()),
            "{x} leaves a ground set of {}",
            self.n
        );
        self.table[x.0 as usize] as usize
    }

    pub fn checked_rank(&self, x: Mask) -> Result<usize> {
        if !x.is_subset(self.ground()) {
            return Err(Error::arg(format!("{x} leaves a ground set of {}", self.n)));
        }
        Ok(self.rank(x))
    }

    /// r(M).
    pub fn total_rank(&self) -> usize {
        self.rank(self.ground())
    }

    /// r*(X) = |X| + r(E−X) − r(M).
    #[inline]
    pub fn corank(&self, x: Mask) -> usize {
        x.len() + self.rank(self.ground() - x) - self.total_rank()
    }

    /// λ(X) = r(X) + r(E−X) − r(M).
    #[inline]
    pub fn lambda(&self, x: Mask) -> usize {
        self.rank(x) + self.rank(self.ground() - x) - self.total_rank()
    }

    /// ⊓(X,Y) = r(X) + r(Y) − r(X∪Y), or the same in the dual.
    pub fn local_conn(&self, x: Mask, y: Mask, dual: bool) -> usize {
        if dual {
            self.corank(x) + self.corank(y) - self.corank(x | y)
        } else {
            self.rank(x) + self.rank(y) - self.rank(x | y)
        }
    }

    /// cl(X), or cl*(X) when `dual` is set.
    pub fn closure(&self, x: Mask, dual: bool) -> Mask {
        let rk = |s: Mask| if dual { self.corank(s) } else { self.rank(s) };
        let base = rk(x);
        (self.ground() - x)
            .iter()
            .filter(|&e| rk(x.with(e)) == base)
            .fold(x, Mask::with)
    }

    pub fn is_independent(&self, x: Mask) -> bool {
        self.rank(x) == x.len()
    }

    pub fn is_circuit(&self, x: Mask) -> bool {
        !x.is_empty()
            && self.rank(x) + 1 == x.len()
            && x.iter().all(|e| self.rank(x.without(e)) == x.len() - 1)
    }

    pub fn is_cocircuit(&self, x: Mask) -> bool {
        !x.is_empty()
            && self.corank(x) + 1 == x.len()
            && x.iter().all(|e| self.corank(x.without(e)) == x.len() - 1)
    }

    pub fn is_triangle(&self, x: Mask) -> bool {
        x.len() == 3 && self.is_circuit(x)
    }

    pub fn is_triad(&self, x: Mask) -> bool {
        x.len() == 3 && self.is_cocircuit(x)
    }

    /// A 4-element set that is both a circuit and a cocircuit.
    pub fn is_quad(&self, x: Mask) -> bool {
        x.len() == 4 && self.is_circuit(x) && self.is_cocircuit(x)
    }

    pub fn is_hyperplane(&self, x: Mask) -> bool {
        self.rank(x) + 1 == self.total_rank() && self.closure(x, false) == x
    }

    pub fn is_loop(&self, e: usize) -> bool {
        self.rank(Mask::single(e)) == 0
    }

    pub fn is_coloop(&self, e: usize) -> bool {
        self.corank(Mask::single(e)) == 0
    }

    /// All bases, in increasing mask order.
    pub fn bases(&self) -> Vec<Mask> {
        let r = self.total_rank();
        (0..1u32 << self.n)
            .filter(|&x| x.count_ones() as usize == r && self.r(x) as usize == r)
            .map(Mask)
            .collect()
    }

    /// Deletes or contracts every element of `s`. Remaining elements keep
    /// their relative order.
    pub fn minor(&self, mode: MinorMode, s: Mask) -> Result<Matroid> {
        match mode {
            MinorMode::Delete => self.minor2(s, Mask::EMPTY),
            MinorMode::Contract => self.minor2(Mask::EMPTY, s),
        }
    }

    pub fn delete(&self, s: Mask) -> Result<Matroid> {
        self.minor2(s, Mask::EMPTY)
    }

    pub fn contract(&self, s: Mask) -> Result<Matroid> {
        self.minor2(Mask::EMPTY, s)
    }

    /// M \ `deleted` / `contracted` as a compacted table.
    pub fn minor2(&self, deleted: Mask, contracted: Mask) -> Result<Matroid> {
        let g = self.ground();
        if !deleted.is_subset(g) || !contracted.is_subset(g) || !deleted.is_disjoint(contracted) {
            return Err(Error::arg(
                "minor sets must be disjoint subsets of the ground set",
            ));
        }
        let keep = g - deleted - contracted;
        if keep.is_empty() {
            return Err(Error::EmptyMatroid);
        }
        let k = keep.len();
        let rc = self.r(contracted.0);
        let mut table = Vec::with_capacity(1 << k);
        for x in keep.subsets() {
            table.push((self.r(x.0 | contracted.0) - rc) as u8);
        }
        let kept = keep.to_vec();
        let names = self.names.as_ref().map(|nm| {
            kept.iter()
                .map(|&i| nm[i].clone())
                .collect::<Vec<_>>()
                .into()
        });
        Ok(Matroid {
            n: k,
            table: table.into(),
            names,
            provenance: Provenance::MinorOf {
                deleted,
                contracted,
                kept,
            },
        })
    }

    pub fn dual(&self) -> Matroid {
        let full = self.ground().0;
        let rm = self.r(full);
        let table: Vec<u8> = (0..1u32 << self.n)
            .map(|x| (x.count_ones() as i32 + self.r(full & !x) - rm) as u8)
            .collect();
        Matroid {
            n: self.n,
            table: table.into(),
            names: self.names.clone(),
            provenance: Provenance::DualOf,
        }
    }

    /// Relaxes the circuit-hyperplane `h` into a basis.
    pub fn relax(&self, h: Mask) -> Result<Matroid> {
        if !self.is_circuit(h) {
            return Err(Error::NotCircuitHyperplane("circuit"));
        }
        if !self.is_hyperplane(h) {
            return Err(Error::NotCircuitHyperplane("hyperplane"));
        }
        let mut b = self.bases();
        b.push(h);
        b.sort_unstable();
        let mut m = Matroid::from_bases_capped(self.n, &b, HARD_CAP)?;
        m.names = self.names.clone();
        m.provenance = Provenance::Relaxed { hyperplane: h };
        Ok(m)
    }

    /// Elements removed by si (or co): loops (coloops) and every member of a
    /// parallel (series) class except the lowest.
    pub fn reduction_set(&self, mode: Reduction) -> Mask {
        let rk = |x: Mask| match mode {
            Reduction::Si => self.rank(x),
            Reduction::Co => self.corank(x),
        };
        let mut gone = Mask::EMPTY;
        for e in 0..self.n {
            if rk(Mask::single(e)) == 0 {
                gone = gone.with(e);
                continue;
            }
            let twin =
                (0..e).any(|f| rk(Mask::single(f)) == 1 && rk(Mask::from_elems([e, f])) == 1);
            if twin {
                gone = gone.with(e);
            }
        }
        gone
    }

    /// si(M) or co(M).
    pub fn simplify(&self, mode: Reduction) -> Result<Matroid> {
        let gone = self.reduction_set(mode);
        if gone == self.ground() {
            return Err(Error::Degenerate("nothing survives the reduction".into()));
        }
        if gone.is_empty() {
            return Ok(self.clone());
        }
        match mode {
            Reduction::Si => self.delete(gone),
            Reduction::Co => self.contract(gone),
        }
    }

    /// r(X∪e) + r(X∪f) ≥ r(X∪e∪f) + r(X) for all X, e, f. Together with
    /// unit increase this is equivalent to submodularity.
    pub fn is_locally_submodular(&self) -> bool {
        let n = self.n;
        (0..1u32 << n).into_par_iter().all(|x| {
            let rx = self.r(x);
            let free = !x & ((1u32 << n) - 1);
            let mut a = free;
            while a != 0 {
                let e = a & a.wrapping_neg();
                let mut b = a & (a - 1);
                while b != 0 {
                    let f = b & b.wrapping_neg();
                    if self.r(x | e) + self.r(x | f) < self.r(x | e | f) + rx {
                        return false;
                    }
                    b &= b - 1;
                }
                a &= a - 1;
            }
            true
        })
    }

    /// First subset where normalization, boundedness, unit increase or local
    /// submodularity fails.
    pub fn rank_axiom_violation(&self) -> Option<Mask> {
        if self.r(0) != 0 {
            return Some(Mask::EMPTY);
        }
        for x in 1..1u32 << self.n {
            let rx = self.r(x);
            if rx > x.count_ones() as i32 {
                return Some(Mask(x));
            }
            let mut rest = x;
            while rest != 0 {
                let e = rest & rest.wrapping_neg();
                let d = rx - self.r(x ^ e);
                if !(0..=1).contains(&d) {
                    return Some(Mask(x));
                }
                rest &= rest - 1;
            }
        }
        if !self.is_locally_submodular() {
            // Locate the offender for the report.
            for x in 0..1u32 << self.n {
                for e in 0..self.n {
                    for f in e + 1..self.n {
                        let (a, b) = (1 << e, 1 << f);
                        if x & (a | b) == 0
                            && self.r(x | a) + self.r(x | b) < self.r(x | a | b) + self.r(x)
                        {
                            return Some(Mask(x));
                        }
                    }
                }
            }
        }
        None
    }

    /// Compares `self` restricted to the image of `map` with `other`, where
    /// `map[i]` is the element of `self` playing the role of element `i` of
    /// `other`.
    pub fn restriction_matches(&self, other: &Matroid, map: &[usize]) -> bool {
        if map.len() != other.n {
            return false;
        }
        let k = other.n;
        let mut image = vec![0u32; 1 << k];
        for x in 1..1usize << k {
            let low = x.trailing_zeros() as usize;
            image[x] = image[x & (x - 1)] | 1 << map[low];
            if self.table[image[x] as usize] != other.table[x] {
                return false;
            }
        }
        true
    }
}

fn distinct(names: &[String]) -> bool {
    let mut v: Vec<&String> = names.iter().collect();
    v.sort();
    v.windows(2).all(|w| w[0] != w[1])
}

/// A pair of bases and an element of the first with no exchange partner in
/// the second.
fn exchange_witness(bases: &[Mask]) -> Option<Error> {
    let set: std::collections::HashSet<Mask> = bases.iter().copied().collect();
    for &b1 in bases {
        for &b2 in bases {
            for e in (b1 - b2).iter() {
                if !(b2 - b1)
                    .iter()
                    .any(|f| set.contains(&b1.without(e).with(f)))
                {
                    return Some(Error::InvalidBases {
                        first: b1.to_vec(),
                        second: b2.to_vec(),
                        element: e,
                    });
                }
            }
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;

    fn k4() -> Graph {
        Graph::new(4, vec![(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]).unwrap()
    }

    fn u24() -> Matroid {
        let b: Vec<Mask> = crate::mask::k_subsets(Mask::full(4), 2).collect();
        Matroid::from_bases(4, &b).unwrap()
    }

    #[test]
    fn k4_has_rank_three() {
        let m = Matroid::from_graph(&k4()).unwrap();
        assert_eq!(m.total_rank(), 3);
        assert_eq!(m.rank(Mask::single(4)), 1);
        assert_eq!(m.rank(Mask::EMPTY), 0);
        assert!(m.rank_axiom_violation().is_none());
    }

    #[test]
    fn uniform_from_bases() {
        let m = u24();
        assert_eq!(m.total_rank(), 2);
        assert_eq!(m.bases().len(), 6);
        assert_eq!(m.dual(), m);
    }

    #[test]
    fn single_basis_gives_free_part_plus_loops() {
        let m = Matroid::from_bases(4, &[Mask::from_elems([0, 2])]).unwrap();
        assert!(m.is_loop(1) && m.is_loop(3));
        assert!(m.is_coloop(0) && m.is_coloop(2));
    }

    #[test]
    fn invalid_bases_name_a_witness() {
        let bad = [Mask::from_elems([0, 1]), Mask::from_elems([2, 3])];
        match Matroid::from_bases(4, &bad) {
            Err(Error::InvalidBases { element, .. }) => assert!(element < 4),
            other => panic!("expected invalid bases, got {other:?}"),
        }
    }

    #[test]
    fn parallel_columns_over_gf2() {
        let rep = LinearRep::new(2, vec![vec![1, 1]]).unwrap();
        let m = Matroid::from_gfp(&rep).unwrap();
        assert_eq!(m.rank(Mask::full(2)), 1);
        let id = LinearRep::new(5, vec![vec![1, 0, 0], vec![0, 1, 0], vec![0, 0, 1]]).unwrap();
        assert_eq!(Matroid::from_gfp(&id).unwrap().total_rank(), 3);
    }

    #[test]
    fn cap_is_enforced() {
        let edges: Vec<(usize, usize)> = (0..23).map(|i| (0, i % 2 + 1)).collect();
        let g = Graph::new(3, edges).unwrap();
        assert_eq!(
            Matroid::from_graph(&g).unwrap_err(),
            Error::CapExceeded { size: 23, cap: 22 }
        );
        assert!(Matroid::from_graph_capped(&g, 23).is_ok());
        assert!(Matroid::from_graph_capped(&g, 25).is_err());
    }

    #[test]
    fn deleting_a_coloop_drops_rank() {
        let g = Graph::new(3, vec![(0, 1), (1, 2), (0, 2), (2, 2)]).unwrap();
        let path = Graph::new(3, vec![(0, 1), (1, 2)]).unwrap();
        let m = Matroid::from_graph(&path).unwrap();
        assert!(m.is_coloop(0));
        assert_eq!(m.delete(Mask::single(0)).unwrap().total_rank(), 0 + 1);
        let t = Matroid::from_graph(&g).unwrap();
        assert!(t.is_loop(3));
        assert_eq!(t.delete(Mask::full(4)), Err(Error::EmptyMatroid));
    }

    #[test]
    fn duality_identities() {
        let m = Matroid::from_graph(&k4()).unwrap();
        assert_eq!(m.dual().dual(), m);
        for e in 0..6 {
            let s = Mask::single(e);
            assert_eq!(m.delete(s).unwrap().dual(), m.dual().contract(s).unwrap());
        }
        for x in m.ground().subsets() {
            assert_eq!(m.lambda(x), m.rank(x) + m.corank(x) - x.len());
            assert_eq!(m.lambda(x), m.lambda(m.ground() - x));
            assert_eq!(m.lambda(x), m.dual().lambda(x));
        }
    }

    #[test]
    fn closure_and_local_connectivity() {
        let m = Matroid::from_graph(&k4()).unwrap();
        // edges 0=01, 1=02, 3=12 form a triangle
        assert!(m.closure(Mask::from_elems([0, 1]), false).contains(3));
        assert_eq!(m.closure(m.ground(), false), m.ground());
        assert_eq!(
            m.local_conn(Mask::from_elems([0, 1]), Mask::EMPTY, false),
            0
        );
    }

    #[test]
    fn relaxing_a_non_hyperplane_circuit_fails() {
        let m = Matroid::from_graph(&k4()).unwrap();
        // the 4-cycle 01,12,23,30 spans
        assert_eq!(
            m.relax(Mask::from_elems([0, 3, 5, 2])),
            Err(Error::NotCircuitHyperplane("hyperplane"))
        );
        let whirl = m.relax(Mask::from_elems([0, 1, 3])).unwrap();
        assert_eq!(whirl.bases().len(), m.bases().len() + 1);
        assert_eq!(
            m.relax(Mask::from_elems([0, 1])),
            Err(Error::NotCircuitHyperplane("circuit"))
        );
    }

    #[test]
    fn si_keeps_lowest_and_co_of_u24_is_itself() {
        let g = Graph::new(3, vec![(0, 1), (0, 1), (1, 2), (2, 2), (0, 2)]).unwrap();
        let m = Matroid::from_graph(&g).unwrap();
        assert_eq!(m.reduction_set(Reduction::Si), Mask::from_elems([1, 3]));
        let s = m.simplify(Reduction::Si).unwrap();
        assert_eq!(s, Matroid::from_graph(&g.simplify()).unwrap());
        let u = u24();
        assert_eq!(
            u.simplify(Reduction::Si)
                .unwrap()
                .simplify(Reduction::Co)
                .unwrap(),
            u
        );
    }
}
