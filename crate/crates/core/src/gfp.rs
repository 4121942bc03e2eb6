//! Matrices over a prime field GF(p).

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub fn is_prime(p: u32) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u32;
    while d.saturating_mul(d) <= p {
        if p % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// Smallest prime strictly greater than `n`.
pub fn next_prime_above(n: u32) -> u32 {
    (n + 1..)
        .find(|&p| is_prime(p))
        .expect("primes are unbounded")
}

pub(crate) fn inv_mod(a: u32, p: u32) -> u32 {
    // Fermat; p is small.
    let mut base = a as u64 % p as u64;
    let mut exp = p as u64 - 2;
    let mut acc = 1u64;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * base % p as u64;
        }
        base = base * base % p as u64;
        exp >>= 1;
    }
    acc as u32
}

/// A matrix over GF(p) whose columns are the ground-set elements.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LinearRep {
    prime: u32,
    rows: usize,
    cols: usize,
    /// Row-major residues in `[0, prime)`.
    entries: Vec<u32>,
}

impl LinearRep {
    /// Builds a representation from rows of integers, reducing them mod `prime`.
    pub fn new(prime: u32, rows: Vec<Vec<i64>>) -> Result<LinearRep> {
        if !is_prime(prime) {
            return Err(Error::CompositeModulus(prime));
        }
        if prime > 1 << 15 {
            return Err(Error::arg(format!("modulus {prime} is too large")));
        }
        let cols = rows.first().map_or(0, |r| r.len());
        if rows.iter().any(|r| r.len() != cols) {
            return Err(Error::arg("rows of unequal length"));
        }
        let p = prime as i64;
        let entries = rows
            .iter()
            .flatten()
            .map(|&x| x.rem_euclid(p) as u32)
            .collect();
        Ok(LinearRep {
            prime,
            rows: rows.len(),
            cols,
            entries,
        })
    }

    /// Builds a representation from column vectors.
    pub fn from_columns(prime: u32, rows: usize, columns: &[Vec<i64>]) -> Result<LinearRep> {
        if columns.iter().any(|c| c.len() != rows) {
            return Err(Error::arg("column of wrong height"));
        }
        let matrix = (0..rows)
            .map(|i| columns.iter().map(|c| c[i]).collect())
            .collect();
        LinearRep::new(prime, matrix)
    }

    pub fn prime(&self) -> u32 {
        self.prime
    }

    pub fn row_count(&self) -> usize {
        self.rows
    }

    pub fn col_count(&self) -> usize {
        self.cols
    }

    pub fn get(&self, row: usize, col: usize) -> u32 {
        self.entries[row * self.cols + col]
    }

    pub fn column(&self, col: usize) -> Vec<u32> {
        (0..self.rows).map(|r| self.get(r, col)).collect()
    }

    pub fn row(&self, row: usize) -> &[u32] {
        &self.entries[row * self.cols..(row + 1) * self.cols]
    }

    /// Keeps only the listed columns, in order.
    pub fn select_columns(&self, cols: &[usize]) -> LinearRep {
        let mut entries = Vec::with_capacity(self.rows * cols.len());
        for r in 0..self.rows {
            entries.extend(cols.iter().map(|&c| self.get(r, c)));
        }
        LinearRep {
            prime: self.prime,
            rows: self.rows,
            cols: cols.len(),
            entries,
        }
    }

    /// Rank of a set of columns by direct elimination.
    pub fn rank_of(&self, cols: &[usize]) -> usize {
        let mut basis = EchelonBasis::new(self.prime, self.rows);
        cols.iter()
            .filter(|&&c| basis.insert(&self.column(c)))
            .count()
    }
}

/// An incrementally built echelon basis supporting undo of the last insertion.
pub(crate) struct EchelonBasis {
    p: u32,
    dim: usize,
    /// Normalised vectors (pivot entry 1) stored back to back, each reduced
    /// against the earlier ones.
    flat: Vec<u32>,
    pivots: Vec<usize>,
    scratch: Vec<u32>,
}

impl EchelonBasis {
    pub(crate) fn new(p: u32, dim: usize) -> EchelonBasis {
        EchelonBasis {
            p,
            dim,
            flat: Vec::new(),
            pivots: Vec::new(),
            scratch: vec![0; dim],
        }
    }

    /// Adds `v` if it is independent of the basis; reports whether it was.
    pub(crate) fn insert(&mut self, v: &[u32]) -> bool {
        let p = self.p;
        self.scratch.copy_from_slice(v);
        for (b, &piv) in self.flat.chunks_exact(self.dim).zip(&self.pivots) {
            let c = self.scratch[piv];
            if c != 0 {
                let f = p - c;
                for (s, &x) in self.scratch.iter_mut().zip(b) {
                    *s = (*s + f * x) % p;
                }
            }
        }
        let Some(piv) = self.scratch.iter().position(|&x| x != 0) else {
            return false;
        };
        let inv = inv_mod(self.scratch[piv], p);
        self.flat.extend(self.scratch.iter().map(|&x| x * inv % p));
        self.pivots.push(piv);
        true
    }

    pub(crate) fn pop(&mut self) {
        self.pivots.pop();
        self.flat.truncate(self.pivots.len() * self.dim);
    }
}
