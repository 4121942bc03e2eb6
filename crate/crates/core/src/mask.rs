use std::fmt;
use std::ops::{BitAnd, BitOr, BitXor, Sub};

use serde::{Deserialize, Serialize};

/// Largest ground set the toolkit will ever tabulate.
pub const HARD_CAP: usize = 24;

/// A set of ground-set indices, stored as a bit set.
///
/// Bit `i` stands for element `i`. Every mask handed to a [`Matroid`](crate::Matroid)
/// must stay inside its ground set.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Mask(pub u32);

impl Mask {
    pub const EMPTY: Mask = Mask(0);

    /// The set `{0, 1, ..., n-1}`.
    pub fn full(n: usize) -> Mask {
        debug_assert!(n <= 32);
        if n >= 32 {
            Mask(u32::MAX)
        } else {
            Mask((1u32 << n) - 1)
        }
    }

    pub fn single(e: usize) -> Mask {
        Mask(1 << e)
    }

    pub fn from_elems<I: IntoIterator<Item = usize>>(it: I) -> Mask {
        it.into_iter().fold(Mask::EMPTY, |m, e| m.with(e))
    }

    #[inline]
    pub fn bits(self) -> u32 {
        self.0
    }

    #[inline]
    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    #[inline]
    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    #[inline]
    pub fn contains(self, e: usize) -> bool {
        self.0 >> e & 1 == 1
    }

    #[inline]
    pub fn with(self, e: usize) -> Mask {
        Mask(self.0 | 1 << e)
    }

    #[inline]
    pub fn without(self, e: usize) -> Mask {
        Mask(self.0 & !(1 << e))
    }

    #[inline]
    pub fn is_subset(self, other: Mask) -> bool {
        self.0 & !other.0 == 0
    }

    #[inline]
    pub fn is_disjoint(self, other: Mask) -> bool {
        self.0 & other.0 == 0
    }

    /// Lowest element, if any.
    pub fn first(self) -> Option<usize> {
        (self.0 != 0).then(|| self.0.trailing_zeros() as usize)
    }

    /// Highest element, if any.
    pub fn last(self) -> Option<usize> {
        (self.0 != 0).then(|| 31 - self.0.leading_zeros() as usize)
    }

    pub fn iter(self) -> Elems {
        Elems(self.0)
    }

    pub fn to_vec(self) -> Vec<usize> {
        self.iter().collect()
    }

    /// All subsets of `self`, in increasing numeric order.
    pub fn subsets(self) -> Subsets {
        Subsets {
            of: self.0,
            next: Some(0),
        }
    }
}

impl fmt::Debug for Mask {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

impl fmt::Display for Mask {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, e) in self.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{e}")?;
        }
        write!(f, "}}")
    }
}

impl BitOr for Mask {
    type Output = Mask;
    fn bitor(self, rhs: Mask) -> Mask {
        Mask(self.0 | rhs.0)
    }
}

impl BitAnd for Mask {
    type Output = Mask;
    fn bitand(self, rhs: Mask) -> Mask {
        Mask(self.0 & rhs.0)
    }
}

impl BitXor for Mask {
    type Output = Mask;
    fn bitxor(self, rhs: Mask) -> Mask {
        Mask(self.0 ^ rhs.0)
    }
}

/// Set difference.
impl Sub for Mask {
    type Output = Mask;
    fn sub(self, rhs: Mask) -> Mask {
        Mask(self.0 & !rhs.0)
    }
}

impl FromIterator<usize> for Mask {
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Mask {
        Mask::from_elems(iter)
    }
}

impl IntoIterator for Mask {
    type Item = usize;
    type IntoIter = Elems;
    fn into_iter(self) -> Elems {
        self.iter()
    }
}

/// Iterator over the elements of a [`Mask`], lowest first.
#[derive(Clone)]
pub struct Elems(u32);

impl Iterator for Elems {
    type Item = usize;

    #[inline]
    fn next(&mut self) -> Option<usize> {
        if self.0 == 0 {
            return None;
        }
        let e = self.0.trailing_zeros();
        self.0 &= self.0 - 1;
        Some(e as usize)
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let n = self.0.count_ones() as usize;
        (n, Some(n))
    }
}

impl ExactSizeIterator for Elems {}

/// Iterator over the subsets of a mask.
#[derive(Clone)]
pub struct Subsets {
    of: u32,
    next: Option<u32>,
}

impl Iterator for Subsets {
    type Item = Mask;

    #[inline]
    fn next(&mut self) -> Option<Mask> {
        let cur = self.next?;
        let succ = cur.wrapping_sub(self.of) & self.of;
        self.next = (succ != 0).then_some(succ);
        Some(Mask(cur))
    }
}

/// All `k`-element subsets of `within`, in increasing numeric order.
pub fn k_subsets(within: Mask, k: usize) -> impl Iterator<Item = Mask> {
    within.subsets().filter(move |s| s.len() == k)
}
