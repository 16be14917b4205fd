//! Subsets of `[n] = {1, ..., n}` packed into a 64-bit mask.
//!
//! Element `i` occupies bit `i - 1`. Iteration is always in increasing order
//! and enumerations of all subsets run in increasing mask order.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// Largest ground-set size a [`Subset`] can hold.
pub const MAX_GROUND: usize = 64;

#[derive(Clone, Copy, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Subset(u64);

impl Subset {
    pub const fn empty() -> Self {
        Subset(0)
    }

    /// `[n]` itself.
    pub fn full(n: usize) -> Self {
        assert!(n <= MAX_GROUND, "ground set too large: {n}");
        if n == MAX_GROUND {
            Subset(u64::MAX)
        } else {
            Subset((1u64 << n) - 1)
        }
    }

    pub const fn from_bits(bits: u64) -> Self {
        Subset(bits)
    }

    pub const fn bits(self) -> u64 {
        self.0
    }

    /// Builds a subset of `[n]` from 1-indexed elements; duplicates are rejected.
    pub fn from_elements<I: IntoIterator<Item = usize>>(n: usize, elements: I) -> Result<Self> {
        let mut s = Subset::empty();
        for e in elements {
            if e == 0 || e > n {
                return Err(Error::domain(
                    "set",
                    format!("element {e} outside [1, {n}]"),
                ));
            }
            if s.contains(e) {
                return Err(Error::domain("set", format!("duplicate element {e}")));
            }
            s.insert(e);
        }
        Ok(s)
    }

    pub fn contains(self, i: usize) -> bool {
        (1..=MAX_GROUND).contains(&i) && self.0 & (1u64 << (i - 1)) != 0
    }

    pub fn insert(&mut self, i: usize) {
        debug_assert!((1..=MAX_GROUND).contains(&i));
        self.0 |= 1u64 << (i - 1);
    }

    pub fn remove(&mut self, i: usize) {
        debug_assert!((1..=MAX_GROUND).contains(&i));
        self.0 &= !(1u64 << (i - 1));
    }

    pub fn with(mut self, i: usize) -> Self {
        self.insert(i);
        self
    }

    pub fn without(mut self, i: usize) -> Self {
        self.remove(i);
        self
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn union(self, other: Subset) -> Subset {
        Subset(self.0 | other.0)
    }

    pub fn intersection(self, other: Subset) -> Subset {
        Subset(self.0 & other.0)
    }

    pub fn difference(self, other: Subset) -> Subset {
        Subset(self.0 & !other.0)
    }

    pub fn is_subset_of(self, other: Subset) -> bool {
        self.0 & !other.0 == 0
    }

    /// Largest element, if any.
    pub fn max(self) -> Option<usize> {
        (self.0 != 0).then(|| 64 - self.0.leading_zeros() as usize)
    }

    /// Elements in increasing order.
    pub fn iter(self) -> Elements {
        Elements(self.0)
    }

    pub fn to_vec(self) -> Vec<usize> {
        self.iter().collect()
    }

    /// Every subset of `[n]` in increasing mask order, `∅` and `[n]` included.
    pub fn all(n: usize) -> impl Iterator<Item = Subset> {
        assert!(n < MAX_GROUND, "cannot enumerate all subsets of [{n}]");
        (0u64..(1u64 << n)).map(Subset)
    }

    /// Proper nonempty subsets of `[n]` in increasing mask order.
    pub fn proper_nonempty(n: usize) -> impl Iterator<Item = Subset> {
        assert!(n < MAX_GROUND, "cannot enumerate all subsets of [{n}]");
        let full = (1u64 << n) - 1;
        (1u64..full).map(Subset)
    }

    /// All `k`-element subsets of `[n]`, increasing mask order.
    pub fn of_size(n: usize, k: usize) -> impl Iterator<Item = Subset> {
        Subset::all(n).filter(move |s| s.len() == k)
    }
}

pub struct Elements(u64);

impl Iterator for Elements {
    type Item = usize;

    fn next(&mut self) -> Option<usize> {
        if self.0 == 0 {
            return None;
        }
        let i = self.0.trailing_zeros() as usize;
        self.0 &= self.0 - 1;
        Some(i + 1)
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let k = self.0.count_ones() as usize;
        (k, Some(k))
    }
}

impl ExactSizeIterator for Elements {}

impl fmt::Debug for Subset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

/// Comma-separated elements, `{}`-free; the empty set prints as an empty string.
impl fmt::Display for Subset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for e in self.iter() {
            if !first {
                f.write_str(",")?;
            }
            write!(f, "{e}")?;
            first = false;
        }
        Ok(())
    }
}

impl FromStr for Subset {
    type Err = Error;

    /// Parses a comma-separated list of 1-indexed elements. The ground set is
    /// not known here; callers check the bound with [`Subset::max`].
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.is_empty() {
            return Ok(Subset::empty());
        }
        let mut out = Subset::empty();
        for tok in s.split(',') {
            let tok = tok.trim();
            let e: usize = tok
                .parse()
                .map_err(|_| Error::parse("set", format!("'{tok}' is not a positive integer")))?;
            if e == 0 || e > MAX_GROUND {
                return Err(Error::parse(
                    "set",
                    format!("element {e} outside [1, {MAX_GROUND}]"),
                ));
            }
            if out.contains(e) {
                return Err(Error::parse("set", format!("duplicate element {e}")));
            }
            out.insert(e);
        }
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn iteration_is_increasing() {
        let s = Subset::from_elements(6, [5, 1, 3]).unwrap();
        assert_eq!(s.to_vec(), vec![1, 3, 5]);
        assert_eq!(s.len(), 3);
        assert_eq!(s.max(), Some(5));
        assert_eq!(s.to_string(), "1,3,5");
    }

    #[test]
    fn rejects_out_of_range_and_duplicates() {
        assert!(Subset::from_elements(3, [4]).is_err());
        assert!(Subset::from_elements(3, [0]).is_err());
        assert!(Subset::from_elements(3, [2, 2]).is_err());
        assert!("1,1".parse::<Subset>().is_err());
        assert!("x".parse::<Subset>().is_err());
    }

    #[test]
    fn enumeration_counts() {
        assert_eq!(Subset::all(4).count(), 16);
        assert_eq!(Subset::proper_nonempty(4).count(), 14);
        assert_eq!(Subset::of_size(5, 2).count(), 10);
        assert_eq!(Subset::full(64).len(), 64);
    }

    #[test]
    fn parse_round_trip() {
        let s: Subset = "3, 1".parse().unwrap();
        assert_eq!(s.to_string().parse::<Subset>().unwrap(), s);
        assert_eq!("".parse::<Subset>().unwrap(), Subset::empty());
    }
}
