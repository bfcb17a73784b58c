//! Finite ground sets and their subsets.

use std::fmt;

use thiserror::Error;

/// Hard cap on finite ground sets. Power-set tables have `2^n` entries.
pub const MAX_GROUND: usize = 16;

/// Cap for routines that enumerate every 0/1 capacity.
pub const MAX_ORACLE_GROUND: usize = 5;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GroundError {
    #[error("ground set size {0} is outside 1..={MAX_GROUND}")]
    BadSize(usize),
    #[error("expected {expected} labels, got {got}")]
    LabelCount { expected: usize, got: usize },
    #[error("element {element} is not in a ground set of size {n}")]
    ElementOutOfRange { element: usize, n: usize },
}

/// A finite ground set `{0, …, n−1}` with optional element names.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Ground {
    n: usize,
    labels: Option<Vec<String>>,
}

impl Ground {
    pub fn new(n: usize) -> Result<Self, GroundError> {
        if n == 0 || n > MAX_GROUND {
            return Err(GroundError::BadSize(n));
        }
        Ok(Ground { n, labels: None })
    }

    pub fn with_labels(labels: Vec<String>) -> Result<Self, GroundError> {
        let mut g = Ground::new(labels.len())?;
        g.labels = Some(labels);
        Ok(g)
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn labels(&self) -> Option<&[String]> {
        self.labels.as_deref()
    }

    pub fn full(&self) -> Subset {
        Subset::full(self.n)
    }

    pub fn empty(&self) -> Subset {
        Subset::empty(self.n)
    }

    /// Every subset, in increasing bitmask order.
    pub fn power_set(&self) -> impl Iterator<Item = Subset> {
        power_set(self.n)
    }
}

/// The ground of a point function or set system: a finite set or `ℕ`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum GroundModel {
    Finite(Ground),
    Nat,
}

/// A subset of `{0, …, n−1}` stored as a bitmask.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Subset {
    n: u8,
    bits: u32,
}

impl Subset {
    pub fn empty(n: usize) -> Self {
        debug_assert!(n <= MAX_GROUND);
        Subset { n: n as u8, bits: 0 }
    }

    pub fn full(n: usize) -> Self {
        debug_assert!(n <= MAX_GROUND);
        Subset { n: n as u8, bits: full_mask(n) }
    }

    /// Panics when `bits` has members outside the ground set.
    pub fn from_bits(n: usize, bits: u32) -> Self {
        assert!(n <= MAX_GROUND && bits & !full_mask(n) == 0, "bitmask {bits:#b} exceeds ground size {n}");
        Subset { n: n as u8, bits }
    }

    pub fn from_elements<I: IntoIterator<Item = usize>>(n: usize, elems: I) -> Result<Self, GroundError> {
        let mut bits = 0u32;
        for e in elems {
            if e >= n {
                return Err(GroundError::ElementOutOfRange { element: e, n });
            }
            bits |= 1 << e;
        }
        Ok(Subset { n: n as u8, bits })
    }

    pub fn singleton(n: usize, x: usize) -> Self {
        assert!(x < n);
        Subset { n: n as u8, bits: 1 << x }
    }

    pub fn ground_len(self) -> usize {
        self.n as usize
    }

    pub fn bits(self) -> u32 {
        self.bits
    }

    /// Position of this subset in a dense power-set table.
    pub fn index(self) -> usize {
        self.bits as usize
    }

    pub fn contains(self, x: usize) -> bool {
        x < self.n as usize && self.bits >> x & 1 == 1
    }

    pub fn is_empty(self) -> bool {
        self.bits == 0
    }

    pub fn is_full(self) -> bool {
        self.bits == full_mask(self.n as usize)
    }

    pub fn len(self) -> usize {
        self.bits.count_ones() as usize
    }

    pub fn union(self, other: Subset) -> Subset {
        self.check(other);
        Subset { n: self.n, bits: self.bits | other.bits }
    }

    pub fn intersection(self, other: Subset) -> Subset {
        self.check(other);
        Subset { n: self.n, bits: self.bits & other.bits }
    }

    pub fn difference(self, other: Subset) -> Subset {
        self.check(other);
        Subset { n: self.n, bits: self.bits & !other.bits }
    }

    pub fn complement(self) -> Subset {
        Subset { n: self.n, bits: !self.bits & full_mask(self.n as usize) }
    }

    pub fn is_subset(self, other: Subset) -> bool {
        self.check(other);
        self.bits & !other.bits == 0
    }

    pub fn is_superset(self, other: Subset) -> bool {
        other.is_subset(self)
    }

    pub fn with(self, x: usize) -> Subset {
        assert!(x < self.n as usize);
        Subset { n: self.n, bits: self.bits | 1 << x }
    }

    pub fn elements(self) -> impl Iterator<Item = usize> {
        let bits = self.bits;
        (0..self.n as usize).filter(move |&i| bits >> i & 1 == 1)
    }

    /// All subsets of `self`, from `self` down to `∅`.
    pub fn subsets(self) -> impl Iterator<Item = Subset> {
        let n = self.n;
        let full = self.bits;
        let mut cur = Some(full);
        std::iter::from_fn(move || {
            let s = cur?;
            cur = if s == 0 { None } else { Some((s - 1) & full) };
            Some(Subset { n, bits: s })
        })
    }

    /// Canonical paving order: by cardinality, then by bitmask.
    pub fn canonical_cmp(&self, other: &Subset) -> std::cmp::Ordering {
        (self.len(), self.bits).cmp(&(other.len(), other.bits))
    }

    fn check(self, other: Subset) {
        debug_assert_eq!(self.n, other.n, "subsets of different ground sets");
    }
}

impl fmt::Debug for Subset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.elements()).finish()
    }
}

impl fmt::Display for Subset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for (i, e) in self.elements().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{e}")?;
        }
        f.write_str("]")
    }
}

pub(crate) fn full_mask(n: usize) -> u32 {
    if n >= 32 {
        u32::MAX
    } else {
        (1u32 << n) - 1
    }
}

/// Every subset of `{0, …, n−1}` in increasing bitmask order.
pub fn power_set(n: usize) -> impl Iterator<Item = Subset> {
    assert!(n <= MAX_GROUND);
    (0..=full_mask(n)).map(move |bits| Subset { n: n as u8, bits })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ground_bounds() {
        assert!(Ground::new(0).is_err());
        assert!(Ground::new(17).is_err());
        assert_eq!(Ground::new(16).unwrap().len(), 16);
        assert!(Ground::with_labels(vec!["a".into(), "b".into()]).is_ok());
    }

    #[test]
    fn set_operations() {
        let a = Subset::from_elements(3, [0, 1]).unwrap();
        let b = Subset::from_elements(3, [1, 2]).unwrap();
        assert_eq!(a.union(b), Subset::full(3));
        assert_eq!(a.intersection(b), Subset::singleton(3, 1));
        assert_eq!(a.complement(), Subset::singleton(3, 2));
        assert_eq!(a.difference(b), Subset::singleton(3, 0));
        assert!(a.intersection(b).is_subset(a));
        assert!(!a.is_subset(b));
        assert!(Subset::from_elements(3, [3]).is_err());
    }

    #[test]
    fn subsets_of_a_set() {
        let a = Subset::from_elements(4, [0, 2, 3]).unwrap();
        let subs: Vec<_> = a.subsets().collect();
        assert_eq!(subs.len(), 8);
        assert!(subs.iter().all(|s| s.is_subset(a)));
        assert_eq!(Subset::empty(4).subsets().count(), 1);
    }

    #[test]
    fn display_is_sorted_index_list() {
        assert_eq!(Subset::from_elements(4, [3, 0]).unwrap().to_string(), "[0,3]");
        assert_eq!(Subset::empty(2).to_string(), "[]");
    }
}
