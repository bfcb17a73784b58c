//! Pavings: families of subsets of a finite ground set that contain `∅`.
//!
//! On a finite ground set a family has finitely many members, so stability
//! under countable intersections (`∩d`) or unions (`∪d`) is the same as
//! stability under finite ones. [`SetOp`] therefore has only the two
//! pairwise operations, and every "countable" hypothesis is checked through
//! them.

use std::fmt;

use thiserror::Error;

use crate::ground::{full_mask, GroundError, Subset, MAX_GROUND};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PavingError {
    #[error("a paving must contain the empty set")]
    MissingEmpty,
    #[error("family is not an algebra: {0}")]
    NotAnAlgebra(AlgebraDefect),
    #[error(transparent)]
    Ground(#[from] GroundError),
    #[error("subset {0} belongs to a ground set of a different size")]
    ForeignSubset(Subset),
}

/// Why a family fails to be an algebra.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AlgebraDefect {
    MissingFull,
    MissingComplement(Subset),
    MissingUnion(Subset, Subset),
}

impl fmt::Display for AlgebraDefect {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AlgebraDefect::MissingFull => f.write_str("the ground set is missing"),
            AlgebraDefect::MissingComplement(a) => write!(f, "complement of {a} is missing"),
            AlgebraDefect::MissingUnion(a, b) => write!(f, "union of {a} and {b} is missing"),
        }
    }
}

/// Pairwise set operation. `∩f`/`∩d` and `∪f`/`∪d` coincide on finite
/// ground sets.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SetOp {
    Intersection,
    Union,
}

impl SetOp {
    pub fn apply(self, a: Subset, b: Subset) -> Subset {
        match self {
            SetOp::Intersection => a.intersection(b),
            SetOp::Union => a.union(b),
        }
    }
}

/// Membership table over the power set.
#[derive(Clone, PartialEq, Eq, Hash)]
struct SetTable {
    words: Vec<u64>,
}

impl SetTable {
    fn new(n: usize) -> Self {
        let len = (1usize << n).div_ceil(64);
        SetTable { words: vec![0; len] }
    }

    fn get(&self, s: Subset) -> bool {
        let i = s.index();
        self.words[i / 64] >> (i % 64) & 1 == 1
    }

    /// Returns true when `s` was not present.
    fn insert(&mut self, s: Subset) -> bool {
        let i = s.index();
        let was = self.get(s);
        self.words[i / 64] |= 1 << (i % 64);
        !was
    }
}

/// A paving on `{0, …, n−1}`. Members are kept duplicate-free in canonical
/// order (cardinality, then bitmask).
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Paving {
    n: usize,
    sets: Vec<Subset>,
    table: SetTable,
}

impl fmt::Debug for Paving {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(&self.sets).finish()
    }
}

/// True iff the family contains `∅`.
pub fn is_paving(family: &[Subset]) -> bool {
    family.iter().any(|s| s.is_empty())
}

impl Paving {
    pub fn new(n: usize, sets: impl IntoIterator<Item = Subset>) -> Result<Self, PavingError> {
        if n == 0 || n > MAX_GROUND {
            return Err(GroundError::BadSize(n).into());
        }
        let mut table = SetTable::new(n);
        let mut list = Vec::new();
        for s in sets {
            if s.ground_len() != n {
                return Err(PavingError::ForeignSubset(s));
            }
            if table.insert(s) {
                list.push(s);
            }
        }
        if !table.get(Subset::empty(n)) {
            return Err(PavingError::MissingEmpty);
        }
        list.sort_by(Subset::canonical_cmp);
        Ok(Paving { n, sets: list, table })
    }

    /// Builds a paving from element-index lists.
    pub fn from_lists<I, J>(n: usize, lists: I) -> Result<Self, PavingError>
    where
        I: IntoIterator<Item = J>,
        J: IntoIterator<Item = usize>,
    {
        let sets = lists.into_iter().map(|l| Subset::from_elements(n, l)).collect::<Result<Vec<_>, _>>()?;
        Paving::new(n, sets)
    }

    pub fn power_set(n: usize) -> Self {
        Paving::new(n, crate::ground::power_set(n)).expect("power set contains ∅")
    }

    /// `{∅}`.
    pub fn only_empty(n: usize) -> Self {
        Paving::new(n, [Subset::empty(n)]).expect("contains ∅")
    }

    /// `{∅, X}`.
    pub fn trivial(n: usize) -> Self {
        Paving::new(n, [Subset::empty(n), Subset::full(n)]).expect("contains ∅")
    }

    /// The algebra whose atoms are the given blocks. Blocks must partition
    /// the ground set.
    pub fn generated_by_partition(n: usize, blocks: &[Subset]) -> Self {
        let k = blocks.len();
        assert!(k < 32);
        let sets = (0u32..1 << k).map(|mask| {
            blocks
                .iter()
                .enumerate()
                .filter(|(i, _)| mask >> i & 1 == 1)
                .fold(Subset::empty(n), |acc, (_, b)| acc.union(*b))
        });
        Paving::new(n, sets).expect("contains ∅")
    }

    pub fn ground_len(&self) -> usize {
        self.n
    }

    pub fn sets(&self) -> &[Subset] {
        &self.sets
    }

    pub fn iter(&self) -> impl Iterator<Item = Subset> + '_ {
        self.sets.iter().copied()
    }

    pub fn len(&self) -> usize {
        self.sets.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn contains(&self, s: Subset) -> bool {
        s.ground_len() == self.n && self.table.get(s)
    }

    pub fn is_subfamily(&self, other: &Paving) -> bool {
        self.n == other.n && self.sets.iter().all(|&s| other.contains(s))
    }

    /// Members common to both pavings.
    pub fn intersection(&self, other: &Paving) -> Paving {
        Paving::new(self.n, self.iter().filter(|&s| other.contains(s))).expect("both contain ∅")
    }

    /// First pair of members whose combination is missing, in canonical order.
    pub fn stability_violation(&self, op: SetOp) -> Option<(Subset, Subset)> {
        for (i, &a) in self.sets.iter().enumerate() {
            for &b in &self.sets[i + 1..] {
                if !self.table.get(op.apply(a, b)) {
                    return Some((a, b));
                }
            }
        }
        None
    }

    pub fn is_stable(&self, op: SetOp) -> bool {
        self.stability_violation(op).is_none()
    }

    /// Stable for both `∩f` and `∪f`.
    pub fn is_lattice(&self) -> bool {
        self.is_stable(SetOp::Intersection) && self.is_stable(SetOp::Union)
    }

    /// Smallest superfamily closed under the given operations.
    pub fn close_under(&self, ops: &[SetOp]) -> Paving {
        let mut table = self.table.clone();
        let mut members = self.sets.clone();
        let mut frontier = self.sets.clone();
        while let Some(s) = frontier.pop() {
            let snapshot = members.len();
            for i in 0..snapshot {
                let t = members[i];
                for op in ops {
                    let u = op.apply(s, t);
                    if table.insert(u) {
                        members.push(u);
                        frontier.push(u);
                    }
                }
            }
        }
        members.sort_by(Subset::canonical_cmp);
        Paving { n: self.n, sets: members, table }
    }

    pub fn algebra_defect(&self) -> Option<AlgebraDefect> {
        if !self.contains(Subset::full(self.n)) {
            return Some(AlgebraDefect::MissingFull);
        }
        if let Some(&a) = self.sets.iter().find(|a| !self.contains(a.complement())) {
            return Some(AlgebraDefect::MissingComplement(a));
        }
        self.stability_violation(SetOp::Union).map(|(a, b)| AlgebraDefect::MissingUnion(a, b))
    }

    /// Contains `∅` and `X` and is closed under complement and union.
    pub fn is_algebra(&self) -> bool {
        self.algebra_defect().is_none()
    }

    /// Atoms of an algebra: `x` and `y` share a block iff no member
    /// separates them. For a finite algebra these are the minimal nonempty
    /// members, and each ultrafilter is the principal one at an atom.
    pub fn atoms(&self) -> Result<AtomPartition, PavingError> {
        if let Some(d) = self.algebra_defect() {
            return Err(PavingError::NotAnAlgebra(d));
        }
        Ok(self.separation_classes())
    }

    /// Classes of the "no member separates" relation, for any paving.
    pub fn separation_classes(&self) -> AtomPartition {
        let signature = |x: usize| self.sets.iter().map(|s| s.contains(x)).collect::<Vec<bool>>();
        let mut blocks: Vec<(Vec<bool>, Subset)> = Vec::new();
        for x in 0..self.n {
            let sig = signature(x);
            match blocks.iter_mut().find(|(s, _)| *s == sig) {
                Some((_, b)) => *b = b.with(x),
                None => blocks.push((sig, Subset::singleton(self.n, x))),
            }
        }
        AtomPartition { n: self.n, blocks: blocks.into_iter().map(|(_, b)| b).collect() }
    }

    /// All pavings on an `n`-set, in increasing order of the family
    /// bitmask. There are `2^(2^n − 1)` of them.
    pub fn all(n: usize) -> impl Iterator<Item = Paving> {
        assert!(n <= 4, "too many pavings to list");
        let nonempty = (1u32 << n) - 1;
        (0u64..1 << nonempty).map(move |mask| {
            let sets = std::iter::once(Subset::empty(n))
                .chain((1..=full_mask(n)).filter(|b| mask >> (b - 1) & 1 == 1).map(|b| Subset::from_bits(n, b)));
            Paving::new(n, sets).expect("contains ∅")
        })
    }
}

/// A partition of the ground set into nonempty blocks, ordered by least
/// element.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct AtomPartition {
    n: usize,
    blocks: Vec<Subset>,
}

impl AtomPartition {
    pub fn new(n: usize, mut blocks: Vec<Subset>) -> Option<Self> {
        let mut seen = Subset::empty(n);
        for b in &blocks {
            if b.is_empty() || b.ground_len() != n || !b.intersection(seen).is_empty() {
                return None;
            }
            seen = seen.union(*b);
        }
        if !seen.is_full() {
            return None;
        }
        blocks.sort_by_key(|b| b.elements().next());
        Some(AtomPartition { n, blocks })
    }

    pub fn blocks(&self) -> &[Subset] {
        &self.blocks
    }

    pub fn block_of(&self, x: usize) -> Subset {
        *self.blocks.iter().find(|b| b.contains(x)).expect("partition covers the ground set")
    }

    pub fn len(&self) -> usize {
        self.blocks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.blocks.is_empty()
    }

    /// Every partition of `{0, …, n−1}` (restricted growth strings).
    pub fn all(n: usize) -> Vec<AtomPartition> {
        fn rec(n: usize, i: usize, labels: &mut Vec<usize>, max: usize, out: &mut Vec<AtomPartition>) {
            if i == n {
                let mut blocks = vec![Subset::empty(n); max];
                for (x, &l) in labels.iter().enumerate() {
                    blocks[l] = blocks[l].with(x);
                }
                out.push(AtomPartition::new(n, blocks).expect("valid partition"));
                return;
            }
            for l in 0..=max {
                labels.push(l);
                rec(n, i + 1, labels, max.max(l + 1), out);
                labels.pop();
            }
        }
        let mut out = Vec::new();
        rec(n, 0, &mut Vec::new(), 0, &mut out);
        out
    }
}
