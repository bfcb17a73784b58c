//! Monotone set functions.
//!
//! [`Capacity`] is a dense table over the power set. [`ZeroOneCapacity`]
//! stores a `{0,1}`-valued capacity as its upward-closed family of
//! 1-sets. [`PartialCapacity`] is known only on a paving and extends to the
//! power set through its inner and outer envelopes. [`SetFunction`] drops
//! monotonicity and feeds the Carathéodory construction.

use std::fmt;

use thiserror::Error;

use crate::ext::ExtRat;
use crate::ground::{power_set, Subset, MAX_GROUND, MAX_ORACLE_GROUND};
use crate::paving::{Paving, SetOp};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CapacityError {
    #[error("expected {expected} table entries, got {got}")]
    WrongSize { expected: usize, got: usize },
    #[error("ground set size {0} is outside 1..={MAX_GROUND}")]
    BadGround(usize),
    #[error("value at the empty set must be 0, got {0}")]
    NonzeroEmpty(ExtRat),
    #[error("not monotone: value at {smaller} exceeds value at {larger}")]
    NotMonotone { smaller: Subset, larger: Subset },
    #[error("family is not upward closed: {member} is present but {missing} is not")]
    NotUpwardClosed { member: Subset, missing: Subset },
    #[error("an upward-closed family of 1-sets may not contain the empty set")]
    EmptySetIncluded,
    #[error("exhaustive enumeration needs a ground set of size 1..={MAX_ORACLE_GROUND}, got {0}")]
    GroundTooLarge(usize),
    #[error("{0} is not a member of the domain paving")]
    NotInDomain(Subset),
    #[error("no value given for domain member {0}")]
    MissingValue(Subset),
    #[error("value at {0} is negative")]
    Negative(Subset),
    #[error("domain is not stable for {op:?}: {left} and {right}")]
    DomainNotLattice { op: SetOp, left: Subset, right: Subset },
    #[error("subset {0} belongs to a ground set of a different size")]
    ForeignSubset(Subset),
}

fn check_ground(n: usize) -> Result<(), CapacityError> {
    if n == 0 || n > MAX_GROUND {
        Err(CapacityError::BadGround(n))
    } else {
        Ok(())
    }
}

/// First cover pair `A ⊂ A ∪ {x}` where the table decreases.
fn monotonicity_violation(n: usize, table: &[ExtRat]) -> Option<(Subset, Subset)> {
    for a in power_set(n) {
        for x in a.complement().elements() {
            let b = a.with(x);
            if table[a.index()] > table[b.index()] {
                return Some((a, b));
            }
        }
    }
    None
}

/// `α: 𝒫(X) → [0, +∞]` with `α(∅) = 0` and `A ⊆ B ⇒ α(A) ≤ α(B)`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Capacity {
    n: usize,
    table: Vec<ExtRat>,
}

impl fmt::Debug for Capacity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_map().entries(power_set(self.n).map(|a| (a, &self.table[a.index()]))).finish()
    }
}

impl Capacity {
    /// `table[bits]` is the value at the subset with that bitmask.
    pub fn new(n: usize, table: Vec<ExtRat>) -> Result<Self, CapacityError> {
        check_ground(n)?;
        let expected = 1usize << n;
        if table.len() != expected {
            return Err(CapacityError::WrongSize { expected, got: table.len() });
        }
        if !table[0].is_zero() {
            return Err(CapacityError::NonzeroEmpty(table[0].clone()));
        }
        if let Some((smaller, larger)) = monotonicity_violation(n, &table) {
            return Err(CapacityError::NotMonotone { smaller, larger });
        }
        Ok(Capacity { n, table })
    }

    pub fn from_fn(n: usize, f: impl Fn(Subset) -> ExtRat) -> Result<Self, CapacityError> {
        check_ground(n)?;
        Capacity::new(n, power_set(n).map(f).collect())
    }

    /// Additive capacity `A ↦ Σ_{x∈A} w(x)`.
    pub fn additive(weights: &[ExtRat]) -> Result<Self, CapacityError> {
        let n = weights.len();
        Capacity::from_fn(n, |a| a.elements().map(|x| weights[x].clone()).sum())
    }

    /// `A ↦ |A|`.
    pub fn counting(n: usize) -> Self {
        Capacity::from_fn(n, |a| ExtRat::int(a.len() as i64)).expect("cardinality is a capacity")
    }

    pub fn ground_len(&self) -> usize {
        self.n
    }

    pub fn value(&self, a: Subset) -> &ExtRat {
        debug_assert_eq!(a.ground_len(), self.n);
        &self.table[a.index()]
    }

    pub fn table(&self) -> &[ExtRat] {
        &self.table
    }

    /// Pointwise `self ≤ other`.
    pub fn le(&self, other: &Capacity) -> bool {
        self.n == other.n && self.table.iter().zip(&other.table).all(|(a, b)| a <= b)
    }

    /// The `{0,1}` capacity when every value is 0 or 1.
    pub fn to_zero_one(&self) -> Option<ZeroOneCapacity> {
        let mut family = Vec::new();
        for a in power_set(self.n) {
            let v = self.value(a);
            if *v == ExtRat::one() {
                family.push(a);
            } else if !v.is_zero() {
                return None;
            }
        }
        Some(ZeroOneCapacity::from_family(self.n, family).expect("monotone {0,1} table is an up-set"))
    }
}

/// Equality of two capacities on every member of `e`, `∞ = ∞` included.
pub fn agree_on(alpha: &Capacity, beta: &Capacity, e: &Paving) -> bool {
    e.iter().all(|h| alpha.value(h) == beta.value(h))
}

/// A `{0,1}`-valued capacity, stored as the family `{A : α(A) = 1}`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct ZeroOneCapacity {
    n: usize,
    mask: u64,
    family: Vec<Subset>,
}

impl fmt::Debug for ZeroOneCapacity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(&self.family).finish()
    }
}

impl ZeroOneCapacity {
    /// Ground sets up to 6 elements, so that the family fits a 64-bit mask.
    pub fn from_family(n: usize, sets: impl IntoIterator<Item = Subset>) -> Result<Self, CapacityError> {
        if n == 0 || n > 6 {
            return Err(CapacityError::BadGround(n));
        }
        let mut mask = 0u64;
        for s in sets {
            if s.ground_len() != n {
                return Err(CapacityError::ForeignSubset(s));
            }
            mask |= 1 << s.index();
        }
        if mask & 1 == 1 {
            return Err(CapacityError::EmptySetIncluded);
        }
        for a in power_set(n).filter(|a| mask >> a.index() & 1 == 1) {
            if let Some(x) = a.complement().elements().find(|&x| mask >> a.with(x).index() & 1 == 0) {
                return Err(CapacityError::NotUpwardClosed { member: a, missing: a.with(x) });
            }
        }
        Ok(ZeroOneCapacity::from_mask_unchecked(n, mask))
    }

    fn from_mask_unchecked(n: usize, mask: u64) -> Self {
        let mut family: Vec<Subset> = power_set(n).filter(|a| mask >> a.index() & 1 == 1).collect();
        family.sort_by(Subset::canonical_cmp);
        ZeroOneCapacity { n, mask, family }
    }

    pub fn ground_len(&self) -> usize {
        self.n
    }

    /// Bit `i` is set iff the subset with bitmask `i` has value 1.
    pub fn mask(&self) -> u64 {
        self.mask
    }

    /// Members in canonical order.
    pub fn family(&self) -> &[Subset] {
        &self.family
    }

    pub fn contains(&self, a: Subset) -> bool {
        self.mask >> a.index() & 1 == 1
    }

    pub fn value(&self, a: Subset) -> ExtRat {
        if self.contains(a) {
            ExtRat::one()
        } else {
            ExtRat::zero()
        }
    }

    pub fn to_capacity(&self) -> Capacity {
        Capacity { n: self.n, table: power_set(self.n).map(|a| self.value(a)).collect() }
    }

    /// Family mask restricted to members of `e`.
    pub fn trace_mask(&self, e: &Paving) -> u64 {
        e.iter().filter(|&h| self.contains(h)).fold(0, |m, h| m | 1 << h.index())
    }
}

/// Every `{0,1}` capacity on an `n`-set, ordered by family mask.
///
/// Subsets are decided from the largest down; a set may join the family
/// only when all of its one-larger supersets already have, which is exactly
/// upward closure. `∅` is never added.
pub fn enumerate_zero_one(n: usize) -> Result<Vec<ZeroOneCapacity>, CapacityError> {
    if n == 0 || n > MAX_ORACLE_GROUND {
        return Err(CapacityError::GroundTooLarge(n));
    }
    let mut order: Vec<Subset> = power_set(n).filter(|a| !a.is_empty()).collect();
    order.sort_by(|a, b| b.canonical_cmp(a));

    fn rec(order: &[Subset], i: usize, mask: u64, out: &mut Vec<u64>) {
        let Some(&a) = order.get(i) else {
            out.push(mask);
            return;
        };
        rec(order, i + 1, mask, out);
        if a.complement().elements().all(|x| mask >> a.with(x).index() & 1 == 1) {
            rec(order, i + 1, mask | 1 << a.index(), out);
        }
    }

    let mut masks = Vec::new();
    rec(&order, 0, 0, &mut masks);
    masks.sort_unstable();
    Ok(masks.into_iter().map(|m| ZeroOneCapacity::from_mask_unchecked(n, m)).collect())
}

/// Comparison used by [`PartialCapacity::modularity_violation`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ModularMode {
    /// `δ(A∩B) + δ(A∪B) = δ(A) + δ(B)`.
    Eq,
    /// `δ(A∩B) + δ(A∪B) ≤ δ(A) + δ(B)` (submodular).
    Le,
    /// `δ(A∩B) + δ(A∪B) ≥ δ(A) + δ(B)` (supermodular).
    Ge,
}

impl ModularMode {
    pub fn holds(self, lhs: &ExtRat, rhs: &ExtRat) -> bool {
        match self {
            ModularMode::Eq => lhs == rhs,
            ModularMode::Le => lhs <= rhs,
            ModularMode::Ge => lhs >= rhs,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            ModularMode::Eq => "eq",
            ModularMode::Le => "le",
            ModularMode::Ge => "ge",
        }
    }

    pub fn from_name(s: &str) -> Option<Self> {
        [ModularMode::Eq, ModularMode::Le, ModularMode::Ge].into_iter().find(|m| m.name() == s)
    }
}

/// A monotone set function known only on a paving `ℰ`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct PartialCapacity {
    domain: Paving,
    values: Vec<ExtRat>,
}

impl fmt::Debug for PartialCapacity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_map().entries(self.domain.iter().zip(&self.values)).finish()
    }
}

impl PartialCapacity {
    pub fn new(domain: Paving, assignments: impl IntoIterator<Item = (Subset, ExtRat)>) -> Result<Self, CapacityError> {
        let mut slots: Vec<Option<ExtRat>> = vec![None; domain.len()];
        for (a, v) in assignments {
            let i =
                domain.sets().binary_search_by(|s| s.canonical_cmp(&a)).map_err(|_| CapacityError::NotInDomain(a))?;
            slots[i] = Some(v);
        }
        let mut values = Vec::with_capacity(slots.len());
        for (slot, a) in slots.into_iter().zip(domain.iter()) {
            values.push(slot.ok_or(CapacityError::MissingValue(a))?);
        }
        if !values[0].is_zero() {
            return Err(CapacityError::NonzeroEmpty(values[0].clone()));
        }
        let sets = domain.sets();
        for i in 0..sets.len() {
            for j in 0..sets.len() {
                if i != j && sets[i].is_subset(sets[j]) && values[i] > values[j] {
                    return Err(CapacityError::NotMonotone { smaller: sets[i], larger: sets[j] });
                }
            }
        }
        Ok(PartialCapacity { domain, values })
    }

    /// `α` restricted to `ℰ`.
    pub fn restrict(alpha: &Capacity, domain: &Paving) -> Self {
        let values = domain.iter().map(|h| alpha.value(h).clone()).collect();
        PartialCapacity { domain: domain.clone(), values }
    }

    pub fn domain(&self) -> &Paving {
        &self.domain
    }

    pub fn ground_len(&self) -> usize {
        self.domain.ground_len()
    }

    pub fn value(&self, a: Subset) -> Option<&ExtRat> {
        self.domain.sets().binary_search_by(|s| s.canonical_cmp(&a)).ok().map(|i| &self.values[i])
    }

    pub fn entries(&self) -> impl Iterator<Item = (Subset, &ExtRat)> + '_ {
        self.domain.iter().zip(&self.values)
    }

    /// `α_*(A) = sup{δ(H) : H ∈ ℰ, H ⊆ A}`, with `sup ∅ = 0`.
    pub fn inner_extension(&self) -> Capacity {
        let n = self.ground_len();
        let mut table = vec![ExtRat::zero(); 1 << n];
        for (h, v) in self.entries() {
            table[h.index()] = v.clone();
        }
        // Increasing bitmask order visits every A ∖ {x} before A.
        for a in power_set(n) {
            for x in a.elements() {
                let below = table[a.difference(Subset::singleton(n, x)).index()].clone();
                if below > table[a.index()] {
                    table[a.index()] = below;
                }
            }
        }
        Capacity { n, table }
    }

    /// `α^*(A) = inf{δ(H) : H ∈ ℰ, H ⊇ A}`, with `inf ∅ = +∞`.
    pub fn outer_extension(&self) -> Capacity {
        let n = self.ground_len();
        let mut table = vec![ExtRat::PosInf; 1 << n];
        for (h, v) in self.entries() {
            table[h.index()] = v.clone();
        }
        let all: Vec<Subset> = power_set(n).collect();
        for &a in all.iter().rev() {
            for x in a.complement().elements() {
                let above = table[a.with(x).index()].clone();
                if above < table[a.index()] {
                    table[a.index()] = above;
                }
            }
        }
        table[0] = ExtRat::zero();
        Capacity { n, table }
    }

    /// First pair `(A, B)` of members, in canonical order, where the
    /// modular relation fails. Needs a domain stable for `∩` and `∪`.
    pub fn modularity_violation(&self, mode: ModularMode) -> Result<Option<(Subset, Subset)>, CapacityError> {
        for op in [SetOp::Intersection, SetOp::Union] {
            if let Some((left, right)) = self.domain.stability_violation(op) {
                return Err(CapacityError::DomainNotLattice { op, left, right });
            }
        }
        let sets = self.domain.sets();
        for (i, &a) in sets.iter().enumerate() {
            for &b in &sets[i + 1..] {
                let v = |s: Subset| self.value(s).expect("domain is a lattice").clone();
                let lhs = v(a.intersection(b)) + v(a.union(b));
                let rhs = v(a) + v(b);
                if !mode.holds(&lhs, &rhs) {
                    return Ok(Some((a, b)));
                }
            }
        }
        Ok(None)
    }

    pub fn is_modular(&self, mode: ModularMode) -> Result<bool, CapacityError> {
        Ok(self.modularity_violation(mode)?.is_none())
    }
}

/// `μ: 𝒫(X) → [0, +∞]` with `μ(∅) = 0`, not necessarily monotone.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct SetFunction {
    n: usize,
    table: Vec<ExtRat>,
}

impl fmt::Debug for SetFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_map().entries(power_set(self.n).map(|a| (a, &self.table[a.index()]))).finish()
    }
}

impl SetFunction {
    pub fn new(n: usize, table: Vec<ExtRat>) -> Result<Self, CapacityError> {
        check_ground(n)?;
        let expected = 1usize << n;
        if table.len() != expected {
            return Err(CapacityError::WrongSize { expected, got: table.len() });
        }
        if !table[0].is_zero() {
            return Err(CapacityError::NonzeroEmpty(table[0].clone()));
        }
        if let Some(i) = table.iter().position(ExtRat::is_negative) {
            return Err(CapacityError::Negative(Subset::from_bits(n, i as u32)));
        }
        Ok(SetFunction { n, table })
    }

    pub fn ground_len(&self) -> usize {
        self.n
    }

    pub fn value(&self, a: Subset) -> &ExtRat {
        &self.table[a.index()]
    }

    pub fn table(&self) -> &[ExtRat] {
        &self.table
    }

    /// True iff `μ(E) = μ(E ∩ A) + μ(E ∖ A)` for every `E ⊆ X`.
    pub fn splits(&self, a: Subset) -> bool {
        power_set(self.n).all(|e| *self.value(e) == self.value(e.intersection(a)) + self.value(e.difference(a)))
    }

    /// The sets that split every test set additively. They always form an
    /// algebra, and `μ` is monotone and modular on it.
    pub fn caratheodory_algebra(&self) -> Paving {
        let alg = Paving::new(self.n, power_set(self.n).filter(|&a| self.splits(a))).expect("∅ always splits");
        assert!(alg.is_algebra(), "Carathéodory family must be an algebra");
        alg
    }

    /// `μ` restricted to its Carathéodory algebra.
    pub fn restricted_to_algebra(&self) -> PartialCapacity {
        let alg = self.caratheodory_algebra();
        let values = alg.iter().map(|a| self.value(a).clone()).collect();
        PartialCapacity { domain: alg, values }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn s(n: usize, e: &[usize]) -> Subset {
        Subset::from_elements(n, e.iter().copied()).unwrap()
    }

    fn ints(v: &[i64]) -> Vec<ExtRat> {
        v.iter().map(|&x| ExtRat::int(x)).collect()
    }

    #[test]
    fn make_capacity_examples() {
        assert!(Capacity::new(2, ints(&[0, 1, 2, 2])).is_ok());
        assert_eq!(Capacity::new(2, ints(&[1, 1, 2, 2])), Err(CapacityError::NonzeroEmpty(ExtRat::one())));
        assert_eq!(
            Capacity::new(2, ints(&[0, 2, 0, 1])),
            Err(CapacityError::NotMonotone { smaller: s(2, &[0]), larger: Subset::full(2) })
        );
        assert!(matches!(Capacity::new(2, ints(&[0, 1])), Err(CapacityError::WrongSize { .. })));
    }

    #[test]
    fn zero_one_examples() {
        let full = ZeroOneCapacity::from_family(2, [Subset::full(2)]).unwrap();
        assert_eq!(full.value(Subset::full(2)), ExtRat::one());
        assert_eq!(full.value(s(2, &[0])), ExtRat::zero());
        assert_eq!(
            ZeroOneCapacity::from_family(2, [s(2, &[0])]),
            Err(CapacityError::NotUpwardClosed { member: s(2, &[0]), missing: Subset::full(2) })
        );
        assert_eq!(ZeroOneCapacity::from_family(2, [Subset::empty(2)]), Err(CapacityError::EmptySetIncluded));
        let zero = ZeroOneCapacity::from_family(2, []).unwrap();
        assert!(zero.to_capacity().table().iter().all(ExtRat::is_zero));
    }

    /// Pairs `f0 ≤ f1` of monotone Boolean functions on `n − 1` variables
    /// correspond to monotone functions on `n` variables.
    fn dedekind(n: usize) -> u64 {
        fn monotone(n: usize) -> Vec<Vec<bool>> {
            if n == 0 {
                return vec![vec![false], vec![true]];
            }
            let prev = monotone(n - 1);
            let mut out = Vec::new();
            for f0 in &prev {
                for f1 in &prev {
                    if f0.iter().zip(f1).all(|(a, b)| !a || *b) {
                        out.push(f0.iter().chain(f1).copied().collect());
                    }
                }
            }
            out
        }
        monotone(n).len() as u64
    }

    #[test]
    fn enumeration_counts_match_recursive_oracle() {
        for n in 1..=4 {
            let caps = enumerate_zero_one(n).unwrap();
            assert_eq!(caps.len() as u64, dedekind(n) - 1, "n = {n}");
        }
        let counts: Vec<usize> = (1..=4).map(|n| enumerate_zero_one(n).unwrap().len()).collect();
        assert_eq!(counts, vec![2, 5, 19, 167]);
        assert!(matches!(enumerate_zero_one(6), Err(CapacityError::GroundTooLarge(6))));
    }

    #[test]
    fn enumeration_is_sorted_unique_and_valid() {
        let caps = enumerate_zero_one(3).unwrap();
        assert!(caps.windows(2).all(|w| w[0].mask() < w[1].mask()));
        for c in &caps {
            let again = ZeroOneCapacity::from_family(3, c.family().iter().copied()).unwrap();
            assert_eq!(&again, c);
            assert_eq!(c.to_capacity().to_zero_one().as_ref(), Some(c));
            assert!(Capacity::new(3, c.to_capacity().table().to_vec()).is_ok());
        }
    }

    #[test]
    fn enumeration_is_exactly_the_monotone_zero_one_tables() {
        let n = 3;
        let mut expected = Vec::new();
        for mask in 0u64..1 << (1 << n) {
            let table: Vec<ExtRat> = (0..1 << n).map(|i| ExtRat::int((mask >> i & 1) as i64)).collect();
            if Capacity::new(n, table).is_ok() {
                expected.push(mask);
            }
        }
        let got: Vec<u64> = enumerate_zero_one(n).unwrap().iter().map(|c| c.mask()).collect();
        assert_eq!(got, expected);
    }

    fn partial(e: &Paving, vals: &[(&[usize], i64)]) -> PartialCapacity {
        let n = e.ground_len();
        PartialCapacity::new(e.clone(), vals.iter().map(|(a, v)| (s(n, a), ExtRat::int(*v)))).unwrap()
    }

    #[test]
    fn envelope_examples() {
        let e = Paving::trivial(2);
        let d = partial(&e, &[(&[], 0), (&[0, 1], 1)]);
        assert_eq!(d.inner_extension().table(), &ints(&[0, 0, 0, 1])[..]);
        assert_eq!(d.outer_extension().table(), &ints(&[0, 1, 1, 1])[..]);
        assert!(agree_on(&d.inner_extension(), &d.outer_extension(), &e));
        assert_ne!(d.inner_extension().value(s(2, &[0])), d.outer_extension().value(s(2, &[0])));

        let alpha = Capacity::new(2, ints(&[0, 1, 2, 2])).unwrap();
        let full = PartialCapacity::restrict(&alpha, &Paving::power_set(2));
        assert_eq!(full.inner_extension(), alpha);
        assert_eq!(full.outer_extension(), alpha);

        let only = partial(&Paving::only_empty(2), &[(&[], 0)]);
        assert!(only.inner_extension().table().iter().all(ExtRat::is_zero));
        assert_eq!(only.outer_extension().table(), &[ExtRat::zero(), ExtRat::PosInf, ExtRat::PosInf, ExtRat::PosInf]);
    }

    #[test]
    fn partial_capacity_validation() {
        let e = Paving::from_lists(2, [vec![], vec![0], vec![0, 1]]).unwrap();
        let bad = PartialCapacity::new(
            e.clone(),
            [(Subset::empty(2), ExtRat::zero()), (s(2, &[0]), ExtRat::int(2)), (Subset::full(2), ExtRat::one())],
        );
        assert!(matches!(bad, Err(CapacityError::NotMonotone { .. })));
        let missing = PartialCapacity::new(e.clone(), [(Subset::empty(2), ExtRat::zero())]);
        assert_eq!(missing, Err(CapacityError::MissingValue(s(2, &[0]))));
        let foreign = PartialCapacity::new(e, [(s(2, &[1]), ExtRat::zero())]);
        assert_eq!(foreign, Err(CapacityError::NotInDomain(s(2, &[1]))));
    }

    #[test]
    fn modularity_examples() {
        let p = Paving::power_set(2);
        let counting = PartialCapacity::restrict(&Capacity::counting(2), &p);
        assert!(counting.is_modular(ModularMode::Eq).unwrap());
        let top = partial(&p, &[(&[], 0), (&[0], 0), (&[1], 0), (&[0, 1], 1)]);
        assert_eq!(top.modularity_violation(ModularMode::Eq).unwrap(), Some((s(2, &[0]), s(2, &[1]))));
        assert!(top.is_modular(ModularMode::Ge).unwrap());
        assert!(!top.is_modular(ModularMode::Le).unwrap());
        let chain = partial(&Paving::trivial(2), &[(&[], 0), (&[0, 1], 7)]);
        assert!(chain.is_modular(ModularMode::Eq).unwrap());
        let not_lattice = Paving::from_lists(2, [vec![], vec![0], vec![1]]).unwrap();
        let d = partial(&not_lattice, &[(&[], 0), (&[0], 1), (&[1], 1)]);
        assert!(matches!(d.is_modular(ModularMode::Eq), Err(CapacityError::DomainNotLattice { op: SetOp::Union, .. })));
    }

    #[test]
    fn caratheodory_examples() {
        let additive = SetFunction::new(2, ints(&[0, 1, 1, 2])).unwrap();
        assert_eq!(additive.caratheodory_algebra(), Paving::power_set(2));
        let flat = SetFunction::new(2, ints(&[0, 1, 1, 1])).unwrap();
        assert_eq!(flat.caratheodory_algebra(), Paving::trivial(2));
        let zero = SetFunction::new(3, vec![ExtRat::zero(); 8]).unwrap();
        assert_eq!(zero.caratheodory_algebra(), Paving::power_set(3));
        assert!(matches!(SetFunction::new(1, ints(&[0, -1])), Err(CapacityError::Negative(_))));
    }

    #[test]
    fn caratheodory_with_infinite_values() {
        // μ(X) = ∞ forces only equalities of the form ∞ = ∞ + x at E = X.
        let mu = SetFunction::new(2, vec![ExtRat::zero(), ExtRat::one(), ExtRat::one(), ExtRat::PosInf]).unwrap();
        assert_eq!(mu.caratheodory_algebra(), Paving::trivial(2));
        let mu = SetFunction::new(2, vec![ExtRat::zero(), ExtRat::PosInf, ExtRat::one(), ExtRat::PosInf]).unwrap();
        assert_eq!(mu.caratheodory_algebra(), Paving::power_set(2));
    }

    fn value_strategy() -> impl Strategy<Value = ExtRat> {
        prop_oneof![4 => (0i64..4, 1i64..3).prop_map(|(p, q)| ExtRat::ratio(p, q)), 1 => Just(ExtRat::PosInf)]
    }

    fn capacity_strategy(n: usize) -> impl Strategy<Value = Capacity> {
        // Sums of nonnegative increments over subsets give a monotone table.
        proptest::collection::vec(value_strategy(), 1 << n).prop_map(move |inc| {
            Capacity::from_fn(n, |a| a.subsets().filter(|b| !b.is_empty()).map(|b| inc[b.index()].clone()).sum())
                .unwrap()
        })
    }

    proptest! {
        #[test]
        fn caratheodory_family_is_an_algebra_with_monotone_modular_restriction(
            table in (1usize..=4).prop_flat_map(|n| proptest::collection::vec(value_strategy(), 1 << n))
        ) {
            let n = table.len().trailing_zeros() as usize;
            let mut table = table;
            table[0] = ExtRat::zero();
            let mu = SetFunction::new(n, table).unwrap();
            let alg = mu.caratheodory_algebra();
            prop_assert!(alg.is_algebra());
            let d = PartialCapacity::new(alg.clone(), alg.iter().map(|a| (a, mu.value(a).clone())));
            prop_assert!(d.is_ok());
            prop_assert!(d.unwrap().is_modular(ModularMode::Eq).unwrap());
        }

        #[test]
        fn envelopes_bracket_every_extension(alpha in (1usize..=4).prop_flat_map(capacity_strategy), pick in any::<u64>()) {
            let n = alpha.ground_len();
            let sets = power_set(n).filter(|a| a.is_empty() || pick >> (a.index() % 64) & 1 == 1);
            let e = Paving::new(n, sets).unwrap();
            let d = PartialCapacity::restrict(&alpha, &e);
            let inner = d.inner_extension();
            let outer = d.outer_extension();
            prop_assert!(inner.le(&alpha));
            prop_assert!(alpha.le(&outer));
            prop_assert!(agree_on(&inner, &alpha, &e));
            prop_assert!(agree_on(&outer, &alpha, &e));
            prop_assert!(Capacity::new(n, inner.table().to_vec()).is_ok());
            prop_assert!(Capacity::new(n, outer.table().to_vec()).is_ok());
        }
    }
}
