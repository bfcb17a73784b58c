//! Measurability of ℕ-functions for the three symbolic pavings.
//!
//! Each criterion follows from the sandwich condition: for all `a > b > 0`
//! some `H` in the paving satisfies `{f ≥ a} ⊆ H ⊆ {f > b}`.
//!
//! * Finite sets. A finite `H` exists iff `{f ≥ a}` is finite, so `f` is
//!   measurable iff every `{f ≥ a}` with `a > 0` is finite, i.e.
//!   `limsup f = 0`.
//! * Cofinite sets and `∅`. A sandwich exists iff `{f ≥ a} = ∅` or
//!   `{f > b}` is cofinite. With `s = sup f > 0`, every `b < s` has some
//!   `a ∈ (b, s)` with `{f ≥ a} ≠ ∅`, so `{f > b}` must be cofinite for
//!   all `b < s`: `liminf f ≥ s`, i.e. `liminf f = sup f`. The zero
//!   function is measurable. Harmonic tails approaching their limit from
//!   below are measurable; those approaching from above are not.
//! * Finite or cofinite sets. A sandwich exists iff `{f ≥ a}` is finite or
//!   `{f > b}` is cofinite, which holds for all pairs iff `lim f` exists in
//!   `[0, +∞]`.

use num_rational::BigRational;

use crate::ext::ExtRat;
use crate::nat::{NatFn, NatLevel, NatPavingKind, NatSet};

/// Measurability of `f` for the given ℕ paving.
pub fn nat_is_measurable(f: &NatFn, kind: NatPavingKind) -> bool {
    match kind {
        NatPavingKind::FiniteSets => f.limsup().is_zero(),
        NatPavingKind::CofinitePlusEmpty => {
            let sup = f.sup();
            sup.is_zero() || f.liminf() == sup
        }
        NatPavingKind::FiniteOrCofinite => f.limit().is_some(),
    }
}

fn finite_level(l: &NatLevel) -> bool {
    matches!(l, NatLevel::Set(s) if s.is_finite())
}

fn cofinite_level(l: &NatLevel) -> bool {
    matches!(l, NatLevel::Set(s) if s.is_cofinite())
}

/// A member of the paving between `{f ≥ a}` and `{f > b}`, decided from the
/// closed forms of the level sets. Needs `a > b > 0`.
pub fn nat_sandwich(f: &NatFn, kind: NatPavingKind, a: &BigRational, b: &BigRational) -> Option<NatSet> {
    assert!(a > b && *b > BigRational::from_integer(0.into()), "need a > b > 0");
    let lower = f.level_ge(a);
    let upper = f.level_gt(b);
    let take_lower = || lower.as_set().cloned();
    let take_upper = || upper.as_set().cloned();
    match kind {
        NatPavingKind::FiniteSets => finite_level(&lower).then(take_lower).flatten(),
        NatPavingKind::CofinitePlusEmpty => {
            if lower.is_empty() {
                Some(NatSet::empty())
            } else {
                cofinite_level(&upper).then(take_upper).flatten()
            }
        }
        NatPavingKind::FiniteOrCofinite => {
            if finite_level(&lower) {
                take_lower()
            } else {
                cofinite_level(&upper).then(take_upper).flatten()
            }
        }
    }
}

fn halfway(lo: &ExtRat, hi: &ExtRat) -> (BigRational, BigRational) {
    let (a, b) = super::critical_pair(lo, hi);
    (a.as_finite().cloned().expect("finite"), b.as_finite().cloned().expect("finite"))
}

/// A pair `a > b > 0` with no sandwich set, when `f` is not measurable.
pub fn nat_failing_pair(f: &NatFn, kind: NatPavingKind) -> Option<(BigRational, BigRational)> {
    if nat_is_measurable(f, kind) {
        return None;
    }
    Some(match kind {
        // limsup L > 0: {f ≥ a} is infinite for a < L.
        NatPavingKind::FiniteSets => halfway(&ExtRat::zero(), &f.limsup()),
        // liminf l < sup s: {f > b} misses infinitely many points for b > l,
        // and {f ≥ a} is nonempty for a < s.
        NatPavingKind::CofinitePlusEmpty => halfway(&f.liminf(), &f.sup()),
        // liminf < limsup: both level sets are parity sets in between.
        NatPavingKind::FiniteOrCofinite => halfway(&f.liminf(), &f.limsup()),
    })
}

/// Limits of `f` along the ultrafilters of the finite/cofinite algebra.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NatUltrafilterLimits {
    f: NatFn,
    /// Limit along the unique non-principal ultrafilter (the cofinite
    /// sets), if it exists.
    pub frechet: Option<ExtRat>,
}

impl NatUltrafilterLimits {
    /// Limit along the principal ultrafilter at `n`: the value `f(n)`.
    pub fn principal(&self, n: u64) -> ExtRat {
        self.f.eval(n)
    }
}

pub fn nat_ultrafilter_limits(f: &NatFn) -> NatUltrafilterLimits {
    NatUltrafilterLimits { f: f.clone(), frechet: f.limit() }
}
