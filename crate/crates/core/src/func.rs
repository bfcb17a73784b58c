//! Point functions on a finite ground set.

use thiserror::Error;

use crate::ext::ExtRat;
use crate::ground::{Subset, MAX_GROUND};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FuncError {
    #[error("ground set size {0} is outside 1..={MAX_GROUND}")]
    BadSize(usize),
    #[error("value {value} at element {index} is negative; use a signed function")]
    Negative { index: usize, value: ExtRat },
    #[error("functions live on ground sets of size {left} and {right}")]
    GroundMismatch { left: usize, right: usize },
    #[error("operation needs a nonnegative function")]
    SignedInput,
    #[error("shift amount must be finite and nonnegative, got {0}")]
    BadShift(ExtRat),
    #[error("undefined sum ∞ + (−∞) at element {0}")]
    UndefinedSum(usize),
}

/// Pointwise combination for [`PointFn::pointwise`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Combine {
    Min,
    Max,
    Add,
}

/// A function `X → [0, +∞]`, or `X → ℝ̄` when built with [`PointFn::signed`].
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct PointFn {
    values: Vec<ExtRat>,
    signed: bool,
}

impl std::fmt::Debug for PointFn {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_list().entries(&self.values).finish()
    }
}

impl PointFn {
    /// Nonnegative function from its values.
    pub fn new(values: Vec<ExtRat>) -> Result<Self, FuncError> {
        check_size(values.len())?;
        if let Some((index, value)) = values.iter().enumerate().find(|(_, v)| v.is_negative()) {
            return Err(FuncError::Negative { index, value: value.clone() });
        }
        Ok(PointFn { values, signed: false })
    }

    /// Extended-real-valued function. Only the signed integral and the
    /// signed measurability checks accept these.
    pub fn signed(values: Vec<ExtRat>) -> Result<Self, FuncError> {
        check_size(values.len())?;
        Ok(PointFn { values, signed: true })
    }

    /// Builds a nonnegative function when possible, a signed one otherwise.
    pub fn auto(values: Vec<ExtRat>) -> Result<Self, FuncError> {
        if values.iter().any(ExtRat::is_negative) {
            PointFn::signed(values)
        } else {
            PointFn::new(values)
        }
    }

    pub fn from_ints(values: &[i64]) -> Result<Self, FuncError> {
        PointFn::auto(values.iter().map(|&v| ExtRat::int(v)).collect())
    }

    pub fn zero(n: usize) -> Self {
        PointFn::constant(n, ExtRat::zero())
    }

    pub fn constant(n: usize, c: ExtRat) -> Self {
        assert!(c.is_nonnegative());
        PointFn { values: vec![c; n], signed: false }
    }

    /// `φ_A`: 1 on `A`, 0 elsewhere.
    pub fn indicator(a: Subset) -> Self {
        let values = (0..a.ground_len()).map(|x| if a.contains(x) { ExtRat::one() } else { ExtRat::zero() }).collect();
        PointFn { values, signed: false }
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn is_signed(&self) -> bool {
        self.signed
    }

    pub fn value(&self, x: usize) -> &ExtRat {
        &self.values[x]
    }

    pub fn values(&self) -> &[ExtRat] {
        &self.values
    }

    pub fn into_values(self) -> Vec<ExtRat> {
        self.values
    }

    /// Same values, flagged nonnegative when they allow it.
    pub fn normalized(self) -> Self {
        PointFn::auto(self.values).expect("size already checked")
    }

    pub fn ensure_nonnegative(&self) -> Result<(), FuncError> {
        if self.values.iter().any(ExtRat::is_negative) {
            Err(FuncError::SignedInput)
        } else {
            Ok(())
        }
    }

    fn map(&self, f: impl Fn(&ExtRat) -> ExtRat) -> PointFn {
        PointFn { values: self.values.iter().map(f).collect(), signed: self.signed }
    }

    /// `f ∧ a`.
    pub fn truncate(&self, a: &ExtRat) -> PointFn {
        self.map(|v| v.clone().min(a.clone()))
    }

    /// `f ∨ a − a`, i.e. `max(f − a, 0)` pointwise, for finite `a ≥ 0`.
    pub fn upper_shift(&self, a: &ExtRat) -> Result<PointFn, FuncError> {
        if !a.is_finite() || a.is_negative() {
            return Err(FuncError::BadShift(a.clone()));
        }
        Ok(self.map(|v| v.clone().max(a.clone()) - a.clone()))
    }

    /// `c · f` with `0 · ∞ = 0`.
    pub fn scale(&self, c: &ExtRat) -> PointFn {
        self.map(|v| c * v)
    }

    pub fn pointwise(&self, g: &PointFn, op: Combine) -> Result<PointFn, FuncError> {
        if self.len() != g.len() {
            return Err(FuncError::GroundMismatch { left: self.len(), right: g.len() });
        }
        let mut values = Vec::with_capacity(self.len());
        for (x, (a, b)) in self.values.iter().zip(&g.values).enumerate() {
            values.push(match op {
                Combine::Min => a.clone().min(b.clone()),
                Combine::Max => a.clone().max(b.clone()),
                Combine::Add => a.checked_add(b).ok_or(FuncError::UndefinedSum(x))?,
            });
        }
        if self.signed || g.signed {
            Ok(PointFn::auto(values).expect("size already checked"))
        } else {
            Ok(PointFn { values, signed: false })
        }
    }

    /// `f · φ_A`.
    pub fn restrict(&self, a: Subset) -> PointFn {
        let values = self
            .values
            .iter()
            .enumerate()
            .map(|(x, v)| if a.contains(x) { v.clone() } else { ExtRat::zero() })
            .collect();
        PointFn { values, signed: self.signed }
    }

    /// `f⁺ = f ∨ 0`.
    pub fn positive_part(&self) -> PointFn {
        PointFn { values: self.values.iter().map(ExtRat::positive_part).collect(), signed: false }
    }

    /// `f⁻ = (−f) ∨ 0`.
    pub fn negative_part(&self) -> PointFn {
        PointFn { values: self.values.iter().map(ExtRat::negative_part).collect(), signed: false }
    }

    /// Pointwise `self ≤ g`.
    pub fn le(&self, g: &PointFn) -> bool {
        self.len() == g.len() && self.values.iter().zip(&g.values).all(|(a, b)| a <= b)
    }

    /// `{f ≥ v}`.
    pub fn level_ge(&self, v: &ExtRat) -> Subset {
        self.level(|x| x >= v)
    }

    /// `{f > t}`.
    pub fn level_gt(&self, t: &ExtRat) -> Subset {
        self.level(|x| x > t)
    }

    fn level(&self, pred: impl Fn(&ExtRat) -> bool) -> Subset {
        let bits = self.values.iter().enumerate().filter(|(_, v)| pred(v)).fold(0u32, |acc, (x, _)| acc | 1 << x);
        Subset::from_bits(self.len(), bits)
    }

    /// Distinct strictly positive values in increasing order; `+∞` is
    /// included when attained.
    pub fn positive_values(&self) -> Vec<ExtRat> {
        let mut vals: Vec<ExtRat> = self.values.iter().filter(|v| v.is_positive()).cloned().collect();
        vals.sort();
        vals.dedup();
        vals
    }

    pub fn max_value(&self) -> ExtRat {
        self.values.iter().max().cloned().expect("nonempty")
    }

    pub fn min_value(&self) -> ExtRat {
        self.values.iter().min().cloned().expect("nonempty")
    }
}

fn check_size(n: usize) -> Result<(), FuncError> {
    if n == 0 || n > MAX_GROUND {
        Err(FuncError::BadSize(n))
    } else {
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn f(vals: &[&str]) -> PointFn {
        PointFn::auto(vals.iter().map(|s| s.parse().unwrap()).collect()).unwrap()
    }

    fn r(s: &str) -> ExtRat {
        s.parse().unwrap()
    }

    #[test]
    fn indicator_examples() {
        assert_eq!(PointFn::indicator(Subset::empty(2)), f(&["0", "0"]));
        assert_eq!(PointFn::indicator(Subset::full(2)), f(&["1", "1"]));
        assert_eq!(PointFn::indicator(Subset::singleton(2, 0)), f(&["1", "0"]));
    }

    #[test]
    fn truncate_examples() {
        assert_eq!(f(&["3", "1"]).truncate(&r("2")), f(&["2", "1"]));
        assert_eq!(f(&["3", "1"]).truncate(&r("0")), PointFn::zero(2));
        assert_eq!(f(&["3", "inf"]).truncate(&ExtRat::PosInf), f(&["3", "inf"]));
    }

    #[test]
    fn upper_shift_examples() {
        assert_eq!(f(&["3", "1"]).upper_shift(&r("2")).unwrap(), f(&["1", "0"]));
        assert_eq!(f(&["3", "1"]).upper_shift(&r("0")).unwrap(), f(&["3", "1"]));
        assert_eq!(f(&["1", "1"]).upper_shift(&r("2")).unwrap(), PointFn::zero(2));
        assert_eq!(f(&["inf", "1"]).upper_shift(&r("2")).unwrap(), f(&["inf", "0"]));
        assert!(f(&["1"]).upper_shift(&ExtRat::PosInf).is_err());
    }

    #[test]
    fn scale_examples() {
        assert_eq!(f(&["inf", "1"]).scale(&r("0")), f(&["0", "0"]));
        assert_eq!(f(&["1", "inf"]).scale(&r("2")), f(&["2", "inf"]));
        assert_eq!(f(&["5/3", "inf"]).scale(&r("1")), f(&["5/3", "inf"]));
    }

    #[test]
    fn pointwise_examples() {
        let a = f(&["2", "1"]);
        let b = f(&["1", "3"]);
        assert_eq!(a.pointwise(&b, Combine::Min).unwrap(), f(&["1", "1"]));
        assert_eq!(a.pointwise(&b, Combine::Max).unwrap(), f(&["2", "3"]));
        assert_eq!(a.pointwise(&b, Combine::Add).unwrap(), f(&["3", "4"]));
        assert_eq!(a.pointwise(&PointFn::zero(2), Combine::Add).unwrap(), a);
        assert!(matches!(a.pointwise(&PointFn::zero(3), Combine::Add), Err(FuncError::GroundMismatch { .. })));
    }

    #[test]
    fn negative_values_need_the_signed_constructor() {
        assert!(matches!(PointFn::new(vec![r("-1")]), Err(FuncError::Negative { index: 0, .. })));
        let s = f(&["1", "-2"]);
        assert!(s.is_signed());
        assert_eq!(s.positive_part(), f(&["1", "0"]));
        assert_eq!(s.negative_part(), f(&["0", "2"]));
    }

    #[test]
    fn level_sets() {
        let g = f(&["3", "1", "inf", "0"]);
        assert_eq!(g.level_ge(&r("1")), Subset::from_elements(4, [0, 1, 2]).unwrap());
        assert_eq!(g.level_gt(&r("1")), Subset::from_elements(4, [0, 2]).unwrap());
        assert_eq!(g.level_ge(&ExtRat::PosInf), Subset::singleton(4, 2));
        assert_eq!(g.positive_values(), vec![r("1"), r("3"), ExtRat::PosInf]);
    }

    fn arb_fn(n: usize) -> impl Strategy<Value = PointFn> {
        proptest::collection::vec(
            prop_oneof![1 => Just(ExtRat::PosInf), 6 => (0i64..8, 1i64..4).prop_map(|(a, b)| ExtRat::ratio(a, b))],
            n,
        )
        .prop_map(|v| PointFn::new(v).unwrap())
    }

    fn arb_nonneg() -> impl Strategy<Value = ExtRat> {
        prop_oneof![1 => Just(ExtRat::PosInf), 6 => (0i64..8, 1i64..4).prop_map(|(a, b)| ExtRat::ratio(a, b))]
    }

    proptest! {
        #[test]
        fn truncation_composes(g in arb_fn(4), a in arb_nonneg(), b in arb_nonneg()) {
            prop_assert_eq!(g.truncate(&a).truncate(&b), g.truncate(&a.clone().min(b)));
        }

        #[test]
        fn scale_distributes_over_add(g in arb_fn(3), h in arb_fn(3), c in (0i64..6, 1i64..4)) {
            let c = ExtRat::ratio(c.0, c.1);
            let lhs = g.pointwise(&h, Combine::Add).unwrap().scale(&c);
            let rhs = g.scale(&c).pointwise(&h.scale(&c), Combine::Add).unwrap();
            prop_assert_eq!(lhs, rhs);
        }
    }
}
