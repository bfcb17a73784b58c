//! The layer-cake integral `∫ f dα = ∫_0^∞ α{f > t} dt`.
//!
//! Let `0 = v_0 < v_1 < … < v_m` be the finite values of `f` together with
//! 0. For `t ∈ [v_{k−1}, v_k)` the level set `{f > t}` equals `{f ≥ v_k}`,
//! so the integrand is a step function and the integral is
//!
//! ```text
//! Σ_k (v_k − v_{k−1}) · α{f ≥ v_k}  +  ∞ · α{f = ∞}
//! ```
//!
//! For `t` beyond the largest finite value only `{f = ∞}` remains, which
//! contributes `∞` exactly when `α{f = ∞} > 0`. That product is the only
//! place where `0 · ∞ = 0` matters.

use std::fmt;

use crate::capacity::{Capacity, ZeroOneCapacity};
use crate::ext::ExtRat;
use crate::func::{FuncError, PointFn};
use crate::ground::Subset;
use crate::nat::{NatFilterCapacity, NatFn};
use crate::staircase::Staircase;

/// Anything that assigns a value to each subset of a finite ground set.
pub trait SetValue {
    fn ground_len(&self) -> usize;
    fn set_value(&self, a: Subset) -> ExtRat;
}

impl SetValue for Capacity {
    fn ground_len(&self) -> usize {
        Capacity::ground_len(self)
    }

    fn set_value(&self, a: Subset) -> ExtRat {
        self.value(a).clone()
    }
}

impl SetValue for ZeroOneCapacity {
    fn ground_len(&self) -> usize {
        ZeroOneCapacity::ground_len(self)
    }

    fn set_value(&self, a: Subset) -> ExtRat {
        self.value(a)
    }
}

/// Result of the signed integral.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum IntegralValue {
    Value(ExtRat),
    /// Both `∫ f⁺` and `∫ f⁻` are `+∞`.
    Undefined,
}

impl IntegralValue {
    pub fn value(&self) -> Option<&ExtRat> {
        match self {
            IntegralValue::Value(v) => Some(v),
            IntegralValue::Undefined => None,
        }
    }
}

impl fmt::Display for IntegralValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            IntegralValue::Value(v) => write!(f, "{v}"),
            IntegralValue::Undefined => f.write_str("undefined"),
        }
    }
}

fn check(f: &PointFn, n: usize) -> Result<(), FuncError> {
    if f.len() != n {
        return Err(FuncError::GroundMismatch { left: f.len(), right: n });
    }
    f.ensure_nonnegative()
}

/// Layer-cake sum against any set function given as a closure.
pub fn choquet_with(f: &PointFn, alpha: impl Fn(Subset) -> ExtRat) -> ExtRat {
    let mut total = ExtRat::zero();
    let mut prev = ExtRat::zero();
    for v in f.positive_values() {
        let level = f.level_ge(&v);
        if v.is_infinite() {
            total = total + ExtRat::PosInf * alpha(level);
        } else {
            total = total + (v.clone() - prev) * alpha(level);
            prev = v;
        }
    }
    total
}

/// `∫ f dα` for nonnegative `f`.
pub fn choquet<C: SetValue + ?Sized>(f: &PointFn, alpha: &C) -> Result<ExtRat, FuncError> {
    check(f, alpha.ground_len())?;
    Ok(choquet_with(f, |a| alpha.set_value(a)))
}

/// `∫ f⁺ dα − ∫ f⁻ dα`, undefined when both are infinite.
pub fn choquet_signed<C: SetValue + ?Sized>(f: &PointFn, alpha: &C) -> Result<IntegralValue, FuncError> {
    if f.len() != alpha.ground_len() {
        return Err(FuncError::GroundMismatch { left: f.len(), right: alpha.ground_len() });
    }
    let pos = choquet_with(&f.positive_part(), |a| alpha.set_value(a));
    let neg = choquet_with(&f.negative_part(), |a| alpha.set_value(a));
    Ok(match pos.checked_sub(&neg) {
        Some(v) => IntegralValue::Value(v),
        None => IntegralValue::Undefined,
    })
}

/// `∫_A f dα = ∫ f φ_A dα`.
pub fn choquet_over<C: SetValue + ?Sized>(a: Subset, f: &PointFn, alpha: &C) -> Result<ExtRat, FuncError> {
    choquet(&f.restrict(a), alpha)
}

/// `∫ Σ a_i φ_{H_i} dα = Σ a_i α(H_i)` for decreasing `H_i`.
pub fn staircase_integral<C: SetValue + ?Sized>(s: &Staircase, alpha: &C) -> Result<ExtRat, FuncError> {
    if s.ground_len() != alpha.ground_len() {
        return Err(FuncError::GroundMismatch { left: s.ground_len(), right: alpha.ground_len() });
    }
    Ok(s.terms().iter().map(|(a, h)| a * &alpha.set_value(*h)).sum())
}

/// Filter integrals on `ℕ`: `liminf` for the lower Fréchet capacity,
/// `limsup` for the upper one, the point value for a principal filter.
pub fn nat_filter_integral(f: &NatFn, c: NatFilterCapacity) -> ExtRat {
    match c {
        NatFilterCapacity::LowerFrechet => f.liminf(),
        NatFilterCapacity::UpperFrechet => f.limsup(),
        NatFilterCapacity::Principal(n) => f.eval(n),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::capacity::enumerate_zero_one;
    use crate::func::Combine;
    use crate::ground::power_set;
    use crate::nat::{NatSet, Tail};
    use num_bigint::BigInt;
    use num_integer::Integer;
    use num_traits::One;
    use proptest::prelude::*;

    fn alpha_example() -> Capacity {
        Capacity::new(2, [0, 1, 2, 2].iter().map(|&v| ExtRat::int(v)).collect()).unwrap()
    }

    /// Left Riemann sum of `t ↦ α{f > t}` on the grid `j/D`, with `D` the
    /// common denominator of the finite values. The integrand is constant
    /// between grid points, so the sum is exact.
    fn riemann(f: &PointFn, alpha: &Capacity) -> ExtRat {
        let inf_level = f.level_ge(&ExtRat::PosInf);
        if !inf_level.is_empty() && alpha.value(inf_level).is_positive() {
            return ExtRat::PosInf;
        }
        let finite: Vec<_> = f.values().iter().filter_map(|v| v.as_finite().cloned()).collect();
        let den = finite.iter().fold(BigInt::one(), |d, v| d.lcm(v.denom()));
        let top = finite
            .iter()
            .map(|v| (v * num_rational::BigRational::from_integer(den.clone())).to_integer())
            .max()
            .unwrap_or_default();
        let step = ExtRat::Fin(num_rational::BigRational::new(BigInt::one(), den.clone()));
        let mut total = ExtRat::zero();
        let mut j = BigInt::from(0);
        while j < top {
            let t = ExtRat::Fin(num_rational::BigRational::new(j.clone(), den.clone()));
            total = total + step.clone() * alpha.value(f.level_gt(&t)).clone();
            j += 1;
        }
        total
    }

    /// `sup{t ≥ 0 : {f > t} ∈ 𝒰}` by scanning the breakpoints.
    fn sup_formula(f: &PointFn, u: &ZeroOneCapacity) -> ExtRat {
        let mut ts: Vec<ExtRat> = f.values().to_vec();
        ts.push(ExtRat::zero());
        ts.sort();
        ts.dedup();
        // {f > t} is constant on [ts[k], ts[k+1]); the supremum of that
        // interval counts whenever the set qualifies.
        let mut best = ExtRat::zero();
        for w in ts.windows(2) {
            if u.contains(f.level_gt(&w[0])) {
                best = best.max(w[1].clone());
            }
        }
        best
    }

    fn values5() -> Vec<ExtRat> {
        vec![ExtRat::zero(), ExtRat::ratio(1, 2), ExtRat::one(), ExtRat::int(2), ExtRat::PosInf]
    }

    fn all_functions(n: usize, vals: &[ExtRat]) -> Vec<PointFn> {
        let k = vals.len();
        (0..k.pow(n as u32))
            .map(|mut code| {
                let mut v = Vec::with_capacity(n);
                for _ in 0..n {
                    v.push(vals[code % k].clone());
                    code /= k;
                }
                PointFn::new(v).unwrap()
            })
            .collect()
    }

    #[test]
    fn worked_examples() {
        let alpha = alpha_example();
        let f = PointFn::from_ints(&[3, 1]).unwrap();
        assert_eq!(choquet(&f, &alpha).unwrap(), ExtRat::int(4));
        assert_eq!(riemann(&f, &alpha), ExtRat::int(4));
        let a0 = Subset::singleton(2, 0);
        assert_eq!(choquet_over(a0, &f, &alpha).unwrap(), ExtRat::int(3));
        assert_eq!(choquet_over(Subset::empty(2), &f, &alpha).unwrap(), ExtRat::zero());
        assert_eq!(choquet_over(Subset::full(2), &f, &alpha).unwrap(), ExtRat::int(4));
        for a in power_set(2) {
            assert_eq!(&choquet(&PointFn::indicator(a), &alpha).unwrap(), alpha.value(a));
        }
    }

    #[test]
    fn infinite_value_on_null_set_contributes_nothing() {
        let alpha = Capacity::new(2, vec![ExtRat::zero(), ExtRat::zero(), ExtRat::one(), ExtRat::one()]).unwrap();
        let f = PointFn::new(vec![ExtRat::PosInf, ExtRat::int(2)]).unwrap();
        assert_eq!(choquet(&f, &alpha).unwrap(), ExtRat::int(2));
        let g = PointFn::new(vec![ExtRat::int(1), ExtRat::PosInf]).unwrap();
        assert_eq!(choquet(&g, &alpha).unwrap(), ExtRat::PosInf);
    }

    #[test]
    fn signed_examples() {
        let half = Capacity::additive(&[ExtRat::ratio(1, 2), ExtRat::ratio(1, 2)]).unwrap();
        let f = PointFn::from_ints(&[1, -2]).unwrap();
        assert_eq!(choquet_signed(&f, &half).unwrap(), IntegralValue::Value(ExtRat::ratio(-1, 2)));
        let g = PointFn::from_ints(&[3, 1]).unwrap();
        assert_eq!(choquet_signed(&g, &half).unwrap(), IntegralValue::Value(choquet(&g, &half).unwrap()));
        let ones = Capacity::from_fn(2, |a| if a.is_empty() { ExtRat::zero() } else { ExtRat::one() }).unwrap();
        let h = PointFn::signed(vec![ExtRat::PosInf, ExtRat::NegInf]).unwrap();
        assert_eq!(choquet_signed(&h, &ones).unwrap(), IntegralValue::Undefined);
        assert_eq!(choquet(&h, &ones), Err(FuncError::SignedInput));
    }

    #[test]
    fn staircase_examples() {
        let alpha = alpha_example();
        let s = Staircase::new(2, vec![(ExtRat::one(), Subset::full(2)), (ExtRat::int(2), Subset::singleton(2, 0))])
            .unwrap();
        assert_eq!(staircase_integral(&s, &alpha).unwrap(), ExtRat::int(4));
        assert_eq!(choquet(&s.to_point_fn(), &alpha).unwrap(), ExtRat::int(4));
        let single = Staircase::new(2, vec![(ExtRat::ratio(5, 3), Subset::singleton(2, 1))]).unwrap();
        assert_eq!(staircase_integral(&single, &alpha).unwrap(), ExtRat::ratio(10, 3));
        let zeros = Staircase::new(2, vec![(ExtRat::zero(), Subset::full(2))]).unwrap();
        assert_eq!(staircase_integral(&zeros, &alpha).unwrap(), ExtRat::zero());
    }

    #[test]
    fn ground_mismatch_is_reported() {
        let f = PointFn::from_ints(&[1, 2, 3]).unwrap();
        assert_eq!(choquet(&f, &alpha_example()), Err(FuncError::GroundMismatch { left: 3, right: 2 }));
    }

    #[test]
    fn nat_filter_examples() {
        let harmonic = NatFn::new(
            vec![],
            Tail::HarmonicAbove { limit: ExtRat::one(), coef: ExtRat::one().as_finite().unwrap().clone() },
        )
        .unwrap();
        assert_eq!(nat_filter_integral(&harmonic, NatFilterCapacity::LowerFrechet), ExtRat::one());
        let two = NatFn::new(vec![], Tail::TwoPoint { lo: ExtRat::zero(), hi: ExtRat::one() }).unwrap();
        assert_eq!(nat_filter_integral(&two, NatFilterCapacity::UpperFrechet), ExtRat::one());
        assert_eq!(nat_filter_integral(&two, NatFilterCapacity::LowerFrechet), ExtRat::zero());
        let pre = NatFn::new(vec![ExtRat::int(5)], Tail::Constant(ExtRat::zero())).unwrap();
        assert_eq!(nat_filter_integral(&pre, NatFilterCapacity::Principal(0)), ExtRat::int(5));
        for n in 0..=10 {
            let h = NatFn::indicator(&NatSet::tail_from(n));
            assert_eq!(nat_filter_integral(&h, NatFilterCapacity::LowerFrechet), ExtRat::one());
            assert_eq!(NatFilterCapacity::LowerFrechet.eval(&NatSet::tail_from(n)), ExtRat::one());
        }
    }

    #[test]
    fn layer_sum_matches_riemann_oracle_on_small_grids() {
        let vals = vec![
            ExtRat::zero(),
            ExtRat::ratio(1, 3),
            ExtRat::ratio(1, 2),
            ExtRat::one(),
            ExtRat::ratio(7, 4),
            ExtRat::PosInf,
        ];
        let caps = [
            alpha_example(),
            Capacity::counting(2),
            Capacity::new(2, vec![ExtRat::zero(), ExtRat::zero(), ExtRat::ratio(1, 3), ExtRat::PosInf]).unwrap(),
        ];
        for f in all_functions(2, &vals) {
            for alpha in &caps {
                assert_eq!(choquet(&f, alpha).unwrap(), riemann(&f, alpha), "f = {f:?}");
            }
        }
    }

    #[test]
    fn zero_one_integral_is_the_sup_formula() {
        for n in 1..=3 {
            for u in enumerate_zero_one(n).unwrap() {
                for f in all_functions(n, &values5()) {
                    assert_eq!(choquet(&f, &u).unwrap(), sup_formula(&f, &u));
                    assert_eq!(choquet(&f, &u).unwrap(), choquet(&f, &u.to_capacity()).unwrap());
                }
            }
        }
    }

    #[test]
    fn truncation_identities_for_zero_one_capacities() {
        let cuts = [ExtRat::zero(), ExtRat::ratio(1, 2), ExtRat::one(), ExtRat::ratio(3, 2), ExtRat::int(3)];
        for u in enumerate_zero_one(2).unwrap() {
            for f in all_functions(2, &values5()) {
                let i = choquet(&f, &u).unwrap();
                for a in &cuts {
                    assert_eq!(choquet(&f.truncate(a), &u).unwrap(), i.clone().min(a.clone()));
                    let shifted = f.upper_shift(a).unwrap();
                    assert_eq!(choquet(&shifted, &u).unwrap(), i.clone().max(a.clone()) - a.clone());
                }
            }
        }
    }

    #[test]
    fn continuity_from_above_on_a_decreasing_sequence() {
        // f_k = (1/k, 2/k, 0) decreases to 0 with a finite first integral.
        let alpha = Capacity::counting(3);
        let mut prev = ExtRat::PosInf;
        for k in 1..=64 {
            let f = PointFn::new(vec![ExtRat::ratio(1, k), ExtRat::ratio(2, k), ExtRat::zero()]).unwrap();
            let i = choquet(&f, &alpha).unwrap();
            assert_eq!(i, ExtRat::ratio(3, k));
            assert!(i < prev);
            prev = i;
        }
    }

    fn fn_strategy(n: usize) -> impl Strategy<Value = PointFn> {
        let v = prop_oneof![6 => (0i64..5, 1i64..4).prop_map(|(p, q)| ExtRat::ratio(p, q)), 1 => Just(ExtRat::PosInf)];
        proptest::collection::vec(v, n).prop_map(|v| PointFn::new(v).unwrap())
    }

    fn cap_strategy(n: usize) -> impl Strategy<Value = Capacity> {
        let v = prop_oneof![6 => (0i64..4, 1i64..3).prop_map(|(p, q)| ExtRat::ratio(p, q)), 1 => Just(ExtRat::PosInf)];
        proptest::collection::vec(v, 1 << n).prop_map(move |inc| {
            Capacity::from_fn(n, |a| a.subsets().filter(|b| !b.is_empty()).map(|b| inc[b.index()].clone()).sum())
                .unwrap()
        })
    }

    fn setup() -> impl Strategy<Value = (PointFn, PointFn, Capacity, Capacity)> {
        (1usize..=4).prop_flat_map(|n| (fn_strategy(n), fn_strategy(n), cap_strategy(n), cap_strategy(n)))
    }

    proptest! {
        #[test]
        fn monotone_in_function_and_capacity((f, g, alpha, beta) in setup()) {
            let lo = f.pointwise(&g, Combine::Min).unwrap();
            prop_assert!(choquet(&lo, &alpha).unwrap() <= choquet(&f, &alpha).unwrap());
            let sum = Capacity::from_fn(alpha.ground_len(), |a| alpha.value(a) + beta.value(a)).unwrap();
            prop_assert!(choquet(&f, &alpha).unwrap() <= choquet(&f, &sum).unwrap());
        }

        #[test]
        fn positively_homogeneous((f, _g, alpha, _b) in setup(), p in 0i64..7, q in 1i64..4) {
            let c = ExtRat::ratio(p, q);
            prop_assert_eq!(choquet(&f.scale(&c), &alpha).unwrap(), &c * &choquet(&f, &alpha).unwrap());
        }

        #[test]
        fn matches_riemann_oracle((f, _g, alpha, _b) in setup()) {
            prop_assert_eq!(choquet(&f, &alpha).unwrap(), riemann(&f, &alpha));
        }

        #[test]
        fn indicator_integrates_to_capacity((_f, _g, alpha, _b) in setup(), bits in any::<u32>()) {
            let n = alpha.ground_len();
            let a = Subset::from_bits(n, bits & ((1 << n) - 1));
            prop_assert_eq!(&choquet(&PointFn::indicator(a), &alpha).unwrap(), alpha.value(a));
        }
    }
}
