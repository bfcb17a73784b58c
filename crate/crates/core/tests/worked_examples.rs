//! Small hand-checked instances run through the public API end to end.

use num_rational::BigRational;
use paveset::capacity::{agree_on, enumerate_zero_one, ModularMode};
use paveset::insertion::{has_property_n, insert, property_n_counterexample, urysohn, PavingPair};
use paveset::integral::{choquet, choquet_over, choquet_signed, nat_filter_integral, staircase_integral};
use paveset::measurable::{
    is_measurable, is_measurable_algebra, is_measurable_signed, nat_is_measurable, nonmeasurability_witness,
    oracle_is_measurable, staircase_approx, t3_partition,
};
use paveset::{
    Capacity, ExtRat, IntegralValue, NatFilterCapacity, NatFn, NatPavingKind, PartialCapacity, Paving, PointFn,
    SetFunction, Staircase, Subset, Tail,
};

fn sub(n: usize, xs: &[usize]) -> Subset {
    Subset::from_elements(n, xs.iter().copied()).unwrap()
}

fn paving(n: usize, lists: &[&[usize]]) -> Paving {
    Paving::from_lists(n, lists.iter().map(|l| l.to_vec())).unwrap()
}

fn ints(v: &[i64]) -> PointFn {
    PointFn::from_ints(v).unwrap()
}

fn int(n: i64) -> ExtRat {
    ExtRat::int(n)
}

fn r(p: i64, q: i64) -> BigRational {
    BigRational::new(p.into(), q.into())
}

fn alpha() -> Capacity {
    Capacity::new(2, vec![int(0), int(1), int(2), int(2)]).unwrap()
}

#[test]
fn layer_integral_of_the_two_point_instance() {
    let f = ints(&[3, 1]);
    assert_eq!(choquet(&f, &alpha()).unwrap(), int(4));
    assert_eq!(choquet_over(sub(2, &[0]), &f, &alpha()).unwrap(), int(3));
    let s = Staircase::new(2, vec![(int(1), Subset::full(2)), (int(2), sub(2, &[0]))]).unwrap();
    assert_eq!(staircase_integral(&s, &alpha()).unwrap(), int(4));
    assert_eq!(s.to_point_fn(), f);
}

#[test]
fn signed_integrals() {
    let half = Capacity::additive(&[ExtRat::ratio(1, 2), ExtRat::ratio(1, 2)]).unwrap();
    let f = PointFn::signed(vec![int(1), int(-2)]).unwrap();
    assert_eq!(choquet_signed(&f, &half).unwrap(), IntegralValue::Value(ExtRat::ratio(-1, 2)));
    let ones = Capacity::from_fn(2, |a| if a.is_empty() { int(0) } else { int(1) }).unwrap();
    let wild = PointFn::signed(vec![ExtRat::PosInf, ExtRat::NegInf]).unwrap();
    assert_eq!(choquet_signed(&wild, &ones).unwrap(), IntegralValue::Undefined);
}

#[test]
fn chain_paving_separates_the_two_orders() {
    let e = paving(2, &[&[], &[0], &[0, 1]]);
    let down = ints(&[2, 1]);
    let up = ints(&[1, 2]);
    assert!(is_measurable(&down, &e).unwrap().measurable);
    let report = is_measurable(&up, &e).unwrap();
    assert!(!report.measurable);
    assert_eq!(report.missing_level, Some(sub(2, &[1])));
    assert!(!oracle_is_measurable(&up, &e).unwrap());

    let w = nonmeasurability_witness(&up, &e).unwrap();
    assert!(agree_on(&w.alpha, &w.beta, &e));
    assert!(choquet(&w.g, &w.alpha).unwrap() < choquet(&w.g, &w.beta).unwrap());

    let signed = PointFn::signed(vec![int(1), int(-2)]).unwrap();
    assert!(!is_measurable_signed(&signed, &e).unwrap());
}

#[test]
fn staircase_on_the_power_set() {
    let f = ints(&[3, 1]);
    let s = staircase_approx(&f, &Paving::power_set(2), 2).unwrap();
    let g = s.to_point_fn();
    assert!(g.le(&f));
    for x in 0..2 {
        assert!(f.value(x) - g.value(x) <= ExtRat::ratio(1, 2));
    }
}

#[test]
fn envelopes_of_a_two_set_paving() {
    let e = paving(2, &[&[], &[0, 1]]);
    let delta = PartialCapacity::new(e.clone(), [(Subset::empty(2), int(0)), (Subset::full(2), int(1))]).unwrap();
    let (inner, outer) = (delta.inner_extension(), delta.outer_extension());
    assert_eq!(inner.table(), &[int(0), int(0), int(0), int(1)]);
    assert_eq!(outer.table(), &[int(0), int(1), int(1), int(1)]);
    assert!(agree_on(&inner, &outer, &e));
    assert!(delta.is_modular(ModularMode::Eq).unwrap());
}

#[test]
fn corner_capacity_is_supermodular_only() {
    let p = Paving::power_set(2);
    let delta = PartialCapacity::new(p.clone(), p.iter().map(|a| (a, int(a.is_full() as i64)))).unwrap();
    assert_eq!(delta.modularity_violation(ModularMode::Eq).unwrap(), Some((sub(2, &[0]), sub(2, &[1]))));
    assert!(delta.is_modular(ModularMode::Ge).unwrap());
}

#[test]
fn caratheodory_families() {
    let flat = SetFunction::new(2, vec![int(0), int(1), int(1), int(1)]).unwrap();
    assert_eq!(flat.caratheodory_algebra(), Paving::trivial(2));
    let count = SetFunction::new(2, vec![int(0), int(1), int(1), int(2)]).unwrap();
    assert_eq!(count.caratheodory_algebra(), Paving::power_set(2));
}

#[test]
fn zero_one_counts() {
    let counts: Vec<usize> = (1..=4).map(|n| enumerate_zero_one(n).unwrap().len()).collect();
    assert_eq!(counts, [2, 5, 19, 167]);
}

#[test]
fn block_algebra() {
    let a = Paving::generated_by_partition(4, &[sub(4, &[0, 1]), sub(4, &[2, 3])]);
    assert!(is_measurable_algebra(&ints(&[5, 5, 2, 2]), &a).unwrap());
    assert!(!is_measurable_algebra(&ints(&[5, 4, 2, 2]), &a).unwrap());
    let cells = t3_partition(&ints(&[5, 5, 2, 2]), &a, &int(1)).unwrap();
    assert_eq!(cells, vec![sub(4, &[0, 1]), sub(4, &[2, 3])]);
}

#[test]
fn natural_number_model() {
    let converging = NatFn::new(vec![], Tail::HarmonicAbove { limit: int(1), coef: r(1, 1) }).unwrap();
    let flipping = NatFn::new(vec![], Tail::TwoPoint { lo: int(0), hi: int(1) }).unwrap();
    let growth = NatFn::new(vec![], Tail::LinearGrowth { slope: r(1, 1) }).unwrap();
    assert!(nat_is_measurable(&converging, NatPavingKind::FiniteOrCofinite));
    assert!(!nat_is_measurable(&flipping, NatPavingKind::FiniteOrCofinite));
    assert!(nat_is_measurable(&growth, NatPavingKind::CofinitePlusEmpty));
    assert!(!growth.is_bounded());
    assert_eq!(nat_filter_integral(&converging, NatFilterCapacity::LowerFrechet), int(1));
    assert_eq!(nat_filter_integral(&flipping, NatFilterCapacity::UpperFrechet), int(1));
    let seven = NatFn::new(vec![int(7)], Tail::Constant(int(0))).unwrap();
    assert_eq!(nat_filter_integral(&seven, NatFilterCapacity::Principal(0)), int(7));
    assert_eq!(nat_filter_integral(&seven, NatFilterCapacity::LowerFrechet), int(0));
}

#[test]
fn property_n_on_small_pairs() {
    let k = paving(3, &[&[], &[0], &[1], &[0, 1]]);
    let u = paving(3, &[&[], &[0, 1, 2]]);
    let pair = PavingPair::new(k, u).unwrap();
    assert!(!has_property_n(&pair));
    assert_eq!(property_n_counterexample(&pair), Some((sub(3, &[0]), Subset::full(3))));

    let power = Paving::power_set(3);
    let pair = PavingPair::new(power.clone(), power).unwrap();
    let (lo, hi) = (ints(&[0, 1, 1]), ints(&[2, 1, 3]));
    let ins = insert(&lo, &hi, &pair, 11).unwrap();
    assert!(lo.le(&ins.f) && ins.f.le(&hi));
    let squeeze = urysohn(sub(3, &[1]), sub(3, &[1]), &pair).unwrap();
    assert_eq!(squeeze.f, PointFn::indicator(sub(3, &[1])));
}
