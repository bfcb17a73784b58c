use paveset::capacity::ZeroOneCapacity;
use paveset::integral::choquet;
use paveset::measurable::{is_measurable, staircase_approx};
use paveset::{Capacity, Combine, ExtRat, Paving, PointFn, SetOp, Subset};
use proptest::prelude::*;

const N: usize = 3;

fn value() -> impl Strategy<Value = ExtRat> {
    prop_oneof![Just(ExtRat::zero()), (1i64..6, 1i64..4).prop_map(|(p, q)| ExtRat::ratio(p, q)), Just(ExtRat::PosInf),]
}

fn function() -> impl Strategy<Value = PointFn> {
    prop::collection::vec(value(), N).prop_map(|v| PointFn::new(v).unwrap())
}

fn paving() -> impl Strategy<Value = Paving> {
    (0u32..1 << 7).prop_map(|mask| {
        let sets = (0..1u32 << N).filter(|&b| b == 0 || mask >> (b - 1) & 1 == 1).map(|b| Subset::from_bits(N, b));
        Paving::new(N, sets).unwrap()
    })
}

/// Monotone by construction: sums of nonnegative increments over subsets.
fn capacity() -> impl Strategy<Value = Capacity> {
    prop::collection::vec(0i64..3, 1 << N).prop_map(|inc| {
        Capacity::from_fn(N, |a| a.subsets().filter(|b| !b.is_empty()).map(|b| ExtRat::int(inc[b.index()])).sum())
            .unwrap()
    })
}

proptest! {
    #[test]
    fn integral_is_monotone_in_the_function(f in function(), g in function(), alpha in capacity()) {
        let lo = f.pointwise(&g, Combine::Min).unwrap();
        prop_assert!(choquet(&lo, &alpha).unwrap() <= choquet(&f, &alpha).unwrap());
    }

    #[test]
    fn integral_is_monotone_in_the_capacity(f in function(), a in capacity(), b in capacity()) {
        let sum = Capacity::from_fn(N, |s| a.value(s) + b.value(s)).unwrap();
        prop_assert!(choquet(&f, &a).unwrap() <= choquet(&f, &sum).unwrap());
    }

    #[test]
    fn measurable_functions_stay_measurable_under_lattice_operations(f in function(), e in paving(), c in value()) {
        prop_assume!(is_measurable(&f, &e).unwrap().measurable);
        prop_assert!(is_measurable(&f.scale(&c), &e).unwrap().measurable);
        if c.is_finite() {
            prop_assert!(is_measurable(&f.truncate(&c), &e).unwrap().measurable);
            prop_assert!(is_measurable(&f.upper_shift(&c).unwrap(), &e).unwrap().measurable);
        }
    }

    #[test]
    fn staircases_increase_with_depth(f in function(), e in paving()) {
        prop_assume!(is_measurable(&f, &e).unwrap().measurable);
        let mut prev = PointFn::zero(N);
        for depth in 1..=5 {
            let g = staircase_approx(&f, &e, depth).unwrap().to_point_fn();
            prop_assert!(prev.le(&g) && g.le(&f));
            prev = g;
        }
    }

    #[test]
    fn closure_is_stable_and_minimal(e in paving()) {
        let ops = [SetOp::Intersection, SetOp::Union];
        let closed = e.close_under(&ops);
        prop_assert!(closed.is_lattice());
        prop_assert!(e.is_subfamily(&closed));
        prop_assert_eq!(closed.close_under(&ops), closed.clone());
    }

    #[test]
    fn zero_one_integral_is_the_top_admitted_level(f in function(), mask in 0u64..1 << (1 << N)) {
        let family: Vec<Subset> = (1..1u32 << N)
            .map(|b| Subset::from_bits(N, b))
            .filter(|a| (0..1u32 << N).any(|b| mask >> b & 1 == 1 && a.is_superset(Subset::from_bits(N, b)) && b != 0))
            .collect();
        let cap = ZeroOneCapacity::from_family(N, family.iter().copied()).unwrap();
        let top = f
            .values()
            .iter()
            .filter(|v| v.is_positive() && cap.contains(f.level_ge(v)))
            .max()
            .cloned()
            .unwrap_or_else(ExtRat::zero);
        prop_assert_eq!(choquet(&f, &cap).unwrap(), top);
    }
}
