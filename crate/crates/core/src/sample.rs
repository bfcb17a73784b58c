//! Seeded generators for the verification suites.
//!
//! Every generator draws from a caller-supplied [`ChaCha8Rng`], so a suite
//! run is reproducible from its seed alone. [`seed_from_env`] reads
//! `PAVESET_SEED` and falls back to [`DEFAULT_SEED`].

use num_rational::BigRational;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
pub use rand_chacha::ChaCha8Rng;

use crate::capacity::{Capacity, PartialCapacity, SetFunction};
use crate::ext::ExtRat;
use crate::func::PointFn;
use crate::ground::{power_set, Subset};
use crate::nat::{NatFn, Tail};
use crate::paving::{Paving, SetOp};

pub const DEFAULT_SEED: u64 = 20_240_917;

pub fn seed_from_env() -> u64 {
    std::env::var("PAVESET_SEED").ok().and_then(|s| s.trim().parse().ok()).unwrap_or(DEFAULT_SEED)
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// `{0, 1/2, 1, 2, +∞}`.
pub fn small_values() -> Vec<ExtRat> {
    vec![ExtRat::zero(), ExtRat::ratio(1, 2), ExtRat::one(), ExtRat::int(2), ExtRat::PosInf]
}

/// Every function `X → values`, in lexicographic order with element 0
/// varying fastest.
pub fn all_functions(n: usize, values: &[ExtRat]) -> Vec<PointFn> {
    let k = values.len();
    let total = k.checked_pow(n as u32).expect("function count fits in usize");
    (0..total)
        .map(|mut code| {
            let mut v = Vec::with_capacity(n);
            for _ in 0..n {
                v.push(values[code % k].clone());
                code /= k;
            }
            PointFn::auto(v).expect("valid size")
        })
        .collect()
}

/// A paving whose nonempty members are each kept with probability `p`.
pub fn random_paving(rng: &mut ChaCha8Rng, n: usize, p: f64) -> Paving {
    Paving::new(n, power_set(n).filter(|a| a.is_empty() || rng.gen_bool(p))).expect("contains ∅")
}

/// A random family closed under `∩` and `∪`.
pub fn random_lattice(rng: &mut ChaCha8Rng, n: usize) -> Paving {
    let generators = rng.gen_range(1..=n + 1);
    let sets = (0..generators).map(|_| Subset::from_bits(n, rng.gen_range(0..1u32 << n)));
    let base = Paving::new(n, std::iter::once(Subset::empty(n)).chain(sets)).expect("contains ∅");
    base.close_under(&[SetOp::Intersection, SetOp::Union])
}

/// A random algebra, generated by a random partition.
pub fn random_algebra(rng: &mut ChaCha8Rng, n: usize) -> Paving {
    let k = rng.gen_range(1..=n);
    let mut blocks = vec![Subset::empty(n); k];
    let mut order: Vec<usize> = (0..n).collect();
    order.shuffle(rng);
    for (i, &x) in order.iter().enumerate() {
        let b = if i < k { i } else { rng.gen_range(0..k) };
        blocks[b] = blocks[b].with(x);
    }
    Paving::generated_by_partition(n, &blocks)
}

fn pick<T: Clone>(rng: &mut ChaCha8Rng, items: &[T]) -> T {
    items.choose(rng).expect("nonempty").clone()
}

/// A measurable function `Σ c_i φ_{H_i}` over a random decreasing chain of
/// members of `e`.
pub fn random_measurable(rng: &mut ChaCha8Rng, e: &Paving, coefficients: &[ExtRat]) -> PointFn {
    let n = e.ground_len();
    let mut f = PointFn::zero(n);
    let mut candidates: Vec<Subset> = e.iter().filter(|a| !a.is_empty()).collect();
    while !candidates.is_empty() && rng.gen_bool(0.75) {
        let h = pick(rng, &candidates);
        let c = pick(rng, coefficients);
        f = f.pointwise(&PointFn::indicator(h).scale(&c), crate::func::Combine::Add).expect("nonnegative sum");
        candidates.retain(|s| s.is_subset(h) && *s != h);
    }
    f
}

pub fn random_function(rng: &mut ChaCha8Rng, n: usize, values: &[ExtRat]) -> PointFn {
    PointFn::auto((0..n).map(|_| pick(rng, values)).collect()).expect("valid size")
}

/// Monotone table built from nonnegative increments on nonempty subsets.
pub fn random_capacity(rng: &mut ChaCha8Rng, n: usize, increments: &[ExtRat]) -> Capacity {
    let inc: Vec<ExtRat> = (0..1usize << n).map(|_| pick(rng, increments)).collect();
    Capacity::from_fn(n, |a| a.subsets().filter(|b| !b.is_empty()).map(|b| inc[b.index()].clone()).sum())
        .expect("sums of nonnegative increments are monotone")
}

/// A random capacity restricted to `e`.
pub fn random_partial(rng: &mut ChaCha8Rng, e: &Paving, increments: &[ExtRat]) -> PartialCapacity {
    PartialCapacity::restrict(&random_capacity(rng, e.ground_len(), increments), e)
}

/// An additive capacity restricted to `e`; modular on any lattice.
pub fn random_additive_partial(rng: &mut ChaCha8Rng, e: &Paving, weights: &[ExtRat]) -> PartialCapacity {
    let w: Vec<ExtRat> = (0..e.ground_len()).map(|_| pick(rng, weights)).collect();
    PartialCapacity::restrict(&Capacity::additive(&w).expect("nonnegative weights"), e)
}

/// A set function with `μ(∅) = 0` and values drawn from `values`.
pub fn random_set_function(rng: &mut ChaCha8Rng, n: usize, values: &[ExtRat]) -> SetFunction {
    let table = (0..1usize << n).map(|i| if i == 0 { ExtRat::zero() } else { pick(rng, values) }).collect();
    SetFunction::new(n, table).expect("nonnegative values")
}

/// A set function that splits on a random partition: additive across
/// blocks, arbitrary inside them. Its Carathéodory algebra contains the
/// algebra of the partition.
pub fn random_block_set_function(rng: &mut ChaCha8Rng, n: usize, values: &[ExtRat]) -> SetFunction {
    let alg = random_algebra(rng, n);
    let blocks = alg.atoms().expect("generated algebra").blocks().to_vec();
    let inner: Vec<Vec<ExtRat>> =
        blocks.iter().map(|_| (0..1usize << n).map(|_| pick(rng, values)).collect()).collect();
    let table = power_set(n)
        .map(|a| {
            blocks
                .iter()
                .zip(&inner)
                .map(|(b, vals)| {
                    let part = a.intersection(*b);
                    if part.is_empty() {
                        ExtRat::zero()
                    } else {
                        vals[part.index()].clone()
                    }
                })
                .sum()
        })
        .collect();
    SetFunction::new(n, table).expect("nonnegative values")
}

fn rat(p: i64, q: i64) -> BigRational {
    BigRational::new(p.into(), q.into())
}

/// A random ℕ-function with a short prefix and any tail kind.
pub fn random_nat_fn(rng: &mut ChaCha8Rng) -> NatFn {
    let vals = [ExtRat::zero(), ExtRat::ratio(1, 2), ExtRat::one(), ExtRat::int(3)];
    let prefix: Vec<ExtRat> = (0..rng.gen_range(0..4)).map(|_| pick(rng, &vals)).collect();
    let limit = pick(rng, &[ExtRat::zero(), ExtRat::ratio(1, 2), ExtRat::one(), ExtRat::int(2)]);
    let coef = rat(rng.gen_range(1..4), rng.gen_range(1..3));
    let tail = match rng.gen_range(0..5) {
        0 => Tail::Constant(limit),
        1 => Tail::HarmonicAbove { limit, coef },
        2 => Tail::HarmonicBelow { limit, coef },
        3 => Tail::LinearGrowth { slope: coef },
        _ => {
            let lo = limit;
            let hi = &lo + &ExtRat::Fin(coef);
            Tail::TwoPoint { lo, hi }
        }
    };
    NatFn::new(prefix, tail).expect("valid descriptor")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::measurable::is_measurable;

    #[test]
    fn same_seed_same_draws() {
        let a: Vec<Paving> = (0..5)
            .map({
                let mut r = rng(7);
                move |_| random_lattice(&mut r, 4)
            })
            .collect();
        let b: Vec<Paving> = (0..5)
            .map({
                let mut r = rng(7);
                move |_| random_lattice(&mut r, 4)
            })
            .collect();
        assert_eq!(a, b);
    }

    #[test]
    fn generators_meet_their_contracts() {
        let mut r = rng(1);
        for _ in 0..50 {
            let n = r.gen_range(1..=4);
            assert!(random_lattice(&mut r, n).is_lattice());
            let alg = random_algebra(&mut r, n);
            assert!(alg.is_algebra());
            let e = random_paving(&mut r, n, 0.4);
            let f = random_measurable(&mut r, &e, &small_values()[1..]);
            assert!(is_measurable(&f, &e).unwrap().measurable);
            let mu = random_block_set_function(&mut r, n, &small_values());
            assert!(alg.len() >= 2);
            assert!(mu.caratheodory_algebra().is_algebra());
        }
    }

    #[test]
    fn function_enumeration_size() {
        assert_eq!(all_functions(3, &small_values()).len(), 125);
    }
}
