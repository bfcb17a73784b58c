//! Randomized and exhaustive checks of the closure, modularity,
//! Carathéodory and semi-compactness results.
//!
//! Each suite returns a [`SuiteReport`] counting the checks it ran and
//! describing every failure; a suite passes when the failure list is
//! empty.

use std::fmt;

use rand::Rng;

use crate::capacity::{Capacity, ModularMode, PartialCapacity, SetFunction};
use crate::ext::ExtRat;
use crate::func::{Combine, PointFn};
use crate::integral::{choquet, nat_filter_integral};
use crate::nat::{NatFilterCapacity, NatFn, NatPavingKind, NatSet, Tail};
use crate::paving::{Paving, SetOp};
use crate::sample::{self, ChaCha8Rng};

use super::{is_measurable, nat_failing_pair, nat_is_measurable, nat_sandwich, oracle_is_measurable};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SuiteReport {
    pub name: &'static str,
    pub seed: u64,
    pub checks: u64,
    pub failures: Vec<String>,
}

impl SuiteReport {
    pub fn new(name: &'static str, seed: u64) -> Self {
        SuiteReport { name, seed, checks: 0, failures: Vec::new() }
    }

    pub fn check(&mut self, ok: bool, describe: impl FnOnce() -> String) {
        self.checks += 1;
        if !ok {
            self.failures.push(describe());
        }
    }

    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    pub fn absorb(&mut self, other: SuiteReport) {
        self.checks += other.checks;
        self.failures.extend(other.failures);
    }
}

impl fmt::Display for SuiteReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {} checks, {} failures (seed {})", self.name, self.checks, self.failures.len(), self.seed)
    }
}

fn measurable(f: &PointFn, e: &Paving) -> bool {
    is_measurable(f, e).expect("same ground").measurable
}

/// `{0, 1, 2}`.
fn tiny_values() -> Vec<ExtRat> {
    vec![ExtRat::zero(), ExtRat::one(), ExtRat::int(2)]
}

/// Measurable functions with values in `{0, 1, 2}`: all of them for
/// `|X| ≤ 4`, a random sample otherwise.
fn measurable_family(rng: &mut ChaCha8Rng, e: &Paving, samples: usize) -> Vec<PointFn> {
    let n = e.ground_len();
    if n <= 4 {
        sample::all_functions(n, &tiny_values()).into_iter().filter(|f| measurable(f, e)).collect()
    } else {
        (0..samples).map(|_| sample::random_measurable(rng, e, &[ExtRat::one(), ExtRat::int(2)])).collect()
    }
}

/// Pointwise operations on measurable functions versus stability of `ℰ`,
/// the level-set description of measurability, and the level sets of sums
/// of staircases.
pub fn verify_stability_closure(e: &Paving, samples: usize, seed: u64) -> SuiteReport {
    let mut report = SuiteReport::new("stability", seed);
    let mut rng = sample::rng(seed);
    let n = e.ground_len();
    let family = measurable_family(&mut rng, e, samples);

    for (op, combine) in [(SetOp::Intersection, Combine::Min), (SetOp::Union, Combine::Max)] {
        match e.stability_violation(op) {
            None => {
                for f in &family {
                    for g in &family {
                        let h = f.pointwise(g, combine).expect("same ground");
                        report.check(measurable(&h, e), || format!("{combine:?} of {f:?} and {g:?} not measurable"));
                    }
                }
            }
            Some((a, b)) => {
                let h = PointFn::indicator(a).pointwise(&PointFn::indicator(b), combine).expect("same ground");
                report.check(!measurable(&h, e), || format!("{combine:?} of indicators of {a} and {b} is measurable"));
            }
        }
    }

    let violation = e.stability_violation(SetOp::Intersection).or_else(|| e.stability_violation(SetOp::Union));
    match violation {
        None => {
            for f in &family {
                for g in &family {
                    let h = f.pointwise(g, Combine::Add).expect("finite sum");
                    report.check(measurable(&h, e), || format!("sum of {f:?} and {g:?} not measurable"));
                }
            }
        }
        Some((a, b)) => {
            let h = PointFn::indicator(a).pointwise(&PointFn::indicator(b), Combine::Add).expect("finite sum");
            report.check(!measurable(&h, e), || format!("sum of indicators of {a} and {b} is measurable"));
        }
    }

    if n <= crate::ground::MAX_ORACLE_GROUND {
        for _ in 0..samples {
            let f = sample::random_function(&mut rng, n, &sample::small_values());
            let direct = measurable(&f, e);
            let oracle = oracle_is_measurable(&f, e).expect("small ground");
            report.check(direct == oracle, || format!("level-set test and oracle disagree on {f:?}"));
        }
    }

    // {g1 + g2 > t} = ∪_{(a,b) ∈ Z} ({g1 ≥ a} ∩ {g2 ≥ b}), Z the value pairs
    // with a + b > t; every piece lies in the ∩/∪ closure of ℰ.
    let closure = e.close_under(&[SetOp::Intersection, SetOp::Union]);
    let coefficients = [ExtRat::ratio(1, 2), ExtRat::one(), ExtRat::int(2)];
    for _ in 0..samples {
        let g1 = sample::random_measurable(&mut rng, e, &coefficients);
        let g2 = sample::random_measurable(&mut rng, e, &coefficients);
        let sum = g1.pointwise(&g2, Combine::Add).expect("finite sum");
        for t in sum.values().iter().chain([ExtRat::zero()].iter()) {
            let direct = sum.level_gt(t);
            let pieces = (0..n)
                .filter(|&x| sum.value(x) > t)
                .map(|x| g1.level_ge(g1.value(x)).intersection(g2.level_ge(g2.value(x))))
                .fold(crate::ground::Subset::empty(n), |acc, s| acc.union(s));
            report.check(direct == pieces, || format!("sum level set formula fails at t = {t} for {g1:?} + {g2:?}"));
            report.check(closure.contains(direct), || {
                format!("level set {direct} of a staircase sum escapes the closure")
            });
        }
    }
    report
}

/// `∫ f dδ`, computed against the inner extension of `δ`.
pub fn integral_wrt(f: &PointFn, delta_ext: &Capacity) -> ExtRat {
    choquet(f, delta_ext).expect("same ground, nonnegative")
}

/// For a partial capacity on a lattice: for each of `=`, `≤`, `≥`, the
/// modular relation of `δ` holds iff additivity of `∫ dδ` holds iff the
/// min/max splitting holds, over all measurable pairs with values in
/// `{0, 1, 2}` (indicators included, so every set-level violation shows up
/// as an integral-level one).
pub fn check_modular_equivalence(delta: &PartialCapacity) -> SuiteReport {
    let mut report = SuiteReport::new("modular", 0);
    let e = delta.domain();
    let family: Vec<PointFn> =
        sample::all_functions(e.ground_len(), &tiny_values()).into_iter().filter(|f| measurable(f, e)).collect();
    let inner = delta.inner_extension();
    let outer = delta.outer_extension();
    let single: Vec<ExtRat> = family.iter().map(|f| integral_wrt(f, &inner)).collect();
    for (f, i) in family.iter().zip(&single) {
        report.check(*i == integral_wrt(f, &outer), || format!("inner and outer integrals of {f:?} differ"));
    }
    let mut additive = [true; 3];
    let mut splitting = [true; 3];
    let modes = [ModularMode::Eq, ModularMode::Le, ModularMode::Ge];
    for (i, f) in family.iter().enumerate() {
        for (j, g) in family.iter().enumerate().skip(i) {
            let rhs = &single[i] + &single[j];
            let sum = integral_wrt(&f.pointwise(g, Combine::Add).expect("finite"), &inner);
            let split = integral_wrt(&f.pointwise(g, Combine::Min).expect("same ground"), &inner)
                + integral_wrt(&f.pointwise(g, Combine::Max).expect("same ground"), &inner);
            for (k, mode) in modes.iter().enumerate() {
                additive[k] &= mode.holds(&sum, &rhs);
                splitting[k] &= mode.holds(&split, &rhs);
            }
        }
    }
    for (k, mode) in modes.iter().enumerate() {
        let sets = delta.is_modular(*mode).expect("lattice domain");
        report.check(sets == additive[k], || {
            format!("{}: set relation {sets} but additivity {} for {delta:?}", mode.name(), additive[k])
        });
        report.check(sets == splitting[k], || {
            format!("{}: set relation {sets} but min/max splitting {} for {delta:?}", mode.name(), splitting[k])
        });
    }
    report
}

/// Modularity suite over random partial capacities on `e` (a lattice):
/// half additive (always modular), half arbitrary monotone.
pub fn verify_modular_integral(e: &Paving, samples: usize, seed: u64) -> SuiteReport {
    let mut report = SuiteReport::new("modular", seed);
    let mut rng = sample::rng(seed);
    let weights = [ExtRat::zero(), ExtRat::ratio(1, 2), ExtRat::one(), ExtRat::int(2)];
    for i in 0..samples {
        let delta = if i % 2 == 0 {
            sample::random_additive_partial(&mut rng, e, &weights)
        } else {
            sample::random_partial(&mut rng, e, &weights)
        };
        report.absorb(check_modular_equivalence(&delta));
    }
    report
}

/// For one set function: the Carathéodory family is an algebra, `μ` is
/// monotone and modular there, and `∫ dδ` with `δ = μ|𝒜_μ` is additive on
/// all `𝒜_μ`-measurable pairs with values in `{0, 1, 2}`.
pub fn check_caratheodory_linearity(mu: &SetFunction) -> SuiteReport {
    let mut report = SuiteReport::new("caratheodory", 0);
    let alg = mu.caratheodory_algebra();
    report.check(alg.is_algebra(), || format!("Carathéodory family of {mu:?} is not an algebra"));
    let delta = PartialCapacity::new(alg.clone(), alg.iter().map(|a| (a, mu.value(a).clone())));
    let Ok(delta) = delta else {
        report.check(false, || format!("μ is not monotone on its Carathéodory algebra: {mu:?}"));
        return report;
    };
    report.check(delta.is_modular(ModularMode::Eq).unwrap_or(false), || format!("μ not modular on 𝒜_μ: {mu:?}"));
    let inner = delta.inner_extension();
    let family: Vec<PointFn> =
        sample::all_functions(mu.ground_len(), &tiny_values()).into_iter().filter(|f| measurable(f, &alg)).collect();
    let single: Vec<ExtRat> = family.iter().map(|f| integral_wrt(f, &inner)).collect();
    for (i, f) in family.iter().enumerate() {
        for (j, g) in family.iter().enumerate().skip(i) {
            let sum = integral_wrt(&f.pointwise(g, Combine::Add).expect("finite"), &inner);
            report.check(sum == &single[i] + &single[j], || format!("∫(f+g) ≠ ∫f + ∫g for {f:?}, {g:?} under {mu:?}"));
        }
    }
    report
}

/// Carathéodory suite over random set functions on an `n`-set.
pub fn verify_caratheodory(n: usize, samples: usize, seed: u64) -> SuiteReport {
    let mut report = SuiteReport::new("caratheodory", seed);
    let mut rng = sample::rng(seed);
    let values = [ExtRat::zero(), ExtRat::ratio(1, 2), ExtRat::one(), ExtRat::int(2), ExtRat::PosInf];
    for i in 0..samples {
        let mu = if i % 2 == 0 {
            sample::random_set_function(&mut rng, n, &values)
        } else {
            sample::random_block_set_function(&mut rng, n, &values)
        };
        report.absorb(check_caratheodory_linearity(&mu));
    }
    report
}

/// Semi-compactness on the ℕ pavings: on the finite sets measurable
/// real-valued functions are bounded and attain their maximum; on the
/// cofinite sets `f(n) = n` is measurable and unbounded, and the
/// indicators of `H_n = ℕ ∖ {0, …, n}` decrease to 0 without converging
/// uniformly while `∫ φ_{H_n} dα_ℱ = 1`. The criteria are spot-checked
/// against symbolic sandwich sets.
pub fn verify_semicompact_nat(samples: usize, seed: u64) -> SuiteReport {
    let mut report = SuiteReport::new("semicompact", seed);
    let mut rng = sample::rng(seed);

    let expected = [true, false, false];
    for (kind, want) in NatPavingKind::ALL.into_iter().zip(expected) {
        report.check(kind.semicompact().is_semicompact() == want, || format!("{kind} semi-compactness"));
    }

    let mut measurable_finite = 0;
    for _ in 0..samples {
        let f = sample::random_nat_fn(&mut rng);
        if nat_is_measurable(&f, NatPavingKind::FiniteSets) && f.is_real_valued() {
            measurable_finite += 1;
            report.check(f.is_bounded(), || format!("{f:?} measurable on finite sets but unbounded"));
            report.check(f.argmax().is_some(), || format!("{f:?} measurable on finite sets but no maximum"));
        }
        for kind in NatPavingKind::ALL {
            spot_check_sandwich(&mut report, &f, kind);
        }
    }
    let harmonic = NatFn::new(
        vec![],
        Tail::HarmonicBelow { limit: ExtRat::zero(), coef: num_rational::BigRational::from_integer(1.into()) },
    )
    .expect("valid");
    let decaying = NatFn::new(
        vec![],
        Tail::HarmonicAbove { limit: ExtRat::zero(), coef: num_rational::BigRational::from_integer(1.into()) },
    )
    .expect("valid");
    for f in [&harmonic, &decaying] {
        report.check(nat_is_measurable(f, NatPavingKind::FiniteSets), || format!("{f:?} should be measurable"));
        report.check(f.is_bounded() && f.argmax().is_some(), || format!("{f:?} should attain its max"));
    }
    report.check(decaying.argmax() == Some(0), || "1/(n+1) attains its max at 0".into());
    report.check(measurable_finite > 0 || samples == 0, || "no finite-set-measurable sample drawn".into());

    let growth = NatFn::new(vec![], Tail::LinearGrowth { slope: num_rational::BigRational::from_integer(1.into()) })
        .expect("valid");
    report.check(nat_is_measurable(&growth, NatPavingKind::CofinitePlusEmpty), || "f(n) = n not measurable".into());
    report.check(!growth.is_bounded(), || "f(n) = n bounded".into());

    let witness = match NatPavingKind::CofinitePlusEmpty.semicompact() {
        crate::nat::SemiCompactness::NotSemiCompact(w) => w,
        crate::nat::SemiCompactness::SemiCompact => unreachable!("checked above"),
    };
    for n in 0..=10u64 {
        let h = witness.set(n);
        let phi = NatFn::indicator(&h);
        report.check(NatPavingKind::CofinitePlusEmpty.contains(&h), || format!("H_{n} not in the paving"));
        report.check(nat_is_measurable(&phi, NatPavingKind::CofinitePlusEmpty), || format!("φ_H{n} not measurable"));
        report.check(witness.set(n + 1).is_subset(&h), || format!("H_{} ⊄ H_{n}", n + 1));
        report.check(!witness.partial_intersection(n).is_empty(), || format!("H_0 ∩ … ∩ H_{n} empty"));
        report.check(witness.escapes_at(n), || format!("{n} lies in every H_k"));
        report.check(phi.eval(n) == ExtRat::zero(), || format!("φ_H{n}({n}) ≠ 0"));
        report.check(phi.sup() == ExtRat::one(), || format!("sup φ_H{n} ≠ 1, so convergence would be uniform"));
        let integral = nat_filter_integral(&phi, NatFilterCapacity::LowerFrechet);
        report.check(integral == ExtRat::one(), || format!("∫φ_H{n} dα_ℱ = {integral}"));
    }
    report.check(NatFilterCapacity::LowerFrechet.eval(&NatSet::finite([0, 1])).is_zero(), || {
        "α_ℱ of a finite set".into()
    });
    report
}

fn spot_check_sandwich(report: &mut SuiteReport, f: &NatFn, kind: NatPavingKind) {
    let grid: Vec<num_rational::BigRational> = [(1, 4), (1, 2), (1, 1), (3, 2), (2, 1), (3, 1), (5, 1)]
        .iter()
        .map(|&(p, q)| num_rational::BigRational::new(p.into(), q.into()))
        .collect();
    if nat_is_measurable(f, kind) {
        for (i, b) in grid.iter().enumerate() {
            for a in &grid[i + 1..] {
                report.check(nat_sandwich(f, kind, a, b).is_some(), || {
                    format!("{f:?} on {kind}: no sandwich for ({a}, {b})")
                });
            }
        }
    } else {
        let pair = nat_failing_pair(f, kind);
        report.check(pair.as_ref().is_some_and(|(a, b)| nat_sandwich(f, kind, a, b).is_none()), || {
            format!("{f:?} on {kind}: failing pair {pair:?} has a sandwich")
        });
    }
}

/// Picks `count` random pavings of size `n` and runs the stability suite
/// on each.
pub fn verify_stability_random(n: usize, count: usize, seed: u64) -> SuiteReport {
    let mut report = SuiteReport::new("stability", seed);
    let mut rng = sample::rng(seed);
    for _ in 0..count {
        let e = if rng.gen_bool(0.5) {
            sample::random_lattice(&mut rng, n)
        } else {
            sample::random_paving(&mut rng, n, 0.4)
        };
        let inner_seed = rng.gen();
        report.absorb(verify_stability_closure(&e, 20, inner_seed));
    }
    report
}
