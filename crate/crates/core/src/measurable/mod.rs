//! Measurability with respect to a paving.
//!
//! `f: X → [0, +∞]` is `ℰ`-measurable when `∫ f dα = ∫ f dβ` for every pair
//! of monotone set functions that agree on `ℰ`. Equivalently, for every
//! `a > b > 0` some `H ∈ ℰ` satisfies `{f ≥ a} ⊆ H ⊆ {f > b}`.
//!
//! # Finite ground sets
//!
//! Let `0 = v_0 < v_1 < … < v_m` be the values of `f` (with `+∞` counted as
//! a value). For `a > b` in `(v_{j−1}, v_j]` with `a ≤ v_j` both sets
//! `{f ≥ a}` and `{f > b}` equal `L_j = {f ≥ v_j}`, so the sandwich forces
//! `L_j ∈ ℰ`. Conversely, if every `L_j` lies in `ℰ` then `H = {f > b}`,
//! which is some `L_j` or `∅`, works for every pair. Hence
//!
//! > `f` is measurable iff `{f ≥ v} ∈ ℰ` for every positive value `v` of `f`.
//!
//! When this fails, [`is_measurable`] reports the smallest offending value
//! `v_j` and the pair `b = (v_{j−1} + v_j)/2`, `a = (v_{j−1} + 3v_j)/4`.
//! For `v_j = +∞` it uses `b = v_{j−1} + 1`, `a = v_{j−1} + 2`. Both sets
//! of the pair are then `L_j`, so no member of `ℰ` fits between them.
//!
//! [`oracle_is_measurable`] checks the definition directly by enumerating
//! every `{0,1}` capacity; the two agree on all small instances.

mod algebra;
mod nat;
pub mod verify;

pub use algebra::{is_measurable_algebra, t3_cell_ok, t3_partition};
pub use nat::{nat_failing_pair, nat_is_measurable, nat_sandwich, nat_ultrafilter_limits, NatUltrafilterLimits};

use std::collections::HashMap;

use num_rational::BigRational;
use num_traits::{Signed, Zero};
use thiserror::Error;

use crate::capacity::{enumerate_zero_one, Capacity, ZeroOneCapacity};
use crate::ext::ExtRat;
use crate::func::{FuncError, PointFn};
use crate::ground::{power_set, Subset, MAX_ORACLE_GROUND};
use crate::integral::choquet;
use crate::paving::{AlgebraDefect, Paving, PavingError};
use crate::staircase::Staircase;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MeasurableError {
    #[error(transparent)]
    Func(#[from] FuncError),
    #[error("function has {function} points but the paving lives on {paving}")]
    GroundMismatch { function: usize, paving: usize },
    #[error("function is not measurable: level set {missing_level} is not in the paving")]
    NotMeasurable { missing_level: Subset },
    #[error("function is not constant on atom {0}")]
    NotConstantOnAtom(Subset),
    #[error("function is measurable, so no witness exists")]
    IsMeasurable,
    #[error("oracle enumeration needs a ground set of size 1..={MAX_ORACLE_GROUND}, got {0}")]
    GroundTooLarge(usize),
    #[error("paving is not an algebra: {0}")]
    NotAnAlgebra(AlgebraDefect),
    #[error("approximation depth must be at least 1")]
    BadDepth,
    #[error("partition parameter must be positive, got {0}")]
    BadParameter(ExtRat),
}

impl From<PavingError> for MeasurableError {
    fn from(e: PavingError) -> Self {
        match e {
            PavingError::NotAnAlgebra(d) => MeasurableError::NotAnAlgebra(d),
            other => unreachable!("unexpected paving error {other}"),
        }
    }
}

/// Outcome of [`is_measurable`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MeasurabilityReport {
    pub measurable: bool,
    /// `(a, b)` with `a > b > 0` and no member of `ℰ` between `{f ≥ a}`
    /// and `{f > b}`.
    pub failing_pair: Option<(ExtRat, ExtRat)>,
    /// The level set `{f ≥ v_j}` missing from `ℰ`.
    pub missing_level: Option<Subset>,
}

fn check_ground(f: &PointFn, e: &Paving) -> Result<(), MeasurableError> {
    if f.len() != e.ground_len() {
        return Err(MeasurableError::GroundMismatch { function: f.len(), paving: e.ground_len() });
    }
    Ok(())
}

/// The pair straddling `v_j` from above `v_{j−1}`.
pub fn critical_pair(prev: &ExtRat, v: &ExtRat) -> (ExtRat, ExtRat) {
    if v.is_infinite() {
        (prev + &ExtRat::int(2), prev + &ExtRat::one())
    } else {
        let b = (prev + v).div_finite(&BigRational::from_integer(2.into()));
        let a = (prev + &(v * &ExtRat::int(3))).div_finite(&BigRational::from_integer(4.into()));
        (a, b)
    }
}

/// Sandwich criterion for a nonnegative `f`.
pub fn is_measurable(f: &PointFn, e: &Paving) -> Result<MeasurabilityReport, MeasurableError> {
    check_ground(f, e)?;
    f.ensure_nonnegative()?;
    let mut prev = ExtRat::zero();
    for v in f.positive_values() {
        let level = f.level_ge(&v);
        if !e.contains(level) {
            return Ok(MeasurabilityReport {
                measurable: false,
                failing_pair: Some(critical_pair(&prev, &v)),
                missing_level: Some(level),
            });
        }
        prev = v;
    }
    Ok(MeasurabilityReport { measurable: true, failing_pair: None, missing_level: None })
}

/// `f⁺` and `f⁻` both measurable.
pub fn is_measurable_signed(f: &PointFn, e: &Paving) -> Result<bool, MeasurableError> {
    check_ground(f, e)?;
    Ok(is_measurable(&f.positive_part(), e)?.measurable && is_measurable(&f.negative_part(), e)?.measurable)
}

/// A member of `e` between `lower` and `upper`, smallest first.
pub fn sandwich_set(e: &Paving, lower: Subset, upper: Subset) -> Option<Subset> {
    e.iter().find(|h| lower.is_subset(*h) && h.is_subset(upper))
}

/// Two `{0,1}` capacities that agree on `e` but integrate `f` differently.
pub fn oracle_disagreement(
    f: &PointFn,
    e: &Paving,
) -> Result<Option<(ZeroOneCapacity, ZeroOneCapacity)>, MeasurableError> {
    check_ground(f, e)?;
    f.ensure_nonnegative()?;
    let n = e.ground_len();
    if n > MAX_ORACLE_GROUND {
        return Err(MeasurableError::GroundTooLarge(n));
    }
    let caps = enumerate_zero_one(n).map_err(|_| MeasurableError::GroundTooLarge(n))?;
    let mut seen: HashMap<u64, (ExtRat, usize)> = HashMap::new();
    for (i, c) in caps.iter().enumerate() {
        let value = choquet(f, c)?;
        match seen.get(&c.trace_mask(e)) {
            Some((v, j)) if *v != value => return Ok(Some((caps[*j].clone(), c.clone()))),
            Some(_) => {}
            None => {
                seen.insert(c.trace_mask(e), (value, i));
            }
        }
    }
    Ok(None)
}

/// Measurability straight from the definition, restricted to `{0,1}`
/// capacities (which suffice).
pub fn oracle_is_measurable(f: &PointFn, e: &Paving) -> Result<bool, MeasurableError> {
    Ok(oracle_disagreement(f, e)?.is_none())
}

/// `g_n = 2^{−n} Σ_{i≥1} φ_{H_{i,n}}` with `H_{i,n} = {f ≥ (i+1)/2^n}`.
///
/// Then `g_n ≤ f`, `g_n = +∞` exactly where `f = +∞`, and
/// `f − g_n < 2^{1−n}` where `f` is finite. Sets past the largest finite
/// value all equal `{f = +∞}` and are merged into one term with
/// coefficient `+∞`.
pub fn staircase_approx(f: &PointFn, e: &Paving, depth: u32) -> Result<Staircase, MeasurableError> {
    let report = is_measurable(f, e)?;
    if let Some(missing_level) = report.missing_level {
        return Err(MeasurableError::NotMeasurable { missing_level });
    }
    if depth == 0 {
        return Err(MeasurableError::BadDepth);
    }
    let n = f.len();
    let max_finite = f.values().iter().filter(|v| v.is_finite()).max().cloned().unwrap_or_else(ExtRat::zero);
    let step = ExtRat::dyadic(1, depth);
    let mut terms = Vec::new();
    let mut i: i64 = 1;
    loop {
        let t = ExtRat::dyadic(i + 1, depth);
        if t > max_finite {
            break;
        }
        let h = f.level_ge(&t);
        debug_assert!(e.contains(h));
        terms.push((step.clone(), h));
        i += 1;
    }
    let infinite = f.level_ge(&ExtRat::PosInf);
    if !infinite.is_empty() {
        terms.push((ExtRat::PosInf, infinite));
    }
    Ok(Staircase::collapsed(n, terms).expect("level sets decrease"))
}

/// Everything the non-measurability construction produces.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WitnessReport {
    /// `(a, b)` with no member of `ℰ` between `{f > a}` and `{f > b}`.
    pub pair: (ExtRat, ExtRat),
    /// The level set `{f > a} = {f > b}` missing from `ℰ`.
    pub level: Subset,
    /// `(f ∧ a − f ∧ b)/(a − b)`.
    pub g: PointFn,
    /// Indexed by subset bitmask.
    pub tau1: Vec<ExtRat>,
    pub tau2: Vec<ExtRat>,
    pub alpha: Capacity,
    pub beta: Capacity,
    pub t_gap: ExtRat,
    pub lower: ExtRat,
    pub upper: ExtRat,
}

/// Builds capacities `α ≤ β` that agree on `ℰ` yet give `∫ g dα < ∫ g dβ`.
///
/// With `g` as above,
///
/// * `τ₁(A) = 0` if `A = X`, else `sup{g(x) : x ∉ A}`
/// * `τ₂(A) = 1` if `A = ∅`, else `inf{g(x) : x ∈ A}`
/// * `α(A) = sup{2 − τ₁(H) − τ₂(H) : H ∈ ℰ, H ⊆ A}`
/// * `β(A) = inf{2 − τ₁(H) − τ₂(H) : H ∈ ℰ, H ⊇ A}`, taken as 2 when no
///   member of `ℰ` contains `A`.
///
/// Both `τ` decrease, so `2 − τ₁ − τ₂` increases and `α = β` on `ℰ`.
pub fn nonmeasurability_witness(f: &PointFn, e: &Paving) -> Result<WitnessReport, MeasurableError> {
    let report = is_measurable(f, e)?;
    let (Some((a, b)), Some(level)) = (report.failing_pair, report.missing_level) else {
        return Err(MeasurableError::IsMeasurable);
    };
    let n = f.len();
    let width = (&a - &b).as_finite().cloned().expect("finite pair");
    let g = PointFn::new(
        f.values().iter().map(|v| (v.clone().min(a.clone()) - v.clone().min(b.clone())).div_finite(&width)).collect(),
    )
    .expect("differences of truncations are nonnegative");

    let tau1: Vec<ExtRat> = power_set(n)
        .map(|s| {
            if s.is_full() {
                ExtRat::zero()
            } else {
                s.complement().elements().map(|x| g.value(x).clone()).max().expect("nonempty complement")
            }
        })
        .collect();
    let tau2: Vec<ExtRat> = power_set(n)
        .map(|s| {
            if s.is_empty() {
                ExtRat::one()
            } else {
                s.elements().map(|x| g.value(x).clone()).min().expect("nonempty set")
            }
        })
        .collect();
    let phi = |h: Subset| ExtRat::int(2) - tau1[h.index()].clone() - tau2[h.index()].clone();
    let alpha = Capacity::from_fn(n, |s| e.iter().filter(|h| h.is_subset(s)).map(phi).max().expect("∅ is a member"))
        .expect("sup envelope is monotone");
    let beta =
        Capacity::from_fn(n, |s| e.iter().filter(|h| s.is_subset(*h)).map(phi).min().unwrap_or_else(|| ExtRat::int(2)))
            .expect("inf envelope is monotone");

    let t_gap = ExtRat::ratio(1, 2);
    let above = g.level_gt(&t_gap);
    for h in e.iter() {
        if above.is_subset(h) {
            assert!(tau1[h.index()] <= t_gap && tau2[h.index()].is_zero(), "τ bound fails above {h}");
        }
        if h.is_subset(above) {
            assert!(tau1[h.index()] == ExtRat::one() && tau2[h.index()] >= t_gap, "τ bound fails below {h}");
        }
    }
    let lower = choquet(&g, &alpha)?;
    let upper = choquet(&g, &beta)?;
    assert!(lower < upper, "witness integrals must differ");
    Ok(WitnessReport { pair: (a, b), level, g, tau1, tau2, alpha, beta, t_gap, lower, upper })
}

/// Behaviour past the last breakpoint of a [`MonotoneMap`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Beyond {
    /// Constant at the last value; `ψ(∞)` is that value.
    Flat,
    /// Continues the last segment; `ψ(∞) = ∞` when its slope is positive.
    Linear,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MonotoneMapError {
    #[error("the first breakpoint must be (0, 0)")]
    BadOrigin,
    #[error("breakpoint {0} does not increase in t")]
    NotIncreasingT(usize),
    #[error("breakpoint {0} decreases in value")]
    Decreasing(usize),
}

/// A continuous nondecreasing piecewise-linear `ψ: [0, ∞] → [0, ∞]` with
/// `ψ(0) = 0`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct MonotoneMap {
    points: Vec<(BigRational, BigRational)>,
    beyond: Beyond,
}

impl MonotoneMap {
    pub fn new(points: Vec<(BigRational, BigRational)>, beyond: Beyond) -> Result<Self, MonotoneMapError> {
        match points.first() {
            Some((t, v)) if t.is_zero() && v.is_zero() => {}
            _ => return Err(MonotoneMapError::BadOrigin),
        }
        for (i, w) in points.windows(2).enumerate() {
            if w[1].0 <= w[0].0 {
                return Err(MonotoneMapError::NotIncreasingT(i + 1));
            }
            if w[1].1 < w[0].1 {
                return Err(MonotoneMapError::Decreasing(i + 1));
            }
        }
        Ok(MonotoneMap { points, beyond })
    }

    pub fn identity() -> Self {
        let one = BigRational::from_integer(1.into());
        MonotoneMap {
            points: vec![(BigRational::zero(), BigRational::zero()), (one.clone(), one)],
            beyond: Beyond::Linear,
        }
    }

    pub fn zero() -> Self {
        MonotoneMap { points: vec![(BigRational::zero(), BigRational::zero())], beyond: Beyond::Flat }
    }

    /// Interpolates `ψ` through `(t, ψ(t))` for each given `t`, flat after
    /// the last one.
    pub fn through(ts: &[BigRational], psi: impl Fn(&BigRational) -> BigRational) -> Result<Self, MonotoneMapError> {
        let mut ts: Vec<BigRational> = ts.iter().filter(|t| t.is_positive()).cloned().collect();
        ts.sort();
        ts.dedup();
        let mut points = vec![(BigRational::zero(), BigRational::zero())];
        points.extend(ts.into_iter().map(|t| {
            let v = psi(&t);
            (t, v)
        }));
        MonotoneMap::new(points, Beyond::Flat)
    }

    fn last_slope(&self) -> BigRational {
        match self.points.as_slice() {
            [.., (t0, v0), (t1, v1)] => (v1 - v0) / (t1 - t0),
            _ => BigRational::zero(),
        }
    }

    pub fn apply(&self, t: &ExtRat) -> ExtRat {
        let t = match t {
            ExtRat::PosInf => {
                let (_, last) = self.points.last().expect("origin present");
                return match self.beyond {
                    Beyond::Linear if self.last_slope().is_positive() => ExtRat::PosInf,
                    _ => ExtRat::Fin(last.clone()),
                };
            }
            ExtRat::Fin(t) => t,
            ExtRat::NegInf => panic!("monotone maps take nonnegative arguments"),
        };
        for w in self.points.windows(2) {
            let ((t0, v0), (t1, v1)) = (&w[0], &w[1]);
            if t <= t1 {
                return ExtRat::Fin(v0 + (v1 - v0) * (t - t0) / (t1 - t0));
            }
        }
        let (tl, vl) = self.points.last().expect("origin present");
        match self.beyond {
            Beyond::Flat => ExtRat::Fin(vl.clone()),
            Beyond::Linear => ExtRat::Fin(vl + self.last_slope() * (t - tl)),
        }
    }
}

/// `ψ ∘ f`. Measurable `f` gives measurable `ψ ∘ f`: each level set
/// `{ψ∘f ≥ ψ(v)}` is a level set `{f ≥ v'}` at a positive value `v'`.
pub fn compose_monotone(f: &PointFn, psi: &MonotoneMap) -> Result<PointFn, MeasurableError> {
    f.ensure_nonnegative()?;
    Ok(PointFn::new(f.values().iter().map(|v| psi.apply(v)).collect())?)
}
