//! Insertion of a doubly measurable function between a lower and an upper
//! bound.
//!
//! For pavings `𝒦`, `𝒰` closed under finite `∩` and `∪`, write `A ≪ B` when
//! `A ⊆ K ⊆ U ⊆ B` for some `K ∈ 𝒦`, `U ∈ 𝒰`. The pair has property (N)
//! when every `K ⊆ U` with `K ∈ 𝒦`, `U ∈ 𝒰` admits `U' ∈ 𝒰`, `K' ∈ 𝒦` with
//! `K ⊆ U' ⊆ K' ⊆ U`. Under (N), every `k ≤ u` with `k` 𝒦-measurable and
//! `u` 𝒰-measurable admits an `f` measurable for both with `k ≤ f ≤ u`.
//!
//! # Construction
//!
//! The distinct values `0 = v_0 < … < v_m` of `k` and `u` are sent to the
//! dyadic ranks `v_j ↦ j/2^p`, `2^p > m`, giving `κ ≤ ν` in `[0, 1)`. A
//! chain `F_t` indexed by `t ∈ D_d = {i/2^d}` is grown one depth at a time
//! from `F_0 = X`, `F_1 = ∅`. A new `F_{t₀}` between neighbours
//! `F_{t_a} ⊇ F_{t_b}` must satisfy
//!
//! * `F_{t_b} ≪ F_{t₀} ≪ F_{t_a}`
//! * `{κ ≥ t₀} ≪ F_{t₀} ≪ {ν ≥ t₀}`
//!
//! Every chosen set lies in `𝒦 ∩ 𝒰`. Such a set always exists: with
//! `L = F_{t_b} ∪ {κ ≥ t₀} ∈ 𝒦` and `R = F_{t_a} ∩ {ν ≥ t₀} ∈ 𝒰`, applying
//! (N) to `(L, R)`, then to `(L, U')`, and so on, shrinks `U'` until it
//! repeats, at which point `K' = U'` lies in both pavings. The read-off
//! `f_d(x) = max{t ∈ D_d : x ∈ F_t}` then has level sets `F_t ∈ 𝒦 ∩ 𝒰`,
//! satisfies `κ ≤ f_d ≤ ν` once `d ≥ p`, and stops changing one depth
//! later, because the smaller neighbour is always admissible past depth
//! `p`. The result is mapped back through the inverse ranking.

use std::fmt;

use rand::Rng;
use thiserror::Error;

use crate::ext::ExtRat;
use crate::func::PointFn;
use crate::ground::{power_set, Subset};
use crate::measurable::is_measurable;
use crate::measurable::verify::SuiteReport;
use crate::paving::{Paving, SetOp};
use crate::sample;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Side {
    K,
    U,
}

impl fmt::Display for Side {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Side::K => "K",
            Side::U => "U",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Precondition {
    /// `k(x) > u(x)`.
    LowerAboveUpper(usize),
    /// A level set of `k` missing from `𝒦`.
    LowerNotMeasurable(Subset),
    /// A level set of `u` missing from `𝒰`.
    UpperNotMeasurable(Subset),
    /// `(K, U)` has no interpolating pair.
    PropertyN(Subset, Subset),
    NotInPaving(Side, Subset),
    NotNested(Subset, Subset),
}

impl fmt::Display for Precondition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Precondition::LowerAboveUpper(x) => write!(f, "k > u at point {x}"),
            Precondition::LowerNotMeasurable(s) => write!(f, "k is not K-measurable: level {s} missing"),
            Precondition::UpperNotMeasurable(s) => write!(f, "u is not U-measurable: level {s} missing"),
            Precondition::PropertyN(k, u) => write!(f, "property (N) fails at K = {k}, U = {u}"),
            Precondition::NotInPaving(side, s) => write!(f, "{s} is not in {side}"),
            Precondition::NotNested(k, u) => write!(f, "{k} is not contained in {u}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum InsertionError {
    #[error("K lives on {k} points but U on {u}")]
    GroundMismatch { k: usize, u: usize },
    #[error("function has {function} points but the pavings live on {paving}")]
    FunctionSize { function: usize, paving: usize },
    #[error("{side} is not closed under {op:?}: {left} and {right}")]
    NotLattice { side: Side, op: SetOp, left: Subset, right: Subset },
    #[error("precondition failed: {0}")]
    PreconditionFailed(Precondition),
    #[error("insertion did not stabilize within depth {0}")]
    NonConvergent(u32),
    #[error("no admissible set for t = {index}/2^{depth}")]
    NoInterpolant { index: u64, depth: u32 },
    #[error("bounds must be nonnegative")]
    Signed,
}

/// Two pavings on the same ground set, both closed under `∩` and `∪`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PavingPair {
    k: Paving,
    u: Paving,
}

impl PavingPair {
    pub fn new(k: Paving, u: Paving) -> Result<Self, InsertionError> {
        if k.ground_len() != u.ground_len() {
            return Err(InsertionError::GroundMismatch { k: k.ground_len(), u: u.ground_len() });
        }
        for (side, p) in [(Side::K, &k), (Side::U, &u)] {
            for op in [SetOp::Intersection, SetOp::Union] {
                if let Some((left, right)) = p.stability_violation(op) {
                    return Err(InsertionError::NotLattice { side, op, left, right });
                }
            }
        }
        Ok(PavingPair { k, u })
    }

    pub fn k(&self) -> &Paving {
        &self.k
    }

    pub fn u(&self) -> &Paving {
        &self.u
    }

    pub fn ground_len(&self) -> usize {
        self.k.ground_len()
    }

    /// `𝒦 ∩ 𝒰`.
    pub fn common(&self) -> Paving {
        self.k.intersection(&self.u)
    }
}

/// Smallest member of `p` between `lo` and `hi`. Exists whenever any member
/// does, since `p` is closed under `∩`.
fn least_between(p: &Paving, lo: Subset, hi: Subset) -> Option<Subset> {
    p.iter().filter(|s| lo.is_subset(*s) && s.is_subset(hi)).reduce(|a, b| a.intersection(b))
}

/// `A ≪ B`, with the least witness `(K, U)`.
pub fn rel_ll(a: Subset, b: Subset, p: &PavingPair) -> Option<(Subset, Subset)> {
    let k = least_between(&p.k, a, b)?;
    let u = least_between(&p.u, k, b)?;
    Some((k, u))
}

/// An interpolating pair `(U', K')` with `K ⊆ U' ⊆ K' ⊆ U`.
pub fn interpolate(k: Subset, u: Subset, p: &PavingPair) -> Option<(Subset, Subset)> {
    p.u.iter().filter(|v| k.is_subset(*v) && v.is_subset(u)).find_map(|v| least_between(&p.k, v, u).map(|kk| (v, kk)))
}

/// First `(K, U)` with `K ⊆ U` and no interpolating pair, in canonical order.
pub fn property_n_counterexample(p: &PavingPair) -> Option<(Subset, Subset)> {
    p.k.iter()
        .flat_map(|k| p.u.iter().map(move |u| (k, u)))
        .filter(|(k, u)| k.is_subset(*u))
        .find(|&(k, u)| interpolate(k, u, p).is_none())
}

pub fn has_property_n(p: &PavingPair) -> bool {
    property_n_counterexample(p).is_none()
}

/// A member of `𝒦 ∩ 𝒰` between `k ∈ 𝒦` and `u ∈ 𝒰`, found by repeated
/// interpolation. Needs property (N).
pub fn common_between(k: Subset, u: Subset, p: &PavingPair) -> Option<Subset> {
    let mut upper = u;
    loop {
        let (next, kk) = interpolate(k, upper, p)?;
        if next == upper {
            return Some(kk.intersection(upper));
        }
        upper = next;
    }
}

/// The chain `F_t`, `t = i/2^depth`, with a stored witness for each
/// `F_{t_{i+1}} ≪ F_{t_i}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DyadicFamily {
    n: usize,
    depth: u32,
    sets: Vec<Subset>,
    witnesses: Vec<(Subset, Subset)>,
}

impl DyadicFamily {
    fn initial(n: usize) -> Self {
        let empty = Subset::empty(n);
        DyadicFamily { n, depth: 0, sets: vec![Subset::full(n), empty], witnesses: vec![(empty, empty)] }
    }

    pub fn depth(&self) -> u32 {
        self.depth
    }

    /// `F_{i/2^depth}` for `i = 0..=2^depth`.
    pub fn sets(&self) -> &[Subset] {
        &self.sets
    }

    pub fn witnesses(&self) -> &[(Subset, Subset)] {
        &self.witnesses
    }

    /// The dyadic level `i/2^depth` as an extended rational.
    pub fn level(&self, i: usize) -> ExtRat {
        ExtRat::dyadic(i as i64, self.depth)
    }

    /// `x ↦ max{i : x ∈ F_{i/2^depth}}`, as numerators.
    pub fn read_off_ranks(&self) -> Vec<u64> {
        (0..self.n).map(|x| self.sets.iter().rposition(|s| s.contains(x)).expect("F_0 = X") as u64).collect()
    }

    pub fn read_off(&self) -> PointFn {
        PointFn::new(self.read_off_ranks().into_iter().map(|i| ExtRat::dyadic(i as i64, self.depth)).collect())
            .expect("nonnegative")
    }

    /// Checks `F_0 = X`, `F_1 = ∅`, and every stored witness.
    pub fn validate(&self, p: &PavingPair) -> bool {
        let (first, last) = (self.sets[0], self.sets[self.sets.len() - 1]);
        first.is_full()
            && last.is_empty()
            && self.sets.windows(2).zip(&self.witnesses).all(|(w, &(k, u))| {
                p.k.contains(k) && p.u.contains(u) && w[1].is_subset(k) && k.is_subset(u) && u.is_subset(w[0])
            })
    }
}

/// Output of [`insert`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Insertion {
    /// `k ≤ f ≤ u`, measurable for both pavings.
    pub f: PointFn,
    /// Depth at which the read-off stabilized.
    pub depth: u32,
    pub family: DyadicFamily,
    /// Normalized read-off at each depth `0..=depth + 1`.
    pub trace: Vec<PointFn>,
}

pub fn default_max_depth(n: usize) -> u32 {
    n as u32 + 8
}

/// Checks the hypotheses of [`insert`] for `k`, `u`.
pub fn check_preconditions(k: &PointFn, u: &PointFn, p: &PavingPair) -> Result<(), InsertionError> {
    let n = p.ground_len();
    for f in [k, u] {
        if f.len() != n {
            return Err(InsertionError::FunctionSize { function: f.len(), paving: n });
        }
        if f.is_signed() {
            return Err(InsertionError::Signed);
        }
    }
    let fail = |c| Err(InsertionError::PreconditionFailed(c));
    if let Some(x) = (0..n).find(|&x| k.value(x) > u.value(x)) {
        return fail(Precondition::LowerAboveUpper(x));
    }
    if let Some(level) = is_measurable(k, &p.k).expect("sizes checked").missing_level {
        return fail(Precondition::LowerNotMeasurable(level));
    }
    if let Some(level) = is_measurable(u, &p.u).expect("sizes checked").missing_level {
        return fail(Precondition::UpperNotMeasurable(level));
    }
    if let Some((kk, uu)) = property_n_counterexample(p) {
        return fail(Precondition::PropertyN(kk, uu));
    }
    Ok(())
}

struct Ranked {
    /// `v_0 = 0 < v_1 < …`.
    values: Vec<ExtRat>,
    p: u32,
    k: Vec<u64>,
    u: Vec<u64>,
}

impl Ranked {
    fn new(k: &PointFn, u: &PointFn) -> Self {
        let mut values: Vec<ExtRat> = std::iter::once(ExtRat::zero())
            .chain(k.values().iter().cloned())
            .chain(u.values().iter().cloned())
            .collect();
        values.sort();
        values.dedup();
        let m = values.len() as u64 - 1;
        let p = (0..).find(|&p| 1u64 << p > m).expect("small");
        let rank = |v: &ExtRat| values.binary_search(v).expect("present") as u64;
        let k = k.values().iter().map(rank).collect();
        let u = u.values().iter().map(rank).collect();
        Ranked { values, p, k, u }
    }

    /// `{x : rank(x)/2^p ≥ i/2^d}`.
    fn level(&self, ranks: &[u64], i: u64, d: u32) -> Subset {
        let n = ranks.len();
        let elems = (0..n).filter(|&x| (ranks[x] as u128) << d >= (i as u128) << self.p);
        Subset::from_elements(n, elems).expect("in range")
    }

    /// Maps a read-off numerator at depth `d` back to an original value.
    fn restore(&self, i: u64, d: u32) -> ExtRat {
        // i/2^d = j/2^p with j ≤ m, because the read-off never exceeds ν.
        let scaled = (i as u128) << self.p;
        debug_assert_eq!(scaled % (1u128 << d), 0);
        self.values[(scaled >> d) as usize].clone()
    }
}

fn refine(
    fam: &DyadicFamily,
    ranked: &Ranked,
    pair: &PavingPair,
    common: &[Subset],
) -> Result<DyadicFamily, InsertionError> {
    let n = fam.n;
    let d = fam.depth + 1;
    let mut sets = Vec::with_capacity(fam.sets.len() * 2 - 1);
    let mut witnesses = Vec::with_capacity(sets.capacity());
    for (i, w) in fam.sets.windows(2).enumerate() {
        let (hi, lo) = (w[0], w[1]);
        let index = 2 * i as u64 + 1;
        let lower = ranked.level(&ranked.k, index, d);
        let upper = ranked.level(&ranked.u, index, d);
        let admissible = |s: Subset| {
            rel_ll(lo, s, pair).is_some()
                && rel_ll(s, hi, pair).is_some()
                && rel_ll(lower, s, pair).is_some()
                && rel_ll(s, upper, pair).is_some()
        };
        let chosen = [lo, hi]
            .into_iter()
            .chain(common.iter().copied())
            .chain(power_set(n))
            .find(|&s| admissible(s))
            .ok_or(InsertionError::NoInterpolant { index, depth: d })?;
        sets.push(hi);
        sets.push(chosen);
        witnesses.push(rel_ll(chosen, hi, pair).expect("admissible"));
        witnesses.push(rel_ll(lo, chosen, pair).expect("admissible"));
    }
    sets.push(Subset::empty(n));
    Ok(DyadicFamily { n, depth: d, sets, witnesses })
}

/// Builds `f` with `k ≤ f ≤ u`, measurable for both `𝒦` and `𝒰`.
pub fn insert(k: &PointFn, u: &PointFn, pair: &PavingPair, max_depth: u32) -> Result<Insertion, InsertionError> {
    check_preconditions(k, u, pair)?;
    let ranked = Ranked::new(k, u);
    let mut common: Vec<Subset> = pair.common().iter().collect();
    common.sort_by_key(|s| (s.len(), s.bits()));

    let mut fam = DyadicFamily::initial(pair.ground_len());
    let mut trace = vec![fam.read_off()];
    for depth in 0..max_depth {
        let next = refine(&fam, &ranked, pair, &common)?;
        trace.push(next.read_off());
        let ranks = fam.read_off_ranks();
        let stable = next.read_off_ranks().iter().zip(&ranks).all(|(a, b)| *a == 2 * b);
        if stable {
            let f = PointFn::new(ranks.iter().map(|&i| ranked.restore(i, depth)).collect()).expect("nonnegative");
            if satisfies_postconditions(&f, k, u, pair) {
                return Ok(Insertion { f, depth, family: fam, trace });
            }
        }
        fam = next;
    }
    Err(InsertionError::NonConvergent(max_depth))
}

/// `k ≤ f ≤ u`, `f` measurable for `𝒦` and for `𝒰`.
pub fn satisfies_postconditions(f: &PointFn, k: &PointFn, u: &PointFn, pair: &PavingPair) -> bool {
    k.le(f)
        && f.le(u)
        && is_measurable(f, &pair.k).is_ok_and(|r| r.measurable)
        && is_measurable(f, &pair.u).is_ok_and(|r| r.measurable)
}

/// `f` measurable for both pavings with `φ_{K0} ≤ f ≤ φ_{U0}`.
pub fn urysohn(k0: Subset, u0: Subset, pair: &PavingPair) -> Result<Insertion, InsertionError> {
    let fail = |c| Err(InsertionError::PreconditionFailed(c));
    if !pair.k.contains(k0) {
        return fail(Precondition::NotInPaving(Side::K, k0));
    }
    if !pair.u.contains(u0) {
        return fail(Precondition::NotInPaving(Side::U, u0));
    }
    if !k0.is_subset(u0) {
        return fail(Precondition::NotNested(k0, u0));
    }
    insert(&PointFn::indicator(k0), &PointFn::indicator(u0), pair, default_max_depth(pair.ground_len()))
}

/// Searches `{0, 1/4, 1/2, 3/4, 1}^X` for an `f` measurable for both
/// pavings with `φ_K ≤ f ≤ φ_U`.
///
/// Any such `f`, on any value set, has `{f ≥ 1} ∈ 𝒦 ∩ 𝒰` between `K` and
/// `U` when `K ≠ ∅`, which interpolates `(K, U)`. So for a pair violating
/// (N) an empty search certifies that no such `f` exists at all.
pub fn grid_search(k0: Subset, u0: Subset, pair: &PavingPair) -> Option<PointFn> {
    let grid: Vec<ExtRat> = (0..=4).map(|i| ExtRat::ratio(i, 4)).collect();
    let (lo, hi) = (PointFn::indicator(k0), PointFn::indicator(u0));
    sample::all_functions(pair.ground_len(), &grid).into_iter().find(|f| satisfies_postconditions(f, &lo, &hi, pair))
}

/// For one pair: with (N), every nested indicator pair is insertable;
/// without it, the counterexample admits nothing on the five-level grid.
pub fn check_property_n_equivalence(pair: &PavingPair) -> SuiteReport {
    let mut report = SuiteReport::new("insertion", 0);
    match property_n_counterexample(pair) {
        None => {
            for k0 in pair.k.iter() {
                for u0 in pair.u.iter().filter(|u0| k0.is_subset(*u0)) {
                    let result = urysohn(k0, u0, pair);
                    report.check(
                        result.as_ref().is_ok_and(|ins| {
                            satisfies_postconditions(&ins.f, &PointFn::indicator(k0), &PointFn::indicator(u0), pair)
                        }),
                        || format!("indicator pair ({k0}, {u0}) not insertable: {result:?}"),
                    );
                }
            }
        }
        Some((k0, u0)) => {
            let found = grid_search(k0, u0, pair);
            report.check(found.is_none(), || format!("grid function {found:?} interpolates ({k0}, {u0})"));
        }
    }
    report
}

/// Draws `k ≤ u` with `k` 𝒦-measurable and `u` 𝒰-measurable.
fn random_bounds(rng: &mut sample::ChaCha8Rng, pair: &PavingPair) -> Option<(PointFn, PointFn)> {
    let coefficients = [ExtRat::ratio(1, 2), ExtRat::one(), ExtRat::int(2)];
    for _ in 0..50 {
        let k = sample::random_measurable(rng, &pair.k, &coefficients);
        let u = if rng.gen_bool(0.1) && pair.u.contains(Subset::full(pair.ground_len())) {
            PointFn::constant(pair.ground_len(), ExtRat::PosInf)
        } else {
            sample::random_measurable(rng, &pair.u, &coefficients)
        };
        if k.le(&u) {
            return Some((k, u));
        }
    }
    None
}

/// Insertion suite on one pair: the equivalence check above plus
/// `samples` random admissible `(k, u)` when (N) holds.
pub fn verify_insertion(pair: &PavingPair, samples: usize, seed: u64) -> SuiteReport {
    let mut report = SuiteReport::new("insertion", seed);
    report.absorb(check_property_n_equivalence(pair));
    if !has_property_n(pair) {
        return report;
    }
    let mut rng = sample::rng(seed);
    for _ in 0..samples {
        let Some((k, u)) = random_bounds(&mut rng, pair) else { continue };
        let result = insert(&k, &u, pair, default_max_depth(pair.ground_len()));
        report.check(result.as_ref().is_ok_and(|ins| satisfies_postconditions(&ins.f, &k, &u, pair)), || {
            format!("insertion between {k:?} and {u:?} failed: {result:?}")
        });
    }
    report
}

/// All pavings on `n ≤ 4` points closed under `∩` and `∪`.
pub fn all_lattices(n: usize) -> Vec<Paving> {
    Paving::all(n).filter(Paving::is_lattice).collect()
}

/// A random lattice pair; with probability 1/2 both members are the same
/// algebra, which always has property (N).
pub fn random_pair(rng: &mut sample::ChaCha8Rng, n: usize) -> PavingPair {
    if rng.gen_bool(0.5) {
        let a = sample::random_algebra(rng, n);
        PavingPair::new(a.clone(), a).expect("algebras are lattices")
    } else {
        PavingPair::new(sample::random_lattice(rng, n), sample::random_lattice(rng, n)).expect("lattices")
    }
}

/// The values `f` takes, with multiplicity dropped.
pub fn value_count(f: &PointFn) -> usize {
    f.values().iter().collect::<std::collections::BTreeSet<_>>().len()
}

/// The finite topology on `n` points whose open sets are `opens`, as the
/// pair (closed sets, open sets).
pub fn topology_pair(n: usize, opens: &[Subset]) -> Result<PavingPair, InsertionError> {
    let open = Paving::new(n, opens.iter().copied()).expect("∅ supplied by caller");
    let closed = Paving::new(n, opens.iter().map(|s| s.complement())).expect("X is open");
    PavingPair::new(closed, open)
}
