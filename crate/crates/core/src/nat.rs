//! The ground set `ℕ = {0, 1, 2, …}`.
//!
//! Everything here is symbolic: sets are finite or cofinite lists, functions
//! are an explicit prefix followed by a closed-form tail, and the three
//! pavings of interest are named kinds rather than enumerated families.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive};
use thiserror::Error;

use crate::ext::ExtRat;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum NatError {
    #[error("negative value {0} in a nonnegative ℕ-function")]
    Negative(ExtRat),
    #[error("tail coefficient must be a positive finite rational, got {0}")]
    BadCoefficient(ExtRat),
    #[error("two-point tail needs lo < hi, got lo = {lo}, hi = {hi}")]
    BadTwoPoint { lo: ExtRat, hi: ExtRat },
}

/// A finite or cofinite subset of `ℕ` in canonical form.
#[derive(Clone, PartialEq, Eq, Hash)]
pub enum NatSet {
    /// Exactly these elements.
    Finite(Vec<u64>),
    /// Everything except these elements.
    Cofinite(Vec<u64>),
}

fn canonical(mut v: Vec<u64>) -> Vec<u64> {
    v.sort_unstable();
    v.dedup();
    v
}

impl NatSet {
    pub fn finite(elems: impl IntoIterator<Item = u64>) -> Self {
        NatSet::Finite(canonical(elems.into_iter().collect()))
    }

    pub fn cofinite(excluded: impl IntoIterator<Item = u64>) -> Self {
        NatSet::Cofinite(canonical(excluded.into_iter().collect()))
    }

    pub fn empty() -> Self {
        NatSet::Finite(Vec::new())
    }

    pub fn all() -> Self {
        NatSet::Cofinite(Vec::new())
    }

    /// `ℕ ∖ {0, …, n}`.
    pub fn tail_from(n: u64) -> Self {
        NatSet::cofinite(0..=n)
    }

    pub fn is_empty(&self) -> bool {
        matches!(self, NatSet::Finite(v) if v.is_empty())
    }

    pub fn is_finite(&self) -> bool {
        matches!(self, NatSet::Finite(_))
    }

    pub fn is_cofinite(&self) -> bool {
        matches!(self, NatSet::Cofinite(_))
    }

    pub fn contains(&self, n: u64) -> bool {
        match self {
            NatSet::Finite(v) => v.binary_search(&n).is_ok(),
            NatSet::Cofinite(v) => v.binary_search(&n).is_err(),
        }
    }

    pub fn complement(&self) -> NatSet {
        match self {
            NatSet::Finite(v) => NatSet::Cofinite(v.clone()),
            NatSet::Cofinite(v) => NatSet::Finite(v.clone()),
        }
    }

    pub fn union(&self, other: &NatSet) -> NatSet {
        use NatSet::*;
        match (self, other) {
            (Finite(a), Finite(b)) => NatSet::finite(a.iter().chain(b).copied()),
            (Cofinite(a), Cofinite(b)) => NatSet::cofinite(a.iter().copied().filter(|x| b.binary_search(x).is_ok())),
            (Finite(f), Cofinite(c)) | (Cofinite(c), Finite(f)) => {
                NatSet::cofinite(c.iter().copied().filter(|x| f.binary_search(x).is_err()))
            }
        }
    }

    pub fn intersection(&self, other: &NatSet) -> NatSet {
        self.complement().union(&other.complement()).complement()
    }

    pub fn is_subset(&self, other: &NatSet) -> bool {
        use NatSet::*;
        match (self, other) {
            (Finite(a), _) => a.iter().all(|&x| other.contains(x)),
            (Cofinite(_), Finite(_)) => false,
            (Cofinite(a), Cofinite(b)) => b.iter().all(|x| a.binary_search(x).is_ok()),
        }
    }
}

impl fmt::Debug for NatSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            NatSet::Finite(v) => write!(f, "{v:?}"),
            NatSet::Cofinite(v) => write!(f, "ℕ∖{v:?}"),
        }
    }
}

/// The symbolic pavings on `ℕ`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum NatPavingKind {
    /// All finite subsets.
    FiniteSets,
    /// All cofinite subsets, plus `∅`.
    CofinitePlusEmpty,
    /// The algebra of finite and cofinite subsets.
    FiniteOrCofinite,
}

impl NatPavingKind {
    pub const ALL: [NatPavingKind; 3] =
        [NatPavingKind::FiniteSets, NatPavingKind::CofinitePlusEmpty, NatPavingKind::FiniteOrCofinite];

    pub fn name(self) -> &'static str {
        match self {
            NatPavingKind::FiniteSets => "finite-sets",
            NatPavingKind::CofinitePlusEmpty => "cofinite-plus-empty",
            NatPavingKind::FiniteOrCofinite => "finite-or-cofinite",
        }
    }

    pub fn from_name(s: &str) -> Option<Self> {
        NatPavingKind::ALL.into_iter().find(|k| k.name() == s)
    }

    /// Membership; `∅` belongs to every kind.
    pub fn contains(self, s: &NatSet) -> bool {
        match self {
            NatPavingKind::FiniteSets => s.is_finite(),
            NatPavingKind::CofinitePlusEmpty => s.is_cofinite() || s.is_empty(),
            NatPavingKind::FiniteOrCofinite => true,
        }
    }

    /// Semi-compactness, decided per kind.
    ///
    /// A decreasing sequence of finite sets is eventually constant, so an
    /// empty countable intersection of finite sets already has an empty
    /// finite subintersection. The two other kinds contain the cofinite
    /// sets `ℕ ∖ {0, …, n}`: every finite subintersection is infinite and
    /// the whole intersection is empty.
    pub fn semicompact(self) -> SemiCompactness {
        match self {
            NatPavingKind::FiniteSets => SemiCompactness::SemiCompact,
            _ => SemiCompactness::NotSemiCompact(DecreasingWitness),
        }
    }
}

impl fmt::Display for NatPavingKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SemiCompactness {
    SemiCompact,
    NotSemiCompact(DecreasingWitness),
}

impl SemiCompactness {
    pub fn is_semicompact(self) -> bool {
        matches!(self, SemiCompactness::SemiCompact)
    }
}

/// The sequence `H_n = ℕ ∖ {0, …, n}`: decreasing, every finite
/// subintersection nonempty, total intersection empty.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DecreasingWitness;

impl DecreasingWitness {
    pub fn set(self, n: u64) -> NatSet {
        NatSet::tail_from(n)
    }

    /// Intersection of `H_0, …, H_m`, which is `H_m`.
    pub fn partial_intersection(self, m: u64) -> NatSet {
        (0..=m).map(|n| self.set(n)).reduce(|a, b| a.intersection(&b)).expect("m ≥ 0")
    }

    /// No natural lies in every `H_n`: `k ∉ H_k`.
    pub fn escapes_at(self, k: u64) -> bool {
        !self.set(k).contains(k)
    }
}

/// Closed-form behaviour of an ℕ-function past its prefix.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Tail {
    /// `f(n) = c`.
    Constant(ExtRat),
    /// `f(n) = limit + coef/(n+1)`.
    HarmonicAbove { limit: ExtRat, coef: BigRational },
    /// `f(n) = max(limit − coef/(n+1), 0)`.
    HarmonicBelow { limit: ExtRat, coef: BigRational },
    /// `f(n) = slope · n`.
    LinearGrowth { slope: BigRational },
    /// `lo` at even `n`, `hi` at odd `n`.
    TwoPoint { lo: ExtRat, hi: ExtRat },
}

impl Tail {
    pub fn kind_name(&self) -> &'static str {
        match self {
            Tail::Constant(_) => "constant",
            Tail::HarmonicAbove { .. } => "harmonic-above",
            Tail::HarmonicBelow { .. } => "harmonic-below",
            Tail::LinearGrowth { .. } => "linear-growth",
            Tail::TwoPoint { .. } => "two-point",
        }
    }

    fn validate(&self) -> Result<(), NatError> {
        let nonneg = |v: &ExtRat| if v.is_negative() { Err(NatError::Negative(v.clone())) } else { Ok(()) };
        let positive = |c: &BigRational| {
            if c.is_positive() {
                Ok(())
            } else {
                Err(NatError::BadCoefficient(ExtRat::Fin(c.clone())))
            }
        };
        match self {
            Tail::Constant(c) => nonneg(c),
            Tail::HarmonicAbove { limit, coef } | Tail::HarmonicBelow { limit, coef } => {
                nonneg(limit)?;
                positive(coef)
            }
            Tail::LinearGrowth { slope } => positive(slope),
            Tail::TwoPoint { lo, hi } => {
                nonneg(lo)?;
                if lo >= hi {
                    return Err(NatError::BadTwoPoint { lo: lo.clone(), hi: hi.clone() });
                }
                Ok(())
            }
        }
    }

    pub fn eval(&self, n: u64) -> ExtRat {
        let step = |coef: &BigRational| ExtRat::Fin(coef / BigRational::from_integer(BigInt::from(n) + 1));
        match self {
            Tail::Constant(c) => c.clone(),
            Tail::HarmonicAbove { limit, coef } => limit + &step(coef),
            Tail::HarmonicBelow { limit, coef } => (limit - &step(coef)).max(ExtRat::zero()),
            Tail::LinearGrowth { slope } => ExtRat::Fin(slope * BigRational::from_integer(BigInt::from(n))),
            Tail::TwoPoint { lo, hi } => {
                if n.is_multiple_of(2) {
                    lo.clone()
                } else {
                    hi.clone()
                }
            }
        }
    }

    pub fn liminf(&self) -> ExtRat {
        match self {
            Tail::Constant(c) => c.clone(),
            Tail::HarmonicAbove { limit, .. } | Tail::HarmonicBelow { limit, .. } => limit.clone(),
            Tail::LinearGrowth { .. } => ExtRat::PosInf,
            Tail::TwoPoint { lo, .. } => lo.clone(),
        }
    }

    pub fn limsup(&self) -> ExtRat {
        match self {
            Tail::TwoPoint { hi, .. } => hi.clone(),
            other => other.liminf(),
        }
    }

    /// Supremum over `n ≥ start`, and whether some `n ≥ start` attains it.
    fn sup_from(&self, start: u64) -> (ExtRat, bool) {
        match self {
            Tail::Constant(c) => (c.clone(), true),
            Tail::HarmonicAbove { .. } => (self.eval(start), true),
            Tail::HarmonicBelow { limit, .. } => (limit.clone(), limit.is_zero() || limit.is_infinite()),
            Tail::LinearGrowth { .. } => (ExtRat::PosInf, false),
            Tail::TwoPoint { hi, .. } => (hi.clone(), true),
        }
    }
}

/// A function `ℕ → [0, +∞]`: explicit values on `{0, …, N−1}`, then a tail.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct NatFn {
    prefix: Vec<ExtRat>,
    tail: Tail,
}

impl NatFn {
    pub fn new(prefix: Vec<ExtRat>, tail: Tail) -> Result<Self, NatError> {
        if let Some(v) = prefix.iter().find(|v| v.is_negative()) {
            return Err(NatError::Negative(v.clone()));
        }
        tail.validate()?;
        Ok(NatFn { prefix, tail })
    }

    /// `φ_S` for a finite or cofinite `S`.
    pub fn indicator(s: &NatSet) -> Self {
        let (listed, inside, tail) = match s {
            NatSet::Finite(v) => (v, ExtRat::one(), ExtRat::zero()),
            NatSet::Cofinite(v) => (v, ExtRat::zero(), ExtRat::one()),
        };
        let len = listed.last().map_or(0, |&m| m as usize + 1);
        let prefix = (0..len as u64)
            .map(|n| if listed.binary_search(&n).is_ok() { inside.clone() } else { tail.clone() })
            .collect();
        NatFn { prefix, tail: Tail::Constant(tail) }
    }

    pub fn prefix(&self) -> &[ExtRat] {
        &self.prefix
    }

    pub fn tail(&self) -> &Tail {
        &self.tail
    }

    pub fn tail_start(&self) -> u64 {
        self.prefix.len() as u64
    }

    pub fn eval(&self, n: u64) -> ExtRat {
        match self.prefix.get(n as usize) {
            Some(v) if (n as usize) < self.prefix.len() => v.clone(),
            _ => self.tail.eval(n),
        }
    }

    pub fn liminf(&self) -> ExtRat {
        self.tail.liminf()
    }

    pub fn limsup(&self) -> ExtRat {
        self.tail.limsup()
    }

    /// `lim_n f(n)` in `[0, +∞]`, if it exists.
    pub fn limit(&self) -> Option<ExtRat> {
        let (lo, hi) = (self.liminf(), self.limsup());
        (lo == hi).then_some(lo)
    }

    pub fn sup(&self) -> ExtRat {
        let (tail_sup, _) = self.tail.sup_from(self.tail_start());
        self.prefix.iter().cloned().fold(tail_sup, ExtRat::max)
    }

    /// A point where the supremum is attained, if any.
    pub fn argmax(&self) -> Option<u64> {
        let sup = self.sup();
        if let Some(i) = self.prefix.iter().position(|v| *v == sup) {
            return Some(i as u64);
        }
        let start = self.tail_start();
        let (tail_sup, attained) = self.tail.sup_from(start);
        if !attained || tail_sup != sup {
            return None;
        }
        (start..start + 2).find(|&n| self.eval(n) == sup)
    }

    pub fn is_bounded(&self) -> bool {
        self.sup().is_finite()
    }

    pub fn is_real_valued(&self) -> bool {
        self.prefix.iter().all(ExtRat::is_finite)
            && match &self.tail {
                Tail::Constant(c) => c.is_finite(),
                Tail::HarmonicAbove { limit, .. } | Tail::HarmonicBelow { limit, .. } => limit.is_finite(),
                Tail::LinearGrowth { .. } => true,
                Tail::TwoPoint { hi, .. } => hi.is_finite(),
            }
    }

    /// `{f ≥ a}` for finite `a > 0`.
    pub fn level_ge(&self, a: &BigRational) -> NatLevel {
        self.level(a, false)
    }

    /// `{f > b}` for finite `b ≥ 0`.
    pub fn level_gt(&self, b: &BigRational) -> NatLevel {
        self.level(b, true)
    }

    fn level(&self, t: &BigRational, strict: bool) -> NatLevel {
        let thr = ExtRat::Fin(t.clone());
        let hit = |v: &ExtRat| if strict { *v > thr } else { *v >= thr };
        let start = self.tail_start();
        let in_prefix: Vec<u64> =
            self.prefix.iter().enumerate().filter(|(_, v)| hit(v)).map(|(i, _)| i as u64).collect();
        let out_prefix: Vec<u64> = (0..start).filter(|i| in_prefix.binary_search(i).is_err()).collect();
        match tail_level(&self.tail, t, strict, start) {
            TailLevel::None => NatLevel::Set(NatSet::Finite(in_prefix)),
            TailLevel::UpTo(last) => NatLevel::Set(NatSet::finite(
                in_prefix.into_iter().chain((start..=last).filter(|&n| hit(&self.tail.eval(n)))),
            )),
            TailLevel::From(first) => NatLevel::Set(NatSet::cofinite(
                out_prefix.into_iter().chain((start..first).filter(|&n| !hit(&self.tail.eval(n)))),
            )),
            TailLevel::Odd => NatLevel::Irregular,
        }
    }
}

/// A level set of an ℕ-function: finite/cofinite, or neither.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum NatLevel {
    Set(NatSet),
    /// Infinite and co-infinite (a parity set).
    Irregular,
}

impl NatLevel {
    pub fn as_set(&self) -> Option<&NatSet> {
        match self {
            NatLevel::Set(s) => Some(s),
            NatLevel::Irregular => None,
        }
    }

    pub fn is_empty(&self) -> bool {
        matches!(self, NatLevel::Set(s) if s.is_empty())
    }
}

/// Shape of `{n ≥ start : tail(n) ≥ t}` (or `> t`).
enum TailLevel {
    None,
    /// Only indices in `start..=last` can qualify.
    UpTo(u64),
    /// Every index `≥ first` qualifies; earlier ones are checked explicitly.
    From(u64),
    Odd,
}

fn floor_u64(r: &BigRational) -> u64 {
    if r.is_negative() {
        0
    } else {
        r.floor().to_integer().to_u64().expect("level-set bound fits in u64")
    }
}

fn tail_level(tail: &Tail, t: &BigRational, strict: bool, start: u64) -> TailLevel {
    let cmp_hit = |v: &ExtRat| {
        let thr = ExtRat::Fin(t.clone());
        if strict {
            *v > thr
        } else {
            *v >= thr
        }
    };
    if !strict && !t.is_positive() {
        return TailLevel::From(start);
    }
    match tail {
        Tail::Constant(c) => {
            if cmp_hit(c) {
                TailLevel::From(start)
            } else {
                TailLevel::None
            }
        }
        Tail::HarmonicAbove { limit, coef } => match limit {
            // The tail sits strictly above its limit.
            ExtRat::Fin(l) if l >= t => TailLevel::From(start),
            ExtRat::Fin(l) => {
                // l + coef/(n+1) ≥ t  ⇔  n + 1 ≤ coef/(t − l)
                let bound = coef / (t - l);
                TailLevel::UpTo(floor_u64(&bound))
            }
            _ => TailLevel::From(start),
        },
        Tail::HarmonicBelow { limit, coef } => match limit {
            ExtRat::Fin(l) if l > t => {
                // l − coef/(n+1) > t  ⇔  n + 1 > coef/(l − t)
                let bound = coef / (l - t);
                TailLevel::From(floor_u64(&bound).max(start))
            }
            // The tail stays strictly below its limit.
            ExtRat::Fin(_) => TailLevel::None,
            _ => TailLevel::From(start),
        },
        Tail::LinearGrowth { slope } => {
            let bound = t / slope;
            TailLevel::From(floor_u64(&bound) + 1)
        }
        Tail::TwoPoint { lo, hi } => match (cmp_hit(lo), cmp_hit(hi)) {
            (true, _) => TailLevel::From(start),
            (false, true) => TailLevel::Odd,
            (false, false) => TailLevel::None,
        },
    }
}

/// 0/1 capacities on `ℕ` built from filters.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum NatFilterCapacity {
    /// `α_ℱ` for the Fréchet filter: 1 exactly on cofinite sets.
    LowerFrechet,
    /// `β_ℱ` for the Fréchet filter: 1 exactly on infinite sets.
    UpperFrechet,
    /// The point filter at `n`.
    Principal(u64),
}

impl NatFilterCapacity {
    pub fn eval(self, s: &NatSet) -> ExtRat {
        let hit = match self {
            NatFilterCapacity::LowerFrechet => s.is_cofinite(),
            // On finite/cofinite sets, "infinite" and "cofinite" coincide.
            NatFilterCapacity::UpperFrechet => s.is_cofinite(),
            NatFilterCapacity::Principal(n) => s.contains(n),
        };
        if hit {
            ExtRat::one()
        } else {
            ExtRat::zero()
        }
    }
}
