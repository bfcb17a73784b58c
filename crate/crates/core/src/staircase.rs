//! Staircase functions `Σ a_i φ_{H_i}` with `H_1 ⊇ H_2 ⊇ …`.
//!
//! On a finite ground set a decreasing chain has finitely many distinct
//! members, so a finite term list represents every such sum: repeated sets
//! merge by adding their coefficients, and a coefficient of `+∞` absorbs
//! whatever follows it on the same set.

use thiserror::Error;

use crate::ext::ExtRat;
use crate::func::PointFn;
use crate::ground::Subset;
use crate::paving::Paving;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum StaircaseError {
    #[error("term {0} has a negative coefficient")]
    NegativeCoefficient(usize),
    #[error("set of term {0} is not contained in the set of term {prev}", prev = .0 - 1)]
    NotDecreasing(usize),
    #[error("term {0} lives on a ground set of a different size")]
    GroundMismatch(usize),
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Staircase {
    n: usize,
    terms: Vec<(ExtRat, Subset)>,
}

impl std::fmt::Debug for Staircase {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_list().entries(self.terms.iter().map(|(a, h)| (a, h))).finish()
    }
}

impl Staircase {
    pub fn new(n: usize, terms: Vec<(ExtRat, Subset)>) -> Result<Self, StaircaseError> {
        for (i, (a, h)) in terms.iter().enumerate() {
            if h.ground_len() != n {
                return Err(StaircaseError::GroundMismatch(i));
            }
            if a.is_negative() {
                return Err(StaircaseError::NegativeCoefficient(i));
            }
            if i > 0 && !h.is_subset(terms[i - 1].1) {
                return Err(StaircaseError::NotDecreasing(i));
            }
        }
        Ok(Staircase { n, terms })
    }

    /// Like [`Staircase::new`], then merges runs of equal sets and drops
    /// terms that contribute nothing (zero coefficient or empty set).
    pub fn collapsed(n: usize, terms: Vec<(ExtRat, Subset)>) -> Result<Self, StaircaseError> {
        let s = Staircase::new(n, terms)?;
        let mut out: Vec<(ExtRat, Subset)> = Vec::new();
        for (a, h) in s.terms {
            if a.is_zero() || h.is_empty() {
                continue;
            }
            match out.last_mut() {
                Some((b, last)) if *last == h => *b = &*b + &a,
                _ => out.push((a, h)),
            }
        }
        Ok(Staircase { n, terms: out })
    }

    pub fn zero(n: usize) -> Self {
        Staircase { n, terms: Vec::new() }
    }

    pub fn ground_len(&self) -> usize {
        self.n
    }

    pub fn terms(&self) -> &[(ExtRat, Subset)] {
        &self.terms
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// `Σ {a_i : x ∈ H_i}`.
    pub fn eval(&self, x: usize) -> ExtRat {
        self.terms.iter().filter(|(_, h)| h.contains(x)).map(|(a, _)| a.clone()).sum()
    }

    pub fn to_point_fn(&self) -> PointFn {
        PointFn::new((0..self.n).map(|x| self.eval(x)).collect()).expect("coefficients are nonnegative")
    }

    /// First term whose set is not a member of `e`.
    pub fn first_outside(&self, e: &Paving) -> Option<usize> {
        self.terms.iter().position(|(_, h)| !e.contains(*h))
    }

    /// True iff every `H_i` belongs to `e`, i.e. this is an element of `𝒮⁺(X, ℰ)`.
    pub fn is_in(&self, e: &Paving) -> bool {
        self.first_outside(e).is_none()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::func::Combine;
    use proptest::prelude::*;

    fn s(n: usize, e: &[usize]) -> Subset {
        Subset::from_elements(n, e.iter().copied()).unwrap()
    }

    #[test]
    fn eval_examples() {
        let st = Staircase::new(3, vec![(ExtRat::int(1), s(3, &[0, 1])), (ExtRat::int(2), s(3, &[0]))]).unwrap();
        assert_eq!(st.eval(0), ExtRat::int(3));
        assert_eq!(st.eval(1), ExtRat::int(1));
        assert_eq!(st.eval(2), ExtRat::zero());
    }

    #[test]
    fn rejects_bad_terms() {
        let err = Staircase::new(2, vec![(ExtRat::one(), s(2, &[0])), (ExtRat::one(), s(2, &[1]))]);
        assert_eq!(err, Err(StaircaseError::NotDecreasing(1)));
        let err = Staircase::new(2, vec![(ExtRat::int(-1), s(2, &[0]))]);
        assert_eq!(err, Err(StaircaseError::NegativeCoefficient(0)));
    }

    #[test]
    fn collapse_merges_repeats() {
        let h = s(2, &[0]);
        let st = Staircase::collapsed(
            2,
            vec![
                (ExtRat::ratio(1, 2), Subset::full(2)),
                (ExtRat::ratio(1, 2), h),
                (ExtRat::ratio(1, 2), h),
                (ExtRat::zero(), h),
                (ExtRat::one(), Subset::empty(2)),
            ],
        )
        .unwrap();
        assert_eq!(st.terms(), &[(ExtRat::ratio(1, 2), Subset::full(2)), (ExtRat::one(), h)]);
        assert_eq!(st.eval(0), ExtRat::ratio(3, 2));
    }

    #[test]
    fn infinite_coefficient_absorbs() {
        let h = s(2, &[1]);
        let st = Staircase::collapsed(2, vec![(ExtRat::PosInf, h), (ExtRat::int(5), h)]).unwrap();
        assert_eq!(st.terms(), &[(ExtRat::PosInf, h)]);
        assert_eq!(st.to_point_fn().values(), &[ExtRat::zero(), ExtRat::PosInf]);
    }

    fn chain_strategy() -> impl Strategy<Value = (usize, Vec<(ExtRat, Subset)>)> {
        (1usize..=5)
            .prop_flat_map(|n| {
                let term = (0i64..6, any::<u32>());
                (Just(n), proptest::collection::vec(term, 0..6))
            })
            .prop_map(|(n, raw)| {
                let mut cur = Subset::full(n);
                let mut terms = Vec::new();
                for (a, drop) in raw {
                    cur = cur.difference(Subset::from_bits(n, drop & cur.bits() & (drop >> 7)));
                    terms.push((ExtRat::int(a), cur));
                }
                (n, terms)
            })
    }

    proptest! {
        #[test]
        fn eval_matches_expanded_indicator_sum((n, terms) in chain_strategy()) {
            let st = Staircase::new(n, terms.clone()).unwrap();
            let expanded = terms.iter().fold(PointFn::zero(n), |acc, (a, h)| {
                acc.pointwise(&PointFn::indicator(*h).scale(a), Combine::Add).unwrap()
            });
            prop_assert_eq!(st.to_point_fn(), expanded.clone());
            let c = Staircase::collapsed(n, terms).unwrap();
            prop_assert_eq!(c.to_point_fn(), expanded);
        }
    }
}
