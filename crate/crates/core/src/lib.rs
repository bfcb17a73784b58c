//! Measurability of functions with respect to pavings, layer-cake
//! integrals over monotone set functions, and insertion of measurable
//! functions between a lower and an upper bound, all in exact arithmetic.
//!
//! A paving on a set `X` is any family of subsets containing `∅`. A function
//! `f: X → [0, +∞]` is measurable for a paving `ℰ` when its integral
//! `∫ f dα = ∫_0^∞ α{f > t} dt` depends only on the values of the monotone
//! set function `α` on members of `ℰ`.
//!
//! Finite ground sets hold at most [`MAX_GROUND`] elements. A separate
//! symbolic model over `ℕ` ([`nat`]) covers the results that need an
//! infinite ground set.

pub mod capacity;
pub mod ext;
pub mod func;
pub mod ground;
pub mod insertion;
pub mod integral;
pub mod measurable;
pub mod nat;
pub mod paving;
pub mod sample;
pub mod staircase;

pub use capacity::{Capacity, CapacityError, PartialCapacity, SetFunction, ZeroOneCapacity};
pub use ext::{ExtRat, ParseExtRatError};
pub use func::{Combine, FuncError, PointFn};
pub use ground::{Ground, GroundError, GroundModel, Subset, MAX_GROUND, MAX_ORACLE_GROUND};
pub use integral::IntegralValue;
pub use nat::{NatFilterCapacity, NatFn, NatPavingKind, NatSet, Tail};
pub use paving::{AtomPartition, Paving, PavingError, SetOp};
pub use staircase::{Staircase, StaircaseError};
