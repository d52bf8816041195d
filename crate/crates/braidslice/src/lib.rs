//! Exact-arithmetic toolkit for ranking patterns of braid-arrangement
//! slices and codimension-one unfolding (ideal-point) models.
//!
//! Everything geometric here is decided by the sign of an exact rational
//! number: chamber membership, slice boundedness, genericity. Floating
//! point only ever appears in display helpers and test cross-checks.
//!
//! The main pieces:
//!
//! * [`exact`] — arbitrary-precision rationals, matrices, rank, symmetric
//!   signature, and strict-feasibility linear programming with witnesses.
//! * [`ranking`] — rankings, ranking patterns, and the prefix-sum
//!   classification of how a braid slice meets each order cone.
//! * [`arrangement`] — the restricted all-subset arrangement, sign
//!   vectors, chamber enumeration by facet-adjacency search, and a text
//!   cache format.
//! * [`charpoly`] — characteristic polynomials by point counting over
//!   finite fields, and chamber counts via Zaslavsky's theorem.
//! * [`unfolding`] — distance-ranking models: object configurations,
//!   genericity checks, the induced slice direction, and ideal-point
//!   witnesses.
//! * [`symmetry`] — the symmetric-group action on chambers, canonical
//!   forms, orbit tables, realizability, and pattern counts.

pub mod arrangement;
pub mod charpoly;
pub mod exact;
pub mod ranking;
pub mod symmetry;
pub mod unfolding;

pub use exact::{Rat, RatMat};
