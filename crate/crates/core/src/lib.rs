//! Exact generation and verification of normal solutions of first BGG
//! operators on the flat projective and conformal models.
//!
//! The pipeline is: a graded matrix model of the Lie algebra
//! ([`liemodel`]), a representation built from it ([`repforge`]), the
//! truncated exponential `exp(-ρ(X))` acting on a tractor and projected to
//! the lowest grading slots ([`bggsolve`]), and independent checks by flat
//! differential operators ([`flatverify`]) and pointwise sampling
//! ([`strata`]).

pub mod bggsolve;
pub mod exactmath;
pub mod exec;
pub mod flatverify;
pub mod liemodel;
pub mod repforge;
pub mod strata;

pub use exec::Execution;
