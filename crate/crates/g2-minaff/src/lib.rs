//! Exact computations around graded limits of minimal affinizations in
//! type G2.
//!
//! A minimal affinization of the irreducible G2-module V(λ) admits a graded
//! limit L(λ), a module over the current algebra whose decomposition into
//! irreducible G2-modules is given by a lattice-point count in an explicit
//! rational polytope. This crate computes that decomposition and everything
//! around it in exact integer (and where needed, big-rational) arithmetic:
//!
//! * [`g2`]: the G2 root system, Weyl group and weight bookkeeping;
//! * [`character`]: the formal character ring, with two independent
//!   multiplicity engines (Freudenthal's recursion and the alternating
//!   Weyl-sum over a Kostant partition table) and a peeling decomposition;
//! * [`minaff`]: the polytope, the decomposition of graded limits,
//!   Kirillov-Reshetikhin special cases, defining relations and highest
//!   l-weight monomials, plus an exact factorial-matrix determinant;
//! * [`affine`]: affine root pairings, the ρ-statistic attached to a
//!   highest weight and Demazure-operator sequences;
//! * [`limit`]: box-truncated normalized characters and their stable limit
//!   as a product over positive roots;
//! * [`selftest`]: the crate's invariant suites, scalable by a factor, as
//!   used by the command-line `selftest`.
//!
//! Coefficients and dimensions use checked 128-bit arithmetic and report
//! [`Error::Overflow`] instead of wrapping; weight coordinates are i64 with
//! overflow checks compiled in crate-wide.

pub mod affine;
pub mod character;
mod error;
pub mod g2;
pub mod limit;
pub mod minaff;
pub mod selftest;

pub use error::Error;

pub type Result<T> = std::result::Result<T, Error>;

pub use character::{FormalCharacter, IrrDecomposition};
pub use g2::{Node, Root, Weight, WeylElement};
pub use minaff::HighestWeight;
