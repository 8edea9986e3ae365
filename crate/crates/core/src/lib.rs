//! Exact truncated q-series engine for mechanically verifying
//! Rogers-Ramanujan-type identities, including the lattice multisum
//! identities attached to alternating knot diagrams.
//!
//! Everything here computes with arbitrary-precision integers and explicit
//! truncation bookkeeping — no floating point anywhere. An "identity check"
//! always means: expand both sides independently as truncated series in `q`
//! and compare coefficients up to a requested order, reporting the first
//! mismatching exponent on failure.
//!
//! Crate layout:
//!
//! * [`series`] — the truncated-Laurent-series kernel (`TruncSeries`,
//!   `Monomial`, Pochhammer constructors, coefficient comparison);
//! * [`classical`] — single-sum classical identities (Rogers-Ramanujan,
//!   Andrews-Gordon, Euler, the q-binomial theorem, Jacobi triple product,
//!   the false-theta building blocks `h_b`);
//! * [`transform`] — Bailey-pair machinery, the iterated-chain identities,
//!   and the index-shuffling lemmas used to reshape nested sums;
//! * [`knots`] — multisum specifications, the checkerboard-diagram
//!   construction that produces them, the memoized lattice evaluator, a
//!   brute-force box evaluator used as a cross-check, and the catalog of
//!   shipped knots;
//! * [`report`] — the uniform verification report emitted by every checker.

pub mod classical;
pub mod error;
pub mod knots;
pub mod report;
pub mod series;
pub mod transform;

pub use error::{QError, Result};
pub use report::IdentityReport;
pub use series::{equal_to_order, Mismatch, Monomial, TruncSeries};
