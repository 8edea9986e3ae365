//! Knot multisums: specifications, the diagram construction producing them,
//! exact evaluators, the shipped catalog, and reduced Tait graphs.
//!
//! The pipeline is: a checkerboard [`diagram::Diagram`] feeds
//! [`diagram::build_from_diagram`] to produce a [`spec::MultisumSpec`];
//! [`eval::phi_series`] evaluates the normalized series
//! `(q)_inf^crossings * S` to a requested order; [`catalog::verify_knot`]
//! compares that against the expected product of `h_b` series. The
//! brute-force [`eval::eval_multisum_box`] enumerator exists purely to
//! cross-check the pruned evaluator.

pub mod catalog;
pub mod diagram;
pub mod eval;
pub mod spec;
pub mod tait;

pub use catalog::{catalog_names, knot_spec, verify_knot};
pub use diagram::{build_from_diagram, diff_against_reference, Construction, Diagram, ReferenceForm};
pub use eval::{eval_multisum, eval_multisum_box, eval_order, phi_series, rhs_series};
pub use spec::{CanonicalParts, MultisumSpec};
pub use tait::{reduce_tait, tait_graph, tait_iso, ColorClassGraph, ReducedTaitGraph};
