//! Gompertz-Makeham lifetime model, distributions of sample extremes under
//! Archimedean dependence, independence, and Bernoulli shocks, and grid-based
//! checkers for five stochastic orders.
//!
//! The crate is organised around the pipeline
//! `gm` (one lifetime) → `extremes` (curves for minima/maxima of a sample) →
//! `stochorder` (order verdicts between two curves) → `harness` (scenario
//! generation and theorem/counterexample verification), with `majorize` and
//! `archimedean` supplying the vector pre-orders and generator predicates the
//! hypotheses are written in.

pub mod archimedean;
pub mod error;
pub mod extremes;
pub mod gm;
pub mod harness;
pub mod majorize;
pub mod rng;
pub mod stochorder;

pub use error::EvalError;
pub use extremes::{CurveKind, ExtremeCurve, PopulationSpec, Regime};
pub use gm::GMParams;
pub use stochorder::{Grid, OrderStatus, OrderingVerdict, Relation, Tol};
