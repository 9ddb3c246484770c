//! Trotter error bounds and fault-tolerant resource estimates for
//! Hubbard-model phase estimation.
//!
//! The crate has two halves that keep each other honest:
//!
//! - the estimator: free-fermion norm machinery ([`free_fermion`]),
//!   commutator-based second-order Trotter error constants
//!   ([`trotter_bounds`]), per-step non-Clifford gate accounting with
//!   Hamming weight phasing ([`gate_costs`]), and an end-to-end
//!   phase-estimation budget optimizer ([`pe_estimator`]);
//! - the referee: exact dense many-body algebra on small instances
//!   ([`oracle`]) that verifies every lemma, circuit compilation, and
//!   error bound the estimator rests on.
//!
//! [`report`] reproduces the reference tables and sweep curves consumed by
//! the command-line interface.

pub mod eigen;
pub mod error;
pub mod free_fermion;
pub mod gate_costs;
pub mod lattice;
pub mod oracle;
pub mod pe_estimator;
pub mod report;
pub mod trotter_bounds;

pub use error::{Error, Result};
pub use gate_costs::GateCost;
pub use lattice::{HoppingCoefficients, LatticeSpec, PlaquettePartition};
pub use pe_estimator::{EstimateOptions, Method, ResourceEstimate};
pub use trotter_bounds::{TrotterBound, TrotterScheme};
