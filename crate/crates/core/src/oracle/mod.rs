//! Exact dense verification of lemmas, circuit identities, and Trotter
//! error bounds on small Hubbard instances.
//!
//! Everything here is brute force by design: operators are built explicitly
//! under the Jordan-Wigner encoding and compared at machine precision, so
//! the module serves as an independent referee for the coefficient-level
//! machinery the estimator runs on.

pub mod basis;
pub mod build;
pub mod checks;
pub mod operator;

pub use basis::SectorBasis;
pub use build::{JwOperators, SmallHubbardInstance};
pub use checks::{
    check_hopping_norm_table, check_nested_norm_table, exact_trotter_error, fit_error_exponent,
    run_suite, verify_anticommutation, verify_chemical_shift, verify_free_fermion_norm,
    verify_operator_wellformedness,
    verify_hwp_phases, verify_lemma1_identity, verify_lemma2_steps, verify_plaquette_circuit,
    verify_trotter_scaling, CheckReport, TrotterErrorPoint, CHECK_NAMES, TROTTER_STEP_SIZES,
};
pub use operator::ManyBodyOperator;
