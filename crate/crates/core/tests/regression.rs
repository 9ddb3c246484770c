//! Pinned end-to-end outputs of the deterministic pipeline. The acceptance
//! suite compares against external reference tables; these tests freeze our
//! own numbers so model drift is caught even where those references are
//! inconsistent.

use hubest::lattice::LatticeSpec;
use hubest::pe_estimator::{estimate, EstimateOptions, Method};

fn close(a: f64, b: f64, rel: f64) -> bool {
    (a - b).abs() <= rel * b.abs().max(1.0)
}

#[test]
fn headline_estimate_is_pinned() {
    let spec = LatticeSpec::new(8, 4.0, 1.0).unwrap();
    let est = estimate(&spec, Method::Plaq, &EstimateOptions::default()).unwrap();
    assert!(close(est.bound.w, 528.2421230372837, 1e-12));
    assert_eq!(est.solution.n_pe, 795);
    assert_eq!(est.solution.total_tof, 197_160);
    assert_eq!(est.solution.total_t, 1_473_802);
    assert_eq!(est.solution.total_toffoli_equivalent, 934_061);
    assert_eq!(est.n_q, 162);
    assert!(close(est.solution.budget.x, 0.025632671683867802, 1e-12));
    assert!(close(est.solution.t, 0.014166393120056908, 1e-12));
    assert!(close(est.solution.n_ht, 30.621631413319694, 1e-12));
    assert!(close(est.solution.validity, 0.0015017958430497283, 1e-9));
}

#[test]
fn strong_coupling_large_lattice_is_pinned() {
    let spec = LatticeSpec::new(16, 8.0, 1.0).unwrap();
    let est = estimate(&spec, Method::Plaq, &EstimateOptions::default()).unwrap();
    assert!(close(est.bound.w, 4694.86277806363, 1e-12));
    assert!(close(est.epsilon, 0.9728, 1e-12));
    assert_eq!(est.solution.n_pe, 456);
    assert_eq!(est.solution.total_tof, 463_296);
    assert_eq!(est.solution.total_t, 1_597_114);
    assert_eq!(est.solution.total_toffoli_equivalent, 1_261_853);
    assert_eq!(est.n_q, 642);
    let hwp = est.hwp.unwrap();
    assert_eq!((hwp.m, hwp.alpha, hwp.rotations_after), (128, 127, 8));
}
