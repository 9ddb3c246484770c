//! Python bindings: the lattice norms, Trotter bounds, gate accounting,
//! resource estimator, and verification suite, exposed as plain functions
//! and thin wrapper classes.

use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;
use pyo3::types::PyDict;

use hubest::gate_costs as gc;
use hubest::lattice::{build_square_lattice, plaquette_partition, LatticeSpec};
use hubest::oracle::run_suite;
use hubest::pe_estimator as pe;
use hubest::trotter_bounds as tb;

fn err(e: hubest::Error) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn spec(l: usize, u: f64, tau: f64) -> PyResult<LatticeSpec> {
    LatticeSpec::new(l, u, tau).map_err(err)
}

/// Per-step non-Clifford gate counts.
#[pyclass(name = "GateCost", frozen)]
#[derive(Clone)]
struct PyGateCost {
    #[pyo3(get)]
    n_tof: u64,
    #[pyo3(get)]
    n_t: u64,
    #[pyo3(get)]
    n_rot: u64,
}

#[pymethods]
impl PyGateCost {
    #[new]
    fn new(n_tof: u64, n_t: u64, n_rot: u64) -> Self {
        Self { n_tof, n_t, n_rot }
    }

    fn __repr__(&self) -> String {
        format!("GateCost(n_tof={}, n_t={}, n_rot={})", self.n_tof, self.n_t, self.n_rot)
    }
}

impl From<gc::GateCost> for PyGateCost {
    fn from(c: gc::GateCost) -> Self {
        Self { n_tof: c.n_tof, n_t: c.n_t, n_rot: c.n_rot }
    }
}

impl From<&PyGateCost> for gc::GateCost {
    fn from(c: &PyGateCost) -> Self {
        Self { n_tof: c.n_tof, n_t: c.n_t, n_rot: c.n_rot }
    }
}

/// A Trotter error constant W with its per-lemma breakdown.
#[pyclass(name = "TrotterBound", frozen)]
struct PyTrotterBound {
    #[pyo3(get)]
    scheme: String,
    #[pyo3(get)]
    w: f64,
    #[pyo3(get)]
    lemma1_term: f64,
    #[pyo3(get)]
    lemma2_term: f64,
    #[pyo3(get)]
    plaquette_extra: f64,
}

#[pymethods]
impl PyTrotterBound {
    fn __repr__(&self) -> String {
        format!("TrotterBound(scheme='{}', w={})", self.scheme, self.w)
    }
}

impl From<tb::TrotterBound> for PyTrotterBound {
    fn from(b: tb::TrotterBound) -> Self {
        Self {
            scheme: b.scheme.to_string(),
            w: b.w,
            lemma1_term: b.lemma1_term,
            lemma2_term: b.lemma2_term,
            plaquette_extra: b.plaquette_extra,
        }
    }
}

/// Full phase-estimation resource estimate for one parameter point.
#[pyclass(name = "ResourceEstimate", frozen)]
struct PyResourceEstimate {
    #[pyo3(get)]
    method: String,
    #[pyo3(get)]
    l: usize,
    #[pyo3(get)]
    u: f64,
    #[pyo3(get)]
    tau: f64,
    #[pyo3(get)]
    w: f64,
    #[pyo3(get)]
    epsilon: f64,
    #[pyo3(get)]
    x: f64,
    #[pyo3(get)]
    t: f64,
    #[pyo3(get)]
    n_pe: u64,
    #[pyo3(get)]
    n_ht: f64,
    #[pyo3(get)]
    per_step: PyGateCost,
    #[pyo3(get)]
    total_tof: u64,
    #[pyo3(get)]
    total_t: u64,
    #[pyo3(get)]
    total_toffoli_equivalent: u64,
    #[pyo3(get)]
    n_q: u64,
    #[pyo3(get)]
    validity: f64,
}

#[pymethods]
impl PyResourceEstimate {
    fn __repr__(&self) -> String {
        format!(
            "ResourceEstimate(method='{}', l={}, n_q={}, total_tof={}, total_t={}, toffoli_equivalent={})",
            self.method, self.l, self.n_q, self.total_tof, self.total_t, self.total_toffoli_equivalent
        )
    }
}

impl From<pe::ResourceEstimate> for PyResourceEstimate {
    fn from(r: pe::ResourceEstimate) -> Self {
        Self {
            method: r.method.to_string(),
            l: r.l,
            u: r.u,
            tau: r.tau,
            w: r.bound.w,
            epsilon: r.epsilon,
            x: r.solution.budget.x,
            t: r.solution.t,
            n_pe: r.solution.n_pe,
            n_ht: r.solution.n_ht,
            per_step: r.per_step.into(),
            total_tof: r.solution.total_tof,
            total_t: r.solution.total_t,
            total_toffoli_equivalent: r.solution.total_toffoli_equivalent,
            n_q: r.n_q,
            validity: r.solution.validity,
        }
    }
}

/// Trace norm ||R||_1 of the periodic L x L hopping matrix, which equals
/// the many-body operator norm of the hopping Hamiltonian.
#[pyfunction]
#[pyo3(signature = (l, tau = 1.0))]
fn hopping_norm(l: usize, tau: f64) -> PyResult<f64> {
    let r = build_square_lattice(&spec(l, 1.0, tau)?).map_err(err)?;
    hubest::free_fermion::hopping_hamiltonian_norm(&r).map_err(err)
}

/// ||[[R_p, R_g], R_g]||_1 for the two-color plaquette partition.
#[pyfunction]
#[pyo3(signature = (l, tau = 1.0))]
fn nested_commutator_norm(l: usize, tau: f64) -> PyResult<f64> {
    let r = build_square_lattice(&spec(l, 1.0, tau)?).map_err(err)?;
    let p = plaquette_partition(&r).map_err(err)?;
    hubest::free_fermion::nested_commutator_1norm(
        p.pink.entries(),
        p.gold.entries(),
        p.gold.entries(),
    )
    .map_err(err)
}

/// Schatten 1-norm of a symmetric matrix given as nested lists.
#[pyfunction]
fn schatten_1_norm(rows: Vec<Vec<f64>>) -> PyResult<f64> {
    let n = rows.len();
    if rows.iter().any(|r| r.len() != n) {
        return Err(PyValueError::new_err("matrix must be square"));
    }
    let m = nalgebra_matrix(&rows);
    hubest::free_fermion::schatten_1_norm(&m).map_err(err)
}

fn nalgebra_matrix(rows: &[Vec<f64>]) -> nalgebra::DMatrix<f64> {
    let n = rows.len();
    nalgebra::DMatrix::from_fn(n, n, |r, c| rows[r][c])
}

#[pyfunction]
#[pyo3(signature = (l, u, tau = 1.0))]
fn w_so1(l: usize, u: f64, tau: f64) -> PyResult<PyTrotterBound> {
    Ok(tb::w_so1(&spec(l, u, tau)?).map_err(err)?.into())
}

#[pyfunction]
#[pyo3(signature = (l, u, tau = 1.0))]
fn w_so2(l: usize, u: f64, tau: f64) -> PyResult<PyTrotterBound> {
    Ok(tb::w_so2(&spec(l, u, tau)?).map_err(err)?.into())
}

#[pyfunction]
#[pyo3(signature = (l, u, tau = 1.0))]
fn w_plaq(l: usize, u: f64, tau: f64) -> PyResult<PyTrotterBound> {
    let s = spec(l, u, tau)?;
    let part = plaquette_partition(&build_square_lattice(&s).map_err(err)?).map_err(err)?;
    Ok(tb::w_plaq(&s, &part).map_err(err)?.into())
}

#[pyfunction]
fn plaq_step_cost(l: usize) -> PyResult<PyGateCost> {
    Ok(gc::plaq_step_cost(l).map_err(err)?.into())
}

#[pyfunction]
fn so_ffft_plus_step_cost(l: usize) -> PyResult<PyGateCost> {
    Ok(gc::so_ffft_plus_step_cost(l).map_err(err)?.into())
}

/// (alpha, rotations_after) of a Hamming-weight-phasing batch of size m.
#[pyfunction]
fn hwp_config(m: u64) -> PyResult<(u64, u64)> {
    let c = gc::hwp_config(m).map_err(err)?;
    Ok((c.alpha, c.rotations_after))
}

#[pyfunction]
fn apply_hwp(cost: &PyGateCost, l: usize, m: u64) -> PyResult<PyGateCost> {
    Ok(gc::apply_hwp(&cost.into(), l, m).map_err(err)?.into())
}

#[pyfunction]
fn toffoli_equivalent(cost: &PyGateCost) -> PyResult<u64> {
    gc::toffoli_equivalent(&cost.into()).map_err(err)
}

/// Additive error target 0.0051 L^2 (tau = 1 units).
#[pyfunction]
fn epsilon_target(l: usize) -> f64 {
    pe::epsilon_target(l)
}

/// End-to-end resource estimate. `u` and `tau` are in the same energy
/// units, as everywhere in this module.
#[pyfunction]
#[pyo3(signature = (l, u, tau = 1.0, method = "plaq", hwp_m = None, x = None, epsilon = None, catalysis_qubit = false))]
#[allow(clippy::too_many_arguments)]
fn estimate(
    l: usize,
    u: f64,
    tau: f64,
    method: &str,
    hwp_m: Option<u64>,
    x: Option<f64>,
    epsilon: Option<f64>,
    catalysis_qubit: bool,
) -> PyResult<PyResourceEstimate> {
    let method: pe::Method = method.parse().map_err(err)?;
    let opts = pe::EstimateOptions {
        hwp_m,
        x: match x {
            Some(v) => pe::XStrategy::Fixed(v),
            None => pe::XStrategy::Optimize,
        },
        epsilon,
        catalysis_qubit,
    };
    Ok(pe::estimate(&spec(l, u, tau)?, method, &opts).map_err(err)?.into())
}

/// The full 26-row resource table.
#[pyfunction]
fn resource_table() -> PyResult<Vec<PyResourceEstimate>> {
    Ok(hubest::report::resource_table().map_err(err)?.into_iter().map(Into::into).collect())
}

/// (alpha, hwp_m, total_toffoli_equivalent) per ancilla budget.
#[pyfunction]
#[pyo3(signature = (l, u, alphas, method = "plaq"))]
fn sweep_ancilla(l: usize, u: f64, alphas: Vec<u64>, method: &str) -> PyResult<Vec<(u64, u64, u64)>> {
    let method: pe::Method = method.parse().map_err(err)?;
    let pts = pe::sweep_ancilla(&spec(l, u, 1.0)?, method, &alphas).map_err(err)?;
    Ok(pts.into_iter().map(|p| (p.alpha, p.hwp_m, p.total_toffoli_equivalent)).collect())
}

/// Run the exact verification suite; returns one dict per check.
#[pyfunction]
#[pyo3(signature = (check = None))]
fn verify(py: Python<'_>, check: Option<&str>) -> PyResult<Vec<Py<PyDict>>> {
    let reports = run_suite(check).map_err(err)?;
    reports
        .into_iter()
        .map(|r| {
            let d = PyDict::new(py);
            d.set_item("name", r.name)?;
            d.set_item("instance", r.instance)?;
            d.set_item("passed", r.passed)?;
            d.set_item("deviation", r.deviation)?;
            d.set_item("tolerance", r.tolerance)?;
            d.set_item("detail", r.detail)?;
            d.set_item("seconds", r.seconds)?;
            Ok(d.unbind())
        })
        .collect()
}

#[pymodule]
fn hubest_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyGateCost>()?;
    m.add_class::<PyTrotterBound>()?;
    m.add_class::<PyResourceEstimate>()?;
    m.add_function(wrap_pyfunction!(hopping_norm, m)?)?;
    m.add_function(wrap_pyfunction!(nested_commutator_norm, m)?)?;
    m.add_function(wrap_pyfunction!(schatten_1_norm, m)?)?;
    m.add_function(wrap_pyfunction!(w_so1, m)?)?;
    m.add_function(wrap_pyfunction!(w_so2, m)?)?;
    m.add_function(wrap_pyfunction!(w_plaq, m)?)?;
    m.add_function(wrap_pyfunction!(plaq_step_cost, m)?)?;
    m.add_function(wrap_pyfunction!(so_ffft_plus_step_cost, m)?)?;
    m.add_function(wrap_pyfunction!(hwp_config, m)?)?;
    m.add_function(wrap_pyfunction!(apply_hwp, m)?)?;
    m.add_function(wrap_pyfunction!(toffoli_equivalent, m)?)?;
    m.add_function(wrap_pyfunction!(epsilon_target, m)?)?;
    m.add_function(wrap_pyfunction!(estimate, m)?)?;
    m.add_function(wrap_pyfunction!(resource_table, m)?)?;
    m.add_function(wrap_pyfunction!(sweep_ancilla, m)?)?;
    m.add_function(wrap_pyfunction!(verify, m)?)?;
    Ok(())
}
