//! Batch reproduction of the reference tables and sweep curves, with the
//! expensive per-lattice eigendecompositions shared across rows.

use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::free_fermion::{hopping_hamiltonian_norm, nested_commutator_1norm};
use crate::gate_costs::{
    plaq_step_cost, so_ffft_legacy_step_cost, so_ffft_plus_step_cost, GateCost,
};
use crate::lattice::{build_square_lattice, plaquette_partition, LatticeSpec};
use crate::pe_estimator::{
    sweep_ancilla, EstimateContext, EstimateOptions, Method, ResourceEstimate,
};
use crate::trotter_bounds::{bounds_from_norms, TrotterBound};

/// Exact lattice norms entering the bounds, tau = 1 units.
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct NormRow {
    pub l: usize,
    /// ||R||_1 / tau.
    pub hopping_norm: f64,
    /// ||[[R_p, R_g], R_g]||_1 / tau^3.
    pub nested_commutator_norm: f64,
}

/// Both norm families for the given lattice sides.
pub fn norm_table(l_values: &[usize]) -> Result<Vec<NormRow>> {
    l_values
        .iter()
        .map(|&l| {
            let spec = LatticeSpec::new(l, 4.0, 1.0)?;
            let r = build_square_lattice(&spec)?;
            let part = plaquette_partition(&r)?;
            Ok(NormRow {
                l,
                hopping_norm: hopping_hamiltonian_norm(&r)?,
                nested_commutator_norm: nested_commutator_1norm(
                    part.pink.entries(),
                    part.gold.entries(),
                    part.gold.entries(),
                )?,
            })
        })
        .collect()
}

/// One per-step bound/cost row of the scheme comparison table.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct BoundsRow {
    pub method: Method,
    pub l: usize,
    pub u_over_tau: f64,
    pub bound: TrotterBound,
    pub per_step: GateCost,
}

/// Scheme comparison at u/tau = 4: prior split-operator costs, the
/// tightened split-operator analysis at L = 2^k, and plaquette
/// Trotterization across even L.
pub fn bounds_table(u_over_tau: f64) -> Result<Vec<BoundsRow>> {
    let mut rows = Vec::new();
    for &l in &[4usize, 8, 16] {
        let spec = LatticeSpec::new(l, u_over_tau, 1.0)?;
        if (u_over_tau - 4.0).abs() < 1e-9 {
            let ctx = EstimateContext::new(&spec, Method::SoFfftLegacy)?;
            rows.push(BoundsRow {
                method: Method::SoFfftLegacy,
                l,
                u_over_tau,
                bound: ctx.bound,
                per_step: so_ffft_legacy_step_cost(l)?,
            });
        }
        let ctx = EstimateContext::new(&spec, Method::SoFfftPlus)?;
        rows.push(BoundsRow {
            method: Method::SoFfftPlus,
            l,
            u_over_tau,
            bound: ctx.bound,
            per_step: so_ffft_plus_step_cost(l)?,
        });
    }
    for &l in &[4usize, 6, 8, 12, 16] {
        let spec = LatticeSpec::new(l, u_over_tau, 1.0)?;
        let ctx = EstimateContext::new(&spec, Method::Plaq)?;
        rows.push(BoundsRow {
            method: Method::Plaq,
            l,
            u_over_tau,
            bound: ctx.bound,
            per_step: plaq_step_cost(l)?,
        });
    }
    Ok(rows)
}

/// Plaquette-method estimates for u/tau in {4, 8} and even L in [8, 32]:
/// the full resource table. Lattice norms are computed once per L and
/// shared between the two coupling rows.
pub fn resource_table() -> Result<Vec<ResourceEstimate>> {
    let mut rows = Vec::new();
    for l in (8..=32).step_by(2) {
        let probe = LatticeSpec::new(l, 4.0, 1.0)?;
        let r = build_square_lattice(&probe)?;
        let part = plaquette_partition(&r)?;
        let hh = hopping_hamiltonian_norm(&r)?;
        let nested = nested_commutator_1norm(
            part.pink.entries(),
            part.gold.entries(),
            part.gold.entries(),
        )?;
        for u in [4.0, 8.0] {
            let spec = LatticeSpec::new(l, u, 1.0)?;
            let (_, _, plaq) = bounds_from_norms(&spec, hh, Some(nested));
            let ctx = EstimateContext::from_parts(
                &spec,
                Method::Plaq,
                plaq.expect("nested norm supplied"),
                plaq_step_cost(l)?,
            );
            rows.push(ctx.run(&EstimateOptions::default())?);
        }
    }
    Ok(rows)
}

/// One point of the ancilla trade-off sweep.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SweepRow {
    pub l: usize,
    pub u_over_tau: f64,
    pub method: Method,
    pub alpha: u64,
    pub hwp_m: u64,
    pub total_toffoli_equivalent: u64,
}

/// Toffoli totals against the ancilla budget at fixed L, for the plaquette
/// and tightened split-operator methods.
pub fn alpha_sweep(l: usize, u_over_tau: f64) -> Result<Vec<SweepRow>> {
    let spec = LatticeSpec::new(l, u_over_tau, 1.0)?;
    let alphas: Vec<u64> = (0..=(l * l / 2) as u64).collect();
    let mut rows = Vec::new();
    for method in [Method::Plaq, Method::SoFfftPlus] {
        if method == Method::SoFfftPlus && ![4, 8, 16].contains(&l) {
            continue;
        }
        for p in sweep_ancilla(&spec, method, &alphas)? {
            rows.push(SweepRow {
                l,
                u_over_tau,
                method,
                alpha: p.alpha,
                hwp_m: p.hwp_m,
                total_toffoli_equivalent: p.total_toffoli_equivalent,
            });
        }
    }
    Ok(rows)
}

/// Toffoli totals against lattice size at the default ancilla allotment
/// L^2/2, including the prior split-operator reference points.
pub fn lattice_sweep(u_over_tau: f64) -> Result<Vec<SweepRow>> {
    let mut rows = Vec::new();
    for l in (8..=32).step_by(2) {
        let spec = LatticeSpec::new(l, u_over_tau, 1.0)?;
        let est = EstimateContext::new(&spec, Method::Plaq)?.run(&EstimateOptions::default())?;
        rows.push(SweepRow {
            l,
            u_over_tau,
            method: Method::Plaq,
            alpha: (l * l / 2) as u64,
            hwp_m: (l * l / 2) as u64,
            total_toffoli_equivalent: est.solution.total_toffoli_equivalent,
        });
        if [8usize, 16].contains(&l) {
            for method in [Method::SoFfftPlus, Method::SoFfftLegacy] {
                if method == Method::SoFfftLegacy && (u_over_tau - 4.0).abs() > 1e-9 {
                    continue;
                }
                let est = EstimateContext::new(&spec, method)?.run(&EstimateOptions::default())?;
                rows.push(SweepRow {
                    l,
                    u_over_tau,
                    method,
                    alpha: 0,
                    hwp_m: 1,
                    total_toffoli_equivalent: est.solution.total_toffoli_equivalent,
                });
            }
        }
    }
    Ok(rows)
}

/// Round to two significant figures, the table display convention.
pub fn round_2sf(x: f64) -> f64 {
    if x == 0.0 || !x.is_finite() {
        return x;
    }
    let exp = x.abs().log10().floor() as i32;
    let scale = 10f64.powi(exp - 1);
    (x / scale).round() * scale
}
