//! End-to-end phase-estimation resource optimizer: error-budget split,
//! Trotter time step, repetition count, rotation synthesis folding, and
//! logical-qubit tally.
//!
//! The additive energy error is split three ways: Trotter (Delta_TS = W t^2),
//! phase estimation (Delta_PE = 0.76 pi / (N_PE t)), and rotation synthesis
//! (Delta_HT). Writing delta = Delta_TS + Delta_PE and minimizing over t
//! gives t^2 = delta / (3 W), at which point Delta_TS = delta/3 and
//! Delta_PE = 2 delta/3, and the repetition count must exceed
//! (3^{3/2} 0.76 pi / 2) W^{1/2} / delta^{3/2}.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gate_costs::{
    apply_hwp, hwp_config, plaq_step_cost, so_ffft_legacy_step_cost, so_ffft_legacy_w_u4,
    so_ffft_plus_step_cost, toffoli_equivalent, GateCost, HwpConfig,
};
use crate::lattice::{build_square_lattice, plaquette_partition, LatticeSpec};
use crate::trotter_bounds::{w_plaq, w_so1, w_so2, TrotterBound};

/// Leading constant of the optimal repetition count,
/// 3^{3/2} * 0.76 * pi / 2 ~ 6.2032.
pub const N_PE_CONST: f64 = 2.387610416184968 * 2.598076211353316; // 0.76 pi * 3^{3/2}/2

/// Phase-estimation accuracy constant: Delta_PE = 0.76 pi / (N_PE t).
pub const PE_PHASE_CONST: f64 = 0.76 * std::f64::consts::PI;

/// W t^3 beyond this is flagged; the step-error bound assumes W t^3 << 1.
pub const VALIDITY_WARN_THRESHOLD: f64 = 0.1;

/// Target error densities (epsilon / L^2, tau = 1 units) reproducing half a
/// percent of the total system energy at the two tabulated couplings.
const EPSILON_DENSITY_U4: f64 = 0.0051;
const EPSILON_DENSITY_U8: f64 = 0.0038;

/// Estimation pipeline variant.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Method {
    Plaq,
    SoFfftPlus,
    SoFfftLegacy,
}

impl std::fmt::Display for Method {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Method::Plaq => write!(f, "plaq"),
            Method::SoFfftPlus => write!(f, "so-ffft-plus"),
            Method::SoFfftLegacy => write!(f, "so-ffft-legacy"),
        }
    }
}

impl std::str::FromStr for Method {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "plaq" => Ok(Method::Plaq),
            "so-ffft-plus" => Ok(Method::SoFfftPlus),
            "so-ffft-legacy" => Ok(Method::SoFfftLegacy),
            other => Err(Error::InvalidParameter(format!("unknown method '{other}'"))),
        }
    }
}

/// Three-way additive error split for a total budget `epsilon`:
/// synthesis gets x * epsilon, the rest is divided 1:2 between Trotter and
/// phase estimation at the optimal time step.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ErrorBudget {
    pub epsilon: f64,
    pub x: f64,
    pub delta: f64,
    pub delta_ts: f64,
    pub delta_pe: f64,
    pub delta_ht: f64,
}

impl ErrorBudget {
    pub fn split(epsilon: f64, x: f64) -> Result<Self> {
        if !epsilon.is_finite() || epsilon <= 0.0 {
            return Err(Error::InvalidParameter(format!("epsilon must be > 0, got {epsilon}")));
        }
        if !(x > 0.0 && x < 1.0) {
            return Err(Error::InvalidParameter(format!("x must lie in (0, 1), got {x}")));
        }
        let delta = (1.0 - x) * epsilon;
        Ok(Self {
            epsilon,
            x,
            delta,
            delta_ts: delta / 3.0,
            delta_pe: 2.0 * delta / 3.0,
            delta_ht: x * epsilon,
        })
    }
}

/// Additive error target epsilon = 0.0051 L^2 (tau = 1), roughly half a
/// percent of the total system energy at u/tau = 4.
pub fn epsilon_target(l: usize) -> f64 {
    EPSILON_DENSITY_U4 * (l * l) as f64
}

/// Coupling-aware error target. The half-percent-of-total-energy rule gives
/// a smaller density at stronger coupling where the ground-state energy per
/// site is lower; 0.0038 L^2 reproduces the u/tau = 8 resource table.
/// Unknown couplings fall back to the u/tau = 4 density.
pub fn epsilon_target_for(l: usize, u_over_tau: f64) -> f64 {
    let density = if (u_over_tau - 8.0).abs() < 1e-9 {
        EPSILON_DENSITY_U8
    } else {
        EPSILON_DENSITY_U4
    };
    density * (l * l) as f64
}

/// T gates per synthesized Z rotation at per-rotation accuracy
/// delta_ht * t / n_rot: 1.15 log2(n_rot / (delta_ht t)) + 9.2.
pub fn synthesis_t_count(n_rot_per_step: f64, delta_ht: f64, t: f64) -> Result<f64> {
    let arg = n_rot_per_step / (delta_ht * t);
    if !arg.is_finite() || arg <= 0.0 {
        return Err(Error::InvalidParameter(format!(
            "synthesis cost needs a positive log argument, got {arg}"
        )));
    }
    Ok(1.15 * arg.log2() + 9.2)
}

/// Solved phase-estimation budget for one (W, per-step cost, epsilon, x)
/// point.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PeSolution {
    pub budget: ErrorBudget,
    /// Trotter step time, t = sqrt(delta / (3 W)).
    pub t: f64,
    /// Real-valued optimum; the integer count is its ceiling.
    pub n_pe_exact: f64,
    pub n_pe: u64,
    /// T gates per surviving rotation; zero when the step has no rotations.
    pub n_ht: f64,
    pub total_t: u64,
    pub total_tof: u64,
    pub total_toffoli_equivalent: u64,
    /// W t^3, which the error model requires to be small.
    pub validity: f64,
    pub validity_warning: bool,
}

/// Total T count N_PE (N_R N_HT + N_T) for a fixed synthesis fraction x.
pub fn total_t_count(w: f64, per_step: &GateCost, epsilon: f64, x: f64) -> Result<PeSolution> {
    if !w.is_finite() || w <= 0.0 {
        return Err(Error::InvalidParameter(format!("W must be > 0, got {w}")));
    }
    let budget = ErrorBudget::split(epsilon, x)?;
    let t = (budget.delta / (3.0 * w)).sqrt();
    let n_pe_exact = N_PE_CONST * w.sqrt() / budget.delta.powf(1.5);
    let n_pe = n_pe_exact.ceil() as u64;
    let n_ht = if per_step.n_rot == 0 {
        0.0
    } else {
        synthesis_t_count(per_step.n_rot as f64, budget.delta_ht, t)?
    };
    let total_t =
        n_pe * per_step.n_t + (n_pe as f64 * per_step.n_rot as f64 * n_ht).ceil() as u64;
    let total_tof = n_pe * per_step.n_tof;
    let validity = w * t * t * t;
    Ok(PeSolution {
        budget,
        t,
        n_pe_exact,
        n_pe,
        n_ht,
        total_t,
        total_tof,
        total_toffoli_equivalent: total_tof + total_t.div_ceil(2),
        validity,
        validity_warning: validity > VALIDITY_WARN_THRESHOLD,
    })
}

/// Grid bounds and size for the synthesis-fraction search. The optimum sits
/// near x ~ 0.01 for lattice parameters, so the grid brackets that by an
/// order of magnitude each way.
const X_GRID_LO: f64 = 1e-3;
const X_GRID_HI: f64 = 0.2;
const X_GRID_POINTS: usize = 50;

/// Minimize the total T count over 50 log-spaced synthesis fractions.
pub fn optimize_split(w: f64, per_step: &GateCost, epsilon: f64) -> Result<PeSolution> {
    let (lo, hi) = (X_GRID_LO.ln(), X_GRID_HI.ln());
    let mut best: Option<PeSolution> = None;
    for i in 0..X_GRID_POINTS {
        let x = (lo + (hi - lo) * i as f64 / (X_GRID_POINTS - 1) as f64).exp();
        let sol = total_t_count(w, per_step, epsilon, x)?;
        if best.as_ref().is_none_or(|b| sol.total_t < b.total_t) {
            best = Some(sol);
        }
    }
    Ok(best.expect("grid is nonempty"))
}

/// How the synthesis fraction is chosen.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum XStrategy {
    Optimize,
    Fixed(f64),
}

/// Knobs for [`estimate`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EstimateOptions {
    /// HWP batch size; defaults to L^2/2 (PLAQ only).
    pub hwp_m: Option<u64>,
    pub x: XStrategy,
    /// Override the additive error target.
    pub epsilon: Option<f64>,
    /// Count the extra qubit holding the T-catalysis state.
    pub catalysis_qubit: bool,
}

impl Default for EstimateOptions {
    fn default() -> Self {
        Self { hwp_m: None, x: XStrategy::Optimize, epsilon: None, catalysis_qubit: false }
    }
}

/// Complete resource estimate for one parameter point.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ResourceEstimate {
    pub method: Method,
    pub l: usize,
    pub u: f64,
    pub tau: f64,
    pub bound: TrotterBound,
    pub epsilon: f64,
    pub per_step: GateCost,
    pub hwp: Option<HwpConfig>,
    pub solution: PeSolution,
    pub n_q: u64,
}

impl ResourceEstimate {
    pub fn w(&self) -> f64 {
        self.bound.w
    }
}

/// Precomputed per-(L, u, method) inputs, so ancilla sweeps and table runs
/// pay for the eigendecompositions once.
#[derive(Debug, Clone)]
pub struct EstimateContext {
    pub spec: LatticeSpec,
    pub method: Method,
    pub bound: TrotterBound,
    pub step_raw: GateCost,
}

impl EstimateContext {
    pub fn new(spec: &LatticeSpec, method: Method) -> Result<Self> {
        let (bound, step_raw) = match method {
            Method::Plaq => {
                let step = plaq_step_cost(spec.l)?;
                let r = build_square_lattice(spec)?;
                let part = plaquette_partition(&r)?;
                (w_plaq(spec, &part)?, step)
            }
            Method::SoFfftPlus => {
                let step = so_ffft_plus_step_cost(spec.l)?;
                let so1 = w_so1(spec)?;
                let so2 = w_so2(spec)?;
                // both orderings cost the same gates; keep the tighter bound
                (if so1.w <= so2.w { so1 } else { so2 }, step)
            }
            Method::SoFfftLegacy => {
                if (spec.u / spec.tau - 4.0).abs() > 1e-9 {
                    return Err(Error::InvalidParameter(
                        "legacy split-operator constants are tabulated at u/tau = 4 only".into(),
                    ));
                }
                let w = so_ffft_legacy_w_u4(spec.l)? * spec.tau.powi(3);
                let step = so_ffft_legacy_step_cost(spec.l)?;
                let bound = TrotterBound {
                    scheme: crate::trotter_bounds::TrotterScheme::So1,
                    w,
                    lemma1_term: 0.0,
                    lemma2_term: 0.0,
                    plaquette_extra: 0.0,
                };
                (bound, step)
            }
        };
        Ok(Self { spec: *spec, method, bound, step_raw })
    }

    /// Build a context from already-known bound and raw step cost.
    pub fn from_parts(spec: &LatticeSpec, method: Method, bound: TrotterBound, step_raw: GateCost) -> Self {
        Self { spec: *spec, method, bound, step_raw }
    }

    pub fn run(&self, opts: &EstimateOptions) -> Result<ResourceEstimate> {
        let l2 = (self.spec.l * self.spec.l) as u64;
        let (per_step, hwp) = match self.method {
            Method::Plaq => {
                let m = opts.hwp_m.unwrap_or(l2 / 2);
                let cfg = hwp_config(m)?;
                (apply_hwp(&self.step_raw, self.spec.l, m)?, Some(cfg))
            }
            _ => {
                if opts.hwp_m.is_some() {
                    return Err(Error::InvalidParameter(
                        "Hamming weight phasing applies to the plaquette method only".into(),
                    ));
                }
                (self.step_raw, None)
            }
        };
        let epsilon = opts
            .epsilon
            .unwrap_or_else(|| epsilon_target_for(self.spec.l, self.spec.u / self.spec.tau));
        let solution = match opts.x {
            XStrategy::Optimize => optimize_split(self.bound.w, &per_step, epsilon)?,
            XStrategy::Fixed(x) => total_t_count(self.bound.w, &per_step, epsilon, x)?,
        };
        // Qubits: 2 L^2 system + HWP ancillas + 1 phase-estimation +
        // 1 repeat-until-success. The default allotment reserves L^2/2
        // ancillas; a custom batch reserves exactly what it consumes.
        let ancilla = match &hwp {
            Some(cfg) if cfg.m == l2 / 2 => l2 / 2,
            Some(cfg) => cfg.alpha,
            None => 0,
        };
        let n_q = 2 * l2 + ancilla + 2 + u64::from(opts.catalysis_qubit);
        Ok(ResourceEstimate {
            method: self.method,
            l: self.spec.l,
            u: self.spec.u,
            tau: self.spec.tau,
            bound: self.bound.clone(),
            epsilon,
            per_step,
            hwp,
            solution,
            n_q,
        })
    }
}

/// Full pipeline for one parameter point: bound, per-step costs, HWP, and
/// optimized budget split.
pub fn estimate(spec: &LatticeSpec, method: Method, opts: &EstimateOptions) -> Result<ResourceEstimate> {
    EstimateContext::new(spec, method)?.run(opts)
}

/// One point of the ancilla/Toffoli trade-off curve.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct AncillaPoint {
    pub alpha: u64,
    pub hwp_m: u64,
    pub total_toffoli_equivalent: u64,
}

/// For each ancilla budget, pick the admissible HWP batch (m dividing
/// L^2/2 with m - w(m) <= alpha) that minimizes the Toffoli-equivalent
/// total; ties prefer the larger batch. A growing budget never forces a
/// worse batch, so the curve is non-increasing.
pub fn sweep_ancilla(
    spec: &LatticeSpec,
    method: Method,
    alphas: &[u64],
) -> Result<Vec<AncillaPoint>> {
    let ctx = EstimateContext::new(spec, method)?;
    let l2 = (spec.l * spec.l) as u64;
    let half = l2 / 2;
    let divisors: Vec<u64> = (1..=half).filter(|m| half.is_multiple_of(*m)).collect();
    let mut out = Vec::with_capacity(alphas.len());
    for &alpha in alphas {
        match method {
            Method::Plaq => {
                let mut best: Option<(u64, u64)> = None; // (teq, m)
                for &m in &divisors {
                    if hwp_config(m)?.alpha > alpha {
                        continue;
                    }
                    let est = ctx.run(&EstimateOptions { hwp_m: Some(m), ..Default::default() })?;
                    let teq = est.solution.total_toffoli_equivalent;
                    if best.is_none_or(|(bt, bm)| teq < bt || (teq == bt && m > bm)) {
                        best = Some((teq, m));
                    }
                }
                let (teq, m) = best.expect("m = 1 is always admissible");
                out.push(AncillaPoint { alpha, hwp_m: m, total_toffoli_equivalent: teq });
            }
            _ => {
                let est = ctx.run(&EstimateOptions::default())?;
                out.push(AncillaPoint {
                    alpha,
                    hwp_m: 1,
                    total_toffoli_equivalent: est.solution.total_toffoli_equivalent,
                });
            }
        }
    }
    Ok(out)
}

/// Fold every per-step gate into the Toffoli-equivalent tally of the full
/// run (rotations first synthesized at n_ht T each).
pub fn fold_step_toffoli(est: &ResourceEstimate) -> Result<u64> {
    toffoli_equivalent(&GateCost {
        n_tof: est.solution.total_tof,
        n_t: est.solution.total_t,
        n_rot: 0,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn spec(l: usize, u: f64) -> LatticeSpec {
        LatticeSpec::new(l, u, 1.0).unwrap()
    }

    #[test]
    fn epsilon_targets() {
        assert!((epsilon_target(8) - 0.3264).abs() < 1e-12);
        assert!((epsilon_target(16) - 1.3056).abs() < 1e-12);
        assert!((epsilon_target(10) - 0.51).abs() < 1e-12);
        assert!((epsilon_target_for(8, 8.0) - 0.2432).abs() < 1e-12);
        assert_eq!(epsilon_target_for(8, 4.0), epsilon_target(8));
    }

    #[test]
    fn budget_split_relations() {
        let b = ErrorBudget::split(0.3264, 0.01).unwrap();
        assert!((b.delta_ts + b.delta_pe + b.delta_ht - b.epsilon).abs() < 1e-15);
        assert!((b.delta_ts / b.delta - 1.0 / 3.0).abs() < 1e-12);
        assert!((b.delta_pe / b.delta - 2.0 / 3.0).abs() < 1e-12);
        assert!(ErrorBudget::split(0.0, 0.01).is_err());
        assert!(ErrorBudget::split(0.1, 1.0).is_err());
    }

    #[test]
    fn synthesis_cost_examples() {
        // argument exactly 2^20 and exactly 1
        assert!((synthesis_t_count(1048576.0, 1.0, 1.0).unwrap() - 32.2).abs() < 1e-9);
        assert!((synthesis_t_count(1.0, 1.0, 1.0).unwrap() - 9.2).abs() < 1e-12);
        let v = synthesis_t_count(48.0, 3.264e-3, 0.0143).unwrap();
        assert!((v - 32.2).abs() < 0.1, "got {v}");
        assert!(synthesis_t_count(0.0, 1.0, 1.0).is_err());
    }

    #[test]
    fn analytic_optimum_relations() {
        let step = GateCost { n_tof: 248, n_t: 384, n_rot: 48 };
        let sol = total_t_count(527.0, &step, 0.3264, 0.01).unwrap();
        // W t^2 = Delta_TS and n_pe_exact * t * Delta_PE = 0.76 pi
        assert!((527.0 * sol.t * sol.t - sol.budget.delta_ts).abs() < 1e-9);
        assert!((sol.n_pe_exact * sol.t * sol.budget.delta_pe - PE_PHASE_CONST).abs() < 1e-9);
        assert!(sol.n_pe as f64 >= sol.n_pe_exact);
        assert!((sol.n_pe as f64) < sol.n_pe_exact + 1.0);
    }

    #[test]
    fn npe_scales_as_sqrt_w() {
        let step = GateCost { n_tof: 0, n_t: 100, n_rot: 0 };
        let a = total_t_count(100.0, &step, 0.3, 0.01).unwrap();
        let b = total_t_count(400.0, &step, 0.3, 0.01).unwrap();
        assert!((b.n_pe_exact / a.n_pe_exact - 2.0).abs() < 1e-12);
    }

    #[test]
    fn rotation_free_step_skips_synthesis() {
        let step = GateCost { n_tof: 7, n_t: 100, n_rot: 0 };
        let sol = total_t_count(50.0, &step, 0.3, 0.01).unwrap();
        assert_eq!(sol.n_ht, 0.0);
        assert_eq!(sol.total_t, sol.n_pe * 100);
        assert_eq!(sol.total_tof, sol.n_pe * 7);
        // optimizer pushes x to the smallest grid value
        let opt = optimize_split(50.0, &step, 0.3).unwrap();
        assert!((opt.budget.x - 1e-3).abs() < 1e-12);
    }

    #[test]
    fn optimizer_beats_midpoint_split() {
        let step = GateCost { n_tof: 248, n_t: 384, n_rot: 48 };
        let opt = optimize_split(527.0, &step, 0.3264).unwrap();
        let half = total_t_count(527.0, &step, 0.3264, 0.5).unwrap();
        assert!(opt.total_t <= half.total_t);
        // and lands near the expected x ~ 0.01 regime
        assert!(opt.budget.x > 0.005 && opt.budget.x < 0.05, "x = {}", opt.budget.x);
    }

    #[test]
    fn estimate_l8_u4_headline() {
        let est = estimate(&spec(8, 4.0), Method::Plaq, &EstimateOptions::default()).unwrap();
        assert_eq!(est.n_q, 162);
        assert_eq!(est.per_step, GateCost { n_tof: 248, n_t: 384, n_rot: 48 });
        let tof = est.solution.total_tof as f64;
        let t = est.solution.total_t as f64;
        assert!((tof - 1.8e5).abs() / 1.8e5 < 0.15, "tof {tof}");
        assert!((t - 1.5e6).abs() / 1.5e6 < 0.15, "t {t}");
        assert!(est.solution.total_toffoli_equivalent < 1_000_000);
        assert!(!est.solution.validity_warning);
    }

    #[test]
    fn estimate_hwp_m1_costs_more() {
        let base = estimate(&spec(8, 4.0), Method::Plaq, &EstimateOptions::default()).unwrap();
        let m1 = estimate(
            &spec(8, 4.0),
            Method::Plaq,
            &EstimateOptions { hwp_m: Some(1), ..Default::default() },
        )
        .unwrap();
        assert!(m1.solution.total_t > base.solution.total_t);
        assert_eq!(m1.n_q, (2 * 64) + 2);
    }

    #[test]
    fn estimate_rejects_bad_combinations() {
        assert!(estimate(
            &spec(8, 4.0),
            Method::SoFfftPlus,
            &EstimateOptions { hwp_m: Some(4), ..Default::default() }
        )
        .is_err());
        assert!(estimate(&spec(6, 4.0), Method::SoFfftPlus, &EstimateOptions::default()).is_err());
        assert!(estimate(&spec(8, 8.0), Method::SoFfftLegacy, &EstimateOptions::default()).is_err());
        assert!(estimate(&spec(7, 4.0), Method::Plaq, &EstimateOptions::default()).is_err());
    }

    #[test]
    fn sweep_ancilla_endpoints_and_monotonicity() {
        let alphas: Vec<u64> = (0..=32).collect();
        let pts = sweep_ancilla(&spec(8, 4.0), Method::Plaq, &alphas).unwrap();
        assert_eq!(pts[0].hwp_m, 1);
        assert_eq!(pts.last().unwrap().hwp_m, 32);
        for w in pts.windows(2) {
            assert!(
                w[1].total_toffoli_equivalent <= w[0].total_toffoli_equivalent,
                "not monotone at alpha {}",
                w[1].alpha
            );
        }
        // no ancillas: split-operator wins; full budget: plaquette wins
        let so = sweep_ancilla(&spec(8, 4.0), Method::SoFfftPlus, &alphas).unwrap();
        assert!(pts[0].total_toffoli_equivalent > so[0].total_toffoli_equivalent);
        assert!(pts.last().unwrap().total_toffoli_equivalent < so.last().unwrap().total_toffoli_equivalent);
    }

    #[test]
    fn json_roundtrip_is_lossless() {
        let est = estimate(&spec(8, 4.0), Method::Plaq, &EstimateOptions::default()).unwrap();
        let text = serde_json::to_string(&est).unwrap();
        let back: ResourceEstimate = serde_json::from_str(&text).unwrap();
        assert_eq!(est, back);
    }
}
