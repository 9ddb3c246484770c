//! Non-Clifford gate accounting per Trotter step, including the
//! Hamming-weight-phasing transformation and gate-equivalence conversions.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Per-step non-Clifford budget: Toffoli gates, T gates, and arbitrary-angle
/// Z-axis rotations still awaiting synthesis.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct GateCost {
    pub n_tof: u64,
    pub n_t: u64,
    pub n_rot: u64,
}

impl std::ops::Add for GateCost {
    type Output = GateCost;
    fn add(self, rhs: GateCost) -> GateCost {
        GateCost {
            n_tof: self.n_tof + rhs.n_tof,
            n_t: self.n_t + rhs.n_t,
            n_rot: self.n_rot + rhs.n_rot,
        }
    }
}

/// Hamming-weight-phasing parameters for a batch of `m` equal-angle
/// rotations: `alpha` ancillas and Toffolis, `rotations_after` surviving
/// register rotations.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct HwpConfig {
    pub m: u64,
    pub alpha: u64,
    pub rotations_after: u64,
}

/// Number of set bits in the binary expansion.
fn hamming_weight(m: u64) -> u64 {
    m.count_ones() as u64
}

/// HWP cost of batching `m` equal-angle rotations: alpha = m - w(m)
/// Toffolis and ancillas, floor(log2 m) + 1 rotations on the weight
/// register. The register-width reading of the rotation count is adopted;
/// it differs from a ceiling reading only away from powers of two.
pub fn hwp_config(m: u64) -> Result<HwpConfig> {
    if m == 0 {
        return Err(Error::InvalidParameter("HWP batch size must be >= 1".into()));
    }
    Ok(HwpConfig { m, alpha: m - hamming_weight(m), rotations_after: m.ilog2() as u64 + 1 })
}

/// Per-step cost of plaquette Trotterization on an L x L lattice:
/// one interaction layer of L^2 rotations plus three tile layers, each
/// costing 2L^2 T gates (four F gates per plaquette at 2 T each) and L^2
/// equal-angle rotations.
pub fn plaq_step_cost(l: usize) -> Result<GateCost> {
    if !l.is_multiple_of(2) {
        return Err(Error::OddLattice(l));
    }
    if l < 4 {
        return Err(Error::LatticeTooSmall(l));
    }
    let l2 = (l * l) as u64;
    let interaction = GateCost { n_tof: 0, n_t: 0, n_rot: l2 };
    let tile = GateCost { n_tof: 0, n_t: 2 * l2, n_rot: l2 };
    Ok(interaction + tile + tile + tile)
}

/// Tabulated per-step costs of the tightened split-operator analysis.
/// The fast fermionic Fourier transform exists only for L = 2^k and no
/// closed form is published, so this is a lookup.
pub fn so_ffft_plus_step_cost(l: usize) -> Result<GateCost> {
    match l {
        4 => Ok(GateCost { n_tof: 0, n_t: 256, n_rot: 36 }),
        8 => Ok(GateCost { n_tof: 0, n_t: 1664, n_rot: 164 }),
        16 => Ok(GateCost { n_tof: 0, n_t: 10368, n_rot: 708 }),
        _ => Err(Error::UnsupportedFfftSize(l)),
    }
}

/// Prior split-operator costs, kept for comparison sweeps.
pub fn so_ffft_legacy_step_cost(l: usize) -> Result<GateCost> {
    match l {
        4 => Ok(GateCost { n_tof: 0, n_t: 256, n_rot: 68 }),
        8 => Ok(GateCost { n_tof: 0, n_t: 1664, n_rot: 292 }),
        16 => Ok(GateCost { n_tof: 0, n_t: 10368, n_rot: 1220 }),
        _ => Err(Error::UnsupportedFfftSize(l)),
    }
}

/// Prior split-operator error constants at u/tau = 4, for the same sweeps.
pub fn so_ffft_legacy_w_u4(l: usize) -> Result<f64> {
    match l {
        4 => Ok(1.4e3),
        8 => Ok(5.5e3),
        16 => Ok(2.2e4),
        _ => Err(Error::UnsupportedFfftSize(l)),
    }
}

/// Batch the equal-angle rotation layers of a PLAQ step with HWP batches of
/// size `m`. Each batch trades rotations for Toffolis:
/// n_rot -> n_rot * (floor(log2 m) + 1) / m, n_tof += n_rot * alpha / m.
///
/// `m` must divide L^2/2 so batches tile the layers exactly.
pub fn apply_hwp(cost: &GateCost, l: usize, m: u64) -> Result<GateCost> {
    let half = (l * l) as u64 / 2;
    if m == 0 || !half.is_multiple_of(m) {
        return Err(Error::BatchNotDivisor { m, half });
    }
    let cfg = hwp_config(m)?;
    debug_assert_eq!(cost.n_rot % m, 0);
    Ok(GateCost {
        n_tof: cost.n_tof + cost.n_rot / m * cfg.alpha,
        n_t: cost.n_t,
        n_rot: cost.n_rot / m * cfg.rotations_after,
    })
}

/// Total Toffoli count with T gates performed two-per-Toffoli by catalysis.
/// All rotations must already be synthesized into the T tally.
pub fn toffoli_equivalent(cost: &GateCost) -> Result<u64> {
    if cost.n_rot != 0 {
        return Err(Error::UnsynthesizedRotations(cost.n_rot));
    }
    Ok(cost.n_tof + cost.n_t.div_ceil(2))
}

/// A Toffoli is worth 4 T gates without catalysis.
pub fn t_equivalent_of_toffoli(n_tof: u64) -> u64 {
    4 * n_tof
}
