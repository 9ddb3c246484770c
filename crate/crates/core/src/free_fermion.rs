//! Free-fermion linear algebra: Schatten 1-norms, spectral summaries, and
//! coefficient-matrix commutators.
//!
//! A hopping Hamiltonian is fully described by its Hermitian coefficient
//! matrix, so operator-level quantities reduce to dense eigenvalue problems
//! on the single-particle space. The commutator of two free-fermion
//! Hamiltonians is again free-fermionic with coefficient matrix [Q, P],
//! which is what makes the Trotter bounds efficiently computable.

use nalgebra::DMatrix;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::lattice::HoppingCoefficients;

/// Relative symmetry tolerance for inputs that must be Hermitian.
const SYM_TOL: f64 = 1e-10;

/// Eigenvalues below this fraction of the largest entry are classified as
/// exact zero modes; bipartite lattices carry large degenerate null spaces.
const ZERO_MODE_TOL: f64 = 1e-10;

/// Spectral data of a single spin sector's coefficient matrix.
///
/// `lambda_min` and `lambda_max` are the many-body extremes reached by
/// filling all negative (resp. positive) modes of one sector.
/// `operator_norm` is the norm of the corresponding two-sector hopping
/// Hamiltonian, which equals `schatten_1` whenever the diagonal vanishes.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SpectralSummary {
    pub eigenvalues: Vec<f64>,
    pub lambda_min: f64,
    pub lambda_max: f64,
    pub schatten_1: f64,
    pub operator_norm: f64,
}

fn check_symmetric(m: &DMatrix<f64>) -> Result<()> {
    if m.nrows() != m.ncols() {
        return Err(Error::DimensionMismatch(m.nrows(), m.ncols()));
    }
    let scale = m.amax().max(1e-300);
    let mut dev: f64 = 0.0;
    for r in 0..m.nrows() {
        for c in (r + 1)..m.ncols() {
            dev = dev.max((m[(r, c)] - m[(c, r)]).abs());
        }
    }
    if dev > SYM_TOL * scale {
        return Err(Error::NotSymmetric { dev });
    }
    Ok(())
}

/// Drop rows and columns that are identically zero. Schatten norms are
/// invariant under this restriction and star/flower matrices are supported
/// on a handful of sites, so it saves most of the eigensolver work.
fn compact_support(m: &DMatrix<f64>) -> DMatrix<f64> {
    let n = m.nrows();
    let live: Vec<usize> = (0..n)
        .filter(|&i| (0..n).any(|j| m[(i, j)] != 0.0 || m[(j, i)] != 0.0))
        .collect();
    if live.len() == n {
        return m.clone();
    }
    let k = live.len();
    let mut out = DMatrix::zeros(k, k);
    for (a, &i) in live.iter().enumerate() {
        for (b, &j) in live.iter().enumerate() {
            out[(a, b)] = m[(i, j)];
        }
    }
    out
}

/// Sorted eigenvalues of a symmetric matrix.
pub fn symmetric_spectrum(m: &DMatrix<f64>) -> Result<Vec<f64>> {
    check_symmetric(m)?;
    Ok(crate::eigen::symmetric_eigenvalues(m))
}

/// Schatten 1-norm (trace norm) of a symmetric matrix: sum of |eigenvalues|.
pub fn schatten_1_norm(m: &DMatrix<f64>) -> Result<f64> {
    check_symmetric(m)?;
    let c = compact_support(m);
    if c.nrows() == 0 {
        return Ok(0.0);
    }
    Ok(crate::eigen::symmetric_eigenvalues(&c).iter().map(|v| v.abs()).sum())
}

/// Trace norm of an arbitrary real matrix via its singular values.
/// Coincides with [`schatten_1_norm`] on symmetric input; needed for
/// antisymmetric commutators such as the flower matrix [R_star, R].
pub fn trace_norm(m: &DMatrix<f64>) -> f64 {
    let c = compact_support(m);
    if c.nrows() == 0 || c.ncols() == 0 {
        return 0.0;
    }
    c.singular_values().iter().sum()
}

/// Full spectral summary of a coefficient matrix.
pub fn spectral_summary(m: &DMatrix<f64>) -> Result<SpectralSummary> {
    let eigenvalues = symmetric_spectrum(m)?;
    let cut = ZERO_MODE_TOL * m.amax().max(1e-300);
    let lambda_min: f64 = eigenvalues.iter().filter(|&&v| v < -cut).sum();
    let lambda_max: f64 = eigenvalues.iter().filter(|&&v| v > cut).sum();
    let schatten_1: f64 = eigenvalues.iter().map(|v| v.abs()).sum();
    // two identical spin sectors double the single-sector extremes
    let operator_norm = 2.0 * lambda_max.max(-lambda_min);
    Ok(SpectralSummary { eigenvalues, lambda_min, lambda_max, schatten_1, operator_norm })
}

/// Many-body operator norm ||H_h|| of the two-spin hopping Hamiltonian with
/// coefficient matrix R, which equals ||R||_1 for zero-diagonal R.
pub fn hopping_hamiltonian_norm(r: &HoppingCoefficients) -> Result<f64> {
    let m = r.entries();
    let mut diag_dev: f64 = 0.0;
    for i in 0..m.nrows() {
        diag_dev = diag_dev.max(m[(i, i)].abs());
    }
    if diag_dev > 0.0 {
        // the symmetric-spectrum argument needs R_ii = 0
        return Err(Error::NonzeroDiagonal { dev: diag_dev });
    }
    schatten_1_norm(m)
}

/// Commutator QP - PQ of two coefficient matrices.
pub fn coefficient_commutator(q: &DMatrix<f64>, p: &DMatrix<f64>) -> Result<DMatrix<f64>> {
    if q.nrows() != p.nrows() || q.ncols() != p.ncols() || q.nrows() != q.ncols() {
        return Err(Error::DimensionMismatch(q.nrows(), p.nrows()));
    }
    Ok(q * p - p * q)
}

/// Trace norm of the nested commutator [[A, B], C].
pub fn nested_commutator_1norm(
    a: &DMatrix<f64>,
    b: &DMatrix<f64>,
    c: &DMatrix<f64>,
) -> Result<f64> {
    let inner = coefficient_commutator(a, b)?;
    let nested = coefficient_commutator(&inner, c)?;
    // symmetric inputs make the nested commutator symmetric again
    if check_symmetric(&nested).is_ok() {
        schatten_1_norm(&nested)
    } else {
        Ok(trace_norm(&nested))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::{build_square_lattice, plaquette_partition, star_matrix, LatticeSpec};

    fn lattice(l: usize) -> HoppingCoefficients {
        build_square_lattice(&LatticeSpec::new(l, 4.0, 1.0).unwrap()).unwrap()
    }

    #[test]
    fn pauli_x_norm() {
        let m = DMatrix::from_row_slice(2, 2, &[0.0, 1.0, 1.0, 0.0]);
        assert!((schatten_1_norm(&m).unwrap() - 2.0).abs() < 1e-14);
    }

    #[test]
    fn rejects_non_symmetric() {
        let m = DMatrix::from_row_slice(2, 2, &[0.0, 1.0, 0.5, 0.0]);
        assert!(matches!(schatten_1_norm(&m), Err(Error::NotSymmetric { .. })));
    }

    #[test]
    fn tdl_norms_match_tabulated_values() {
        // exact values; the published table rounds these to 2 s.f.
        for (l, want) in [(8usize, 101.254834), (12, 230.851252), (16, 412.386278)] {
            let got = hopping_hamiltonian_norm(&lattice(l)).unwrap();
            assert!((got - want).abs() < 1e-5, "L={l}: got {got}, want {want}");
        }
    }

    #[test]
    fn hopping_norm_rejects_nonzero_diagonal() {
        let mut m = lattice(4).into_entries();
        m[(0, 0)] = 0.5;
        let r = HoppingCoefficients::from_matrix(m);
        assert!(r.is_err());
    }

    #[test]
    fn norm_homogeneous_in_tau() {
        let r1 = build_square_lattice(&LatticeSpec::new(6, 4.0, 1.0).unwrap()).unwrap();
        let r2 = build_square_lattice(&LatticeSpec::new(6, 4.0, 2.0).unwrap()).unwrap();
        let n1 = hopping_hamiltonian_norm(&r1).unwrap();
        let n2 = hopping_hamiltonian_norm(&r2).unwrap();
        assert!((n2 - 2.0 * n1).abs() < 1e-9 * n2);
    }

    #[test]
    fn commutator_of_equal_matrices_vanishes() {
        let m = lattice(4).into_entries();
        let c = coefficient_commutator(&m, &m).unwrap();
        assert_eq!(c.amax(), 0.0);
    }

    #[test]
    fn commutator_dimension_check() {
        let a = DMatrix::<f64>::zeros(2, 2);
        let b = DMatrix::<f64>::zeros(3, 3);
        assert!(coefficient_commutator(&a, &b).is_err());
    }

    #[test]
    fn flower_norm_is_4_sqrt5() {
        // the star-vs-lattice commutator takes its bulk value already at L=5
        let r = lattice(5);
        let star = star_matrix(&r, 0).unwrap();
        let flower = coefficient_commutator(star.entries(), r.entries()).unwrap();
        let n1 = trace_norm(&flower);
        assert!((n1 - 4.0 * 5.0_f64.sqrt()).abs() < 1e-9, "got {n1}");
    }

    #[test]
    fn nested_commutator_tdl_values() {
        for (l, want) in [(6usize, 110.851252), (8, 192.0), (16, 810.038672)] {
            let part = plaquette_partition(&lattice(l)).unwrap();
            let got = nested_commutator_1norm(
                part.pink.entries(),
                part.gold.entries(),
                part.gold.entries(),
            )
            .unwrap();
            assert!((got - want).abs() < 1e-5, "L={l}: got {got}, want {want}");
        }
    }

    #[test]
    fn nested_commutator_trivial_zero() {
        let m = lattice(4).into_entries();
        let got = nested_commutator_1norm(&m, &m, &m).unwrap();
        assert_eq!(got, 0.0);
    }

    #[test]
    fn spectral_summary_consistency() {
        let r = lattice(6);
        let s = spectral_summary(r.entries()).unwrap();
        assert!((s.schatten_1 - 56.0).abs() < 1e-9);
        // zero-diagonal: symmetric spectrum, so the extremes agree
        assert!((s.lambda_max + s.lambda_min).abs() < 1e-9);
        assert!((s.operator_norm - s.schatten_1).abs() < 1e-9);
        assert_eq!(s.eigenvalues.len(), 36);
    }

    #[test]
    fn schatten_dominates_operator_norm() {
        let r = lattice(4);
        let s = spectral_summary(r.entries()).unwrap();
        let top = s.eigenvalues.iter().fold(0.0f64, |a, v| a.max(v.abs()));
        assert!(s.schatten_1 >= top);
    }
}
