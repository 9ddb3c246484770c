//! Robust symmetric eigendecomposition: Householder tridiagonalization
//! followed by implicit-shift QL, the classic EISPACK tred2/tql2 scheme.
//!
//! Hopping Hamiltonians have heavily degenerate spectra (bipartite lattices
//! carry large null spaces), and the library eigensolver can return
//! eigenpairs that fail to reconstruct such matrices. This implementation
//! is slower in the worst case but dependable, and it is what every norm,
//! spectrum, and propagator in the crate is built on.

use nalgebra::DMatrix;

const EPS: f64 = 2.220446049250313e-16;
const MAX_SWEEPS: usize = 64;

/// Eigenvalues (ascending) and orthonormal eigenvectors (columns) of a real
/// symmetric matrix; `a = v diag(d) v^T`.
pub struct SymmetricDecomposition {
    pub eigenvalues: Vec<f64>,
    pub eigenvectors: DMatrix<f64>,
}

/// Full decomposition of a symmetric matrix. The input's lower triangle is
/// trusted; no symmetry check is performed here.
pub fn symmetric_eigen(a: &DMatrix<f64>) -> SymmetricDecomposition {
    let n = a.nrows();
    let mut v = a.clone();
    let mut d = vec![0.0; n];
    let mut e = vec![0.0; n];
    if n == 0 {
        return SymmetricDecomposition { eigenvalues: d, eigenvectors: v };
    }
    tred2(&mut v, &mut d, &mut e);
    tql2(&mut v, &mut d, &mut e);
    SymmetricDecomposition { eigenvalues: d, eigenvectors: v }
}

/// Eigenvalues only (ascending); skips accumulating the transformation.
pub fn symmetric_eigenvalues(a: &DMatrix<f64>) -> Vec<f64> {
    let n = a.nrows();
    if n == 0 {
        return Vec::new();
    }
    let mut work = a.clone();
    let mut d = vec![0.0; n];
    let mut e = vec![0.0; n];
    tred_values(&mut work, &mut d, &mut e);
    tql_values(&mut d, &mut e);
    d.sort_by(f64::total_cmp);
    d
}

/// Householder reduction to tridiagonal form, accumulating the orthogonal
/// transformation in `v`.
fn tred2(v: &mut DMatrix<f64>, d: &mut [f64], e: &mut [f64]) {
    let n = v.nrows();
    for (j, dj) in d.iter_mut().enumerate() {
        *dj = v[(n - 1, j)];
    }
    for i in (1..n).rev() {
        let mut scale = 0.0;
        let mut h = 0.0;
        for dk in d.iter().take(i) {
            scale += dk.abs();
        }
        if scale == 0.0 {
            e[i] = d[i - 1];
            for j in 0..i {
                d[j] = v[(i - 1, j)];
                v[(i, j)] = 0.0;
                v[(j, i)] = 0.0;
            }
        } else {
            for dk in d.iter_mut().take(i) {
                *dk /= scale;
                h += *dk * *dk;
            }
            let f = d[i - 1];
            let mut g = h.sqrt();
            if f > 0.0 {
                g = -g;
            }
            e[i] = scale * g;
            h -= f * g;
            d[i - 1] = f - g;
            for ej in e.iter_mut().take(i) {
                *ej = 0.0;
            }
            for j in 0..i {
                let f = d[j];
                v[(j, i)] = f;
                let mut g = e[j] + v[(j, j)] * f;
                for k in (j + 1)..i {
                    g += v[(k, j)] * d[k];
                    e[k] += v[(k, j)] * f;
                }
                e[j] = g;
            }
            let mut f = 0.0;
            for j in 0..i {
                e[j] /= h;
                f += e[j] * d[j];
            }
            let hh = f / (h + h);
            for j in 0..i {
                e[j] -= hh * d[j];
            }
            for j in 0..i {
                let f = d[j];
                let g = e[j];
                for k in j..i {
                    let delta = f * e[k] + g * d[k];
                    v[(k, j)] -= delta;
                }
                d[j] = v[(i - 1, j)];
                v[(i, j)] = 0.0;
            }
        }
        d[i] = h;
    }
    // accumulate transformations
    for i in 0..(n - 1) {
        v[(n - 1, i)] = v[(i, i)];
        v[(i, i)] = 1.0;
        let h = d[i + 1];
        if h != 0.0 {
            for (k, dk) in d.iter_mut().enumerate().take(i + 1) {
                *dk = v[(k, i + 1)] / h;
            }
            for j in 0..=i {
                let mut g = 0.0;
                for k in 0..=i {
                    g += v[(k, i + 1)] * v[(k, j)];
                }
                for (k, dk) in d.iter().enumerate().take(i + 1) {
                    v[(k, j)] -= g * dk;
                }
            }
        }
        for k in 0..=i {
            v[(k, i + 1)] = 0.0;
        }
    }
    for (j, dj) in d.iter_mut().enumerate() {
        *dj = v[(n - 1, j)];
        v[(n - 1, j)] = 0.0;
    }
    v[(n - 1, n - 1)] = 1.0;
    e[0] = 0.0;
}

/// Implicit-shift QL sweeps on the tridiagonal form, rotating `v` along.
/// Eigenpairs come out sorted ascending.
fn tql2(v: &mut DMatrix<f64>, d: &mut [f64], e: &mut [f64]) {
    let n = d.len();
    for i in 1..n {
        e[i - 1] = e[i];
    }
    e[n - 1] = 0.0;
    let mut f = 0.0;
    let mut tst1: f64 = 0.0;
    for l in 0..n {
        tst1 = tst1.max(d[l].abs() + e[l].abs());
        let mut m = l;
        while m < n {
            if e[m].abs() <= EPS * tst1 {
                break;
            }
            m += 1;
        }
        if m > l {
            let mut sweeps = 0;
            loop {
                sweeps += 1;
                assert!(sweeps <= MAX_SWEEPS, "QL sweep failed to converge at index {l}");
                let g = d[l];
                let mut p = (d[l + 1] - g) / (2.0 * e[l]);
                let mut r = p.hypot(1.0);
                if p < 0.0 {
                    r = -r;
                }
                d[l] = e[l] / (p + r);
                d[l + 1] = e[l] * (p + r);
                let dl1 = d[l + 1];
                let mut h = g - d[l];
                for di in d.iter_mut().take(n).skip(l + 2) {
                    *di -= h;
                }
                f += h;
                p = d[m];
                let mut c = 1.0;
                let mut c2 = c;
                let mut c3 = c;
                let el1 = e[l + 1];
                let mut s = 0.0;
                let mut s2 = 0.0;
                for i in (l..m).rev() {
                    c3 = c2;
                    c2 = c;
                    s2 = s;
                    let g = c * e[i];
                    h = c * p;
                    r = p.hypot(e[i]);
                    e[i + 1] = s * r;
                    s = e[i] / r;
                    c = p / r;
                    p = c * d[i] - s * g;
                    d[i + 1] = h + s * (c * g + s * d[i]);
                    for k in 0..n {
                        let h = v[(k, i + 1)];
                        v[(k, i + 1)] = s * v[(k, i)] + c * h;
                        v[(k, i)] = c * v[(k, i)] - s * h;
                    }
                }
                p = -s * s2 * c3 * el1 * e[l] / dl1;
                e[l] = s * p;
                d[l] = c * p;
                if e[l].abs() <= EPS * tst1 {
                    break;
                }
            }
        }
        d[l] += f;
        e[l] = 0.0;
    }
    // selection sort, carrying eigenvector columns along
    for i in 0..n.saturating_sub(1) {
        let mut k = i;
        let mut p = d[i];
        for (j, &dj) in d.iter().enumerate().skip(i + 1) {
            if dj < p {
                k = j;
                p = dj;
            }
        }
        if k != i {
            d.swap(k, i);
            v.swap_columns(k, i);
        }
    }
}

/// Householder reduction without accumulating the transformation.
fn tred_values(a: &mut DMatrix<f64>, d: &mut [f64], e: &mut [f64]) {
    let n = a.nrows();
    for (j, dj) in d.iter_mut().enumerate() {
        *dj = a[(n - 1, j)];
    }
    for i in (1..n).rev() {
        let mut scale = 0.0;
        let mut h = 0.0;
        for dk in d.iter().take(i) {
            scale += dk.abs();
        }
        if scale == 0.0 {
            e[i] = d[i - 1];
            for j in 0..i {
                d[j] = a[(i - 1, j)];
            }
        } else {
            for dk in d.iter_mut().take(i) {
                *dk /= scale;
                h += *dk * *dk;
            }
            let f = d[i - 1];
            let mut g = h.sqrt();
            if f > 0.0 {
                g = -g;
            }
            e[i] = scale * g;
            h -= f * g;
            d[i - 1] = f - g;
            for ej in e.iter_mut().take(i) {
                *ej = 0.0;
            }
            for j in 0..i {
                let f = d[j];
                let mut g = e[j] + a[(j, j)] * f;
                for k in (j + 1)..i {
                    g += a[(k, j)] * d[k];
                    e[k] += a[(k, j)] * f;
                }
                e[j] = g;
            }
            let mut f = 0.0;
            for j in 0..i {
                e[j] /= h;
                f += e[j] * d[j];
            }
            let hh = f / (h + h);
            for j in 0..i {
                e[j] -= hh * d[j];
            }
            for j in 0..i {
                let f = d[j];
                let g = e[j];
                for k in j..i {
                    let delta = f * e[k] + g * d[k];
                    a[(k, j)] -= delta;
                }
                d[j] = a[(i - 1, j)];
            }
        }
        d[i] = h;
    }
    // recover the tridiagonal diagonal
    for i in (1..n).rev() {
        d[i] = a[(i, i)];
    }
    d[0] = a[(0, 0)];
    e[0] = 0.0;
}

/// QL sweeps without eigenvector accumulation.
fn tql_values(d: &mut [f64], e: &mut [f64]) {
    let n = d.len();
    for i in 1..n {
        e[i - 1] = e[i];
    }
    e[n - 1] = 0.0;
    let mut f = 0.0;
    let mut tst1: f64 = 0.0;
    for l in 0..n {
        tst1 = tst1.max(d[l].abs() + e[l].abs());
        let mut m = l;
        while m < n {
            if e[m].abs() <= EPS * tst1 {
                break;
            }
            m += 1;
        }
        if m > l {
            let mut sweeps = 0;
            loop {
                sweeps += 1;
                assert!(sweeps <= MAX_SWEEPS, "QL sweep failed to converge at index {l}");
                let g = d[l];
                let mut p = (d[l + 1] - g) / (2.0 * e[l]);
                let mut r = p.hypot(1.0);
                if p < 0.0 {
                    r = -r;
                }
                d[l] = e[l] / (p + r);
                d[l + 1] = e[l] * (p + r);
                let dl1 = d[l + 1];
                let mut h = g - d[l];
                for di in d.iter_mut().take(n).skip(l + 2) {
                    *di -= h;
                }
                f += h;
                p = d[m];
                let mut c = 1.0;
                let mut c2 = c;
                let mut c3 = c;
                let el1 = e[l + 1];
                let mut s = 0.0;
                let mut s2 = 0.0;
                for i in (l..m).rev() {
                    c3 = c2;
                    c2 = c;
                    s2 = s;
                    let g = c * e[i];
                    h = c * p;
                    r = p.hypot(e[i]);
                    e[i + 1] = s * r;
                    s = e[i] / r;
                    c = p / r;
                    p = c * d[i] - s * g;
                    d[i + 1] = h + s * (c * g + s * d[i]);
                }
                p = -s * s2 * c3 * el1 * e[l] / dl1;
                e[l] = s * p;
                d[l] = c * p;
                if e[l].abs() <= EPS * tst1 {
                    break;
                }
            }
        }
        d[l] += f;
        e[l] = 0.0;
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn reconstruction_dev(a: &DMatrix<f64>) -> f64 {
        let dec = symmetric_eigen(a);
        let lam = DMatrix::from_diagonal(&nalgebra::DVector::from_vec(dec.eigenvalues.clone()));
        let rec = &dec.eigenvectors * lam * dec.eigenvectors.transpose();
        (a - rec).amax()
    }

    fn orthonormality_dev(a: &DMatrix<f64>) -> f64 {
        let dec = symmetric_eigen(a);
        let n = a.nrows();
        (dec.eigenvectors.transpose() * &dec.eigenvectors - DMatrix::<f64>::identity(n, n)).amax()
    }

    #[test]
    fn two_by_two() {
        let a = DMatrix::from_row_slice(2, 2, &[0.0, 1.0, 1.0, 0.0]);
        let vals = symmetric_eigenvalues(&a);
        assert!((vals[0] + 1.0).abs() < 1e-14);
        assert!((vals[1] - 1.0).abs() < 1e-14);
        assert!(reconstruction_dev(&a) < 1e-14);
    }

    #[test]
    fn degenerate_spectra_reconstruct() {
        // periodic-lattice style adjacency with big null spaces
        for l in [4usize, 6] {
            let n = l * l;
            let idx = |x: usize, y: usize| (y % l) * l + (x % l);
            let mut a = DMatrix::<f64>::zeros(n, n);
            for y in 0..l {
                for x in 0..l {
                    a[(idx(x, y), idx(x + 1, y))] = 1.0;
                    a[(idx(x + 1, y), idx(x, y))] = 1.0;
                    a[(idx(x, y), idx(x, y + 1))] = 1.0;
                    a[(idx(x, y + 1), idx(x, y))] = 1.0;
                }
            }
            assert!(reconstruction_dev(&a) < 1e-12, "L={l}");
            assert!(orthonormality_dev(&a) < 1e-12, "L={l}");
            let vals = symmetric_eigenvalues(&a);
            let s1: f64 = vals.iter().map(|v| v.abs()).sum();
            let expect = if l == 4 { 24.0 } else { 56.0 };
            assert!((s1 - expect).abs() < 1e-10);
        }
    }

    #[test]
    fn values_match_full_decomposition() {
        // deterministic pseudo-random symmetric matrix
        let n = 40;
        let mut state = 0x243F6A8885A308D3u64;
        let mut next = move || {
            state ^= state << 13;
            state ^= state >> 7;
            state ^= state << 17;
            (state >> 11) as f64 / (1u64 << 53) as f64 - 0.5
        };
        let mut a = DMatrix::<f64>::zeros(n, n);
        for r in 0..n {
            for c in 0..=r {
                let v = next();
                a[(r, c)] = v;
                a[(c, r)] = v;
            }
        }
        let vals = symmetric_eigenvalues(&a);
        let full = symmetric_eigen(&a);
        for (x, y) in vals.iter().zip(&full.eigenvalues) {
            assert!((x - y).abs() < 1e-10 * (1.0 + x.abs()));
        }
        assert!(reconstruction_dev(&a) < 1e-12);
        // trace is preserved
        let tr: f64 = (0..n).map(|i| a[(i, i)]).sum();
        assert!((vals.iter().sum::<f64>() - tr).abs() < 1e-10);
    }

    #[test]
    fn empty_and_single() {
        assert!(symmetric_eigenvalues(&DMatrix::zeros(0, 0)).is_empty());
        let a = DMatrix::from_row_slice(1, 1, &[3.5]);
        assert_eq!(symmetric_eigenvalues(&a), vec![3.5]);
    }
}
