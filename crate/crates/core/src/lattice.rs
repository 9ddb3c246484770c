//! Hopping-coefficient matrices for periodic square lattices and small
//! interaction graphs, plus the two-color plaquette partition.

use nalgebra::DMatrix;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Parameters of an L x L periodic Hubbard lattice.
///
/// `u` is the on-site interaction strength and `tau` the nearest-neighbour
/// hopping amplitude, both in the same energy units. Boundaries are always
/// periodic; open boundaries are out of scope.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LatticeSpec {
    pub l: usize,
    pub u: f64,
    pub tau: f64,
}

impl LatticeSpec {
    pub fn new(l: usize, u: f64, tau: f64) -> Result<Self> {
        if l < 4 {
            // L = 2 would merge the two wraparound neighbours into weight-2tau
            // edges, which none of the bounds contemplate.
            return Err(Error::LatticeTooSmall(l));
        }
        if !u.is_finite() || u <= 0.0 {
            return Err(Error::InvalidParameter(format!("u must be > 0, got {u}")));
        }
        if !tau.is_finite() || tau <= 0.0 {
            return Err(Error::InvalidParameter(format!("tau must be > 0, got {tau}")));
        }
        Ok(Self { l, u, tau })
    }

    /// Number of lattice sites, L^2.
    pub fn sites(&self) -> usize {
        self.l * self.l
    }
}

/// Symmetric coefficient matrix R of a single spin sector of a hopping
/// Hamiltonian, with optional square-lattice metadata.
///
/// Row-major site indexing is frozen globally: site (x, y) maps to row
/// `y * L + x`. The bounds themselves are ordering-invariant but the oracle's
/// Jordan-Wigner strings are not, so one convention is used everywhere.
#[derive(Debug, Clone, PartialEq)]
pub struct HoppingCoefficients {
    entries: DMatrix<f64>,
    /// Side length when built on a periodic square lattice.
    grid: Option<usize>,
}

impl HoppingCoefficients {
    /// Wrap an arbitrary symmetric zero-diagonal coefficient matrix.
    pub fn from_matrix(entries: DMatrix<f64>) -> Result<Self> {
        check_symmetric(&entries)?;
        check_zero_diagonal(&entries)?;
        Ok(Self { entries, grid: None })
    }

    /// Open-boundary path graph on `n` sites with uniform amplitude `tau`.
    pub fn chain(n: usize, tau: f64) -> Self {
        let mut m = DMatrix::zeros(n, n);
        for i in 0..n.saturating_sub(1) {
            m[(i, i + 1)] = tau;
            m[(i + 1, i)] = tau;
        }
        Self { entries: m, grid: None }
    }

    /// Open-boundary w x h grid, row-major indexing.
    pub fn open_grid(w: usize, h: usize, tau: f64) -> Self {
        let n = w * h;
        let mut m = DMatrix::zeros(n, n);
        let idx = |x: usize, y: usize| y * w + x;
        for y in 0..h {
            for x in 0..w {
                if x + 1 < w {
                    m[(idx(x, y), idx(x + 1, y))] = tau;
                    m[(idx(x + 1, y), idx(x, y))] = tau;
                }
                if y + 1 < h {
                    m[(idx(x, y), idx(x, y + 1))] = tau;
                    m[(idx(x, y + 1), idx(x, y))] = tau;
                }
            }
        }
        Self { entries: m, grid: None }
    }

    pub fn dim(&self) -> usize {
        self.entries.nrows()
    }

    pub fn entries(&self) -> &DMatrix<f64> {
        &self.entries
    }

    pub fn into_entries(self) -> DMatrix<f64> {
        self.entries
    }

    /// Side length of the generating lattice, when there is one.
    pub fn lattice_side(&self) -> Option<usize> {
        self.grid
    }

    /// Row index of grid coordinate (x, y), with periodic wraparound.
    pub fn site_index(&self, x: usize, y: usize) -> Result<usize> {
        let l = self.grid.ok_or(Error::NotALattice)?;
        Ok((y % l) * l + (x % l))
    }

    /// Grid coordinate of a row index.
    pub fn site_coords(&self, i: usize) -> Result<(usize, usize)> {
        let l = self.grid.ok_or(Error::NotALattice)?;
        if i >= l * l {
            return Err(Error::SiteOutOfRange { site: i, sites: l * l });
        }
        Ok((i % l, i / l))
    }

    /// Dense CSV dump, one row per line. Debugging aid only.
    pub fn to_csv(&self) -> String {
        let mut out = String::new();
        for r in 0..self.entries.nrows() {
            let row: Vec<String> = (0..self.entries.ncols())
                .map(|c| format!("{}", self.entries[(r, c)]))
                .collect();
            out.push_str(&row.join(","));
            out.push('\n');
        }
        out
    }
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
    if dev > 1e-10 * scale {
        return Err(Error::NotSymmetric { dev });
    }
    Ok(())
}

fn check_zero_diagonal(m: &DMatrix<f64>) -> Result<()> {
    let mut dev: f64 = 0.0;
    for r in 0..m.nrows() {
        dev = dev.max(m[(r, r)].abs());
    }
    if dev > 0.0 {
        return Err(Error::NonzeroDiagonal { dev });
    }
    Ok(())
}

/// Nearest-neighbour coefficient matrix of the periodic L x L lattice:
/// tau on every horizontal and vertical neighbour pair, zero elsewhere.
pub fn build_square_lattice(spec: &LatticeSpec) -> Result<HoppingCoefficients> {
    if spec.l < 4 {
        return Err(Error::LatticeTooSmall(spec.l));
    }
    let l = spec.l;
    let n = l * l;
    let idx = |x: usize, y: usize| (y % l) * l + (x % l);
    let mut m = DMatrix::zeros(n, n);
    for y in 0..l {
        for x in 0..l {
            let i = idx(x, y);
            m[(i, idx(x + 1, y))] = spec.tau;
            m[(idx(x + 1, y), i)] = spec.tau;
            m[(i, idx(x, y + 1))] = spec.tau;
            m[(idx(x, y + 1), i)] = spec.tau;
        }
    }
    Ok(HoppingCoefficients { entries: m, grid: Some(l) })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum PlaquetteColor {
    Pink,
    Gold,
}

/// A single 4-site square face, listed in cycle order starting from its
/// lower-left anchor.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Plaquette {
    pub color: PlaquetteColor,
    pub anchor: (usize, usize),
    pub sites: [usize; 4],
}

impl Plaquette {
    /// The four undirected edges of the face, in cycle order.
    pub fn edges(&self) -> [(usize, usize); 4] {
        let s = &self.sites;
        [(s[0], s[1]), (s[1], s[2]), (s[2], s[3]), (s[3], s[0])]
    }
}

/// Edge-disjoint two-coloring of the lattice into pink and gold plaquettes.
///
/// Pink plaquettes are anchored at sites with both coordinates even, gold at
/// both coordinates odd. The coloring is the unique one (up to swap) in which
/// same-color plaquettes are site-disjoint, so each color's evolution
/// factorizes exactly.
#[derive(Debug, Clone)]
pub struct PlaquettePartition {
    pub pink: HoppingCoefficients,
    pub gold: HoppingCoefficients,
    pub plaquettes: Vec<Plaquette>,
}

pub fn plaquette_partition(r: &HoppingCoefficients) -> Result<PlaquettePartition> {
    let l = r.grid.ok_or(Error::NotALattice)?;
    if l % 2 != 0 {
        return Err(Error::OddLattice(l));
    }
    if l < 4 {
        return Err(Error::LatticeTooSmall(l));
    }
    let n = l * l;
    let idx = |x: usize, y: usize| (y % l) * l + (x % l);
    let mut pink = DMatrix::zeros(n, n);
    let mut gold = DMatrix::zeros(n, n);
    let mut plaquettes = Vec::with_capacity(n / 2);
    for ay in 0..l {
        for ax in 0..l {
            let color = match (ax % 2, ay % 2) {
                (0, 0) => PlaquetteColor::Pink,
                (1, 1) => PlaquetteColor::Gold,
                _ => continue,
            };
            let sites = [
                idx(ax, ay),
                idx(ax + 1, ay),
                idx(ax + 1, ay + 1),
                idx(ax, ay + 1),
            ];
            let target = match color {
                PlaquetteColor::Pink => &mut pink,
                PlaquetteColor::Gold => &mut gold,
            };
            for k in 0..4 {
                let (i, j) = (sites[k], sites[(k + 1) % 4]);
                let w = r.entries[(i, j)];
                target[(i, j)] += w;
                target[(j, i)] += w;
            }
            plaquettes.push(Plaquette { color, anchor: (ax, ay), sites });
        }
    }
    Ok(PlaquettePartition {
        pink: HoppingCoefficients { entries: pink, grid: Some(l) },
        gold: HoppingCoefficients { entries: gold, grid: Some(l) },
        plaquettes,
    })
}

/// Coefficient matrix of the star interaction at `site`: row and column
/// `site` copied from R, every other entry zero.
pub fn star_matrix(r: &HoppingCoefficients, site: usize) -> Result<HoppingCoefficients> {
    let n = r.dim();
    if site >= n {
        return Err(Error::SiteOutOfRange { site, sites: n });
    }
    let mut m = DMatrix::zeros(n, n);
    for j in 0..n {
        m[(site, j)] = r.entries[(site, j)];
        m[(j, site)] = r.entries[(j, site)];
    }
    Ok(HoppingCoefficients { entries: m, grid: r.grid })
}

/// The nonzero 4x4 sub-block of a single plaquette's coefficient matrix:
/// the 4-cycle adjacency scaled by tau.
pub fn plaquette_subblock(tau: f64) -> DMatrix<f64> {
    DMatrix::from_row_slice(
        4,
        4,
        &[
            0.0, tau, 0.0, tau, //
            tau, 0.0, tau, 0.0, //
            0.0, tau, 0.0, tau, //
            tau, 0.0, tau, 0.0,
        ],
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::free_fermion::schatten_1_norm;

    #[test]
    fn rejects_small_and_validates_params() {
        assert!(matches!(LatticeSpec::new(2, 4.0, 1.0), Err(Error::LatticeTooSmall(2))));
        assert!(LatticeSpec::new(4, 0.0, 1.0).is_err());
        assert!(LatticeSpec::new(4, 4.0, -1.0).is_err());
        assert!(LatticeSpec::new(5, 4.0, 1.0).is_ok());
    }

    #[test]
    fn square_lattice_is_degree_four() {
        let spec = LatticeSpec::new(4, 4.0, 1.0).unwrap();
        let r = build_square_lattice(&spec).unwrap();
        assert_eq!(r.dim(), 16);
        for i in 0..16 {
            let row_sum: f64 = r.entries().row(i).iter().sum();
            assert_eq!(row_sum, 4.0);
            assert_eq!(r.entries()[(i, i)], 0.0);
        }
    }

    #[test]
    fn square_lattice_norm_l4() {
        let spec = LatticeSpec::new(4, 4.0, 1.0).unwrap();
        let r = build_square_lattice(&spec).unwrap();
        let s1 = schatten_1_norm(r.entries()).unwrap();
        assert!((s1 - 24.0).abs() < 1e-9, "got {s1}");
    }

    #[test]
    fn square_lattice_norm_scales_with_tau() {
        let spec = LatticeSpec::new(8, 4.0, 2.0).unwrap();
        let r = build_square_lattice(&spec).unwrap();
        let s1 = schatten_1_norm(r.entries()).unwrap();
        // twice the tau = 1 value 100.2548...
        assert!((s1 - 202.509668).abs() < 1e-5, "got {s1}");
    }

    #[test]
    fn partition_covers_every_edge_once() {
        for l in [4usize, 6, 8, 10] {
            let spec = LatticeSpec::new(l, 4.0, 1.0).unwrap();
            let r = build_square_lattice(&spec).unwrap();
            let p = plaquette_partition(&r).unwrap();
            let sum = p.pink.entries() + p.gold.entries();
            assert_eq!(&sum, r.entries(), "pink + gold != R at L={l}");
            assert_eq!(p.plaquettes.len(), l * l / 2);
            let pinks = p.plaquettes.iter().filter(|q| q.color == PlaquetteColor::Pink).count();
            assert_eq!(pinks, l * l / 4);
            // every edge weight in a color is exactly tau (no double cover)
            for m in [p.pink.entries(), p.gold.entries()] {
                for v in m.iter() {
                    assert!(*v == 0.0 || *v == 1.0);
                }
            }
        }
    }

    #[test]
    fn partition_colors_are_site_disjoint() {
        let spec = LatticeSpec::new(8, 4.0, 1.0).unwrap();
        let r = build_square_lattice(&spec).unwrap();
        let p = plaquette_partition(&r).unwrap();
        for color in [PlaquetteColor::Pink, PlaquetteColor::Gold] {
            let mut seen = [false; 64];
            for q in p.plaquettes.iter().filter(|q| q.color == color) {
                for &s in &q.sites {
                    assert!(!seen[s], "site {s} appears in two {color:?} plaquettes");
                    seen[s] = true;
                }
            }
        }
    }

    #[test]
    fn partition_rejects_odd_l() {
        let spec = LatticeSpec::new(5, 4.0, 1.0).unwrap();
        let r = build_square_lattice(&spec).unwrap();
        assert!(matches!(plaquette_partition(&r), Err(Error::OddLattice(5))));
    }

    #[test]
    fn star_matrix_is_local_and_sums_to_r() {
        let spec = LatticeSpec::new(4, 4.0, 1.0).unwrap();
        let r = build_square_lattice(&spec).unwrap();
        let mut acc = DMatrix::zeros(16, 16);
        for i in 0..16 {
            let s = star_matrix(&r, i).unwrap();
            for row in 0..16 {
                for col in 0..16 {
                    if row != i && col != i {
                        assert_eq!(s.entries()[(row, col)], 0.0);
                    }
                }
            }
            acc += s.entries();
        }
        // each edge is counted once from each endpoint
        assert_eq!(acc, r.entries() * 2.0);
    }

    #[test]
    fn star_norm_is_4tau_in_the_bulk() {
        let spec = LatticeSpec::new(5, 4.0, 1.0).unwrap();
        let r = build_square_lattice(&spec).unwrap();
        let s = star_matrix(&r, 0).unwrap();
        let n1 = schatten_1_norm(s.entries()).unwrap();
        assert!((n1 - 4.0).abs() < 1e-10, "got {n1}");
    }

    #[test]
    fn star_of_single_edge_is_the_edge() {
        let r = HoppingCoefficients::chain(2, 1.0);
        let s = star_matrix(&r, 0).unwrap();
        assert_eq!(s.entries(), r.entries());
        let n1 = schatten_1_norm(s.entries()).unwrap();
        assert!((n1 - 2.0).abs() < 1e-12);
    }

    #[test]
    fn subblock_eigenvalues() {
        let m = plaquette_subblock(1.0);
        let ev = crate::eigen::symmetric_eigenvalues(&m);
        assert!((ev[0] + 2.0).abs() < 1e-12);
        assert!(ev[1].abs() < 1e-12);
        assert!(ev[2].abs() < 1e-12);
        assert!((ev[3] - 2.0).abs() < 1e-12);
        let half = plaquette_subblock(0.5);
        let top = crate::eigen::symmetric_eigenvalues(&half).iter().fold(0.0f64, |a, v| a.max(v.abs()));
        assert!((top - 1.0).abs() < 1e-12);
    }

    #[test]
    fn csv_roundtrip_shape() {
        let r = HoppingCoefficients::chain(3, 1.0);
        let csv = r.to_csv();
        assert_eq!(csv.lines().count(), 3);
        assert_eq!(csv.lines().next().unwrap(), "0,1,0");
    }

    #[test]
    fn site_indexing_roundtrip() {
        let spec = LatticeSpec::new(6, 4.0, 1.0).unwrap();
        let r = build_square_lattice(&spec).unwrap();
        assert_eq!(r.site_index(2, 3).unwrap(), 20);
        assert_eq!(r.site_coords(20).unwrap(), (2, 3));
        assert_eq!(r.site_index(7, 1).unwrap(), r.site_index(1, 1).unwrap());
        assert!(HoppingCoefficients::chain(2, 1.0).site_index(0, 0).is_err());
    }
}
