//! Jordan-Wigner construction of interaction, hopping, and auxiliary
//! operators on small Hubbard instances.

use std::sync::Arc;

use nalgebra::DMatrix;

use crate::error::{Error, Result};
use crate::lattice::{star_matrix, HoppingCoefficients};
use crate::oracle::basis::{SectorBasis, MAX_SITES};
use crate::oracle::operator::{C64, ManyBodyOperator};

/// A Hubbard instance small enough for exact dense verification:
/// an arbitrary symmetric zero-diagonal hopping graph on at most
/// [`MAX_SITES`] sites plus the on-site interaction strength.
#[derive(Debug, Clone)]
pub struct SmallHubbardInstance {
    pub label: String,
    pub r: HoppingCoefficients,
    pub u: f64,
    /// Optional two-color split of the hopping graph, for plaquette-style
    /// product formulas; each color's edge set must be site-disjoint.
    pub partition: Option<(DMatrix<f64>, DMatrix<f64>)>,
}

impl SmallHubbardInstance {
    pub fn new(label: &str, r: HoppingCoefficients, u: f64) -> Result<Self> {
        if r.dim() > MAX_SITES {
            return Err(Error::InstanceTooLarge { qubits: 2 * r.dim(), max: 2 * MAX_SITES });
        }
        if u < 0.0 {
            return Err(Error::InvalidParameter(format!("u must be >= 0, got {u}")));
        }
        Ok(Self { label: label.into(), r, u, partition: None })
    }

    pub fn with_partition(mut self, pink: DMatrix<f64>, gold: DMatrix<f64>) -> Result<Self> {
        let sum = &pink + &gold;
        if (sum - self.r.entries()).amax() > 1e-12 {
            return Err(Error::InvalidParameter("partition colors do not sum to R".into()));
        }
        self.partition = Some((pink, gold));
        Ok(self)
    }

    /// Two sites joined by one hopping edge.
    pub fn chain2(u: f64, tau: f64) -> Self {
        Self::new("2-site chain", HoppingCoefficients::chain(2, tau), u).unwrap()
    }

    /// Open 2 x 2 grid, a 4-cycle, split into horizontal and vertical edge
    /// pairs.
    pub fn grid2x2(u: f64, tau: f64) -> Self {
        let r = HoppingCoefficients::open_grid(2, 2, tau);
        let mut pink = DMatrix::zeros(4, 4);
        let mut gold = DMatrix::zeros(4, 4);
        for (m, (i, j)) in [(0, (0usize, 1usize)), (0, (2, 3)), (1, (0, 2)), (1, (1, 3))] {
            let target = if m == 0 { &mut pink } else { &mut gold };
            target[(i, j)] = tau;
            target[(j, i)] = tau;
        }
        Self::new("2x2 grid", r, u).unwrap().with_partition(pink, gold).unwrap()
    }

    /// Open 2 x 3 grid (3 wide, 2 tall), seven edges.
    pub fn grid2x3(u: f64, tau: f64) -> Self {
        Self::new("2x3 grid", HoppingCoefficients::open_grid(3, 2, tau), u).unwrap()
    }

    pub fn n_sites(&self) -> usize {
        self.r.dim()
    }

    pub fn n_qubits(&self) -> usize {
        2 * self.r.dim()
    }
}

/// The dense operators of one instance, all block-diagonal over
/// particle-number sectors.
#[derive(Debug, Clone)]
pub struct JwOperators {
    pub inst: SmallHubbardInstance,
    pub basis: Arc<SectorBasis>,
    /// Chemically shifted interaction, (u/4) sum_i zz_i; diagonal.
    pub h_i: ManyBodyOperator,
    /// Plain u sum_i n_up n_dn form, for the global-phase check.
    pub h_i_unshifted: ManyBodyOperator,
    pub h_h: ManyBodyOperator,
    /// Lifted color Hamiltonians when the instance carries a partition.
    pub h_pink: Option<ManyBodyOperator>,
    pub h_gold: Option<ManyBodyOperator>,
    /// Per-site z_up z_dn factors; diagonal.
    pub zz: Vec<ManyBodyOperator>,
    /// Product over sites of (1 + i zz_i)/sqrt2; diagonal unitary.
    pub vbar: ManyBodyOperator,
}

impl JwOperators {
    pub fn build(inst: &SmallHubbardInstance) -> Result<Self> {
        let n = inst.n_sites();
        let basis = SectorBasis::new(n)?;
        let zz: Vec<ManyBodyOperator> = (0..n)
            .map(|i| {
                ManyBodyOperator::from_diagonal(&basis, move |x| {
                    C64::new(zbit(x, 2 * i) * zbit(x, 2 * i + 1), 0.0)
                })
            })
            .collect();
        let u = inst.u;
        let h_i = ManyBodyOperator::from_diagonal(&basis, |x| {
            let sum: f64 = (0..n).map(|i| zbit(x, 2 * i) * zbit(x, 2 * i + 1)).sum();
            C64::new(0.25 * u * sum, 0.0)
        });
        let h_i_unshifted = ManyBodyOperator::from_diagonal(&basis, |x| {
            let sum: f64 =
                (0..n).map(|i| (bit(x, 2 * i) * bit(x, 2 * i + 1)) as f64).sum();
            C64::new(u * sum, 0.0)
        });
        let inv_sqrt2 = std::f64::consts::FRAC_1_SQRT_2;
        let vbar = ManyBodyOperator::from_diagonal(&basis, |x| {
            (0..n).fold(C64::new(1.0, 0.0), |acc, i| {
                acc * C64::new(inv_sqrt2, inv_sqrt2 * zbit(x, 2 * i) * zbit(x, 2 * i + 1))
            })
        });
        let h_h = lift_hopping(&basis, inst.r.entries());
        let (h_pink, h_gold) = match &inst.partition {
            Some((p, g)) => (Some(lift_hopping(&basis, p)), Some(lift_hopping(&basis, g))),
            None => (None, None),
        };
        Ok(Self {
            inst: inst.clone(),
            basis,
            h_i,
            h_i_unshifted,
            h_h,
            h_pink,
            h_gold,
            zz,
            vbar,
        })
    }

    pub fn hamiltonian(&self) -> ManyBodyOperator {
        self.h_i.add(&self.h_h)
    }

    /// Lift an arbitrary coefficient matrix on this instance's sites.
    pub fn hopping(&self, coeffs: &DMatrix<f64>) -> ManyBodyOperator {
        lift_hopping(&self.basis, coeffs)
    }

    /// B_{i,j} = R_{i,j} sum_sigma adag_{i,sigma} a_{j,sigma}.
    pub fn b_op(&self, i: usize, j: usize) -> ManyBodyOperator {
        let mut op = ManyBodyOperator::zeros(&self.basis);
        let amp = self.inst.r.entries()[(i, j)];
        for spin in 0..2 {
            add_hop_term(&mut op, &self.basis, 2 * i + spin, 2 * j + spin, amp);
        }
        op
    }

    /// T_i = sum_j (B_{i,j} + B_{i,j}^dag): all hopping terms touching site
    /// i, whose coefficient matrix is exactly the star matrix at i.
    pub fn t_op(&self, i: usize) -> Result<ManyBodyOperator> {
        let star = star_matrix(&self.inst.r, i)?;
        Ok(self.hopping(star.entries()))
    }
}

fn bit(x: u32, q: usize) -> u32 {
    (x >> q) & 1
}

/// Eigenvalue of z on qubit q: +1 occupied, -1 empty.
fn zbit(x: u32, q: usize) -> f64 {
    2.0 * bit(x, q) as f64 - 1.0
}

/// Add amp * adag_p a_q (p != q) with Jordan-Wigner parity signs.
fn add_hop_term(op: &mut ManyBodyOperator, basis: &Arc<SectorBasis>, p: usize, q: usize, amp: f64) {
    if amp == 0.0 {
        return;
    }
    for (si, sector) in basis.sectors().iter().enumerate() {
        for (col, &x) in sector.states.iter().enumerate() {
            if bit(x, q) == 0 {
                continue;
            }
            let y = x ^ (1 << q);
            let s1 = parity_below(x, q);
            if bit(y, p) == 1 {
                continue;
            }
            let z = y | (1 << p);
            let s2 = parity_below(y, p);
            let (sj, row) = basis.locate(z);
            debug_assert_eq!(si, sj, "hopping must conserve spin populations");
            op.blocks_mut()[si][(row, col)] += C64::new(amp * s1 * s2, 0.0);
        }
    }
}

fn parity_below(x: u32, q: usize) -> f64 {
    if (x & ((1u32 << q) - 1)).count_ones().is_multiple_of(2) {
        1.0
    } else {
        -1.0
    }
}

/// Sum of adag_p a_q terms for a full coefficient matrix, both spin sectors.
fn lift_hopping(basis: &Arc<SectorBasis>, coeffs: &DMatrix<f64>) -> ManyBodyOperator {
    let n = coeffs.nrows();
    let mut op = ManyBodyOperator::zeros(basis);
    for i in 0..n {
        for j in 0..n {
            if i != j {
                for spin in 0..2 {
                    add_hop_term(&mut op, basis, 2 * i + spin, 2 * j + spin, coeffs[(i, j)]);
                }
            }
        }
    }
    op
}
