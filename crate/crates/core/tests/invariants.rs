//! Property tests for the norm machinery, bound scaling, and gate
//! accounting.

use nalgebra::DMatrix;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use hubest::free_fermion::{schatten_1_norm, spectral_summary, trace_norm};
use hubest::gate_costs::{apply_hwp, hwp_config, plaq_step_cost};
use hubest::lattice::{build_square_lattice, plaquette_partition, LatticeSpec};
use hubest::trotter_bounds::{w_plaq, w_so1, w_so2};

fn random_symmetric(n: usize, seed: u64) -> DMatrix<f64> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut m = DMatrix::zeros(n, n);
    for r in 0..n {
        for c in 0..=r {
            let v: f64 = rng.gen_range(-1.0..1.0);
            m[(r, c)] = v;
            m[(c, r)] = v;
        }
    }
    m
}

fn random_orthogonal(n: usize, seed: u64) -> DMatrix<f64> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let a = DMatrix::from_fn(n, n, |_, _| rng.gen_range(-1.0..1.0));
    a.qr().q()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn schatten_norm_is_orthogonally_invariant(seed in 0u64..1000, n in 2usize..12) {
        let m = random_symmetric(n, seed);
        let q = random_orthogonal(n, seed.wrapping_add(987));
        let rotated = &q * &m * q.transpose();
        let a = schatten_1_norm(&m).unwrap();
        let b = schatten_1_norm(&rotated).unwrap();
        prop_assert!((a - b).abs() <= 1e-8 * a.max(1.0), "{a} vs {b}");
    }

    #[test]
    fn schatten_norm_dominates_operator_norm(seed in 0u64..1000, n in 2usize..12) {
        let m = random_symmetric(n, seed);
        let s = spectral_summary(&m).unwrap();
        let top = s.eigenvalues.iter().fold(0.0f64, |acc, v| acc.max(v.abs()));
        prop_assert!(s.schatten_1 >= top - 1e-12);
        prop_assert!((trace_norm(&m) - s.schatten_1).abs() <= 1e-8 * s.schatten_1.max(1.0));
    }

    #[test]
    fn bounds_scale_cubically(u in 0.5f64..8.0, tau in 0.5f64..2.0, c in 0.5f64..3.0) {
        let l = 6;
        let s1 = LatticeSpec::new(l, u, tau).unwrap();
        let s2 = LatticeSpec::new(l, c * u, c * tau).unwrap();
        let r1 = build_square_lattice(&s1).unwrap();
        let r2 = build_square_lattice(&s2).unwrap();
        let p1 = plaquette_partition(&r1).unwrap();
        let p2 = plaquette_partition(&r2).unwrap();
        let c3 = c * c * c;
        for (a, b) in [
            (w_so1(&s1).unwrap().w, w_so1(&s2).unwrap().w),
            (w_so2(&s1).unwrap().w, w_so2(&s2).unwrap().w),
            (w_plaq(&s1, &p1).unwrap().w, w_plaq(&s2, &p2).unwrap().w),
        ] {
            prop_assert!((b - c3 * a).abs() <= 1e-9 * b.abs().max(1.0), "{b} vs {c3} * {a}");
        }
    }

    #[test]
    fn hwp_config_invariants(m in 1u64..4096) {
        let cfg = hwp_config(m).unwrap();
        prop_assert!(cfg.alpha < m);
        prop_assert_eq!(cfg.rotations_after, m.ilog2() as u64 + 1);
        // the weight register must be able to hold any value up to m
        prop_assert!(m < 1 << cfg.rotations_after);
    }

    #[test]
    fn apply_hwp_trades_rotations_for_toffolis(l in 2usize..9, k in 0u32..7) {
        let l = 2 * l; // even side, 4..16
        let half = (l * l / 2) as u64;
        let m = 1u64 << k;
        prop_assume!(half.is_multiple_of(m));
        let step = plaq_step_cost(l).unwrap();
        let batched = apply_hwp(&step, l, m).unwrap();
        prop_assert_eq!(batched.n_t, step.n_t);
        prop_assert!(batched.n_rot <= step.n_rot);
        prop_assert_eq!(batched.n_tof - step.n_tof, step.n_rot / m * hwp_config(m).unwrap().alpha);
    }
}

#[test]
fn partition_invariants_across_sizes() {
    for l in [4usize, 6, 8, 10, 12] {
        let spec = LatticeSpec::new(l, 4.0, 1.0).unwrap();
        let r = build_square_lattice(&spec).unwrap();
        let p = plaquette_partition(&r).unwrap();
        assert_eq!(&(p.pink.entries() + p.gold.entries()), r.entries());
        let mut edge_uses = std::collections::HashMap::new();
        for q in &p.plaquettes {
            for (a, b) in q.edges() {
                *edge_uses.entry((a.min(b), a.max(b))).or_insert(0u32) += 1;
            }
        }
        assert_eq!(edge_uses.len(), 2 * l * l, "edge count at L={l}");
        assert!(edge_uses.values().all(|&c| c == 1), "multiplicity at L={l}");
    }
}

#[test]
fn norm_growth_bounds() {
    // ||R||_1 <= (5/3) L^2: the norm density rises toward 16/pi^2 ~ 1.6211,
    // so the often-quoted 3/2 prefactor already fails at L = 6 (56 > 54)
    // and the first true simple fraction above the limit is 5/3.
    // The nested commutator stays under (10/3) L^2 throughout.
    for l in (4..=32).step_by(2) {
        let spec = LatticeSpec::new(l, 4.0, 1.0).unwrap();
        let r = build_square_lattice(&spec).unwrap();
        let l2 = (l * l) as f64;
        let hh = hubest::free_fermion::hopping_hamiltonian_norm(&r).unwrap();
        assert!(hh <= 5.0 / 3.0 * l2 + 1e-9, "L={l}: {hh}");
        let p = plaquette_partition(&r).unwrap();
        let nested = hubest::free_fermion::nested_commutator_1norm(
            p.pink.entries(),
            p.gold.entries(),
            p.gold.entries(),
        )
        .unwrap();
        assert!(nested <= 10.0 / 3.0 * l2 + 1e-9, "L={l}: {nested}");
    }
}

#[test]
fn lattice_spectrum_is_symmetric_about_zero() {
    // bipartite lattice: eigenvalues come in +- pairs
    let r = build_square_lattice(&LatticeSpec::new(6, 4.0, 1.0).unwrap()).unwrap();
    let s = spectral_summary(r.entries()).unwrap();
    let n = s.eigenvalues.len();
    for i in 0..n / 2 {
        assert!((s.eigenvalues[i] + s.eigenvalues[n - 1 - i]).abs() < 1e-9);
    }
}
