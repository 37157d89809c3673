//! Interior and extremal eigensolves against the dense spectrum.

use mbl_core::basis::BasisBlock;
use mbl_core::eigensolve::{
    closest_window, dense_spectrum, extremal_eigenvalues, interior_window, interior_window_with, target_energy,
    SolverOptions,
};
use mbl_core::hamiltonian::{assemble, DisorderModel, ModelKind, SparseHamiltonian};
use mbl_core::lattice::LatticeSpec;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn instance(rows: usize, cols: usize, kind: ModelKind, h: f64, seed: u64) -> SparseHamiltonian {
    let spec = LatticeSpec::new(rows, cols).unwrap();
    let n = spec.n_sites();
    let block = BasisBlock::enumerate(n, n.div_ceil(2)).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let model = DisorderModel::draw(kind, h, std::f64::consts::SQRT_2, n, &mut rng);
    assemble(&spec, &block, 1.0, &model).unwrap()
}

#[test]
fn dense_reconstruction_on_924_block() {
    let h = instance(4, 3, ModelKind::Uniform, 3.0, 1);
    assert_eq!(h.dim(), 924);
    let spec = dense_spectrum(&h).unwrap();
    let v = &spec.eigenvectors;
    let dense = h.to_dense();
    let mut worst = 0.0f64;
    for i in 0..924 {
        for j in 0..924 {
            let mut s = 0.0;
            for k in 0..924 {
                s += v[(i, k)] * spec.eigenvalues[k] * v[(j, k)];
            }
            worst = worst.max((s - dense[(i, j)]).abs());
        }
    }
    assert!(worst < 1e-8, "reconstruction error {worst:e}");
    assert!(spec.eigenvalues.windows(2).all(|w| w[0] <= w[1]));
}

#[test]
fn extremes_match_dense_at_h5() {
    for seed in 0..3 {
        let h = instance(4, 3, ModelKind::Uniform, 5.0, seed);
        let all = dense_spectrum(&h).unwrap().eigenvalues;
        let (lo, hi) = extremal_eigenvalues(&h).unwrap();
        assert!((lo - all[0]).abs() < 1e-8, "{lo} vs {}", all[0]);
        assert!((hi - all[all.len() - 1]).abs() < 1e-8);
    }
}

#[test]
fn window_is_the_thirty_closest_dense_levels() {
    for (seed, kind) in [(3, ModelKind::Uniform), (4, ModelKind::Quasixy), (5, ModelKind::Quasi1d)] {
        let h = instance(4, 3, kind, 2.0, seed);
        let all = dense_spectrum(&h).unwrap().eigenvalues;
        let target = target_energy(all[0], all[all.len() - 1], 0.5);
        let start = closest_window(&all, target, 30);
        let w = interior_window(&h, 0.5, 30).unwrap();
        for (a, b) in w.eigenvalues.iter().zip(&all[start..start + 30]) {
            assert!((a - b).abs() < 1e-8, "{kind}: {a} vs {b}");
        }
        let (res, ortho) = w.quality(&h);
        assert!(res <= 1e-8 && ortho <= 1e-8);
    }
}

fn compare_paths(h: &SparseHamiltonian, m: usize) {
    let dense = interior_window(h, 0.5, m).unwrap();
    let forced = SolverOptions {
        dense_threshold: 0,
        ..SolverOptions::default()
    };
    let sparse = interior_window_with(h, 0.5, m, &forced).unwrap();
    assert!((dense.e_min - sparse.e_min).abs() < 1e-8);
    assert!((dense.e_max - sparse.e_max).abs() < 1e-8);
    for (a, b) in dense.eigenvalues.iter().zip(&sparse.eigenvalues) {
        assert!((a - b).abs() < 1e-8, "{a} vs {b}");
    }
    let (res, ortho) = sparse.quality(h);
    assert!(res <= 1e-8 && ortho <= 1e-8, "residual {res:e}, orthogonality {ortho:e}");
    // Eigenvectors agree up to sign wherever the level is isolated.
    for (k, (u, v)) in dense.eigenvectors.iter().zip(&sparse.eigenvectors).enumerate() {
        let gap = [k.checked_sub(1), Some(k + 1)]
            .into_iter()
            .flatten()
            .filter_map(|i| dense.eigenvalues.get(i))
            .map(|e| (e - dense.eigenvalues[k]).abs())
            .fold(f64::INFINITY, f64::min);
        if gap > 1e-4 {
            let overlap: f64 = u.iter().zip(v).map(|(a, b)| a * b).sum();
            assert!((overlap.abs() - 1.0).abs() < 1e-6, "state {k}: overlap {overlap}");
        }
    }
}

#[test]
fn shift_invert_matches_dense_on_924() {
    compare_paths(&instance(4, 3, ModelKind::Quasixy, 4.0, 6), 30);
    compare_paths(&instance(4, 3, ModelKind::Uniform, 15.0, 7), 30);
}

#[test]
fn shift_invert_matches_dense_on_3432() {
    let h = instance(2, 7, ModelKind::Quasixy, 5.0, 8);
    assert_eq!(h.dim(), 3432);
    compare_paths(&h, 30);
}

#[test]
fn energy_density_edges() {
    let h = instance(2, 3, ModelKind::Uniform, 1.0, 9);
    let all = dense_spectrum(&h).unwrap().eigenvalues;
    let top = interior_window(&h, 0.0, 5).unwrap();
    assert!((top.eigenvalues[4] - all[all.len() - 1]).abs() < 1e-10);
    let bottom = interior_window(&h, 1.0, 5).unwrap();
    assert!((bottom.eigenvalues[0] - all[0]).abs() < 1e-10);
}
