//! Randomized checks of the data-type invariants.

use std::collections::HashSet;

use mbl_core::basis::{binomial, BasisBlock};
use mbl_core::degeneracy::{degeneracy_classes, signature};
use mbl_core::eigensolve::interior_window;
use mbl_core::entanglement::{reduced_density, Bipartition};
use mbl_core::hamiltonian::{assemble, DisorderModel, ModelKind};
use mbl_core::harness::derive_seed;
use mbl_core::lattice::LatticeSpec;
use mbl_core::levelstats::{fit_brody, histogram_density, sample_brody_ratios, OMEGA_MIN};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn kind() -> impl Strategy<Value = ModelKind> {
    prop_oneof![Just(ModelKind::Uniform), Just(ModelKind::Quasi1d), Just(ModelKind::Quasixy)]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn bonds_are_ordered_unit_steps(rows in 1usize..7, cols in 1usize..7) {
        let spec = LatticeSpec::new(rows, cols).unwrap();
        let bonds = spec.neighbor_pairs();
        prop_assert_eq!(bonds.len(), rows * (cols - 1) + cols * (rows - 1));
        prop_assert_eq!(bonds.len(), spec.bond_count());
        let unique: HashSet<_> = bonds.iter().collect();
        prop_assert_eq!(unique.len(), bonds.len());
        for b in bonds {
            prop_assert!(b.i < b.j);
            let (ri, ci) = spec.site_coords(b.i).unwrap();
            let (rj, cj) = spec.site_coords(b.j).unwrap();
            prop_assert_eq!(ri.abs_diff(rj) + ci.abs_diff(cj), 1);
        }
    }

    #[test]
    fn block_invariants(n in 1usize..13, frac in 0.0f64..=1.0) {
        let n_up = (frac * n as f64).round() as usize;
        let block = BasisBlock::enumerate(n, n_up).unwrap();
        prop_assert_eq!(block.len(), binomial(n, n_up));
        prop_assert!(block.states().windows(2).all(|w| w[0] > w[1]));
        for (k, &s) in block.states().iter().enumerate() {
            prop_assert_eq!(s.count_ones() as usize, n_up);
            prop_assert_eq!(block.rank(s).unwrap(), k);
        }
    }

    #[test]
    fn hamiltonian_storage_invariants(
        rows in 1usize..4,
        cols in 2usize..4,
        model in kind(),
        h in 0.0f64..20.0,
        j in -3.0f64..3.0,
        seed in any::<u64>(),
    ) {
        let spec = LatticeSpec::new(rows, cols).unwrap();
        let n = spec.n_sites();
        let block = BasisBlock::enumerate(n, n.div_ceil(2)).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let disorder = DisorderModel::draw(model, h, std::f64::consts::SQRT_2, n, &mut rng);
        if let DisorderModel::UniformRandom { fields, .. } = &disorder {
            prop_assert_eq!(fields.len(), n);
            prop_assert!(fields.iter().all(|f| f.abs() <= h));
        }
        let ham = assemble(&spec, &block, j, &disorder).unwrap();
        let mut diagonal = vec![false; ham.dim()];
        for &(r, c, v) in ham.triplets() {
            prop_assert!(r <= c);
            if r == c {
                diagonal[r] = true;
            } else {
                prop_assert_eq!(v, j / 2.0);
            }
        }
        prop_assert!(diagonal.iter().all(|&d| d));
        let dense = ham.to_dense();
        for a in 0..ham.dim() {
            for b in 0..ham.dim() {
                prop_assert_eq!(dense[(a, b)], dense[(b, a)]);
            }
        }
    }

    #[test]
    fn window_invariants(model in kind(), h in 0.1f64..20.0, eps in 0.0f64..=1.0, m in 3usize..20, seed in any::<u64>()) {
        let spec = LatticeSpec::new(2, 4).unwrap();
        let block = BasisBlock::enumerate(8, 4).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let disorder = DisorderModel::draw(model, h, std::f64::consts::SQRT_2, 8, &mut rng);
        let ham = assemble(&spec, &block, 1.0, &disorder).unwrap();
        let w = interior_window(&ham, eps, m).unwrap();
        prop_assert_eq!(w.eigenvalues.len(), m);
        prop_assert!(w.eigenvalues.windows(2).all(|p| p[0] <= p[1]));
        prop_assert!(w.eigenvalues.iter().all(|&l| w.e_min - 1e-9 <= l && l <= w.e_max + 1e-9));
        let (res, ortho) = w.quality(&ham);
        prop_assert!(res <= 1e-8 && ortho <= 1e-8);

        let cut = Bipartition::half(8).unwrap();
        for v in &w.eigenvectors {
            let rho = reduced_density(v, &block, &cut).unwrap();
            prop_assert!((rho.trace() - 1.0).abs() < 1e-10);
            prop_assert!((rho.eigenvalues.iter().sum::<f64>() - 1.0).abs() < 1e-10);
            prop_assert!(rho.eigenvalues.iter().all(|&l| l >= 0.0));
        }
    }

    #[test]
    fn signature_sums(rows in 1usize..5, cols in 1usize..5, bits in any::<u32>()) {
        let spec = LatticeSpec::new(rows, cols).unwrap();
        let n = spec.n_sites();
        let state = bits & ((1u32 << n) - 1);
        let sig = signature(state, &spec).unwrap();
        let total = 2 * state.count_ones() as i32 - n as i32;
        prop_assert_eq!(sig.row_sums.iter().sum::<i32>(), total);
        prop_assert_eq!(sig.col_sums.iter().sum::<i32>(), total);
        prop_assert!(sig.row_sums.iter().all(|s| s.unsigned_abs() as usize <= cols));
        prop_assert!(sig.col_sums.iter().all(|s| s.unsigned_abs() as usize <= rows));
    }

    #[test]
    fn class_sizes_partition_the_block(rows in 1usize..4, cols in 1usize..5, frac in 0.0f64..=1.0) {
        let spec = LatticeSpec::new(rows, cols).unwrap();
        let n = spec.n_sites();
        let n_up = (frac * n as f64).round() as usize;
        let (report, classes) = degeneracy_classes(&spec, n_up).unwrap();
        prop_assert_eq!(report.class_sizes.iter().sum::<usize>(), binomial(n, n_up));
        prop_assert_eq!(classes.len(), report.class_count);
    }

    #[test]
    fn derived_seeds_are_distinct(master in any::<u64>()) {
        let mut seen = HashSet::new();
        for i in 0..20 {
            for k in 0..200 {
                prop_assert!(seen.insert(derive_seed(master, i, k)));
            }
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn brody_fit_stays_in_domain(omega in -0.9f64..2.5, n in 500usize..5000, seed in any::<u64>()) {
        let r = sample_brody_ratios(omega, n, seed).unwrap();
        let hist = histogram_density(&r, 0.0, 1.0, 40).unwrap();
        let fit = fit_brody(&hist).unwrap();
        prop_assert!(fit.omega > -1.0 && fit.omega >= OMEGA_MIN);
        prop_assert!(fit.sigma >= 0.0);
    }
}
