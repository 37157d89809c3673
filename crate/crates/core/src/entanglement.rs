//! Bipartite von Neumann entanglement entropy of block eigenvectors.
//!
//! Subsystem A is the first `n_a` sites in row-major order. With site 0 as
//! the most significant bit, the full-space index of a configuration splits
//! as `index = a · 2^{n_b} + b`, so the coefficient matrix `M[a][b]` is a
//! plain row-major reshape of the expanded vector.

use faer::Mat;
use serde::{Deserialize, Serialize};

use crate::basis::BasisBlock;
use crate::{Error, Result};

/// Eigenvalues of `ρ` below this are treated as zero.
pub const CLAMP: f64 = 1e-14;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Bipartition {
    pub n_a: usize,
    pub n_b: usize,
}

impl Bipartition {
    pub fn new(n_a: usize, n_sites: usize) -> Result<Self> {
        if n_a == 0 || n_a >= n_sites {
            return Err(Error::domain(format!(
                "cut of {n_a} sites does not split {n_sites} sites into two nonempty parts"
            )));
        }
        Ok(Self {
            n_a,
            n_b: n_sites - n_a,
        })
    }

    /// `n_a = ⌊N/2⌋`.
    pub fn half(n_sites: usize) -> Result<Self> {
        Self::new(n_sites / 2, n_sites)
    }

    pub fn n_sites(&self) -> usize {
        self.n_a + self.n_b
    }

    /// Largest possible entropy, `min(n_a, n_b) ln 2`.
    pub fn max_entropy(&self) -> f64 {
        self.n_a.min(self.n_b) as f64 * std::f64::consts::LN_2
    }
}

#[derive(Debug, Clone)]
pub struct ReducedDensityMatrix {
    pub matrix: Mat<f64>,
    /// Ascending, clamped at zero.
    pub eigenvalues: Vec<f64>,
}

impl ReducedDensityMatrix {
    pub fn trace(&self) -> f64 {
        (0..self.matrix.nrows()).map(|i| self.matrix[(i, i)]).sum()
    }
}

fn coefficient_matrix(block_vector: &[f64], block: &BasisBlock, cut: &Bipartition) -> Result<Mat<f64>> {
    if cut.n_sites() != block.n_sites() {
        return Err(Error::domain(format!(
            "cut {}|{} does not match a {}-site block",
            cut.n_a,
            cut.n_b,
            block.n_sites()
        )));
    }
    let norm2: f64 = block_vector.iter().map(|x| x * x).sum();
    if (norm2.sqrt() - 1.0).abs() > 1e-10 {
        return Err(Error::domain(format!(
            "state has norm {} (must be normalized to 1e-10)",
            norm2.sqrt()
        )));
    }
    let full = block.expand_to_full(block_vector)?;
    let cols = 1usize << cut.n_b;
    Ok(Mat::from_fn(1 << cut.n_a, cols, |a, b| full[a * cols + b]))
}

fn density_from(product: Mat<f64>) -> Result<ReducedDensityMatrix> {
    let mut eigenvalues: Vec<f64> = product
        .self_adjoint_eigenvalues(faer::Side::Lower)
        .map_err(|e| Error::solver(format!("reduced density eigensolve failed: {e:?}")))?;
    for l in eigenvalues.iter_mut() {
        if *l < CLAMP {
            *l = 0.0;
        }
    }
    eigenvalues.sort_by(f64::total_cmp);
    Ok(ReducedDensityMatrix {
        matrix: product,
        eigenvalues,
    })
}

/// `ρ_A = M Mᵀ`.
pub fn reduced_density(block_vector: &[f64], block: &BasisBlock, cut: &Bipartition) -> Result<ReducedDensityMatrix> {
    let m = coefficient_matrix(block_vector, block, cut)?;
    density_from(&m * m.transpose())
}

/// `−Σ λ ln λ` with `0 ln 0 = 0`, in nats.
pub fn entropy(rho: &ReducedDensityMatrix) -> f64 {
    entropy_of(&rho.eigenvalues)
}

pub fn entropy_of(eigenvalues: &[f64]) -> f64 {
    eigenvalues
        .iter()
        .filter(|&&l| l > CLAMP)
        .map(|&l| -l * l.ln())
        .sum::<f64>()
        .max(0.0)
}

pub fn entanglement_entropy(block_vector: &[f64], block: &BasisBlock, cut: &Bipartition) -> Result<f64> {
    Ok(entropy(&reduced_density(block_vector, block, cut)?))
}

/// `(S_AB, S_BA)`, the second from `ρ_B = Mᵀ M`.
pub fn ee_symmetry_check(block_vector: &[f64], block: &BasisBlock, cut: &Bipartition) -> Result<(f64, f64)> {
    let m = coefficient_matrix(block_vector, block, cut)?;
    let rho_a = density_from(&m * m.transpose())?;
    let rho_b = density_from(m.transpose() * &m)?;
    Ok((entropy(&rho_a), entropy(&rho_b)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::basis::parse_state;
    use proptest::prelude::*;
    use std::f64::consts::LN_2;

    fn unit(v: Vec<f64>) -> Vec<f64> {
        let n: f64 = v.iter().map(|x| x * x).sum::<f64>().sqrt();
        v.into_iter().map(|x| x / n).collect()
    }

    #[test]
    fn bell_state() {
        let block = BasisBlock::enumerate(2, 1).unwrap();
        let cut = Bipartition::half(2).unwrap();
        let s = std::f64::consts::FRAC_1_SQRT_2;
        let rho = reduced_density(&[s, s], &block, &cut).unwrap();
        assert!((rho.matrix[(0, 0)] - 0.5).abs() < 1e-15);
        assert!((rho.matrix[(1, 1)] - 0.5).abs() < 1e-15);
        assert!(rho.matrix[(0, 1)].abs() < 1e-15);
        assert!((rho.eigenvalues[0] - 0.5).abs() < 1e-12 && (rho.eigenvalues[1] - 0.5).abs() < 1e-12);
        assert!((entropy(&rho) - LN_2).abs() < 1e-12);
        let (ab, ba) = ee_symmetry_check(&[s, s], &block, &cut).unwrap();
        assert!((ab - LN_2).abs() < 1e-12 && (ba - LN_2).abs() < 1e-12);
    }

    #[test]
    fn product_state() {
        let block = BasisBlock::enumerate(2, 2).unwrap();
        let cut = Bipartition::half(2).unwrap();
        let rho = reduced_density(&[1.0], &block, &cut).unwrap();
        assert_eq!(rho.eigenvalues, vec![0.0, 1.0]);
        assert_eq!(entropy(&rho), 0.0);
        assert_eq!(ee_symmetry_check(&[1.0], &block, &cut).unwrap(), (0.0, 0.0));
    }

    #[test]
    fn maximally_mixed_two_sites() {
        assert!((entropy_of(&[0.25; 4]) - 2.0 * LN_2).abs() < 1e-15);
    }

    #[test]
    fn rejects_unnormalized() {
        let block = BasisBlock::enumerate(2, 1).unwrap();
        let cut = Bipartition::half(2).unwrap();
        assert!(reduced_density(&[1.0, 1.0], &block, &cut).is_err());
        assert!(Bipartition::new(0, 4).is_err());
        assert!(Bipartition::new(4, 4).is_err());
    }

    #[test]
    fn basis_states_are_unentangled() {
        let block = BasisBlock::enumerate(6, 3).unwrap();
        let cut = Bipartition::half(6).unwrap();
        for k in 0..block.len() {
            let mut v = vec![0.0; block.len()];
            v[k] = 1.0;
            assert_eq!(entanglement_entropy(&v, &block, &cut).unwrap(), 0.0);
        }
    }

    #[test]
    fn cut_uses_leading_sites() {
        // |1100⟩ + |0011⟩ entangles sites {0,1} with {2,3}; cutting 2|2 gives ln 2.
        let block = BasisBlock::enumerate(4, 2).unwrap();
        let cut = Bipartition::half(4).unwrap();
        let mut v = vec![0.0; block.len()];
        v[block.rank(parse_state("1100").unwrap()).unwrap()] = std::f64::consts::FRAC_1_SQRT_2;
        v[block.rank(parse_state("0011").unwrap()).unwrap()] = std::f64::consts::FRAC_1_SQRT_2;
        assert!((entanglement_entropy(&v, &block, &cut).unwrap() - LN_2).abs() < 1e-12);
        // |1010⟩ + |0101⟩ on a 1|3 cut also gives ln 2.
        let mut w = vec![0.0; block.len()];
        w[block.rank(parse_state("1010").unwrap()).unwrap()] = std::f64::consts::FRAC_1_SQRT_2;
        w[block.rank(parse_state("0101").unwrap()).unwrap()] = std::f64::consts::FRAC_1_SQRT_2;
        let one = Bipartition::new(1, 4).unwrap();
        assert!((entanglement_entropy(&w, &block, &one).unwrap() - LN_2).abs() < 1e-12);
    }

    proptest! {
        #[test]
        fn entropy_symmetry_and_bounds(raw in prop::collection::vec(-1.0f64..1.0, 20), n_a in 1usize..6) {
            prop_assume!(raw.iter().any(|x| x.abs() > 1e-3));
            let v = unit(raw);
            let block = BasisBlock::enumerate(6, 3).unwrap();
            let cut = Bipartition::new(n_a, 6).unwrap();
            let rho = reduced_density(&v, &block, &cut).unwrap();
            prop_assert!((rho.trace() - 1.0).abs() < 1e-10);
            prop_assert!((rho.eigenvalues.iter().sum::<f64>() - 1.0).abs() < 1e-10);
            let (ab, ba) = ee_symmetry_check(&v, &block, &cut).unwrap();
            prop_assert!((ab - ba).abs() < 1e-9);
            prop_assert!(ab >= 0.0 && ab <= cut.max_entropy() + 1e-12);
            let flipped: Vec<f64> = v.iter().map(|x| -x).collect();
            let s_neg = entanglement_entropy(&flipped, &block, &cut).unwrap();
            prop_assert!((s_neg - ab).abs() < 1e-12);
        }
    }
}
