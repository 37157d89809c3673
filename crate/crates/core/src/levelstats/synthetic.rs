//! Reference spectra: uncorrelated (Poisson) levels and GOE matrices.

use faer::{Mat, Side};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Exp1, StandardNormal};

use crate::{Error, Result};

/// `n_levels` energies with independent unit-mean exponential gaps.
pub fn poisson_spectrum(n_levels: usize, seed: u64) -> Vec<f64> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut e = 0.0;
    (0..n_levels)
        .map(|_| {
            let gap: f64 = Exp1.sample(&mut rng);
            e += gap;
            e
        })
        .collect()
}

/// Eigenvalues of a real symmetric Gaussian matrix (off-diagonal variance
/// ½, diagonal variance 1), ascending.
pub fn goe_spectrum(n: usize, seed: u64) -> Result<Vec<f64>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut a = Mat::<f64>::zeros(n, n);
    for j in 0..n {
        for i in j..n {
            let g: f64 = StandardNormal.sample(&mut rng);
            let v = if i == j { g } else { g * std::f64::consts::FRAC_1_SQRT_2 };
            a[(i, j)] = v;
            a[(j, i)] = v;
        }
    }
    let mut vals = a
        .self_adjoint_eigenvalues(Side::Lower)
        .map_err(|e| Error::solver(format!("GOE eigensolve failed: {e:?}")))?;
    vals.sort_by(f64::total_cmp);
    Ok(vals)
}

/// Central half of an ascending spectrum.
pub fn central_half(spectrum: &[f64]) -> &[f64] {
    let n = spectrum.len();
    &spectrum[n / 4..n - n / 4]
}
