//! Adjacent-gap-ratio statistics and Brody-distribution fits.

mod brody;
mod fit;
mod histogram;
pub mod synthetic;

use serde::{Deserialize, Serialize};

use crate::{Error, Result};

pub use brody::{brody_alpha, brody_ratio_cdf, brody_ratio_pdf, brody_spacing_pdf, sample_brody_ratios, sample_brody_spacings};
pub use fit::{fit_brody, fit_brody_with, BrodyFit, FitObjective, OMEGA_MAX, OMEGA_MIN};
pub use histogram::{histogram_density, Histogram};

/// Mean gap ratio of GOE spectra.
pub const GOE_R: f64 = 0.5295;
/// Mean gap ratio of uncorrelated levels, `2 ln 2 − 1`.
pub const POISSON_R: f64 = 2.0 * std::f64::consts::LN_2 - 1.0;

/// `(goe, poisson)` reference values of `⟨r⟩`.
pub fn reference_r_values() -> (f64, f64) {
    (GOE_R, POISSON_R)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GapRatioSeries {
    pub ratios: Vec<f64>,
    pub spectrum_len: usize,
}

impl GapRatioSeries {
    pub fn mean(&self) -> f64 {
        self.ratios.iter().sum::<f64>() / self.ratios.len() as f64
    }
}

/// `r_n = min(δ_n, δ_{n−1}) / max(δ_n, δ_{n−1})` for every interior level
/// of an ascending spectrum. Two zero gaps give `r = 0`.
pub fn gap_ratios(energies: &[f64]) -> Result<GapRatioSeries> {
    if energies.len() < 3 {
        return Err(Error::domain(format!(
            "gap ratios need at least 3 levels, got {}",
            energies.len()
        )));
    }
    if let Some(k) = energies.windows(2).position(|w| !(w[0] <= w[1])) {
        return Err(Error::domain(format!(
            "energies are not sorted ascending at index {k}"
        )));
    }
    let ratios = energies
        .windows(3)
        .map(|w| {
            let (a, b) = (w[1] - w[0], w[2] - w[1]);
            let hi = a.max(b);
            if hi == 0.0 {
                0.0
            } else {
                a.min(b) / hi
            }
        })
        .collect();
    Ok(GapRatioSeries {
        ratios,
        spectrum_len: energies.len(),
    })
}

/// Mean over realizations of the per-realization mean ratio, and its
/// standard error.
pub fn spectral_average(series: &[GapRatioSeries]) -> Result<(f64, f64)> {
    if series.is_empty() {
        return Err(Error::domain("spectral average of zero realizations"));
    }
    let means: Vec<f64> = series.iter().map(GapRatioSeries::mean).collect();
    Ok(mean_and_stderr(&means))
}

/// Sample mean and standard error of the mean (zero for one sample).
pub fn mean_and_stderr(values: &[f64]) -> (f64, f64) {
    let n = values.len() as f64;
    let mean = values.iter().sum::<f64>() / n;
    if values.len() < 2 {
        return (mean, 0.0);
    }
    let var = values.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / (n - 1.0);
    (mean, (var / n).sqrt())
}
