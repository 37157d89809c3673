//! Least-squares fit of the Brody gap-ratio law to a histogram.

use serde::{Deserialize, Serialize};

use super::brody::{brody_ratio_cdf, brody_ratio_pdf};
use super::histogram::Histogram;
use crate::{Error, Result};

/// Search interval for ω.
pub const OMEGA_MIN: f64 = -0.99;
pub const OMEGA_MAX: f64 = 3.0;

const GRID_POINTS: usize = 80;
const MAX_ITERATIONS: usize = 200;
const X_TOL: f64 = 1e-9;

/// What each bin density is compared with.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FitObjective {
    /// `P(r; ω)` averaged over the bin, `(F(b) − F(a)) / (b − a)`. This is
    /// the expected histogram density, so it stays unbiased where `P`
    /// diverges at `r → 0` (ω < 0).
    #[default]
    BinAverage,
    /// `P(r; ω)` at the bin centre.
    BinCenter,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BrodyFit {
    pub omega: f64,
    /// `(2 / χ''(ω))^{1/2}` at the minimum.
    pub sigma: f64,
    /// `χ(ω)^{1/2}`, the Euclidean norm of the bin residuals.
    pub residual_norm: f64,
    pub histogram: Histogram,
    /// The minimum sits on the edge of the search interval.
    pub at_bound: bool,
    pub objective: FitObjective,
}

fn chi2(histogram: &Histogram, objective: FitObjective, omega: f64) -> f64 {
    let model = |a: f64, b: f64| -> Result<f64> {
        match objective {
            FitObjective::BinCenter => brody_ratio_pdf((0.5 * (a + b)).clamp(0.0, 1.0), omega),
            FitObjective::BinAverage => {
                let (lo, hi) = (a.clamp(0.0, 1.0), b.clamp(0.0, 1.0));
                Ok((brody_ratio_cdf(hi, omega)? - brody_ratio_cdf(lo, omega)?) / (b - a))
            }
        }
    };
    histogram
        .edges
        .windows(2)
        .zip(&histogram.densities)
        .map(|(e, &d)| (d - model(e[0], e[1]).unwrap_or(f64::INFINITY)).powi(2))
        .sum()
}

/// Fits ω by bin-wise least squares with the default objective.
pub fn fit_brody(histogram: &Histogram) -> Result<BrodyFit> {
    fit_brody_with(histogram, FitObjective::default())
}

/// Fits ω by minimizing `Σ (density − model(bin; ω))²`.
///
/// A coarse grid brackets the global minimum, which golden-section search
/// then refines.
pub fn fit_brody_with(histogram: &Histogram, objective: FitObjective) -> Result<BrodyFit> {
    if histogram.nonzero_bins() < 10 {
        return Err(Error::domain(format!(
            "Brody fit needs at least 10 populated bins, got {}",
            histogram.nonzero_bins()
        )));
    }
    let f = |w: f64| chi2(histogram, objective, w);

    let grid: Vec<f64> = (0..=GRID_POINTS)
        .map(|k| OMEGA_MIN + (OMEGA_MAX - OMEGA_MIN) * k as f64 / GRID_POINTS as f64)
        .collect();
    let values: Vec<f64> = grid.iter().map(|&w| f(w)).collect();
    let best = (0..values.len())
        .min_by(|&a, &b| values[a].total_cmp(&values[b]))
        .expect("nonempty grid");
    let mut a = grid[best.saturating_sub(1)];
    let mut b = grid[(best + 1).min(GRID_POINTS)];

    let inv_phi = (5f64.sqrt() - 1.0) / 2.0;
    let mut c = b - inv_phi * (b - a);
    let mut d = a + inv_phi * (b - a);
    let (mut fc, mut fd) = (f(c), f(d));
    let mut trace = Vec::new();
    let mut converged = false;
    for _ in 0..MAX_ITERATIONS {
        if (b - a).abs() <= X_TOL * (1.0 + c.abs()) {
            converged = true;
            break;
        }
        if fc <= fd {
            b = d;
            d = c;
            fd = fc;
            c = b - inv_phi * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + inv_phi * (b - a);
            fd = f(d);
        }
        trace.push(fc.min(fd));
    }
    // Compare against the grid endpoints so a boundary minimum is kept.
    let mut omega = 0.5 * (a + b);
    let mut fmin = f(omega);
    for &edge in &[OMEGA_MIN, OMEGA_MAX] {
        if f(edge) < fmin {
            omega = edge;
            fmin = f(edge);
        }
    }
    if !converged || !fmin.is_finite() {
        return Err(Error::Fit {
            iterations: trace.len(),
            last_residual: fmin,
            residual_trace: trace,
        });
    }

    let at_bound = (omega - OMEGA_MIN).abs() < 1e-6 || (omega - OMEGA_MAX).abs() < 1e-6;
    let step = 1e-4;
    let curvature = if at_bound {
        let inner = if omega > 0.0 { omega - step } else { omega + step };
        let far = if omega > 0.0 { omega - 2.0 * step } else { omega + 2.0 * step };
        (f(omega) - 2.0 * f(inner) + f(far)) / (step * step)
    } else {
        (f(omega + step) - 2.0 * fmin + f(omega - step)) / (step * step)
    };
    let sigma = if curvature > 0.0 {
        (2.0 / curvature).sqrt()
    } else {
        f64::INFINITY
    };

    Ok(BrodyFit {
        omega,
        sigma,
        residual_norm: fmin.sqrt(),
        histogram: histogram.clone(),
        at_bound,
        objective,
    })
}
