//! Brody spacing law `P(s) = A s^ω exp(−α s^{ω+1})` and the gap-ratio law
//! it induces, `P(r) = 2(ω+1) r^ω / (1 + r^{ω+1})²` on `[0, 1]`.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use statrs::function::gamma::gamma;

use crate::{Error, Result};

fn check_omega(omega: f64) -> Result<()> {
    if !(omega > -1.0) || !omega.is_finite() {
        return Err(Error::domain(format!("Brody parameter must exceed -1, got {omega}")));
    }
    Ok(())
}

/// `α(ω) = Γ((ω+2)/(ω+1))^{ω+1}`, which fixes unit mean spacing.
pub fn brody_alpha(omega: f64) -> Result<f64> {
    check_omega(omega)?;
    Ok(gamma((omega + 2.0) / (omega + 1.0)).powf(omega + 1.0))
}

pub fn brody_spacing_pdf(s: f64, omega: f64) -> Result<f64> {
    let alpha = brody_alpha(omega)?;
    if !(s >= 0.0) {
        return Err(Error::domain(format!("spacing must be non-negative, got {s}")));
    }
    let a = (omega + 1.0) * alpha;
    Ok(a * s.powf(omega) * (-alpha * s.powf(omega + 1.0)).exp())
}

pub fn brody_ratio_pdf(r: f64, omega: f64) -> Result<f64> {
    check_omega(omega)?;
    if !(0.0..=1.0).contains(&r) {
        return Err(Error::domain(format!("gap ratio must lie in [0, 1], got {r}")));
    }
    let x = r.powf(omega + 1.0);
    Ok(2.0 * (omega + 1.0) * r.powf(omega) / (1.0 + x).powi(2))
}

/// `F(r) = 2x / (1 + x)` with `x = r^{ω+1}`.
pub fn brody_ratio_cdf(r: f64, omega: f64) -> Result<f64> {
    check_omega(omega)?;
    if !(0.0..=1.0).contains(&r) {
        return Err(Error::domain(format!("gap ratio must lie in [0, 1], got {r}")));
    }
    let x = r.powf(omega + 1.0);
    Ok(2.0 * x / (1.0 + x))
}

/// Inverse-CDF samples `s = (−ln(1−u)/α)^{1/(ω+1)}`.
pub fn sample_brody_spacings(omega: f64, n: usize, seed: u64) -> Result<Vec<f64>> {
    let alpha = brody_alpha(omega)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    Ok((0..n)
        .map(|_| {
            let u: f64 = rng.random();
            (-(1.0 - u).ln() / alpha).powf(1.0 / (omega + 1.0))
        })
        .collect())
}

/// Inverse-CDF samples `r = (u/(2−u))^{1/(ω+1)}`.
pub fn sample_brody_ratios(omega: f64, n: usize, seed: u64) -> Result<Vec<f64>> {
    check_omega(omega)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    Ok((0..n)
        .map(|_| {
            let u: f64 = rng.random();
            (u / (2.0 - u)).powf(1.0 / (omega + 1.0))
        })
        .collect())
}
