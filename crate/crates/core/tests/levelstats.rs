//! Reference statistics from synthetic spectra.

use mbl_core::levelstats::synthetic::{central_half, goe_spectrum, poisson_spectrum};
use mbl_core::levelstats::{fit_brody, gap_ratios, histogram_density, spectral_average, GOE_R, POISSON_R};

#[test]
fn poisson_spectrum_reference() {
    let series = gap_ratios(&poisson_spectrum(100_000, 17)).unwrap();
    assert!((series.mean() - POISSON_R).abs() < 0.005, "{}", series.mean());
    let hist = histogram_density(&series.ratios, 0.0, 1.0, 50).unwrap();
    let fit = fit_brody(&hist).unwrap();
    assert!(fit.omega.abs() < 0.05, "{fit:?}");
}

#[test]
fn goe_spectrum_reference() {
    let series: Vec<_> = (0..50)
        .map(|s| gap_ratios(central_half(&goe_spectrum(500, 1000 + s).unwrap())).unwrap())
        .collect();
    let (mean, err) = spectral_average(&series).unwrap();
    assert!((mean - GOE_R).abs() < 0.01, "{mean} ± {err}");
    let ratios: Vec<f64> = series.iter().flat_map(|s| s.ratios.iter().copied()).collect();
    let fit = fit_brody(&histogram_density(&ratios, 0.0, 1.0, 50).unwrap()).unwrap();
    assert!(fit.omega > 0.7, "{fit:?}");
}
