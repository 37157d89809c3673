use serde::{Deserialize, Serialize};

use crate::{Error, Result};

/// Uniform-bin probability density estimate.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Histogram {
    pub edges: Vec<f64>,
    pub densities: Vec<f64>,
    /// Raw counts; empty when rebuilt from densities alone.
    pub counts: Vec<usize>,
}

impl Histogram {
    /// Rebuilds a uniform histogram from bin centers and densities.
    pub fn from_centers(centers: &[f64], densities: &[f64]) -> Result<Self> {
        if centers.len() != densities.len() || centers.is_empty() {
            return Err(Error::domain("histogram needs equally many centers and densities"));
        }
        let width = if centers.len() > 1 {
            (centers[centers.len() - 1] - centers[0]) / (centers.len() - 1) as f64
        } else {
            return Err(Error::domain("cannot infer bin width from a single bin"));
        };
        if !(width > 0.0) {
            return Err(Error::domain("bin centers must be strictly increasing"));
        }
        let lo = centers[0] - 0.5 * width;
        let edges = (0..=centers.len()).map(|k| lo + k as f64 * width).collect();
        Ok(Self {
            edges,
            densities: densities.to_vec(),
            counts: Vec::new(),
        })
    }

    pub fn bins(&self) -> usize {
        self.densities.len()
    }

    pub fn centers(&self) -> Vec<f64> {
        self.edges.windows(2).map(|w| 0.5 * (w[0] + w[1])).collect()
    }

    pub fn widths(&self) -> Vec<f64> {
        self.edges.windows(2).map(|w| w[1] - w[0]).collect()
    }

    /// `Σ density · width`.
    pub fn integral(&self) -> f64 {
        self.densities.iter().zip(self.widths()).map(|(d, w)| d * w).sum()
    }

    pub fn nonzero_bins(&self) -> usize {
        self.densities.iter().filter(|&&d| d > 0.0).count()
    }
}

/// Normalized histogram of `values` on `bins` equal bins spanning
/// `[lo, hi]`; values equal to `hi` go in the last bin.
pub fn histogram_density(values: &[f64], lo: f64, hi: f64, bins: usize) -> Result<Histogram> {
    if values.is_empty() {
        return Err(Error::domain("histogram of no values"));
    }
    if bins == 0 || !(hi > lo) {
        return Err(Error::domain(format!(
            "invalid histogram range [{lo}, {hi}] with {bins} bins"
        )));
    }
    let width = (hi - lo) / bins as f64;
    let slack = 1e-9 * (hi - lo);
    let mut counts = vec![0usize; bins];
    for &v in values {
        if !(v >= lo - slack && v <= hi + slack) {
            return Err(Error::domain(format!("value {v} outside [{lo}, {hi}]")));
        }
        let k = (((v - lo) / width).floor().max(0.0) as usize).min(bins - 1);
        counts[k] += 1;
    }
    let total = values.len() as f64;
    let densities = counts.iter().map(|&c| c as f64 / (total * width)).collect();
    let edges = (0..=bins).map(|k| lo + k as f64 * width).collect();
    Ok(Histogram {
        edges,
        densities,
        counts,
    })
}
