use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::basis::{binomial, default_n_up, MAX_SITES};
use crate::entanglement::Bipartition;
use crate::hamiltonian::{ModelKind, DEFAULT_WAVENUMBER};
use crate::lattice::LatticeSpec;
use crate::{Error, Result};

fn default_coupling() -> f64 {
    1.0
}
fn default_wavenumber() -> f64 {
    DEFAULT_WAVENUMBER
}
fn default_states() -> usize {
    30
}
fn default_epsilon() -> f64 {
    0.5
}
fn default_bins() -> usize {
    50
}

/// Everything a sweep depends on. Results are a pure function of this value;
/// `threads` and `output_dir` only affect how and where it runs.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    pub rows: usize,
    pub cols: usize,
    pub model: ModelKind,
    #[serde(rename = "j", default = "default_coupling")]
    pub coupling: f64,
    #[serde(rename = "c", default = "default_wavenumber")]
    pub wavenumber: f64,
    pub h_grid: Vec<f64>,
    pub realizations: usize,
    /// Window size `M`.
    #[serde(default = "default_states")]
    pub states: usize,
    #[serde(default = "default_epsilon")]
    pub epsilon: f64,
    pub master_seed: u64,
    #[serde(default = "default_bins")]
    pub bins: usize,
    /// Sites in subsystem A; `⌊N/2⌋` when absent.
    #[serde(default)]
    pub cut_sites: Option<usize>,
    /// Up spins; `⌈N/2⌉` when absent.
    #[serde(default)]
    pub n_up: Option<usize>,
    #[serde(default)]
    pub output_dir: Option<PathBuf>,
    #[serde(default)]
    pub threads: Option<usize>,
    #[serde(default)]
    pub svg: bool,
}

impl RunConfig {
    /// A config with the documented defaults for everything optional.
    pub fn new(rows: usize, cols: usize, model: ModelKind, h_grid: Vec<f64>, realizations: usize, master_seed: u64) -> Self {
        Self {
            rows,
            cols,
            model,
            coupling: default_coupling(),
            wavenumber: default_wavenumber(),
            h_grid,
            realizations,
            states: default_states(),
            epsilon: default_epsilon(),
            master_seed,
            bins: default_bins(),
            cut_sites: None,
            n_up: None,
            output_dir: None,
            threads: None,
            svg: false,
        }
    }

    pub fn from_json_file(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|source| Error::Io {
            path: path.to_path_buf(),
            source,
            written: Vec::new(),
        })?;
        serde_json::from_str(&text).map_err(|e| Error::config(format!("{}: {e}", path.display())))
    }

    pub fn lattice(&self) -> Result<LatticeSpec> {
        LatticeSpec::new(self.rows, self.cols).map_err(|e| Error::config(e.to_string()))
    }

    pub fn n_up(&self) -> usize {
        self.n_up.unwrap_or_else(|| default_n_up(self.rows * self.cols))
    }

    pub fn bipartition(&self) -> Result<Bipartition> {
        let n = self.rows * self.cols;
        Bipartition::new(self.cut_sites.unwrap_or(n / 2), n).map_err(|e| Error::config(e.to_string()))
    }

    pub fn validate(&self) -> Result<()> {
        let spec = self.lattice()?;
        let n = spec.n_sites();
        if n > MAX_SITES {
            return Err(Error::config(format!("{n} sites exceeds the limit of {MAX_SITES}")));
        }
        if n < 3 {
            return Err(Error::config("lattice needs at least 3 sites"));
        }
        if self.h_grid.is_empty() {
            return Err(Error::config("h_grid is empty"));
        }
        if self.h_grid.iter().any(|h| !h.is_finite() || *h < 0.0) {
            return Err(Error::config("h_grid values must be finite and non-negative"));
        }
        if !self.h_grid.windows(2).all(|w| w[0] < w[1]) {
            return Err(Error::config("h_grid must be strictly ascending"));
        }
        if self.realizations == 0 {
            return Err(Error::config("realizations must be at least 1"));
        }
        let n_up = self.n_up();
        if n_up > n {
            return Err(Error::config(format!("n_up = {n_up} exceeds {n} sites")));
        }
        let dim = binomial(n, n_up);
        if self.states < 3 || self.states > dim {
            return Err(Error::config(format!(
                "states must be between 3 and the block dimension {dim}, got {}",
                self.states
            )));
        }
        if !(0.0..=1.0).contains(&self.epsilon) {
            return Err(Error::config(format!("epsilon {} is outside [0, 1]", self.epsilon)));
        }
        if self.bins == 0 {
            return Err(Error::config("bins must be at least 1"));
        }
        if !self.coupling.is_finite() || !self.wavenumber.is_finite() {
            return Err(Error::config("j and c must be finite"));
        }
        self.bipartition()?;
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn base() -> RunConfig {
        RunConfig::new(4, 3, ModelKind::Quasixy, vec![0.5, 30.0], 10, 1)
    }

    #[test]
    fn defaults() {
        let c = base();
        assert_eq!(c.states, 30);
        assert_eq!(c.epsilon, 0.5);
        assert_eq!(c.bins, 50);
        assert_eq!(c.coupling, 1.0);
        assert_eq!(c.n_up(), 6);
        assert_eq!(c.bipartition().unwrap().n_a, 6);
        c.validate().unwrap();
    }

    #[test]
    fn rejects_invalid() {
        let mut c = base();
        c.h_grid.clear();
        assert!(matches!(c.validate(), Err(Error::Config(_))));
        let mut c = base();
        c.h_grid = vec![2.0, 1.0];
        assert!(c.validate().is_err());
        let mut c = base();
        c.h_grid = vec![-1.0];
        assert!(c.validate().is_err());
        let mut c = base();
        c.states = 2;
        assert!(c.validate().is_err());
        let mut c = base();
        c.realizations = 0;
        assert!(c.validate().is_err());
        let mut c = base();
        c.cut_sites = Some(12);
        assert!(c.validate().is_err());
        let mut c = base();
        c.rows = 0;
        assert!(c.validate().is_err());
    }

    #[test]
    fn json_round_trip_and_defaults() {
        let c: RunConfig = serde_json::from_str(
            r#"{"rows": 4, "cols": 3, "model": "quasixy", "h_grid": [1.0], "realizations": 5, "master_seed": 9}"#,
        )
        .unwrap();
        assert_eq!(c.states, 30);
        assert_eq!(c.wavenumber, DEFAULT_WAVENUMBER);
        let back: RunConfig = serde_json::from_str(&serde_json::to_string(&c).unwrap()).unwrap();
        assert_eq!(back, c);
        assert!(serde_json::from_str::<RunConfig>(r#"{"rows": 4, "bogus": 1}"#).is_err());
    }
}
