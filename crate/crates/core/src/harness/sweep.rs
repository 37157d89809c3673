use std::time::{Instant, SystemTime, UNIX_EPOCH};

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::config::RunConfig;
use super::seed::derive_seed;
use crate::basis::BasisBlock;
use crate::eigensolve::{interior_window, EigenWindow};
use crate::entanglement::{entanglement_entropy, Bipartition};
use crate::hamiltonian::{assemble, DisorderModel};
use crate::lattice::LatticeSpec;
use crate::levelstats::{fit_brody, gap_ratios, histogram_density, mean_and_stderr, BrodyFit, Histogram};
use crate::parallel::{map_indexed, Execution};
use crate::{Error, Result};

/// Largest tolerated fraction of failed realizations at one `h`.
pub const MAX_FAILURE_FRACTION: f64 = 0.10;

/// Geometry shared by every realization of a sweep.
#[derive(Debug, Clone)]
pub struct SweepContext {
    pub spec: LatticeSpec,
    pub block: BasisBlock,
    pub cut: Bipartition,
}

impl SweepContext {
    pub fn new(config: &RunConfig) -> Result<Self> {
        config.validate()?;
        let spec = config.lattice()?;
        Ok(Self {
            spec,
            block: BasisBlock::enumerate(spec.n_sites(), config.n_up())?,
            cut: config.bipartition()?,
        })
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RealizationOutcome {
    pub h: f64,
    pub seed: u64,
    pub model: DisorderModel,
    /// Mean gap ratio over the window.
    pub r_mean: f64,
    pub ratios: Vec<f64>,
    /// Entropy (nats) of each window state.
    pub entropies: Vec<f64>,
    pub eigenvalues: Vec<f64>,
    pub e_min: f64,
    pub e_max: f64,
}

/// Runs one realization from an explicit seed.
pub fn run_seeded(config: &RunConfig, ctx: &SweepContext, h: f64, seed: u64) -> Result<RealizationOutcome> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let model = DisorderModel::draw(config.model, h, config.wavenumber, ctx.spec.n_sites(), &mut rng);
    let hamiltonian = assemble(&ctx.spec, &ctx.block, config.coupling, &model)?;
    let EigenWindow {
        e_min,
        e_max,
        eigenvalues,
        eigenvectors,
        ..
    } = interior_window(&hamiltonian, config.epsilon, config.states)?;
    let series = gap_ratios(&eigenvalues)?;
    let entropies = eigenvectors
        .iter()
        .map(|v| entanglement_entropy(v, &ctx.block, &ctx.cut))
        .collect::<Result<Vec<f64>>>()?;
    Ok(RealizationOutcome {
        h,
        seed,
        model,
        r_mean: series.mean(),
        ratios: series.ratios,
        entropies,
        eigenvalues,
        e_min,
        e_max,
    })
}

/// Realization `k` at grid point `h_index`.
pub fn run_realization(config: &RunConfig, h_index: usize, k: usize) -> Result<RealizationOutcome> {
    let ctx = SweepContext::new(config)?;
    let h = *config
        .h_grid
        .get(h_index)
        .ok_or_else(|| Error::config(format!("h index {h_index} outside the grid")))?;
    run_seeded(config, &ctx, h, derive_seed(config.master_seed, h_index, k))
}

/// Per-realization entry of the run manifest.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RealizationRecord {
    pub h_index: usize,
    pub k: usize,
    pub seed: u64,
    pub r_mean: Option<f64>,
    pub error: Option<String>,
}

/// Aggregated statistics at one disorder amplitude.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LevelStatsSummary {
    pub h: f64,
    pub r_mean: f64,
    pub r_stderr: f64,
    /// Mean of `S / n_a`.
    pub ee_mean_per_site: f64,
    pub ee_stderr: f64,
    /// `P(r)` on `[0, 1]`.
    pub r_histogram: Histogram,
    /// `P(S)` on `[0, min(n_a, n_b) ln 2]`.
    pub ee_histogram: Histogram,
    pub brody: Option<BrodyFit>,
    pub n_ok: usize,
    pub n_failed: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepResult {
    pub config: RunConfig,
    pub summaries: Vec<LevelStatsSummary>,
    pub records: Vec<RealizationRecord>,
    pub version: String,
    pub started_unix: u64,
    pub wall_clock_seconds: f64,
}

/// Aggregates the successful outcomes at one `h`, in realization order.
pub fn summarize(h: f64, outcomes: &[RealizationOutcome], n_failed: usize, cut: &Bipartition, bins: usize) -> Result<LevelStatsSummary> {
    if outcomes.is_empty() {
        return Err(Error::FailureQuota {
            h,
            failed: n_failed,
            total: n_failed,
        });
    }
    let r_means: Vec<f64> = outcomes.iter().map(|o| o.r_mean).collect();
    let (r_mean, r_stderr) = mean_and_stderr(&r_means);
    let ee_means: Vec<f64> = outcomes
        .iter()
        .map(|o| o.entropies.iter().sum::<f64>() / o.entropies.len() as f64 / cut.n_a as f64)
        .collect();
    let (ee_mean_per_site, ee_stderr) = mean_and_stderr(&ee_means);

    let ratios: Vec<f64> = outcomes.iter().flat_map(|o| o.ratios.iter().copied()).collect();
    let r_histogram = histogram_density(&ratios, 0.0, 1.0, bins)?;
    let s_max = cut.max_entropy();
    let entropies: Vec<f64> = outcomes
        .iter()
        .flat_map(|o| o.entropies.iter().map(move |&s| s.min(s_max)))
        .collect();
    let ee_histogram = histogram_density(&entropies, 0.0, s_max, bins)?;
    let brody = match fit_brody(&r_histogram) {
        Ok(fit) => Some(fit),
        Err(e) => {
            log::warn!("no Brody fit at h = {h}: {e}");
            None
        }
    };
    Ok(LevelStatsSummary {
        h,
        r_mean,
        r_stderr,
        ee_mean_per_site,
        ee_stderr,
        r_histogram,
        ee_histogram,
        brody,
        n_ok: outcomes.len(),
        n_failed,
    })
}

pub fn run_sweep(config: &RunConfig) -> Result<SweepResult> {
    run_sweep_with(config, Execution::from_threads(config.threads))
}

pub fn run_sweep_with(config: &RunConfig, execution: Execution) -> Result<SweepResult> {
    let ctx = SweepContext::new(config)?;
    let started_unix = SystemTime::now()
        .duration_since(UNIX_EPOCH)
        .map(|d| d.as_secs())
        .unwrap_or(0);
    let clock = Instant::now();

    let cells: Vec<(usize, usize)> = (0..config.h_grid.len())
        .flat_map(|i| (0..config.realizations).map(move |k| (i, k)))
        .collect();
    let results = map_indexed(&cells, execution, |_, &(i, k)| {
        let seed = derive_seed(config.master_seed, i, k);
        let outcome = run_seeded(config, &ctx, config.h_grid[i], seed);
        if let Err(e) = &outcome {
            log::warn!("realization {k} at h = {} failed: {e}", config.h_grid[i]);
        }
        (seed, outcome)
    });

    let mut records = Vec::with_capacity(cells.len());
    let mut summaries = Vec::with_capacity(config.h_grid.len());
    let mut results = results.into_iter();
    for (i, &h) in config.h_grid.iter().enumerate() {
        let mut ok = Vec::with_capacity(config.realizations);
        let mut failed = 0;
        for k in 0..config.realizations {
            let (seed, outcome) = results.next().expect("one result per cell");
            match outcome {
                Ok(o) => {
                    records.push(RealizationRecord {
                        h_index: i,
                        k,
                        seed,
                        r_mean: Some(o.r_mean),
                        error: None,
                    });
                    ok.push(o);
                }
                Err(e) => {
                    failed += 1;
                    records.push(RealizationRecord {
                        h_index: i,
                        k,
                        seed,
                        r_mean: None,
                        error: Some(e.to_string()),
                    });
                }
            }
        }
        if failed as f64 > MAX_FAILURE_FRACTION * config.realizations as f64 {
            return Err(Error::FailureQuota {
                h,
                failed,
                total: config.realizations,
            });
        }
        summaries.push(summarize(h, &ok, failed, &ctx.cut, config.bins)?);
        log::info!(
            "h = {h}: r = {:.4} ± {:.4} over {} realizations",
            summaries[i].r_mean,
            summaries[i].r_stderr,
            ok.len()
        );
    }

    Ok(SweepResult {
        config: config.clone(),
        summaries,
        records,
        version: env!("CARGO_PKG_VERSION").to_string(),
        started_unix,
        wall_clock_seconds: clock.elapsed().as_secs_f64(),
    })
}
