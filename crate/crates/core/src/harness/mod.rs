//! Reproducible disorder sweeps.
//!
//! A sweep runs `realizations` independent disorder draws at every `h` of
//! the grid. Realization `k` at grid index `i` is seeded from
//! `(master_seed, i, k)` alone, and results are reduced in `(i, k)` order,
//! so the output does not depend on the number of worker threads.

mod config;
mod output;
mod seed;
pub mod svg;
mod sweep;

pub use config::RunConfig;
pub use output::{emit_outputs, read_histogram, sweep_rows, SWEEP_HEADER};
pub use seed::{derive_seed, splitmix64};
pub use sweep::{
    run_realization, run_seeded, run_sweep, run_sweep_with, summarize, LevelStatsSummary, RealizationOutcome,
    RealizationRecord, SweepContext, SweepResult, MAX_FAILURE_FRACTION,
};
