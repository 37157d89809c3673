use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use mbl_core::degeneracy::degeneracy_classes;
use mbl_core::hamiltonian::ModelKind;
use mbl_core::harness::{emit_outputs, read_histogram, run_sweep, RunConfig};
use mbl_core::lattice::LatticeSpec;
use mbl_core::levelstats::fit_brody;
use mbl_core::Error;

#[global_allocator]
static GLOBAL: mimalloc::MiMalloc = mimalloc::MiMalloc;

#[derive(Parser)]
#[command(name = "mbl-lab", version, about = "Exact-diagonalization lab for disordered spin-1/2 lattices")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run a disorder sweep and write CSV, JSON and optional SVG output.
    Sweep(SweepArgs),
    /// Write the signature-class report of one magnetization block.
    Degeneracy {
        #[arg(long)]
        rows: usize,
        #[arg(long)]
        cols: usize,
        /// Up spins; defaults to half the sites, rounded up.
        #[arg(long)]
        n_up: Option<usize>,
        #[arg(long)]
        out: PathBuf,
    },
    /// Refit the Brody ratio density to an emitted histogram file.
    FitBrody {
        #[arg(long)]
        hist: PathBuf,
    },
}

#[derive(Args)]
struct SweepArgs {
    /// JSON run config; flags given on the command line override it.
    #[arg(long)]
    config: Option<PathBuf>,
    #[arg(long)]
    rows: Option<usize>,
    #[arg(long)]
    cols: Option<usize>,
    /// uniform, quasi1d or quasixy.
    #[arg(long)]
    model: Option<ModelKind>,
    /// Comma-separated disorder amplitudes, e.g. "0.5,1,2".
    #[arg(long)]
    h_grid: Option<String>,
    #[arg(long)]
    realizations: Option<usize>,
    /// Eigenstates per realization.
    #[arg(long)]
    states: Option<usize>,
    /// Target energy density in [0, 1].
    #[arg(long)]
    epsilon: Option<f64>,
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long)]
    bins: Option<usize>,
    /// Sites in subsystem A.
    #[arg(long)]
    cut_sites: Option<usize>,
    #[arg(long)]
    n_up: Option<usize>,
    /// Exchange coupling.
    #[arg(long)]
    j: Option<f64>,
    /// Quasiperiodic wavenumber.
    #[arg(long)]
    c: Option<f64>,
    /// Worker threads; 1 runs sequentially.
    #[arg(long)]
    threads: Option<usize>,
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long)]
    svg: bool,
}

fn parse_grid(text: &str) -> Result<Vec<f64>, Error> {
    text.split(',')
        .filter(|s| !s.trim().is_empty())
        .map(|s| {
            s.trim()
                .parse::<f64>()
                .map_err(|e| Error::Config(format!("bad h-grid entry {s:?}: {e}")))
        })
        .collect()
}

fn missing(flag: &str) -> Error {
    Error::Config(format!("--{flag} is required without --config"))
}

fn build_config(args: SweepArgs) -> Result<(RunConfig, PathBuf), Error> {
    let mut config = match &args.config {
        Some(path) => RunConfig::from_json_file(path)?,
        None => RunConfig::new(
            args.rows.ok_or_else(|| missing("rows"))?,
            args.cols.ok_or_else(|| missing("cols"))?,
            args.model.ok_or_else(|| missing("model"))?,
            parse_grid(args.h_grid.as_deref().ok_or_else(|| missing("h-grid"))?)?,
            args.realizations.ok_or_else(|| missing("realizations"))?,
            args.seed.ok_or_else(|| missing("seed"))?,
        ),
    };
    if let Some(v) = args.rows {
        config.rows = v;
    }
    if let Some(v) = args.cols {
        config.cols = v;
    }
    if let Some(v) = args.model {
        config.model = v;
    }
    if let Some(v) = &args.h_grid {
        config.h_grid = parse_grid(v)?;
    }
    if let Some(v) = args.realizations {
        config.realizations = v;
    }
    if let Some(v) = args.seed {
        config.master_seed = v;
    }
    if let Some(v) = args.states {
        config.states = v;
    }
    if let Some(v) = args.epsilon {
        config.epsilon = v;
    }
    if let Some(v) = args.bins {
        config.bins = v;
    }
    if args.cut_sites.is_some() {
        config.cut_sites = args.cut_sites;
    }
    if args.n_up.is_some() {
        config.n_up = args.n_up;
    }
    if let Some(v) = args.j {
        config.coupling = v;
    }
    if let Some(v) = args.c {
        config.wavenumber = v;
    }
    if args.threads.is_some() {
        config.threads = args.threads;
    }
    if args.out.is_some() {
        config.output_dir = args.out;
    }
    config.svg |= args.svg;
    let out = config
        .output_dir
        .clone()
        .ok_or_else(|| Error::Config("an output directory is required (--out)".into()))?;
    config.validate()?;
    Ok((config, out))
}

fn write_json(dir: &Path, name: &str, value: &impl serde::Serialize) -> Result<PathBuf, Error> {
    let io = |path: &Path, source| Error::Io {
        path: path.to_path_buf(),
        source,
        written: Vec::new(),
    };
    std::fs::create_dir_all(dir).map_err(|e| io(dir, e))?;
    let path = dir.join(name);
    let text = serde_json::to_string_pretty(value).map_err(|e| Error::Config(e.to_string()))?;
    std::fs::write(&path, text + "\n").map_err(|e| io(&path, e))?;
    Ok(path)
}

fn run(cli: Cli) -> Result<(), Error> {
    match cli.command {
        Command::Sweep(args) => {
            let (config, out) = build_config(args)?;
            let result = run_sweep(&config)?;
            for s in &result.summaries {
                let omega = s
                    .brody
                    .as_ref()
                    .map_or_else(|| "n/a".to_string(), |b| format!("{:.3} ± {:.3}", b.omega, b.sigma));
                println!(
                    "h = {:<8} r = {:.4} ± {:.4}  S/n_a = {:.4}  omega = {omega}",
                    s.h, s.r_mean, s.r_stderr, s.ee_mean_per_site
                );
            }
            let files = emit_outputs(&result, &out)?;
            eprintln!("wrote {} files to {}", files.len(), out.display());
        }
        Command::Degeneracy { rows, cols, n_up, out } => {
            let spec = LatticeSpec::new(rows, cols).map_err(|e| Error::Config(e.to_string()))?;
            let n_up = n_up.unwrap_or(spec.n_sites().div_ceil(2));
            let (report, _) = degeneracy_classes(&spec, n_up).map_err(|e| Error::Config(e.to_string()))?;
            let path = write_json(&out, "degeneracy_report.json", &report)?;
            println!(
                "{} states, {} classes, degenerate fraction {:.4}, largest class {}",
                report.block_size, report.class_count, report.degenerate_fraction, report.largest_class
            );
            eprintln!("wrote {}", path.display());
        }
        Command::FitBrody { hist } => {
            let histogram = read_histogram(&hist)?;
            let fit = fit_brody(&histogram).map_err(|e| match e {
                Error::Domain(m) => Error::Config(m),
                other => other,
            })?;
            println!(
                "{}",
                serde_json::json!({
                    "omega": fit.omega,
                    "sigma": fit.sigma,
                    "residual_norm": fit.residual_norm,
                    "at_bound": fit.at_bound,
                })
            );
        }
    }
    Ok(())
}

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::Domain(_) | Error::Config(_) => 2,
        Error::Solver { .. } | Error::FailureQuota { .. } | Error::Fit { .. } => 3,
        Error::Io { .. } => 4,
    }
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            if let Error::Io { written, .. } = &e {
                for p in written {
                    eprintln!("  written before failure: {}", p.display());
                }
            }
            ExitCode::from(exit_code(&e))
        }
    }
}
