//! End-to-end sweeps: determinism, audit replay and emitted files.

use std::fs;

use mbl_core::hamiltonian::ModelKind;
use mbl_core::harness::{emit_outputs, read_histogram, run_realization, run_sweep_with, RunConfig, SweepContext};
use mbl_core::levelstats::{mean_and_stderr, POISSON_R};
use mbl_core::parallel::Execution;

fn small(model: ModelKind, h_grid: Vec<f64>, realizations: usize) -> RunConfig {
    let mut c = RunConfig::new(2, 4, model, h_grid, realizations, 4242);
    c.states = 20;
    c.bins = 20;
    c
}

#[test]
fn csv_is_identical_across_thread_counts() {
    let config = small(ModelKind::Quasixy, vec![0.5, 3.0, 12.0], 12);
    let mut outputs = Vec::new();
    for execution in [Execution::Sequential, Execution::Threads(2), Execution::Threads(3), Execution::Parallel] {
        let result = run_sweep_with(&config, execution).unwrap();
        let dir = tempfile::tempdir().unwrap();
        emit_outputs(&result, dir.path()).unwrap();
        outputs.push((
            fs::read(dir.path().join("sweep.csv")).unwrap(),
            fs::read(dir.path().join("hist_r_h3.csv")).unwrap(),
            result.records,
        ));
    }
    for o in &outputs[1..] {
        assert_eq!(o, &outputs[0]);
    }
}

#[test]
fn audit_replay_from_manifest_seeds() {
    let config = small(ModelKind::Uniform, vec![2.0], 5);
    let result = run_sweep_with(&config, Execution::Parallel).unwrap();
    let dir = tempfile::tempdir().unwrap();
    emit_outputs(&result, dir.path()).unwrap();
    let manifest: serde_json::Value = serde_json::from_slice(&fs::read(dir.path().join("manifest.json")).unwrap()).unwrap();
    let echoed: RunConfig = serde_json::from_value(manifest["config"].clone()).unwrap();
    assert_eq!(echoed, config);

    let ctx = SweepContext::new(&echoed).unwrap();
    let mut replayed = Vec::new();
    for rec in manifest["realizations"].as_array().unwrap() {
        let seed = rec["seed"].as_u64().unwrap();
        let h = echoed.h_grid[rec["h_index"].as_u64().unwrap() as usize];
        let outcome = mbl_core::harness::run_seeded(&echoed, &ctx, h, seed).unwrap();
        assert_eq!(Some(outcome.r_mean), rec["r_mean"].as_f64());
        replayed.push(outcome.r_mean);
    }
    assert_eq!(replayed.len(), 5);
    let (mean, _) = mean_and_stderr(&replayed);
    assert_eq!(mean, result.summaries[0].r_mean);
    assert_eq!(run_realization(&config, 0, 3).unwrap().r_mean, replayed[3]);
}

#[test]
fn smoke_sweep_localizes() {
    let mut config = RunConfig::new(4, 3, ModelKind::Quasixy, vec![0.5, 30.0], 20, 99);
    config.bins = 30;
    let result = run_sweep_with(&config, Execution::Parallel).unwrap();
    let (lo, hi) = (&result.summaries[0], &result.summaries[1]);
    assert!(lo.r_mean > hi.r_mean, "{} vs {}", lo.r_mean, hi.r_mean);
    assert!(hi.r_mean < POISSON_R);
    let w_lo = lo.brody.as_ref().unwrap().omega;
    let w_hi = hi.brody.as_ref().unwrap().omega;
    assert!(w_lo > 0.0 && w_hi < 0.0, "omega {w_lo} / {w_hi}");
    assert!(lo.ee_mean_per_site > hi.ee_mean_per_site);
}

#[test]
fn emitted_files_are_consistent() {
    let mut config = small(ModelKind::Quasixy, vec![0.5, 4.0, 10.0, 25.0], 6);
    config.svg = true;
    let result = run_sweep_with(&config, Execution::Parallel).unwrap();
    let dir = tempfile::tempdir().unwrap();
    let files = emit_outputs(&result, dir.path()).unwrap();
    // sweep.csv, two histograms per h, manifest, r(h) plot and one P(r) plot per h.
    assert_eq!(files.len(), 1 + 2 * 4 + 1 + 1 + 4);

    let csv = fs::read_to_string(dir.path().join("sweep.csv")).unwrap();
    assert_eq!(csv.lines().count(), 1 + config.h_grid.len());
    for line in csv.lines().skip(1) {
        let fields: Vec<&str> = line.split(',').collect();
        assert_eq!(fields.len(), 8);
        for f in &fields[..7] {
            let x: f64 = f.parse().unwrap();
            assert_eq!(x.to_string(), *f, "not shortest round trip");
        }
        assert_eq!(fields[7], "6");
    }

    for h in ["0.5", "4", "10", "25"] {
        for kind in ["r", "S"] {
            let hist = read_histogram(&dir.path().join(format!("hist_{kind}_h{h}.csv"))).unwrap();
            assert!((hist.integral() - 1.0).abs() < 1e-9, "{kind} at {h}: {}", hist.integral());
        }
        let svg = fs::read_to_string(dir.path().join(format!("hist_r_h{h}.svg"))).unwrap();
        assert!(svg.starts_with("<svg") && svg.trim_end().ends_with("</svg>"));
    }
}

#[test]
fn unwritable_directory_reports_inventory() {
    let config = small(ModelKind::Uniform, vec![1.0], 2);
    let result = run_sweep_with(&config, Execution::Sequential).unwrap();
    let dir = tempfile::tempdir().unwrap();
    let blocker = dir.path().join("plain-file");
    fs::write(&blocker, b"x").unwrap();
    match emit_outputs(&result, &blocker.join("out")) {
        Err(mbl_core::Error::Io { written, .. }) => assert!(written.is_empty()),
        other => panic!("expected an i/o error, got {other:?}"),
    }
}

#[test]
fn shipped_recipes_are_valid() {
    let dir = std::path::Path::new(env!("CARGO_MANIFEST_DIR")).join("../../configs");
    let mut count = 0;
    for entry in fs::read_dir(&dir).unwrap() {
        let path = entry.unwrap().path();
        if path.extension().is_some_and(|e| e == "json") {
            let config = RunConfig::from_json_file(&path).unwrap();
            config.validate().unwrap_or_else(|e| panic!("{}: {e}", path.display()));
            count += 1;
        }
    }
    assert!(count >= 2);
}
