use std::fs;
use std::process::{Command, Output};

fn mbl_lab(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_mbl-lab"))
        .args(args)
        .output()
        .expect("binary runs")
}

#[test]
fn sweep_writes_outputs() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("run");
    let o = mbl_lab(&[
        "sweep", "--rows", "2", "--cols", "3", "--model", "quasixy", "--h-grid", "0.5,8", "--realizations", "4",
        "--states", "10", "--epsilon", "0.5", "--seed", "11", "--bins", "10", "--cut-sites", "3", "--out",
        out.to_str().unwrap(), "--svg",
    ]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let csv = fs::read_to_string(out.join("sweep.csv")).unwrap();
    assert_eq!(csv.lines().count(), 3);
    assert!(csv.starts_with("h,r_mean,r_stderr,ee_mean_per_site,ee_stderr,brody_omega,brody_sigma,n_realizations_ok"));
    for name in ["hist_r_h0.5.csv", "hist_S_h8.csv", "manifest.json", "r_vs_h.svg", "hist_r_h8.svg"] {
        assert!(out.join(name).exists(), "missing {name}");
    }
}

#[test]
fn config_file_and_flag_override() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("c.json");
    fs::write(
        &cfg,
        r#"{"rows": 2, "cols": 3, "model": "uniform", "h_grid": [1.0], "realizations": 2, "master_seed": 5, "states": 8, "bins": 10}"#,
    )
    .unwrap();
    let out = dir.path().join("o");
    let o = mbl_lab(&["sweep", "--config", cfg.to_str().unwrap(), "--realizations", "3", "--out", out.to_str().unwrap()]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let manifest: serde_json::Value = serde_json::from_str(&fs::read_to_string(out.join("manifest.json")).unwrap()).unwrap();
    assert_eq!(manifest["config"]["realizations"], 3);
    assert_eq!(manifest["realizations"].as_array().unwrap().len(), 3);
}

#[test]
fn bad_config_exits_2() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().to_str().unwrap();
    let o = mbl_lab(&[
        "sweep", "--rows", "2", "--cols", "3", "--model", "quasixy", "--h-grid", "2,1", "--realizations", "2", "--seed",
        "1", "--out", out,
    ]);
    assert_eq!(o.status.code(), Some(2));
    let o = mbl_lab(&[
        "sweep", "--rows", "2", "--cols", "3", "--model", "gaussian", "--h-grid", "1", "--realizations", "2", "--seed",
        "1", "--out", out,
    ]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn unwritable_output_exits_4() {
    let dir = tempfile::tempdir().unwrap();
    let blocker = dir.path().join("file");
    fs::write(&blocker, "x").unwrap();
    let out = blocker.join("sub");
    let o = mbl_lab(&[
        "sweep", "--rows", "2", "--cols", "2", "--model", "uniform", "--h-grid", "1", "--realizations", "1", "--states",
        "4", "--seed", "1", "--bins", "4", "--out", out.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(4), "{}", String::from_utf8_lossy(&o.stderr));
}

#[test]
fn degeneracy_report_json() {
    let dir = tempfile::tempdir().unwrap();
    let o = mbl_lab(&["degeneracy", "--rows", "2", "--cols", "3", "--n-up", "3", "--out", dir.path().to_str().unwrap()]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let report: serde_json::Value =
        serde_json::from_str(&fs::read_to_string(dir.path().join("degeneracy_report.json")).unwrap()).unwrap();
    assert_eq!(report["block_size"], 20);
    let sizes: u64 = report["class_sizes"].as_array().unwrap().iter().map(|v| v.as_u64().unwrap()).sum();
    assert_eq!(sizes, 20);
}

#[test]
fn fit_brody_on_poisson_histogram() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("hist.csv");
    // P(r) = 2 / (1 + r)^2 sampled at bin centres.
    let mut text = String::from("bin_center,density\n");
    for i in 0..50 {
        let c = (i as f64 + 0.5) / 50.0;
        text.push_str(&format!("{c},{}\n", 2.0 / (1.0 + c).powi(2)));
    }
    fs::write(&path, text).unwrap();
    let o = mbl_lab(&["fit-brody", "--hist", path.to_str().unwrap()]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let fit: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert!(fit["omega"].as_f64().unwrap().abs() < 0.01, "{fit}");
}

#[test]
fn missing_histogram_exits_4() {
    let o = mbl_lab(&["fit-brody", "--hist", "/nonexistent/hist.csv"]);
    assert_eq!(o.status.code(), Some(4));
}
