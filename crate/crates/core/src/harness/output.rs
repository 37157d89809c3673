use std::fs;
use std::path::{Path, PathBuf};

use serde::Serialize;

use super::svg;
use super::sweep::{RealizationRecord, SweepResult};
use super::config::RunConfig;
use crate::levelstats::Histogram;
use crate::{Error, Result};

pub const SWEEP_HEADER: [&str; 8] = [
    "h",
    "r_mean",
    "r_stderr",
    "ee_mean_per_site",
    "ee_stderr",
    "brody_omega",
    "brody_sigma",
    "n_realizations_ok",
];

/// Shortest decimal that round-trips.
fn num(x: f64) -> String {
    format!("{x}")
}

struct Writer {
    dir: PathBuf,
    written: Vec<PathBuf>,
}

impl Writer {
    fn io_error(&self, path: &Path, source: std::io::Error) -> Error {
        Error::Io {
            path: path.to_path_buf(),
            source,
            written: self.written.clone(),
        }
    }

    fn put(&mut self, name: &str, contents: &[u8]) -> Result<()> {
        let path = self.dir.join(name);
        fs::write(&path, contents).map_err(|e| self.io_error(&path, e))?;
        self.written.push(path);
        Ok(())
    }

    fn csv(&mut self, name: &str, header: &[&str], rows: &[Vec<String>]) -> Result<()> {
        let mut w = csv::Writer::from_writer(Vec::new());
        let path = self.dir.join(name);
        let to_io = |e: csv::Error| std::io::Error::other(e.to_string());
        w.write_record(header).map_err(|e| self.io_error(&path, to_io(e)))?;
        for row in rows {
            w.write_record(row).map_err(|e| self.io_error(&path, to_io(e)))?;
        }
        let bytes = w.into_inner().map_err(|e| self.io_error(&path, std::io::Error::other(e.to_string())))?;
        self.put(name, &bytes)
    }
}

fn histogram_rows(h: &Histogram) -> Vec<Vec<String>> {
    h.centers()
        .iter()
        .zip(&h.densities)
        .map(|(c, d)| vec![num(*c), num(*d)])
        .collect()
}

/// One row of `sweep.csv` per grid point.
pub fn sweep_rows(result: &SweepResult) -> Vec<Vec<String>> {
    result
        .summaries
        .iter()
        .map(|s| {
            let (omega, sigma) = s.brody.as_ref().map_or((f64::NAN, f64::NAN), |b| (b.omega, b.sigma));
            vec![
                num(s.h),
                num(s.r_mean),
                num(s.r_stderr),
                num(s.ee_mean_per_site),
                num(s.ee_stderr),
                num(omega),
                num(sigma),
                s.n_ok.to_string(),
            ]
        })
        .collect()
}

#[derive(Serialize)]
struct FitEntry {
    h: f64,
    omega: Option<f64>,
    sigma: Option<f64>,
    residual_norm: Option<f64>,
    at_bound: Option<bool>,
}

#[derive(Serialize)]
struct Manifest<'a> {
    version: &'a str,
    config: &'a RunConfig,
    started_unix: u64,
    wall_clock_seconds: f64,
    fits: Vec<FitEntry>,
    realizations: &'a [RealizationRecord],
}

/// Writes `sweep.csv`, per-`h` histograms, `manifest.json` and, when the
/// config asks for it, SVG plots. Returns the files written.
pub fn emit_outputs(result: &SweepResult, dir: &Path) -> Result<Vec<PathBuf>> {
    let mut w = Writer {
        dir: dir.to_path_buf(),
        written: Vec::new(),
    };
    fs::create_dir_all(dir).map_err(|e| w.io_error(dir, e))?;

    w.csv("sweep.csv", &SWEEP_HEADER, &sweep_rows(result))?;
    for s in &result.summaries {
        let tag = num(s.h);
        w.csv(&format!("hist_r_h{tag}.csv"), &["bin_center", "density"], &histogram_rows(&s.r_histogram))?;
        w.csv(&format!("hist_S_h{tag}.csv"), &["bin_center", "density"], &histogram_rows(&s.ee_histogram))?;
    }

    let manifest = Manifest {
        version: &result.version,
        config: &result.config,
        started_unix: result.started_unix,
        wall_clock_seconds: result.wall_clock_seconds,
        fits: result
            .summaries
            .iter()
            .map(|s| FitEntry {
                h: s.h,
                omega: s.brody.as_ref().map(|b| b.omega),
                sigma: s.brody.as_ref().map(|b| b.sigma),
                residual_norm: s.brody.as_ref().map(|b| b.residual_norm),
                at_bound: s.brody.as_ref().map(|b| b.at_bound),
            })
            .collect(),
        realizations: &result.records,
    };
    let json = serde_json::to_vec_pretty(&manifest).map_err(|e| Error::config(e.to_string()))?;
    w.put("manifest.json", &json)?;

    if result.config.svg {
        w.put("r_vs_h.svg", svg::r_versus_h(&result.summaries).as_bytes())?;
        for s in &result.summaries {
            let omega = s.brody.as_ref().map(|b| b.omega);
            let doc = svg::ratio_histogram(&s.r_histogram, omega, s.h);
            w.put(&format!("hist_r_h{}.svg", num(s.h)), doc.as_bytes())?;
        }
    }
    Ok(w.written)
}

/// Reads a `bin_center,density` file.
pub fn read_histogram(path: &Path) -> Result<Histogram> {
    let io = |source: std::io::Error| Error::Io {
        path: path.to_path_buf(),
        source,
        written: Vec::new(),
    };
    let text = fs::read_to_string(path).map_err(io)?;
    let mut reader = csv::Reader::from_reader(text.as_bytes());
    let mut centers = Vec::new();
    let mut densities = Vec::new();
    for record in reader.records() {
        let record = record.map_err(|e| Error::config(format!("{}: {e}", path.display())))?;
        let field = |i: usize| -> Result<f64> {
            record
                .get(i)
                .and_then(|s| s.trim().parse().ok())
                .ok_or_else(|| Error::config(format!("{}: malformed row {record:?}", path.display())))
        };
        centers.push(field(0)?);
        densities.push(field(1)?);
    }
    Histogram::from_centers(&centers, &densities)
}
