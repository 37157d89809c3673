//! Minimal SVG plots of sweep results.

use std::fmt::Write;

use super::sweep::LevelStatsSummary;
use crate::levelstats::{brody_ratio_pdf, Histogram, GOE_R, POISSON_R};

const WIDTH: f64 = 640.0;
const HEIGHT: f64 = 420.0;
const MARGIN: f64 = 60.0;

/// Linear map from data coordinates to the plot area.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PlotFrame {
    pub x_range: (f64, f64),
    pub y_range: (f64, f64),
}

impl PlotFrame {
    pub fn to_px(&self, x: f64, y: f64) -> (f64, f64) {
        let (x0, x1) = self.x_range;
        let (y0, y1) = self.y_range;
        let px = MARGIN + (x - x0) / (x1 - x0) * (WIDTH - 2.0 * MARGIN);
        let py = HEIGHT - MARGIN - (y - y0) / (y1 - y0) * (HEIGHT - 2.0 * MARGIN);
        (px, py)
    }

    pub fn from_px(&self, px: f64, py: f64) -> (f64, f64) {
        let (x0, x1) = self.x_range;
        let (y0, y1) = self.y_range;
        let x = x0 + (px - MARGIN) / (WIDTH - 2.0 * MARGIN) * (x1 - x0);
        let y = y0 + (HEIGHT - MARGIN - py) / (HEIGHT - 2.0 * MARGIN) * (y1 - y0);
        (x, y)
    }
}

fn header(out: &mut String, title: &str) {
    let _ = write!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{HEIGHT}" viewBox="0 0 {WIDTH} {HEIGHT}" font-family="sans-serif" font-size="12">
<rect width="100%" height="100%" fill="white"/>
<text x="{}" y="24" text-anchor="middle" font-size="15">{title}</text>
"#,
        WIDTH / 2.0
    );
}

fn axes(out: &mut String, frame: &PlotFrame, x_label: &str, y_label: &str) {
    let (ax0, ay0) = frame.to_px(frame.x_range.0, frame.y_range.0);
    let (ax1, ay1) = frame.to_px(frame.x_range.1, frame.y_range.1);
    let _ = writeln!(
        out,
        r#"<path d="M{ax0:.2} {ay1:.2} L{ax0:.2} {ay0:.2} L{ax1:.2} {ay0:.2}" stroke="black" fill="none"/>"#
    );
    for i in 0..=5 {
        let t = i as f64 / 5.0;
        let x = frame.x_range.0 + t * (frame.x_range.1 - frame.x_range.0);
        let y = frame.y_range.0 + t * (frame.y_range.1 - frame.y_range.0);
        let (px, _) = frame.to_px(x, frame.y_range.0);
        let (_, py) = frame.to_px(frame.x_range.0, y);
        let _ = writeln!(
            out,
            r#"<text x="{px:.2}" y="{:.2}" text-anchor="middle">{x:.3}</text>"#,
            ay0 + 18.0
        );
        let _ = writeln!(
            out,
            r#"<text x="{:.2}" y="{py:.2}" text-anchor="end" dominant-baseline="middle">{y:.3}</text>"#,
            ax0 - 6.0
        );
    }
    let _ = writeln!(
        out,
        r#"<text x="{:.2}" y="{:.2}" text-anchor="middle">{x_label}</text>"#,
        WIDTH / 2.0,
        HEIGHT - 14.0
    );
    let _ = writeln!(
        out,
        r#"<text x="16" y="{:.2}" text-anchor="middle" transform="rotate(-90 16 {:.2})">{y_label}</text>"#,
        HEIGHT / 2.0,
        HEIGHT / 2.0
    );
}

fn hline(out: &mut String, frame: &PlotFrame, y: f64, color: &str, label: &str) {
    let (x0, py) = frame.to_px(frame.x_range.0, y);
    let (x1, _) = frame.to_px(frame.x_range.1, y);
    let _ = writeln!(
        out,
        r#"<path d="M{x0:.2} {py:.2} L{x1:.2} {py:.2}" stroke="{color}" stroke-dasharray="6 4" fill="none"/>"#
    );
    let _ = writeln!(
        out,
        r#"<text x="{:.2}" y="{:.2}" text-anchor="end" fill="{color}">{label}</text>"#,
        x1,
        py - 4.0
    );
}

/// Frame used by [`r_versus_h`].
pub fn r_versus_h_frame(summaries: &[LevelStatsSummary]) -> PlotFrame {
    let h_max = summaries.iter().map(|s| s.h).fold(0.0f64, f64::max).max(1.0);
    let lo = summaries
        .iter()
        .map(|s| s.r_mean - s.r_stderr)
        .fold(POISSON_R, f64::min);
    let hi = summaries
        .iter()
        .map(|s| s.r_mean + s.r_stderr)
        .fold(GOE_R, f64::max);
    PlotFrame {
        x_range: (0.0, h_max * 1.05),
        y_range: ((lo - 0.03).max(0.0), (hi + 0.03).min(1.0)),
    }
}

/// Mean gap ratio against disorder amplitude with GOE and Poisson lines.
pub fn r_versus_h(summaries: &[LevelStatsSummary]) -> String {
    let frame = r_versus_h_frame(summaries);
    let mut out = String::new();
    header(&mut out, "mean gap ratio");
    axes(&mut out, &frame, "h", "r");
    hline(&mut out, &frame, GOE_R, "#1f77b4", "GOE");
    hline(&mut out, &frame, POISSON_R, "#d62728", "Poisson");
    let mut path = String::new();
    for (i, s) in summaries.iter().enumerate() {
        let (px, py) = frame.to_px(s.h, s.r_mean);
        let _ = write!(path, "{}{px:.2} {py:.2} ", if i == 0 { "M" } else { "L" });
        let (_, lo) = frame.to_px(s.h, s.r_mean - s.r_stderr);
        let (_, hi) = frame.to_px(s.h, s.r_mean + s.r_stderr);
        let _ = writeln!(
            out,
            r#"<path d="M{px:.2} {lo:.2} L{px:.2} {hi:.2}" stroke="black"/><circle cx="{px:.2}" cy="{py:.2}" r="3"/>"#
        );
    }
    let _ = writeln!(out, r#"<path d="{}" stroke="black" fill="none"/>"#, path.trim_end());
    out.push_str("</svg>\n");
    out
}

/// Points of the fitted ratio density on `[0, 1]`, clipped at `y_max`.
pub fn ratio_curve(omega: f64, samples: usize, y_max: f64) -> Vec<(f64, f64)> {
    (0..=samples)
        .filter_map(|i| {
            let r = i as f64 / samples as f64;
            brody_ratio_pdf(r, omega).ok().map(|p| (r, p.min(y_max)))
        })
        .collect()
}

/// Frame used by [`ratio_histogram`].
pub fn ratio_histogram_frame(histogram: &Histogram) -> PlotFrame {
    let top = histogram.densities.iter().cloned().fold(2.0f64, f64::max);
    PlotFrame {
        x_range: (0.0, 1.0),
        y_range: (0.0, top * 1.1),
    }
}

/// `P(r)` bars with the fitted Brody ratio density overlaid.
pub fn ratio_histogram(histogram: &Histogram, omega: Option<f64>, h: f64) -> String {
    let frame = ratio_histogram_frame(histogram);
    let mut out = String::new();
    let title = match omega {
        Some(w) => format!("P(r) at h = {h}, fitted omega = {w:.3}"),
        None => format!("P(r) at h = {h}"),
    };
    header(&mut out, &title);
    axes(&mut out, &frame, "r", "P(r)");
    for (w, d) in histogram.edges.windows(2).zip(&histogram.densities) {
        let (x0, y_top) = frame.to_px(w[0], *d);
        let (x1, y_base) = frame.to_px(w[1], 0.0);
        let _ = writeln!(
            out,
            r##"<rect x="{x0:.2}" y="{y_top:.2}" width="{:.2}" height="{:.2}" fill="#9ecae1" stroke="#3182bd"/>"##,
            x1 - x0,
            y_base - y_top
        );
    }
    if let Some(w) = omega {
        let mut d = String::new();
        for (i, (r, p)) in ratio_curve(w, 200, frame.y_range.1).into_iter().enumerate() {
            let (px, py) = frame.to_px(r, p);
            let _ = write!(d, "{}{px:.4} {py:.4} ", if i == 0 { "M" } else { "L" });
        }
        let _ = writeln!(
            out,
            r##"<path class="fit" d="{}" stroke="#e6550d" stroke-width="2" fill="none"/>"##,
            d.trim_end()
        );
    }
    out.push_str("</svg>\n");
    out
}
