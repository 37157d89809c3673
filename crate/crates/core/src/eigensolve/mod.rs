//! Spectrum extremes and interior eigenpairs of block Hamiltonians.
//!
//! Blocks up to [`DENSE_THRESHOLD`] are reduced to tridiagonal form; the
//! window is selected from the full eigenvalue list and only its
//! eigenvectors are formed. Larger blocks use thick-restart Lanczos on
//! `(H − σI)⁻¹` with a sparse `LDLᵀ` factorization.

mod dense;
mod krylov;
mod tridiagonal;

use faer::Mat;
use serde::{Deserialize, Serialize};

use crate::hamiltonian::SparseHamiltonian;
use crate::{Error, Result};
use dense::{full_eigen, Tridiagonal};
use krylov::{krylov_schur, KrylovParams, ShiftInvert, Which};

/// Largest block dimension handled by dense diagonalization.
pub const DENSE_THRESHOLD: usize = 4000;

/// Full eigendecomposition; `eigenvectors` holds one eigenvector per column.
#[derive(Debug, Clone)]
pub struct Spectrum {
    pub eigenvalues: Vec<f64>,
    pub eigenvectors: Mat<f64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SolverOptions {
    pub dense_threshold: usize,
    /// Relative convergence tolerance of the iterative solvers.
    pub tol: f64,
    /// Restart cap per requested eigenpair.
    pub restarts_per_state: usize,
}

impl Default for SolverOptions {
    fn default() -> Self {
        Self {
            dense_threshold: DENSE_THRESHOLD,
            tol: 1e-10,
            restarts_per_state: 50,
        }
    }
}

/// The `M` eigenpairs closest to a target energy.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EigenWindow {
    pub e_min: f64,
    pub e_max: f64,
    pub target_energy: f64,
    /// Ascending.
    pub eigenvalues: Vec<f64>,
    pub eigenvectors: Vec<Vec<f64>>,
}

impl EigenWindow {
    /// Worst `‖Hv − λv‖ / max(1, |λ|)` and worst `|vᵢ·vⱼ − δᵢⱼ|`.
    pub fn quality(&self, h: &SparseHamiltonian) -> (f64, f64) {
        let mut residual = 0.0f64;
        for (v, &l) in self.eigenvectors.iter().zip(&self.eigenvalues) {
            residual = residual.max(relative_residual(h, v, l));
        }
        let mut ortho = 0.0f64;
        for (i, a) in self.eigenvectors.iter().enumerate() {
            for (j, b) in self.eigenvectors.iter().enumerate().skip(i) {
                let d: f64 = a.iter().zip(b).map(|(x, y)| x * y).sum();
                ortho = ortho.max((d - if i == j { 1.0 } else { 0.0 }).abs());
            }
        }
        (residual, ortho)
    }

    /// Checks the window invariants: ordering, bounds, residuals ≤ 1e−8
    /// relative and orthonormality to 1e−8.
    pub fn validate(&self, h: &SparseHamiltonian) -> Result<()> {
        if !self.eigenvalues.windows(2).all(|w| w[0] <= w[1]) {
            return Err(Error::solver("window eigenvalues are not ascending"));
        }
        let slack = 1e-10 * (1.0 + self.e_min.abs().max(self.e_max.abs()));
        if self
            .eigenvalues
            .iter()
            .any(|&l| l < self.e_min - slack || l > self.e_max + slack)
        {
            return Err(Error::solver("window eigenvalue outside [e_min, e_max]"));
        }
        let (residual, ortho) = self.quality(h);
        if residual > 1e-8 || ortho > 1e-8 {
            return Err(Error::solver(format!(
                "window failed validation: residual {residual:e}, orthogonality defect {ortho:e}"
            )));
        }
        Ok(())
    }
}

fn relative_residual(h: &SparseHamiltonian, v: &[f64], lambda: f64) -> f64 {
    let hv = h.apply(v);
    let r: f64 = hv.iter().zip(v).map(|(a, b)| (a - lambda * b).powi(2)).sum::<f64>().sqrt();
    r / lambda.abs().max(1.0)
}

/// Every eigenpair of a block no larger than the dense threshold.
pub fn dense_spectrum(h: &SparseHamiltonian) -> Result<Spectrum> {
    if h.dim() > DENSE_THRESHOLD {
        return Err(Error::domain(format!(
            "block dimension {} exceeds the dense threshold {DENSE_THRESHOLD}; use interior_window",
            h.dim()
        )));
    }
    if h.dim() == 0 {
        return Err(Error::domain("empty matrix"));
    }
    let (eigenvalues, eigenvectors) = full_eigen(h.to_dense())?;
    Ok(Spectrum {
        eigenvalues,
        eigenvectors,
    })
}

/// `(E_min, E_max)`.
pub fn extremal_eigenvalues(h: &SparseHamiltonian) -> Result<(f64, f64)> {
    extremal_eigenvalues_with(h, &SolverOptions::default())
}

pub fn extremal_eigenvalues_with(h: &SparseHamiltonian, options: &SolverOptions) -> Result<(f64, f64)> {
    let dim = h.dim();
    if dim < 2 {
        return Err(Error::domain("extremal eigenvalues need a block of dimension ≥ 2"));
    }
    if dim <= options.dense_threshold || dim <= 64 {
        let vals = Tridiagonal::reduce(h.to_dense()).eigenvalues()?;
        return Ok((vals[0], vals[dim - 1]));
    }
    let params = KrylovParams {
        nev: 1,
        ncv: 40.min(dim),
        tol: options.tol,
        max_restarts: 50 * options.restarts_per_state,
        which: Which::LargestAlgebraic,
    };
    let top = krylov_schur(
        dim,
        &params,
        |x, y| {
            h.matvec(x, y);
            Ok(())
        },
        |_, _| true,
    );
    let bottom = krylov_schur(
        dim,
        &params,
        |x, y| {
            h.matvec(x, y);
            y.iter_mut().for_each(|v| *v = -*v);
            Ok(())
        },
        |_, _| true,
    );
    match (top, bottom) {
        (Ok(t), Ok(b)) => Ok((-b.values[0], t.values[0])),
        (t, b) => {
            let best = |r: &Result<krylov::RitzPairs>| match r {
                Ok(p) => Some(p.values[0]),
                Err(Error::Solver {
                    best_estimates: Some((_, hi)),
                    ..
                }) => Some(*hi),
                Err(_) => None,
            };
            let (hi, lo) = (best(&t), best(&b).map(|x| -x));
            Err(Error::Solver {
                message: "extremal eigenvalue iteration did not converge".into(),
                best_estimates: lo.zip(hi),
            })
        }
    }
}

/// `E_max − ε (E_max − E_min)`.
pub fn target_energy(e_min: f64, e_max: f64, epsilon: f64) -> f64 {
    e_max - epsilon * (e_max - e_min)
}

/// Start index of the `m` consecutive entries of ascending `values` closest
/// to `target`.
pub fn closest_window(values: &[f64], target: f64, m: usize) -> usize {
    let n = values.len();
    let mut lo = values.partition_point(|&v| v < target);
    let mut hi = lo;
    while hi - lo < m {
        let take_left = if lo == 0 {
            false
        } else if hi == n {
            true
        } else {
            target - values[lo - 1] <= values[hi] - target
        };
        if take_left {
            lo -= 1;
        } else {
            hi += 1;
        }
    }
    lo
}

/// The `m` eigenpairs nearest energy density `epsilon`.
pub fn interior_window(h: &SparseHamiltonian, epsilon: f64, m: usize) -> Result<EigenWindow> {
    interior_window_with(h, epsilon, m, &SolverOptions::default())
}

pub fn interior_window_with(
    h: &SparseHamiltonian,
    epsilon: f64,
    m: usize,
    options: &SolverOptions,
) -> Result<EigenWindow> {
    let dim = h.dim();
    if !(0.0..=1.0).contains(&epsilon) {
        return Err(Error::domain(format!("energy density {epsilon} is outside [0, 1]")));
    }
    if m == 0 || m > dim {
        return Err(Error::domain(format!(
            "cannot select {m} eigenpairs from a block of dimension {dim}"
        )));
    }
    let window = if h.is_diagonal() {
        diagonal_window(h, epsilon, m)
    } else if dim <= options.dense_threshold || 2 * m + 20 >= dim {
        dense_window(h, epsilon, m)?
    } else {
        shift_invert_window(h, epsilon, m, options)?
    };
    window.validate(h)?;
    Ok(window)
}

/// Eigenpairs of a diagonal matrix are its entries and the unit vectors;
/// degenerate entries keep their basis order.
fn diagonal_window(h: &SparseHamiltonian, epsilon: f64, m: usize) -> EigenWindow {
    let d = h.diagonal();
    let mut order: Vec<usize> = (0..d.len()).collect();
    order.sort_by(|&a, &b| d[a].total_cmp(&d[b]));
    let sorted: Vec<f64> = order.iter().map(|&k| d[k]).collect();
    let (e_min, e_max) = (sorted[0], sorted[d.len() - 1]);
    let target = target_energy(e_min, e_max, epsilon);
    let start = closest_window(&sorted, target, m);
    let eigenvectors = order[start..start + m]
        .iter()
        .map(|&k| {
            let mut v = vec![0.0; d.len()];
            v[k] = 1.0;
            v
        })
        .collect();
    EigenWindow {
        e_min,
        e_max,
        target_energy: target,
        eigenvalues: sorted[start..start + m].to_vec(),
        eigenvectors,
    }
}

fn dense_window(h: &SparseHamiltonian, epsilon: f64, m: usize) -> Result<EigenWindow> {
    let dim = h.dim();
    let tri = Tridiagonal::reduce(h.to_dense());
    let all = tri.eigenvalues()?;
    let (e_min, e_max) = (all[0], all[dim - 1]);
    let target = target_energy(e_min, e_max, epsilon);
    let start = closest_window(&all, target, m);
    let eigenvalues = all[start..start + m].to_vec();

    let columns = |mat: &Mat<f64>, offset: usize| -> Vec<Vec<f64>> {
        (0..m)
            .map(|j| (0..dim).map(|i| mat[(i, offset + j)]).collect())
            .collect()
    };
    let mut window = EigenWindow {
        e_min,
        e_max,
        target_energy: target,
        eigenvectors: columns(&tri.selected_vectors(&eigenvalues), 0),
        eigenvalues,
    };
    if window.validate(h).is_err() {
        log::debug!("inverse iteration missed tolerance; using the full tridiagonal eigensolver");
        let (vals, vecs) = tri.full_decomposition()?;
        let vecs = tri.back_transform(vecs.subcols(start, m).to_owned());
        window.eigenvalues = vals[start..start + m].to_vec();
        window.eigenvectors = columns(&vecs, 0);
    }
    Ok(window)
}

fn shift_invert_window(h: &SparseHamiltonian, epsilon: f64, m: usize, options: &SolverOptions) -> Result<EigenWindow> {
    let dim = h.dim();
    let (e_min, e_max) = extremal_eigenvalues_with(h, options)?;
    let target = target_energy(e_min, e_max, epsilon);
    let mut factor = ShiftInvert::new(h, target)?;
    let sigma = factor.shift;
    let params = KrylovParams {
        nev: m,
        ncv: (2 * m + 20).min(dim),
        tol: options.tol,
        max_restarts: options.restarts_per_state * m,
        which: Which::LargestMagnitude,
    };
    let pairs = krylov_schur(
        dim,
        &params,
        |x, y| {
            y.copy_from_slice(x);
            factor.solve_in_place(y);
            Ok(())
        },
        |theta, x| {
            let nrm: f64 = x.iter().map(|v| v * v).sum::<f64>().sqrt();
            let unit: Vec<f64> = x.iter().map(|v| v / nrm).collect();
            let lambda = rayleigh(h, &unit).unwrap_or(sigma + 1.0 / theta);
            relative_residual(h, &unit, lambda) <= 1e-9
        },
    )?;

    let mut pairs: Vec<(f64, Vec<f64>)> = pairs
        .vectors
        .into_iter()
        .map(|x| {
            let nrm: f64 = x.iter().map(|v| v * v).sum::<f64>().sqrt();
            let unit: Vec<f64> = x.iter().map(|v| v / nrm).collect();
            (rayleigh(h, &unit).unwrap_or(f64::NAN), unit)
        })
        .collect();
    pairs.sort_by(|a, b| a.0.total_cmp(&b.0));
    let (eigenvalues, eigenvectors) = pairs.into_iter().unzip();
    Ok(EigenWindow {
        e_min,
        e_max,
        target_energy: target,
        eigenvalues,
        eigenvectors,
    })
}

fn rayleigh(h: &SparseHamiltonian, unit: &[f64]) -> Option<f64> {
    let hv = h.apply(unit);
    let q: f64 = hv.iter().zip(unit).map(|(a, b)| a * b).sum();
    q.is_finite().then_some(q)
}
