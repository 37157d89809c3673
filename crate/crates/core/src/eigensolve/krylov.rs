//! Thick-restart Lanczos (Krylov–Schur) for symmetric operators, and the
//! sparse `LDLᵀ` factorization used to apply `(H − σI)⁻¹`.

use faer::dyn_stack::{MemBuffer, MemStack};
use faer::sparse::linalg::cholesky::{factorize_symbolic_cholesky, SymbolicCholesky, SymmetricOrdering};
use faer::sparse::{SparseColMat, Triplet};
use faer::{Conj, Mat, MatMut, Par, Side};

use super::dense::full_eigen;
use crate::hamiltonian::SparseHamiltonian;
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) enum Which {
    LargestAlgebraic,
    LargestMagnitude,
}

pub(crate) struct KrylovParams {
    pub nev: usize,
    pub ncv: usize,
    pub tol: f64,
    pub max_restarts: usize,
    pub which: Which,
}

pub(crate) struct RitzPairs {
    pub values: Vec<f64>,
    pub vectors: Vec<Vec<f64>>,
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn axpy(alpha: f64, x: &[f64], y: &mut [f64]) {
    y.iter_mut().zip(x).for_each(|(b, a)| *b += alpha * a);
}

fn norm(v: &[f64]) -> f64 {
    dot(v, v).sqrt()
}

/// Two passes of classical Gram–Schmidt against `basis`; returns the
/// accumulated coefficients.
fn orthogonalize(basis: &[Vec<f64>], w: &mut [f64]) -> Vec<f64> {
    let mut coeffs = vec![0.0; basis.len()];
    for _ in 0..2 {
        let h: Vec<f64> = basis.iter().map(|v| dot(v, w)).collect();
        for (v, &c) in basis.iter().zip(&h) {
            axpy(-c, v, w);
        }
        coeffs.iter_mut().zip(&h).for_each(|(a, b)| *a += b);
    }
    coeffs
}

fn start_vector(dim: usize) -> Vec<f64> {
    let mut v: Vec<f64> = (0..dim)
        .map(|i| 1.0 + 0.5 * ((i as f64 + 1.0) * 0.618_033_988_749_895).fract())
        .collect();
    let nrm = norm(&v);
    v.iter_mut().for_each(|x| *x /= nrm);
    v
}

/// Replacement direction when the Krylov space becomes invariant.
fn fresh_direction(basis: &[Vec<f64>], dim: usize, salt: usize) -> Option<Vec<f64>> {
    let mut state = 0x2545_F491_4F6C_DD1Du64 ^ (salt as u64).wrapping_mul(0x9E37_79B9_7F4A_7C15);
    for _ in 0..4 {
        let mut w: Vec<f64> = (0..dim)
            .map(|_| {
                state ^= state << 13;
                state ^= state >> 7;
                state ^= state << 17;
                (state >> 11) as f64 / (1u64 << 53) as f64 - 0.5
            })
            .collect();
        orthogonalize(basis, &mut w);
        let nrm = norm(&w);
        if nrm > 1e-8 {
            w.iter_mut().for_each(|x| *x /= nrm);
            return Some(w);
        }
    }
    None
}

/// Computes the `nev` wanted eigenpairs of the symmetric operator `op`.
///
/// `accept` receives each candidate Ritz pair once its Krylov residual
/// estimate is below tolerance and may veto it (the caller checks the true
/// residual against the original matrix there).
pub(crate) fn krylov_schur<F, A>(dim: usize, params: &KrylovParams, mut op: F, mut accept: A) -> Result<RitzPairs>
where
    F: FnMut(&[f64], &mut [f64]) -> Result<()>,
    A: FnMut(f64, &[f64]) -> bool,
{
    let nev = params.nev;
    let m = params.ncv.min(dim);
    if nev == 0 || nev > m || m > dim {
        return Err(Error::domain(format!(
            "Krylov space of size {m} cannot deliver {nev} eigenpairs of a {dim}-dimensional operator"
        )));
    }

    let mut basis: Vec<Vec<f64>> = vec![start_vector(dim)];
    let mut t = Mat::<f64>::zeros(m, m);
    let mut k = 0usize;
    let mut w = vec![0.0; dim];
    let mut best: Vec<f64> = Vec::new();

    for restart in 0..=params.max_restarts {
        let mut beta = 0.0;
        for j in k..m {
            op(&basis[j], &mut w)?;
            let h = orthogonalize(&basis, &mut w);
            for (i, &c) in h.iter().enumerate() {
                if i < j {
                    // Average the two computed copies of each coupling.
                    let prev = t[(i, j)];
                    let v = if prev != 0.0 { 0.5 * (prev + c) } else { c };
                    t[(i, j)] = v;
                    t[(j, i)] = v;
                } else {
                    t[(j, j)] = c;
                }
            }
            beta = norm(&w);
            let next = if beta > 1e-14 * (1.0 + t[(j, j)].abs()) {
                w.iter().map(|x| x / beta).collect()
            } else {
                beta = 0.0;
                fresh_direction(&basis, dim, j + restart * m).unwrap_or_else(|| vec![0.0; dim])
            };
            if j + 1 < m {
                t[(j + 1, j)] = beta;
                t[(j, j + 1)] = beta;
            }
            basis.push(next);
        }

        let (theta, s) = full_eigen(t.clone())?;
        let mut order: Vec<usize> = (0..m).collect();
        match params.which {
            Which::LargestAlgebraic => order.sort_by(|&a, &b| theta[b].total_cmp(&theta[a])),
            Which::LargestMagnitude => order.sort_by(|&a, &b| theta[b].abs().total_cmp(&theta[a].abs())),
        }
        best = order[..nev].iter().map(|&i| theta[i]).collect();

        let scale = theta.iter().fold(0.0f64, |acc, x| acc.max(x.abs())).max(f64::MIN_POSITIVE);
        let mut all_converged = true;
        let mut wanted_vectors: Vec<Vec<f64>> = Vec::with_capacity(nev);
        for &i in &order[..nev] {
            let estimate = (beta * s[(m - 1, i)]).abs();
            let converged = estimate <= params.tol * theta[i].abs().max(1e-3 * scale);
            if !converged {
                all_converged = false;
                break;
            }
            let mut x = vec![0.0; dim];
            for (j, v) in basis[..m].iter().enumerate() {
                axpy(s[(j, i)], v, &mut x);
            }
            if !accept(theta[i], &x) {
                all_converged = false;
                break;
            }
            wanted_vectors.push(x);
        }
        if all_converged {
            return Ok(RitzPairs {
                values: best.clone(),
                vectors: wanted_vectors,
            });
        }

        // Thick restart: keep the leading Ritz vectors and the residual.
        let keep = (nev + (m - nev) / 2).min(m - 1).max(nev);
        let mut new_basis = Vec::with_capacity(m + 1);
        for &i in &order[..keep] {
            let mut x = vec![0.0; dim];
            for (j, v) in basis[..m].iter().enumerate() {
                axpy(s[(j, i)], v, &mut x);
            }
            new_basis.push(x);
        }
        new_basis.push(basis.pop().expect("residual vector"));
        t.fill(0.0);
        for (a, &i) in order[..keep].iter().enumerate() {
            t[(a, a)] = theta[i];
            let b = beta * s[(m - 1, i)];
            t[(a, keep)] = b;
            t[(keep, a)] = b;
        }
        basis = new_basis;
        k = keep;
    }

    let best_pair = match best.len() {
        0 => None,
        _ => Some((
            best.iter().cloned().fold(f64::INFINITY, f64::min),
            best.iter().cloned().fold(f64::NEG_INFINITY, f64::max),
        )),
    };
    Err(Error::Solver {
        message: format!("Krylov-Schur did not converge within {} restarts", params.max_restarts),
        best_estimates: best_pair,
    })
}

/// Sparse `LDLᵀ` factorization of `H − σI`.
pub(crate) struct ShiftInvert {
    symbolic: SymbolicCholesky<usize>,
    values: Vec<f64>,
    pub shift: f64,
    solve_buf: MemBuffer,
}

impl ShiftInvert {
    /// Factorizes at `shift`, nudging it on a zero pivot.
    pub fn new(h: &SparseHamiltonian, shift: f64) -> Result<Self> {
        let dim = h.dim();
        let pattern: Vec<Triplet<usize, usize, f64>> =
            h.triplets().iter().map(|&(r, c, v)| Triplet::new(r, c, v)).collect();
        let base = SparseColMat::<usize, f64>::try_new_from_triplets(dim, dim, &pattern)
            .map_err(|e| Error::solver(format!("sparse matrix construction failed: {e:?}")))?;
        let symbolic = factorize_symbolic_cholesky(
            base.symbolic(),
            Side::Upper,
            SymmetricOrdering::Amd,
            Default::default(),
        )
        .map_err(|e| Error::solver(format!("symbolic factorization failed: {e:?}")))?;
        let mut values = vec![0.0; symbolic.len_val()];
        let mut factor_buf = MemBuffer::new(symbolic.factorize_numeric_ldlt_scratch::<f64>(Par::Seq, Default::default()));
        let solve_buf = MemBuffer::new(symbolic.solve_in_place_scratch::<f64>(1, Par::Seq));

        let mut sigma = shift;
        let mut last_err = String::new();
        for attempt in 0..6 {
            let shifted: Vec<Triplet<usize, usize, f64>> = h
                .triplets()
                .iter()
                .map(|&(r, c, v)| Triplet::new(r, c, if r == c { v - sigma } else { v }))
                .collect();
            let a = SparseColMat::<usize, f64>::try_new_from_triplets(dim, dim, &shifted)
                .map_err(|e| Error::solver(format!("sparse matrix construction failed: {e:?}")))?;
            let outcome = symbolic.factorize_numeric_ldlt(
                &mut values,
                a.as_ref(),
                Side::Upper,
                Default::default(),
                Par::Seq,
                MemStack::new(&mut factor_buf),
                Default::default(),
            );
            match outcome {
                Ok(_) => {
                    if attempt > 0 {
                        log::debug!("shift nudged {attempt} time(s) to {sigma}");
                    }
                    return Ok(Self {
                        symbolic,
                        values,
                        shift: sigma,
                        solve_buf,
                    });
                }
                Err(e) => {
                    last_err = format!("{e:?}");
                    sigma = sigma * (1.0 + 1e-10) + 1e-12;
                }
            }
        }
        Err(Error::solver(format!(
            "factorization of H - sigma I failed near sigma = {shift}: {last_err}"
        )))
    }

    /// `x ← (H − σI)⁻¹ x`.
    pub fn solve_in_place(&mut self, x: &mut [f64]) {
        let n = x.len();
        let ldlt = faer::sparse::linalg::cholesky::LdltRef::new(&self.symbolic, &self.values);
        let rhs = MatMut::from_column_major_slice_mut(x, n, 1);
        ldlt.solve_in_place_with_conj(Conj::No, rhs, Par::Seq, MemStack::new(&mut self.solve_buf));
    }
}
