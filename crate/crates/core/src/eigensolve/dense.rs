//! Dense symmetric eigensolves for blocks up to the dense threshold.

use faer::diag::Diag;
use faer::dyn_stack::{MemBuffer, MemStack};
use faer::linalg::evd::{self, ComputeEigenvectors};
use faer::linalg::householder::apply_block_householder_sequence_on_the_left_in_place_with_conj;
use faer::{Col, Conj, Mat, Par};

use super::tridiagonal::inverse_iteration;
use crate::{Error, Result};

/// Householder reduction `A = Q T Qᵀ` kept in factored form.
pub(crate) struct Tridiagonal {
    n: usize,
    reduced: Mat<f64>,
    householder: Mat<f64>,
    pub diag: Vec<f64>,
    pub sub: Vec<f64>,
}

fn scratch(n: usize) -> MemBuffer {
    MemBuffer::new(evd::self_adjoint_evd_scratch::<f64>(
        n,
        ComputeEigenvectors::Yes,
        Par::Seq,
        Default::default(),
    ))
}

impl Tridiagonal {
    pub fn reduce(a: Mat<f64>) -> Self {
        let n = a.nrows();
        let mut reduced = a;
        let bs = faer::linalg::qr::no_pivoting::factor::recommended_block_size::<f64>(n, n);
        let mut householder = Mat::<f64>::zeros(bs, n.saturating_sub(1));
        if n > 1 {
            let mut buf = scratch(n);
            evd::tridiag::tridiag_in_place(
                reduced.as_mut(),
                householder.as_mut(),
                Par::Seq,
                MemStack::new(&mut buf),
                Default::default(),
            );
        }
        let diag = (0..n).map(|i| reduced[(i, i)]).collect();
        let sub = (0..n.saturating_sub(1)).map(|i| reduced[(i + 1, i)]).collect();
        Self {
            n,
            reduced,
            householder,
            diag,
            sub,
        }
    }

    /// All eigenvalues, ascending.
    pub fn eigenvalues(&self) -> Result<Vec<f64>> {
        let n = self.n;
        let d = Col::<f64>::from_fn(n, |i| self.diag[i]);
        let e = Col::<f64>::from_fn(n, |i| if i + 1 < n { self.sub[i] } else { 0.0 });
        let mut w = Diag::<f64>::zeros(n);
        let mut buf = scratch(n);
        evd::tridiagonal_self_adjoint_evd(
            d.as_diagonal(),
            e.as_diagonal(),
            w.as_mut(),
            None,
            Par::Seq,
            MemStack::new(&mut buf),
            Default::default(),
        )
        .map_err(|e| Error::solver(format!("tridiagonal eigenvalue iteration failed: {e:?}")))?;
        let mut vals: Vec<f64> = (0..n).map(|i| w.column_vector()[i]).collect();
        vals.sort_by(f64::total_cmp);
        Ok(vals)
    }

    /// All eigenpairs of the tridiagonal matrix (divide and conquer),
    /// eigenvalues ascending.
    pub fn full_decomposition(&self) -> Result<(Vec<f64>, Mat<f64>)> {
        let n = self.n;
        let d = Col::<f64>::from_fn(n, |i| self.diag[i]);
        let e = Col::<f64>::from_fn(n, |i| if i + 1 < n { self.sub[i] } else { 0.0 });
        let mut w = Diag::<f64>::zeros(n);
        let mut u = Mat::<f64>::zeros(n, n);
        let mut buf = scratch(n);
        evd::tridiagonal_self_adjoint_evd(
            d.as_diagonal(),
            e.as_diagonal(),
            w.as_mut(),
            Some(u.as_mut()),
            Par::Seq,
            MemStack::new(&mut buf),
            Default::default(),
        )
        .map_err(|e| Error::solver(format!("tridiagonal eigensolver failed: {e:?}")))?;
        let mut order: Vec<usize> = (0..n).collect();
        order.sort_by(|&a, &b| w.column_vector()[a].total_cmp(&w.column_vector()[b]));
        let vals = order.iter().map(|&k| w.column_vector()[k]).collect();
        let vecs = Mat::from_fn(n, n, |i, j| u[(i, order[j])]);
        Ok((vals, vecs))
    }

    /// Maps tridiagonal eigenvectors (columns) back to the original basis.
    pub fn back_transform(&self, mut cols: Mat<f64>) -> Mat<f64> {
        let n = self.n;
        if n > 1 {
            let k = cols.ncols();
            let mut buf = MemBuffer::new(
                faer::linalg::householder::apply_block_householder_sequence_on_the_left_in_place_scratch::<f64>(
                    n - 1,
                    self.householder.nrows(),
                    k,
                ),
            );
            apply_block_householder_sequence_on_the_left_in_place_with_conj(
                self.reduced.submatrix(1, 0, n - 1, n - 1),
                self.householder.as_ref(),
                Conj::No,
                cols.as_mut().subrows_mut(1, n - 1),
                Par::Seq,
                MemStack::new(&mut buf),
            );
        }
        cols
    }

    /// Eigenvectors for the given (ascending) eigenvalues by inverse
    /// iteration, in the original basis.
    pub fn selected_vectors(&self, lambdas: &[f64]) -> Mat<f64> {
        let vecs = inverse_iteration(&self.diag, &self.sub, lambdas);
        let cols = Mat::from_fn(self.n, lambdas.len(), |i, j| vecs[j][i]);
        self.back_transform(cols)
    }
}

/// Full eigendecomposition, eigenvalues ascending.
pub(crate) fn full_eigen(a: Mat<f64>) -> Result<(Vec<f64>, Mat<f64>)> {
    let t = Tridiagonal::reduce(a);
    let (vals, vecs) = t.full_decomposition()?;
    Ok((vals, t.back_transform(vecs)))
}
