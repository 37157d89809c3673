//! Full `2^N` Hamiltonian from explicit Kronecker products, for checking the
//! block assembly on small lattices.
//!
//! Single-site basis is `[down, up]`, so the tensor-product index of a
//! configuration coincides with its bitmask value (site 0 leftmost).

use faer::Mat;

use super::DisorderModel;
use crate::basis::BasisBlock;
use crate::lattice::LatticeSpec;
use crate::{Error, Result};

pub const ORACLE_MAX_SITES: usize = 8;

fn kron(a: &Mat<f64>, b: &Mat<f64>) -> Mat<f64> {
    let (ar, ac) = (a.nrows(), a.ncols());
    let (br, bc) = (b.nrows(), b.ncols());
    Mat::from_fn(ar * br, ac * bc, |i, j| a[(i / br, j / bc)] * b[(i % br, j % bc)])
}

/// `I ⊗ … ⊗ op ⊗ … ⊗ I` with `op` in slot `site`.
fn embed(op: &Mat<f64>, site: usize, n: usize) -> Mat<f64> {
    let id = Mat::<f64>::identity(2, 2);
    let mut out = Mat::<f64>::identity(1, 1);
    for k in 0..n {
        out = kron(&out, if k == site { op } else { &id });
    }
    out
}

fn sz() -> Mat<f64> {
    Mat::from_fn(2, 2, |i, j| match (i, j) {
        (0, 0) => -0.5,
        (1, 1) => 0.5,
        _ => 0.0,
    })
}

fn s_plus() -> Mat<f64> {
    Mat::from_fn(2, 2, |i, j| if (i, j) == (1, 0) { 1.0 } else { 0.0 })
}

fn check_size(n: usize) -> Result<()> {
    if n == 0 || n > ORACLE_MAX_SITES {
        return Err(Error::domain(format!(
            "tensor-product oracle supports 1..={ORACLE_MAX_SITES} sites, got {n}"
        )));
    }
    Ok(())
}

pub fn build_full_oracle(spec: &LatticeSpec, coupling: f64, model: &DisorderModel) -> Result<Mat<f64>> {
    let n = spec.n_sites();
    check_size(n)?;
    let dim = 1usize << n;
    let fields = model.site_fields(spec)?;
    let sz_ops: Vec<Mat<f64>> = (0..n).map(|k| embed(&sz(), k, n)).collect();
    let sp_ops: Vec<Mat<f64>> = (0..n).map(|k| embed(&s_plus(), k, n)).collect();
    let sm_ops: Vec<Mat<f64>> = sp_ops.iter().map(|m| m.transpose().to_owned()).collect();

    let mut h = Mat::<f64>::zeros(dim, dim);
    for b in spec.neighbor_pairs() {
        let zz = &sz_ops[b.i] * &sz_ops[b.j];
        let pm = &sp_ops[b.i] * &sm_ops[b.j];
        let mp = &sm_ops[b.i] * &sp_ops[b.j];
        h += coupling * (zz + 0.5 * (pm + mp));
    }
    for (k, f) in fields.iter().enumerate() {
        h += *f * &sz_ops[k];
    }
    Ok(h)
}

/// `Σ_i S_i^z` on the full space.
pub fn total_sz(n_sites: usize) -> Result<Mat<f64>> {
    check_size(n_sites)?;
    let dim = 1usize << n_sites;
    let mut out = Mat::<f64>::zeros(dim, dim);
    for k in 0..n_sites {
        out += embed(&sz(), k, n_sites);
    }
    Ok(out)
}

/// `max |(AB − BA)_ij|`.
pub fn commutator_max_abs(a: &Mat<f64>, b: &Mat<f64>) -> f64 {
    let c = a * b - b * a;
    let mut worst = 0.0f64;
    for j in 0..c.ncols() {
        for i in 0..c.nrows() {
            worst = worst.max(c[(i, j)].abs());
        }
    }
    worst
}

/// Rows and columns of `full` indexed by the block's masks, in block order.
pub fn restrict_to_block(full: &Mat<f64>, block: &BasisBlock) -> Result<Mat<f64>> {
    let dim = 1usize << block.n_sites();
    if full.nrows() != dim || full.ncols() != dim {
        return Err(Error::domain(format!(
            "{}x{} matrix does not act on {} sites",
            full.nrows(),
            full.ncols(),
            block.n_sites()
        )));
    }
    let s = block.states();
    Ok(Mat::from_fn(s.len(), s.len(), |i, j| full[(s[i] as usize, s[j] as usize)]))
}
