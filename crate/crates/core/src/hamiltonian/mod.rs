//! Block Hamiltonians `J Σ⟨ij⟩ S_i·S_j + Σ_i f_i S_i^z`.
//!
//! Matrix elements are built state by state in the bitmask basis: the
//! `S^z S^z` part is diagonal, and `½(S⁺S⁻ + S⁻S⁺)` connects a state to the
//! state with the two antiparallel spins of a bond exchanged, with amplitude
//! `J/2` (ħ = 1). The on-site field `f_i` comes from a [`DisorderModel`].

mod oracle;

use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;

use faer::Mat;
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::basis::{flip_pair, is_up, BasisBlock};
use crate::lattice::{Bond, LatticeSpec};
use crate::{Error, Result};

pub use oracle::{build_full_oracle, commutator_max_abs, restrict_to_block, total_sz, ORACLE_MAX_SITES};

/// Default incommensurate wavenumber `√2`.
pub const DEFAULT_WAVENUMBER: f64 = std::f64::consts::SQRT_2;

/// Which on-site field to use.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ModelKind {
    /// Independent fields `h_i ∈ [−h, h]`.
    Uniform,
    /// `h cos(2πc n_i + φ)` with `n_i` the 1-based row-major site number.
    /// Only defined in 1D originally; on 2D lattices this is a baseline.
    Quasi1d,
    /// Separable `h [cos(2πc n_i^x + φ′) + cos(2πc n_i^y + φ)]` with row
    /// index `n^x` and column index `n^y`.
    Quasixy,
}

impl ModelKind {
    pub fn as_str(&self) -> &'static str {
        match self {
            ModelKind::Uniform => "uniform",
            ModelKind::Quasi1d => "quasi1d",
            ModelKind::Quasixy => "quasixy",
        }
    }
}

impl fmt::Display for ModelKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for ModelKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "uniform" => Ok(ModelKind::Uniform),
            "quasi1d" => Ok(ModelKind::Quasi1d),
            "quasixy" => Ok(ModelKind::Quasixy),
            other => Err(Error::config(format!(
                "unknown model {other:?} (expected uniform, quasi1d or quasixy)"
            ))),
        }
    }
}

/// One realization of the disorder field.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub enum DisorderModel {
    UniformRandom {
        amplitude: f64,
        fields: Vec<f64>,
    },
    Quasi1d {
        amplitude: f64,
        wavenumber: f64,
        phase: f64,
    },
    QuasiXy {
        amplitude: f64,
        wavenumber: f64,
        /// φ′, attached to the row index.
        phase_row: f64,
        /// φ, attached to the column index.
        phase_col: f64,
    },
}

impl DisorderModel {
    /// Draws a fresh realization. Phases are uniform in `[0, π]`; uniform
    /// fields are uniform in `[−h, h]`.
    pub fn draw<R: Rng + ?Sized>(
        kind: ModelKind,
        amplitude: f64,
        wavenumber: f64,
        n_sites: usize,
        rng: &mut R,
    ) -> Self {
        match kind {
            ModelKind::Uniform => {
                let fields = (0..n_sites)
                    .map(|_| amplitude * (2.0 * rng.random::<f64>() - 1.0))
                    .collect();
                DisorderModel::UniformRandom { amplitude, fields }
            }
            ModelKind::Quasi1d => DisorderModel::Quasi1d {
                amplitude,
                wavenumber,
                phase: PI * rng.random::<f64>(),
            },
            ModelKind::Quasixy => {
                let phase_col = PI * rng.random::<f64>();
                let phase_row = PI * rng.random::<f64>();
                DisorderModel::QuasiXy {
                    amplitude,
                    wavenumber,
                    phase_row,
                    phase_col,
                }
            }
        }
    }

    pub fn kind(&self) -> ModelKind {
        match self {
            DisorderModel::UniformRandom { .. } => ModelKind::Uniform,
            DisorderModel::Quasi1d { .. } => ModelKind::Quasi1d,
            DisorderModel::QuasiXy { .. } => ModelKind::Quasixy,
        }
    }

    pub fn amplitude(&self) -> f64 {
        match *self {
            DisorderModel::UniformRandom { amplitude, .. }
            | DisorderModel::Quasi1d { amplitude, .. }
            | DisorderModel::QuasiXy { amplitude, .. } => amplitude,
        }
    }

    /// Field `f_i` multiplying `S_i^z` at every site.
    pub fn site_fields(&self, spec: &LatticeSpec) -> Result<Vec<f64>> {
        let n = spec.n_sites();
        match self {
            DisorderModel::UniformRandom { fields, .. } => {
                if fields.len() != n {
                    return Err(Error::domain(format!(
                        "uniform model has {} fields for {n} sites",
                        fields.len()
                    )));
                }
                Ok(fields.clone())
            }
            &DisorderModel::Quasi1d {
                amplitude,
                wavenumber,
                phase,
            } => Ok((0..n)
                .map(|i| amplitude * (2.0 * PI * wavenumber * (i + 1) as f64 + phase).cos())
                .collect()),
            &DisorderModel::QuasiXy {
                amplitude,
                wavenumber,
                phase_row,
                phase_col,
            } => (0..n)
                .map(|i| {
                    let (nx, ny) = spec.site_coords(i)?;
                    Ok(amplitude
                        * ((2.0 * PI * wavenumber * nx as f64 + phase_row).cos()
                            + (2.0 * PI * wavenumber * ny as f64 + phase_col).cos()))
                })
                .collect(),
        }
    }
}

/// Real symmetric sparse matrix on one basis block.
///
/// The upper triangle is kept as sorted `(row, col, value)` triplets; a
/// compressed-row copy of both triangles backs [`SparseHamiltonian::matvec`].
#[derive(Debug, Clone)]
pub struct SparseHamiltonian {
    dim: usize,
    triplets: Vec<(usize, usize, f64)>,
    row_ptr: Vec<usize>,
    col_idx: Vec<usize>,
    values: Vec<f64>,
}

impl SparseHamiltonian {
    /// Builds from upper-triangle triplets. Duplicates are summed and a
    /// (possibly zero) diagonal slot is created for every row.
    pub fn from_upper_triplets(dim: usize, mut triplets: Vec<(usize, usize, f64)>) -> Result<Self> {
        if let Some(&(r, c, _)) = triplets.iter().find(|&&(r, c, _)| r > c || c >= dim) {
            return Err(Error::domain(format!(
                "triplet ({r}, {c}) is not in the upper triangle of a {dim}x{dim} matrix"
            )));
        }
        triplets.extend((0..dim).map(|k| (k, k, 0.0)));
        triplets.sort_by_key(|&(r, c, _)| (r, c));
        let mut merged: Vec<(usize, usize, f64)> = Vec::with_capacity(triplets.len());
        for (r, c, v) in triplets {
            match merged.last_mut() {
                Some(last) if last.0 == r && last.1 == c => last.2 += v,
                _ => merged.push((r, c, v)),
            }
        }

        let mut counts = vec![0usize; dim];
        for &(r, c, _) in &merged {
            counts[r] += 1;
            if r != c {
                counts[c] += 1;
            }
        }
        let mut row_ptr = vec![0usize; dim + 1];
        for k in 0..dim {
            row_ptr[k + 1] = row_ptr[k] + counts[k];
        }
        let nnz = row_ptr[dim];
        let mut col_idx = vec![0usize; nnz];
        let mut values = vec![0.0; nnz];
        let mut fill = row_ptr[..dim].to_vec();
        let mut put = |r: usize, c: usize, v: f64| {
            col_idx[fill[r]] = c;
            values[fill[r]] = v;
            fill[r] += 1;
        };
        for &(r, c, v) in &merged {
            put(r, c, v);
            if r != c {
                put(c, r, v);
            }
        }

        Ok(Self {
            dim,
            triplets: merged,
            row_ptr,
            col_idx,
            values,
        })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Upper-triangle entries sorted by `(row, col)`.
    pub fn triplets(&self) -> &[(usize, usize, f64)] {
        &self.triplets
    }

    /// Stored entries in both triangles.
    pub fn nnz(&self) -> usize {
        self.values.len()
    }

    pub fn row_nnz(&self, row: usize) -> usize {
        self.row_ptr[row + 1] - self.row_ptr[row]
    }

    pub fn diagonal(&self) -> Vec<f64> {
        let mut d = vec![0.0; self.dim];
        for &(r, c, v) in &self.triplets {
            if r == c {
                d[r] = v;
            }
        }
        d
    }

    pub fn is_diagonal(&self) -> bool {
        self.triplets.iter().all(|&(r, c, _)| r == c)
    }

    /// Compressed-row view of the full symmetric matrix.
    pub fn csr(&self) -> (&[usize], &[usize], &[f64]) {
        (&self.row_ptr, &self.col_idx, &self.values)
    }

    /// `y = H x`.
    pub fn matvec(&self, x: &[f64], y: &mut [f64]) {
        assert_eq!(x.len(), self.dim);
        assert_eq!(y.len(), self.dim);
        for (r, yr) in y.iter_mut().enumerate() {
            let span = self.row_ptr[r]..self.row_ptr[r + 1];
            *yr = self.col_idx[span.clone()]
                .iter()
                .zip(&self.values[span])
                .map(|(&c, &v)| v * x[c])
                .sum();
        }
    }

    pub fn apply(&self, x: &[f64]) -> Vec<f64> {
        let mut y = vec![0.0; self.dim];
        self.matvec(x, &mut y);
        y
    }

    pub fn to_dense(&self) -> Mat<f64> {
        let mut m = Mat::zeros(self.dim, self.dim);
        for &(r, c, v) in &self.triplets {
            m[(r, c)] = v;
            m[(c, r)] = v;
        }
        m
    }
}

/// Exchange part of the block Hamiltonian as upper-triangle triplets: one
/// diagonal entry `J Σ m_i m_j` per state, and `J/2` between each state and
/// every bond-exchanged partner of higher rank.
pub fn interaction_elements(
    block: &BasisBlock,
    bonds: &[Bond],
    coupling: f64,
) -> Result<Vec<(usize, usize, f64)>> {
    let n = block.n_sites();
    if let Some(b) = bonds.iter().find(|b| b.i >= n || b.j >= n || b.i == b.j) {
        return Err(Error::domain(format!(
            "bond ({}, {}) is invalid for {n} sites",
            b.i, b.j
        )));
    }
    let mut out = Vec::with_capacity(block.len() * (1 + bonds.len() / 2));
    for (k, &state) in block.states().iter().enumerate() {
        let mut diag = 0.0;
        for b in bonds {
            let aligned = is_up(state, b.i, n) == is_up(state, b.j, n);
            diag += if aligned { 0.25 } else { -0.25 };
            if coupling == 0.0 {
                continue;
            }
            if let Some(partner) = flip_pair(state, b.i, b.j, n) {
                let col = block.rank(partner)?;
                if col > k {
                    out.push((k, col, 0.5 * coupling));
                }
            }
        }
        out.push((k, k, coupling * diag));
    }
    Ok(out)
}

/// `Σ_i m_i f_i` for every state of the block.
pub fn disorder_diagonal(block: &BasisBlock, spec: &LatticeSpec, model: &DisorderModel) -> Result<Vec<f64>> {
    let n = spec.n_sites();
    if block.n_sites() != n {
        return Err(Error::domain(format!(
            "block has {} sites but lattice {spec} has {n}",
            block.n_sites()
        )));
    }
    let fields = model.site_fields(spec)?;
    Ok(block
        .states()
        .iter()
        .map(|&s| {
            fields
                .iter()
                .enumerate()
                .map(|(i, f)| if is_up(s, i, n) { 0.5 * f } else { -0.5 * f })
                .sum()
        })
        .collect())
}

pub fn assemble(
    spec: &LatticeSpec,
    block: &BasisBlock,
    coupling: f64,
    model: &DisorderModel,
) -> Result<SparseHamiltonian> {
    if block.n_sites() != spec.n_sites() {
        return Err(Error::domain(format!(
            "block has {} sites but lattice {spec} has {}",
            block.n_sites(),
            spec.n_sites()
        )));
    }
    let mut triplets = interaction_elements(block, &spec.neighbor_pairs(), coupling)?;
    let disorder = disorder_diagonal(block, spec, model)?;
    triplets.extend(disorder.into_iter().enumerate().map(|(k, v)| (k, k, v)));
    SparseHamiltonian::from_upper_triplets(block.len(), triplets)
}
