//! Open-boundary rectangular lattices.
//!
//! Sites are numbered row-major from 0. Coordinates handed out by
//! [`LatticeSpec::site_coords`] are 1-based `(row, col)` pairs, which is the
//! convention the quasi-periodic disorder fields are written in.

use serde::{Deserialize, Serialize};

use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct LatticeSpec {
    n_rows: usize,
    n_cols: usize,
}

/// A nearest-neighbour pair with `i < j`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Bond {
    pub i: usize,
    pub j: usize,
}

impl LatticeSpec {
    pub fn new(n_rows: usize, n_cols: usize) -> Result<Self> {
        if n_rows == 0 || n_cols == 0 {
            return Err(Error::domain(format!(
                "lattice dimensions must be positive, got {n_rows}x{n_cols}"
            )));
        }
        Ok(Self { n_rows, n_cols })
    }

    pub fn n_rows(&self) -> usize {
        self.n_rows
    }

    pub fn n_cols(&self) -> usize {
        self.n_cols
    }

    pub fn n_sites(&self) -> usize {
        self.n_rows * self.n_cols
    }

    /// `n_rows·(n_cols−1) + n_cols·(n_rows−1)`.
    pub fn bond_count(&self) -> usize {
        self.n_rows * (self.n_cols - 1) + self.n_cols * (self.n_rows - 1)
    }

    /// Row-major 0-based index of the 1-based coordinate `(row, col)`.
    pub fn site_index(&self, row: usize, col: usize) -> Result<usize> {
        if row == 0 || row > self.n_rows || col == 0 || col > self.n_cols {
            return Err(Error::domain(format!(
                "coordinate ({row}, {col}) outside {}x{} lattice",
                self.n_rows, self.n_cols
            )));
        }
        Ok((row - 1) * self.n_cols + (col - 1))
    }

    /// 1-based `(row, col)` of a site; the row is `n^x` and the column `n^y`
    /// in the separable field.
    pub fn site_coords(&self, index: usize) -> Result<(usize, usize)> {
        if index >= self.n_sites() {
            return Err(Error::domain(format!(
                "site {index} outside lattice of {} sites",
                self.n_sites()
            )));
        }
        Ok((index / self.n_cols + 1, index % self.n_cols + 1))
    }

    /// Nearest-neighbour bonds, each once, sorted lexicographically.
    pub fn neighbor_pairs(&self) -> Vec<Bond> {
        let mut bonds = Vec::with_capacity(self.bond_count());
        for r in 0..self.n_rows {
            for c in 0..self.n_cols {
                let i = r * self.n_cols + c;
                if c + 1 < self.n_cols {
                    bonds.push(Bond { i, j: i + 1 });
                }
                if r + 1 < self.n_rows {
                    bonds.push(Bond {
                        i,
                        j: i + self.n_cols,
                    });
                }
            }
        }
        bonds.sort_unstable();
        bonds
    }
}

impl std::fmt::Display for LatticeSpec {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}x{}", self.n_rows, self.n_cols)
    }
}
