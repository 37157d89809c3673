//! Exact diagonalization toolkit for many-body localization in 2D spin-½
//! Heisenberg lattices.
//!
//! The pipeline is:
//!
//! 1. [`lattice`] describes an open rectangular lattice and its bonds.
//! 2. [`basis`] enumerates a fixed-magnetization block of bitmask states.
//! 3. [`hamiltonian`] assembles the sparse block Hamiltonian for one of the
//!    three disorder fields.
//! 4. [`eigensolve`] extracts the eigenpairs closest to a target energy
//!    density, densely for small blocks and by shift-invert otherwise.
//! 5. [`entanglement`] and [`levelstats`] turn eigenpairs into entanglement
//!    entropies, gap ratios and Brody fits.
//! 6. [`harness`] runs reproducible disorder sweeps and writes the results.
//!
//! [`degeneracy`] analyses the exact degeneracies of the separable
//! row/column field independently of any eigensolve.

pub mod basis;
pub mod degeneracy;
pub mod eigensolve;
pub mod entanglement;
mod error;
pub mod hamiltonian;
pub mod harness;
pub mod lattice;
pub mod levelstats;
pub mod parallel;

pub use error::{Error, Result};
