//! Fixed-magnetization bitmask bases.
//!
//! A state of `n` spins is an `n`-bit mask; a set bit is spin up
//! (`m = +½`). Site 0 is the most significant of the `n` bits, so the
//! integer value of a mask is its position in the full `2^n` tensor-product
//! basis with site 0 as the leftmost factor. Within a block states are kept
//! in strictly decreasing integer order (`|1100⟩` before `|0011⟩`).

use std::collections::HashMap;

use crate::{Error, Result};

/// Bitmask for a configuration of up to [`MAX_SITES`] spins.
pub type Mask = u32;

pub const MAX_SITES: usize = 24;

/// Bit of `mask` that stores site `site` in an `n_sites` system.
#[inline]
pub fn site_bit(site: usize, n_sites: usize) -> Mask {
    1 << (n_sites - 1 - site)
}

/// Whether the spin at `site` is up.
#[inline]
pub fn is_up(mask: Mask, site: usize, n_sites: usize) -> bool {
    mask & site_bit(site, n_sites) != 0
}

/// `|…⟩`-style bit string with site 0 first.
pub fn format_state(mask: Mask, n_sites: usize) -> String {
    (0..n_sites)
        .map(|s| if is_up(mask, s, n_sites) { '1' } else { '0' })
        .collect()
}

/// Parses a bit string written site 0 first.
pub fn parse_state(bits: &str) -> Result<Mask> {
    if bits.is_empty() || bits.len() > MAX_SITES {
        return Err(Error::domain(format!("bad state string {bits:?}")));
    }
    Mask::from_str_radix(bits, 2).map_err(|_| Error::domain(format!("bad state string {bits:?}")))
}

/// Smallest-|Sz| choice of up-spin count: `n/2` for even `n`, `⌈n/2⌉`
/// (total `Sz = +½`) for odd `n`.
pub fn default_n_up(n_sites: usize) -> usize {
    n_sites.div_ceil(2)
}

#[derive(Debug, Clone)]
pub struct BasisBlock {
    n_sites: usize,
    n_up: usize,
    states: Vec<Mask>,
    rank_index: HashMap<Mask, usize>,
}

impl BasisBlock {
    /// All `n_sites`-bit masks with `n_up` set bits, in decreasing order.
    pub fn enumerate(n_sites: usize, n_up: usize) -> Result<Self> {
        if n_sites == 0 || n_sites > MAX_SITES {
            return Err(Error::domain(format!(
                "n_sites must be in 1..={MAX_SITES}, got {n_sites}"
            )));
        }
        if n_up > n_sites {
            return Err(Error::domain(format!(
                "n_up = {n_up} exceeds n_sites = {n_sites}"
            )));
        }
        let mut states = Vec::with_capacity(binomial(n_sites, n_up));
        if n_up == 0 {
            states.push(0);
        } else {
            // Gosper's hack walks the fixed-weight masks in increasing order.
            let limit: u64 = 1 << n_sites;
            let mut v: u64 = (1 << n_up) - 1;
            while v < limit {
                states.push(v as Mask);
                let t = v | (v - 1);
                v = (t + 1) | (((!t & (t + 1)) - 1) >> (v.trailing_zeros() + 1));
            }
        }
        states.reverse();
        let rank_index = states.iter().enumerate().map(|(k, &s)| (s, k)).collect();
        Ok(Self {
            n_sites,
            n_up,
            states,
            rank_index,
        })
    }

    pub fn n_sites(&self) -> usize {
        self.n_sites
    }

    pub fn n_up(&self) -> usize {
        self.n_up
    }

    pub fn len(&self) -> usize {
        self.states.len()
    }

    pub fn is_empty(&self) -> bool {
        self.states.is_empty()
    }

    pub fn states(&self) -> &[Mask] {
        &self.states
    }

    pub fn unrank(&self, k: usize) -> Option<Mask> {
        self.states.get(k).copied()
    }

    /// Position of `state` in the block.
    pub fn rank(&self, state: Mask) -> Result<usize> {
        if state.count_ones() as usize != self.n_up || (state >> self.n_sites) != 0 {
            return Err(Error::domain(format!(
                "state {} is not in the ({}, {}) block",
                format_state(state, self.n_sites),
                self.n_sites,
                self.n_up
            )));
        }
        Ok(self.rank_index[&state])
    }

    /// Embeds a block vector into the full `2^n` space.
    pub fn expand_to_full(&self, block_vector: &[f64]) -> Result<Vec<f64>> {
        if block_vector.len() != self.len() {
            return Err(Error::domain(format!(
                "vector of length {} does not match block size {}",
                block_vector.len(),
                self.len()
            )));
        }
        let mut full = vec![0.0; 1 << self.n_sites];
        for (&s, &x) in self.states.iter().zip(block_vector) {
            full[s as usize] = x;
        }
        Ok(full)
    }
}

/// Exchanges the spins at `i` and `j` when they differ; `None` when they are
/// parallel (the flip-flop term annihilates the state).
#[inline]
pub fn flip_pair(state: Mask, i: usize, j: usize, n_sites: usize) -> Option<Mask> {
    let bi = site_bit(i, n_sites);
    let bj = site_bit(j, n_sites);
    let differ = ((state & bi) != 0) != ((state & bj) != 0);
    differ.then_some(state ^ bi ^ bj)
}

pub fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1usize, |acc, i| acc * (n - i) / (i + 1))
}
