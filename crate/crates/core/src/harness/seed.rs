/// splitmix64 finalizer.
pub fn splitmix64(x: u64) -> u64 {
    let mut z = x.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Seed of realization `k` at grid point `h_index`.
pub fn derive_seed(master_seed: u64, h_index: usize, k: usize) -> u64 {
    let a = splitmix64(master_seed);
    let b = splitmix64(a ^ splitmix64(h_index as u64 ^ 0x5EED_0000_0000_0000));
    splitmix64(b ^ (k as u64).wrapping_mul(0xD134_2543_DE82_EF95))
}
