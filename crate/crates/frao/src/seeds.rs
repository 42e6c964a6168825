//! Seed derivation for reproducible, parallelizable randomness.
//!
//! Every random stream in the crate is keyed by an explicit 64-bit seed
//! derived from a study seed, so serial and parallel executions produce
//! identical results.

/// SplitMix64 output function.
fn splitmix64(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Derives an independent stream seed from a base seed and a salt.
pub fn derive(base: u64, salt: u64) -> u64 {
    splitmix64(base ^ salt.wrapping_mul(0x9E37_79B9_7F4A_7C15))
}

/// Stream seed for the baseline draws of input `index` (base seed XOR index).
pub fn input_stream(study_seed: u64, index: usize) -> u64 {
    study_seed ^ index as u64
}

/// Salt for the bootstrap stream of one (input, delta, extreme) cell.
pub fn bootstrap_salt(input_index: usize, delta_index: usize, maximizing: bool) -> u64 {
    0x0B00_0000_0000_0000
        | (input_index as u64) << 32
        | (delta_index as u64) << 8
        | maximizing as u64
}
