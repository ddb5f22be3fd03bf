//! Seeded sampling of integer points and the Schwartz-Zippel bookkeeping
//! attached to every probabilistic check.
//!
//! All randomness flows from one master seed. A check that needs its own
//! stream calls [`derive_seed`] with a fixed stream number, so any check can
//! be re-run in isolation with the same draws.

use num_bigint::BigInt;
use num_traits::Pow;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::exactcore::{int, Rat};

/// Coordinates are drawn uniformly from `[-DEFAULT_BOUND, DEFAULT_BOUND]`.
pub const DEFAULT_BOUND: i64 = 10_000;

pub type SeededRng = ChaCha8Rng;

fn splitmix64(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Seed for stream `stream` under master seed `seed`:
/// `splitmix64(seed + stream * 0x9E3779B97F4A7C15)`.
pub fn derive_seed(seed: u64, stream: u64) -> u64 {
    splitmix64(seed.wrapping_add(stream.wrapping_mul(0x9E37_79B9_7F4A_7C15)))
}

pub fn rng(seed: u64) -> SeededRng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn random_int(rng: &mut SeededRng, bound: i64) -> Rat {
    int(rng.gen_range(-bound..=bound))
}

pub fn random_vector(rng: &mut SeededRng, len: usize, bound: i64) -> Vec<Rat> {
    (0..len).map(|_| random_int(rng, bound)).collect()
}

/// Random vector supported on the given coordinates, zero elsewhere.
pub fn random_supported(rng: &mut SeededRng, len: usize, support: &[usize], bound: i64) -> Vec<Rat> {
    let mut v = vec![Rat::default(); len];
    for &i in support {
        v[i] = random_int(rng, bound);
    }
    v
}

/// Schwartz-Zippel failure bound `(degree / (2B+1))^trials` for a claim
/// that a polynomial of the given degree vanishes identically because it
/// vanished at `trials` independent uniform points.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SzBound {
    pub degree: u64,
    pub sample_size: u64,
    pub trials: u64,
}

impl SzBound {
    pub fn new(degree: usize, bound: i64, trials: usize) -> Self {
        Self {
            degree: degree as u64,
            sample_size: 2 * bound as u64 + 1,
            trials: trials as u64,
        }
    }

    pub fn expr(&self) -> String {
        format!("({}/{})^{}", self.degree, self.sample_size, self.trials)
    }

    /// Exact comparison `degree^trials * 2^30 < sample_size^trials`.
    pub fn below_2_pow_30(&self) -> bool {
        let t = self.trials as u32;
        let lhs = Pow::pow(BigInt::from(self.degree), t) * Pow::pow(BigInt::from(2u32), 30u32);
        let rhs = Pow::pow(BigInt::from(self.sample_size), t);
        lhs < rhs
    }
}
