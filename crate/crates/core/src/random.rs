//! Seeded sampling helpers shared by searches and tests.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::scalar::{Scalar, Q};

pub type SeededRng = ChaCha8Rng;

pub fn rng(seed: u64) -> SeededRng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Small random rational `p/q` with `|p| <= num`, `1 <= q <= den`.
pub fn small_q(rng: &mut impl Rng, num: i64, den: i64) -> Q {
    crate::scalar::q(rng.gen_range(-num..=num), rng.gen_range(1..=den))
}

pub fn small_vec<F: Scalar>(rng: &mut impl Rng, n: usize) -> Vec<F> {
    (0..n).map(|_| F::from_q(&small_q(rng, 5, 4))).collect()
}

pub fn gauss_vec(rng: &mut impl Rng, n: usize) -> Vec<f64> {
    (0..n).map(|_| gauss(rng)).collect()
}

/// Standard normal via Box-Muller.
pub fn gauss(rng: &mut impl Rng) -> f64 {
    let u: f64 = rng.gen_range(f64::EPSILON..1.0);
    let v: f64 = rng.gen();
    (-2.0 * u.ln()).sqrt() * (std::f64::consts::TAU * v).cos()
}
