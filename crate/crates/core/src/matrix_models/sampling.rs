//! Seeded Gaussian ensembles.
//!
//! Every sample index owns its own ChaCha8 stream, so a sample's matrices
//! depend only on `(seed, index, attempt)` and never on scheduling.

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use super::matrix::ComplexMatrix;

/// RNG for sample `index`; `attempt > 0` selects a fresh stream after a
/// rejected sample.
pub fn sample_rng(seed: u64, index: u64, attempt: u32) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(u64::from(attempt) << 32 | index);
    rng
}

/// Standard complex Gaussian: real and imaginary parts independent `N(0, 1/2)`.
pub fn complex_gaussian<R: Rng + ?Sized>(rng: &mut R) -> Complex64 {
    let re: f64 = rng.sample(StandardNormal);
    let im: f64 = rng.sample(StandardNormal);
    Complex64::new(re, im) * std::f64::consts::FRAC_1_SQRT_2
}

/// `rows × cols` matrix of i.i.d. standard complex Gaussians.
pub fn sample_ginibre<R: Rng + ?Sized>(rows: usize, cols: usize, rng: &mut R) -> ComplexMatrix {
    ComplexMatrix::from_fn(rows, cols, |_, _| complex_gaussian(rng))
}

/// `(G + G*) / √2` for a `d × d` Ginibre `G` (unnormalized GUE).
pub fn sample_gue<R: Rng + ?Sized>(d: usize, rng: &mut R) -> ComplexMatrix {
    let g = sample_ginibre(d, d, rng);
    (&g + &g.adjoint()).scale_real(std::f64::consts::FRAC_1_SQRT_2)
}

/// `W = GG*` with `G` a `d × s` Ginibre matrix.
pub fn sample_wishart<R: Rng + ?Sized>(d: usize, s: usize, rng: &mut R) -> ComplexMatrix {
    let g = sample_ginibre(d, s, rng);
    &g * &g.adjoint()
}
