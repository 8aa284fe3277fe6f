//! Deterministic random sampling used by searches and property checks.
//!
//! All randomness flows through a counter-based ChaCha8 generator seeded from
//! a `u64`, so every computation in the crate is reproducible from its seed
//! alone, independent of platform or thread count.

use alloc::vec::Vec;

#[cfg(not(feature = "std"))]
use num_traits::Float;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::matrix::{Complex64, ComplexMatrix};

/// The crate's deterministic generator.
pub fn seeded_rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Standard normal via Box-Muller.
pub fn standard_normal<R: Rng>(rng: &mut R) -> f64 {
    // 1 - u lies in (0, 1], keeping the logarithm finite.
    let u1: f64 = 1.0 - rng.gen::<f64>();
    let u2: f64 = rng.gen();
    (-2.0 * u1.ln()).sqrt() * (core::f64::consts::TAU * u2).cos()
}

/// Standard complex Gaussian (independent N(0, 1) real and imaginary parts).
pub fn complex_gaussian<R: Rng>(rng: &mut R) -> Complex64 {
    Complex64::new(standard_normal(rng), standard_normal(rng))
}

/// Heavy-tailed complex sample: each part is standard Cauchy (a ratio of
/// independent normals). Used to probe homogeneity and triangle-inequality
/// checks far from the Gaussian bulk.
pub fn complex_cauchy<R: Rng>(rng: &mut R) -> Complex64 {
    Complex64::new(standard_cauchy(rng), standard_cauchy(rng))
}

fn standard_cauchy<R: Rng>(rng: &mut R) -> f64 {
    loop {
        let d = standard_normal(rng);
        if d.abs() > 1e-12 {
            return standard_normal(rng) / d;
        }
    }
}

/// Matrix with independent standard complex Gaussian entries.
pub fn gaussian_matrix<R: Rng>(rng: &mut R, rows: usize, cols: usize) -> ComplexMatrix {
    let mut m = ComplexMatrix::zeros(rows, cols);
    for i in 0..rows {
        for j in 0..cols {
            m.set(i, j, complex_gaussian(rng));
        }
    }
    m
}

/// Random Hermitian matrix `(G + G*) / 2` with Gaussian `G`.
pub fn gaussian_hermitian<R: Rng>(rng: &mut R, n: usize) -> ComplexMatrix {
    let g = gaussian_matrix(rng, n, n);
    g.add(&g.dagger())
        .expect("square shapes agree")
        .scale(Complex64::new(0.5, 0.0))
}

/// Gaussian unit vector in `C^n`.
pub fn gaussian_unit_vector<R: Rng>(rng: &mut R, n: usize) -> Vec<Complex64> {
    loop {
        let v: Vec<Complex64> = (0..n).map(|_| complex_gaussian(rng)).collect();
        let norm = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        if norm > 1e-6 {
            return v.iter().map(|&z| z / norm).collect();
        }
    }
}
