//! Shared helpers for the integration suites: seeded random filters built
//! from pole placements, and random signals.

use rand::Rng;
use rand_chacha::ChaCha8Rng;

use sheafilt::{FilterCoefficients, Signal};

/// Multiplies two polynomials given by descending-power coefficient lists.
pub fn poly_mul(p: &[f64], q: &[f64]) -> Vec<f64> {
    let mut out = vec![0.0; p.len() + q.len() - 1];
    for (i, pi) in p.iter().enumerate() {
        for (j, qj) in q.iter().enumerate() {
            out[i + j] += pi * qj;
        }
    }
    out
}

/// Samples a radius uniformly by area over the annulus [r_min, r_max].
fn sample_radius(rng: &mut ChaCha8Rng, r_min: f64, r_max: f64) -> f64 {
    let u: f64 = rng.random_range(0.0..1.0);
    (u * (r_max * r_max - r_min * r_min) + r_min * r_min).sqrt()
}

/// Draws feedback coefficients a1..aN whose characteristic polynomial has
/// all roots (real, or conjugate pairs) with |z| in [r_min, r_max].
pub fn random_feedback(rng: &mut ChaCha8Rng, n: usize, r_min: f64, r_max: f64) -> Vec<f64> {
    let mut poly = vec![1.0];
    let mut remaining = n;
    while remaining > 0 {
        if remaining >= 2 && rng.random_bool(0.5) {
            let r = sample_radius(rng, r_min, r_max);
            let theta: f64 = rng.random_range(0.0..std::f64::consts::PI);
            poly = poly_mul(&poly, &[1.0, -2.0 * r * theta.cos(), r * r]);
            remaining -= 2;
        } else {
            let r = sample_radius(rng, r_min, r_max);
            let p = if rng.random_bool(0.5) { r } else { -r };
            poly = poly_mul(&poly, &[1.0, -p]);
            remaining -= 1;
        }
    }
    poly[1..].to_vec()
}

/// A random pole-zero filter of order `n`: b uniform in [-1, 1], poles in
/// the annulus [r_min, r_max].
pub fn random_filter(rng: &mut ChaCha8Rng, n: usize, r_min: f64, r_max: f64) -> FilterCoefficients {
    let b: Vec<f64> = (0..=n).map(|_| rng.random_range(-1.0..1.0)).collect();
    let a = random_feedback(rng, n, r_min, r_max);
    FilterCoefficients::new(&b, &a).expect("finite random coefficients")
}

/// A random signal with samples uniform in [-1, 1].
pub fn random_signal(rng: &mut ChaCha8Rng, len: usize) -> Signal {
    Signal::new((0..len).map(|_| rng.random_range(-1.0..1.0)).collect()).expect("finite samples")
}
