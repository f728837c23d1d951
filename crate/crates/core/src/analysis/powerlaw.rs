//! Discrete maximum-likelihood fit of `P(k) ∝ k^-gamma` for `k >= k_min`.

use serde::Serialize;

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct PowerLawFit {
    pub gamma: f64,
    pub stderr: f64,
    pub k_min: usize,
    pub samples: usize,
}

const BERNOULLI: [f64; 7] = [
    1.0 / 6.0,
    -1.0 / 30.0,
    1.0 / 42.0,
    -1.0 / 30.0,
    5.0 / 66.0,
    -691.0 / 2730.0,
    7.0 / 6.0,
];

/// Hurwitz zeta `sum_{j >= 0} (q + j)^-s` for `s > 1`, `q > 0`, by
/// Euler-Maclaurin summation after 16 explicit terms.
pub fn hurwitz_zeta(s: f64, q: f64) -> f64 {
    const DIRECT: usize = 16;
    let mut sum: f64 = (0..DIRECT).map(|j| (q + j as f64).powf(-s)).sum();
    let a = q + DIRECT as f64;
    sum += a.powf(1.0 - s) / (s - 1.0) + 0.5 * a.powf(-s);
    // B_2i / (2i)! * s (s+1) ... (s+2i-2) * a^(-s-2i+1)
    let mut rising = s;
    let mut fact = 2.0;
    let mut power = a.powf(-s - 1.0);
    for (i, b) in BERNOULLI.iter().enumerate() {
        sum += b / fact * rising * power;
        let j = 2 * i as i32 + 2;
        rising *= (s + j as f64 - 1.0) * (s + j as f64);
        fact *= (j + 1) as f64 * (j + 2) as f64;
        power /= a * a;
    }
    sum
}

fn neg_log_likelihood(gamma: f64, n: f64, sum_ln: f64, k_min: f64) -> f64 {
    gamma * sum_ln + n * hurwitz_zeta(gamma, k_min).ln()
}

/// Fits the exponent from a degree sample, using only values `>= k_min`.
pub fn fit_power_law(samples: &[usize], k_min: usize) -> Result<PowerLawFit> {
    if k_min == 0 {
        return Err(Error::Config("k_min must be >= 1".into()));
    }
    let tail: Vec<f64> = samples
        .iter()
        .filter(|&&k| k >= k_min)
        .map(|&k| k as f64)
        .collect();
    let distinct = tail.iter().any(|&k| k != tail[0]);
    if tail.len() < 2 || !distinct {
        return Err(Error::Fit {
            samples: tail.len(),
        });
    }
    let n = tail.len() as f64;
    let sum_ln: f64 = tail.iter().map(|k| k.ln()).sum();
    let q = k_min as f64;
    let nll = |g: f64| neg_log_likelihood(g, n, sum_ln, q);

    // golden-section search; the likelihood is log-concave in gamma
    let (mut lo, mut hi) = (1.0 + 1e-6, 20.0);
    let ratio = 0.5 * (5f64.sqrt() - 1.0);
    let mut x1 = hi - ratio * (hi - lo);
    let mut x2 = lo + ratio * (hi - lo);
    let (mut f1, mut f2) = (nll(x1), nll(x2));
    while hi - lo > 1e-10 {
        if f1 < f2 {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - ratio * (hi - lo);
            f1 = nll(x1);
        } else {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + ratio * (hi - lo);
            f2 = nll(x2);
        }
    }
    let gamma = 0.5 * (lo + hi);

    // Fisher information per sample is the second derivative of ln zeta
    let h = 1e-4;
    let lz = |g: f64| hurwitz_zeta(g, q).ln();
    let curvature = (lz(gamma + h) - 2.0 * lz(gamma) + lz(gamma - h)) / (h * h);
    let stderr = 1.0 / (n * curvature).sqrt();
    Ok(PowerLawFit {
        gamma,
        stderr,
        k_min,
        samples: tail.len(),
    })
}
