//! Mean-field degree distribution of energy-weighted local-area growth.
//!
//! A node with energy `E` grows as `k(t) = m (t / t_i)^beta` with
//! `beta = E / (2 E_bar)`, which gives the per-energy density
//! `P(k | E) = (1 / beta) m^(1/beta) k^-(1 + 1/beta)` for `k >= m`. The
//! population density mixes this over the energy distribution:
//! `P(k) = integral of rho(E) P(k | E) dE` over `[e_min, e_max]`.
//!
//! The density is continuous in `k`. Comparisons against integer degree
//! counts use unit-width bins `[k, k + 1)`, whose masses sum to one.

use serde::{Deserialize, Serialize};

use super::quadrature::integrate;
use crate::error::{Error, Result};

/// Relative tolerance used for the energy integral.
pub const QUAD_TOL: f64 = 1e-8;

/// Uniform energy distribution on `[e_min, e_max]` with `m` links per node.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TheoreticalModel {
    pub m: usize,
    pub e_min: f64,
    pub e_max: f64,
}

impl TheoreticalModel {
    pub fn uniform(m: usize, e_min: f64, e_max: f64) -> Result<Self> {
        if m == 0 {
            return Err(Error::Config("m must be >= 1".into()));
        }
        if !(e_min > 0.0 && e_min <= e_max && e_max.is_finite()) {
            return Err(Error::Config(format!(
                "energy bounds must satisfy 0 < e_min <= e_max, got [{e_min}, {e_max}]"
            )));
        }
        Ok(Self { m, e_min, e_max })
    }

    /// Energy density `rho`, constant over the support.
    pub fn rho(&self) -> f64 {
        1.0 / (self.e_max - self.e_min)
    }

    pub fn e_bar(&self) -> f64 {
        0.5 * (self.e_min + self.e_max)
    }

    /// Growth exponent for a node with energy `e`.
    pub fn beta(&self, e: f64) -> f64 {
        e / (2.0 * self.e_bar())
    }

    /// Degree exponent `1 + 1 / beta` for energy `e`.
    pub fn gamma(&self, e: f64) -> f64 {
        1.0 + 1.0 / self.beta(e)
    }

    fn is_constant_energy(&self) -> bool {
        self.e_min == self.e_max
    }

    fn density_given_energy(&self, k: f64, e: f64) -> f64 {
        let inv_beta = 1.0 / self.beta(e);
        inv_beta * (self.m as f64).powf(inv_beta) * k.powf(-(1.0 + inv_beta))
    }

    /// Mass of `[k, k + 1)` for energy `e`, in closed form.
    fn bin_given_energy(&self, k: f64, e: f64) -> f64 {
        let inv_beta = 1.0 / self.beta(e);
        let m = self.m as f64;
        (m / k).powf(inv_beta) - (m / (k + 1.0)).powf(inv_beta)
    }

    fn mix<F: Fn(f64) -> f64>(&self, f: F, tol: f64) -> f64 {
        if self.is_constant_energy() {
            return f(self.e_min);
        }
        let rho = self.rho();
        integrate(|e| rho * f(e), self.e_min, self.e_max, tol)
    }

    fn check_domain(&self, k: usize) -> Result<()> {
        if k < self.m {
            Err(Error::Domain { k, m: self.m })
        } else {
            Ok(())
        }
    }

    /// Degree density `P(k)` at `k >= m`.
    pub fn pk(&self, k: usize) -> Result<f64> {
        self.pk_with_tolerance(k, QUAD_TOL)
    }

    pub fn pk_with_tolerance(&self, k: usize, tol: f64) -> Result<f64> {
        self.check_domain(k)?;
        Ok(self.mix(|e| self.density_given_energy(k as f64, e), tol))
    }

    /// Probability mass of the unit bin `[k, k + 1)`, `k >= m`.
    pub fn bin_mass(&self, k: usize) -> Result<f64> {
        self.check_domain(k)?;
        Ok(self.mix(|e| self.bin_given_energy(k as f64, e), QUAD_TOL))
    }

    /// Unit-bin masses for `k = m..=k_hi`, renormalized to sum to one.
    pub fn binned_pmf(&self, k_hi: usize) -> Result<Vec<f64>> {
        self.check_domain(k_hi)?;
        let raw: Vec<f64> = (self.m..=k_hi)
            .map(|k| self.bin_mass(k))
            .collect::<Result<_>>()?;
        let total: f64 = raw.iter().sum();
        Ok(raw.into_iter().map(|p| p / total).collect())
    }
}

/// Free-function form of [`TheoreticalModel::pk`].
pub fn theoretical_pk(model: &TheoreticalModel, k: usize) -> Result<f64> {
    model.pk(k)
}

/// Kolmogorov-Smirnov distance between an empirical degree pmf (indexed by
/// `k`, from `k = 0`) restricted to `k >= m` and the theoretical unit-bin
/// distribution over the same observed support, both renormalized.
pub fn ks_distance(empirical_pmf: &[f64], model: &TheoreticalModel) -> Result<f64> {
    let m = model.m;
    let k_hi = empirical_pmf
        .iter()
        .rposition(|&p| p > 0.0)
        .filter(|&k| k >= m)
        .ok_or_else(|| Error::Analysis(format!("no empirical mass at degrees >= {m}")))?;
    let tail: f64 = empirical_pmf[m..=k_hi].iter().sum();
    let theory = model.binned_pmf(k_hi)?;
    let mut emp_cdf = 0.0;
    let mut th_cdf = 0.0;
    let mut worst: f64 = 0.0;
    for (i, k) in (m..=k_hi).enumerate() {
        emp_cdf += empirical_pmf[k] / tail;
        th_cdf += theory[i];
        worst = worst.max((emp_cdf - th_cdf).abs());
    }
    Ok(worst)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn constant_energy_collapses_to_cubic_tail() {
        for m in [1usize, 3, 5, 8] {
            let model = TheoreticalModel::uniform(m, 0.75, 0.75).unwrap();
            assert_eq!(model.beta(0.75), 0.5);
            for k in m..m + 50 {
                let expected = 2.0 * (m * m) as f64 / (k as f64).powi(3);
                let got = model.pk(k).unwrap();
                assert!(
                    (got - expected).abs() <= 1e-12 * expected.max(1.0),
                    "m={m} k={k}"
                );
            }
        }
    }

    #[test]
    fn table1_exponents() {
        let model = TheoreticalModel::uniform(3, 0.5, 1.0).unwrap();
        assert!((model.rho() - 2.0).abs() < 1e-15);
        assert!((model.beta(0.5) - 1.0 / 3.0).abs() < 1e-15);
        assert!((model.beta(1.0) - 2.0 / 3.0).abs() < 1e-15);
        assert!((model.gamma(1.0) - 2.5).abs() < 1e-12);
        assert!((model.gamma(0.5) - 4.0).abs() < 1e-12);
    }

    #[test]
    fn domain_error_below_m() {
        let model = TheoreticalModel::uniform(3, 0.5, 1.0).unwrap();
        assert_eq!(model.pk(2), Err(Error::Domain { k: 2, m: 3 }));
        assert!(TheoreticalModel::uniform(3, 1.0, 0.5).is_err());
        assert!(TheoreticalModel::uniform(0, 0.5, 1.0).is_err());
    }

    #[test]
    fn density_matches_energy_average_of_power_laws() {
        // midpoint-rule oracle over 20_000 energy slices
        let model = TheoreticalModel::uniform(5, 0.5, 1.0).unwrap();
        for k in [5usize, 9, 40, 300] {
            let slices = 20_000;
            let h = 0.5 / slices as f64;
            let oracle: f64 = (0..slices)
                .map(|i| {
                    let e = 0.5 + (i as f64 + 0.5) * h;
                    let b = e / 1.5;
                    2.0 * h * (1.0 / b) * 5f64.powf(1.0 / b) * (k as f64).powf(-(1.0 + 1.0 / b))
                })
                .sum();
            let got = model.pk(k).unwrap();
            assert!(
                ((got - oracle) / oracle).abs() < 1e-7,
                "k={k}: {got} vs {oracle}"
            );
        }
    }

    #[test]
    fn bin_masses_telescope() {
        let model = TheoreticalModel::uniform(3, 0.5, 1.0).unwrap();
        let total: f64 = (3..2000).map(|k| model.bin_mass(k).unwrap()).sum();
        // remaining tail beyond 2000 is below (3/2000)^1.5
        assert!((total - 1.0).abs() < 1e-4, "{total}");
        let pmf = model.binned_pmf(60).unwrap();
        assert!((pmf.iter().sum::<f64>() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn ks_of_theory_against_itself_is_zero() {
        let model = TheoreticalModel::uniform(3, 0.5, 1.0).unwrap();
        let mut pmf = vec![0.2, 0.1, 0.05];
        pmf.extend(model.binned_pmf(40).unwrap().iter().map(|p| p * 0.65));
        assert!(ks_distance(&pmf, &model).unwrap() < 1e-12);
        assert!(ks_distance(&[0.5, 0.5], &model).is_err());
    }

    #[test]
    fn ks_of_point_mass() {
        let model = TheoreticalModel::uniform(3, 0.75, 0.75).unwrap();
        let pmf = vec![0.0, 0.0, 0.0, 1.0];
        // support {3}: both renormalize to a point mass
        assert!(ks_distance(&pmf, &model).unwrap() < 1e-15);
        let pmf = vec![0.0, 0.0, 0.0, 0.0, 1.0];
        let d = ks_distance(&pmf, &model).unwrap();
        let th = model.binned_pmf(4).unwrap();
        assert!((d - th[0]).abs() < 1e-15);
    }
}
