//! Seeded point sweeps. Points are drawn sequentially from the seed and evaluated
//! in parallel; results keep input order, so reports are reproducible.

use rand::{RngExt, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::maps::equivariance_residual_with;
use super::{contact_factor_residual, BasePoint, ContactMap, Embedding, ProductPoint};
use crate::morse_bott::LensData;

/// Uniform points in `[-1, 1]^{4n+3}`.
pub fn random_product_points(n: usize, count: usize, seed: u64) -> Vec<ProductPoint> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| {
            let v: Vec<f64> = (0..4 * n + 3).map(|_| rng.random_range(-1.0..=1.0)).collect();
            ProductPoint::from_slice(n, &v)
        })
        .collect()
}

/// Uniform points in `[-half_width, half_width]^{2n+1}`.
pub fn random_base_points(n: usize, count: usize, seed: u64, half_width: f64) -> Vec<BasePoint> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| {
            let v: Vec<f64> = (0..2 * n + 1).map(|_| rng.random_range(-half_width..=half_width)).collect();
            BasePoint::from_slice(n, &v)
        })
        .collect()
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ResidualReport {
    pub point: Vec<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub lambda: Option<f64>,
    pub residual: f64,
    pub tolerance: f64,
    pub pass: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SweepReport {
    pub check: String,
    pub map: String,
    pub points: usize,
    pub seed: u64,
    pub max_residual: f64,
    pub tolerance: f64,
    pub pass: bool,
    pub worst: ResidualReport,
}

fn summarize(check: &str, map: &str, seed: u64, tolerance: f64, reports: Vec<ResidualReport>) -> SweepReport {
    let worst = reports
        .iter()
        .max_by(|a, b| a.residual.total_cmp(&b.residual))
        .cloned()
        .expect("sweeps use at least one point");
    SweepReport {
        check: check.into(),
        map: map.into(),
        points: reports.len(),
        seed,
        max_residual: worst.residual,
        tolerance,
        pass: reports.iter().all(|r| r.pass),
        worst,
    }
}

/// Contact-factor residuals of `embedding` at seeded random points.
pub fn contact_sweep(embedding: Embedding, n: usize, count: usize, seed: u64, h: f64, tolerance: f64) -> SweepReport {
    let reports = random_product_points(n, count, seed)
        .par_iter()
        .map(|pt| {
            let fit = contact_factor_residual(embedding, pt, h);
            ResidualReport {
                point: pt.to_vec(),
                lambda: Some(fit.lambda),
                residual: fit.residual,
                tolerance,
                pass: fit.residual <= tolerance && fit.lambda.abs() > tolerance,
            }
        })
        .collect();
    summarize("contact", embedding.name(), seed, tolerance, reports)
}

/// `|gamma(tau q) - tau gamma(q)|` at seeded random points of `[-1/2, 1/2]^{2n+1}`.
pub fn equivariance_sweep(
    phi: &dyn ContactMap,
    embedding: Embedding,
    lens: &LensData,
    count: usize,
    seed: u64,
    tolerance: f64,
) -> SweepReport {
    let reports = random_base_points(lens.n(), count, seed, 0.5)
        .par_iter()
        .map(|q| {
            let residual = equivariance_residual_with(embedding, phi, lens, q);
            ResidualReport { point: q.to_vec(), lambda: None, residual, tolerance, pass: residual <= tolerance }
        })
        .collect();
    summarize("equivariance", embedding.name(), seed, tolerance, reports)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn seeded_points_are_reproducible() {
        assert_eq!(random_product_points(2, 5, 7), random_product_points(2, 5, 7));
        assert_ne!(random_product_points(2, 5, 7), random_product_points(2, 5, 8));
        assert!(random_base_points(1, 50, 3, 0.5).iter().all(|q| q.to_vec().iter().all(|v| v.abs() <= 0.5)));
    }

    #[test]
    fn sweep_passes_for_sigma_and_fails_when_corrupted() {
        assert!(contact_sweep(Embedding::Sigma, 1, 50, 1, 1e-5, 1e-6).pass);
        let bad = contact_sweep(Embedding::CorruptedSigma, 1, 50, 1, 1e-5, 1e-6);
        assert!(!bad.pass && bad.max_residual > 1e-3);
    }
}
