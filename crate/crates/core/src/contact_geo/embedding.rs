//! Embeddings of the product into `J^1 R^{2n+1}` and the finite-difference test
//! that they pull `du - p dq` back to a multiple of a contact form on the source.

use serde::{Deserialize, Serialize};

use super::{dot, JetPoint, ProductPoint};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Embedding {
    /// The symmetric embedding, mapping the diagonal to the zero section.
    Sigma,
    /// `(x, Y, z, Y - e^theta y, x - X, e^theta - 1, x.Y - X.Y + Z - z)`.
    Bhupal,
    /// `Sigma` with `e^{theta/2}` dropped from the first coordinate; a negative control.
    CorruptedSigma,
}

impl Embedding {
    pub fn name(&self) -> &'static str {
        match self {
            Embedding::Sigma => "sigma",
            Embedding::Bhupal => "bhupal",
            Embedding::CorruptedSigma => "corrupted-sigma",
        }
    }

    pub fn apply(&self, pt: &ProductPoint) -> JetPoint {
        match self {
            Embedding::Sigma => sigma_with(pt, false),
            Embedding::CorruptedSigma => sigma_with(pt, true),
            Embedding::Bhupal => bhupal(pt),
        }
    }

    /// Coefficients, in source coordinate order, of the contact form the embedding
    /// is expected to pull back. `Sigma` uses the symmetric form
    /// `e^theta (dz - (y dx - x dy)/2) - (dZ - (Y dX - X dY)/2)`; `Bhupal` uses
    /// `e^theta (dz - y dx) - (dZ - Y dX)`.
    pub fn source_form(&self, pt: &ProductPoint) -> Vec<f64> {
        let e = pt.theta.exp();
        let mut form = Vec::with_capacity(4 * pt.n() + 3);
        match self {
            Embedding::Sigma | Embedding::CorruptedSigma => {
                form.extend(pt.y.iter().map(|y| -e * y / 2.0));
                form.extend(pt.x.iter().map(|x| e * x / 2.0));
                form.push(e);
                form.extend(pt.big_y.iter().map(|y| y / 2.0));
                form.extend(pt.big_x.iter().map(|x| -x / 2.0));
            }
            Embedding::Bhupal => {
                form.extend(pt.y.iter().map(|y| -e * y));
                form.extend(std::iter::repeat_n(0.0, pt.n()));
                form.push(e);
                form.extend(pt.big_y.iter().copied());
                form.extend(std::iter::repeat_n(0.0, pt.n()));
            }
        }
        form.push(-1.0);
        form.push(0.0);
        form
    }
}

fn sigma_with(pt: &ProductPoint, corrupt: bool) -> JetPoint {
    let n = pt.n();
    let e = (pt.theta / 2.0).exp();
    let mut q = Vec::with_capacity(2 * n + 1);
    let mut p = Vec::with_capacity(2 * n + 1);
    for i in 0..n {
        let scale = if corrupt && i == 0 { 1.0 } else { e };
        q.push((scale * pt.x[i] + pt.big_x[i]) / 2.0);
    }
    q.extend(pt.y.iter().zip(&pt.big_y).map(|(y, yy)| (e * y + yy) / 2.0));
    q.push(pt.z);
    p.extend(pt.y.iter().zip(&pt.big_y).map(|(y, yy)| yy - e * y));
    p.extend(pt.x.iter().zip(&pt.big_x).map(|(x, xx)| e * x - xx));
    p.push(pt.theta.exp() - 1.0);
    let u = pt.big_z - pt.z + e * (dot(&pt.x, &pt.big_y) - dot(&pt.y, &pt.big_x)) / 2.0;
    JetPoint { q, p, u }
}

fn bhupal(pt: &ProductPoint) -> JetPoint {
    let e = pt.theta.exp();
    let mut q = pt.x.clone();
    q.extend(&pt.big_y);
    q.push(pt.z);
    let mut p: Vec<f64> = pt.big_y.iter().zip(&pt.y).map(|(yy, y)| yy - e * y).collect();
    p.extend(pt.x.iter().zip(&pt.big_x).map(|(x, xx)| x - xx));
    p.push(e - 1.0);
    let u = dot(&pt.x, &pt.big_y) - dot(&pt.big_x, &pt.big_y) + pt.big_z - pt.z;
    JetPoint { q, p, u }
}

/// Least-squares factor `lambda` with `pullback ~ lambda * form`, and the residual norm.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct ContactFit {
    pub lambda: f64,
    pub residual: f64,
}

/// Pulls `du - p dq` back through `embedding` with a central-difference Jacobian of
/// step `h` and fits it against [`Embedding::source_form`].
pub fn contact_factor_residual(embedding: Embedding, pt: &ProductPoint, h: f64) -> ContactFit {
    assert!(h > 0.0, "step must be positive");
    let n = pt.n();
    let v = pt.to_vec();
    let image = embedding.apply(pt);
    let m = 2 * n + 1;
    let pullback: Vec<f64> = (0..v.len())
        .map(|i| {
            let mut plus = v.clone();
            let mut minus = v.clone();
            plus[i] += h;
            minus[i] -= h;
            let f_plus = embedding.apply(&ProductPoint::from_slice(n, &plus));
            let f_minus = embedding.apply(&ProductPoint::from_slice(n, &minus));
            let du = (f_plus.u - f_minus.u) / (2.0 * h);
            let p_dq: f64 = (0..m).map(|j| image.p[j] * (f_plus.q[j] - f_minus.q[j]) / (2.0 * h)).sum();
            du - p_dq
        })
        .collect();
    let form = embedding.source_form(pt);
    let lambda = dot(&pullback, &form) / dot(&form, &form);
    let residual = pullback.iter().zip(&form).map(|(b, a)| (b - lambda * a).powi(2)).sum::<f64>().sqrt();
    ContactFit { lambda, residual }
}

/// Maximum residual over a point set at each step, with the observed convergence
/// orders between consecutive steps and the smallest `C` with `residual <= C h^2`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RichardsonProfile {
    pub steps: Vec<f64>,
    pub max_residuals: Vec<f64>,
    pub orders: Vec<f64>,
    pub quadratic_constant: f64,
}

impl RichardsonProfile {
    /// `residual(h) <= constant * h^2` at every step.
    pub fn within_quadratic_bound(&self, constant: f64) -> bool {
        self.quadratic_constant <= constant
    }
}

pub fn richardson_profile(embedding: Embedding, points: &[ProductPoint], steps: &[f64]) -> RichardsonProfile {
    use rayon::prelude::*;
    let max_residuals: Vec<f64> = steps
        .iter()
        .map(|&h| {
            points
                .par_iter()
                .map(|pt| contact_factor_residual(embedding, pt, h).residual)
                .reduce(|| 0.0, f64::max)
        })
        .collect();
    let orders = steps
        .windows(2)
        .zip(max_residuals.windows(2))
        .map(|(h, r)| (r[0] / r[1]).ln() / (h[0] / h[1]).ln())
        .collect();
    let quadratic_constant =
        steps.iter().zip(&max_residuals).map(|(h, r)| r / (h * h)).fold(0.0, f64::max);
    RichardsonProfile { steps: steps.to_vec(), max_residuals, orders, quadratic_constant }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::contact_geo::BasePoint;

    fn sample() -> ProductPoint {
        ProductPoint::new(
            &BasePoint::new(vec![0.3, -0.2], vec![0.5, 0.1], 0.7),
            &BasePoint::new(vec![-0.4, 0.6], vec![0.2, -0.9], -0.3),
            0.45,
        )
    }

    #[test]
    fn diagonal_goes_to_zero_section() {
        let q = BasePoint::new(vec![0.3, -1.2], vec![2.5, 0.25], -0.75);
        assert_eq!(Embedding::Sigma.apply(&ProductPoint::diagonal(&q)), JetPoint::zero_section(&q));
        assert_eq!(Embedding::Bhupal.apply(&ProductPoint::diagonal(&q)), JetPoint::zero_section(&q));
    }

    #[test]
    fn theta_only_point() {
        let o = BasePoint::origin(1);
        let image = Embedding::Sigma.apply(&ProductPoint::new(&o, &o, 0.8));
        assert_eq!(image.p, vec![0.0, 0.0, 0.8f64.exp() - 1.0]);
        assert_eq!((image.q.clone(), image.u), (vec![0.0; 3], 0.0));
    }

    #[test]
    fn last_coordinate_matches_direct_evaluation() {
        let pt = sample();
        let e = (pt.theta / 2.0).exp();
        let direct = pt.big_z - pt.z
            + e * (pt.x[0] * pt.big_y[0] + pt.x[1] * pt.big_y[1] - pt.y[0] * pt.big_x[0] - pt.y[1] * pt.big_x[1])
                / 2.0;
        assert!((Embedding::Sigma.apply(&pt).u - direct).abs() < 1e-15);
    }

    #[test]
    fn embeddings_are_contact_for_their_forms() {
        let pt = sample();
        for emb in [Embedding::Sigma, Embedding::Bhupal] {
            let fit = contact_factor_residual(emb, &pt, 1e-5);
            assert!(fit.residual < 1e-6, "{emb:?}: {fit:?}");
            assert!((fit.lambda + 1.0).abs() < 1e-6, "{emb:?}: {fit:?}");
        }
        assert!(contact_factor_residual(Embedding::CorruptedSigma, &pt, 1e-5).residual > 1e-3);
    }

    #[test]
    fn origin_factor() {
        let o = BasePoint::origin(2);
        let fit = contact_factor_residual(Embedding::Sigma, &ProductPoint::new(&o, &o, 0.0), 1e-5);
        assert!((fit.lambda + 1.0).abs() < 1e-9 && fit.residual < 1e-9);
    }
}
