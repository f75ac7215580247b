//! Floating-point checks of the contact geometry behind the generating functions:
//! the embedding of the product `R^{2n+1} x R^{2n+1} x R` into `J^1 R^{2n+1}`,
//! the `Z_k`-actions, the map `gamma_phi`, generating-function pullbacks and the
//! translated points of radial contactomorphisms.

mod action;
mod embedding;
mod generating;
mod maps;
mod sweep;

pub use action::{tau_base, tau_jet, tau_product, Rotation};
pub use embedding::{contact_factor_residual, richardson_profile, ContactFit, Embedding, RichardsonProfile};
pub use generating::{pullback_generating_check, GeneratingFunction, PolynomialGf, PullbackReport};
pub use maps::{
    conformal_defect, critical_values_f64, equivariance_residual, equivariance_residual_with, gamma, gamma_with,
    induced_profile, translated_points, ContactMap, Identity, MapValue, RadialContactMap, RadialProfile, SmoothstepProfile, TranslatedPoint, Translation, ZeroProfile,
};
pub use sweep::{
    contact_sweep, equivariance_sweep, random_base_points, random_product_points, ResidualReport, SweepReport,
};

use serde::{Deserialize, Serialize};

/// Numerical tolerances shared by every check.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Tolerances {
    /// Residuals computed from central differences.
    pub finite_difference: f64,
    /// Identities evaluated in closed form.
    pub closed_form: f64,
    /// Agreement of translated-point actions with exact critical values.
    pub action: f64,
    /// Central-difference step.
    pub step: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Tolerances { finite_difference: 1e-6, closed_form: 1e-9, action: 1e-8, step: 1e-5 }
    }
}

/// A point `(x, y, z)` of `R^{2n+1}`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BasePoint {
    pub x: Vec<f64>,
    pub y: Vec<f64>,
    pub z: f64,
}

impl BasePoint {
    pub fn new(x: Vec<f64>, y: Vec<f64>, z: f64) -> Self {
        assert_eq!(x.len(), y.len(), "x and y must have the same length");
        BasePoint { x, y, z }
    }

    pub fn origin(n: usize) -> Self {
        BasePoint { x: vec![0.0; n], y: vec![0.0; n], z: 0.0 }
    }

    pub fn n(&self) -> usize {
        self.x.len()
    }

    /// `|w|^2` for `w = x + iy`.
    pub fn norm_sq(&self) -> f64 {
        self.x.iter().chain(&self.y).map(|v| v * v).sum()
    }

    pub fn to_vec(&self) -> Vec<f64> {
        let mut v = Vec::with_capacity(2 * self.n() + 1);
        v.extend(&self.x);
        v.extend(&self.y);
        v.push(self.z);
        v
    }

    pub fn from_slice(n: usize, v: &[f64]) -> Self {
        assert_eq!(v.len(), 2 * n + 1);
        BasePoint { x: v[..n].to_vec(), y: v[n..2 * n].to_vec(), z: v[2 * n] }
    }
}

/// A point `(x, y, z, X, Y, Z, theta)` of the product on which the embedding is defined.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ProductPoint {
    pub x: Vec<f64>,
    pub y: Vec<f64>,
    pub z: f64,
    #[serde(rename = "X")]
    pub big_x: Vec<f64>,
    #[serde(rename = "Y")]
    pub big_y: Vec<f64>,
    #[serde(rename = "Z")]
    pub big_z: f64,
    pub theta: f64,
}

impl ProductPoint {
    pub fn new(source: &BasePoint, target: &BasePoint, theta: f64) -> Self {
        assert_eq!(source.n(), target.n());
        ProductPoint {
            x: source.x.clone(),
            y: source.y.clone(),
            z: source.z,
            big_x: target.x.clone(),
            big_y: target.y.clone(),
            big_z: target.z,
            theta,
        }
    }

    /// `(q, q, 0)`.
    pub fn diagonal(q: &BasePoint) -> Self {
        Self::new(q, q, 0.0)
    }

    pub fn n(&self) -> usize {
        self.x.len()
    }

    pub fn source(&self) -> BasePoint {
        BasePoint { x: self.x.clone(), y: self.y.clone(), z: self.z }
    }

    pub fn target(&self) -> BasePoint {
        BasePoint { x: self.big_x.clone(), y: self.big_y.clone(), z: self.big_z }
    }

    /// Coordinates in the order `x, y, z, X, Y, Z, theta`.
    pub fn to_vec(&self) -> Vec<f64> {
        let mut v = self.source().to_vec();
        v.extend(self.target().to_vec());
        v.push(self.theta);
        v
    }

    pub fn from_slice(n: usize, v: &[f64]) -> Self {
        assert_eq!(v.len(), 4 * n + 3);
        let m = 2 * n + 1;
        Self::new(&BasePoint::from_slice(n, &v[..m]), &BasePoint::from_slice(n, &v[m..2 * m]), v[2 * m])
    }
}

/// A point `(q, p, u)` of `J^1 R^{2n+1}`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct JetPoint {
    pub q: Vec<f64>,
    pub p: Vec<f64>,
    pub u: f64,
}

impl JetPoint {
    pub fn n(&self) -> usize {
        (self.q.len() - 1) / 2
    }

    /// `(q, 0, 0)`.
    pub fn zero_section(q: &BasePoint) -> Self {
        JetPoint { q: q.to_vec(), p: vec![0.0; 2 * q.n() + 1], u: 0.0 }
    }

    pub fn to_vec(&self) -> Vec<f64> {
        let mut v = self.q.clone();
        v.extend(&self.p);
        v.push(self.u);
        v
    }

    /// Euclidean distance in `J^1 R^{2n+1}`.
    pub fn distance(&self, other: &JetPoint) -> f64 {
        distance(&self.to_vec(), &other.to_vec())
    }
}

pub(crate) fn distance(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(s, t)| (s - t) * (s - t)).sum::<f64>().sqrt()
}

pub(crate) fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(s, t)| s * t).sum()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn flattening_round_trips() {
        let s = BasePoint::new(vec![1.0, 2.0], vec![3.0, 4.0], 5.0);
        let t = BasePoint::new(vec![6.0, 7.0], vec![8.0, 9.0], 10.0);
        let pt = ProductPoint::new(&s, &t, 0.5);
        assert_eq!(ProductPoint::from_slice(2, &pt.to_vec()), pt);
        assert_eq!(pt.to_vec().len(), 11);
        assert_eq!(BasePoint::from_slice(2, &s.to_vec()), s);
    }
}
