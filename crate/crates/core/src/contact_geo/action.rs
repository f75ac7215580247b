//! The weighted rotation action: `(x_i, y_i)` turns by `2 pi w_i / k`, `z` is fixed.
//! On `J^1 R^{2n+1}` the covector pairs `(p_{x_i}, p_{y_i})` turn the same way and
//! `p_z`, `u` are fixed.

use std::f64::consts::TAU;

use super::{BasePoint, JetPoint, ProductPoint};
use crate::morse_bott::LensData;

#[derive(Clone, Debug, PartialEq)]
pub struct Rotation {
    angles: Vec<f64>,
}

impl Rotation {
    /// The generator of the action.
    pub fn of(lens: &LensData) -> Self {
        Self::power(lens, 1)
    }

    /// The `m`-th power; negative powers give inverses.
    pub fn power(lens: &LensData, m: i64) -> Self {
        let k = lens.k().get() as i64;
        let angles = lens
            .weights()
            .iter()
            .map(|&w| TAU * ((m * w).rem_euclid(k)) as f64 / k as f64)
            .collect();
        Rotation { angles }
    }

    pub fn inverse(&self) -> Self {
        Rotation { angles: self.angles.iter().map(|a| -a).collect() }
    }

    pub fn angles(&self) -> &[f64] {
        &self.angles
    }

    fn rotate(&self, a: &[f64], b: &[f64]) -> (Vec<f64>, Vec<f64>) {
        assert_eq!(a.len(), self.angles.len(), "point dimension does not match the weights");
        let mut ra = Vec::with_capacity(a.len());
        let mut rb = Vec::with_capacity(a.len());
        for ((&s, &t), &angle) in a.iter().zip(b).zip(&self.angles) {
            let (sin, cos) = angle.sin_cos();
            ra.push(s * cos - t * sin);
            rb.push(s * sin + t * cos);
        }
        (ra, rb)
    }

    pub fn apply_base(&self, q: &BasePoint) -> BasePoint {
        let (x, y) = self.rotate(&q.x, &q.y);
        BasePoint { x, y, z: q.z }
    }

    pub fn apply_jet(&self, pt: &JetPoint) -> JetPoint {
        let n = pt.n();
        let q = self.apply_base(&BasePoint::from_slice(n, &pt.q)).to_vec();
        let (px, py) = self.rotate(&pt.p[..n], &pt.p[n..2 * n]);
        let mut p = px;
        p.extend(py);
        p.push(pt.p[2 * n]);
        JetPoint { q, p, u: pt.u }
    }

    pub fn apply_product(&self, pt: &ProductPoint) -> ProductPoint {
        ProductPoint::new(&self.apply_base(&pt.source()), &self.apply_base(&pt.target()), pt.theta)
    }
}

pub fn tau_base(q: &BasePoint, lens: &LensData) -> BasePoint {
    Rotation::of(lens).apply_base(q)
}

pub fn tau_jet(pt: &JetPoint, lens: &LensData) -> JetPoint {
    Rotation::of(lens).apply_jet(pt)
}

pub fn tau_product(pt: &ProductPoint, lens: &LensData) -> ProductPoint {
    Rotation::of(lens).apply_product(pt)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::Prime;

    fn lens(k: u64, weights: Vec<i64>) -> LensData {
        LensData::new(Prime::new(k).unwrap(), weights).unwrap()
    }

    #[test]
    fn order_k() {
        let l = lens(5, vec![1, 2]);
        let q = BasePoint::new(vec![0.3, -0.7], vec![0.1, 0.9], 0.4);
        let mut r = q.clone();
        for _ in 0..5 {
            r = tau_base(&r, &l);
        }
        assert!(crate::contact_geo::distance(&r.to_vec(), &q.to_vec()) < 1e-12);
        assert!((tau_base(&q, &l).norm_sq() - q.norm_sq()).abs() < 1e-12);
    }

    #[test]
    fn fixed_coordinates() {
        let l = lens(3, vec![1, 2]);
        let pt = JetPoint { q: vec![1.0, 2.0, 3.0, 4.0, 5.0], p: vec![6.0, 7.0, 8.0, 9.0, 10.0], u: 11.0 };
        let r = tau_jet(&pt, &l);
        assert_eq!((r.q[4], r.p[4], r.u), (5.0, 10.0, 11.0));
        let back = Rotation::of(&l).inverse().apply_jet(&r);
        assert!(back.distance(&pt) < 1e-12);
    }

    #[test]
    fn powers_compose() {
        let l = lens(5, vec![2, 3]);
        let q = BasePoint::new(vec![0.5, 0.2], vec![-0.1, 0.8], 0.0);
        let twice = tau_base(&tau_base(&q, &l), &l);
        let direct = Rotation::power(&l, 2).apply_base(&q);
        assert!(crate::contact_geo::distance(&twice.to_vec(), &direct.to_vec()) < 1e-12);
    }
}
