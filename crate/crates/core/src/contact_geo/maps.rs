//! Contactomorphisms of `(R^{2n+1}, dz - (y dx - x dy)/2)`, the map `gamma_phi`
//! into `J^1 R^{2n+1}` and translated points of radial maps.

use std::f64::consts::{PI, TAU};

use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};

use super::{distance, dot, BasePoint, Embedding, JetPoint, ProductPoint, Rotation};
use crate::error::{Error, Result};
use crate::morse_bott::{LensData, Profile};
use crate::rational::{from_f64, Rational};

/// `phi(q)` together with the conformal exponent `g`, `phi^* alpha = e^g alpha`.
#[derive(Clone, Debug, PartialEq)]
pub struct MapValue {
    pub image: BasePoint,
    pub g: f64,
}

pub trait ContactMap: Sync {
    fn n(&self) -> usize;
    fn eval(&self, q: &BasePoint) -> MapValue;
}

#[derive(Clone, Copy, Debug)]
pub struct Identity {
    pub n: usize,
}

impl ContactMap for Identity {
    fn n(&self) -> usize {
        self.n
    }

    fn eval(&self, q: &BasePoint) -> MapValue {
        MapValue { image: q.clone(), g: 0.0 }
    }
}

/// `(x, y, z) -> (x + c e_1, y, z - c y_1 / 2)`: strict but not `Z_k`-equivariant.
#[derive(Clone, Copy, Debug)]
pub struct Translation {
    pub n: usize,
    pub shift: f64,
}

impl ContactMap for Translation {
    fn n(&self) -> usize {
        self.n
    }

    fn eval(&self, q: &BasePoint) -> MapValue {
        let mut image = q.clone();
        image.x[0] += self.shift;
        image.z -= self.shift * q.y[0] / 2.0;
        MapValue { image, g: 0.0 }
    }
}

/// A convex profile `rho` on `[0, inf)` vanishing on `[1, inf)`.
pub trait RadialProfile: Sync {
    fn rho(&self, s: f64) -> f64;
    fn rho_prime(&self, s: f64) -> f64;
    fn rho_second(&self, s: f64) -> f64;

    /// Closed-form solution of `rho'(s) = slope`, when available.
    fn critical_radius(&self, _slope: f64) -> Option<f64> {
        None
    }
}

#[derive(Clone, Copy, Debug)]
pub struct ZeroProfile;

impl RadialProfile for ZeroProfile {
    fn rho(&self, _: f64) -> f64 {
        0.0
    }
    fn rho_prime(&self, _: f64) -> f64 {
        0.0
    }
    fn rho_second(&self, _: f64) -> f64 {
        0.0
    }
}

/// `rho' = c` on `[0, delta]`, then rising to 0 at `s = 1` along the smoothstep
/// `3t^2 - 2t^3`, `t = (s - delta)/(1 - delta)`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct SmoothstepProfile {
    pub slope: f64,
    pub delta: f64,
}

impl SmoothstepProfile {
    pub fn new(slope: f64, delta: f64) -> Result<Self> {
        if !(slope < 0.0 && delta > 0.0 && delta < 1.0) {
            return Err(Error::InvalidArgument("need slope < 0 and 0 < delta < 1".into()));
        }
        Ok(SmoothstepProfile { slope, delta })
    }

    fn t(&self, s: f64) -> f64 {
        ((s - self.delta) / (1.0 - self.delta)).clamp(0.0, 1.0)
    }
}

impl RadialProfile for SmoothstepProfile {
    fn rho(&self, s: f64) -> f64 {
        let (c, d) = (self.slope, self.delta);
        if s >= 1.0 {
            0.0
        } else if s <= d {
            -c * (1.0 - d) / 2.0 + c * (s - d)
        } else {
            let t = self.t(s);
            -c * (1.0 - d) * (0.5 - t + t.powi(3) - t.powi(4) / 2.0)
        }
    }

    fn rho_prime(&self, s: f64) -> f64 {
        let t = self.t(s);
        self.slope * (1.0 - (3.0 * t * t - 2.0 * t.powi(3)))
    }

    fn rho_second(&self, s: f64) -> f64 {
        if s <= self.delta || s >= 1.0 {
            return 0.0;
        }
        let t = self.t(s);
        -self.slope * 6.0 * t * (1.0 - t) / (1.0 - self.delta)
    }

    /// Solves `3t^2 - 2t^3 = v` through `cos(3 phi) = 1 - 2v`.
    fn critical_radius(&self, slope: f64) -> Option<f64> {
        let v = 1.0 - slope / self.slope;
        if !(0.0..=1.0).contains(&v) {
            return None;
        }
        let t = 0.5 + (((1.0 - 2.0 * v).acos() - TAU) / 3.0).cos();
        Some(self.delta + (1.0 - self.delta) * t)
    }
}

/// The lift `(w, z) -> (e^{i 2 pi rho'(s)/R} w, z + rho(s) - s rho'(s))`,
/// `s = pi |w|^2 / R`, of the symplectic map of a radial Hamiltonian. The `z`-shift
/// makes it strict: `psi^* alpha = alpha`.
#[derive(Clone, Debug)]
pub struct RadialContactMap<P> {
    capacity: f64,
    n: usize,
    profile: P,
}

impl<P: RadialProfile> RadialContactMap<P> {
    pub fn new(capacity: f64, n: usize, profile: P) -> Result<Self> {
        if !(capacity > 0.0) || n == 0 {
            return Err(Error::InvalidArgument("need R > 0 and n >= 1".into()));
        }
        if (0..=1000).any(|i| profile.rho_second(i as f64 / 1000.0) < -1e-12) {
            return Err(Error::InvalidProfile("rho'' is negative on the sample grid".into()));
        }
        if profile.rho(1.0).abs() > 1e-12 || profile.rho_prime(1.0).abs() > 1e-12 {
            return Err(Error::InvalidProfile("rho is not supported in [0, 1]".into()));
        }
        Ok(RadialContactMap { capacity, n, profile })
    }

    pub fn capacity(&self) -> f64 {
        self.capacity
    }

    pub fn profile(&self) -> &P {
        &self.profile
    }

    pub fn radius_parameter(&self, q: &BasePoint) -> f64 {
        PI * q.norm_sq() / self.capacity
    }

    /// `F(s) = rho(s) - s rho'(s)`.
    pub fn shift(&self, s: f64) -> f64 {
        self.profile.rho(s) - s * self.profile.rho_prime(s)
    }
}

impl<P: RadialProfile> ContactMap for RadialContactMap<P> {
    fn n(&self) -> usize {
        self.n
    }

    fn eval(&self, q: &BasePoint) -> MapValue {
        let s = self.radius_parameter(q);
        let angle = TAU * self.profile.rho_prime(s) / self.capacity;
        let (sin, cos) = angle.sin_cos();
        let x = q.x.iter().zip(&q.y).map(|(x, y)| x * cos - y * sin).collect();
        let y = q.x.iter().zip(&q.y).map(|(x, y)| x * sin + y * cos).collect();
        MapValue { image: BasePoint { x, y, z: q.z + self.shift(s) }, g: 0.0 }
    }
}

/// `gamma_phi(q) = sigma(q, phi(q), g(q))`.
pub fn gamma(phi: &dyn ContactMap, q: &BasePoint) -> JetPoint {
    gamma_with(Embedding::Sigma, phi, q)
}

pub fn gamma_with(embedding: Embedding, phi: &dyn ContactMap, q: &BasePoint) -> JetPoint {
    let value = phi.eval(q);
    embedding.apply(&ProductPoint::new(q, &value.image, value.g))
}

/// `|gamma(tau q) - tau(gamma(q))|`.
pub fn equivariance_residual(phi: &dyn ContactMap, lens: &LensData, q: &BasePoint) -> f64 {
    equivariance_residual_with(Embedding::Sigma, phi, lens, q)
}

pub fn equivariance_residual_with(embedding: Embedding, phi: &dyn ContactMap, lens: &LensData, q: &BasePoint) -> f64 {
    let tau = Rotation::of(lens);
    let lhs = gamma_with(embedding, phi, &tau.apply_base(q));
    let rhs = tau.apply_jet(&gamma_with(embedding, phi, q));
    lhs.distance(&rhs)
}

fn alpha(q: &BasePoint) -> Vec<f64> {
    let mut form: Vec<f64> = q.y.iter().map(|y| -y / 2.0).collect();
    form.extend(q.x.iter().map(|x| x / 2.0));
    form.push(1.0);
    form
}

/// `|phi^* alpha - e^g alpha|` at `q`, with a central-difference Jacobian.
pub fn conformal_defect(phi: &dyn ContactMap, q: &BasePoint, h: f64) -> f64 {
    let n = phi.n();
    let v = q.to_vec();
    let value = phi.eval(q);
    let form_at_image = alpha(&value.image);
    let pullback: Vec<f64> = (0..v.len())
        .map(|i| {
            let mut plus = v.clone();
            let mut minus = v.clone();
            plus[i] += h;
            minus[i] -= h;
            let fp = phi.eval(&BasePoint::from_slice(n, &plus)).image.to_vec();
            let fm = phi.eval(&BasePoint::from_slice(n, &minus)).image.to_vec();
            let column: Vec<f64> = fp.iter().zip(&fm).map(|(a, b)| (a - b) / (2.0 * h)).collect();
            dot(&form_at_image, &column)
        })
        .collect();
    let expected: Vec<f64> = alpha(q).iter().map(|a| value.g.exp() * a).collect();
    distance(&pullback, &expected)
}

/// A circle of translated points `rho'(s) = -jR` and its action `jR s + rho(s)`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct TranslatedPoint {
    pub j: u32,
    pub s: f64,
    pub action: f64,
    /// `rho''(s)` vanishes, so the circle is not a Morse-Bott family.
    pub degenerate: bool,
}

/// Solves `rho'(s) = -jR` for every `j >= 1` by bisection; `rho'` is nondecreasing.
pub fn translated_points<P: RadialProfile>(map: &RadialContactMap<P>) -> Vec<TranslatedPoint> {
    let rho = &map.profile;
    let r = map.capacity;
    let floor = rho.rho_prime(0.0);
    let mut points = Vec::new();
    let mut j = 1u32;
    while -(j as f64) * r >= floor {
        let target = -(j as f64) * r;
        let (mut lo, mut hi) = (0.0f64, 1.0f64);
        for _ in 0..200 {
            let mid = 0.5 * (lo + hi);
            if rho.rho_prime(mid) < target {
                lo = mid;
            } else {
                hi = mid;
            }
            if hi - lo < 1e-16 {
                break;
            }
        }
        let s = 0.5 * (lo + hi);
        points.push(TranslatedPoint {
            j,
            s,
            action: j as f64 * r * s + rho.rho(s),
            degenerate: rho.rho_second(s).abs() < 1e-12,
        });
        j += 1;
    }
    points
}

/// Exact critical data of the radial map, built from closed-form radii when the
/// profile provides them and from bisection otherwise.
pub fn induced_profile<P: RadialProfile>(map: &RadialContactMap<P>) -> Result<Profile> {
    let rho = &map.profile;
    let r = map.capacity;
    let radii: Vec<f64> = translated_points(map)
        .iter()
        .map(|tp| rho.critical_radius(-(tp.j as f64) * r).unwrap_or(tp.s))
        .collect();
    let exact = |v: f64| from_f64(v).ok_or_else(|| Error::InvalidProfile(format!("non-finite value {v}")));
    let values = radii.iter().map(|&s| exact(rho.rho(s))).collect::<Result<Vec<Rational>>>()?;
    let radii_exact = radii.iter().map(|&s| exact(s)).collect::<Result<Vec<Rational>>>()?;
    Profile::new(exact(r)?, radii_exact, values, exact(rho.rho(0.0))?)
}

/// Critical values of `profile` as floats.
pub fn critical_values_f64(profile: &Profile) -> Vec<f64> {
    profile.critical_values().iter().map(|c| c.to_f64().unwrap_or(f64::NAN)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::Prime;

    fn test_map() -> RadialContactMap<SmoothstepProfile> {
        RadialContactMap::new(1.0, 2, SmoothstepProfile::new(-2.5, 0.1).unwrap()).unwrap()
    }

    #[test]
    fn profile_derivatives_agree_with_differences() {
        let p = SmoothstepProfile::new(-2.5, 0.1).unwrap();
        for i in 1..100 {
            let s = i as f64 / 100.0 + 0.003;
            let h = 1e-6;
            let d1 = (p.rho(s + h) - p.rho(s - h)) / (2.0 * h);
            let d2 = (p.rho_prime(s + h) - p.rho_prime(s - h)) / (2.0 * h);
            assert!((d1 - p.rho_prime(s)).abs() < 1e-7, "s = {s}");
            assert!((d2 - p.rho_second(s)).abs() < 1e-6, "s = {s}");
        }
    }

    #[test]
    fn radial_lift_is_strict() {
        let map = test_map();
        let q = BasePoint::new(vec![0.2, -0.3], vec![0.25, 0.1], 0.3);
        assert!(conformal_defect(&map, &q, 1e-5) < 1e-6);
        let t = Translation { n: 2, shift: 0.7 };
        assert!(conformal_defect(&t, &q, 1e-5) < 1e-6);
    }

    #[test]
    fn closed_form_radii_match_bisection() {
        let map = test_map();
        let points = translated_points(&map);
        assert_eq!(points.len(), 2);
        for tp in &points {
            let closed = map.profile().critical_radius(-(tp.j as f64)).unwrap();
            assert!((closed - tp.s).abs() < 1e-12);
            assert!(tp.action > 0.0 && tp.action < tp.j as f64);
            assert!(!tp.degenerate);
        }
        let profile = induced_profile(&map).unwrap();
        for (c, tp) in critical_values_f64(&profile).iter().zip(&points) {
            assert!((c - tp.action).abs() < 1e-8);
        }
    }

    #[test]
    fn zero_profile_has_no_translated_points() {
        let map = RadialContactMap::new(1.0, 1, ZeroProfile).unwrap();
        assert!(translated_points(&map).is_empty());
    }

    #[test]
    fn gamma_examples() {
        let q = BasePoint::new(vec![0.4], vec![-0.2], 0.9);
        assert_eq!(gamma(&Identity { n: 1 }, &q), JetPoint::zero_section(&q));

        let map = test_map();
        let tp = translated_points(&map)[0];
        let r = (tp.s / PI).sqrt();
        let fixed = BasePoint::new(vec![r, 0.0], vec![0.0, 0.0], 0.1);
        let jet = gamma(&map, &fixed);
        assert!(jet.p.iter().all(|p| p.abs() < 1e-9));
        assert!((jet.u - map.shift(tp.s)).abs() < 1e-9);
        assert!((jet.u - tp.action).abs() < 1e-9);
    }

    #[test]
    fn equivariance() {
        let lens = LensData::new(Prime::new(5).unwrap(), vec![1, 2]).unwrap();
        let q = BasePoint::new(vec![0.3, -0.1], vec![0.2, 0.35], -0.4);
        assert!(equivariance_residual(&test_map(), &lens, &q) < 1e-9);
        assert_eq!(equivariance_residual(&Identity { n: 2 }, &lens, &q), 0.0);
        assert!(equivariance_residual(&Translation { n: 2, shift: 0.5 }, &lens, &q) > 1e-3);
        assert!(equivariance_residual_with(Embedding::Bhupal, &test_map(), &lens, &q) > 1e-3);
    }
}
