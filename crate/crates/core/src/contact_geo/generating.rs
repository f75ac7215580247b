//! Generating functions `S(q; xi)` on `R^{2n+1} x R^N` and the check that
//! `S(tau q; xi)` generates the rotated Legendrian `tau^{-1}(Gamma)`.

use serde::{Deserialize, Serialize};

use super::{distance, BasePoint, JetPoint, Rotation};
use crate::error::{Error, Result};
use crate::morse_bott::LensData;

pub trait GeneratingFunction: Sync {
    fn n(&self) -> usize;
    fn fiber_dim(&self) -> usize;
    fn value(&self, q: &[f64], xi: &[f64]) -> f64;
    /// `dS/dq`, length `2n + 1`.
    fn q_gradient(&self, q: &[f64], xi: &[f64]) -> Vec<f64>;
    fn fiber_gradient(&self, q: &[f64], xi: &[f64]) -> Vec<f64>;
    fn fiber_hessian(&self, q: &[f64], xi: &[f64]) -> Vec<Vec<f64>>;
}

/// Polynomial in the coordinates `(q, xi)`; each term is a coefficient with one
/// exponent per coordinate, `q` first.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PolynomialGf {
    n: usize,
    fiber_dim: usize,
    terms: Vec<(f64, Vec<u32>)>,
}

impl PolynomialGf {
    pub fn new(n: usize, fiber_dim: usize, terms: Vec<(f64, Vec<u32>)>) -> Result<Self> {
        let width = 2 * n + 1 + fiber_dim;
        if let Some((_, e)) = terms.iter().find(|(_, e)| e.len() != width) {
            return Err(Error::DimensionMismatch(format!("term with {} exponents, expected {width}", e.len())));
        }
        Ok(PolynomialGf { n, fiber_dim, terms })
    }

    /// `|xi|^2`, independent of `q`.
    pub fn fiber_square(n: usize, fiber_dim: usize) -> Self {
        let terms = (0..fiber_dim)
            .map(|i| {
                let mut e = vec![0; 2 * n + 1 + fiber_dim];
                e[2 * n + 1 + i] = 2;
                (1.0, e)
            })
            .collect();
        PolynomialGf { n, fiber_dim, terms }
    }

    /// `xi^2 + x_1 xi` on `R^3 x R`.
    pub fn linear_coupling() -> Self {
        PolynomialGf { n: 1, fiber_dim: 1, terms: vec![(1.0, vec![0, 0, 0, 2]), (1.0, vec![1, 0, 0, 1])] }
    }

    /// `xi^2 + (|w|^2 - z) xi`, invariant under every weighted rotation.
    pub fn invariant_coupling(n: usize) -> Self {
        let width = 2 * n + 2;
        let mut terms = vec![(1.0, unit(width, width - 1, 2))];
        for i in 0..2 * n {
            let mut e = unit(width, i, 2);
            e[width - 1] = 1;
            terms.push((1.0, e));
        }
        let mut e = unit(width, 2 * n, 1);
        e[width - 1] = 1;
        terms.push((-1.0, e));
        PolynomialGf { n, fiber_dim: 1, terms }
    }

    fn coords(&self, q: &[f64], xi: &[f64]) -> Vec<f64> {
        q.iter().chain(xi).copied().collect()
    }

    fn eval_derivative(&self, v: &[f64], orders: &[(usize, u32)]) -> f64 {
        self.terms
            .iter()
            .map(|(c, e)| {
                let mut coeff = *c;
                let mut exps = e.clone();
                for &(i, k) in orders {
                    for _ in 0..k {
                        coeff *= exps[i] as f64;
                        exps[i] = exps[i].saturating_sub(1);
                    }
                }
                if coeff == 0.0 {
                    return 0.0;
                }
                coeff * v.iter().zip(&exps).map(|(x, &p)| x.powi(p as i32)).product::<f64>()
            })
            .sum()
    }
}

fn unit(width: usize, index: usize, power: u32) -> Vec<u32> {
    let mut e = vec![0; width];
    e[index] = power;
    e
}

impl GeneratingFunction for PolynomialGf {
    fn n(&self) -> usize {
        self.n
    }

    fn fiber_dim(&self) -> usize {
        self.fiber_dim
    }

    fn value(&self, q: &[f64], xi: &[f64]) -> f64 {
        self.eval_derivative(&self.coords(q, xi), &[])
    }

    fn q_gradient(&self, q: &[f64], xi: &[f64]) -> Vec<f64> {
        let v = self.coords(q, xi);
        (0..q.len()).map(|i| self.eval_derivative(&v, &[(i, 1)])).collect()
    }

    fn fiber_gradient(&self, q: &[f64], xi: &[f64]) -> Vec<f64> {
        let v = self.coords(q, xi);
        let m = q.len();
        (0..xi.len()).map(|i| self.eval_derivative(&v, &[(m + i, 1)])).collect()
    }

    fn fiber_hessian(&self, q: &[f64], xi: &[f64]) -> Vec<Vec<f64>> {
        let v = self.coords(q, xi);
        let m = q.len();
        (0..xi.len())
            .map(|i| {
                (0..xi.len())
                    .map(|j| {
                        if i == j {
                            self.eval_derivative(&v, &[(m + i, 2)])
                        } else {
                            self.eval_derivative(&v, &[(m + i, 1), (m + j, 1)])
                        }
                    })
                    .collect()
            })
            .collect()
    }
}

/// Solves `A x = b` by elimination with partial pivoting; `None` when `A` is
/// numerically singular.
fn solve(mut a: Vec<Vec<f64>>, mut b: Vec<f64>) -> Option<Vec<f64>> {
    let n = b.len();
    let scale = a.iter().flatten().fold(0.0f64, |m, v| m.max(v.abs())).max(1.0);
    for col in 0..n {
        let pivot = (col..n).max_by(|&i, &j| a[i][col].abs().total_cmp(&a[j][col].abs()))?;
        if a[pivot][col].abs() < 1e-12 * scale {
            return None;
        }
        a.swap(col, pivot);
        b.swap(col, pivot);
        for row in col + 1..n {
            let f = a[row][col] / a[col][col];
            for k in col..n {
                a[row][k] -= f * a[col][k];
            }
            b[row] -= f * b[col];
        }
    }
    let mut x = vec![0.0; n];
    for row in (0..n).rev() {
        let s: f64 = (row + 1..n).map(|k| a[row][k] * x[k]).sum();
        x[row] = (b[row] - s) / a[row][row];
    }
    Some(x)
}

/// Newton's method for `dS/dxi (q, .) = 0`, starting at `xi = 0`. Returns `None`
/// unless it converges to a point with invertible fiber Hessian.
fn fiber_critical_point<G: GeneratingFunction + ?Sized>(s: &G, q: &[f64]) -> Option<Vec<f64>> {
    let xi = newton(s, q)?;
    solve(s.fiber_hessian(q, &xi), vec![0.0; xi.len()])?;
    Some(xi)
}

fn newton<G: GeneratingFunction + ?Sized>(s: &G, q: &[f64]) -> Option<Vec<f64>> {
    let mut xi = vec![0.0; s.fiber_dim()];
    for _ in 0..50 {
        let grad = s.fiber_gradient(q, &xi);
        if grad.iter().all(|g| g.abs() < 1e-14) {
            return Some(xi);
        }
        let step = solve(s.fiber_hessian(q, &xi), grad)?;
        xi.iter_mut().zip(&step).for_each(|(x, d)| *x -= d);
        if step.iter().all(|d| d.abs() < 1e-15) {
            return Some(xi);
        }
    }
    let grad = s.fiber_gradient(q, &xi);
    grad.iter().all(|g| g.abs() < 1e-10).then_some(xi)
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PullbackReport {
    pub samples: usize,
    pub max_residual: f64,
    pub nondegeneracy_failures: usize,
    pub tolerance: f64,
    pub pass: bool,
}

/// For each sample `q`: solves the fiber equation of `S` at `tau q` and of
/// `S_bar(q; xi) = S(tau q; xi)` at `q`, differentiates `S_bar` in `q` by central
/// differences with step `h`, and compares `i_{S_bar}(q)` with `tau^{-1} i_S(tau q)`.
pub fn pullback_generating_check<G: GeneratingFunction + ?Sized>(
    s: &G,
    lens: &LensData,
    samples: &[BasePoint],
    h: f64,
    tolerance: f64,
) -> PullbackReport {
    let tau = Rotation::of(lens);
    let tau_inv = tau.inverse();
    let n = s.n();
    let mut failures = 0;
    let mut max_residual = 0.0f64;
    for q in samples {
        let tq = tau.apply_base(q).to_vec();
        let Some(xi) = fiber_critical_point(s, &tq) else {
            failures += 1;
            continue;
        };
        let image = JetPoint { q: tq.clone(), p: s.q_gradient(&tq, &xi), u: s.value(&tq, &xi) };
        let expected = tau_inv.apply_jet(&image);

        let s_bar = |v: &[f64], xi: &[f64]| s.value(&tau.apply_base(&BasePoint::from_slice(n, v)).to_vec(), xi);
        let qv = q.to_vec();
        // the fiber derivatives of S_bar at q are those of S at tau q
        let xi_bar = xi;
        let p_bar: Vec<f64> = (0..qv.len())
            .map(|i| {
                let mut plus = qv.clone();
                let mut minus = qv.clone();
                plus[i] += h;
                minus[i] -= h;
                (s_bar(&plus, &xi_bar) - s_bar(&minus, &xi_bar)) / (2.0 * h)
            })
            .collect();
        let actual = JetPoint { q: qv.clone(), p: p_bar, u: s_bar(&qv, &xi_bar) };
        max_residual = max_residual.max(distance(&actual.to_vec(), &expected.to_vec()));
    }
    PullbackReport {
        samples: samples.len(),
        max_residual,
        nondegeneracy_failures: failures,
        tolerance,
        pass: failures == 0 && max_residual <= tolerance,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::Prime;

    fn grid(n: usize) -> Vec<BasePoint> {
        (0..25)
            .map(|i| {
                let t = i as f64 / 25.0;
                BasePoint::new(
                    (0..n).map(|j| (t * 3.1 + j as f64).sin()).collect(),
                    (0..n).map(|j| (t * 2.3 - j as f64).cos()).collect(),
                    t - 0.5,
                )
            })
            .collect()
    }

    #[test]
    fn fiber_square_gives_zero_section() {
        let s = PolynomialGf::fiber_square(1, 2);
        let q = [0.3, 0.1, -0.2];
        let xi = fiber_critical_point(&s, &q).unwrap();
        assert_eq!(xi, vec![0.0, 0.0]);
        assert_eq!(s.q_gradient(&q, &xi), vec![0.0; 3]);
        let lens = LensData::standard(1, Prime::new(3).unwrap()).unwrap();
        assert!(pullback_generating_check(&s, &lens, &grid(1), 1e-5, 1e-6).pass);
    }

    #[test]
    fn linear_coupling_critical_set() {
        let s = PolynomialGf::linear_coupling();
        let q = [0.8, -0.4, 0.2];
        let xi = fiber_critical_point(&s, &q).unwrap();
        assert!((xi[0] + 0.4).abs() < 1e-15);
        let lens = LensData::standard(1, Prime::new(5).unwrap()).unwrap();
        let report = pullback_generating_check(&s, &lens, &grid(1), 1e-5, 1e-6);
        assert!(report.pass, "{report:?}");
    }

    #[test]
    fn invariant_function_is_its_own_pullback() {
        let s = PolynomialGf::invariant_coupling(2);
        let lens = LensData::new(Prime::new(5).unwrap(), vec![1, 2]).unwrap();
        let tau = Rotation::of(&lens);
        for q in grid(2) {
            let tq = tau.apply_base(&q).to_vec();
            assert!((s.value(&tq, &[0.3]) - s.value(&q.to_vec(), &[0.3])).abs() < 1e-12);
        }
        assert!(pullback_generating_check(&s, &lens, &grid(2), 1e-5, 1e-6).pass);
    }

    #[test]
    fn degenerate_fiber_is_reported() {
        // xi^3 has a degenerate critical point
        let s = PolynomialGf::new(1, 1, vec![(1.0, vec![0, 0, 0, 3]), (1.0, vec![1, 0, 0, 0])]).unwrap();
        let lens = LensData::standard(1, Prime::new(3).unwrap()).unwrap();
        let report = pullback_generating_check(&s, &lens, &grid(1), 1e-5, 1e-6);
        assert_eq!(report.nondegeneracy_failures, 25);
        assert!(!report.pass);
    }
}
