//! The cyclic group ring `F_k[T]/(T^k - 1)` and its integral lift `Z[T]/(T^k - 1)`.
//!
//! Elements keep an integer representative so the same value can feed both
//! field-coefficient and integer-coefficient chain complexes. Equality is
//! equality of the reductions mod `k`.

use std::fmt;
use std::ops::{Add, Mul, Sub};

use crate::error::{Error, Result};
use crate::exact::{FieldScalar, FpMatrix, Matrix, Prime};

#[derive(Clone, Debug)]
pub struct GroupRingElement {
    coeffs: Vec<i64>,
    modulus: Prime,
}

impl GroupRingElement {
    /// Element with the given coefficients of `1, T, ..., T^{k-1}`.
    pub fn new(coeffs: Vec<i64>, modulus: Prime) -> Result<Self> {
        let k = modulus.get() as usize;
        if coeffs.len() != k {
            return Err(Error::DimensionMismatch(format!("{} coefficients for k = {k}", coeffs.len())));
        }
        Ok(GroupRingElement { coeffs, modulus })
    }

    pub fn zero(modulus: Prime) -> Self {
        GroupRingElement { coeffs: vec![0; modulus.get() as usize], modulus }
    }

    pub fn one(modulus: Prime) -> Self {
        Self::monomial(0, modulus)
    }

    /// `T^m`, exponent taken mod `k`.
    pub fn monomial(m: i64, modulus: Prime) -> Self {
        let mut e = Self::zero(modulus);
        e.coeffs[modulus.reduce(m) as usize] = 1;
        e
    }

    pub fn modulus(&self) -> Prime {
        self.modulus
    }

    /// Coefficients as field elements.
    pub fn coeffs(&self) -> Vec<FieldScalar> {
        self.coeffs.iter().map(|&c| FieldScalar::new(c, self.modulus)).collect()
    }

    /// Canonical residues in `0..k`.
    pub fn residues(&self) -> Vec<u64> {
        self.coeffs.iter().map(|&c| self.modulus.reduce(c)).collect()
    }

    /// Integer representative in `Z[T]/(T^k - 1)`.
    pub fn integral_lift(&self) -> &[i64] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.residues().iter().all(|&c| c == 0)
    }

    /// Image under `T -> 1`, in the integers.
    pub fn augmentation_integral(&self) -> i64 {
        self.coeffs.iter().sum()
    }

    /// Image under `T -> 1`, in `F_k`.
    pub fn augmentation(&self) -> FieldScalar {
        FieldScalar::new(self.augmentation_integral(), self.modulus)
    }

    /// Matrix of `x -> x * self` over `F_k` in the basis `1, T, ..., T^{k-1}`.
    pub fn as_multiplication_matrix(&self) -> FpMatrix {
        FpMatrix::reduce(self.modulus, &self.as_integral_matrix())
    }

    /// The same circulant with the integer representative as entries.
    pub fn as_integral_matrix(&self) -> Matrix<i64> {
        let k = self.coeffs.len();
        // column j holds T^j * self, so entry (i, j) is the coefficient of T^{i-j}
        Matrix::from_fn(k, k, |i, j| self.coeffs[(i + k - j) % k])
    }

    fn check(&self, other: &Self) {
        assert_eq!(self.modulus, other.modulus, "group ring elements for different k");
    }
}

impl PartialEq for GroupRingElement {
    fn eq(&self, other: &Self) -> bool {
        self.modulus == other.modulus && self.residues() == other.residues()
    }
}

impl Eq for GroupRingElement {}

impl Add for &GroupRingElement {
    type Output = GroupRingElement;
    fn add(self, rhs: Self) -> GroupRingElement {
        self.check(rhs);
        let coeffs = self.coeffs.iter().zip(&rhs.coeffs).map(|(a, b)| a + b).collect();
        GroupRingElement { coeffs, modulus: self.modulus }
    }
}

impl Sub for &GroupRingElement {
    type Output = GroupRingElement;
    fn sub(self, rhs: Self) -> GroupRingElement {
        self.check(rhs);
        let coeffs = self.coeffs.iter().zip(&rhs.coeffs).map(|(a, b)| a - b).collect();
        GroupRingElement { coeffs, modulus: self.modulus }
    }
}

impl Mul for &GroupRingElement {
    type Output = GroupRingElement;
    /// Cyclic convolution.
    fn mul(self, rhs: Self) -> GroupRingElement {
        self.check(rhs);
        let k = self.coeffs.len();
        let mut coeffs = vec![0i64; k];
        for (i, a) in self.coeffs.iter().enumerate() {
            if *a == 0 {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                coeffs[(i + j) % k] += a * b;
            }
        }
        GroupRingElement { coeffs, modulus: self.modulus }
    }
}

impl fmt::Display for GroupRingElement {
    /// Residues, highest power first: `T^2 + 4`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms: Vec<String> = self
            .residues()
            .iter()
            .enumerate()
            .rev()
            .filter(|(_, &c)| c != 0)
            .map(|(i, &c)| match (i, c) {
                (0, c) => c.to_string(),
                (1, 1) => "T".to_string(),
                (1, c) => format!("{c}T"),
                (i, 1) => format!("T^{i}"),
                (i, c) => format!("{c}T^{i}"),
            })
            .collect();
        if terms.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", terms.join(" + "))
        }
    }
}

/// `T^m - 1`. Rejects weights divisible by `k`, where the map would vanish.
pub fn tpow_minus_one(m: i64, k: Prime) -> Result<GroupRingElement> {
    if k.reduce(m) == 0 {
        return Err(Error::WeightNotCoprime { weight: m, k: k.get() });
    }
    Ok(&GroupRingElement::monomial(m, k) - &GroupRingElement::one(k))
}

/// The norm element `1 + T + ... + T^{k-1}`.
pub fn norm(k: Prime) -> GroupRingElement {
    GroupRingElement { coeffs: vec![1; k.get() as usize], modulus: k }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(k: u64) -> Prime {
        Prime::new(k).unwrap()
    }

    #[test]
    fn t_power_minus_one_examples() {
        let e = tpow_minus_one(1, p(2)).unwrap();
        assert_eq!(e.residues(), vec![1, 1]);
        assert_eq!(e.to_string(), "T + 1");
        let e = tpow_minus_one(2, p(5)).unwrap();
        assert_eq!(e.residues(), vec![4, 0, 1, 0, 0]);
        assert_eq!(e.to_string(), "T^2 + 4");
        assert!(tpow_minus_one(5, p(5)).is_err());
        assert!(tpow_minus_one(0, p(3)).is_err());
    }

    #[test]
    fn norm_examples() {
        assert_eq!(norm(p(2)).to_string(), "T + 1");
        assert_eq!(norm(p(3)).to_string(), "T^2 + T + 1");
    }

    #[test]
    fn norm_annihilates_t_power_minus_one_integrally() {
        for k in [2, 3, 5, 7] {
            let k = p(k);
            for m in 1..k.get() as i64 {
                let prod = &norm(k) * &tpow_minus_one(m, k).unwrap();
                assert!(prod.integral_lift().iter().all(|&c| c == 0));
            }
        }
    }

    #[test]
    fn multiplication_matrix_basics() {
        let k = p(3);
        assert_eq!(GroupRingElement::one(k).as_multiplication_matrix(), FpMatrix::identity(k, 3));
        let shift = GroupRingElement::monomial(1, k).as_multiplication_matrix();
        // T maps basis vector T^j to T^{j+1}
        let expected = FpMatrix::from_rows(k, &[vec![0, 0, 1], vec![1, 0, 0], vec![0, 1, 0]]).unwrap();
        assert_eq!(shift, expected);
    }

    #[test]
    fn circulant_ranks() {
        for k in [2, 3, 5, 7] {
            let k = p(k);
            let kk = k.get() as usize;
            assert_eq!(norm(k).as_multiplication_matrix().rank(), 1);
            for m in 1..kk as i64 {
                assert_eq!(tpow_minus_one(m, k).unwrap().as_multiplication_matrix().rank(), kk - 1);
            }
        }
    }

    #[test]
    fn augmentation_values() {
        let k = p(5);
        assert_eq!(tpow_minus_one(3, k).unwrap().augmentation_integral(), 0);
        assert_eq!(norm(k).augmentation_integral(), 5);
        assert!(norm(k).augmentation().is_zero());
    }

    #[test]
    fn wrong_length_is_rejected() {
        assert!(GroupRingElement::new(vec![1, 2], p(3)).is_err());
    }
}
