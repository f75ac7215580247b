use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

const MAX_MODULUS: u64 = 1 << 31;

/// A prime modulus, validated at construction.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "u64", into = "u64")]
pub struct Prime(u64);

impl Prime {
    pub fn new(k: u64) -> Result<Self> {
        if k >= MAX_MODULUS {
            return Err(Error::ModulusTooLarge(k));
        }
        if !is_prime(k) {
            return Err(Error::NotPrime(k));
        }
        Ok(Prime(k))
    }

    pub fn get(self) -> u64 {
        self.0
    }

    /// Canonical residue of an integer.
    pub fn reduce(self, value: i64) -> u64 {
        value.rem_euclid(self.0 as i64) as u64
    }

    pub fn add(self, a: u64, b: u64) -> u64 {
        (a + b) % self.0
    }

    pub fn sub(self, a: u64, b: u64) -> u64 {
        (a + self.0 - b) % self.0
    }

    pub fn mul(self, a: u64, b: u64) -> u64 {
        (a * b) % self.0
    }

    pub fn neg(self, a: u64) -> u64 {
        (self.0 - a) % self.0
    }

    pub fn pow(self, mut base: u64, mut exp: u64) -> u64 {
        let mut acc = 1 % self.0;
        base %= self.0;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            exp >>= 1;
        }
        acc
    }

    /// Inverse by Fermat's little theorem; `None` for zero.
    pub fn inv(self, a: u64) -> Option<u64> {
        if a.is_multiple_of(self.0) {
            None
        } else {
            Some(self.pow(a, self.0 - 2))
        }
    }
}

impl TryFrom<u64> for Prime {
    type Error = Error;
    fn try_from(k: u64) -> Result<Self> {
        Prime::new(k)
    }
}

impl From<Prime> for u64 {
    fn from(p: Prime) -> u64 {
        p.0
    }
}

impl fmt::Display for Prime {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

pub fn is_prime(k: u64) -> bool {
    if k < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= k {
        if k.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// An element of the prime field of order `modulus`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct FieldScalar {
    value: u64,
    modulus: Prime,
}

impl FieldScalar {
    pub fn new(value: i64, modulus: Prime) -> Self {
        FieldScalar { value: modulus.reduce(value), modulus }
    }

    pub fn zero(modulus: Prime) -> Self {
        FieldScalar { value: 0, modulus }
    }

    pub fn one(modulus: Prime) -> Self {
        FieldScalar { value: 1 % modulus.get(), modulus }
    }

    pub fn value(self) -> u64 {
        self.value
    }

    pub fn modulus(self) -> Prime {
        self.modulus
    }

    pub fn is_zero(self) -> bool {
        self.value == 0
    }

    pub fn inv(self) -> Option<Self> {
        self.modulus
            .inv(self.value)
            .map(|value| FieldScalar { value, modulus: self.modulus })
    }

    pub fn pow(self, exp: u64) -> Self {
        FieldScalar { value: self.modulus.pow(self.value, exp), modulus: self.modulus }
    }

    fn check(self, other: Self) {
        assert_eq!(self.modulus, other.modulus, "field scalars over different primes");
    }
}

impl Add for FieldScalar {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        self.check(rhs);
        FieldScalar { value: self.modulus.add(self.value, rhs.value), modulus: self.modulus }
    }
}

impl Sub for FieldScalar {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        self.check(rhs);
        FieldScalar { value: self.modulus.sub(self.value, rhs.value), modulus: self.modulus }
    }
}

impl Mul for FieldScalar {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        self.check(rhs);
        FieldScalar { value: self.modulus.mul(self.value, rhs.value), modulus: self.modulus }
    }
}

impl Neg for FieldScalar {
    type Output = Self;
    fn neg(self) -> Self {
        FieldScalar { value: self.modulus.neg(self.value), modulus: self.modulus }
    }
}

impl fmt::Display for FieldScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} (mod {})", self.value, self.modulus)
    }
}
