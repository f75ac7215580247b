//! Closed-form homology of balls and lens spaces.
//!
//! For a ball `B(R)` in `R^{2n}` and the window `(a, inf]`:
//!
//! * non-equivariant: rank 1 exactly in degree `2nl` when `a/l <= R < a/(l-1)`;
//! * `Z_k`-equivariant: rank 1 in degrees `2nl <= d < 2n(l+1) - 1` whenever `R >= a/l`.

use num_bigint::BigInt;
use num_traits::Signed;
use serde::{Deserialize, Serialize};

use crate::chain::{Coefficients, HomologyGroup, HomologyTable};
use crate::error::{Error, Result};
use crate::exact::Prime;
use crate::morse_bott::LensData;
use crate::rational::{integer, serde_rational, Rational};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OracleQuery {
    pub n: usize,
    pub k: Prime,
    #[serde(rename = "R", with = "serde_rational")]
    pub capacity: Rational,
    #[serde(with = "serde_rational")]
    pub a: Rational,
    pub degree: usize,
    pub equivariant: bool,
}

impl OracleQuery {
    pub fn new(n: usize, k: Prime, capacity: Rational, a: Rational, degree: usize, equivariant: bool) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidArgument("n must be positive".into()));
        }
        if !capacity.is_positive() || !a.is_positive() {
            return Err(Error::InvalidArgument("R and a must be positive".into()));
        }
        Ok(OracleQuery { n, k, capacity, a, degree, equivariant })
    }

    /// Dispatches on the `equivariant` flag.
    pub fn rank(&self) -> usize {
        if self.equivariant {
            balls_homology_eq(self)
        } else {
            balls_homology(self)
        }
    }
}

pub fn balls_homology(q: &OracleQuery) -> usize {
    let period = 2 * q.n;
    if q.degree == 0 || !q.degree.is_multiple_of(period) {
        return 0;
    }
    let l = (q.degree / period) as i64;
    let r_l = &q.capacity * integer(l);
    let above = r_l >= q.a;
    let below = l == 1 || &q.capacity * integer(l - 1) < q.a;
    usize::from(above && below)
}

pub fn balls_homology_eq(q: &OracleQuery) -> usize {
    let period = 2 * q.n;
    let l = q.degree / period;
    if q.degree == 0 || l == 0 || q.degree % period == period - 1 {
        return 0;
    }
    usize::from(&q.capacity * integer(l as i64) >= q.a)
}

/// Whether the map induced by `B(R) ⊂ B(R')` in degree `2nl` is an isomorphism
/// between nonzero groups, i.e. `a/l <= R < R' < a/(l-1)`.
pub fn inclusion_is_isomorphism(n: usize, capacity: &Rational, larger: &Rational, a: &Rational, degree: usize) -> bool {
    if capacity >= larger || n == 0 || degree == 0 || !degree.is_multiple_of(2 * n) {
        return false;
    }
    let l = (degree / (2 * n)) as i64;
    capacity * integer(l) >= *a && (l == 1 || larger * integer(l - 1) < *a)
}

/// Oracle table over `F_k` for degrees `0..=max_degree`.
pub fn ball_table(
    n: usize,
    k: Prime,
    capacity: &Rational,
    a: &Rational,
    max_degree: usize,
    equivariant: bool,
) -> Result<HomologyTable> {
    let ranks = (0..=max_degree)
        .map(|degree| {
            OracleQuery::new(n, k, capacity.clone(), a.clone(), degree, equivariant).map(|q| q.rank())
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(HomologyTable::from_ranks(Coefficients::Field { modulus: k }, &ranks))
}

/// Homology of `L_k^{2n-1}`; the weights do not affect it. Field tables follow
/// from the integral one by universal coefficients.
pub fn lens_homology(lens: &LensData, coefficients: Coefficients) -> HomologyTable {
    let n = lens.n();
    let k = BigInt::from(lens.k().get());
    let groups = (0..2 * n)
        .map(|d| {
            if d == 0 || d == 2 * n - 1 {
                HomologyGroup::free(1)
            } else if d % 2 == 1 {
                HomologyGroup { rank: 0, torsion: vec![k.clone()] }
            } else {
                HomologyGroup::default()
            }
        })
        .collect();
    let integral = HomologyTable::new(Coefficients::Integer, groups);
    match coefficients {
        Coefficients::Integer => integral,
        Coefficients::Field { modulus } => HomologyTable::from_ranks(coefficients, &integral.field_ranks(modulus)),
    }
}

/// Tensor with `H_*(S^1)`: degree `d` receives degrees `d` and `d - 1`.
pub fn prequantize(table: &HomologyTable) -> HomologyTable {
    table.direct_sum(&table.shifted(1))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::ratio;

    fn q(n: usize, r: Rational, degree: usize, eq: bool) -> OracleQuery {
        OracleQuery::new(n, Prime::new(3).unwrap(), r, integer(1), degree, eq).unwrap()
    }

    #[test]
    fn closed_form_examples() {
        assert_eq!(balls_homology(&q(2, ratio(3, 5), 8, false)), 1);
        assert_eq!(balls_homology(&q(2, ratio(3, 5), 4, false)), 0);
        assert_eq!(balls_homology(&q(2, ratio(3, 5), 7, false)), 0);
        assert_eq!(balls_homology_eq(&q(2, ratio(3, 5), 9, true)), 1);
        assert_eq!(balls_homology_eq(&q(2, ratio(3, 5), 11, true)), 0);
        assert_eq!(balls_homology_eq(&q(2, ratio(3, 10), 8, true)), 0);
    }

    #[test]
    fn boundary_capacity_is_included() {
        // R = a/l exactly
        assert_eq!(balls_homology(&q(1, ratio(1, 2), 4, false)), 1);
        assert_eq!(balls_homology(&q(1, ratio(1, 2), 2, false)), 0);
        assert_eq!(balls_homology_eq(&q(1, ratio(1, 2), 4, true)), 1);
    }

    #[test]
    fn exactly_one_nonequivariant_degree() {
        for (num, den) in [(3, 10), (7, 10), (13, 10), (5, 2), (1, 7)] {
            for n in 1..=3 {
                let count = (1..=200).filter(|&d| balls_homology(&q(n, ratio(num, den), d, false)) == 1).count();
                assert_eq!(count, 1, "R = {num}/{den}, n = {n}");
            }
        }
    }

    #[test]
    fn equivariant_is_monotone_in_capacity() {
        let caps = [ratio(1, 10), ratio(3, 10), ratio(1, 2), ratio(7, 10), integer(1), integer(3)];
        for d in 1..=24 {
            for w in caps.windows(2) {
                assert!(balls_homology_eq(&q(2, w[0].clone(), d, true)) <= balls_homology_eq(&q(2, w[1].clone(), d, true)));
            }
        }
    }

    #[test]
    fn lens_over_other_primes_is_a_homology_sphere() {
        let lens = LensData::standard(3, Prime::new(3).unwrap()).unwrap();
        let t = lens_homology(&lens, Coefficients::Field { modulus: Prime::new(2).unwrap() });
        assert_eq!(t.ranks(), vec![1, 0, 0, 0, 0, 1]);
    }

    #[test]
    fn lens_tables() {
        let p5 = Prime::new(5).unwrap();
        let l1 = LensData::standard(1, p5).unwrap();
        assert_eq!(lens_homology(&l1, Coefficients::Field { modulus: p5 }).ranks(), vec![1, 1]);
        let l2 = LensData::standard(2, p5).unwrap();
        assert_eq!(lens_homology(&l2, Coefficients::Field { modulus: p5 }).ranks(), vec![1, 1, 1, 1]);
        assert_eq!(lens_homology(&l2, Coefficients::Integer).to_string(), "H(Z, Z/5, 0, Z) over Z");
    }

    #[test]
    fn prequantize_examples() {
        let f = Coefficients::Field { modulus: Prime::new(2).unwrap() };
        let t = HomologyTable::from_ranks(f, &[0, 0, 0, 0, 1]);
        assert_eq!(prequantize(&t).ranks(), vec![0, 0, 0, 0, 1, 1]);
        assert_eq!(prequantize(&HomologyTable::zero(f)), HomologyTable::zero(f));
        let lens = HomologyTable::from_ranks(f, &[1, 1]);
        assert_eq!(prequantize(&lens).ranks(), vec![1, 2, 1]);
    }

    #[test]
    fn inclusion_isomorphism_range() {
        let a = integer(1);
        assert!(inclusion_is_isomorphism(2, &ratio(3, 5), &ratio(9, 10), &a, 8));
        assert!(!inclusion_is_isomorphism(2, &ratio(3, 5), &ratio(11, 10), &a, 8));
        assert!(!inclusion_is_isomorphism(2, &ratio(3, 5), &ratio(9, 10), &a, 4));
    }
}
