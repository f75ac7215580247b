//! Squeezing verdicts for prequantized balls `B(R) x S^1`.
//!
//! The equivariant obstruction follows the inclusion diagram in degree `2nl`
//! of the window `(1, inf]`: for `R' < 1/l < R` the group of the large ball is
//! nonzero and maps nontrivially to that of `B(R)`, while the group of `B(R')`
//! vanishes, so no equivariant contact isotopy can squeeze `B(R)` into `B(R')`.

use num_traits::{One, Signed};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exact::Prime;
use crate::oracles::{ball_table, prequantize};
use crate::rational::{format_rational, integer, Rational};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum SqueezeStatus {
    Obstructed,
    SqueezablePerEKP,
    NoVerdict,
}

/// Ranks at the witness degree for `B(R'')` (any `R'' > R`), `B(R)` and `B(R')`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Diagram {
    #[serde(rename = "Rpp")]
    pub larger: usize,
    #[serde(rename = "R")]
    pub source: usize,
    #[serde(rename = "Rp")]
    pub target: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SqueezeVerdict {
    pub status: SqueezeStatus,
    pub witness: Option<u64>,
    pub degree: Option<usize>,
    pub diagram: Option<Diagram>,
}

impl SqueezeVerdict {
    fn plain(status: SqueezeStatus) -> Self {
        SqueezeVerdict { status, witness: None, degree: None, diagram: None }
    }

    pub fn is_obstructed(&self) -> bool {
        self.status == SqueezeStatus::Obstructed
    }
}

fn check_capacities(capacity: &Rational, target: &Rational) -> Result<()> {
    if !target.is_positive() || target >= capacity {
        return Err(Error::InvalidArgument(format!(
            "need 0 < R' < R, got R = {}, R' = {}",
            format_rational(capacity),
            format_rational(target)
        )));
    }
    Ok(())
}

pub fn equivariant_verdict(n: usize, k: Prime, capacity: &Rational, target: &Rational) -> Result<SqueezeVerdict> {
    equivariant_verdict_at(n, k, capacity, target, &Rational::one())
}

/// The diagram argument for the window `(a, inf]`: the smallest `l` with
/// `R' < a/l < R`.
pub fn equivariant_verdict_at(
    n: usize,
    k: Prime,
    capacity: &Rational,
    target: &Rational,
    a: &Rational,
) -> Result<SqueezeVerdict> {
    check_capacities(capacity, target)?;
    if n == 0 || !a.is_positive() {
        return Err(Error::InvalidArgument("n and a must be positive".into()));
    }
    // a/l < R  <=>  l > a/R
    let l = (a / capacity).floor().to_integer() + num_bigint::BigInt::one();
    let l_rat = Rational::from_integer(l.clone());
    if target * &l_rat >= *a {
        return Ok(SqueezeVerdict::plain(SqueezeStatus::NoVerdict));
    }
    let l: u64 = l.try_into().map_err(|_| Error::InvalidArgument("witness out of range".into()))?;
    let degree = 2 * n * l as usize;
    let rank = |r: &Rational| -> Result<usize> { Ok(prequantize(&ball_table(n, k, r, a, degree, true)?).rank(degree)) };
    let diagram = Diagram { larger: rank(&(capacity + integer(1)))?, source: rank(capacity)?, target: rank(target)? };
    Ok(SqueezeVerdict { status: SqueezeStatus::Obstructed, witness: Some(l), degree: Some(degree), diagram: Some(diagram) })
}

/// Non-equivariant verdict: the integer obstruction `R' <= m <= R`, squeezability
/// below capacity 1 in dimension at least 5, and rigidity in dimension 3.
/// The dimension 3 case is obstructed without an integer witness.
pub fn nonequivariant_verdict(n: usize, capacity: &Rational, target: &Rational) -> Result<SqueezeVerdict> {
    check_capacities(capacity, target)?;
    if n == 0 {
        return Err(Error::InvalidArgument("n must be positive".into()));
    }
    let m = target.ceil();
    if m <= *capacity {
        let m: u64 = m.to_integer().try_into().map_err(|_| Error::InvalidArgument("witness out of range".into()))?;
        return Ok(SqueezeVerdict { witness: Some(m), ..SqueezeVerdict::plain(SqueezeStatus::Obstructed) });
    }
    Ok(match n {
        1 => SqueezeVerdict::plain(SqueezeStatus::Obstructed),
        _ if *capacity < Rational::one() => SqueezeVerdict::plain(SqueezeStatus::SqueezablePerEKP),
        _ => SqueezeVerdict::plain(SqueezeStatus::NoVerdict),
    })
}

/// A target capacity that the equivariant argument always obstructs:
/// `R' = 1/(l+1)` with `l = ceil(1/R) + 1`.
pub fn obstructed_target(capacity: &Rational) -> Rational {
    let l = capacity.recip().ceil() + integer(1);
    (l + integer(1)).recip()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::ratio;

    fn p(k: u64) -> Prime {
        Prime::new(k).unwrap()
    }

    #[test]
    fn equivariant_examples() {
        let v = equivariant_verdict(2, p(3), &ratio(4, 5), &ratio(1, 10)).unwrap();
        assert_eq!(v.status, SqueezeStatus::Obstructed);
        assert_eq!((v.witness, v.degree), (Some(2), Some(8)));
        assert_eq!(v.diagram, Some(Diagram { larger: 1, source: 1, target: 0 }));

        let none = equivariant_verdict(2, p(3), &ratio(4, 5), &ratio(3, 5)).unwrap();
        assert_eq!(none.status, SqueezeStatus::NoVerdict);
        assert_eq!(none.witness, None);

        let first = equivariant_verdict(1, p(2), &ratio(5, 2), &ratio(3, 10)).unwrap();
        assert_eq!((first.witness, first.degree), (Some(1), Some(2)));
    }

    #[test]
    fn nonequivariant_examples() {
        let v = nonequivariant_verdict(2, &ratio(4, 5), &ratio(1, 10)).unwrap();
        assert_eq!(v.status, SqueezeStatus::SqueezablePerEKP);
        let v = nonequivariant_verdict(2, &ratio(3, 2), &ratio(1, 2)).unwrap();
        assert_eq!((v.status, v.witness), (SqueezeStatus::Obstructed, Some(1)));
        let v = nonequivariant_verdict(1, &ratio(4, 5), &ratio(1, 10)).unwrap();
        assert_eq!((v.status, v.witness), (SqueezeStatus::Obstructed, None));
        let v = nonequivariant_verdict(2, &ratio(5, 2), &ratio(21, 10)).unwrap();
        assert_eq!(v.status, SqueezeStatus::NoVerdict);
    }

    #[test]
    fn rejects_non_shrinking_targets() {
        assert!(equivariant_verdict(2, p(3), &ratio(1, 2), &ratio(1, 2)).is_err());
        assert!(nonequivariant_verdict(2, &ratio(1, 2), &ratio(0, 1)).is_err());
    }

    #[test]
    fn every_capacity_has_an_obstructed_target() {
        for r in [ratio(1, 10), integer(1), integer(10), ratio(2, 3), ratio(1, 1000)] {
            let rp = obstructed_target(&r);
            let v = equivariant_verdict(2, p(5), &r, &rp).unwrap();
            assert!(v.is_obstructed(), "R = {r}");
            assert_eq!(v.diagram, Some(Diagram { larger: 1, source: 1, target: 0 }));
        }
    }

    #[test]
    fn json_shape() {
        let v = equivariant_verdict(2, p(3), &ratio(4, 5), &ratio(1, 10)).unwrap();
        let json = serde_json::to_value(&v).unwrap();
        assert_eq!(
            json,
            serde_json::json!({"status": "Obstructed", "witness": 2, "degree": 8, "diagram": {"Rpp": 1, "R": 1, "Rp": 0}})
        );
    }
}
