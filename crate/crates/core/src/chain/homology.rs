use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use super::{Coefficients, GradedChainComplex, Threshold, Violation};
use crate::error::Error;
use crate::exact::{smith_normal_form, FpMatrix, IntMatrix, Prime};
use crate::rational::Rational;

/// One homology group: free rank plus (over the integers) torsion invariant factors.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct HomologyGroup {
    pub rank: usize,
    #[serde(default, skip_serializing_if = "Vec::is_empty", with = "bigint_list")]
    pub torsion: Vec<BigInt>,
}

impl HomologyGroup {
    pub fn free(rank: usize) -> Self {
        HomologyGroup { rank, torsion: Vec::new() }
    }

    pub fn is_zero(&self) -> bool {
        self.rank == 0 && self.torsion.is_empty()
    }
}

impl fmt::Display for HomologyGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts: Vec<String> = Vec::new();
        match self.rank {
            0 => {}
            1 => parts.push("Z".into()),
            r => parts.push(format!("Z^{r}")),
        }
        parts.extend(self.torsion.iter().map(|t| format!("Z/{t}")));
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" + "))
        }
    }
}

/// Homology by degree. Degrees past the stored range are zero; trailing zero
/// groups are trimmed so equal tables compare equal.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HomologyTable {
    coefficients: Coefficients,
    #[serde(rename = "degrees")]
    groups: Vec<HomologyGroup>,
}

impl HomologyTable {
    pub fn new(coefficients: Coefficients, mut groups: Vec<HomologyGroup>) -> Self {
        while groups.last().is_some_and(HomologyGroup::is_zero) {
            groups.pop();
        }
        HomologyTable { coefficients, groups }
    }

    pub fn from_ranks(coefficients: Coefficients, ranks: &[usize]) -> Self {
        Self::new(coefficients, ranks.iter().map(|&r| HomologyGroup::free(r)).collect())
    }

    pub fn zero(coefficients: Coefficients) -> Self {
        Self::new(coefficients, Vec::new())
    }

    pub fn coefficients(&self) -> Coefficients {
        self.coefficients
    }

    pub fn rank(&self, degree: usize) -> usize {
        self.groups.get(degree).map_or(0, |g| g.rank)
    }

    pub fn torsion(&self, degree: usize) -> &[BigInt] {
        self.groups.get(degree).map_or(&[], |g| g.torsion.as_slice())
    }

    pub fn group(&self, degree: usize) -> HomologyGroup {
        self.groups.get(degree).cloned().unwrap_or_default()
    }

    pub fn groups(&self) -> &[HomologyGroup] {
        &self.groups
    }

    /// One past the highest nonzero degree.
    pub fn len(&self) -> usize {
        self.groups.len()
    }

    pub fn is_empty(&self) -> bool {
        self.groups.is_empty()
    }

    pub fn ranks(&self) -> Vec<usize> {
        self.groups.iter().map(|g| g.rank).collect()
    }

    /// Keeps degrees `0..=max_degree`.
    pub fn truncated(&self, max_degree: usize) -> Self {
        Self::new(self.coefficients, self.groups.iter().take(max_degree + 1).cloned().collect())
    }

    /// Shifts every degree up by `shift`.
    pub fn shifted(&self, shift: usize) -> Self {
        let mut groups = vec![HomologyGroup::default(); shift];
        groups.extend(self.groups.iter().cloned());
        Self::new(self.coefficients, groups)
    }

    pub fn direct_sum(&self, other: &HomologyTable) -> Self {
        let n = self.len().max(other.len());
        let groups = (0..n)
            .map(|d| {
                let (a, b) = (self.group(d), other.group(d));
                let mut torsion: Vec<BigInt> = a.torsion.into_iter().chain(b.torsion).collect();
                torsion.sort();
                HomologyGroup { rank: a.rank + b.rank, torsion }
            })
            .collect();
        Self::new(self.coefficients, groups)
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.groups
            .iter()
            .enumerate()
            .map(|(d, g)| if d % 2 == 0 { g.rank as i64 } else { -(g.rank as i64) })
            .sum()
    }

    /// Dimensions of homology with `F_p` coefficients, by the universal coefficient
    /// theorem: free rank plus the number of torsion factors divisible by `p` in
    /// degrees `d` and `d - 1`.
    pub fn field_ranks(&self, p: Prime) -> Vec<usize> {
        if let Coefficients::Field { .. } = self.coefficients {
            return self.ranks();
        }
        let p = BigInt::from(p.get());
        let divisible = |d: usize| self.torsion(d).iter().filter(|t| t.is_multiple_of(&p)).count();
        (0..=self.len())
            .map(|d| self.rank(d) + divisible(d) + d.checked_sub(1).map_or(0, divisible))
            .collect()
    }
}

impl fmt::Display for HomologyTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "H(")?;
        let field = matches!(self.coefficients, Coefficients::Field { .. });
        for (d, g) in self.groups.iter().enumerate() {
            if d > 0 {
                write!(f, ", ")?;
            }
            if field {
                write!(f, "{}", g.rank)?;
            } else {
                write!(f, "{g}")?;
            }
        }
        write!(f, ") over {}", self.coefficients)
    }
}

/// Homology of a (validated) complex in its own coefficients.
pub fn homology(c: &GradedChainComplex) -> HomologyTable {
    let n = c.degree_count();
    let groups = match c.coefficients() {
        Coefficients::Field { modulus } => {
            let ranks: Vec<usize> = (0..=n).map(|d| boundary_rank_mod(c, d, modulus)).collect();
            (0..n)
                .map(|d| {
                    let cycles = c.generators(d).len().saturating_sub(ranks[d]);
                    HomologyGroup::free(cycles.saturating_sub(ranks[d + 1]))
                })
                .collect()
        }
        Coefficients::Integer => {
            let forms: Vec<(usize, Vec<BigInt>)> = (0..=n)
                .map(|d| match c.boundary_ref(d) {
                    Some(m) if m.rows() > 0 && m.cols() > 0 => {
                        let snf = smith_normal_form(&IntMatrix::from_i64(m));
                        (snf.rank(), snf.torsion())
                    }
                    _ => (0, Vec::new()),
                })
                .collect();
            (0..n)
                .map(|d| {
                    let cycles = c.generators(d).len().saturating_sub(forms[d].0);
                    HomologyGroup { rank: cycles.saturating_sub(forms[d + 1].0), torsion: forms[d + 1].1.clone() }
                })
                .collect()
        }
    };
    HomologyTable::new(c.coefficients(), groups)
}

fn boundary_rank_mod(c: &GradedChainComplex, degree: usize, modulus: Prime) -> usize {
    match c.boundary_ref(degree) {
        Some(m) if m.rows() > 0 && m.cols() > 0 => FpMatrix::reduce(modulus, m).rank(),
        _ => 0,
    }
}

/// Ranks of the three maps in the long exact sequence of a triple
/// `... -> A_d -> B_d -> C_d -> A_{d-1} -> ...`, where `A = (a1, a2]`,
/// `B = (a1, +inf]`, `C = (a2, +inf]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TripleRanks {
    pub relative: HomologyTable,
    pub lower: HomologyTable,
    pub upper: HomologyTable,
    /// Rank of `A_d -> B_d`, by degree.
    pub inclusion: Vec<usize>,
    /// Rank of `B_d -> C_d`.
    pub projection: Vec<usize>,
    /// Rank of `C_d -> A_{d-1}`.
    pub connecting: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum ExactnessFailure {
    #[error(transparent)]
    Window(#[from] Error),
    #[error("complex is not valid: {0}")]
    InvalidComplex(#[from] Violation),
    #[error("no exact sequence fits the homology ranks at degree {degree}")]
    Inconsistent { degree: usize },
}

/// Checks the homology of the windows `(a1, a2]`, `(a1, inf]`, `(a2, inf]` against
/// the long exact sequence of the triple. Ranks are taken over the working field,
/// or over the rationals for integer complexes.
///
/// Exactness pins the map ranks down degree by degree from the top, so the check is
/// that this recursion never goes negative and ends with a zero connecting map
/// out of degree 0.
pub fn triple_exactness_check(
    c: &GradedChainComplex,
    a1: &Rational,
    a2: &Rational,
) -> Result<TripleRanks, ExactnessFailure> {
    c.validate()?;
    if a1 >= a2 {
        return Err(Error::InvalidWindow("a1 must be below a2".into()).into());
    }
    let (t1, t2) = (Threshold::Finite(a1.clone()), Threshold::Finite(a2.clone()));
    let relative = homology(&c.window_subquotient(&t1, &t2)?);
    let lower = homology(&c.window_subquotient(&t1, &Threshold::PosInfinity)?);
    let upper = homology(&c.window_subquotient(&t2, &Threshold::PosInfinity)?);

    let top = relative.len().max(lower.len()).max(upper.len());
    let mut inclusion = vec![0; top];
    let mut projection = vec![0; top];
    let mut connecting = vec![0; top + 1];
    let mut incoming: i64 = 0;
    for d in (0..top).rev() {
        let x = relative.rank(d) as i64 - incoming;
        let y = lower.rank(d) as i64 - x;
        let z = upper.rank(d) as i64 - y;
        if x < 0 || y < 0 || z < 0 || (d == 0 && z != 0) {
            return Err(ExactnessFailure::Inconsistent { degree: d });
        }
        inclusion[d] = x as usize;
        projection[d] = y as usize;
        connecting[d] = z as usize;
        incoming = z;
    }
    Ok(TripleRanks { relative, lower, upper, inclusion, projection, connecting })
}

/// Torsion factors as JSON integers when they fit, strings otherwise.
mod bigint_list {
    use super::*;
    use serde::{Deserializer, Serializer};

    #[derive(Serialize, Deserialize)]
    #[serde(untagged)]
    enum Wire {
        Small(i64),
        Big(String),
    }

    pub fn serialize<S: Serializer>(values: &[BigInt], s: S) -> Result<S::Ok, S::Error> {
        s.collect_seq(values.iter().map(|v| match i64::try_from(v) {
            Ok(x) => Wire::Small(x),
            Err(_) => Wire::Big(v.to_string()),
        }))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<BigInt>, D::Error> {
        Vec::<Wire>::deserialize(d)?
            .into_iter()
            .map(|w| match w {
                Wire::Small(x) => Ok(BigInt::from(x)),
                Wire::Big(s) => s.parse().map_err(serde::de::Error::custom),
            })
            .collect()
    }
}
