//! Filtered graded chain complexes and their window subquotients.
//!
//! A complex stores, for each degree `d`, an ordered generator list and the
//! boundary matrix `C_d -> C_{d-1}` (rows indexed by degree `d - 1`, columns by
//! degree `d`). Entries are integer representatives: canonical residues for
//! field coefficients, arbitrary integers for integer coefficients.

mod homology;
mod json;

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::error::{Error, Result};
use crate::exact::{FpMatrix, Matrix, Prime};
use crate::rational::{format_rational, Rational};

pub use homology::{homology, triple_exactness_check, ExactnessFailure, HomologyGroup, HomologyTable, TripleRanks};
pub use json::ComplexDocument;

/// Which critical stratum a generator comes from.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(tag = "kind", content = "index", rename_all = "snake_case")]
pub enum StratumId {
    Sphere(u32),
    Origin,
    Infinity,
    Tower(u32),
}

/// Position of a generator inside its free orbit, or the single generator of a quotient.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Orbit {
    Index(u32),
    Quotient,
}

/// Exact filtration level of a generator.
///
/// `value` is the critical value of its stratum. `offset` records the index of the
/// generator under an infinitesimal Morse perturbation of a Morse-Bott stratum, so
/// generators of one stratum are strictly ordered without moving any window endpoint.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Filtration {
    pub value: Rational,
    pub offset: u32,
}

impl Filtration {
    pub fn at(value: Rational) -> Self {
        Filtration { value, offset: 0 }
    }
}

impl fmt::Display for Filtration {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.offset == 0 {
            write!(f, "{}", format_rational(&self.value))
        } else {
            write!(f, "{}+{}e", format_rational(&self.value), self.offset)
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Generator {
    pub stratum: StratumId,
    pub inner_degree: u32,
    pub total_degree: u32,
    pub filtration: Filtration,
    pub orbit: Orbit,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "kind")]
pub enum Coefficients {
    #[serde(rename = "Fk")]
    Field { modulus: Prime },
    #[serde(rename = "Z")]
    Integer,
}

impl fmt::Display for Coefficients {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Coefficients::Field { modulus } => write!(f, "F_{modulus}"),
            Coefficients::Integer => write!(f, "Z"),
        }
    }
}

/// First failing entry found by [`GradedChainComplex::validate`].
#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum Violation {
    #[error("boundary of boundary is nonzero at degree {degree}, entry ({row}, {col})")]
    BoundarySquared { degree: usize, row: usize, col: usize },
    #[error("boundary does not decrease filtration at degree {degree}, entry ({row}, {col})")]
    Filtration { degree: usize, row: usize, col: usize },
    #[error("generator {index} in degree {degree} has total degree {found}")]
    Degree { degree: usize, index: usize, found: u32 },
}

/// One end of a window `(a, b]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Threshold {
    NegInfinity,
    Finite(Rational),
    PosInfinity,
}

impl Threshold {
    fn rank(&self) -> u8 {
        match self {
            Threshold::NegInfinity => 0,
            Threshold::Finite(_) => 1,
            Threshold::PosInfinity => 2,
        }
    }

    fn below(&self, value: &Rational) -> bool {
        match self {
            Threshold::NegInfinity => true,
            Threshold::Finite(t) => t < value,
            Threshold::PosInfinity => false,
        }
    }

    fn lt(&self, other: &Threshold) -> bool {
        match (self, other) {
            (Threshold::Finite(a), Threshold::Finite(b)) => a < b,
            _ => self.rank() < other.rank(),
        }
    }
}

impl From<Rational> for Threshold {
    fn from(value: Rational) -> Self {
        Threshold::Finite(value)
    }
}

impl fmt::Display for Threshold {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Threshold::NegInfinity => write!(f, "-inf"),
            Threshold::Finite(v) => write!(f, "{}", format_rational(v)),
            Threshold::PosInfinity => write!(f, "+inf"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedChainComplex {
    coefficients: Coefficients,
    generators: Vec<Vec<Generator>>,
    boundaries: Vec<Matrix<i64>>,
}

impl GradedChainComplex {
    /// Assembles a complex, checking only matrix shapes. Call [`validate`](Self::validate)
    /// before computing homology.
    pub fn new(
        coefficients: Coefficients,
        generators: Vec<Vec<Generator>>,
        boundaries: Vec<Matrix<i64>>,
    ) -> Result<Self> {
        if generators.len() != boundaries.len() {
            return Err(Error::DimensionMismatch(format!(
                "{} generator degrees but {} boundary matrices",
                generators.len(),
                boundaries.len()
            )));
        }
        for (d, m) in boundaries.iter().enumerate() {
            let rows = if d == 0 { 0 } else { generators[d - 1].len() };
            if m.rows() != rows || m.cols() != generators[d].len() {
                return Err(Error::DimensionMismatch(format!(
                    "boundary in degree {d} is {}x{}, expected {rows}x{}",
                    m.rows(),
                    m.cols(),
                    generators[d].len()
                )));
            }
        }
        let boundaries = match coefficients {
            Coefficients::Field { modulus } => boundaries
                .into_iter()
                .map(|m| m.map(|&v| modulus.reduce(v) as i64))
                .collect(),
            Coefficients::Integer => boundaries,
        };
        Ok(GradedChainComplex { coefficients, generators, boundaries })
    }

    pub fn empty(coefficients: Coefficients) -> Self {
        GradedChainComplex { coefficients, generators: Vec::new(), boundaries: Vec::new() }
    }

    pub fn coefficients(&self) -> Coefficients {
        self.coefficients
    }

    /// Number of stored degrees; degrees at or beyond this are empty.
    pub fn degree_count(&self) -> usize {
        self.generators.len()
    }

    pub fn generators(&self, degree: usize) -> &[Generator] {
        self.generators.get(degree).map_or(&[], Vec::as_slice)
    }

    pub fn all_generators(&self) -> impl Iterator<Item = &Generator> {
        self.generators.iter().flatten()
    }

    pub fn generator_count(&self) -> usize {
        self.generators.iter().map(Vec::len).sum()
    }

    /// Boundary `C_degree -> C_{degree-1}`; an empty matrix outside the stored range.
    pub fn boundary(&self, degree: usize) -> Matrix<i64> {
        match self.boundaries.get(degree) {
            Some(m) => m.clone(),
            None => {
                let rows = degree.checked_sub(1).map_or(0, |d| self.generators(d).len());
                Matrix::zeros(rows, 0)
            }
        }
    }

    pub(crate) fn boundary_ref(&self, degree: usize) -> Option<&Matrix<i64>> {
        self.boundaries.get(degree)
    }

    /// Boundary reduced into a prime field.
    pub fn boundary_mod(&self, degree: usize, modulus: Prime) -> FpMatrix {
        FpMatrix::reduce(modulus, &self.boundary(degree))
    }

    /// Euler characteristic from generator counts.
    pub fn euler_characteristic(&self) -> i64 {
        self.generators
            .iter()
            .enumerate()
            .map(|(d, g)| if d % 2 == 0 { g.len() as i64 } else { -(g.len() as i64) })
            .sum()
    }

    /// The same complex with entries reduced mod a prime.
    pub fn reduce_mod(&self, modulus: Prime) -> GradedChainComplex {
        GradedChainComplex::new(Coefficients::Field { modulus }, self.generators.clone(), self.boundaries.clone())
            .expect("shapes unchanged")
    }

    /// Checks total degrees, `d^2 = 0` and that every nonzero boundary entry strictly
    /// lowers the filtration.
    pub fn validate(&self) -> std::result::Result<(), Violation> {
        for (d, gens) in self.generators.iter().enumerate() {
            if let Some((index, g)) = gens.iter().enumerate().find(|(_, g)| g.total_degree as usize != d) {
                return Err(Violation::Degree { degree: d, index, found: g.total_degree });
            }
        }
        for d in 1..self.boundaries.len() {
            let m = &self.boundaries[d];
            for row in 0..m.rows() {
                for col in 0..m.cols() {
                    if *m.get(row, col) != 0
                        && self.generators[d - 1][row].filtration >= self.generators[d][col].filtration
                    {
                        return Err(Violation::Filtration { degree: d, row, col });
                    }
                }
            }
        }
        for d in 2..self.boundaries.len() {
            let (outer, inner) = (&self.boundaries[d - 1], &self.boundaries[d]);
            for row in 0..outer.rows() {
                for col in 0..inner.cols() {
                    let sum: i128 =
                        (0..outer.cols()).map(|t| *outer.get(row, t) as i128 * *inner.get(t, col) as i128).sum();
                    let nonzero = match self.coefficients {
                        Coefficients::Field { modulus } => sum.rem_euclid(modulus.get() as i128) != 0,
                        Coefficients::Integer => sum != 0,
                    };
                    if nonzero {
                        return Err(Violation::BoundarySquared { degree: d, row, col });
                    }
                }
            }
        }
        Ok(())
    }

    /// Critical values present in the complex.
    pub fn critical_values(&self) -> Vec<Rational> {
        let mut values: Vec<Rational> = self.all_generators().map(|g| g.filtration.value.clone()).collect();
        values.sort();
        values.dedup();
        values
    }

    /// The subquotient spanned by generators with `a < value <= b`, which computes the
    /// relative homology of the sublevel pair `(E^b, E^a)`.
    pub fn window_subquotient(&self, a: &Threshold, b: &Threshold) -> Result<GradedChainComplex> {
        if !a.lt(b) {
            return Err(Error::InvalidWindow(format!("lower end {a} is not below upper end {b}")));
        }
        for t in [a, b] {
            if let Threshold::Finite(v) = t {
                if self.all_generators().any(|g| &g.filtration.value == v) {
                    return Err(Error::CriticalEndpoint(format_rational(v)));
                }
            }
        }
        let keep = |g: &Generator| a.below(&g.filtration.value) && !b.below(&g.filtration.value);
        let kept: Vec<Vec<usize>> = self
            .generators
            .iter()
            .map(|gens| gens.iter().enumerate().filter(|(_, g)| keep(g)).map(|(i, _)| i).collect())
            .collect();
        let generators = self
            .generators
            .iter()
            .zip(&kept)
            .map(|(gens, idx)| idx.iter().map(|&i| gens[i].clone()).collect())
            .collect();
        let boundaries = (0..self.boundaries.len())
            .map(|d| {
                let rows: &[usize] = if d == 0 { &[] } else { &kept[d - 1] };
                self.boundaries[d].select(rows, &kept[d])
            })
            .collect();
        Ok(GradedChainComplex { coefficients: self.coefficients, generators, boundaries })
    }

    /// Degreewise direct sum; coefficients must agree.
    pub fn direct_sum(&self, other: &GradedChainComplex) -> Result<GradedChainComplex> {
        if self.coefficients != other.coefficients {
            return Err(Error::InvalidArgument("direct sum of complexes with different coefficients".into()));
        }
        let n = self.degree_count().max(other.degree_count());
        let generators: Vec<Vec<Generator>> = (0..n)
            .map(|d| self.generators(d).iter().chain(other.generators(d)).cloned().collect())
            .collect();
        let boundaries = (0..n)
            .map(|d| {
                let (a, b) = (self.boundary(d), other.boundary(d));
                Matrix::from_fn(a.rows() + b.rows(), a.cols() + b.cols(), |i, j| {
                    match (i < a.rows(), j < a.cols()) {
                        (true, true) => *a.get(i, j),
                        (false, false) => *b.get(i - a.rows(), j - a.cols()),
                        _ => 0,
                    }
                })
            })
            .collect();
        GradedChainComplex::new(self.coefficients, generators, boundaries)
    }
}

/// Incremental construction of a complex by generator and boundary entry.
#[derive(Clone, Debug)]
pub struct ComplexBuilder {
    coefficients: Coefficients,
    generators: Vec<Vec<Generator>>,
    entries: Vec<(usize, usize, usize, i64)>,
}

impl ComplexBuilder {
    pub fn new(coefficients: Coefficients) -> Self {
        ComplexBuilder { coefficients, generators: Vec::new(), entries: Vec::new() }
    }

    /// Appends a generator in its total degree and returns its index there.
    pub fn add_generator(&mut self, generator: Generator) -> usize {
        let d = generator.total_degree as usize;
        if self.generators.len() <= d {
            self.generators.resize_with(d + 1, Vec::new);
        }
        self.generators[d].push(generator);
        self.generators[d].len() - 1
    }

    /// Adds `coefficient * target` to the boundary of `source`, where `source` lives in
    /// `degree` and `target` in `degree - 1`.
    pub fn add_boundary(&mut self, degree: usize, source: usize, target: usize, coefficient: i64) {
        assert!(degree >= 1, "no boundary out of degree 0");
        self.entries.push((degree, target, source, coefficient));
    }

    /// Ensures degrees up to `degree` exist even if empty.
    pub fn reserve_degree(&mut self, degree: usize) {
        if self.generators.len() <= degree {
            self.generators.resize_with(degree + 1, Vec::new);
        }
    }

    pub fn build(self) -> Result<GradedChainComplex> {
        let gens = self.generators;
        let mut boundaries: Vec<Matrix<i64>> = (0..gens.len())
            .map(|d| Matrix::zeros(if d == 0 { 0 } else { gens[d - 1].len() }, gens[d].len()))
            .collect();
        for (d, row, col, value) in self.entries {
            let m = boundaries
                .get_mut(d)
                .ok_or_else(|| Error::DimensionMismatch(format!("boundary entry in missing degree {d}")))?;
            if row >= m.rows() || col >= m.cols() {
                return Err(Error::DimensionMismatch(format!("boundary entry ({row}, {col}) in degree {d}")));
            }
            let current = *m.get(row, col);
            m.set(row, col, current + value);
        }
        GradedChainComplex::new(self.coefficients, gens, boundaries)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{integer, ratio};

    fn field(k: u64) -> Coefficients {
        Coefficients::Field { modulus: Prime::new(k).unwrap() }
    }

    pub(crate) fn generator(degree: u32, value: Rational, offset: u32) -> Generator {
        Generator {
            stratum: StratumId::Sphere(1),
            inner_degree: degree,
            total_degree: degree,
            filtration: Filtration { value, offset },
            orbit: Orbit::Index(0),
        }
    }

    #[test]
    fn single_generator_is_valid() {
        let mut b = ComplexBuilder::new(field(2));
        b.add_generator(generator(0, integer(1), 0));
        assert_eq!(b.build().unwrap().validate(), Ok(()));
    }

    #[test]
    fn equal_filtration_boundary_is_a_violation() {
        let mut b = ComplexBuilder::new(field(3));
        let y = b.add_generator(generator(0, integer(1), 0));
        let x = b.add_generator(generator(1, integer(1), 0));
        b.add_boundary(1, x, y, 1);
        let c = b.build().unwrap();
        assert_eq!(c.validate(), Err(Violation::Filtration { degree: 1, row: 0, col: 0 }));
    }

    #[test]
    fn perturbation_offset_orders_a_stratum() {
        let mut b = ComplexBuilder::new(field(3));
        let y = b.add_generator(generator(0, integer(1), 0));
        let x = b.add_generator(generator(1, integer(1), 1));
        b.add_boundary(1, x, y, 1);
        assert_eq!(b.build().unwrap().validate(), Ok(()));
    }

    #[test]
    fn detects_nonzero_boundary_squared() {
        let mut b = ComplexBuilder::new(Coefficients::Integer);
        let z = b.add_generator(generator(0, integer(1), 0));
        let y = b.add_generator(generator(1, integer(2), 0));
        let x = b.add_generator(generator(2, integer(3), 0));
        b.add_boundary(1, y, z, 1);
        b.add_boundary(2, x, y, 2);
        let c = b.build().unwrap();
        assert_eq!(c.validate(), Err(Violation::BoundarySquared { degree: 2, row: 0, col: 0 }));
        // mod 2 the composite vanishes
        assert_eq!(c.reduce_mod(Prime::new(2).unwrap()).validate(), Ok(()));
    }

    #[test]
    fn windows() {
        let mut b = ComplexBuilder::new(field(2));
        let y = b.add_generator(generator(0, integer(1), 0));
        let x = b.add_generator(generator(1, integer(2), 0));
        b.add_boundary(1, x, y, 1);
        let c = b.build().unwrap();

        let empty = c.window_subquotient(&ratio(5, 2).into(), &integer(3).into()).unwrap();
        assert_eq!(empty.generator_count(), 0);

        let whole = c.window_subquotient(&Threshold::NegInfinity, &Threshold::PosInfinity).unwrap();
        assert_eq!(whole, c);

        let top = c.window_subquotient(&ratio(3, 2).into(), &Threshold::PosInfinity).unwrap();
        assert_eq!(top.generator_count(), 1);
        assert_eq!(top.generators(1).len(), 1);
        assert_eq!(top.boundary(1).rows(), 0);

        assert!(matches!(
            c.window_subquotient(&integer(1).into(), &integer(3).into()),
            Err(Error::CriticalEndpoint(_))
        ));
        assert!(matches!(
            c.window_subquotient(&integer(3).into(), &integer(0).into()),
            Err(Error::InvalidWindow(_))
        ));
    }

    #[test]
    fn rejects_misshapen_boundaries() {
        let gens = vec![vec![generator(0, integer(1), 0)], vec![generator(1, integer(2), 0)]];
        let bad = vec![Matrix::zeros(0, 1), Matrix::zeros(2, 1)];
        assert!(GradedChainComplex::new(field(2), gens, bad).is_err());
    }
}
