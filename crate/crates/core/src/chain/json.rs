//! JSON form of a chain complex.
//!
//! ```json
//! { "coefficients": {"kind": "Fk", "modulus": 3},
//!   "degrees": [ { "degree": 0,
//!                  "generators": [ { "stratum": {"kind": "sphere", "index": 1},
//!                                    "inner_degree": 0, "total_degree": 0,
//!                                    "filtration": "3/4", "offset": 0, "orbit": 0 } ],
//!                  "boundary": [] } ] }
//! ```
//!
//! `boundary` lists the rows of the matrix from this degree to the one below
//! (one row per generator of degree `d - 1`). `orbit` is an index or `"quotient"`.

use serde::{Deserialize, Serialize};

use super::{Coefficients, Filtration, Generator, GradedChainComplex, Orbit, StratumId};
use crate::error::{Error, Result};
use crate::exact::Matrix;
use crate::rational::{serde_rational, Rational};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComplexDocument {
    pub coefficients: Coefficients,
    pub degrees: Vec<DegreeDocument>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DegreeDocument {
    pub degree: usize,
    pub generators: Vec<GeneratorDocument>,
    pub boundary: Vec<Vec<i64>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GeneratorDocument {
    pub stratum: StratumId,
    pub inner_degree: u32,
    pub total_degree: u32,
    #[serde(with = "serde_rational")]
    pub filtration: Rational,
    #[serde(default)]
    pub offset: u32,
    pub orbit: OrbitDocument,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum OrbitDocument {
    Index(u32),
    Label(String),
}

impl From<&Generator> for GeneratorDocument {
    fn from(g: &Generator) -> Self {
        GeneratorDocument {
            stratum: g.stratum,
            inner_degree: g.inner_degree,
            total_degree: g.total_degree,
            filtration: g.filtration.value.clone(),
            offset: g.filtration.offset,
            orbit: match g.orbit {
                Orbit::Index(i) => OrbitDocument::Index(i),
                Orbit::Quotient => OrbitDocument::Label("quotient".into()),
            },
        }
    }
}

impl TryFrom<GeneratorDocument> for Generator {
    type Error = Error;
    fn try_from(g: GeneratorDocument) -> Result<Self> {
        let orbit = match g.orbit {
            OrbitDocument::Index(i) => Orbit::Index(i),
            OrbitDocument::Label(s) if s == "quotient" => Orbit::Quotient,
            OrbitDocument::Label(s) => return Err(Error::InvalidArgument(format!("unknown orbit label '{s}'"))),
        };
        Ok(Generator {
            stratum: g.stratum,
            inner_degree: g.inner_degree,
            total_degree: g.total_degree,
            filtration: Filtration { value: g.filtration, offset: g.offset },
            orbit,
        })
    }
}

impl From<&GradedChainComplex> for ComplexDocument {
    fn from(c: &GradedChainComplex) -> Self {
        let degrees = (0..c.degree_count())
            .map(|d| DegreeDocument {
                degree: d,
                generators: c.generators(d).iter().map(GeneratorDocument::from).collect(),
                boundary: c.boundary(d).to_rows(),
            })
            .collect();
        ComplexDocument { coefficients: c.coefficients(), degrees }
    }
}

impl TryFrom<ComplexDocument> for GradedChainComplex {
    type Error = Error;
    fn try_from(doc: ComplexDocument) -> Result<Self> {
        let mut generators = Vec::with_capacity(doc.degrees.len());
        let mut boundaries = Vec::with_capacity(doc.degrees.len());
        for (d, degree) in doc.degrees.into_iter().enumerate() {
            if degree.degree != d {
                return Err(Error::InvalidArgument(format!("degree {} listed at position {d}", degree.degree)));
            }
            let gens: Vec<Generator> =
                degree.generators.into_iter().map(Generator::try_from).collect::<Result<_>>()?;
            let rows = if d == 0 { 0 } else { generators.last().map_or(0, |g: &Vec<Generator>| g.len()) };
            let matrix = if degree.boundary.is_empty() {
                Matrix::zeros(rows, gens.len())
            } else {
                Matrix::from_rows(degree.boundary)?
            };
            generators.push(gens);
            boundaries.push(matrix);
        }
        GradedChainComplex::new(doc.coefficients, generators, boundaries)
    }
}

impl GradedChainComplex {
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(ComplexDocument::from(self)).expect("complex serializes")
    }

    pub fn from_json(value: serde_json::Value) -> Result<Self> {
        let doc: ComplexDocument =
            serde_json::from_value(value).map_err(|e| Error::InvalidArgument(e.to_string()))?;
        GradedChainComplex::try_from(doc)
    }
}
