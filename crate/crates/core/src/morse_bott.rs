//! Filtered chain complexes of the radial Hamiltonians supported in a ball.
//!
//! The generating function of such a map has one Morse-Bott sphere `S^{2n-1}` per
//! fixed circle family `j = 1..nu` (index `2jn`, value `c_j = jR r_j + rho(r_j)`),
//! a nondegenerate point at the origin (index `2(nu+1)n`, value `rho(0)`) and the
//! point at infinity (index 0, value 0). Each sphere is resolved by a
//! `Z_k`-invariant perfect Morse function with `k` cells in every dimension
//! `0..2n`, giving a free block over `F_k[T]/(T^k - 1)` whose boundaries alternate
//! between `T^{w_i} - 1` and the norm element.

use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::chain::{
    homology, Coefficients, ComplexBuilder, Filtration, Generator, GradedChainComplex, HomologyTable, Orbit,
    StratumId, Threshold,
};
use crate::error::{Error, Result};
use crate::exact::Prime;
use crate::group_ring::{norm, tpow_minus_one, GroupRingElement};
use crate::rational::{format_rational, integer, is_integer, serde_rational, serde_rational_vec, Rational};

/// Weighted rotation action of `Z_k` on `C^n`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "LensWire", into = "LensWire")]
pub struct LensData {
    k: Prime,
    weights: Vec<i64>,
}

#[derive(Serialize, Deserialize)]
struct LensWire {
    n: usize,
    k: u64,
    weights: Vec<i64>,
}

impl TryFrom<LensWire> for LensData {
    type Error = Error;
    fn try_from(w: LensWire) -> Result<Self> {
        if w.n != w.weights.len() {
            return Err(Error::DimensionMismatch(format!("n = {} with {} weights", w.n, w.weights.len())));
        }
        LensData::new(Prime::new(w.k)?, w.weights)
    }
}

impl From<LensData> for LensWire {
    fn from(l: LensData) -> Self {
        LensWire { n: l.n(), k: l.k.get(), weights: l.weights }
    }
}

impl LensData {
    pub fn new(k: Prime, weights: Vec<i64>) -> Result<Self> {
        if weights.is_empty() {
            return Err(Error::InvalidArgument("at least one weight is required".into()));
        }
        if let Some(&w) = weights.iter().find(|&&w| k.reduce(w) == 0) {
            return Err(Error::WeightNotCoprime { weight: w, k: k.get() });
        }
        Ok(LensData { k, weights })
    }

    /// All weights equal to one.
    pub fn standard(n: usize, k: Prime) -> Result<Self> {
        Self::new(k, vec![1; n])
    }

    pub fn n(&self) -> usize {
        self.weights.len()
    }

    pub fn k(&self) -> Prime {
        self.k
    }

    pub fn weights(&self) -> &[i64] {
        &self.weights
    }

    /// Every weight vector of length `n` with entries in `1..k` (all coprime to prime `k`).
    pub fn all_weight_vectors(n: usize, k: Prime) -> Vec<LensData> {
        let base = k.get() as i64 - 1;
        let total = base.pow(n as u32);
        (0..total)
            .map(|mut code| {
                let weights = (0..n)
                    .map(|_| {
                        let w = code % base + 1;
                        code /= base;
                        w
                    })
                    .collect();
                LensData { k, weights }
            })
            .collect()
    }
}

/// Critical data of a radial profile: capacity `R`, radii `r_1 > ... > r_nu` where
/// `rho'(r_j) = -jR`, the values `rho(r_j)` and `rho(0)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "ProfileWire", into = "ProfileWire")]
pub struct Profile {
    capacity: Rational,
    radii: Vec<Rational>,
    values: Vec<Rational>,
    rho0: Rational,
}

#[derive(Serialize, Deserialize)]
struct ProfileWire {
    #[serde(rename = "R", with = "serde_rational")]
    capacity: Rational,
    nu: usize,
    #[serde(with = "serde_rational_vec")]
    radii: Vec<Rational>,
    #[serde(with = "serde_rational_vec")]
    values: Vec<Rational>,
    #[serde(with = "serde_rational")]
    rho0: Rational,
}

impl TryFrom<ProfileWire> for Profile {
    type Error = Error;
    fn try_from(w: ProfileWire) -> Result<Self> {
        if w.nu != w.radii.len() {
            return Err(Error::InvalidProfile(format!("nu = {} with {} radii", w.nu, w.radii.len())));
        }
        Profile::new(w.capacity, w.radii, w.values, w.rho0)
    }
}

impl From<Profile> for ProfileWire {
    fn from(p: Profile) -> Self {
        ProfileWire { nu: p.nu(), capacity: p.capacity, radii: p.radii, values: p.values, rho0: p.rho0 }
    }
}

impl Profile {
    pub fn new(capacity: Rational, radii: Vec<Rational>, values: Vec<Rational>, rho0: Rational) -> Result<Self> {
        let bad = |msg: String| Err(Error::InvalidProfile(msg));
        if !capacity.is_positive() {
            return bad(format!("capacity {} must be positive", format_rational(&capacity)));
        }
        if radii.is_empty() {
            return bad("at least one sphere stratum is required".into());
        }
        if radii.len() != values.len() {
            return bad(format!("{} radii but {} values", radii.len(), values.len()));
        }
        let one = Rational::one();
        for (j, r) in radii.iter().enumerate() {
            if !r.is_positive() || *r >= one {
                return bad(format!("radius r_{} = {} is outside (0, 1)", j + 1, format_rational(r)));
            }
        }
        if let Some(j) = (1..radii.len()).find(|&j| radii[j] >= radii[j - 1]) {
            return bad(format!("radii must strictly decrease (r_{} >= r_{})", j + 1, j));
        }
        let profile = Profile { capacity, radii, values, rho0 };
        let cs = profile.critical_values();
        for (j, c) in cs.iter().enumerate() {
            let bound = integer(j as i64 + 1) * &profile.capacity;
            if !c.is_positive() || *c >= bound {
                return bad(format!(
                    "critical value c_{} = {} is outside (0, {})",
                    j + 1,
                    format_rational(c),
                    format_rational(&bound)
                ));
            }
        }
        if let Some(j) = (1..cs.len()).find(|&j| cs[j] <= cs[j - 1]) {
            return bad(format!("critical values must increase (c_{} <= c_{})", j + 1, j));
        }
        if profile.rho0 <= *cs.last().expect("nonempty") {
            return bad(format!("rho(0) = {} must exceed every sphere value", format_rational(&profile.rho0)));
        }
        Ok(profile)
    }

    /// Profile with prescribed sphere values `c_j`, using radii `r_j = 1/(j+1)`.
    pub fn from_critical_values(capacity: Rational, critical_values: &[Rational], rho0: Rational) -> Result<Self> {
        let radii: Vec<Rational> =
            (1..=critical_values.len()).map(|j| Rational::new(1.into(), (j as i64 + 1).into())).collect();
        let values = critical_values
            .iter()
            .zip(&radii)
            .enumerate()
            .map(|(i, (c, r))| c - integer(i as i64 + 1) * &capacity * r)
            .collect();
        Profile::new(capacity, radii, values, rho0)
    }

    pub fn capacity(&self) -> &Rational {
        &self.capacity
    }

    pub fn nu(&self) -> usize {
        self.radii.len()
    }

    pub fn radii(&self) -> &[Rational] {
        &self.radii
    }

    pub fn values(&self) -> &[Rational] {
        &self.values
    }

    pub fn rho0(&self) -> &Rational {
        &self.rho0
    }

    /// `c_j = jR r_j + rho(r_j)` for `j = 1..=nu`.
    pub fn critical_values(&self) -> Vec<Rational> {
        self.radii
            .iter()
            .zip(&self.values)
            .enumerate()
            .map(|(i, (r, v))| integer(i as i64 + 1) * &self.capacity * r + v)
            .collect()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CriticalStratum {
    pub kind: StratumId,
    pub base_index: usize,
    #[serde(with = "serde_rational")]
    pub value: Rational,
}

/// Infinity, the sphere strata and the origin, sorted by critical value.
pub fn critical_data(profile: &Profile, lens: &LensData) -> Vec<CriticalStratum> {
    let n = lens.n();
    let mut strata = vec![CriticalStratum { kind: StratumId::Infinity, base_index: 0, value: Rational::zero() }];
    strata.extend(profile.critical_values().into_iter().enumerate().map(|(i, value)| CriticalStratum {
        kind: StratumId::Sphere(i as u32 + 1),
        base_index: 2 * (i + 1) * n,
        value,
    }));
    strata.push(CriticalStratum {
        kind: StratumId::Origin,
        base_index: 2 * (profile.nu() + 1) * n,
        value: profile.rho0.clone(),
    });
    strata
}

/// Boundary coefficient of inner degree `i > 0` inside a sphere block.
fn internal_boundary(lens: &LensData, inner: usize) -> GroupRingElement {
    if inner % 2 == 1 {
        tpow_minus_one(lens.weights[inner / 2], lens.k).expect("weights are coprime to k")
    } else {
        norm(lens.k)
    }
}

/// The free block complex: `k` generators per degree, with the cross-block and
/// origin attaching maps given by the norm element.
fn free_complex(profile: &Profile, lens: &LensData, coefficients: Coefficients) -> Result<GradedChainComplex> {
    let (n, k) = (lens.n(), lens.k.get() as usize);
    let mut b = ComplexBuilder::new(coefficients);
    b.add_generator(Generator {
        stratum: StratumId::Infinity,
        inner_degree: 0,
        total_degree: 0,
        filtration: Filtration::at(Rational::zero()),
        orbit: Orbit::Quotient,
    });
    let cs = profile.critical_values();
    // first generator index of every (block, inner degree) cell
    let mut first: Vec<Vec<usize>> = Vec::with_capacity(cs.len());
    for (jm1, c) in cs.iter().enumerate() {
        let j = jm1 + 1;
        let mut cells = Vec::with_capacity(2 * n);
        for inner in 0..2 * n {
            let degree = 2 * j * n + inner;
            b.reserve_degree(degree);
            let start = (0..k)
                .map(|t| {
                    b.add_generator(Generator {
                        stratum: StratumId::Sphere(j as u32),
                        inner_degree: inner as u32,
                        total_degree: degree as u32,
                        filtration: Filtration { value: c.clone(), offset: inner as u32 },
                        orbit: Orbit::Index(t as u32),
                    })
                })
                .min()
                .expect("k >= 2");
            cells.push(start);
        }
        first.push(cells);
    }
    let add_module_map = |b: &mut ComplexBuilder, degree: usize, src: usize, dst: usize, r: &GroupRingElement| {
        let m = r.as_integral_matrix();
        for t in 0..k {
            for u in 0..k {
                let v = *m.get(u, t);
                if v != 0 {
                    b.add_boundary(degree, src + t, dst + u, v);
                }
            }
        }
    };
    for jm1 in 0..cs.len() {
        let j = jm1 + 1;
        for inner in 1..2 * n {
            let r = internal_boundary(lens, inner);
            add_module_map(&mut b, 2 * j * n + inner, first[jm1][inner], first[jm1][inner - 1], &r);
        }
        if jm1 > 0 {
            add_module_map(&mut b, 2 * j * n, first[jm1][0], first[jm1 - 1][2 * n - 1], &norm(lens.k));
        }
    }
    let origin = b.add_generator(Generator {
        stratum: StratumId::Origin,
        inner_degree: 0,
        total_degree: (2 * (cs.len() + 1) * n) as u32,
        filtration: Filtration::at(profile.rho0.clone()),
        orbit: Orbit::Quotient,
    });
    let top = first[cs.len() - 1][2 * n - 1];
    for t in 0..k {
        b.add_boundary(2 * (cs.len() + 1) * n, origin, top + t, 1);
    }
    b.build()
}

/// Non-equivariant complex over `F_k`, including the origin and infinity strata.
pub fn build_nonequivariant_complex(profile: &Profile, lens: &LensData) -> GradedChainComplex {
    free_complex(profile, lens, Coefficients::Field { modulus: lens.k }).expect("block shapes are consistent")
}

/// Integer-coefficient version of [`build_nonequivariant_complex`].
pub fn build_nonequivariant_complex_integral(profile: &Profile, lens: &LensData) -> GradedChainComplex {
    free_complex(profile, lens, Coefficients::Integer).expect("block shapes are consistent")
}

/// Quotient of the sphere blocks by the free `Z_k`-action, with admissible windows
/// restricted to `0 < a < b < rho(0)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EquivariantComplex {
    complex: GradedChainComplex,
    rho0: Rational,
}

impl EquivariantComplex {
    pub fn complex(&self) -> &GradedChainComplex {
        &self.complex
    }

    pub fn window(&self, a: &Rational, b: &Rational) -> Result<GradedChainComplex> {
        if !a.is_positive() || *b >= self.rho0 {
            return Err(Error::InvalidWindow(format!(
                "equivariant windows must satisfy 0 < a < b < rho(0) = {}",
                format_rational(&self.rho0)
            )));
        }
        self.complex.window_subquotient(&Threshold::Finite(a.clone()), &Threshold::Finite(b.clone()))
    }
}

/// Quotient complex: one generator per degree of each sphere block. `T^w - 1`
/// induces zero and the norm element induces multiplication by `k`.
pub fn build_equivariant_complex(
    profile: &Profile,
    lens: &LensData,
    coefficients: Coefficients,
) -> Result<EquivariantComplex> {
    if let Coefficients::Field { modulus } = coefficients {
        if modulus != lens.k {
            return Err(Error::InvalidArgument(format!(
                "field coefficients mod {modulus} do not match the group order {}",
                lens.k
            )));
        }
    }
    let n = lens.n();
    let mut b = ComplexBuilder::new(coefficients);
    b.reserve_degree(0);
    let cs = profile.critical_values();
    let mut index = Vec::with_capacity(cs.len());
    for (jm1, c) in cs.iter().enumerate() {
        let j = jm1 + 1;
        let cells: Vec<usize> = (0..2 * n)
            .map(|inner| {
                let degree = 2 * j * n + inner;
                b.reserve_degree(degree);
                b.add_generator(Generator {
                    stratum: StratumId::Sphere(j as u32),
                    inner_degree: inner as u32,
                    total_degree: degree as u32,
                    filtration: Filtration { value: c.clone(), offset: inner as u32 },
                    orbit: Orbit::Quotient,
                })
            })
            .collect();
        index.push(cells);
    }
    for jm1 in 0..cs.len() {
        let j = jm1 + 1;
        for inner in 1..2 * n {
            let induced = internal_boundary(lens, inner).augmentation_integral();
            if induced != 0 {
                b.add_boundary(2 * j * n + inner, index[jm1][inner], index[jm1][inner - 1], induced);
            }
        }
        if jm1 > 0 {
            let induced = norm(lens.k).augmentation_integral();
            b.add_boundary(2 * j * n, index[jm1][0], index[jm1 - 1][2 * n - 1], induced);
        }
    }
    Ok(EquivariantComplex { complex: b.build()?, rho0: profile.rho0.clone() })
}

/// How sphere values are placed below their limits `jR`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Synthesis {
    /// `c_j = jR - min(R, |jR - a|) / (j + 2)`
    #[default]
    Standard,
    /// `c_j = jR - min(R, |jR - a|) / (2j + 4)`
    Tight,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CoefficientMode {
    /// `F_k`, with `k` the group order.
    #[default]
    Field,
    Integer,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct StabilizationOptions {
    pub coefficients: CoefficientMode,
    pub synthesis: Synthesis,
}

/// Number of sphere strata needed so every degree up to `max_degree` is settled and
/// the first block above `a` is present.
pub fn stabilized_nu(n: usize, capacity: &Rational, a: &Rational, max_degree: usize) -> usize {
    let first_block = (a / capacity).floor().to_integer().to_usize().unwrap_or(0) + 1;
    (max_degree / (2 * n) + 1).max(first_block)
}

/// Profile used for the window `(a, inf]` of a ball of capacity `R`.
pub fn stabilized_profile(
    n: usize,
    capacity: &Rational,
    a: &Rational,
    max_degree: usize,
    synthesis: Synthesis,
) -> Result<Profile> {
    check_stabilization_args(capacity, a, max_degree)?;
    let nu = stabilized_nu(n, capacity, a, max_degree);
    let divisor_scale = match synthesis {
        Synthesis::Standard => 1,
        Synthesis::Tight => 2,
    };
    let cs: Vec<Rational> = (1..=nu as i64)
        .map(|j| {
            let limit = integer(j) * capacity;
            let gap = (&limit - a).abs().min(capacity.clone());
            &limit - gap / integer(divisor_scale * (j + 2))
        })
        .collect();
    Profile::from_critical_values(capacity.clone(), &cs, integer(nu as i64 + 1) * capacity)
}

fn check_stabilization_args(capacity: &Rational, a: &Rational, max_degree: usize) -> Result<()> {
    if !capacity.is_positive() {
        return Err(Error::InvalidArgument("capacity R must be positive".into()));
    }
    if !a.is_positive() {
        return Err(Error::InvalidArgument("window start a must be positive".into()));
    }
    if is_integer(&(a / capacity)) {
        return Err(Error::InvalidArgument(format!(
            "a / R = {} is an integer, where sphere values accumulate",
            format_rational(&(a / capacity))
        )));
    }
    if max_degree < 1 {
        return Err(Error::InvalidArgument("max_degree must be at least 1".into()));
    }
    Ok(())
}

/// Homology of the window `(a, inf]` for a ball, computed on a sufficiently
/// stabilized profile and truncated to `max_degree`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct StabilizedHomology {
    pub table: HomologyTable,
    pub max_degree: usize,
    pub equivariant: bool,
    /// Degrees `= 2n - 1 (mod 2n)` of an equivariant table, where the quotient
    /// model is not expected to match the closed form.
    pub tower_sensitive: Vec<usize>,
    pub profile: Profile,
    #[serde(with = "serde_rational")]
    pub window_top: Rational,
}

impl StabilizedHomology {
    pub fn is_tower_sensitive(&self, degree: usize) -> bool {
        self.tower_sensitive.contains(&degree)
    }
}

pub fn stabilized_homology(
    lens: &LensData,
    capacity: &Rational,
    a: &Rational,
    max_degree: usize,
    equivariant: bool,
) -> Result<StabilizedHomology> {
    stabilized_homology_with(lens, capacity, a, max_degree, equivariant, StabilizationOptions::default())
}

pub fn stabilized_homology_with(
    lens: &LensData,
    capacity: &Rational,
    a: &Rational,
    max_degree: usize,
    equivariant: bool,
    options: StabilizationOptions,
) -> Result<StabilizedHomology> {
    let profile = stabilized_profile(lens.n(), capacity, a, max_degree, options.synthesis)?;
    let cs = profile.critical_values();
    let top = (cs.last().expect("nu >= 1") + profile.rho0()) / integer(2);
    let coefficients = match options.coefficients {
        CoefficientMode::Field => Coefficients::Field { modulus: lens.k },
        CoefficientMode::Integer => Coefficients::Integer,
    };
    let window = if equivariant {
        build_equivariant_complex(&profile, lens, coefficients)?.window(a, &top)?
    } else {
        let full = match options.coefficients {
            CoefficientMode::Field => build_nonequivariant_complex(&profile, lens),
            CoefficientMode::Integer => build_nonequivariant_complex_integral(&profile, lens),
        };
        full.window_subquotient(&Threshold::Finite(a.clone()), &Threshold::Finite(top.clone()))?
    };
    let table = homology(&window).truncated(max_degree);
    let period = 2 * lens.n();
    let tower_sensitive = if equivariant {
        (0..=max_degree).filter(|d| d % period == period - 1).collect()
    } else {
        Vec::new()
    };
    Ok(StabilizedHomology { table, max_degree, equivariant, tower_sensitive, profile, window_top: top })
}

/// Index of the first sphere block above `a`: `floor(a / R) + 1`.
pub fn first_block_above(capacity: &Rational, a: &Rational) -> u64 {
    (a / capacity).floor().to_integer().to_u64().unwrap_or(0) + 1
}
