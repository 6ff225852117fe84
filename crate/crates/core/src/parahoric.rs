//! Points of the Frobenius-fixed apartment, the root subsystems `Φ_x` they
//! cut out, and the residual extension data `(Y ⊕ Z, ι_x)` at each point.

use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::cover::{CoverSpec, WeylInvariantForm};
use crate::error::{Error, Result};
use crate::lattice::{self, Sublattice};
use crate::linalg;
use crate::matrix::Matrix;
use crate::root_datum::BasedRootDatum;

fn apply_rational(m: &Matrix, x: &[BigRational]) -> Vec<BigRational> {
    (0..m.nrows())
        .map(|i| {
            m.row(i)
                .iter()
                .zip(x)
                .fold(BigRational::zero(), |acc, (&a, xi)| acc + xi * BigRational::from_integer(a.into()))
        })
        .collect()
}

/// Parses `"1/2,-1/2"`-style comma-separated rationals. Integers are allowed.
pub fn parse_rationals(s: &str) -> Result<Vec<BigRational>> {
    if s.trim().is_empty() {
        return Err(Error::Parse("empty point".into()));
    }
    s.split(',')
        .map(|tok| {
            let tok = tok.trim();
            let bad = || Error::Parse(format!("rational {tok:?}"));
            if let Some((_, den)) = tok.split_once('/') {
                if den.trim_start_matches('+').chars().all(|c| c == '0') {
                    return Err(bad());
                }
            }
            BigRational::from_str(tok).map_err(|_| bad())
        })
        .collect()
}

/// A point of `Y ⊗ Q` fixed by Frobenius, with the base point at the origin.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ApartmentPoint {
    coords: Vec<BigRational>,
}

impl ApartmentPoint {
    pub fn new(rd: &BasedRootDatum, coords: Vec<BigRational>) -> Result<Self> {
        if coords.len() != rd.rank() {
            return Err(Error::DimensionMismatch { expected: rd.rank(), found: coords.len() });
        }
        if apply_rational(rd.frobenius().matrix(), &coords) != coords {
            return Err(Error::PointNotFrobeniusFixed);
        }
        Ok(ApartmentPoint { coords })
    }

    pub fn origin(rd: &BasedRootDatum) -> Self {
        ApartmentPoint { coords: vec![BigRational::zero(); rd.rank()] }
    }

    pub fn from_i64_fractions(rd: &BasedRootDatum, coords: &[(i64, i64)]) -> Result<Self> {
        if coords.iter().any(|&(_, d)| d == 0) {
            return Err(Error::Parse("zero denominator".into()));
        }
        let coords = coords.iter().map(|&(n, d)| BigRational::new(n.into(), d.into())).collect();
        Self::new(rd, coords)
    }

    pub fn parse(rd: &BasedRootDatum, s: &str) -> Result<Self> {
        Self::new(rd, parse_rationals(s)?)
    }

    pub fn coords(&self) -> &[BigRational] {
        &self.coords
    }

    /// Translate by an integral cocharacter.
    pub fn translate(&self, y: &[i64]) -> Self {
        let coords = self
            .coords
            .iter()
            .zip(y)
            .map(|(c, &v)| c + BigRational::from_integer(v.into()))
            .collect();
        ApartmentPoint { coords }
    }
}

/// Indices of roots taking integer values at `x`.
pub fn phi_x(rd: &BasedRootDatum, x: &ApartmentPoint) -> Vec<usize> {
    (0..rd.roots().len()).filter(|&i| rd.root_value(i, &x.coords).is_integer()).collect()
}

/// `Φ_x` together with `ι_x : α^∨ ↦ (α^∨, α(x) Q(α^∨))` into `Y' = Y ⊕ Z`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ResidualRootData {
    pub phi_x: Vec<usize>,
    /// `ι_x(α^∨)` for each entry of `phi_x`, in the same order.
    pub iota: Vec<Vec<BigInt>>,
}

impl ResidualRootData {
    /// `Λ_x`, the span of the `ι_x(α^∨)` in `Z^{d+1}`.
    pub fn lambda_x(&self, d: usize) -> Sublattice {
        Sublattice::from_rows(d + 1, &self.iota).expect("ι vectors have length d + 1")
    }
}

fn iota_last(form: &WeylInvariantForm, rd: &BasedRootDatum, i: usize, x: &ApartmentPoint) -> BigInt {
    let value = rd.root_value(i, &x.coords);
    debug_assert!(value.is_integer());
    value.to_integer() * BigInt::from(form.q_value(&rd.coroots()[i]))
}

pub fn residual_extension(cover: &CoverSpec, x: &ApartmentPoint) -> ResidualRootData {
    let rd = cover.datum();
    let phi = phi_x(rd, x);
    let iota = phi
        .iter()
        .map(|&i| {
            let mut v: Vec<BigInt> = rd.coroots()[i].iter().map(|&c| c.into()).collect();
            v.push(iota_last(cover.form(), rd, i, x));
            v
        })
        .collect();
    ResidualRootData { phi_x: phi, iota }
}

pub fn is_hyperspecial(rd: &BasedRootDatum, x: &ApartmentPoint) -> bool {
    phi_x(rd, x).len() == rd.roots().len()
}

/// `Φ_x` spans a space of the same dimension as `Φ`.
pub fn is_vertex(rd: &BasedRootDatum, x: &ApartmentPoint) -> bool {
    let sub: Vec<Vec<i64>> = phi_x(rd, x).into_iter().map(|i| rd.roots()[i].clone()).collect();
    linalg::rank(&sub) == linalg::rank(rd.roots())
}

/// `Λ_x` is saturated in `Z^{d+1}`.
pub fn residual_derived_simply_connected(cover: &CoverSpec, x: &ApartmentPoint) -> bool {
    residual_extension(cover, x).lambda_x(cover.rank()).is_saturated()
}

/// Whether `α^∨ ↦ α(x) Q(α^∨)` on `Y_x^SC` extends to a Frobenius-invariant
/// homomorphism `κ : Y → Z`.
///
/// Solves `κ · α^∨ = α(x) Q(α^∨)` for `α ∈ Φ_x` together with
/// `(Fr^T - 1) κ = 0` over the integers.
pub fn residual_splits(cover: &CoverSpec, x: &ApartmentPoint) -> bool {
    let rd = cover.datum();
    let d = rd.rank();
    let mut rows: Vec<Vec<i64>> = Vec::new();
    let mut rhs: Vec<BigInt> = Vec::new();
    for i in phi_x(rd, x) {
        rows.push(rd.coroots()[i].clone());
        rhs.push(iota_last(cover.form(), rd, i, x));
    }
    for row in rd.frobenius().matrix().transpose().sub_identity().to_rows() {
        rows.push(row);
        rhs.push(BigInt::zero());
    }
    // M κ = b is solvable over Z iff b lies in the span of the columns of M.
    let columns: Vec<Vec<i64>> = (0..d).map(|j| rows.iter().map(|r| r[j]).collect()).collect();
    Sublattice::from_rows(rows.len(), &columns)
        .expect("columns have one entry per equation")
        .contains(&rhs)
}

/// Conductors `cond_β`, one per simple relative root.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConductorVector(pub Vec<i64>);

/// Shift by `val(α(t))` per simple root.
pub fn conductor_shift(c: &ConductorVector, t_vals: &[i64]) -> Result<ConductorVector> {
    if c.0.len() != t_vals.len() {
        return Err(Error::DimensionMismatch { expected: c.0.len(), found: t_vals.len() });
    }
    Ok(ConductorVector(c.0.iter().zip(t_vals).map(|(a, b)| a + b).collect()))
}

/// `β(x) + 1` for each simple root, the conductors forced at a hyperspecial `x`.
pub fn hyperspecial_conductor_target(rd: &BasedRootDatum, x: &ApartmentPoint) -> Result<ConductorVector> {
    if !is_hyperspecial(rd, x) {
        return Err(Error::InvalidParameter("point is not hyperspecial".into()));
    }
    let vals = rd
        .simple_indices()
        .iter()
        .map(|&i| {
            let v = rd.root_value(i, &x.coords).to_integer() + 1;
            i64::try_from(v).map_err(|_| Error::OutOfRange("conductor does not fit in i64".into()))
        })
        .collect::<Result<_>>()?;
    Ok(ConductorVector(vals))
}

/// Vertices of the fundamental alcove `{α_i ≥ 0, θ_c ≤ 1}` in the slice where
/// a fixed complement of the simple roots vanishes.
///
/// For each irreducible component with highest root `θ_c = Σ c_i α_i`, the
/// component's vertices are `0` and the points with `α_j = δ_ij / c_i`; the
/// alcove is the product of these simplices. Split data only.
pub fn fundamental_alcove_vertices(rd: &BasedRootDatum) -> Result<Vec<ApartmentPoint>> {
    if !rd.frobenius().is_trivial() {
        return Err(Error::InvalidFrobenius("alcove vertices are only computed for split data".into()));
    }
    let d = rd.rank();
    let k = rd.semisimple_rank();
    let simple = rd.simple_roots();

    // functionals: simple roots, then standard coordinates completing a basis
    let mut functionals = simple.clone();
    for j in 0..d {
        if functionals.len() == d {
            break;
        }
        let mut trial = functionals.clone();
        trial.push((0..d).map(|i| i64::from(i == j)).collect());
        if linalg::rank(&trial) == trial.len() {
            functionals = trial;
        }
    }
    let a = linalg::to_rational_rows(&functionals);
    let inv = linalg::inverse(&a).expect("functionals form a basis");

    // components of the Dynkin diagram
    let cartan = rd.cartan_matrix();
    let mut component = vec![usize::MAX; k];
    let mut ncomp = 0;
    for s in 0..k {
        if component[s] != usize::MAX {
            continue;
        }
        let mut stack = vec![s];
        component[s] = ncomp;
        while let Some(i) = stack.pop() {
            for j in 0..k {
                if component[j] == usize::MAX && cartan[i][j] != 0 {
                    component[j] = ncomp;
                    stack.push(j);
                }
            }
        }
        ncomp += 1;
    }

    // highest-root coefficients: the positive root of greatest height
    let mut marks = vec![BigInt::zero(); k];
    for c in 0..ncomp {
        let mut best: Option<(BigRational, Vec<BigRational>)> = None;
        for i in 0..rd.roots().len() {
            let coeffs = rd.simple_coefficients(i);
            let in_comp = coeffs.iter().enumerate().all(|(s, v)| v.is_zero() || component[s] == c);
            if !in_comp || !coeffs.iter().all(|v| *v >= BigRational::zero()) {
                continue;
            }
            let h: BigRational = coeffs.iter().sum();
            if best.as_ref().map_or(true, |(bh, _)| h > *bh) {
                best = Some((h, coeffs));
            }
        }
        let (_, coeffs) = best.expect("every component has a positive root");
        for s in 0..k {
            if component[s] == c {
                marks[s] = coeffs[s].to_integer();
            }
        }
    }

    // per component choose either nothing or one simple position
    let mut choices: Vec<Vec<Option<usize>>> = vec![Vec::new()];
    for c in 0..ncomp {
        let mut next = Vec::new();
        for prefix in &choices {
            let mut p = prefix.clone();
            p.push(None);
            next.push(p);
            for s in (0..k).filter(|&s| component[s] == c) {
                let mut p = prefix.clone();
                p.push(Some(s));
                next.push(p);
            }
        }
        choices = next;
    }
    Ok(choices
        .into_iter()
        .map(|choice| {
            let mut b = vec![BigRational::zero(); d];
            for s in choice.into_iter().flatten() {
                b[s] = BigRational::new(BigInt::one(), marks[s].clone());
            }
            let coords = (0..d)
                .map(|i| (0..d).fold(BigRational::zero(), |acc, j| acc + &inv[i][j] * &b[j]))
                .collect();
            ApartmentPoint { coords }
        })
        .collect())
}

/// Translating by `Y^Fr` leaves `Φ_x` unchanged; exposed for property checks.
pub fn frobenius_fixed_cocharacters(rd: &BasedRootDatum) -> Sublattice {
    lattice::fixed_sublattice(rd.rank(), std::slice::from_ref(rd.frobenius().matrix()))
        .expect("Frobenius is square of ambient size")
}
