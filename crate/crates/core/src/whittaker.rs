//! Lusztig parameters on the dual side, the lattice `Y_{x,ρ}` cut out by
//! twisting with `ξ_y`, and the dimension of Whittaker models it controls.
//!
//! Characters of finite tori are never materialized; a parameter is a Weyl
//! element `w` plus an exponent vector `θ ∈ (Q/Z)^d` in `X`-coordinates.

use std::cell::RefCell;
use std::collections::{BTreeMap, HashMap, HashSet};
use std::rc::Rc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

use crate::cover::{self, CoverSpec};
use crate::error::{Error, Result};
use crate::lattice::{self, Index, Sublattice};
use crate::linalg;
use crate::matrix::Matrix;
use crate::modone::ModOneVector;
use crate::root_datum::{self, WeylGroup};

/// Largest `q^r - 1` that [`enumerate_glr_table`] scans by default.
pub const DEFAULT_TABLE_BOUND: u64 = 1_000_000;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LusztigParameter {
    /// Weyl element, acting on `Y`.
    pub w: Matrix,
    /// Exponents of `θ^∨` in `X ⊗ Q/Z`.
    pub theta: ModOneVector,
    /// Coordinate on the extra summand of `X'`; untouched by `W`.
    pub central_exponent: BigRational,
}

impl LusztigParameter {
    /// `w · Fr` on `Y`.
    pub fn twisted_frobenius(&self, cover: &CoverSpec) -> Matrix {
        &self.w * cover.frobenius_matrix()
    }

    /// `q θ ≡ Fr_w^{-1} θ (mod 1)`, with `Fr_w^{-1}` on `X` the transpose of
    /// `w · Fr` on `Y`.
    pub fn satisfies_thetaq(&self, cover: &CoverSpec) -> bool {
        let Ok(lhs) = self.theta.scale(i128::from(cover.q())) else {
            return false;
        };
        lhs == self.theta.act(&self.twisted_frobenius(cover).transpose())
    }

    pub fn validate(&self, cover: &CoverSpec, weyl: &WeylGroup) -> Result<()> {
        let d = cover.rank();
        if self.theta.dim() != d {
            return Err(Error::DimensionMismatch { expected: d, found: self.theta.dim() });
        }
        if self.w.nrows() != d || !self.w.is_square() {
            return Err(Error::DimensionMismatch { expected: d, found: self.w.nrows() });
        }
        if !weyl.contains(&self.w) {
            return Err(Error::InvalidParameter("w is not an element of the Weyl group".into()));
        }
        let p = i128::from(cover.p());
        let central_den = self.central_exponent.denom().to_i128();
        if self.theta.denominator() % p == 0 || central_den.map_or(true, |c| c % p == 0) {
            return Err(Error::InvalidParameter(format!("denominators must be prime to p = {p}")));
        }
        if !self.satisfies_thetaq(cover) {
            return Err(Error::InvalidParameter("q·θ is not congruent to Fr_w^{-1}(θ) mod 1".into()));
        }
        Ok(())
    }
}

/// `q^r - 1`, limited to values below `2^63` so that products of two
/// residues fit in `i128`.
fn q_r_minus_one(q: u64, r: usize) -> Result<i128> {
    let too_big = || Error::OutOfRange(format!("q^r - 1 with q = {q}, r = {r} exceeds 2^63"));
    let e = u32::try_from(r).map_err(|_| too_big())?;
    let v = i128::from(q).checked_pow(e).ok_or_else(too_big)? - 1;
    if v > i128::from(i64::MAX) {
        return Err(too_big());
    }
    Ok(v)
}

fn pow_mod(base: i128, e: usize, m: i128) -> i128 {
    (0..e).fold(1i128.rem_euclid(m), |acc, _| acc * base % m)
}

/// A character of the Coxeter torus of `GL_r(F_q)`, `θ^∨_1 = ζ^a` for a fixed
/// primitive `(q^r - 1)`-th root of unity `ζ`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GLrCharacter {
    pub r: usize,
    pub q: u64,
    pub a: u64,
}

impl GLrCharacter {
    pub fn new(r: usize, q: u64, a: u64) -> Result<Self> {
        if r == 0 {
            return Err(Error::InvalidRank("GL_r needs r >= 1".into()));
        }
        let big_q = q_r_minus_one(q, r)?;
        if i128::from(a) >= big_q {
            return Err(Error::OutOfRange(format!("a = {a} must lie in [0, {big_q})")));
        }
        Ok(GLrCharacter { r, q, a })
    }

    pub fn modulus(&self) -> i128 {
        q_r_minus_one(self.q, self.r).expect("checked at construction")
    }

    /// `a (q^s - 1) ≢ 0 mod q^r - 1` for `0 < s < r`.
    pub fn is_general_position(&self) -> bool {
        let m = self.modulus();
        let q = i128::from(self.q);
        (1..self.r).all(|s| (i128::from(self.a) * (pow_mod(q, s, m) - 1)).rem_euclid(m) != 0)
    }

    /// `a q mod (q^r - 1)`, the next element of the geometric conjugacy class.
    pub fn frobenius_twist(&self) -> Self {
        let m = self.modulus();
        let a = (i128::from(self.a) * i128::from(self.q)).rem_euclid(m);
        GLrCharacter { a: a as u64, ..*self }
    }
}

/// Coxeter element `e_i ↦ e_{i+1 mod r}` of `GL_r`.
pub fn glr_coxeter_element(r: usize) -> Matrix {
    Matrix::permutation(&(0..r).map(|i| (i + 1) % r).collect::<Vec<_>>())
}

/// Parameter of the Coxeter torus: `θ_i = a q^{i-1} / (q^r - 1)` and the
/// genuine central exponent `1/n`.
pub fn glr_coxeter_parameter(r: usize, q: u64, n: u64, a: u64) -> Result<LusztigParameter> {
    let ch = GLrCharacter::new(r, q, a)?;
    if n == 0 {
        return Err(Error::OutOfRange("n must be positive".into()));
    }
    let m = ch.modulus();
    let q = i128::from(q);
    let theta = ModOneVector::new(m, (0..r).map(|i| i128::from(a) * pow_mod(q, i, m)).collect())?;
    Ok(LusztigParameter {
        w: glr_coxeter_element(r),
        theta,
        central_exponent: BigRational::new(BigInt::one(), BigInt::from(n)),
    })
}

/// `Y^{W ⋊ Fr}`.
pub fn weyl_frobenius_fixed(cover: &CoverSpec) -> Sublattice {
    let mut gens = cover.datum().simple_reflections();
    gens.push(cover.frobenius_matrix().clone());
    lattice::fixed_sublattice(cover.rank(), &gens).expect("generators are d x d")
}

fn finite_index(sup: &Sublattice, sub: &Sublattice) -> BigInt {
    match lattice::index(sup, sub).expect("sub is contained in sup") {
        Index::Finite(v) => v,
        Index::Infinite => unreachable!("n·sup is always contained in sub"),
    }
}

/// `ξ_y = B_Q(y, ·) / n mod 1`, in `X`-coordinates.
pub fn xi_of(cover: &CoverSpec, y: &[i64]) -> Result<ModOneVector> {
    if y.len() != cover.rank() {
        return Err(Error::DimensionMismatch { expected: cover.rank(), found: y.len() });
    }
    if !weyl_frobenius_fixed(cover).contains_i64(y) {
        return Err(Error::NotInvariant);
    }
    let gy = cover.form().gram().apply(y);
    ModOneVector::new(i128::from(cover.n()), gy.into_iter().map(i128::from).collect())
}

/// `(lower, upper)` with
/// `upper = [Y^{W⋊Fr} : Y^{W⋊Fr} ∩ Y_{Q,n}]` and
/// `lower = [Y^{W⋊Fr} : {y : B_Q(y, y') ∈ nZ for y' ∈ Y^W}]`.
pub fn squeeze_bounds(cover: &CoverSpec) -> (BigInt, BigInt) {
    let d = cover.rank();
    let l = weyl_frobenius_fixed(cover);
    let upper_sub = lattice::intersect(&l, &cover::y_qn(cover)).expect("same ambient rank");
    let yw = lattice::fixed_sublattice(d, &cover.datum().simple_reflections()).expect("d x d");
    let gram = cover.form().gram();
    let rows: Vec<Vec<BigInt>> = yw
        .basis()
        .iter()
        .map(|b| {
            (0..d)
                .map(|i| (0..d).map(|j| BigInt::from(gram[(i, j)]) * &b[j]).sum())
                .collect()
        })
        .collect();
    let lower_sub = if rows.is_empty() {
        l.clone()
    } else {
        let cong = lattice::congruence_kernel(d, &rows, &BigInt::from(cover.n())).expect("rows have length d");
        lattice::intersect(&l, &cong).expect("same ambient rank")
    };
    (finite_index(&l, &lower_sub), finite_index(&l, &upper_sub))
}

/// Every `θ` with `q θ ≡ (wFr)^T θ mod 1` for a fixed `w`, with central
/// exponent `1/n`.
///
/// These are `A^{-1} v` for `A = q - (wFr)^T` and `v` over `Z^d / A Z^d`.
pub fn lusztig_parameters(cover: &CoverSpec, w: &Matrix) -> Result<Vec<LusztigParameter>> {
    let d = cover.rank();
    let t = (w * cover.frobenius_matrix()).transpose();
    let q = i64::try_from(cover.q()).map_err(|_| Error::OutOfRange("q too large".into()))?;
    let mut a = Matrix::zeros(d, d);
    for i in 0..d {
        for j in 0..d {
            a[(i, j)] = if i == j { q } else { 0 } - t[(i, j)];
        }
    }
    let inv = linalg::inverse(&linalg::to_rational_rows(&a.to_rows()))
        .ok_or_else(|| Error::Consistency("q - Fr_w is singular".into()))?;
    let columns: Vec<Vec<i64>> = (0..d).map(|j| a.column(j)).collect();
    let image = Sublattice::from_rows(d, &columns)?;
    let det = lattice::index(&Sublattice::full(d), &image)?
        .finite()
        .and_then(|v| v.to_i128())
        .ok_or_else(|| Error::OutOfRange("|det(q - Fr_w)| too large".into()))?;
    // det · A^{-1} is integral, so θ = (det · A^{-1} v) / det
    let adj: Vec<Vec<i128>> = inv
        .iter()
        .map(|row| {
            row.iter()
                .map(|x| (x * BigRational::from_integer(det.into())).to_integer().to_i128().ok_or_else(|| Error::OutOfRange("adjugate entry too large".into())))
                .collect::<Result<_>>()
        })
        .collect::<Result<_>>()?;
    let reps = lattice::coset_representatives(&Sublattice::full(d), &image)?;
    let central = BigRational::new(BigInt::one(), BigInt::from(cover.n()));
    reps.into_iter()
        .map(|v| {
            let v: Vec<i128> = v.iter().map(|x| x.to_i128().expect("representatives are reduced")).collect();
            let num = adj.iter().map(|row| row.iter().zip(&v).map(|(a, b)| a * b).sum()).collect();
            Ok(LusztigParameter { w: w.clone(), theta: ModOneVector::new(det, num)?, central_exponent: central.clone() })
        })
        .collect()
}

/// `Y_{x,ρ}` and its index in `Y^{W⋊Fr}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct YxRho {
    pub lattice: Sublattice,
    pub index: BigInt,
}

/// Per-cover data shared by every parameter: the Weyl group, `Y^{W⋊Fr}`,
/// its intersection with `Y_{Q,n}`, coset representatives and their `ξ`.
#[derive(Debug, Clone)]
pub struct YxRhoSolver {
    cover: CoverSpec,
    weyl: WeylGroup,
    weyl_transposes: Vec<Matrix>,
    fixed: Sublattice,
    fixed_qn: Sublattice,
    reps: Vec<Vec<BigInt>>,
    /// Numerators of `ξ` at each representative, over `n`.
    xi_reps: Vec<Vec<i128>>,
    cache: HashMap<Vec<bool>, YxRho>,
    /// Nonidentity elements of `W` commuting with a given `w · Fr`.
    centralizers: RefCell<HashMap<Matrix, Rc<Vec<usize>>>>,
}

impl YxRhoSolver {
    pub fn new(cover: &CoverSpec) -> Result<Self> {
        let weyl = root_datum::weyl_group(cover.datum())?;
        let fixed = weyl_frobenius_fixed(cover);
        let fixed_qn = lattice::intersect(&fixed, &cover::y_qn(cover))?;
        let reps = lattice::coset_representatives(&fixed, &fixed_qn)?;
        let n = i128::from(cover.n());
        let gram = cover.form().gram();
        let xi_reps = reps
            .iter()
            .map(|y| {
                (0..cover.rank())
                    .map(|i| {
                        let v: BigInt = (0..cover.rank()).map(|j| BigInt::from(gram[(i, j)]) * &y[j]).sum();
                        v.mod_floor(&BigInt::from(n)).to_i128().expect("reduced mod n")
                    })
                    .collect()
            })
            .collect();
        let weyl_transposes = weyl.elements().iter().map(Matrix::transpose).collect();
        Ok(YxRhoSolver {
            cover: cover.clone(),
            weyl,
            weyl_transposes,
            fixed,
            fixed_qn,
            reps,
            xi_reps,
            cache: HashMap::new(),
            centralizers: RefCell::new(HashMap::new()),
        })
    }

    pub fn cover(&self) -> &CoverSpec {
        &self.cover
    }

    pub fn weyl(&self) -> &WeylGroup {
        &self.weyl
    }

    /// `[Y^{W⋊Fr} : Y^{W⋊Fr} ∩ Y_{Q,n}]`.
    pub fn trivial_bound(&self) -> usize {
        self.reps.len()
    }

    /// No nonidentity element of `{w' ∈ W : w' (wFr) = (wFr) w'}` fixes `θ`.
    pub fn is_general_position(&self, param: &LusztigParameter) -> bool {
        let wf = param.twisted_frobenius(&self.cover);
        let centralizer = self.twisted_centralizer(wf);
        // W is closed under inverses, so testing w'^T covers (w'^{-1})^T
        centralizer.iter().all(|&k| param.theta.act(&self.weyl_transposes[k]) != param.theta)
    }

    fn twisted_centralizer(&self, wf: Matrix) -> Rc<Vec<usize>> {
        if let Some(hit) = self.centralizers.borrow().get(&wf) {
            return Rc::clone(hit);
        }
        let found: Vec<usize> = self
            .weyl
            .elements()
            .iter()
            .enumerate()
            .filter(|(_, w)| !w.is_identity() && &(*w * &wf) == &(&wf * *w))
            .map(|(k, _)| k)
            .collect();
        let found = Rc::new(found);
        self.centralizers.borrow_mut().insert(wf, Rc::clone(&found));
        found
    }

    pub fn y_x_rho(&mut self, param: &LusztigParameter) -> Result<YxRho> {
        param.validate(&self.cover, &self.weyl)?;
        if !self.is_general_position(param) {
            return Err(Error::NotGeneralPosition);
        }
        let n = i128::from(self.cover.n());
        let big = (param.theta.denominator() / param.theta.denominator().gcd(&n))
            .checked_mul(n)
            .ok_or_else(|| Error::OutOfRange("denominator too large".into()))?;
        let theta = param.theta.numerators_over(big).expect("big is a multiple");
        let orbit: HashSet<Vec<i128>> = self
            .weyl_transposes
            .iter()
            .map(|wt| {
                (0..wt.nrows())
                    .map(|i| {
                        wt.row(i)
                            .iter()
                            .zip(&theta)
                            .fold(0i128, |acc, (&a, &x)| (acc + i128::from(a) * x).rem_euclid(big))
                    })
                    .collect()
            })
            .collect();
        let scale = big / n;
        let passing: Vec<bool> = self
            .xi_reps
            .iter()
            .map(|xi| {
                let shifted: Vec<i128> =
                    theta.iter().zip(xi).map(|(t, x)| (t + x * scale).rem_euclid(big)).collect();
                orbit.contains(&shifted)
            })
            .collect();
        if let Some(hit) = self.cache.get(&passing) {
            return Ok(hit.clone());
        }
        let gens: Vec<Vec<BigInt>> =
            self.reps.iter().zip(&passing).filter(|(_, &ok)| ok).map(|(y, _)| y.clone()).collect();
        let count = gens.len();
        let lat = self.fixed_qn.extended_by(&gens)?;
        let index = finite_index(&self.fixed, &lat);
        if BigInt::from(count) * &index != BigInt::from(self.reps.len()) {
            return Err(Error::Consistency(format!(
                "{count} passing cosets do not form a subgroup of a group of order {}",
                self.reps.len()
            )));
        }
        let out = YxRho { lattice: lat, index };
        self.cache.insert(passing, out.clone());
        Ok(out)
    }
}

/// One-shot [`YxRhoSolver::y_x_rho`].
pub fn y_x_rho(cover: &CoverSpec, param: &LusztigParameter) -> Result<YxRho> {
    YxRhoSolver::new(cover)?.y_x_rho(param)
}

fn check_glr_inputs(r: usize, q: u64, n: u64, a: u64) -> Result<GLrCharacter> {
    cover::check_degree(n, q)?;
    let ch = GLrCharacter::new(r, q, a)?;
    if !ch.is_general_position() {
        return Err(Error::NotGeneralPosition);
    }
    Ok(ch)
}

/// `n / gcd(n, m)`, the bound every GL_r dimension divides.
pub fn glr_dimension_bound(n: u64, m: i64) -> u64 {
    n / n.gcd(&m.unsigned_abs())
}

/// Closed form: `min k ≥ 1` such that `m k (q^r-1)/n ≡ a (q^s - 1)` modulo
/// `q^r - 1` for some `0 ≤ s < r`, solving each linear congruence in `k`
/// directly.
pub fn wh_dim_glr_closed(r: usize, q: u64, n: u64, bold_p: i64, bold_q: i64, a: u64) -> Result<u64> {
    let ch = check_glr_inputs(r, q, n, a)?;
    let big_q = ch.modulus();
    let m = i128::from(cover::m_qr(r, bold_p, bold_q));
    let c = m.rem_euclid(big_q) * (big_q / i128::from(n)) % big_q;
    let mut best: Option<i128> = None;
    for s in 0..r {
        let t = i128::from(a) * (pow_mod(i128::from(q), s, big_q) - 1).rem_euclid(big_q) % big_q;
        let g = c.gcd(&big_q);
        if t % g != 0 {
            continue;
        }
        let modulus = big_q / g;
        let inv = (c / g).extended_gcd(&modulus).x.rem_euclid(modulus);
        let mut k = (t / g).rem_euclid(modulus) * inv % modulus;
        if k == 0 {
            k = modulus;
        }
        best = Some(best.map_or(k, |b| b.min(k)));
    }
    let k = best.ok_or_else(|| Error::Consistency("s = 0 always admits k = n".into()))?;
    Ok(u64::try_from(k).expect("k <= n"))
}

/// Brute-force scan over `k = 1..=n` and every `s`, in big integers.
pub fn wh_dim_oracle(r: usize, q: u64, n: u64, bold_p: i64, bold_q: i64, a: u64) -> Result<u64> {
    cover::check_degree(n, q)?;
    let qb = BigInt::from(q);
    let big_q: BigInt = num_traits::pow(qb.clone(), r) - 1;
    let ab = BigInt::from(a);
    if ab >= big_q {
        return Err(Error::OutOfRange(format!("a = {a} must lie in [0, {big_q})")));
    }
    let fixed_by = |s: usize| {
        let t: BigInt = &ab * (num_traits::pow(qb.clone(), s) - 1);
        t.mod_floor(&big_q).is_zero()
    };
    if (1..r).any(fixed_by) {
        return Err(Error::NotGeneralPosition);
    }
    let m = BigInt::from(cover::m_qr(r, bold_p, bold_q));
    let step = &big_q / BigInt::from(n);
    for k in 1..=n {
        let lhs: BigInt = &m * BigInt::from(k) * &step;
        for s in 0..r {
            let rhs: BigInt = &ab * (num_traits::pow(qb.clone(), s) - 1);
            let diff: BigInt = &lhs - rhs;
            if diff.mod_floor(&big_q).is_zero() {
                return Ok(k);
            }
        }
    }
    Err(Error::ScanExhausted(n))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TableRow {
    pub representative: u64,
    pub class_size: u64,
    pub dimension: u64,
}

/// General-position classes ordered by representative, and the number of
/// classes with each dimension.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GLrTable {
    pub rows: Vec<TableRow>,
    pub histogram: BTreeMap<u64, u64>,
}

pub fn enumerate_glr_table(r: usize, q: u64, n: u64, bold_p: i64, bold_q: i64) -> Result<GLrTable> {
    enumerate_glr_table_with_bound(r, q, n, bold_p, bold_q, DEFAULT_TABLE_BOUND)
}

pub fn enumerate_glr_table_with_bound(
    r: usize,
    q: u64,
    n: u64,
    bold_p: i64,
    bold_q: i64,
    bound: u64,
) -> Result<GLrTable> {
    cover::check_degree(n, q)?;
    if r == 0 {
        return Err(Error::InvalidRank("GL_r needs r >= 1".into()));
    }
    let big_q = q_r_minus_one(q, r)?;
    if big_q > i128::from(bound) {
        return Err(Error::BoundExceeded(format!("q^r - 1 = {big_q} exceeds {bound}")));
    }
    let size = big_q as usize;
    let mut seen = vec![false; size];
    let mut rows = Vec::new();
    let mut histogram = BTreeMap::new();
    for a in 0..size {
        if seen[a] {
            continue;
        }
        let mut orbit = 0u64;
        let mut b = a;
        while !seen[b] {
            seen[b] = true;
            orbit += 1;
            b = ((b as u128 * u128::from(q)) % size as u128) as usize;
        }
        let ch = GLrCharacter::new(r, q, a as u64)?;
        if !ch.is_general_position() {
            continue;
        }
        let dimension = wh_dim_glr_closed(r, q, n, bold_p, bold_q, a as u64)?;
        *histogram.entry(dimension).or_insert(0) += 1;
        rows.push(TableRow { representative: a as u64, class_size: orbit, dimension });
    }
    Ok(GLrTable { rows, histogram })
}

/// Dimension of the Whittaker space of the representation attached to a
/// Coxeter-torus parameter, computed through `Y_{x,ρ}`.
pub fn wh_dim_via_lattice(solver: &mut YxRhoSolver, a: u64) -> Result<BigInt> {
    let cover = solver.cover().clone();
    let r = cover.rank();
    let param = glr_coxeter_parameter(r, cover.q(), cover.n(), a)?;
    Ok(solver.y_x_rho(&param)?.index)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cover::{glr_cover, WeylInvariantForm};
    use crate::root_datum::{build_slr, build_torus};
    use proptest::prelude::*;

    fn mv(f: &[(i64, i64)]) -> ModOneVector {
        ModOneVector::from_fractions(f).unwrap()
    }

    #[test]
    fn xi_examples() {
        let c = glr_cover(2, 0, 1, 4, 5).unwrap();
        assert_eq!(xi_of(&c, &[1, 1]).unwrap(), mv(&[(1, 4), (1, 4)]));
        assert!(xi_of(&c, &[4, 4]).unwrap().is_zero());
        assert_eq!(xi_of(&c, &[1, 0]), Err(Error::NotInvariant));
        let c = glr_cover(3, 1, 2, 1, 5).unwrap();
        assert!(xi_of(&c, &[7, 7, 7]).unwrap().is_zero());
    }

    #[test]
    fn coxeter_parameters() {
        let p = glr_coxeter_parameter(2, 5, 4, 1).unwrap();
        assert_eq!(p.theta, mv(&[(1, 24), (5, 24)]));
        assert_eq!(glr_coxeter_parameter(1, 5, 4, 2).unwrap().theta, mv(&[(1, 2)]));
        assert!(glr_coxeter_parameter(3, 5, 4, 0).unwrap().theta.is_zero());
        assert!(matches!(glr_coxeter_parameter(2, 5, 4, 24), Err(Error::OutOfRange(_))));
        let c = glr_cover(2, 0, 1, 4, 5).unwrap();
        assert!(p.satisfies_thetaq(&c));
    }

    #[test]
    fn general_position_examples() {
        let gp = |a| GLrCharacter::new(2, 5, a).unwrap().is_general_position();
        assert!(!gp(0));
        assert!(!gp(6));
        assert!(gp(1));
        assert!(GLrCharacter::new(1, 5, 0).unwrap().is_general_position());

        let c = glr_cover(2, 0, 1, 4, 5).unwrap();
        let s = YxRhoSolver::new(&c).unwrap();
        for a in [0, 1, 6, 12] {
            let p = glr_coxeter_parameter(2, 5, 4, a).unwrap();
            assert_eq!(s.is_general_position(&p), gp(a), "a = {a}");
        }
    }

    #[test]
    fn y_x_rho_examples() {
        let c = glr_cover(2, 0, 1, 4, 5).unwrap();
        let p = glr_coxeter_parameter(2, 5, 4, 3).unwrap();
        let res = y_x_rho(&c, &p).unwrap();
        assert_eq!(res.index, BigInt::from(2));
        assert_eq!(res.lattice, Sublattice::from_rows(2, &[vec![2i64, 2]]).unwrap());
        let p = glr_coxeter_parameter(2, 5, 4, 1).unwrap();
        assert_eq!(y_x_rho(&c, &p).unwrap().index, BigInt::from(4));
        let p = glr_coxeter_parameter(2, 5, 4, 6).unwrap();
        assert_eq!(y_x_rho(&c, &p), Err(Error::NotGeneralPosition));

        // determinantal cover with n | m: L ⊆ Y_{Q,n}
        let c = glr_cover(2, 2, 4, 4, 5).unwrap();
        let p = glr_coxeter_parameter(2, 5, 4, 1).unwrap();
        assert_eq!(y_x_rho(&c, &p).unwrap().index, BigInt::one());
    }

    #[test]
    fn y_x_rho_semisimple() {
        let rd = build_slr(3).unwrap();
        let form = WeylInvariantForm::new(Matrix::from_rows(&[vec![2, -1], vec![-1, 2]]).unwrap()).unwrap();
        let c = CoverSpec::new(rd, form, 4, 5).unwrap();
        let mut solver = YxRhoSolver::new(&c).unwrap();
        let mut checked = 0;
        for w in solver.weyl().elements().to_vec() {
            for p in lusztig_parameters(&c, &w).unwrap() {
                assert!(p.satisfies_thetaq(&c));
                if solver.is_general_position(&p) {
                    assert_eq!(solver.y_x_rho(&p).unwrap().index, BigInt::one());
                    checked += 1;
                }
            }
        }
        assert!(checked > 0);
    }

    #[test]
    fn invalid_parameters_rejected() {
        let c = glr_cover(2, 0, 1, 4, 5).unwrap();
        let mut p = glr_coxeter_parameter(2, 5, 4, 1).unwrap();
        p.theta = mv(&[(1, 24), (1, 24)]);
        assert!(matches!(y_x_rho(&c, &p), Err(Error::InvalidParameter(_))));
        let mut p = glr_coxeter_parameter(2, 5, 4, 1).unwrap();
        p.theta = mv(&[(1, 5), (0, 1)]);
        assert!(matches!(y_x_rho(&c, &p), Err(Error::InvalidParameter(_))));
    }

    #[test]
    fn closed_form_examples() {
        assert_eq!(wh_dim_glr_closed(2, 5, 4, 0, 1, 1).unwrap(), 4);
        assert_eq!(wh_dim_glr_closed(2, 5, 4, 0, 1, 3).unwrap(), 2);
        assert_eq!(wh_dim_glr_closed(1, 5, 4, 1, 0, 3).unwrap(), 2);
        assert_eq!(wh_dim_glr_closed(3, 5, 4, 1, 1, 1).unwrap(), 1);
        assert_eq!(wh_dim_glr_closed(2, 5, 4, 0, 1, 0), Err(Error::NotGeneralPosition));
        assert_eq!(
            wh_dim_glr_closed(2, 5, 3, 0, 1, 1),
            Err(Error::DegreeDoesNotDivide { n: 3, q_minus_one: 4 })
        );
        for a in 0..4 {
            assert_eq!(wh_dim_oracle(1, 5, 1, 3, 0, a).unwrap(), 1);
        }
        // m = 0
        assert_eq!(wh_dim_oracle(2, 5, 4, 1, -2, 1).unwrap(), 1);
    }

    #[test]
    fn squeeze_examples() {
        let c = glr_cover(2, 0, 1, 4, 5).unwrap();
        assert_eq!(squeeze_bounds(&c), (BigInt::from(2), BigInt::from(4)));
        let c = glr_cover(1, 1, 0, 4, 5).unwrap();
        assert_eq!(squeeze_bounds(&c), (BigInt::from(2), BigInt::from(2)));
        let rd = build_slr(2).unwrap();
        let form = WeylInvariantForm::new(Matrix::from_rows(&[vec![2]]).unwrap()).unwrap();
        let c = CoverSpec::new(rd, form, 4, 5).unwrap();
        assert_eq!(squeeze_bounds(&c), (BigInt::one(), BigInt::one()));
    }

    #[test]
    fn torus_with_twisted_frobenius() {
        // anisotropic torus of rank 2: Fr swaps coordinates, W trivial
        let rd = build_torus(2, Some(Matrix::permutation(&[1, 0]))).unwrap();
        let form = WeylInvariantForm::new(Matrix::from_rows(&[vec![2, 0], vec![0, 2]]).unwrap()).unwrap();
        let c = CoverSpec::new(rd, form, 4, 5).unwrap();
        let params = lusztig_parameters(&c, &Matrix::identity(2)).unwrap();
        // |det(5 - swap)| = 24
        assert_eq!(params.len(), 24);
        let mut solver = YxRhoSolver::new(&c).unwrap();
        for p in &params {
            // a torus has a single genuine dimension, the central index
            assert_eq!(solver.y_x_rho(p).unwrap().index, cover::central_index(&c));
        }
    }

    #[test]
    fn table_examples() {
        let t = enumerate_glr_table(2, 5, 4, 0, 1).unwrap();
        assert!(t.histogram.keys().all(|d| [2, 4].contains(d)));
        assert_eq!(t.rows.iter().map(|r| r.class_size).sum::<u64>(), 24 - 4);
        assert_eq!(t.rows[0], TableRow { representative: 1, class_size: 2, dimension: 4 });
        let t = enumerate_glr_table(2, 5, 1, 0, 1).unwrap();
        assert_eq!(t.histogram.keys().copied().collect::<Vec<_>>(), vec![1]);
        let t = enumerate_glr_table(2, 5, 4, 2, 4).unwrap();
        assert_eq!(t.histogram.keys().copied().collect::<Vec<_>>(), vec![1]);
        assert!(matches!(enumerate_glr_table_with_bound(3, 13, 4, 0, 1, 100), Err(Error::BoundExceeded(_))));
    }

    proptest! {
        #[test]
        fn closed_form_matches_oracle(
            (r, q) in prop::sample::select(vec![(1usize, 3u64), (1, 7), (2, 3), (2, 5), (2, 7), (3, 3), (3, 5)]),
            p in -3i64..=3,
            qq in -3i64..=3,
            ni in 0usize..8,
            a in 0u64..400,
        ) {
            let divisors: Vec<u64> = (1..q).filter(|d| (q - 1) % d == 0).collect();
            let n = divisors[ni % divisors.len()];
            let big = q.pow(r as u32) - 1;
            let a = a % big;
            let closed = wh_dim_glr_closed(r, q, n, p, qq, a);
            prop_assert_eq!(&closed, &wh_dim_oracle(r, q, n, p, qq, a));
            if let Ok(k) = closed {
                prop_assert_eq!(glr_dimension_bound(n, cover::m_qr(r, p, qq)) % k, 0);
            }
        }

        #[test]
        fn xi_additive(p in -3i64..=3, qq in -3i64..=3, k1 in -9i64..9, k2 in -9i64..9) {
            let c = glr_cover(3, p, qq, 6, 7).unwrap();
            let y = |k: i64| vec![k, k, k];
            let sum = xi_of(&c, &y(k1 + k2)).unwrap();
            prop_assert_eq!(sum, xi_of(&c, &y(k1)).unwrap().add(&xi_of(&c, &y(k2)).unwrap()).unwrap());
            let l0 = lattice::intersect(&weyl_frobenius_fixed(&c), &cover::y_qn(&c)).unwrap();
            prop_assert_eq!(xi_of(&c, &y(k1)).unwrap().is_zero(), l0.contains_i64(&y(k1)));
            // annihilated by q - 1
            prop_assert!(xi_of(&c, &y(k1)).unwrap().scale(6).unwrap().is_zero());
        }

        #[test]
        fn coxeter_parameter_satisfies_thetaq(r in 1usize..=3, a in 0u64..2000, p in -2i64..=2) {
            let q: u64 = 13;
            let a = a % (q.pow(r as u32) - 1);
            let c = glr_cover(r, p, 1, 4, q).unwrap();
            let param = glr_coxeter_parameter(r, q, 4, a).unwrap();
            prop_assert!(param.satisfies_thetaq(&c));
        }
    }
}
