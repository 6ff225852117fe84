//! Based root data `(X, Φ, Δ, Y, Φ^∨, Δ^∨)` with a Frobenius action.
//!
//! `X` and `Y` are both `Z^d` with the dot-product pairing. Roots are stored
//! in `X`-coordinates, coroots in `Y`-coordinates, index-paired. Frobenius is
//! stored only through its action on `Y`; the action on `X` is the inverse
//! transpose and is always derived.

use std::collections::{HashMap, HashSet, VecDeque};

use num_rational::BigRational;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::lattice::{self, Sublattice};
use crate::matrix::Matrix;

/// Default bound on the multiplicative order of a Frobenius matrix.
pub const DEFAULT_FROBENIUS_ORDER_BOUND: usize = 24;
/// Largest semisimple rank for which the Weyl group is enumerated.
pub const MAX_WEYL_SEMISIMPLE_RANK: usize = 8;
/// Largest Weyl group order that will be materialized (8!).
pub const MAX_WEYL_ORDER: usize = 40_320;

pub(crate) fn dot(x: &[i64], y: &[i64]) -> i64 {
    x.iter().zip(y).map(|(a, b)| a * b).sum()
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FrobeniusAction {
    matrix: Matrix,
    order: usize,
}

impl FrobeniusAction {
    pub fn trivial(d: usize) -> Self {
        FrobeniusAction { matrix: Matrix::identity(d), order: 1 }
    }

    pub fn new(matrix: Matrix) -> Result<Self> {
        Self::with_order_bound(matrix, DEFAULT_FROBENIUS_ORDER_BOUND)
    }

    pub fn with_order_bound(matrix: Matrix, bound: usize) -> Result<Self> {
        if !matrix.is_square() {
            return Err(Error::InvalidFrobenius("matrix is not square".into()));
        }
        let order = matrix.multiplicative_order(bound).ok_or_else(|| {
            Error::InvalidFrobenius(format!("matrix does not have finite order <= {bound}"))
        })?;
        Ok(FrobeniusAction { matrix, order })
    }

    /// Action on `Y`.
    pub fn matrix(&self) -> &Matrix {
        &self.matrix
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn is_trivial(&self) -> bool {
        self.order == 1
    }

    /// Action on `X`, the inverse transpose of the `Y` action.
    pub fn x_matrix(&self) -> Matrix {
        self.inverse().transpose()
    }

    /// Inverse of the `Y` action, `Fr^(order - 1)`.
    pub fn inverse(&self) -> Matrix {
        let d = self.matrix.nrows();
        (1..self.order).fold(Matrix::identity(d), |acc, _| &acc * &self.matrix)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BasedRootDatum {
    rank: usize,
    roots: Vec<Vec<i64>>,
    coroots: Vec<Vec<i64>>,
    simple: Vec<usize>,
    frobenius: FrobeniusAction,
}

impl BasedRootDatum {
    /// Validates and builds a based root datum.
    ///
    /// `frobenius` is the action on `Y`; `None` means the identity.
    pub fn new(
        rank: usize,
        roots: Vec<Vec<i64>>,
        coroots: Vec<Vec<i64>>,
        simple: Vec<usize>,
        frobenius: Option<Matrix>,
    ) -> Result<Self> {
        if rank == 0 {
            return Err(Error::InvalidRank("rank must be at least 1".into()));
        }
        if roots.len() != coroots.len() {
            return Err(Error::InvalidRootDatum(format!(
                "{} roots but {} coroots",
                roots.len(),
                coroots.len()
            )));
        }
        for v in roots.iter().chain(&coroots) {
            if v.len() != rank {
                return Err(Error::Ragged { expected: rank, found: v.len() });
            }
        }
        let frobenius = match frobenius {
            None => FrobeniusAction::trivial(rank),
            Some(m) => {
                if m.nrows() != rank || m.ncols() != rank {
                    return Err(Error::DimensionMismatch { expected: rank, found: m.nrows() });
                }
                FrobeniusAction::new(m)?
            }
        };
        let rd = BasedRootDatum { rank, roots, coroots, simple, frobenius };
        rd.validate()?;
        Ok(rd)
    }

    fn validate(&self) -> Result<()> {
        let mut seen = HashSet::new();
        for (i, (a, c)) in self.roots.iter().zip(&self.coroots).enumerate() {
            if dot(a, c) != 2 {
                return Err(Error::InvalidRootDatum(format!(
                    "root {i} pairs with its coroot to {}, expected 2",
                    dot(a, c)
                )));
            }
            if !seen.insert(a.clone()) {
                return Err(Error::InvalidRootDatum(format!("root {i} is repeated")));
            }
        }
        let mut simple_seen = HashSet::new();
        for &s in &self.simple {
            if s >= self.roots.len() {
                return Err(Error::InvalidRootDatum(format!("simple index {s} out of range")));
            }
            if !simple_seen.insert(s) {
                return Err(Error::InvalidRootDatum(format!("simple index {s} repeated")));
            }
        }
        if !self.roots.is_empty() && self.simple.is_empty() {
            return Err(Error::InvalidRootDatum("nonempty root system with no simple roots".into()));
        }
        if crate::linalg::rank(&self.simple_roots()) != self.simple.len() {
            return Err(Error::InvalidRootDatum("simple roots are linearly dependent".into()));
        }
        for (i, row) in self.cartan_matrix().iter().enumerate() {
            for (j, &v) in row.iter().enumerate() {
                let ok = if i == j { v == 2 } else { (-3..=0).contains(&v) };
                if !ok {
                    return Err(Error::InvalidRootDatum(format!(
                        "Cartan entry ({i},{j}) = {v} is not admissible"
                    )));
                }
            }
        }
        // each simple reflection permutes roots and coroots compatibly
        for &s in &self.simple {
            self.reflection_permutation(s)?;
        }
        // Frobenius permutes coroots, preserves the simple set, and its dual permutes roots
        let fx = self.frobenius.x_matrix();
        let fy = self.frobenius.matrix();
        let mut simple_image = Vec::new();
        for (a, c) in self.roots.iter().zip(&self.coroots) {
            let (fa, fc) = (fx.apply(a), fy.apply(c));
            match self.root_index(&fa) {
                Some(k) if self.coroots[k] == fc => simple_image.push(k),
                _ => {
                    return Err(Error::InvalidFrobenius(
                        "Frobenius does not permute the root/coroot pairs".into(),
                    ))
                }
            }
        }
        for &s in &self.simple {
            if !self.simple.contains(&simple_image[s]) {
                return Err(Error::InvalidFrobenius("Frobenius does not preserve the simple set".into()));
            }
        }
        Ok(())
    }

    /// Permutation of root indices induced by the reflection in root `i`.
    fn reflection_permutation(&self, i: usize) -> Result<Vec<usize>> {
        let (a, c) = (&self.roots[i], &self.coroots[i]);
        self.roots
            .iter()
            .zip(&self.coroots)
            .map(|(b, d)| {
                // s(b) = b - <b, a^∨> a on X, s(d) = d - <a, d> a^∨ on Y
                let k = dot(b, c);
                let sb: Vec<i64> = b.iter().zip(a).map(|(x, y)| x - k * y).collect();
                let l = dot(a, d);
                let sd: Vec<i64> = d.iter().zip(c).map(|(x, y)| x - l * y).collect();
                match self.root_index(&sb) {
                    Some(j) if self.coroots[j] == sd => Ok(j),
                    _ => Err(Error::InvalidRootDatum(format!(
                        "reflection in root {i} does not permute the root/coroot pairs"
                    ))),
                }
            })
            .collect()
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn roots(&self) -> &[Vec<i64>] {
        &self.roots
    }

    pub fn coroots(&self) -> &[Vec<i64>] {
        &self.coroots
    }

    pub fn simple_indices(&self) -> &[usize] {
        &self.simple
    }

    pub fn simple_roots(&self) -> Vec<Vec<i64>> {
        self.simple.iter().map(|&i| self.roots[i].clone()).collect()
    }

    pub fn simple_coroots(&self) -> Vec<Vec<i64>> {
        self.simple.iter().map(|&i| self.coroots[i].clone()).collect()
    }

    pub fn frobenius(&self) -> &FrobeniusAction {
        &self.frobenius
    }

    pub fn semisimple_rank(&self) -> usize {
        self.simple.len()
    }

    pub fn is_torus(&self) -> bool {
        self.roots.is_empty()
    }

    /// Same datum with a different Frobenius action on `Y`.
    pub fn with_frobenius(&self, matrix: Matrix) -> Result<Self> {
        BasedRootDatum::new(
            self.rank,
            self.roots.clone(),
            self.coroots.clone(),
            self.simple.clone(),
            Some(matrix),
        )
    }

    pub fn root_index(&self, root: &[i64]) -> Option<usize> {
        self.roots.iter().position(|r| r.as_slice() == root)
    }

    pub fn pairing(x: &[i64], y: &[i64]) -> i64 {
        dot(x, y)
    }

    /// `⟨α_i, α_j^∨⟩` over simple indices.
    pub fn cartan_matrix(&self) -> Vec<Vec<i64>> {
        self.simple
            .iter()
            .map(|&i| self.simple.iter().map(|&j| dot(&self.roots[i], &self.coroots[j])).collect())
            .collect()
    }

    /// Simple reflection `y ↦ y - ⟨α_i, y⟩ α_i^∨` on `Y`, for simple position `i`.
    pub fn simple_reflection(&self, i: usize) -> Matrix {
        let k = self.simple[i];
        let (a, c) = (&self.roots[k], &self.coroots[k]);
        let mut m = Matrix::identity(self.rank);
        for r in 0..self.rank {
            for s in 0..self.rank {
                m[(r, s)] -= c[r] * a[s];
            }
        }
        m
    }

    pub fn simple_reflections(&self) -> Vec<Matrix> {
        (0..self.simple.len()).map(|i| self.simple_reflection(i)).collect()
    }

    /// `α(x)` for root index `i` at a rational point of `Y ⊗ Q`.
    pub fn root_value(&self, i: usize, x: &[BigRational]) -> BigRational {
        self.roots[i]
            .iter()
            .zip(x)
            .fold(BigRational::zero(), |acc, (&a, xi)| acc + xi * BigRational::from_integer(a.into()))
    }

    /// Whether root `i` is positive for the fixed simple system.
    pub fn is_positive(&self, i: usize) -> bool {
        let coeffs = self.simple_coefficients(i);
        coeffs.iter().all(|c| *c >= BigRational::zero())
    }

    /// Coefficients of root `i` in the basis of simple roots.
    pub fn simple_coefficients(&self, i: usize) -> Vec<BigRational> {
        let simple = self.simple_roots();
        let a: Vec<Vec<BigRational>> = (0..self.rank)
            .map(|j| simple.iter().map(|s| BigRational::from_integer(s[j].into())).collect())
            .collect();
        let b: Vec<BigRational> =
            self.roots[i].iter().map(|&v| BigRational::from_integer(v.into())).collect();
        crate::linalg::solve(&a, &b).expect("roots lie in the span of the simple roots")
    }
}

/// Simply connected datum attached to a Cartan matrix `A[i][j] = ⟨α_i, α_j^∨⟩`.
///
/// `Y` is the coroot lattice with the simple coroots as basis and `X` the
/// weight lattice; the full root system is the orbit of the simple pairs
/// under simple reflections.
pub fn from_cartan(cartan: &[Vec<i64>]) -> Result<BasedRootDatum> {
    let d = cartan.len();
    if d == 0 {
        return Err(Error::InvalidRank("Cartan matrix is empty".into()));
    }
    let simple_pairs: Vec<(Vec<i64>, Vec<i64>)> = (0..d)
        .map(|i| {
            let root = cartan[i].clone();
            let coroot = (0..d).map(|j| i64::from(i == j)).collect();
            (root, coroot)
        })
        .collect();
    let mut index: HashMap<Vec<i64>, usize> = HashMap::new();
    let mut pairs: Vec<(Vec<i64>, Vec<i64>)> = Vec::new();
    let mut queue: VecDeque<(Vec<i64>, Vec<i64>)> = simple_pairs.iter().cloned().collect();
    while let Some((a, c)) = queue.pop_front() {
        if index.contains_key(&a) {
            continue;
        }
        if pairs.len() > 10_000 {
            return Err(Error::InvalidRootDatum("Cartan matrix generates an infinite root system".into()));
        }
        index.insert(a.clone(), pairs.len());
        pairs.push((a.clone(), c.clone()));
        for (sa, sc) in &simple_pairs {
            let k = dot(&a, sc);
            let ra: Vec<i64> = a.iter().zip(sa).map(|(x, y)| x - k * y).collect();
            let l = dot(sa, &c);
            let rc: Vec<i64> = c.iter().zip(sc).map(|(x, y)| x - l * y).collect();
            queue.push_back((ra, rc));
        }
    }
    let (roots, coroots): (Vec<_>, Vec<_>) = pairs.into_iter().unzip();
    BasedRootDatum::new(d, roots, coroots, (0..d).collect(), None)
}

/// `GL_r`: `Y = Z^r`, roots `e_i - e_j`, simple coroots `e_i - e_{i+1}`.
pub fn build_glr(r: usize) -> Result<BasedRootDatum> {
    if r == 0 {
        return Err(Error::InvalidRank("GL_r needs r >= 1".into()));
    }
    let mut roots = Vec::new();
    let mut simple = Vec::new();
    for i in 0..r {
        for j in 0..r {
            if i != j {
                if j == i + 1 {
                    simple.push(roots.len());
                }
                let mut v = vec![0; r];
                v[i] = 1;
                v[j] = -1;
                roots.push(v);
            }
        }
    }
    let coroots = roots.clone();
    BasedRootDatum::new(r, roots, coroots, simple, None)
}

/// `SL_r` in simply connected coordinates: `Y` has the simple coroots as basis.
pub fn build_slr(r: usize) -> Result<BasedRootDatum> {
    if r < 2 {
        return Err(Error::InvalidRank("SL_r needs r >= 2".into()));
    }
    let n = r - 1;
    let cartan: Vec<Vec<i64>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| match i.abs_diff(j) {
                    0 => 2,
                    1 => -1,
                    _ => 0,
                })
                .collect()
        })
        .collect();
    from_cartan(&cartan)
}

/// `Sp_2r` with `Y = Z^r`: roots `±e_i ± e_j` and `±2e_i`, coroots of the
/// long roots `±2e_i` are `±e_i`.
pub fn build_sp2r(r: usize) -> Result<BasedRootDatum> {
    if r < 2 {
        return Err(Error::InvalidRank("Sp_2r needs r >= 2".into()));
    }
    let unit = |i: usize, s: i64| {
        let mut v = vec![0; r];
        v[i] = s;
        v
    };
    let mut roots = Vec::new();
    let mut coroots = Vec::new();
    for i in 0..r {
        for j in i + 1..r {
            for (si, sj) in [(1, -1), (-1, 1), (1, 1), (-1, -1)] {
                let mut v = vec![0; r];
                v[i] = si;
                v[j] = sj;
                roots.push(v.clone());
                coroots.push(v);
            }
        }
        for s in [1, -1] {
            roots.push(unit(i, 2 * s));
            coroots.push(unit(i, s));
        }
    }
    let mut simple = Vec::new();
    for i in 0..r - 1 {
        let mut v = vec![0; r];
        v[i] = 1;
        v[i + 1] = -1;
        simple.push(roots.iter().position(|x| *x == v).expect("simple root present"));
    }
    simple.push(roots.iter().position(|x| *x == unit(r - 1, 2)).expect("long simple root present"));
    BasedRootDatum::new(r, roots, coroots, simple, None)
}

/// Torus of rank `d` with Frobenius `fr` on `Y` (`None` for split).
pub fn build_torus(d: usize, fr: Option<Matrix>) -> Result<BasedRootDatum> {
    if d == 0 {
        return Err(Error::InvalidRank("torus needs rank >= 1".into()));
    }
    BasedRootDatum::new(d, Vec::new(), Vec::new(), Vec::new(), fr)
}

/// Adjoint `PGL_2`: `Y = Z`, root `1`, coroot `2`.
pub fn build_pgl2() -> Result<BasedRootDatum> {
    BasedRootDatum::new(1, vec![vec![1], vec![-1]], vec![vec![2], vec![-2]], vec![0], None)
}

/// Finite Weyl group, as matrices on `Y`.
#[derive(Debug, Clone)]
pub struct WeylGroup {
    elements: Vec<Matrix>,
    generators: Vec<Matrix>,
}

impl WeylGroup {
    pub fn elements(&self) -> &[Matrix] {
        &self.elements
    }

    pub fn generators(&self) -> &[Matrix] {
        &self.generators
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn contains(&self, m: &Matrix) -> bool {
        self.elements.contains(m)
    }

    /// Elements commuting with `g` (the fixed points of conjugation by `g`).
    pub fn centralizer(&self, g: &Matrix) -> Vec<Matrix> {
        self.elements.iter().filter(|w| &(g * *w) == &(*w * g)).cloned().collect()
    }
}

/// Breadth-first closure of the simple reflections.
pub fn weyl_group(rd: &BasedRootDatum) -> Result<WeylGroup> {
    if rd.semisimple_rank() > MAX_WEYL_SEMISIMPLE_RANK {
        return Err(Error::WeylGroupTooLarge(format!(
            "semisimple rank {} exceeds {MAX_WEYL_SEMISIMPLE_RANK}",
            rd.semisimple_rank()
        )));
    }
    let generators = rd.simple_reflections();
    let id = Matrix::identity(rd.rank());
    let mut seen: HashSet<Matrix> = HashSet::from([id.clone()]);
    let mut elements = vec![id.clone()];
    let mut queue = VecDeque::from([id]);
    while let Some(w) = queue.pop_front() {
        for s in &generators {
            let ws = &w * s;
            if seen.insert(ws.clone()) {
                if elements.len() >= MAX_WEYL_ORDER {
                    return Err(Error::WeylGroupTooLarge(format!("more than {MAX_WEYL_ORDER} elements")));
                }
                elements.push(ws.clone());
                queue.push_back(ws);
            }
        }
    }
    Ok(WeylGroup { elements, generators })
}

/// `Y^SC`, the span of all coroots.
pub fn coroot_lattice(rd: &BasedRootDatum) -> Sublattice {
    Sublattice::from_rows(rd.rank(), rd.coroots()).expect("coroots have ambient length")
}

/// `Y / Y^SC` is free.
pub fn is_derived_simply_connected(rd: &BasedRootDatum) -> bool {
    lattice::is_saturated(&coroot_lattice(rd))
}
