//! Integer sublattices of `Z^d` in canonical Hermite normal form.
//!
//! Every [`Sublattice`] stores its basis as the rows of a row-style Hermite
//! normal form: rows are in echelon form, pivots are positive, and entries
//! above each pivot are reduced into `[0, pivot)`. Two sublattices are equal
//! exactly when their stored bases are equal.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::matrix::Matrix;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Sublattice {
    ambient_rank: usize,
    basis: Vec<Vec<BigInt>>,
}

/// Invariant factors `d_1 | d_2 | ... | d_k` (each at least 2) and free rank
/// of a finitely generated abelian group.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteAbelianStructure {
    pub invariant_factors: Vec<BigInt>,
    pub free_rank: usize,
}

impl FiniteAbelianStructure {
    pub fn torsion_order(&self) -> BigInt {
        self.invariant_factors.iter().product()
    }

    pub fn is_finite(&self) -> bool {
        self.free_rank == 0
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Index {
    Finite(BigInt),
    Infinite,
}

impl Index {
    pub fn finite(&self) -> Option<&BigInt> {
        match self {
            Index::Finite(n) => Some(n),
            Index::Infinite => None,
        }
    }
}

impl fmt::Display for Index {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Index::Finite(n) => write!(f, "{n}"),
            Index::Infinite => f.write_str("infinite"),
        }
    }
}

fn big_rows<T: Clone + Into<BigInt>>(rows: &[Vec<T>]) -> Vec<Vec<BigInt>> {
    rows.iter().map(|r| r.iter().map(|x| x.clone().into()).collect()).collect()
}

fn check_rows<T>(d: usize, rows: &[Vec<T>]) -> Result<()> {
    match rows.iter().find(|r| r.len() != d) {
        Some(r) => Err(Error::Ragged { expected: d, found: r.len() }),
        None => Ok(()),
    }
}

fn sub_scaled(target: &mut [BigInt], source: &[BigInt], factor: &BigInt) {
    if factor.is_zero() {
        return;
    }
    for (t, s) in target.iter_mut().zip(source) {
        *t -= factor * s;
    }
}

/// Integer row reduction on the first `pivot_cols` columns.
///
/// Leaves the leading rows in Hermite form restricted to those columns and
/// returns how many rows carry a pivot; the remaining rows are zero on the
/// first `pivot_cols` columns. Only unimodular row operations are used.
fn echelon(rows: &mut [Vec<BigInt>], pivot_cols: usize) -> usize {
    let n = rows.len();
    let mut r = 0;
    let mut pivots = Vec::new();
    for c in 0..pivot_cols {
        if r == n {
            break;
        }
        loop {
            let best = (r..n)
                .filter(|&i| !rows[i][c].is_zero())
                .min_by(|&a, &b| rows[a][c].abs().cmp(&rows[b][c].abs()));
            let Some(best) = best else { break };
            rows.swap(r, best);
            let mut done = true;
            for i in r + 1..n {
                if rows[i][c].is_zero() {
                    continue;
                }
                let q = rows[i][c].div_floor(&rows[r][c]);
                let (head, tail) = rows.split_at_mut(i);
                sub_scaled(&mut tail[0], &head[r], &q);
                if !rows[i][c].is_zero() {
                    done = false;
                }
            }
            if done {
                break;
            }
        }
        if r < n && !rows[r][c].is_zero() {
            if rows[r][c].is_negative() {
                for x in rows[r].iter_mut() {
                    *x = -&*x;
                }
            }
            pivots.push(c);
            r += 1;
        }
    }
    // reduce entries above each pivot
    for (k, &c) in pivots.iter().enumerate() {
        for i in 0..k {
            let q = rows[i][c].div_floor(&rows[k][c]);
            if !q.is_zero() {
                let (head, tail) = rows.split_at_mut(k);
                sub_scaled(&mut head[i], &tail[0], &q);
            }
        }
    }
    r
}

impl Sublattice {
    pub fn zero(d: usize) -> Self {
        Sublattice { ambient_rank: d, basis: Vec::new() }
    }

    pub fn full(d: usize) -> Self {
        let basis = (0..d)
            .map(|i| (0..d).map(|j| if i == j { BigInt::one() } else { BigInt::zero() }).collect())
            .collect();
        Sublattice { ambient_rank: d, basis }
    }

    /// Lattice spanned by `rows` inside `Z^d`; `rows` may be empty.
    pub fn from_rows<T: Clone + Into<BigInt>>(d: usize, rows: &[Vec<T>]) -> Result<Self> {
        check_rows(d, rows)?;
        let mut rows = big_rows(rows);
        let r = echelon(&mut rows, d);
        rows.truncate(r);
        Ok(Sublattice { ambient_rank: d, basis: rows })
    }

    pub fn ambient_rank(&self) -> usize {
        self.ambient_rank
    }

    pub fn rank(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[Vec<BigInt>] {
        &self.basis
    }

    pub fn is_zero(&self) -> bool {
        self.basis.is_empty()
    }

    pub fn is_full(&self) -> bool {
        *self == Self::full(self.ambient_rank)
    }

    /// Coordinates of `v` in the stored basis, if `v` lies in the lattice.
    pub fn coordinates(&self, v: &[BigInt]) -> Option<Vec<BigInt>> {
        if v.len() != self.ambient_rank {
            return None;
        }
        let mut rem = v.to_vec();
        let mut coords = Vec::with_capacity(self.basis.len());
        for row in &self.basis {
            let c = row.iter().position(|x| !x.is_zero()).expect("basis rows are nonzero");
            // every earlier pivot column of `rem` is already cleared
            if rem[..c].iter().any(|x| !x.is_zero()) {
                return None;
            }
            let (q, r) = rem[c].div_rem(&row[c]);
            if !r.is_zero() {
                return None;
            }
            sub_scaled(&mut rem, row, &q);
            coords.push(q);
        }
        rem.iter().all(Zero::is_zero).then_some(coords)
    }

    pub fn contains(&self, v: &[BigInt]) -> bool {
        self.coordinates(v).is_some()
    }

    pub fn contains_i64(&self, v: &[i64]) -> bool {
        let v: Vec<BigInt> = v.iter().map(|&x| x.into()).collect();
        self.contains(&v)
    }

    pub fn is_subset_of(&self, other: &Sublattice) -> bool {
        self.ambient_rank == other.ambient_rank && self.basis.iter().all(|b| other.contains(b))
    }

    /// Lattice generated by `self` and `other`.
    pub fn sum(&self, other: &Sublattice) -> Result<Sublattice> {
        self.check_same_ambient(other)?;
        let mut rows = self.basis.clone();
        rows.extend(other.basis.iter().cloned());
        Sublattice::from_rows(self.ambient_rank, &rows)
    }

    /// Extends the generating set by `extra` vectors.
    pub fn extended_by(&self, extra: &[Vec<BigInt>]) -> Result<Sublattice> {
        let mut rows = self.basis.clone();
        rows.extend(extra.iter().cloned());
        Sublattice::from_rows(self.ambient_rank, &rows)
    }

    pub fn intersect(&self, other: &Sublattice) -> Result<Sublattice> {
        intersect(self, other)
    }

    pub fn saturation(&self) -> Sublattice {
        saturation(self)
    }

    pub fn is_saturated(&self) -> bool {
        is_saturated(self)
    }

    fn check_same_ambient(&self, other: &Sublattice) -> Result<()> {
        if self.ambient_rank != other.ambient_rank {
            return Err(Error::DimensionMismatch {
                expected: self.ambient_rank,
                found: other.ambient_rank,
            });
        }
        Ok(())
    }

    /// Coordinates of each basis vector of `sub` in the basis of `self`.
    fn relative_matrix(&self, sub: &Sublattice) -> Result<Vec<Vec<BigInt>>> {
        self.check_same_ambient(sub)?;
        sub.basis
            .iter()
            .map(|b| {
                self.coordinates(b).ok_or_else(|| {
                    Error::NotContained(format!("basis vector {} not in the larger lattice", fmt_vec(b)))
                })
            })
            .collect()
    }
}

fn fmt_vec(v: &[BigInt]) -> String {
    let parts: Vec<String> = v.iter().map(ToString::to_string).collect();
    format!("({})", parts.join(","))
}

impl fmt::Debug for Sublattice {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Sublattice(Z^{}; ", self.ambient_rank)?;
        let rows: Vec<String> = self.basis.iter().map(|r| fmt_vec(r)).collect();
        write!(f, "[{}])", rows.join(", "))
    }
}

/// Canonical sublattice spanned by `rows`, all of the same length `d >= 1`.
pub fn hermite_normal_form<T: Clone + Into<BigInt>>(rows: &[Vec<T>]) -> Result<Sublattice> {
    let Some(first) = rows.first() else {
        return Err(Error::EmptyInput("no rows given; ambient rank unknown"));
    };
    if first.is_empty() {
        return Err(Error::EmptyInput("rows of length zero"));
    }
    Sublattice::from_rows(first.len(), rows)
}

/// Diagonal of the Smith normal form of an integer matrix (nonzero entries only).
pub fn smith_diagonal(m: &[Vec<BigInt>]) -> Vec<BigInt> {
    let mut a: Vec<Vec<BigInt>> = m.to_vec();
    let nrows = a.len();
    let ncols = a.first().map_or(0, Vec::len);
    let mut diag = Vec::new();
    let mut t = 0;
    while t < nrows.min(ncols) {
        // pick the smallest nonzero entry in the remaining block as pivot
        let mut best: Option<(usize, usize)> = None;
        for i in t..nrows {
            for j in t..ncols {
                if !a[i][j].is_zero()
                    && best.map_or(true, |(bi, bj)| a[i][j].abs() < a[bi][bj].abs())
                {
                    best = Some((i, j));
                }
            }
        }
        let Some((pi, pj)) = best else { break };
        a.swap(t, pi);
        for row in a.iter_mut() {
            row.swap(t, pj);
        }
        loop {
            let mut changed = false;
            for i in t + 1..nrows {
                if !a[i][t].is_zero() {
                    let q = a[i][t].div_floor(&a[t][t]);
                    let (head, tail) = a.split_at_mut(i);
                    sub_scaled(&mut tail[0], &head[t], &q);
                    if !a[i][t].is_zero() {
                        a.swap(t, i);
                        changed = true;
                    }
                }
            }
            for j in t + 1..ncols {
                if !a[t][j].is_zero() {
                    let q = a[t][j].div_floor(&a[t][t]);
                    for row in a.iter_mut() {
                        let delta = &q * &row[t];
                        row[j] -= delta;
                    }
                    if !a[t][j].is_zero() {
                        for row in a.iter_mut() {
                            row.swap(t, j);
                        }
                        changed = true;
                    }
                }
            }
            if changed {
                continue;
            }
            // enforce divisibility of the rest of the block by the pivot
            let offender = (t + 1..nrows)
                .flat_map(|i| (t + 1..ncols).map(move |j| (i, j)))
                .find(|&(i, j)| !a[i][j].is_multiple_of(&a[t][t]));
            match offender {
                Some((i, _)) => {
                    let (head, tail) = a.split_at_mut(i);
                    for (x, y) in head[t].iter_mut().zip(tail[0].iter()) {
                        *x += y;
                    }
                }
                None => break,
            }
        }
        diag.push(a[t][t].abs());
        t += 1;
    }
    diag
}

/// Structure of the quotient `sup / sub`.
pub fn smith_invariants(sup: &Sublattice, sub: &Sublattice) -> Result<FiniteAbelianStructure> {
    let rel = sup.relative_matrix(sub)?;
    let diag = smith_diagonal(&rel);
    let invariant_factors = diag.iter().filter(|d| !d.is_one()).cloned().collect();
    Ok(FiniteAbelianStructure { invariant_factors, free_rank: sup.rank() - diag.len() })
}

/// `[sup : sub]`, or [`Index::Infinite`] when `sub` has smaller rank.
pub fn index(sup: &Sublattice, sub: &Sublattice) -> Result<Index> {
    let rel = sup.relative_matrix(sub)?;
    if sub.rank() < sup.rank() {
        return Ok(Index::Infinite);
    }
    // `rel` is square and upper triangular in HNF coordinates of `sub`
    let det: BigInt = (0..rel.len()).map(|i| rel[i][i].clone()).product();
    Ok(Index::Finite(det.abs()))
}

/// `{v in Z^d : A v = 0}` for `A` given by its rows.
pub fn kernel<T: Clone + Into<BigInt>>(d: usize, rows: &[Vec<T>]) -> Result<Sublattice> {
    check_rows(d, rows)?;
    let a = big_rows(rows);
    let m = a.len();
    // rows of [A^T | I]
    let mut aug: Vec<Vec<BigInt>> = (0..d)
        .map(|i| {
            let mut r: Vec<BigInt> = a.iter().map(|row| row[i].clone()).collect();
            r.extend((0..d).map(|j| if i == j { BigInt::one() } else { BigInt::zero() }));
            r
        })
        .collect();
    let r = echelon(&mut aug, m);
    let ker: Vec<Vec<BigInt>> = aug[r..].iter().map(|row| row[m..].to_vec()).collect();
    Sublattice::from_rows(d, &ker)
}

/// `{v in Z^d : A v ≡ 0 mod modulus}` componentwise.
pub fn congruence_kernel<T: Clone + Into<BigInt>>(
    d: usize,
    rows: &[Vec<T>],
    modulus: &BigInt,
) -> Result<Sublattice> {
    check_rows(d, rows)?;
    let m = rows.len();
    // solutions (v, z) of A v + modulus * z = 0, projected onto v
    let ext: Vec<Vec<BigInt>> = big_rows(rows)
        .into_iter()
        .enumerate()
        .map(|(i, mut r)| {
            r.extend((0..m).map(|j| if i == j { modulus.clone() } else { BigInt::zero() }));
            r
        })
        .collect();
    let k = kernel(d + m, &ext)?;
    let proj: Vec<Vec<BigInt>> = k.basis.iter().map(|r| r[..d].to_vec()).collect();
    Sublattice::from_rows(d, &proj)
}

pub fn intersect(a: &Sublattice, b: &Sublattice) -> Result<Sublattice> {
    a.check_same_ambient(b)?;
    let d = a.ambient_rank;
    if a.is_zero() || b.is_zero() {
        return Ok(Sublattice::zero(d));
    }
    let (ra, rb) = (a.rank(), b.rank());
    // (u, v) with u A - v B = 0: kernel of the d x (ra + rb) matrix [A^T | -B^T]
    let system: Vec<Vec<BigInt>> = (0..d)
        .map(|j| {
            a.basis
                .iter()
                .map(|r| r[j].clone())
                .chain(b.basis.iter().map(|r| -&r[j]))
                .collect()
        })
        .collect();
    let k = kernel(ra + rb, &system)?;
    let vectors: Vec<Vec<BigInt>> = k
        .basis
        .iter()
        .map(|uv| {
            (0..d)
                .map(|j| (0..ra).map(|i| &uv[i] * &a.basis[i][j]).sum())
                .collect()
        })
        .collect();
    Sublattice::from_rows(d, &vectors)
}

/// `{y in Z^d : k y in l for some k > 0}`.
pub fn saturation(l: &Sublattice) -> Sublattice {
    let d = l.ambient_rank;
    let orth = kernel(d, &l.basis).expect("basis rows have ambient length");
    kernel(d, &orth.basis).expect("kernel rows have ambient length")
}

pub fn is_saturated(l: &Sublattice) -> bool {
    saturation(l) == *l
}

/// Joint fixed lattice `∩ ker(M - I)` of square `d x d` matrices.
pub fn fixed_sublattice(d: usize, endomorphisms: &[Matrix]) -> Result<Sublattice> {
    let mut rows: Vec<Vec<i64>> = Vec::new();
    for m in endomorphisms {
        if m.nrows() != d || m.ncols() != d {
            return Err(Error::DimensionMismatch { expected: d, found: m.nrows().max(m.ncols()) });
        }
        rows.extend(m.sub_identity().to_rows());
    }
    kernel(d, &rows)
}

/// One representative of each coset of `sub` in `sup` (finite index required).
///
/// Representatives are `sum c_i b_i` over the basis `b_i` of `sup` with each
/// `c_i` ranging over `[0, h_i)`, `h_i` the diagonal of `sub` in HNF
/// coordinates relative to `sup`.
pub fn coset_representatives(sup: &Sublattice, sub: &Sublattice) -> Result<Vec<Vec<BigInt>>> {
    let rel = sup.relative_matrix(sub)?;
    if sub.rank() < sup.rank() {
        return Err(Error::NotContained("quotient is infinite".into()));
    }
    let k = sup.rank();
    let rel_hnf = Sublattice::from_rows(k, &rel)?;
    let diag: Vec<BigInt> = (0..k).map(|i| rel_hnf.basis[i][i].clone()).collect();
    let mut coords: Vec<Vec<BigInt>> = vec![Vec::new()];
    for h in &diag {
        let mut next = Vec::new();
        for prefix in &coords {
            let mut c = BigInt::zero();
            while &c < h {
                let mut v = prefix.clone();
                v.push(c.clone());
                next.push(v);
                c += 1;
            }
        }
        coords = next;
    }
    let d = sup.ambient_rank;
    Ok(coords
        .into_iter()
        .map(|c| {
            (0..d)
                .map(|j| c.iter().zip(&sup.basis).map(|(ci, b)| ci * &b[j]).sum())
                .collect()
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg;
    use num_rational::BigRational;
    use proptest::prelude::*;

    fn lat(d: usize, rows: &[Vec<i64>]) -> Sublattice {
        Sublattice::from_rows(d, rows).unwrap()
    }

    fn big(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| x.into()).collect()
    }

    /// Membership oracle independent of the Hermite form: brute force over
    /// small integer combinations of the generators.
    fn in_span_oracle(generators: &[Vec<i64>], v: &[i64]) -> bool {
        let d = v.len();
        let k = generators.len();
        let bound = 12i64;
        let mut combo = vec![-bound; k];
        loop {
            let w: Vec<i64> = (0..d)
                .map(|j| (0..k).map(|i| combo[i] * generators[i][j]).sum())
                .collect();
            if w == v {
                return true;
            }
            let mut i = 0;
            loop {
                if i == k {
                    return false;
                }
                combo[i] += 1;
                if combo[i] > bound {
                    combo[i] = -bound;
                    i += 1;
                } else {
                    break;
                }
            }
        }
    }

    #[test]
    fn hnf_examples() {
        assert_eq!(lat(2, &[vec![2, 0], vec![0, 3]]).basis(), &[big(&[2, 0]), big(&[0, 3])]);
        assert_eq!(
            lat(2, &[vec![1, 0], vec![0, 1], vec![1, 1]]).basis(),
            &[big(&[1, 0]), big(&[0, 1])]
        );
        // (4,6) - 2(2,2) = (0,2); (2,2) - (0,2) = (2,0)
        let h = hermite_normal_form(&[vec![4i64, 6], vec![2, 2]]).unwrap();
        assert_eq!(h.basis(), &[big(&[2, 0]), big(&[0, 2])]);
        let gens = [vec![4, 6], vec![2, 2]];
        for b in h.basis() {
            let b: Vec<i64> = b.iter().map(|x| i64::try_from(x).unwrap()).collect();
            assert!(in_span_oracle(&gens, &b));
        }
        assert!(in_span_oracle(&[vec![2, 0], vec![0, 2]], &[4, 6]));
        assert!(in_span_oracle(&[vec![2, 0], vec![0, 2]], &[2, 2]));
    }

    #[test]
    fn hnf_rejects_ragged_and_empty() {
        assert!(matches!(
            hermite_normal_form(&[vec![1i64, 2], vec![3]]),
            Err(Error::Ragged { expected: 2, found: 1 })
        ));
        assert!(matches!(hermite_normal_form::<i64>(&[]), Err(Error::EmptyInput(_))));
    }

    #[test]
    fn zero_rows_give_zero_lattice() {
        let z = lat(3, &[vec![0, 0, 0]]);
        assert!(z.is_zero());
        assert_eq!(z, Sublattice::zero(3));
    }

    #[test]
    fn smith_examples() {
        let s = smith_invariants(&Sublattice::full(2), &Sublattice::full(2)).unwrap();
        assert_eq!(s, FiniteAbelianStructure { invariant_factors: vec![], free_rank: 0 });

        // brute force: Z^2 / <(2,0),(0,3)> has 6 elements in the box [0,2)x[0,3)
        // and (1,1) has order 6, so the quotient is cyclic of order 6
        let sub = lat(2, &[vec![2, 0], vec![0, 3]]);
        let order_of_11 = (1..=6)
            .find(|&k| sub.contains_i64(&[k, k]))
            .unwrap();
        assert_eq!(order_of_11, 6);
        let s = smith_invariants(&Sublattice::full(2), &sub).unwrap();
        assert_eq!(s.invariant_factors, vec![BigInt::from(6)]);
        assert_eq!(s.torsion_order(), BigInt::from(6));

        let s = smith_invariants(&Sublattice::full(1), &Sublattice::zero(1)).unwrap();
        assert_eq!(s.free_rank, 1);
        assert!(s.invariant_factors.is_empty());
    }

    #[test]
    fn smith_detects_noncontainment() {
        let sup = lat(2, &[vec![2, 0], vec![0, 1]]);
        let sub = lat(2, &[vec![1, 0]]);
        assert!(matches!(smith_invariants(&sup, &sub), Err(Error::NotContained(_))));
        assert!(matches!(index(&sup, &sub), Err(Error::NotContained(_))));
    }

    #[test]
    fn index_examples() {
        let l = lat(2, &[vec![3, 1], vec![0, 2]]);
        assert_eq!(index(&l, &l).unwrap(), Index::Finite(1.into()));
        let sub = lat(2, &[vec![2, 1], vec![0, 5]]);
        assert_eq!(index(&Sublattice::full(2), &sub).unwrap(), Index::Finite(10.into()));
        let line = lat(2, &[vec![1, 1]]);
        assert_eq!(index(&Sublattice::full(2), &line).unwrap(), Index::Infinite);
    }

    #[test]
    fn intersect_examples() {
        let full = Sublattice::full(2);
        assert_eq!(intersect(&full, &full).unwrap(), full);
        let a = lat(2, &[vec![2, 0], vec![0, 1]]);
        let b = lat(2, &[vec![1, 0], vec![0, 3]]);
        assert_eq!(intersect(&a, &b).unwrap(), lat(2, &[vec![2, 0], vec![0, 3]]));

        // brute force: no nonzero small combination u(1,1) = v(1,-1)
        let hits = (-10i64..=10)
            .flat_map(|u| (-10i64..=10).map(move |v| (u, v)))
            .filter(|&(u, v)| (u, u) == (v, -v) && u != 0)
            .count();
        assert_eq!(hits, 0);
        let c = lat(2, &[vec![1, 1]]);
        let d = lat(2, &[vec![1, -1]]);
        assert!(intersect(&c, &d).unwrap().is_zero());

        assert!(matches!(
            intersect(&Sublattice::full(2), &Sublattice::full(3)),
            Err(Error::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn saturation_examples() {
        assert_eq!(saturation(&lat(2, &[vec![2, 0]])), lat(2, &[vec![1, 0]]));
        assert!(is_saturated(&lat(2, &[vec![1, 1]])));

        // <(2,2),(0,4)> has rank 2, so its saturation is all of Z^2;
        // scanning [0,4)^2 finds (1,0) outside the lattice but 4(1,0) inside
        let l = lat(2, &[vec![2, 2], vec![0, 4]]);
        assert!(!l.contains_i64(&[1, 0]));
        assert!(l.contains_i64(&[4, 0]));
        assert!(in_span_oracle(&[vec![2, 2], vec![0, 4]], &[4, 0]));
        assert_eq!(saturation(&l), Sublattice::full(2));
        assert!(!is_saturated(&l));
        assert!(is_saturated(&Sublattice::zero(3)));
    }

    #[test]
    fn fixed_sublattice_examples() {
        assert_eq!(fixed_sublattice(2, &[]).unwrap(), Sublattice::full(2));
        let swap = Matrix::permutation(&[1, 0]);
        assert_eq!(fixed_sublattice(2, &[swap]).unwrap(), lat(2, &[vec![1, 1]]));
        let s1 = Matrix::permutation(&[1, 0, 2]);
        let s2 = Matrix::permutation(&[0, 2, 1]);
        assert_eq!(fixed_sublattice(3, &[s1, s2]).unwrap(), lat(3, &[vec![1, 1, 1]]));
        assert!(matches!(
            fixed_sublattice(3, &[Matrix::identity(2)]),
            Err(Error::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn congruence_kernel_matches_scan() {
        let gram = vec![vec![0i64, 1], vec![1, 0]];
        let k = congruence_kernel(2, &gram, &BigInt::from(4)).unwrap();
        assert_eq!(k, lat(2, &[vec![4, 0], vec![0, 4]]));
        let k = congruence_kernel(1, &[vec![2i64]], &BigInt::from(4)).unwrap();
        assert_eq!(k, lat(1, &[vec![2]]));
    }

    #[test]
    fn coset_representatives_count() {
        let sup = lat(2, &[vec![1, 1], vec![0, 2]]);
        let sub = lat(2, &[vec![3, 3], vec![0, 4]]);
        let reps = coset_representatives(&sup, &sub).unwrap();
        assert_eq!(reps.len(), 6);
        for (i, a) in reps.iter().enumerate() {
            assert!(sup.contains(a));
            for b in &reps[i + 1..] {
                let diff: Vec<BigInt> = a.iter().zip(b).map(|(x, y)| x - y).collect();
                assert!(!sub.contains(&diff));
            }
        }
    }

    fn small_rows(d: usize) -> impl Strategy<Value = Vec<Vec<i64>>> {
        prop::collection::vec(prop::collection::vec(-6i64..=6, d), 0..=d + 2)
    }

    proptest! {
        #[test]
        fn hnf_is_canonical(rows in small_rows(3), shuffle in any::<u64>(), mix in -3i64..=3) {
            let a = lat(3, &rows);
            prop_assert_eq!(Sublattice::from_rows(3, a.basis()).unwrap(), a.clone());
            let mut shuffled = rows.clone();
            if !shuffled.is_empty() {
                let k = (shuffle as usize) % shuffled.len();
                shuffled.rotate_left(k);
                if shuffled.len() >= 2 {
                    let r0 = shuffled[0].clone();
                    for (x, y) in shuffled[1].iter_mut().zip(&r0) {
                        *x += mix * y;
                    }
                }
            }
            prop_assert_eq!(lat(3, &shuffled), a);
        }

        #[test]
        fn basis_rows_independent(rows in small_rows(3)) {
            let a = lat(3, &rows);
            prop_assert_eq!(linalg::rank(a.basis()), a.rank());
            prop_assert_eq!(a.rank(), linalg::rank(&rows));
        }

        #[test]
        fn saturation_laws(rows in small_rows(3)) {
            let l = lat(3, &rows);
            let s = saturation(&l);
            prop_assert!(l.is_subset_of(&s));
            prop_assert_eq!(saturation(&s), s.clone());
            prop_assert!(index(&s, &l).unwrap().finite().is_some());
        }

        #[test]
        fn intersection_laws(r1 in small_rows(2), r2 in small_rows(2)) {
            let a = lat(2, &r1);
            let b = lat(2, &r2);
            let ab = intersect(&a, &b).unwrap();
            prop_assert_eq!(ab.clone(), intersect(&b, &a).unwrap());
            prop_assert!(ab.is_subset_of(&a) && ab.is_subset_of(&b));
            prop_assert_eq!(intersect(&a, &a).unwrap(), a.clone());
            // every small vector in both lies in the intersection
            for x in -6i64..=6 {
                for y in -6i64..=6 {
                    if a.contains_i64(&[x, y]) && b.contains_i64(&[x, y]) {
                        prop_assert!(ab.contains_i64(&[x, y]));
                    }
                }
            }
        }

        #[test]
        fn kernel_vectors_are_annihilated(rows in prop::collection::vec(prop::collection::vec(-5i64..=5, 3), 1..3)) {
            let k = kernel(3, &rows).unwrap();
            prop_assert_eq!(k.rank(), 3 - linalg::rank(&rows));
            for v in k.basis() {
                for r in &rows {
                    let dot: BigInt = r.iter().zip(v).map(|(a, b)| BigInt::from(*a) * b).sum();
                    prop_assert!(dot.is_zero());
                }
            }
            prop_assert!(is_saturated(&k));
        }

        #[test]
        fn smith_order_matches_index(rows in small_rows(2)) {
            let sub = lat(2, &rows);
            let full = Sublattice::full(2);
            let s = smith_invariants(&full, &sub).unwrap();
            match index(&full, &sub).unwrap() {
                Index::Finite(n) => {
                    prop_assert!(s.is_finite());
                    prop_assert_eq!(s.torsion_order(), n);
                }
                Index::Infinite => prop_assert!(s.free_rank > 0),
            }
            for w in s.invariant_factors.windows(2) {
                prop_assert!(w[1].is_multiple_of(&w[0]));
            }
        }
    }

    #[test]
    fn rational_coordinates_agree() {
        let l = lat(3, &[vec![2, 1, 0], vec![0, 3, 1], vec![1, 1, 1]]);
        let v = big(&[5, 9, 4]);
        let coords = l.coordinates(&v);
        let rows: Vec<Vec<BigRational>> = linalg::to_rational_rows(l.basis());
        let at: Vec<Vec<BigRational>> =
            (0..3).map(|j| rows.iter().map(|r| r[j].clone()).collect()).collect();
        let rhs: Vec<BigRational> = v.iter().map(|x| BigRational::from_integer(x.clone())).collect();
        let sol = linalg::solve(&at, &rhs).unwrap();
        let integral = sol.iter().all(|x| x.is_integer());
        assert_eq!(coords.is_some(), integral);
    }
}
