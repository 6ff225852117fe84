//! Weyl- and Frobenius-invariant quadratic forms, covers `(Q, n, q)`, the
//! lattice `Y_{Q,n}` and central indices of covered tori.

use std::fmt;

use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::lattice::{self, Index, Sublattice};
use crate::matrix::Matrix;
use crate::root_datum::{self, BasedRootDatum};

/// The bilinear form `B_Q` of an integer quadratic form `Q(y) = B_Q(y, y) / 2`,
/// stored as its Gram matrix.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeylInvariantForm {
    gram: Matrix,
}

impl WeylInvariantForm {
    /// Checks symmetry and even diagonal. Invariance depends on a root datum
    /// and is checked by [`WeylInvariantForm::check_invariant`].
    pub fn new(gram: Matrix) -> Result<Self> {
        if !gram.is_square() {
            return Err(Error::InvalidForm("Gram matrix is not square".into()));
        }
        let d = gram.nrows();
        for i in 0..d {
            if gram[(i, i)] % 2 != 0 {
                return Err(Error::InvalidForm(format!(
                    "diagonal entry {i} is odd, so Q would not be integer-valued"
                )));
            }
            for j in 0..i {
                if gram[(i, j)] != gram[(j, i)] {
                    return Err(Error::InvalidForm(format!("Gram matrix not symmetric at ({i},{j})")));
                }
            }
        }
        Ok(WeylInvariantForm { gram })
    }

    pub fn gram(&self) -> &Matrix {
        &self.gram
    }

    pub fn dim(&self) -> usize {
        self.gram.nrows()
    }

    pub fn bilinear(&self, y1: &[i64], y2: &[i64]) -> i64 {
        root_datum::dot(y1, &self.gram.apply(y2))
    }

    pub fn q_value(&self, y: &[i64]) -> i64 {
        self.bilinear(y, y) / 2
    }

    /// `g^T B g = B` for every simple reflection and for Frobenius.
    pub fn check_invariant(&self, rd: &BasedRootDatum) -> Result<()> {
        if self.dim() != rd.rank() {
            return Err(Error::DimensionMismatch { expected: rd.rank(), found: self.dim() });
        }
        let preserves = |g: &Matrix| &(&g.transpose() * &self.gram) * g == self.gram;
        for (i, s) in rd.simple_reflections().iter().enumerate() {
            if !preserves(s) {
                return Err(Error::InvalidForm(format!(
                    "form is not invariant under simple reflection {i}"
                )));
            }
        }
        if !preserves(rd.frobenius().matrix()) {
            return Err(Error::InvalidForm("form is not Frobenius-invariant".into()));
        }
        Ok(())
    }
}

/// A cover of degree `n` over a residue field of size `q`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoverSpec {
    datum: BasedRootDatum,
    form: WeylInvariantForm,
    n: u64,
    q: u64,
    p: u64,
}

/// Unique prime dividing `q`, if `q` is a prime power.
pub fn prime_of_prime_power(q: u64) -> Option<u64> {
    if q < 2 {
        return None;
    }
    let mut p = 2;
    while p * p <= q && q % p != 0 {
        p += 1;
    }
    if q % p != 0 {
        p = q;
    }
    let mut m = q;
    while m % p == 0 {
        m /= p;
    }
    (m == 1).then_some(p)
}

/// Validates `q` as a prime power and `n | q - 1`; returns the prime `p`.
pub fn check_degree(n: u64, q: u64) -> Result<u64> {
    let p = prime_of_prime_power(q).ok_or(Error::NotPrimePower(q))?;
    if n == 0 || (q - 1) % n != 0 {
        return Err(Error::DegreeDoesNotDivide { n, q_minus_one: q - 1 });
    }
    Ok(p)
}

impl CoverSpec {
    pub fn new(datum: BasedRootDatum, form: WeylInvariantForm, n: u64, q: u64) -> Result<Self> {
        form.check_invariant(&datum)?;
        let p = check_degree(n, q)?;
        Ok(CoverSpec { datum, form, n, q, p })
    }

    pub fn datum(&self) -> &BasedRootDatum {
        &self.datum
    }

    pub fn form(&self) -> &WeylInvariantForm {
        &self.form
    }

    pub fn n(&self) -> u64 {
        self.n
    }

    pub fn q(&self) -> u64 {
        self.q
    }

    /// Residue characteristic.
    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn rank(&self) -> usize {
        self.datum.rank()
    }

    pub fn frobenius_matrix(&self) -> &Matrix {
        self.datum.frobenius().matrix()
    }

    /// GL_r invariants, when the datum is split `GL_r` in standard coordinates.
    pub fn glr_invariants(&self) -> Option<GLrCoverInvariants> {
        let r = self.rank();
        let glr = root_datum::build_glr(r).ok()?;
        if self.datum != glr {
            return None;
        }
        let g = self.form.gram();
        let bold_p = g[(0, 0)] / 2;
        let bold_q = if r > 1 { g[(0, 1)] } else { 0 };
        (form_from_glr_invariants(r, bold_p, bold_q).ok()? == self.form)
            .then_some(GLrCoverInvariants { bold_p, bold_q })
    }
}

/// `𝐩 = Q(e_i)` and `𝐪 = B_Q(e_i, e_j)` for `i != j`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GLrCoverInvariants {
    pub bold_p: i64,
    pub bold_q: i64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CoverFamily {
    Determinantal,
    KazhdanPatterson,
    Savin,
    /// Any other value of `2𝐩 - 𝐪`.
    Other(i64),
}

impl fmt::Display for CoverFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CoverFamily::Determinantal => f.write_str("determinantal"),
            CoverFamily::KazhdanPatterson => f.write_str("kazhdan_patterson"),
            CoverFamily::Savin => f.write_str("savin"),
            CoverFamily::Other(v) => write!(f, "other({v})"),
        }
    }
}

pub fn form_from_glr_invariants(r: usize, bold_p: i64, bold_q: i64) -> Result<WeylInvariantForm> {
    if r == 0 {
        return Err(Error::InvalidRank("GL_r needs r >= 1".into()));
    }
    let mut gram = Matrix::zeros(r, r);
    for i in 0..r {
        for j in 0..r {
            gram[(i, j)] = if i == j { 2 * bold_p } else { bold_q };
        }
    }
    WeylInvariantForm::new(gram)
}

/// `Q(α^∨)` for each simple coroot, in simple order.
pub fn q_of_coroot(form: &WeylInvariantForm, rd: &BasedRootDatum) -> Vec<i64> {
    rd.simple_coroots().iter().map(|c| form.q_value(c)).collect()
}

/// `Q(e_0) = r𝐩 + C(r,2)𝐪`.
pub fn q_of_e0(r: usize, bold_p: i64, bold_q: i64) -> i64 {
    let r = r as i64;
    r * bold_p + r * (r - 1) / 2 * bold_q
}

pub fn classify_glr_family(bold_p: i64, bold_q: i64) -> CoverFamily {
    match 2 * bold_p - bold_q {
        0 => CoverFamily::Determinantal,
        -1 => CoverFamily::KazhdanPatterson,
        -2 => CoverFamily::Savin,
        v => CoverFamily::Other(v),
    }
}

/// `𝐦_{Q,r} = 2𝐩 + (r - 1)𝐪`.
pub fn m_qr(r: usize, bold_p: i64, bold_q: i64) -> i64 {
    2 * bold_p + (r as i64 - 1) * bold_q
}

/// `Y_{Q,n} = {y : B_Q(y, y') ∈ nZ for all y'}`.
pub fn y_qn(cover: &CoverSpec) -> Sublattice {
    lattice::congruence_kernel(cover.rank(), &cover.form.gram().to_rows(), &BigInt::from(cover.n))
        .expect("Gram rows have ambient length")
}

/// `Y^Fr`.
pub fn frobenius_fixed(cover: &CoverSpec) -> Sublattice {
    lattice::fixed_sublattice(cover.rank(), std::slice::from_ref(cover.frobenius_matrix()))
        .expect("Frobenius is square of ambient size")
}

/// Central index `#(Y^Fr / Y^Fr_{Q,n})` of the covered torus.
pub fn central_index(cover: &CoverSpec) -> BigInt {
    let fixed = frobenius_fixed(cover);
    let sub = lattice::intersect(&fixed, &y_qn(cover)).expect("same ambient rank");
    match lattice::index(&fixed, &sub).expect("intersection is contained in Y^Fr") {
        Index::Finite(n) => n,
        Index::Infinite => unreachable!("n Y^Fr is contained in Y^Fr_(Q,n)"),
    }
}

/// Split `GL_r` cover with invariants `(𝐩, 𝐪)`.
pub fn glr_cover(r: usize, bold_p: i64, bold_q: i64, n: u64, q: u64) -> Result<CoverSpec> {
    let rd = root_datum::build_glr(r)?;
    let form = form_from_glr_invariants(r, bold_p, bold_q)?;
    CoverSpec::new(rd, form, n, q)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::root_datum::{build_glr, build_slr, build_torus};
    use proptest::prelude::*;

    fn lat(d: usize, rows: &[Vec<i64>]) -> Sublattice {
        Sublattice::from_rows(d, rows).unwrap()
    }

    #[test]
    fn glr_forms() {
        let f = form_from_glr_invariants(2, 0, 1).unwrap();
        assert_eq!(f.gram().to_rows(), vec![vec![0, 1], vec![1, 0]]);
        assert_eq!(classify_glr_family(0, 1), CoverFamily::KazhdanPatterson);

        let f = form_from_glr_invariants(3, 1, 2).unwrap();
        assert_eq!(q_of_coroot(&f, &build_glr(3).unwrap()), vec![0, 0]);

        let f = form_from_glr_invariants(1, 1, 99).unwrap();
        assert_eq!(f.gram().to_rows(), vec![vec![2]]);
    }

    #[test]
    fn q_of_e0_values() {
        assert_eq!(q_of_e0(2, -1, -1), -3);
        assert_eq!(q_of_e0(4, 0, 0), 0);
        // Q(Σe_i) = Σ Q(e_i) + Σ_{i<j} B(e_i, e_j) = 3·1 + 3·2
        let f = form_from_glr_invariants(3, 1, 2).unwrap();
        assert_eq!(f.q_value(&[1, 1, 1]), 9);
        assert_eq!(q_of_e0(3, 1, 2), 9);
    }

    #[test]
    fn families() {
        assert_eq!(classify_glr_family(1, 2), CoverFamily::Determinantal);
        assert_eq!(classify_glr_family(-1, 0), CoverFamily::Savin);
        assert_eq!(classify_glr_family(0, 1), CoverFamily::KazhdanPatterson);
        assert_eq!(classify_glr_family(-1, -1), CoverFamily::KazhdanPatterson);
        assert_eq!(classify_glr_family(1, 1), CoverFamily::Other(1));
    }

    #[test]
    fn y_qn_examples() {
        let c = glr_cover(2, 0, 1, 1, 5).unwrap();
        assert!(y_qn(&c).is_full());

        // residues mod 4 against [[0,1],[1,0]]: need y_2 ≡ 0 and y_1 ≡ 0
        let c = glr_cover(2, 0, 1, 4, 5).unwrap();
        let brute: Vec<(i64, i64)> = (0..4)
            .flat_map(|a| (0..4).map(move |b| (a, b)))
            .filter(|&(a, b)| b % 4 == 0 && a % 4 == 0)
            .collect();
        assert_eq!(brute, vec![(0, 0)]);
        assert_eq!(y_qn(&c), lat(2, &[vec![4, 0], vec![0, 4]]));

        let c = glr_cover(1, 1, 0, 4, 5).unwrap();
        assert_eq!(y_qn(&c), lat(1, &[vec![2]]));
    }

    #[test]
    fn central_index_examples() {
        assert_eq!(central_index(&glr_cover(3, 1, 1, 1, 7).unwrap()), BigInt::from(1));
        assert_eq!(central_index(&glr_cover(1, 1, 0, 4, 5).unwrap()), BigInt::from(2));
        assert_eq!(central_index(&glr_cover(2, 0, 1, 4, 5).unwrap()), BigInt::from(16));
    }

    #[test]
    fn central_index_with_twisted_torus() {
        // Fr swaps coordinates: Y^Fr = Z(1,1); B = 2·I, n = 4: need 2k ≡ 0 mod 4
        let swap = Matrix::permutation(&[1, 0]);
        let rd = build_torus(2, Some(swap)).unwrap();
        let form = WeylInvariantForm::new(Matrix::from_rows(&[vec![2, 0], vec![0, 2]]).unwrap()).unwrap();
        let c = CoverSpec::new(rd, form, 4, 5).unwrap();
        assert_eq!(central_index(&c), BigInt::from(2));
    }

    #[test]
    fn m_qr_values() {
        assert_eq!(m_qr(1, 1, 17), 2);
        assert_eq!(m_qr(2, 0, 1), 1);
        assert_eq!(m_qr(3, 1, 1), 4);
        let f = form_from_glr_invariants(3, 1, 1).unwrap();
        assert_eq!(f.gram().apply(&[1, 1, 1]), vec![4, 4, 4]);
    }

    #[test]
    fn constructor_gates() {
        let rd = build_glr(2).unwrap();
        let f = form_from_glr_invariants(2, 0, 1).unwrap();
        assert_eq!(
            CoverSpec::new(rd.clone(), f.clone(), 3, 5),
            Err(Error::DegreeDoesNotDivide { n: 3, q_minus_one: 4 })
        );
        assert_eq!(CoverSpec::new(rd.clone(), f.clone(), 2, 6), Err(Error::NotPrimePower(6)));
        let skew = WeylInvariantForm::new(Matrix::from_rows(&[vec![2, 0], vec![0, 0]]).unwrap()).unwrap();
        assert!(matches!(CoverSpec::new(rd, skew, 2, 5), Err(Error::InvalidForm(_))));
        assert!(matches!(
            WeylInvariantForm::new(Matrix::from_rows(&[vec![1, 0], vec![0, 2]]).unwrap()),
            Err(Error::InvalidForm(_))
        ));
        let c = glr_cover(2, 0, 1, 4, 25).unwrap();
        assert_eq!(c.p(), 5);
    }

    #[test]
    fn glr_invariants_detected() {
        let c = glr_cover(3, -1, -1, 2, 5).unwrap();
        assert_eq!(c.glr_invariants(), Some(GLrCoverInvariants { bold_p: -1, bold_q: -1 }));
        let sl = build_slr(2).unwrap();
        let f = WeylInvariantForm::new(Matrix::from_rows(&[vec![2]]).unwrap()).unwrap();
        assert_eq!(CoverSpec::new(sl, f, 2, 5).unwrap().glr_invariants(), None);
    }

    #[test]
    fn prime_powers() {
        assert_eq!(prime_of_prime_power(2), Some(2));
        assert_eq!(prime_of_prime_power(27), Some(3));
        assert_eq!(prime_of_prime_power(13), Some(13));
        assert_eq!(prime_of_prime_power(12), None);
        assert_eq!(prime_of_prime_power(1), None);
    }

    proptest! {
        #[test]
        fn glr_forms_are_weyl_invariant(r in 1usize..=4, p in -3i64..=3, qq in -3i64..=3) {
            let rd = build_glr(r).unwrap();
            let f = form_from_glr_invariants(r, p, qq).unwrap();
            prop_assert!(f.check_invariant(&rd).is_ok());
            // bilinear identity
            let e = |i: usize| (0..r).map(|k| i64::from(k == i)).collect::<Vec<_>>();
            for i in 0..r {
                for j in 0..r {
                    let s: Vec<i64> = e(i).iter().zip(e(j)).map(|(a, b)| a + b).collect();
                    prop_assert_eq!(f.bilinear(&e(i), &e(j)), f.q_value(&s) - f.q_value(&e(i)) - f.q_value(&e(j)));
                }
                // m_qr = B(e_0, e_i)
                prop_assert_eq!(m_qr(r, p, qq), f.bilinear(&vec![1; r], &e(i)));
            }
            for c in q_of_coroot(&f, &rd) {
                prop_assert_eq!(c, 2 * p - qq);
            }
        }

        #[test]
        fn y_qn_monotone(r in 1usize..=3, p in -3i64..=3, qq in -3i64..=3) {
            // n | n' ⇒ Y_{Q,n'} ⊆ Y_{Q,n}; q = 13 so every n | 12 is admissible
            for (n, n2) in [(1u64, 2u64), (2, 4), (2, 6), (3, 6), (4, 12), (6, 12)] {
                let a = y_qn(&glr_cover(r, p, qq, n, 13).unwrap());
                let b = y_qn(&glr_cover(r, p, qq, n2, 13).unwrap());
                prop_assert!(b.is_subset_of(&a));
                let nz = lat(r, &(0..r).map(|i| (0..r).map(|k| if k == i { n2 as i64 } else { 0 }).collect()).collect::<Vec<_>>());
                prop_assert!(nz.is_subset_of(&b));
            }
        }

        #[test]
        fn central_index_matches_residue_count(
            r in 1usize..=3,
            p in -4i64..=4,
            qq in -4i64..=4,
            n in prop::sample::select(vec![1u64, 2, 3, 4, 6]),
        ) {
            prop_assume!(n.pow(r as u32) <= 256);
            // n Z^r ⊆ Y_{Q,n}, so the index is n^r over the number of
            // residues y mod n with B y ≡ 0 mod n
            let c = glr_cover(r, p, qq, n, 13).unwrap();
            let g = c.form().gram();
            let ni = n as i64;
            let total = ni.pow(r as u32);
            let kernel = (0..total)
                .filter(|&idx| {
                    let y: Vec<i64> = (0..r).map(|k| (idx / ni.pow(k as u32)) % ni).collect();
                    g.apply(&y).iter().all(|v| v.rem_euclid(ni) == 0)
                })
                .count() as i64;
            prop_assert_eq!(central_index(&c), BigInt::from(total / kernel));
        }

        #[test]
        fn family_depends_on_difference(p in -20i64..=20, qq in -20i64..=20, t in -5i64..=5) {
            prop_assert_eq!(classify_glr_family(p, qq), classify_glr_family(p + t, qq + 2 * t));
        }
    }
}
