//! Exact vectors in `(Q/Z)^d`, stored over a common reduced denominator.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::ToPrimitive;

use crate::error::{Error, Result};
use crate::matrix::Matrix;

/// `num[i] / den` with `0 <= num[i] < den` and `gcd(den, num...) = 1`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ModOneVector {
    den: i128,
    num: Vec<i128>,
}

fn overflow() -> Error {
    Error::OutOfRange("denominator too large for exact mod-1 arithmetic".into())
}

impl ModOneVector {
    pub fn zero(d: usize) -> Self {
        ModOneVector { den: 1, num: vec![0; d] }
    }

    /// Builds `num / den` and reduces; `den` must be positive.
    pub fn new(den: i128, num: Vec<i128>) -> Result<Self> {
        if den <= 0 {
            return Err(Error::OutOfRange(format!("denominator {den} must be positive")));
        }
        let mut v = ModOneVector { den, num: num.into_iter().map(|x| x.rem_euclid(den)).collect() };
        v.reduce();
        Ok(v)
    }

    pub fn from_fractions(fracs: &[(i64, i64)]) -> Result<Self> {
        let rats: Vec<BigRational> = fracs
            .iter()
            .map(|&(n, d)| {
                if d == 0 {
                    Err(Error::Parse("zero denominator".into()))
                } else {
                    Ok(BigRational::new(n.into(), d.into()))
                }
            })
            .collect::<Result<_>>()?;
        Self::from_rationals(&rats)
    }

    pub fn from_rationals(v: &[BigRational]) -> Result<Self> {
        let mut den = BigInt::from(1);
        for x in v {
            den = den.lcm(x.denom());
        }
        let num = v
            .iter()
            .map(|x| (x.numer() * (&den / x.denom())).to_i128().ok_or_else(overflow))
            .collect::<Result<_>>()?;
        Self::new(den.to_i128().ok_or_else(overflow)?, num)
    }

    fn reduce(&mut self) {
        let g = self.num.iter().fold(self.den, |g, &x| g.gcd(&x));
        if g > 1 {
            self.den /= g;
            for x in &mut self.num {
                *x /= g;
            }
        }
    }

    pub fn dim(&self) -> usize {
        self.num.len()
    }

    pub fn denominator(&self) -> i128 {
        self.den
    }

    pub fn numerators(&self) -> &[i128] {
        &self.num
    }

    pub fn is_zero(&self) -> bool {
        self.den == 1
    }

    pub fn to_rationals(&self) -> Vec<BigRational> {
        self.num.iter().map(|&x| BigRational::new(x.into(), self.den.into())).collect()
    }

    /// Numerators over a multiple `big` of the denominator.
    pub fn numerators_over(&self, big: i128) -> Option<Vec<i128>> {
        if big % self.den != 0 {
            return None;
        }
        let f = big / self.den;
        Some(self.num.iter().map(|&x| x * f).collect())
    }

    pub fn add(&self, other: &ModOneVector) -> Result<Self> {
        if self.dim() != other.dim() {
            return Err(Error::DimensionMismatch { expected: self.dim(), found: other.dim() });
        }
        let den = self.den.checked_mul(other.den / self.den.gcd(&other.den)).ok_or_else(overflow)?;
        let (fa, fb) = (den / self.den, den / other.den);
        let num = self.num.iter().zip(&other.num).map(|(a, b)| a * fa + b * fb).collect();
        Self::new(den, num)
    }

    pub fn scale(&self, k: i128) -> Result<Self> {
        let num = self
            .num
            .iter()
            .map(|&x| x.checked_mul(k.rem_euclid(self.den)).ok_or_else(overflow))
            .collect::<Result<_>>()?;
        Self::new(self.den, num)
    }

    /// `m · self`.
    pub fn act(&self, m: &Matrix) -> Self {
        debug_assert_eq!(m.ncols(), self.dim());
        let num = (0..m.nrows())
            .map(|i| {
                m.row(i)
                    .iter()
                    .zip(&self.num)
                    .fold(0i128, |acc, (&a, &x)| (acc + i128::from(a) * x).rem_euclid(self.den))
            })
            .collect();
        let mut v = ModOneVector { den: self.den, num };
        v.reduce();
        v
    }
}

impl fmt::Display for ModOneVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.to_rationals().iter().map(ToString::to_string).collect();
        write!(f, "({})", parts.join(", "))
    }
}
