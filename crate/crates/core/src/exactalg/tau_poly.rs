use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::laurent::LaurentScalar;
use super::ring::{fmt_univariate, forward_ring_ops};
use crate::error::{Error, Result};

/// Dense integer polynomial in the loop weight τ. Coefficients are stored in
/// increasing degree with no trailing zeros, so equality is structural.
#[derive(Clone, PartialEq, Eq, Hash, Default, Debug)]
pub struct TauPoly {
    coeffs: Vec<BigInt>,
}

impl TauPoly {
    pub fn new(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        TauPoly { coeffs }
    }

    pub fn from_i64s(cs: &[i64]) -> Self {
        Self::new(cs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn zero() -> Self {
        TauPoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(BigInt::one())
    }

    pub fn from_i64(v: i64) -> Self {
        Self::constant(BigInt::from(v))
    }

    pub fn tau() -> Self {
        Self::monomial(BigInt::one(), 1)
    }

    pub fn constant(c: BigInt) -> Self {
        Self::new(vec![c])
    }

    pub fn monomial(c: BigInt, k: usize) -> Self {
        let mut v = vec![BigInt::zero(); k + 1];
        v[k] = c;
        Self::new(v)
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> BigInt {
        self.coeffs.get(k).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Lowest power with a nonzero coefficient.
    pub fn valuation(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    pub fn leading_coeff(&self) -> Option<&BigInt> {
        self.coeffs.last()
    }

    pub fn lowest_coeff(&self) -> Option<&BigInt> {
        self.valuation().map(|v| &self.coeffs[v])
    }

    pub fn is_nonnegative(&self) -> bool {
        self.coeffs.iter().all(|c| !c.is_negative())
    }

    pub fn eval(&self, x: &BigInt) -> BigInt {
        self.coeffs.iter().rev().fold(BigInt::zero(), |acc, c| acc * x + c)
    }

    pub fn eval_rational(&self, x: &BigRational) -> BigRational {
        self.coeffs
            .iter()
            .rev()
            .fold(BigRational::zero(), |acc, c| acc * x + BigRational::from_integer(c.clone()))
    }

    /// Multiply by τ^k.
    pub fn shift(&self, k: usize) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut v = vec![BigInt::zero(); k];
        v.extend(self.coeffs.iter().cloned());
        TauPoly { coeffs: v }
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        Self::new(self.coeffs.iter().map(|x| x * c).collect())
    }

    pub fn pow(&self, e: u32) -> Self {
        super::Ring::pow(self, e)
    }

    /// Substitute τ ↦ `p`.
    pub fn compose(&self, p: &TauPoly) -> Self {
        self.coeffs
            .iter()
            .rev()
            .fold(Self::zero(), |acc, c| &(&acc * p) + &Self::constant(c.clone()))
    }

    /// Polynomial with the coefficient order reversed relative to degree `d`:
    /// τ^d · p(1/τ). Fails if `d` is below the degree.
    pub fn reversed(&self, d: usize) -> Result<Self> {
        match self.degree() {
            Some(deg) if deg > d => Err(Error::Domain(format!("degree {deg} exceeds {d}"))),
            None => Ok(Self::zero()),
            Some(_) => {
                let mut v = self.coeffs.clone();
                v.resize(d + 1, BigInt::zero());
                v.reverse();
                Ok(Self::new(v))
            }
        }
    }

    /// Long division with remainder. Fails if a leading coefficient does not
    /// divide exactly in ℤ.
    pub fn div_rem(&self, den: &TauPoly) -> Result<(TauPoly, TauPoly)> {
        let dd = den
            .degree()
            .ok_or_else(|| Error::Domain("division by zero polynomial".into()))?;
        let lc = den.leading_coeff().unwrap().clone();
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return Ok((Self::zero(), self.clone()));
        }
        let mut quo = vec![BigInt::zero(); rem.len() - dd];
        for k in (dd..rem.len()).rev() {
            if rem[k].is_zero() {
                continue;
            }
            let (q, r) = rem[k].div_rem(&lc);
            if !r.is_zero() {
                return Err(Error::InexactDivision { remainder: Self::new(rem).to_string() });
            }
            let shift = k - dd;
            for (j, c) in den.coeffs.iter().enumerate() {
                rem[shift + j] -= &q * c;
            }
            quo[shift] = q;
        }
        Ok((Self::new(quo), Self::new(rem)))
    }

    pub fn exact_div(&self, den: &TauPoly) -> Result<TauPoly> {
        let (q, r) = self.div_rem(den)?;
        if r.is_zero() {
            Ok(q)
        } else {
            Err(Error::InexactDivision { remainder: r.to_string() })
        }
    }

    /// Image under τ = −q − q⁻¹.
    pub fn to_laurent(&self) -> LaurentScalar {
        let tau = LaurentScalar::tau();
        self.coeffs.iter().rev().fold(LaurentScalar::zero(), |acc, c| {
            &(&acc * &tau) + &LaurentScalar::constant(c.clone())
        })
    }
}

impl<'a> std::ops::Add<&'a TauPoly> for &'a TauPoly {
    type Output = TauPoly;
    fn add(self, rhs: &TauPoly) -> TauPoly {
        let (long, short) = if self.coeffs.len() >= rhs.coeffs.len() { (self, rhs) } else { (rhs, self) };
        let mut v = long.coeffs.clone();
        for (a, b) in v.iter_mut().zip(short.coeffs.iter()) {
            *a += b;
        }
        TauPoly::new(v)
    }
}

impl<'a> std::ops::Sub<&'a TauPoly> for &'a TauPoly {
    type Output = TauPoly;
    fn sub(self, rhs: &TauPoly) -> TauPoly {
        let mut v = self.coeffs.clone();
        if v.len() < rhs.coeffs.len() {
            v.resize(rhs.coeffs.len(), BigInt::zero());
        }
        for (a, b) in v.iter_mut().zip(rhs.coeffs.iter()) {
            *a -= b;
        }
        TauPoly::new(v)
    }
}

impl<'a> std::ops::Mul<&'a TauPoly> for &'a TauPoly {
    type Output = TauPoly;
    fn mul(self, rhs: &TauPoly) -> TauPoly {
        if self.is_zero() || rhs.is_zero() {
            return TauPoly::zero();
        }
        let mut v = vec![BigInt::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                v[i + j] += a * b;
            }
        }
        TauPoly::new(v)
    }
}

impl std::ops::Neg for &TauPoly {
    type Output = TauPoly;
    fn neg(self) -> TauPoly {
        TauPoly { coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }
}

forward_ring_ops!(TauPoly);

impl From<i64> for TauPoly {
    fn from(v: i64) -> Self {
        Self::from_i64(v)
    }
}

impl From<BigInt> for TauPoly {
    fn from(v: BigInt) -> Self {
        Self::constant(v)
    }
}

impl fmt::Display for TauPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt_univariate(f, &self.coeffs, 0, "τ")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(cs: &[i64]) -> TauPoly {
        TauPoly::from_i64s(cs)
    }

    #[test]
    fn trims_trailing_zeros() {
        assert_eq!(p(&[1, 2, 0, 0]), p(&[1, 2]));
        assert!(p(&[0, 0]).is_zero());
        assert_eq!(p(&[0, 0]).degree(), None);
    }

    #[test]
    fn arithmetic() {
        let a = p(&[1, 1]);
        let b = p(&[-1, 1]);
        assert_eq!(&a * &b, p(&[-1, 0, 1]));
        assert_eq!(&a + &b, p(&[0, 2]));
        assert_eq!(&a - &a, TauPoly::zero());
        assert_eq!(a.pow(3), p(&[1, 3, 3, 1]));
    }

    #[test]
    fn division() {
        let num = p(&[-1, 0, 0, 1]);
        let den = p(&[-1, 1]);
        assert_eq!(num.exact_div(&den).unwrap(), p(&[1, 1, 1]));
        assert!(matches!(p(&[1, 0, 1]).exact_div(&den), Err(Error::InexactDivision { .. })));
        assert!(matches!(p(&[1, 1]).exact_div(&p(&[1, 2])), Err(Error::InexactDivision { .. })));
    }

    #[test]
    fn display() {
        assert_eq!(p(&[1, -1, 0, 2]).to_string(), "1 - τ + 2τ^3");
        assert_eq!(TauPoly::zero().to_string(), "0");
    }

    #[test]
    fn valuation_and_reverse() {
        let a = p(&[0, 0, 3, 1]);
        assert_eq!(a.valuation(), Some(2));
        assert_eq!(a.reversed(4).unwrap(), p(&[0, 1, 3]));
        assert!(a.reversed(2).is_err());
    }

    #[test]
    fn laurent_image() {
        let t = TauPoly::tau();
        let l = t.to_laurent();
        assert_eq!(l, -&(&LaurentScalar::q() + &LaurentScalar::q_pow(-1)));
    }
}
