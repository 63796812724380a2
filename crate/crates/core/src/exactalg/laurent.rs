use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::ring::{fmt_univariate, forward_ring_ops};
use crate::error::{Error, Result};

/// Integer Laurent polynomial in q, stored as q^offset · Σ c_k q^k with
/// nonzero first and last coefficient. The zero value has offset 0.
#[derive(Clone, PartialEq, Eq, Hash, Default, Debug)]
pub struct LaurentScalar {
    offset: i64,
    coeffs: Vec<BigInt>,
}

impl LaurentScalar {
    pub fn new(offset: i64, mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        let lead = coeffs.iter().position(|c| !c.is_zero()).unwrap_or(coeffs.len());
        if lead == coeffs.len() {
            return Self::zero();
        }
        coeffs.drain(..lead);
        LaurentScalar { offset: offset + lead as i64, coeffs }
    }

    pub fn zero() -> Self {
        LaurentScalar { offset: 0, coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(BigInt::one())
    }

    pub fn from_i64(v: i64) -> Self {
        Self::constant(BigInt::from(v))
    }

    pub fn constant(c: BigInt) -> Self {
        Self::new(0, vec![c])
    }

    pub fn q() -> Self {
        Self::q_pow(1)
    }

    pub fn q_pow(k: i64) -> Self {
        Self::new(k, vec![BigInt::one()])
    }

    /// τ = −q − q⁻¹.
    pub fn tau() -> Self {
        Self::new(-1, vec![BigInt::from(-1), BigInt::zero(), BigInt::from(-1)])
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn min_exp(&self) -> Option<i64> {
        (!self.is_zero()).then_some(self.offset)
    }

    pub fn max_exp(&self) -> Option<i64> {
        (!self.is_zero()).then(|| self.offset + self.coeffs.len() as i64 - 1)
    }

    pub fn coeff(&self, e: i64) -> BigInt {
        let k = e - self.offset;
        if k < 0 {
            return BigInt::zero();
        }
        self.coeffs.get(k as usize).cloned().unwrap_or_default()
    }

    /// (exponent, coefficient) pairs with nonzero coefficient.
    pub fn terms(&self) -> impl Iterator<Item = (i64, &BigInt)> {
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(move |(k, c)| (self.offset + k as i64, c))
    }

    pub fn eval_rational(&self, q: &BigRational) -> BigRational {
        let mut acc = BigRational::zero();
        for (e, c) in self.terms() {
            acc += BigRational::from_integer(c.clone()) * pow_rat(q, e);
        }
        acc
    }

    pub fn pow(&self, e: u32) -> Self {
        super::Ring::pow(self, e)
    }

    /// Substitute q ↦ q⁻¹.
    pub fn bar(&self) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut v = self.coeffs.clone();
        v.reverse();
        Self::new(-self.max_exp().unwrap(), v)
    }

    pub fn exact_div(&self, den: &LaurentScalar) -> Result<LaurentScalar> {
        if den.is_zero() {
            return Err(Error::Domain("division by zero".into()));
        }
        if self.is_zero() {
            return Ok(Self::zero());
        }
        let dd = den.coeffs.len() - 1;
        let lc = den.coeffs[dd].clone();
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return Err(Error::InexactDivision { remainder: self.to_string() });
        }
        let mut quo = vec![BigInt::zero(); rem.len() - dd];
        for k in (dd..rem.len()).rev() {
            if rem[k].is_zero() {
                continue;
            }
            let (q, r) = rem[k].div_rem(&lc);
            if !r.is_zero() {
                return Err(Error::InexactDivision { remainder: Self::new(self.offset, rem).to_string() });
            }
            let shift = k - dd;
            for (j, c) in den.coeffs.iter().enumerate() {
                rem[shift + j] -= &q * c;
            }
            quo[shift] = q;
        }
        if rem.iter().any(|c| !c.is_zero()) {
            return Err(Error::InexactDivision { remainder: Self::new(self.offset, rem).to_string() });
        }
        Ok(Self::new(self.offset - den.offset, quo))
    }
}

fn pow_rat(q: &BigRational, e: i64) -> BigRational {
    let base = if e < 0 { q.recip() } else { q.clone() };
    let mut acc = BigRational::one();
    for _ in 0..e.unsigned_abs() {
        acc *= &base;
    }
    acc
}

impl<'a> std::ops::Add<&'a LaurentScalar> for &'a LaurentScalar {
    type Output = LaurentScalar;
    fn add(self, rhs: &LaurentScalar) -> LaurentScalar {
        if self.is_zero() {
            return rhs.clone();
        }
        if rhs.is_zero() {
            return self.clone();
        }
        let lo = self.offset.min(rhs.offset);
        let hi = self.max_exp().unwrap().max(rhs.max_exp().unwrap());
        let mut v = vec![BigInt::zero(); (hi - lo + 1) as usize];
        for (e, c) in self.terms().chain(rhs.terms()) {
            v[(e - lo) as usize] += c;
        }
        LaurentScalar::new(lo, v)
    }
}

impl<'a> std::ops::Sub<&'a LaurentScalar> for &'a LaurentScalar {
    type Output = LaurentScalar;
    fn sub(self, rhs: &LaurentScalar) -> LaurentScalar {
        self + &(-rhs)
    }
}

impl<'a> std::ops::Mul<&'a LaurentScalar> for &'a LaurentScalar {
    type Output = LaurentScalar;
    fn mul(self, rhs: &LaurentScalar) -> LaurentScalar {
        if self.is_zero() || rhs.is_zero() {
            return LaurentScalar::zero();
        }
        let mut v = vec![BigInt::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in rhs.coeffs.iter().enumerate() {
                v[i + j] += a * b;
            }
        }
        LaurentScalar::new(self.offset + rhs.offset, v)
    }
}

impl std::ops::Neg for &LaurentScalar {
    type Output = LaurentScalar;
    fn neg(self) -> LaurentScalar {
        LaurentScalar { offset: self.offset, coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }
}

forward_ring_ops!(LaurentScalar);

impl From<i64> for LaurentScalar {
    fn from(v: i64) -> Self {
        Self::from_i64(v)
    }
}

impl fmt::Display for LaurentScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt_univariate(f, &self.coeffs, self.offset, "q")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn normalizes() {
        let a = LaurentScalar::new(-3, vec![0.into(), 0.into(), 1.into(), 0.into()]);
        assert_eq!(a, LaurentScalar::q_pow(-1));
        assert_eq!(LaurentScalar::new(5, vec![0.into()]), LaurentScalar::zero());
    }

    #[test]
    fn product_and_division() {
        let a = &LaurentScalar::q() - &LaurentScalar::q_pow(-1);
        let b = &LaurentScalar::q() + &LaurentScalar::q_pow(-1);
        let prod = &a * &b;
        assert_eq!(prod, &LaurentScalar::q_pow(2) - &LaurentScalar::q_pow(-2));
        assert_eq!(prod.exact_div(&a).unwrap(), b);
        assert!(LaurentScalar::q().exact_div(&a).is_err());
    }

    #[test]
    fn tau_squared() {
        let t = LaurentScalar::tau();
        let t2 = &t * &t;
        assert_eq!(t2.to_string(), "q^-2 + 2 + q^2");
        assert_eq!(t.bar(), t);
    }

    #[test]
    fn evaluation() {
        let two = BigRational::from_integer(2.into());
        let t = LaurentScalar::tau();
        assert_eq!(t.eval_rational(&two), BigRational::new((-5).into(), 2.into()));
    }
}
