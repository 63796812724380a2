use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::ring::forward_ring_ops;
use super::tau_poly::TauPoly;
use crate::error::{Error, Result};

/// Integer polynomial in (t, τ), stored as τ-polynomials indexed by the power
/// of t.
#[derive(Clone, PartialEq, Eq, Hash, Default, Debug)]
pub struct BiPoly {
    by_t: Vec<TauPoly>,
}

impl BiPoly {
    pub fn new(mut by_t: Vec<TauPoly>) -> Self {
        while by_t.last().is_some_and(|c| c.is_zero()) {
            by_t.pop();
        }
        BiPoly { by_t }
    }

    pub fn zero() -> Self {
        BiPoly { by_t: Vec::new() }
    }

    pub fn one() -> Self {
        Self::from_tau(TauPoly::one())
    }

    pub fn from_i64(v: i64) -> Self {
        Self::from_tau(TauPoly::from_i64(v))
    }

    pub fn from_tau(p: TauPoly) -> Self {
        Self::new(vec![p])
    }

    pub fn t() -> Self {
        Self::new(vec![TauPoly::zero(), TauPoly::one()])
    }

    pub fn tau() -> Self {
        Self::from_tau(TauPoly::tau())
    }

    /// `c · t^i τ^j`.
    pub fn monomial(c: BigInt, i: usize, j: usize) -> Self {
        let mut v = vec![TauPoly::zero(); i + 1];
        v[i] = TauPoly::monomial(c, j);
        Self::new(v)
    }

    /// Row `i` holds the τ-coefficients of t^i.
    pub fn from_grid(grid: Vec<Vec<BigInt>>) -> Self {
        Self::new(grid.into_iter().map(TauPoly::new).collect())
    }

    /// Rectangular coefficient grid, rows indexed by the t power.
    pub fn to_grid(&self) -> Vec<Vec<BigInt>> {
        let width = self.by_t.iter().map(|p| p.coeffs().len()).max().unwrap_or(0);
        self.by_t
            .iter()
            .map(|p| {
                let mut row = p.coeffs().to_vec();
                row.resize(width, BigInt::zero());
                row
            })
            .collect()
    }

    pub fn is_zero(&self) -> bool {
        self.by_t.is_empty()
    }

    pub fn t_degree(&self) -> Option<usize> {
        self.by_t.len().checked_sub(1)
    }

    pub fn tau_degree(&self) -> Option<usize> {
        self.by_t.iter().filter_map(|p| p.degree()).max()
    }

    pub fn coeff_t(&self, i: usize) -> TauPoly {
        self.by_t.get(i).cloned().unwrap_or_default()
    }

    pub fn coeff(&self, i: usize, j: usize) -> BigInt {
        self.by_t.get(i).map(|p| p.coeff(j)).unwrap_or_default()
    }

    pub fn t_coeffs(&self) -> &[TauPoly] {
        &self.by_t
    }

    pub fn is_nonnegative(&self) -> bool {
        self.by_t.iter().all(TauPoly::is_nonnegative)
    }

    pub fn scale_tau(&self, p: &TauPoly) -> Self {
        Self::new(self.by_t.iter().map(|c| c * p).collect())
    }

    /// Multiply by t^k.
    pub fn shift_t(&self, k: usize) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut v = vec![TauPoly::zero(); k];
        v.extend(self.by_t.iter().cloned());
        Self::new(v)
    }

    /// Substitute t ↦ `x`.
    pub fn eval_t(&self, x: &TauPoly) -> TauPoly {
        self.by_t.iter().rev().fold(TauPoly::zero(), |acc, c| &(&acc * x) + c)
    }

    /// Value at t = τ⁻¹, which must come out polynomial in τ.
    pub fn eval_t_inverse_tau(&self) -> Result<TauPoly> {
        let d = match self.t_degree() {
            None => return Ok(TauPoly::zero()),
            Some(d) => d,
        };
        let mut acc = TauPoly::zero();
        for (i, c) in self.by_t.iter().enumerate() {
            acc += &c.shift(d - i);
        }
        acc.exact_div(&TauPoly::tau().pow(d as u32))
    }

    /// t^n · p(1/t). Fails when the t-degree exceeds `n`.
    pub fn complement_t(&self, n: usize) -> Result<Self> {
        match self.t_degree() {
            None => Ok(Self::zero()),
            Some(d) if d > n => Err(Error::Domain(format!("t-degree {d} exceeds {n}"))),
            Some(_) => {
                let mut v = self.by_t.clone();
                v.resize(n + 1, TauPoly::zero());
                v.reverse();
                Ok(Self::new(v))
            }
        }
    }

    pub fn exact_div(&self, den: &BiPoly) -> Result<BiPoly> {
        let dd = den
            .t_degree()
            .ok_or_else(|| Error::Domain("division by zero polynomial".into()))?;
        let lc = den.by_t[dd].clone();
        let mut rem = self.by_t.clone();
        if rem.len() <= dd {
            return if self.is_zero() {
                Ok(Self::zero())
            } else {
                Err(Error::InexactDivision { remainder: self.to_string() })
            };
        }
        let mut quo = vec![TauPoly::zero(); rem.len() - dd];
        for k in (dd..rem.len()).rev() {
            if rem[k].is_zero() {
                continue;
            }
            let q = rem[k].exact_div(&lc)?;
            let shift = k - dd;
            for (j, c) in den.by_t.iter().enumerate() {
                rem[shift + j] -= &(&q * c);
            }
            quo[shift] = q;
        }
        if rem.iter().any(|c| !c.is_zero()) {
            return Err(Error::InexactDivision { remainder: Self::new(rem).to_string() });
        }
        Ok(Self::new(quo))
    }
}

impl<'a> std::ops::Add<&'a BiPoly> for &'a BiPoly {
    type Output = BiPoly;
    fn add(self, rhs: &BiPoly) -> BiPoly {
        let n = self.by_t.len().max(rhs.by_t.len());
        BiPoly::new((0..n).map(|i| &self.coeff_t(i) + &rhs.coeff_t(i)).collect())
    }
}

impl<'a> std::ops::Sub<&'a BiPoly> for &'a BiPoly {
    type Output = BiPoly;
    fn sub(self, rhs: &BiPoly) -> BiPoly {
        let n = self.by_t.len().max(rhs.by_t.len());
        BiPoly::new((0..n).map(|i| &self.coeff_t(i) - &rhs.coeff_t(i)).collect())
    }
}

impl<'a> std::ops::Mul<&'a BiPoly> for &'a BiPoly {
    type Output = BiPoly;
    fn mul(self, rhs: &BiPoly) -> BiPoly {
        if self.is_zero() || rhs.is_zero() {
            return BiPoly::zero();
        }
        let mut v = vec![TauPoly::zero(); self.by_t.len() + rhs.by_t.len() - 1];
        for (i, a) in self.by_t.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.by_t.iter().enumerate() {
                v[i + j] += &(a * b);
            }
        }
        BiPoly::new(v)
    }
}

impl std::ops::Neg for &BiPoly {
    type Output = BiPoly;
    fn neg(self) -> BiPoly {
        BiPoly { by_t: self.by_t.iter().map(|c| -c).collect() }
    }
}

forward_ring_ops!(BiPoly);

impl From<TauPoly> for BiPoly {
    fn from(p: TauPoly) -> Self {
        Self::from_tau(p)
    }
}

impl fmt::Display for BiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, p) in self.by_t.iter().enumerate() {
            for (j, c) in p.coeffs().iter().enumerate() {
                if c.is_zero() {
                    continue;
                }
                let neg = c.is_negative();
                let mag = c.abs();
                if first {
                    if neg {
                        write!(f, "-")?;
                    }
                } else {
                    write!(f, " {} ", if neg { "-" } else { "+" })?;
                }
                first = false;
                let mut vars = String::new();
                match i {
                    0 => {}
                    1 => vars.push('t'),
                    _ => vars.push_str(&format!("t^{i}")),
                }
                match j {
                    0 => {}
                    1 => vars.push('τ'),
                    _ => vars.push_str(&format!("τ^{j}")),
                }
                if vars.is_empty() {
                    write!(f, "{mag}")?;
                } else if mag.is_one() {
                    write!(f, "{vars}")?;
                } else {
                    write!(f, "{mag}{vars}")?;
                }
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn arithmetic_and_display() {
        let a = &BiPoly::t() + &BiPoly::tau();
        let sq = &a * &a;
        assert_eq!(sq.to_string(), "τ^2 + 2tτ + t^2");
        assert_eq!(sq.exact_div(&a).unwrap(), a);
    }

    #[test]
    fn specializations() {
        let a = &(&BiPoly::t() * &BiPoly::tau()) + &BiPoly::one();
        assert_eq!(a.eval_t(&TauPoly::one()), TauPoly::from_i64s(&[1, 1]));
        assert_eq!(a.eval_t_inverse_tau().unwrap(), TauPoly::from_i64(2));
        let c = a.complement_t(2).unwrap();
        assert_eq!(c, &BiPoly::t().shift_t(1) + &BiPoly::t().scale_tau(&TauPoly::tau()));
    }

    #[test]
    fn grid_roundtrip() {
        let a = &BiPoly::monomial(3.into(), 2, 1) - &BiPoly::from_i64(4);
        assert_eq!(BiPoly::from_grid(a.to_grid()), a);
    }
}
