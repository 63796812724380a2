//! Exact arithmetic: integer polynomials in τ, (t, τ) and q^{±1}, sparse
//! multivariate polynomials, Chebyshev generators, determinants.

mod antisym;
mod bi_poly;
mod cheb;
mod det;
mod laurent;
mod multi;
mod ring;
mod tau_poly;

pub use antisym::{antisymmetrize, signed_permutations};
pub use bi_poly::BiPoly;
pub use cheb::{cheb_u, cheb_u_ext, cheb_u_laurent};
pub use det::{bareiss_det, cofactor_det};
pub use laurent::LaurentScalar;
pub use multi::{Exponent, MultiPoly};
pub use ring::Ring;
pub use tau_poly::TauPoly;

use num_bigint::BigInt;


/// Binomial coefficient, zero outside 0 ≤ k ≤ n.
pub fn binomial(n: i64, k: i64) -> BigInt {
    if k < 0 || n < 0 || k > n {
        return BigInt::from(0);
    }
    let k = k.min(n - k);
    let mut acc = BigInt::from(1);
    for i in 0..k {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    acc
}

/// Exact quotient in any of the supported rings.
pub fn poly_exact_div<C: Ring>(num: &C, den: &C) -> crate::Result<C> {
    num.exact_div(den)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn binomials() {
        assert_eq!(binomial(5, 2), BigInt::from(10));
        assert_eq!(binomial(0, 0), BigInt::from(1));
        assert_eq!(binomial(3, 4), BigInt::from(0));
        assert_eq!(binomial(3, -1), BigInt::from(0));
    }

    #[test]
    fn exact_div_examples() {
        let num = TauPoly::from_i64s(&[-1, 0, 1]);
        let den = TauPoly::from_i64s(&[-1, 1]);
        assert_eq!(poly_exact_div(&num, &den).unwrap(), TauPoly::from_i64s(&[1, 1]));
        assert_eq!(poly_exact_div(&num, &TauPoly::one()).unwrap(), num);
    }
}
