use std::sync::{OnceLock, RwLock};

use super::laurent::LaurentScalar;
use super::tau_poly::TauPoly;
use crate::error::{domain, Result};

fn table() -> &'static RwLock<Vec<TauPoly>> {
    static TABLE: OnceLock<RwLock<Vec<TauPoly>>> = OnceLock::new();
    TABLE.get_or_init(|| RwLock::new(vec![TauPoly::zero(), TauPoly::one()]))
}

/// U_k from U_{k+1} = −τU_k − U_{k−1}, U_0 = 1, U_{−1} = 0.
pub fn cheb_u(k: i64) -> Result<TauPoly> {
    if k < -1 {
        return domain(format!("U_{k} is undefined below index -1"));
    }
    let idx = (k + 1) as usize;
    if let Some(p) = table().read().unwrap().get(idx) {
        return Ok(p.clone());
    }
    let mut t = table().write().unwrap();
    let minus_tau = -&TauPoly::tau();
    while t.len() <= idx {
        let l = t.len();
        let next = &(&minus_tau * &t[l - 1]) - &t[l - 2];
        t.push(next);
    }
    Ok(t[idx].clone())
}

/// U_k on all integers via U_{−k−2} = −U_k, consistent with
/// U_k = (q^{k+1} − q^{−k−1})/(q − q^{−1}).
pub fn cheb_u_ext(k: i64) -> TauPoly {
    if k >= -1 {
        cheb_u(k).expect("index in range")
    } else {
        -&cheb_u(-k - 2).expect("index in range")
    }
}

/// U_k as a Laurent polynomial in q: q^k + q^{k−2} + … + q^{−k}, extended
/// antisymmetrically to negative k.
pub fn cheb_u_laurent(k: i64) -> LaurentScalar {
    if k == -1 {
        return LaurentScalar::zero();
    }
    if k < -1 {
        return -&cheb_u_laurent(-k - 2);
    }
    let mut coeffs = vec![num_bigint::BigInt::from(0); (2 * k + 1) as usize];
    for j in 0..=k {
        coeffs[(2 * j) as usize] = 1.into();
    }
    LaurentScalar::new(-k, coeffs)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    #[test]
    fn base_values() {
        assert!(cheb_u(-1).unwrap().is_zero());
        assert_eq!(cheb_u(0).unwrap(), TauPoly::one());
        assert_eq!(cheb_u(1).unwrap(), TauPoly::from_i64s(&[0, -1]));
        assert_eq!(cheb_u(2).unwrap(), TauPoly::from_i64s(&[-1, 0, 1]));
        assert!(cheb_u(-2).is_err());
    }

    #[test]
    fn degree_and_leading_sign() {
        for k in 0..20 {
            let u = cheb_u(k).unwrap();
            assert_eq!(u.degree(), Some(k as usize));
            let expect = if k % 2 == 0 { 1 } else { -1 };
            assert_eq!(u.leading_coeff().unwrap(), &BigInt::from(expect));
        }
    }

    #[test]
    fn extension() {
        assert!(cheb_u_ext(-1).is_zero());
        assert_eq!(cheb_u_ext(-2), -&TauPoly::one());
        assert_eq!(cheb_u_ext(-4), -&cheb_u(2).unwrap());
        for k in -6..10 {
            assert_eq!(cheb_u_ext(k).to_laurent(), cheb_u_laurent(k), "k={k}");
        }
    }
}
