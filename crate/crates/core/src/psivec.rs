//! The homogeneous ground-state vector Ψ_π(τ) assembled from constant terms
//! through the inverse change of basis.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use rayon::prelude::*;

use crate::basischange::{build_matrix, c_entry_unchecked, BasisMatrix};
use crate::ctengine::{k_batch, nilp_det, tau_limits_odd, Parity};
use crate::error::{domain, Result};
use crate::exactalg::{bareiss_det, binomial, TauPoly};
use crate::linkpat::{enumerate, LinkPattern};
use crate::report::Report;
use crate::sumrules::gen_direct;

pub const NORMALIZATION: &str = "constant-term normalization: the rainbow component of size 2n is tau^(n(n-1)/2)";

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PsiVector {
    pub size: usize,
    pub components: Vec<(LinkPattern, TauPoly)>,
    pub normalization: String,
}

impl PsiVector {
    pub fn half_size(&self) -> usize {
        self.size / 2
    }

    pub fn parity(&self) -> Parity {
        if self.size.is_multiple_of(2) {
            Parity::Even
        } else {
            Parity::Odd
        }
    }

    pub fn get(&self, pi: &LinkPattern) -> Option<&TauPoly> {
        self.components.iter().find(|(p, _)| p == pi).map(|(_, v)| v)
    }

    pub fn sum(&self) -> TauPoly {
        self.components.iter().fold(TauPoly::zero(), |acc, (_, v)| &acc + v)
    }

    pub fn len(&self) -> usize {
        self.components.len()
    }

    pub fn is_empty(&self) -> bool {
        self.components.is_empty()
    }
}

fn closings_i64(p: &LinkPattern) -> Vec<i64> {
    p.closings().into_iter().map(|x| x as i64).collect()
}

/// Constant terms K_a indexed like `enumerate(2n)`, with a the openings of
/// each pattern.
pub fn k_vector_even(n: usize) -> Vec<TauPoly> {
    let bs: Vec<Vec<i64>> =
        enumerate(2 * n).iter().map(|p| p.openings().into_iter().map(|x| x as i64).collect()).collect();
    k_batch(&bs, Parity::Even)
}

/// Even size 2n. The constant terms K_a, indexed by the openings a of β,
/// are the arch-opening components of the mirrored vector, so
/// Ψ_{ρπ} = (C⁻¹ K)_π with ρ the left-right mirror.
pub fn assemble_even(c: &BasisMatrix, k: &[TauPoly]) -> Result<PsiVector> {
    if k.len() != c.dim() {
        return domain(format!("constant-term vector has length {}, expected {}", k.len(), c.dim()));
    }
    let y = c.invert()?.apply(k);
    let mirrored: BTreeMap<LinkPattern, TauPoly> = c.index.iter().map(LinkPattern::mirror).zip(y).collect();
    let components = c.index.iter().map(|p| (p.clone(), mirrored[p].clone())).collect();
    Ok(PsiVector { size: 2 * c.n, components, normalization: NORMALIZATION.into() })
}

pub fn psi_even(n: usize) -> Result<PsiVector> {
    if n == 0 {
        return domain("half-size must be positive");
    }
    assemble_even(&build_matrix(n)?, &k_vector_even(n))
}

/// Odd size 2n+1: each pattern is embedded into size 2n+2 by joining its
/// unmatched point to a new last point, and the even change of basis is
/// applied to the mirror images of the embedded patterns, so that rows are
/// indexed by the closings of the embedded pattern.
pub fn psi_odd(n: usize) -> Result<PsiVector> {
    if n == 0 {
        return domain("n must be positive");
    }
    let pats = enumerate(2 * n + 1);
    let emb: Vec<LinkPattern> = pats.iter().map(|p| p.embed_odd().map(|e| e.mirror())).collect::<Result<_>>()?;
    let entries: Vec<Vec<TauPoly>> = emb
        .par_iter()
        .map(|alpha| {
            let a = alpha.openings();
            emb.iter().map(|pi| c_entry_unchecked(&a, pi)).collect()
        })
        .collect();
    let c = BasisMatrix { n: n + 1, index: emb, entries };
    let bs: Vec<Vec<i64>> = pats.iter().map(closings_i64).collect();
    let v = k_batch(&bs, Parity::Odd);
    let psi = c.invert()?.apply(&v);
    Ok(PsiVector { size: 2 * n + 1, components: pats.into_iter().zip(psi).collect(), normalization: NORMALIZATION.into() })
}

pub fn psi(size: usize) -> Result<PsiVector> {
    match size {
        0 | 1 => domain("size must be at least 2"),
        s if s % 2 == 0 => psi_even(s / 2),
        s => psi_odd(s / 2),
    }
}

fn top_det(b: &[i64]) -> BigInt {
    let n = b.len();
    let m: Vec<Vec<BigInt>> =
        (1..=n).map(|l| (1..=n).map(|c| binomial(l as i64 - 1, b[l - 1] - c as i64)).collect()).collect();
    bareiss_det(&m).expect("integer determinant")
}

/// Component-level checks: valuation, degree and the extreme coefficients
/// against the closing-sequence predictions, and the total against the sum
/// rule at t = 1. Nonnegativity is recorded as a finding.
pub fn check_properties(v: &PsiVector) -> Result<Report> {
    let mut r = Report::new();
    let n = v.half_size() as i64;
    for (pi, c) in &v.components {
        let b = closings_i64(pi);
        if c.is_zero() {
            r.check(format!("component {pi} nonzero"), false, "zero component");
            continue;
        }
        let val = c.valuation().unwrap() as i64;
        let deg = c.degree().unwrap() as i64;
        let low = c.lowest_coeff().unwrap().clone();
        let top = c.leading_coeff().unwrap().clone();
        match v.parity() {
            Parity::Even => {
                let beta = pi.box_count() as i64;
                let nd = nilp_det(&b);
                let td = top_det(&b);
                r.check(
                    format!("component {pi} low end"),
                    val == beta && low == nd,
                    format!("valuation {val} (expected {beta}), coefficient {low} (expected {nd})"),
                );
                r.check(
                    format!("component {pi} high end"),
                    deg == n * (n - 1) - beta && top == td,
                    format!("degree {deg} (expected {}), coefficient {top} (expected {td})", n * (n - 1) - beta),
                );
            }
            Parity::Odd => {
                let lim = tau_limits_odd(&b);
                if let Some((e, co)) = &lim.low {
                    r.check(
                        format!("component {pi} low end"),
                        val == *e && low == *co,
                        format!("valuation {val} (expected {e}), coefficient {low} (expected {co})"),
                    );
                }
                let (e, co) = &lim.high;
                r.check(
                    format!("component {pi} high end"),
                    deg == *e && top == *co,
                    format!("degree {deg} (expected {e}), coefficient {top} (expected {co})"),
                );
            }
        }
        if !c.is_nonnegative() {
            r.note(format!("component {pi} has a negative coefficient: {c}"));
        }
    }
    let k1 = gen_direct(n as usize, v.parity())?.eval_t(&TauPoly::one());
    let s = v.sum();
    r.check("sum of components equals K(1|tau)", s == k1, format!("{s}"));
    if v.parity() == Parity::Even {
        let rb = v.get(&LinkPattern::rainbow(v.size)).cloned().unwrap_or_default();
        let expect = TauPoly::monomial(BigInt::from(1), (n * (n - 1) / 2) as usize);
        r.check("rainbow component is a monomial", rb == expect, format!("{rb}"));
    }
    Ok(r)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ctengine::k_even;

    fn comp(v: &PsiVector, w: &str) -> TauPoly {
        v.get(&w.parse().unwrap()).unwrap().clone()
    }

    #[test]
    fn even_sizes() {
        let v = psi_even(1).unwrap();
        assert_eq!(v.components[0].1, TauPoly::one());
        let v = psi_even(2).unwrap();
        assert_eq!(comp(&v, "(())"), TauPoly::tau());
        assert_eq!(comp(&v, "()()"), TauPoly::from_i64s(&[1, 0, 1]));
        let v = psi_even(3).unwrap();
        assert_eq!(comp(&v, "((()))"), TauPoly::from_i64s(&[0, 0, 0, 1]));
        assert_eq!(comp(&v, "()()()"), TauPoly::from_i64s(&[1, 0, 5, 0, 4, 0, 1]));
        assert_eq!(comp(&v, "()(())"), k_even(&[1, 2, 5]));
        assert_eq!(comp(&v, "(())()"), &k_even(&[1, 3, 4]) - &k_even(&[1, 2, 3]));
    }

    #[test]
    fn odd_sizes() {
        let v = psi_odd(1).unwrap();
        assert_eq!(comp(&v, "|()"), TauPoly::one());
        assert_eq!(comp(&v, "()|"), TauPoly::tau());
        let v = psi_odd(2).unwrap();
        assert_eq!(v.sum(), gen_direct(2, Parity::Odd).unwrap().eval_t(&TauPoly::one()));
    }

    #[test]
    fn properties_small() {
        for s in 2..=7 {
            let v = psi(s).unwrap();
            let r = check_properties(&v).unwrap();
            assert!(r.passed(), "size {s}\n{r}");
        }
    }
}
