//! Generating functions K(t|τ) (even size 2n) and K'(t|τ) (odd size 2n+1),
//! each computed as a sum of constant terms and as a determinant.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use rayon::prelude::*;

use crate::ctengine::{k_batch, Parity};
use crate::error::{domain, Error, Result};
use crate::exactalg::{bareiss_det, binomial, BiPoly, TauPoly};

/// How the t-weights of the determinant route relate to the direct sum.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TConvention {
    /// The determinant equals the direct sum as written.
    Identity,
    /// The determinant equals t^n · direct(1/t): each ε_i is weighted by
    /// t^{1−ε_i} instead of t^{ε_i}.
    Complementary,
}

impl TConvention {
    pub fn describe(self) -> &'static str {
        match self {
            TConvention::Identity => "identity",
            TConvention::Complementary => "complementary weighting t^(n - sum eps)",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SumRuleReport {
    pub n: usize,
    pub parity: Parity,
    pub direct: BiPoly,
    pub determinant: BiPoly,
    pub convention: TConvention,
    pub specializations: BTreeMap<String, TauPoly>,
}

/// Closing sequences b_i = 2i − 1 − ε_i (even) or 2i − ε_i (odd) with their
/// t-exponents Σε.
fn epsilon_sequences(n: usize, parity: Parity) -> Vec<(Vec<i64>, usize)> {
    (0..1usize << n)
        .map(|mask| {
            let b = (1..=n)
                .map(|i| parity.bound(i) - ((mask >> (i - 1)) & 1) as i64)
                .collect();
            (b, mask.count_ones() as usize)
        })
        .collect()
}

/// Σ_ε t^{Σε} K_b over the 2^n sequences above.
pub fn gen_direct(n: usize, parity: Parity) -> Result<BiPoly> {
    if n == 0 {
        return domain("n must be positive");
    }
    let seqs = epsilon_sequences(n, parity);
    let bs: Vec<Vec<i64>> = seqs.iter().map(|(b, _)| b.clone()).collect();
    let ks = k_batch(&bs, parity);
    let mut by_t = vec![TauPoly::zero(); n + 1];
    for ((_, e), k) in seqs.iter().zip(ks) {
        by_t[*e] += &k;
    }
    Ok(BiPoly::new(by_t))
}

fn tau_pow(e: i64) -> TauPoly {
    assert!(e >= 0, "negative τ exponent {e}");
    TauPoly::monomial(BigInt::from(1), e as usize)
}

fn bterm(c: BigInt, t_pow: usize, tau_e: i64) -> BiPoly {
    if c == BigInt::from(0) {
        return BiPoly::zero();
    }
    assert!(tau_e >= 0, "negative τ exponent {tau_e}");
    BiPoly::monomial(c, t_pow, tau_e as usize)
}

/// Entry (i, j) of the (n−1)×(n−1) even determinant:
/// Σ_s τ^{2i+2j−2s} C(i, 2i−s)·(tτ·C(j, 2j−s+1) + C(j, 2j−s)).
pub fn even_entry(i: i64, j: i64) -> BiPoly {
    let mut acc = BiPoly::zero();
    for s in i..=2 * i {
        let ci = binomial(i, 2 * i - s);
        let e = 2 * i + 2 * j - 2 * s;
        acc += &bterm(&ci * binomial(j, 2 * j - s + 1), 1, e + 1);
        acc += &bterm(&ci * binomial(j, 2 * j - s), 0, e);
    }
    acc
}

pub fn gen_det_even(n: usize) -> Result<BiPoly> {
    if n == 0 {
        return domain("n must be positive");
    }
    let d = n as i64 - 1;
    let m: Vec<Vec<BiPoly>> = (1..=d).map(|i| (1..=d).map(|j| even_entry(i, j)).collect()).collect();
    bareiss_det(&m)
}

/// g_{ℓ,m} = Σ_r τ^{2ℓ+2m−2r−1} C(ℓ, r−ℓ)·(τ·C(m−1, 2m−r) + t·C(m−1, 2m−1−r)).
pub fn odd_entry(l: i64, m: i64) -> BiPoly {
    let mut acc = BiPoly::zero();
    for r in l..=2 * l {
        let cl = binomial(l, r - l);
        let e = 2 * l + 2 * m - 2 * r - 1;
        acc += &bterm(&cl * binomial(m - 1, 2 * m - r), 0, e + 1);
        acc += &bterm(&cl * binomial(m - 1, 2 * m - 1 - r), 1, e);
    }
    acc
}

/// det g as printed, before any convention is applied.
pub fn gen_det_odd_raw(n: usize) -> Result<BiPoly> {
    if n == 0 {
        return domain("n must be positive");
    }
    let n = n as i64;
    let m: Vec<Vec<BiPoly>> = (1..=n).map(|l| (1..=n).map(|c| odd_entry(l, c)).collect()).collect();
    bareiss_det(&m)
}

/// Determines which t-convention makes det g equal to the direct sum.
pub fn odd_convention(n: usize, direct: &BiPoly, det: &BiPoly) -> Result<TConvention> {
    let one = TauPoly::one();
    if direct.eval_t(&one) != det.eval_t(&one) {
        return Err(Error::Verification(format!("odd routes differ at t=1 for n={n}")));
    }
    if direct == det {
        Ok(TConvention::Identity)
    } else if direct.complement_t(n)? == *det {
        Ok(TConvention::Complementary)
    } else {
        Err(Error::Verification(format!("no t-convention reconciles the odd routes at n={n}")))
    }
}

/// det g together with the convention that reconciles it with the direct sum.
pub fn gen_det_odd(n: usize) -> Result<(BiPoly, TConvention)> {
    let det = gen_det_odd_raw(n)?;
    let direct = gen_direct(n, Parity::Odd)?;
    let conv = odd_convention(n, &direct, &det)?;
    Ok((det, conv))
}

fn tau_det(n: usize, f: impl Fn(i64, i64) -> TauPoly) -> TauPoly {
    let d = n as i64 - 1;
    let m: Vec<Vec<TauPoly>> = (1..=d).map(|i| (1..=d).map(|j| f(i, j)).collect()).collect();
    bareiss_det(&m).expect("exact determinant")
}

/// det[Σ_s τ^{2i+2j−2s} C(i,2i−s) C(j,2j−s)], the t = 0 value.
pub fn max_component_det(n: usize) -> TauPoly {
    tau_det(n, |i, j| {
        (i..=2 * i).fold(TauPoly::zero(), |acc, s| {
            let c = binomial(i, 2 * i - s) * binomial(j, 2 * j - s);
            if c == BigInt::from(0) {
                return acc;
            }
            &acc + &tau_pow(2 * i + 2 * j - 2 * s).scale(&c)
        })
    })
}

/// det[Σ_s τ^{2i+2j−2s+1} C(i,2i−s) C(j,2j−s+1)], the leading t behaviour.
pub fn rotated_component_det(n: usize) -> TauPoly {
    tau_det(n, |i, j| {
        (i..=2 * i).fold(TauPoly::zero(), |acc, s| {
            let c = binomial(i, 2 * i - s) * binomial(j, 2 * j - s + 1);
            if c == BigInt::from(0) {
                return acc;
            }
            &acc + &tau_pow(2 * i + 2 * j - 2 * s + 1).scale(&c)
        })
    })
}

/// Builds both routes and their specializations.
pub fn build_report(n: usize, parity: Parity) -> Result<SumRuleReport> {
    let (direct, det) = rayon::join(
        || gen_direct(n, parity),
        || match parity {
            Parity::Even => gen_det_even(n),
            Parity::Odd => gen_det_odd_raw(n),
        },
    );
    let (direct, determinant) = (direct?, det?);
    let convention = match parity {
        Parity::Even => {
            if direct != determinant {
                return Err(Error::Verification(format!("even routes differ at n={n}")));
            }
            TConvention::Identity
        }
        Parity::Odd => odd_convention(n, &direct, &determinant)?,
    };
    let mut report = SumRuleReport { n, parity, direct, determinant, convention, specializations: BTreeMap::new() };
    report.specializations = specialize(&report)?;
    Ok(report)
}

/// Labeled specializations of a sum-rule report.
pub fn specialize(r: &SumRuleReport) -> Result<BTreeMap<String, TauPoly>> {
    let mut out = BTreeMap::new();
    let zero = TauPoly::zero();
    let one = TauPoly::one();
    let tau = TauPoly::tau();
    match r.parity {
        Parity::Even => {
            out.insert("t=0".to_string(), r.direct.eval_t(&zero));
            out.insert("t=1".to_string(), r.direct.eval_t(&one));
            out.insert("top-t".to_string(), r.direct.coeff_t(r.n - 1));
            out.insert("t=1/tau".to_string(), r.direct.eval_t_inverse_tau()?);
        }
        Parity::Odd => {
            out.insert("t=0".to_string(), r.direct.eval_t(&zero));
            out.insert("t=1".to_string(), r.direct.eval_t(&one));
            out.insert("det t=0".to_string(), r.determinant.eval_t(&zero));
            out.insert("det t=tau".to_string(), r.determinant.eval_t(&tau));
        }
    }
    Ok(out)
}

/// Entries of the single-integral determinant for K' as printed:
/// φ_{ℓ,m} = Σ_r τ^{2ℓ+2m−2r−4} C(ℓ−1, r−ℓ)(τ C(m−1, r+1−m) + t C(m−1, r+2−m)),
/// returned multiplied by τ so that all exponents are nonnegative.
pub fn phi_entry_times_tau(l: i64, m: i64) -> BiPoly {
    let mut acc = BiPoly::zero();
    for r in l..=2 * l - 1 {
        let cl = binomial(l - 1, r - l);
        let e = 2 * l + 2 * m - 2 * r - 4 + 1;
        acc += &bterm(&cl * binomial(m - 1, r + 1 - m), 0, e + 1);
        acc += &bterm(&cl * binomial(m - 1, r + 2 - m), 1, e);
    }
    acc
}

/// det(φ_{ℓ,m} + φ_{ℓ,m+1}) from the printed φ sums.
pub fn phi_route(n: usize) -> Result<BiPoly> {
    let nn = n as i64;
    let m: Vec<Vec<BiPoly>> = (1..=nn)
        .map(|l| (1..=nn).map(|c| &phi_entry_times_tau(l, c) + &phi_entry_times_tau(l, c + 1)).collect())
        .collect();
    let scaled = bareiss_det(&m)?;
    scaled.exact_div(&BiPoly::from_tau(TauPoly::tau().pow(n as u32)))
}

/// Both routes for n = 1..=max_n, computed in parallel.
pub fn reports_up_to(max_n: usize, parity: Parity) -> Result<Vec<SumRuleReport>> {
    (1..=max_n).into_par_iter().map(|n| build_report(n, parity)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn bp(s: &str) -> String {
        s.to_string()
    }

    #[test]
    fn even_small() {
        assert_eq!(gen_direct(1, Parity::Even).unwrap(), BiPoly::one());
        assert_eq!(gen_det_even(1).unwrap(), BiPoly::one());
        let d = gen_direct(2, Parity::Even).unwrap();
        assert_eq!(d.to_string(), bp("1 + τ^2 + tτ"));
        assert_eq!(gen_det_even(2).unwrap(), d);
    }

    #[test]
    fn even_n3_value() {
        let d = gen_det_even(3).unwrap();
        assert_eq!(d, gen_direct(3, Parity::Even).unwrap());
        assert_eq!(d.eval_t(&TauPoly::one()).eval(&BigInt::from(1)), BigInt::from(26));
    }

    #[test]
    fn odd_small() {
        let d = gen_direct(1, Parity::Odd).unwrap();
        assert_eq!(d.to_string(), bp("τ + t"));
        let g = gen_det_odd_raw(1).unwrap();
        assert_eq!(g.to_string(), bp("1 + tτ"));
        let (_, conv) = gen_det_odd(1).unwrap();
        assert_eq!(conv, TConvention::Complementary);
        for n in 2..=3 {
            assert_eq!(gen_det_odd(n).unwrap().1, TConvention::Complementary);
        }
    }

    #[test]
    fn specializations_n2() {
        let r = build_report(2, Parity::Even).unwrap();
        assert_eq!(r.specializations["t=0"], TauPoly::from_i64s(&[1, 0, 1]));
        assert_eq!(r.specializations["t=1/tau"], TauPoly::from_i64s(&[2, 0, 1]));
        assert_eq!(r.specializations["top-t"], rotated_component_det(2));
        assert_eq!(r.specializations["t=0"], max_component_det(2));
        let o = build_report(1, Parity::Odd).unwrap();
        assert_eq!(o.specializations["det t=tau"], TauPoly::from_i64s(&[1, 0, 1]));
    }

    #[test]
    fn printed_phi_sums() {
        assert_eq!(phi_route(1).unwrap(), gen_direct(1, Parity::Odd).unwrap());
    }
}
