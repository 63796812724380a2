//! Symbolic oracle in the spectral parameters z_1..z_N over ℤ[q, q⁻¹]:
//! the inhomogeneous ground state from the exchange relation, its boundary
//! and reflection identities, R-matrix identities, residue evaluation of the
//! contour-integral components and the reduction to odd size.
//!
//! Sizes are limited to N ≤ 6.

use std::collections::{BTreeMap, HashMap};

use rayon::prelude::*;

use crate::basischange::c_entry_unchecked;
use crate::error::{domain, Error, Result};
use crate::exactalg::{LaurentScalar, MultiPoly, TauPoly};
use crate::linkpat::{enumerate, LinkPattern};
use crate::psivec::{psi_even, psi_odd, PsiVector};
use crate::report::Report;

pub type ZPoly = MultiPoly<LaurentScalar>;

pub const MAX_SIZE: usize = 6;

#[derive(Clone, Debug, PartialEq)]
pub struct ZPolyVector {
    pub size: usize,
    pub components: Vec<(LinkPattern, ZPoly)>,
}

impl ZPolyVector {
    pub fn get(&self, pi: &LinkPattern) -> Option<&ZPoly> {
        self.components.iter().find(|(p, _)| p == pi).map(|(_, v)| v)
    }

    fn as_map(&self) -> BTreeMap<LinkPattern, ZPoly> {
        self.components.iter().cloned().collect()
    }

    /// Every z_i set to 1.
    pub fn homogeneous_limit(&self) -> Vec<(LinkPattern, LaurentScalar)> {
        let ones = vec![LaurentScalar::one(); self.size];
        self.components.iter().map(|(p, f)| (p.clone(), f.eval_all(&ones))).collect()
    }
}

fn qp(k: i64) -> LaurentScalar {
    LaurentScalar::q_pow(k)
}

/// q z_i − q⁻¹ z_j (0-based indices).
pub fn qlin(nvars: usize, i: usize, j: usize) -> ZPoly {
    ZPoly::linear(nvars, LaurentScalar::zero(), &[(i, qp(1)), (j, -&qp(-1))])
}

/// q^k − z_i z_j.
pub fn bil(nvars: usize, i: usize, j: usize, k: i64) -> ZPoly {
    let mut e = vec![0; nvars];
    e[i] += 1;
    e[j] += 1;
    &ZPoly::constant(nvars, qp(k)) - &ZPoly::monomial(nvars, e, LaurentScalar::one())
}

/// z_i − z_j.
pub fn diff(nvars: usize, i: usize, j: usize) -> ZPoly {
    ZPoly::linear(nvars, LaurentScalar::zero(), &[(i, LaurentScalar::one()), (j, LaurentScalar::from_i64(-1))])
}

fn check_half_size(n: usize) -> Result<()> {
    if n == 0 || 2 * n > MAX_SIZE {
        return domain(format!("oracle sizes are limited to 2 ≤ N ≤ {MAX_SIZE}, got N = {}", 2 * n));
    }
    Ok(())
}

/// Rainbow component: ∏_{i<j≤n}(qz_i − q⁻¹z_j)(q² − z_iz_j) ·
/// ∏_{n<i<j≤2n}(qz_i − q⁻¹z_j)(q⁴ − z_iz_j).
pub fn seed_psi0(n: usize) -> ZPoly {
    let nv = 2 * n;
    let mut acc = ZPoly::one(nv);
    for (lo, hi, k) in [(0, n, 2), (n, 2 * n, 4)] {
        for i in lo..hi {
            for j in i + 1..hi {
                acc = &(&acc * &qlin(nv, i, j)) * &bil(nv, i, j, k);
            }
        }
    }
    acc
}

/// Point i (1-based, 1 ≤ i < N) where the path of π has a valley: points i
/// and i+1 are a closing followed by an opening.
fn valley(pi: &LinkPattern) -> Option<usize> {
    let h = pi.heights();
    (1..pi.size()).find(|&i| h[i - 1] > h[i] && h[i] < h[i + 1])
}

fn preimages(pats: &[LinkPattern], i: usize, target: &LinkPattern) -> Result<Vec<(LinkPattern, TauPoly)>> {
    let mut out = Vec::new();
    for p in pats {
        let (img, w, _) = p.apply_e(i)?;
        if &img == target {
            out.push((p.clone(), w));
        }
    }
    Ok(out)
}

/// Solves the exchange relation triangularly from the rainbow component.
/// For π with a valley at i, e_i π = π* has a little arch at (i, i+1) and
/// Ψ_π = (q z_i − q⁻¹ z_{i+1}) ∂_i Ψ_{π*} − Σ_{other preimages σ} Ψ_σ.
pub fn solve_exchange(n: usize) -> Result<ZPolyVector> {
    check_half_size(n)?;
    let nv = 2 * n;
    let pats = enumerate(nv);
    let mut order = pats.clone();
    order.sort_by_key(|p| std::cmp::Reverse(p.box_count()));
    let mut psi: BTreeMap<LinkPattern, ZPoly> = BTreeMap::new();
    psi.insert(order[0].clone(), seed_psi0(n));
    for s in &order[1..] {
        let i = valley(s).ok_or_else(|| Error::Verification(format!("pattern {s} has no valley")))?;
        let (star, _, _) = s.apply_e(i)?;
        let base = psi.get(&star).ok_or_else(|| Error::Verification(format!("{star} not yet solved")))?;
        let mut f = &qlin(nv, i - 1, i) * &base.divided_difference(i - 1);
        for (p, _) in preimages(&pats, i, &star)? {
            if p == *s || p == star {
                continue;
            }
            let other = psi.get(&p).ok_or_else(|| Error::Verification(format!("pattern {s} unreachable: {p} unsolved")))?;
            f = &f - other;
        }
        psi.insert(s.clone(), f);
    }
    Ok(ZPolyVector { size: nv, components: pats.into_iter().map(|p| { let f = psi.remove(&p).unwrap(); (p, f) }).collect() })
}

/// (e_i Ψ)_π over the pattern span.
fn apply_e_z(i: usize, v: &BTreeMap<LinkPattern, ZPoly>) -> Result<BTreeMap<LinkPattern, ZPoly>> {
    let mut out: BTreeMap<LinkPattern, ZPoly> = BTreeMap::new();
    for (p, f) in v {
        let (img, w, _) = p.apply_e(i)?;
        let term = f.scale(&w.to_laurent());
        let nv = f.nvars();
        let slot = out.entry(img).or_insert_with(|| ZPoly::zero(nv));
        *slot = &*slot + &term;
    }
    Ok(out)
}

/// Checks, for every component: the exchange relation at every i, the
/// boundary relations at z_1 and z_N, the reflection identity and the
/// degree bounds.
pub fn verify_qkz_system(v: &ZPolyVector) -> Result<Report> {
    let nv = v.size;
    if nv % 2 == 1 || nv > MAX_SIZE {
        return domain("verification needs an even solved vector with N ≤ 6");
    }
    let n = nv / 2;
    let d = (2 * n - 2) as u32;
    let map = v.as_map();
    let zero = ZPoly::zero(nv);
    let mut r = Report::new();
    let per_i: Vec<Result<(usize, bool)>> = (1..nv)
        .into_par_iter()
        .map(|i| {
            let e = apply_e_z(i, &map)?;
            let ok = map.iter().all(|(p, f)| {
                let ef = e.get(p).unwrap_or(&zero);
                let lhs = &(&qlin(nv, i, i - 1) * f) + &(&diff(nv, i, i - 1) * ef);
                let rhs = &qlin(nv, i - 1, i) * &f.swap_vars(i - 1, i);
                lhs == rhs
            });
            Ok((i, ok))
        })
        .collect();
    for res in per_i {
        let (i, ok) = res?;
        r.check(format!("exchange relation at i={i}"), ok, format!("N={nv}"));
    }
    let q6 = qp(6);
    let shift = qp(6 * n as i64 - 6);
    let mut left = true;
    let mut right = true;
    let mut degree = true;
    let mut per_var = true;
    let target = (3 * n * (n - 1)) as u32;
    for f in map.values() {
        left &= f.invert_var(0, &LaurentScalar::one(), d).map(|g| &g == f).unwrap_or(false);
        right &= f.invert_var(nv - 1, &q6, d).map(|g| g == f.scale(&shift)).unwrap_or(false);
        degree &= f.total_degree().unwrap_or(0) == target;
        per_var &= (0..nv).all(|k| f.degree_in(k).unwrap_or(0) <= d);
    }
    r.check("boundary relation at z_1", left, "z_1^(2n-2) Psi(1/z_1) = Psi");
    r.check("boundary relation at z_N", right, "z_N^(2n-2) Psi(q^6/z_N) = q^(6n-6) Psi");
    r.check("total degree 3n(n-1)", degree, format!("{target}"));
    r.check("degree in each variable at most 2n-2", per_var, format!("{d}"));
    let mut refl = true;
    let norm = qp(-3 * (n as i64 - 1) * nv as i64);
    for (p, f) in &map {
        let mut g = map[&p.mirror()].reverse_vars();
        for k in 0..nv {
            g = g.invert_var(k, &qp(3), d)?;
        }
        refl &= g.scale(&norm) == *f;
    }
    r.check("reflection identity", refl, "Psi_pi(z) = prod (z_i^2/q^3)^(n-1) Psi_rho(pi)(q^3/z_N, ..., q^3/z_1)");
    Ok(r)
}

/// Numerator of the Ř-matrix, (q z − q⁻¹ w) + (z − w) e_i, applied to a vector.
pub fn r_numerator(
    i: usize,
    z: &ZPoly,
    w: &ZPoly,
    v: &BTreeMap<LinkPattern, ZPoly>,
) -> Result<BTreeMap<LinkPattern, ZPoly>> {
    let a = &z.scale(&qp(1)) - &w.scale(&qp(-1));
    let b = z - w;
    let e = apply_e_z(i, v)?;
    let mut out: BTreeMap<LinkPattern, ZPoly> = BTreeMap::new();
    for (p, f) in v {
        out.insert(p.clone(), &a * f);
    }
    for (p, f) in e {
        let t = &b * &f;
        let nv = t.nvars();
        let slot = out.entry(p).or_insert_with(|| ZPoly::zero(nv));
        *slot = &*slot + &t;
    }
    out.retain(|_, f| !f.is_zero());
    Ok(out)
}

fn basis_vector(p: &LinkPattern, nv: usize) -> BTreeMap<LinkPattern, ZPoly> {
    BTreeMap::from([(p.clone(), ZPoly::one(nv))])
}

/// Unitarity N(z,w)N(w,z) = (q w − q⁻¹ z)(q z − q⁻¹ w) and the Yang–Baxter
/// relation on the pattern span of size `size`, at symbolic spectral
/// parameters x, y, z.
pub fn verify_r_matrix(size: usize) -> Result<Report> {
    if !(2..=MAX_SIZE).contains(&size) {
        return domain(format!("R-matrix checks are limited to 2 ≤ N ≤ {MAX_SIZE}"));
    }
    let pats = enumerate(size);
    let (x, y, z) = (ZPoly::var(3, 0), ZPoly::var(3, 1), ZPoly::var(3, 2));
    let scalar = &qlin(3, 1, 0) * &qlin(3, 0, 1);
    let mut r = Report::new();
    for i in 1..size {
        let mut unit = true;
        for p in &pats {
            let v = basis_vector(p, 3);
            let out = r_numerator(i, &x, &y, &r_numerator(i, &y, &x, &v)?)?;
            unit &= out == BTreeMap::from([(p.clone(), scalar.clone())]);
        }
        r.check(format!("unitarity at i={i}"), unit, format!("N={size}"));
    }
    for i in 1..size.saturating_sub(1) {
        let mut ybe = true;
        for p in &pats {
            let v = basis_vector(p, 3);
            let lhs = r_numerator(i, &x, &y, &r_numerator(i + 1, &x, &z, &r_numerator(i, &y, &z, &v)?)?)?;
            let rhs = r_numerator(i + 1, &y, &z, &r_numerator(i, &x, &z, &r_numerator(i + 1, &x, &y, &v)?)?)?;
            ybe &= lhs == rhs;
        }
        r.check(format!("Yang-Baxter relation at i={i}"), ybe, format!("N={size}"));
    }
    Ok(r)
}

/// Irreducible factors occurring in the residue sum, after w_ℓ = z_{i_ℓ}.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
enum Factor {
    /// z_a − z_b, a < b.
    Diff(usize, usize),
    /// q z_a − q⁻¹ z_b, a ≠ b.
    QLin(usize, usize),
    /// q^k − z_a z_b, a ≤ b.
    Bil(usize, usize, i64),
}

impl Factor {
    fn poly(self, nv: usize) -> ZPoly {
        match self {
            Factor::Diff(a, b) => diff(nv, a, b),
            Factor::QLin(a, b) => qlin(nv, a, b),
            Factor::Bil(a, b, k) => bil(nv, a, b, k),
        }
    }
}

#[derive(Default)]
struct Term {
    negative: bool,
    exps: BTreeMap<Factor, i32>,
}

impl Term {
    fn push(&mut self, f: Factor, e: i32) {
        *self.exps.entry(f).or_insert(0) += e;
    }

    fn diff(&mut self, a: usize, b: usize, e: i32) {
        if a < b {
            self.push(Factor::Diff(a, b), e);
        } else {
            if e % 2 != 0 {
                self.negative = !self.negative;
            }
            self.push(Factor::Diff(b, a), e);
        }
    }

    fn bil(&mut self, a: usize, b: usize, k: i64, e: i32) {
        self.push(Factor::Bil(a.min(b), a.max(b), k), e);
    }
}

fn choices(a: &[usize], used: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
    let l = used.len();
    if l == a.len() {
        out.push(used.clone());
        return;
    }
    for i in 0..a[l] {
        if !used.contains(&i) {
            used.push(i);
            choices(a, used, out);
            used.pop();
        }
    }
}

/// The contour-integral component Ψ_a of size 2n, evaluated as the sum of
/// residues at w_ℓ = z_i, i ≤ a_ℓ, over distinct choices. Choices with a
/// repeated point vanish with the Vandermonde factor.
pub fn residue_eval_openpsi(a: &[usize], n: usize) -> Result<ZPoly> {
    if n == 0 || n > 2 || a.len() != n {
        return domain("residue evaluation is limited to n ≤ 2 with a of length n");
    }
    let nv = 2 * n;
    if a.windows(2).any(|w| w[0] >= w[1]) || a[0] < 1 || a[n - 1] > nv {
        return domain(format!("a = {a:?} must be strictly increasing in 1..=2n"));
    }
    let mut picks = Vec::new();
    choices(a, &mut Vec::new(), &mut picks);
    let terms: Vec<Term> = picks
        .iter()
        .map(|w| {
            let mut t = Term::default();
            for i in 0..nv {
                for j in i + 1..nv {
                    t.push(Factor::QLin(i, j), 1);
                    t.bil(i, j, 4, 1);
                }
            }
            for l in 0..n {
                for m in l..n {
                    if l < m {
                        t.diff(w[m], w[l], 1);
                        t.push(Factor::QLin(w[l], w[m]), 1);
                        t.bil(w[l], w[m], 2, 1);
                    }
                    t.bil(w[l], w[m], 4, 1);
                }
                for i in 0..nv {
                    t.bil(w[l], i, 4, -1);
                    if i < a[l] {
                        if i != w[l] {
                            t.diff(w[l], i, -1);
                        }
                    } else {
                        t.push(Factor::QLin(w[l], i), -1);
                    }
                }
            }
            t
        })
        .collect();
    let mut den: BTreeMap<Factor, i32> = BTreeMap::new();
    for t in &terms {
        for (f, &e) in &t.exps {
            if e < 0 {
                let d = den.entry(*f).or_insert(0);
                *d = (*d).max(-e);
            }
        }
    }
    let mut cache: HashMap<Factor, ZPoly> = HashMap::new();
    let mut total = ZPoly::zero(nv);
    for t in &terms {
        let mut p = ZPoly::one(nv);
        for (f, &e) in &t.exps {
            let k = e + den.get(f).copied().unwrap_or(0);
            if k > 0 {
                let fp = cache.entry(*f).or_insert_with(|| f.poly(nv));
                p = &p * &fp.pow(k as u32);
            }
        }
        total = if t.negative { &total - &p } else { &total + &p };
    }
    for (f, &e) in &den {
        let fp = f.poly(nv);
        for _ in 0..e {
            total = total.exact_div(&fp)?;
        }
    }
    Ok(total)
}

/// Σ_π C_{a,π}(τ) Ψ_π with τ = −q − q⁻¹.
pub fn contract_with_basis(a: &[usize], v: &ZPolyVector) -> ZPoly {
    v.components.iter().fold(ZPoly::zero(v.size), |acc, (p, f)| {
        let c = c_entry_unchecked(a, p);
        if c.is_zero() {
            acc
        } else {
            &acc + &f.scale(&c.to_laurent())
        }
    })
}

/// Size 2n+2 ↦ 2n+1: z_N = 0, the variable is dropped and each pattern loses
/// its rightmost arch.
pub fn odd_reduce(v: &ZPolyVector) -> Result<ZPolyVector> {
    if v.size % 2 == 1 {
        return domain("odd reduction needs an even-size vector");
    }
    let last = v.size - 1;
    let mut comps = v
        .components
        .iter()
        .map(|(p, f)| Ok((p.erase_rightmost_arch()?, f.substitute_value(last, &LaurentScalar::zero()).drop_var(last)?)))
        .collect::<Result<Vec<_>>>()?;
    comps.sort_by(|a, b| a.0.cmp(&b.0));
    Ok(ZPolyVector { size: v.size - 1, components: comps })
}

/// Solved vector at any size 2 ≤ N ≤ 6; odd sizes go through the reduction.
pub fn solve(size: usize) -> Result<ZPolyVector> {
    if !(2..=MAX_SIZE).contains(&size) {
        return domain(format!("oracle sizes are limited to 2 ≤ N ≤ {MAX_SIZE}"));
    }
    if size.is_multiple_of(2) {
        solve_exchange(size / 2)
    } else {
        odd_reduce(&solve_exchange(size.div_ceil(2))?)
    }
}

/// Compares the oracle at z = 1 with the τ-pipeline at τ = −q − q⁻¹. Returns
/// the constant c with oracle = c · pipeline on every component.
pub fn homogeneous_constant(v: &ZPolyVector, pipeline: &PsiVector) -> Result<LaurentScalar> {
    if v.size != pipeline.size {
        return domain("sizes differ");
    }
    let hom = v.homogeneous_limit();
    let (p0, o0) = hom
        .iter()
        .find(|(_, o)| !o.is_zero())
        .ok_or_else(|| Error::Verification("oracle vanishes at z = 1".into()))?;
    let base = pipeline.get(p0).ok_or_else(|| Error::Verification(format!("{p0} missing from pipeline")))?;
    let c = o0.exact_div(&base.to_laurent())?;
    for (p, o) in &hom {
        let t = pipeline.get(p).ok_or_else(|| Error::Verification(format!("{p} missing from pipeline")))?;
        if &(&c * &t.to_laurent()) != o {
            return Err(Error::Verification(format!("component {p} is not a multiple of the common constant {c}")));
        }
    }
    Ok(c)
}

/// Oracle against the τ-pipeline for one size.
pub fn cross_check(size: usize) -> Result<(LaurentScalar, Report)> {
    let v = solve(size)?;
    let pipe = if size.is_multiple_of(2) { psi_even(size / 2)? } else { psi_odd(size / 2)? };
    let mut r = Report::new();
    if size.is_multiple_of(2) {
        r.merge(verify_qkz_system(&v)?);
    }
    let c = homogeneous_constant(&v, &pipe);
    r.check(
        format!("homogeneous limit proportional to pipeline at N={size}"),
        c.is_ok(),
        match &c {
            Ok(c) => format!("constant {c}"),
            Err(e) => e.to_string(),
        },
    );
    Ok((c.unwrap_or_else(|_| LaurentScalar::zero()), r))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn seed_values() {
        assert_eq!(seed_psi0(1), ZPoly::one(2));
        let s = seed_psi0(2);
        let ones = vec![LaurentScalar::one(); 4];
        let qm = &qp(1) - &qp(-1);
        let expect = &(&qp(3) * &qm.pow(4)) * &(&qp(1) + &qp(-1));
        assert_eq!(s.eval_all(&ones), expect);
    }

    #[test]
    fn small_solutions() {
        let v = solve_exchange(1).unwrap();
        assert_eq!(v.components.len(), 1);
        let v = solve_exchange(2).unwrap();
        assert_eq!(v.components.len(), 2);
        let r = verify_qkz_system(&v).unwrap();
        assert!(r.passed(), "{r}");
        assert!(solve_exchange(4).is_err());
    }

    #[test]
    fn n2_constant() {
        let (c, r) = cross_check(4).unwrap();
        assert!(r.passed(), "{r}");
        let qm = &qp(2) - &LaurentScalar::one();
        assert_eq!(c, -&(&qm.pow(4) * &qp(-1)));
    }

    #[test]
    fn r_matrix_small() {
        let r = verify_r_matrix(4).unwrap();
        assert!(r.passed(), "{r}");
    }

    #[test]
    fn residues_small() {
        assert_eq!(residue_eval_openpsi(&[1], 1).unwrap(), ZPoly::one(2));
        assert_eq!(residue_eval_openpsi(&[1, 2], 2).unwrap(), seed_psi0(2));
        let v = solve_exchange(2).unwrap();
        assert_eq!(residue_eval_openpsi(&[1, 3], 2).unwrap(), contract_with_basis(&[1, 3], &v));
    }

    #[test]
    fn odd_reduction_small() {
        let v = solve(3).unwrap();
        assert_eq!(v.components.len(), 2);
        let (_, r) = cross_check(3).unwrap();
        assert!(r.passed(), "{r}");
    }
}
