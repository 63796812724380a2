use std::collections::BTreeMap;
use std::fmt;

use super::ring::Ring;
use crate::error::{Error, Result};

pub type Exponent = Vec<u32>;

/// Sparse multivariate polynomial over a [`Ring`]. When `caps` is set, every
/// stored exponent respects the per-variable maximum and products drop terms
/// that exceed it.
#[derive(Clone, PartialEq, Debug)]
pub struct MultiPoly<C> {
    nvars: usize,
    terms: BTreeMap<Exponent, C>,
    caps: Option<Vec<u32>>,
}

fn fits(e: &[u32], caps: &Option<Vec<u32>>) -> bool {
    match caps {
        None => true,
        Some(c) => e.iter().zip(c).all(|(x, m)| x <= m),
    }
}

fn merge_caps(a: &Option<Vec<u32>>, b: &Option<Vec<u32>>) -> Option<Vec<u32>> {
    match (a, b) {
        (None, None) => None,
        (Some(x), None) | (None, Some(x)) => Some(x.clone()),
        (Some(x), Some(y)) => Some(x.iter().zip(y).map(|(p, q)| (*p).min(*q)).collect()),
    }
}

impl<C: Ring> MultiPoly<C> {
    pub fn zero(nvars: usize) -> Self {
        MultiPoly { nvars, terms: BTreeMap::new(), caps: None }
    }

    pub fn constant(nvars: usize, c: C) -> Self {
        Self::monomial(nvars, vec![0; nvars], c)
    }

    pub fn one(nvars: usize) -> Self {
        Self::constant(nvars, C::one())
    }

    pub fn monomial(nvars: usize, exp: Exponent, c: C) -> Self {
        assert_eq!(exp.len(), nvars, "exponent length mismatch");
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(exp, c);
        }
        MultiPoly { nvars, terms, caps: None }
    }

    /// The variable with index `i` (0-based).
    pub fn var(nvars: usize, i: usize) -> Self {
        let mut e = vec![0; nvars];
        e[i] = 1;
        Self::monomial(nvars, e, C::one())
    }

    /// `c_a · x_a + c_b · x_b` style linear forms, built from (index, coeff)
    /// pairs plus a constant.
    pub fn linear(nvars: usize, constant: C, parts: &[(usize, C)]) -> Self {
        let mut p = Self::constant(nvars, constant);
        for (i, c) in parts {
            p = &p + &Self::var(nvars, *i).scale(c);
        }
        p
    }

    pub fn from_terms(nvars: usize, terms: impl IntoIterator<Item = (Exponent, C)>) -> Self {
        let mut p = Self::zero(nvars);
        for (e, c) in terms {
            p.add_term(e, c);
        }
        p
    }

    /// Restricts to terms within `caps` and keeps the caps for later products.
    pub fn with_caps(mut self, caps: Vec<u32>) -> Self {
        assert_eq!(caps.len(), self.nvars, "caps length mismatch");
        let caps = Some(caps);
        self.terms.retain(|e, _| fits(e, &caps));
        self.caps = caps;
        self
    }

    pub fn without_caps(mut self) -> Self {
        self.caps = None;
        self
    }

    pub fn caps(&self) -> Option<&[u32]> {
        self.caps.as_deref()
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Exponent, &C)> {
        self.terms.iter()
    }

    pub fn coeff(&self, e: &[u32]) -> C {
        self.terms.get(e).cloned().unwrap_or_else(C::zero)
    }

    fn add_term(&mut self, e: Exponent, c: C) {
        if c.is_zero() || !fits(&e, &self.caps) {
            return;
        }
        match self.terms.entry(e) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let s = o.get().plus(&c);
                if s.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = s;
                }
            }
        }
    }

    pub fn scale(&self, c: &C) -> Self {
        if c.is_zero() {
            return MultiPoly { nvars: self.nvars, terms: BTreeMap::new(), caps: self.caps.clone() };
        }
        let terms = self
            .terms
            .iter()
            .map(|(e, x)| (e.clone(), x.times(c)))
            .filter(|(_, x)| !x.is_zero())
            .collect();
        MultiPoly { nvars: self.nvars, terms, caps: self.caps.clone() }
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut acc = Self::one(self.nvars);
        acc.caps = self.caps.clone();
        for _ in 0..k {
            acc = &acc * self;
        }
        acc
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(|e| e.iter().sum()).max()
    }

    pub fn min_total_degree(&self) -> Option<u32> {
        self.terms.keys().map(|e| e.iter().sum()).min()
    }

    pub fn degree_in(&self, v: usize) -> Option<u32> {
        self.terms.keys().map(|e| e[v]).max()
    }

    pub fn is_homogeneous(&self) -> bool {
        self.total_degree() == self.min_total_degree()
    }

    pub fn map_coeffs<D: Ring>(&self, f: impl Fn(&C) -> D) -> MultiPoly<D> {
        let mut out = MultiPoly::zero(self.nvars);
        out.caps = self.caps.clone();
        for (e, c) in &self.terms {
            out.add_term(e.clone(), f(c));
        }
        out
    }

    /// Renames variables: variable `i` becomes variable `perm[i]`.
    pub fn permute_vars(&self, perm: &[usize]) -> Self {
        assert_eq!(perm.len(), self.nvars);
        let mut out = Self::zero(self.nvars);
        for (e, c) in &self.terms {
            let mut ne = vec![0; self.nvars];
            for (i, &x) in e.iter().enumerate() {
                ne[perm[i]] = x;
            }
            out.add_term(ne, c.clone());
        }
        out
    }

    pub fn swap_vars(&self, i: usize, j: usize) -> Self {
        let mut perm: Vec<usize> = (0..self.nvars).collect();
        perm.swap(i, j);
        self.permute_vars(&perm)
    }

    /// Variable order reversed: x_i ↦ x_{N−1−i}.
    pub fn reverse_vars(&self) -> Self {
        let perm: Vec<usize> = (0..self.nvars).rev().collect();
        self.permute_vars(&perm)
    }

    /// Sets variable `v` to the constant `value`; the variable stays in the
    /// signature with exponent zero.
    pub fn substitute_value(&self, v: usize, value: &C) -> Self {
        let mut out = Self::zero(self.nvars);
        for (e, c) in &self.terms {
            let mut ne = e.clone();
            let k = ne[v];
            ne[v] = 0;
            out.add_term(ne, c.times(&value.pow(k)));
        }
        out
    }

    pub fn eval_all(&self, values: &[C]) -> C {
        assert_eq!(values.len(), self.nvars);
        let mut acc = C::zero();
        for (e, c) in &self.terms {
            let mut t = c.clone();
            for (x, &k) in values.iter().zip(e) {
                if k > 0 {
                    t = t.times(&x.pow(k));
                }
            }
            acc = acc.plus(&t);
        }
        acc
    }

    /// Removes variable `v`, which must not occur.
    pub fn drop_var(&self, v: usize) -> Result<Self> {
        let mut out = MultiPoly::zero(self.nvars - 1);
        for (e, c) in &self.terms {
            if e[v] != 0 {
                return Err(Error::Domain(format!("variable {v} still occurs")));
            }
            let mut ne = e.clone();
            ne.remove(v);
            out.add_term(ne, c.clone());
        }
        Ok(out)
    }

    /// x_v^shift · f(…, scale/x_v, …). Fails if some exponent of x_v exceeds
    /// `shift`.
    pub fn invert_var(&self, v: usize, scale: &C, shift: u32) -> Result<Self> {
        let mut out = Self::zero(self.nvars);
        for (e, c) in &self.terms {
            let k = e[v];
            if k > shift {
                return Err(Error::Domain(format!("degree {k} in variable {v} exceeds {shift}")));
            }
            let mut ne = e.clone();
            ne[v] = shift - k;
            out.add_term(ne, c.times(&scale.pow(k)));
        }
        Ok(out)
    }

    /// Coefficient extraction in variable `v`: the polynomial multiplying x_v^k.
    pub fn coeff_in(&self, v: usize, k: u32) -> Self {
        let mut out = Self::zero(self.nvars);
        for (e, c) in &self.terms {
            if e[v] == k {
                let mut ne = e.clone();
                ne[v] = 0;
                out.add_term(ne, c.clone());
            }
        }
        out
    }

    /// Exact division by lex-leading-term reduction.
    pub fn exact_div(&self, den: &Self) -> Result<Self> {
        let (ld, lc) = den
            .terms
            .iter()
            .next_back()
            .map(|(e, c)| (e.clone(), c.clone()))
            .ok_or_else(|| Error::Domain("division by zero polynomial".into()))?;
        let den = den.clone().without_caps();
        let mut rem = self.clone().without_caps();
        let mut quo = Self::zero(self.nvars);
        while let Some((lt, lrc)) = rem.terms.iter().next_back().map(|(e, c)| (e.clone(), c.clone())) {
            let inexact = || Error::InexactDivision { remainder: format!("{} terms", rem.len()) };
            if lt.iter().zip(&ld).any(|(a, b)| a < b) {
                return Err(inexact());
            }
            let qc = lrc.exact_div(&lc).map_err(|_| inexact())?;
            let qe: Exponent = lt.iter().zip(&ld).map(|(a, b)| a - b).collect();
            let qt = Self::monomial(self.nvars, qe.clone(), qc.clone());
            rem = &rem - &(&qt * &den);
            quo.add_term(qe, qc);
        }
        Ok(quo)
    }

    /// (f(…, x_{i+1}, x_i, …) − f) / (x_{i+1} − x_i), computed per monomial.
    pub fn divided_difference(&self, i: usize) -> Self {
        let j = i + 1;
        let mut out = Self::zero(self.nvars);
        for (e, c) in &self.terms {
            let (a, b) = (e[i], e[j]);
            if a == b {
                continue;
            }
            // x^a y^b with x=x_i, y=x_j: (x^b y^a − x^a y^b)/(y − x).
            let (lo, hi, sign) = if a < b { (a, b, false) } else { (b, a, true) };
            // x^lo y^lo (x^{d} − y^{d})/(y − x) with d = hi − lo, times −1 when a > b.
            // (x^d − y^d)/(y − x) = −Σ_{k=0}^{d−1} x^k y^{d−1−k}.
            let d = hi - lo;
            let term = if sign { c.clone() } else { c.negated() };
            for k in 0..d {
                let mut ne = e.clone();
                ne[i] = lo + k;
                ne[j] = lo + d - 1 - k;
                out.add_term(ne, term.clone());
            }
        }
        out
    }
}

impl<'a, C: Ring> std::ops::Add<&'a MultiPoly<C>> for &'a MultiPoly<C> {
    type Output = MultiPoly<C>;
    fn add(self, rhs: &MultiPoly<C>) -> MultiPoly<C> {
        assert_eq!(self.nvars, rhs.nvars);
        let mut out = self.clone();
        out.caps = merge_caps(&self.caps, &rhs.caps);
        if out.caps.is_some() {
            let caps = out.caps.clone();
            out.terms.retain(|e, _| fits(e, &caps));
        }
        for (e, c) in &rhs.terms {
            out.add_term(e.clone(), c.clone());
        }
        out
    }
}

impl<'a, C: Ring> std::ops::Sub<&'a MultiPoly<C>> for &'a MultiPoly<C> {
    type Output = MultiPoly<C>;
    fn sub(self, rhs: &MultiPoly<C>) -> MultiPoly<C> {
        self + &(-rhs)
    }
}

impl<C: Ring> std::ops::Neg for &MultiPoly<C> {
    type Output = MultiPoly<C>;
    fn neg(self) -> MultiPoly<C> {
        MultiPoly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(e, c)| (e.clone(), c.negated())).collect(),
            caps: self.caps.clone(),
        }
    }
}

impl<'a, C: Ring> std::ops::Mul<&'a MultiPoly<C>> for &'a MultiPoly<C> {
    type Output = MultiPoly<C>;
    fn mul(self, rhs: &MultiPoly<C>) -> MultiPoly<C> {
        assert_eq!(self.nvars, rhs.nvars);
        let mut out = MultiPoly::zero(self.nvars);
        out.caps = merge_caps(&self.caps, &rhs.caps);
        let mut buf = vec![0u32; self.nvars];
        for (e1, c1) in &self.terms {
            for (e2, c2) in &rhs.terms {
                for k in 0..self.nvars {
                    buf[k] = e1[k] + e2[k];
                }
                if !fits(&buf, &out.caps) {
                    continue;
                }
                out.add_term(buf.clone(), c1.times(c2));
            }
        }
        out
    }
}

impl<C: Ring> std::ops::Add for MultiPoly<C> {
    type Output = MultiPoly<C>;
    fn add(self, rhs: Self) -> Self {
        &self + &rhs
    }
}

impl<C: Ring> std::ops::Sub for MultiPoly<C> {
    type Output = MultiPoly<C>;
    fn sub(self, rhs: Self) -> Self {
        &self - &rhs
    }
}

impl<C: Ring> std::ops::Mul for MultiPoly<C> {
    type Output = MultiPoly<C>;
    fn mul(self, rhs: Self) -> Self {
        &self * &rhs
    }
}

impl<C: Ring> std::ops::Neg for MultiPoly<C> {
    type Output = MultiPoly<C>;
    fn neg(self) -> Self {
        -&self
    }
}

impl<C: Ring + fmt::Display> MultiPoly<C> {
    /// Renders with the given variable stem, e.g. `z` gives `z1, z2, …`.
    pub fn display_with(&self, stem: &str) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        let mut parts = Vec::new();
        for (e, c) in self.terms.iter().rev() {
            let mono: Vec<String> = e
                .iter()
                .enumerate()
                .filter(|(_, &k)| k > 0)
                .map(|(i, &k)| if k == 1 { format!("{stem}{}", i + 1) } else { format!("{stem}{}^{k}", i + 1) })
                .collect();
            let cs = format!("({c})");
            if mono.is_empty() {
                parts.push(cs);
            } else if c.is_one() {
                parts.push(mono.join("*"));
            } else {
                parts.push(format!("{cs}*{}", mono.join("*")));
            }
        }
        parts.join(" + ")
    }
}

impl<C: Ring + fmt::Display> fmt::Display for MultiPoly<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.display_with("x"))
    }
}
