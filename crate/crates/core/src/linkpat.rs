//! Link patterns on N points, their Dyck paths and the Temperley–Lieb action.
//!
//! Points are numbered 1..=N. A pattern stores, for each point, its partner or
//! 0 for the unmatched point of an odd-size pattern. The canonical order on
//! patterns of one size is lexicographic on up-step positions.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use crate::error::{domain, Error, Result};
use crate::exactalg::TauPoly;
use crate::report::Report;

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct LinkPattern {
    pair: Vec<usize>,
}

/// Heights h_0..h_N of a Dyck path. For odd N the stored path ends at height
/// 1; [`DyckPath::completed`] appends the final down-step.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct DyckPath {
    pub heights: Vec<u32>,
}

impl DyckPath {
    pub fn size(&self) -> usize {
        self.heights.len() - 1
    }

    pub fn completed(&self) -> Vec<u32> {
        let mut h = self.heights.clone();
        if self.size() % 2 == 1 {
            h.push(0);
        }
        h
    }
}

/// Local shape of the Dyck path at point i, as seen by e_i.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum ECase {
    Min,
    Max,
    Slope,
}

impl LinkPattern {
    /// Builds a pattern from its 1-indexed partner list (0 = unmatched).
    pub fn from_pairs(pair: Vec<usize>) -> Result<Self> {
        let n = pair.len();
        if n == 0 {
            return domain("empty pattern");
        }
        let free: Vec<usize> = (1..=n).filter(|&i| pair[i - 1] == 0).collect();
        if free.len() != n % 2 {
            return domain(format!("expected {} unmatched points, found {}", n % 2, free.len()));
        }
        for i in 1..=n {
            let j = pair[i - 1];
            if j == 0 {
                continue;
            }
            if j > n || j == i || pair[j - 1] != i {
                return domain(format!("pairing is not an involution at point {i}"));
            }
        }
        let p = LinkPattern { pair };
        for (a, b) in p.arches() {
            for (c, d) in p.arches() {
                if a < c && c < b && b < d {
                    return domain(format!("arches ({a},{b}) and ({c},{d}) cross"));
                }
            }
            if let Some(u) = p.unmatched() {
                if a < u && u < b {
                    return domain(format!("unmatched point {u} lies under arch ({a},{b})"));
                }
            }
        }
        Ok(p)
    }

    /// Builds a pattern of size `n` from its arches.
    pub fn from_arches(n: usize, arches: &[(usize, usize)]) -> Result<Self> {
        let mut pair = vec![0; n];
        for &(a, b) in arches {
            if a == 0 || b == 0 || a > n || b > n || pair[a - 1] != 0 || pair[b - 1] != 0 {
                return domain(format!("invalid arch ({a},{b})"));
            }
            pair[a - 1] = b;
            pair[b - 1] = a;
        }
        Self::from_pairs(pair)
    }

    /// Nested arches (i, N+1−i); for odd N point 1 is unmatched and the
    /// remaining points form the rainbow. Minimum of the containment order.
    pub fn rainbow(n: usize) -> Self {
        let off = n % 2;
        let m = n - off;
        let arches: Vec<(usize, usize)> = (1..=m / 2).map(|i| (off + i, off + m + 1 - i)).collect();
        Self::from_arches(n, &arches).expect("rainbow is valid")
    }

    /// Little arches (1,2),(3,4),…; for odd N the last point is unmatched.
    /// Maximum of the containment order.
    pub fn pmax(n: usize) -> Self {
        let arches: Vec<(usize, usize)> = (0..n / 2).map(|k| (2 * k + 1, 2 * k + 2)).collect();
        Self::from_arches(n, &arches).expect("little-arch pattern is valid")
    }

    pub fn size(&self) -> usize {
        self.pair.len()
    }

    /// Number of arches.
    pub fn half_size(&self) -> usize {
        self.pair.len() / 2
    }

    pub fn is_odd(&self) -> bool {
        self.pair.len() % 2 == 1
    }

    pub fn pairs(&self) -> &[usize] {
        &self.pair
    }

    pub fn partner(&self, i: usize) -> Option<usize> {
        match self.pair[i - 1] {
            0 => None,
            j => Some(j),
        }
    }

    pub fn unmatched(&self) -> Option<usize> {
        self.pair.iter().position(|&j| j == 0).map(|k| k + 1)
    }

    /// Arches (opening, closing) ordered by opening.
    pub fn arches(&self) -> Vec<(usize, usize)> {
        (1..=self.size()).filter(|&i| self.pair[i - 1] > i).map(|i| (i, self.pair[i - 1])).collect()
    }

    fn is_up(&self, i: usize) -> bool {
        let j = self.pair[i - 1];
        j == 0 || j > i
    }

    /// Positions of up-steps: arch openings plus the unmatched point.
    pub fn up_steps(&self) -> Vec<usize> {
        (1..=self.size()).filter(|&i| self.is_up(i)).collect()
    }

    /// Arch openings a_1 < … < a_n.
    pub fn openings(&self) -> Vec<usize> {
        self.arches().into_iter().map(|(a, _)| a).collect()
    }

    /// Closings b_i: arch openings of the mirror image.
    pub fn closings(&self) -> Vec<usize> {
        self.mirror().openings()
    }

    /// Reflection j ↦ N+1−j.
    pub fn mirror(&self) -> Self {
        let n = self.size();
        let mut pair = vec![0; n];
        for i in 1..=n {
            let j = self.pair[i - 1];
            if j != 0 {
                pair[n - i] = n + 1 - j;
            }
        }
        LinkPattern { pair }
    }

    pub fn to_dyck(&self) -> DyckPath {
        let mut h = vec![0u32];
        for i in 1..=self.size() {
            let last = *h.last().unwrap();
            h.push(if self.is_up(i) { last + 1 } else { last - 1 });
        }
        DyckPath { heights: h }
    }

    pub fn from_dyck(path: &DyckPath) -> Result<Self> {
        let h = &path.heights;
        let n = path.size();
        if h.first() != Some(&0) || h.last() != Some(&((n % 2) as u32)) {
            return domain("path has wrong endpoints");
        }
        let mut pair = vec![0; n];
        let mut stack = Vec::new();
        for i in 1..=n {
            if h[i] == h[i - 1] + 1 {
                stack.push(i);
            } else if h[i] + 1 == h[i - 1] {
                let j = stack.pop().ok_or_else(|| Error::Domain("path goes negative".into()))?;
                pair[i - 1] = j;
                pair[j - 1] = i;
            } else {
                return domain("path steps must be ±1");
            }
        }
        Self::from_pairs(pair)
    }

    /// Heights of the completed (even-length) path, h_0..h_{2⌈N/2⌉}.
    pub fn heights(&self) -> Vec<u32> {
        self.to_dyck().completed()
    }

    /// β(π) = Σ over ascents of (h_i − 1).
    pub fn box_count(&self) -> u32 {
        let h = self.heights();
        (1..h.len()).filter(|&i| h[i] > h[i - 1]).map(|i| h[i] - 1).sum()
    }

    /// True when points i and i+1 are joined.
    pub fn has_little_arch(&self, i: usize) -> bool {
        i >= 1 && i < self.size() && self.pair[i - 1] == i + 1
    }

    /// Shape of the path at vertex i: local maximum exactly when (i, i+1) is
    /// a little arch.
    pub fn case_at(&self, i: usize) -> ECase {
        let h = self.heights();
        let (a, b, c) = (h[i - 1], h[i], h[i + 1]);
        if a < b && b > c {
            ECase::Max
        } else if a > b && b < c {
            ECase::Min
        } else {
            ECase::Slope
        }
    }

    /// Action of e_i (1 ≤ i < N): returns the image pattern and its weight.
    pub fn apply_e(&self, i: usize) -> Result<(LinkPattern, TauPoly, ECase)> {
        if i == 0 || i >= self.size() {
            return domain(format!("e_{i} undefined on {} points", self.size()));
        }
        let case = self.case_at(i);
        if self.has_little_arch(i) {
            return Ok((self.clone(), TauPoly::tau(), case));
        }
        let mut p = self.pair.clone();
        let (a, b) = (p[i - 1], p[i]);
        if a != 0 {
            p[a - 1] = b;
        }
        if b != 0 {
            p[b - 1] = a;
        }
        p[i - 1] = i + 1;
        p[i] = i;
        Ok((LinkPattern { pair: p }, TauPoly::one(), case))
    }

    /// h(π, α) = Σ over up-step positions i of α of h_i(π).
    pub fn h_weight(&self, alpha: &LinkPattern) -> u32 {
        let h = self.heights();
        alpha.up_steps().iter().map(|&i| h[i]).sum()
    }

    /// Pointwise path comparison: true when the path of `self` lies weakly
    /// above that of `other`, i.e. self ≤ other in the containment order.
    pub fn contains(&self, other: &LinkPattern) -> bool {
        let (a, b) = (self.heights(), other.heights());
        a.len() == b.len() && a.iter().zip(&b).all(|(x, y)| x >= y)
    }

    /// Strict containment order: self < other.
    pub fn precedes(&self, other: &LinkPattern) -> bool {
        self != other && self.contains(other)
    }

    /// Odd size 2n+1 ↦ even size 2n+2: the unmatched point is joined to a new
    /// rightmost point.
    pub fn embed_odd(&self) -> Result<LinkPattern> {
        let u = self.unmatched().ok_or_else(|| Error::Domain("pattern has even size".into()))?;
        let mut p = self.pair.clone();
        let n1 = p.len() + 1;
        p[u - 1] = n1;
        p.push(u);
        Ok(LinkPattern { pair: p })
    }

    /// Even size ↦ odd size: the arch ending at the last point is erased and
    /// its opening becomes the unmatched point.
    pub fn erase_rightmost_arch(&self) -> Result<LinkPattern> {
        if self.is_odd() {
            return domain("pattern has odd size");
        }
        let mut p = self.pair.clone();
        let j = p.pop().unwrap();
        p[j - 1] = 0;
        Ok(LinkPattern { pair: p })
    }

    /// Dyck word: `(` opening, `)` closing, `|` unmatched.
    pub fn to_word(&self) -> String {
        (1..=self.size())
            .map(|i| match self.pair[i - 1] {
                0 => '|',
                j if j > i => '(',
                _ => ')',
            })
            .collect()
    }
}

impl Ord for LinkPattern {
    fn cmp(&self, other: &Self) -> Ordering {
        self.size().cmp(&other.size()).then_with(|| self.up_steps().cmp(&other.up_steps()))
    }
}

impl PartialOrd for LinkPattern {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for LinkPattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_word())
    }
}

impl FromStr for LinkPattern {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let n = s.chars().count();
        let mut pair = vec![0; n];
        let mut stack = Vec::new();
        for (k, ch) in s.chars().enumerate() {
            let i = k + 1;
            match ch {
                '(' => stack.push(i),
                ')' => {
                    let j = stack.pop().ok_or_else(|| Error::Domain(format!("unbalanced word {s}")))?;
                    pair[i - 1] = j;
                    pair[j - 1] = i;
                }
                '|' => {}
                _ => return domain(format!("unexpected character {ch:?} in {s}")),
            }
        }
        if !stack.is_empty() {
            return domain(format!("unbalanced word {s}"));
        }
        Self::from_pairs(pair)
    }
}

pub fn catalan(n: usize) -> u64 {
    let mut c: u64 = 1;
    for k in 0..n as u64 {
        c = c * 2 * (2 * k + 1) / (k + 2);
    }
    c
}

/// All patterns on N points in canonical order.
pub fn enumerate(n: usize) -> Vec<LinkPattern> {
    fn rec(i: usize, n: usize, stack: &mut Vec<usize>, pair: &mut Vec<usize>, out: &mut Vec<LinkPattern>) {
        if i > n {
            if stack.len() == n % 2 {
                out.push(LinkPattern { pair: pair.clone() });
            }
            return;
        }
        let remaining = n - i + 1;
        if stack.len() < remaining + n % 2 {
            stack.push(i);
            rec(i + 1, n, stack, pair, out);
            stack.pop();
        }
        if !stack.is_empty() {
            let j = stack.pop().unwrap();
            pair[i - 1] = j;
            pair[j - 1] = i;
            rec(i + 1, n, stack, pair, out);
            pair[i - 1] = 0;
            pair[j - 1] = 0;
            stack.push(j);
        }
    }
    if n == 0 {
        return Vec::new();
    }
    let mut out = Vec::new();
    rec(1, n, &mut Vec::new(), &mut vec![0; n], &mut out);
    out.sort();
    out
}

/// Position of every pattern in canonical order.
pub fn index_map(patterns: &[LinkPattern]) -> BTreeMap<LinkPattern, usize> {
    patterns.iter().cloned().enumerate().map(|(k, p)| (p, k)).collect()
}

/// Element of the free TauPoly-module on link patterns.
pub type TlVector = BTreeMap<LinkPattern, TauPoly>;

/// e_i applied to a linear combination of patterns.
pub fn apply_e_vec(i: usize, v: &TlVector) -> Result<TlVector> {
    let mut out = TlVector::new();
    for (p, c) in v {
        let (img, w, _) = p.apply_e(i)?;
        let term = &w * c;
        let slot = out.entry(img).or_insert_with(TauPoly::zero);
        *slot += &term;
    }
    out.retain(|_, c| !c.is_zero());
    Ok(out)
}

/// Temperley–Lieb relations on the pattern span of size N:
/// e_i² = τ e_i, e_i e_{i±1} e_i = e_i and e_i e_j = e_j e_i for |i − j| ≥ 2.
pub fn verify_tl_relations(size: usize) -> Result<Report> {
    let mut r = Report::new();
    let pats = enumerate(size);
    let basis: Vec<TlVector> = pats.iter().map(|p| BTreeMap::from([(p.clone(), TauPoly::one())])).collect();
    let tau = TauPoly::tau();
    let (mut square, mut braid, mut commute) = (true, true, true);
    for v in &basis {
        for i in 1..size {
            let ev = apply_e_vec(i, v)?;
            let scaled: TlVector = ev.iter().map(|(p, c)| (p.clone(), &tau * c)).collect();
            square &= apply_e_vec(i, &ev)? == scaled;
            if i + 1 < size {
                braid &= apply_e_vec(i, &apply_e_vec(i + 1, &ev)?)? == ev;
                let e1 = apply_e_vec(i + 1, v)?;
                braid &= apply_e_vec(i + 1, &apply_e_vec(i, &e1)?)? == e1;
            }
            for j in i + 2..size {
                commute &= apply_e_vec(j, &ev)? == apply_e_vec(i, &apply_e_vec(j, v)?)?;
            }
        }
    }
    r.check(format!("e_i^2 = tau e_i, N={size}"), square, format!("{} patterns", pats.len()));
    r.check(format!("e_i e_(i+-1) e_i = e_i, N={size}"), braid, format!("{} patterns", pats.len()));
    r.check(format!("distant generators commute, N={size}"), commute, format!("{} patterns", pats.len()));
    Ok(r)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lp(s: &str) -> LinkPattern {
        s.parse().unwrap()
    }

    #[test]
    fn tl_relations() {
        for n in 2..=8 {
            let r = verify_tl_relations(n).unwrap();
            assert!(r.passed(), "{r}");
        }
    }

    #[test]
    fn counts() {
        assert_eq!(enumerate(2).len(), 1);
        assert_eq!(enumerate(4).len(), 2);
        assert_eq!(enumerate(3).len(), 2);
        for n in 1..=12 {
            assert_eq!(enumerate(n).len() as u64, catalan(n / 2 + n % 2), "N={n}");
        }
    }

    #[test]
    fn odd_order_and_exclusion() {
        let v = enumerate(3);
        assert_eq!(v[0], lp("|()"));
        assert_eq!(v[1], lp("()|"));
        assert!("(|)".parse::<LinkPattern>().is_err());
    }

    #[test]
    fn paths_and_boxes() {
        let r = LinkPattern::rainbow(4);
        assert_eq!(r.heights(), vec![0, 1, 2, 1, 0]);
        assert_eq!(r.box_count(), 1);
        let m = LinkPattern::pmax(4);
        assert_eq!(m.heights(), vec![0, 1, 0, 1, 0]);
        assert_eq!(m.box_count(), 0);
        let p = lp("(()(()))()");
        assert_eq!(p.to_dyck().heights, vec![0, 1, 2, 1, 2, 3, 2, 1, 0, 1, 0]);
        assert_eq!(LinkPattern::rainbow(8).box_count(), 6);
    }

    #[test]
    fn e_action() {
        let m = LinkPattern::pmax(4);
        let r = LinkPattern::rainbow(4);
        assert_eq!(m.apply_e(1).unwrap(), (m.clone(), TauPoly::tau(), ECase::Max));
        assert_eq!(m.apply_e(2).unwrap().0, r);
        assert_eq!(r.apply_e(1).unwrap().0, m);
        let odd = lp("|()");
        let (img, w, _) = odd.apply_e(1).unwrap();
        assert_eq!(img, lp("()|"));
        assert_eq!(w, TauPoly::one());
    }

    #[test]
    fn openings_closings_mirror() {
        let r = LinkPattern::rainbow(4);
        assert_eq!((r.openings(), r.closings()), (vec![1, 2], vec![1, 2]));
        let m = LinkPattern::pmax(4);
        assert_eq!((m.openings(), m.closings()), (vec![1, 3], vec![1, 3]));
        let p = LinkPattern::from_arches(6, &[(1, 2), (3, 6), (4, 5)]).unwrap();
        assert_eq!(p.openings(), vec![1, 3, 4]);
        assert_eq!(p.closings(), vec![1, 2, 5]);
        assert_eq!(lp("|()").closings(), vec![1]);
        assert_eq!(lp("()|").closings(), vec![2]);
    }

    #[test]
    fn h_weights() {
        let r = LinkPattern::rainbow(4);
        let m = LinkPattern::pmax(4);
        assert_eq!(r.h_weight(&r), 3);
        assert_eq!(m.h_weight(&m), 2);
    }

    #[test]
    fn embedding_roundtrip() {
        for n in [1usize, 3, 5, 7] {
            let odd = enumerate(n);
            let even = enumerate(n + 1);
            let img: Vec<_> = odd.iter().map(|p| p.embed_odd().unwrap()).collect();
            let mut sorted = img.clone();
            sorted.sort();
            assert_eq!(sorted, even);
            for (p, e) in odd.iter().zip(&img) {
                assert_eq!(&e.erase_rightmost_arch().unwrap(), p);
                assert_eq!(e.heights(), p.heights());
            }
        }
    }

    #[test]
    fn word_roundtrip() {
        for p in enumerate(7) {
            assert_eq!(p.to_word().parse::<LinkPattern>().unwrap(), p);
        }
    }

    #[test]
    fn rejects_bad_input() {
        assert!(LinkPattern::from_pairs(vec![3, 4, 1, 2]).is_err());
        assert!(LinkPattern::from_pairs(vec![2, 1, 0, 0]).is_err());
        assert!(LinkPattern::from_pairs(vec![]).is_err());
        assert!(LinkPattern::pmax(4).apply_e(4).is_err());
    }
}
