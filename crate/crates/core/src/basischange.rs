//! Change of basis between link patterns and arch-opening sequences.
//!
//! For a non-decreasing sequence `a` and an even pattern π,
//! C_{a,π} = ∏_{arches (i, π(i))} U_{μ(a,i)} with
//! μ(a,i) = #{j : i ≤ a_j < π(i)} − (π(i) − i + 1)/2.

use rayon::prelude::*;

use crate::error::{domain, Error, Result};
use crate::exactalg::{cheb_u, cheb_u_ext, TauPoly};
use crate::linkpat::{enumerate, LinkPattern};
use crate::report::Report;

fn mu(a: &[usize], open: usize, close: usize) -> i64 {
    let under = a.iter().filter(|&&x| open <= x && x < close).count() as i64;
    under - (close - open).div_ceil(2) as i64
}

/// Closed-form entry for any sequence of positions (no range checks).
pub fn c_entry_unchecked(a: &[usize], pi: &LinkPattern) -> TauPoly {
    let mut acc = TauPoly::one();
    for (i, j) in pi.arches() {
        let m = mu(a, i, j);
        if m < 0 {
            return TauPoly::zero();
        }
        acc = &acc * &cheb_u(m).expect("nonnegative index");
        if acc.is_zero() {
            break;
        }
    }
    acc
}

fn check_sequence(a: &[usize], pi: &LinkPattern) -> Result<()> {
    if pi.is_odd() {
        return domain("change of basis is defined on even sizes only");
    }
    let n = pi.half_size();
    if a.len() != n {
        return domain(format!("sequence length {} differs from half-size {n}", a.len()));
    }
    if a.windows(2).any(|w| w[0] > w[1]) {
        return domain("sequence must be non-decreasing");
    }
    if a.iter().any(|&x| x < 1 || x > 2 * n - 1) {
        return domain(format!("entries must lie in 1..={}", 2 * n - 1));
    }
    Ok(())
}

/// C_{a,π} by the closed product formula.
pub fn c_entry(a: &[usize], pi: &LinkPattern) -> Result<TauPoly> {
    check_sequence(a, pi)?;
    Ok(c_entry_unchecked(a, pi))
}

/// C_{a,π} by repeatedly removing a little arch (i,i+1) that carries m of the
/// a's, with factor U_{m−1}; the other m−1 a's and those on the neighbouring
/// segments are merged onto the segment left of the removed arch.
pub fn c_entry_by_arch_removal(a: &[usize], pi: &LinkPattern) -> Result<TauPoly> {
    check_sequence(a, pi)?;
    let n = pi.size();
    // weight[s] = number of a's on segment s (between points s and s+1).
    let mut weight = vec![0i64; n + 1];
    for &x in a {
        weight[x] += 1;
    }
    let mut pair: Vec<usize> = pi.pairs().to_vec();
    let mut acc = TauPoly::one();
    while !pair.is_empty() {
        let len = pair.len();
        let i = (1..len).find(|&i| pair[i - 1] == i + 1).ok_or_else(|| Error::Domain("no little arch".into()))?;
        let m = weight[i];
        acc = &acc * &cheb_u(m - 1).expect("index at least -1");
        if acc.is_zero() {
            return Ok(acc);
        }
        let mut nw = vec![0i64; len - 1];
        for (s, &w) in weight.iter().enumerate() {
            let t = if s + 1 < i {
                s
            } else if s <= i + 1 {
                i - 1
            } else {
                s - 2
            };
            nw[t] += if s == i { w - 1 } else { w };
        }
        weight = nw;
        let mut np = Vec::with_capacity(len - 2);
        for (k, &j) in pair.iter().enumerate() {
            let p = k + 1;
            if p == i || p == i + 1 {
                continue;
            }
            let shift = |x: usize| if x > i + 1 { x - 2 } else { x };
            np.push(shift(j));
        }
        pair = np;
    }
    Ok(acc)
}

/// Square matrix indexed by link patterns in canonical order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BasisMatrix {
    pub n: usize,
    pub index: Vec<LinkPattern>,
    pub entries: Vec<Vec<TauPoly>>,
}

impl BasisMatrix {
    pub fn dim(&self) -> usize {
        self.index.len()
    }

    pub fn get(&self, row: usize, col: usize) -> &TauPoly {
        &self.entries[row][col]
    }

    pub fn identity(n: usize) -> Self {
        let index = enumerate(2 * n);
        let d = index.len();
        let entries = (0..d)
            .map(|i| (0..d).map(|j| if i == j { TauPoly::one() } else { TauPoly::zero() }).collect())
            .collect();
        BasisMatrix { n, index, entries }
    }

    pub fn is_lower_unitriangular(&self) -> bool {
        let d = self.dim();
        (0..d).all(|i| {
            self.entries[i][i] == TauPoly::one() && (i + 1..d).all(|j| self.entries[i][j].is_zero())
        })
    }

    /// Inverse of a lower unitriangular matrix by forward substitution; no
    /// division is needed.
    pub fn invert(&self) -> Result<BasisMatrix> {
        if !self.is_lower_unitriangular() {
            return Err(Error::Verification("matrix is not lower unitriangular".into()));
        }
        let d = self.dim();
        let mut x = vec![vec![TauPoly::zero(); d]; d];
        for i in 0..d {
            x[i][i] = TauPoly::one();
            for j in (0..i).rev() {
                let mut s = TauPoly::zero();
                for k in j..i {
                    let c = &self.entries[i][k];
                    if !c.is_zero() && !x[k][j].is_zero() {
                        s += &(c * &x[k][j]);
                    }
                }
                x[i][j] = -&s;
            }
        }
        Ok(BasisMatrix { n: self.n, index: self.index.clone(), entries: x })
    }

    pub fn mul(&self, other: &BasisMatrix) -> BasisMatrix {
        let d = self.dim();
        let entries = (0..d)
            .into_par_iter()
            .map(|i| {
                (0..d)
                    .map(|j| {
                        let mut s = TauPoly::zero();
                        for k in 0..d {
                            if !self.entries[i][k].is_zero() && !other.entries[k][j].is_zero() {
                                s += &(&self.entries[i][k] * &other.entries[k][j]);
                            }
                        }
                        s
                    })
                    .collect()
            })
            .collect();
        BasisMatrix { n: self.n, index: self.index.clone(), entries }
    }

    pub fn apply(&self, v: &[TauPoly]) -> Vec<TauPoly> {
        self.entries
            .iter()
            .map(|row| {
                row.iter().zip(v).filter(|(c, x)| !c.is_zero() && !x.is_zero()).fold(TauPoly::zero(), |acc, (c, x)| {
                    &acc + &(c * x)
                })
            })
            .collect()
    }
}

/// C with rows indexed by the openings of α and columns by π.
pub fn build_matrix(n: usize) -> Result<BasisMatrix> {
    if n == 0 {
        return domain("half-size must be positive");
    }
    let index = enumerate(2 * n);
    let entries = index
        .par_iter()
        .map(|alpha| {
            let a = alpha.openings();
            index.iter().map(|pi| c_entry_unchecked(&a, pi)).collect()
        })
        .collect();
    Ok(BasisMatrix { n, index, entries })
}

pub fn invert(c: &BasisMatrix) -> Result<BasisMatrix> {
    c.invert()
}

/// `a` with one occurrence of `from` replaced by `to`, re-sorted.
fn move_one(a: &[usize], from: usize, to: usize) -> Vec<usize> {
    let mut b = a.to_vec();
    let k = b.iter().position(|&x| x == from).expect("value present");
    b[k] = to;
    b.sort_unstable();
    b
}

/// Compares both sides of the e_i action on arch-opening components over
/// every pattern of size 2n:
/// (e_i Ψ)_a = U_{k−1}U_{k−4} Ψ_a − U_{k−1}U_{k−3}(Ψ_{a: i→i−1} + Ψ_{a: i→i+1})
///           + U_{k−1}U_{k−2} Ψ_{a: i→i−1, i→i+1},
/// with k the multiplicity of i in a.
pub fn verify_e_action(n: usize, i: usize, a: &[usize]) -> Result<Report> {
    if i == 0 || i >= 2 * n {
        return domain(format!("generator e_{i} undefined for size {}", 2 * n));
    }
    if a.len() != n || a.windows(2).any(|w| w[0] > w[1]) {
        return domain("sequence must be non-decreasing of length n");
    }
    let k = a.iter().filter(|&&x| x == i).count() as i64;
    let u = cheb_u_ext;
    let mut report = Report::new();
    let patterns = enumerate(2 * n);
    let (c0, c1, c2) = (&u(k - 1) * &u(k - 4), &u(k - 1) * &u(k - 3), &u(k - 1) * &u(k - 2));
    let down = (k >= 1).then(|| move_one(a, i, i - 1));
    let up = (k >= 1).then(|| move_one(a, i, i + 1));
    let both = (k >= 2).then(|| move_one(&move_one(a, i, i - 1), i, i + 1));
    for pi in &patterns {
        let (img, w, _) = pi.apply_e(i)?;
        let lhs = &w * &c_entry_unchecked(a, &img);
        let mut rhs = TauPoly::zero();
        if k >= 1 {
            rhs += &(&c0 * &c_entry_unchecked(a, pi));
            let side = &c_entry_unchecked(down.as_ref().unwrap(), pi) + &c_entry_unchecked(up.as_ref().unwrap(), pi);
            rhs -= &(&c1 * &side);
            if let Some(b) = &both {
                rhs += &(&c2 * &c_entry_unchecked(b, pi));
            }
        }
        report.check(
            format!("e_{i} on a={a:?}, pattern {pi}"),
            lhs == rhs,
            format!("lhs {lhs}, rhs {rhs}"),
        );
    }
    Ok(report)
}

/// All non-decreasing sequences of length n with 1 ≤ a_j ≤ 2j − 1.
pub fn admissible_sequences(n: usize) -> Vec<Vec<usize>> {
    fn rec(j: usize, n: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if j > n {
            out.push(cur.clone());
            return;
        }
        let lo = cur.last().copied().unwrap_or(1);
        for x in lo..=2 * j - 1 {
            cur.push(x);
            rec(j + 1, n, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(1, n, &mut Vec::new(), &mut out);
    out
}

/// Exhaustive sweep of [`verify_e_action`] over all i and admissible a.
pub fn verify_e_action_sweep(n: usize) -> Result<Report> {
    let seqs = admissible_sequences(n);
    let parts: Vec<Result<Report>> = (1..2 * n)
        .into_par_iter()
        .flat_map_iter(|i| seqs.iter().map(move |a| verify_e_action(n, i, a)))
        .collect();
    let mut total = Report::new();
    let mut count = 0usize;
    let mut bad = Vec::new();
    for r in parts {
        let r = r?;
        count += r.len();
        bad.extend(r.failures().map(|c| format!("{} ({})", c.name, c.detail)));
    }
    total.check(
        format!("e_i action on arch-opening components, n={n}"),
        bad.is_empty(),
        if bad.is_empty() { format!("{count} pattern coefficients agree") } else { bad.join("; ") },
    );
    Ok(total)
}

/// The three Chebyshev identities behind the e_i action, for all parameters
/// 0 ≤ k, p, q ≤ `bound`.
pub fn verify_chebyshev_cases(bound: i64) -> Report {
    let u = cheb_u_ext;
    let tau = TauPoly::tau();
    let mut report = Report::new();
    let mut little = Vec::new();
    let mut nested = Vec::new();
    let mut adjacent = Vec::new();
    for k in 0..=bound {
        let (a, b, c, d) = (u(k - 1), u(k - 2), u(k - 3), u(k - 4));
        let lhs = &tau * &a;
        let rhs = &(&(&(&a * &d) * &a) - &(&(&(&a * &c) * &b) * &TauPoly::from_i64(2))) + &(&(&a * &b) * &c);
        if lhs != rhs {
            little.push(format!("k={k}"));
        }
        for p in 0..=bound {
            for q in 0..=bound {
                let s = k + p + q;
                let lhs = &a * &u(q - 1);
                let rhs = &(&(&(&(&a * &d) * &u(p - 1)) * &u(s - 2)) - &(&(&(&a * &c) * &u(p - 1)) * &u(s - 3)))
                    - &(&(&(&(&a * &c) * &u(p)) * &u(s - 2)) - &(&(&(&a * &b) * &u(p)) * &u(s - 3)));
                if lhs != rhs {
                    nested.push(format!("k={k},p={p},q={q}"));
                }
                let lhs = &a * &u(s - 2);
                let rhs = &(&(&(&(&a * &d) * &u(p - 1)) * &u(q - 1)) - &(&(&(&a * &c) * &u(p)) * &u(q - 1)))
                    - &(&(&(&(&a * &c) * &u(p - 1)) * &u(q)) - &(&(&(&a * &b) * &u(p)) * &u(q)));
                if lhs != rhs {
                    adjacent.push(format!("k={k},p={p},q={q}"));
                }
            }
        }
    }
    for (name, bad) in [("little-arch case", little), ("nested-openings case", nested), ("closing-opening case", adjacent)] {
        report.check(
            format!("Chebyshev identity, {name}, parameters ≤ {bound}"),
            bad.is_empty(),
            if bad.is_empty() { "holds".to_string() } else { format!("fails at {}", bad.join(" ")) },
        );
    }
    report
}

/// deg C_{α,π} = h(π,α) − h(π,π) on every nonzero entry.
pub fn verify_degree_law(c: &BasisMatrix) -> Report {
    let mut report = Report::new();
    let mut bad = Vec::new();
    let mut nonzero = 0;
    for (r, alpha) in c.index.iter().enumerate() {
        for (s, pi) in c.index.iter().enumerate() {
            let e = &c.entries[r][s];
            if let Some(d) = e.degree() {
                nonzero += 1;
                let expect = pi.h_weight(alpha) as i64 - pi.h_weight(pi) as i64;
                if d as i64 != expect {
                    bad.push(format!("({alpha},{pi}): degree {d}, expected {expect}"));
                }
            }
        }
    }
    report.check(
        format!("degree law, n={}", c.n),
        bad.is_empty(),
        if bad.is_empty() { format!("{nonzero} nonzero entries") } else { bad.join("; ") },
    );
    report
}

/// Triangularity, agreement of both entry routes, C·C⁻¹ = I and integrality of
/// the inverse.
pub fn verify_matrix(n: usize, with_degree_law: bool) -> Result<Report> {
    let c = build_matrix(n)?;
    let mut report = Report::new();
    report.check(format!("C lower unitriangular, n={n}"), c.is_lower_unitriangular(), format!("dimension {}", c.dim()));
    let mut mismatch = Vec::new();
    for (r, alpha) in c.index.iter().enumerate() {
        let a = alpha.openings();
        for (s, pi) in c.index.iter().enumerate() {
            if c_entry_by_arch_removal(&a, pi)? != c.entries[r][s] {
                mismatch.push(format!("({alpha},{pi})"));
            }
        }
    }
    report.check(
        format!("product formula and little-arch removal agree, n={n}"),
        mismatch.is_empty(),
        if mismatch.is_empty() { "all entries".to_string() } else { mismatch.join(" ") },
    );
    let inv = c.invert()?;
    report.check(
        format!("C times its inverse is the identity, n={n}"),
        c.mul(&inv) == BasisMatrix::identity(n),
        "forward substitution, no division",
    );
    if with_degree_law {
        report.merge(verify_degree_law(&c));
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn diagonal_is_one() {
        for n in 1..=4 {
            for pi in enumerate(2 * n) {
                assert_eq!(c_entry(&pi.openings(), &pi).unwrap(), TauPoly::one(), "{pi}");
            }
        }
    }

    #[test]
    fn small_entries() {
        let r4 = LinkPattern::rainbow(4);
        assert!(c_entry(&[1, 3], &r4).unwrap().is_zero());
        let r6 = LinkPattern::rainbow(6);
        assert_eq!(c_entry(&[1, 3, 4], &r6).unwrap(), TauPoly::one());
        assert!(c_entry(&[0, 3], &r4).is_err());
        assert!(c_entry(&[3, 1], &r4).is_err());
    }

    #[test]
    fn small_matrices() {
        assert_eq!(build_matrix(1).unwrap(), BasisMatrix::identity(1));
        assert_eq!(build_matrix(2).unwrap(), BasisMatrix::identity(2));
        let c = build_matrix(3).unwrap();
        let r = c.index.iter().position(|p| p.openings() == vec![1, 3, 4]).unwrap();
        let s = c.index.iter().position(|p| *p == LinkPattern::rainbow(6)).unwrap();
        for i in 0..c.dim() {
            for j in 0..c.dim() {
                let expect = if i == j || (i, j) == (r, s) { TauPoly::one() } else { TauPoly::zero() };
                assert_eq!(c.entries[i][j], expect);
            }
        }
    }

    #[test]
    fn removal_agrees_with_formula_on_weak_sequences() {
        for n in 1..=3 {
            for a in admissible_sequences(n) {
                for pi in enumerate(2 * n) {
                    assert_eq!(c_entry(&a, &pi).unwrap(), c_entry_by_arch_removal(&a, &pi).unwrap(), "{a:?} {pi}");
                }
            }
        }
    }

    #[test]
    fn e_action_small_cases() {
        let r = verify_e_action(2, 1, &[1, 1]).unwrap();
        assert!(r.passed(), "{r}");
        let r = verify_e_action(2, 2, &[1, 3]).unwrap();
        assert!(r.passed(), "{r}");
    }

    #[test]
    fn e_action_sweep_small_sizes() {
        for n in 1..=3 {
            let r = verify_e_action_sweep(n).unwrap();
            assert!(r.passed(), "{r}");
        }
    }

    #[test]
    fn chebyshev_cases() {
        let r = verify_chebyshev_cases(4);
        assert!(r.passed(), "{r}");
    }

    #[test]
    fn matrix_checks() {
        for n in 1..=3 {
            let r = verify_matrix(n, true).unwrap();
            assert!(r.passed(), "{r}");
        }
    }
}
