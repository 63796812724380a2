//! Brute-force enumerations: alternating sign matrices with vertical
//! symmetry, non-intersecting lattice paths, and triangular arrays.

use std::collections::HashSet;

use num_bigint::BigInt;
use rayon::prelude::*;

use crate::error::{domain, Error, Result};
use crate::exactalg::TauPoly;

/// Monotone triangles with bottom row 1..=n, listed as rows from top to bottom.
fn monotone_triangles(n: usize) -> Vec<Vec<Vec<usize>>> {
    fn rows_above(below: &[usize]) -> Vec<Vec<usize>> {
        let k = below.len() - 1;
        let mut out = Vec::new();
        let mut cur = Vec::with_capacity(k);
        fn rec(below: &[usize], k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
            let j = cur.len();
            if j == k {
                out.push(cur.clone());
                return;
            }
            let lo = match cur.last() {
                Some(&p) => below[j].max(p + 1),
                None => below[j],
            };
            for x in lo..=below[j + 1] {
                cur.push(x);
                rec(below, k, cur, out);
                cur.pop();
            }
        }
        rec(below, k, &mut cur, &mut out);
        out
    }
    let mut done = vec![vec![(1..=n).collect::<Vec<_>>()]];
    for _ in 1..n {
        done = done
            .into_iter()
            .flat_map(|tri| {
                let top = tri[0].clone();
                rows_above(&top).into_iter().map(move |r| {
                    let mut t = vec![r];
                    t.extend(tri.iter().cloned());
                    t
                })
            })
            .collect();
    }
    done
}

/// ASM of a monotone triangle: row k has +1 at columns entering the k-th
/// row set and −1 at columns leaving it.
fn asm_of(tri: &[Vec<usize>]) -> Vec<Vec<i8>> {
    let n = tri.len();
    let mut m = vec![vec![0i8; n]; n];
    let mut prev: HashSet<usize> = HashSet::new();
    for (k, row) in tri.iter().enumerate() {
        let cur: HashSet<usize> = row.iter().copied().collect();
        for &c in cur.difference(&prev) {
            m[k][c - 1] += 1;
        }
        for &c in prev.difference(&cur) {
            m[k][c - 1] -= 1;
        }
        prev = cur;
    }
    m
}

/// All alternating sign matrices of the given size.
pub fn asms(size: usize) -> Result<Vec<Vec<Vec<i8>>>> {
    if size == 0 || size > 7 {
        return domain(format!("ASM enumeration limited to sizes 1..=7, got {size}"));
    }
    Ok(monotone_triangles(size).iter().map(|t| asm_of(t)).collect())
}

pub fn is_vertically_symmetric(m: &[Vec<i8>]) -> bool {
    m.iter().all(|row| row.iter().eq(row.iter().rev()))
}

pub fn vsasm_count(size: usize) -> Result<u64> {
    if size.is_multiple_of(2) {
        return domain(format!("vertically symmetric ASMs need odd size, got {size}"));
    }
    Ok(asms(size)?.iter().filter(|m| is_vertically_symmetric(m)).count() as u64)
}

type Point = (i64, i64);

/// Lattice paths from (m, 1−m) to (e, 0) with steps (0,1) and (1,1).
fn paths(m: i64, e: i64) -> Vec<Vec<Point>> {
    let steps = (m - 1) as usize;
    let mut out = Vec::new();
    for mask in 0u32..1 << steps {
        if mask.count_ones() as i64 != e - m {
            continue;
        }
        let mut p = (m, 1 - m);
        let mut pts = vec![p];
        for s in 0..steps {
            p = (p.0 + ((mask >> s) & 1) as i64, p.1 + 1);
            pts.push(p);
        }
        out.push(pts);
    }
    out
}

/// Number of vertex-disjoint path families joining the starts (m, 1−m),
/// m = 1..=n, to the ends (b_ℓ, 0) in any order.
pub fn count_nilp(b: &[i64]) -> Result<BigInt> {
    let n = b.len();
    if n == 0 || n > 4 {
        return domain("path families are enumerated for 1 ≤ n ≤ 4");
    }
    if b.windows(2).any(|w| w[0] >= w[1]) || b[0] < 1 {
        return domain(format!("closing sequence {b:?} must be positive and strictly increasing"));
    }
    let mut count = 0u64;
    let mut used = vec![false; n];
    let mut occupied: HashSet<Point> = HashSet::new();
    fn rec(m: usize, n: usize, b: &[i64], used: &mut [bool], occ: &mut HashSet<Point>, count: &mut u64) {
        if m > n {
            *count += 1;
            return;
        }
        for l in 0..n {
            if used[l] {
                continue;
            }
            for p in paths(m as i64, b[l]) {
                if p.iter().any(|x| occ.contains(x)) {
                    continue;
                }
                used[l] = true;
                occ.extend(p.iter().copied());
                rec(m + 1, n, b, used, occ, count);
                for x in &p {
                    occ.remove(x);
                }
                used[l] = false;
            }
        }
    }
    rec(1, n, b, &mut used, &mut occupied, &mut count);
    Ok(BigInt::from(count))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ArrayVariant {
    /// First-column bound a_{i1} ≤ n − i + 1.
    One,
    /// First-column bound a_{i1} ≤ n − i.
    Zero,
}

/// Triangular array with parts a_{ij}, i, j ≥ 1, i + j ≤ n.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TriArray {
    pub n: usize,
    pub rows: Vec<Vec<u32>>,
}

impl TriArray {
    /// Parts a_{ij} ≤ j − 1.
    pub fn weight(&self) -> u32 {
        self.rows.iter().map(|r| r.iter().enumerate().filter(|(j, &a)| a as usize <= *j).count() as u32).sum()
    }

    pub fn is_valid(&self, variant: ArrayVariant) -> bool {
        let n = self.n;
        let slack = if variant == ArrayVariant::One { 1 } else { 0 };
        self.rows.iter().enumerate().all(|(i, r)| {
            r.len() == n - 1 - i
                && r.first().is_none_or(|&a| a as usize <= n - (i + 1) + slack)
                && r.windows(2).all(|w| w[0] >= w[1])
                && (i == 0 || r.iter().zip(&self.rows[i - 1]).all(|(a, b)| a <= b))
        })
    }
}

pub fn tri_arrays(n: usize, variant: ArrayVariant) -> Result<Vec<TriArray>> {
    if n == 0 || n > 5 {
        return domain("triangular arrays are enumerated for 1 ≤ n ≤ 5");
    }
    let slack = if variant == ArrayVariant::One { 1 } else { 0 };
    let cells: Vec<(usize, usize)> = (0..n - 1).flat_map(|i| (0..n - 1 - i).map(move |j| (i, j))).collect();
    let mut out = Vec::new();
    let mut rows: Vec<Vec<u32>> = (0..n.saturating_sub(1)).map(|i| vec![0; n - 1 - i]).collect();
    fn rec(k: usize, cells: &[(usize, usize)], n: usize, slack: usize, rows: &mut Vec<Vec<u32>>, out: &mut Vec<TriArray>) {
        if k == cells.len() {
            out.push(TriArray { n, rows: rows.clone() });
            return;
        }
        let (i, j) = cells[k];
        let mut hi = if j == 0 { (n - (i + 1) + slack) as u32 } else { rows[i][j - 1] };
        if i > 0 {
            hi = hi.min(rows[i - 1][j]);
        }
        for a in 0..=hi {
            rows[i][j] = a;
            rec(k + 1, cells, n, slack, rows, out);
        }
    }
    rec(0, &cells, n, slack, &mut rows, &mut out);
    Ok(out)
}

/// T_n(x, variant): Σ over arrays of x^{weight}, returned as a polynomial
/// whose variable is x.
pub fn t_poly(n: usize, variant: ArrayVariant) -> Result<TauPoly> {
    let arrays = tri_arrays(n, variant)?;
    let max = arrays.iter().map(TriArray::weight).max().unwrap_or(0) as usize;
    let mut c = vec![0u64; max + 1];
    for a in &arrays {
        c[a.weight() as usize] += 1;
    }
    Ok(TauPoly::new(c.into_iter().map(BigInt::from).collect()))
}

/// T_n(τ², variant).
pub fn t_poly_at_tau_squared(n: usize, variant: ArrayVariant) -> Result<TauPoly> {
    Ok(t_poly(n, variant)?.compose(&TauPoly::monomial(BigInt::from(1), 2)))
}

/// count_nilp against the binomial determinant over every canonical even
/// closing sequence of size n.
pub fn nilp_totals(n: usize) -> Result<(BigInt, BigInt)> {
    use crate::ctengine::{nilp_det, ClosingIndex, Parity};
    let bs = ClosingIndex::all_canonical(n, Parity::Even);
    let pairs: Vec<(BigInt, BigInt)> =
        bs.par_iter().map(|c| Ok((count_nilp(&c.b)?, nilp_det(&c.b)))).collect::<Result<_>>()?;
    if let Some(c) = bs.iter().zip(&pairs).find(|(_, (a, d))| a != d) {
        return Err(Error::Verification(format!("path count differs from determinant at {:?}", c.0.b)));
    }
    Ok(pairs.into_iter().fold((BigInt::from(0), BigInt::from(0)), |(a, d), (x, y)| (a + x, d + y)))
}
