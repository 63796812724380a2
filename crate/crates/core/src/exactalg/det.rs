use super::ring::Ring;
use crate::error::{Error, Result};

/// Exact determinant. Sizes up to 2 are expanded directly; larger matrices go
/// through fraction-free Bareiss elimination with row pivoting. The empty
/// matrix has determinant 1.
pub fn bareiss_det<C: Ring>(m: &[Vec<C>]) -> Result<C> {
    let n = m.len();
    if m.iter().any(|row| row.len() != n) {
        return Err(Error::Domain("matrix is not square".into()));
    }
    match n {
        0 => return Ok(C::one()),
        1 => return Ok(m[0][0].clone()),
        2 => return Ok(m[0][0].times(&m[1][1]).minus(&m[0][1].times(&m[1][0]))),
        _ => {}
    }
    let mut a: Vec<Vec<C>> = m.to_vec();
    let mut prev = C::one();
    let mut negate = false;
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            match (k + 1..n).find(|&r| !a[r][k].is_zero()) {
                Some(r) => {
                    a.swap(k, r);
                    negate = !negate;
                }
                None => return Ok(C::zero()),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = a[k][k].times(&a[i][j]).minus(&a[i][k].times(&a[k][j]));
                a[i][j] = num.exact_div(&prev)?;
            }
        }
        prev = a[k][k].clone();
    }
    let d = a[n - 1][n - 1].clone();
    Ok(if negate { d.negated() } else { d })
}

/// Laplace expansion along the first row. Exponential; reference use only.
pub fn cofactor_det<C: Ring>(m: &[Vec<C>]) -> C {
    let n = m.len();
    if n == 0 {
        return C::one();
    }
    let mut acc = C::zero();
    for j in 0..n {
        if m[0][j].is_zero() {
            continue;
        }
        let minor: Vec<Vec<C>> = m[1..]
            .iter()
            .map(|row| row.iter().enumerate().filter(|(c, _)| *c != j).map(|(_, x)| x.clone()).collect())
            .collect();
        let t = m[0][j].times(&cofactor_det(&minor));
        acc = if j % 2 == 0 { acc.plus(&t) } else { acc.minus(&t) };
    }
    acc
}
