use super::multi::MultiPoly;
use super::ring::Ring;

/// All permutations of `0..k` with their signs, in lexicographic order.
pub fn signed_permutations(k: usize) -> Vec<(Vec<usize>, bool)> {
    let mut out = Vec::new();
    let mut perm: Vec<usize> = (0..k).collect();
    fn rec(pos: usize, perm: &mut Vec<usize>, out: &mut Vec<(Vec<usize>, bool)>) {
        if pos == perm.len() {
            let mut inv = 0;
            for i in 0..perm.len() {
                for j in i + 1..perm.len() {
                    if perm[i] > perm[j] {
                        inv += 1;
                    }
                }
            }
            out.push((perm.clone(), inv % 2 == 1));
            return;
        }
        for i in pos..perm.len() {
            perm[pos..=i].rotate_right(1);
            rec(pos + 1, perm, out);
            perm[pos..=i].rotate_left(1);
        }
    }
    rec(0, &mut perm, &mut out);
    out
}

/// Σ_σ sgn(σ) p(x_{σ(1)}, …, x_{σ(k)}) over permutations of the listed
/// variables; other variables are left untouched.
pub fn antisymmetrize<C: Ring>(p: &MultiPoly<C>, vars: &[usize]) -> MultiPoly<C> {
    let mut acc = MultiPoly::zero(p.nvars());
    for (sigma, odd) in signed_permutations(vars.len()) {
        let mut full: Vec<usize> = (0..p.nvars()).collect();
        for (j, &s) in sigma.iter().enumerate() {
            full[vars[j]] = vars[s];
        }
        let img = p.permute_vars(&full);
        acc = if odd { &acc - &img } else { &acc + &img };
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::LaurentScalar;

    #[test]
    fn permutation_count_and_signs() {
        let ps = signed_permutations(4);
        assert_eq!(ps.len(), 24);
        assert_eq!(ps.iter().filter(|(_, odd)| *odd).count(), 12);
    }

    #[test]
    fn symmetric_vanishes() {
        type P = MultiPoly<LaurentScalar>;
        let s = &P::var(2, 0) + &P::var(2, 1);
        assert!(antisymmetrize(&(&s * &s), &[0, 1]).is_zero());
    }

    #[test]
    fn q_linear_form() {
        type P = MultiPoly<LaurentScalar>;
        let p = &P::var(2, 0).scale(&LaurentScalar::q()) - &P::var(2, 1).scale(&LaurentScalar::q_pow(-1));
        let expect = (&P::var(2, 0) - &P::var(2, 1)).scale(&(&LaurentScalar::q() + &LaurentScalar::q_pow(-1)));
        assert_eq!(antisymmetrize(&p, &[0, 1]), expect);
    }
}
