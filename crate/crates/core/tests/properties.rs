use num_bigint::BigInt;
use proptest::prelude::*;
use qkz_core::exactalg::{bareiss_det, cofactor_det, BiPoly, LaurentScalar, MultiPoly, TauPoly};
use qkz_core::linkpat::{enumerate, LinkPattern};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn tau_poly() -> impl Strategy<Value = TauPoly> {
    prop::collection::vec(-20i64..20, 0..6).prop_map(|c| TauPoly::from_i64s(&c))
}

fn laurent() -> impl Strategy<Value = LaurentScalar> {
    (-4i64..4, prop::collection::vec(-9i64..9, 0..5))
        .prop_map(|(o, c)| LaurentScalar::new(o, c.into_iter().map(BigInt::from).collect()))
}

fn bi_poly() -> impl Strategy<Value = BiPoly> {
    prop::collection::vec(tau_poly(), 0..4).prop_map(BiPoly::new)
}

fn multi() -> impl Strategy<Value = MultiPoly<BigInt>> {
    prop::collection::vec((prop::collection::vec(0u32..4, 3), -9i64..9), 0..8).prop_map(|ts| {
        MultiPoly::from_terms(3, ts.into_iter().map(|(e, c)| (e, BigInt::from(c))))
    })
}

fn pattern() -> impl Strategy<Value = LinkPattern> {
    (2usize..=9).prop_flat_map(|n| {
        let pats = enumerate(n);
        (0..pats.len()).prop_map(move |k| pats[k].clone())
    })
}

proptest! {
    #[test]
    fn tau_ring_axioms(a in tau_poly(), b in tau_poly(), c in tau_poly()) {
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&(&a - &b) + &b, a.clone());
    }

    #[test]
    fn tau_exact_division(a in tau_poly(), b in tau_poly()) {
        prop_assume!(!b.is_zero());
        prop_assert_eq!((&a * &b).exact_div(&b).unwrap(), a);
    }

    #[test]
    fn laurent_ring_axioms(a in laurent(), b in laurent(), c in laurent()) {
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(a.bar().bar(), a.clone());
        prop_assert_eq!((&a * &b).bar(), &a.bar() * &b.bar());
    }

    #[test]
    fn tau_to_laurent_is_a_ring_map(a in tau_poly(), b in tau_poly()) {
        prop_assert_eq!((&a * &b).to_laurent(), &a.to_laurent() * &b.to_laurent());
        prop_assert_eq!((&a + &b).to_laurent(), &a.to_laurent() + &b.to_laurent());
        prop_assert_eq!(a.to_laurent().bar(), a.to_laurent());
    }

    #[test]
    fn bi_poly_axioms(a in bi_poly(), b in bi_poly(), x in tau_poly()) {
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!((&a * &b).eval_t(&x), &a.eval_t(&x) * &b.eval_t(&x));
    }

    #[test]
    fn complement_is_an_involution(a in bi_poly()) {
        let n = a.t_degree().unwrap_or(0);
        prop_assert_eq!(a.complement_t(n).unwrap().complement_t(n).unwrap(), a);
    }

    #[test]
    fn caps_truncate_products(a in multi(), b in multi(), c0 in 0u32..4, c1 in 0u32..4, c2 in 0u32..4) {
        let caps = vec![c0, c1, c2];
        let capped = &a.clone().with_caps(caps.clone()) * &b.clone().with_caps(caps.clone());
        let truncated = (&a * &b).with_caps(caps);
        prop_assert_eq!(capped, truncated);
    }

    #[test]
    fn divided_difference_identity(f in multi(), i in 0usize..2) {
        let x = MultiPoly::<BigInt>::var(3, i);
        let y = MultiPoly::<BigInt>::var(3, i + 1);
        let lhs = &(&y - &x) * &f.divided_difference(i);
        prop_assert_eq!(lhs, &f.swap_vars(i, i + 1) - &f);
    }

    #[test]
    fn multi_exact_division(a in multi(), b in multi()) {
        prop_assume!(!b.is_zero());
        prop_assert_eq!((&a * &b).exact_div(&b).unwrap(), a);
    }

    #[test]
    fn pattern_round_trips(p in pattern()) {
        prop_assert_eq!(LinkPattern::from_dyck(&p.to_dyck()).unwrap(), p.clone());
        prop_assert_eq!(p.mirror().mirror(), p.clone());
        prop_assert_eq!(p.to_word().parse::<LinkPattern>().unwrap(), p.clone());
        if p.is_odd() {
            prop_assert_eq!(p.embed_odd().unwrap().erase_rightmost_arch().unwrap(), p.clone());
        }
    }

    #[test]
    fn generators_create_little_arches(p in pattern()) {
        for i in 1..p.size() {
            let (img, _, _) = p.apply_e(i).unwrap();
            prop_assert!(img.has_little_arch(i));
            prop_assert_eq!(img.size(), p.size());
        }
    }

    #[test]
    fn order_extremes(p in pattern()) {
        let n = p.size();
        prop_assert!(LinkPattern::rainbow(n).contains(&p));
        prop_assert!(p.contains(&LinkPattern::pmax(n)));
        prop_assert!(p.box_count() <= LinkPattern::rainbow(n).box_count());
    }
}

fn random_matrix(rng: &mut ChaCha8Rng, d: usize) -> Vec<Vec<TauPoly>> {
    (0..d)
        .map(|_| {
            (0..d)
                .map(|_| {
                    let len = rng.gen_range(0..4);
                    let c: Vec<i64> = (0..len).map(|_| rng.gen_range(-5..=5)).collect();
                    TauPoly::from_i64s(&c)
                })
                .collect()
        })
        .collect()
}

#[test]
fn bareiss_matches_cofactor_expansion() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    for d in 0..=4 {
        for _ in 0..40 {
            let m = random_matrix(&mut rng, d);
            assert_eq!(bareiss_det(&m).unwrap(), cofactor_det(&m), "dimension {d}");
        }
    }
}

#[test]
fn singular_matrices_have_zero_determinant() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for d in 2..=4 {
        let mut m = random_matrix(&mut rng, d);
        m[d - 1] = m[0].clone();
        assert!(bareiss_det(&m).unwrap().is_zero());
    }
}
