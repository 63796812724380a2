use qkz_core::ctengine::Parity;
use qkz_core::exactalg::{BiPoly, TauPoly};
use qkz_core::sumrules::{
    build_report, gen_det_even, gen_det_odd, gen_direct, max_component_det, phi_route, rotated_component_det,
    TConvention,
};
use qkz_core::tilingsoracle::{t_poly_at_tau_squared, ArrayVariant};

#[test]
fn single_odd_convention_through_n4() {
    for n in 1..=4 {
        assert_eq!(gen_det_odd(n).unwrap().1, TConvention::Complementary, "n={n}");
    }
}

#[test]
fn even_specializations_through_n4() {
    for n in 1..=4 {
        let r = build_report(n, Parity::Even).unwrap();
        assert_eq!(r.specializations["top-t"], rotated_component_det(n), "n={n}");
        assert_eq!(r.specializations["t=0"], max_component_det(n), "n={n}");
        let t1 = t_poly_at_tau_squared(n, ArrayVariant::One).unwrap();
        assert_eq!(r.specializations["t=1/tau"], t1, "n={n}");
    }
}

#[test]
fn odd_at_t_equal_tau_through_n4() {
    for n in 1..=4 {
        let (g, _) = gen_det_odd(n).unwrap();
        let gt = g.eval_t(&TauPoly::tau());
        assert_eq!(gt, t_poly_at_tau_squared(n + 1, ArrayVariant::Zero).unwrap(), "n={n}");
        assert_eq!(gt, gen_det_even(n + 1).unwrap().eval_t(&TauPoly::zero()), "n={n}");
    }
}

#[test]
fn specialization_examples() {
    let r = build_report(2, Parity::Even).unwrap();
    assert_eq!(r.specializations["t=1/tau"], TauPoly::from_i64s(&[2, 0, 1]));
    let o = build_report(1, Parity::Odd).unwrap();
    assert_eq!(o.specializations["det t=tau"], TauPoly::from_i64s(&[1, 0, 1]));
    assert_eq!(gen_direct(1, Parity::Even).unwrap(), BiPoly::one());
}

/// The single-integral entries φ_{ℓ,m} as printed reproduce the direct route
/// exactly, while det g carries the complementary t-weighting. The integral
/// defining φ_{1,1} alone evaluates to t, whereas the printed sum gives 0 and
/// the n = 1 total t + τ comes from φ_{1,2}.
#[test]
fn printed_phi_sums_against_direct_route() {
    for n in 1..=3 {
        let phi = phi_route(n).unwrap();
        let direct = gen_direct(n, Parity::Odd).unwrap();
        let det = gen_det_odd(n).unwrap().0;
        assert_eq!(phi, direct, "n={n}");
        assert_eq!(det, direct.complement_t(n).unwrap(), "n={n}");
        assert_ne!(det, direct, "n={n}");
    }
}
