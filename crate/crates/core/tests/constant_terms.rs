use qkz_core::basischange::verify_matrix;
use qkz_core::ctengine::{verify_caps, verify_limits, verify_odd_even_bridge, Parity};
use qkz_core::tilingsoracle::nilp_totals;

#[test]
fn asymptotic_limits_through_n4() {
    for n in 1..=4 {
        for parity in [Parity::Even, Parity::Odd] {
            let r = verify_limits(n, parity);
            assert!(r.passed(), "n={n} {}\n{r}", parity.name());
        }
    }
}

#[test]
fn capped_expansion_matches_uncapped_through_n3() {
    for n in 1..=3 {
        for parity in [Parity::Even, Parity::Odd] {
            let r = verify_caps(n, parity);
            assert!(r.passed(), "n={n} {}\n{r}", parity.name());
        }
    }
}

#[test]
fn odd_even_bridge_through_n3() {
    for n in 1..=3 {
        let r = verify_odd_even_bridge(n);
        assert!(r.passed(), "n={n}\n{r}");
    }
}

#[test]
fn path_counts_equal_binomial_determinants() {
    for n in 1..=4 {
        let (paths, det) = nilp_totals(n).unwrap();
        assert_eq!(paths, det, "n={n}");
    }
}

#[test]
fn basis_change_with_degree_law_through_n4() {
    for n in 1..=4 {
        let r = verify_matrix(n, true).unwrap();
        assert!(r.passed(), "n={n}\n{r}");
    }
}
