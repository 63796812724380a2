use qkz_core::qkzoracle::{cross_check, solve_exchange, verify_qkz_system, verify_r_matrix};

#[test]
fn oracle_matches_pipeline_through_size_six() {
    for size in 2..=6 {
        let (c, r) = cross_check(size).unwrap();
        println!("N={size}: constant {c}");
        assert!(r.passed(), "N={size}\n{r}");
    }
}

#[test]
fn six_point_system() {
    let v = solve_exchange(3).unwrap();
    assert_eq!(v.components.len(), 5);
    let r = verify_qkz_system(&v).unwrap();
    assert!(r.passed(), "{r}");
}

#[test]
fn r_matrix_identities_through_size_six() {
    for size in 2..=6 {
        let r = verify_r_matrix(size).unwrap();
        assert!(r.passed(), "N={size}\n{r}");
    }
}
