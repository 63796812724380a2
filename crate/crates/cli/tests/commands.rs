use std::process::{Command, Output};

fn qkz(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qkz")).args(args).env_remove("QKZ_CACHE_DIR").output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn lp_list_gives_catalan_many_patterns() {
    let o = qkz(&["lp", "list", "--size", "8", "--format", "csv"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o).lines().count(), 1 + 14);
}

#[test]
fn psi_size_six_pretty() {
    let o = qkz(&["psi", "--size", "6"]);
    assert_eq!(o.status.code(), Some(0));
    let s = stdout(&o);
    assert!(s.contains("((()))  τ^3"));
    assert!(s.contains("()()()  1 + 5τ^2 + 4τ^4 + τ^6"));
}

#[test]
fn psi_tau_at_rational() {
    let o = qkz(&["psi", "--size", "4", "--tau-at", "3/2", "--format", "json"]);
    assert!(o.status.success());
    let s = stdout(&o);
    assert!(s.contains("\"at_tau\": \"3/2\""));
    assert!(s.contains("\"at_tau\": \"13/4\""));
}

#[test]
fn sumrule_specializations() {
    let o = qkz(&["sumrule", "--n", "3", "--parity", "even", "--t", "inv-tau"]);
    assert!(o.status.success());
    assert!(stdout(&o).contains("selected:    6 + 13τ^2 + 6τ^4 + τ^6"));
    let o = qkz(&["sumrule", "--n", "2", "--parity", "odd", "--t", "1", "--tau-at", "1"]);
    assert!(stdout(&o).contains("value at tau=1: 11"));
}

#[test]
fn verify_passes_and_reports() {
    let o = qkz(&["verify", "--max-n", "2"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains(" 0 failed"));
}

#[test]
fn oracle_commands() {
    assert!(stdout(&qkz(&["oracle", "vsasm", "--size", "7"])).contains("vsasm: 26"));
    let nilp = stdout(&qkz(&["oracle", "nilp", "--b", "1,3,5"]));
    let paths = nilp.lines().find(|l| l.starts_with("paths")).unwrap().split(": ").nth(1).unwrap().to_string();
    assert!(nilp.contains(&format!("determinant: {paths}")));
    assert!(stdout(&qkz(&["oracle", "arrays", "--n", "3", "--variant", "0"])).contains("1 + 5x + 4x^2 + x^3"));
    let o = qkz(&["oracle", "qkz", "--size", "3"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("constant: q^4 - 2q^6 + q^8"));
}

#[test]
fn usage_errors_exit_two() {
    for args in [
        &["psi", "--size", "1"][..],
        &["psi", "--size", "40"],
        &["psi", "--size", "4", "--tau-at", "x"],
        &["sumrule", "--n", "0", "--parity", "even"],
        &["sumrule", "--n", "2", "--parity", "even", "--t", "2"],
        &["verify", "--suite", "nothing"],
        &["oracle", "vsasm", "--size", "4"],
        &["oracle", "arrays", "--n", "2", "--variant", "3"],
        &["sumrule", "--n", "2", "--parity", "even", "--format", "csv"],
        &["nonsense"],
        &["psi", "--size", "4", "--jobs", "0"],
    ] {
        assert_eq!(qkz(args).status.code(), Some(2), "{args:?}");
    }
}

#[test]
fn output_independent_of_worker_count() {
    let a = qkz(&["verify", "--max-n", "2", "--format", "json", "--jobs", "1"]);
    let b = qkz(&["verify", "--max-n", "2", "--format", "json", "--jobs", "4"]);
    assert_eq!(a.stdout, b.stdout);
    let a = qkz(&["psi", "--size", "7", "--format", "json"]);
    let b = qkz(&["--jobs", "3", "psi", "--size", "7", "--format", "json"]);
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn repeated_runs_are_identical() {
    let a = qkz(&["sumrule", "--n", "3", "--parity", "odd", "--format", "json"]);
    let b = qkz(&["sumrule", "--n", "3", "--parity", "odd", "--format", "json"]);
    assert_eq!(a.stdout, b.stdout);
}
