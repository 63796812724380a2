//! Command implementations. Each returns the rendered output and an exit
//! code: 0 success, 1 verification failure, 2 usage error.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use num_bigint::BigInt;
use num_rational::BigRational;
use qkz_core::basischange::{build_matrix, verify_chebyshev_cases, verify_matrix, verify_e_action_sweep, BasisMatrix};
use qkz_core::ctengine::{verify_caps, verify_lemma_suite, verify_limits, verify_odd_even_bridge, LemmaBounds, Parity};
use qkz_core::exactalg::{BiPoly, TauPoly};
use qkz_core::linkpat::{enumerate, verify_tl_relations};
use qkz_core::psivec::{assemble_even, check_properties, k_vector_even, psi_odd, PsiVector};
use qkz_core::qkzoracle::{cross_check, verify_r_matrix, MAX_SIZE};
use qkz_core::report::Report;
use qkz_core::sumrules::{build_report, rotated_component_det, SumRuleReport};
use qkz_core::tilingsoracle::{count_nilp, nilp_totals, t_poly, t_poly_at_tau_squared, vsasm_count, ArrayVariant};

use crate::cache::{sha256_hex, Cache};
use crate::table::{
    bi_to_grid, matrix_from_payload, matrix_payload, report_payload, strings_to_tau, tau_to_strings, Kind, Payload,
    PatternEntry, PsiEntry, ResultTable,
};

pub const MAX_PSI_SIZE: usize = 12;
pub const MAX_SUMRULE_N: usize = 5;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Json,
    Csv,
    Pretty,
}

#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Failed(String),
}

impl CliError {
    pub fn code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Failed(_) => 1,
        }
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Usage(m) => write!(f, "usage error: {m}"),
            CliError::Failed(m) => write!(f, "error: {m}"),
        }
    }
}

impl From<qkz_core::Error> for CliError {
    fn from(e: qkz_core::Error) -> Self {
        match e {
            qkz_core::Error::Domain(m) => CliError::Usage(m),
            other => CliError::Failed(other.to_string()),
        }
    }
}

pub type Outcome = Result<(String, i32), CliError>;

fn params(pairs: &[(&str, String)]) -> BTreeMap<String, String> {
    pairs.iter().map(|(k, v)| (k.to_string(), v.clone())).collect()
}

fn rational(r: &BigRational) -> String {
    if r.is_integer() {
        r.to_integer().to_string()
    } else {
        r.to_string()
    }
}

pub fn parse_rational(s: &str) -> Result<BigRational, CliError> {
    s.parse::<BigRational>().map_err(|_| CliError::Usage(format!("not a rational number: {s}")))
}

/// C for half-size n, through the cache when one is configured.
pub fn cached_matrix(n: usize, cache: Option<&Cache>) -> Result<BasisMatrix, CliError> {
    let key = Cache::key("basis-matrix", n);
    if let Some(c) = cache {
        if let Some(text) = c.load(&key) {
            if let Ok(p) = serde_json::from_str::<Payload>(&text) {
                if let Ok(m) = matrix_from_payload(n, &p) {
                    return Ok(m);
                }
            }
        }
    }
    let m = build_matrix(n)?;
    if let Some(c) = cache {
        let text = serde_json::to_string(&matrix_payload(&m)).expect("payload serializes");
        c.store(&key, &text).map_err(|e| CliError::Failed(format!("cache write failed: {e}")))?;
    }
    Ok(m)
}

fn k_vector_text(k: &[TauPoly]) -> String {
    serde_json::to_string(&k.iter().map(tau_to_strings).collect::<Vec<_>>()).expect("vector serializes")
}

/// Constant-term vector for half-size n, through the cache when configured.
pub fn cached_k_vector(n: usize, cache: Option<&Cache>) -> Result<Vec<TauPoly>, CliError> {
    let key = Cache::key("k-vector", n);
    if let Some(c) = cache {
        if let Some(text) = c.load(&key) {
            if let Ok(rows) = serde_json::from_str::<Vec<Vec<String>>>(&text) {
                if let Ok(k) = rows.iter().map(|r| strings_to_tau(r)).collect::<Result<Vec<_>, _>>() {
                    return Ok(k);
                }
            }
        }
    }
    let k = k_vector_even(n);
    if let Some(c) = cache {
        c.store(&key, &k_vector_text(&k)).map_err(|e| CliError::Failed(format!("cache write failed: {e}")))?;
    }
    Ok(k)
}

pub fn compute_psi(size: usize, cache: Option<&Cache>) -> Result<PsiVector, CliError> {
    if !(2..=MAX_PSI_SIZE).contains(&size) {
        return Err(CliError::Usage(format!("size must be in 2..={MAX_PSI_SIZE}, got {size}")));
    }
    if size.is_multiple_of(2) {
        let n = size / 2;
        let c = cached_matrix(n, cache)?;
        let k = cached_k_vector(n, cache)?;
        Ok(assemble_even(&c, &k)?)
    } else {
        Ok(psi_odd(size / 2)?)
    }
}

fn render_table(t: &ResultTable, format: Format, pretty: String, csv: Option<String>) -> Result<String, CliError> {
    match format {
        Format::Json => Ok(t.to_json() + "\n"),
        Format::Pretty => Ok(pretty),
        Format::Csv => csv.ok_or_else(|| CliError::Usage("csv output is not available for this command".into())),
    }
}

fn join_pairs(p: &[usize]) -> String {
    p.iter().map(usize::to_string).collect::<Vec<_>>().join(" ")
}

pub fn cmd_lp_list(size: usize, format: Format, command: &str) -> Outcome {
    if size == 0 || size > 2 * MAX_PSI_SIZE {
        return Err(CliError::Usage(format!("size must be in 1..={}", 2 * MAX_PSI_SIZE)));
    }
    let entries: Vec<PatternEntry> = enumerate(size)
        .iter()
        .enumerate()
        .map(|(k, p)| PatternEntry { index: k, pattern: p.pairs().to_vec(), word: p.to_word(), boxes: p.box_count() })
        .collect();
    let mut pretty = String::new();
    let mut csv = String::from("index,word,pairs,boxes\n");
    for e in &entries {
        writeln!(pretty, "{:>4}  {}  [{}]  boxes {}", e.index, e.word, join_pairs(&e.pattern), e.boxes).unwrap();
        writeln!(csv, "{},{},{},{}", e.index, e.word, join_pairs(&e.pattern), e.boxes).unwrap();
    }
    let t = ResultTable::new(Kind::Patterns, params(&[("size", size.to_string())]), Payload::Patterns { entries }, command);
    Ok((render_table(&t, format, pretty, Some(csv))?, 0))
}

pub fn cmd_psi(size: usize, tau_at: Option<&str>, format: Format, command: &str) -> Outcome {
    let tau = tau_at.map(parse_rational).transpose()?;
    let v = compute_psi(size, Cache::from_env().as_ref())?;
    let one = BigInt::from(1);
    let entries: Vec<PsiEntry> = v
        .components
        .iter()
        .map(|(p, c)| PsiEntry {
            pattern: p.pairs().to_vec(),
            word: p.to_word(),
            coefficients: tau_to_strings(c),
            valuation: c.valuation(),
            degree: c.degree(),
            at_one: c.eval(&one).to_string(),
            at_tau: tau.as_ref().map(|x| rational(&c.eval_rational(x))),
        })
        .collect();
    let mut pretty = format!("N={size}, {}\n", v.normalization);
    let mut csv = String::from("word,pairs,valuation,degree,at_one,at_tau,coefficients\n");
    for ((_, c), e) in v.components.iter().zip(&entries) {
        let opt = |x: Option<usize>| x.map(|d| d.to_string()).unwrap_or_else(|| "-".into());
        write!(pretty, "{}  {}  (at tau=1: {}", e.word, c, e.at_one).unwrap();
        if let Some(t) = &e.at_tau {
            write!(pretty, ", at tau={}: {t}", tau_at.unwrap()).unwrap();
        }
        pretty.push_str(")\n");
        writeln!(
            csv,
            "{},{},{},{},{},{},{}",
            e.word,
            join_pairs(&e.pattern),
            opt(e.valuation),
            opt(e.degree),
            e.at_one,
            e.at_tau.clone().unwrap_or_default(),
            e.coefficients.join(" ")
        )
        .unwrap();
    }
    let mut ps = vec![("size", size.to_string())];
    if let Some(t) = tau_at {
        ps.push(("tau", t.to_string()));
    }
    let t = ResultTable::new(Kind::Psi, params(&ps), Payload::Psi { normalization: v.normalization.clone(), entries }, command);
    Ok((render_table(&t, format, pretty, Some(csv))?, 0))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TSpec {
    Symbolic,
    Zero,
    One,
    Inf,
    Tau,
    InvTau,
}

impl TSpec {
    pub fn parse(s: &str) -> Result<TSpec, CliError> {
        Ok(match s {
            "symbolic" => TSpec::Symbolic,
            "0" => TSpec::Zero,
            "1" => TSpec::One,
            "inf" => TSpec::Inf,
            "tau" => TSpec::Tau,
            "inv-tau" => TSpec::InvTau,
            _ => return Err(CliError::Usage(format!("unknown t specification {s}"))),
        })
    }

    fn name(self) -> &'static str {
        match self {
            TSpec::Symbolic => "symbolic",
            TSpec::Zero => "0",
            TSpec::One => "1",
            TSpec::Inf => "inf",
            TSpec::Tau => "tau",
            TSpec::InvTau => "inv-tau",
        }
    }
}

/// The direct route at the requested t. `inf` is the leading t-coefficient:
/// t^{n−1} for even sizes and t^n for odd sizes.
fn select(r: &SumRuleReport, t: TSpec) -> Result<Option<TauPoly>, CliError> {
    let d: &BiPoly = &r.direct;
    Ok(match t {
        TSpec::Symbolic => None,
        TSpec::Zero => Some(d.eval_t(&TauPoly::zero())),
        TSpec::One => Some(d.eval_t(&TauPoly::one())),
        TSpec::Tau => Some(d.eval_t(&TauPoly::tau())),
        TSpec::Inf => Some(match r.parity {
            Parity::Even => d.coeff_t(r.n - 1),
            Parity::Odd => d.coeff_t(r.n),
        }),
        TSpec::InvTau => Some(d.eval_t_inverse_tau().map_err(|e| CliError::Failed(e.to_string()))?),
    })
}

pub fn cmd_sumrule(n: usize, parity: Parity, t: TSpec, tau_at: Option<&str>, format: Format, command: &str) -> Outcome {
    if n == 0 || n > MAX_SUMRULE_N {
        return Err(CliError::Usage(format!("n must be in 1..={MAX_SUMRULE_N}")));
    }
    let tau = tau_at.map(parse_rational).transpose()?;
    let r = build_report(n, parity)?;
    let sel = select(&r, t)?;
    let value = match (&sel, &tau) {
        (Some(p), Some(x)) => Some(rational(&p.eval_rational(x))),
        _ => None,
    };
    let mut pretty = format!("n={n} parity={} t={}\n", parity.name(), t.name());
    writeln!(pretty, "direct:      {}", r.direct).unwrap();
    writeln!(pretty, "determinant: {}", r.determinant).unwrap();
    writeln!(pretty, "convention:  {}", r.convention.describe()).unwrap();
    for (k, v) in &r.specializations {
        writeln!(pretty, "  {k}: {v}").unwrap();
    }
    if let Some(p) = &sel {
        writeln!(pretty, "selected:    {p}").unwrap();
    }
    if let Some(v) = &value {
        writeln!(pretty, "value at tau={}: {v}", tau_at.unwrap()).unwrap();
    }
    let mut ps = vec![("n", n.to_string()), ("parity", parity.name().to_string()), ("t", t.name().to_string())];
    if let Some(x) = tau_at {
        ps.push(("tau", x.to_string()));
    }
    let payload = Payload::Sumrule {
        direct: bi_to_grid(&r.direct),
        determinant: bi_to_grid(&r.determinant),
        convention: r.convention.describe().to_string(),
        specializations: r.specializations.iter().map(|(k, v)| (k.clone(), tau_to_strings(v))).collect(),
        selected: sel.as_ref().map(tau_to_strings),
        value,
    };
    let table = ResultTable::new(Kind::Sumrule, params(&ps), payload, command);
    Ok((render_table(&table, format, pretty, None)?, 0))
}

pub const SUITES: [&str; 7] = ["tl", "basis", "lemmas", "limits", "sumrules", "oracle", "tilings"];

fn guarded(r: &mut Report, name: &str, f: impl FnOnce() -> qkz_core::Result<Report>) {
    match f() {
        Ok(x) => r.merge(x),
        Err(e) => r.check(name, false, e.to_string()),
    }
}

fn suite_report(suite: &str, k: usize) -> Report {
    let mut r = Report::new();
    match suite {
        "tl" => {
            for size in 2..=2 * k {
                guarded(&mut r, "Temperley-Lieb relations", || verify_tl_relations(size));
            }
        }
        "basis" => {
            for n in 1..=k.min(4) {
                guarded(&mut r, "change of basis", || verify_matrix(n, true));
            }
            for n in 1..=k.min(3) {
                guarded(&mut r, "e_i action on arch-opening components", || verify_e_action_sweep(n));
            }
            r.merge(verify_chebyshev_cases(2 * k as i64));
        }
        "lemmas" => {
            r.merge(verify_lemma_suite(LemmaBounds {
                truncation_n: k.min(4),
                antisym_k: (k + 1).min(5),
                rational_k: (k + 2).min(6),
            }));
        }
        "limits" => {
            for n in 1..=k.min(4) {
                r.merge(verify_limits(n, Parity::Even));
                r.merge(verify_limits(n, Parity::Odd));
            }
            for n in 1..=k.min(3) {
                r.merge(verify_caps(n, Parity::Even));
                r.merge(verify_caps(n, Parity::Odd));
                r.merge(verify_odd_even_bridge(n));
            }
        }
        "sumrules" => {
            for n in 1..=k.min(4) {
                for parity in [Parity::Even, Parity::Odd] {
                    match build_report(n, parity) {
                        Ok(rep) => {
                            r.check(
                                format!("{} sum rule routes agree, n={n}", parity.name()),
                                true,
                                format!("convention: {}", rep.convention.describe()),
                            );
                            if parity == Parity::Even {
                                r.check(
                                    format!("top t-coefficient equals rotated determinant, n={n}"),
                                    rep.specializations["top-t"] == rotated_component_det(n),
                                    rep.specializations["top-t"].to_string(),
                                );
                            }
                        }
                        Err(e) => r.check(format!("{} sum rule, n={n}", parity.name()), false, e.to_string()),
                    }
                }
                for size in [2 * n, 2 * n + 1] {
                    guarded(&mut r, "solution vector properties", || {
                        let v = compute_psi(size, None).map_err(|e| qkz_core::Error::Verification(e.to_string()))?;
                        check_properties(&v)
                    });
                }
            }
        }
        "oracle" => {
            for size in 2..=(2 * k).min(MAX_SIZE) {
                guarded(&mut r, "R-matrix identities", || verify_r_matrix(size));
                match cross_check(size) {
                    Ok((c, rep)) => {
                        r.merge(rep);
                        r.note(format!("N={size}: oracle = ({c}) x pipeline at z=1"));
                    }
                    Err(e) => r.check(format!("oracle at N={size}"), false, e.to_string()),
                }
            }
        }
        "tilings" => {
            for n in 1..=k.min(4) {
                match nilp_totals(n) {
                    Ok((p, d)) => r.check(format!("path families equal binomial determinants, n={n}"), p == d, p.to_string()),
                    Err(e) => r.check(format!("path families, n={n}"), false, e.to_string()),
                }
                let rep = build_report(n, Parity::Even);
                if let (Ok(rep), Ok(t1)) = (&rep, t_poly_at_tau_squared(n, ArrayVariant::One)) {
                    r.check(
                        format!("K(1/tau|tau) equals T_{n}(tau^2,1)"),
                        rep.specializations["t=1/tau"] == t1,
                        t1.to_string(),
                    );
                }
                if 2 * n < 7 {
                    if let (Ok(rep), Ok(a)) = (&rep, vsasm_count(2 * n + 1)) {
                        let v = rep.specializations["t=1"].eval(&BigInt::from(1));
                        r.check(format!("K(1|1) equals VSASM count of size {}", 2 * n + 1), v == BigInt::from(a), v.to_string());
                    }
                }
                if let (Ok(rep), Ok(t0)) = (build_report(n, Parity::Odd), t_poly_at_tau_squared(n + 1, ArrayVariant::Zero)) {
                    r.check(
                        format!("det g at t=tau equals T_{}(tau^2,0)", n + 1),
                        rep.specializations["det t=tau"] == t0,
                        t0.to_string(),
                    );
                }
            }
        }
        _ => r.check(format!("suite {suite}"), false, "unknown suite"),
    }
    r
}

/// Cached C and K vectors against fresh computations, by content hash.
fn cache_report(cache: &Cache, k: usize) -> Report {
    let mut r = Report::new();
    for n in 1..=k.min(4) {
        let fresh_c = build_matrix(n).map(|m| serde_json::to_string(&matrix_payload(&m)).unwrap());
        let fresh_k = k_vector_text(&k_vector_even(n));
        if let Ok(fc) = fresh_c {
            if let Err(e) = cached_matrix(n, Some(cache)) {
                r.check(format!("cache write, n={n}"), false, e.to_string());
                continue;
            }
            let _ = cached_k_vector(n, Some(cache));
            let stored_c = cache.load(&Cache::key("basis-matrix", n)).unwrap_or_default();
            let stored_k = cache.load(&Cache::key("k-vector", n)).unwrap_or_default();
            r.check(format!("cached change of basis matches fresh, n={n}"), sha256_hex(&stored_c) == sha256_hex(&fc), sha256_hex(&fc));
            r.check(format!("cached constant terms match fresh, n={n}"), sha256_hex(&stored_k) == sha256_hex(&fresh_k), sha256_hex(&fresh_k));
        }
    }
    r
}

/// Runs the named suites (all when empty or when one is "all") at the scaled
/// bounds for `max_n`, plus the cache consistency check when a cache is set.
pub fn verify_report(max_n: usize, suites: &[String]) -> Result<(Report, Vec<String>), CliError> {
    if max_n == 0 {
        return Err(CliError::Usage("max-n must be positive".into()));
    }
    let chosen: Vec<String> = if suites.is_empty() || suites.iter().any(|s| s == "all") {
        SUITES.iter().map(|s| s.to_string()).collect()
    } else {
        for s in suites {
            if !SUITES.contains(&s.as_str()) {
                return Err(CliError::Usage(format!("unknown suite {s}; expected one of {}", SUITES.join(", "))));
            }
        }
        suites.to_vec()
    };
    let mut r = Report::new();
    for s in &chosen {
        r.merge(suite_report(s, max_n));
    }
    if let Some(c) = Cache::from_env() {
        r.merge(cache_report(&c, max_n));
    }
    Ok((r, chosen))
}

pub fn cmd_verify(max_n: usize, suites: &[String], format: Format, command: &str) -> Outcome {
    let (r, chosen) = verify_report(max_n, suites)?;
    let code = if r.passed() { 0 } else { 1 };
    let mut pretty = r.to_string();
    writeln!(pretty, "{} checks, {} failed", r.len(), r.failures().count()).unwrap();
    let mut csv = String::from("name,passed,detail\n");
    for c in &r.checks {
        writeln!(csv, "\"{}\",{},\"{}\"", c.name.replace('"', "'"), c.passed, c.detail.replace('"', "'")).unwrap();
    }
    let t = ResultTable::new(
        Kind::VerifyReport,
        params(&[("max_n", max_n.to_string()), ("suites", chosen.join(","))]),
        report_payload(&r),
        command,
    );
    Ok((render_table(&t, format, pretty, Some(csv))?, code))
}

pub enum OracleCmd {
    Vsasm { size: usize },
    Nilp { b: Vec<i64> },
    Arrays { n: usize, variant: u8 },
    Qkz { size: usize },
}

pub fn cmd_oracle(cmd: OracleCmd, format: Format, command: &str) -> Outcome {
    let mut values = BTreeMap::new();
    let mut ps = Vec::new();
    let mut code = 0;
    match cmd {
        OracleCmd::Vsasm { size } => {
            ps.push(("size", size.to_string()));
            values.insert("vsasm".to_string(), vsasm_count(size)?.to_string());
        }
        OracleCmd::Nilp { b } => {
            ps.push(("b", b.iter().map(i64::to_string).collect::<Vec<_>>().join(",")));
            values.insert("paths".to_string(), count_nilp(&b)?.to_string());
            values.insert("determinant".to_string(), qkz_core::ctengine::nilp_det(&b).to_string());
        }
        OracleCmd::Arrays { n, variant } => {
            let v = match variant {
                0 => ArrayVariant::Zero,
                1 => ArrayVariant::One,
                _ => return Err(CliError::Usage("variant must be 0 or 1".into())),
            };
            ps.push(("n", n.to_string()));
            ps.push(("variant", variant.to_string()));
            let p = t_poly(n, v)?;
            values.insert("polynomial".to_string(), p.to_string().replace('τ', "x"));
            values.insert("coefficients".to_string(), tau_to_strings(&p).join(" "));
        }
        OracleCmd::Qkz { size } => {
            ps.push(("size", size.to_string()));
            let (c, r) = cross_check(size)?;
            values.insert("constant".to_string(), c.to_string());
            for ch in &r.checks {
                values.insert(ch.name.clone(), if ch.passed { "pass".into() } else { format!("FAIL: {}", ch.detail) });
            }
            if !r.passed() {
                code = 1;
            }
        }
    }
    let pretty: String = values.iter().map(|(k, v)| format!("{k}: {v}\n")).collect();
    let t = ResultTable::new(Kind::Oracle, params(&ps), Payload::Oracle { values }, command);
    Ok((render_table(&t, format, pretty, None)?, code))
}
