//! Serialized result tables. Polynomials are coefficient arrays of decimal
//! strings, patterns are 1-indexed pairing arrays with 0 for the unmatched
//! point and bivariate polynomials are grids whose rows are powers of t.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use qkz_core::basischange::BasisMatrix;
use qkz_core::exactalg::{BiPoly, TauPoly};
use qkz_core::linkpat::LinkPattern;
use qkz_core::report::Report;
use serde::{Deserialize, Serialize};

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Kind {
    Psi,
    Sumrule,
    Matrix,
    VerifyReport,
    Patterns,
    Oracle,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Provenance {
    pub command: String,
    pub engine_version: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PsiEntry {
    pub pattern: Vec<usize>,
    pub word: String,
    pub coefficients: Vec<String>,
    pub valuation: Option<usize>,
    pub degree: Option<usize>,
    pub at_one: String,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub at_tau: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PatternEntry {
    pub index: usize,
    pub pattern: Vec<usize>,
    pub word: String,
    pub boxes: u32,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckRow {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "kebab-case")]
pub enum Payload {
    Psi {
        normalization: String,
        entries: Vec<PsiEntry>,
    },
    Sumrule {
        direct: Vec<Vec<String>>,
        determinant: Vec<Vec<String>>,
        convention: String,
        specializations: BTreeMap<String, Vec<String>>,
        #[serde(skip_serializing_if = "Option::is_none", default)]
        selected: Option<Vec<String>>,
        #[serde(skip_serializing_if = "Option::is_none", default)]
        value: Option<String>,
    },
    Matrix {
        index: Vec<Vec<usize>>,
        entries: Vec<Vec<Vec<String>>>,
    },
    VerifyReport {
        checks: Vec<CheckRow>,
        findings: Vec<String>,
    },
    Patterns {
        entries: Vec<PatternEntry>,
    },
    Oracle {
        values: BTreeMap<String, String>,
    },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ResultTable {
    pub schema_version: u32,
    pub kind: Kind,
    pub params: BTreeMap<String, String>,
    pub payload: Payload,
    pub provenance: Provenance,
}

impl ResultTable {
    pub fn new(kind: Kind, params: BTreeMap<String, String>, payload: Payload, command: &str) -> Self {
        ResultTable {
            schema_version: SCHEMA_VERSION,
            kind,
            params,
            payload,
            provenance: Provenance { command: command.to_string(), engine_version: qkz_core::VERSION.to_string() },
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("result tables serialize")
    }

    pub fn from_json(s: &str) -> serde_json::Result<Self> {
        serde_json::from_str(s)
    }
}

pub fn tau_to_strings(p: &TauPoly) -> Vec<String> {
    p.coeffs().iter().map(BigInt::to_string).collect()
}

pub fn strings_to_tau(s: &[String]) -> Result<TauPoly, String> {
    s.iter()
        .map(|c| c.parse::<BigInt>().map_err(|e| format!("bad coefficient {c}: {e}")))
        .collect::<Result<Vec<_>, _>>()
        .map(TauPoly::new)
}

pub fn bi_to_grid(p: &BiPoly) -> Vec<Vec<String>> {
    p.to_grid().into_iter().map(|row| row.iter().map(BigInt::to_string).collect()).collect()
}

pub fn grid_to_bi(g: &[Vec<String>]) -> Result<BiPoly, String> {
    let rows = g
        .iter()
        .map(|row| row.iter().map(|c| c.parse::<BigInt>().map_err(|e| e.to_string())).collect::<Result<Vec<_>, _>>())
        .collect::<Result<Vec<_>, _>>()?;
    Ok(BiPoly::from_grid(rows))
}

pub fn matrix_payload(c: &BasisMatrix) -> Payload {
    Payload::Matrix {
        index: c.index.iter().map(|p| p.pairs().to_vec()).collect(),
        entries: c.entries.iter().map(|row| row.iter().map(tau_to_strings).collect()).collect(),
    }
}

pub fn matrix_from_payload(n: usize, p: &Payload) -> Result<BasisMatrix, String> {
    let Payload::Matrix { index, entries } = p else {
        return Err("payload is not a matrix".into());
    };
    let index = index
        .iter()
        .map(|pairs| LinkPattern::from_pairs(pairs.clone()).map_err(|e| e.to_string()))
        .collect::<Result<Vec<_>, _>>()?;
    let entries = entries
        .iter()
        .map(|row| row.iter().map(|c| strings_to_tau(c)).collect::<Result<Vec<_>, _>>())
        .collect::<Result<Vec<_>, _>>()?;
    Ok(BasisMatrix { n, index, entries })
}

pub fn report_payload(r: &Report) -> Payload {
    Payload::VerifyReport {
        checks: r
            .checks
            .iter()
            .map(|c| CheckRow { name: c.name.clone(), passed: c.passed, detail: c.detail.clone() })
            .collect(),
        findings: r.findings.clone(),
    }
}
