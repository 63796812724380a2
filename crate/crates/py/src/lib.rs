//! Python bindings. Polynomials in τ cross the boundary as lists of integer
//! coefficients, lowest degree first; bivariate polynomials as lists of such
//! lists indexed by the power of t.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use pyo3::exceptions::{PyRuntimeError, PyValueError};
use pyo3::prelude::*;

use qkz_core::ctengine::{k_value, Parity};
use qkz_core::exactalg::{BiPoly, TauPoly};
use qkz_core::linkpat::{self, LinkPattern};
use qkz_core::{basischange, psivec, qkzoracle, sumrules, tilingsoracle};

/// Overall pass flag and (name, passed, detail) rows.
type Outcome = (bool, Vec<(String, bool, String)>);

fn err(e: qkz_core::Error) -> PyErr {
    match e {
        qkz_core::Error::Domain(m) => PyValueError::new_err(m),
        other => PyRuntimeError::new_err(other.to_string()),
    }
}

fn coeffs(p: &TauPoly) -> Vec<BigInt> {
    p.coeffs().to_vec()
}

fn grid(p: &BiPoly) -> Vec<Vec<BigInt>> {
    p.t_coeffs().iter().map(coeffs).collect()
}

fn parity(s: &str) -> PyResult<Parity> {
    match s {
        "even" => Ok(Parity::Even),
        "odd" => Ok(Parity::Odd),
        _ => Err(PyValueError::new_err(format!("parity must be 'even' or 'odd', got {s:?}"))),
    }
}

/// A link pattern on N points, stored as the partner of each point (0 for
/// the unmatched point when N is odd).
#[pyclass(name = "LinkPattern", frozen, eq, hash, from_py_object)]
#[derive(Clone, PartialEq, Eq, Hash)]
struct PyLinkPattern {
    inner: LinkPattern,
}

#[pymethods]
impl PyLinkPattern {
    #[new]
    fn new(pairs: Vec<usize>) -> PyResult<Self> {
        LinkPattern::from_pairs(pairs).map(|inner| PyLinkPattern { inner }).map_err(err)
    }

    #[getter]
    fn size(&self) -> usize {
        self.inner.size()
    }

    #[getter]
    fn pairs(&self) -> Vec<usize> {
        self.inner.pairs().to_vec()
    }

    #[getter]
    fn word(&self) -> String {
        self.inner.to_word()
    }

    #[getter]
    fn boxes(&self) -> u32 {
        self.inner.box_count()
    }

    fn openings(&self) -> Vec<usize> {
        self.inner.openings()
    }

    fn closings(&self) -> Vec<usize> {
        self.inner.closings()
    }

    fn mirror(&self) -> Self {
        PyLinkPattern { inner: self.inner.mirror() }
    }

    /// Action of e_i: the image pattern and its weight in τ.
    fn apply_e(&self, i: usize) -> PyResult<(Self, Vec<BigInt>)> {
        let (p, w, _) = self.inner.apply_e(i).map_err(err)?;
        Ok((PyLinkPattern { inner: p }, coeffs(&w)))
    }

    fn __repr__(&self) -> String {
        format!("LinkPattern('{}')", self.inner.to_word())
    }
}

/// Components of the solution vector for one system size.
#[pyclass(name = "PsiVector", frozen)]
struct PyPsiVector {
    inner: psivec::PsiVector,
}

#[pymethods]
impl PyPsiVector {
    #[getter]
    fn size(&self) -> usize {
        self.inner.size
    }

    #[getter]
    fn normalization(&self) -> String {
        self.inner.normalization.clone()
    }

    #[getter]
    fn components(&self) -> Vec<(PyLinkPattern, Vec<BigInt>)> {
        self.inner.components.iter().map(|(p, c)| (PyLinkPattern { inner: p.clone() }, coeffs(c))).collect()
    }

    /// Component by pattern or by its parenthesis word.
    fn get(&self, key: &Bound<'_, PyAny>) -> PyResult<Option<Vec<BigInt>>> {
        if let Ok(p) = key.extract::<PyLinkPattern>() {
            return Ok(self.inner.get(&p.inner).map(coeffs));
        }
        let w: String = key.extract()?;
        Ok(self.inner.components.iter().find(|(p, _)| p.to_word() == w).map(|(_, c)| coeffs(c)))
    }

    fn sum(&self) -> Vec<BigInt> {
        coeffs(&self.inner.sum())
    }

    /// Runs the structural checks; returns (passed, [(name, passed, detail)]).
    fn check(&self) -> PyResult<Outcome> {
        let r = psivec::check_properties(&self.inner).map_err(err)?;
        Ok((r.passed(), r.checks.iter().map(|c| (c.name.clone(), c.passed, c.detail.clone())).collect()))
    }

    fn __len__(&self) -> usize {
        self.inner.len()
    }
}

/// Both routes to the refined sum rule for one n and parity.
#[pyclass(name = "SumRule", frozen)]
struct PySumRule {
    inner: sumrules::SumRuleReport,
}

#[pymethods]
impl PySumRule {
    #[getter]
    fn n(&self) -> usize {
        self.inner.n
    }

    #[getter]
    fn direct(&self) -> Vec<Vec<BigInt>> {
        grid(&self.inner.direct)
    }

    #[getter]
    fn determinant(&self) -> Vec<Vec<BigInt>> {
        grid(&self.inner.determinant)
    }

    #[getter]
    fn convention(&self) -> &'static str {
        self.inner.convention.describe()
    }

    #[getter]
    fn specializations(&self) -> BTreeMap<String, Vec<BigInt>> {
        self.inner.specializations.iter().map(|(k, v)| (k.clone(), coeffs(v))).collect()
    }
}

#[pyfunction]
fn link_patterns(size: usize) -> Vec<PyLinkPattern> {
    linkpat::enumerate(size).into_iter().map(|inner| PyLinkPattern { inner }).collect()
}

#[pyfunction]
fn psi(size: usize) -> PyResult<PyPsiVector> {
    psivec::psi(size).map(|inner| PyPsiVector { inner }).map_err(err)
}

#[pyfunction]
fn sum_rule(n: usize, parity: &str) -> PyResult<PySumRule> {
    sumrules::build_report(n, self::parity(parity)?).map(|inner| PySumRule { inner }).map_err(err)
}

/// Constant term K_b (even) or K'_b (odd).
#[pyfunction]
#[pyo3(signature = (b, parity = "even"))]
fn constant_term(b: Vec<i64>, parity: &str) -> PyResult<Vec<BigInt>> {
    Ok(coeffs(&k_value(&b, self::parity(parity)?)))
}

/// Change-of-basis matrix for half-size n as nested coefficient lists.
#[pyfunction]
fn basis_matrix(n: usize) -> PyResult<Vec<Vec<Vec<BigInt>>>> {
    let c = basischange::build_matrix(n).map_err(err)?;
    Ok((0..c.dim()).map(|i| (0..c.dim()).map(|j| coeffs(c.get(i, j))).collect()).collect())
}

#[pyfunction]
fn vsasm_count(size: usize) -> PyResult<u64> {
    tilingsoracle::vsasm_count(size).map_err(err)
}

/// Constant relating the polynomial solution's homogeneous limit to the
/// solution vector, as a Laurent polynomial in q.
#[pyfunction]
fn oracle_constant(size: usize) -> PyResult<String> {
    let (c, r) = qkzoracle::cross_check(size).map_err(err)?;
    if !r.passed() {
        return Err(PyRuntimeError::new_err(r.to_string()));
    }
    Ok(c.to_string())
}

/// Runs verification suites; returns (passed, [(name, passed, detail)]).
#[pyfunction]
#[pyo3(signature = (max_n = 3, suites = Vec::new()))]
fn verify(max_n: usize, suites: Vec<String>) -> PyResult<Outcome> {
    let (r, _) = qkz_cli::run::verify_report(max_n, &suites).map_err(|e| match e {
        qkz_cli::run::CliError::Usage(m) => PyValueError::new_err(m),
        other => PyRuntimeError::new_err(other.to_string()),
    })?;
    Ok((r.passed(), r.checks.iter().map(|c| (c.name.clone(), c.passed, c.detail.clone())).collect()))
}

#[pymodule]
fn qkz(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add("__version__", qkz_core::VERSION)?;
    m.add_class::<PyLinkPattern>()?;
    m.add_class::<PyPsiVector>()?;
    m.add_class::<PySumRule>()?;
    m.add_function(wrap_pyfunction!(link_patterns, m)?)?;
    m.add_function(wrap_pyfunction!(psi, m)?)?;
    m.add_function(wrap_pyfunction!(sum_rule, m)?)?;
    m.add_function(wrap_pyfunction!(constant_term, m)?)?;
    m.add_function(wrap_pyfunction!(basis_matrix, m)?)?;
    m.add_function(wrap_pyfunction!(vsasm_count, m)?)?;
    m.add_function(wrap_pyfunction!(oracle_constant, m)?)?;
    m.add_function(wrap_pyfunction!(verify, m)?)?;
    Ok(())
}
