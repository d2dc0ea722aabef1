//! Python bindings for `gramcalc`.

use std::collections::BTreeMap;

use gramcalc::output::TriangleJson;
use gramcalc::registry::CASE_IDS;
use gramcalc::verify::{verify_cases, StandardOracles};
use gramcalc::{
    case_registry, compute_case_triangle, find_case, find_cases, parse_polynomial, CoefficientTriangle,
    Method, OperatorExpr, Oracle, Strictness,
};
use num_bigint::BigInt;
use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;
use pyo3::types::PyType;

fn value_error(e: impl std::fmt::Display) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn strictness(strict: bool) -> Strictness {
    if strict {
        Strictness::Strict
    } else {
        Strictness::Lenient
    }
}

/// Polynomial with integer coefficients in named letters.
#[pyclass(frozen, eq, hash, str, skip_from_py_object, module = "gramcalc_py")]
#[derive(Clone, PartialEq, Eq, Hash)]
struct Polynomial(gramcalc::Polynomial);

impl std::fmt::Display for Polynomial {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        self.0.fmt(f)
    }
}

#[pymethods]
impl Polynomial {
    #[new]
    fn new(text: &str) -> PyResult<Self> {
        parse_polynomial(text).map(Polynomial).map_err(value_error)
    }

    #[classmethod]
    fn constant(_cls: &Bound<'_, PyType>, value: BigInt) -> Self {
        Polynomial(gramcalc::Polynomial::constant(value))
    }

    fn __repr__(&self) -> String {
        format!("Polynomial('{}')", self.0)
    }

    fn __add__(&self, other: &Self) -> Self {
        Polynomial(&self.0 + &other.0)
    }

    fn __sub__(&self, other: &Self) -> Self {
        Polynomial(&self.0 - &other.0)
    }

    fn __mul__(&self, other: &Self) -> Self {
        Polynomial(&self.0 * &other.0)
    }

    fn __neg__(&self) -> Self {
        Polynomial(-&self.0)
    }

    fn __pow__(&self, exponent: u32, _modulo: Option<Py<PyAny>>) -> Self {
        Polynomial(self.0.pow(exponent))
    }

    fn __bool__(&self) -> bool {
        !self.0.is_zero()
    }

    fn __len__(&self) -> usize {
        self.0.len()
    }

    /// Coefficient of a monomial given as text, e.g. `"x^2*y"`; `"1"` for the constant term.
    fn coefficient(&self, monomial: &str) -> PyResult<BigInt> {
        let m = gramcalc::parse::parse_monomial(monomial).map_err(value_error)?;
        Ok(self.0.coefficient(&m))
    }

    /// `(monomial, coefficient)` pairs in canonical order.
    fn terms(&self) -> Vec<(String, BigInt)> {
        self.0.terms().map(|(m, c)| (m.to_string(), c.clone())).collect()
    }

    fn letters(&self) -> Vec<String> {
        self.0.letters().iter().map(ToString::to_string).collect()
    }
}

/// Substitution rules `letter -> polynomial` defining a derivation.
#[pyclass(frozen, eq, str, skip_from_py_object, module = "gramcalc_py")]
#[derive(Clone, PartialEq, Eq)]
struct Grammar(gramcalc::Grammar);

impl std::fmt::Display for Grammar {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        self.0.fmt(f)
    }
}

#[pymethods]
impl Grammar {
    #[new]
    fn new(text: &str) -> PyResult<Self> {
        gramcalc::Grammar::parse(text).map(Grammar).map_err(value_error)
    }

    fn __repr__(&self) -> String {
        format!("Grammar('{}')", self.0)
    }

    fn rules(&self) -> BTreeMap<String, String> {
        self.0
            .rules()
            .map(|(l, p)| (l.to_string(), p.to_string()))
            .collect()
    }

    /// One application of `D`.
    #[pyo3(signature = (p, strict = false))]
    fn derive(&self, p: &Polynomial, strict: bool) -> PyResult<Polynomial> {
        match strictness(strict) {
            Strictness::Strict => self.0.derive_strict(&p.0).map(Polynomial).map_err(value_error),
            Strictness::Lenient => Ok(Polynomial(self.0.derive(&p.0))),
        }
    }

    /// Iterates `seed, op(seed), ..., op^steps(seed)`.
    #[pyo3(signature = (seed, steps, op = "D", strict = false))]
    fn iterate(&self, seed: &Polynomial, steps: usize, op: &str, strict: bool) -> PyResult<Vec<Polynomial>> {
        let op: OperatorExpr = op.parse().map_err(value_error)?;
        let trace = gramcalc::apply_operator(&self.0, &op, &seed.0, steps, strictness(strict))
            .map_err(value_error)?;
        Ok(trace.iterates.into_iter().map(Polynomial).collect())
    }
}

/// Rows of a coefficient triangle.
#[pyclass(frozen, module = "gramcalc_py")]
struct Triangle {
    json: TriangleJson,
    inner: CoefficientTriangle,
}

#[pymethods]
impl Triangle {
    #[getter]
    fn name(&self) -> &str {
        &self.json.case
    }

    #[getter]
    fn k_origin(&self) -> usize {
        self.inner.k_origin
    }

    /// Row indices mapped to their coefficient lists.
    #[getter]
    fn rows(&self) -> BTreeMap<usize, Vec<BigInt>> {
        self.inner.rows.clone()
    }

    fn row(&self, n: usize) -> PyResult<Vec<BigInt>> {
        self.inner
            .row(n)
            .map(<[BigInt]>::to_vec)
            .ok_or_else(|| value_error(format!("no row {n}")))
    }

    /// Entry `(n, k)`, zero outside the stored range.
    fn get(&self, n: usize, k: i64) -> BigInt {
        self.inner.get(n, k)
    }

    fn to_json(&self) -> String {
        self.json.to_json()
    }

    fn to_table(&self) -> String {
        self.json.to_table()
    }

    fn to_csv(&self) -> String {
        self.json.to_csv()
    }

    fn __repr__(&self) -> String {
        format!("<Triangle {} rows={}>", self.json.case, self.inner.rows.len())
    }
}

/// Result of checking cases against their oracles.
#[pyclass(frozen, module = "gramcalc_py")]
struct Report(gramcalc::VerificationReport);

#[pymethods]
impl Report {
    #[getter]
    fn passed(&self) -> bool {
        self.0.pass
    }

    /// Labels of the cases that did not pass.
    fn failures(&self) -> Vec<String> {
        self.0
            .cases
            .iter()
            .filter(|c| !c.passed())
            .map(|c| c.label())
            .collect()
    }

    fn labels(&self) -> Vec<String> {
        self.0.cases.iter().map(|c| c.label()).collect()
    }

    fn to_json(&self) -> String {
        self.0.to_json()
    }

    fn to_table(&self) -> String {
        self.0.to_table()
    }

    fn __repr__(&self) -> String {
        format!("<Report cases={} passed={}>", self.0.cases.len(), self.0.pass)
    }
}

/// Iterates of `op` applied to `seed` under the grammar, as polynomials.
#[pyfunction]
#[pyo3(signature = (grammar, seed, steps, op = "D", strict = false))]
fn derive(grammar: &str, seed: &str, steps: usize, op: &str, strict: bool) -> PyResult<Vec<Polynomial>> {
    let g = Grammar::new(grammar)?;
    g.iterate(&Polynomial::new(seed)?, steps, op, strict)
}

/// Stable ids of the registry cases.
#[pyfunction]
fn case_ids() -> Vec<&'static str> {
    CASE_IDS.to_vec()
}

/// Labels of every registry instance, e.g. `c4[r=2]`.
#[pyfunction]
fn case_labels() -> Vec<String> {
    case_registry().iter().map(|c| c.label()).collect()
}

/// Grammar-derived triangle of a case, rows `1..=rows`.
#[pyfunction]
#[pyo3(signature = (id, rows, r = None))]
fn case_triangle(id: &str, rows: usize, r: Option<usize>) -> PyResult<Triangle> {
    let case = find_case(id, r).map_err(value_error)?;
    let inner = compute_case_triangle(case, rows).map_err(value_error)?;
    let json = TriangleJson::new(case.id, &inner).with_param("r", case.r);
    Ok(Triangle { json, inner })
}

#[pyfunction]
fn oracle_names() -> Vec<&'static str> {
    gramcalc::oracles::ORACLE_NAMES.to_vec()
}

/// Oracle triangle, rows up to `rows`, computed without the grammar engine.
#[pyfunction]
#[pyo3(signature = (name, rows, method = None, r = None))]
fn oracle_triangle(name: &str, rows: usize, method: Option<&str>, r: Option<usize>) -> PyResult<Triangle> {
    let oracle = Oracle::from_name(name, r).map_err(value_error)?;
    let method = match method {
        Some(m) => m.parse::<Method>().map_err(value_error)?,
        None => oracle.default_method(),
    };
    let mut inner = CoefficientTriangle::new(oracle.k_origin());
    for n in oracle.min_n().max(1)..=rows {
        inner.insert(n, oracle.row(method, n).map_err(value_error)?);
    }
    let json = TriangleJson::new(oracle.name(), &inner)
        .with_method(method.name())
        .with_param("r", oracle.param());
    Ok(Triangle { json, inner })
}

/// Verifies one case (all grid points unless `r` is given) or, with no id, the whole registry.
#[pyfunction]
#[pyo3(signature = (case = None, r = None, max_n = 12))]
fn verify(py: Python<'_>, case: Option<&str>, r: Option<usize>, max_n: usize) -> PyResult<Report> {
    let cases = match case {
        Some(id) => {
            let found = find_cases(id, r);
            if found.is_empty() {
                return Err(value_error(format!("unknown case `{id}`")));
            }
            found.into_iter().cloned().collect()
        }
        None => case_registry().to_vec(),
    };
    let report = py.detach(|| verify_cases(&cases, max_n, &StandardOracles));
    Ok(Report(report))
}

#[pymodule]
fn gramcalc_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add("__version__", env!("CARGO_PKG_VERSION"))?;
    m.add_class::<Polynomial>()?;
    m.add_class::<Grammar>()?;
    m.add_class::<Triangle>()?;
    m.add_class::<Report>()?;
    m.add_function(wrap_pyfunction!(derive, m)?)?;
    m.add_function(wrap_pyfunction!(case_ids, m)?)?;
    m.add_function(wrap_pyfunction!(case_labels, m)?)?;
    m.add_function(wrap_pyfunction!(case_triangle, m)?)?;
    m.add_function(wrap_pyfunction!(oracle_names, m)?)?;
    m.add_function(wrap_pyfunction!(oracle_triangle, m)?)?;
    m.add_function(wrap_pyfunction!(verify, m)?)?;
    Ok(())
}
