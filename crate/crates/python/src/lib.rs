//! Python bindings. Integers cross as Python ints, matrices as lists of
//! rows, certificates and reports as dicts with the same field names as
//! the CLI's JSON output.

use std::time::Duration;

use knotsplit::cli::{format_matrix, parse_matrix, verify_report_json, InvariantSummary};
use knotsplit::concordance::{self, ConcordanceError};
use knotsplit::qform::{self, IsotropicSearch, QuadForm, SearchBudget};
use knotsplit::{IntMatrix, IntVector, Omega};
use num_bigint::BigInt;
use pyo3::create_exception;
use pyo3::exceptions::{PyRuntimeError, PyValueError};
use pyo3::prelude::*;
use serde::Serialize;

create_exception!(
    knotsplit,
    Inconclusive,
    PyRuntimeError,
    "No certificate within the search budget."
);

fn value_error(e: impl std::fmt::Display) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn concordance_error(e: ConcordanceError) -> PyErr {
    match e {
        ConcordanceError::DefiniteForm | ConcordanceError::BudgetExhausted(_) => Inconclusive::new_err(e.to_string()),
        e => value_error(e),
    }
}

fn to_matrix(rows: Vec<Vec<BigInt>>) -> PyResult<IntMatrix> {
    let cols = rows.first().map_or(0, Vec::len);
    IntMatrix::from_row_vecs(rows, cols).map_err(value_error)
}

fn to_py(py: Python<'_>, value: &impl Serialize) -> PyResult<PyObject> {
    let text = serde_json::to_string(value).map_err(value_error)?;
    Ok(py.import("json")?.call_method1("loads", (text,))?.unbind())
}

fn budget(max_norm: u64, time_budget: f64) -> PyResult<SearchBudget> {
    let seconds = Duration::try_from_secs_f64(time_budget).map_err(value_error)?;
    SearchBudget::new(max_norm, seconds).map_err(value_error)
}

/// Integer Seifert matrix V with V - V^T unimodular.
#[pyclass(name = "SeifertForm", module = "knotsplit", frozen)]
#[derive(Clone)]
struct PySeifertForm(knotsplit::SeifertForm);

#[pymethods]
impl PySeifertForm {
    #[new]
    #[pyo3(signature = (rows, label = "V"))]
    fn new(rows: Vec<Vec<BigInt>>, label: &str) -> PyResult<Self> {
        let v = knotsplit::SeifertForm::new(to_matrix(rows)?, label).map_err(value_error)?;
        Ok(Self(v))
    }

    #[staticmethod]
    fn torus(p: u64, q: u64) -> PyResult<Self> {
        knotsplit::torus_seifert_matrix(p, q).map(Self).map_err(value_error)
    }

    #[getter]
    fn matrix(&self) -> Vec<Vec<BigInt>> {
        self.0.matrix().to_rows()
    }

    #[getter]
    fn label(&self) -> String {
        self.0.label().to_string()
    }

    #[getter]
    fn dimension(&self) -> usize {
        self.0.dimension()
    }

    #[getter]
    fn genus(&self) -> usize {
        self.0.genus()
    }

    fn signature(&self) -> i64 {
        self.0.signature()
    }

    fn arf(&self) -> u8 {
        self.0.arf_invariant()
    }

    /// (min_degree, coefficients) of the normalized Alexander polynomial.
    fn alexander(&self) -> (i64, Vec<BigInt>) {
        let d = self.0.alexander_polynomial();
        (d.min_degree(), d.coefficients().to_vec())
    }

    /// Omega as "-1", "i", "-i" or "a/b" for exp(2 pi i a / b).
    #[pyo3(signature = (omega = "-1"))]
    fn tristram_levine(&self, omega: &str) -> PyResult<i64> {
        let omega: Omega = omega.parse().map_err(value_error)?;
        self.0.tristram_levine(omega).map_err(value_error)
    }

    fn invariants(&self, py: Python<'_>) -> PyResult<PyObject> {
        to_py(py, &InvariantSummary::of(&self.0))
    }

    fn connected_sum(&self, other: &PySeifertForm) -> Self {
        Self(self.0.connected_sum(&other.0))
    }

    fn concordance_inverse(&self) -> Self {
        Self(self.0.concordance_inverse())
    }

    fn congruence_transform(&self, p: Vec<Vec<BigInt>>) -> PyResult<Self> {
        self.0
            .congruence_transform(&to_matrix(p)?)
            .map(Self)
            .map_err(value_error)
    }

    fn __eq__(&self, other: &PySeifertForm) -> bool {
        self.0.matrix() == other.0.matrix()
    }

    fn __repr__(&self) -> String {
        format!(
            "SeifertForm(label={:?}, dimension={})",
            self.0.label(),
            self.0.dimension()
        )
    }
}

#[pyfunction]
fn torus_alexander(p: u64, q: u64) -> PyResult<(i64, Vec<BigInt>)> {
    let d = knotsplit::torus_alexander_formula(p, q).map_err(value_error)?;
    Ok((d.min_degree(), d.coefficients().to_vec()))
}

#[pyfunction]
fn torus_signature(p: u64, q: u64) -> PyResult<i64> {
    knotsplit::torus_signature_count(p, q).map_err(value_error)
}

#[pyfunction]
fn tau_torus(p: u64, q: u64) -> PyResult<i64> {
    knotsplit::tau_torus(p, q).map_err(value_error)
}

/// Canonical primitive isotropic vector of a symmetric matrix, or None.
#[pyfunction]
#[pyo3(signature = (q, max_norm = 8, time_budget = 120.0))]
fn find_isotropic(q: Vec<Vec<BigInt>>, max_norm: u64, time_budget: f64) -> PyResult<Option<Vec<BigInt>>> {
    let form = QuadForm::new(to_matrix(q)?).map_err(value_error)?;
    match qform::find_primitive_isotropic(&form, &budget(max_norm, time_budget)?).map_err(value_error)? {
        IsotropicSearch::Found(c) => Ok(Some(c.z.entries().to_vec())),
        IsotropicSearch::NotFound { .. } => Ok(None),
    }
}

/// P with first row z, det P = 1 and P J P^T = J_std.
#[pyfunction]
fn symplectic_completion(j: Vec<Vec<BigInt>>, z: Vec<BigInt>) -> PyResult<Vec<Vec<BigInt>>> {
    let p = qform::symplectic_completion(&to_matrix(j)?, &IntVector(z)).map_err(value_error)?;
    Ok(p.matrix().to_rows())
}

#[pyfunction]
#[pyo3(signature = (v, max_norm = 8, time_budget = 120.0))]
fn derive(py: Python<'_>, v: &PySeifertForm, max_norm: u64, time_budget: f64) -> PyResult<PyObject> {
    let cert = concordance::derive_reduced_form(&v.0, &budget(max_norm, time_budget)?).map_err(concordance_error)?;
    to_py(py, &cert)
}

#[pyfunction]
#[pyo3(signature = (v, max_norm = 8, time_budget = 120.0))]
fn certify_slice(py: Python<'_>, v: &PySeifertForm, max_norm: u64, time_budget: f64) -> PyResult<PyObject> {
    let cert = concordance::derive_reduced_form(&v.0, &budget(max_norm, time_budget)?).map_err(concordance_error)?;
    to_py(
        py,
        &concordance::build_slice_certificate(&cert).map_err(concordance_error)?,
    )
}

#[pyfunction]
fn verify_metabolizer(w: &PySeifertForm, m: Vec<Vec<BigInt>>) -> PyResult<bool> {
    concordance::verify_metabolizer(&w.0, &to_matrix(m)?).map_err(value_error)
}

/// Tau chain report for T(p, q); `conclusion` is "SUMMAND_ESTABLISHED" or
/// "INCONCLUSIVE".
#[pyfunction]
#[pyo3(signature = (p, q, max_norm = 8, time_budget = 120.0))]
fn paper_chain(py: Python<'_>, p: u64, q: u64, max_norm: u64, time_budget: f64) -> PyResult<PyObject> {
    let report = concordance::tau_chain_report(p, q, &budget(max_norm, time_budget)?).map_err(value_error)?;
    to_py(py, &report)
}

/// Re-check a JSON report written by the CLI; returns its kind.
#[pyfunction]
fn verify_certificate(text: &str) -> PyResult<String> {
    verify_report_json(text).map_err(|e| PyValueError::new_err(e.message))
}

#[pyfunction]
#[pyo3(name = "parse_matrix")]
fn py_parse_matrix(text: &str) -> PyResult<Vec<Vec<BigInt>>> {
    Ok(parse_matrix(text).map_err(value_error)?.to_rows())
}

#[pyfunction]
#[pyo3(name = "format_matrix")]
fn py_format_matrix(rows: Vec<Vec<BigInt>>) -> PyResult<String> {
    Ok(format_matrix(&to_matrix(rows)?))
}

#[pymodule]
#[pyo3(name = "knotsplit")]
pub fn knotsplit_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PySeifertForm>()?;
    m.add("Inconclusive", m.py().get_type::<Inconclusive>())?;
    m.add_function(wrap_pyfunction!(torus_alexander, m)?)?;
    m.add_function(wrap_pyfunction!(torus_signature, m)?)?;
    m.add_function(wrap_pyfunction!(tau_torus, m)?)?;
    m.add_function(wrap_pyfunction!(find_isotropic, m)?)?;
    m.add_function(wrap_pyfunction!(symplectic_completion, m)?)?;
    m.add_function(wrap_pyfunction!(derive, m)?)?;
    m.add_function(wrap_pyfunction!(certify_slice, m)?)?;
    m.add_function(wrap_pyfunction!(verify_metabolizer, m)?)?;
    m.add_function(wrap_pyfunction!(paper_chain, m)?)?;
    m.add_function(wrap_pyfunction!(verify_certificate, m)?)?;
    m.add_function(wrap_pyfunction!(py_parse_matrix, m)?)?;
    m.add_function(wrap_pyfunction!(py_format_matrix, m)?)?;
    Ok(())
}
