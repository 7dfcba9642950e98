//! Python bindings: field arithmetic on element ranks, the pair catalog, the
//! full measurement pipeline as a dict or JSON string, and the rational
//! fixed-space helpers.

use std::sync::Arc;

use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;
use pyo3::types::{PyBool, PyDict, PyList};
use serde_json::Value as JsonValue;

use finpair::algebra::{
    classify_twist, fixed_space_dim as rat_fixed_space_dim, rank_k_upper_bound,
    rank_one_lower_bound, rational_string, RatMat, TwistKind,
};
use finpair::ff::FieldSpec;
use finpair::report::{run_pipeline, Caps, PairReport};
use finpair::sympair;
use finpair::verify::{render_table, run_suite};

fn err_to_py(e: finpair::Error) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn json_to_py(py: Python<'_>, v: &JsonValue) -> PyResult<Py<PyAny>> {
    Ok(match v {
        JsonValue::Null => py.None(),
        JsonValue::Bool(b) => PyBool::new(py, *b).to_owned().into_any().unbind(),
        JsonValue::Number(n) => {
            if let Some(i) = n.as_i64() {
                i.into_pyobject(py)?.into_any().unbind()
            } else if let Some(u) = n.as_u64() {
                u.into_pyobject(py)?.into_any().unbind()
            } else {
                n.as_f64().unwrap_or(f64::NAN).into_pyobject(py)?.into_any().unbind()
            }
        }
        JsonValue::String(s) => s.as_str().into_pyobject(py)?.into_any().unbind(),
        JsonValue::Array(items) => {
            let converted: Vec<Py<PyAny>> = items
                .iter()
                .map(|item| json_to_py(py, item))
                .collect::<PyResult<_>>()?;
            PyList::new(py, converted)?.into_any().unbind()
        }
        JsonValue::Object(map) => {
            let d = PyDict::new(py);
            for (k, val) in map {
                d.set_item(k, json_to_py(py, val)?)?;
            }
            d.into_any().unbind()
        }
    })
}

/// Arithmetic in GF(p^k) on element ranks 0..p^k, where a rank encodes the
/// coefficient vector of the element base p, constant term first.
#[pyclass]
struct FiniteField {
    spec: Arc<FieldSpec>,
}

impl FiniteField {
    fn elem(&self, rank: u64) -> PyResult<finpair::ff::FieldElem> {
        if rank >= self.spec.order() {
            return Err(PyValueError::new_err(format!(
                "rank {} out of range for a field of order {}",
                rank,
                self.spec.order()
            )));
        }
        Ok(self.spec.from_rank(rank))
    }
}

#[pymethods]
impl FiniteField {
    #[new]
    fn new(p: u64, k: usize) -> PyResult<Self> {
        let spec = FieldSpec::new(p, k).map_err(err_to_py)?;
        Ok(FiniteField { spec: Arc::new(spec) })
    }

    fn order(&self) -> u64 {
        self.spec.order()
    }

    fn characteristic(&self) -> u64 {
        self.spec.p()
    }

    fn degree(&self) -> usize {
        self.spec.k()
    }

    fn add(&self, a: u64, b: u64) -> PyResult<u64> {
        Ok(self.spec.rank(self.spec.add(self.elem(a)?, self.elem(b)?)))
    }

    fn sub(&self, a: u64, b: u64) -> PyResult<u64> {
        Ok(self.spec.rank(self.spec.sub(self.elem(a)?, self.elem(b)?)))
    }

    fn mul(&self, a: u64, b: u64) -> PyResult<u64> {
        Ok(self.spec.rank(self.spec.mul(self.elem(a)?, self.elem(b)?)))
    }

    fn neg(&self, a: u64) -> PyResult<u64> {
        Ok(self.spec.rank(self.spec.neg(self.elem(a)?)))
    }

    fn inv(&self, a: u64) -> PyResult<u64> {
        let x = self.spec.inv(self.elem(a)?).map_err(err_to_py)?;
        Ok(self.spec.rank(x))
    }

    fn pow(&self, a: u64, e: u64) -> PyResult<u64> {
        Ok(self.spec.rank(self.spec.pow(self.elem(a)?, e)))
    }

    fn frobenius(&self, a: u64) -> PyResult<u64> {
        Ok(self.spec.rank(self.spec.frobenius(self.elem(a)?)))
    }

    fn __repr__(&self) -> String {
        format!("FiniteField(p={}, k={})", self.spec.p(), self.spec.k())
    }
}

/// The built-in pair families as a list of dicts.
#[pyfunction]
fn catalog(py: Python<'_>) -> PyResult<Py<PyAny>> {
    let entries = PyList::empty(py);
    for e in sympair::catalog() {
        let d = PyDict::new(py);
        d.set_item("id", e.id)?;
        d.set_item("description", e.description)?;
        d.set_item("dim", e.dim)?;
        d.set_item("trusted", e.trusted)?;
        entries.append(d)?;
    }
    Ok(entries.into_any().unbind())
}

fn make_report(pair_id: &str, q: u64, cap_group: Option<u64>, cap_cosets: Option<usize>) -> PyResult<PairReport> {
    let mut caps = Caps::default();
    if let Some(g) = cap_group {
        caps.group = g;
    }
    if let Some(c) = cap_cosets {
        caps.cosets = c;
    }
    let pipeline = run_pipeline(pair_id, q, &caps).map_err(err_to_py)?;
    Ok(PairReport::from_pipeline(&pipeline))
}

/// Full measurement report for one pair at one field size, as a dict.
#[pyfunction]
#[pyo3(signature = (pair_id, q, cap_group=None, cap_cosets=None))]
fn report(
    py: Python<'_>,
    pair_id: &str,
    q: u64,
    cap_group: Option<u64>,
    cap_cosets: Option<usize>,
) -> PyResult<Py<PyAny>> {
    let report = make_report(pair_id, q, cap_group, cap_cosets)?;
    let value = serde_json::to_value(&report)
        .map_err(|e| PyValueError::new_err(e.to_string()))?;
    json_to_py(py, &value)
}

/// The same report serialized to a JSON string.
#[pyfunction]
#[pyo3(signature = (pair_id, q, cap_group=None, cap_cosets=None))]
fn report_json(pair_id: &str, q: u64, cap_group: Option<u64>, cap_cosets: Option<usize>) -> PyResult<String> {
    let report = make_report(pair_id, q, cap_group, cap_cosets)?;
    serde_json::to_string_pretty(&report).map_err(|e| PyValueError::new_err(e.to_string()))
}

fn rat_mat_from_rows(rows: Vec<Vec<i64>>) -> PyResult<RatMat> {
    let n = rows.len();
    if n == 0 || rows.iter().any(|r| r.len() != n) {
        return Err(PyValueError::new_err("expected a nonempty square matrix"));
    }
    let refs: Vec<&[i64]> = rows.iter().map(|r| r.as_slice()).collect();
    RatMat::from_integers(&refs).map_err(err_to_py)
}

/// Dimension of the space of matrices X with X g = g X^T, for invertible g.
#[pyfunction]
fn fixed_space_dim(rows: Vec<Vec<i64>>) -> PyResult<usize> {
    rat_fixed_space_dim(&rat_mat_from_rows(rows)?).map_err(err_to_py)
}

/// Whether g is symmetric, skew, or twists to a non-involution.
#[pyfunction]
fn classify(rows: Vec<Vec<i64>>) -> PyResult<&'static str> {
    Ok(match classify_twist(&rat_mat_from_rows(rows)?).map_err(err_to_py)? {
        TwistKind::Symmetric => "symmetric",
        TwistKind::Skew => "skew",
        TwistKind::NotInvolution => "not-involution",
    })
}

/// Lower bound for the number of multiplicity-one blocks: (epsilon, bound).
#[pyfunction]
fn rank_one_bound(dim_a: u64, fixed_dim: u64) -> PyResult<(String, u64)> {
    let out = rank_one_lower_bound(dim_a, fixed_dim).map_err(err_to_py)?;
    Ok((rational_string(&out.epsilon), out.bound))
}

/// Upper bound for the total dimension of blocks of size >= k:
/// (fixed fraction, bound or None).
#[pyfunction]
fn rank_k_bound(dim_a: u64, fixed_dim: u64, k: u64) -> PyResult<(String, Option<u64>)> {
    let out = rank_k_upper_bound(dim_a, fixed_dim, k).map_err(err_to_py)?;
    Ok((rational_string(&out.epsilon), out.bound))
}

/// Run the verification suite: (all_pass, rendered table).
#[pyfunction]
fn verify_suite() -> PyResult<(bool, String)> {
    let summary = run_suite().map_err(err_to_py)?;
    Ok((summary.all_pass(), render_table(&summary)))
}

#[pymodule]
fn finpair_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<FiniteField>()?;
    m.add_function(wrap_pyfunction!(catalog, m)?)?;
    m.add_function(wrap_pyfunction!(report, m)?)?;
    m.add_function(wrap_pyfunction!(report_json, m)?)?;
    m.add_function(wrap_pyfunction!(fixed_space_dim, m)?)?;
    m.add_function(wrap_pyfunction!(classify, m)?)?;
    m.add_function(wrap_pyfunction!(rank_one_bound, m)?)?;
    m.add_function(wrap_pyfunction!(rank_k_bound, m)?)?;
    m.add_function(wrap_pyfunction!(verify_suite, m)?)?;
    Ok(())
}
