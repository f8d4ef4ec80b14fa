use num_bigint::BigUint;
use pyo3::create_exception;
use pyo3::exceptions::{PyException, PyValueError};
use pyo3::prelude::*;

use ssgenus::report::{self, EngineParams, RowStatus, WitnessFile};
use ssgenus::tables::{TableKind, Tier};
use ssgenus::{Error, GroupSpec, TripleSignature};

create_exception!(ssgenus, CapabilityError, PyException);
create_exception!(ssgenus, VerificationError, PyException);
create_exception!(ssgenus, InvariantError, PyException);

fn to_py(e: Error) -> PyErr {
    match e {
        Error::Parse(_) | Error::Structural(_) => PyValueError::new_err(e.to_string()),
        Error::Capability(_) | Error::Precondition(_) => CapabilityError::new_err(e.to_string()),
        Error::Verification(_) => VerificationError::new_err(e.to_string()),
        _ => InvariantError::new_err(e.to_string()),
    }
}

fn params(threshold: Option<u64>, heuristic: bool, budget: Option<u64>, seed: u64, jobs: usize) -> EngineParams {
    let d = EngineParams::default();
    EngineParams {
        threshold: threshold.unwrap_or(d.threshold),
        heuristic,
        budget: budget.unwrap_or(d.budget),
        seed,
        jobs,
    }
}

#[pyclass(name = "Permutation", frozen, eq, from_py_object)]
#[derive(Clone, PartialEq)]
struct PyPermutation(ssgenus::Permutation);

#[pymethods]
impl PyPermutation {
    /// Cycle notation, e.g. `"(1 2)(3 4 5)"`; `degree` defaults to the largest point.
    #[new]
    #[pyo3(signature = (cycles, degree=None))]
    fn new(cycles: &str, degree: Option<usize>) -> PyResult<Self> {
        let p = match degree {
            Some(d) => ssgenus::Permutation::parse(d, cycles),
            None => ssgenus::Permutation::parse_minimal(cycles),
        };
        p.map(PyPermutation).map_err(to_py)
    }

    #[getter]
    fn degree(&self) -> usize {
        self.0.degree()
    }

    fn order(&self) -> u64 {
        self.0.order()
    }

    fn cycle_type(&self) -> Vec<usize> {
        self.0.cycle_type().lengths()
    }

    /// Left-to-right product: `i -> other(self(i))`.
    fn then(&self, other: &PyPermutation) -> PyResult<Self> {
        self.0.compose(&other.0).map(PyPermutation).map_err(to_py)
    }

    fn inverse(&self) -> Self {
        PyPermutation(self.0.inverse())
    }

    fn __mul__(&self, other: &PyPermutation) -> PyResult<Self> {
        self.then(other)
    }

    fn __str__(&self) -> String {
        self.0.to_string()
    }

    fn __repr__(&self) -> String {
        format!("Permutation('{}', degree={})", self.0, self.0.degree())
    }
}

#[pyclass(name = "SignedPermutation", frozen, eq, from_py_object)]
#[derive(Clone, PartialEq)]
struct PySignedPermutation(ssgenus::SignedPermutation);

#[pymethods]
impl PySignedPermutation {
    /// `"[(1 2) | 1100]"`.
    #[new]
    fn new(text: &str) -> PyResult<Self> {
        ssgenus::SignedPermutation::parse(text)
            .map(PySignedPermutation)
            .map_err(to_py)
    }

    #[getter]
    fn rank(&self) -> usize {
        self.0.rank()
    }

    fn order(&self) -> u64 {
        self.0.order()
    }

    fn is_in_dn(&self) -> bool {
        self.0.is_in_dn()
    }

    fn then(&self, other: &PySignedPermutation) -> PyResult<Self> {
        self.0.multiply(&other.0).map(PySignedPermutation).map_err(to_py)
    }

    fn __mul__(&self, other: &PySignedPermutation) -> PyResult<Self> {
        self.then(other)
    }

    /// Action on `±1..±n` as a permutation of `2n` points.
    fn to_degree_2n(&self) -> PyPermutation {
        PyPermutation(self.0.to_degree_2n())
    }

    fn __str__(&self) -> String {
        self.0.to_string()
    }

    fn __repr__(&self) -> String {
        format!("SignedPermutation('{}')", self.0)
    }
}

#[pyclass(name = "Report", frozen)]
struct PyReport(report::Report);

#[pymethods]
impl PyReport {
    #[getter]
    fn group(&self) -> String {
        self.0.group.clone()
    }

    #[getter]
    fn order(&self) -> BigUint {
        self.0.order.clone()
    }

    #[getter]
    fn triple(&self) -> (u64, u64, u64) {
        let [p, q, r] = self.0.triple.entries();
        (p, q, r)
    }

    #[getter]
    fn genus(&self) -> BigUint {
        self.0.genus.clone()
    }

    #[getter]
    fn exact(&self) -> bool {
        self.0.exactness == ssgenus::genus::Exactness::Exact
    }

    #[getter]
    fn method(&self) -> String {
        self.0.method.to_string()
    }

    #[getter]
    fn witness(&self) -> (String, String) {
        (self.0.witness.x.clone(), self.0.witness.y.clone())
    }

    #[getter]
    fn paper_status(&self) -> String {
        self.0.paper.status.to_string()
    }

    #[getter]
    fn notes(&self) -> Vec<String> {
        self.0.notes.clone()
    }

    fn to_json(&self) -> PyResult<String> {
        self.0.to_json().map_err(to_py)
    }

    fn witness_json(&self) -> PyResult<String> {
        self.0.witness_file().to_json().map_err(to_py)
    }

    fn __repr__(&self) -> String {
        format!("Report({} {} genus={})", self.0.group, self.0.triple, self.0.genus)
    }
}

/// Minimal generating pair and strong symmetric genus of `spec`.
#[pyfunction]
#[pyo3(signature = (spec, threshold=None, heuristic=false, budget=None, seed=0, jobs=0))]
fn genus(
    py: Python<'_>,
    spec: &str,
    threshold: Option<u64>,
    heuristic: bool,
    budget: Option<u64>,
    seed: u64,
    jobs: usize,
) -> PyResult<PyReport> {
    let spec: GroupSpec = spec.parse().map_err(to_py)?;
    let p = params(threshold, heuristic, budget, seed, jobs);
    py.detach(|| report::run_genus(spec, &p)).map(PyReport).map_err(to_py)
}

/// Lifts a `Σ_n` pair of type `(p,q,r)` to a generating pair of `D_n`.
#[pyfunction]
#[pyo3(signature = (n, p, q, r, threshold=None, heuristic=false, budget=None, seed=0, jobs=0))]
#[allow(clippy::too_many_arguments)]
fn lift(
    py: Python<'_>,
    n: usize,
    p: u64,
    q: u64,
    r: u64,
    threshold: Option<u64>,
    heuristic: bool,
    budget: Option<u64>,
    seed: u64,
    jobs: usize,
) -> PyResult<PyReport> {
    let t = TripleSignature::new(p, q, r).map_err(to_py)?;
    let prm = params(threshold, heuristic, budget, seed, jobs);
    py.detach(|| report::run_lift(n, t, &prm)).map(PyReport).map_err(to_py)
}

/// Sorted element orders of `spec`.
#[pyfunction]
fn spectrum(spec: &str) -> PyResult<Vec<u64>> {
    let spec: GroupSpec = spec.parse().map_err(to_py)?;
    report::run_spectrum(spec, &EngineParams::default())
        .map(|s| s.orders)
        .map_err(to_py)
}

/// Re-checks a witness file; returns the genus it certifies as an upper bound.
#[pyfunction]
fn verify_witness(text: &str) -> PyResult<BigUint> {
    WitnessFile::from_json(text).and_then(|w| w.verify()).map_err(to_py)
}

/// `1 + |G|(1 - 1/p - 1/q - 1/r)/2`, or 0 / 1 for spherical / euclidean triples.
#[pyfunction]
fn riemann_hurwitz(order: BigUint, p: u64, q: u64, r: u64) -> PyResult<BigUint> {
    TripleSignature::new(p, q, r)
        .and_then(|t| t.genus(&order))
        .map_err(to_py)
}

type TableRow = (String, (u64, u64, u64), BigUint, bool);

/// `(group, listed triple, listed genus, status)` for every row of the tier.
#[pyfunction]
#[pyo3(signature = (kind, tier="standard", jobs=0))]
fn reproduce_table(py: Python<'_>, kind: &str, tier: &str, jobs: usize) -> PyResult<Vec<TableRow>> {
    let kind: TableKind = kind.parse().map_err(to_py)?;
    let tier: Tier = tier.parse().map_err(to_py)?;
    let p = params(None, false, None, 0, jobs);
    let rows = py.detach(|| report::reproduce_table(kind, tier, &p));
    Ok(rows
        .into_iter()
        .map(|r| {
            let [a, b, c] = r.expected_triple.entries();
            (r.group, (a, b, c), r.expected_genus, r.status == RowStatus::Match)
        })
        .collect())
}

#[pymodule]
#[pyo3(name = "ssgenus")]
fn ssgenus_module(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyPermutation>()?;
    m.add_class::<PySignedPermutation>()?;
    m.add_class::<PyReport>()?;
    m.add_function(wrap_pyfunction!(genus, m)?)?;
    m.add_function(wrap_pyfunction!(lift, m)?)?;
    m.add_function(wrap_pyfunction!(spectrum, m)?)?;
    m.add_function(wrap_pyfunction!(verify_witness, m)?)?;
    m.add_function(wrap_pyfunction!(riemann_hurwitz, m)?)?;
    m.add_function(wrap_pyfunction!(reproduce_table, m)?)?;
    m.add("CapabilityError", m.py().get_type::<CapabilityError>())?;
    m.add("VerificationError", m.py().get_type::<VerificationError>())?;
    m.add("InvariantError", m.py().get_type::<InvariantError>())?;
    Ok(())
}
