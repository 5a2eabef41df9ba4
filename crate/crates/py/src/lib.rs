//! Python bindings: `import ffperiod`.

use std::collections::BTreeMap;

use num_bigint::BigUint;
use pyo3::create_exception;
use pyo3::exceptions::{PyRuntimeError, PyValueError};
use pyo3::prelude::*;

use ffperiod_core as core;
use ffperiod_core::{EnumBudget, Error, ExactRatio, TowerConstraint};

create_exception!(ffperiod, BudgetExceededError, PyRuntimeError);
create_exception!(ffperiod, CountMismatchError, PyRuntimeError);

fn py_err(e: Error) -> PyErr {
    match e {
        Error::BudgetExceeded { .. } => BudgetExceededError::new_err(e.to_string()),
        Error::CountMismatch { .. } => CountMismatchError::new_err(e.to_string()),
        _ => PyValueError::new_err(e.to_string()),
    }
}

fn budget(max_enum: Option<u64>) -> EnumBudget {
    max_enum.map_or_else(EnumBudget::from_env, EnumBudget)
}

/// `power:T` or `cheb:T`.
#[pyclass(name = "MapSpec", frozen, eq, hash, from_py_object)]
#[derive(Clone, PartialEq, Eq, Hash)]
struct PyMapSpec(core::MapSpec);

#[pymethods]
impl PyMapSpec {
    #[new]
    fn new(spec: &str) -> PyResult<Self> {
        spec.parse().map(PyMapSpec).map_err(py_err)
    }

    #[staticmethod]
    fn power(t: u64) -> PyResult<Self> {
        core::MapSpec::power(t).map(PyMapSpec).map_err(py_err)
    }

    #[staticmethod]
    fn chebyshev(t: u64) -> PyResult<Self> {
        core::MapSpec::chebyshev(t).map(PyMapSpec).map_err(py_err)
    }

    #[getter]
    fn kind(&self) -> &'static str {
        match self.0.kind() {
            core::MapKind::Power => "power",
            core::MapKind::Chebyshev => "cheb",
        }
    }

    #[getter]
    fn t(&self) -> u64 {
        self.0.t()
    }

    fn __str__(&self) -> String {
        self.0.to_string()
    }

    fn __repr__(&self) -> String {
        format!("MapSpec('{}')", self.0)
    }
}

/// Accepts a `MapSpec` or its string form.
fn map_arg(obj: &Bound<'_, PyAny>) -> PyResult<core::MapSpec> {
    if let Ok(m) = obj.extract::<PyMapSpec>() {
        return Ok(m.0);
    }
    let s: String = obj.extract()?;
    s.parse().map_err(py_err)
}

/// `F_{p^n}` with its canonical modulus. Elements are addressed by base-p index.
#[pyclass(name = "Field", frozen)]
struct PyField(core::FieldDesc);

#[pymethods]
impl PyField {
    #[new]
    fn new(p: u64, n: usize) -> PyResult<Self> {
        core::build_field(p, n).map(PyField).map_err(py_err)
    }

    #[getter]
    fn p(&self) -> u64 {
        self.0.p()
    }

    #[getter]
    fn n(&self) -> usize {
        self.0.n()
    }

    /// Coefficients, constant term first.
    #[getter]
    fn modulus(&self) -> Vec<u64> {
        self.0.modulus().to_vec()
    }

    #[getter]
    fn size(&self) -> BigUint {
        self.0.size()
    }

    fn element(&self, index: u64) -> PyResult<Vec<u64>> {
        Ok(self.0.from_index(index).map_err(py_err)?.coeffs().to_vec())
    }

    fn index_of(&self, coeffs: Vec<u64>) -> PyResult<u64> {
        Ok(self.0.index_of(&self.0.element(coeffs).map_err(py_err)?))
    }

    /// Index of the image of element `index` under `map`.
    fn apply(&self, map: &Bound<'_, PyAny>, index: u64) -> PyResult<u64> {
        let z = self.0.from_index(index).map_err(py_err)?;
        Ok(self
            .0
            .index_of(&core::dynmaps::apply(&self.0, &map_arg(map)?, &z)))
    }

    #[pyo3(signature = (map, max_enum=None))]
    fn census(&self, map: &Bound<'_, PyAny>, max_enum: Option<u64>) -> PyResult<PyOrbitCensus> {
        core::brute_census(&self.0, &map_arg(map)?, budget(max_enum))
            .map(PyOrbitCensus)
            .map_err(py_err)
    }

    fn __repr__(&self) -> String {
        format!("Field({}, {})", self.0.p(), self.0.n())
    }

    fn __str__(&self) -> String {
        self.0.label()
    }
}

#[pyclass(name = "OrbitCensus", frozen)]
struct PyOrbitCensus(core::OrbitCensus);

#[pymethods]
impl PyOrbitCensus {
    #[getter]
    fn field_size(&self) -> u64 {
        self.0.field_size
    }

    #[getter]
    fn periodic_count(&self) -> u64 {
        self.0.periodic_count
    }

    #[getter]
    fn preperiodic_count(&self) -> u64 {
        self.0.preperiodic_count
    }

    #[getter]
    fn cycle_lengths(&self) -> Vec<u64> {
        self.0.cycle_lengths.clone()
    }

    #[getter]
    fn max_tail(&self) -> u64 {
        self.0.max_tail
    }

    fn cycle_histogram(&self) -> BTreeMap<u64, u64> {
        self.0.cycle_histogram()
    }

    fn is_permutation(&self) -> bool {
        self.0.is_permutation()
    }

    fn __repr__(&self) -> String {
        format!(
            "OrbitCensus(field_size={}, periodic_count={}, preperiodic_count={})",
            self.0.field_size, self.0.periodic_count, self.0.preperiodic_count
        )
    }
}

#[pyclass(name = "Limit", frozen)]
struct PyLimit(core::Limit);

#[pymethods]
impl PyLimit {
    #[getter]
    fn numerator(&self) -> BigUint {
        self.0.value.numer().clone()
    }

    #[getter]
    fn denominator(&self) -> BigUint {
        self.0.value.denom().clone()
    }

    #[getter]
    fn extension(&self) -> bool {
        self.0.extension
    }

    #[getter]
    fn i_primes(&self) -> Vec<u64> {
        self.0.i_primes.clone()
    }

    #[getter]
    fn j_primes(&self) -> Vec<u64> {
        self.0.j_primes.clone()
    }

    #[getter]
    fn q_i(&self) -> BigUint {
        self.0.q_i.clone()
    }

    #[getter]
    fn q_j(&self) -> BigUint {
        self.0.q_j.clone()
    }

    /// The value as a `fractions.Fraction`.
    fn as_fraction<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyAny>> {
        py.import("fractions")?
            .getattr("Fraction")?
            .call1((self.numerator(), self.denominator()))
    }

    #[pyo3(signature = (sig_figs=9))]
    fn render(&self, sig_figs: usize) -> String {
        core::render_decimal(&self.0.value, sig_figs)
    }

    fn __repr__(&self) -> String {
        format!("Limit({})", self.0.value)
    }
}

/// A tower of fields `F_{p^n}` selected by `delta`, `nu` and a membership rule.
#[pyclass(name = "TowerQuery", frozen)]
struct PyTowerQuery(core::TowerQuery);

#[pymethods]
impl PyTowerQuery {
    #[new]
    #[pyo3(signature = (p, map, delta=None, nu=None, constraint=None))]
    fn new(
        p: u64,
        map: &Bound<'_, PyAny>,
        delta: Option<u64>,
        nu: Option<Vec<u32>>,
        constraint: Option<&str>,
    ) -> PyResult<Self> {
        let map = map_arg(map)?;
        let nu = nu.unwrap_or_else(|| vec![0; map.spec().r()]);
        let constraint = constraint
            .map(str::parse::<TowerConstraint>)
            .transpose()
            .map_err(py_err)?;
        core::TowerQuery::new(p, map, delta, nu, constraint)
            .map(PyTowerQuery)
            .map_err(py_err)
    }

    #[getter]
    fn p(&self) -> u64 {
        self.0.p()
    }

    #[getter]
    fn map(&self) -> PyMapSpec {
        PyMapSpec(self.0.map().clone())
    }

    #[getter]
    fn delta(&self) -> u64 {
        self.0.delta()
    }

    #[getter]
    fn nu(&self) -> Vec<u32> {
        self.0.nu().to_vec()
    }

    #[getter]
    fn constraint(&self) -> &'static str {
        self.0.constraint().name()
    }

    fn admits(&self, n: u64) -> bool {
        self.0.admits(n)
    }

    /// The first `count` degrees n in the tower.
    fn members(&self, count: usize) -> PyResult<Vec<u64>> {
        core::tower(&self.0, count).map_err(py_err)
    }

    fn limit(&self) -> PyResult<PyLimit> {
        core::limit(&self.0).map(PyLimit).map_err(py_err)
    }
}

/// Number of periodic points of `map` on `F_{p^n}`, from the closed form.
#[pyfunction]
fn analytic_count(p: u64, n: u64, map: &Bound<'_, PyAny>) -> PyResult<BigUint> {
    core::analytic_count(p, n, &map_arg(map)?).map_err(py_err)
}

/// Orbit census by enumerating `F_{p^n}`.
#[pyfunction]
#[pyo3(signature = (p, n, map, max_enum=None))]
fn brute_census(
    p: u64,
    n: usize,
    map: &Bound<'_, PyAny>,
    max_enum: Option<u64>,
) -> PyResult<PyOrbitCensus> {
    let field = core::build_field(p, n).map_err(py_err)?;
    core::brute_census(&field, &map_arg(map)?, budget(max_enum))
        .map(PyOrbitCensus)
        .map_err(py_err)
}

/// `#Per / p^n` as a reduced `(numerator, denominator)` pair.
#[pyfunction]
fn ratio_at(p: u64, n: u64, map: &Bound<'_, PyAny>) -> PyResult<(BigUint, BigUint)> {
    let r = core::ratio_at(p, n, &map_arg(map)?).map_err(py_err)?;
    Ok((r.numer().clone(), r.denom().clone()))
}

/// `num/den` with `sig_figs` significant digits, half to even.
#[pyfunction]
#[pyo3(signature = (num, den, sig_figs=9))]
fn render_decimal(num: BigUint, den: BigUint, sig_figs: usize) -> PyResult<String> {
    let r = ExactRatio::new(num, den).map_err(py_err)?;
    Ok(core::render_decimal(&r, sig_figs))
}

/// `count / size` as a 32-bit-mantissa float quotient would print it.
#[pyfunction]
fn render_binary32_display(count: BigUint, size: BigUint) -> String {
    core::ratio::render_binary32_display(&count, &size)
}

/// `v_q(p^n - 1)` from the lifting-the-exponent formula.
#[pyfunction]
fn predicted_valuation(p: u64, q: u64, n: u64) -> PyResult<u32> {
    core::numthy::predicted_valuation(p, q, n).map_err(py_err)
}

/// Multiplicative order of `p` modulo the prime `q`.
#[pyfunction]
fn mult_order(q: u64, p: u64) -> PyResult<u64> {
    core::numthy::mult_order(q, p).map_err(py_err)
}

#[pymodule]
fn ffperiod(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyMapSpec>()?;
    m.add_class::<PyField>()?;
    m.add_class::<PyOrbitCensus>()?;
    m.add_class::<PyLimit>()?;
    m.add_class::<PyTowerQuery>()?;
    m.add_function(wrap_pyfunction!(analytic_count, m)?)?;
    m.add_function(wrap_pyfunction!(brute_census, m)?)?;
    m.add_function(wrap_pyfunction!(ratio_at, m)?)?;
    m.add_function(wrap_pyfunction!(render_decimal, m)?)?;
    m.add_function(wrap_pyfunction!(render_binary32_display, m)?)?;
    m.add_function(wrap_pyfunction!(predicted_valuation, m)?)?;
    m.add_function(wrap_pyfunction!(mult_order, m)?)?;
    m.add(
        "BudgetExceededError",
        m.py().get_type::<BudgetExceededError>(),
    )?;
    m.add(
        "CountMismatchError",
        m.py().get_type::<CountMismatchError>(),
    )?;
    Ok(())
}
