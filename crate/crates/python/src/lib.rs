//! Python bindings for the `timescales` crate.

use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;
use pyo3::types::PyDict;

use timescales::special::{self, DefectReport};
use timescales::{Compiled, DerivativeReport, Direction, EntryId, Params, Provenance};

fn py_err(e: timescales::Error) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn entry(id: &str) -> PyResult<EntryId> {
    id.parse().map_err(py_err)
}

fn params(k: Option<f64>, c: Option<f64>, n: Option<u32>) -> Params {
    Params { k, c, n }
}

/// A closed subset of the reals, built from the compact scale syntax
/// (`R`, `Z`, `hZ:0.5`, `q:2`, `set:{0,1}`, `union:[0,1]+{2}`, `cantor:5`).
#[pyclass(frozen, name = "TimeScale", module = "timescales_py")]
struct PyTimeScale {
    inner: timescales::TimeScale,
}

#[pymethods]
impl PyTimeScale {
    #[new]
    fn new(spec: &str) -> PyResult<Self> {
        timescales::TimeScale::parse(spec).map(|inner| Self { inner }).map_err(py_err)
    }

    /// Builds a scale from its JSON description.
    #[staticmethod]
    fn from_json(text: &str) -> PyResult<Self> {
        timescales::TimeScale::from_json(text).map(|inner| Self { inner }).map_err(py_err)
    }

    fn to_json(&self) -> String {
        self.inner.to_json().to_string()
    }

    #[getter]
    fn inf(&self) -> Option<f64> {
        self.inner.inf()
    }

    #[getter]
    fn sup(&self) -> Option<f64> {
        self.inner.sup()
    }

    fn contains(&self, t: f64) -> bool {
        self.inner.contains(t)
    }

    fn sigma(&self, t: f64) -> PyResult<f64> {
        self.inner.sigma(t).map_err(py_err)
    }

    fn rho(&self, t: f64) -> PyResult<f64> {
        self.inner.rho(t).map_err(py_err)
    }

    fn mu(&self, t: f64) -> PyResult<f64> {
        self.inner.mu(t).map_err(py_err)
    }

    fn nu(&self, t: f64) -> PyResult<f64> {
        self.inner.nu(t).map_err(py_err)
    }

    fn classify(&self, t: f64) -> PyResult<&'static str> {
        self.inner.classify(t).map(|c| c.label()).map_err(py_err)
    }

    fn in_kappa(&self, t: f64) -> PyResult<bool> {
        self.inner.in_kappa(t).map_err(py_err)
    }

    fn in_nabla_kappa(&self, t: f64) -> PyResult<bool> {
        self.inner.in_nabla_kappa(t).map_err(py_err)
    }

    /// Scale points of `[a, b]`, dense parts at most `max_step` apart.
    #[pyo3(signature = (a, b, max_step = 0.25))]
    fn sample(&self, a: f64, b: f64, max_step: f64) -> PyResult<Vec<f64>> {
        self.inner.sample(a, b, max_step).map_err(py_err)
    }

    fn __str__(&self) -> String {
        self.inner.to_string()
    }

    fn __repr__(&self) -> String {
        format!("TimeScale({:?})", self.inner.to_string())
    }
}

fn report_dict<'py>(py: Python<'py>, r: &DerivativeReport, provenance: Option<Provenance>) -> PyResult<Bound<'py, PyDict>> {
    let d = PyDict::new(py);
    d.set_item("value", r.value)?;
    d.set_item("method", r.method.as_str())?;
    d.set_item("direction", if r.direction == Direction::Delta { "delta" } else { "nabla" })?;
    d.set_item("mu", r.mu_used)?;
    if let Some(p) = provenance {
        let p = match p {
            Provenance::Catalog(id) => format!("catalog:{id}"),
            Provenance::SymbolicFallback => "fallback".into(),
        };
        d.set_item("provenance", p)?;
    }
    Ok(d)
}

fn direction(nabla: bool) -> Direction {
    if nabla {
        Direction::Nabla
    } else {
        Direction::Delta
    }
}

/// A parsed, canonicalized expression in `t`.
#[pyclass(frozen, name = "Expression", module = "timescales_py")]
struct PyExpression {
    inner: Compiled,
}

#[pymethods]
impl PyExpression {
    #[new]
    fn new(text: &str) -> PyResult<Self> {
        Compiled::parse(text).map(|inner| Self { inner }).map_err(py_err)
    }

    fn __call__(&self, t: f64) -> f64 {
        self.inner.expr.eval(t)
    }

    /// Classical derivative, canonicalized.
    #[getter]
    fn derivative(&self) -> String {
        self.inner.derivative.to_string()
    }

    /// Matched catalog id, or `None`.
    #[getter]
    fn catalog_id(&self) -> Option<&'static str> {
        self.inner.matched.map(|m| m.id.as_str())
    }

    /// Delta (or nabla) derivative at `t`: closed form when the expression
    /// matches a catalog entry, difference quotient otherwise.
    #[pyo3(signature = (ts, t, nabla = false))]
    fn diff<'py>(&self, py: Python<'py>, ts: &PyTimeScale, t: f64, nabla: bool) -> PyResult<Bound<'py, PyDict>> {
        let d = if nabla { self.inner.nabla(&ts.inner, t) } else { self.inner.delta(&ts.inner, t) }.map_err(py_err)?;
        report_dict(py, &d.report, Some(d.provenance))
    }

    #[pyo3(signature = (ts, t, nabla = false))]
    fn quotient<'py>(&self, py: Python<'py>, ts: &PyTimeScale, t: f64, nabla: bool) -> PyResult<Bound<'py, PyDict>> {
        let r = self.inner.quotient(&ts.inner, t, direction(nabla)).map_err(py_err)?;
        report_dict(py, &r, None)
    }

    #[pyo3(signature = (ts, t, nabla = false, tol = timescales::quadrature::DEFAULT_TOL))]
    fn quadrature<'py>(
        &self,
        py: Python<'py>,
        ts: &PyTimeScale,
        t: f64,
        nabla: bool,
        tol: f64,
    ) -> PyResult<Bound<'py, PyDict>> {
        let r = self.inner.quadrature(&ts.inner, t, tol, direction(nabla)).map_err(py_err)?;
        report_dict(py, &r, None)
    }

    /// `∫_a^b f Δt`.
    #[pyo3(signature = (ts, a, b, max_step = 0.25))]
    fn integrate(&self, ts: &PyTimeScale, a: f64, b: f64, max_step: f64) -> PyResult<f64> {
        timescales::delta_integral(&ts.inner, &self.inner.real_function(), a, b, max_step).map_err(py_err)
    }

    fn __str__(&self) -> String {
        self.inner.expr.to_string()
    }

    fn __repr__(&self) -> String {
        format!("Expression({:?})", self.inner.expr.to_string())
    }
}

/// Catalog ids in table order.
#[pyfunction]
fn list_catalog() -> Vec<&'static str> {
    EntryId::ALL.iter().map(EntryId::as_str).collect()
}

#[pyfunction]
#[pyo3(signature = (id, t, mu, k = None, c = None, n = None))]
fn eval_delta(id: &str, t: f64, mu: f64, k: Option<f64>, c: Option<f64>, n: Option<u32>) -> PyResult<f64> {
    timescales::eval_delta(entry(id)?, &params(k, c, n), t, mu).map_err(py_err)
}

#[pyfunction]
#[pyo3(signature = (id, t, nu, k = None, c = None, n = None))]
fn eval_nabla(id: &str, t: f64, nu: f64, k: Option<f64>, c: Option<f64>, n: Option<u32>) -> PyResult<f64> {
    timescales::eval_nabla(entry(id)?, &params(k, c, n), t, nu).map_err(py_err)
}

/// Closed form, difference quotient and quadrature of one entry at `t`.
#[pyfunction]
#[pyo3(signature = (id, ts, t, k = None, c = None, n = None))]
fn cross_check<'py>(
    py: Python<'py>,
    id: &str,
    ts: &PyTimeScale,
    t: f64,
    k: Option<f64>,
    c: Option<f64>,
    n: Option<u32>,
) -> PyResult<Bound<'py, PyDict>> {
    let x = timescales::cross_check(entry(id)?, &params(k, c, n), &ts.inner, t).map_err(py_err)?;
    let d = PyDict::new(py);
    d.set_item("id", x.id.as_str())?;
    d.set_item("t", x.t)?;
    d.set_item("mu", x.mu)?;
    d.set_item("closed_form", x.closed_form)?;
    d.set_item("difference_quotient", x.difference_quotient)?;
    d.set_item("quadrature", x.quadrature)?;
    d.set_item("max_abs_gap", x.max_abs_gap)?;
    Ok(d)
}

#[pyfunction]
fn sin_t(ts: &PyTimeScale, t: f64) -> PyResult<f64> {
    special::sin_t(&ts.inner, t).map_err(py_err)
}

#[pyfunction]
fn cos_t(ts: &PyTimeScale, t: f64) -> PyResult<f64> {
    special::cos_t(&ts.inner, t).map_err(py_err)
}

#[pyfunction]
fn sinh_t(ts: &PyTimeScale, t: f64) -> PyResult<f64> {
    special::sinh_t(&ts.inner, t).map_err(py_err)
}

#[pyfunction]
fn cosh_t(ts: &PyTimeScale, t: f64) -> PyResult<f64> {
    special::cosh_t(&ts.inner, t).map_err(py_err)
}

fn defect_dict<'py>(py: Python<'py>, r: DefectReport) -> PyResult<Bound<'py, PyDict>> {
    let d = PyDict::new(py);
    d.set_item("identity", r.identity.as_str())?;
    d.set_item("t", r.t)?;
    d.set_item("mu", r.mu)?;
    d.set_item("lhs", r.lhs)?;
    d.set_item("rhs", r.rhs)?;
    d.set_item("gap", r.gap)?;
    d.set_item("within_tolerance", r.within_tolerance())?;
    Ok(d)
}

#[pyfunction]
fn pythagorean_defect<'py>(py: Python<'py>, ts: &PyTimeScale, t: f64) -> PyResult<Bound<'py, PyDict>> {
    defect_dict(py, special::pythagorean_defect(&ts.inner, t).map_err(py_err)?)
}

#[pyfunction]
fn hyperbolic_defect<'py>(py: Python<'py>, ts: &PyTimeScale, t: f64) -> PyResult<Bound<'py, PyDict>> {
    defect_dict(py, special::hyperbolic_defect(&ts.inner, t).map_err(py_err)?)
}

#[pymodule]
fn timescales_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyTimeScale>()?;
    m.add_class::<PyExpression>()?;
    m.add_function(wrap_pyfunction!(list_catalog, m)?)?;
    m.add_function(wrap_pyfunction!(eval_delta, m)?)?;
    m.add_function(wrap_pyfunction!(eval_nabla, m)?)?;
    m.add_function(wrap_pyfunction!(cross_check, m)?)?;
    m.add_function(wrap_pyfunction!(sin_t, m)?)?;
    m.add_function(wrap_pyfunction!(cos_t, m)?)?;
    m.add_function(wrap_pyfunction!(sinh_t, m)?)?;
    m.add_function(wrap_pyfunction!(cosh_t, m)?)?;
    m.add_function(wrap_pyfunction!(pythagorean_defect, m)?)?;
    m.add_function(wrap_pyfunction!(hyperbolic_defect, m)?)?;
    Ok(())
}
