//! Python module `pyvancycle`. Results that the CLI prints as JSON come
//! back as plain dicts and lists with the same layout.

use pyo3::create_exception;
use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;
use pyo3::types::PyAny;
use serde::Serialize;
use vancycle::classify::{classify_all, quartic_orbit_class};
use vancycle::joincycles::{intersection_matrix, monomial_intersection_matrix, AbstractGrid, CycleRef};
use vancycle::monodromy::{distinct_eigenvalue_count, total_monomial_monodromy, Orbits};
use vancycle::polycore::{critical_values_degree, RatPoly};
use vancycle::verify::{run_suite, Options};

create_exception!(pyvancycle, VancycleError, PyValueError);

fn err(e: vancycle::Error) -> PyErr {
    VancycleError::new_err(e.to_string())
}

/// Serialize through JSON and hand back native Python objects.
fn to_py<'py, T: Serialize>(py: Python<'py>, v: &T) -> PyResult<Bound<'py, PyAny>> {
    let text = serde_json::to_string(v).map_err(|e| VancycleError::new_err(e.to_string()))?;
    py.import("json")?.call_method1("loads", (text,))
}

/// Coefficients lowest degree first; anything whose str() is an integer or
/// p/q works (int, str, fractions.Fraction).
fn poly(coeffs: &Bound<'_, PyAny>) -> PyResult<RatPoly> {
    let strs = coeffs.try_iter()?.map(|c| Ok(c?.str()?.to_string())).collect::<PyResult<Vec<String>>>()?;
    RatPoly::parse_coeffs(&strs).map_err(err)
}

/// An int position (1-based) or a (row, col) cell, or the CLI's "r-c" form.
fn cycle_ref(c: &Bound<'_, PyAny>) -> PyResult<CycleRef> {
    if let Ok(k) = c.extract::<usize>() {
        return Ok(CycleRef::Position(k));
    }
    if let Ok((r, col)) = c.extract::<(usize, usize)>() {
        return Ok(CycleRef::Cell(r, col));
    }
    c.extract::<String>()?.parse().map_err(err)
}

/// The cycles of h(y) + g(x): join basis, critical-value grid and monodromy.
#[pyclass(module = "pyvancycle", frozen)]
struct Fibration {
    inner: vancycle::joincycles::Fibration,
    /// Set for pure powers, which also report the eigenvalue count.
    monomial: Option<(usize, usize)>,
}

#[pymethods]
impl Fibration {
    #[staticmethod]
    fn monomial(e: usize, d: usize) -> PyResult<Self> {
        Ok(Fibration { inner: vancycle::joincycles::Fibration::monomial(e, d).map_err(err)?, monomial: Some((e, d)) })
    }

    #[staticmethod]
    fn from_polys(h: &Bound<'_, PyAny>, g: &Bound<'_, PyAny>) -> PyResult<Self> {
        let inner = vancycle::joincycles::Fibration::from_polys(&poly(h)?, &poly(g)?).map_err(err)?;
        Ok(Fibration { inner, monomial: None })
    }

    /// Letter grid in the CLI's JSON layout, given as a JSON string.
    #[staticmethod]
    fn from_grid(grid_json: &str) -> PyResult<Self> {
        let ag: AbstractGrid = serde_json::from_str(grid_json).map_err(|e| VancycleError::new_err(e.to_string()))?;
        Ok(Fibration { inner: vancycle::joincycles::Fibration::from_grid(&ag).map_err(err)?, monomial: None })
    }

    #[staticmethod]
    fn from_critical_values(h_values: Vec<i64>, g_values: Vec<i64>) -> PyResult<Self> {
        let inner = vancycle::joincycles::Fibration::from_critical_values(&h_values, &g_values).map_err(err)?;
        Ok(Fibration { inner, monomial: None })
    }

    #[getter]
    fn size(&self) -> usize {
        self.inner.size()
    }

    #[getter]
    fn h_chain(&self) -> Vec<usize> {
        self.inner.basis.h.chain.clone()
    }

    #[getter]
    fn g_chain(&self) -> Vec<usize> {
        self.inner.basis.g.chain.clone()
    }

    /// Critical-value letters, one line per g-chain position.
    #[getter]
    fn pattern(&self) -> String {
        self.inner.grid.pattern()
    }

    fn intersection_matrix(&self) -> Vec<Vec<i64>> {
        intersection_matrix(&self.inner.basis).to_rows()
    }

    /// Orbit span of one basis cycle: dim, basis, basis_cycles, positions.
    fn orbit<'py>(&self, py: Python<'py>, cycle: &Bound<'py, PyAny>) -> PyResult<Bound<'py, PyAny>> {
        let k = self.inner.basis.resolve(cycle_ref(cycle)?).map_err(err)?;
        let span = Orbits::for_fibration(&self.inner).and_then(|o| o.of_cycle(k)).map_err(err)?;
        let out = to_py(py, &span.report(&self.inner.basis))?;
        if let Some((e, d)) = self.monomial {
            let count =
                total_monomial_monodromy(e, d).and_then(|t| distinct_eigenvalue_count(&t.matrix)).map_err(err)?;
            out.set_item("distinct_eigenvalues", count)?;
        }
        Ok(out)
    }

    /// Simplicity verdict with its explanation for every cycle.
    fn verdicts<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyAny>> {
        to_py(py, &classify_all(&self.inner).map_err(err)?)
    }

    fn __repr__(&self) -> String {
        format!("Fibration(size={}, pattern={:?})", self.inner.size(), self.inner.grid.pattern())
    }
}

#[pyfunction]
fn monomial_matrix(e: usize, d: usize) -> PyResult<Vec<Vec<i64>>> {
    Ok(monomial_intersection_matrix(e, d).map_err(err)?.to_rows())
}

/// Degrees of the real critical values, ascending by value.
#[pyfunction]
fn critical_degrees(p: &Bound<'_, PyAny>) -> PyResult<Vec<usize>> {
    Ok(critical_values_degree(&poly(p)?).map_err(err)?.degrees())
}

/// Orbit class of two quartics with its witness.
#[pyfunction]
fn classify<'py>(py: Python<'py>, h: &Bound<'py, PyAny>, g: &Bound<'py, PyAny>) -> PyResult<Bound<'py, PyAny>> {
    to_py(py, &quartic_orbit_class(&poly(h)?, &poly(g)?).map_err(err)?)
}

/// One verification suite, without timings.
#[pyfunction]
#[pyo3(signature = (suite, max_d = 30, max_d_e2 = 100, jobs = 1))]
fn verify<'py>(
    py: Python<'py>,
    suite: &str,
    max_d: usize,
    max_d_e2: usize,
    jobs: usize,
) -> PyResult<Bound<'py, PyAny>> {
    let opts = Options { max_d, max_d_e2, jobs: jobs.max(1) };
    let res = py
        .detach(|| run_suite(suite, &opts))
        .ok_or_else(|| VancycleError::new_err(format!("unknown suite {suite:?}")))?;
    to_py(py, &res.without_timings())
}

#[pymodule]
fn pyvancycle(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add("VancycleError", m.py().get_type::<VancycleError>())?;
    m.add("SUITES", vancycle::verify::SUITES.to_vec())?;
    m.add_class::<Fibration>()?;
    m.add_function(wrap_pyfunction!(monomial_matrix, m)?)?;
    m.add_function(wrap_pyfunction!(critical_degrees, m)?)?;
    m.add_function(wrap_pyfunction!(classify, m)?)?;
    m.add_function(wrap_pyfunction!(verify, m)?)?;
    Ok(())
}
