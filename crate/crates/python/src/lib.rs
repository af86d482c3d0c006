//! Python bindings. Vertices are 0-based with the hub at `n`.

use pyo3::exceptions::{PyArithmeticError, PyOverflowError, PyValueError};
use pyo3::prelude::*;

use wheel_green::chebyshev::{cheb_t, cheb_u, cheb_v};
use wheel_green::output::{to_json, Envelope};
use wheel_green::{metrics, DenseMatrix, Error, Sweep, VertexId};

fn to_py(e: Error) -> PyErr {
    match e {
        Error::Overflow { .. } => PyOverflowError::new_err(e.to_string()),
        e if e.is_usage() => PyValueError::new_err(e.to_string()),
        e => PyArithmeticError::new_err(e.to_string()),
    }
}

fn rows(m: &DenseMatrix) -> Vec<Vec<f64>> {
    m.to_rows()
}

#[pyclass(name = "WheelParams", frozen, skip_from_py_object, module = "wheelgreen")]
#[derive(Clone)]
struct PyWheelParams {
    inner: wheel_green::WheelParams,
}

impl PyWheelParams {
    fn ginv(&self, method: &str) -> PyResult<DenseMatrix> {
        let p = &self.inner;
        match method {
            "pipeline" => wheel_green::assemble_group_inverse(p),
            "theorem" => wheel_green::theorem_group_inverse(p),
            "oracle" => wheel_green::dense_group_inverse(&wheel_green::build_laplacian(p)),
            other => return Err(PyValueError::new_err(format!("unknown method `{other}`"))),
        }
        .map_err(to_py)
    }
}

#[pymethods]
impl PyWheelParams {
    #[new]
    fn new(m: usize, d: usize, a: f64, c: f64) -> PyResult<Self> {
        Ok(PyWheelParams { inner: wheel_green::WheelParams::new(m, d, a, c).map_err(to_py)? })
    }

    #[getter]
    fn m(&self) -> usize {
        self.inner.m()
    }

    #[getter]
    fn d(&self) -> usize {
        self.inner.d()
    }

    #[getter]
    fn a(&self) -> f64 {
        self.inner.a()
    }

    #[getter]
    fn c(&self) -> f64 {
        self.inner.c()
    }

    #[getter]
    fn n(&self) -> usize {
        self.inner.n()
    }

    #[getter]
    fn alpha(&self) -> f64 {
        self.inner.alpha()
    }

    #[getter]
    fn q(&self) -> f64 {
        self.inner.q().value()
    }

    fn laplacian(&self) -> Vec<Vec<f64>> {
        rows(&wheel_green::build_laplacian(&self.inner))
    }

    #[pyo3(signature = (method = "pipeline"))]
    fn group_inverse(&self, method: &str) -> PyResult<Vec<Vec<f64>>> {
        Ok(rows(&self.ginv(method)?))
    }

    #[pyo3(signature = (i, j, method = "pipeline"))]
    fn resistance(&self, i: usize, j: usize, method: &str) -> PyResult<f64> {
        let (vi, vj) = (VertexId(i), VertexId(j));
        if method == "closed" {
            return metrics::resistance_closed(&self.inner, vi, vj).map_err(to_py);
        }
        metrics::effective_resistance(&self.ginv(method)?, vi, vj).map_err(to_py)
    }

    #[pyo3(signature = (method = "pipeline"))]
    fn resistance_table(&self, method: &str) -> PyResult<Vec<Vec<f64>>> {
        Ok(rows(&metrics::resistance_table(&self.ginv(method)?).map_err(to_py)?))
    }

    #[pyo3(signature = (method = "pipeline"))]
    fn kirchhoff(&self, method: &str) -> PyResult<f64> {
        match method {
            "closed" if self.inner.is_complete_wheel() => metrics::kirchhoff_wheel(&self.inner).map_err(to_py),
            "closed" => metrics::kirchhoff_closed(&self.inner).map_err(to_py),
            m => Ok(metrics::kirchhoff_green(&self.ginv(m)?)),
        }
    }

    fn theorem_block_entry(&self, k: usize, i: usize, h: usize) -> PyResult<f64> {
        wheel_green::theorem_block_entry(&self.inner, k, i, h).map_err(to_py)
    }

    fn theorem_border_entry(&self, i: usize) -> PyResult<f64> {
        wheel_green::theorem_border_entry(&self.inner, i).map_err(to_py)
    }

    fn theorem_corner(&self) -> f64 {
        wheel_green::theorem_corner(&self.inner)
    }

    fn __repr__(&self) -> String {
        let p = &self.inner;
        format!("WheelParams(m={}, d={}, a={}, c={})", p.m(), p.d(), p.a(), p.c())
    }
}

#[pyfunction]
fn chebyshev_t(k: usize, x: f64) -> PyResult<f64> {
    cheb_t(k, x).map_err(to_py)
}

#[pyfunction]
fn chebyshev_u(k: i64, x: f64) -> PyResult<f64> {
    cheb_u(k, x).map_err(to_py)
}

#[pyfunction]
fn chebyshev_v(k: usize, x: f64) -> PyResult<f64> {
    cheb_v(k, x).map_err(to_py)
}

/// Group inverse of an arbitrary connected Laplacian given as rows.
#[pyfunction]
fn dense_group_inverse(laplacian: Vec<Vec<f64>>) -> PyResult<Vec<Vec<f64>>> {
    let l = DenseMatrix::from_rows(&laplacian).map_err(to_py)?;
    Ok(rows(&wheel_green::dense_group_inverse(&l).map_err(to_py)?))
}

fn sweep_of(spec: Option<&str>) -> PyResult<Sweep> {
    spec.map_or_else(|| Ok(Sweep::standard()), |s| Sweep::parse(s).map_err(to_py))
}

/// Errata ledger for a sweep, as JSON text.
#[pyfunction]
#[pyo3(signature = (sweep = None))]
fn errata_ledger(sweep: Option<&str>) -> PyResult<String> {
    let mut rec = wheel_green::Reconciliation::new();
    let ledger = rec.run(&sweep_of(sweep)?).map_err(to_py)?;
    to_json(ledger).map_err(to_py)
}

/// Runs the validation sweep; returns `(exit_code, envelope_json)`.
#[pyfunction]
#[pyo3(signature = (sweep = None, tol = 1e-9))]
fn validate(sweep: Option<&str>, tol: f64) -> PyResult<(i32, String)> {
    let report = wheel_green::validate(&sweep_of(sweep)?, tol).map_err(to_py)?;
    let env = Envelope::new(None, "pipeline", &report);
    let text = match &report.ledger {
        Some(l) => env.with_errata(l).to_json(),
        None => env.to_json(),
    }
    .map_err(to_py)?;
    Ok((report.exit_code, text))
}

#[pymodule]
fn wheelgreen(module: &Bound<'_, PyModule>) -> PyResult<()> {
    module.add_class::<PyWheelParams>()?;
    module.add_function(wrap_pyfunction!(chebyshev_t, module)?)?;
    module.add_function(wrap_pyfunction!(chebyshev_u, module)?)?;
    module.add_function(wrap_pyfunction!(chebyshev_v, module)?)?;
    module.add_function(wrap_pyfunction!(dense_group_inverse, module)?)?;
    module.add_function(wrap_pyfunction!(errata_ledger, module)?)?;
    module.add_function(wrap_pyfunction!(validate, module)?)?;
    Ok(())
}
