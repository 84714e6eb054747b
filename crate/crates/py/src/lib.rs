//! Python bindings. The module exposes `integrate`, `structure` and
//! `verify`, plus an `Answer` class wrapping one integration result.

use pyo3::prelude::*;

#[pymodule]
pub mod gammaint_py {
    use std::time::Duration;

    use gammaint::api::{integrate_with_timeout, structure_query, ApiError, Outcome};
    use pyo3::exceptions::PyValueError;
    use pyo3::prelude::*;

    fn to_py(e: ApiError) -> PyErr {
        PyValueError::new_err(e.to_string())
    }

    /// Result of integrating one expression.
    #[pyclass(frozen, module = "gammaint_py")]
    pub struct Answer {
        inner: Outcome,
    }

    #[pymethods]
    impl Answer {
        /// `integrated`, `no_gamma_form_found` or `unsupported`.
        #[getter]
        fn status(&self) -> &'static str {
            self.inner.status().as_str()
        }

        /// Antiderivative text ending in `+ C`, or the status with diagnostics.
        #[getter]
        fn text(&self) -> String {
            self.inner.text()
        }

        #[getter]
        fn diagnostics(&self) -> Vec<String> {
            self.inner.answer.diagnostics.clone()
        }

        /// The answer in the JSON schema, as a string.
        fn json(&self) -> String {
            self.inner.json().to_string()
        }

        /// Exact and numeric certificate as `(passed, summary)`, or `None`
        /// when nothing was lowered.
        #[pyo3(signature = (seed = 1))]
        fn verify(&self, py: Python<'_>, seed: u64) -> Option<(bool, String)> {
            py.detach(|| self.inner.verify(seed).map(|r| (r.passed(), r.summary())))
        }

        fn __str__(&self) -> String {
            self.inner.text()
        }

        fn __repr__(&self) -> String {
            format!("Answer(status={:?}, text={:?})", self.status(), self.inner.text())
        }
    }

    /// Integrates `expr` in `var`. `consts` names irrational constants.
    #[pyfunction]
    #[pyo3(signature = (expr, var = "x", consts = Vec::new(), timeout_ms = None))]
    fn integrate(py: Python<'_>, expr: &str, var: &str, consts: Vec<String>, timeout_ms: Option<u64>) -> PyResult<Answer> {
        let timeout = timeout_ms.map(Duration::from_millis);
        let inner = py.detach(|| integrate_with_timeout(expr, var, &consts, timeout)).map_err(to_py)?;
        Ok(Answer { inner })
    }

    /// Whether `expr` (an `exp(..)` or `log(..)`) is algebraic over the tower
    /// generated by `tower`: `dependent: <witness>` or `transcendental`.
    #[pyfunction]
    #[pyo3(signature = (expr, tower = Vec::new(), var = "x", consts = Vec::new()))]
    fn structure(expr: &str, tower: Vec<String>, var: &str, consts: Vec<String>) -> PyResult<String> {
        structure_query(expr, &tower, var, &consts).map_err(to_py)
    }

    /// Integrates and certifies in one call, returning `(text, passed, summary)`.
    #[pyfunction]
    #[pyo3(signature = (expr, var = "x", consts = Vec::new(), seed = 1))]
    fn verify(py: Python<'_>, expr: &str, var: &str, consts: Vec<String>, seed: u64) -> PyResult<(String, bool, String)> {
        let out = py.detach(|| integrate_with_timeout(expr, var, &consts, None)).map_err(to_py)?;
        let (passed, summary) = match out.verify(seed) {
            Some(r) => (r.passed(), r.summary()),
            None => (false, "nothing to check".to_string()),
        };
        Ok((out.text(), passed, summary))
    }
}
