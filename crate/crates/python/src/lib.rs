//! Python bindings, built with the `extension-module` feature.
//!
//! Matrices cross the boundary as nested lists of complex numbers and
//! certificates as dictionaries.

#[cfg(feature = "extension-module")]
mod bindings {
    use std::sync::Arc;

    use fellcoact::balgebra::{build_algebra, BundleAlgebra, Section};
    use fellcoact::bundle::{group_bundle, FellBundle};
    use fellcoact::certificate::Certificate;
    use fellcoact::coaction::{dual_coaction, Coaction};
    use fellcoact::fixtures;
    use fellcoact::groups::{builtin, FiniteGroup};
    use fellcoact::harmonic;
    use fellcoact::io;
    use fellcoact::linalg::{op_norm, CMatrix, C64};
    use fellcoact::sampling::Sampler;
    use fellcoact::suites::{self, Config, Outcome, Suite};
    use pyo3::exceptions::PyValueError;
    use pyo3::prelude::*;

    fn py_err(e: fellcoact::Error) -> PyErr {
        PyValueError::new_err(e.to_string())
    }

    fn to_rows(m: &CMatrix) -> Vec<Vec<C64>> {
        (0..m.rows()).map(|i| m.row(i).to_vec()).collect()
    }

    fn from_rows(rows: Vec<Vec<C64>>) -> PyResult<CMatrix> {
        CMatrix::from_rows(&rows).map_err(py_err)
    }

    fn cert_to_py(py: Python<'_>, cert: &Certificate) -> PyResult<Py<PyAny>> {
        let json = py.import("json")?;
        Ok(json.call_method1("loads", (cert.to_json_pretty(),))?.unbind())
    }

    #[pyclass(name = "Group", module = "fellcoact_py")]
    pub struct PyGroup {
        inner: Arc<FiniteGroup>,
    }

    #[pymethods]
    impl PyGroup {
        /// A builtin group: `c<n>`, `v4`, `s3`, `d4`, `q8`, ...
        #[new]
        fn new(name: &str) -> PyResult<Self> {
            Ok(PyGroup {
                inner: Arc::new(builtin(name).map_err(py_err)?),
            })
        }

        #[getter]
        fn name(&self) -> String {
            self.inner.name().to_string()
        }

        #[getter]
        fn order(&self) -> usize {
            self.inner.order()
        }

        fn mul(&self, s: usize, t: usize) -> usize {
            self.inner.mul(s, t)
        }

        fn inv(&self, t: usize) -> usize {
            self.inner.inv(t)
        }

        fn is_abelian(&self) -> bool {
            self.inner.is_abelian()
        }

        fn cayley(&self) -> Vec<Vec<usize>> {
            self.inner.cayley().to_vec()
        }

        /// The left regular unitary `λ_t`.
        fn regular(&self, t: usize) -> Vec<Vec<C64>> {
            to_rows(&self.inner.lambda(t))
        }

        /// `λ(f) = Σ_t f(t) λ_t`.
        fn regular_of(&self, f: Vec<C64>) -> Vec<Vec<C64>> {
            to_rows(&self.inner.lambda_of(&f))
        }

        /// The Plancherel weight of an element of the group algebra.
        fn plancherel(&self, x: Vec<Vec<C64>>) -> PyResult<C64> {
            harmonic::plancherel(&self.inner, &from_rows(x)?).map_err(py_err)
        }

        /// Scalar Fourier coefficients `t ↦ φ(λ_t* x)`.
        fn fourier_coefficients(&self, x: Vec<Vec<C64>>) -> PyResult<Vec<C64>> {
            harmonic::fourier_scalar(&self.inner, &from_rows(x)?).map_err(py_err)
        }

        fn __repr__(&self) -> String {
            format!("Group({:?}, order={})", self.inner.name(), self.inner.order())
        }
    }

    #[pyclass(name = "Bundle", module = "fellcoact_py")]
    pub struct PyBundle {
        inner: Arc<FellBundle>,
    }

    #[pymethods]
    impl PyBundle {
        /// A shipped fixture such as `c2-semidirect`.
        #[staticmethod]
        fn fixture(name: &str) -> PyResult<Self> {
            let id = name.parse().map_err(py_err)?;
            Ok(PyBundle {
                inner: Arc::new(fixtures::build(id).map_err(py_err)?),
            })
        }

        /// The group bundle `B_t = ℂλ_t`.
        #[staticmethod]
        fn of_group(group: &PyGroup) -> Self {
            PyBundle {
                inner: Arc::new(group_bundle(group.inner.clone())),
            }
        }

        #[staticmethod]
        fn from_json(text: &str) -> PyResult<Self> {
            let v = io::parse_text(text).map_err(py_err)?;
            Ok(PyBundle {
                inner: Arc::new(io::parse_bundle(&v).map_err(py_err)?),
            })
        }

        fn to_json(&self) -> String {
            io::bundle_to_json(&self.inner).to_string()
        }

        #[getter]
        fn group(&self) -> PyGroup {
            PyGroup {
                inner: self.inner.group().clone(),
            }
        }

        #[getter]
        fn ambient_dim(&self) -> usize {
            self.inner.ambient_dim()
        }

        fn fiber_dims(&self) -> Vec<usize> {
            self.inner.fiber_dims()
        }

        #[pyo3(signature = (tol = 1e-9))]
        fn check_axioms(&self, py: Python<'_>, tol: f64) -> PyResult<Py<PyAny>> {
            cert_to_py(py, &self.inner.check_axioms(tol))
        }
    }

    /// A section `t ↦ ξ(t) ∈ B_t`.
    #[pyclass(name = "Section", module = "fellcoact_py")]
    pub struct PySection {
        inner: Section,
    }

    #[pymethods]
    impl PySection {
        fn values(&self) -> Vec<Vec<Vec<C64>>> {
            self.inner.values().iter().map(to_rows).collect()
        }

        fn to_json(&self) -> String {
            io::section_to_json(&self.inner).to_string()
        }
    }

    /// The concrete algebra `ρ(C_c(B))` with its dual coaction.
    #[pyclass(name = "BundleAlgebra", module = "fellcoact_py")]
    pub struct PyBundleAlgebra {
        algebra: BundleAlgebra,
        coaction: Coaction,
    }

    #[pymethods]
    impl PyBundleAlgebra {
        #[new]
        fn new(bundle: &PyBundle) -> PyResult<Self> {
            let algebra = build_algebra(bundle.inner.clone()).map_err(py_err)?;
            let coaction = dual_coaction(&algebra).map_err(py_err)?;
            Ok(PyBundleAlgebra { algebra, coaction })
        }

        #[getter]
        fn dim(&self) -> usize {
            self.algebra.dim()
        }

        #[getter]
        fn rep_dim(&self) -> usize {
            self.algebra.rep_dim()
        }

        #[pyo3(signature = (seed = 0))]
        fn random_section(&self, seed: u64) -> PySection {
            PySection {
                inner: self.algebra.random_section(&mut Sampler::new(seed)),
            }
        }

        /// `ρ(ξ) = Σ_t ξ(t) ⊗ λ_t`.
        fn embed(&self, xi: &PySection) -> Vec<Vec<C64>> {
            to_rows(&self.algebra.embed(&xi.inner))
        }

        /// The image `ρ(b ⊗ δ_t)` of a single fiber element.
        fn generator(&self, t: usize, b: Vec<Vec<C64>>) -> PyResult<Vec<Vec<C64>>> {
            Ok(to_rows(&self.algebra.generator_map(t, &from_rows(b)?)))
        }

        /// The Fourier coefficient `E_t(a)` under the dual coaction.
        fn fourier_coefficient(&self, a: Vec<Vec<C64>>, t: usize) -> PyResult<Vec<Vec<C64>>> {
            Ok(to_rows(&self.coaction.fourier_coeff(&from_rows(a)?, t).map_err(py_err)?))
        }

        /// The averaging map `E_e`.
        fn average(&self, a: Vec<Vec<C64>>) -> PyResult<Vec<Vec<C64>>> {
            Ok(to_rows(&self.coaction.average(&from_rows(a)?).map_err(py_err)?))
        }

        fn spectral_dims(&self) -> PyResult<Vec<usize>> {
            self.coaction
                .group()
                .elements()
                .map(|t| self.coaction.spectral_subspace(t).map(|s| s.dim()))
                .collect::<fellcoact::Result<_>>()
                .map_err(py_err)
        }

        fn is_injective(&self) -> PyResult<bool> {
            self.coaction.is_injective().map_err(py_err)
        }
    }

    #[pyfunction]
    fn operator_norm(m: Vec<Vec<C64>>) -> PyResult<f64> {
        op_norm(&from_rows(m)?).map_err(py_err)
    }

    #[pyfunction]
    fn fixture_names() -> Vec<String> {
        suites::corpus()
    }

    #[pyfunction]
    fn suite_names() -> Vec<&'static str> {
        Suite::ALL.iter().map(|s| s.name()).collect()
    }

    /// Run one suite; returns the certificate, or `None` when the suite does
    /// not apply to the target.
    #[pyfunction]
    #[pyo3(signature = (suite, target, seed = 0, samples = 50, tol = 1e-9))]
    fn verify(py: Python<'_>, suite: &str, target: &str, seed: u64, samples: usize, tol: f64) -> PyResult<Option<Py<PyAny>>> {
        let suite: Suite = suite.parse().map_err(py_err)?;
        let target = fellcoact::cli::resolve_target(target).map_err(py_err)?;
        let cfg = Config { tol, seed, samples };
        match suites::run(suite, &target, &cfg).map_err(py_err)? {
            Outcome::Ran(cert) => Ok(Some(cert_to_py(py, &cert)?)),
            Outcome::Skipped(_) => Ok(None),
        }
    }

    #[pymodule]
    fn fellcoact_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
        m.add_class::<PyGroup>()?;
        m.add_class::<PyBundle>()?;
        m.add_class::<PySection>()?;
        m.add_class::<PyBundleAlgebra>()?;
        m.add_function(wrap_pyfunction!(operator_norm, m)?)?;
        m.add_function(wrap_pyfunction!(fixture_names, m)?)?;
        m.add_function(wrap_pyfunction!(suite_names, m)?)?;
        m.add_function(wrap_pyfunction!(verify, m)?)?;
        Ok(())
    }
}
