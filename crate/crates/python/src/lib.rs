//! Python bindings. Structured results come back as plain dicts built from the
//! same JSON documents the command-line tool prints.

use num_complex::Complex64;
use pyo3::exceptions::{PyRuntimeError, PyValueError};
use pyo3::prelude::*;
use serde::Serialize;

use quadalg::coherent::{self, CompactParameter, HypergeomSeries, HypergeomValue};
use quadalg::fock3::{self, FockSpace};
use quadalg::measures::{self, QuadratureSpec};
use quadalg::rational::{self, Rational};
use quadalg::{defosc, output, reps, spectrum, AlgebraKind, AlgebraLabel, Error, Representation};

fn err(e: Error) -> PyErr {
    match e {
        Error::TailBound { .. } | Error::Quadrature { .. } | Error::SeriesCap(_) => {
            PyRuntimeError::new_err(e.to_string())
        }
        _ => PyValueError::new_err(e.to_string()),
    }
}

fn frac(s: &str) -> PyResult<Rational> {
    rational::parse(s).map_err(err)
}

fn to_py<T: Serialize + ?Sized>(py: Python<'_>, value: &T) -> PyResult<Py<PyAny>> {
    let text = output::to_json(value);
    Ok(py.import("json")?.call_method1("loads", (text,))?.unbind())
}

fn matrix_rows(m: &quadalg::linalg::Matrix) -> Vec<Vec<f64>> {
    (0..m.nrows()).map(|i| m.row(i).iter().copied().collect()).collect()
}

/// A quadratic-algebra label `(k, l)` in the compact or noncompact sector.
#[pyclass(name = "Label", frozen, module = "quadalg")]
struct PyLabel {
    inner: AlgebraLabel,
}

#[pymethods]
impl PyLabel {
    /// `k` and `l` are exact fractions given as text, e.g. "3/2".
    #[new]
    #[pyo3(signature = (k, l, compact = true))]
    fn new(k: &str, l: &str, compact: bool) -> PyResult<Self> {
        let (k, l) = (frac(k)?, frac(l)?);
        let inner = if compact { AlgebraLabel::compact(k, l) } else { AlgebraLabel::noncompact(k, l) }.map_err(err)?;
        Ok(PyLabel { inner })
    }

    #[getter]
    fn k(&self) -> String {
        rational::display(self.inner.k())
    }

    #[getter]
    fn l(&self) -> String {
        rational::display(self.inner.l())
    }

    #[getter]
    fn compact(&self) -> bool {
        self.inner.dim().is_some()
    }

    /// Dimension of the compact representation, None for noncompact labels.
    #[getter]
    fn dim(&self) -> Option<usize> {
        self.inner.dim()
    }

    /// Coefficients of the structure function, lowest degree first.
    fn structure_poly(&self) -> Vec<String> {
        self.inner.structure_poly().poly().coeffs().iter().map(rational::display).collect()
    }

    fn __repr__(&self) -> String {
        let sector = if self.compact() { "compact" } else { "noncompact" };
        format!("Label(k={}, l={}, {sector})", self.k(), self.l())
    }
}

/// Matrix representation in the `|n>` basis.
#[pyclass(name = "Representation", frozen, module = "quadalg")]
struct PyRep {
    inner: Representation,
}

#[pymethods]
impl PyRep {
    #[staticmethod]
    fn compact(label: &PyLabel) -> PyResult<Self> {
        Ok(PyRep { inner: reps::compact_rep(&label.inner).map_err(err)? })
    }

    #[staticmethod]
    fn noncompact(label: &PyLabel, dim: usize) -> PyResult<Self> {
        Ok(PyRep { inner: reps::noncompact_rep(&label.inner, dim).map_err(err)? })
    }

    #[staticmethod]
    fn su2(j: &str) -> PyResult<Self> {
        Ok(PyRep { inner: reps::su2_rep(&frac(j)?).map_err(err)? })
    }

    #[staticmethod]
    fn su11(k: &str, dim: usize) -> PyResult<Self> {
        Ok(PyRep { inner: reps::su11_rep(&frac(k)?, dim).map_err(err)? })
    }

    #[getter]
    fn dim(&self) -> usize {
        self.inner.dim
    }

    #[getter]
    fn truncated(&self) -> bool {
        self.inner.truncated
    }

    #[getter]
    fn q0(&self) -> Vec<Vec<f64>> {
        matrix_rows(&self.inner.q0)
    }

    #[getter]
    fn qp(&self) -> Vec<Vec<f64>> {
        matrix_rows(&self.inner.qp)
    }

    #[getter]
    fn qm(&self) -> Vec<Vec<f64>> {
        matrix_rows(&self.inner.qm)
    }

    fn casimir(&self, py: Python<'_>) -> PyResult<Py<PyAny>> {
        to_py(py, &self.inner.casimir_value())
    }

    fn residuals(&self, py: Python<'_>) -> PyResult<Py<PyAny>> {
        to_py(py, &self.inner.relation_residuals())
    }

    fn to_dict(&self, py: Python<'_>) -> PyResult<Py<PyAny>> {
        to_py(py, &self.inner.to_document())
    }
}

#[pyclass(name = "CoherentState", frozen, module = "quadalg")]
struct PyCoherent {
    inner: coherent::CoherentState,
}

#[pymethods]
impl PyCoherent {
    #[getter]
    fn coeffs(&self) -> Vec<Complex64> {
        self.inner.coeffs.clone()
    }

    #[getter]
    fn divergence_flag(&self) -> bool {
        self.inner.divergence_flag
    }

    #[getter]
    fn truncation(&self) -> usize {
        self.inner.truncation
    }

    fn norm(&self) -> f64 {
        self.inner.norm()
    }

    fn overlap(&self, other: &PyCoherent) -> Complex64 {
        self.inner.overlap(&other.inner)
    }

    /// Residual of the lowering-operator eigen-equation (Barut-Girardello states only).
    fn eigen_residual(&self) -> PyResult<f64> {
        coherent::bg_eigen_residual(&self.inner).map_err(err)
    }

    fn to_csv(&self) -> String {
        self.inner.to_csv()
    }

    fn to_dict(&self, py: Python<'_>) -> PyResult<Py<PyAny>> {
        to_py(py, &self.inner.to_document())
    }
}

/// Barut-Girardello state; `dim=None` picks the truncation automatically.
#[pyfunction]
#[pyo3(signature = (label, alpha, dim = None, max_dim = 4096))]
fn bg_state(label: &PyLabel, alpha: Complex64, dim: Option<usize>, max_dim: usize) -> PyResult<PyCoherent> {
    let inner = match dim {
        Some(d) => coherent::bg_state(&label.inner, alpha, d),
        None => coherent::bg_state_auto(&label.inner, alpha, max_dim),
    }
    .map_err(err)?;
    Ok(PyCoherent { inner })
}

#[pyfunction]
fn perelomov_noncompact(label: &PyLabel, beta: Complex64, dim: usize) -> PyResult<PyCoherent> {
    Ok(PyCoherent { inner: coherent::perelomov_noncompact(&label.inner, beta, dim).map_err(err)? })
}

#[pyfunction]
#[pyo3(signature = (label, parameter, gamma_form = false))]
fn perelomov_compact(label: &PyLabel, parameter: Complex64, gamma_form: bool) -> PyResult<PyCoherent> {
    let p = if gamma_form { CompactParameter::Gamma(parameter) } else { CompactParameter::Alpha(parameter) };
    Ok(PyCoherent { inner: coherent::perelomov_compact(&label.inner, p).map_err(err)? })
}

/// Generalized hypergeometric series at real `x`.
///
/// Returns `(value, converged)`; divergent series give the optimally truncated sum.
#[pyfunction]
#[pyo3(signature = (numer, denom, x, tol = 1e-15))]
fn hypergeom(numer: Vec<f64>, denom: Vec<f64>, x: f64, tol: f64) -> PyResult<(f64, bool)> {
    let s = HypergeomSeries::new(numer, denom).map_err(err)?;
    let v = coherent::hypergeom(&s, x, tol).map_err(err)?;
    Ok((v.value(), matches!(v, HypergeomValue::Converged { .. })))
}

#[pyfunction]
fn kummer_check(py: Python<'_>, a: f64, b: f64, c: f64) -> PyResult<Py<PyAny>> {
    to_py(py, &measures::kummer_integral_check(a, b, c, &QuadratureSpec::default()).map_err(err)?)
}

#[pyfunction]
fn compact_resolution(py: Python<'_>, label: &PyLabel) -> PyResult<Py<PyAny>> {
    to_py(py, &measures::verify_compact_resolution(&label.inner, &QuadratureSpec::default()).map_err(err)?)
}

#[pyfunction]
#[pyo3(signature = (label, n, family = "bg"))]
fn moment_target(label: &PyLabel, n: usize, family: &str) -> PyResult<f64> {
    let t = match family {
        "bg" => measures::bg_moment_target(&label.inner, n),
        "perelomov" => measures::perelomov_moment_target(&label.inner, n),
        other => return Err(PyValueError::new_err(format!("unknown family {other:?}"))),
    };
    Ok(t.map_err(err)?.value)
}

/// Degeneracy reports for the levels `start..=stop`.
#[pyfunction]
fn spectrum_table(py: Python<'_>, start: u64, stop: u64) -> PyResult<Py<PyAny>> {
    if start > stop {
        return Err(PyValueError::new_err("start must not exceed stop"));
    }
    to_py(py, &spectrum::spectrum_table(start, stop))
}

#[pyfunction]
fn degeneracy(n: u64) -> u64 {
    spectrum::degeneracy_formula(n)
}

/// Relation residuals of the bosonic realization on a truncated Fock space.
#[pyfunction]
#[pyo3(signature = (cutoffs, sector = "compact"))]
fn fock_residuals(py: Python<'_>, cutoffs: Vec<usize>, sector: &str) -> PyResult<Py<PyAny>> {
    let space = FockSpace::new(&cutoffs).map_err(err)?;
    let ops = match sector {
        "compact" => fock3::realize_compact(&space),
        "noncompact" => fock3::realize_noncompact(&space),
        "su2" => fock3::realize_two_mode(AlgebraKind::Su2, &space),
        "su11" => fock3::realize_two_mode(AlgebraKind::Su11, &space),
        other => return Err(PyValueError::new_err(format!("unknown sector {other:?}"))),
    }
    .map_err(err)?;
    to_py(py, &fock3::verify_realization(&ops))
}

/// Deformed-oscillator residuals for a compact label.
#[pyfunction]
fn deform(py: Python<'_>, label: &PyLabel) -> PyResult<Py<PyAny>> {
    let osc = defosc::deform_label(&label.inner).map_err(err)?;
    #[derive(Serialize)]
    struct Doc {
        f: Vec<String>,
        scale: f64,
        residuals: defosc::DeformResiduals,
        exact: bool,
    }
    let doc = Doc {
        f: osc.f.coeffs().iter().map(rational::display).collect(),
        scale: osc.scale,
        residuals: osc.residuals(),
        exact: osc.exact_check(),
    };
    to_py(py, &doc)
}

#[pyfunction]
fn fermion_check(py: Python<'_>) -> PyResult<Py<PyAny>> {
    to_py(py, &defosc::fermion_check().map_err(err)?)
}

#[pymodule]
#[pyo3(name = "quadalg")]
fn quadalg_module(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyLabel>()?;
    m.add_class::<PyRep>()?;
    m.add_class::<PyCoherent>()?;
    m.add_function(wrap_pyfunction!(bg_state, m)?)?;
    m.add_function(wrap_pyfunction!(perelomov_noncompact, m)?)?;
    m.add_function(wrap_pyfunction!(perelomov_compact, m)?)?;
    m.add_function(wrap_pyfunction!(hypergeom, m)?)?;
    m.add_function(wrap_pyfunction!(kummer_check, m)?)?;
    m.add_function(wrap_pyfunction!(compact_resolution, m)?)?;
    m.add_function(wrap_pyfunction!(moment_target, m)?)?;
    m.add_function(wrap_pyfunction!(spectrum_table, m)?)?;
    m.add_function(wrap_pyfunction!(degeneracy, m)?)?;
    m.add_function(wrap_pyfunction!(fock_residuals, m)?)?;
    m.add_function(wrap_pyfunction!(deform, m)?)?;
    m.add_function(wrap_pyfunction!(fermion_check, m)?)?;
    Ok(())
}
