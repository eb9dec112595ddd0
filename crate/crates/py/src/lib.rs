//! Python bindings for `kite_core`, importable as `kite_cc`.

use kite_core::domain::{self, Region};
use kite_core::stability::{self as stab, BoundaryOptions, DEFAULT_GAP_TOL, DEFAULT_REAL_TOL};
use kite_core::{cc, index, scan, solver, KiteError};
use pyo3::exceptions::{PyRuntimeError, PyValueError};
use pyo3::prelude::*;

fn to_py(e: KiteError) -> PyErr {
    match e {
        KiteError::ConvergenceFailure | KiteError::EigenFailure(_) | KiteError::NoConvergence(_) => PyRuntimeError::new_err(e.to_string()),
        _ => PyValueError::new_err(e.to_string()),
    }
}

/// Normalized masses: m1 at the axis vertex, m3 opposite, m split evenly between the wing bodies.
#[pyclass(name = "MassTriple", frozen, skip_from_py_object)]
#[derive(Clone, Copy)]
struct PyMasses(domain::MassTriple);

#[pymethods]
impl PyMasses {
    #[new]
    #[pyo3(signature = (m1, m3, m=None))]
    fn new(m1: f64, m3: f64, m: Option<f64>) -> PyResult<Self> {
        let inner = match m {
            Some(m) => domain::MassTriple::new(m1, m3, m),
            None => domain::MassTriple::from_m1_m3(m1, m3),
        };
        inner.map(Self).map_err(to_py)
    }

    #[getter]
    fn m1(&self) -> f64 {
        self.0.m1
    }

    #[getter]
    fn m3(&self) -> f64 {
        self.0.m3
    }

    #[getter]
    fn m(&self) -> f64 {
        self.0.m
    }

    fn bodies(&self) -> [f64; 4] {
        self.0.bodies()
    }

    fn __repr__(&self) -> String {
        format!("MassTriple(m1={}, m3={}, m={})", self.0.m1, self.0.m3, self.0.m)
    }
}

/// Reduced kite shape (x̂, ŷ) with d = 1.
#[pyclass(name = "Shape", frozen, skip_from_py_object)]
#[derive(Clone, Copy)]
struct PyShape(domain::ReducedShape);

#[pymethods]
impl PyShape {
    #[new]
    fn new(xhat: f64, yhat: f64) -> PyResult<Self> {
        domain::ReducedShape::new(xhat, yhat).map(Self).map_err(to_py)
    }

    #[getter]
    fn xhat(&self) -> f64 {
        self.0.xhat
    }

    #[getter]
    fn yhat(&self) -> f64 {
        self.0.yhat
    }

    fn region(&self) -> String {
        domain::classify_region(self.0).name().to_string()
    }

    fn distance(&self, other: &PyShape) -> f64 {
        self.0.distance(&other.0)
    }

    fn __repr__(&self) -> String {
        format!("Shape(xhat={}, yhat={})", self.0.xhat, self.0.yhat)
    }
}

#[pyclass(name = "Solution", frozen, get_all, skip_from_py_object)]
#[derive(Clone)]
struct PySolution {
    shape: PyShape,
    residual: f64,
    region: String,
}

#[pymethods]
impl PySolution {
    fn __repr__(&self) -> String {
        format!(
            "Solution(xhat={}, yhat={}, region={}, residual={:e})",
            self.shape.0.xhat, self.shape.0.yhat, self.region, self.residual
        )
    }
}

/// Nontrivial spectrum of the reduced linearization, scaled by ω.
#[pyclass(name = "Spectrum", frozen, get_all, skip_from_py_object)]
#[derive(Clone)]
struct PySpectrum {
    eigenvalues: Vec<(f64, f64)>,
    klass: (usize, usize, usize),
    max_real: f64,
    stable: bool,
}

#[pymethods]
impl PySpectrum {
    fn __repr__(&self) -> String {
        format!("Spectrum(klass={:?}, max_real={:e}, stable={})", self.klass, self.max_real, self.stable)
    }
}

fn solutions(r: solver::SolveResult) -> Vec<PySolution> {
    r.iter()
        .map(|s| PySolution { shape: PyShape(s.shape), residual: s.residual, region: s.region.name().to_string() })
        .collect()
}

#[pyfunction]
fn mass_map(shape: &PyShape) -> PyResult<PyMasses> {
    cc::mass_map(shape.0).map(PyMasses).map_err(to_py)
}

#[pyfunction]
fn classify_region(shape: &PyShape) -> String {
    domain::classify_region(shape.0).name().to_string()
}

#[pyfunction]
fn solve_convex(masses: &PyMasses) -> PyResult<Vec<PySolution>> {
    solver::solve_convex(masses.0).map(solutions).map_err(to_py)
}

#[pyfunction]
fn solve_concave(masses: &PyMasses) -> Vec<PySolution> {
    solutions(solver::solve_concave(masses.0))
}

#[pyfunction]
fn lambda_hat(shape: &PyShape, masses: &PyMasses) -> f64 {
    cc::lambda_hat(shape.0, masses.0)
}

#[pyfunction]
fn cc_residual(shape: &PyShape, masses: &PyMasses) -> f64 {
    cc::cc_residual(shape.0, masses.0).max_abs()
}

#[pyfunction]
fn dziobek_residual(shape: &PyShape, masses: &PyMasses) -> f64 {
    cc::dziobek_residual(shape.0, masses.0)
}

#[pyfunction]
fn f_value(shape: &PyShape) -> f64 {
    index::f_value(shape.0)
}

#[pyfunction]
fn nontrivial_product(shape: &PyShape, masses: &PyMasses) -> f64 {
    index::nontrivial_product(shape.0, masses.0)
}

#[pyfunction]
#[pyo3(signature = (shape, masses, tol=None))]
fn index_sign(shape: &PyShape, masses: &PyMasses, tol: Option<f64>) -> i8 {
    index::index_sign(shape.0, masses.0, tol)
}

#[pyfunction]
fn degenerate_gon_mass() -> f64 {
    index::degenerate_gon_mass()
}

#[pyfunction]
fn limit_masses_13gon(k: f64) -> PyResult<PyMasses> {
    cc::limit_masses_13gon(k).map(PyMasses).map_err(to_py)
}

/// Spectral stability at the central configuration of the given shape.
#[pyfunction]
#[pyo3(signature = (shape, real_tol=DEFAULT_REAL_TOL, gap_tol=DEFAULT_GAP_TOL))]
fn stability(shape: &PyShape, real_tol: f64, gap_tol: f64) -> PyResult<PySpectrum> {
    let r = stab::shape_stability(shape.0, real_tol, gap_tol).map_err(to_py)?;
    Ok(PySpectrum {
        eigenvalues: r.eigenvalues.iter().map(|e| (e.re, e.im)).collect(),
        klass: r.klass,
        max_real: r.max_real,
        stable: r.stable,
    })
}

/// `(xhat, yhat, psi)` on the lower edge of the stable strip for `n` interior abscissae.
#[pyfunction]
fn trace_stability_boundary(n: usize) -> PyResult<Vec<(f64, f64, f64)>> {
    let pts = stab::trace_stability_boundary(&stab::interior_grid(n), &BoundaryOptions::default())
        .map_err(to_py)?;
    Ok(pts.iter().map(|p| (p.xhat, p.yhat, p.psi)).collect())
}

#[pyfunction]
fn psi_limit_estimate(delta: f64) -> PyResult<f64> {
    stab::psi_limit_estimate(delta, &BoundaryOptions::default()).map_err(to_py)
}

#[pyfunction]
fn trace_degeneracy_curve(step: f64) -> PyResult<Vec<(f64, f64)>> {
    let pts = scan::trace_degeneracy_curve(step).map_err(to_py)?;
    Ok(pts.iter().map(|p| (p.xhat, p.yhat)).collect())
}

/// Grid scan as a list of dicts, one per grid point.
#[pyfunction]
#[pyo3(signature = (region, grid=300, what="index"))]
fn scan_region<'py>(py: Python<'py>, region: &str, grid: usize, what: &str) -> PyResult<Vec<Bound<'py, PyAny>>> {
    let region: Region = region.parse().map_err(to_py)?;
    let what: scan::What = what.parse().map_err(to_py)?;
    let rows = scan::scan_region(region, grid, what).map_err(to_py)?;
    rows.iter()
        .map(|r| {
            let d = pyo3::types::PyDict::new(py);
            d.set_item("xhat", r.xhat)?;
            d.set_item("yhat", r.yhat)?;
            d.set_item("in_region", r.in_region)?;
            d.set_item("masses", r.masses.map(|m| (m.m1, m.m3, m.m)))?;
            d.set_item("F", r.f)?;
            d.set_item("index", r.index)?;
            d.set_item("klass", r.klass)?;
            d.set_item("max_real", r.max_real)?;
            d.set_item("stable", r.stable)?;
            Ok(d.into_any())
        })
        .collect()
}

#[pymodule]
fn kite_cc(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyMasses>()?;
    m.add_class::<PyShape>()?;
    m.add_class::<PySolution>()?;
    m.add_class::<PySpectrum>()?;
    m.add_function(wrap_pyfunction!(mass_map, m)?)?;
    m.add_function(wrap_pyfunction!(classify_region, m)?)?;
    m.add_function(wrap_pyfunction!(solve_convex, m)?)?;
    m.add_function(wrap_pyfunction!(solve_concave, m)?)?;
    m.add_function(wrap_pyfunction!(lambda_hat, m)?)?;
    m.add_function(wrap_pyfunction!(cc_residual, m)?)?;
    m.add_function(wrap_pyfunction!(dziobek_residual, m)?)?;
    m.add_function(wrap_pyfunction!(f_value, m)?)?;
    m.add_function(wrap_pyfunction!(nontrivial_product, m)?)?;
    m.add_function(wrap_pyfunction!(index_sign, m)?)?;
    m.add_function(wrap_pyfunction!(degenerate_gon_mass, m)?)?;
    m.add_function(wrap_pyfunction!(limit_masses_13gon, m)?)?;
    m.add_function(wrap_pyfunction!(stability, m)?)?;
    m.add_function(wrap_pyfunction!(trace_stability_boundary, m)?)?;
    m.add_function(wrap_pyfunction!(psi_limit_estimate, m)?)?;
    m.add_function(wrap_pyfunction!(trace_degeneracy_curve, m)?)?;
    m.add_function(wrap_pyfunction!(scan_region, m)?)?;
    m.add("DEFAULT_REAL_TOL", DEFAULT_REAL_TOL)?;
    m.add("DEFAULT_GAP_TOL", DEFAULT_GAP_TOL)?;
    Ok(())
}
