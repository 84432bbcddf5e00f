//! Python bindings: vectors, problems, integrated and closed-form profiles,
//! residual checks, and pseudo-quadric fitting.

use pyo3::create_exception;
use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;
use pyo3::types::PyDict;

use weingarten_core::curvature::{Grid, Orientation};
use weingarten_core::minkowski::default_causal_tol;
use weingarten_core::rotational::{revolve, AxisKind, Profile};
use weingarten_core::solver::{self, ClosedFormCase, StepControl};
use weingarten_core::verify::{self, ResidualReport};
use weingarten_core::Sign;

create_exception!(weingarten, WeingartenError, PyValueError);

fn err(e: weingarten_core::Error) -> PyErr {
    WeingartenError::new_err(e.to_string())
}

fn parse<T: std::str::FromStr<Err = String>>(s: &str) -> PyResult<T> {
    s.parse().map_err(PyValueError::new_err)
}

fn parse_sign(s: &str) -> PyResult<Sign> {
    parse(s)
}

fn sign_name(s: Sign) -> &'static str {
    match s {
        Sign::Plus => "plus",
        Sign::Minus => "minus",
    }
}

#[pyclass(name = "MVec3", module = "weingarten", frozen, from_py_object)]
#[derive(Clone, Copy)]
struct PyMVec3(weingarten_core::MVec3);

#[pymethods]
impl PyMVec3 {
    #[new]
    fn new(x: f64, y: f64, z: f64) -> Self {
        PyMVec3(weingarten_core::MVec3::new(x, y, z))
    }

    #[getter]
    fn x(&self) -> f64 {
        self.0.x
    }

    #[getter]
    fn y(&self) -> f64 {
        self.0.y
    }

    #[getter]
    fn z(&self) -> f64 {
        self.0.z
    }

    fn dot(&self, other: &PyMVec3) -> f64 {
        self.0.dot(other.0)
    }

    fn cross(&self, other: &PyMVec3) -> PyMVec3 {
        PyMVec3(self.0.cross(other.0))
    }

    #[pyo3(signature = (tol=None))]
    fn causal_character(&self, tol: Option<f64>) -> String {
        causal_character(self, tol)
    }

    #[allow(clippy::wrong_self_convention)]
    fn to_list(&self) -> [f64; 3] {
        self.0.to_array()
    }

    fn __add__(&self, other: &PyMVec3) -> PyMVec3 {
        PyMVec3(self.0 + other.0)
    }

    fn __sub__(&self, other: &PyMVec3) -> PyMVec3 {
        PyMVec3(self.0 - other.0)
    }

    fn __mul__(&self, k: f64) -> PyMVec3 {
        PyMVec3(self.0 * k)
    }

    fn __neg__(&self) -> PyMVec3 {
        PyMVec3(-self.0)
    }

    fn __eq__(&self, other: &PyMVec3) -> bool {
        self.0 == other.0
    }

    fn __repr__(&self) -> String {
        format!("MVec3({:?}, {:?}, {:?})", self.0.x, self.0.y, self.0.z)
    }
}

#[pyfunction]
fn lorentz_dot(u: &PyMVec3, v: &PyMVec3) -> f64 {
    weingarten_core::lorentz_dot(u.0, v.0)
}

#[pyfunction]
fn lorentz_cross(u: &PyMVec3, v: &PyMVec3) -> PyMVec3 {
    PyMVec3(weingarten_core::lorentz_cross(u.0, v.0))
}

/// "Spacelike", "Timelike" or "Lightlike"; the tolerance defaults to a scale of the vector's size.
#[pyfunction]
#[pyo3(signature = (v, tol=None))]
fn causal_character(v: &PyMVec3, tol: Option<f64>) -> String {
    let tol = tol.unwrap_or_else(|| default_causal_tol(v.0));
    weingarten_core::causal_character(v.0, tol).to_string()
}

fn report_dict<'py>(py: Python<'py>, r: &ResidualReport) -> PyResult<Bound<'py, PyDict>> {
    let d = PyDict::new(py);
    d.set_item("max_residual", r.max_residual)?;
    d.set_item("mean_residual", r.mean_residual)?;
    d.set_item("causal_class", r.causal_class.to_string())?;
    d.set_item("worst", r.worst.iter().map(|w| (w.u, w.v, w.residual)).collect::<Vec<_>>())?;
    d.set_item("report", r.to_report())?;
    Ok(d)
}

fn residual_of<P: Profile>(
    py: Python<'_>,
    problem: &solver::WeingartenProblem,
    profile: P,
    nu: usize,
    nv: usize,
    v_range: Option<(f64, f64)>,
) -> PyResult<Py<PyDict>> {
    let mut patch = revolve(problem.axis, profile).map_err(err)?;
    if let Some(v) = v_range {
        patch = patch.with_v_range(v);
    }
    let coeffs = (problem.a, problem.b, problem.c);
    let report = verify::weingarten_residual(&patch, coeffs, Grid::new(nu, nv), Orientation::Generator).map_err(err)?;
    Ok(report_dict(py, &report)?.unbind())
}

/// A rotational linear Weingarten problem aH + bK = c together with the
/// integration constant, root branch, height offset and slope sign.
#[pyclass(name = "WeingartenProblem", module = "weingarten", frozen, from_py_object)]
#[derive(Clone, Copy)]
struct PyProblem(solver::WeingartenProblem);

#[pymethods]
impl PyProblem {
    #[new]
    #[pyo3(signature = (axis, a, b, c, epsilon, lam, branch="plus", mu=0.0, slope_sign="plus"))]
    #[allow(clippy::too_many_arguments)]
    fn new(axis: &str, a: f64, b: f64, c: f64, epsilon: i32, lam: f64, branch: &str, mu: f64, slope_sign: &str) -> PyResult<Self> {
        let epsilon = match epsilon {
            1 => Sign::Plus,
            -1 => Sign::Minus,
            other => return Err(PyValueError::new_err(format!("epsilon must be 1 or -1, got {other}"))),
        };
        let axis: AxisKind = parse(axis)?;
        let p = solver::WeingartenProblem::new(axis, a, b, c, epsilon, lam)
            .with_branch(parse_sign(branch)?)
            .with_mu(mu)
            .with_slope_sign(parse_sign(slope_sign)?);
        p.validate().map_err(err)?;
        Ok(PyProblem(p))
    }

    #[getter]
    fn axis(&self) -> &'static str {
        self.0.axis.name()
    }
    #[getter]
    fn a(&self) -> f64 {
        self.0.a
    }
    #[getter]
    fn b(&self) -> f64 {
        self.0.b
    }
    #[getter]
    fn c(&self) -> f64 {
        self.0.c
    }
    #[getter]
    fn epsilon(&self) -> i32 {
        self.0.eps() as i32
    }
    #[getter]
    fn lam(&self) -> f64 {
        self.0.lambda
    }
    #[getter]
    fn mu(&self) -> f64 {
        self.0.mu
    }
    #[getter]
    fn branch(&self) -> &'static str {
        sign_name(self.0.branch)
    }
    #[getter]
    fn slope_sign(&self) -> &'static str {
        sign_name(self.0.slope_sign)
    }

    fn has_zero_discriminant(&self) -> bool {
        self.0.has_zero_discriminant()
    }

    /// Root φ of the first-integral quadratic at abscissa `s`.
    fn solve_phi(&self, s: f64) -> PyResult<f64> {
        solver::solve_phi(&self.0, s).map_err(err)
    }

    /// z′ prescribed by the first integral at `s`.
    fn slope(&self, s: f64) -> PyResult<f64> {
        solver::slope(&self.0, s).map_err(err)
    }

    /// Left-hand side of the first integral; equals λ along a solution.
    fn first_integral(&self, u: f64, z: f64, zp: f64) -> PyResult<f64> {
        solver::first_integral_lhs(&self.0, u, z, zp).map_err(err)
    }

    #[pyo3(signature = (u_start, u_end, z_start=None, samples=200))]
    fn integrate(&self, u_start: f64, u_end: f64, z_start: Option<f64>, samples: usize) -> PyResult<PyCurve> {
        let mut ctl = StepControl::default().with_samples(samples);
        if let Some(z) = z_start {
            ctl = ctl.with_z_start(z);
        }
        solver::integrate_profile(&self.0, u_start, u_end, &ctl).map(PyCurve).map_err(err)
    }

    /// Explicit solution family `case` (e.g. "timelike-lambda-eq-b") on `interval`.
    fn closed_form(&self, case: &str, interval: (f64, f64)) -> PyResult<PyClosedForm> {
        let case = ClosedFormCase::ALL
            .into_iter()
            .find(|c| c.name() == case)
            .ok_or_else(|| PyValueError::new_err(format!("unknown closed-form case `{case}`")))?;
        solver::closed_form(case, &self.0, interval).map(PyClosedForm).map_err(err)
    }

    fn __repr__(&self) -> String {
        let p = &self.0;
        format!(
            "WeingartenProblem(axis={:?}, a={:?}, b={:?}, c={:?}, epsilon={}, lam={:?}, branch={:?}, mu={:?}, slope_sign={:?})",
            p.axis.name(),
            p.a,
            p.b,
            p.c,
            p.eps(),
            p.lambda,
            sign_name(p.branch),
            p.mu,
            sign_name(p.slope_sign)
        )
    }
}

/// A numerically integrated generating curve.
#[pyclass(name = "GeneratingCurve", module = "weingarten", frozen)]
struct PyCurve(solver::GeneratingCurve);

#[pymethods]
impl PyCurve {
    #[getter]
    fn u(&self) -> Vec<f64> {
        self.0.samples.iter().map(|s| s.u).collect()
    }
    #[getter]
    fn z(&self) -> Vec<f64> {
        self.0.samples.iter().map(|s| s.z).collect()
    }
    #[getter]
    fn zprime(&self) -> Vec<f64> {
        self.0.samples.iter().map(|s| s.zp).collect()
    }
    #[getter]
    fn first_integral(&self) -> Vec<f64> {
        self.0.samples.iter().map(|s| s.first_integral).collect()
    }
    #[getter]
    fn stop_reason(&self) -> &'static str {
        self.0.stop.name()
    }
    #[getter]
    fn validity(&self) -> (f64, f64) {
        self.0.validity
    }
    #[getter]
    fn completed(&self) -> bool {
        self.0.completed()
    }

    /// max |I − λ| over the samples.
    fn conservation_error(&self) -> f64 {
        self.0.conservation_error()
    }

    /// Height at any `u` inside the validity interval.
    fn height(&self, u: f64) -> PyResult<f64> {
        self.0.eval(u).map(|p| p.z).map_err(err)
    }

    /// |aH + bK − c| of the surface of revolution on an nu × nv grid.
    #[pyo3(signature = (nu=30, nv=15, v_range=None))]
    fn residual(&self, py: Python<'_>, nu: usize, nv: usize, v_range: Option<(f64, f64)>) -> PyResult<Py<PyDict>> {
        residual_of(py, &self.0.problem, &self.0, nu, nv, v_range)
    }

    fn __len__(&self) -> usize {
        self.0.samples.len()
    }
}

#[pyclass(name = "ClosedForm", module = "weingarten", frozen)]
struct PyClosedForm(solver::ClosedForm);

#[pymethods]
impl PyClosedForm {
    #[getter]
    fn interval(&self) -> (f64, f64) {
        self.0.interval()
    }

    fn height(&self, u: f64) -> f64 {
        self.0.height(u)
    }

    fn zprime(&self, u: f64) -> PyResult<f64> {
        self.0.eval(u).map(|p| p.zp).map_err(err)
    }

    /// `(kind, center, radius)` of the pseudo-quadric this family traces, if any.
    fn expected_quadric(&self) -> Option<(String, PyMVec3, f64)> {
        self.0.expected_quadric().map(|q| (q.kind.to_string(), PyMVec3(q.center), q.radius))
    }

    #[pyo3(signature = (nu=30, nv=15, v_range=None))]
    fn residual(&self, py: Python<'_>, nu: usize, nv: usize, v_range: Option<(f64, f64)>) -> PyResult<Py<PyDict>> {
        residual_of(py, &self.0.problem, self.0, nu, nv, v_range)
    }

    /// Max height discrepancy against an integrated curve on their common interval.
    #[pyo3(signature = (curve, n=200))]
    fn compare(&self, curve: &PyCurve, n: usize) -> PyResult<f64> {
        let (a, b) = self.0.interval();
        let (c, d) = curve.0.validity;
        verify::compare_profiles(&self.0, &curve.0, (a.max(c), b.min(d)), n).map_err(err)
    }
}

/// Fits ⟨p − p₀, p − p₀⟩ = ±r² to the points; returns a dict with `kind`
/// (None when nothing fits), `center`, `radius` and `rms_deviation`.
#[pyfunction]
#[pyo3(signature = (points, tol=None))]
fn identify_quadric<'py>(py: Python<'py>, points: Vec<(f64, f64, f64)>, tol: Option<f64>) -> PyResult<Bound<'py, PyDict>> {
    let pts: Vec<_> = points.into_iter().map(|(x, y, z)| weingarten_core::MVec3::new(x, y, z)).collect();
    let fit = verify::identify_quadric(&pts, tol).map_err(err)?;
    let d = PyDict::new(py);
    d.set_item("kind", fit.kind.map(|k| k.to_string()))?;
    d.set_item("center", PyMVec3(fit.center))?;
    d.set_item("radius", fit.radius)?;
    d.set_item("rms_deviation", fit.rms_deviation)?;
    Ok(d)
}

#[pymodule]
fn weingarten(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add("WeingartenError", m.py().get_type::<WeingartenError>())?;
    m.add_class::<PyMVec3>()?;
    m.add_class::<PyProblem>()?;
    m.add_class::<PyCurve>()?;
    m.add_class::<PyClosedForm>()?;
    m.add_function(wrap_pyfunction!(lorentz_dot, m)?)?;
    m.add_function(wrap_pyfunction!(lorentz_cross, m)?)?;
    m.add_function(wrap_pyfunction!(causal_character, m)?)?;
    m.add_function(wrap_pyfunction!(identify_quadric, m)?)?;
    Ok(())
}
