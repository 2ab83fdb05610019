//! Python bindings for the `courant_cube` library.
//!
//! Build with `--features extension-module` and import as `courant_cube`.

use std::collections::BTreeMap;

use pyo3::exceptions::{PyRuntimeError, PyValueError};
use pyo3::prelude::*;

use courant_cube::cli::{ReportConfig, VerdictReport};
use courant_cube::nodal::{self, EigenCombo, NodalConfig, SweepConfig};
use courant_cube::{bounds, quadric, spectrum, symmetry, Error};

fn to_py(err: Error) -> PyErr {
    match err {
        Error::NoConvergence(_) => PyRuntimeError::new_err(err.to_string()),
        _ => PyValueError::new_err(err.to_string()),
    }
}

fn box_spec(weights: Option<(f64, f64, f64)>) -> PyResult<spectrum::BoxSpec> {
    match weights {
        None => Ok(spectrum::BoxSpec::CUBE),
        Some((a, b, c)) => spectrum::BoxSpec::new(a, b, c).map_err(to_py),
    }
}

fn parse_parity(name: &str) -> PyResult<symmetry::Parity> {
    match name.to_ascii_lowercase().as_str() {
        "even" => Ok(symmetry::Parity::Even),
        "odd" => Ok(symmetry::Parity::Odd),
        _ => Err(PyValueError::new_err(format!("parity must be 'even' or 'odd', got {name:?}"))),
    }
}

#[pyclass(name = "ModeTriple", module = "courant_cube", skip_from_py_object, frozen, get_all, eq, hash)]
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct PyModeTriple {
    l: u32,
    m: u32,
    n: u32,
}

#[pymethods]
impl PyModeTriple {
    #[new]
    fn new(l: u32, m: u32, n: u32) -> PyResult<Self> {
        spectrum::ModeTriple::new(l, m, n).map(Self::from).map_err(to_py)
    }

    /// `ℓ² + m² + n²`.
    fn eigenvalue(&self) -> u64 {
        self.inner().eigenvalue()
    }

    /// Number of nodal domains of the product eigenfunction.
    fn nodal_count(&self) -> u64 {
        spectrum::product_nodal_count(&self.inner())
    }

    fn __repr__(&self) -> String {
        format!("ModeTriple({}, {}, {})", self.l, self.m, self.n)
    }
}

impl PyModeTriple {
    fn inner(&self) -> spectrum::ModeTriple {
        spectrum::ModeTriple { l: self.l, m: self.m, n: self.n }
    }
}

impl From<spectrum::ModeTriple> for PyModeTriple {
    fn from(t: spectrum::ModeTriple) -> Self {
        PyModeTriple { l: t.l, m: t.m, n: t.n }
    }
}

#[pyclass(name = "EigenvalueGroup", module = "courant_cube", skip_from_py_object, frozen, get_all)]
#[derive(Clone, Debug)]
pub struct PyEigenvalueGroup {
    value: f64,
    k_min: u64,
    k_max: u64,
    modes: Vec<PyModeTriple>,
}

#[pymethods]
impl PyEigenvalueGroup {
    #[getter]
    fn multiplicity(&self) -> usize {
        self.modes.len()
    }

    fn __repr__(&self) -> String {
        format!("EigenvalueGroup(value={}, k={}..{}, multiplicity={})", self.value, self.k_min, self.k_max, self.modes.len())
    }
}

impl From<&spectrum::EigenvalueGroup> for PyEigenvalueGroup {
    fn from(g: &spectrum::EigenvalueGroup) -> Self {
        PyEigenvalueGroup {
            value: g.value,
            k_min: g.k_min,
            k_max: g.k_max,
            modes: g.modes.iter().copied().map(PyModeTriple::from).collect(),
        }
    }
}

#[pyclass(name = "PleijelCutoff", module = "courant_cube", skip_from_py_object, frozen, get_all)]
#[derive(Clone, Debug)]
pub struct PyPleijelCutoff {
    mu_root: f64,
    lambda_cutoff: f64,
}

#[pymethods]
impl PyPleijelCutoff {
    fn __repr__(&self) -> String {
        format!("PleijelCutoff(mu_root={}, lambda_cutoff={})", self.mu_root, self.lambda_cutoff)
    }
}

#[pyclass(name = "ScreeningRecord", module = "courant_cube", skip_from_py_object, frozen, get_all)]
#[derive(Clone, Debug)]
pub struct PyScreeningRecord {
    group: PyEigenvalueGroup,
    ratio: f64,
    fk_pass: bool,
    candidate: bool,
}

#[pymethods]
impl PyScreeningRecord {
    fn __repr__(&self) -> String {
        format!(
            "ScreeningRecord(value={}, k_min={}, ratio={:.4}, candidate={})",
            self.group.value, self.group.k_min, self.ratio, self.candidate
        )
    }
}

#[pyclass(name = "SymmetricIndex", module = "courant_cube", skip_from_py_object, frozen, get_all)]
#[derive(Clone, Debug)]
pub struct PySymmetricIndex {
    value: f64,
    parity: String,
    j: u64,
    bound: u64,
    excluded: bool,
}

#[pymethods]
impl PySymmetricIndex {
    fn __repr__(&self) -> String {
        format!(
            "SymmetricIndex(value={}, parity={:?}, j={}, bound={}, excluded={})",
            self.value, self.parity, self.j, self.bound, self.excluded
        )
    }
}

#[pyclass(name = "ComponentPrediction", module = "courant_cube", skip_from_py_object, frozen, get_all)]
#[derive(Clone, Debug)]
pub struct PyComponentPrediction {
    quadric: (f64, f64, f64),
    quadric_class: String,
    count: u8,
    subcase: String,
    w0: Option<f64>,
    margin: f64,
}

#[pymethods]
impl PyComponentPrediction {
    fn __repr__(&self) -> String {
        format!("ComponentPrediction(count={}, subcase={:?})", self.count, self.subcase)
    }
}

#[pyclass(name = "NodalCount", module = "courant_cube", skip_from_py_object, frozen, get_all)]
#[derive(Clone, Debug)]
pub struct PyNodalCount {
    positive_components: usize,
    negative_components: usize,
    total: usize,
    zero_samples: usize,
    resolution_used: usize,
    converged: bool,
}

#[pymethods]
impl PyNodalCount {
    fn __repr__(&self) -> String {
        format!(
            "NodalCount(total={}, positive={}, negative={}, resolution={}, converged={})",
            self.total,
            self.positive_components,
            self.negative_components,
            self.resolution_used,
            if self.converged { "True" } else { "False" }
        )
    }
}

impl From<nodal::NodalCount> for PyNodalCount {
    fn from(c: nodal::NodalCount) -> Self {
        PyNodalCount {
            positive_components: c.positive_components,
            negative_components: c.negative_components,
            total: c.total,
            zero_samples: c.zero_samples,
            resolution_used: c.resolution_used,
            converged: c.converged,
        }
    }
}

#[pyclass(name = "SweepResult", module = "courant_cube", skip_from_py_object, frozen)]
#[derive(Clone, Debug)]
pub struct PySweepResult {
    inner: nodal::SweepResult,
}

#[pymethods]
impl PySweepResult {
    #[getter]
    fn value(&self) -> f64 {
        self.inner.value
    }

    /// Domain count → number of samples.
    #[getter]
    fn histogram(&self) -> BTreeMap<usize, usize> {
        self.inner.histogram.clone()
    }

    /// Total domain count of each sample, in sample order.
    #[getter]
    fn totals(&self) -> Vec<usize> {
        self.inner.samples.iter().map(|s| s.count.total).collect()
    }

    #[getter]
    fn coefficients(&self) -> Vec<Vec<f64>> {
        self.inner.samples.iter().map(|s| s.coeffs.clone()).collect()
    }

    #[getter]
    fn non_converged(&self) -> Vec<usize> {
        self.inner.non_converged().map(|s| s.index).collect()
    }

    /// `(checked, agreed)` over samples farther than `min_margin` from a subcase boundary.
    #[pyo3(signature = (min_margin = 1e-2))]
    fn predictor_agreement(&self, min_margin: f64) -> (usize, usize) {
        self.inner.predictor_agreement(min_margin)
    }

    fn to_json(&self) -> PyResult<String> {
        serde_json::to_string(&self.inner).map_err(|e| PyRuntimeError::new_err(e.to_string()))
    }

    fn __len__(&self) -> usize {
        self.inner.samples.len()
    }

    fn __repr__(&self) -> String {
        format!("SweepResult(value={}, histogram={:?})", self.inner.value, self.inner.histogram)
    }
}

/// Eigenvalue groups up to `lambda_max` (inclusive).
#[pyfunction]
#[pyo3(signature = (lambda_max, r#box = None))]
fn enumerate_groups(lambda_max: f64, r#box: Option<(f64, f64, f64)>) -> PyResult<Vec<PyEigenvalueGroup>> {
    let groups = spectrum::enumerate_groups(&box_spec(r#box)?, lambda_max).map_err(to_py)?;
    Ok(groups.iter().map(PyEigenvalueGroup::from).collect())
}

/// The group holding `value`.
#[pyfunction]
#[pyo3(signature = (value, r#box = None))]
fn find_group(value: f64, r#box: Option<(f64, f64, f64)>) -> PyResult<PyEigenvalueGroup> {
    spectrum::find_group(&box_spec(r#box)?, value).map(|g| PyEigenvalueGroup::from(&g)).map_err(to_py)
}

/// Number of eigenvalues strictly below `lam`, with multiplicity.
#[pyfunction]
#[pyo3(signature = (lam, r#box = None))]
fn counting_function(lam: f64, r#box: Option<(f64, f64, f64)>) -> PyResult<u64> {
    spectrum::counting_function(&box_spec(r#box)?, lam).map_err(to_py)
}

#[pyfunction]
fn lattice_lower_bound(lam: f64) -> PyResult<f64> {
    bounds::lattice_lower_bound(lam).map_err(to_py)
}

#[pyfunction]
fn faber_krahn_threshold(lam: f64, k: u64) -> bool {
    bounds::faber_krahn_threshold(lam, k)
}

#[pyfunction]
fn pleijel_cutoff() -> PyResult<PyPleijelCutoff> {
    let c = bounds::pleijel_cutoff().map_err(to_py)?;
    Ok(PyPleijelCutoff { mu_root: c.mu_root, lambda_cutoff: c.lambda_cutoff })
}

/// Faber–Krahn screening of every group up to `lambda_max`.
#[pyfunction]
#[pyo3(signature = (lambda_max = 48.0, r#box = None))]
fn screen(lambda_max: f64, r#box: Option<(f64, f64, f64)>) -> PyResult<Vec<PyScreeningRecord>> {
    let records = bounds::screen_candidates(&box_spec(r#box)?, lambda_max).map_err(to_py)?;
    Ok(records
        .iter()
        .map(|r| PyScreeningRecord {
            group: PyEigenvalueGroup::from(&r.group),
            ratio: r.ratio,
            fk_pass: r.fk_pass,
            candidate: r.candidate,
        })
        .collect())
}

/// Position of `value` in the `parity` subspace and the resulting `2j` bound.
#[pyfunction]
#[pyo3(signature = (value, parity, r#box = None))]
fn symmetric_index(value: f64, parity: &str, r#box: Option<(f64, f64, f64)>) -> PyResult<PySymmetricIndex> {
    let bx = box_spec(r#box)?;
    let s = symmetry::symmetric_index(&bx, value, parse_parity(parity)?).map_err(to_py)?;
    Ok(PySymmetricIndex {
        value: s.group.value,
        parity: s.parity.to_string(),
        j: s.j,
        bound: s.bound,
        excluded: symmetry::symmetry_excludes(&bx, &s.group),
    })
}

/// Quadric reduction and component prediction for `Φ_{a,b,c}`.
#[pyfunction]
fn predict_components(a: f64, b: f64, c: f64) -> PyResult<PyComponentPrediction> {
    let q = quadric::reduce_to_quadric(a, b, c).map_err(to_py)?;
    let p = quadric::predict_components(&q);
    Ok(PyComponentPrediction {
        quadric: (q.coeffs[0], q.coeffs[1], q.coeffs[2]),
        quadric_class: format!("{:?}", quadric::classify(&q)),
        count: p.count,
        subcase: p.subcase,
        w0: p.w0,
        margin: quadric::subcase_margin(&q),
    })
}

#[pyfunction]
fn phi(a: f64, b: f64, c: f64, x: f64, y: f64, z: f64) -> f64 {
    quadric::phi([a, b, c], x, y, z)
}

/// Nodal domains of `Σ coeffs[i] · u_{modes[i]}`; all modes must share one eigenvalue.
#[pyfunction]
#[pyo3(signature = (modes, coeffs, n0 = 128, max_resolution = nodal::DEFAULT_MAX_RESOLUTION, r#box = None))]
fn count_nodal_domains(
    py: Python<'_>,
    modes: Vec<(u32, u32, u32)>,
    coeffs: Vec<f64>,
    n0: usize,
    max_resolution: usize,
    r#box: Option<(f64, f64, f64)>,
) -> PyResult<PyNodalCount> {
    let bx = box_spec(r#box)?;
    let modes = modes
        .into_iter()
        .map(|(l, m, n)| spectrum::ModeTriple::new(l, m, n))
        .collect::<courant_cube::Result<Vec<_>>>()
        .map_err(to_py)?;
    let combo = EigenCombo::from_modes(&bx, &modes, &coeffs).map_err(to_py)?;
    let config = NodalConfig { max_resolution };
    py.detach(|| nodal::count_nodal_domains_with(&combo, n0, &config)).map(PyNodalCount::from).map_err(to_py)
}

/// Nodal-domain histogram over `samples` points of the unit sphere of one eigenspace.
#[pyfunction]
#[pyo3(signature = (value, samples = 500, resolution = 128, seed = 0, max_resolution = nodal::DEFAULT_MAX_RESOLUTION, r#box = None))]
fn sweep(
    py: Python<'_>,
    value: f64,
    samples: usize,
    resolution: usize,
    seed: u64,
    max_resolution: usize,
    r#box: Option<(f64, f64, f64)>,
) -> PyResult<PySweepResult> {
    let group = spectrum::find_group(&box_spec(r#box)?, value).map_err(to_py)?;
    let config = SweepConfig { samples, resolution, seed, nodal: NodalConfig { max_resolution } };
    py.detach(|| nodal::sweep_eigenspace(&group, &config)).map(|inner| PySweepResult { inner }).map_err(to_py)
}

/// Full pipeline; returns the verdict report as a JSON string.
#[pyfunction]
#[pyo3(signature = (samples = 500, resolution = 128, seed = 0))]
fn verdict_json(py: Python<'_>, samples: usize, resolution: usize, seed: u64) -> PyResult<String> {
    let config = ReportConfig { sweep_samples: samples, resolution, seed, ..ReportConfig::default() };
    let report = py.detach(|| VerdictReport::build(&config)).map_err(to_py)?;
    serde_json::to_string(&report).map_err(|e| PyRuntimeError::new_err(e.to_string()))
}

#[pymodule]
#[pyo3(name = "courant_cube")]
fn courant_cube_module(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyModeTriple>()?;
    m.add_class::<PyEigenvalueGroup>()?;
    m.add_class::<PyPleijelCutoff>()?;
    m.add_class::<PyScreeningRecord>()?;
    m.add_class::<PySymmetricIndex>()?;
    m.add_class::<PyComponentPrediction>()?;
    m.add_class::<PyNodalCount>()?;
    m.add_class::<PySweepResult>()?;
    m.add_function(wrap_pyfunction!(enumerate_groups, m)?)?;
    m.add_function(wrap_pyfunction!(find_group, m)?)?;
    m.add_function(wrap_pyfunction!(counting_function, m)?)?;
    m.add_function(wrap_pyfunction!(lattice_lower_bound, m)?)?;
    m.add_function(wrap_pyfunction!(faber_krahn_threshold, m)?)?;
    m.add_function(wrap_pyfunction!(pleijel_cutoff, m)?)?;
    m.add_function(wrap_pyfunction!(screen, m)?)?;
    m.add_function(wrap_pyfunction!(symmetric_index, m)?)?;
    m.add_function(wrap_pyfunction!(predict_components, m)?)?;
    m.add_function(wrap_pyfunction!(phi, m)?)?;
    m.add_function(wrap_pyfunction!(count_nodal_domains, m)?)?;
    m.add_function(wrap_pyfunction!(sweep, m)?)?;
    m.add_function(wrap_pyfunction!(verdict_json, m)?)?;
    m.add("SCHEMA_VERSION", courant_cube::cli::SCHEMA_VERSION)?;
    Ok(())
}
