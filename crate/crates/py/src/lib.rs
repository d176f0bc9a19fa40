//! Python bindings. Errors from the core surface as `ValueError`.

use h90_core::backends::{self, AChoice, DegreeTower};
use h90_core::checks;
use h90_core::format::{model_from_text, model_to_text};
use h90_core::gfp::{Fp, Matrix};
use h90_core::synth::{self, GenSpec};
use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;

fn err(e: h90_core::Error) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn field(p: u32) -> PyResult<Fp> {
    Fp::new(p).map_err(err)
}

fn matrix_from_rows(f: Fp, rows: &[Vec<u32>], cols: usize) -> PyResult<Matrix> {
    Matrix::from_rows(f, cols, rows).map_err(err)
}

/// A checker verdict with witnesses.
#[pyclass(name = "Report", frozen)]
struct PyReport(h90_core::TheoremReport);

#[pymethods]
impl PyReport {
    #[getter]
    fn checker(&self) -> &str {
        &self.0.checker
    }

    #[getter]
    fn verdict(&self) -> String {
        self.0.verdict.to_string()
    }

    #[getter]
    fn degree(&self) -> Option<usize> {
        self.0.degree
    }

    #[getter]
    fn passed(&self) -> bool {
        self.0.passed()
    }

    #[getter]
    fn witnesses(&self) -> Vec<(String, Vec<u32>)> {
        self.0
            .witnesses
            .iter()
            .map(|w| (w.label.clone(), w.vector.clone()))
            .collect()
    }

    /// `(name, verdict)` for each clause, e.g. one per axiom.
    #[getter]
    fn clauses(&self) -> Vec<(String, String)> {
        self.0
            .clauses
            .iter()
            .map(|c| (c.name.clone(), c.verdict.to_string()))
            .collect()
    }

    #[getter]
    fn notes(&self) -> Vec<String> {
        self.0.notes.clone()
    }

    #[getter]
    fn profile(&self) -> Vec<usize> {
        self.0.profile.clone()
    }

    fn to_json(&self) -> String {
        serde_json::to_string(&self.0).expect("report serializes")
    }

    fn __repr__(&self) -> String {
        format!("Report({}: {})", self.0.checker, self.0.verdict)
    }

    fn __str__(&self) -> String {
        self.0.to_string()
    }
}

fn report(r: h90_core::Result<h90_core::TheoremReport>) -> PyResult<PyReport> {
    r.map(PyReport).map_err(err)
}

/// A finite-dimensional `F_p[C_p]`-module given by the action of a generator.
#[pyclass(name = "CyclicModule", frozen)]
struct PyCyclicModule(h90_core::CyclicModule);

#[pymethods]
impl PyCyclicModule {
    /// `sigma` as a list of rows.
    #[new]
    fn new(p: u32, sigma: Vec<Vec<u32>>) -> PyResult<Self> {
        let f = field(p)?;
        let m = matrix_from_rows(f, &sigma, sigma.len())?;
        h90_core::CyclicModule::new(m).map(Self).map_err(err)
    }

    #[staticmethod]
    fn from_blocks(p: u32, sizes: Vec<usize>) -> PyResult<Self> {
        h90_core::CyclicModule::from_blocks(field(p)?, &sizes)
            .map(Self)
            .map_err(err)
    }

    /// A random conjugate of the block-diagonal module with these sizes.
    #[staticmethod]
    fn random(p: u32, sizes: Vec<usize>, seed: u64) -> PyResult<Self> {
        synth::random_module(p, &sizes, seed).map(Self).map_err(err)
    }

    #[getter]
    fn p(&self) -> u32 {
        self.0.p()
    }

    #[getter]
    fn dim(&self) -> usize {
        self.0.dim()
    }

    #[getter]
    fn sigma(&self) -> Vec<Vec<u32>> {
        self.0.sigma().row_vectors()
    }

    /// Multiplicities `[m_1, ..., m_p]` of the Jordan blocks.
    fn profile(&self) -> Vec<usize> {
        self.0.profile().multiplicities().to_vec()
    }

    fn block_sizes(&self) -> Vec<usize> {
        self.0.profile().block_sizes()
    }

    /// `(block sizes, Jordan basis as columns given row by row)`.
    fn decompose(&self) -> (Vec<usize>, Vec<Vec<u32>>) {
        let d = self.0.decompose();
        (d.blocks, d.basis_change.row_vectors())
    }

    fn h1_dim(&self) -> usize {
        self.0.h1().dim
    }

    fn is_free(&self) -> bool {
        self.0.is_free()
    }

    fn length(&self, y: Vec<u32>) -> PyResult<usize> {
        self.0.length(&y).map_err(err)
    }

    fn hs_equivalences(&self) -> PyReport {
        PyReport(checks::hs_equivalences(&self.0))
    }

    fn __repr__(&self) -> String {
        format!(
            "CyclicModule(p={}, dim={}, profile={:?})",
            self.0.p(),
            self.0.dim(),
            self.0.profile().multiplicities()
        )
    }
}

/// The linear-algebra model `(A, B, i, N, K_a, K_xi)`.
#[pyclass(name = "ExtensionModel", frozen)]
struct PyModel(h90_core::ExtensionModel);

#[pymethods]
impl PyModel {
    #[staticmethod]
    fn from_text(text: &str) -> PyResult<Self> {
        model_from_text(text).map(Self).map_err(err)
    }

    #[staticmethod]
    fn load(path: &str) -> PyResult<Self> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| PyValueError::new_err(format!("{}: {}", path, e)))?;
        Self::from_text(&text)
    }

    fn to_text(&self) -> String {
        model_to_text(&self.0)
    }

    #[getter]
    fn p(&self) -> u32 {
        self.0.p()
    }

    #[getter]
    fn a_dim(&self) -> usize {
        self.0.a_dim()
    }

    #[getter]
    fn b_dim(&self) -> usize {
        self.0.b_dim()
    }

    #[getter]
    fn provenance(&self) -> &str {
        self.0.provenance()
    }

    #[getter]
    fn module(&self) -> PyCyclicModule {
        PyCyclicModule(self.0.module().clone())
    }

    #[getter]
    fn i(&self) -> Vec<Vec<u32>> {
        self.0.i().row_vectors()
    }

    #[getter]
    fn n(&self) -> Vec<Vec<u32>> {
        self.0.n().row_vectors()
    }

    #[getter]
    fn k_a(&self) -> Vec<Vec<u32>> {
        self.0.k_a().basis()
    }

    #[getter]
    fn k_xi(&self) -> Vec<Vec<u32>> {
        self.0.k_xi().basis()
    }

    fn fingerprint(&self) -> String {
        self.0.fingerprint()
    }

    #[pyo3(signature = (require_a7 = false))]
    fn validate(&self, require_a7: bool) -> PyReport {
        PyReport(h90_core::validate_model(&self.0, require_a7))
    }

    fn h90_holds(&self) -> PyResult<PyReport> {
        report(checks::h90_holds(&self.0))
    }

    fn small_h90(&self) -> PyResult<PyReport> {
        report(checks::small_h90(&self.0))
    }

    fn criterion_p2(&self) -> PyResult<PyReport> {
        report(checks::criterion_p2(&self.0))
    }

    fn criterion_podd(&self) -> PyResult<PyReport> {
        report(checks::criterion_podd(&self.0))
    }

    fn cor_surjective_equiv(&self) -> PyResult<PyReport> {
        report(checks::cor_surjective_equiv(&self.0))
    }

    fn check_sigmamin1(&self) -> PyResult<PyReport> {
        report(checks::check_sigmamin1(&self.0))
    }

    /// The length lemma for `y`, or for every vector when `y` is omitted.
    #[pyo3(signature = (y = None))]
    fn check_length_lemma(&self, y: Option<Vec<u32>>) -> PyResult<PyReport> {
        match y {
            Some(y) => report(checks::check_length_lemma(&self.0, &y)),
            None => report(checks::check_length_lemma_all(&self.0)),
        }
    }

    fn summand_condition(&self) -> PyResult<PyReport> {
        report(checks::summand_condition(&self.0))
    }

    fn h1_implies_h90(&self) -> PyResult<PyReport> {
        report(checks::h1_implies_h90(&self.0))
    }

    fn oracle_summand(&self) -> PyResult<PyReport> {
        report(synth::oracle_enumerate_summand_pairs(&self.0))
    }

    fn oracle_exactness(&self) -> PyResult<PyReport> {
        report(synth::oracle_exactness(&self.0))
    }

    fn direct_sum(&self, other: PyRef<'_, PyModel>) -> PyResult<PyModel> {
        self.0.direct_sum(&other.0).map(Self).map_err(err)
    }

    fn __repr__(&self) -> String {
        format!(
            "ExtensionModel(p={}, dimA={}, dimB={}, provenance={:?})",
            self.0.p(),
            self.0.a_dim(),
            self.0.b_dim(),
            self.0.provenance()
        )
    }
}

/// The models of a backend in degrees `1..=n_max` with their cup maps.
#[pyclass(name = "Tower", frozen)]
struct PyTower(DegreeTower);

#[pymethods]
impl PyTower {
    #[getter]
    fn descriptor(&self) -> &str {
        &self.0.descriptor
    }

    #[getter]
    fn n_max(&self) -> usize {
        self.0.n_max
    }

    #[getter]
    fn cd(&self) -> Option<u32> {
        self.0.cd
    }

    /// Model in degree `n`, counting from 1.
    fn model(&self, n: usize) -> PyResult<PyModel> {
        self.0
            .model(n)
            .cloned()
            .map(PyModel)
            .ok_or_else(|| PyValueError::new_err(format!("degree {} outside 1..={}", n, self.0.n_max)))
    }

    fn h90_verdicts(&self) -> PyResult<Vec<String>> {
        self.0
            .h90_verdicts()
            .map(|v| v.iter().map(|x| x.to_string()).collect())
            .map_err(err)
    }

    fn consistency(&self) -> PyReport {
        PyReport(backends::tower_consistency(&self.0))
    }

    fn hereditary(&self) -> PyResult<PyReport> {
        report(backends::hereditary_check(&self.0))
    }

    fn cd_forward(&self) -> PyResult<PyReport> {
        report(backends::cd_forward_check(&self.0))
    }

    fn __repr__(&self) -> String {
        format!("Tower({}, n_max={})", self.0.descriptor, self.0.n_max)
    }
}

#[pyfunction]
#[pyo3(signature = (p, m1, m2, mp, seed, k_xi_zero = false))]
fn gen_realizable(p: u32, m1: usize, m2: usize, mp: usize, seed: u64, k_xi_zero: bool) -> PyResult<PyModel> {
    let mut spec = GenSpec::realizable(p, m1, m2, mp, seed);
    if k_xi_zero {
        spec = spec.with_k_xi(synth::KxiChoice::Zero);
    }
    synth::gen_realizable(&spec).map(PyModel).map_err(err)
}

/// `blocks[s - 1]` is the number of Jordan blocks of size `s`.
#[pyfunction]
#[pyo3(signature = (p, blocks, seed, extra_b_dim = 0))]
fn gen_freeform(p: u32, blocks: Vec<usize>, seed: u64, extra_b_dim: usize) -> PyResult<PyModel> {
    synth::gen_freeform(&GenSpec::freeform(p, blocks, extra_b_dim, seed))
        .map(PyModel)
        .map_err(err)
}

#[pyfunction]
fn random_realizable(p: u32, max_dim: usize, seed: u64) -> PyResult<PyModel> {
    synth::gen_realizable(&synth::random_realizable_spec(p, max_dim, seed))
        .map(PyModel)
        .map_err(err)
}

#[pyfunction]
fn subseed(seed: u64, trial: u64) -> u64 {
    synth::subseed(seed, trial)
}

#[pyfunction]
fn stored_fixtures() -> Vec<(String, PyModel)> {
    synth::stored_fixtures()
        .into_iter()
        .map(|(name, m)| (name.to_string(), PyModel(m)))
        .collect()
}

#[pyfunction]
fn ff_tower(p: u32, q: u64, n_max: usize) -> PyResult<PyTower> {
    backends::ff_build_tower(p, q, n_max).map(PyTower).map_err(err)
}

#[pyfunction]
fn real_tower(n_max: usize) -> PyResult<PyTower> {
    backends::real_build_tower(n_max).map(PyTower).map_err(err)
}

/// `a` is one of `"u"`, `"ell"`, `"uell"`.
#[pyfunction]
#[pyo3(signature = (ell, a, n_max, precision = 6))]
fn local_tower(ell: u64, a: &str, n_max: usize, precision: u32) -> PyResult<PyTower> {
    let choice = AChoice::parse(a).map_err(err)?;
    backends::local_build_tower(ell, choice, n_max, precision)
        .map(PyTower)
        .map_err(err)
}

/// Hilbert symbol `(a, b)` over `Q_ell`, as `1` or `-1`.
#[pyfunction]
fn hilbert_symbol(a: i64, b: i64, ell: u64) -> PyResult<i8> {
    backends::hilbert_symbol_int(a, b, ell).map_err(err)
}

#[pymodule]
fn h90py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyReport>()?;
    m.add_class::<PyCyclicModule>()?;
    m.add_class::<PyModel>()?;
    m.add_class::<PyTower>()?;
    m.add_function(wrap_pyfunction!(gen_realizable, m)?)?;
    m.add_function(wrap_pyfunction!(gen_freeform, m)?)?;
    m.add_function(wrap_pyfunction!(random_realizable, m)?)?;
    m.add_function(wrap_pyfunction!(subseed, m)?)?;
    m.add_function(wrap_pyfunction!(stored_fixtures, m)?)?;
    m.add_function(wrap_pyfunction!(ff_tower, m)?)?;
    m.add_function(wrap_pyfunction!(real_tower, m)?)?;
    m.add_function(wrap_pyfunction!(local_tower, m)?)?;
    m.add_function(wrap_pyfunction!(hilbert_symbol, m)?)?;
    Ok(())
}
