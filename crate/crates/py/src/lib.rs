//! Python bindings: braid words, normal forms, loops and monodromy.

use fewbraid::annular::{default_cut, wreath_image};
use fewbraid::error::TrackError;
use fewbraid::loops::FewnomialSupport;
use fewbraid::monodromy::{self, surjectivity_witness, TrackParams};
use fewbraid::simple::{bullet_support as bullet, euclid_word as euclid, Support};
use fewbraid::tropical::{self, default_epsilon, ell_j_loop, gamma_loop, monomial_loop, realize, tau_loop, CoefficientPair, RealizeSide, TrinomialSupport};
use num_complex::Complex64;
use pyo3::exceptions::{PyArithmeticError, PyValueError};
use pyo3::prelude::*;

fn value_error(e: impl ToString) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn track_error(e: TrackError) -> PyErr {
    match e {
        TrackError::InvalidLoop(_) | TrackError::Annular(_) => value_error(e),
        _ => PyArithmeticError::new_err(e.to_string()),
    }
}

fn to_python<'py>(py: Python<'py>, v: &serde_json::Value) -> PyResult<Bound<'py, PyAny>> {
    py.import("json")?.call_method1("loads", (v.to_string(),))
}

fn support(exponents: Vec<usize>) -> PyResult<FewnomialSupport> {
    FewnomialSupport::new(exponents).map_err(value_error)
}

/// A word in the Artin generators `σ_i`, written as signed integers.
#[pyclass(name = "ArtinWord", frozen)]
struct PyArtinWord(fewbraid::ArtinWord);

#[pymethods]
impl PyArtinWord {
    #[new]
    fn new(n: usize, letters: Vec<i32>) -> PyResult<Self> {
        fewbraid::ArtinWord::new(n, letters).map(Self).map_err(value_error)
    }

    #[getter]
    fn strands(&self) -> usize {
        self.0.strands()
    }

    #[getter]
    fn letters(&self) -> Vec<i32> {
        self.0.letters().to_vec()
    }

    fn compose(&self, other: &Self) -> PyResult<Self> {
        self.0.compose(&other.0).map(Self).map_err(value_error)
    }

    fn invert(&self) -> Self {
        Self(self.0.invert())
    }

    /// `(Δ-power, factors)`, each factor a permutation as a list of images.
    fn normal_form(&self) -> (i64, Vec<Vec<usize>>) {
        let nf = self.0.normal_form();
        (nf.inf, nf.factors.iter().map(|p| p.images()).collect())
    }

    fn equal(&self, other: &Self) -> PyResult<bool> {
        self.0.equal(&other.0).map_err(value_error)
    }

    fn permutation(&self) -> Vec<usize> {
        self.0.permutation()
    }

    fn __eq__(&self, other: &Self) -> PyResult<bool> {
        self.equal(other)
    }

    fn __str__(&self) -> String {
        self.0.to_string()
    }

    fn __repr__(&self) -> String {
        format!("ArtinWord({}, {:?})", self.0.strands(), self.0.letters())
    }
}

/// A word in `τ`, `b_j`, `r_j` on `d` strands around a puncture.
#[pyclass(name = "AnnularWord", frozen)]
struct PyAnnularWord(fewbraid::AnnularWord);

#[pymethods]
impl PyAnnularWord {
    /// Parses letters such as `"t b1 B3 r2 T"`; capitals are inverses.
    #[new]
    #[pyo3(signature = (d, text = ""))]
    fn new(d: usize, text: &str) -> PyResult<Self> {
        fewbraid::AnnularWord::parse(d, text).map(Self).map_err(value_error)
    }

    #[staticmethod]
    fn b(j: usize, d: usize) -> PyResult<Self> {
        fewbraid::AnnularWord::gen_b(j, d).map(Self).map_err(value_error)
    }

    #[staticmethod]
    fn r(j: usize, d: usize) -> PyResult<Self> {
        fewbraid::AnnularWord::gen_r(j, d).map(Self).map_err(value_error)
    }

    #[staticmethod]
    fn tau(d: usize) -> PyResult<Self> {
        fewbraid::AnnularWord::gen_tau(d).map(Self).map_err(value_error)
    }

    #[getter]
    fn d(&self) -> usize {
        self.0.d()
    }

    fn compose(&self, other: &Self) -> PyResult<Self> {
        self.0.compose(&other.0).map(Self).map_err(value_error)
    }

    fn invert(&self) -> Self {
        Self(self.0.invert())
    }

    fn equal(&self, other: &Self) -> PyResult<bool> {
        self.0.equal_annular(&other.0).map_err(value_error)
    }

    /// Image in the braid group on `d + 1` strands.
    fn embed(&self) -> PyArtinWord {
        PyArtinWord(self.0.embed())
    }

    fn project_to_disk(&self) -> PyArtinWord {
        PyArtinWord(self.0.project_to_disk())
    }

    fn pullback(&self, b: usize) -> PyResult<Self> {
        self.0.pullback(b).map(Self).map_err(value_error)
    }

    fn is_pure(&self) -> bool {
        self.0.is_pure()
    }

    #[pyo3(signature = (a = None))]
    fn winding(&self, a: Option<f64>) -> PyResult<Vec<i64>> {
        Ok(self.0.winding(a.unwrap_or_else(|| default_cut(self.0.d()))).map_err(value_error)?.entries)
    }

    /// `(base letters, decorations)` of the pullback along `x ↦ x^b`.
    fn wreath_image(&self, b: usize) -> PyResult<(Vec<i32>, Vec<usize>)> {
        let up = self.0.pullback(b).map_err(value_error)?;
        let w = wreath_image(&up, &self.0, b).map_err(value_error)?;
        Ok((w.base.letters().to_vec(), w.dec))
    }

    fn __eq__(&self, other: &Self) -> PyResult<bool> {
        self.equal(other)
    }

    fn __mul__(&self, other: &Self) -> PyResult<Self> {
        self.compose(other)
    }

    fn __str__(&self) -> String {
        self.0.to_string()
    }

    fn __repr__(&self) -> String {
        format!("AnnularWord({}, {:?})", self.0.d(), self.0.to_string())
    }
}

fn side(name: &str) -> PyResult<RealizeSide> {
    match name {
        "first" => Ok(RealizeSide::First),
        "second" => Ok(RealizeSide::Second),
        _ => Err(value_error(format!("side must be 'first' or 'second', got {name:?}"))),
    }
}

fn params(profile: &str) -> PyResult<TrackParams> {
    TrackParams::profile(profile).ok_or_else(|| value_error(format!("unknown tolerance profile {profile:?}")))
}

/// Braid read off a trinomial loop (`gamma`, `ell`, `tau`) realised at `t`,
/// or the monomial loop `x^d - e^{iθ}` on any support.
#[pyfunction]
#[pyo3(signature = (exponents, kind = "gamma", j = 1, eps = None, t = std::f64::consts::E, side_name = "first", cut = None, profile = "default"))]
#[allow(clippy::too_many_arguments)]
fn loop_monodromy(
    exponents: Vec<usize>,
    kind: &str,
    j: usize,
    eps: Option<f64>,
    t: f64,
    side_name: &str,
    cut: Option<f64>,
    profile: &str,
) -> PyResult<PyAnnularWord> {
    let sup = support(exponents)?;
    let d = sup.d();
    let lp = if kind == "monomial" {
        monomial_loop(d).and_then(|l| l.embed(&sup)).map_err(track_error)?
    } else {
        let (red, g) = sup.reduce();
        let &[0, p, dr] = red.exponents() else {
            return Err(value_error(format!("loop {kind:?} needs a trinomial support")));
        };
        let tri = TrinomialSupport::new(p, dr).map_err(value_error)?;
        let eps = eps.unwrap_or_else(|| default_epsilon(dr));
        let raw = match kind {
            "gamma" => gamma_loop(&tri, eps),
            "ell" => ell_j_loop(&tri, eps, j),
            "tau" => tau_loop(&tri, eps),
            _ => return Err(value_error(format!("unknown loop {kind:?}"))),
        }
        .map_err(value_error)?;
        realize(&raw, &tri, t, side(side_name)?).map_err(value_error)?.pullback(g)
    };
    let a = cut.unwrap_or_else(|| default_cut(d));
    monodromy::monodromy(&sup, &lp, a, &params(profile)?).map(PyAnnularWord).map_err(track_error)
}

/// The `d` roots of `Σ c_i x^{a_i}`.
#[pyfunction]
#[pyo3(signature = (coefficients, exponents, tol = 1e-14))]
fn roots(coefficients: Vec<Complex64>, exponents: Vec<usize>, tol: f64) -> PyResult<Vec<Complex64>> {
    monodromy::roots(&coefficients, &support(exponents)?, tol).map_err(track_error)
}

#[pyfunction]
fn is_nonsingular(coefficients: Vec<Complex64>, exponents: Vec<usize>) -> PyResult<bool> {
    Ok(monodromy::is_nonsingular(&coefficients, &support(exponents)?))
}

/// Number of components of the tropical solution set of `1 + c1 x^p + c2 x^d`.
#[pyfunction]
fn tropical_components(p: usize, d: usize, c1: Complex64, c2: Complex64) -> PyResult<usize> {
    let tri = TrinomialSupport::new(p, d).map_err(value_error)?;
    let c = CoefficientPair::new(c1, c2).map_err(value_error)?;
    Ok(tropical::tropical_solutions(&c, &tri).count())
}

#[pyfunction]
fn is_tropical_condition(p: usize, d: usize, c1: Complex64, c2: Complex64) -> PyResult<bool> {
    let tri = TrinomialSupport::new(p, d).map_err(value_error)?;
    let c = CoefficientPair::new(c1, c2).map_err(value_error)?;
    Ok(tropical::is_tropical_condition(&c, &tri))
}

#[pyfunction]
fn bullet_support(d: usize, j: Vec<usize>, jp: Vec<usize>) -> PyResult<Vec<usize>> {
    let j = Support::new(d, j).map_err(value_error)?;
    let jp = Support::new(d, jp).map_err(value_error)?;
    Ok(bullet(&j, &jp).map_err(value_error)?.indices().to_vec())
}

/// The Euclid word for `(k, l, d)` as a dictionary, with `verified` and
/// `value` (the evaluated braid) added.
#[pyfunction]
fn euclid_word<'py>(py: Python<'py>, k: usize, l: usize, d: usize) -> PyResult<Bound<'py, PyAny>> {
    let gw = euclid(k, l, d).map_err(value_error)?;
    let mut v = gw.to_json().map_err(value_error)?;
    v["verified"] = gw.verify().map_err(value_error)?.ok.into();
    v["value"] = gw.evaluate().map_err(value_error)?.to_string().into();
    to_python(py, &v)
}

/// Witness loops for `b_1, …, b_d` and `τ`: a list of dictionaries with
/// `target`, `monodromy`, `verified`, `fixes_extremes` and `segments`.
#[pyfunction]
#[pyo3(signature = (exponents, profile = "default"))]
fn surjectivity_witnesses<'py>(py: Python<'py>, exponents: Vec<usize>, profile: &str) -> PyResult<Bound<'py, PyAny>> {
    let sup = support(exponents)?;
    let w = surjectivity_witness(&sup, default_cut(sup.d()), &params(profile)?).map_err(|e| match e {
        fewbraid::error::WitnessError::Track(t) => track_error(t),
        e => value_error(e),
    })?;
    let v: Vec<serde_json::Value> = w
        .iter()
        .map(|x| {
            serde_json::json!({
                "target": x.target,
                "monodromy": x.monodromy.to_string(),
                "verified": x.verified,
                "fixes_extremes": x.fixes_extremes,
                "segments": x.segments,
            })
        })
        .collect();
    to_python(py, &serde_json::Value::from(v))
}

#[pymodule]
#[pyo3(name = "fewbraid")]
fn fewbraid_module(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyArtinWord>()?;
    m.add_class::<PyAnnularWord>()?;
    m.add_function(wrap_pyfunction!(loop_monodromy, m)?)?;
    m.add_function(wrap_pyfunction!(roots, m)?)?;
    m.add_function(wrap_pyfunction!(is_nonsingular, m)?)?;
    m.add_function(wrap_pyfunction!(tropical_components, m)?)?;
    m.add_function(wrap_pyfunction!(is_tropical_condition, m)?)?;
    m.add_function(wrap_pyfunction!(bullet_support, m)?)?;
    m.add_function(wrap_pyfunction!(euclid_word, m)?)?;
    m.add_function(wrap_pyfunction!(surjectivity_witnesses, m)?)?;
    m.add("__version__", env!("CARGO_PKG_VERSION"))?;
    Ok(())
}
