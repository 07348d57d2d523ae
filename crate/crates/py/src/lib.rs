//! Python module `pyturyn`.

use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;

use turyn::constructions::{base_to_t, tt_to_base, verify_base, verify_t};
use turyn::enumerate::{decompositions as decomps, enumerate_canonical, EnumerateConfig};
use turyn::search::{count_seeds as seed_count, search as run_search, SearchConfig};
use turyn::{GroupElement, HexForm, Sequence};

fn err(e: turyn::Error) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn form(name: &str) -> PyResult<HexForm> {
    match name {
        "full" => Ok(HexForm::Full),
        "compact" => Ok(HexForm::Compact),
        other => Err(PyValueError::new_err(format!(
            "form must be 'full' or 'compact', not {other:?}"
        ))),
    }
}

fn signs(x: &impl Sequence) -> Vec<i8> {
    x.entries().to_vec()
}

#[pyclass(
    name = "TurynQuad",
    module = "pyturyn",
    frozen,
    eq,
    hash,
    skip_from_py_object
)]
#[derive(Clone, PartialEq, Eq, Hash)]
struct PyTurynQuad(turyn::TurynQuad);

#[pymethods]
impl PyTurynQuad {
    /// Four +/- strings of lengths n, n, n, n-1.
    #[new]
    fn new(a: &str, b: &str, c: &str, d: &str) -> PyResult<Self> {
        turyn::TurynQuad::parse(a, b, c, d).map(Self).map_err(err)
    }

    #[staticmethod]
    fn from_code(code: &str, n: usize) -> PyResult<Self> {
        turyn::decode(code, n).map(Self).map_err(err)
    }

    #[getter]
    fn n(&self) -> usize {
        self.0.n()
    }

    /// The four sequences as lists of +1/-1.
    fn sequences(&self) -> (Vec<i8>, Vec<i8>, Vec<i8>, Vec<i8>) {
        let [a, b, c, d] = self.0.parts();
        (signs(a), signs(b), signs(c), signs(d))
    }

    fn verify(&self) -> bool {
        self.0.verify_tt()
    }

    fn is_canonical(&self) -> bool {
        self.0.is_canonical()
    }

    fn row_sums(&self) -> (i64, i64, i64, i64) {
        let [a, b, c, d] = self.0.row_sums();
        (a, b, c, d)
    }

    /// Combined autocorrelation `N_A + N_B + 2N_C + 2N_D` for lags `0..n`.
    fn combined_naf(&self) -> Vec<i64> {
        self.0.combined_naf()
    }

    fn canonical(&self) -> PyResult<Self> {
        turyn::canonicalize(&self.0).map(Self).map_err(err)
    }

    #[pyo3(signature = (form = "compact"))]
    fn encode(&self, form: &str) -> PyResult<String> {
        turyn::encode(&self.0, self::form(form)?)
            .map(|c| c.to_string())
            .map_err(err)
    }

    /// Image under the group element with the given 10-bit normal form.
    fn apply(&self, element: u16) -> PyResult<Self> {
        if element >= 1024 {
            return Err(PyValueError::new_err("group elements are 0..1024"));
        }
        turyn::g_apply(GroupElement::from_bits(element), &self.0)
            .map(Self)
            .map_err(err)
    }

    fn __str__(&self) -> String {
        self.0.to_string()
    }

    fn __repr__(&self) -> String {
        format!("{:?}", self.0)
    }
}

#[pyfunction]
fn decode(code: &str, n: usize) -> PyResult<PyTurynQuad> {
    PyTurynQuad::from_code(code, n)
}

#[pyfunction]
fn equivalent(a: &PyTurynQuad, b: &PyTurynQuad) -> PyResult<bool> {
    turyn::equivalent(&a.0, &b.0).map_err(err)
}

#[pyfunction]
fn group_mul(g: u16, h: u16) -> PyResult<u16> {
    if g >= 1024 || h >= 1024 {
        return Err(PyValueError::new_err("group elements are 0..1024"));
    }
    Ok(turyn::g_mul(GroupElement::from_bits(g), GroupElement::from_bits(h)).bits())
}

/// Canonical compact codes of every class of length `n`, sorted.
#[pyfunction]
#[pyo3(signature = (n, jobs = 0))]
fn enumerate(py: Python<'_>, n: usize, jobs: usize) -> PyResult<Vec<String>> {
    let cfg = EnumerateConfig {
        jobs,
        ..EnumerateConfig::default()
    };
    py.detach(|| enumerate_canonical(n, &cfg))
        .map(|l| l.codes)
        .map_err(err)
}

#[pyfunction]
fn decompositions(n: usize) -> PyResult<Vec<(u32, u32, u32, u32)>> {
    decomps(n)
        .map(|v| v.into_iter().map(|d| (d.a, d.b, d.c, d.d)).collect())
        .map_err(err)
}

fn search_config(
    n: usize,
    squares: Option<(i64, i64, i64, i64)>,
    head_len: Option<usize>,
    d_head_len: Option<usize>,
) -> SearchConfig {
    let mut cfg = SearchConfig::new(n);
    cfg.squares = squares.map(|(a, b, c, d)| [a, b, c, d]);
    if let Some(h) = head_len {
        cfg.head_len = h;
        cfg.d_head_len = h.saturating_sub(1);
    }
    if let Some(h) = d_head_len {
        cfg.d_head_len = h;
    }
    cfg
}

#[pyfunction]
#[pyo3(signature = (n, head_len = None, d_head_len = None, jobs = 0))]
fn count_seeds(
    py: Python<'_>,
    n: usize,
    head_len: Option<usize>,
    d_head_len: Option<usize>,
    jobs: usize,
) -> PyResult<u64> {
    let mut cfg = search_config(n, None, head_len, d_head_len);
    cfg.jobs = jobs;
    py.detach(|| seed_count(&cfg)).map_err(err)
}

/// Canonical codes found by the boundary-seeded search.
#[pyfunction]
#[pyo3(signature = (n, squares = None, stop_after = None, head_len = None, d_head_len = None, jobs = 0))]
fn search(
    py: Python<'_>,
    n: usize,
    squares: Option<(i64, i64, i64, i64)>,
    stop_after: Option<usize>,
    head_len: Option<usize>,
    d_head_len: Option<usize>,
    jobs: usize,
) -> PyResult<Vec<String>> {
    let mut cfg = search_config(n, squares, head_len, d_head_len);
    cfg.stop_after = stop_after;
    cfg.jobs = jobs;
    let found = py.detach(|| run_search(&cfg)).map_err(err)?;
    found
        .iter()
        .map(|q| {
            turyn::encode(q, HexForm::Compact)
                .map(|c| c.to_string())
                .map_err(err)
        })
        .collect()
}

/// Base sequences `(P, Q, R, S)` and whether they verify.
#[pyfunction]
fn base_sequences(q: &PyTurynQuad) -> PyResult<(Vec<Vec<i8>>, bool)> {
    let bs = tt_to_base(&q.0).map_err(err)?;
    let parts = bs.parts().iter().map(|x| signs(*x)).collect();
    Ok((parts, verify_base(&bs)))
}

/// T-sequences `(T1, T2, T3, T4)` and whether they verify.
#[pyfunction]
fn t_sequences(q: &PyTurynQuad) -> PyResult<(Vec<Vec<i8>>, bool)> {
    let ts = base_to_t(&tt_to_base(&q.0).map_err(err)?).map_err(err)?;
    let parts = ts.parts().iter().map(|x| signs(*x)).collect();
    Ok((parts, verify_t(&ts)))
}

#[pymodule]
fn pyturyn(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyTurynQuad>()?;
    m.add_function(wrap_pyfunction!(decode, m)?)?;
    m.add_function(wrap_pyfunction!(equivalent, m)?)?;
    m.add_function(wrap_pyfunction!(group_mul, m)?)?;
    m.add_function(wrap_pyfunction!(enumerate, m)?)?;
    m.add_function(wrap_pyfunction!(decompositions, m)?)?;
    m.add_function(wrap_pyfunction!(count_seeds, m)?)?;
    m.add_function(wrap_pyfunction!(search, m)?)?;
    m.add_function(wrap_pyfunction!(base_sequences, m)?)?;
    m.add_function(wrap_pyfunction!(t_sequences, m)?)?;
    Ok(())
}
