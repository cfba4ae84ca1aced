//! Python bindings: graphs, canonical codes, compressibility, containment,
//! the exact oracle, constructions and the embedding pipeline.

use oriented_turan_core::canon;
use oriented_turan_core::containment;
use oriented_turan_core::digraph::encode_large;
use oriented_turan_core::digraph::{decode, decode_large, encode};
use oriented_turan_core::extremal::{self, Budget, Construction};
use oriented_turan_core::homomorphism::{self, CompressibilityResult};
use oriented_turan_core::regularize::{dense_bipartite_host, faks_pipeline, PipelineConfig};
use oriented_turan_core::{BipartiteDigraph, Error, LargeOrientedGraph, PatternSpec};
use pyo3::exceptions::{PyOverflowError, PyTimeoutError, PyValueError};
use pyo3::prelude::*;
use pyo3::types::PyModule;

fn py_err(e: Error) -> PyErr {
    match e {
        Error::TooLarge { .. } => PyOverflowError::new_err(e.to_string()),
        Error::BudgetExceeded { .. } => PyTimeoutError::new_err(e.to_string()),
        _ => PyValueError::new_err(e.to_string()),
    }
}

/// An oriented graph on at most 64 vertices.
#[pyclass(
    name = "OrientedGraph",
    module = "oriented_turan",
    frozen,
    eq,
    hash,
    skip_from_py_object
)]
#[derive(Clone, PartialEq, Eq, Hash)]
struct PyOrientedGraph {
    inner: oriented_turan_core::OrientedGraph,
}

fn wrap(g: oriented_turan_core::OrientedGraph) -> PyOrientedGraph {
    PyOrientedGraph { inner: g }
}

#[pymethods]
impl PyOrientedGraph {
    #[new]
    #[pyo3(signature = (n, arcs = Vec::new()))]
    fn new(n: usize, arcs: Vec<(usize, usize)>) -> PyResult<Self> {
        oriented_turan_core::OrientedGraph::from_arcs(n, arcs)
            .map(wrap)
            .map_err(py_err)
    }

    /// Parses the `.og` text format.
    #[staticmethod]
    fn from_og(text: &str) -> PyResult<Self> {
        decode(text).map(wrap).map_err(py_err)
    }

    fn to_og(&self) -> String {
        encode(&self.inner)
    }

    #[staticmethod]
    fn directed_path(k: usize) -> Self {
        wrap(oriented_turan_core::OrientedGraph::directed_path(k))
    }

    #[staticmethod]
    fn directed_cycle(k: usize) -> Self {
        wrap(oriented_turan_core::OrientedGraph::directed_cycle(k))
    }

    #[staticmethod]
    fn transitive_tournament(k: usize) -> Self {
        wrap(oriented_turan_core::OrientedGraph::transitive_tournament(k))
    }

    #[staticmethod]
    fn star(p: usize, q: usize) -> Self {
        wrap(oriented_turan_core::OrientedGraph::star(p, q))
    }

    #[staticmethod]
    fn matching(k: usize) -> Self {
        wrap(oriented_turan_core::OrientedGraph::matching(k))
    }

    #[staticmethod]
    fn antidirected_path(k: usize) -> Self {
        wrap(oriented_turan_core::OrientedGraph::antidirected_path(k))
    }

    /// The graph a named pattern such as `"dpath4"` or `"star:1,2"` stands for.
    #[staticmethod]
    fn pattern(name: &str) -> PyResult<Self> {
        let spec: PatternSpec = name.parse().map_err(py_err)?;
        spec.expand().map(wrap).map_err(py_err)
    }

    #[getter]
    fn n(&self) -> usize {
        self.inner.n()
    }

    fn arc_count(&self) -> usize {
        self.inner.arc_count()
    }

    fn arcs(&self) -> Vec<(usize, usize)> {
        self.inner.arcs()
    }

    fn has_arc(&self, u: usize, v: usize) -> bool {
        self.inner.has_arc(u, v)
    }

    fn out_degree(&self, v: usize) -> usize {
        self.inner.out_degree(v)
    }

    fn in_degree(&self, v: usize) -> usize {
        self.inner.in_degree(v)
    }

    fn is_tournament(&self) -> bool {
        self.inner.is_tournament()
    }

    /// Canonical code as `"n:digits"`.
    fn canonical_code(&self) -> PyResult<String> {
        canon::canonical_code(&self.inner)
            .map(|c| c.to_string())
            .map_err(py_err)
    }

    fn is_isomorphic(&self, other: PyRef<'_, PyOrientedGraph>) -> PyResult<bool> {
        canon::is_isomorphic(&self.inner, &other.inner).map_err(py_err)
    }

    fn __len__(&self) -> usize {
        self.inner.n()
    }

    fn __repr__(&self) -> String {
        format!("OrientedGraph(n={}, arcs={:?})", self.inner.n(), self.inner.arcs())
    }
}

/// Exact answer of the oracle.
#[pyclass(name = "ExtremalRecord", module = "oriented_turan", frozen, get_all)]
struct PyExtremalRecord {
    n: usize,
    pattern: String,
    value: usize,
    witness: Py<PyOrientedGraph>,
    witness_code: String,
    formula_value: Option<usize>,
    matches_formula: Option<bool>,
}

#[pymethods]
impl PyExtremalRecord {
    fn __repr__(&self) -> String {
        format!(
            "ExtremalRecord(n={}, pattern={:?}, value={}, witness_code={:?})",
            self.n, self.pattern, self.value, self.witness_code
        )
    }
}

fn pattern_spec(pattern: &Bound<'_, PyAny>) -> PyResult<PatternSpec> {
    if let Ok(name) = pattern.extract::<String>() {
        return name.parse().map_err(py_err);
    }
    let g = pattern.cast::<PyOrientedGraph>()?;
    Ok(PatternSpec::Custom {
        graph: g.get().inner.clone(),
    })
}

/// `z(F)`: `(k, witness)` where `witness` is a `(k-1)`-vertex tournament `F`
/// does not map into (`None` for `k = 2`), or `(None, None)` when `F` has a
/// directed cycle.
#[pyfunction]
fn compressibility(f: PyRef<'_, PyOrientedGraph>) -> PyResult<(Option<usize>, Option<PyOrientedGraph>)> {
    match homomorphism::compressibility(&f.inner).map_err(py_err)? {
        CompressibilityResult::Finite { k, witness } => Ok((Some(k), (k > 2).then(|| wrap(witness)))),
        CompressibilityResult::Infinite => Ok((None, None)),
    }
}

/// A homomorphism from `f` into `d` as a list of images, if one exists.
#[pyfunction]
fn hom_exists(f: PyRef<'_, PyOrientedGraph>, d: PyRef<'_, PyOrientedGraph>) -> Option<Vec<usize>> {
    homomorphism::hom_exists(&f.inner, &d.inner).map(|m| m.assignment.into_iter().flatten().collect())
}

/// A copy of `pattern` in `host` as a list of images, if one exists.
#[pyfunction]
fn contains_copy(host: PyRef<'_, PyOrientedGraph>, pattern: PyRef<'_, PyOrientedGraph>) -> Option<Vec<usize>> {
    containment::contains_copy(&host.inner, &pattern.inner).map(|m| m.assignment.into_iter().flatten().collect())
}

#[pyfunction]
fn is_free(host: PyRef<'_, PyOrientedGraph>, pattern: PyRef<'_, PyOrientedGraph>) -> bool {
    containment::is_free(&host.inner, &pattern.inner)
}

/// Whether every `k`-vertex tournament contains `pattern`, with a
/// counterexample when not.
#[pyfunction]
fn all_tournaments_contain(k: usize, pattern: PyRef<'_, PyOrientedGraph>) -> PyResult<(bool, Option<PyOrientedGraph>)> {
    let check = containment::all_tournaments_contain(k, &pattern.inner).map_err(py_err)?;
    Ok((check.holds, check.counterexample.map(wrap)))
}

#[pyfunction]
fn enumerate_tournaments(k: usize) -> PyResult<Vec<PyOrientedGraph>> {
    canon::enumerate_tournaments(k)
        .map(|v| v.into_iter().map(wrap).collect())
        .map_err(py_err)
}

#[pyfunction]
fn enumerate_oriented_graphs(n: usize) -> PyResult<Vec<PyOrientedGraph>> {
    canon::enumerate_oriented_graphs(n, None)
        .map(|v| v.into_iter().map(wrap).collect())
        .map_err(py_err)
}

/// `exo(n, F)` with a witness. `pattern` is a name such as `"dpath4"` or an
/// `OrientedGraph`.
#[pyfunction]
#[pyo3(signature = (n, pattern, max_nodes = None))]
fn exo(py: Python<'_>, n: usize, pattern: &Bound<'_, PyAny>, max_nodes: Option<u64>) -> PyResult<PyExtremalRecord> {
    let spec = pattern_spec(pattern)?;
    let budget = Budget {
        max_nodes,
        max_time: None,
    };
    let r = py.detach(|| extremal::oracle_exo(n, &spec, &budget)).map_err(py_err)?;
    Ok(PyExtremalRecord {
        n: r.n,
        pattern: r.pattern.name(),
        value: r.value,
        witness: Py::new(py, wrap(r.witness))?,
        witness_code: r.witness_code.to_string(),
        formula_value: r.formula_value,
        matches_formula: r.matches_formula,
    })
}

/// Closed-form value at `n` and a note on where it is claimed exact.
#[pyfunction]
fn formula_value(pattern: &str, n: usize) -> PyResult<(usize, String)> {
    let spec: PatternSpec = pattern.parse().map_err(py_err)?;
    let fv = extremal::formula_value(&spec, n).map_err(py_err)?;
    Ok((fv.value, fv.validity.note()))
}

/// Builds `turan`, `cyclepower`, `star`, `thm32`, `prop26` or `prop27` on `n` vertices.
#[pyfunction]
#[pyo3(signature = (name, n, r = None, p = None, q = None))]
fn build_construction(
    name: &str,
    n: usize,
    r: Option<usize>,
    p: Option<usize>,
    q: Option<usize>,
) -> PyResult<PyOrientedGraph> {
    let need = |v: Option<usize>, what: &str| v.ok_or_else(|| PyValueError::new_err(format!("{name} needs {what}")));
    let c = match name {
        "turan" => Construction::Turan {
            r: need(r, "r")?,
            base: None,
        },
        "cyclepower" => Construction::CyclePower { q: need(q, "q")? },
        "star" => Construction::Star {
            p: need(p, "p")?,
            q: need(q, "q")?,
        },
        "thm32" => Construction::Thm32,
        "prop26" => Construction::Prop26,
        "prop27" => Construction::Prop27,
        other => return Err(PyValueError::new_err(format!("unknown construction {other:?}"))),
    };
    extremal::build_construction(&c, n).map(wrap).map_err(py_err)
}

/// Runs the embedding pipeline on a host given as `.og` text (any size) and
/// returns the report as a dict; `report["embedding"]` lists
/// `(pattern vertex, host vertex)` pairs or is `None`.
#[pyfunction]
#[pyo3(signature = (host_og, pattern, r, seed, t = None))]
fn embed<'py>(
    py: Python<'py>,
    host_og: &str,
    pattern: PyRef<'_, PyOrientedGraph>,
    r: usize,
    seed: u64,
    t: Option<usize>,
) -> PyResult<Bound<'py, PyAny>> {
    let host: LargeOrientedGraph = decode_large(host_og).map_err(py_err)?;
    let pattern = BipartiteDigraph::from_antidirected(&pattern.inner).map_err(py_err)?;
    let mut cfg = PipelineConfig::new(r, seed);
    cfg.t_override = t;
    let report = py.detach(|| faks_pipeline(&host, &pattern, &cfg)).map_err(py_err)?;
    let text = serde_json::to_string(&report).map_err(|e| PyValueError::new_err(e.to_string()))?;
    PyModule::import(py, "json")?.call_method1("loads", (text,))
}

/// `.og` text of a random antidirected host with two sides of `side`
/// vertices and cross-pair density `density`.
#[pyfunction]
fn random_host(side: usize, density: f64, seed: u64) -> PyResult<String> {
    dense_bipartite_host(side, density, seed)
        .map(|g| encode_large(&g))
        .map_err(py_err)
}

#[pymodule]
fn oriented_turan(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyOrientedGraph>()?;
    m.add_class::<PyExtremalRecord>()?;
    m.add_function(wrap_pyfunction!(compressibility, m)?)?;
    m.add_function(wrap_pyfunction!(hom_exists, m)?)?;
    m.add_function(wrap_pyfunction!(contains_copy, m)?)?;
    m.add_function(wrap_pyfunction!(is_free, m)?)?;
    m.add_function(wrap_pyfunction!(all_tournaments_contain, m)?)?;
    m.add_function(wrap_pyfunction!(enumerate_tournaments, m)?)?;
    m.add_function(wrap_pyfunction!(enumerate_oriented_graphs, m)?)?;
    m.add_function(wrap_pyfunction!(exo, m)?)?;
    m.add_function(wrap_pyfunction!(formula_value, m)?)?;
    m.add_function(wrap_pyfunction!(build_construction, m)?)?;
    m.add_function(wrap_pyfunction!(embed, m)?)?;
    m.add_function(wrap_pyfunction!(random_host, m)?)?;
    Ok(())
}
