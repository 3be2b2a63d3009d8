//! Python bindings: graphs, constructions, bounds and the exact search.

use pyo3::exceptions::{PyIOError, PyValueError};
use pyo3::prelude::*;
use pyo3::types::{PyDict, PyList};

use distk_core::constructions::{self, ConstructionSpec};
use distk_core::harness::{self, Claim, VerifyOptions};
use distk_core::search::{self, ClassFilter, SearchOutcome, SearchProblem, SolveOptions, Source};
use distk_core::{canon, clique, distance, graph6, SearchError};

fn value_err(e: impl std::fmt::Display) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn search_err(e: SearchError) -> PyErr {
    match e {
        SearchError::Io(io) => PyIOError::new_err(io.to_string()),
        other => value_err(other),
    }
}

/// Simple undirected graph on at most 64 vertices.
#[pyclass(name = "Graph", module = "distk", eq, frozen, skip_from_py_object)]
#[derive(Clone, PartialEq)]
struct PyGraph(distk_core::Graph);

#[pymethods]
impl PyGraph {
    #[new]
    #[pyo3(signature = (n, edges = Vec::new()))]
    fn new(n: usize, edges: Vec<(usize, usize)>) -> PyResult<Self> {
        distk_core::Graph::from_edges(n, &edges).map(PyGraph).map_err(value_err)
    }

    #[staticmethod]
    fn from_graph6(line: &str) -> PyResult<Self> {
        graph6::parse(line).map(PyGraph).map_err(value_err)
    }

    fn graph6(&self) -> String {
        graph6::emit(&self.0)
    }

    #[getter]
    fn n(&self) -> usize {
        self.0.n()
    }

    fn edge_count(&self) -> usize {
        self.0.edge_count()
    }

    fn edges(&self) -> Vec<(usize, usize)> {
        self.0.edges().collect()
    }

    fn has_edge(&self, u: usize, v: usize) -> PyResult<bool> {
        if u >= self.0.n() || v >= self.0.n() {
            return Err(value_err(format!("vertex out of range for n = {}", self.0.n())));
        }
        Ok(self.0.has_edge(u, v))
    }

    fn degree(&self, v: usize) -> PyResult<usize> {
        if v >= self.0.n() {
            return Err(value_err(format!("vertex {v} out of range for n = {}", self.0.n())));
        }
        Ok(self.0.degree(v))
    }

    /// Graph joining the pairs at distance exactly `k`.
    fn distance_k(&self, k: usize) -> PyResult<PyGraph> {
        distance::distance_k_graph(&self.0, k).map(PyGraph).map_err(value_err)
    }

    /// Shortest-path lengths; `None` for unreachable pairs.
    fn distances(&self) -> Vec<Vec<Option<usize>>> {
        let d = distance::all_pairs_distances(&self.0);
        let n = self.0.n();
        (0..n).map(|u| (0..n).map(|v| d.get(u, v)).collect()).collect()
    }

    fn complement(&self) -> PyGraph {
        PyGraph(self.0.complement())
    }

    fn clique_number(&self) -> usize {
        clique::clique_number(&self.0)
    }

    fn is_triangle_free(&self) -> bool {
        self.0.is_triangle_free()
    }

    fn is_bipartite(&self) -> bool {
        self.0.is_bipartite()
    }

    fn is_connected(&self) -> bool {
        self.0.is_connected()
    }

    /// graph6 line of the canonical relabelling.
    fn canonical_form(&self) -> String {
        canon::canonical_form(&self.0).graph6().to_owned()
    }

    fn is_isomorphic(&self, other: &PyGraph) -> bool {
        canon::is_isomorphic(&self.0, &other.0)
    }

    fn __repr__(&self) -> String {
        format!("Graph.from_graph6({:?})", graph6::emit(&self.0))
    }

    fn __hash__(&self) -> u64 {
        use std::hash::{Hash, Hasher};
        let mut h = std::collections::hash_map::DefaultHasher::new();
        self.0.hash(&mut h);
        h.finish()
    }
}

/// Builds a construction from its JSON description, e.g.
/// `{"variant": "DoubleBroom", "n": 9, "k": 3, "a": 3, "b": 4}`.
#[pyfunction]
fn construct(spec_json: &str) -> PyResult<PyGraph> {
    let spec: ConstructionSpec = serde_json::from_str(spec_json).map_err(value_err)?;
    spec.build().map(PyGraph).map_err(value_err)
}

#[pyfunction]
#[pyo3(signature = (n, k, a = None, b = None))]
fn double_broom(n: usize, k: usize, a: Option<usize>, b: Option<usize>) -> PyResult<PyGraph> {
    let spec = match (a, b) {
        (Some(a), Some(b)) => ConstructionSpec::DoubleBroom { n, k, a, b },
        (None, None) => ConstructionSpec::balanced_double_broom(n, k).map_err(value_err)?,
        _ => return Err(value_err("give both a and b or neither")),
    };
    spec.build().map(PyGraph).map_err(value_err)
}

#[pyfunction]
#[pyo3(signature = (n, legs, attachment_counts = None))]
fn spider(n: usize, legs: usize, attachment_counts: Option<Vec<usize>>) -> PyResult<PyGraph> {
    let spec = match attachment_counts {
        Some(c) => ConstructionSpec::Spider { n, legs, attachment_counts: c },
        None => ConstructionSpec::spider_round_robin(n, legs).map_err(value_err)?,
    };
    spec.build().map(PyGraph).map_err(value_err)
}

#[pyfunction]
fn turan(n: usize, r: usize) -> PyResult<PyGraph> {
    ConstructionSpec::Turan { n, r }.build().map(PyGraph).map_err(value_err)
}

#[pyfunction]
fn t_broom(k: usize, t: usize, leaf_counts: Vec<usize>) -> PyResult<PyGraph> {
    ConstructionSpec::TBroom { k, t, leaf_counts }.build().map(PyGraph).map_err(value_err)
}

/// One representative per isomorphism class of the distance-2 extremal
/// family.
#[pyfunction]
fn g2_extremal_family(n: usize) -> PyResult<Vec<PyGraph>> {
    Ok(constructions::enumerate_g2_extremal_family(n).map_err(value_err)?.into_iter().map(PyGraph).collect())
}

#[pyfunction]
fn ex2_bound(n: u64) -> PyResult<u64> {
    constructions::ex2_bound(n).map_err(value_err)
}

/// `(value, proven)`.
#[pyfunction]
fn ex3_bound(n: u64) -> PyResult<(u64, bool)> {
    let b = constructions::ex3_bound(n).map_err(value_err)?;
    Ok((b.value, b.proven))
}

/// Exact value as a `fractions.Fraction`.
#[pyfunction]
fn tu_bound(py: Python<'_>, n: u64, k: u64) -> PyResult<Py<PyAny>> {
    let r = constructions::tu_bound(n, k).map_err(value_err)?;
    let fraction = py.import("fractions")?.getattr("Fraction")?;
    Ok(fraction.call1((*r.numer(), *r.denom()))?.unbind())
}

#[pyfunction]
fn kp_nonbipartite_bound(n: u64) -> PyResult<u64> {
    constructions::kp_nonbipartite_bound(n).map_err(value_err)
}

fn class_filter(name: &str) -> PyResult<ClassFilter> {
    match name {
        "all" => Ok(ClassFilter::All),
        "connected" => Ok(ClassFilter::Connected),
        "triangle_free_nonbipartite" => Ok(ClassFilter::TriangleFreeNonbipartite),
        other => Err(value_err(format!("unknown class filter {other:?}"))),
    }
}

fn outcome_dict<'py>(py: Python<'py>, out: &SearchOutcome) -> PyResult<Bound<'py, PyDict>> {
    let d = PyDict::new(py);
    d.set_item("n", out.problem.n)?;
    d.set_item("k", out.problem.k)?;
    d.set_item("t", out.problem.t)?;
    d.set_item("optimum", out.optimum)?;
    d.set_item("extremal_count", out.extremal.len())?;
    d.set_item("witnesses", out.witness_g6())?;
    d.set_item("enumerated", out.enumerated)?;
    d.set_item("elapsed_ms", out.elapsed.as_millis() as u64)?;
    Ok(d)
}

/// Exact maximum of `|E(G_k)|` over `n`-vertex graphs with `ω(G_k) <= t`.
#[pyfunction]
#[pyo3(signature = (n, k, t, class_filter = "all", graph6_path = None, shards = 8, threads = None))]
#[allow(clippy::too_many_arguments)]
fn solve<'py>(
    py: Python<'py>,
    n: usize,
    k: usize,
    t: usize,
    class_filter: &str,
    graph6_path: Option<std::path::PathBuf>,
    shards: usize,
    threads: Option<usize>,
) -> PyResult<Bound<'py, PyDict>> {
    let class = self::class_filter(class_filter)?;
    let source = graph6_path.map_or(Source::Internal, Source::Graph6File);
    let problem = SearchProblem::new(n, k, t).with_class(class).with_source(source);
    let opts = SolveOptions { shards, threads, ..SolveOptions::default() };
    let out = py.detach(|| search::solve_with(&problem, &opts)).map_err(search_err)?;
    outcome_dict(py, &out)
}

#[pyfunction]
fn solve_nonbipartite_triangle_free<'py>(py: Python<'py>, n: usize) -> PyResult<Bound<'py, PyDict>> {
    let out = py.detach(|| search::solve_nonbipartite_triangle_free(n)).map_err(search_err)?;
    outcome_dict(py, &out)
}

/// Isomorphism class representatives on `n` vertices.
#[pyfunction]
#[pyo3(signature = (n, class_filter = "all"))]
fn enumerate(py: Python<'_>, n: usize, class_filter: &str) -> PyResult<Vec<PyGraph>> {
    let class = self::class_filter(class_filter)?;
    let graphs = py.detach(|| search::enumerate(n, class).map(|it| it.collect::<Vec<_>>())).map_err(search_err)?;
    Ok(graphs.into_iter().map(PyGraph).collect())
}

/// Distance-2 extremal classes found by search against the constructed
/// family.
#[pyfunction]
fn characterize<'py>(py: Python<'py>, n: usize) -> PyResult<Bound<'py, PyDict>> {
    let c = py.detach(|| search::characterize(n)).map_err(search_err)?;
    let g6 = |v: &[canon::CanonicalForm]| v.iter().map(|f| f.graph6().to_owned()).collect::<Vec<_>>();
    let d = PyDict::new(py);
    d.set_item("n", c.n)?;
    d.set_item("optimum", c.optimum)?;
    d.set_item("formula_value", c.formula_value)?;
    d.set_item("equal", c.equal())?;
    d.set_item("found", g6(&c.found))?;
    d.set_item("family", g6(&c.family))?;
    d.set_item("missing", g6(&c.missing))?;
    d.set_item("extra", g6(&c.extra))?;
    Ok(d)
}

/// Runs a named claim and returns its report as a dict.
#[pyfunction]
#[pyo3(signature = (claim_id, n_range = Vec::new(), witness_dir = None))]
fn verify(
    py: Python<'_>,
    claim_id: &str,
    n_range: Vec<usize>,
    witness_dir: Option<std::path::PathBuf>,
) -> PyResult<Py<PyAny>> {
    let claim = Claim::parse(claim_id).ok_or_else(|| value_err(format!("unknown claim {claim_id:?}")))?;
    let opts = VerifyOptions { witness_dir, ..VerifyOptions::default() };
    let report = py.detach(|| harness::verify(claim, &n_range, &opts)).map_err(search_err)?;
    let text = serde_json::to_string(&report).map_err(value_err)?;
    Ok(py.import("json")?.call_method1("loads", (text,))?.unbind())
}

#[pyfunction]
fn claim_ids(py: Python<'_>) -> PyResult<Bound<'_, PyList>> {
    PyList::new(py, Claim::ALL.iter().map(|c| c.id()))
}

#[pymodule]
fn distk(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyGraph>()?;
    m.add_function(wrap_pyfunction!(construct, m)?)?;
    m.add_function(wrap_pyfunction!(double_broom, m)?)?;
    m.add_function(wrap_pyfunction!(spider, m)?)?;
    m.add_function(wrap_pyfunction!(turan, m)?)?;
    m.add_function(wrap_pyfunction!(t_broom, m)?)?;
    m.add_function(wrap_pyfunction!(g2_extremal_family, m)?)?;
    m.add_function(wrap_pyfunction!(ex2_bound, m)?)?;
    m.add_function(wrap_pyfunction!(ex3_bound, m)?)?;
    m.add_function(wrap_pyfunction!(tu_bound, m)?)?;
    m.add_function(wrap_pyfunction!(kp_nonbipartite_bound, m)?)?;
    m.add_function(wrap_pyfunction!(solve, m)?)?;
    m.add_function(wrap_pyfunction!(solve_nonbipartite_triangle_free, m)?)?;
    m.add_function(wrap_pyfunction!(enumerate, m)?)?;
    m.add_function(wrap_pyfunction!(characterize, m)?)?;
    m.add_function(wrap_pyfunction!(verify, m)?)?;
    m.add_function(wrap_pyfunction!(claim_ids, m)?)?;
    m.add("MAX_VERTICES", distk_core::MAX_VERTICES)?;
    m.add("EX3_N8", harness::EX3_N8)?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn class_filter_names() {
        assert_eq!(class_filter("all").unwrap(), ClassFilter::All);
        assert_eq!(class_filter("connected").unwrap(), ClassFilter::Connected);
        assert_eq!(class_filter("triangle_free_nonbipartite").unwrap(), ClassFilter::TriangleFreeNonbipartite);
        assert!(class_filter("bipartite").is_err());
    }

    #[test]
    fn graph_wrapper_errors() {
        assert!(PyGraph::new(3, vec![(0, 3)]).is_err());
        assert!(PyGraph::from_graph6("D?").is_err());
        let g = PyGraph::new(4, vec![(0, 1), (1, 2), (2, 3)]).unwrap();
        assert_eq!(g.distance_k(3).unwrap().edges(), vec![(0, 3)]);
        assert!(g.distance_k(0).is_err());
        assert_eq!(g.distances()[0], vec![Some(0), Some(1), Some(2), Some(3)]);
    }
}
