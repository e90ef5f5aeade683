//! Python bindings. Colourings cross the boundary as `{vertex: colour}`
//! dicts and moves as `(vertex, from, to)` tuples.

use std::collections::BTreeMap;

use pyo3::create_exception;
use pyo3::exceptions::{PyRuntimeError, PyValueError};
use pyo3::prelude::*;

use recolour::graph::{degeneracy_ordering, Colour, Vertex};
use recolour::moves::{verify_sequence, Move, Sequence};

create_exception!(
    recolour_py,
    CertificateError,
    PyRuntimeError,
    "A certificate or verification check failed."
);

type MoveTuple = (Vertex, Colour, Colour);

fn err(e: recolour::Error) -> PyErr {
    if e.is_certificate_failure() {
        CertificateError::new_err(e.to_string())
    } else {
        PyValueError::new_err(e.to_string())
    }
}

fn colouring(c: BTreeMap<Vertex, Colour>, palette: Colour) -> PyResult<recolour::Colouring> {
    recolour::Colouring::new(palette, c).map_err(err)
}

fn to_dict(c: &recolour::Colouring) -> BTreeMap<Vertex, Colour> {
    c.iter().collect()
}

fn tuples(s: &Sequence) -> Vec<MoveTuple> {
    s.moves().iter().map(|m| (m.vertex(), m.from(), m.to())).collect()
}

fn json<'py>(py: Python<'py>, value: &impl serde::Serialize) -> PyResult<Bound<'py, PyAny>> {
    let text = serde_json::to_string(value).map_err(|e| PyRuntimeError::new_err(e.to_string()))?;
    py.import("json")?.call_method1("loads", (text,))
}

/// Simple undirected graph with `u32` vertex labels.
#[pyclass(name = "Graph", frozen)]
struct PyGraph {
    inner: recolour::Graph,
}

#[pymethods]
impl PyGraph {
    /// Graph on `1..=n` with the given edges.
    #[new]
    #[pyo3(signature = (n, edges = Vec::new()))]
    fn new(n: u32, edges: Vec<(Vertex, Vertex)>) -> PyResult<Self> {
        Ok(PyGraph {
            inner: recolour::Graph::from_edges(n, &edges).map_err(err)?,
        })
    }

    /// Parses the `p edge n m` text format.
    #[staticmethod]
    fn from_text(text: &str) -> PyResult<Self> {
        Ok(PyGraph {
            inner: recolour::io::parse_graph(text).map_err(err)?,
        })
    }

    /// Named family, e.g. `Graph.family("grid", [3, 3])`.
    #[staticmethod]
    #[pyo3(signature = (name, params = Vec::new(), seed = 0))]
    fn family(name: &str, params: Vec<u32>, seed: u64) -> PyResult<Self> {
        Ok(PyGraph {
            inner: recolour::generate::generate_family(name, &params, seed).map_err(err)?,
        })
    }

    fn to_text(&self) -> PyResult<String> {
        recolour::io::emit_graph(&self.inner).map_err(err)
    }

    #[getter]
    fn n(&self) -> usize {
        self.inner.n()
    }

    #[getter]
    fn m(&self) -> usize {
        self.inner.m()
    }

    fn vertices(&self) -> Vec<Vertex> {
        self.inner.vertices().collect()
    }

    fn edges(&self) -> Vec<(Vertex, Vertex)> {
        self.inner.edges().collect()
    }

    fn neighbours(&self, v: Vertex) -> PyResult<Vec<Vertex>> {
        Ok(self.inner.try_neighbours(v).map_err(err)?.iter().copied().collect())
    }

    fn degeneracy(&self) -> usize {
        degeneracy_ordering(&self.inner).width
    }

    fn is_proper(&self, c: BTreeMap<Vertex, Colour>) -> bool {
        let palette = c.values().copied().max().unwrap_or(1);
        colouring(c, palette).is_ok_and(|c| c.check_proper(&self.inner).is_ok())
    }

    /// Random proper colouring with colours `1..=palette`.
    #[pyo3(signature = (palette = 7, seed = 0))]
    fn random_colouring(&self, palette: Colour, seed: u64) -> PyResult<BTreeMap<Vertex, Colour>> {
        let c = recolour::generate::random_proper_colouring(&self.inner, palette, seed).map_err(err)?;
        Ok(to_dict(&c))
    }

    fn __repr__(&self) -> String {
        format!("Graph(n={}, m={})", self.inner.n(), self.inner.m())
    }
}

/// Sequence between two 7-colourings of a planar graph, with its report.
#[pyfunction]
fn seven_colour_path<'py>(
    py: Python<'py>,
    g: &PyGraph,
    alpha: BTreeMap<Vertex, Colour>,
    beta: BTreeMap<Vertex, Colour>,
) -> PyResult<(Vec<MoveTuple>, Bound<'py, PyAny>)> {
    let a = colouring(alpha, 7)?;
    let b = colouring(beta, 7)?;
    let (s, report) = py
        .detach(|| recolour::pipeline::seven_colour_path(&g.inner, &a, &b))
        .map_err(err)?;
    Ok((tuples(&s), json(py, &report)?))
}

/// Removes colour `k + 2` from a `(k+2)`-colouring when `mad(g) < k + 1`.
#[pyfunction]
fn reduce_mad(g: &PyGraph, k: usize, alpha: BTreeMap<Vertex, Colour>) -> PyResult<Vec<MoveTuple>> {
    let a = colouring(alpha, k as Colour + 2)?;
    let s = recolour::mad::reduce_one_colour_mad(&g.inner, k, &a).map_err(err)?;
    Ok(tuples(&s))
}

/// Takes a 6-colouring of a planar graph to a 5-colouring.
#[pyfunction]
fn reduce_planar(g: &PyGraph, gamma: BTreeMap<Vertex, Colour>) -> PyResult<Vec<MoveTuple>> {
    let c = colouring(gamma, 7)?;
    let s = recolour::planar::reduce_planar_6_to_5(&g.inner, &c).map_err(err)?;
    Ok(tuples(&s))
}

/// Joins two `k`-colourings of a `d`-degenerate graph.
#[pyfunction]
fn connect(
    g: &PyGraph,
    d: usize,
    k: usize,
    alpha: BTreeMap<Vertex, Colour>,
    beta: BTreeMap<Vertex, Colour>,
) -> PyResult<Vec<MoveTuple>> {
    let a = colouring(alpha, k as Colour)?;
    let b = colouring(beta, k as Colour)?;
    let s = recolour::connect::connect_colourings(&g.inner, d, k, &a, &b).map_err(err)?;
    Ok(tuples(&s))
}

/// `[I1, I2, A]` with `I1`, `I2` independent and `G[A]` 2-degenerate.
#[pyfunction]
#[pyo3(signature = (g, seed = 0))]
fn corollary_partition(g: &PyGraph, seed: u64) -> PyResult<Vec<Vec<Vertex>>> {
    let cfg = recolour::partition::PartitionSearchConfig {
        seed,
        ..Default::default()
    };
    let p = recolour::partition::corollary_partition(&g.inner, &cfg).map_err(err)?;
    Ok(p.partition.parts.iter().map(|s| s.iter().copied().collect()).collect())
}

/// Checks `moves` from `start`. Returns `(ok, failing_index, message)`;
/// the index is `None` when only the end colouring is wrong.
#[pyfunction]
#[pyo3(signature = (g, start, moves, end = None, palette = 7))]
fn verify(
    g: &PyGraph,
    start: BTreeMap<Vertex, Colour>,
    moves: Vec<MoveTuple>,
    end: Option<BTreeMap<Vertex, Colour>>,
    palette: Colour,
) -> PyResult<(bool, Option<usize>, Option<String>)> {
    let start = colouring(start, palette)?;
    let end = end.map(|e| colouring(e, palette)).transpose()?;
    let moves = moves
        .into_iter()
        .map(|(v, a, b)| Move::new(v, a, b))
        .collect::<recolour::Result<Vec<_>>>()
        .map_err(err)?;
    let r = verify_sequence(&g.inner, &Sequence::from_moves(start, moves), end.as_ref());
    Ok(match r.failure {
        None => (true, None, None),
        Some(f) => (false, f.index, Some(f.error.to_string())),
    })
}

/// Shortest sequence in `R_k(G)` by breadth-first search, or `None`.
#[pyfunction]
fn shortest_sequence(
    g: &PyGraph,
    k: usize,
    alpha: BTreeMap<Vertex, Colour>,
    beta: BTreeMap<Vertex, Colour>,
) -> PyResult<Option<Vec<MoveTuple>>> {
    let a = colouring(alpha, k as Colour)?;
    let b = colouring(beta, k as Colour)?;
    let s = recolour::oracle::shortest_sequence(&g.inner, k, &a, &b).map_err(err)?;
    Ok(s.as_ref().map(tuples))
}

/// Connectivity and diameter of `R_k(G)` as a dict.
#[pyfunction]
fn component_and_diameter<'py>(py: Python<'py>, g: &PyGraph, k: usize) -> PyResult<Bound<'py, PyAny>> {
    let s = recolour::oracle::component_and_diameter(&g.inner, k).map_err(err)?;
    json(py, &s)
}

#[pymodule]
fn recolour_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyGraph>()?;
    m.add("CertificateError", m.py().get_type::<CertificateError>())?;
    m.add_function(wrap_pyfunction!(seven_colour_path, m)?)?;
    m.add_function(wrap_pyfunction!(reduce_mad, m)?)?;
    m.add_function(wrap_pyfunction!(reduce_planar, m)?)?;
    m.add_function(wrap_pyfunction!(connect, m)?)?;
    m.add_function(wrap_pyfunction!(corollary_partition, m)?)?;
    m.add_function(wrap_pyfunction!(verify, m)?)?;
    m.add_function(wrap_pyfunction!(shortest_sequence, m)?)?;
    m.add_function(wrap_pyfunction!(component_and_diameter, m)?)?;
    Ok(())
}
