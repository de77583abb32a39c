//! Python bindings for `polyjoin_core`.

use std::collections::BTreeMap;

use num_bigint::BigUint;
use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use polyjoin_core::betti::BettiVector;
use polyjoin_core::closed_forms::{kozlov_cycle, lex_lm_spheres, polyjoin_ln, SphereCountTable};
use polyjoin_core::complex::{
    complex_from_json, complex_to_json, independence_complex, parse_complex,
    polyhedral_join_realize, write_complex, SimplicialComplex,
};
use polyjoin_core::decomposability::{
    check_shedding_pair, is_s_vertex_decomposable, is_vertex_decomposable, validate_certificate,
    SheddingCertificate,
};
use polyjoin_core::engine::{
    decompose_forest_lex, decompose_with_trace, per_vertex_atoms, single_atom,
};
use polyjoin_core::graph::{
    complete_graph, cycle_graph, graph_from_json, graph_to_json, lexicographic_product,
    parse_graph, path_graph, random_tree, star_graph, write_graph, Graph as CoreGraph, Vertex,
};
use polyjoin_core::homology::{reduced_homology_report, DEFAULT_MAX_FACES};
use polyjoin_core::homotopy::{AtomAssignment, NormalForm as CoreNormalForm};
use polyjoin_core::verify::{verify_instance, Factor, VerifyOptions};

fn value_err(e: impl ToString) -> PyErr {
    PyValueError::new_err(e.to_string())
}

type BettiDict = BTreeMap<i64, BigUint>;

fn betti_dict(b: &BettiVector) -> BettiDict {
    b.iter().map(|(d, n)| (d, n.clone())).collect()
}

fn table_dict(t: &SphereCountTable) -> (BTreeMap<u64, BigUint>, BigUint) {
    (t.spheres.clone(), t.extra_components.clone())
}

/// Simple undirected graph on integer labels.
#[pyclass(module = "polyjoin", eq, frozen, skip_from_py_object)]
#[derive(Clone, PartialEq)]
pub struct Graph {
    inner: CoreGraph,
}

#[pymethods]
impl Graph {
    #[new]
    fn new(vertices: Vec<Vertex>, edges: Vec<(Vertex, Vertex)>) -> PyResult<Self> {
        let inner = CoreGraph::new(vertices, edges).map_err(value_err)?;
        Ok(Graph { inner })
    }

    #[staticmethod]
    fn path(n: usize) -> PyResult<Self> {
        Ok(Graph {
            inner: path_graph(n).map_err(value_err)?,
        })
    }

    #[staticmethod]
    fn cycle(n: usize) -> PyResult<Self> {
        Ok(Graph {
            inner: cycle_graph(n).map_err(value_err)?,
        })
    }

    #[staticmethod]
    fn complete(n: usize) -> Self {
        Graph {
            inner: complete_graph(n),
        }
    }

    #[staticmethod]
    fn star(leaves: usize) -> Self {
        Graph {
            inner: star_graph(leaves),
        }
    }

    #[staticmethod]
    #[pyo3(signature = (n, seed=0))]
    fn random_tree(n: usize, seed: u64) -> PyResult<Self> {
        if n == 0 {
            return Err(value_err("a tree needs at least one vertex"));
        }
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        Ok(Graph {
            inner: random_tree(n, &mut rng),
        })
    }

    #[staticmethod]
    fn parse(text: &str) -> PyResult<Self> {
        Ok(Graph {
            inner: parse_graph(text).map_err(value_err)?,
        })
    }

    #[staticmethod]
    fn from_json(text: &str) -> PyResult<Self> {
        Ok(Graph {
            inner: graph_from_json(text).map_err(value_err)?,
        })
    }

    fn to_text(&self) -> String {
        write_graph(&self.inner)
    }

    fn to_json(&self) -> String {
        graph_to_json(&self.inner).to_string()
    }

    #[getter]
    fn vertices(&self) -> Vec<Vertex> {
        self.inner.vertices().to_vec()
    }

    #[getter]
    fn edges(&self) -> Vec<(Vertex, Vertex)> {
        self.inner.edges().collect()
    }

    fn is_forest(&self) -> bool {
        self.inner.is_forest()
    }

    fn is_connected(&self) -> bool {
        self.inner.is_connected()
    }

    /// `self[other]`.
    fn lex(&self, other: &Graph) -> Graph {
        Graph {
            inner: lexicographic_product(&self.inner, &other.inner),
        }
    }

    fn independence_complex(&self) -> Complex {
        Complex {
            inner: independence_complex(&self.inner),
        }
    }

    fn __len__(&self) -> usize {
        self.inner.vertex_count()
    }

    fn __repr__(&self) -> String {
        format!(
            "Graph(vertices={}, edges={})",
            self.inner.vertex_count(),
            self.inner.edge_count()
        )
    }
}

/// Finite simplicial complex given by its facets.
#[pyclass(module = "polyjoin", eq, frozen, skip_from_py_object)]
#[derive(Clone, PartialEq)]
pub struct Complex {
    inner: SimplicialComplex,
}

#[pymethods]
impl Complex {
    #[new]
    #[pyo3(signature = (facets, vertices=None))]
    fn new(facets: Vec<Vec<Vertex>>, vertices: Option<Vec<Vertex>>) -> PyResult<Self> {
        let vertices = vertices.unwrap_or_else(|| facets.iter().flatten().copied().collect());
        if facets.iter().all(Vec::is_empty) && vertices.is_empty() {
            return Ok(Complex {
                inner: SimplicialComplex::empty(),
            });
        }
        let inner = SimplicialComplex::from_facets(vertices, facets).map_err(value_err)?;
        Ok(Complex { inner })
    }

    /// The complex `{∅}`.
    #[staticmethod]
    fn empty() -> Self {
        Complex {
            inner: SimplicialComplex::empty(),
        }
    }

    #[staticmethod]
    fn simplex(vertices: Vec<Vertex>) -> Self {
        Complex {
            inner: SimplicialComplex::simplex(vertices),
        }
    }

    #[staticmethod]
    fn parse(text: &str) -> PyResult<Self> {
        Ok(Complex {
            inner: parse_complex(text).map_err(value_err)?,
        })
    }

    #[staticmethod]
    fn from_json(text: &str) -> PyResult<Self> {
        Ok(Complex {
            inner: complex_from_json(text).map_err(value_err)?,
        })
    }

    fn to_text(&self) -> String {
        write_complex(&self.inner)
    }

    fn to_json(&self) -> String {
        complex_to_json(&self.inner).to_string()
    }

    #[getter]
    fn vertices(&self) -> Vec<Vertex> {
        self.inner.vertices().to_vec()
    }

    #[getter]
    fn facets(&self) -> Vec<Vec<Vertex>> {
        self.inner.facets()
    }

    #[getter]
    fn dimension(&self) -> isize {
        self.inner.dimension()
    }

    fn f_vector(&self) -> Vec<u64> {
        self.inner.f_vector()
    }

    fn star(&self, v: Vertex) -> PyResult<Complex> {
        Ok(Complex {
            inner: self.inner.star(v).map_err(value_err)?,
        })
    }

    fn link(&self, v: Vertex) -> PyResult<Complex> {
        Ok(Complex {
            inner: self.inner.link(v).map_err(value_err)?,
        })
    }

    fn deletion(&self, v: Vertex) -> PyResult<Complex> {
        Ok(Complex {
            inner: self.inner.deletion(v).map_err(value_err)?,
        })
    }

    fn is_connected(&self) -> bool {
        self.inner.is_connected()
    }

    fn is_simplex(&self) -> bool {
        self.inner.is_simplex()
    }

    fn connected_components(&self) -> Vec<Complex> {
        self.inner
            .connected_components()
            .into_iter()
            .map(|inner| Complex { inner })
            .collect()
    }

    /// Reduced Betti numbers by degree; raises if the homology has torsion.
    #[pyo3(signature = (max_faces=DEFAULT_MAX_FACES))]
    fn homology(&self, py: Python<'_>, max_faces: usize) -> PyResult<BettiDict> {
        let report = py
            .detach(|| reduced_homology_report(&self.inner, max_faces))
            .map_err(value_err)?;
        if report.betti.torsion {
            return Err(value_err(format!(
                "torsion in degrees {:?}",
                report.torsion.keys()
            )));
        }
        Ok(betti_dict(&report.betti))
    }

    fn is_shedding_pair(&self, v: Vertex, w: Vertex) -> PyResult<bool> {
        check_shedding_pair(&self.inner, v, w).map_err(value_err)
    }

    /// An s-shedding certificate, or `None`.
    fn certificate(&self, py: Python<'_>) -> Option<Certificate> {
        py.detach(|| is_s_vertex_decomposable(&self.inner))
            .map(|inner| Certificate { inner })
    }

    fn is_vertex_decomposable(&self, py: Python<'_>) -> bool {
        py.detach(|| is_vertex_decomposable(&self.inner))
    }

    /// `Z*_K(X, ∅)` with `assignment[v]` at vertex `v`.
    fn polyhedral_join(
        &self,
        assignment: BTreeMap<Vertex, PyRef<'_, Complex>>,
    ) -> PyResult<Complex> {
        let map: BTreeMap<Vertex, SimplicialComplex> = assignment
            .iter()
            .map(|(v, c)| (*v, c.inner.clone()))
            .collect();
        let inner = polyhedral_join_realize(&self.inner, &map).map_err(value_err)?;
        Ok(Complex { inner })
    }

    /// Normal form of `Z*_K(X, ∅)` read off `certificate`. `atoms` is
    /// `"per-vertex"` or the name of a single atom used everywhere.
    #[pyo3(signature = (certificate, atoms="per-vertex"))]
    fn decompose(&self, certificate: &Certificate, atoms: &str) -> PyResult<NormalForm> {
        let map = if atoms == "per-vertex" {
            per_vertex_atoms(&self.inner)
        } else {
            single_atom(&self.inner, atoms)
        };
        let report =
            decompose_with_trace(&self.inner, &certificate.inner, &map).map_err(value_err)?;
        Ok(NormalForm {
            inner: report.normal_form,
        })
    }

    fn __repr__(&self) -> String {
        format!(
            "Complex(vertices={}, facets={})",
            self.inner.vertex_count(),
            self.inner.facet_count()
        )
    }
}

/// Recursive s-shedding certificate.
#[pyclass(module = "polyjoin", eq, frozen, skip_from_py_object)]
#[derive(Clone, PartialEq)]
pub struct Certificate {
    inner: SheddingCertificate,
}

#[pymethods]
impl Certificate {
    #[staticmethod]
    fn from_json(text: &str) -> PyResult<Self> {
        Ok(Certificate {
            inner: SheddingCertificate::from_json(text).map_err(value_err)?,
        })
    }

    /// Leaf certificate of `I(G)` for a forest `G`.
    #[staticmethod]
    fn for_forest(g: &Graph) -> PyResult<Self> {
        let inner =
            polyjoin_core::decomposability::forest_certificate(&g.inner).map_err(value_err)?;
        Ok(Certificate { inner })
    }

    fn to_json(&self) -> String {
        self.inner.to_json().to_string()
    }

    fn node_count(&self) -> usize {
        self.inner.node_count()
    }

    fn depth(&self) -> usize {
        self.inner.depth()
    }

    fn validate(&self, complex: &Complex) -> bool {
        validate_certificate(&complex.inner, &self.inner)
    }

    fn __repr__(&self) -> String {
        format!("Certificate({})", self.to_json())
    }
}

/// Wedge of iterated suspensions of joins of atoms.
#[pyclass(module = "polyjoin", eq, frozen, skip_from_py_object)]
#[derive(Clone, PartialEq)]
pub struct NormalForm {
    inner: CoreNormalForm,
}

#[pymethods]
impl NormalForm {
    #[staticmethod]
    fn from_json(text: &str) -> PyResult<Self> {
        let v: serde_json::Value = serde_json::from_str(text).map_err(value_err)?;
        Ok(NormalForm {
            inner: CoreNormalForm::from_json(&v).map_err(value_err)?,
        })
    }

    fn to_json(&self) -> String {
        self.inner.to_json().to_string()
    }

    /// `(suspensions, {atom: power}, multiplicity)` per distinct summand.
    #[getter]
    fn summands(&self) -> Vec<(u32, BTreeMap<String, u32>, BigUint)> {
        self.inner
            .summands()
            .iter()
            .map(|(t, m)| (t.r, t.powers().clone(), m.clone()))
            .collect()
    }

    #[getter]
    fn extra_components(&self) -> BigUint {
        self.inner.extra_components.clone()
    }

    /// Reduced Betti numbers once each atom is replaced by a space with the
    /// given reduced Betti numbers.
    fn betti(&self, atoms: BTreeMap<String, BettiDict>) -> PyResult<BettiDict> {
        let assignment: AtomAssignment = atoms
            .into_iter()
            .map(|(a, b)| (a, BettiVector::from_pairs(b)))
            .collect();
        Ok(betti_dict(
            &self.inner.betti(&assignment).map_err(value_err)?,
        ))
    }

    fn __str__(&self) -> String {
        self.inner.to_string()
    }

    fn __repr__(&self) -> String {
        format!("NormalForm({})", self.inner)
    }
}

/// Normal form of the polyhedral join over `I(L_n)` with a single atom `X`.
#[pyfunction]
fn path_form(n: u64) -> PyResult<NormalForm> {
    Ok(NormalForm {
        inner: polyjoin_ln(n).map_err(value_err)?,
    })
}

/// `(spheres by degree, extra components)` of `I(L_m[H])` for `|I(H)| ≃ ⋁_n S^k`.
#[pyfunction]
fn lex_path_spheres(m: u64, n: u64, k: u64) -> PyResult<(BTreeMap<u64, BigUint>, BigUint)> {
    Ok(table_dict(&lex_lm_spheres(m, n, k).map_err(value_err)?))
}

#[pyfunction]
fn cycle_spheres(n: u64) -> PyResult<(BTreeMap<u64, BigUint>, BigUint)> {
    Ok(table_dict(&kozlov_cycle(n).map_err(value_err)?))
}

/// `(normal form, Betti numbers)` of `I(G[H])` for a forest `G`.
#[pyfunction]
fn decompose_lex(py: Python<'_>, g: &Graph, h: &Graph) -> PyResult<(NormalForm, BettiDict)> {
    let d = py
        .detach(|| decompose_forest_lex(&g.inner, &h.inner))
        .map_err(value_err)?;
    Ok((
        NormalForm {
            inner: d.normal_form,
        },
        betti_dict(&d.betti),
    ))
}

/// Engine, oracle and closed form for `I(G[H])`, as the report JSON.
#[pyfunction]
#[pyo3(signature = (g, h, max_faces=DEFAULT_MAX_FACES))]
fn verify(py: Python<'_>, g: &Graph, h: &Graph, max_faces: usize) -> String {
    py.detach(|| {
        let factor = Factor::new("H".into(), h.inner.clone(), max_faces);
        let opts = VerifyOptions {
            max_faces,
            timings: false,
            oracle_cache: false,
        };
        verify_instance(&g.inner, &factor, &opts)
            .to_json()
            .to_string()
    })
}

#[pymodule]
pub fn polyjoin(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<Graph>()?;
    m.add_class::<Complex>()?;
    m.add_class::<Certificate>()?;
    m.add_class::<NormalForm>()?;
    m.add_function(wrap_pyfunction!(path_form, m)?)?;
    m.add_function(wrap_pyfunction!(lex_path_spheres, m)?)?;
    m.add_function(wrap_pyfunction!(cycle_spheres, m)?)?;
    m.add_function(wrap_pyfunction!(decompose_lex, m)?)?;
    m.add_function(wrap_pyfunction!(verify, m)?)?;
    Ok(())
}
