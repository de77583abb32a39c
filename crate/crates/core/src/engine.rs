//! Homotopy type of a polyhedral join `Z*_K(X, ∅)` read off a shedding
//! certificate of `K`.
//!
//! At a node `(v, w)` the join splits as `Σ Z_lk ∨ (Z_lk * X_v) ∨ Z_dl`,
//! or as `X_v ⊔ Z_dl` when `v` is an isolated vertex of `K`.

use std::collections::BTreeMap;

use serde_json::{json, Value};
use thiserror::Error;

use crate::betti::BettiVector;
use crate::complex::{
    independence_complex, polyhedral_join_realize, ComplexError, SimplicialComplex,
};
use crate::decomposability::{check_shedding_pair, forest_certificate, Leaf, SheddingCertificate};
use crate::graph::{Graph, GraphError, Vertex};
use crate::homology::{reduced_homology_with_limit, HomologyError, DEFAULT_MAX_FACES};
use crate::homotopy::{
    disjoint_all, normalize, suspend_iter, wedge_all, AtomAssignment, AtomId, HomotopyError,
    HomotopyExpr, NormalForm,
};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum EngineError {
    #[error("certificate leaf {leaf:?} does not match the complex")]
    LeafMismatch { leaf: Leaf },
    #[error("({v}, {w}) is not a shedding pair")]
    NotShedding { v: Vertex, w: Vertex },
    #[error("no atom assigned to vertex {0}")]
    MissingAtom(Vertex),
    #[error("atom complex has torsion in its homology")]
    TorsionAtom,
    #[error(transparent)]
    Complex(#[from] ComplexError),
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Homology(#[from] HomologyError),
    #[error(transparent)]
    Homotopy(#[from] HomotopyError),
}

/// Which splitting step fired.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Rule {
    Simplex,
    Empty,
    IsolatedVertex,
    Split,
}

impl Rule {
    fn name(self) -> &'static str {
        match self {
            Rule::Simplex => "simplex",
            Rule::Empty => "empty",
            Rule::IsolatedVertex => "isolated",
            Rule::Split => "split",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TraceStep {
    pub rule: Rule,
    pub vertex: Option<Vertex>,
    pub depth: usize,
}

#[derive(Clone, Debug)]
pub struct DecompositionReport {
    pub vertex_count: usize,
    pub facet_count: usize,
    pub certificate: SheddingCertificate,
    pub expression: HomotopyExpr,
    pub normal_form: NormalForm,
    pub trace: Vec<TraceStep>,
}

impl DecompositionReport {
    /// Whether the answer has more than one path component.
    pub fn is_disjoint_union(&self) -> bool {
        self.normal_form.extra_components > 0u32.into()
    }

    pub fn to_json(&self) -> Value {
        let trace: Vec<Value> = self
            .trace
            .iter()
            .map(|s| json!({"rule": s.rule.name(), "vertex": s.vertex, "depth": s.depth}))
            .collect();
        json!({
            "complex": {"vertices": self.vertex_count, "facets": self.facet_count},
            "certificate": self.certificate.to_json(),
            "normal_form": self.normal_form.to_json(),
            "expression": self.expression.to_string(),
            "disjoint_union": self.is_disjoint_union(),
            "trace": trace,
        })
    }
}

/// One atom per vertex, named `X<label>`.
pub fn per_vertex_atoms(k: &SimplicialComplex) -> BTreeMap<Vertex, AtomId> {
    k.vertices().iter().map(|&v| (v, format!("X{v}"))).collect()
}

/// The same atom at every vertex.
pub fn single_atom(k: &SimplicialComplex, id: &str) -> BTreeMap<Vertex, AtomId> {
    k.vertices().iter().map(|&v| (v, id.to_string())).collect()
}

struct Walker<'a> {
    atoms: &'a BTreeMap<Vertex, AtomId>,
    trace: Vec<TraceStep>,
}

impl Walker<'_> {
    fn atom(&self, v: Vertex) -> Result<HomotopyExpr, EngineError> {
        self.atoms
            .get(&v)
            .map(|a| HomotopyExpr::Atom(a.clone()))
            .ok_or(EngineError::MissingAtom(v))
    }

    fn walk(
        &mut self,
        k: &SimplicialComplex,
        cert: &SheddingCertificate,
        depth: usize,
    ) -> Result<HomotopyExpr, EngineError> {
        match cert {
            SheddingCertificate::Leaf(Leaf::Simplex) => {
                if !k.is_simplex() {
                    return Err(EngineError::LeafMismatch {
                        leaf: Leaf::Simplex,
                    });
                }
                self.trace.push(TraceStep {
                    rule: Rule::Simplex,
                    vertex: None,
                    depth,
                });
                let parts = k
                    .vertices()
                    .iter()
                    .map(|&v| self.atom(v))
                    .collect::<Result<Vec<_>, _>>()?;
                Ok(HomotopyExpr::Join(parts))
            }
            SheddingCertificate::Leaf(Leaf::Empty) => {
                if !k.is_empty_complex() {
                    return Err(EngineError::LeafMismatch { leaf: Leaf::Empty });
                }
                self.trace.push(TraceStep {
                    rule: Rule::Empty,
                    vertex: None,
                    depth,
                });
                Ok(HomotopyExpr::Empty)
            }
            SheddingCertificate::Node { v, w, del, lk } => {
                if !check_shedding_pair(k, *v, *w)? {
                    return Err(EngineError::NotShedding { v: *v, w: *w });
                }
                let link = k.link(*v)?;
                let rule = if link.is_empty_complex() {
                    Rule::IsolatedVertex
                } else {
                    Rule::Split
                };
                self.trace.push(TraceStep {
                    rule,
                    vertex: Some(*v),
                    depth,
                });
                let x_v = self.atom(*v)?;
                let d_del = self.walk(&k.deletion(*v)?, del, depth + 1)?;
                let d_lk = self.walk(&link, lk, depth + 1)?;
                Ok(match rule {
                    Rule::IsolatedVertex => disjoint_all(vec![x_v, d_del]),
                    _ => wedge_all(vec![
                        suspend_iter(d_lk.clone(), 1),
                        HomotopyExpr::Join(vec![d_lk, x_v]),
                        d_del,
                    ]),
                })
            }
        }
    }
}

/// Expression for `Z*_K` with `atoms[v]` at vertex `v`. The certificate is
/// checked node by node as the recursion goes.
pub fn decompose(
    k: &SimplicialComplex,
    cert: &SheddingCertificate,
    atoms: &BTreeMap<Vertex, AtomId>,
) -> Result<HomotopyExpr, EngineError> {
    Ok(decompose_with_trace(k, cert, atoms)?.expression)
}

pub fn decompose_with_trace(
    k: &SimplicialComplex,
    cert: &SheddingCertificate,
    atoms: &BTreeMap<Vertex, AtomId>,
) -> Result<DecompositionReport, EngineError> {
    let mut walker = Walker {
        atoms,
        trace: Vec::new(),
    };
    let expression = walker.walk(k, cert, 0)?;
    let normal_form = normalize(&expression);
    Ok(DecompositionReport {
        vertex_count: k.vertex_count(),
        facet_count: k.facet_count(),
        certificate: cert.clone(),
        expression,
        normal_form,
        trace: walker.trace,
    })
}

/// Result of decomposing `I(G[H])` for a forest `G`.
#[derive(Clone, Debug)]
pub struct LexDecomposition {
    pub expression: HomotopyExpr,
    pub normal_form: NormalForm,
    /// Reduced Betti vector of `I(H)`, the value of the atom.
    pub atom_betti: BettiVector,
    pub betti: BettiVector,
}

pub const LEX_ATOM: &str = "X";

/// `|I(G[H])| ≅ Z*_{I(G)}(|I(H)|, ∅)` evaluated through the forest
/// certificate of `G`, with `I(H)` entering only through its Betti vector.
pub fn decompose_forest_lex(g: &Graph, h: &Graph) -> Result<LexDecomposition, EngineError> {
    let atom_betti = reduced_homology_with_limit(&independence_complex(h), DEFAULT_MAX_FACES)?;
    decompose_forest_lex_with_atom(g, &atom_betti)
}

/// Same as [`decompose_forest_lex`] with the Betti vector of `I(H)` given.
pub fn decompose_forest_lex_with_atom(
    g: &Graph,
    atom_betti: &BettiVector,
) -> Result<LexDecomposition, EngineError> {
    if atom_betti.torsion {
        return Err(EngineError::TorsionAtom);
    }
    let cert = forest_certificate(g)?;
    let k = independence_complex(g);
    let expression = decompose(&k, &cert, &single_atom(&k, LEX_ATOM))?;
    let normal_form = normalize(&expression);
    let atoms: AtomAssignment = [(LEX_ATOM.to_string(), atom_betti.clone())].into();
    let betti = normal_form.betti(&atoms)?;
    Ok(LexDecomposition {
        expression,
        normal_form,
        atom_betti: atom_betti.clone(),
        betti,
    })
}

/// Betti vector of `Σ Z_lk ∨ (Z_lk * X_v) ∨ Z_dl` computed from the
/// realized pieces, for any pivot `v` whose link is not `{∅}`. This is the
/// splitting formula applied without checking that `v` sheds.
pub fn naive_splitting_betti(
    k: &SimplicialComplex,
    v: Vertex,
    assignment: &BTreeMap<Vertex, SimplicialComplex>,
) -> Result<BettiVector, EngineError> {
    let restrict = |sub: &SimplicialComplex| -> BTreeMap<Vertex, SimplicialComplex> {
        sub.vertices()
            .iter()
            .map(|u| (*u, assignment[u].clone()))
            .collect()
    };
    let hom = |c: &SimplicialComplex| reduced_homology_with_limit(c, DEFAULT_MAX_FACES);
    let lk = k.link(v)?;
    let dl = k.deletion(v)?;
    let z_lk = hom(&polyhedral_join_realize(&lk, &restrict(&lk))?)?;
    let z_dl = hom(&polyhedral_join_realize(&dl, &restrict(&dl))?)?;
    let x_v = hom(assignment.get(&v).ok_or(EngineError::MissingAtom(v))?)?;
    let suspension = BettiVector::sphere_wedge(1u32, 0);
    Ok(z_lk.join(&suspension).add(&z_lk.join(&x_v)).add(&z_dl))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::constant_assignment;
    use crate::decomposability::is_s_vertex_decomposable;
    use crate::graph::{
        complete_graph, cycle_graph, lexicographic_product, path_graph, star_graph,
    };
    use crate::homology::reduced_homology;
    use crate::homotopy::{JoinTerm, NormalForm};
    use num_bigint::BigUint;

    fn x_pow(r: u32, k: u32) -> JoinTerm {
        JoinTerm::new(r, [(LEX_ATOM.to_string(), k)])
    }

    fn path_form(n: usize) -> NormalForm {
        let g = path_graph(n).unwrap();
        let k = independence_complex(&g);
        let cert = forest_certificate(&g).unwrap();
        normalize(&decompose(&k, &cert, &single_atom(&k, LEX_ATOM)).unwrap())
    }

    #[test]
    fn small_paths() {
        assert_eq!(path_form(1), NormalForm::from_term(x_pow(0, 1)));
        let one = BigUint::from(1u32);
        assert_eq!(
            path_form(2),
            NormalForm::from_terms([(x_pow(0, 1), 2u32.into())], one.clone())
        );
        assert_eq!(
            path_form(3),
            NormalForm::from_terms(
                [(x_pow(0, 2), one.clone()), (x_pow(0, 1), one.clone())],
                one
            )
        );
        assert_eq!(
            path_form(4),
            NormalForm::from_terms(
                [(x_pow(0, 2), 3u32.into()), (x_pow(1, 1), 2u32.into())],
                0u32.into()
            )
        );
    }

    #[test]
    fn trace_covers_every_certificate_node() {
        for g in [path_graph(6).unwrap(), star_graph(4)] {
            let k = independence_complex(&g);
            let cert = forest_certificate(&g).unwrap();
            let report = decompose_with_trace(&k, &cert, &per_vertex_atoms(&k)).unwrap();
            assert_eq!(report.trace.len(), cert.node_count());
        }
    }

    #[test]
    fn bad_inputs_are_rejected() {
        let g = path_graph(3).unwrap();
        let k = independence_complex(&g);
        let cert = forest_certificate(&g).unwrap();
        let mut atoms = single_atom(&k, "X");
        atoms.remove(&2);
        assert_eq!(
            decompose(&k, &cert, &atoms),
            Err(EngineError::MissingAtom(2))
        );
        let forged = SheddingCertificate::node(
            1,
            2,
            SheddingCertificate::Leaf(Leaf::Simplex),
            SheddingCertificate::Leaf(Leaf::Empty),
        );
        assert_eq!(
            decompose(&k, &forged, &single_atom(&k, "X")),
            Err(EngineError::NotShedding { v: 1, w: 2 })
        );
        assert!(matches!(
            decompose_forest_lex(&cycle_graph(4).unwrap(), &complete_graph(2)),
            Err(EngineError::Graph(GraphError::NotForest))
        ));
    }

    #[test]
    fn lex_examples_match_oracle() {
        let check = |g: Graph, h: Graph, expect: BettiVector| {
            let lex = decompose_forest_lex(&g, &h).unwrap();
            let oracle =
                reduced_homology(&independence_complex(&lexicographic_product(&g, &h))).unwrap();
            assert_eq!(lex.betti, oracle);
            assert_eq!(lex.betti, expect);
        };
        let c3 = || cycle_graph(3).unwrap();
        check(
            path_graph(1).unwrap(),
            c3(),
            BettiVector::from_pairs([(0, 2u32)]),
        );
        check(
            path_graph(3).unwrap(),
            c3(),
            BettiVector::from_pairs([(0, 3u32), (1, 4)]),
        );
        check(
            path_graph(2).unwrap(),
            c3(),
            BettiVector::from_pairs([(0, 5u32)]),
        );
        check(
            path_graph(4).unwrap(),
            cycle_graph(4).unwrap(),
            BettiVector::from_pairs([(1, 5u32)]),
        );
        let star = star_graph(3);
        let lex = decompose_forest_lex(&star, &complete_graph(2)).unwrap();
        assert!(lex.normal_form.extra_components > BigUint::from(0u32));
        let oracle = reduced_homology(&independence_complex(&lexicographic_product(
            &star,
            &complete_graph(2),
        )))
        .unwrap();
        assert_eq!(lex.betti, oracle);
    }

    #[test]
    fn searched_certificate_agrees_with_forest_certificate() {
        let g = path_graph(5).unwrap();
        let k = independence_complex(&g);
        let searched = is_s_vertex_decomposable(&k).unwrap();
        let forest = forest_certificate(&g).unwrap();
        let atoms = per_vertex_atoms(&k);
        let assignment: AtomAssignment = atoms
            .values()
            .enumerate()
            .map(|(i, a)| {
                (
                    a.clone(),
                    BettiVector::sphere_wedge((i % 3) as u32, (i % 2) as i64),
                )
            })
            .collect();
        let a = normalize(&decompose(&k, &searched, &atoms).unwrap())
            .betti(&assignment)
            .unwrap();
        let b = normalize(&decompose(&k, &forest, &atoms).unwrap())
            .betti(&assignment)
            .unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn naive_formula_agrees_at_a_shedding_vertex() {
        let g = path_graph(4).unwrap();
        let k = independence_complex(&g);
        let s0 = SimplicialComplex::from_facets([1, 2], [vec![1], vec![2]]).unwrap();
        let assignment = constant_assignment(&k, &s0);
        // 3 sheds (witness 4) in I(L_4)
        let naive = naive_splitting_betti(&k, 3, &assignment).unwrap();
        let oracle = reduced_homology(&polyhedral_join_realize(&k, &assignment).unwrap()).unwrap();
        assert_eq!(naive, oracle);
    }
}
