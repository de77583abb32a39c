//! s-vertex-decomposability and vertex-decomposability.
//!
//! A shedding pair `(v, w)` of `K` satisfies `dl_K(v) = st_K(w)`. A
//! certificate records one such pair per recursion step together with
//! certificates for the deletion and the link.

use std::collections::{BTreeMap, HashMap};

use serde::{Deserialize, Serialize};

use crate::complex::{independence_complex, ComplexError, SimplicialComplex};
use crate::format::ParseError;
use crate::graph::{Graph, GraphError, Vertex};
use crate::vset::VSet;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Leaf {
    #[serde(rename = "SIMPLEX")]
    Simplex,
    #[serde(rename = "EMPTY")]
    Empty,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(untagged)]
pub enum SheddingCertificate {
    Leaf(Leaf),
    Node {
        v: Vertex,
        w: Vertex,
        del: Box<SheddingCertificate>,
        lk: Box<SheddingCertificate>,
    },
}

impl SheddingCertificate {
    pub fn node(v: Vertex, w: Vertex, del: Self, lk: Self) -> Self {
        SheddingCertificate::Node {
            v,
            w,
            del: Box::new(del),
            lk: Box::new(lk),
        }
    }

    /// Leaves and internal nodes together.
    pub fn node_count(&self) -> usize {
        match self {
            SheddingCertificate::Leaf(_) => 1,
            SheddingCertificate::Node { del, lk, .. } => 1 + del.node_count() + lk.node_count(),
        }
    }

    pub fn depth(&self) -> usize {
        match self {
            SheddingCertificate::Leaf(_) => 0,
            SheddingCertificate::Node { del, lk, .. } => 1 + del.depth().max(lk.depth()),
        }
    }

    pub fn relabel(&self, map: &impl Fn(Vertex) -> Vertex) -> Self {
        match self {
            SheddingCertificate::Leaf(l) => SheddingCertificate::Leaf(*l),
            SheddingCertificate::Node { v, w, del, lk } => {
                SheddingCertificate::node(map(*v), map(*w), del.relabel(map), lk.relabel(map))
            }
        }
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(self).unwrap()
    }

    pub fn from_json(text: &str) -> Result<Self, ParseError> {
        serde_json::from_str(text).map_err(|e| ParseError::from_json(&e))
    }
}

/// Whether `dl_K(v) = st_K(w)`. Always false for `v = w`.
pub fn check_shedding_pair(
    k: &SimplicialComplex,
    v: Vertex,
    w: Vertex,
) -> Result<bool, ComplexError> {
    let i = k.index_of(v).ok_or(ComplexError::UnknownVertex(v))?;
    let j = k.index_of(w).ok_or(ComplexError::UnknownVertex(w))?;
    Ok(i != j && k.deletion_at(i) == k.star_at(j))
}

/// Intersection of all facets.
fn common_vertices(k: &SimplicialComplex) -> VSet {
    let mut it = k.facet_sets().iter();
    let first = it.next().cloned().unwrap_or_default();
    it.fold(first, |acc, f| acc.intersection(f))
}

/// Memoised search for shedding certificates. Reusing one searcher across
/// many complexes shares the memo; certificates stay valid but may differ
/// from what a fresh search would return.
#[derive(Default)]
pub struct SvdSearcher {
    memo: HashMap<Vec<VSet>, Option<SheddingCertificate>>,
}

impl SvdSearcher {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn search(&mut self, k: &SimplicialComplex) -> Option<SheddingCertificate> {
        if k.is_empty_complex() {
            return Some(SheddingCertificate::Leaf(Leaf::Empty));
        }
        if k.is_simplex() {
            return Some(SheddingCertificate::Leaf(Leaf::Simplex));
        }
        let (key, back) = k.first_occurrence_encoding();
        // canonical index c stands for vertex label c + 1 in stored results
        let to_label = |c: Vertex| k.vertices()[back[c as usize - 1]];
        if let Some(hit) = self.memo.get(&key) {
            return hit.as_ref().map(|c| c.relabel(&to_label));
        }
        let found = self.search_fresh(k);
        let mut from_label: BTreeMap<Vertex, Vertex> = BTreeMap::new();
        for (c, &pos) in back.iter().enumerate() {
            from_label.insert(k.vertices()[pos], c as Vertex + 1);
        }
        let stored = found.as_ref().map(|c| c.relabel(&|v| from_label[&v]));
        self.memo.insert(key, stored);
        found
    }

    fn search_fresh(&mut self, k: &SimplicialComplex) -> Option<SheddingCertificate> {
        for i in 0..k.vertex_count() {
            let dl = k.deletion_at(i);
            // a witness lies in every facet of its star
            let candidates = common_vertices(&dl);
            let witness = candidates.iter().find_map(|c| {
                let w = dl.vertices()[c];
                let j = k.index_of(w).unwrap();
                (j != i && k.star_at(j) == dl).then_some(w)
            });
            let Some(w) = witness else { continue };
            // every witness for v yields the same children
            let Some(del) = self.search(&dl) else {
                continue;
            };
            let Some(lk) = self.search(&k.link_at(i)) else {
                continue;
            };
            return Some(SheddingCertificate::node(k.vertices()[i], w, del, lk));
        }
        None
    }
}

/// A certificate when `k` is s-vertex-decomposable. Pairs are tried with
/// `v` ascending in the outer loop and `w` ascending in the inner one.
pub fn is_s_vertex_decomposable(k: &SimplicialComplex) -> Option<SheddingCertificate> {
    SvdSearcher::new().search(k)
}

/// Certificate for `I(G)` of a forest, built by repeatedly shedding the
/// neighbour of the smallest leaf.
pub fn forest_certificate(g: &Graph) -> Result<SheddingCertificate, GraphError> {
    if !g.is_forest() {
        return Err(GraphError::NotForest);
    }
    Ok(forest_certificate_unchecked(g))
}

fn forest_certificate_unchecked(g: &Graph) -> SheddingCertificate {
    if g.vertex_count() == 0 {
        return SheddingCertificate::Leaf(Leaf::Empty);
    }
    if g.edge_count() == 0 {
        return SheddingCertificate::Leaf(Leaf::Simplex);
    }
    let leaf = g.leaves()[0];
    let v = *g.open_neighborhood(leaf).unwrap().iter().next().unwrap();
    let del = g.remove_vertices(&[v].into_iter().collect());
    let lk = g.remove_vertices(&g.closed_neighborhood(v).unwrap());
    SheddingCertificate::node(
        v,
        leaf,
        forest_certificate_unchecked(&del),
        forest_certificate_unchecked(&lk),
    )
}

/// Recheck every node condition and leaf tag.
pub fn validate_certificate(k: &SimplicialComplex, cert: &SheddingCertificate) -> bool {
    match cert {
        SheddingCertificate::Leaf(Leaf::Simplex) => k.is_simplex(),
        SheddingCertificate::Leaf(Leaf::Empty) => k.is_empty_complex(),
        SheddingCertificate::Node { v, w, del, lk } => {
            matches!(check_shedding_pair(k, *v, *w), Ok(true))
                && validate_certificate(&k.deletion(*v).unwrap(), del)
                && validate_certificate(&k.link(*v).unwrap(), lk)
        }
    }
}

/// Memoised Björner–Wachs vertex-decomposability test.
#[derive(Default)]
pub struct VdSearcher {
    memo: HashMap<Vec<VSet>, bool>,
}

impl VdSearcher {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn decide(&mut self, k: &SimplicialComplex) -> bool {
        if k.is_empty_complex() || k.is_simplex() {
            return true;
        }
        let (key, _) = k.first_occurrence_encoding();
        if let Some(&hit) = self.memo.get(&key) {
            return hit;
        }
        let result = (0..k.vertex_count()).any(|i| {
            let dl = k.deletion_at(i);
            let lk = k.link_at(i);
            // no facet of the link may be a facet of the deletion
            let dl_facets = dl.facets();
            let shedding = lk.facets().iter().all(|f| !dl_facets.contains(f));
            shedding && self.decide(&dl) && self.decide(&lk)
        });
        self.memo.insert(key, result);
        result
    }
}

pub fn is_vertex_decomposable(k: &SimplicialComplex) -> bool {
    VdSearcher::new().decide(k)
}

/// The three consequences of a shedding pair `(v, w)`: `lk(v) ⊆ lk(w)`,
/// `w` is not a vertex of `lk(v)`, and `lk(w) = dl(v) ∩ dl(w)`.
pub fn shedding_pair_consequences(
    k: &SimplicialComplex,
    v: Vertex,
    w: Vertex,
) -> Result<[bool; 3], ComplexError> {
    let lk_v = k.link(v)?;
    let lk_w = k.link(w)?;
    let inclusion = lk_v.facets().iter().all(|f| lk_w.contains_face(f));
    let avoids = lk_v.index_of(w).is_none();
    let meet = lk_w == k.deletion(v)?.intersection(&k.deletion(w)?);
    Ok([inclusion, avoids, meet])
}

/// Certificate for `I(G)` from the forest shortcut when `g` is a forest,
/// otherwise from the exhaustive search.
pub fn certificate_for_graph(g: &Graph) -> Option<SheddingCertificate> {
    if g.is_forest() {
        Some(forest_certificate_unchecked(g))
    } else {
        is_s_vertex_decomposable(&independence_complex(g))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{cycle_graph, enumerate_trees, path_graph};
    use std::collections::BTreeSet;

    fn cx(facets: &[&[Vertex]]) -> SimplicialComplex {
        let labels: BTreeSet<Vertex> = facets.iter().flat_map(|f| f.iter().copied()).collect();
        SimplicialComplex::from_facets(labels, facets.iter().map(|f| f.to_vec())).unwrap()
    }

    fn figure_two_graph() -> Graph {
        // triangle v=1, a=2, b=3 with pendant w=4 on v
        Graph::new(1..=4, [(1, 2), (1, 3), (2, 3), (1, 4)]).unwrap()
    }

    #[test]
    fn shedding_pairs() {
        let l3 = independence_complex(&path_graph(3).unwrap());
        assert!(check_shedding_pair(&l3, 2, 1).unwrap());
        assert!(!check_shedding_pair(&l3, 2, 2).unwrap());
        let d2 = SimplicialComplex::simplex(1..=3);
        for v in 1..=3 {
            for w in 1..=3 {
                assert!(!check_shedding_pair(&d2, v, w).unwrap());
            }
        }
        assert_eq!(
            check_shedding_pair(&l3, 9, 1),
            Err(ComplexError::UnknownVertex(9))
        );
    }

    #[test]
    fn search_examples() {
        assert_eq!(
            is_s_vertex_decomposable(&SimplicialComplex::empty()),
            Some(SheddingCertificate::Leaf(Leaf::Empty))
        );
        let boundary = cx(&[&[1, 2], &[2, 3], &[1, 3]]);
        assert_eq!(is_s_vertex_decomposable(&boundary), None);
        assert!(is_vertex_decomposable(&boundary));
        assert!(is_vertex_decomposable(&SimplicialComplex::simplex(1..=5)));

        let g = figure_two_graph();
        assert!(!g.is_forest());
        let k = independence_complex(&g);
        assert_eq!(k.facets(), vec![vec![1], vec![2, 4], vec![3, 4]]);
        let cert = is_s_vertex_decomposable(&k).unwrap();
        match &cert {
            SheddingCertificate::Node { v, w, .. } => assert_eq!((*v, *w), (1, 4)),
            _ => panic!("expected a node"),
        }
        assert!(validate_certificate(&k, &cert));
    }

    #[test]
    fn forest_certificates() {
        let l2 = forest_certificate(&path_graph(2).unwrap()).unwrap();
        assert_eq!(
            l2,
            SheddingCertificate::node(
                2,
                1,
                SheddingCertificate::Leaf(Leaf::Simplex),
                SheddingCertificate::Leaf(Leaf::Empty)
            )
        );
        assert_eq!(
            forest_certificate(&Graph::edgeless(5)).unwrap(),
            SheddingCertificate::Leaf(Leaf::Simplex)
        );
        let l4 = path_graph(4).unwrap();
        let c = forest_certificate(&l4).unwrap();
        assert_eq!(c.depth(), 2);
        assert!(validate_certificate(&independence_complex(&l4), &c));
        assert_eq!(
            forest_certificate(&cycle_graph(4).unwrap()),
            Err(GraphError::NotForest)
        );
        for n in 1..=6 {
            for t in enumerate_trees(n) {
                let c = forest_certificate(&t).unwrap();
                assert!(validate_certificate(&independence_complex(&t), &c));
            }
        }
    }

    #[test]
    fn forged_certificate_fails() {
        let c5 = independence_complex(&cycle_graph(5).unwrap());
        assert_eq!(is_s_vertex_decomposable(&c5), None);
        for v in 1..=5 {
            for w in 1..=5 {
                let forged = SheddingCertificate::node(
                    v,
                    w,
                    SheddingCertificate::Leaf(Leaf::Simplex),
                    SheddingCertificate::Leaf(Leaf::Simplex),
                );
                assert!(!validate_certificate(&c5, &forged));
            }
        }
        assert!(!validate_certificate(
            &c5,
            &SheddingCertificate::Leaf(Leaf::Simplex)
        ));
    }

    #[test]
    fn json_shape() {
        let c = forest_certificate(&path_graph(2).unwrap()).unwrap();
        let text = c.to_json().to_string();
        assert_eq!(text, r#"{"del":"SIMPLEX","lk":"EMPTY","v":2,"w":1}"#);
        assert_eq!(SheddingCertificate::from_json(&text).unwrap(), c);
        assert!(SheddingCertificate::from_json(r#"{"v":1}"#).is_err());
    }

    #[test]
    fn memo_hits_relabel() {
        // two isomorphic components force a memo hit on the second path
        let mut s = SvdSearcher::new();
        let a = independence_complex(&path_graph(4).unwrap());
        let b = a.relabel(|v| v + 10);
        let ca = s.search(&a).unwrap();
        let cb = s.search(&b).unwrap();
        assert!(validate_certificate(&a, &ca));
        assert!(validate_certificate(&b, &cb));
    }

    #[test]
    fn consequences_on_forest_pairs() {
        let k = independence_complex(&path_graph(5).unwrap());
        for v in 1..=5 {
            for w in 1..=5 {
                if check_shedding_pair(&k, v, w).unwrap() {
                    assert_eq!(shedding_pair_consequences(&k, v, w).unwrap(), [true; 3]);
                }
            }
        }
    }
}
