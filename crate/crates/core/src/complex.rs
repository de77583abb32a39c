//! Facet-based simplicial complexes.
//!
//! A complex stores its sorted vertex labels and its facets as bitsets over
//! positions in that vertex list. The vertex list is always exactly the union
//! of the facets. The empty complex `{∅}` has no vertices and the single empty
//! facet; there is no separate "void" complex.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt::Write as _;

use rustc_hash::FxHashSet;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::format::ParseError;
use crate::graph::{Graph, Vertex};
use crate::vset::VSet;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ComplexError {
    #[error("facet uses vertex {0}, which is not in the vertex set")]
    UnknownFacetVertex(Vertex),
    #[error("vertex {0} lies in no facet")]
    UnusedVertex(Vertex),
    #[error("unknown vertex {0}")]
    UnknownVertex(Vertex),
    #[error("no complex assigned to vertex {0}")]
    MissingAssignment(Vertex),
    #[error("relative part at vertex {0} is not a subcomplex")]
    NotSubcomplex(Vertex),
    #[error("complex has more than {limit} faces")]
    TooManyFaces { limit: usize },
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SimplicialComplex {
    vertices: Vec<Vertex>,
    facets: Vec<VSet>,
}

impl SimplicialComplex {
    /// The complex `{∅}`.
    pub fn empty() -> Self {
        SimplicialComplex {
            vertices: Vec::new(),
            facets: vec![VSet::new()],
        }
    }

    /// The full simplex on the given labels (`{∅}` when there are none).
    pub fn simplex(labels: impl IntoIterator<Item = Vertex>) -> Self {
        let mut vertices: Vec<Vertex> = labels.into_iter().collect();
        vertices.sort_unstable();
        vertices.dedup();
        let facet = VSet::full(vertices.len());
        SimplicialComplex {
            vertices,
            facets: vec![facet],
        }
    }

    /// `⟨F_1, …, F_t⟩` on `vertices`. Facets are reduced to an antichain; a
    /// vertex outside every facet is rejected.
    pub fn from_facets<F, I>(
        vertices: impl IntoIterator<Item = Vertex>,
        facets: F,
    ) -> Result<Self, ComplexError>
    where
        F: IntoIterator<Item = I>,
        I: IntoIterator<Item = Vertex>,
    {
        let mut vs: Vec<Vertex> = vertices.into_iter().collect();
        vs.sort_unstable();
        vs.dedup();
        let mut sets = Vec::new();
        let mut used = VSet::new();
        for f in facets {
            let mut s = VSet::new();
            for v in f {
                let i = vs
                    .binary_search(&v)
                    .map_err(|_| ComplexError::UnknownFacetVertex(v))?;
                s.insert(i);
            }
            used.union_with(&s);
            sets.push(s);
        }
        if let Some(i) = (0..vs.len()).find(|&i| !used.contains(i)) {
            return Err(ComplexError::UnusedVertex(vs[i]));
        }
        Ok(Self::build(vs, sets))
    }

    /// Build from index facets over `vertices`, pruning unused vertices,
    /// reducing to an antichain and sorting.
    pub(crate) fn build(vertices: Vec<Vertex>, facets: Vec<VSet>) -> Self {
        let facets = maximal_sets(facets);
        Self::from_antichain(vertices, facets)
    }

    /// Like [`build`](Self::build) for facet lists already known to be an
    /// antichain.
    pub(crate) fn from_antichain(vertices: Vec<Vertex>, mut facets: Vec<VSet>) -> Self {
        let mut used = VSet::new();
        for f in &facets {
            used.union_with(f);
        }
        if facets.is_empty() || used.is_empty() {
            return Self::empty();
        }
        let (vertices, facets) = if used.len() == vertices.len() {
            (vertices, std::mem::take(&mut facets))
        } else {
            let keep: Vec<usize> = used.iter().collect();
            let mut remap = vec![usize::MAX; vertices.len()];
            for (new, &old) in keep.iter().enumerate() {
                remap[old] = new;
            }
            let facets = facets
                .iter()
                .map(|f| f.iter().map(|i| remap[i]).collect())
                .collect();
            (keep.iter().map(|&i| vertices[i]).collect(), facets)
        };
        let mut facets = facets;
        facets.sort_unstable();
        let k = SimplicialComplex { vertices, facets };
        debug_assert!(k.facets.len() > 2000 || k.is_antichain());
        k
    }

    fn is_antichain(&self) -> bool {
        self.facets.iter().enumerate().all(|(i, a)| {
            self.facets
                .iter()
                .enumerate()
                .all(|(j, b)| i == j || !a.is_subset(b))
        })
    }

    pub fn vertices(&self) -> &[Vertex] {
        &self.vertices
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub(crate) fn facet_sets(&self) -> &[VSet] {
        &self.facets
    }

    pub fn facet_count(&self) -> usize {
        self.facets.len()
    }

    pub(crate) fn labels_of(&self, s: &VSet) -> Vec<Vertex> {
        s.iter().map(|i| self.vertices[i]).collect()
    }

    /// Facets as sorted label lists, in lexicographic order.
    pub fn facets(&self) -> Vec<Vec<Vertex>> {
        self.facets.iter().map(|f| self.labels_of(f)).collect()
    }

    pub fn index_of(&self, v: Vertex) -> Option<usize> {
        self.vertices.binary_search(&v).ok()
    }

    fn require(&self, v: Vertex) -> Result<usize, ComplexError> {
        self.index_of(v).ok_or(ComplexError::UnknownVertex(v))
    }

    /// True for `{∅}`.
    pub fn is_empty_complex(&self) -> bool {
        self.vertices.is_empty()
    }

    /// A single facet covering every vertex. `{∅}` does not count.
    pub fn is_simplex(&self) -> bool {
        !self.is_empty_complex() && self.facets.len() == 1
    }

    pub fn dimension(&self) -> isize {
        self.facets
            .iter()
            .map(|f| f.len() as isize)
            .max()
            .unwrap_or(0)
            - 1
    }

    pub fn contains_face(&self, labels: &[Vertex]) -> bool {
        let mut s = VSet::new();
        for &v in labels {
            match self.index_of(v) {
                Some(i) => s.insert(i),
                None => return false,
            }
        }
        self.facets.iter().any(|f| s.is_subset(f))
    }

    pub fn star(&self, v: Vertex) -> Result<Self, ComplexError> {
        Ok(self.star_at(self.require(v)?))
    }

    pub fn deletion(&self, v: Vertex) -> Result<Self, ComplexError> {
        Ok(self.deletion_at(self.require(v)?))
    }

    pub fn link(&self, v: Vertex) -> Result<Self, ComplexError> {
        Ok(self.link_at(self.require(v)?))
    }

    pub(crate) fn star_at(&self, i: usize) -> Self {
        let fs = self
            .facets
            .iter()
            .filter(|f| f.contains(i))
            .cloned()
            .collect();
        Self::from_antichain(self.vertices.clone(), fs)
    }

    pub(crate) fn deletion_at(&self, i: usize) -> Self {
        let fs = self.facets.iter().map(|f| f.without(i)).collect();
        Self::build(self.vertices.clone(), fs)
    }

    pub(crate) fn link_at(&self, i: usize) -> Self {
        let fs = self
            .facets
            .iter()
            .filter(|f| f.contains(i))
            .map(|f| f.without(i))
            .collect();
        Self::from_antichain(self.vertices.clone(), fs)
    }

    /// Rename vertices through `map`, which must be injective on the vertex
    /// set.
    pub fn relabel(&self, map: impl Fn(Vertex) -> Vertex) -> Self {
        let new: Vec<Vertex> = self.vertices.iter().map(|&v| map(v)).collect();
        let mut order: Vec<usize> = (0..new.len()).collect();
        order.sort_by_key(|&i| new[i]);
        let mut pos = vec![0; new.len()];
        for (p, &i) in order.iter().enumerate() {
            pos[i] = p;
        }
        let vertices: Vec<Vertex> = order.iter().map(|&i| new[i]).collect();
        assert!(
            vertices.windows(2).all(|w| w[0] < w[1]),
            "relabel must be injective"
        );
        let facets = self
            .facets
            .iter()
            .map(|f| f.iter().map(|i| pos[i]).collect())
            .collect();
        Self::from_antichain(vertices, facets)
    }

    /// Relabel to `offset + 1 ..= offset + n` by rank.
    pub fn shifted(&self, offset: Vertex) -> Self {
        SimplicialComplex {
            vertices: (1..=self.vertices.len() as Vertex)
                .map(|r| r + offset)
                .collect(),
            facets: self.facets.clone(),
        }
    }

    /// Union of two complexes over a common labeling.
    pub fn union(&self, other: &Self) -> Self {
        let labels: BTreeSet<Vertex> = self
            .vertices
            .iter()
            .chain(&other.vertices)
            .copied()
            .collect();
        let vertices: Vec<Vertex> = labels.into_iter().collect();
        let lift = |k: &Self, f: &VSet| -> VSet {
            f.iter()
                .map(|i| vertices.binary_search(&k.vertices[i]).unwrap())
                .collect()
        };
        let facets = self
            .facets
            .iter()
            .map(|f| lift(self, f))
            .chain(other.facets.iter().map(|f| lift(other, f)))
            .collect();
        Self::build(vertices, facets)
    }

    /// Faces common to both complexes.
    pub fn intersection(&self, other: &Self) -> Self {
        let labels: BTreeSet<Vertex> = self
            .vertices
            .iter()
            .chain(&other.vertices)
            .copied()
            .collect();
        let vertices: Vec<Vertex> = labels.into_iter().collect();
        let lift = |k: &Self, f: &VSet| -> VSet {
            f.iter()
                .map(|i| vertices.binary_search(&k.vertices[i]).unwrap())
                .collect()
        };
        let mine: Vec<VSet> = self.facets.iter().map(|f| lift(self, f)).collect();
        let theirs: Vec<VSet> = other.facets.iter().map(|f| lift(other, f)).collect();
        let mut facets = Vec::new();
        for a in &mine {
            for b in &theirs {
                facets.push(a.intersection(b));
            }
        }
        Self::build(vertices, facets)
    }

    /// Path components of the realization, ordered by smallest vertex. `{∅}`
    /// has none.
    pub fn connected_components(&self) -> Vec<Self> {
        let n = self.vertices.len();
        let mut parent: Vec<usize> = (0..n).collect();
        fn find(p: &mut [usize], mut x: usize) -> usize {
            while p[x] != x {
                p[x] = p[p[x]];
                x = p[x];
            }
            x
        }
        for f in &self.facets {
            let mut it = f.iter();
            if let Some(first) = it.next() {
                for other in it {
                    let (a, b) = (find(&mut parent, first), find(&mut parent, other));
                    if a != b {
                        parent[a] = b;
                    }
                }
            }
        }
        let mut groups: BTreeMap<usize, Vec<VSet>> = BTreeMap::new();
        let mut first_vertex: BTreeMap<usize, usize> = BTreeMap::new();
        for f in &self.facets {
            if let Some(i) = f.iter().next() {
                let root = find(&mut parent, i);
                groups.entry(root).or_default().push(f.clone());
                let e = first_vertex.entry(root).or_insert(i);
                *e = (*e).min(i);
            }
        }
        let mut comps: Vec<(usize, Self)> = groups
            .into_iter()
            .map(|(root, fs)| {
                (
                    first_vertex[&root],
                    Self::from_antichain(self.vertices.clone(), fs),
                )
            })
            .collect();
        comps.sort_by_key(|c| c.0);
        comps.into_iter().map(|c| c.1).collect()
    }

    pub fn is_connected(&self) -> bool {
        self.connected_components().len() <= 1
    }

    /// Every face, including the empty one, grouped by dimension `-1, 0, 1, …`
    /// and sorted lexicographically within each dimension.
    pub fn faces_by_dimension(&self, limit: Option<usize>) -> Result<Vec<Vec<VSet>>, ComplexError> {
        let mut seen: FxHashSet<VSet> = FxHashSet::default();
        let mut stack: Vec<VSet> = Vec::new();
        for f in &self.facets {
            stack.push(f.clone());
            while let Some(s) = stack.pop() {
                if !seen.insert(s.clone()) {
                    continue;
                }
                if let Some(limit) = limit {
                    if seen.len() > limit {
                        return Err(ComplexError::TooManyFaces { limit });
                    }
                }
                for i in s.iter() {
                    let t = s.without(i);
                    if !seen.contains(&t) {
                        stack.push(t);
                    }
                }
            }
        }
        let top = self.dimension();
        let mut out: Vec<Vec<VSet>> = vec![Vec::new(); (top + 2) as usize];
        for s in seen {
            out[s.len()].push(s);
        }
        for layer in &mut out {
            layer.sort_unstable();
        }
        Ok(out)
    }

    /// All faces as sorted label lists (test and inspection helper).
    pub fn faces(&self) -> Vec<Vec<Vertex>> {
        self.faces_by_dimension(None)
            .unwrap()
            .into_iter()
            .flatten()
            .map(|s| self.labels_of(&s))
            .collect()
    }

    /// `f_{-1}, f_0, f_1, …` with `f_{-1} = 1`.
    pub fn f_vector(&self) -> Vec<u64> {
        self.faces_by_dimension(None)
            .unwrap()
            .iter()
            .map(|l| l.len() as u64)
            .collect()
    }

    /// Canonical encoding used for memoisation: vertices renamed in order of
    /// first occurrence while reading the sorted facets, then the facets
    /// re-sorted. Returns the encoding and, for each new index, the old
    /// vertex position.
    pub(crate) fn first_occurrence_encoding(&self) -> (Vec<VSet>, Vec<usize>) {
        let mut rename = vec![usize::MAX; self.vertices.len()];
        let mut back = Vec::with_capacity(self.vertices.len());
        for f in &self.facets {
            for i in f.iter() {
                if rename[i] == usize::MAX {
                    rename[i] = back.len();
                    back.push(i);
                }
            }
        }
        let mut enc: Vec<VSet> = self
            .facets
            .iter()
            .map(|f| f.iter().map(|i| rename[i]).collect())
            .collect();
        enc.sort_unstable();
        (enc, back)
    }
}

/// Keep only the inclusion-maximal sets, deduplicated.
pub(crate) fn maximal_sets(mut sets: Vec<VSet>) -> Vec<VSet> {
    sets.sort_unstable_by(|a, b| b.len().cmp(&a.len()).then_with(|| a.cmp(b)));
    sets.dedup();
    let mut kept: Vec<VSet> = Vec::with_capacity(sets.len());
    for s in sets {
        if !kept.iter().any(|k| s.is_subset(k)) {
            kept.push(s);
        }
    }
    kept
}

/// `I(G)`: facets are the maximal independent sets, found by Bron–Kerbosch
/// with pivoting on the complement graph.
pub fn independence_complex(g: &Graph) -> SimplicialComplex {
    let n = g.vertex_count();
    if n == 0 {
        return SimplicialComplex::empty();
    }
    let mut adj = vec![VSet::new(); n];
    for (a, b) in g.edges() {
        let (i, j) = (g.rank(a).unwrap(), g.rank(b).unwrap());
        adj[i].insert(j);
        adj[j].insert(i);
    }
    // non-neighbours (excluding self) in G are the neighbours in the complement
    let all = VSet::full(n);
    let co: Vec<VSet> = (0..n).map(|i| all.difference(&adj[i]).without(i)).collect();
    let mut out = Vec::new();
    bron_kerbosch(&co, VSet::new(), all, VSet::new(), &mut out);
    SimplicialComplex::from_antichain(g.vertices().to_vec(), out)
}

fn bron_kerbosch(nbr: &[VSet], r: VSet, p: VSet, x: VSet, out: &mut Vec<VSet>) {
    if p.is_empty() {
        if x.is_empty() {
            out.push(r);
        }
        return;
    }
    let pivot = p
        .union(&x)
        .iter()
        .max_by_key(|&u| nbr[u].intersection(&p).len())
        .unwrap();
    let mut p = p;
    let mut x = x;
    for v in p.difference(&nbr[pivot]).iter().collect::<Vec<_>>() {
        let mut r2 = r.clone();
        r2.insert(v);
        bron_kerbosch(
            nbr,
            r2,
            p.intersection(&nbr[v]),
            x.intersection(&nbr[v]),
            out,
        );
        p.remove(v);
        x.insert(v);
    }
}

/// Join of complexes. Part `p` vertex with rank `r` becomes
/// `offset(p) + r + 1`, where `offset(p)` is the total vertex count of the
/// earlier parts.
pub fn join(parts: &[&SimplicialComplex]) -> SimplicialComplex {
    let mut vertices = Vec::new();
    let mut facets = vec![VSet::new()];
    let mut offset = 0usize;
    for k in parts {
        let shifted: Vec<VSet> = k
            .facets
            .iter()
            .map(|f| f.iter().map(|i| i + offset).collect())
            .collect();
        facets = facets
            .iter()
            .flat_map(|a| shifted.iter().map(move |b| a.union(b)))
            .collect();
        vertices.extend((0..k.vertex_count()).map(|r| (offset + r + 1) as Vertex));
        offset += k.vertex_count();
    }
    SimplicialComplex::from_antichain(vertices, facets)
}

pub fn join2(a: &SimplicialComplex, b: &SimplicialComplex) -> SimplicialComplex {
    join(&[a, b])
}

/// Label offsets for a polyhedral join: vertex `i` of `K` (in order) gets the
/// block `offset_i + 1 ..= offset_i + |V(X_i)|`.
fn block_offsets(
    k: &SimplicialComplex,
    sizes: impl Fn(Vertex) -> Result<usize, ComplexError>,
) -> Result<Vec<usize>, ComplexError> {
    let mut offsets = Vec::with_capacity(k.vertex_count());
    let mut acc = 0;
    for &v in k.vertices() {
        offsets.push(acc);
        acc += sizes(v)?;
    }
    Ok(offsets)
}

/// `Z*_K(X, ∅)` realised as a simplicial complex, computed on facets: the
/// maximal sets among `⋃_{i∈σ} F_i` for `σ` a facet of `K` and `F_i` a facet
/// of `X_i`. The copy of `X_i` sits on labels `offset_i + rank + 1`, with
/// offsets accumulated over the vertices of `K` in order.
pub fn polyhedral_join_realize(
    k: &SimplicialComplex,
    assignment: &BTreeMap<Vertex, SimplicialComplex>,
) -> Result<SimplicialComplex, ComplexError> {
    let get = |v: Vertex| assignment.get(&v).ok_or(ComplexError::MissingAssignment(v));
    let offsets = block_offsets(k, |v| Ok(get(v)?.vertex_count()))?;
    let total = offsets.last().map_or(0, |&o| {
        o + get(*k.vertices().last().unwrap()).unwrap().vertex_count()
    });
    let blocks: Vec<Vec<VSet>> = k
        .vertices()
        .iter()
        .zip(&offsets)
        .map(|(&v, &off)| {
            get(v).map(|x| {
                x.facets
                    .iter()
                    .map(|f| f.iter().map(|i| i + off).collect())
                    .collect()
            })
        })
        .collect::<Result<_, _>>()?;
    let any_empty_part = k
        .vertices()
        .iter()
        .any(|&v| assignment[&v].is_empty_complex());
    let mut facets = Vec::new();
    for sigma in &k.facets {
        let mut acc = vec![VSet::new()];
        for i in sigma.iter() {
            acc = acc
                .iter()
                .flat_map(|a| blocks[i].iter().map(move |b| a.union(b)))
                .collect();
        }
        facets.extend(acc);
    }
    let vertices = (1..=total as Vertex).collect();
    // with every X_i non-empty, distinct choices are already incomparable
    Ok(if any_empty_part {
        SimplicialComplex::build(vertices, facets)
    } else {
        SimplicialComplex::from_antichain(vertices, facets)
    })
}

/// `Z*_K(X, A)` with a relative part, ground set `V(K)`. Each pair is
/// `(X_i, A_i)` with `A_i` a subcomplex of `X_i` on `X_i`'s labels.
pub fn polyhedral_join_realize_relative(
    k: &SimplicialComplex,
    pairs: &BTreeMap<Vertex, (SimplicialComplex, SimplicialComplex)>,
) -> Result<SimplicialComplex, ComplexError> {
    let get = |v: Vertex| pairs.get(&v).ok_or(ComplexError::MissingAssignment(v));
    let offsets = block_offsets(k, |v| Ok(get(v)?.0.vertex_count()))?;
    let mut total = 0;
    let mut xs = Vec::new();
    let mut as_ = Vec::new();
    for (&v, &off) in k.vertices().iter().zip(&offsets) {
        let (x, a) = get(v)?;
        if a.facets().iter().any(|f| !x.contains_face(f)) {
            return Err(ComplexError::NotSubcomplex(v));
        }
        let lift = |c: &SimplicialComplex| -> Vec<VSet> {
            c.facets
                .iter()
                .map(|f| {
                    f.iter()
                        .map(|i| x.index_of(c.vertices[i]).unwrap() + off)
                        .collect()
                })
                .collect()
        };
        xs.push(lift(x));
        as_.push(lift(a));
        total = off + x.vertex_count();
    }
    let mut facets = Vec::new();
    for sigma in &k.facets {
        let mut acc = vec![VSet::new()];
        for i in 0..k.vertex_count() {
            let block = if sigma.contains(i) { &xs[i] } else { &as_[i] };
            acc = acc
                .iter()
                .flat_map(|a| block.iter().map(move |b| a.union(b)))
                .collect();
        }
        facets.extend(acc);
    }
    Ok(SimplicialComplex::build(
        (1..=total as Vertex).collect(),
        facets,
    ))
}

/// Constant assignment `v ↦ x` for every vertex of `k`.
pub fn constant_assignment(
    k: &SimplicialComplex,
    x: &SimplicialComplex,
) -> BTreeMap<Vertex, SimplicialComplex> {
    k.vertices().iter().map(|&v| (v, x.clone())).collect()
}

/// Text form: one facet per line, `-` for `{∅}`.
pub fn write_complex(k: &SimplicialComplex) -> String {
    if k.is_empty_complex() {
        return "-\n".to_string();
    }
    let mut out = String::new();
    for f in k.facets() {
        let line: Vec<String> = f.iter().map(|v| v.to_string()).collect();
        writeln!(out, "{}", line.join(" ")).unwrap();
    }
    out
}

pub fn parse_complex(text: &str) -> Result<SimplicialComplex, ParseError> {
    let mut facets: Vec<Vec<Vertex>> = Vec::new();
    let mut labels = BTreeSet::new();
    for (i, line) in text.lines().enumerate() {
        let lineno = i + 1;
        let t = line.trim();
        if t.is_empty() || t.starts_with('#') {
            continue;
        }
        if t == "-" {
            facets.push(Vec::new());
            continue;
        }
        let nums = crate::graph::parse_uints(lineno, line)?;
        let mut f = Vec::with_capacity(nums.len());
        for (k, &x) in nums.iter().enumerate() {
            if x == 0 || x > Vertex::MAX as u64 {
                return Err(ParseError::new(
                    lineno,
                    token_column(line, k),
                    format!("label {x} out of range (labels are 1-based)"),
                ));
            }
            if f.contains(&(x as Vertex)) {
                return Err(ParseError::new(
                    lineno,
                    token_column(line, k),
                    format!("label {x} repeated in facet"),
                ));
            }
            f.push(x as Vertex);
            labels.insert(x as Vertex);
        }
        facets.push(f);
    }
    if facets.is_empty() {
        return Err(ParseError::new(
            1,
            1,
            "no facets (write `-` for the empty complex)",
        ));
    }
    Ok(SimplicialComplex::from_facets(labels, facets).expect("labels collected from facets"))
}

fn token_column(line: &str, k: usize) -> usize {
    let mut offset = 0;
    for (i, tok) in line.split_whitespace().enumerate() {
        let col = line[offset..].find(tok).unwrap() + offset;
        if i == k {
            return col + 1;
        }
        offset = col + tok.len();
    }
    1
}

#[derive(Serialize, Deserialize)]
struct ComplexJson {
    vertices: u64,
    facets: Vec<Vec<Vertex>>,
}

/// JSON form `{"vertices": n, "facets": [[...], ...]}`; `n` is the largest
/// label (labels live in `1..=n`).
pub fn complex_to_json(k: &SimplicialComplex) -> serde_json::Value {
    let n = k.vertices().last().copied().unwrap_or(0) as u64;
    let facets = if k.is_empty_complex() {
        vec![Vec::new()]
    } else {
        k.facets()
    };
    serde_json::to_value(ComplexJson {
        vertices: n,
        facets,
    })
    .unwrap()
}

pub fn complex_from_json(text: &str) -> Result<SimplicialComplex, ParseError> {
    let raw: ComplexJson = serde_json::from_str(text).map_err(|e| ParseError::from_json(&e))?;
    let mut labels = BTreeSet::new();
    for f in &raw.facets {
        for &v in f {
            if v == 0 || v as u64 > raw.vertices {
                return Err(ParseError::new(
                    1,
                    1,
                    format!("label {v} outside 1..={}", raw.vertices),
                ));
            }
            labels.insert(v);
        }
    }
    if raw.facets.is_empty() {
        return Err(ParseError::new(1, 1, "no facets"));
    }
    Ok(SimplicialComplex::from_facets(labels, raw.facets).expect("labels collected from facets"))
}

/// Faces of a complex as a set of sorted label lists, for brute-force
/// comparisons in tests.
pub fn face_set(k: &SimplicialComplex) -> BTreeSet<Vec<Vertex>> {
    k.faces().into_iter().collect()
}

/// Brute-force `I(G)`: every subset of `V(G)` checked for independence.
/// Exponential; meant as a test oracle.
pub fn independent_sets_brute_force(g: &Graph) -> BTreeSet<Vec<Vertex>> {
    let vs = g.vertices();
    let n = vs.len();
    assert!(n <= 20);
    let mut out = BTreeSet::new();
    for mask in 0u32..(1 << n) {
        let set: Vec<Vertex> = (0..n)
            .filter(|i| mask >> i & 1 == 1)
            .map(|i| vs[i])
            .collect();
        let ok = set
            .iter()
            .enumerate()
            .all(|(i, &a)| set[i + 1..].iter().all(|&b| !g.has_edge(a, b)));
        if ok {
            out.insert(set);
        }
    }
    out
}

/// Map from label to facet-index list, handy for debugging output.
pub fn vertex_facet_incidence(k: &SimplicialComplex) -> HashMap<Vertex, Vec<usize>> {
    let mut m: HashMap<Vertex, Vec<usize>> = HashMap::new();
    for (fi, f) in k.facets.iter().enumerate() {
        for i in f.iter() {
            m.entry(k.vertices[i]).or_default().push(fi);
        }
    }
    m
}
