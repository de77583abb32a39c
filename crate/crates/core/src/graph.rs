//! Finite simple undirected graphs and the constructions used on them.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write as _;

use rand::Rng;
use thiserror::Error;

use crate::format::ParseError;

/// Vertex label. Files use 1-based labels.
pub type Vertex = u32;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GraphError {
    #[error("path graph needs at least one vertex")]
    EmptyPath,
    #[error("cycle graph needs at least three vertices, got {0}")]
    ShortCycle(usize),
    #[error("loop at vertex {0}")]
    Loop(Vertex),
    #[error("edge {0}-{1} uses a vertex outside the vertex set")]
    DanglingEdge(Vertex, Vertex),
    #[error("duplicate vertex label {0}")]
    DuplicateVertex(Vertex),
    #[error("unknown vertex {0}")]
    UnknownVertex(Vertex),
    #[error("graph is not a forest")]
    NotForest,
}

/// A finite simple graph. Vertices are kept sorted; each edge is stored once
/// as `(min, max)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Graph {
    vertices: Vec<Vertex>,
    edges: BTreeSet<(Vertex, Vertex)>,
}

impl Graph {
    pub fn new(
        vertices: impl IntoIterator<Item = Vertex>,
        edges: impl IntoIterator<Item = (Vertex, Vertex)>,
    ) -> Result<Self, GraphError> {
        let mut vs: Vec<Vertex> = vertices.into_iter().collect();
        vs.sort_unstable();
        for w in vs.windows(2) {
            if w[0] == w[1] {
                return Err(GraphError::DuplicateVertex(w[0]));
            }
        }
        let mut es = BTreeSet::new();
        for (a, b) in edges {
            if a == b {
                return Err(GraphError::Loop(a));
            }
            if vs.binary_search(&a).is_err() || vs.binary_search(&b).is_err() {
                return Err(GraphError::DanglingEdge(a, b));
            }
            es.insert((a.min(b), a.max(b)));
        }
        Ok(Graph {
            vertices: vs,
            edges: es,
        })
    }

    /// `n` isolated vertices labelled `1..=n`.
    pub fn edgeless(n: usize) -> Self {
        Graph {
            vertices: (1..=n as Vertex).collect(),
            edges: BTreeSet::new(),
        }
    }

    pub fn vertices(&self) -> &[Vertex] {
        &self.vertices
    }

    pub fn edges(&self) -> impl Iterator<Item = (Vertex, Vertex)> + '_ {
        self.edges.iter().copied()
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn contains(&self, v: Vertex) -> bool {
        self.vertices.binary_search(&v).is_ok()
    }

    pub fn has_edge(&self, a: Vertex, b: Vertex) -> bool {
        self.edges.contains(&(a.min(b), a.max(b)))
    }

    /// Position of `v` in the sorted vertex list.
    pub fn rank(&self, v: Vertex) -> Option<usize> {
        self.vertices.binary_search(&v).ok()
    }

    pub fn adjacency_lists(&self) -> BTreeMap<Vertex, Vec<Vertex>> {
        let mut adj: BTreeMap<Vertex, Vec<Vertex>> =
            self.vertices.iter().map(|&v| (v, Vec::new())).collect();
        for &(a, b) in &self.edges {
            adj.get_mut(&a).unwrap().push(b);
            adj.get_mut(&b).unwrap().push(a);
        }
        for list in adj.values_mut() {
            list.sort_unstable();
        }
        adj
    }

    pub fn degree(&self, v: Vertex) -> usize {
        self.edges
            .iter()
            .filter(|&&(a, b)| a == v || b == v)
            .count()
    }

    pub fn open_neighborhood(&self, v: Vertex) -> Result<BTreeSet<Vertex>, GraphError> {
        if !self.contains(v) {
            return Err(GraphError::UnknownVertex(v));
        }
        Ok(self
            .edges
            .iter()
            .filter_map(|&(a, b)| {
                if a == v {
                    Some(b)
                } else if b == v {
                    Some(a)
                } else {
                    None
                }
            })
            .collect())
    }

    pub fn closed_neighborhood(&self, v: Vertex) -> Result<BTreeSet<Vertex>, GraphError> {
        let mut n = self.open_neighborhood(v)?;
        n.insert(v);
        Ok(n)
    }

    /// Full subgraph on `keep`.
    pub fn induced_subgraph(&self, keep: &BTreeSet<Vertex>) -> Result<Graph, GraphError> {
        if let Some(&bad) = keep.iter().find(|v| !self.contains(**v)) {
            return Err(GraphError::UnknownVertex(bad));
        }
        Ok(Graph {
            vertices: keep.iter().copied().collect(),
            edges: self
                .edges
                .iter()
                .filter(|(a, b)| keep.contains(a) && keep.contains(b))
                .copied()
                .collect(),
        })
    }

    /// `G \ U`: the full subgraph on the vertices outside `remove`.
    pub fn remove_vertices(&self, remove: &BTreeSet<Vertex>) -> Graph {
        Graph {
            vertices: self
                .vertices
                .iter()
                .filter(|v| !remove.contains(v))
                .copied()
                .collect(),
            edges: self
                .edges
                .iter()
                .filter(|(a, b)| !remove.contains(a) && !remove.contains(b))
                .copied()
                .collect(),
        }
    }

    /// Degree-one vertices in label order.
    pub fn leaves(&self) -> Vec<Vertex> {
        let mut deg: BTreeMap<Vertex, usize> = self.vertices.iter().map(|&v| (v, 0)).collect();
        for &(a, b) in &self.edges {
            *deg.get_mut(&a).unwrap() += 1;
            *deg.get_mut(&b).unwrap() += 1;
        }
        deg.into_iter()
            .filter(|&(_, d)| d == 1)
            .map(|(v, _)| v)
            .collect()
    }

    /// Acyclicity via union-find. For simple graphs this is the same as having
    /// no induced cycle, since a shortest cycle is always induced.
    pub fn is_forest(&self) -> bool {
        let mut parent: Vec<usize> = (0..self.vertex_count()).collect();
        fn find(parent: &mut [usize], mut x: usize) -> usize {
            while parent[x] != x {
                parent[x] = parent[parent[x]];
                x = parent[x];
            }
            x
        }
        for &(a, b) in &self.edges {
            let (ra, rb) = (
                find(&mut parent, self.rank(a).unwrap()),
                find(&mut parent, self.rank(b).unwrap()),
            );
            if ra == rb {
                return false;
            }
            parent[ra] = rb;
        }
        true
    }

    pub fn is_connected(&self) -> bool {
        self.components().len() <= 1
    }

    /// Vertex sets of the connected components, each sorted, ordered by
    /// smallest vertex.
    pub fn components(&self) -> Vec<Vec<Vertex>> {
        let adj = self.adjacency_lists();
        let mut seen = BTreeSet::new();
        let mut out = Vec::new();
        for &s in &self.vertices {
            if !seen.insert(s) {
                continue;
            }
            let mut comp = vec![s];
            let mut stack = vec![s];
            while let Some(x) = stack.pop() {
                for &y in &adj[&x] {
                    if seen.insert(y) {
                        comp.push(y);
                        stack.push(y);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    /// Relabel vertices to `1..=n` preserving order.
    pub fn normalized(&self) -> Graph {
        let map = |v: Vertex| self.rank(v).unwrap() as Vertex + 1;
        Graph {
            vertices: (1..=self.vertex_count() as Vertex).collect(),
            edges: self.edges.iter().map(|&(a, b)| (map(a), map(b))).collect(),
        }
    }

    /// True when the graph is isomorphic to a path `L_m` (connected, every
    /// degree at most two, acyclic).
    pub fn is_path_like(&self) -> bool {
        if self.vertex_count() == 0 || !self.is_forest() || !self.is_connected() {
            return false;
        }
        self.vertices.iter().all(|&v| self.degree(v) <= 2)
    }

    /// Canonical string for a forest, invariant under relabeling. Built from
    /// AHU encodings of each component rooted at its center.
    pub fn forest_canonical_form(&self) -> Result<String, GraphError> {
        if !self.is_forest() {
            return Err(GraphError::NotForest);
        }
        let adj = self.adjacency_lists();
        let mut codes: Vec<String> = self
            .components()
            .iter()
            .map(|comp| {
                centers(comp, &adj)
                    .into_iter()
                    .map(|c| ahu(c, None, &adj))
                    .min()
                    .unwrap()
            })
            .collect();
        codes.sort();
        Ok(codes.concat())
    }
}

fn centers(comp: &[Vertex], adj: &BTreeMap<Vertex, Vec<Vertex>>) -> Vec<Vertex> {
    let mut deg: BTreeMap<Vertex, usize> = comp.iter().map(|&v| (v, adj[&v].len())).collect();
    let mut layer: Vec<Vertex> = comp.iter().copied().filter(|v| deg[v] <= 1).collect();
    let mut remaining = comp.len();
    while remaining > 2 {
        remaining -= layer.len();
        let mut next = Vec::new();
        for &leaf in &layer {
            for &u in &adj[&leaf] {
                let d = deg.get_mut(&u).unwrap();
                if *d > 0 {
                    *d -= 1;
                    if *d == 1 {
                        next.push(u);
                    }
                }
            }
            *deg.get_mut(&leaf).unwrap() = 0;
        }
        layer = next;
    }
    layer.sort_unstable();
    layer
}

fn ahu(v: Vertex, parent: Option<Vertex>, adj: &BTreeMap<Vertex, Vec<Vertex>>) -> String {
    let mut kids: Vec<String> = adj[&v]
        .iter()
        .filter(|&&u| Some(u) != parent)
        .map(|&u| ahu(u, Some(v), adj))
        .collect();
    kids.sort();
    format!("({})", kids.concat())
}

/// `L_n` on `1..=n`.
pub fn path_graph(n: usize) -> Result<Graph, GraphError> {
    if n == 0 {
        return Err(GraphError::EmptyPath);
    }
    let edges = (1..n as Vertex).map(|i| (i, i + 1));
    Graph::new(1..=n as Vertex, edges)
}

/// `C_n` on `1..=n`.
pub fn cycle_graph(n: usize) -> Result<Graph, GraphError> {
    if n < 3 {
        return Err(GraphError::ShortCycle(n));
    }
    let edges = (1..n as Vertex)
        .map(|i| (i, i + 1))
        .chain(std::iter::once((n as Vertex, 1)));
    Graph::new(1..=n as Vertex, edges)
}

/// `K_n` on `1..=n`.
pub fn complete_graph(n: usize) -> Graph {
    let n = n as Vertex;
    let edges = (1..=n).flat_map(|a| (a + 1..=n).map(move |b| (a, b)));
    Graph::new(1..=n, edges).expect("complete graph is simple")
}

/// The star `K_{1,leaves}`: center 1 joined to `2..=leaves+1`.
pub fn star_graph(leaves: usize) -> Graph {
    let n = leaves as Vertex + 1;
    Graph::new(1..=n, (2..=n).map(|b| (1, b))).expect("star graph is simple")
}

/// Lexicographic product `G[H]`. The vertex `(u, h)` gets label
/// `rank(u) * |V(H)| + rank(h) + 1`, which is its position in the
/// lexicographic order of pairs.
pub fn lexicographic_product(g: &Graph, h: &Graph) -> Graph {
    let nh = h.vertex_count() as Vertex;
    let label = |iu: usize, ih: usize| iu as Vertex * nh + ih as Vertex + 1;
    let vertices = (1..=g.vertex_count() as Vertex * nh).collect();
    let mut edges = BTreeSet::new();
    for &(a, b) in &g.edges {
        let (ia, ib) = (g.rank(a).unwrap(), g.rank(b).unwrap());
        for x in 0..h.vertex_count() {
            for y in 0..h.vertex_count() {
                let (p, q) = (label(ia, x), label(ib, y));
                edges.insert((p.min(q), p.max(q)));
            }
        }
    }
    for iu in 0..g.vertex_count() {
        for &(x, y) in &h.edges {
            let (p, q) = (label(iu, h.rank(x).unwrap()), label(iu, h.rank(y).unwrap()));
            edges.insert((p.min(q), p.max(q)));
        }
    }
    Graph { vertices, edges }
}

/// Decode a Prüfer sequence over `0..n` into the edges of a labeled tree on
/// `1..=n`.
pub fn prufer_to_tree(n: usize, seq: &[usize]) -> Graph {
    assert!(n >= 1);
    if n == 1 {
        return Graph::edgeless(1);
    }
    assert_eq!(seq.len(), n - 2);
    let mut degree = vec![1usize; n];
    for &s in seq {
        degree[s] += 1;
    }
    let mut edges = Vec::with_capacity(n - 1);
    // smallest current leaf, tracked with a moving pointer
    let mut ptr = degree.iter().position(|&d| d == 1).unwrap();
    let mut leaf = ptr;
    for &s in seq {
        edges.push((leaf as Vertex + 1, s as Vertex + 1));
        degree[s] -= 1;
        if s < ptr && degree[s] == 1 {
            leaf = s;
        } else {
            ptr += 1;
            while degree[ptr] != 1 {
                ptr += 1;
            }
            leaf = ptr;
        }
    }
    edges.push((leaf as Vertex + 1, n as Vertex));
    Graph::new(1..=n as Vertex, edges).expect("Prüfer decoding yields a simple graph")
}

/// Every labeled tree on `1..=n`, one per Prüfer sequence, in lexicographic
/// order of the sequence.
pub fn enumerate_trees(n: usize) -> impl Iterator<Item = Graph> {
    assert!(n >= 1, "trees need at least one vertex");
    let len = n.saturating_sub(2);
    let total = if n <= 2 { 1 } else { n.pow(len as u32) };
    (0..total).map(move |mut idx| {
        let mut seq = vec![0usize; len];
        for slot in seq.iter_mut().rev() {
            *slot = idx % n;
            idx /= n;
        }
        prufer_to_tree(n, &seq)
    })
}

/// Uniformly random labeled tree on `1..=n`.
pub fn random_tree<R: Rng>(n: usize, rng: &mut R) -> Graph {
    assert!(n >= 1);
    let seq: Vec<usize> = (0..n.saturating_sub(2))
        .map(|_| rng.gen_range(0..n))
        .collect();
    prufer_to_tree(n, &seq)
}

/// Text form: `n m`, then `m` lines `u v`. Labels are renumbered to
/// `1..=n` by rank; edges are written sorted.
pub fn write_graph(g: &Graph) -> String {
    let g = g.normalized();
    let mut out = format!("{} {}\n", g.vertex_count(), g.edge_count());
    for (a, b) in g.edges() {
        writeln!(out, "{a} {b}").unwrap();
    }
    out
}

pub fn parse_graph(text: &str) -> Result<Graph, ParseError> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l))
        .filter(|(_, l)| {
            let t = l.trim();
            !t.is_empty() && !t.starts_with('#')
        });
    let (hline, header) = lines
        .next()
        .ok_or_else(|| ParseError::new(1, 1, "missing `n m` header"))?;
    let nums = parse_uints(hline, header)?;
    if nums.len() != 2 {
        return Err(ParseError::new(hline, 1, "header must be `n m`"));
    }
    let (n, m) = (nums[0], nums[1]);
    let mut edges = Vec::new();
    for (lineno, line) in lines {
        let pair = parse_uints(lineno, line)?;
        if pair.len() != 2 {
            return Err(ParseError::new(lineno, 1, "edge line must be `u v`"));
        }
        for (k, &x) in pair.iter().enumerate() {
            if x == 0 || x > n {
                let col = column_of_token(line, k);
                return Err(ParseError::new(
                    lineno,
                    col,
                    format!("vertex {x} outside 1..={n}"),
                ));
            }
        }
        if pair[0] == pair[1] {
            return Err(ParseError::new(lineno, 1, "loop edge"));
        }
        edges.push((pair[0] as Vertex, pair[1] as Vertex));
    }
    if edges.len() as u64 != m {
        return Err(ParseError::new(
            hline,
            1,
            format!("header announces {m} edges, found {}", edges.len()),
        ));
    }
    let g = Graph::new(1..=n as Vertex, edges.iter().copied())
        .map_err(|e| ParseError::new(hline, 1, e.to_string()))?;
    if g.edge_count() != edges.len() {
        return Err(ParseError::new(hline, 1, "duplicate edge"));
    }
    Ok(g)
}

pub(crate) fn parse_uints(lineno: usize, line: &str) -> Result<Vec<u64>, ParseError> {
    let mut out = Vec::new();
    let mut offset = 0;
    for tok in line.split_whitespace() {
        let col = line[offset..].find(tok).unwrap() + offset + 1;
        offset = col - 1 + tok.len();
        let v = tok.parse::<u64>().map_err(|_| {
            ParseError::new(lineno, col, format!("expected an integer, got `{tok}`"))
        })?;
        out.push(v);
    }
    Ok(out)
}

fn column_of_token(line: &str, k: usize) -> usize {
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

/// JSON form: `{"vertices": n, "edges": [[u, v], …]}`, renumbered like
/// [`write_graph`].
pub fn graph_to_json(g: &Graph) -> serde_json::Value {
    let g = g.normalized();
    let edges: Vec<[Vertex; 2]> = g.edges().map(|(a, b)| [a, b]).collect();
    serde_json::json!({"vertices": g.vertex_count(), "edges": edges})
}

#[derive(serde::Deserialize)]
#[serde(deny_unknown_fields)]
struct GraphJson {
    vertices: u64,
    edges: Vec<[u64; 2]>,
}

pub fn graph_from_json(text: &str) -> Result<Graph, ParseError> {
    let raw: GraphJson = serde_json::from_str(text).map_err(|e| ParseError::from_json(&e))?;
    let n = raw.vertices;
    let mut body = format!("{} {}\n", n, raw.edges.len());
    for [a, b] in &raw.edges {
        writeln!(body, "{a} {b}").unwrap();
    }
    // positions below refer to the whole document
    parse_graph(&body).map_err(|e| ParseError::new(1, 1, e.message))
}
