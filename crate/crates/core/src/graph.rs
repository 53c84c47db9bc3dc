//! Labeled undirected simple graphs and the structural queries the matching
//! algorithms rely on: degrees, articulation points, connected components,
//! edge subdivision and Erdős–Rényi sampling.

use std::collections::BTreeMap;
use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::GraphError;

/// Dense vertex index local to one graph.
pub type VertexId = usize;

/// Unordered vertex pair, stored with the smaller index first.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Edge(VertexId, VertexId);

impl Edge {
    pub fn new(u: VertexId, v: VertexId) -> Self {
        if u <= v {
            Edge(u, v)
        } else {
            Edge(v, u)
        }
    }

    pub fn endpoints(self) -> (VertexId, VertexId) {
        (self.0, self.1)
    }

    pub fn contains(self, v: VertexId) -> bool {
        self.0 == v || self.1 == v
    }

    /// The endpoint opposite to `v`.
    pub fn other(self, v: VertexId) -> VertexId {
        if self.0 == v {
            self.1
        } else {
            self.0
        }
    }
}

impl fmt::Display for Edge {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.0, self.1)
    }
}

/// Vertex or edge attribute.
#[derive(Debug, Clone, PartialEq, Default)]
pub enum Label {
    #[default]
    Empty,
    Vector(Vec<f64>),
    Symbol(String),
}

impl Label {
    pub fn point(x: f64, y: f64) -> Self {
        Label::Vector(vec![x, y])
    }

    pub fn as_vector(&self) -> Option<&[f64]> {
        match self {
            Label::Vector(v) => Some(v),
            _ => None,
        }
    }
}

/// Undirected simple graph with vertex and edge labels.
///
/// Vertices are numbered `0..n` in insertion order. Each vertex may carry an
/// external identifier (the id it had in a dataset file) as metadata.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct AttributedGraph {
    labels: Vec<Label>,
    names: Vec<String>,
    adjacency: Vec<Vec<VertexId>>,
    edges: BTreeMap<Edge, Label>,
    vector_dim: Option<usize>,
}

impl AttributedGraph {
    pub fn new() -> Self {
        Self::default()
    }

    /// Builds an unlabeled graph with `n` vertices and the given edges.
    pub fn from_edges(n: usize, edges: &[(VertexId, VertexId)]) -> Result<Self, GraphError> {
        let mut g = Self::new();
        for _ in 0..n {
            g.add_vertex(Label::Empty)?;
        }
        for &(u, v) in edges {
            g.add_edge(u, v, Label::Empty)?;
        }
        Ok(g)
    }

    pub fn add_vertex(&mut self, label: Label) -> Result<VertexId, GraphError> {
        let name = self.labels.len().to_string();
        self.add_named_vertex(name, label)
    }

    pub fn add_named_vertex(
        &mut self,
        name: impl Into<String>,
        label: Label,
    ) -> Result<VertexId, GraphError> {
        if let Label::Vector(values) = &label {
            match self.vector_dim {
                Some(dim) if dim != values.len() => {
                    return Err(GraphError::LabelDimension {
                        expected: dim,
                        found: values.len(),
                    })
                }
                None => self.vector_dim = Some(values.len()),
                _ => {}
            }
        }
        let id = self.labels.len();
        self.labels.push(label);
        self.names.push(name.into());
        self.adjacency.push(Vec::new());
        Ok(id)
    }

    pub fn add_edge(&mut self, u: VertexId, v: VertexId, label: Label) -> Result<Edge, GraphError> {
        self.check_vertex(u)?;
        self.check_vertex(v)?;
        if u == v {
            return Err(GraphError::SelfLoop(u));
        }
        let e = Edge::new(u, v);
        if self.edges.contains_key(&e) {
            return Err(GraphError::ParallelEdge(e));
        }
        self.edges.insert(e, label);
        insert_sorted(&mut self.adjacency[u], v);
        insert_sorted(&mut self.adjacency[v], u);
        Ok(e)
    }

    pub fn remove_edge(&mut self, e: Edge) -> Result<Label, GraphError> {
        let label = self.edges.remove(&e).ok_or(GraphError::MissingEdge(e))?;
        let (u, v) = e.endpoints();
        self.adjacency[u].retain(|&w| w != v);
        self.adjacency[v].retain(|&w| w != u);
        Ok(label)
    }

    pub fn vertex_count(&self) -> usize {
        self.labels.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn vertices(&self) -> std::ops::Range<VertexId> {
        0..self.labels.len()
    }

    /// Edges in ascending `(min, max)` order together with their labels.
    pub fn edges(&self) -> impl Iterator<Item = (Edge, &Label)> + '_ {
        self.edges.iter().map(|(e, l)| (*e, l))
    }

    pub fn has_edge(&self, u: VertexId, v: VertexId) -> bool {
        u != v && self.edges.contains_key(&Edge::new(u, v))
    }

    pub fn edge_label(&self, u: VertexId, v: VertexId) -> Option<&Label> {
        self.edges.get(&Edge::new(u, v))
    }

    pub fn vertex_label(&self, v: VertexId) -> &Label {
        &self.labels[v]
    }

    pub fn vertex_name(&self, v: VertexId) -> &str {
        &self.names[v]
    }

    /// Sorted neighbor list. Panics on an out-of-range vertex.
    pub fn neighbors(&self, v: VertexId) -> &[VertexId] {
        &self.adjacency[v]
    }

    pub fn degree(&self, v: VertexId) -> Result<usize, GraphError> {
        self.check_vertex(v)?;
        Ok(self.adjacency[v].len())
    }

    /// Dimension shared by all vector vertex labels, if any are present.
    pub fn vector_dim(&self) -> Option<usize> {
        self.vector_dim
    }

    pub fn check_vertex(&self, v: VertexId) -> Result<(), GraphError> {
        if v < self.labels.len() {
            Ok(())
        } else {
            Err(GraphError::UnknownVertex(v))
        }
    }

    pub fn is_cut_vertex(&self, v: VertexId) -> Result<bool, GraphError> {
        self.check_vertex(v)?;
        Ok(articulation_points(self)[v])
    }

    pub fn connected_components(&self) -> Vec<Vec<VertexId>> {
        connected_components(self)
    }

    pub fn component_count(&self) -> usize {
        self.connected_components().len()
    }

    /// Copy of the graph with every vertex flagged in `remove` dropped.
    /// Surviving vertices keep their labels, names and relative order.
    pub fn without_vertices(&self, remove: &[bool]) -> AttributedGraph {
        debug_assert_eq!(remove.len(), self.vertex_count());
        let mut index = vec![None; self.vertex_count()];
        let mut out = AttributedGraph::new();
        for v in self.vertices().filter(|&v| !remove[v]) {
            let id = out
                .add_named_vertex(self.names[v].clone(), self.labels[v].clone())
                .expect("labels already validated");
            index[v] = Some(id);
        }
        for (e, label) in self.edges() {
            let (u, v) = e.endpoints();
            if let (Some(a), Some(b)) = (index[u], index[v]) {
                out.add_edge(a, b, label.clone()).expect("edge is simple");
            }
        }
        out
    }

    /// Copy of the graph without vertex `v` and its incident edges.
    pub fn without_vertex(&self, v: VertexId) -> Result<AttributedGraph, GraphError> {
        self.check_vertex(v)?;
        let mut remove = vec![false; self.vertex_count()];
        remove[v] = true;
        Ok(self.without_vertices(&remove))
    }

    /// Count of vertices per degree, indexed by degree.
    pub fn degree_histogram(&self) -> Vec<usize> {
        let max = self.adjacency.iter().map(Vec::len).max().unwrap_or(0);
        let mut hist = vec![0; max + 1];
        for adj in &self.adjacency {
            hist[adj.len()] += 1;
        }
        hist
    }

    /// Subdivides `e` with a fresh vertex carrying `label`.
    pub(crate) fn subdivide(&mut self, e: Edge, label: Label) -> Result<VertexId, GraphError> {
        let edge_label = self.remove_edge(e)?;
        let (u, v) = e.endpoints();
        let name = format!("{}", self.labels.len());
        let w = self.add_named_vertex(name, label)?;
        self.add_edge(u, w, edge_label.clone())?;
        self.add_edge(w, v, edge_label)?;
        Ok(w)
    }
}

fn insert_sorted(list: &mut Vec<VertexId>, v: VertexId) {
    if let Err(pos) = list.binary_search(&v) {
        list.insert(pos, v);
    }
}

/// Articulation-point flags computed with an iterative DFS low-link pass.
pub fn articulation_points(g: &AttributedGraph) -> Vec<bool> {
    let n = g.vertex_count();
    let mut disc = vec![usize::MAX; n];
    let mut low = vec![0usize; n];
    let mut cut = vec![false; n];
    let mut time = 0;

    for root in 0..n {
        if disc[root] != usize::MAX {
            continue;
        }
        disc[root] = time;
        low[root] = time;
        time += 1;
        let mut root_children = 0;
        // (vertex, parent, next neighbor position)
        let mut stack: Vec<(VertexId, Option<VertexId>, usize)> = vec![(root, None, 0)];
        while let Some(top) = stack.len().checked_sub(1) {
            let (v, parent, pos) = stack[top];
            let adj = g.neighbors(v);
            if pos < adj.len() {
                let w = adj[pos];
                stack[top].2 += 1;
                if Some(w) == parent {
                    continue;
                }
                if disc[w] == usize::MAX {
                    disc[w] = time;
                    low[w] = time;
                    time += 1;
                    if v == root {
                        root_children += 1;
                    }
                    stack.push((w, Some(v), 0));
                } else {
                    low[v] = low[v].min(disc[w]);
                }
            } else {
                stack.pop();
                if let Some(p) = parent {
                    low[p] = low[p].min(low[v]);
                    if p != root && low[v] >= disc[p] {
                        cut[p] = true;
                    }
                }
            }
        }
        cut[root] = root_children > 1;
    }
    cut
}

/// Maximal connected vertex sets, each sorted, ordered by smallest member.
pub fn connected_components(g: &AttributedGraph) -> Vec<Vec<VertexId>> {
    let n = g.vertex_count();
    let mut seen = vec![false; n];
    let mut components = Vec::new();
    for start in 0..n {
        if seen[start] {
            continue;
        }
        seen[start] = true;
        let mut queue = vec![start];
        let mut members = Vec::new();
        while let Some(v) = queue.pop() {
            members.push(v);
            for &w in g.neighbors(v) {
                if !seen[w] {
                    seen[w] = true;
                    queue.push(w);
                }
            }
        }
        members.sort_unstable();
        components.push(members);
    }
    components
}

/// True when deleting `v` leaves the number of connected components unchanged.
///
/// This excludes cut vertices and isolated vertices (whose removal drops a
/// whole component).
pub fn removal_preserves_components(g: &AttributedGraph, v: VertexId, cut: &[bool]) -> bool {
    !cut[v] && !g.neighbors(v).is_empty()
}

/// Erdős–Rényi `G(n, p)` sample with unlabeled vertices.
pub fn random_graph(n: usize, p: f64, seed: u64) -> Result<AttributedGraph, GraphError> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    random_graph_with(n, p, &mut rng)
}

pub(crate) fn random_graph_with<R: Rng>(
    n: usize,
    p: f64,
    rng: &mut R,
) -> Result<AttributedGraph, GraphError> {
    if !(0.0..=1.0).contains(&p) {
        return Err(GraphError::InvalidProbability(p));
    }
    let mut g = AttributedGraph::new();
    for _ in 0..n {
        g.add_vertex(Label::Empty)?;
    }
    for u in 0..n {
        for v in (u + 1)..n {
            if rng.random_bool(p) {
                g.add_edge(u, v, Label::Empty)?;
            }
        }
    }
    Ok(g)
}
