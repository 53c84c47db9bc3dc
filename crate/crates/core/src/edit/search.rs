//! Exact GED by best-first tree search over the vertices of `g1`, plus a
//! level-synchronous beam variant.

use std::cmp::Ordering;
use std::collections::BinaryHeap;

use super::cost::{edit_cost, label_cost, CostMode, EditCostParams, EditOperation};
use crate::error::EditError;
use crate::graph::{AttributedGraph, Edge, VertexId};

/// Lower-bound estimate of the remaining cost of a partial mapping.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Heuristic {
    /// Uniform-cost search.
    #[default]
    None,
    /// Unavoidable node and edge insertions/deletions implied by the sizes
    /// of the unprocessed parts of both graphs.
    LowerBound,
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct GedOptions {
    /// `None` runs exhaustive search; `Some(w)` keeps the `w` best partial
    /// mappings per level (`w = 0` is treated as 1).
    pub beam_width: Option<usize>,
    pub heuristic: Heuristic,
    pub mode: CostMode,
}

/// A complete edit path together with the vertex mapping it was induced from.
#[derive(Debug, Clone, PartialEq)]
pub struct EditPath {
    pub ops: Vec<EditOperation>,
    pub total_cost: f64,
    pub complete: bool,
    /// `mapping[u]` is the image of `u` in `g2`, or `None` if `u` is deleted.
    pub mapping: Vec<Option<VertexId>>,
    /// Preprocessing operations (path contractions) with their costs. They
    /// are reported separately and are not part of `total_cost`.
    pub contraction_ledger: Vec<LedgerEntry>,
}

/// Which input graph a preprocessing operation refers to.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    First,
    Second,
}

#[derive(Debug, Clone, PartialEq)]
pub struct LedgerEntry {
    pub side: Side,
    pub op: EditOperation,
    pub cost: f64,
}

impl EditPath {
    pub fn contraction_cost(&self) -> f64 {
        self.contraction_ledger.iter().map(|e| e.cost).sum()
    }
}

/// Precomputed cost tables for a graph pair.
pub(crate) struct PairCosts {
    pub n1: usize,
    pub n2: usize,
    pub node_sub: Vec<f64>,
    pub node_del: Vec<f64>,
    pub x_node: f64,
    pub x_edge: f64,
    pub edges1: Vec<Edge>,
    pub edges2: Vec<Edge>,
    /// `edge_sub[i * e2 + j]`
    pub edge_sub: Vec<f64>,
    index2: Vec<Option<usize>>,
    /// For each g1 vertex: (neighbor, edge index) pairs.
    pub adj1: Vec<Vec<(VertexId, usize)>>,
    pub adj2: Vec<Vec<(VertexId, usize)>>,
}

impl PairCosts {
    pub fn new(
        g1: &AttributedGraph,
        g2: &AttributedGraph,
        params: &EditCostParams,
        mode: &CostMode,
    ) -> Result<Self, EditError> {
        let (n1, n2) = (g1.vertex_count(), g2.vertex_count());
        let mut node_sub = Vec::with_capacity(n1 * n2);
        for u in g1.vertices() {
            for v in g2.vertices() {
                node_sub.push(label_cost(
                    g1.vertex_label(u),
                    g2.vertex_label(v),
                    params.y_node,
                )?);
            }
        }
        let node_del = g1
            .vertices()
            .map(|u| edit_cost(&EditOperation::NodeDelete(u), g1, g2, params, mode))
            .collect::<Result<Vec<_>, _>>()?;
        let edges1: Vec<Edge> = g1.edges().map(|(e, _)| e).collect();
        let edges2: Vec<Edge> = g2.edges().map(|(e, _)| e).collect();
        let mut edge_sub = Vec::with_capacity(edges1.len() * edges2.len());
        for (_, l1) in g1.edges() {
            for (_, l2) in g2.edges() {
                edge_sub.push(label_cost(l1, l2, params.y_edge)?);
            }
        }
        let mut index2 = vec![None; n2 * n2];
        let mut adj1 = vec![Vec::new(); n1];
        let mut adj2 = vec![Vec::new(); n2];
        for (i, e) in edges1.iter().enumerate() {
            let (a, b) = e.endpoints();
            adj1[a].push((b, i));
            adj1[b].push((a, i));
        }
        for (j, e) in edges2.iter().enumerate() {
            let (a, b) = e.endpoints();
            index2[a * n2 + b] = Some(j);
            index2[b * n2 + a] = Some(j);
            adj2[a].push((b, j));
            adj2[b].push((a, j));
        }
        Ok(PairCosts {
            n1,
            n2,
            node_sub,
            node_del,
            x_node: params.x_node,
            x_edge: params.x_edge,
            edges1,
            edges2,
            edge_sub,
            index2,
            adj1,
            adj2,
        })
    }

    pub fn sub(&self, u: VertexId, v: VertexId) -> f64 {
        self.node_sub[u * self.n2 + v]
    }

    pub fn edge_sub(&self, i: usize, j: usize) -> f64 {
        self.edge_sub[i * self.edges2.len() + j]
    }

    pub fn edge2(&self, a: VertexId, b: VertexId) -> Option<usize> {
        self.index2[a * self.n2 + b]
    }

    fn min_delete(&self) -> f64 {
        self.node_del.iter().copied().fold(f64::INFINITY, f64::min)
    }
}

#[derive(Clone)]
struct State {
    mapping: Vec<Option<VertexId>>,
    /// `inverse[v]` is the g1 preimage of `v`.
    inverse: Vec<Option<VertexId>>,
    g: f64,
    f: f64,
    /// g2 edges whose endpoints are both mapped.
    covered2: usize,
    complete: bool,
    seq: u64,
}

impl State {
    fn depth(&self) -> usize {
        self.mapping.len()
    }
}

/// Heap entry ordering: smaller `f` first, then deeper, then older.
struct Ranked(State);

impl PartialEq for Ranked {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}
impl Eq for Ranked {}
impl PartialOrd for Ranked {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for Ranked {
    fn cmp(&self, other: &Self) -> Ordering {
        // BinaryHeap is a max-heap, so "greater" means "pop first".
        other
            .0
            .f
            .total_cmp(&self.0.f)
            .then_with(|| {
                (self.0.depth() + self.0.complete as usize)
                    .cmp(&(other.0.depth() + other.0.complete as usize))
            })
            .then_with(|| other.0.seq.cmp(&self.0.seq))
    }
}

struct Search<'a> {
    c: &'a PairCosts,
    heuristic: Heuristic,
    min_delete: f64,
    /// Number of g1 edges with both endpoints among the first `d` vertices.
    covered1_prefix: Vec<usize>,
    seq: u64,
}

impl<'a> Search<'a> {
    fn new(c: &'a PairCosts, heuristic: Heuristic) -> Self {
        let mut covered1_prefix = vec![0; c.n1 + 1];
        for u in 0..c.n1 {
            let back = c.adj1[u].iter().filter(|&&(w, _)| w < u).count();
            covered1_prefix[u + 1] = covered1_prefix[u] + back;
        }
        Search {
            c,
            heuristic,
            min_delete: c.min_delete(),
            covered1_prefix,
            seq: 0,
        }
    }

    fn root(&mut self) -> State {
        let mut s = State {
            mapping: Vec::new(),
            inverse: vec![None; self.c.n2],
            g: 0.0,
            f: 0.0,
            covered2: 0,
            complete: false,
            seq: 0,
        };
        s.f = self.estimate(&s);
        s
    }

    fn estimate(&self, s: &State) -> f64 {
        if s.complete || self.heuristic == Heuristic::None {
            return s.g;
        }
        let c = self.c;
        let r1 = c.n1 - s.depth();
        let mapped = s.mapping.iter().filter(|m| m.is_some()).count();
        let r2 = c.n2 - mapped;
        let node = if r1 > r2 {
            (r1 - r2) as f64 * self.min_delete
        } else {
            (r2 - r1) as f64 * c.x_node
        };
        let a1 = c.edges1.len() - self.covered1_prefix[s.depth()];
        let a2 = c.edges2.len() - s.covered2;
        s.g + node + a1.abs_diff(a2) as f64 * c.x_edge
    }

    fn next_seq(&mut self) -> u64 {
        self.seq += 1;
        self.seq
    }

    fn children(&mut self, s: &State) -> Vec<State> {
        let c = self.c;
        let u = s.depth();
        if u == c.n1 {
            let free = s.inverse.iter().filter(|m| m.is_none()).count();
            let mut done = s.clone();
            done.g += free as f64 * c.x_node + (c.edges2.len() - s.covered2) as f64 * c.x_edge;
            done.f = done.g;
            done.covered2 = c.edges2.len();
            done.complete = true;
            done.seq = self.next_seq();
            return vec![done];
        }
        let back: Vec<(VertexId, usize)> =
            c.adj1[u].iter().copied().filter(|&(w, _)| w < u).collect();
        let mut out = Vec::with_capacity(c.n2 + 1);
        for v in 0..c.n2 {
            if s.inverse[v].is_some() {
                continue;
            }
            let mut inc = c.sub(u, v);
            for &(w, i) in &back {
                inc += match s.mapping[w].and_then(|vw| c.edge2(v, vw)) {
                    Some(j) => c.edge_sub(i, j),
                    None => c.x_edge,
                };
            }
            let mut mapped_nbrs = 0;
            for &(vw, _) in &c.adj2[v] {
                if let Some(w) = s.inverse[vw] {
                    mapped_nbrs += 1;
                    if !c.adj1[u].iter().any(|&(x, _)| x == w) {
                        inc += c.x_edge;
                    }
                }
            }
            let mut child = s.clone();
            child.mapping.push(Some(v));
            child.inverse[v] = Some(u);
            child.g += inc;
            child.covered2 += mapped_nbrs;
            child.seq = self.next_seq();
            child.f = self.estimate(&child);
            out.push(child);
        }
        let mut child = s.clone();
        child.mapping.push(None);
        child.g += c.node_del[u] + back.len() as f64 * c.x_edge;
        child.seq = self.next_seq();
        child.f = self.estimate(&child);
        out.push(child);
        out
    }

    fn exhaustive(&mut self) -> State {
        let mut open = BinaryHeap::new();
        let root = self.root();
        open.push(Ranked(root));
        while let Some(Ranked(s)) = open.pop() {
            if s.complete {
                return s;
            }
            for child in self.children(&s) {
                open.push(Ranked(child));
            }
        }
        unreachable!("the search tree always contains a complete mapping")
    }

    fn beam(&mut self, width: usize) -> State {
        let width = width.max(1);
        let mut frontier = vec![self.root()];
        for _ in 0..=self.c.n1 {
            let mut next: Vec<State> = Vec::new();
            for s in &frontier {
                next.extend(self.children(s));
            }
            next.sort_by(|a, b| a.f.total_cmp(&b.f).then(a.seq.cmp(&b.seq)));
            next.truncate(width);
            frontier = next;
        }
        frontier
            .into_iter()
            .min_by(|a, b| a.g.total_cmp(&b.g).then(a.seq.cmp(&b.seq)))
            .expect("beam keeps at least one state")
    }
}

/// Rebuilds the induced edit path of a vertex mapping and prices it.
pub fn path_from_mapping(
    g1: &AttributedGraph,
    g2: &AttributedGraph,
    params: &EditCostParams,
    mode: &CostMode,
    mapping: &[Option<VertexId>],
) -> Result<EditPath, EditError> {
    let mut ops = Vec::new();
    let mut hit = vec![false; g2.vertex_count()];
    for (u, m) in mapping.iter().enumerate() {
        match *m {
            Some(v) => {
                hit[v] = true;
                ops.push(EditOperation::NodeSubstitute(u, v));
            }
            None => ops.push(EditOperation::NodeDelete(u)),
        }
    }
    for v in g2.vertices().filter(|&v| !hit[v]) {
        ops.push(EditOperation::NodeInsert(v));
    }
    let mut covered = std::collections::BTreeSet::new();
    for (e, _) in g1.edges() {
        let (a, b) = e.endpoints();
        match (mapping[a], mapping[b]) {
            (Some(x), Some(y)) if g2.has_edge(x, y) => {
                let f = Edge::new(x, y);
                covered.insert(f);
                ops.push(EditOperation::EdgeSubstitute(e, f));
            }
            _ => ops.push(EditOperation::EdgeDelete(e)),
        }
    }
    for (f, _) in g2.edges() {
        if !covered.contains(&f) {
            ops.push(EditOperation::EdgeInsert(f));
        }
    }
    let mut total_cost = 0.0;
    for op in &ops {
        total_cost += edit_cost(op, g1, g2, params, mode)?;
    }
    Ok(EditPath {
        ops,
        total_cost,
        complete: true,
        mapping: mapping.to_vec(),
        contraction_ledger: Vec::new(),
    })
}

/// Graph edit distance with the standard cost mode and no heuristic.
pub fn ged(
    g1: &AttributedGraph,
    g2: &AttributedGraph,
    params: &EditCostParams,
    beam_width: Option<usize>,
) -> Result<EditPath, EditError> {
    ged_with(
        g1,
        g2,
        params,
        &GedOptions {
            beam_width,
            ..Default::default()
        },
    )
}

pub fn ged_with(
    g1: &AttributedGraph,
    g2: &AttributedGraph,
    params: &EditCostParams,
    options: &GedOptions,
) -> Result<EditPath, EditError> {
    let costs = PairCosts::new(g1, g2, params, &options.mode)?;
    let mut search = Search::new(&costs, options.heuristic);
    let best = match options.beam_width {
        None => search.exhaustive(),
        Some(w) => search.beam(w),
    };
    path_from_mapping(g1, g2, params, &options.mode, &best.mapping)
}
