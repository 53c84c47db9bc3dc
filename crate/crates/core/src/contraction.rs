//! Topology-reducing preprocessing: degree-2 path contraction and degree-based
//! node contraction / deletion, plus the distances built on top of them.

use std::collections::BTreeSet;

use crate::edit::{
    edit_cost, ged, CostMode, EditCostParams, EditOperation, EditPath, LedgerEntry, Side,
};
use crate::error::EditError;
use crate::graph::{AttributedGraph, Edge, Label, VertexId};

/// What a contraction removed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ContractionReport {
    /// Removed vertices (input indices) in removal order.
    pub removed: Vec<VertexId>,
    /// `kept[i]` is the input index of vertex `i` of the output graph.
    pub kept: Vec<VertexId>,
    pub before_n: usize,
    pub after_n: usize,
    pub components_before: usize,
    pub components_after: usize,
}

/// Mutable adjacency view used while sweeping; indices stay those of the input.
pub(crate) struct Working<'a> {
    source: &'a AttributedGraph,
    adj: Vec<BTreeSet<VertexId>>,
    alive: Vec<bool>,
    removed: Vec<VertexId>,
}

impl<'a> Working<'a> {
    pub fn new(g: &'a AttributedGraph) -> Self {
        Working {
            source: g,
            adj: g
                .vertices()
                .map(|v| g.neighbors(v).iter().copied().collect())
                .collect(),
            alive: vec![true; g.vertex_count()],
            removed: Vec::new(),
        }
    }

    pub fn degree(&self, v: VertexId) -> usize {
        self.adj[v].len()
    }

    /// True when some pair of neighbors of `v` is connected only through `v`.
    pub fn is_cut(&self, v: VertexId) -> bool {
        let mut nbrs = self.adj[v].iter();
        let Some(&start) = nbrs.next() else {
            return false;
        };
        let mut seen = vec![false; self.adj.len()];
        seen[v] = true;
        seen[start] = true;
        let mut stack = vec![start];
        while let Some(x) = stack.pop() {
            for &y in &self.adj[x] {
                if !seen[y] {
                    seen[y] = true;
                    stack.push(y);
                }
            }
        }
        self.adj[v].iter().any(|&w| !seen[w])
    }

    /// Removal keeps the component count: `v` is neither a cut vertex nor isolated.
    pub fn contractible(&self, v: VertexId) -> bool {
        self.alive[v] && self.degree(v) > 0 && !self.is_cut(v)
    }

    pub fn remove(&mut self, v: VertexId) {
        debug_assert!(self.alive[v]);
        let nbrs = std::mem::take(&mut self.adj[v]);
        for w in nbrs {
            self.adj[w].remove(&v);
        }
        self.alive[v] = false;
        self.removed.push(v);
    }

    pub fn finish(self) -> (AttributedGraph, ContractionReport) {
        let remove: Vec<bool> = self.alive.iter().map(|a| !a).collect();
        let out = self.source.without_vertices(&remove);
        let report = ContractionReport {
            kept: self.source.vertices().filter(|&v| self.alive[v]).collect(),
            before_n: self.source.vertex_count(),
            after_n: out.vertex_count(),
            components_before: self.source.component_count(),
            components_after: out.component_count(),
            removed: self.removed,
        };
        (out, report)
    }

    /// One pass over the vertices that have degree `k` when the pass starts.
    fn degree_pass(&mut self, k: usize, guarded: bool) {
        let flagged: Vec<VertexId> = (0..self.adj.len())
            .filter(|&v| self.alive[v] && self.degree(v) == k)
            .collect();
        for v in flagged {
            let eligible = if guarded {
                self.contractible(v)
            } else {
                self.alive[v]
            };
            if eligible {
                self.remove(v);
            }
        }
    }
}

/// Removes each vertex of degree `k` (degree taken when the pass starts)
/// whose removal at visit time neither disconnects its component nor drops
/// an isolated vertex. Vertices are visited in ascending index order.
pub fn k_node_contraction(g: &AttributedGraph, k: usize) -> (AttributedGraph, ContractionReport) {
    let mut w = Working::new(g);
    w.degree_pass(k, true);
    w.finish()
}

/// `k`-degree node contraction for degrees `1, 2, ..., k` in turn.
pub fn k_star_node_contraction(
    g: &AttributedGraph,
    k: usize,
) -> (AttributedGraph, ContractionReport) {
    let mut w = Working::new(g);
    for d in 1..=k {
        w.degree_pass(d, true);
    }
    w.finish()
}

/// Deletes every vertex of degree `k`, cut vertex or not.
pub fn k_node_deletion(g: &AttributedGraph, k: usize) -> (AttributedGraph, ContractionReport) {
    let mut w = Working::new(g);
    w.degree_pass(k, false);
    w.finish()
}

/// [`k_node_deletion`] for degrees `1, 2, ..., k` in turn.
pub fn k_star_node_deletion(g: &AttributedGraph, k: usize) -> (AttributedGraph, ContractionReport) {
    let mut w = Working::new(g);
    for d in 1..=k {
        w.degree_pass(d, false);
    }
    w.finish()
}

/// Path contraction result with the contraction operations that were applied.
#[derive(Debug, Clone, PartialEq)]
pub struct PathContraction {
    pub graph: AttributedGraph,
    pub report: ContractionReport,
    /// Each entry is a walk `(u_1, ..., u_n)` in the input whose interior was
    /// replaced by the edge `u_1 u_n`.
    pub paths: Vec<Vec<VertexId>>,
}

/// Replaces every maximal chain of degree-2 vertices by a single edge.
///
/// Where the single edge would duplicate an existing one, the chain keeps its
/// smallest-index interior vertex; a chain leaving and re-entering the same
/// vertex keeps two interior vertices; a component that is a bare cycle
/// becomes a triangle on its smallest-index vertex and that vertex's two
/// neighbors.
pub fn path_contract(g: &AttributedGraph) -> (AttributedGraph, ContractionReport) {
    let pc = path_contraction(g);
    (pc.graph, pc.report)
}

pub fn path_contraction(g: &AttributedGraph) -> PathContraction {
    let n = g.vertex_count();
    let deg = |v: VertexId| g.neighbors(v).len();
    let mut visited = vec![false; n];
    let mut remove = vec![false; n];
    let mut present: BTreeSet<Edge> = g.edges().map(|(e, _)| e).collect();
    let mut added: Vec<(Edge, Label)> = Vec::new();
    let mut paths = Vec::new();

    // Walks the chain from branch vertex `b` through neighbor `first`.
    let walk = |b: VertexId, first: VertexId| -> (Vec<VertexId>, VertexId) {
        let (mut prev, mut cur) = (b, first);
        let mut interior = Vec::new();
        while deg(cur) == 2 {
            interior.push(cur);
            let nbrs = g.neighbors(cur);
            let next = if nbrs[0] == prev { nbrs[1] } else { nbrs[0] };
            prev = cur;
            cur = next;
        }
        (interior, cur)
    };

    let contract_segments = |full: &[VertexId],
                             keep: &[bool],
                             remove: &mut Vec<bool>,
                             present: &mut BTreeSet<Edge>,
                             added: &mut Vec<(Edge, Label)>,
                             paths: &mut Vec<Vec<VertexId>>| {
        // `full` is the walk including its endpoints; `keep[i]` marks walk
        // positions that survive (endpoints always do).
        let mut start = 0;
        for i in 1..full.len() {
            if !keep[i] {
                continue;
            }
            if i - start >= 2 {
                let (a, b) = (full[start], full[i]);
                let label = g
                    .edge_label(full[start], full[start + 1])
                    .cloned()
                    .unwrap_or_default();
                for &x in &full[start + 1..i] {
                    remove[x] = true;
                }
                let e = Edge::new(a, b);
                present.insert(e);
                added.push((e, label));
                paths.push(full[start..=i].to_vec());
            }
            start = i;
        }
    };

    for b in 0..n {
        if deg(b) == 2 {
            continue;
        }
        for &first in g.neighbors(b) {
            if deg(first) != 2 || visited[first] {
                continue;
            }
            let (interior, end) = walk(b, first);
            for &x in &interior {
                visited[x] = true;
            }
            let mut full = Vec::with_capacity(interior.len() + 2);
            full.push(b);
            full.extend(&interior);
            full.push(end);
            let mut keep = vec![false; full.len()];
            keep[0] = true;
            *keep.last_mut().unwrap() = true;
            if end == b {
                // loop back to `b`: keep the two smallest interior vertices
                let mut order: Vec<usize> = (1..full.len() - 1).collect();
                order.sort_by_key(|&i| full[i]);
                for &i in order.iter().take(2) {
                    keep[i] = true;
                }
            } else if present.contains(&Edge::new(b, end)) {
                let i = (1..full.len() - 1).min_by_key(|&i| full[i]).unwrap();
                keep[i] = true;
            }
            contract_segments(
                &full,
                &keep,
                &mut remove,
                &mut present,
                &mut added,
                &mut paths,
            );
        }
    }

    // Components made only of degree-2 vertices are cycles.
    for s in 0..n {
        if deg(s) != 2 || visited[s] {
            continue;
        }
        let mut cycle = vec![s];
        let (mut prev, mut cur) = (s, g.neighbors(s)[0]);
        while cur != s {
            cycle.push(cur);
            let nbrs = g.neighbors(cur);
            let next = if nbrs[0] == prev { nbrs[1] } else { nbrs[0] };
            prev = cur;
            cur = next;
        }
        for &x in &cycle {
            visited[x] = true;
        }
        let root = *cycle.iter().min().unwrap();
        let pos = cycle.iter().position(|&x| x == root).unwrap();
        cycle.rotate_left(pos);
        // walk root, c1, ..., c_{m-1}, root; keep root and its two neighbors
        let mut full = cycle.clone();
        full.push(root);
        let mut keep = vec![false; full.len()];
        keep[0] = true;
        keep[1] = true;
        keep[full.len() - 2] = true;
        keep[full.len() - 1] = true;
        contract_segments(
            &full,
            &keep,
            &mut remove,
            &mut present,
            &mut added,
            &mut paths,
        );
    }

    let mut work = g.clone();
    for (e, label) in added {
        let (a, b) = e.endpoints();
        work.add_edge(a, b, label).expect("contracted edge is new");
    }
    let graph = work.without_vertices(&remove);
    let report = ContractionReport {
        removed: g.vertices().filter(|&v| remove[v]).collect(),
        kept: g.vertices().filter(|&v| !remove[v]).collect(),
        before_n: n,
        after_n: graph.vertex_count(),
        components_before: g.component_count(),
        components_after: graph.component_count(),
    };
    PathContraction {
        graph,
        report,
        paths,
    }
}

/// GED of the path-contracted graphs. The contractions are logged in
/// `contraction_ledger` and priced with `z_path`, but are not added to
/// `total_cost`.
pub fn hged(
    g1: &AttributedGraph,
    g2: &AttributedGraph,
    params: &EditCostParams,
    beam_width: Option<usize>,
) -> Result<EditPath, EditError> {
    let c1 = path_contraction(g1);
    let c2 = path_contraction(g2);
    let mut path = ged(&c1.graph, &c2.graph, params, beam_width)?;
    for (side, pc, g) in [(Side::First, &c1, g1), (Side::Second, &c2, g2)] {
        for walk in &pc.paths {
            let op = EditOperation::PathContract(walk.clone());
            let cost = edit_cost(&op, g, g, params, &CostMode::Homeomorphic)?;
            path.contraction_ledger.push(LedgerEntry { side, op, cost });
        }
    }
    Ok(path)
}

/// GED after `k*`-degree node contraction of both graphs; `k = 0` is plain GED.
pub fn k_star_ged(
    g1: &AttributedGraph,
    g2: &AttributedGraph,
    k: usize,
    params: &EditCostParams,
    beam_width: Option<usize>,
) -> Result<EditPath, EditError> {
    if k == 0 {
        return ged(g1, g2, params, beam_width);
    }
    let (h1, _) = k_star_node_contraction(g1, k);
    let (h2, _) = k_star_node_contraction(g2, k);
    ged(&h1, &h2, params, beam_width)
}
