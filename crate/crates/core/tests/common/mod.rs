#![allow(dead_code)]

use graphmatch::graph::random_graph;
use graphmatch::{AttributedGraph, GeometricGraph, Point};
use proptest::prelude::*;

/// Every labeled simple graph on `n` vertices.
pub fn all_graphs(n: usize) -> Vec<AttributedGraph> {
    let pairs: Vec<(usize, usize)> = (0..n)
        .flat_map(|u| ((u + 1)..n).map(move |v| (u, v)))
        .collect();
    (0..1u32 << pairs.len())
        .map(|mask| {
            let edges: Vec<_> = pairs
                .iter()
                .enumerate()
                .filter(|(i, _)| mask >> i & 1 == 1)
                .map(|(_, &e)| e)
                .collect();
            AttributedGraph::from_edges(n, &edges).unwrap()
        })
        .collect()
}

fn partial_maps(
    n1: usize,
    n2: usize,
    at: usize,
    used: &mut Vec<bool>,
    cur: &mut Vec<Option<usize>>,
    out: &mut dyn FnMut(&[Option<usize>]),
) {
    if at == n1 {
        out(cur);
        return;
    }
    cur.push(None);
    partial_maps(n1, n2, at + 1, used, cur, out);
    cur.pop();
    for v in 0..n2 {
        if !used[v] {
            used[v] = true;
            cur.push(Some(v));
            partial_maps(n1, n2, at + 1, used, cur, out);
            cur.pop();
            used[v] = false;
        }
    }
}

/// Cost of the edit path induced by `map` for unlabeled graphs.
pub fn mapping_cost(
    g1: &AttributedGraph,
    g2: &AttributedGraph,
    map: &[Option<usize>],
    x_node: f64,
    x_edge: f64,
) -> f64 {
    let mapped = map.iter().flatten().count();
    let mut cost = x_node * ((g1.vertex_count() - mapped) + (g2.vertex_count() - mapped)) as f64;
    let mut kept = 0;
    for (e, _) in g1.edges() {
        let (u, v) = e.endpoints();
        match (map[u], map[v]) {
            (Some(a), Some(b)) if g2.has_edge(a, b) => kept += 1,
            _ => cost += x_edge,
        }
    }
    cost + x_edge * (g2.edge_count() - kept) as f64
}

/// Exact GED of unlabeled graphs by enumerating all partial injections.
pub fn brute_ged(g1: &AttributedGraph, g2: &AttributedGraph, x_node: f64, x_edge: f64) -> f64 {
    let mut best = f64::INFINITY;
    let mut used = vec![false; g2.vertex_count()];
    partial_maps(
        g1.vertex_count(),
        g2.vertex_count(),
        0,
        &mut used,
        &mut Vec::new(),
        &mut |m| {
            best = best.min(mapping_cost(g1, g2, m, x_node, x_edge));
        },
    );
    best
}

/// Heap's algorithm over all permutations of `0..n`.
pub fn for_each_permutation(n: usize, mut f: impl FnMut(&[usize]) -> bool) {
    let mut p: Vec<usize> = (0..n).collect();
    let mut c = vec![0; n];
    if !f(&p) {
        return;
    }
    let mut i = 0;
    while i < n {
        if c[i] < i {
            if i % 2 == 0 {
                p.swap(0, i)
            } else {
                p.swap(c[i], i)
            }
            if !f(&p) {
                return;
            }
            c[i] += 1;
            i = 0;
        } else {
            c[i] = 0;
            i += 1;
        }
    }
}

/// Structural isomorphism by trying every vertex permutation.
pub fn isomorphic(a: &AttributedGraph, b: &AttributedGraph) -> bool {
    if a.vertex_count() != b.vertex_count() || a.edge_count() != b.edge_count() {
        return false;
    }
    let mut da: Vec<usize> = a.vertices().map(|v| a.neighbors(v).len()).collect();
    let mut db: Vec<usize> = b.vertices().map(|v| b.neighbors(v).len()).collect();
    da.sort_unstable();
    db.sort_unstable();
    if da != db {
        return false;
    }
    let mut found = false;
    for_each_permutation(a.vertex_count(), |p| {
        found = a.edges().all(|(e, _)| {
            let (u, v) = e.endpoints();
            b.has_edge(p[u], p[v])
        });
        !found
    });
    found
}

pub fn relabel(g: &AttributedGraph, perm: &[usize]) -> AttributedGraph {
    let edges: Vec<_> = g
        .edges()
        .map(|(e, _)| {
            let (u, v) = e.endpoints();
            (perm[u], perm[v])
        })
        .collect();
    AttributedGraph::from_edges(g.vertex_count(), &edges).unwrap()
}

pub fn arb_graph(max_n: usize) -> impl Strategy<Value = AttributedGraph> {
    (0..=max_n, 0.0..=1.0f64, any::<u64>())
        .prop_map(|(n, p, seed)| random_graph(n, p, seed).unwrap())
}

pub fn geometric(g: &AttributedGraph, pts: &[(f64, f64)]) -> GeometricGraph {
    let pts: Vec<Point> = pts.iter().map(|&(x, y)| Point::new(x, y)).collect();
    let edges: Vec<_> = g.edges().map(|(e, _)| e.endpoints()).collect();
    GeometricGraph::from_points(&pts, &edges).unwrap()
}
