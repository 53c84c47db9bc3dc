//! Brute-force reference implementations used to check the library
//! against exhaustive enumeration.

use graphmatch::AttributedGraph;

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

/// Unit-cost GED by enumerating every partial injection of `g1` into `g2`.
pub fn brute_ged(g1: &AttributedGraph, g2: &AttributedGraph) -> f64 {
    fn rec(
        g1: &AttributedGraph,
        g2: &AttributedGraph,
        map: &mut Vec<Option<usize>>,
        used: &mut [bool],
        best: &mut f64,
    ) {
        if map.len() == g1.vertex_count() {
            let mapped = map.iter().flatten().count();
            let mut cost = (g1.vertex_count() + g2.vertex_count() - 2 * mapped) as f64;
            let mut kept = 0;
            for (e, _) in g1.edges() {
                let (u, v) = e.endpoints();
                match (map[u], map[v]) {
                    (Some(a), Some(b)) if g2.has_edge(a, b) => kept += 1,
                    _ => cost += 1.0,
                }
            }
            *best = best.min(cost + (g2.edge_count() - kept) as f64);
            return;
        }
        map.push(None);
        rec(g1, g2, map, used, best);
        map.pop();
        for v in 0..g2.vertex_count() {
            if !used[v] {
                used[v] = true;
                map.push(Some(v));
                rec(g1, g2, map, used, best);
                map.pop();
                used[v] = false;
            }
        }
    }
    let mut best = f64::INFINITY;
    rec(
        g1,
        g2,
        &mut Vec::new(),
        &mut vec![false; g2.vertex_count()],
        &mut best,
    );
    best
}

/// Lexicographic permutations of `0..n`, visited until `f` returns false.
pub fn permutations(n: usize, mut f: impl FnMut(&[usize]) -> bool) {
    fn rec(p: &mut Vec<usize>, used: &mut [bool], f: &mut dyn FnMut(&[usize]) -> bool) -> bool {
        if p.len() == used.len() {
            return f(p);
        }
        for v in 0..used.len() {
            if !used[v] {
                used[v] = true;
                p.push(v);
                let go_on = rec(p, used, f);
                p.pop();
                used[v] = false;
                if !go_on {
                    return false;
                }
            }
        }
        true
    }
    rec(&mut Vec::new(), &mut vec![false; n], &mut f);
}

/// Structural isomorphism by trying every vertex permutation.
pub fn isomorphic(a: &AttributedGraph, b: &AttributedGraph) -> bool {
    if a.vertex_count() != b.vertex_count() || a.edge_count() != b.edge_count() {
        return false;
    }
    let mut found = false;
    permutations(a.vertex_count(), |p| {
        found = a.edges().all(|(e, _)| {
            let (u, v) = e.endpoints();
            b.has_edge(p[u], p[v])
        });
        !found
    });
    found
}

/// Sorted degrees other than 2; invariant under subdivision.
pub fn non_two_degrees(g: &AttributedGraph) -> Vec<usize> {
    let mut d: Vec<usize> = g
        .vertices()
        .map(|v| g.neighbors(v).len())
        .filter(|&d| d != 2)
        .collect();
    d.sort_unstable();
    d
}
