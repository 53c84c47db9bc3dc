//! Node centrality measures and centrality-guided node contraction.

use std::collections::VecDeque;
use std::fmt;
use std::str::FromStr;

use crate::contraction::{ContractionReport, Working};
use crate::edit::{ged, EditCostParams, EditPath};
use crate::error::{CentralityError, EditError};
use crate::graph::{connected_components, AttributedGraph, VertexId};

/// PageRank damping factor.
pub const PAGERANK_ALPHA: f64 = 0.85;
const PAGERANK_TOL: f64 = 1e-10;
const PAGERANK_MAX_ITER: usize = 200;
const EIGEN_TOL: f64 = 1e-8;
const EIGEN_MAX_ITER: usize = 100_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Measure {
    Degree,
    Betweenness,
    Eigenvector,
    PageRank,
}

impl Measure {
    pub const ALL: [Measure; 4] = [
        Measure::Degree,
        Measure::Betweenness,
        Measure::Eigenvector,
        Measure::PageRank,
    ];
}

impl fmt::Display for Measure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Measure::Degree => "degree",
            Measure::Betweenness => "betweenness",
            Measure::Eigenvector => "eigenvector",
            Measure::PageRank => "pagerank",
        })
    }
}

impl FromStr for Measure {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "degree" => Ok(Measure::Degree),
            "betweenness" => Ok(Measure::Betweenness),
            "eigenvector" => Ok(Measure::Eigenvector),
            "pagerank" => Ok(Measure::PageRank),
            other => Err(format!("unknown centrality measure `{other}`")),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct CentralityVector {
    pub measure: Measure,
    pub scores: Vec<f64>,
}

pub fn centrality(
    g: &AttributedGraph,
    measure: Measure,
) -> Result<CentralityVector, CentralityError> {
    if g.is_empty() {
        return Err(CentralityError::EmptyGraph);
    }
    let scores = match measure {
        Measure::Degree => g.vertices().map(|v| g.neighbors(v).len() as f64).collect(),
        Measure::Betweenness => betweenness(g),
        Measure::Eigenvector => eigenvector(g),
        Measure::PageRank => pagerank(g, PAGERANK_ALPHA),
    };
    Ok(CentralityVector { measure, scores })
}

/// Brandes accumulation; each unordered pair `{s, t}` contributes once.
fn betweenness(g: &AttributedGraph) -> Vec<f64> {
    let n = g.vertex_count();
    let mut score = vec![0.0; n];
    let mut sigma = vec![0.0f64; n];
    let mut dist = vec![usize::MAX; n];
    let mut delta = vec![0.0f64; n];
    let mut preds: Vec<Vec<VertexId>> = vec![Vec::new(); n];
    for s in 0..n {
        sigma.fill(0.0);
        dist.fill(usize::MAX);
        delta.fill(0.0);
        preds.iter_mut().for_each(Vec::clear);
        sigma[s] = 1.0;
        dist[s] = 0;
        let mut order = Vec::with_capacity(n);
        let mut queue = VecDeque::from([s]);
        while let Some(v) = queue.pop_front() {
            order.push(v);
            for &w in g.neighbors(v) {
                if dist[w] == usize::MAX {
                    dist[w] = dist[v] + 1;
                    queue.push_back(w);
                }
                if dist[w] == dist[v] + 1 {
                    sigma[w] += sigma[v];
                    preds[w].push(v);
                }
            }
        }
        for &w in order.iter().rev() {
            for &v in &preds[w] {
                delta[v] += sigma[v] / sigma[w] * (1.0 + delta[w]);
            }
            if w != s {
                score[w] += delta[w];
            }
        }
    }
    score.iter().map(|x| x / 2.0).collect()
}

/// Power iteration on `A + I` (same dominant eigenvector as `A`, but no
/// oscillation on bipartite components), run per component and scaled so the
/// largest entry of each component is 1.
fn eigenvector(g: &AttributedGraph) -> Vec<f64> {
    let mut x = vec![0.0; g.vertex_count()];
    for comp in connected_components(g) {
        let mut cur: Vec<f64> = vec![1.0; comp.len()];
        let local: std::collections::HashMap<VertexId, usize> =
            comp.iter().enumerate().map(|(i, &v)| (v, i)).collect();
        for _ in 0..EIGEN_MAX_ITER {
            let mut next: Vec<f64> = comp
                .iter()
                .enumerate()
                .map(|(i, &v)| cur[i] + g.neighbors(v).iter().map(|w| cur[local[w]]).sum::<f64>())
                .collect();
            let max = next.iter().copied().fold(0.0, f64::max);
            next.iter_mut().for_each(|y| *y /= max);
            let change = next
                .iter()
                .zip(&cur)
                .map(|(a, b)| (a - b).abs())
                .fold(0.0, f64::max);
            cur = next;
            if change < EIGEN_TOL {
                break;
            }
        }
        for (i, &v) in comp.iter().enumerate() {
            x[v] = cur[i];
        }
    }
    x
}

/// `x_i = α Σ_j A_ij x_j / k_j + γ` with `γ = (1 - α) / n`; the mass of
/// vertices without neighbors is spread uniformly.
fn pagerank(g: &AttributedGraph, alpha: f64) -> Vec<f64> {
    let n = g.vertex_count();
    let nf = n as f64;
    let mut x = vec![1.0 / nf; n];
    for _ in 0..PAGERANK_MAX_ITER {
        let dangling: f64 = g
            .vertices()
            .filter(|&v| g.neighbors(v).is_empty())
            .map(|v| x[v])
            .sum();
        let base = (1.0 - alpha) / nf + alpha * dangling / nf;
        let next: Vec<f64> = g
            .vertices()
            .map(|i| {
                base + alpha
                    * g.neighbors(i)
                        .iter()
                        .map(|&j| x[j] / g.neighbors(j).len() as f64)
                        .sum::<f64>()
            })
            .collect();
        let change: f64 = next.iter().zip(&x).map(|(a, b)| (a - b).abs()).sum();
        x = next;
        if change < PAGERANK_TOL {
            break;
        }
    }
    x
}

/// Visits vertices in ascending `(score, index)` order for `rounds` rounds and
/// removes each one whose removal keeps the component count. A round that
/// lands on a cut vertex (or an isolated one) is spent without removal.
pub fn contract_by_scores(
    g: &AttributedGraph,
    scores: &[f64],
    rounds: usize,
) -> (AttributedGraph, ContractionReport) {
    let mut order: Vec<VertexId> = g.vertices().collect();
    order.sort_by(|&a, &b| scores[a].total_cmp(&scores[b]).then(a.cmp(&b)));
    let mut w = Working::new(g);
    for &v in order.iter().take(rounds) {
        if w.contractible(v) {
            w.remove(v);
        }
    }
    w.finish()
}

/// Number of rounds for fraction `r` of `n` vertices: `⌈r·n⌉`, ignoring
/// floating-point noise just above an integer.
pub fn rounds_for_fraction(r: f64, n: usize) -> Result<usize, CentralityError> {
    if !(0.0..=1.0).contains(&r) {
        return Err(CentralityError::InvalidFraction(r));
    }
    Ok(((r * n as f64) - 1e-9).ceil().max(0.0) as usize)
}

pub fn t_centrality_node_contraction(
    g: &AttributedGraph,
    t: usize,
    measure: Measure,
) -> Result<(AttributedGraph, ContractionReport), CentralityError> {
    let rounds = t.min(g.vertex_count());
    if rounds == 0 {
        return Ok(contract_by_scores(g, &vec![0.0; g.vertex_count()], 0));
    }
    let c = centrality(g, measure)?;
    Ok(contract_by_scores(g, &c.scores, rounds))
}

pub fn r_centrality_node_contraction(
    g: &AttributedGraph,
    r: f64,
    measure: Measure,
) -> Result<(AttributedGraph, ContractionReport), CentralityError> {
    let rounds = rounds_for_fraction(r, g.vertex_count())?;
    t_centrality_node_contraction(g, rounds, measure)
}

pub fn r_centrality_ged(
    g1: &AttributedGraph,
    g2: &AttributedGraph,
    r: f64,
    measure: Measure,
    params: &EditCostParams,
    beam_width: Option<usize>,
) -> Result<EditPath, EditError> {
    let (h1, _) = r_centrality_node_contraction(g1, r, measure)?;
    let (h2, _) = r_centrality_node_contraction(g2, r, measure)?;
    ged(&h1, &h2, params, beam_width)
}

pub fn t_centrality_ged(
    g1: &AttributedGraph,
    g2: &AttributedGraph,
    t: usize,
    measure: Measure,
    params: &EditCostParams,
    beam_width: Option<usize>,
) -> Result<EditPath, EditError> {
    let (h1, _) = t_centrality_node_contraction(g1, t, measure)?;
    let (h2, _) = t_centrality_node_contraction(g2, t, measure)?;
    ged(&h1, &h2, params, beam_width)
}
