//! Random geometric corpora for runs without the IAM data.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{DatasetSplit, Graph, LabeledInstance, SplitName};
use crate::graph::{random_graph_with, AttributedGraph, Label};
use crate::plane::{GeometricGraph, Point};

#[derive(Debug, Clone, PartialEq)]
pub struct SynthSpec {
    /// Inclusive range of prototype sizes.
    pub n_range: (usize, usize),
    pub p: f64,
    pub classes: usize,
    pub per_class: usize,
    /// Each copy moves every coordinate by a uniform amount in `[-sigma, sigma]`.
    pub sigma: f64,
    /// Each copy toggles every vertex pair with this probability (0 keeps the
    /// prototype's edges).
    pub edge_noise: f64,
    pub seed: u64,
    pub split: SplitName,
}

impl Default for SynthSpec {
    fn default() -> Self {
        SynthSpec {
            n_range: (3, 9),
            p: 0.4,
            classes: 15,
            per_class: 50,
            sigma: 0.0,
            edge_noise: 0.0,
            seed: 0,
            split: SplitName::Test,
        }
    }
}

fn stream(split: SplitName) -> u64 {
    match split {
        SplitName::Train => 1,
        SplitName::Validation => 2,
        SplitName::Test => 3,
    }
}

fn prototypes(spec: &SynthSpec) -> Vec<(AttributedGraph, Vec<Point>)> {
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    let (lo, hi) = (
        spec.n_range.0.min(spec.n_range.1),
        spec.n_range.0.max(spec.n_range.1),
    );
    let p = spec.p.clamp(0.0, 1.0);
    (0..spec.classes)
        .map(|_| {
            let n = rng.random_range(lo..=hi);
            let g = random_graph_with(n, p, &mut rng).expect("probability is clamped");
            let pts = (0..n)
                .map(|_| Point::new(rng.random(), rng.random()))
                .collect();
            (g, pts)
        })
        .collect()
}

fn copy<R: Rng>(
    proto: &AttributedGraph,
    pts: &[Point],
    spec: &SynthSpec,
    rng: &mut R,
) -> GeometricGraph {
    let s = spec.sigma.abs();
    let moved: Vec<Point> = pts
        .iter()
        .map(|p| {
            if s == 0.0 {
                *p
            } else {
                Point::new(
                    p.x + rng.random_range(-s..=s),
                    p.y + rng.random_range(-s..=s),
                )
            }
        })
        .collect();
    let n = pts.len();
    let mut g = AttributedGraph::new();
    for p in &moved {
        g.add_vertex(Label::point(p.x, p.y)).expect("2-d labels");
    }
    let noise = spec.edge_noise.clamp(0.0, 1.0);
    for u in 0..n {
        for v in (u + 1)..n {
            let flip = noise > 0.0 && rng.random_bool(noise);
            if proto.has_edge(u, v) != flip {
                g.add_edge(u, v, Label::Empty).expect("simple graph");
            }
        }
    }
    GeometricGraph::new(g, moved).expect("finite coordinates")
}

/// `classes` random prototypes and `per_class` distorted copies of each.
///
/// Prototypes depend only on `seed`, so splits drawn with the same seed share
/// classes; the distortions use a separate stream per split. Classes are
/// named `c00`, `c01`, ... and instances `c00_000`, ...
pub fn synthesize_corpus(spec: &SynthSpec) -> DatasetSplit {
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    rng.set_stream(stream(spec.split));
    let mut split = DatasetSplit::new(spec.split);
    for (c, (proto, pts)) in prototypes(spec).iter().enumerate() {
        let class = format!("c{c:02}");
        for i in 0..spec.per_class {
            let g = copy(proto, pts, spec, &mut rng);
            split
                .push(LabeledInstance {
                    graph: Graph::Geometric(g),
                    class_label: class.clone(),
                    source_id: format!("{class}_{i:03}"),
                })
                .expect("generated ids are unique");
        }
    }
    split
}
