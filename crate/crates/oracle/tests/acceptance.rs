//! Acceptance suite. Every criterion writes one `ACCEPTANCE` line to stderr
//! (bypassing the test harness capture) and then asserts its verdict.
//!
//! Dataset-backed criteria read IAM directories from `GRAPHMATCH_LETTER_HIGH`
//! and `GRAPHMATCH_AIDS` (each holding `train.cxl`, `validation.cxl`,
//! `test.cxl` and the GXL files). Without them the criterion prints `SKIP`
//! and a synthetic analogue runs instead.

use std::io::Write;
use std::path::PathBuf;
use std::sync::Mutex;
use std::time::Instant;

use graphmatch::centrality::{
    centrality, r_centrality_node_contraction, t_centrality_node_contraction, Measure,
};
use graphmatch::contraction::{k_star_node_contraction, k_star_node_deletion, path_contract};
use graphmatch::dataset::{synthesize_corpus, DatasetSplit, Graph, Profile, SplitName, SynthSpec};
use graphmatch::geometric::distance::{
    edge_distance_metric, graph_distance_metric, vertex_distance,
};
use graphmatch::geometric::iso::{geometric_graph_isomorphism, IsoVerdict};
use graphmatch::geometric::lsap::{solve_lsap, CostMatrix};
use graphmatch::graph::random_graph;
use graphmatch::{ged, AttributedGraph, EditCostParams, GeometricGraph, Point, Similarity};
use graphmatch_bench::source::{letter_like, molecule_like};
use graphmatch_bench::{
    benchmark, bootstrap_order_fraction, knn_classify_with, load_source, KnnOptions, MatcherSpec,
};
use graphmatch_oracle::{all_graphs, brute_ged, isomorphic, non_two_degrees, permutations};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Criteria run one at a time so that runtimes and timing orders are not
/// distorted by each other.
static SERIAL: Mutex<()> = Mutex::new(());

fn serial() -> std::sync::MutexGuard<'static, ()> {
    SERIAL.lock().unwrap_or_else(|e| e.into_inner())
}

fn report(id: &str, pass: bool, detail: &str) -> bool {
    let verdict = if pass { "PASS" } else { "FAIL" };
    let _ = writeln!(std::io::stderr(), "ACCEPTANCE {id:<3} {verdict} {detail}");
    pass
}

fn skip(id: &str, detail: &str) {
    let _ = writeln!(std::io::stderr(), "ACCEPTANCE {id:<3} SKIP {detail}");
}

fn jobs() -> usize {
    std::thread::available_parallelism().map_or(1, |n| n.get())
}

fn random_points<R: Rng>(rng: &mut R, n: usize, side: f64) -> Vec<Point> {
    (0..n)
        .map(|_| Point::new(rng.random_range(0.0..side), rng.random_range(0.0..side)))
        .collect()
}

/// `m` distinct random edges on `n` vertices, none isolated when `cover`.
fn random_edges<R: Rng>(rng: &mut R, n: usize, m: usize, cover: bool) -> Vec<(usize, usize)> {
    let mut edges: Vec<(usize, usize)> = Vec::new();
    let add = |edges: &mut Vec<(usize, usize)>, u: usize, v: usize| {
        let e = (u.min(v), u.max(v));
        if u != v && !edges.contains(&e) {
            edges.push(e);
        }
    };
    if cover {
        let mut order: Vec<usize> = (0..n).collect();
        order.shuffle(rng);
        for pair in order.chunks(2) {
            match *pair {
                [u, v] => add(&mut edges, u, v),
                [u] => add(&mut edges, u, order[0]),
                _ => unreachable!(),
            }
        }
    }
    while edges.len() < m {
        let (u, v) = (rng.random_range(0..n), rng.random_range(0..n));
        add(&mut edges, u, v);
    }
    edges
}

fn to_geometric(g: &AttributedGraph, pts: &[Point]) -> GeometricGraph {
    let edges: Vec<_> = g.edges().map(|(e, _)| e.endpoints()).collect();
    GeometricGraph::from_points(pts, &edges).unwrap()
}

fn load(dir: &std::path::Path, file: &str, profile: &Profile, split: SplitName) -> DatasetSplit {
    let index = dir.join(file);
    let loaded = load_source(index.to_str().unwrap(), Some(dir), profile, split)
        .unwrap_or_else(|e| panic!("loading {}: {e}", index.display()));
    loaded.split
}

fn env_dir(var: &str) -> Option<PathBuf> {
    std::env::var_os(var)
        .map(PathBuf::from)
        .filter(|p| p.join("test.cxl").is_file())
}

fn synth(spec: SynthSpec) -> DatasetSplit {
    synthesize_corpus(&spec)
}

// --------------------------------------------------------------- criteria

#[test]
fn criterion_01_exact_ged_matches_enumeration() {
    let _guard = serial();
    let start = Instant::now();
    let graphs: Vec<_> = (0..=4).flat_map(all_graphs).collect();
    let params = EditCostParams::default();
    let (mut pairs, mut mismatches) = (0, Vec::new());
    for a in &graphs {
        for b in &graphs {
            let got = ged(a, b, &params, None).unwrap().total_cost;
            let want = brute_ged(a, b);
            pairs += 1;
            if got != want {
                mismatches.push((a.clone(), b.clone(), got, want));
            }
        }
    }
    let secs = start.elapsed().as_secs_f64();
    let pass = mismatches.is_empty() && secs < 60.0;
    let detail = format!(
        "{pairs} pairs up to 4 vertices, {} mismatches, {secs:.1} s (limit 60 s)",
        mismatches.len()
    );
    assert!(report("1", pass, &detail), "{:?}", mismatches.first());
}

#[test]
fn criterion_02_metric_axioms() {
    let _guard = serial();
    const SLACK: f64 = 1e-9;
    const TRIPLES: usize = 500;
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let mut failures = Vec::new();
    type Dist = fn(&GeometricGraph, &GeometricGraph) -> f64;
    let vd: Dist = |a, b| vertex_distance(a, b).unwrap();
    let edm: Dist = |a, b| edge_distance_metric(a, b).unwrap();
    let gdm: Dist = |a, b| graph_distance_metric(a, b).unwrap();
    for (name, d) in [("VD", vd), ("EDM", edm), ("GDM", gdm)] {
        for t in 0..TRIPLES {
            let n: usize = rng.random_range(2..=7);
            let m = match name {
                "VD" => 0,
                "EDM" => rng.random_range(n.div_ceil(2)..=n * (n - 1) / 2),
                _ => rng.random_range(0..=n * (n - 1) / 2),
            };
            let gs: Vec<GeometricGraph> = (0..3)
                .map(|_| {
                    let edges = random_edges(&mut rng, n, m, name == "EDM");
                    GeometricGraph::from_points(&random_points(&mut rng, n, 3.0), &edges).unwrap()
                })
                .collect();
            let (a, b, c) = (&gs[0], &gs[1], &gs[2]);
            let ok = d(a, a) <= SLACK
                && d(a, b) > SLACK
                && (d(a, b) - d(b, a)).abs() <= SLACK
                && d(a, c) <= d(a, b) + d(b, c) + SLACK;
            if !ok {
                failures.push(format!("{name} triple {t}"));
            }
        }
    }
    let secs = start.elapsed().as_secs_f64();
    let pass = failures.is_empty() && secs < 30.0;
    let detail = format!(
        "VD/EDM/GDM x {TRIPLES} triples, identity+symmetry+triangle at 1e-9, {} violations, {secs:.1} s (limit 30 s)",
        failures.len()
    );
    assert!(report("2", pass, &detail), "{failures:?}");
}

#[test]
fn criterion_03_lsap_optimality() {
    let _guard = serial();
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let mut bad = 0;
    for i in 0..1000 {
        let n = rng.random_range(1..=7);
        let integer = i % 2 == 0;
        let rows: Vec<Vec<f64>> = (0..n)
            .map(|_| {
                (0..n)
                    .map(|_| {
                        if integer {
                            rng.random_range(0..20) as f64
                        } else {
                            rng.random_range(0.0..10.0)
                        }
                    })
                    .collect()
            })
            .collect();
        let got = solve_lsap(&CostMatrix::from_rows(&rows).unwrap()).unwrap();
        let mut best = f64::INFINITY;
        permutations(n, |p| {
            best = best.min(p.iter().enumerate().map(|(r, &c)| rows[r][c]).sum());
            true
        });
        let own: f64 = got
            .mapping
            .iter()
            .enumerate()
            .map(|(r, &c)| rows[r][c])
            .sum();
        let tol = if integer { 0.0 } else { 1e-9 };
        if (got.total_cost - best).abs() > tol || (own - best).abs() > tol {
            bad += 1;
        }
    }
    let secs = start.elapsed().as_secs_f64();
    let pass = bad == 0 && secs < 30.0;
    let detail = format!(
        "1000 matrices up to 7x7 vs permutation brute force, {bad} non-optimal, {secs:.1} s (limit 30 s)"
    );
    assert!(report("3", pass, &detail));
}

#[test]
fn criterion_04_homeomorphism_preserved() {
    let _guard = serial();
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let mut bad = Vec::new();
    for i in 0..100u64 {
        let g = random_graph(rng.random_range(1..=8), rng.random_range(0.1..0.6), i).unwrap();
        let mut n = g.vertex_count();
        let mut edges = Vec::new();
        for (e, _) in g.edges() {
            let (u, v) = e.endpoints();
            let mut prev = u;
            for _ in 0..rng.random_range(1..=3) {
                edges.push((prev, n));
                prev = n;
                n += 1;
            }
            edges.push((prev, v));
        }
        let sub = AttributedGraph::from_edges(n, &edges).unwrap();
        let (direct, _) = path_contract(&g);
        let (via, _) = path_contract(&sub);
        if non_two_degrees(&direct) != non_two_degrees(&via) || !isomorphic(&direct, &via) {
            bad.push(i);
        }
    }
    let detail = format!(
        "100 graphs (n<=8), edges subdivided 1-3 times, {} not isomorphic after path contraction",
        bad.len()
    );
    assert!(report("4", bad.is_empty(), &detail), "{bad:?}");
}

#[test]
fn criterion_05_contraction_safety() {
    let _guard = serial();
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let (mut component_changes, mut order_violations) = (0, 0);
    for i in 0..1000u64 {
        let n = rng.random_range(1..=12);
        let g = random_graph(n, rng.random_range(0.0..0.6), i).unwrap();
        let c = g.component_count();
        let k = rng.random_range(1..=3);
        let (nc, _) = k_star_node_contraction(&g, k);
        let (nd, _) = k_star_node_deletion(&g, k);
        let mut counts = vec![nc.component_count()];
        let r = rng.random_range(0.0..=1.0);
        let t = rng.random_range(0..=n);
        for m in Measure::ALL {
            counts.push(
                r_centrality_node_contraction(&g, r, m)
                    .unwrap()
                    .0
                    .component_count(),
            );
            counts.push(
                t_centrality_node_contraction(&g, t, m)
                    .unwrap()
                    .0
                    .component_count(),
            );
        }
        component_changes += counts.iter().filter(|&&x| x != c).count();
        if nd.vertex_count() > nc.vertex_count() {
            order_violations += 1;
        }
    }
    let pass = component_changes == 0 && order_violations == 0;
    let detail = format!(
        "1000 graphs: {component_changes} component-count changes (k*-NC, r/t-NC x 4 measures), \
         {order_violations} cases with |k*-ND| > |k*-NC|"
    );
    assert!(report("5", pass, &detail));
}

#[test]
fn criterion_06_similarity_copies_are_isomorphic() {
    let _guard = serial();
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let mut bad = Vec::new();
    for i in 0..100u64 {
        let n = rng.random_range(3..=9);
        let mut g = random_graph(n, 0.5, 1000 + i).unwrap();
        if g.edge_count() == 0 {
            g = AttributedGraph::from_edges(n, &[(0, 1)]).unwrap();
        }
        let gg = to_geometric(&g, &random_points(&mut rng, n, 3.0));
        let t = Similarity::new(
            rng.random_range(0.2..5.0),
            rng.random_range(0.0..std::f64::consts::TAU),
            Point::new(rng.random_range(-10.0..10.0), rng.random_range(-10.0..10.0)),
        );
        let moved = gg.transformed(&t);
        let verdict = geometric_graph_isomorphism(&gg, &moved, 0.0).unwrap();
        if verdict != IsoVerdict::Isomorphic {
            bad.push((i, verdict));
        }
    }
    let detail = format!(
        "100 random similarity copies, {} not reported isomorphic",
        bad.len()
    );
    assert!(report("6", bad.is_empty(), &detail), "{bad:?}");
}

#[test]
fn criterion_07_tolerant_detection() {
    let _guard = serial();
    const T: f64 = 0.05;
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut bad = Vec::new();
    for i in 0..100u64 {
        let n = rng.random_range(3..=9);
        let mut g = random_graph(n, 0.5, 2000 + i).unwrap();
        if g.edge_count() == 0 {
            g = AttributedGraph::from_edges(n, &[(0, 1)]).unwrap();
        }
        let pts = random_points(&mut rng, n, 3.0);
        let jittered: Vec<Point> = pts
            .iter()
            .map(|p| {
                Point::new(
                    p.x + rng.random_range(0.0..=T),
                    p.y + rng.random_range(0.0..=T),
                )
            })
            .collect();
        let (a, b) = (to_geometric(&g, &pts), to_geometric(&g, &jittered));
        let verdict = geometric_graph_isomorphism(&a, &b, 2.0 * T).unwrap();
        if !matches!(
            verdict,
            IsoVerdict::TolerantIsomorphic | IsoVerdict::Isomorphic
        ) {
            bad.push((i, verdict));
        }
    }
    let detail = format!(
        "100 trials, jitter U[0,{T}] per axis, threshold {}: {} missed",
        2.0 * T,
        bad.len()
    );
    assert!(report("7", bad.is_empty(), &detail), "{bad:?}");
}

/// The six-vertex example graph A..F: AB, AF, BF, BC, CF, CD, DF, DE.
fn example_graph() -> AttributedGraph {
    AttributedGraph::from_edges(
        6,
        &[
            (0, 1),
            (0, 5),
            (1, 5),
            (1, 2),
            (2, 5),
            (2, 3),
            (3, 5),
            (3, 4),
        ],
    )
    .unwrap()
}

#[test]
fn criterion_08a_degree_and_betweenness() {
    let _guard = serial();
    let g = example_graph();
    let degree = centrality(&g, Measure::Degree).unwrap().scores;
    let betweenness = centrality(&g, Measure::Betweenness).unwrap().scores;
    let pass =
        degree == [2.0, 3.0, 3.0, 3.0, 1.0, 4.0] && betweenness == [0.0, 0.5, 1.0, 4.0, 0.0, 3.5];
    let detail = format!("degree {degree:?}, betweenness {betweenness:?}");
    assert!(report("8a", pass, &detail));
}

#[test]
fn criterion_08b_pagerank() {
    let _guard = serial();
    const TOL: f64 = 0.02;
    let expected = [0.09, 0.18, 0.15, 0.26, 0.05, 0.25];
    let got = centrality(&example_graph(), Measure::PageRank)
        .unwrap()
        .scores;
    let worst = got
        .iter()
        .zip(expected)
        .map(|(a, b)| (a - b).abs())
        .fold(0.0, f64::max);
    let shown: Vec<String> = got.iter().map(|x| format!("{x:.3}")).collect();
    let detail = format!(
        "got [{}] vs {expected:?}, max deviation {worst:.3} (tolerance {TOL})",
        shown.join(", ")
    );
    assert!(report("8b", worst <= TOL, &detail));
}

#[test]
fn criterion_09_letter_high_accuracy() {
    let _guard = serial();
    let matcher: MatcherSpec = "geometric(0.35,0.23,0.11,0.31)".parse().unwrap();
    let options = KnnOptions { k: 1, jobs: jobs() };
    if let Some(dir) = env_dir("GRAPHMATCH_LETTER_HIGH") {
        let train = load(&dir, "train.cxl", &Profile::Letter, SplitName::Train);
        let test = load(&dir, "test.cxl", &Profile::Letter, SplitName::Test);
        let (res, _) = knn_classify_with(&train, &test, &matcher, &options).unwrap();
        let a = res.per_class_accuracy.get("A").copied().unwrap_or(f64::NAN);
        let pass = (res.mean_accuracy - 89.06).abs() <= 3.0 && (a - 98.0).abs() <= 4.0;
        let detail = format!(
            "letter HIGH 1-NN mean {:.2}% (89.06 +- 3), class A {a:.2}% (98 +- 4)",
            res.mean_accuracy
        );
        assert!(report("9", pass, &detail));
        return;
    }
    skip(
        "9",
        "GRAPHMATCH_LETTER_HIGH not set; running synthetic analogue 9s",
    );
    let exact = |split| SynthSpec {
        sigma: 0.0,
        edge_noise: 0.0,
        per_class: 10,
        ..letter_like(split, 9)
    };
    let (res, _) = knn_classify_with(
        &synth(exact(SplitName::Train)),
        &synth(exact(SplitName::Test)),
        &matcher,
        &options,
    )
    .unwrap();
    let detail = format!(
        "noise-free letter-like corpus, 1-NN geometric: {:.2}% (expect 100)",
        res.mean_accuracy
    );
    assert!(report("9s", res.mean_accuracy == 100.0, &detail));
}

#[test]
fn criterion_10_aids_accuracy() {
    let _guard = serial();
    let matcher: MatcherSpec = "geometric".parse().unwrap();
    let options = KnnOptions { k: 1, jobs: jobs() };
    if let Some(dir) = env_dir("GRAPHMATCH_AIDS") {
        let profile = Profile::molecule();
        let train = load(&dir, "train.cxl", &profile, SplitName::Train);
        let test = load(&dir, "test.cxl", &profile, SplitName::Test);
        let (res, _) = knn_classify_with(&train, &test, &matcher, &options).unwrap();
        let class = |names: [&str; 2]| {
            names
                .iter()
                .find_map(|n| res.per_class_accuracy.get(*n).copied())
                .unwrap_or(f64::NAN)
        };
        let (active, inactive) = (class(["a", "active"]), class(["i", "inactive"]));
        let pass = active >= 96.0 && inactive >= 95.0;
        let detail =
            format!("AIDS 1-NN active {active:.2}% (>= 96), inactive {inactive:.2}% (>= 95)");
        assert!(report("10", pass, &detail));
        return;
    }
    skip(
        "10",
        "GRAPHMATCH_AIDS not set; running synthetic analogue 10s",
    );
    let small = |split| SynthSpec {
        per_class: 20,
        ..molecule_like(split, 10)
    };
    let (res, _) = knn_classify_with(
        &synth(small(SplitName::Train)),
        &synth(small(SplitName::Test)),
        &matcher,
        &options,
    )
    .unwrap();
    let worst = res
        .per_class_accuracy
        .values()
        .copied()
        .fold(f64::INFINITY, f64::min);
    let detail = format!(
        "molecule-like corpus, 1-NN geometric per class {:?} (each >= 95)",
        res.per_class_accuracy
    );
    assert!(report("10s", worst >= 95.0, &detail));
}

/// Per-pair times of each matcher over `pairs`, restricted to pairs every
/// matcher finished.
fn paired_times(pairs: &[(Graph, Graph)], methods: &[&str]) -> (Vec<Vec<f64>>, Vec<f64>) {
    let runs: Vec<_> = methods
        .iter()
        .map(|m| benchmark(pairs, &m.parse::<MatcherSpec>().unwrap(), 3))
        .collect();
    let ok: Vec<usize> = (0..pairs.len())
        .filter(|&i| runs.iter().all(|r| r.per_pair_ms[i].is_some()))
        .collect();
    let series: Vec<Vec<f64>> = runs
        .iter()
        .map(|r| ok.iter().map(|&i| r.per_pair_ms[i].unwrap()).collect())
        .collect();
    let means = series
        .iter()
        .map(|s| s.iter().sum::<f64>() / s.len().max(1) as f64)
        .collect();
    (series, means)
}

fn pairs_from(split: &DatasetSplit, count: usize, seed: u64) -> Vec<(Graph, Graph)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = split.len();
    (0..count)
        .map(|_| {
            let (i, j) = (rng.random_range(0..n), rng.random_range(0..n));
            (
                split.instances[i].graph.clone(),
                split.instances[j].graph.clone(),
            )
        })
        .collect()
}

#[test]
fn criterion_11_runtime_ordering() {
    let _guard = serial();
    let (letter, molecule, source) = match (
        env_dir("GRAPHMATCH_LETTER_HIGH"),
        env_dir("GRAPHMATCH_AIDS"),
    ) {
        (Some(l), Some(a)) => (
            load(&l, "test.cxl", &Profile::Letter, SplitName::Test),
            load(&a, "test.cxl", &Profile::molecule(), SplitName::Test),
            "IAM letter HIGH / AIDS",
        ),
        _ => {
            skip(
                "11",
                "GRAPHMATCH_LETTER_HIGH/GRAPHMATCH_AIDS not set; running synthetic analogue 11s",
            );
            (
                synth(letter_like(SplitName::Test, 11)),
                synth(molecule_like(SplitName::Test, 11)),
                "synthetic",
            )
        }
    };
    let id = if source == "synthetic" { "11s" } else { "11" };
    let letter_methods = ["ged", "kstar-ged(1)", "kstar-ged(2)"];
    let (series_l, means_l) = paired_times(&pairs_from(&letter, 60, 1), &letter_methods);
    let frac_l = bootstrap_order_fraction(&series_l, 1000, 11);
    let molecule_methods = ["bipartite", "ged-beam(10)", "geometric"];
    let (series_m, means_m) = paired_times(&pairs_from(&molecule, 40, 2), &molecule_methods);
    let frac_m = bootstrap_order_fraction(&series_m, 1000, 12);
    let fmt = |names: &[&str], means: &[f64]| {
        names
            .iter()
            .zip(means)
            .map(|(n, m)| format!("{n} {m:.3} ms"))
            .collect::<Vec<_>>()
            .join(" > ")
    };
    let pass = frac_l >= 0.8 && frac_m >= 0.8;
    let detail = format!(
        "{source}: [{}] holds on {:.0}% of resamples; [{}] holds on {:.0}% (each needs >= 80%)",
        fmt(&letter_methods, &means_l),
        100.0 * frac_l,
        fmt(&molecule_methods, &means_m),
        100.0 * frac_m
    );
    assert!(report(id, pass, &detail));
}

#[test]
fn criterion_12_kstar_accuracy_degrades() {
    let _guard = serial();
    let (train, test, id) = match env_dir("GRAPHMATCH_LETTER_HIGH") {
        Some(dir) => (
            load(&dir, "train.cxl", &Profile::Letter, SplitName::Train),
            load(&dir, "test.cxl", &Profile::Letter, SplitName::Test),
            "12",
        ),
        None => {
            skip(
                "12",
                "GRAPHMATCH_LETTER_HIGH not set; running synthetic analogue 12s",
            );
            let small = |split| SynthSpec {
                per_class: 16,
                ..letter_like(split, 12)
            };
            (
                synth(small(SplitName::Train)),
                synth(small(SplitName::Test)),
                "12s",
            )
        }
    };
    let options = KnnOptions { k: 1, jobs: jobs() };
    let per_k: Vec<_> = (1..=3)
        .map(|k| {
            let m: MatcherSpec = format!("kstar-ged({k})").parse().unwrap();
            knn_classify_with(&train, &test, &m, &options).unwrap().0
        })
        .collect();
    let classes = test.classes();
    let monotone = classes
        .iter()
        .filter(|c| {
            let acc: Vec<f64> = per_k.iter().map(|r| r.per_class_accuracy[**c]).collect();
            acc.windows(2).all(|w| w[0] >= w[1])
        })
        .count();
    let need = (12 * classes.len()).div_ceil(15);
    let means: Vec<String> = per_k
        .iter()
        .map(|r| format!("{:.1}%", r.mean_accuracy))
        .collect();
    let detail = format!(
        "accuracy nonincreasing over k=1..3 on {monotone}/{} classes (need {need}); mean by k: {}",
        classes.len(),
        means.join(", ")
    );
    assert!(report(id, monotone >= need, &detail));
}
