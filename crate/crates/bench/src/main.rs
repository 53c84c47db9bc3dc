use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use graphmatch::centrality::{
    r_centrality_node_contraction, t_centrality_node_contraction, Measure,
};
use graphmatch::contraction::{k_star_node_contraction, path_contract, ContractionReport};
use graphmatch::dataset::{
    parse_gxl, synthesize_corpus, write_cxl, write_gxl, DatasetSplit, Graph, IndexEntry,
    LoadedSplit, Profile, SplitName, SynthSpec,
};
use graphmatch::geometric::{isomorphism_report, DistanceWeights, IsoVerdict};
use graphmatch::{AttributedGraph, EditCostParams, GeometricGraph};
use graphmatch_bench::knn::{audit_accuracy, knn_classify_with, KnnOptions};
use graphmatch_bench::source::load_source;
use graphmatch_bench::{benchmark, tune_weights, MatcherSpec};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

/// Exit status for command-line mistakes.
const EXIT_USAGE: u8 = 64;
/// Exit status for failures while running a command.
const EXIT_FAILURE: u8 = 3;

#[derive(Parser)]
#[command(name = "graphmatch", version, about = "Graph matching experiments")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum ProfileArg {
    Letter,
    Molecule,
    Generic,
}

impl ProfileArg {
    fn profile(self) -> Profile {
        match self {
            ProfileArg::Letter => Profile::Letter,
            ProfileArg::Molecule => Profile::molecule(),
            ProfileArg::Generic => Profile::Generic,
        }
    }
}

#[derive(clap::Args)]
struct Costs {
    #[arg(long, default_value_t = 1.0)]
    x_node: f64,
    #[arg(long, default_value_t = 1.0)]
    y_node: f64,
    #[arg(long, default_value_t = 1.0)]
    x_edge: f64,
    #[arg(long, default_value_t = 1.0)]
    y_edge: f64,
    #[arg(long, default_value_t = 1.0)]
    z_path: f64,
}

impl Costs {
    fn params(&self) -> Result<EditCostParams> {
        let p = EditCostParams {
            x_node: self.x_node,
            y_node: self.y_node,
            x_edge: self.x_edge,
            y_edge: self.y_edge,
            z_path: self.z_path,
        };
        if !p.is_valid() {
            bail!("edit costs must be finite and nonnegative");
        }
        Ok(p)
    }
}

#[derive(Subcommand)]
enum Command {
    /// k-NN classification of a test split against a training split.
    Classify {
        /// CXL index or `synth:` spec.
        #[arg(long)]
        train: String,
        #[arg(long)]
        test: String,
        /// Directory of the GXL files (default: next to each index).
        #[arg(long)]
        data: Option<PathBuf>,
        #[arg(long, value_enum, default_value = "letter")]
        profile: ProfileArg,
        #[arg(long, default_value = "geometric")]
        method: MatcherSpec,
        #[arg(long, default_value_t = 1)]
        knn: usize,
        #[arg(long, default_value_t = 1)]
        jobs: usize,
        /// Recompute accuracy from the distance matrix and fail on mismatch.
        #[arg(long)]
        audit: bool,
        /// Also write every pair distance to this CSV.
        #[arg(long)]
        distances: Option<PathBuf>,
        #[arg(long)]
        out: PathBuf,
        #[command(flatten)]
        costs: Costs,
    },
    /// Time several matchers on the same random pairs.
    Bench {
        /// CXL index or `synth:` spec the pairs are drawn from.
        #[arg(long)]
        pairs: String,
        #[arg(long)]
        data: Option<PathBuf>,
        #[arg(long, value_enum, default_value = "letter")]
        profile: ProfileArg,
        #[arg(long, num_args = 1.., required = true)]
        methods: Vec<MatcherSpec>,
        #[arg(long, default_value_t = 3)]
        reps: usize,
        #[arg(long, default_value_t = 50)]
        count: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Also write the per-pair distances of every method to this CSV.
        #[arg(long)]
        distances: Option<PathBuf>,
        #[arg(long)]
        out: PathBuf,
        #[command(flatten)]
        costs: Costs,
    },
    /// Contract one graph and write the result as GXL.
    Contract {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long, value_enum)]
        mode: ContractMode,
        #[arg(long, default_value_t = 1)]
        k: usize,
        #[arg(long, default_value_t = 0.1)]
        r: f64,
        #[arg(long, default_value_t = 1)]
        t: usize,
        #[arg(long, default_value = "degree")]
        measure: Measure,
        #[arg(long, value_enum, default_value = "generic")]
        profile: ProfileArg,
        #[arg(long)]
        out: PathBuf,
    },
    /// Exit 0 if isomorphic, 1 if t-tolerant isomorphic, 2 otherwise.
    Isocheck {
        #[arg(long)]
        g1: PathBuf,
        #[arg(long)]
        g2: PathBuf,
        #[arg(long, default_value_t = 0.0)]
        tolerance: f64,
        #[arg(long, value_enum, default_value = "letter")]
        profile: ProfileArg,
    },
    /// Steepest-ascent search for geometric distance weights.
    Tune {
        #[arg(long)]
        train: String,
        #[arg(long)]
        validation: String,
        #[arg(long)]
        data: Option<PathBuf>,
        #[arg(long, value_enum, default_value = "letter")]
        profile: ProfileArg,
        #[arg(long, default_value_t = 0.02)]
        delta: f64,
        /// Comma-separated start weights.
        #[arg(long, default_value = "0.25,0.25,0.25,0.25")]
        start: String,
        #[arg(long)]
        out: PathBuf,
    },
    /// Write a synthetic corpus as GXL files with train/validation/test indexes.
    Synth {
        #[arg(long, default_value_t = 15)]
        classes: usize,
        #[arg(long, default_value_t = 50)]
        per_class: usize,
        #[arg(long, default_value_t = 0.0)]
        sigma: f64,
        #[arg(long, default_value_t = 0.0)]
        edge_noise: f64,
        #[arg(long, default_value_t = 3)]
        n_min: usize,
        #[arg(long, default_value_t = 9)]
        n_max: usize,
        #[arg(long, default_value_t = 0.4)]
        p: f64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: PathBuf,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum ContractMode {
    Kstar,
    Rcentrality,
    Tcentrality,
    Path,
}

fn load(
    source: &str,
    data: Option<&Path>,
    profile: &Profile,
    split: SplitName,
) -> Result<DatasetSplit> {
    let LoadedSplit { split, failures } =
        load_source(source, data, profile, split).with_context(|| format!("loading {source}"))?;
    for f in &failures {
        eprintln!("skipped {}: {}", f.file.display(), f.error);
    }
    eprintln!(
        "{source}: {} instances loaded, {} skipped",
        split.len(),
        failures.len()
    );
    Ok(split)
}

fn read_graph(path: &Path, profile: &Profile) -> Result<Graph> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    parse_gxl(&text, profile).with_context(|| format!("parsing {}", path.display()))
}

#[derive(Serialize)]
struct ClassRow<'a> {
    method: &'a str,
    knn: usize,
    class: &'a str,
    accuracy: f64,
    mean_accuracy: f64,
    mean_time_ms: f64,
    pair_count: usize,
    failed_pairs: usize,
}

#[allow(clippy::too_many_arguments)]
fn classify(
    train: &str,
    test: &str,
    data: Option<&Path>,
    profile: &Profile,
    method: MatcherSpec,
    knn: usize,
    jobs: usize,
    audit: bool,
    distances: Option<&Path>,
    out: &Path,
) -> Result<()> {
    let train = load(train, data, profile, SplitName::Train)?;
    let test = load(test, data, profile, SplitName::Test)?;
    let (result, matrix) = knn_classify_with(&train, &test, &method, &KnnOptions { k: knn, jobs })?;
    if audit {
        let check = audit_accuracy(&matrix, &train, &test, knn);
        if (check - result.mean_accuracy).abs() > 1e-9 {
            bail!(
                "audit failed: classifier reports {} but the distance matrix gives {check}",
                result.mean_accuracy
            );
        }
        eprintln!("audit passed");
    }
    let mut w = csv::Writer::from_path(out)?;
    for (class, acc) in &result.per_class_accuracy {
        w.serialize(ClassRow {
            method: &result.method,
            knn,
            class,
            accuracy: *acc,
            mean_accuracy: result.mean_accuracy,
            mean_time_ms: result.mean_time_ms,
            pair_count: result.pair_count,
            failed_pairs: result.failed_pairs,
        })?;
    }
    w.flush()?;
    if let Some(path) = distances {
        let mut w = csv::Writer::from_path(path)?;
        w.write_record(["test", "train", "distance"])?;
        for (t, row) in test.instances.iter().zip(&matrix.values) {
            for (r, d) in train.instances.iter().zip(row) {
                let d = d.map_or_else(String::new, |d| d.to_string());
                w.write_record([t.source_id.as_str(), r.source_id.as_str(), d.as_str()])?;
            }
        }
        w.flush()?;
    }
    println!(
        "{}: mean accuracy {:.2}%",
        result.method, result.mean_accuracy
    );
    Ok(())
}

#[derive(Serialize)]
struct BenchRow<'a> {
    method: &'a str,
    pair_count: usize,
    mean_ms: f64,
    median_ms: f64,
    min_ms: f64,
}

#[allow(clippy::too_many_arguments)]
fn bench(
    pairs: &str,
    data: Option<&Path>,
    profile: &Profile,
    methods: Vec<MatcherSpec>,
    costs: EditCostParams,
    reps: usize,
    count: usize,
    seed: u64,
    distances: Option<&Path>,
    out: &Path,
) -> Result<()> {
    let split = load(pairs, data, profile, SplitName::Test)?;
    if split.len() < 2 && count > 0 {
        bail!("need at least two graphs to form pairs");
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let pairs: Vec<(Graph, Graph)> = (0..count)
        .map(|_| {
            let i = rng.random_range(0..split.len());
            let mut j = rng.random_range(0..split.len() - 1);
            if j >= i {
                j += 1;
            }
            (
                split.instances[i].graph.clone(),
                split.instances[j].graph.clone(),
            )
        })
        .collect();
    let mut w = csv::Writer::from_path(out)?;
    let mut all = Vec::new();
    for m in methods {
        let s = benchmark(&pairs, &m.with_costs(costs), reps);
        w.serialize(BenchRow {
            method: &s.method,
            pair_count: s.pair_count,
            mean_ms: s.mean_ms,
            median_ms: s.median_ms,
            min_ms: s.min_ms,
        })?;
        println!(
            "{}: {} pairs, mean {:.3} ms",
            s.method, s.pair_count, s.mean_ms
        );
        all.push(s);
    }
    w.flush()?;
    if let Some(path) = distances {
        let mut w = csv::Writer::from_path(path)?;
        w.write_record(["pair", "method", "distance", "ms"])?;
        for s in &all {
            for (i, (d, t)) in s.distances.iter().zip(&s.per_pair_ms).enumerate() {
                let cell = |x: &Option<f64>| x.map_or_else(String::new, |v| v.to_string());
                w.write_record([i.to_string(), s.method.clone(), cell(d), cell(t)])?;
            }
        }
        w.flush()?;
    }
    Ok(())
}

fn rebuild(input: &Graph, g: AttributedGraph, report: &ContractionReport) -> Result<Graph> {
    Ok(match input.geometric() {
        Some(geo) => {
            let coords = report.kept.iter().map(|&v| geo.point(v)).collect();
            Graph::Geometric(GeometricGraph::new(g, coords)?)
        }
        None => Graph::Attributed(g),
    })
}

#[allow(clippy::too_many_arguments)]
fn contract(
    input: &Path,
    mode: ContractMode,
    k: usize,
    r: f64,
    t: usize,
    measure: Measure,
    profile: &Profile,
    out: &Path,
) -> Result<()> {
    let graph = read_graph(input, profile)?;
    let g = graph.attributed();
    let (h, report) = match mode {
        ContractMode::Kstar => k_star_node_contraction(g, k),
        ContractMode::Rcentrality => r_centrality_node_contraction(g, r, measure)?,
        ContractMode::Tcentrality => t_centrality_node_contraction(g, t, measure)?,
        ContractMode::Path => path_contract(g),
    };
    let result = rebuild(&graph, h, &report)?;
    let id = input
        .file_stem()
        .and_then(|s| s.to_str())
        .unwrap_or("graph");
    fs::write(out, write_gxl(&result, id))?;
    println!("{} -> {} vertices", report.before_n, report.after_n);
    Ok(())
}

fn isocheck(g1: &Path, g2: &Path, tolerance: f64, profile: &Profile) -> Result<u8> {
    let a = read_graph(g1, profile)?;
    let b = read_graph(g2, profile)?;
    let (a, b) = (a.require_geometric()?, b.require_geometric()?);
    let report = isomorphism_report(a, b, tolerance)?;
    let code = match report.verdict {
        IsoVerdict::Isomorphic => {
            println!("isomorphic");
            0
        }
        IsoVerdict::TolerantIsomorphic => {
            println!(
                "t-tolerant isomorphic (max axis gap {:.6})",
                report.max_axis_gap
            );
            1
        }
        IsoVerdict::Distance(d) => {
            println!("distance {d}");
            2
        }
    };
    Ok(code)
}

fn parse_weights(s: &str) -> Result<DistanceWeights> {
    let v: Vec<f64> = s
        .split(',')
        .map(|x| x.trim().parse())
        .collect::<Result<_, _>>()
        .context("start weights")?;
    let [w1, w2, w3, w4] = v[..] else {
        bail!("expected four comma-separated weights")
    };
    Ok(DistanceWeights::new(w1, w2, w3, w4)?)
}

#[derive(Serialize)]
struct TuneOut {
    w1: f64,
    w2: f64,
    w3: f64,
    w4: f64,
    validation_accuracy: f64,
    steps: usize,
    delta: f64,
}

#[allow(clippy::too_many_arguments)]
fn tune(
    train: &str,
    validation: &str,
    data: Option<&Path>,
    profile: &Profile,
    delta: f64,
    start: &str,
    out: &Path,
) -> Result<()> {
    let train = load(train, data, profile, SplitName::Train)?;
    let validation = load(validation, data, profile, SplitName::Validation)?;
    let r = tune_weights(&train, &validation, parse_weights(start)?, delta)?;
    let w = r.weights;
    let json = TuneOut {
        w1: w.w1,
        w2: w.w2,
        w3: w.w3,
        w4: w.w4,
        validation_accuracy: r.accuracy,
        steps: r.trajectory.len() - 1,
        delta,
    };
    fs::write(out, serde_json::to_string_pretty(&json)? + "\n")?;
    println!(
        "weights ({:.4}, {:.4}, {:.4}, {:.4}), validation accuracy {:.2}%",
        w.w1, w.w2, w.w3, w.w4, r.accuracy
    );
    Ok(())
}

fn synth(spec: SynthSpec, out: &Path) -> Result<()> {
    fs::create_dir_all(out)?;
    for split in [SplitName::Train, SplitName::Validation, SplitName::Test] {
        let corpus = synthesize_corpus(&SynthSpec {
            split,
            ..spec.clone()
        });
        let mut entries = Vec::with_capacity(corpus.len());
        for inst in &corpus.instances {
            let file = format!("{split}_{}.gxl", inst.source_id);
            fs::write(out.join(&file), write_gxl(&inst.graph, &inst.source_id))?;
            entries.push(IndexEntry {
                file,
                class: inst.class_label.clone(),
            });
        }
        let mut f = fs::File::create(out.join(format!("{split}.cxl")))?;
        f.write_all(write_cxl(&entries).as_bytes())?;
    }
    println!(
        "wrote {} classes x {} graphs per split to {}",
        spec.classes,
        spec.per_class,
        out.display()
    );
    Ok(())
}

fn run(cli: Cli) -> Result<u8> {
    match cli.command {
        Command::Classify {
            train,
            test,
            data,
            profile,
            method,
            knn,
            jobs,
            audit,
            distances,
            out,
            costs,
        } => {
            let method = method.with_costs(costs.params()?);
            classify(
                &train,
                &test,
                data.as_deref(),
                &profile.profile(),
                method,
                knn,
                jobs,
                audit,
                distances.as_deref(),
                &out,
            )?;
        }
        Command::Bench {
            pairs,
            data,
            profile,
            methods,
            reps,
            count,
            seed,
            distances,
            out,
            costs,
        } => {
            let p = costs.params()?;
            bench(
                &pairs,
                data.as_deref(),
                &profile.profile(),
                methods,
                p,
                reps,
                count,
                seed,
                distances.as_deref(),
                &out,
            )?;
        }
        Command::Contract {
            input,
            mode,
            k,
            r,
            t,
            measure,
            profile,
            out,
        } => {
            contract(&input, mode, k, r, t, measure, &profile.profile(), &out)?;
        }
        Command::Isocheck {
            g1,
            g2,
            tolerance,
            profile,
        } => {
            return isocheck(&g1, &g2, tolerance, &profile.profile());
        }
        Command::Tune {
            train,
            validation,
            data,
            profile,
            delta,
            start,
            out,
        } => {
            tune(
                &train,
                &validation,
                data.as_deref(),
                &profile.profile(),
                delta,
                &start,
                &out,
            )?;
        }
        Command::Synth {
            classes,
            per_class,
            sigma,
            edge_noise,
            n_min,
            n_max,
            p,
            seed,
            out,
        } => {
            if per_class == 0 {
                bail!("--per-class must be at least 1");
            }
            let spec = SynthSpec {
                n_range: (n_min, n_max),
                p,
                classes,
                per_class,
                sigma,
                edge_noise,
                seed,
                split: SplitName::Test,
            };
            synth(spec, &out)?;
        }
    }
    Ok(0)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { EXIT_USAGE } else { 0 });
        }
    };
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(EXIT_FAILURE)
        }
    }
}
