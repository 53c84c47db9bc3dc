//! k-nearest-neighbour classification of one split against another.

use std::collections::BTreeMap;
use std::time::Instant;

use graphmatch::dataset::DatasetSplit;
use rayon::prelude::*;
use thiserror::Error;

use crate::matcher::MatcherSpec;

#[derive(Debug, Error, PartialEq)]
pub enum KnnError {
    #[error("k must be at least 1")]
    ZeroK,
    #[error("the {0} split is empty")]
    EmptySplit(&'static str),
    #[error("cannot build a thread pool: {0}")]
    Pool(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct KnnOptions {
    pub k: usize,
    /// Worker threads for pair evaluation; 1 keeps timings comparable.
    pub jobs: usize,
}

impl Default for KnnOptions {
    fn default() -> Self {
        KnnOptions { k: 1, jobs: 1 }
    }
}

/// Pairwise results indexed `[test][train]`; `None` marks a failed pair.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct DistanceMatrix {
    pub values: Vec<Vec<Option<f64>>>,
    pub times_ms: Vec<Vec<Option<f64>>>,
}

impl DistanceMatrix {
    pub fn failed_pairs(&self) -> usize {
        self.values.iter().flatten().filter(|d| d.is_none()).count()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct BenchResult {
    pub method: String,
    /// Percentage of correctly labelled test instances per true class.
    pub per_class_accuracy: BTreeMap<String, f64>,
    /// Percentage of correctly labelled test instances overall.
    pub mean_accuracy: f64,
    /// Mean wall-clock time of a successful pair.
    pub mean_time_ms: f64,
    pub pair_count: usize,
    pub failed_pairs: usize,
    /// Predicted class per test instance; `None` if any of its pairs failed.
    pub predictions: Vec<Option<String>>,
}

pub fn distance_matrix(
    train: &DatasetSplit,
    test: &DatasetSplit,
    matcher: &MatcherSpec,
    jobs: usize,
) -> Result<DistanceMatrix, KnnError> {
    let row = |t: &graphmatch::dataset::LabeledInstance| -> (Vec<Option<f64>>, Vec<Option<f64>>) {
        train
            .instances
            .iter()
            .map(|r| {
                let start = Instant::now();
                let d = matcher.distance(&t.graph, &r.graph).ok();
                let ms = start.elapsed().as_secs_f64() * 1e3;
                (d, d.map(|_| ms))
            })
            .unzip()
    };
    let rows: Vec<_> = if jobs <= 1 {
        test.instances.iter().map(row).collect()
    } else {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(jobs)
            .build()
            .map_err(|e| KnnError::Pool(e.to_string()))?;
        pool.install(|| test.instances.par_iter().map(row).collect())
    };
    let (values, times_ms) = rows.into_iter().unzip();
    Ok(DistanceMatrix { values, times_ms })
}

/// Majority class among the `k` nearest training instances. Ties go to the
/// smallest summed distance, then to the lexicographically first class.
pub fn vote(row: &[Option<f64>], train: &DatasetSplit, k: usize) -> Option<String> {
    let mut order: Vec<(f64, usize)> = row
        .iter()
        .enumerate()
        .map(|(i, d)| d.map(|d| (d, i)))
        .collect::<Option<_>>()?;
    order.sort_by(|a, b| a.0.total_cmp(&b.0).then(a.1.cmp(&b.1)));
    let mut tally: BTreeMap<&str, (usize, f64)> = BTreeMap::new();
    for &(d, i) in order.iter().take(k) {
        let e = tally
            .entry(train.instances[i].class_label.as_str())
            .or_default();
        e.0 += 1;
        e.1 += d;
    }
    tally
        .into_iter()
        .min_by(|(ca, (na, sa)), (cb, (nb, sb))| nb.cmp(na).then(sa.total_cmp(sb)).then(ca.cmp(cb)))
        .map(|(c, _)| c.to_string())
}

/// Accuracy figures for a finished distance matrix.
pub fn score(
    matrix: &DistanceMatrix,
    train: &DatasetSplit,
    test: &DatasetSplit,
    k: usize,
) -> (BTreeMap<String, f64>, f64, Vec<Option<String>>) {
    let predictions: Vec<Option<String>> = matrix
        .values
        .iter()
        .map(|row| vote(row, train, k))
        .collect();
    let mut per_class: BTreeMap<String, (usize, usize)> = BTreeMap::new();
    for (inst, pred) in test.instances.iter().zip(&predictions) {
        let e = per_class.entry(inst.class_label.clone()).or_default();
        e.1 += 1;
        if pred.as_deref() == Some(inst.class_label.as_str()) {
            e.0 += 1;
        }
    }
    let correct: usize = per_class.values().map(|c| c.0).sum();
    let pct = |a: usize, b: usize| 100.0 * a as f64 / b as f64;
    let per_class = per_class
        .into_iter()
        .map(|(c, (ok, n))| (c, pct(ok, n)))
        .collect();
    (per_class, pct(correct, test.len()), predictions)
}

pub fn knn_classify_with(
    train: &DatasetSplit,
    test: &DatasetSplit,
    matcher: &MatcherSpec,
    options: &KnnOptions,
) -> Result<(BenchResult, DistanceMatrix), KnnError> {
    if options.k == 0 {
        return Err(KnnError::ZeroK);
    }
    if train.is_empty() {
        return Err(KnnError::EmptySplit("training"));
    }
    if test.is_empty() {
        return Err(KnnError::EmptySplit("test"));
    }
    let matrix = distance_matrix(train, test, matcher, options.jobs)?;
    let (per_class_accuracy, mean_accuracy, predictions) = score(&matrix, train, test, options.k);
    let times: Vec<f64> = matrix
        .times_ms
        .iter()
        .flatten()
        .flatten()
        .copied()
        .collect();
    let mean_time_ms = if times.is_empty() {
        0.0
    } else {
        times.iter().sum::<f64>() / times.len() as f64
    };
    let result = BenchResult {
        method: matcher.to_string(),
        per_class_accuracy,
        mean_accuracy,
        mean_time_ms,
        pair_count: train.len() * test.len(),
        failed_pairs: matrix.failed_pairs(),
        predictions,
    };
    Ok((result, matrix))
}

/// Single-threaded k-NN classification.
pub fn knn_classify(
    train: &DatasetSplit,
    test: &DatasetSplit,
    matcher: &MatcherSpec,
    k: usize,
) -> Result<BenchResult, KnnError> {
    Ok(knn_classify_with(train, test, matcher, &KnnOptions { k, jobs: 1 })?.0)
}

/// Recomputes the overall accuracy from `matrix` by ranking every row in
/// full; used to cross-check [`knn_classify_with`].
pub fn audit_accuracy(
    matrix: &DistanceMatrix,
    train: &DatasetSplit,
    test: &DatasetSplit,
    k: usize,
) -> f64 {
    let mut correct = 0;
    for (row, inst) in matrix.values.iter().zip(&test.instances) {
        if row.iter().any(Option::is_none) {
            continue;
        }
        let mut ranked: Vec<usize> = (0..row.len()).collect();
        ranked.sort_by(|&a, &b| row[a].partial_cmp(&row[b]).unwrap().then(a.cmp(&b)));
        let nearest = &ranked[..k.min(ranked.len())];
        let mut classes: Vec<&str> = nearest
            .iter()
            .map(|&i| train.instances[i].class_label.as_str())
            .collect();
        classes.sort_unstable();
        classes.dedup();
        let best = classes
            .iter()
            .map(|c| {
                let hits: Vec<f64> = nearest
                    .iter()
                    .filter(|&&i| train.instances[i].class_label == *c)
                    .map(|&i| row[i].unwrap())
                    .collect();
                (hits.len(), hits.iter().sum::<f64>(), *c)
            })
            .fold(None::<(usize, f64, &str)>, |acc, x| match acc {
                Some(a) if a.0 > x.0 || (a.0 == x.0 && a.1 <= x.1) => Some(a),
                _ => Some(x),
            });
        if best.map(|b| b.2) == Some(inst.class_label.as_str()) {
            correct += 1;
        }
    }
    100.0 * correct as f64 / test.len().max(1) as f64
}
