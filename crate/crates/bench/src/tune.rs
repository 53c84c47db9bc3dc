//! Steepest-ascent search for geometric distance weights.

use graphmatch::dataset::DatasetSplit;
use graphmatch::geometric::{distance_components, DistanceComponents, DistanceWeights};
use rayon::prelude::*;
use thiserror::Error;

#[derive(Debug, Error, PartialEq)]
pub enum TuneError {
    #[error("the {0} split is empty")]
    EmptySplit(&'static str),
    #[error("step must be positive and finite, got {0}")]
    InvalidStep(f64),
    #[error("start weights must not all be zero")]
    ZeroStart,
}

#[derive(Debug, Clone, PartialEq)]
pub struct TuneResult {
    pub weights: DistanceWeights,
    /// Validation 1-NN accuracy (percent) at `weights`.
    pub accuracy: f64,
    /// Accepted points, starting with the normalized start.
    pub trajectory: Vec<(DistanceWeights, f64)>,
}

/// Unweighted distance terms for every `[validation][train]` pair; `None`
/// where the pair has no coordinates or fails.
fn component_table(
    train: &DatasetSplit,
    validation: &DatasetSplit,
) -> Vec<Vec<Option<DistanceComponents>>> {
    validation
        .instances
        .par_iter()
        .map(|v| {
            train
                .instances
                .iter()
                .map(|t| {
                    let (a, b) = (v.graph.geometric()?, t.graph.geometric()?);
                    distance_components(a, b, true).ok()
                })
                .collect()
        })
        .collect()
}

/// 1-NN accuracy (percent) under `w`; ties go to the lower training index and
/// rows with a failed pair count as errors.
fn accuracy(
    table: &[Vec<Option<DistanceComponents>>],
    train: &DatasetSplit,
    validation: &DatasetSplit,
    w: &DistanceWeights,
) -> f64 {
    let correct = table
        .iter()
        .zip(&validation.instances)
        .filter(|(row, inst)| {
            let mut best: Option<(f64, usize)> = None;
            for (j, c) in row.iter().enumerate() {
                let Some(c) = c else { return false };
                let d = c.weighted(w);
                if best.is_none_or(|(b, _)| d < b) {
                    best = Some((d, j));
                }
            }
            best.is_some_and(|(_, j)| train.instances[j].class_label == inst.class_label)
        })
        .count();
    100.0 * correct as f64 / validation.len() as f64
}

fn neighbours(w: &DistanceWeights, delta: f64) -> Vec<DistanceWeights> {
    let base = w.as_array();
    let mut out = Vec::with_capacity(8);
    for i in 0..4 {
        for step in [delta, -delta] {
            let mut v = base;
            v[i] = (v[i] + step).max(0.0);
            if v == base || v.iter().sum::<f64>() == 0.0 {
                continue;
            }
            out.push(
                DistanceWeights {
                    w1: v[0],
                    w2: v[1],
                    w3: v[2],
                    w4: v[3],
                }
                .normalized(),
            );
        }
    }
    out
}

/// Hill-climbs validation 1-NN accuracy from `start`. Each step tries moving
/// one weight by `±delta` (re-normalizing to sum 1) and takes the move with
/// the highest accuracy, the first such move on ties; it stops when no move
/// improves strictly.
pub fn tune_weights(
    train: &DatasetSplit,
    validation: &DatasetSplit,
    start: DistanceWeights,
    delta: f64,
) -> Result<TuneResult, TuneError> {
    if train.is_empty() {
        return Err(TuneError::EmptySplit("training"));
    }
    if validation.is_empty() {
        return Err(TuneError::EmptySplit("validation"));
    }
    if !(delta.is_finite() && delta > 0.0) {
        return Err(TuneError::InvalidStep(delta));
    }
    if start.as_array().iter().sum::<f64>() == 0.0 {
        return Err(TuneError::ZeroStart);
    }
    let table = component_table(train, validation);
    let mut w = start.normalized();
    let mut acc = accuracy(&table, train, validation, &w);
    let mut trajectory = vec![(w, acc)];
    // Accuracy only takes |validation| + 1 values, so this always ends.
    loop {
        let best = neighbours(&w, delta)
            .into_iter()
            .map(|n| (accuracy(&table, train, validation, &n), n))
            .fold(None::<(f64, DistanceWeights)>, |b, x| match b {
                Some(b) if b.0 >= x.0 => Some(b),
                _ => Some(x),
            });
        match best {
            Some((a, n)) if a > acc => {
                w = n;
                acc = a;
                trajectory.push((w, acc));
            }
            _ => break,
        }
    }
    Ok(TuneResult {
        weights: w,
        accuracy: acc,
        trajectory,
    })
}
