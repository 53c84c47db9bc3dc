//! Wall-clock timing of matchers over a list of graph pairs.

use std::time::Instant;

use graphmatch::dataset::Graph;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::matcher::MatcherSpec;

#[derive(Debug, Clone, PartialEq, Default)]
pub struct TimingSummary {
    pub method: String,
    /// Pairs whose distance could be computed.
    pub pair_count: usize,
    pub mean_ms: f64,
    pub median_ms: f64,
    pub min_ms: f64,
    /// Mean time over the repetitions, per input pair.
    pub per_pair_ms: Vec<Option<f64>>,
    pub distances: Vec<Option<f64>>,
}

/// Times `matcher` on every pair, `repetitions` times each (no warm-up).
/// Failed pairs are kept as `None` and left out of the summary statistics.
pub fn benchmark(
    pairs: &[(Graph, Graph)],
    matcher: &MatcherSpec,
    repetitions: usize,
) -> TimingSummary {
    let reps = repetitions.max(1);
    let mut per_pair_ms = Vec::with_capacity(pairs.len());
    let mut distances = Vec::with_capacity(pairs.len());
    for (a, b) in pairs {
        let mut total = 0.0;
        let mut d = None;
        for _ in 0..reps {
            let start = Instant::now();
            d = matcher.distance(a, b).ok();
            total += start.elapsed().as_secs_f64() * 1e3;
            if d.is_none() {
                break;
            }
        }
        per_pair_ms.push(d.map(|_| total / reps as f64));
        distances.push(d);
    }
    let mut ok: Vec<f64> = per_pair_ms.iter().flatten().copied().collect();
    ok.sort_by(f64::total_cmp);
    let n = ok.len();
    let (mean_ms, median_ms, min_ms) = if n == 0 {
        (0.0, 0.0, 0.0)
    } else {
        let median = if n % 2 == 1 {
            ok[n / 2]
        } else {
            (ok[n / 2 - 1] + ok[n / 2]) / 2.0
        };
        (ok.iter().sum::<f64>() / n as f64, median, ok[0])
    };
    TimingSummary {
        method: matcher.to_string(),
        pair_count: n,
        mean_ms,
        median_ms,
        min_ms,
        per_pair_ms,
        distances,
    }
}

/// Fraction of paired bootstrap resamples in which the mean times strictly
/// decrease along `series` (`series[0]` slowest). All series must have the
/// same length; resampling draws the same pair indices for every series.
pub fn bootstrap_order_fraction(series: &[Vec<f64>], resamples: usize, seed: u64) -> f64 {
    let n = series.first().map_or(0, Vec::len);
    assert!(series.iter().all(|s| s.len() == n), "series lengths differ");
    if n == 0 || resamples == 0 {
        return 0.0;
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut hits = 0;
    let mut sums = vec![0.0; series.len()];
    for _ in 0..resamples {
        sums.fill(0.0);
        for _ in 0..n {
            let i = rng.random_range(0..n);
            for (s, x) in sums.iter_mut().zip(series) {
                *s += x[i];
            }
        }
        if sums.windows(2).all(|w| w[0] > w[1]) {
            hits += 1;
        }
    }
    hits as f64 / resamples as f64
}
