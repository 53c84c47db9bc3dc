//! Nearest-neighbour classification, runtime benchmarks and weight tuning on
//! top of `graphmatch`.

pub mod knn;
pub mod matcher;
pub mod source;
pub mod timing;
pub mod tune;

pub use knn::{knn_classify, knn_classify_with, BenchResult, DistanceMatrix, KnnOptions};
pub use matcher::{MatchError, MatcherSpec, Method};
pub use source::{load_source, SourceError};
pub use timing::{benchmark, bootstrap_order_fraction, TimingSummary};
pub use tune::{tune_weights, TuneResult};
