//! Where a split comes from: a CXL index on disk or a synthetic preset.

use std::path::Path;

use graphmatch::dataset::{
    load_dataset, synthesize_corpus, LoadedSplit, Profile, SplitName, SynthSpec,
};
use graphmatch::DatasetError;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum SourceError {
    #[error("bad synthetic source `{0}`: {1}")]
    Synth(String, String),
    #[error(transparent)]
    Dataset(#[from] DatasetError),
}

/// Small graphs in the unit square, similar in size to the letter drawings.
pub fn letter_like(split: SplitName, seed: u64) -> SynthSpec {
    SynthSpec {
        n_range: (3, 7),
        p: 0.45,
        classes: 15,
        per_class: 50,
        sigma: 0.1,
        edge_noise: 0.05,
        seed,
        split,
    }
}

/// Two classes of sparse graphs with 10 to 20 vertices.
pub fn molecule_like(split: SplitName, seed: u64) -> SynthSpec {
    SynthSpec {
        n_range: (10, 20),
        p: 0.15,
        classes: 2,
        per_class: 40,
        sigma: 0.05,
        edge_noise: 0.01,
        seed,
        split,
    }
}

/// Parses `synth:<preset>[,key=value...]`, where the preset is `letter`,
/// `molecule` or `custom` and the keys are `classes`, `per_class`, `sigma`,
/// `edge_noise`, `p`, `n` (as `lo-hi`) and `seed`.
pub fn parse_synth(spec: &str, split: SplitName) -> Result<SynthSpec, SourceError> {
    let err = |msg: String| SourceError::Synth(spec.to_string(), msg);
    let body = spec
        .strip_prefix("synth:")
        .ok_or_else(|| err("missing `synth:` prefix".into()))?;
    let mut parts = body.split(',').map(str::trim).filter(|s| !s.is_empty());
    let mut out = match parts.next() {
        Some("letter") => letter_like(split, 0),
        Some("molecule") => molecule_like(split, 0),
        Some("custom") | None => SynthSpec {
            split,
            ..SynthSpec::default()
        },
        Some(other) => return Err(err(format!("unknown preset `{other}`"))),
    };
    for kv in parts {
        let (k, v) = kv
            .split_once('=')
            .ok_or_else(|| err(format!("expected key=value, got `{kv}`")))?;
        let num = |what: &str| err(format!("invalid {what} `{v}`"));
        match k {
            "classes" => out.classes = v.parse().map_err(|_| num(k))?,
            "per_class" => out.per_class = v.parse().map_err(|_| num(k))?,
            "sigma" => out.sigma = v.parse().map_err(|_| num(k))?,
            "edge_noise" => out.edge_noise = v.parse().map_err(|_| num(k))?,
            "p" => out.p = v.parse().map_err(|_| num(k))?,
            "seed" => out.seed = v.parse().map_err(|_| num(k))?,
            "n" => {
                let (lo, hi) = v.split_once('-').ok_or_else(|| num(k))?;
                out.n_range = (
                    lo.parse().map_err(|_| num(k))?,
                    hi.parse().map_err(|_| num(k))?,
                );
            }
            _ => return Err(err(format!("unknown key `{k}`"))),
        }
    }
    if out.per_class == 0 {
        return Err(err("per_class must be at least 1".into()));
    }
    Ok(out)
}

/// Loads `source`: a `synth:` spec (generated for `split`), or a CXL index
/// whose graph files live in `data_dir` (default: the index's directory).
pub fn load_source(
    source: &str,
    data_dir: Option<&Path>,
    profile: &Profile,
    split: SplitName,
) -> Result<LoadedSplit, SourceError> {
    if source.starts_with("synth:") {
        let spec = parse_synth(source, split)?;
        return Ok(LoadedSplit {
            split: synthesize_corpus(&spec),
            failures: Vec::new(),
        });
    }
    let index = Path::new(source);
    let dir = data_dir
        .map(Path::to_path_buf)
        .unwrap_or_else(|| index.parent().map(Path::to_path_buf).unwrap_or_default());
    Ok(load_dataset(index, &dir, profile)?)
}
