//! Loading labeled graph corpora from GXL/CXL files, and synthetic corpora.

mod cxl;
mod gxl;
mod synth;

use std::collections::HashSet;
use std::fmt;
use std::path::{Path, PathBuf};
use std::str::FromStr;

pub use cxl::{parse_cxl, write_cxl, IndexEntry};
pub use gxl::{parse_gxl, write_gxl, Profile};
pub use synth::{synthesize_corpus, SynthSpec};

use crate::error::DatasetError;
use crate::graph::AttributedGraph;
use crate::plane::GeometricGraph;

/// A parsed graph, with coordinates when the source provided them for every node.
#[derive(Debug, Clone, PartialEq)]
pub enum Graph {
    Geometric(GeometricGraph),
    Attributed(AttributedGraph),
}

impl Graph {
    pub fn attributed(&self) -> &AttributedGraph {
        match self {
            Graph::Geometric(g) => g.base(),
            Graph::Attributed(g) => g,
        }
    }

    pub fn geometric(&self) -> Option<&GeometricGraph> {
        match self {
            Graph::Geometric(g) => Some(g),
            Graph::Attributed(_) => None,
        }
    }

    /// Like [`Graph::geometric`], but an error for coordinate-free graphs.
    pub fn require_geometric(&self) -> Result<&GeometricGraph, DatasetError> {
        self.geometric().ok_or(DatasetError::NotGeometric)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct LabeledInstance {
    pub graph: Graph,
    pub class_label: String,
    pub source_id: String,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SplitName {
    Train,
    Validation,
    Test,
}

impl SplitName {
    /// Guesses the split from an index file name such as `validation.cxl`.
    pub fn from_index_path(path: &Path) -> SplitName {
        let stem = path
            .file_stem()
            .and_then(|s| s.to_str())
            .unwrap_or_default()
            .to_lowercase();
        if stem.contains("train") {
            SplitName::Train
        } else if stem.contains("valid") {
            SplitName::Validation
        } else {
            SplitName::Test
        }
    }
}

impl fmt::Display for SplitName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SplitName::Train => "train",
            SplitName::Validation => "validation",
            SplitName::Test => "test",
        })
    }
}

impl FromStr for SplitName {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "train" => Ok(SplitName::Train),
            "validation" | "valid" => Ok(SplitName::Validation),
            "test" => Ok(SplitName::Test),
            other => Err(format!("unknown split `{other}`")),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct DatasetSplit {
    pub name: SplitName,
    pub instances: Vec<LabeledInstance>,
}

impl DatasetSplit {
    pub fn new(name: SplitName) -> Self {
        DatasetSplit {
            name,
            instances: Vec::new(),
        }
    }

    /// Appends an instance, rejecting empty classes and repeated source ids.
    pub fn push(&mut self, instance: LabeledInstance) -> Result<(), DatasetError> {
        if instance.class_label.is_empty() {
            return Err(DatasetError::EmptyClass(instance.source_id));
        }
        if self
            .instances
            .iter()
            .any(|i| i.source_id == instance.source_id)
        {
            return Err(DatasetError::DuplicateSource(instance.source_id));
        }
        self.instances.push(instance);
        Ok(())
    }

    pub fn len(&self) -> usize {
        self.instances.len()
    }

    pub fn is_empty(&self) -> bool {
        self.instances.is_empty()
    }

    /// Class labels in first-appearance order.
    pub fn classes(&self) -> Vec<&str> {
        let mut seen = HashSet::new();
        self.instances
            .iter()
            .map(|i| i.class_label.as_str())
            .filter(|c| seen.insert(*c))
            .collect()
    }
}

/// One file listed in the index that could not be loaded.
#[derive(Debug)]
pub struct FileFailure {
    pub file: PathBuf,
    pub error: DatasetError,
}

#[derive(Debug)]
pub struct LoadedSplit {
    pub split: DatasetSplit,
    pub failures: Vec<FileFailure>,
}

fn read(path: &Path) -> Result<String, DatasetError> {
    std::fs::read_to_string(path).map_err(|source| DatasetError::Io {
        path: path.to_path_buf(),
        source,
    })
}

/// Loads every graph listed in a CXL index. Only an unreadable or malformed
/// index is fatal; failing graph files are skipped and reported.
pub fn load_dataset(
    index_path: &Path,
    data_dir: &Path,
    profile: &Profile,
) -> Result<LoadedSplit, DatasetError> {
    let entries = parse_cxl(&read(index_path)?)?;
    let mut split = DatasetSplit::new(SplitName::from_index_path(index_path));
    let mut failures = Vec::new();
    for entry in entries {
        let file = data_dir.join(&entry.file);
        let loaded = read(&file)
            .and_then(|text| parse_gxl(&text, profile))
            .and_then(|graph| {
                split.push(LabeledInstance {
                    graph,
                    class_label: entry.class.clone(),
                    source_id: entry.file.clone(),
                })
            });
        if let Err(error) = loaded {
            failures.push(FileFailure { file, error });
        }
    }
    Ok(LoadedSplit { split, failures })
}
