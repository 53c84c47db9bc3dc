use thiserror::Error;

use crate::graph::{Edge, VertexId};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum GraphError {
    #[error("unknown vertex {0}")]
    UnknownVertex(VertexId),
    #[error("self-loop at vertex {0}")]
    SelfLoop(VertexId),
    #[error("edge {0} already present")]
    ParallelEdge(Edge),
    #[error("edge {0} not present")]
    MissingEdge(Edge),
    #[error("vector label has dimension {found}, graph uses {expected}")]
    LabelDimension { expected: usize, found: usize },
    #[error("edge probability {0} outside [0, 1]")]
    InvalidProbability(f64),
    #[error("coordinate of vertex {0} is not finite")]
    NonFiniteCoordinate(VertexId),
    #[error("expected {expected} coordinates, got {found}")]
    CoordinateCount { expected: usize, found: usize },
    #[error("vertex {0} has no 2-d vector label to use as a coordinate")]
    MissingCoordinate(VertexId),
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum EditError {
    #[error("label dimensions differ: {0} vs {1}")]
    LabelDimension(usize, usize),
    #[error("cannot compare a {0} label with a {1} label")]
    LabelKind(&'static str, &'static str),
    #[error("path contraction needs a walk whose interior vertices all have degree 2")]
    InvalidPath,
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Centrality(#[from] CentralityError),
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum CentralityError {
    #[error("centrality of an empty graph is undefined")]
    EmptyGraph,
    #[error("fraction {0} outside [0, 1]")]
    InvalidFraction(f64),
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum GeometryError {
    #[error("cost matrix is {rows}x{cols}, expected square")]
    NotSquare { rows: usize, cols: usize },
    #[error("cost matrix entry ({0}, {1}) is negative or not finite")]
    InvalidCost(usize, usize),
    #[error("vertex counts differ: {0} vs {1}")]
    VertexCountMismatch(usize, usize),
    #[error("edge counts differ: {0} vs {1}")]
    EdgeCountMismatch(usize, usize),
    #[error("edge ({0}, {1}) has zero length")]
    DegenerateEdge(VertexId, VertexId),
    #[error("reference edge has zero length")]
    DegenerateReference,
    #[error("alignment needs at least one edge in each graph")]
    NoEdges,
    #[error("weights must be finite and nonnegative")]
    InvalidWeights,
    #[error(transparent)]
    Graph(#[from] GraphError),
}

#[derive(Debug, Error)]
pub enum DatasetError {
    #[error("cannot read {path}: {source}")]
    Io {
        path: std::path::PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("malformed XML: {0}")]
    Xml(String),
    #[error("document has no <graph> element")]
    MissingGraph,
    #[error("node `{node}` lacks attribute `{attr}`")]
    MissingAttribute { node: String, attr: String },
    #[error("duplicate node id `{0}`")]
    DuplicateNode(String),
    #[error("edge refers to unknown node `{0}`")]
    DanglingEdge(String),
    #[error("cannot parse `{0}` as a number")]
    InvalidNumber(String),
    #[error("index entry lacks a `{0}` attribute")]
    IndexEntry(&'static str),
    #[error("source id `{0}` appears twice in one split")]
    DuplicateSource(String),
    #[error("instance `{0}` has an empty class label")]
    EmptyClass(String),
    #[error("graph has no coordinates; a geometric graph is required")]
    NotGeometric,
    #[error(transparent)]
    Graph(#[from] GraphError),
}
