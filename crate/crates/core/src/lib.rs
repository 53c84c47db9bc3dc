//! Error-tolerant graph matching: exact and beam-search graph edit distance,
//! topology-reducing contractions, centrality-guided contraction and a
//! geometric similarity framework for planar graphs.

pub mod centrality;
pub mod contraction;
pub mod dataset;
pub mod edit;
pub mod error;
pub mod geometric;
pub mod graph;
pub mod plane;

pub use edit::{ged, ged_bipartite, ged_with, CostMode, EditCostParams, EditOperation, EditPath};
pub use error::{CentralityError, DatasetError, EditError, GeometryError, GraphError};
pub use graph::{AttributedGraph, Edge, Label, VertexId};
pub use plane::{GeometricGraph, Point, Similarity};
