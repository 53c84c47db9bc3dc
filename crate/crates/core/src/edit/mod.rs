//! Edit operations, the Euclidean cost model and GED solvers.

mod bipartite;
mod cost;
mod search;

pub use bipartite::ged_bipartite;
pub use cost::{edit_cost, label_cost, CostMode, EditCostParams, EditOperation};
pub use search::{
    ged, ged_with, path_from_mapping, EditPath, GedOptions, Heuristic, LedgerEntry, Side,
};
