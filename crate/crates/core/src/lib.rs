//! Non-clashing teaching maps for the balls of a graph.

pub mod analysis;
pub mod cactus;
pub mod concept;
pub mod constructors;
pub mod error;
pub mod generators;
pub mod graph;
pub mod interval;
pub mod kernel;
pub mod metric;
pub mod reductions;
pub mod solver;
pub mod structure;
pub mod vset;

pub use error::{Error, Result};
pub use graph::Graph;
pub use vset::{Vertex, VertexSet};
