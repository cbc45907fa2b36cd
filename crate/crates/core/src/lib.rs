//! Construction, optimization and certification of d-dimensional p-normed
//! nowhere-zero flows on multigraphs.

pub mod analysis;
pub mod cli;
pub mod cycles;
pub mod error;
pub mod graph;
pub mod intflow;
pub mod named;
pub mod opt;
pub mod report;
pub mod vector;

pub use error::{Error, Result};
pub use graph::{parse_graph, MultiGraph, Orientation};
