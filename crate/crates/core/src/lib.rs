//! Construction, counting and certification of L-intersecting families of
//! induced subgraph copies, with exact small-scale optimizers.

pub mod canon;
pub mod constructions;
pub mod copies;
pub mod error;
pub mod factorization;
pub mod family;
pub mod generate;
pub mod graph;
pub mod hamilton;
pub mod io;
pub mod search;

pub use error::{Error, Result};
pub use graph::{Graph, VertexSet};
