//! Layered tree decompositions, layered separators and their applications:
//! track and queue layouts, nonrepetitive colourings and 3D grid drawings.
//!
//! Every construction comes with an independent verifier. Vertices are dense
//! ids `0..n`.

pub mod error;
pub mod exec;
pub mod formats;
pub mod decomposition;
pub mod drawing3d;
pub mod embedding;
pub mod generators;
pub mod graph;
pub mod layouts;
pub mod nonrep;
pub mod pipeline;
pub mod shadow;

pub use error::{Error, Result};
pub use exec::Exec;
pub use graph::{bfs_layering, BfsTree, Graph, Layering, Ratio, Separation};
