//! Degree-based topological indices and exhaustive surveys of `ABC - ABS`.
//!
//! The crate computes the Randić, sum-connectivity, atom-bond connectivity
//! (ABC) and atom-bond sum-connectivity (ABS) indices of simple graphs, and
//! enumerates free trees and small connected graphs to classify the sign of
//! `theta = ABC - ABS` over whole families.
//!
//! ```
//! use thetagraph::{graph::Graph, indices::index_report};
//!
//! let p5 = Graph::path(5);
//! let report = index_report(&p5).unwrap();
//! // every path with at least three vertices has the same theta
//! assert!((report.theta - (2f64.sqrt() - 2.0 / 3f64.sqrt())).abs() < 1e-12);
//! ```

pub mod canon;
pub mod graph;
pub mod graph6;
pub mod indices;
pub mod linegraph;
pub mod smallgraph;
pub mod sum;
pub mod survey;
pub mod treegen;

pub use graph::{Graph, GraphError, Shape};
