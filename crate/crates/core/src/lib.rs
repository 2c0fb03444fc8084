//! Exact super domination toolkit for trees.
//!
//! The crate computes the domination, total domination and super
//! domination numbers of small graphs exactly, classifies trees by how
//! many edge subdivisions it takes to raise the super domination number,
//! builds and recognizes the constructive tree families that characterize
//! the extremal cases, and runs exhaustive checks of those
//! characterizations over every tree up to a size budget.

pub mod canon;
pub mod enumeration;
pub mod families;
pub mod graph;
pub mod harness;
pub mod io;
pub mod solvers;
pub mod subdivision;
pub mod transform;
pub mod vertex_set;

pub use graph::{Edge, Graph, GraphError, LabeledTree, Status};
pub use vertex_set::VertexSet;
