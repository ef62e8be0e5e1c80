//! Angular separation of labeled points on a circle or sphere.
//!
//! Given angular coordinates and a group label per node, the crate counts,
//! for every group, the foreign nodes that fall inside the group's angular
//! extent ("mistakes"), normalizes the total by the worst total seen over
//! uniformly random reshuffles and attaches an exact empirical p-value.
//! The headline number is the angular separation index
//! `ASI = 1 - mistakes / worst_case`, which is 1 for perfectly separated
//! groups and near 0 for arbitrary labelings.
//!
//! Two companion modules make the crate self-contained for experiments on
//! synthetic networks: [`npso`] grows hyperbolic random graphs with planted
//! communities, and [`embed`] recovers angular coordinates from a bare graph
//! (repulsion-attraction pre-weighting, Laplacian eigenmaps or minimum
//! curvilinear orderings, power-law radial placement).

pub mod asi2d;
pub mod asi3d;
pub mod coords;
pub mod embed;
pub mod error;
pub mod geometry;
pub mod graph;
pub mod labels;
pub mod npso;
pub mod significance;

pub use coords::AngularCoords;
pub use error::{Error, Result};
pub use graph::Graph;
pub use labels::GroupLabeling;
pub use significance::{evaluate, AsiConfig, AsiReport, WorstCaseMode};
