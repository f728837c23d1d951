//! Comparison topologies: k-nearest neighbors, Delaunay triangulation,
//! one-round LEACH clustering composed with either, and non-spatial
//! Barabási-Albert growth.

mod ba;
mod dtg;
mod knn;
pub mod leach;

pub use ba::ba_graph;
pub use dtg::dtg_topology;
pub use knn::knn_topology;
pub use leach::{leach_cluster, leach_composite, ClusterAssignment, IntraCluster, LeachTopology};
