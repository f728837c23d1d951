//! Scale-free topology construction for wireless sensor networks.
//!
//! The crate deploys sensors uniformly over a square region, grows a topology
//! outward from the sink with local-area, energy-weighted preferential
//! attachment under a degree cap ([`laee`]), builds the usual comparison
//! topologies ([`baselines`]), and analyzes degree distributions and
//! random-failure robustness ([`analysis`]).

pub mod analysis;
pub mod baselines;
pub mod error;
pub mod geometry;
pub mod graph;
pub mod laee;
pub mod rng;

pub type NodeId = usize;

pub use error::{Error, Result};
pub use geometry::{Deployment, DeploymentConfig, Point};
pub use graph::{Graph, GraphDocument};
pub use laee::{evolve, AttachmentDraw, EnergyWeight, EvolutionReport, LaeeParams};
pub use rng::SimRng;
