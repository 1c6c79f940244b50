//! Data clustering driven by one-dimensional coined quantum walks.
//!
//! Every data point is a particle. Each iteration, a point picks a neighbour
//! from its k-nearest-neighbour set using degree- and distance-weighted
//! transition probabilities, runs a biased quantum walk toward it in every
//! coordinate, measures the walk, and moves. Points coalesce until the total
//! displacement per iteration drops below a threshold; the resting positions
//! are then linked into clusters.
//!
//! Two variants are provided:
//!
//! * single-coin multi-step ([`Variant::Scms`]): one coin built from the
//!   largest transition probability, applied `r` times with steps shrunk by `r`;
//! * multi-coin multi-step ([`Variant::Mcms`]): one coin per selected
//!   neighbour, applied in sequence.
//!
//! Modules:
//!
//! * [`walk`]: exact walk simulation, distributions and measurement;
//! * [`affinity`]: distances, neighbour sets, degrees, transition rows;
//! * [`engine`]: the iteration loop, cluster extraction and merging;
//! * [`dataset`]: delimited-text loading, imputation, synthetic blobs;
//! * [`eval`]: accuracy under optimal label mapping, sweeps, benchmark tables;
//! * [`cli`]: the command implementations behind the `qwc` binary.

pub mod affinity;
pub mod cli;
pub mod dataset;
pub mod engine;
pub mod error;
pub mod eval;
pub mod fmt;
pub mod rng;
pub mod walk;

pub use affinity::{BiasMap, DegreeVector, DistanceMatrix, NeighborSets, TransitionRow};
pub use dataset::{CsvSchema, LabeledDataset};
pub use engine::{AlgoConfig, ClusterResult, PointCloud, Variant};
pub use error::{Error, Result};
pub use walk::{CoinOperator, PositionDistribution, StepSpec, WalkState};
