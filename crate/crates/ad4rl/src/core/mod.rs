//! Domain types, configuration, and deterministic RNG streams shared by the
//! rest of the crate.

pub mod config;
pub mod rng;
pub mod world;

pub use config::{
    DynamicsParams, ExperimentConfig, PerceptionParams, RewardWeights, ScenarioConfig,
    ScenarioKind, TrainConfig,
};
pub use rng::{derive_seed, seeded_rng};
pub use world::{flatten_state, Bottleneck, SegmentMap, Vehicle, VehicleId, VehicleKind, WorldState};
