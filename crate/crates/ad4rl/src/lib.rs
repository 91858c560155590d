//! Autonomous-driving scenarios, datasets, and offline reinforcement-learning
//! baselines built around a single decision-process model.
//!
//! The crate is organized as a pipeline:
//!
//! - [`core`] — domain types, configuration, seeded RNG streams.
//! - [`sim`] — microscopic ring-road traffic: car-following, rule-based lane
//!   changes, collision detection, scenario construction.
//! - [`env`] — the agent-facing environment: observations, the five-component
//!   reward, hybrid actions, episode lifecycle.
//! - [`dataset`] — transition recording, the on-disk dataset format, and the
//!   synthetic dataset flavors.
//! - [`ngsim`] — US-101 trajectory ingestion: parsing, error correction, and
//!   reconstruction of observation/action/reward transitions.
//! - [`rl`] — a small feed-forward network with hand-derived gradients, plus
//!   the online policy trainer and the offline baselines.
//! - [`eval`] — the evaluation protocol: normalized scores, interquartile
//!   summaries, report aggregation.
//! - [`pipeline`] — the end-to-end stages the CLI exposes.

pub mod core;
pub mod error;

pub use error::{Error, Result};
