//! Configuration types and validation.
//!
//! Everything is SI internally (m, m/s, s). All invariants are checked by
//! `validate()` before any simulation or training runs; config files with
//! unknown keys are rejected.

use serde::{Deserialize, Serialize};

use crate::core::world::Bottleneck;
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ScenarioKind {
    Highway,
    LaneReduction,
    CutIn,
}

impl ScenarioKind {
    pub fn name(self) -> &'static str {
        match self {
            ScenarioKind::Highway => "highway",
            ScenarioKind::LaneReduction => "lane_reduction",
            ScenarioKind::CutIn => "cut_in",
        }
    }
}

/// Scenario parameterization. Defaults derive from the US-101 traffic
/// statistics: 2195.4 ft of roadway (669.2 m), 14.6 ft average vehicle
/// length (4.45 m), and roughly 117 simultaneous vehicles.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ScenarioConfig {
    pub scenario: ScenarioKind,
    #[serde(default = "default_road_length")]
    pub road_length: f64,
    #[serde(default = "default_lane_count")]
    pub lane_count: u32,
    #[serde(default)]
    pub bottleneck: Option<Bottleneck>,
    #[serde(default = "default_vehicle_count")]
    pub vehicle_count: u32,
    /// Background target velocities, strictly increasing
    /// (min, Q1, Q2, Q3, max of the per-vehicle Q3-velocity distribution).
    #[serde(default = "default_class_speeds")]
    pub class_speeds: [f64; 5],
    #[serde(default = "default_agent_count")]
    pub agent_count: u32,
    #[serde(default = "default_horizon")]
    pub horizon: u64,
    #[serde(default = "default_dt")]
    pub dt: f64,
    #[serde(default)]
    pub seed: u64,
    #[serde(default = "default_vehicle_length")]
    pub vehicle_length: f64,
}

fn default_road_length() -> f64 {
    669.2
}
fn default_lane_count() -> u32 {
    5
}
fn default_vehicle_count() -> u32 {
    117
}
fn default_class_speeds() -> [f64; 5] {
    [8.0, 11.0, 14.0, 17.0, 20.0]
}
fn default_agent_count() -> u32 {
    1
}
fn default_horizon() -> u64 {
    1500
}
fn default_dt() -> f64 {
    0.1
}
fn default_vehicle_length() -> f64 {
    4.45
}

impl ScenarioConfig {
    pub fn new(scenario: ScenarioKind) -> Self {
        ScenarioConfig {
            scenario,
            road_length: default_road_length(),
            lane_count: default_lane_count(),
            bottleneck: None,
            vehicle_count: default_vehicle_count(),
            class_speeds: default_class_speeds(),
            agent_count: default_agent_count(),
            horizon: default_horizon(),
            dt: default_dt(),
            seed: 0,
            vehicle_length: default_vehicle_length(),
        }
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.road_length > 0.0) {
            return Err(Error::config("road_length must be positive"));
        }
        if self.lane_count == 0 {
            return Err(Error::config("lane_count must be at least 1"));
        }
        if !(self.dt > 0.0) {
            return Err(Error::config("dt must be positive"));
        }
        if self.horizon == 0 {
            return Err(Error::config("horizon must be at least 1"));
        }
        if !(self.vehicle_length > 0.0) {
            return Err(Error::config("vehicle_length must be positive"));
        }
        if self.agent_count > self.vehicle_count {
            return Err(Error::config("agent_count exceeds vehicle_count"));
        }
        if !self.class_speeds.windows(2).all(|w| w[0] < w[1]) {
            return Err(Error::config("class_speeds must be strictly increasing"));
        }
        if self.class_speeds[0] <= 0.0 {
            return Err(Error::config("class_speeds must be positive"));
        }
        match (self.scenario, self.bottleneck) {
            (ScenarioKind::LaneReduction, None) => {
                return Err(Error::config("lane_reduction requires a bottleneck"));
            }
            (ScenarioKind::LaneReduction, Some(b)) => {
                if b.lanes == 0 || b.lanes >= self.lane_count {
                    return Err(Error::config(
                        "bottleneck lane count must be in 1..lane_count",
                    ));
                }
                if !(b.start >= 0.0 && b.start < b.end && b.end <= self.road_length) {
                    return Err(Error::config(
                        "bottleneck interval must lie within [0, road_length)",
                    ));
                }
            }
            (_, Some(_)) => {
                return Err(Error::config(
                    "bottleneck is only valid for the lane_reduction scenario",
                ));
            }
            _ => {}
        }
        Ok(())
    }
}

/// Weights and physical parameters of the five-component reward.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct RewardWeights {
    /// eta_1..eta_5; eta_5 must be the largest.
    pub eta: [f64; 5],
    /// Scaling constant added to every reward.
    pub c: f64,
    /// Desired speed, m/s.
    pub v_star: f64,
    /// Speed limit, m/s; strictly above `v_star`.
    pub v_limit: f64,
    /// Minimum safe gap, m.
    pub s0: f64,
    /// Minimum time headway, s.
    pub t_star: f64,
    /// Maximum deceleration (negative) — also the lower action bound.
    pub a_min: f64,
    /// Maximum acceleration (positive) — also the upper action bound.
    pub a_max: f64,
}

impl Default for RewardWeights {
    fn default() -> Self {
        RewardWeights {
            eta: [1.0, 0.02, 0.5, 0.5, 40.0],
            c: 0.0,
            v_star: 22.0,
            v_limit: 30.0,
            s0: 2.0,
            t_star: 1.0,
            a_min: -4.0,
            a_max: 3.0,
        }
    }
}

impl RewardWeights {
    pub fn validate(&self) -> Result<()> {
        if self.eta.iter().any(|&e| e < 0.0) {
            return Err(Error::config("reward weights must be non-negative"));
        }
        let max_eta = self.eta.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
        if self.eta[4] < max_eta {
            return Err(Error::config(
                "eta_5 (accident weight) must be the largest coefficient",
            ));
        }
        if !(self.v_limit - self.v_star > 0.0) {
            return Err(Error::config("v_limit must exceed v_star"));
        }
        if !(self.v_star > 0.0) {
            return Err(Error::config("v_star must be positive"));
        }
        if !(self.a_min < 0.0 && self.a_max > 0.0) {
            return Err(Error::config("need a_min < 0 < a_max"));
        }
        if !(self.s0 >= 0.0 && self.t_star >= 0.0) {
            return Err(Error::config("s0 and t_star must be non-negative"));
        }
        Ok(())
    }
}

/// The agent's perceivable space: `longitudinal_range` meters ahead and
/// behind, `lateral_range` lanes to each side.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct PerceptionParams {
    pub longitudinal_range: f64,
    pub lateral_range: u32,
}

impl Default for PerceptionParams {
    fn default() -> Self {
        PerceptionParams {
            longitudinal_range: 100.0,
            lateral_range: 1,
        }
    }
}

impl PerceptionParams {
    /// Maximum number of observable vehicles: `2 * (2 * lateral_range + 1)`.
    pub fn max_observable(&self) -> usize {
        2 * self.visible_lanes()
    }

    /// Number of lanes covered by the lateral range: `2 * lateral_range + 1`.
    pub fn visible_lanes(&self) -> usize {
        2 * self.lateral_range as usize + 1
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.longitudinal_range > 0.0) {
            return Err(Error::config("longitudinal_range must be positive"));
        }
        Ok(())
    }
}

/// Parameters of the background car-following and lane-change controllers.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct DynamicsParams {
    /// Car-following maximum acceleration, m/s^2.
    pub idm_a: f64,
    /// Comfortable deceleration, m/s^2 (positive).
    pub idm_b: f64,
    /// Free-flow exponent.
    pub idm_delta: f64,
    /// Minimum standstill gap, m.
    pub s0: f64,
    /// Minimum time headway, s.
    pub t_star: f64,
    /// Fallback target speed when a vehicle carries none, m/s.
    pub v0: f64,
    /// Weight of the new follower's deceleration in the lane-change incentive.
    pub lc_politeness: f64,
    /// Acceleration advantage required to change lanes, m/s^2.
    pub lc_threshold: f64,
    /// Steps a vehicle must wait after a lane change before the next one.
    pub lc_cooldown: u32,
    /// Hard deceleration clip for background vehicles (negative).
    pub a_min: f64,
    /// Hard acceleration clip for background vehicles (positive).
    pub a_max: f64,
}

impl Default for DynamicsParams {
    fn default() -> Self {
        DynamicsParams {
            idm_a: 1.5,
            idm_b: 2.0,
            idm_delta: 4.0,
            s0: 2.0,
            t_star: 1.0,
            v0: 14.0,
            lc_politeness: 0.1,
            lc_threshold: 0.2,
            lc_cooldown: 30,
            a_min: -6.0,
            a_max: 3.0,
        }
    }
}

impl DynamicsParams {
    pub fn validate(&self) -> Result<()> {
        if !(self.idm_a > 0.0 && self.idm_b > 0.0) {
            return Err(Error::config("idm_a and idm_b must be positive"));
        }
        if !(self.idm_delta > 0.0) {
            return Err(Error::config("idm_delta must be positive"));
        }
        if !(self.v0 > 0.0) {
            return Err(Error::config("v0 must be positive"));
        }
        if !(self.s0 >= 0.0 && self.t_star >= 0.0) {
            return Err(Error::config("s0 and t_star must be non-negative"));
        }
        if !(self.a_min < 0.0 && self.a_max > 0.0) {
            return Err(Error::config("need a_min < 0 < a_max"));
        }
        Ok(())
    }
}

/// Trainer hyperparameters shared by the online and offline algorithms.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct TrainConfig {
    /// Temporal discount, in [0, 1).
    pub gamma: f64,
    pub batch_size: usize,
    pub actor_lr: f64,
    pub critic_lr: f64,
    /// Polyak averaging rate for target networks, in (0, 1].
    pub tau: f64,
    /// Behavioral-cloning weight lambda for the imitative baseline.
    pub bc_weight: f64,
    /// Gaussian exploration noise scale (online only), in raw action units
    /// relative to each head's half-span.
    pub noise_scale: f64,
    pub gradient_steps: u64,
    pub eval_interval: u64,
    pub seed: u64,
    /// Uniform-random action steps before the actor drives exploration.
    pub warmup_steps: u64,
    pub replay_capacity: usize,
    pub hidden: Vec<usize>,
    pub eval_episodes: usize,
    /// Shift rewards so the maximum attainable per-step reward is zero
    /// (the overestimation guard used when training the online policy).
    pub shift_nonpositive: bool,
}

impl Default for TrainConfig {
    fn default() -> Self {
        TrainConfig {
            gamma: 0.99,
            batch_size: 64,
            actor_lr: 1e-3,
            critic_lr: 1e-3,
            tau: 0.005,
            bc_weight: 2.5,
            noise_scale: 0.2,
            gradient_steps: 100_000,
            eval_interval: 5_000,
            seed: 0,
            warmup_steps: 1_000,
            replay_capacity: 1_000_000,
            hidden: vec![256, 256],
            eval_episodes: 10,
            shift_nonpositive: true,
        }
    }
}

impl TrainConfig {
    pub fn validate(&self) -> Result<()> {
        if !(0.0..1.0).contains(&self.gamma) {
            return Err(Error::config("gamma must be in [0, 1)"));
        }
        if !(self.actor_lr > 0.0 && self.critic_lr > 0.0) {
            return Err(Error::config("learning rates must be positive"));
        }
        if !(self.tau > 0.0 && self.tau <= 1.0) {
            return Err(Error::config("tau must be in (0, 1]"));
        }
        if self.batch_size == 0 {
            return Err(Error::config("batch_size must be at least 1"));
        }
        if self.hidden.is_empty() || self.hidden.iter().any(|&h| h == 0) {
            return Err(Error::config("hidden layer sizes must be positive"));
        }
        if self.replay_capacity == 0 {
            return Err(Error::config("replay_capacity must be positive"));
        }
        if self.eval_episodes == 0 {
            return Err(Error::config("eval_episodes must be positive"));
        }
        Ok(())
    }
}

/// Top-level config document consumed by the CLI. Only `scenario` is
/// mandatory; every other section falls back to defaults.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentConfig {
    pub scenario: ScenarioConfig,
    #[serde(default)]
    pub weights: RewardWeights,
    #[serde(default)]
    pub perception: PerceptionParams,
    #[serde(default)]
    pub dynamics: DynamicsParams,
    #[serde(default)]
    pub train: TrainConfig,
}

impl ExperimentConfig {
    pub fn new(scenario: ScenarioConfig) -> Self {
        ExperimentConfig {
            scenario,
            weights: RewardWeights::default(),
            perception: PerceptionParams::default(),
            dynamics: DynamicsParams::default(),
            train: TrainConfig::default(),
        }
    }

    pub fn validate(&self) -> Result<()> {
        self.scenario.validate()?;
        self.weights.validate()?;
        self.perception.validate()?;
        self.dynamics.validate()?;
        self.train.validate()?;
        if self.scenario.scenario == ScenarioKind::CutIn {
            let max_class = self.scenario.class_speeds[4];
            if self.weights.v_star <= max_class {
                return Err(Error::config(
                    "cut_in requires the agent's desired speed above every background target speed",
                ));
            }
        }
        Ok(())
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let cfg: ExperimentConfig =
            serde_json::from_str(text).map_err(|e| Error::parse(format!("config: {e}")))?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn load(path: &std::path::Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|source| Error::File {
            path: path.to_path_buf(),
            source,
        })?;
        Self::from_json(&text)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn base() -> ExperimentConfig {
        ExperimentConfig::new(ScenarioConfig::new(ScenarioKind::Highway))
    }

    #[test]
    fn default_config_is_valid() {
        base().validate().unwrap();
    }

    #[test]
    fn class_speeds_must_increase() {
        let mut cfg = base();
        cfg.scenario.class_speeds = [8.0, 11.0, 11.0, 17.0, 20.0];
        assert!(cfg.validate().is_err());
    }

    #[test]
    fn lane_reduction_needs_interior_bottleneck() {
        let mut cfg = base();
        cfg.scenario.scenario = ScenarioKind::LaneReduction;
        assert!(cfg.validate().is_err());
        cfg.scenario.bottleneck = Some(Bottleneck {
            start: 100.0,
            end: 900.0,
            lanes: 5,
        });
        assert!(cfg.validate().is_err(), "reduced count must be below L");
        cfg.scenario.bottleneck = Some(Bottleneck {
            start: 100.0,
            end: 300.0,
            lanes: 3,
        });
        cfg.validate().unwrap();
    }

    #[test]
    fn unknown_keys_are_rejected() {
        let text = r#"{"scenario": {"scenario": "highway", "warp_drive": 1}}"#;
        assert!(ExperimentConfig::from_json(text).is_err());
        let text = r#"{"scenario": {"scenario": "highway"}, "extra_section": {}}"#;
        assert!(ExperimentConfig::from_json(text).is_err());
    }

    #[test]
    fn minimal_config_parses_with_defaults() {
        let cfg = ExperimentConfig::from_json(r#"{"scenario": {"scenario": "cut_in"}}"#).unwrap();
        assert_eq!(cfg.scenario.vehicle_count, 117);
        assert_eq!(cfg.scenario.horizon, 1500);
        assert_eq!(cfg.perception.lateral_range, 1);
    }

    #[test]
    fn eta5_must_dominate() {
        let mut cfg = base();
        cfg.weights.eta = [50.0, 0.02, 0.5, 0.5, 40.0];
        assert!(cfg.validate().is_err());
    }

    #[test]
    fn cut_in_requires_fast_agent() {
        let mut cfg = base();
        cfg.scenario.scenario = ScenarioKind::CutIn;
        cfg.weights.v_star = 15.0;
        assert!(cfg.validate().is_err());
        cfg.weights.v_star = 22.0;
        cfg.validate().unwrap();
    }
}
