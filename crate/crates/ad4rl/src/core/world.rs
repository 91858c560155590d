//! Kinematic world state shared by the simulator, the decision-process
//! environment, and the trajectory-ingestion pipeline.
//!
//! The road is a one-dimensional closed ring with discrete lanes. Lane 1 is
//! the leftmost lane; a lane-change command of +1 means "move left", i.e. the
//! lane index decreases.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub type VehicleId = u32;

/// Vehicle class. Background classes 1..=5 carry increasing target speeds.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum VehicleKind {
    Autonomous,
    Background(u8),
}

impl VehicleKind {
    pub fn is_autonomous(self) -> bool {
        matches!(self, VehicleKind::Autonomous)
    }
}

/// One vehicle's kinematic record.
#[derive(Debug, Clone)]
pub struct Vehicle {
    pub id: VehicleId,
    pub kind: VehicleKind,
    /// m/s, never negative.
    pub velocity: f64,
    /// Front-bumper position in meters along the road axis, in `[0, road_length)`.
    /// The vehicle occupies `[position - length, position]`.
    pub position: f64,
    /// Lane index in `1..=L`; lane 1 is leftmost.
    pub lane: u32,
    /// m, strictly positive.
    pub length: f64,
    /// Controller target speed (class speed for background vehicles).
    pub target_speed: f64,
    /// Set once the vehicle has been involved in an accident; it then stays
    /// frozen in place for the rest of the episode.
    pub accident: bool,
    /// Steps remaining before the rule-based controller may change lanes again.
    pub lc_cooldown: u32,
}

impl Vehicle {
    pub fn new(id: VehicleId, kind: VehicleKind, velocity: f64, position: f64, lane: u32) -> Self {
        Vehicle {
            id,
            kind,
            velocity,
            position,
            lane,
            length: 4.45,
            target_speed: velocity.max(1.0),
            accident: false,
            lc_cooldown: 0,
        }
    }

    pub fn with_length(mut self, length: f64) -> Self {
        self.length = length;
        self
    }

    pub fn with_target_speed(mut self, v0: f64) -> Self {
        self.target_speed = v0;
        self
    }
}

/// Bottleneck interval with a reduced lane count. The rightmost lanes (the
/// highest indices) are the ones that disappear.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Bottleneck {
    pub start: f64,
    pub end: f64,
    pub lanes: u32,
}

/// Per-position lane count for the road.
#[derive(Debug, Clone, PartialEq)]
pub struct SegmentMap {
    pub road_length: f64,
    pub base_lanes: u32,
    pub bottleneck: Option<Bottleneck>,
}

impl SegmentMap {
    pub fn uniform(road_length: f64, lanes: u32) -> Self {
        SegmentMap {
            road_length,
            base_lanes: lanes,
            bottleneck: None,
        }
    }

    pub fn lane_count_at(&self, position: f64) -> u32 {
        let p = position.rem_euclid(self.road_length);
        match self.bottleneck {
            Some(b) if p >= b.start && p < b.end => b.lanes,
            _ => self.base_lanes,
        }
    }

    pub fn lane_exists_at(&self, lane: u32, position: f64) -> bool {
        lane >= 1 && lane <= self.lane_count_at(position)
    }

    /// Distance (along the driving direction) from `position` to the next
    /// point where `lane` stops existing, if that happens within `lookahead`.
    pub fn distance_to_lane_drop(&self, lane: u32, position: f64, lookahead: f64) -> Option<f64> {
        let b = self.bottleneck?;
        if lane <= b.lanes {
            return None;
        }
        let p = position.rem_euclid(self.road_length);
        if p >= b.start && p < b.end {
            // Already inside the reduced segment; the drop is here.
            return Some(0.0);
        }
        let dist = (b.start - p).rem_euclid(self.road_length);
        (dist <= lookahead).then_some(dist)
    }
}

/// Full simulator state: every vehicle plus the road geometry.
#[derive(Debug, Clone)]
pub struct WorldState {
    /// Sorted by `id`; the flattened state vector follows this order.
    pub vehicles: Vec<Vehicle>,
    pub time_step: u64,
    pub segment_map: SegmentMap,
}

impl WorldState {
    pub fn new(vehicles: Vec<Vehicle>, segment_map: SegmentMap) -> Self {
        let mut vehicles = vehicles;
        vehicles.sort_by_key(|v| v.id);
        WorldState {
            vehicles,
            time_step: 0,
            segment_map,
        }
    }

    pub fn vehicle(&self, id: VehicleId) -> Result<&Vehicle> {
        self.vehicles
            .binary_search_by_key(&id, |v| v.id)
            .map(|i| &self.vehicles[i])
            .map_err(|_| Error::contract(format!("unknown vehicle id {id}")))
    }

    pub fn vehicle_mut(&mut self, id: VehicleId) -> Result<&mut Vehicle> {
        self.vehicles
            .binary_search_by_key(&id, |v| v.id)
            .map(|i| &mut self.vehicles[i])
            .map_err(|_| Error::contract(format!("unknown vehicle id {id}")))
    }

    /// Signed ring distance from `from` to `to`, wrapped into
    /// `(-road_length/2, road_length/2]`. Positive means `to` is ahead.
    pub fn ring_delta(&self, from: f64, to: f64) -> f64 {
        let len = self.segment_map.road_length;
        let d = (to - from).rem_euclid(len);
        if d > len / 2.0 {
            d - len
        } else {
            d
        }
    }

    /// Forward ring distance from `from` to `to` in `[0, road_length)`.
    pub fn forward_distance(&self, from: f64, to: f64) -> f64 {
        (to - from).rem_euclid(self.segment_map.road_length)
    }

    /// Net bumper-to-bumper gap from `behind`'s front to `ahead`'s rear,
    /// measured forward along the ring. Negative means overlap.
    pub fn net_gap(&self, behind: &Vehicle, ahead: &Vehicle) -> f64 {
        self.forward_distance(behind.position, ahead.position) - ahead.length
    }

    /// Nearest same-lane vehicle ahead of `id`, with its net gap.
    pub fn same_lane_leader(&self, id: VehicleId) -> Result<Option<(&Vehicle, f64)>> {
        let ego = self.vehicle(id)?;
        Ok(self.nearest_in_lane(ego, ego.lane, true))
    }

    /// Nearest same-lane vehicle behind `id`, with its net gap (gap measured
    /// from the follower's front to the ego's rear).
    pub fn same_lane_follower(&self, id: VehicleId) -> Result<Option<(&Vehicle, f64)>> {
        let ego = self.vehicle(id)?;
        Ok(self.nearest_in_lane(ego, ego.lane, false))
    }

    /// Nearest vehicle in `lane` ahead of (or behind) `ego`, together with
    /// the net gap as if `ego` drove in that lane. Ties on distance break by id.
    pub fn nearest_in_lane(&self, ego: &Vehicle, lane: u32, ahead: bool) -> Option<(&Vehicle, f64)> {
        let mut best: Option<(&Vehicle, f64)> = None;
        for v in &self.vehicles {
            if v.id == ego.id || v.lane != lane {
                continue;
            }
            let fwd = self.forward_distance(ego.position, v.position);
            let dist = if ahead {
                fwd
            } else {
                self.forward_distance(v.position, ego.position)
            };
            match best {
                Some((_, d)) if d <= dist => {}
                _ => best = Some((v, dist)),
            }
        }
        best.map(|(v, dist)| {
            let gap = if ahead {
                dist - v.length
            } else {
                dist - ego.length
            };
            (v, gap)
        })
    }

    /// Flattens the world to `[v1, p1, k1, ..., vN, pN, kN]` in stable
    /// vehicle-id order. The dimension is exactly `3 * N`.
    pub fn flatten_state(&self) -> Vec<f64> {
        let mut out = Vec::with_capacity(self.vehicles.len() * 3);
        for v in &self.vehicles {
            out.push(v.velocity);
            out.push(v.position);
            out.push(f64::from(v.lane));
        }
        out
    }
}

/// See [`WorldState::flatten_state`].
pub fn flatten_state(world: &WorldState) -> Vec<f64> {
    world.flatten_state()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn world_with(n: usize) -> WorldState {
        let vehicles = (0..n)
            .map(|i| {
                Vehicle::new(
                    i as VehicleId,
                    VehicleKind::Background(1),
                    10.0,
                    15.0 * i as f64,
                    1,
                )
            })
            .collect();
        WorldState::new(vehicles, SegmentMap::uniform(2000.0, 3))
    }

    #[test]
    fn flatten_empty_world() {
        assert!(world_with(0).flatten_state().is_empty());
    }

    #[test]
    fn flatten_two_vehicles_is_six_dim() {
        let flat = world_with(2).flatten_state();
        assert_eq!(flat.len(), 6);
        assert_eq!(flat, vec![10.0, 0.0, 1.0, 10.0, 15.0, 1.0]);
    }

    #[test]
    fn flatten_117_vehicles_is_351_dim() {
        assert_eq!(world_with(117).flatten_state().len(), 351);
    }

    #[test]
    fn ring_delta_wraps() {
        let w = world_with(0);
        assert_eq!(w.ring_delta(10.0, 30.0), 20.0);
        assert_eq!(w.ring_delta(1990.0, 10.0), 20.0);
        assert_eq!(w.ring_delta(10.0, 1990.0), -20.0);
    }

    #[test]
    fn net_gap_subtracts_leader_length() {
        let w = world_with(2);
        let gap = w.net_gap(&w.vehicles[0], &w.vehicles[1]);
        assert_eq!(gap, 15.0 - 4.45);
    }

    #[test]
    fn bottleneck_lane_counts() {
        let m = SegmentMap {
            road_length: 1000.0,
            base_lanes: 4,
            bottleneck: Some(Bottleneck {
                start: 300.0,
                end: 500.0,
                lanes: 3,
            }),
        };
        assert_eq!(m.lane_count_at(100.0), 4);
        assert_eq!(m.lane_count_at(300.0), 3);
        assert_eq!(m.lane_count_at(499.9), 3);
        assert_eq!(m.lane_count_at(500.0), 4);
        assert!(m.lane_exists_at(4, 100.0));
        assert!(!m.lane_exists_at(4, 400.0));
        assert_eq!(m.distance_to_lane_drop(4, 100.0, 300.0), Some(200.0));
        assert_eq!(m.distance_to_lane_drop(4, 100.0, 100.0), None);
        assert_eq!(m.distance_to_lane_drop(3, 100.0, 1000.0), None);
    }
}
