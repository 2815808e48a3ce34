//! Dynamic horizontal repositioning strategies.
//!
//! The drone stays at the design altitude and moves inside the closed cell
//! disc. Four placements are provided: the static cell center, the center of
//! the smallest circle bounding the active users (SBC), the point of maximum
//! aggregated rate (MAR) and whichever of SBC/MAR lies closer to the cell
//! center (CMP).

use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

// Shadowed by inherent f64 methods whenever std is linked into the build.
#[allow(unused_imports)]
use num_traits::Float;

use crate::channel::{RateModel, MAX_KAPPA};
use crate::error::{Error, Result};
use crate::geometry::{min_enclosing_circle, Point2D};
use crate::simplex::{self, SimplexOptions};

/// Relative slack for "inside the cell" checks.
const DISC_SLACK: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "lowercase"))]
pub enum Strategy {
    Static,
    Sbc,
    Mar,
    Cmp,
}

impl Strategy {
    pub const ALL: [Strategy; 4] = [Strategy::Static, Strategy::Sbc, Strategy::Mar, Strategy::Cmp];

    pub fn name(self) -> &'static str {
        match self {
            Strategy::Static => "static",
            Strategy::Sbc => "sbc",
            Strategy::Mar => "mar",
            Strategy::Cmp => "cmp",
        }
    }

    pub fn is_dynamic(self) -> bool {
        self != Strategy::Static
    }
}

impl fmt::Display for Strategy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Strategy {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "static" => Ok(Strategy::Static),
            "sbc" => Ok(Strategy::Sbc),
            "mar" => Ok(Strategy::Mar),
            "cmp" => Ok(Strategy::Cmp),
            _ => Err(Error::InvalidConfig("unknown strategy (expected static, sbc, mar or cmp)")),
        }
    }
}

/// Active users of one timeslot inside a cell.
#[derive(Debug, Clone, PartialEq)]
pub struct UserSet {
    users: Vec<Point2D>,
    cell_center: Point2D,
    d_max: f64,
}

impl UserSet {
    pub fn new(users: Vec<Point2D>, cell_center: Point2D, d_max: f64) -> Result<Self> {
        if !(d_max > 0.0) || !d_max.is_finite() {
            return Err(Error::domain("d_max", d_max, "d_max > 0"));
        }
        if !cell_center.is_finite() {
            return Err(Error::InvalidConfig("cell center must be finite"));
        }
        for u in &users {
            let r = u.distance(cell_center);
            if !(r <= d_max * (1.0 + DISC_SLACK)) {
                return Err(Error::domain("user distance from center", r, "within d_max"));
            }
        }
        Ok(UserSet {
            users,
            cell_center,
            d_max,
        })
    }

    pub fn users(&self) -> &[Point2D] {
        &self.users
    }

    pub fn cell_center(&self) -> Point2D {
        self.cell_center
    }

    pub fn d_max(&self) -> f64 {
        self.d_max
    }

    pub fn len(&self) -> usize {
        self.users.len()
    }

    pub fn is_empty(&self) -> bool {
        self.users.is_empty()
    }

    /// `kappa` of every user for a drone at `position`.
    pub fn kappas(&self, position: Point2D) -> Vec<f64> {
        self.users
            .iter()
            .map(|u| u.distance(position) / self.d_max)
            .collect()
    }

    fn contains(&self, p: Point2D) -> bool {
        p.distance(self.cell_center) <= self.d_max * (1.0 + DISC_SLACK)
    }

    fn to_local(&self, p: Point2D) -> Point2D {
        (p - self.cell_center) * (1.0 / self.d_max)
    }

    fn to_world(&self, p: Point2D) -> Point2D {
        self.cell_center + p * self.d_max
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct PlacementResult {
    pub position: Point2D,
    pub strategy: Strategy,
    /// Distance ratio of each user, in user order.
    pub kappas: Vec<f64>,
    /// Sum of per-user rates, bits/symbol.
    pub aggregate_rate: f64,
}

impl PlacementResult {
    fn at(position: Point2D, strategy: Strategy, users: &UserSet, model: &RateModel) -> Self {
        let kappas = users.kappas(position);
        let aggregate_rate = kappas
            .iter()
            .map(|&k| model.rate_unchecked(k.min(MAX_KAPPA)))
            .sum();
        PlacementResult {
            position,
            strategy,
            kappas,
            aggregate_rate,
        }
    }

    /// Per-user rates recomputed from the stored `kappas`.
    pub fn rates(&self, model: &RateModel) -> Result<Vec<f64>> {
        self.kappas.iter().map(|&k| model.rate(k)).collect()
    }

    pub fn max_kappa(&self) -> Option<f64> {
        self.kappas.iter().copied().reduce(f64::max)
    }
}

/// Drone stays at the cell center.
pub fn static_position(users: &UserSet, model: &RateModel) -> PlacementResult {
    PlacementResult::at(users.cell_center, Strategy::Static, users, model)
}

/// Drone at the center of the smallest circle bounding all active users.
/// An idle timeslot keeps the drone at the cell center.
pub fn sbc_position(users: &UserSet, model: &RateModel) -> PlacementResult {
    let position = sbc_center(users);
    PlacementResult::at(position, Strategy::Sbc, users, model)
}

fn sbc_center(users: &UserSet) -> Point2D {
    match min_enclosing_circle(users.users()) {
        Ok(circle) => circle.center,
        Err(_) => users.cell_center,
    }
}

/// Aggregate rate for a drone at `position`.
pub fn mar_objective(position: Point2D, users: &UserSet, model: &RateModel) -> Result<f64> {
    if !position.is_finite() || !users.contains(position) {
        return Err(Error::domain(
            "position distance from center",
            position.distance(users.cell_center),
            "within d_max",
        ));
    }
    Ok(aggregate(position, users, model))
}

fn aggregate(position: Point2D, users: &UserSet, model: &RateModel) -> f64 {
    users
        .users
        .iter()
        .map(|u| model.rate_unchecked((u.distance(position) / users.d_max).min(MAX_KAPPA)))
        .sum()
}

fn project_unit_disc(p: Point2D) -> Point2D {
    let r = p.norm();
    if r > 1.0 {
        p * (1.0 / r)
    } else {
        p
    }
}

/// Number of rings and spokes of the coarse polar seed grid.
const SEED_RINGS: usize = 4;
const SEED_SPOKES: usize = 16;

/// Drone at an approximate global maximizer of the aggregate rate over the
/// cell disc.
///
/// Multi-start simplex search seeded from the cell center, every user, the
/// SBC center and the best point of a 64-point polar grid. Candidates are
/// compared in world coordinates, so the result is never worse than any seed.
pub fn mar_position(users: &UserSet, model: &RateModel) -> PlacementResult {
    if users.is_empty() {
        return PlacementResult::at(users.cell_center, Strategy::Mar, users, model);
    }
    let local: Vec<Point2D> = users.users.iter().map(|&u| users.to_local(u)).collect();
    let local_objective = |p: Point2D| -> f64 {
        let p = project_unit_disc(p);
        -local
            .iter()
            .map(|u| model.rate_unchecked(u.distance(p).min(MAX_KAPPA)))
            .sum::<f64>()
    };

    let mut seeds: Vec<Point2D> = Vec::with_capacity(users.len() + 3);
    seeds.push(users.cell_center);
    seeds.extend_from_slice(&users.users);
    seeds.push(sbc_center(users));
    seeds.push(best_grid_seed(users, model));

    let opts = SimplexOptions::default();
    let mut best = (users.cell_center, f64::NEG_INFINITY);
    let mut consider = |p: Point2D| {
        let value = aggregate(p, users, model);
        if value > best.1 {
            best = (p, value);
        }
    };
    for &seed in &seeds {
        consider(seed);
        let refined = simplex::minimize(&local_objective, users.to_local(seed), &opts);
        let p = users.to_world(project_unit_disc(refined.point));
        if users.contains(p) {
            consider(p);
        }
    }
    PlacementResult::at(best.0, Strategy::Mar, users, model)
}

fn best_grid_seed(users: &UserSet, model: &RateModel) -> Point2D {
    let mut best = (users.cell_center, f64::NEG_INFINITY);
    for ring in 1..=SEED_RINGS {
        let radius = ring as f64 / SEED_RINGS as f64;
        for spoke in 0..SEED_SPOKES {
            let angle = 2.0 * core::f64::consts::PI * spoke as f64 / SEED_SPOKES as f64;
            let local = Point2D::new(radius * angle.cos(), radius * angle.sin());
            let p = users.to_world(project_unit_disc(local));
            let value = aggregate(p, users, model);
            if value > best.1 {
                best = (p, value);
            }
        }
    }
    best.0
}

/// Whichever of the SBC and MAR positions is closer to the cell center; ties
/// go to SBC.
pub fn cmp_position(users: &UserSet, model: &RateModel) -> PlacementResult {
    let sbc = sbc_position(users, model);
    let mar = mar_position(users, model);
    cmp_choose(users, sbc, mar)
}

/// CMP selection from already computed SBC and MAR placements.
pub fn cmp_choose(users: &UserSet, sbc: PlacementResult, mar: PlacementResult) -> PlacementResult {
    let center = users.cell_center;
    let chosen = if mar.position.distance(center) < sbc.position.distance(center) {
        mar
    } else {
        sbc
    };
    PlacementResult {
        strategy: Strategy::Cmp,
        ..chosen
    }
}

/// Places the drone with `strategy`.
pub fn place(strategy: Strategy, users: &UserSet, model: &RateModel) -> PlacementResult {
    match strategy {
        Strategy::Static => static_position(users, model),
        Strategy::Sbc => sbc_position(users, model),
        Strategy::Mar => mar_position(users, model),
        Strategy::Cmp => cmp_position(users, model),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::channel::ScenarioParams;
    use alloc::vec;

    fn model() -> RateModel {
        RateModel::optimal(ScenarioParams::urban()).unwrap()
    }

    fn set(users: Vec<Point2D>) -> UserSet {
        UserSet::new(users, Point2D::new(100.0, -50.0), 400.0).unwrap()
    }

    #[test]
    fn rejects_users_outside_cell() {
        let err = UserSet::new(vec![Point2D::new(401.0, 0.0)], Point2D::ORIGIN, 400.0);
        assert!(err.is_err());
        assert!(UserSet::new(vec![], Point2D::ORIGIN, 0.0).is_err());
    }

    #[test]
    fn single_edge_user() {
        let m = model();
        let users = set(vec![Point2D::new(500.0, -50.0)]);
        let sbc = sbc_position(&users, &m);
        assert_eq!(sbc.position, Point2D::new(500.0, -50.0));
        assert_eq!(sbc.kappas, vec![0.0]);
        assert_eq!(sbc.aggregate_rate, m.rate(0.0).unwrap());

        let mar = mar_position(&users, &m);
        assert!(mar.position.distance(Point2D::new(500.0, -50.0)) < 1e-6 * 400.0);
        let st = static_position(&users, &m);
        assert!((st.kappas[0] - 1.0).abs() < 1e-15);
        assert!((st.aggregate_rate - 1.0).abs() < 1e-12);
    }

    #[test]
    fn antipodal_edge_users() {
        let m = model();
        let users = set(vec![Point2D::new(-300.0, -50.0), Point2D::new(500.0, -50.0)]);
        let sbc = sbc_position(&users, &m);
        assert!(sbc.position.distance(users.cell_center()) < 1e-9);
        for k in &sbc.kappas {
            assert!((k - 1.0).abs() < 1e-12);
        }
        let at_center = mar_objective(users.cell_center(), &users, &m).unwrap();
        assert!((at_center - 2.0).abs() < 1e-12);
    }

    #[test]
    fn mar_objective_domain() {
        let m = model();
        let empty = set(vec![]);
        assert_eq!(mar_objective(empty.cell_center(), &empty, &m).unwrap(), 0.0);
        assert!(mar_objective(Point2D::new(1000.0, 0.0), &empty, &m).is_err());
    }

    #[test]
    fn coincident_users() {
        let m = model();
        let p = Point2D::new(250.0, 100.0);
        let users = set(vec![p; 4]);
        let mar = mar_position(&users, &m);
        assert!(mar.position.distance(p) < 1e-6 * 400.0);
        assert!((mar.aggregate_rate - 4.0 * m.rate(0.0).unwrap()).abs() < 1e-6);
    }

    #[test]
    fn empty_slot_stays_at_center() {
        let m = model();
        let users = set(vec![]);
        for s in Strategy::ALL {
            let r = place(s, &users, &m);
            assert_eq!(r.position, users.cell_center());
            assert!(r.kappas.is_empty());
            assert_eq!(r.aggregate_rate, 0.0);
            assert_eq!(r.strategy, s);
        }
    }

    #[test]
    fn cmp_prefers_closer_and_breaks_ties_to_sbc() {
        let m = model();
        let users = set(vec![Point2D::new(150.0, -50.0)]);
        let mk = |x: f64, s| PlacementResult::at(Point2D::new(100.0 + x, -50.0), s, &users, &m);
        let chosen = cmp_choose(&users, mk(80.0, Strategy::Sbc), mk(200.0, Strategy::Mar));
        assert_eq!(chosen.position.x, 180.0);
        let chosen = cmp_choose(&users, mk(200.0, Strategy::Sbc), mk(80.0, Strategy::Mar));
        assert_eq!(chosen.position.x, 180.0);
        let tie = cmp_choose(&users, mk(80.0, Strategy::Sbc), mk(-80.0, Strategy::Mar));
        assert_eq!(tie.position.x, 180.0);
        assert_eq!(tie.strategy, Strategy::Cmp);
    }

    #[test]
    fn strategy_names_round_trip() {
        for s in Strategy::ALL {
            assert_eq!(s.name().parse::<Strategy>().unwrap(), s);
        }
        assert!("centroid".parse::<Strategy>().is_err());
    }
}
