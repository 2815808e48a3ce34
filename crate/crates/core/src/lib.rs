//! Geometry, channel model and dynamic horizontal repositioning for
//! standalone drone-mounted small cells.
//!
//! The crate is `no_std` (it needs `alloc`). Everything here is pure and
//! deterministic: the same inputs always produce the same bits, so callers
//! are free to fan work out over threads. File formats, the CLI and the
//! parallel simulation driver live in the `dronecell` crate.
//!
//! Angles in every public signature are in degrees.

#![no_std]

extern crate alloc;
#[cfg(test)]
extern crate std;

pub mod cell_design;
pub mod channel;
pub mod dhop;
pub mod error;
pub mod geometry;
pub mod sampling;
pub mod sim;
pub mod simplex;
pub mod stats;

pub use cell_design::{cell_geometry, solve_edge_angle, AntennaModel, CellGeometry, EdgeSolution};
pub use channel::{RateModel, ScenarioParams, UserRate};
pub use dhop::{PlacementResult, Strategy, UserSet};
pub use error::{Error, Result};
pub use geometry::{min_enclosing_circle, Circle, Point2D};
pub use sim::{SimConfig, StrategyOutcome, SummaryStats, TimeslotResult};
pub use stats::EmpiricalCdf;
