//! Directional-antenna model and the coverage-optimal edge elevation angle.
//!
//! For a fixed allowed expected path loss at the cell edge, the achievable
//! radius depends on the edge elevation angle through three competing terms:
//! the slant-range penalty of a steep cone, the LoS probability bonus of a
//! steep cone, and the directivity bonus of a narrow cone. The solver finds
//! the angle that maximizes the radius.

// Shadowed by inherent f64 methods whenever std is linked into the build.
#[allow(unused_imports)]
use num_traits::Float;

use crate::channel::ScenarioParams;
use crate::error::{Error, Result};

/// Upper bound on the edge angle accepted by [`ideal_directivity`].
pub const MAX_EDGE_DEG: f64 = 90.0 - 1e-6;

/// Edge angles above this are reported as near-degenerate.
pub const NEAR_DEGENERATE_DEG: f64 = 85.0;

const SCAN_START_DEG: f64 = 0.5;
const SCAN_END_DEG: f64 = 89.5;
const SCAN_STEP_DEG: f64 = 0.25;
const ANGLE_TOL_DEG: f64 = 1e-9;
const OBJECTIVE_TOL: f64 = 1e-12;

/// Directivity of an ideal conical beam that exactly covers a cell whose edge
/// is seen at `theta_edge_deg`: `2 / (1 - sin theta)`.
pub fn ideal_directivity(theta_edge_deg: f64) -> Result<f64> {
    if !(0.0..MAX_EDGE_DEG).contains(&theta_edge_deg) {
        return Err(Error::domain(
            "theta_edge_deg",
            theta_edge_deg,
            "0 <= theta_edge < 90 - 1e-6",
        ));
    }
    Ok(2.0 / (1.0 - theta_edge_deg.to_radians().sin()))
}

/// Antenna fitted to a cell edge angle.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AntennaModel {
    pub e_r: f64,
    pub theta_edge_deg: f64,
    /// `D_I`, linear.
    pub ideal_directivity: f64,
    /// `10 log10(D_I^e_r)`.
    pub effective_directivity_db: f64,
}

impl AntennaModel {
    pub fn new(theta_edge_deg: f64, e_r: f64) -> Result<Self> {
        if !(theta_edge_deg > 0.0) {
            return Err(Error::domain("theta_edge_deg", theta_edge_deg, "0 < theta_edge < 90"));
        }
        if !(0.0..1.0).contains(&e_r) {
            return Err(Error::domain("e_r", e_r, "0 <= e_r < 1"));
        }
        let ideal = ideal_directivity(theta_edge_deg)?;
        Ok(AntennaModel {
            e_r,
            theta_edge_deg,
            ideal_directivity: ideal,
            effective_directivity_db: e_r * 10.0 * ideal.log10(),
        })
    }

    /// Half apex angle of the beam, degrees.
    pub fn half_apex_deg(&self) -> f64 {
        90.0 - self.theta_edge_deg
    }

    /// Solid angle of the ideal cone, steradians.
    pub fn solid_angle(&self) -> f64 {
        2.0 * core::f64::consts::PI * (1.0 - self.half_apex_deg().to_radians().cos())
    }
}

fn check_open_angle(theta_deg: f64) -> Result<()> {
    if !(theta_deg > 0.0 && theta_deg < 90.0) {
        return Err(Error::domain("theta_deg", theta_deg, "0 < theta < 90"));
    }
    Ok(())
}

/// Derivative condition whose roots are the stationary points of the cell
/// radius as a function of the edge angle.
///
/// The returned value is `-d(20 log10 D_max)/d(theta)` at fixed allowed path
/// loss, so it crosses zero from negative to positive at a radius maximum.
pub fn edge_angle_objective(theta_deg: f64, params: &ScenarioParams) -> Result<f64> {
    check_open_angle(theta_deg)?;
    Ok(objective_unchecked(theta_deg, params))
}

fn objective_unchecked(theta_deg: f64, params: &ScenarioParams) -> f64 {
    use core::f64::consts::{LN_10, PI};
    let rad = theta_deg.to_radians();
    let (a, b) = (params.a, params.b);
    let e = (-b * (theta_deg - a)).exp();
    let denom = 1.0 + a * e;
    let slant = PI * rad.tan() / (9.0 * LN_10);
    let shadowing = a * b * params.excess_loss_swing() * e / (denom * denom);
    let directivity = params.e_r * PI * rad.cos() / (18.0 * LN_10 * (1.0 - rad.sin()));
    slant + shadowing - directivity
}

/// `20 log10 D_max` up to an additive constant that depends only on the
/// allowed path loss and the carrier frequency.
pub fn relative_radius_db(theta_deg: f64, params: &ScenarioParams) -> Result<f64> {
    check_open_angle(theta_deg)?;
    Ok(relative_radius_unchecked(theta_deg, params))
}

fn relative_radius_unchecked(theta_deg: f64, params: &ScenarioParams) -> f64 {
    let rad = theta_deg.to_radians();
    -params.excess_loss_swing() * params.logistic(theta_deg)
        + 20.0 * rad.cos().log10()
        + params.e_r * 10.0 * (2.0 / (1.0 - rad.sin())).log10()
}

/// Result of the edge-angle solve.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EdgeSolution {
    pub theta_edge_deg: f64,
    /// Objective at the returned angle.
    pub residual: f64,
    /// Bracket that contained the root before bisection.
    pub bracket: (f64, f64),
    /// Set when the optimum exceeds [`NEAR_DEGENERATE_DEG`]; the antenna is
    /// close enough to ideal that downstream gains are implausible.
    pub near_degenerate: bool,
}

/// Coverage-maximizing edge elevation angle for `params`.
///
/// Scans `(0.5, 89.5)` degrees in 0.25 degree steps for sign changes of the
/// objective, bisects each bracket down to floating-point resolution and keeps
/// the radius maximum with the largest implied radius.
pub fn solve_edge_angle(params: &ScenarioParams) -> Result<EdgeSolution> {
    params.validate()?;
    let f = |t: f64| objective_unchecked(t, params);

    let steps = ((SCAN_END_DEG - SCAN_START_DEG) / SCAN_STEP_DEG).round() as usize;
    let mut best: Option<(f64, EdgeSolution)> = None;
    let mut lo = SCAN_START_DEG;
    let mut f_lo = f(lo);
    for i in 1..=steps {
        let hi = SCAN_START_DEG + i as f64 * SCAN_STEP_DEG;
        let f_hi = f(hi);
        // Radius maximum: objective goes from negative to non-negative.
        if f_lo < 0.0 && f_hi >= 0.0 {
            let root = bisect(&f, lo, hi);
            let radius = relative_radius_unchecked(root, params);
            let candidate = EdgeSolution {
                theta_edge_deg: root,
                residual: f(root),
                bracket: (lo, hi),
                near_degenerate: root > NEAR_DEGENERATE_DEG,
            };
            if best.map_or(true, |(r, _)| radius > r) {
                best = Some((radius, candidate));
            }
        }
        lo = hi;
        f_lo = f_hi;
    }
    best.map(|(_, s)| s).ok_or(Error::NoOptimum { e_r: params.e_r })
}

/// Bisection on a bracket with `f(lo) < 0 <= f(hi)`.
fn bisect(f: &impl Fn(f64) -> f64, mut lo: f64, mut hi: f64) -> f64 {
    loop {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        let f_mid = f(mid);
        if f_mid.abs() < OBJECTIVE_TOL && hi - lo < ANGLE_TOL_DEG {
            return mid;
        }
        if f_mid < 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    if f(lo).abs() < f(hi).abs() {
        lo
    } else {
        hi
    }
}

/// Cell geometry: edge angle, radius and hovering altitude.
#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct CellGeometry {
    pub theta_edge_deg: f64,
    /// Cell radius, meters.
    pub d_max: f64,
    /// Drone altitude, meters.
    pub altitude: f64,
}

impl CellGeometry {
    pub fn from_edge_angle(theta_edge_deg: f64, d_max: f64) -> Result<Self> {
        check_open_angle(theta_edge_deg)?;
        if !(d_max > 0.0) || !d_max.is_finite() {
            return Err(Error::domain("d_max", d_max, "d_max > 0"));
        }
        Ok(CellGeometry {
            theta_edge_deg,
            d_max,
            altitude: d_max * theta_edge_deg.to_radians().tan(),
        })
    }
}

/// Solves the edge angle for `params` and sizes the cell to `d_max`.
pub fn cell_geometry(d_max: f64, params: &ScenarioParams) -> Result<CellGeometry> {
    if !(d_max > 0.0) || !d_max.is_finite() {
        return Err(Error::domain("d_max", d_max, "d_max > 0"));
    }
    let edge = solve_edge_angle(params)?;
    CellGeometry::from_edge_angle(edge.theta_edge_deg, d_max)
}

#[cfg(test)]
mod tests {
    use super::*;

    const URBAN: ScenarioParams = ScenarioParams::urban();

    #[test]
    fn ideal_directivity_reference_points() {
        assert!((ideal_directivity(30.0).unwrap() - 4.0).abs() < 1e-12);
        assert_eq!(ideal_directivity(0.0).unwrap(), 2.0);
        assert!(ideal_directivity(90.0).is_err());
        assert!(ideal_directivity(-1.0).is_err());
    }

    #[test]
    fn antenna_model_consistent_with_solid_angle() {
        let m = AntennaModel::new(40.0, 0.6).unwrap();
        let from_cone = 4.0 * core::f64::consts::PI / m.solid_angle();
        assert!((from_cone - m.ideal_directivity).abs() < 1e-12);
        assert!((m.effective_directivity_db - 0.6 * 10.0 * m.ideal_directivity.log10()).abs() < 1e-15);
        assert!(AntennaModel::new(40.0, 1.0).is_err());
    }

    #[test]
    fn isotropic_optimum_near_42_44() {
        let s = solve_edge_angle(&URBAN.with_efficiency(0.0)).unwrap();
        // 0.001-degree grid maximization of the implied radius lands on 42.439.
        assert!((s.theta_edge_deg - 42.439).abs() < 1e-3, "{}", s.theta_edge_deg);
        assert!(s.residual.abs() < 1e-12);
        assert!(!s.near_degenerate);
    }

    #[test]
    fn directivity_term_vanishes_for_isotropic() {
        let iso = URBAN.with_efficiency(0.0);
        let rad = 30.0_f64.to_radians();
        let slant = core::f64::consts::PI * rad.tan() / (9.0 * core::f64::consts::LN_10);
        let e = (-iso.b * (30.0 - iso.a)).exp();
        let shadow = iso.a * iso.b * -19.0 * e / (1.0 + iso.a * e).powi(2);
        assert!((edge_angle_objective(30.0, &iso).unwrap() - (slant + shadow)).abs() < 1e-15);
    }

    #[test]
    fn optimum_grows_with_efficiency() {
        let t = |e| solve_edge_angle(&URBAN.with_efficiency(e)).unwrap().theta_edge_deg;
        assert!(t(0.8) > t(0.4) && t(0.4) > t(0.0));
    }

    #[test]
    fn geometry_altitude() {
        let g = CellGeometry::from_edge_angle(45.0, 300.0).unwrap();
        assert!((g.altitude - 300.0).abs() < 1e-9);
        let g1 = cell_geometry(500.0, &URBAN).unwrap();
        let g2 = cell_geometry(1000.0, &URBAN).unwrap();
        assert_eq!(g1.theta_edge_deg, g2.theta_edge_deg);
        assert!((g2.altitude - 2.0 * g1.altitude).abs() < 1e-9);
        assert!(cell_geometry(0.0, &URBAN).is_err());
    }
}
