//! Air-to-ground channel model.
//!
//! LoS probability follows a logistic s-curve in the user-side elevation
//! angle. Path loss is free-space loss plus the mean excess loss of the
//! propagation group, minus the effective antenna directivity. Rates are
//! expressed relative to the cell edge: a user at `kappa = 1` receives exactly
//! one bit per symbol, so transmit power and noise never appear.

// Shadowed by inherent f64 methods whenever std is linked into the build.
#[allow(unused_imports)]
use num_traits::Float;

use crate::cell_design;
use crate::error::{Error, Result};

/// Speed of light in vacuum, m/s.
pub const SPEED_OF_LIGHT: f64 = 299_792_458.0;

/// Largest admissible horizontal distance ratio. Both the drone and the user
/// stay inside the cell disc, so they can be at most one diameter apart.
pub const MAX_KAPPA: f64 = 2.0;

/// Terrain, carrier and antenna constants of a deployment scenario.
#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct ScenarioParams {
    /// S-curve offset constant.
    pub a: f64,
    /// S-curve steepness, per degree.
    pub b: f64,
    /// Mean excess path loss in LoS, dB.
    pub eta_los: f64,
    /// Mean excess path loss in NLoS, dB.
    pub eta_nlos: f64,
    /// Carrier frequency, Hz.
    pub freq_hz: f64,
    /// Antenna efficiency exponent: `D_t = D_I^e_r`.
    pub e_r: f64,
}

impl ScenarioParams {
    /// Antenna efficiency used by the reference simulation campaign.
    pub const DEFAULT_EFFICIENCY: f64 = 0.6;

    /// Urban environment at 2 GHz with the default antenna efficiency.
    pub const fn urban() -> Self {
        ScenarioParams {
            a: 9.61,
            b: 0.16,
            eta_los: 1.0,
            eta_nlos: 20.0,
            freq_hz: 2.0e9,
            e_r: Self::DEFAULT_EFFICIENCY,
        }
    }

    pub fn with_efficiency(self, e_r: f64) -> Self {
        ScenarioParams { e_r, ..self }
    }

    pub fn validate(&self) -> Result<()> {
        let finite = [self.a, self.b, self.eta_los, self.eta_nlos, self.freq_hz, self.e_r]
            .iter()
            .all(|v| v.is_finite());
        if !finite {
            return Err(Error::InvalidScenario("all parameters must be finite"));
        }
        if self.a <= 0.0 {
            return Err(Error::InvalidScenario("a must be positive"));
        }
        if self.b <= 0.0 {
            return Err(Error::InvalidScenario("b must be positive"));
        }
        if self.freq_hz <= 0.0 {
            return Err(Error::InvalidScenario("freq_hz must be positive"));
        }
        if self.eta_nlos < self.eta_los {
            return Err(Error::InvalidScenario("eta_nlos must not be below eta_los"));
        }
        if !(0.0..1.0).contains(&self.e_r) {
            return Err(Error::InvalidScenario("e_r must lie in [0, 1)"));
        }
        Ok(())
    }

    /// `eta_los - eta_nlos`, the (non-positive) dB swing between groups.
    pub fn excess_loss_swing(&self) -> f64 {
        self.eta_los - self.eta_nlos
    }

    /// `20 log10(4 pi f / c)`.
    pub fn free_space_constant_db(&self) -> f64 {
        20.0 * (self.freq_hz * 4.0 * core::f64::consts::PI / SPEED_OF_LIGHT).log10()
    }

    pub(crate) fn logistic(&self, theta_deg: f64) -> f64 {
        1.0 / (1.0 + self.a * (-self.b * (theta_deg - self.a)).exp())
    }
}

impl Default for ScenarioParams {
    fn default() -> Self {
        Self::urban()
    }
}

/// Per-user channel summary at a given horizontal distance.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct UserRate {
    pub kappa: f64,
    pub theta_user_deg: f64,
    /// Expected rate, bits/symbol.
    pub rate: f64,
}

/// Probability that a user at elevation `theta_user_deg` has line of sight.
pub fn p_los(theta_user_deg: f64, params: &ScenarioParams) -> Result<f64> {
    if !(0.0..=90.0).contains(&theta_user_deg) {
        return Err(Error::domain("theta_user_deg", theta_user_deg, "0 <= theta <= 90"));
    }
    Ok(params.logistic(theta_user_deg))
}

fn path_loss(d: f64, params: &ScenarioParams, directivity_db: f64, eta: f64) -> Result<f64> {
    if !(d > 0.0) || !d.is_finite() {
        return Err(Error::domain("d", d, "d > 0"));
    }
    Ok(-directivity_db + 20.0 * d.log10() + params.free_space_constant_db() + eta)
}

/// LoS path loss in dB at 3-D distance `d` meters.
pub fn path_loss_los(d: f64, params: &ScenarioParams, directivity_db: f64) -> Result<f64> {
    path_loss(d, params, directivity_db, params.eta_los)
}

/// NLoS path loss in dB at 3-D distance `d` meters.
pub fn path_loss_nlos(d: f64, params: &ScenarioParams, directivity_db: f64) -> Result<f64> {
    path_loss(d, params, directivity_db, params.eta_nlos)
}

/// Elevation angle seen by a user at horizontal distance ratio `kappa` when
/// the cell edge is seen at an angle whose tangent is `tan_edge`.
///
/// `kappa = 0` is the drone directly overhead: 90 degrees.
pub fn elevation_deg(kappa: f64, tan_edge: f64) -> f64 {
    if kappa == 0.0 {
        90.0
    } else {
        (tan_edge / kappa).atan().to_degrees()
    }
}

fn check_kappa(kappa: f64) -> Result<()> {
    if !(kappa >= 0.0) || !kappa.is_finite() {
        return Err(Error::domain("kappa", kappa, "kappa >= 0"));
    }
    Ok(())
}

fn check_edge(theta_edge_deg: f64) -> Result<()> {
    if !(theta_edge_deg > 0.0 && theta_edge_deg < 90.0) {
        return Err(Error::domain("theta_edge_deg", theta_edge_deg, "0 < theta_edge < 90"));
    }
    Ok(())
}

fn g_pos_unchecked(kappa: f64, tan_edge: f64, params: &ScenarioParams) -> f64 {
    let theta_user = elevation_deg(kappa, tan_edge);
    params.excess_loss_swing() * params.logistic(theta_user)
        + 10.0 * (kappa * kappa + tan_edge * tan_edge).log10()
}

/// Horizontal repositioning gain: the part of the expected path loss (dB)
/// that depends on the user's distance ratio.
pub fn g_pos(kappa: f64, theta_edge_deg: f64, params: &ScenarioParams) -> Result<f64> {
    check_kappa(kappa)?;
    check_edge(theta_edge_deg)?;
    Ok(g_pos_unchecked(kappa, theta_edge_deg.to_radians().tan(), params))
}

/// Expected path loss in dB for a user at `kappa` in a cell of radius `d_max`.
pub fn expected_path_loss_db(
    kappa: f64,
    theta_edge_deg: f64,
    d_max: f64,
    params: &ScenarioParams,
) -> Result<f64> {
    check_kappa(kappa)?;
    check_edge(theta_edge_deg)?;
    if !(d_max > 0.0) || !d_max.is_finite() {
        return Err(Error::domain("d_max", d_max, "d_max > 0"));
    }
    let directivity_db = params.e_r * 10.0 * cell_design::ideal_directivity(theta_edge_deg)?.log10();
    Ok(g_pos(kappa, theta_edge_deg, params)?
        + 20.0 * d_max.log10()
        + params.free_space_constant_db()
        + params.eta_nlos
        - directivity_db)
}

/// Expected rate (bits/symbol) of a user at `kappa`, normalized so that the
/// cell edge gets exactly one bit per symbol.
pub fn user_rate(kappa: f64, theta_edge_deg: f64, params: &ScenarioParams) -> Result<f64> {
    RateModel::new(theta_edge_deg, *params)?.rate(kappa)
}

/// Best-case rate: drone hovering directly above the user in a cell designed
/// for antenna efficiency `e_r`.
pub fn max_gain(e_r: f64, params: &ScenarioParams) -> Result<f64> {
    let params = params.with_efficiency(e_r);
    let edge = cell_design::solve_edge_angle(&params)?;
    RateModel::new(edge.theta_edge_deg, params)?.rate(0.0)
}

/// Rate evaluator for a fixed cell design, with the edge-dependent constants
/// hoisted out of the per-user path.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RateModel {
    params: ScenarioParams,
    theta_edge_deg: f64,
    tan_edge: f64,
    g_edge: f64,
}

impl RateModel {
    pub fn new(theta_edge_deg: f64, params: ScenarioParams) -> Result<Self> {
        params.validate()?;
        check_edge(theta_edge_deg)?;
        let tan_edge = theta_edge_deg.to_radians().tan();
        Ok(RateModel {
            params,
            theta_edge_deg,
            tan_edge,
            g_edge: g_pos_unchecked(1.0, tan_edge, &params),
        })
    }

    /// Builds the model at the coverage-optimal edge angle for `params`.
    pub fn optimal(params: ScenarioParams) -> Result<Self> {
        let edge = cell_design::solve_edge_angle(&params)?;
        Self::new(edge.theta_edge_deg, params)
    }

    pub fn params(&self) -> &ScenarioParams {
        &self.params
    }

    pub fn theta_edge_deg(&self) -> f64 {
        self.theta_edge_deg
    }

    pub fn tan_edge(&self) -> f64 {
        self.tan_edge
    }

    pub fn rate(&self, kappa: f64) -> Result<f64> {
        check_kappa(kappa)?;
        if kappa > MAX_KAPPA {
            return Err(Error::domain("kappa", kappa, "0 <= kappa <= 2"));
        }
        Ok(self.rate_unchecked(kappa))
    }

    pub fn evaluate(&self, kappa: f64) -> Result<UserRate> {
        Ok(UserRate {
            kappa,
            theta_user_deg: elevation_deg(kappa, self.tan_edge),
            rate: self.rate(kappa)?,
        })
    }

    /// Hot-path rate without domain checks; `kappa` must be finite and
    /// non-negative.
    #[inline]
    pub(crate) fn rate_unchecked(&self, kappa: f64) -> f64 {
        let delta = self.g_edge - g_pos_unchecked(kappa, self.tan_edge, &self.params);
        (1.0 + 10.0_f64.powf(delta / 10.0)).log2()
    }
}
