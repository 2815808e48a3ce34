//! Run configuration: a flat JSON document whose every field can be
//! overridden from the command line.

use std::fs;
use std::path::Path;

use dronecell_core::{ScenarioParams, SimConfig, Strategy};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct RunConfig {
    pub a: f64,
    pub b: f64,
    pub eta_los: f64,
    pub eta_nlos: f64,
    pub freq_hz: f64,
    pub e_r: f64,
    pub lambda: f64,
    pub fixed_n: Option<usize>,
    pub timeslots: u64,
    pub seed: u64,
    pub strategies: Vec<Strategy>,
    pub d_max: f64,
    /// Efficiency sweep used by `design` and `gain`.
    pub er_min: f64,
    pub er_max: f64,
    pub er_step: f64,
}

impl Default for RunConfig {
    fn default() -> Self {
        let scenario = ScenarioParams::urban();
        let sim = SimConfig::default();
        RunConfig {
            a: scenario.a,
            b: scenario.b,
            eta_los: scenario.eta_los,
            eta_nlos: scenario.eta_nlos,
            freq_hz: scenario.freq_hz,
            e_r: scenario.e_r,
            lambda: sim.lambda,
            fixed_n: sim.fixed_n,
            timeslots: sim.n_timeslots,
            seed: sim.seed,
            strategies: sim.strategies,
            d_max: sim.d_max,
            er_min: 0.0,
            er_max: 0.9,
            er_step: 0.05,
        }
    }
}

/// Command-line overrides; `None` leaves the file (or default) value alone.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct Overrides {
    pub a: Option<f64>,
    pub b: Option<f64>,
    pub eta_los: Option<f64>,
    pub eta_nlos: Option<f64>,
    pub freq_hz: Option<f64>,
    pub e_r: Option<f64>,
    pub lambda: Option<f64>,
    pub fixed_n: Option<usize>,
    pub timeslots: Option<u64>,
    pub seed: Option<u64>,
    pub strategies: Option<Vec<Strategy>>,
    pub d_max: Option<f64>,
    pub er_min: Option<f64>,
    pub er_max: Option<f64>,
    pub er_step: Option<f64>,
}

macro_rules! apply {
    ($cfg:ident, $ov:ident, $($field:ident),+) => {
        $( if let Some(v) = $ov.$field.clone() { $cfg.$field = v; } )+
    };
}

impl RunConfig {
    pub fn from_file(path: &Path) -> Result<Self> {
        let text = fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        serde_json::from_str(&text).map_err(|source| Error::Json {
            path: path.to_owned(),
            source,
        })
    }

    /// File (if any) first, then flags.
    pub fn load(path: Option<&Path>, overrides: &Overrides) -> Result<Self> {
        let mut cfg = match path {
            Some(p) => Self::from_file(p)?,
            None => Self::default(),
        };
        cfg.apply(overrides);
        Ok(cfg)
    }

    pub fn apply(&mut self, ov: &Overrides) {
        apply!(
            self, ov, a, b, eta_los, eta_nlos, freq_hz, e_r, lambda, timeslots, seed, strategies,
            d_max, er_min, er_max, er_step
        );
        if ov.fixed_n.is_some() {
            self.fixed_n = ov.fixed_n;
        }
    }

    pub fn scenario(&self) -> ScenarioParams {
        ScenarioParams {
            a: self.a,
            b: self.b,
            eta_los: self.eta_los,
            eta_nlos: self.eta_nlos,
            freq_hz: self.freq_hz,
            e_r: self.e_r,
        }
    }

    pub fn sim_config(&self) -> Result<SimConfig> {
        let cfg = SimConfig {
            lambda: self.lambda,
            fixed_n: self.fixed_n,
            n_timeslots: self.timeslots,
            seed: self.seed,
            strategies: self.strategies.clone(),
            d_max: self.d_max,
            scenario: self.scenario(),
        };
        cfg.validate()?;
        Ok(cfg)
    }

    /// Efficiency values of the design/gain sweep, inclusive of `er_max`.
    pub fn er_sweep(&self) -> Result<Vec<f64>> {
        let (lo, hi, step) = (self.er_min, self.er_max, self.er_step);
        if !(0.0..1.0).contains(&lo) || !(0.0..1.0).contains(&hi) || hi < lo {
            return Err(Error::Config(format!(
                "efficiency sweep [{lo}, {hi}] must satisfy 0 <= er_min <= er_max < 1"
            )));
        }
        if !(step > 0.0) {
            return Err(Error::Config(format!("er_step must be positive, got {step}")));
        }
        let n = ((hi - lo) / step + 1e-9).floor() as usize;
        Ok((0..=n)
            .map(|i| ((lo + i as f64 * step) * 1e9).round() / 1e9)
            .collect())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn defaults_are_urban() {
        let cfg = RunConfig::default();
        assert_eq!(cfg.scenario(), ScenarioParams::urban());
        assert_eq!(cfg.lambda, 5.0);
        assert_eq!(cfg.e_r, 0.6);
    }

    #[test]
    fn sweep_has_nineteen_points() {
        let sweep = RunConfig::default().er_sweep().unwrap();
        assert_eq!(sweep.len(), 19);
        assert_eq!(sweep[3], 0.15);
        assert_eq!(*sweep.last().unwrap(), 0.9);
    }

    #[test]
    fn bad_sweeps() {
        let mut cfg = RunConfig { er_max: 1.0, ..RunConfig::default() };
        assert!(cfg.er_sweep().is_err());
        cfg.er_max = 0.5;
        cfg.er_step = 0.0;
        assert!(cfg.er_sweep().is_err());
    }

    #[test]
    fn flags_override_file_values() {
        let json = r#"{"lambda": 2.5, "seed": 7, "strategies": ["sbc", "mar"]}"#;
        let mut cfg: RunConfig = serde_json::from_str(json).unwrap();
        assert_eq!(cfg.lambda, 2.5);
        assert_eq!(cfg.a, 9.61);
        cfg.apply(&Overrides {
            seed: Some(9),
            fixed_n: Some(3),
            ..Overrides::default()
        });
        assert_eq!(cfg.seed, 9);
        assert_eq!(cfg.lambda, 2.5);
        assert_eq!(cfg.fixed_n, Some(3));
        assert_eq!(cfg.strategies, vec![Strategy::Sbc, Strategy::Mar]);
    }

    #[test]
    fn unknown_fields_are_rejected() {
        assert!(serde_json::from_str::<RunConfig>(r#"{"lamda": 2}"#).is_err());
    }
}
