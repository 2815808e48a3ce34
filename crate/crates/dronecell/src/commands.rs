//! The `design`, `gain` and `simulate` subcommands.

use std::fmt::Write as _;
use std::path::Path;

use dronecell_core::{solve_edge_angle, Error as ModelError, RateModel};

use crate::config::RunConfig;
use crate::engine;
use crate::error::Result;
use crate::output::{self, OutputDir, RunManifest, SummaryReport};

pub const DESIGN_HEADER: &str = "e_r,theta_edge_deg,ideal_directivity_db,altitude_over_dmax,status";
pub const GAIN_HEADER: &str = "e_r,theta_edge_deg,max_rate_at_kappa0,rate_at_kappa1,status";

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RowStatus {
    Ok,
    NearDegenerate,
    NoOptimum,
}

impl RowStatus {
    pub fn as_str(self) -> &'static str {
        match self {
            RowStatus::Ok => "ok",
            RowStatus::NearDegenerate => "near_degenerate",
            RowStatus::NoOptimum => "no_optimum",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct DesignRow {
    pub e_r: f64,
    pub status: RowStatus,
    /// `None` when no optimum exists.
    pub theta_edge_deg: Option<f64>,
    pub ideal_directivity_db: Option<f64>,
    pub altitude_over_dmax: Option<f64>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct GainRow {
    pub e_r: f64,
    pub status: RowStatus,
    pub theta_edge_deg: Option<f64>,
    pub max_rate_at_kappa0: Option<f64>,
    pub rate_at_kappa1: Option<f64>,
}

fn opt(v: Option<f64>) -> String {
    v.map(|x| x.to_string()).unwrap_or_default()
}

/// Optimal edge angle for every efficiency of the sweep.
pub fn design_rows(cfg: &RunConfig) -> Result<Vec<DesignRow>> {
    let base = cfg.scenario();
    cfg.er_sweep()?
        .into_iter()
        .map(|e_r| match solve_edge_angle(&base.with_efficiency(e_r)) {
            Ok(s) => {
                let theta = s.theta_edge_deg;
                let directivity = dronecell_core::cell_design::ideal_directivity(theta)?;
                Ok(DesignRow {
                    e_r,
                    status: if s.near_degenerate { RowStatus::NearDegenerate } else { RowStatus::Ok },
                    theta_edge_deg: Some(theta),
                    ideal_directivity_db: Some(10.0 * directivity.log10()),
                    altitude_over_dmax: Some(theta.to_radians().tan()),
                })
            }
            Err(ModelError::NoOptimum { .. }) => Ok(DesignRow {
                e_r,
                status: RowStatus::NoOptimum,
                theta_edge_deg: None,
                ideal_directivity_db: None,
                altitude_over_dmax: None,
            }),
            Err(e) => Err(e.into()),
        })
        .collect()
}

pub fn design_csv(rows: &[DesignRow]) -> String {
    let mut out = format!("{DESIGN_HEADER}\n");
    for r in rows {
        let _ = writeln!(
            out,
            "{},{},{},{},{}",
            r.e_r,
            opt(r.theta_edge_deg),
            opt(r.ideal_directivity_db),
            opt(r.altitude_over_dmax),
            r.status.as_str()
        );
    }
    out
}

/// Best-case (overhead) rate and the edge rate for every efficiency.
pub fn gain_rows(cfg: &RunConfig) -> Result<Vec<GainRow>> {
    let base = cfg.scenario();
    design_rows(cfg)?
        .into_iter()
        .map(|d| {
            let Some(theta) = d.theta_edge_deg else {
                return Ok(GainRow {
                    e_r: d.e_r,
                    status: d.status,
                    theta_edge_deg: None,
                    max_rate_at_kappa0: None,
                    rate_at_kappa1: None,
                });
            };
            let model = RateModel::new(theta, base.with_efficiency(d.e_r))?;
            Ok(GainRow {
                e_r: d.e_r,
                status: d.status,
                theta_edge_deg: Some(theta),
                max_rate_at_kappa0: Some(model.rate(0.0)?),
                rate_at_kappa1: Some(model.rate(1.0)?),
            })
        })
        .collect()
}

pub fn gain_csv(rows: &[GainRow]) -> String {
    let mut out = format!("{GAIN_HEADER}\n");
    for r in rows {
        let _ = writeln!(
            out,
            "{},{},{},{},{}",
            r.e_r,
            opt(r.theta_edge_deg),
            opt(r.max_rate_at_kappa0),
            opt(r.rate_at_kappa1),
            r.status.as_str()
        );
    }
    out
}

/// Writes `files` and a manifest into `dir`; on any failure everything
/// written so far is removed.
fn emit(dir: &Path, command: &str, cfg: &RunConfig, files: Vec<(String, Vec<u8>)>) -> Result<OutputDir> {
    let mut out = OutputDir::create(dir)?;
    let result = (|| {
        for (name, data) in &files {
            out.write(name, data)?;
        }
        let manifest = RunManifest::new(command, cfg, out.files().cloned().collect());
        let bytes = output::to_json_pretty(&manifest, "manifest.json")?;
        out.write("manifest.json", &bytes)?;
        out.validate()
    })();
    match result {
        Ok(()) => Ok(out),
        Err(e) => {
            out.discard();
            Err(e)
        }
    }
}

/// Sweep table to `dir` (with manifest) or as a string for stdout.
pub fn design(cfg: &RunConfig, dir: Option<&Path>) -> Result<String> {
    let csv = design_csv(&design_rows(cfg)?);
    if let Some(dir) = dir {
        emit(dir, "design", cfg, vec![("design.csv".into(), csv.clone().into_bytes())])?;
    }
    Ok(csv)
}

pub fn gain(cfg: &RunConfig, dir: Option<&Path>) -> Result<String> {
    let csv = gain_csv(&gain_rows(cfg)?);
    if let Some(dir) = dir {
        emit(dir, "gain", cfg, vec![("gain.csv".into(), csv.clone().into_bytes())])?;
    }
    Ok(csv)
}

/// Runs the Monte-Carlo campaign and writes per-strategy CDFs, the summary
/// and the manifest into `dir`.
pub fn simulate(cfg: &RunConfig, workers: usize, dir: &Path) -> Result<SummaryReport> {
    let sim = cfg.sim_config()?;
    let outcome = engine::run_simulation(&sim, workers)?;
    let summary = &outcome.summary;

    let mut files = Vec::new();
    for s in &summary.strategies {
        let rates = output::cdf_csv(output::RATE_CDF_HEADER, s.rate.as_ref().map(|r| &r.cdf));
        files.push((format!("rate_cdf_{}.csv", s.strategy), rates.into_bytes()));
        let travel = output::cdf_csv(output::TRAVEL_CDF_HEADER, Some(&s.travel.cdf));
        files.push((format!("travel_cdf_{}.csv", s.strategy), travel.into_bytes()));
    }
    let report = SummaryReport::from(summary);
    files.push(("summary.json".into(), output::to_json_pretty(&report, "summary.json")?));
    emit(dir, "simulate", cfg, files)?;
    Ok(report)
}
