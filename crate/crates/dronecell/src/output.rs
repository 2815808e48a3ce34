//! CSV, JSON and manifest emission.

use std::fs::{self, File};
use std::io::{BufWriter, Write};
use std::path::{Path, PathBuf};
use std::time::{SystemTime, UNIX_EPOCH};

use dronecell_core::sim::{StrategySummary, SummaryStats};
use dronecell_core::EmpiricalCdf;
use serde::Serialize;
use sha2::{Digest, Sha256};

use crate::config::RunConfig;
use crate::error::{Error, Result};

pub const RATE_CDF_HEADER: &str = "rate_bits_per_symbol,cdf";
pub const TRAVEL_CDF_HEADER: &str = "distance_over_dmax,cdf";

/// A file written by a command, with its content digest.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct OutputFile {
    pub name: String,
    pub sha256: String,
    pub bytes: u64,
}

/// Writes files into one directory, remembering each one so a failed run can
/// remove what it already produced.
#[derive(Debug)]
pub struct OutputDir {
    root: PathBuf,
    written: Vec<(PathBuf, OutputFile)>,
    created_root: bool,
}

impl OutputDir {
    pub fn create(root: impl Into<PathBuf>) -> Result<Self> {
        let root = root.into();
        let created_root = !root.exists();
        fs::create_dir_all(&root).map_err(|e| Error::io(&root, e))?;
        Ok(OutputDir {
            root,
            written: Vec::new(),
            created_root,
        })
    }

    pub fn root(&self) -> &Path {
        &self.root
    }

    pub fn files(&self) -> impl Iterator<Item = &OutputFile> {
        self.written.iter().map(|(_, f)| f)
    }

    pub fn write(&mut self, name: &str, contents: &[u8]) -> Result<()> {
        let path = self.root.join(name);
        let mut out = BufWriter::new(File::create(&path).map_err(|e| Error::io(&path, e))?);
        out.write_all(contents)
            .and_then(|_| out.flush())
            .map_err(|e| Error::io(&path, e))?;
        let file = OutputFile {
            name: name.to_owned(),
            sha256: sha256_hex(contents),
            bytes: contents.len() as u64,
        };
        self.written.push((path, file));
        Ok(())
    }

    /// Re-reads every written file and checks it against its recorded digest.
    pub fn validate(&self) -> Result<()> {
        for (path, file) in &self.written {
            let data = fs::read(path).map_err(|e| Error::io(path, e))?;
            if sha256_hex(&data) != file.sha256 {
                return Err(Error::Validation(path.clone()));
            }
        }
        Ok(())
    }

    /// Deletes everything this writer produced.
    pub fn discard(self) {
        for (path, _) in &self.written {
            let _ = fs::remove_file(path);
        }
        if self.created_root {
            let _ = fs::remove_dir(&self.root);
        }
    }
}

pub fn sha256_hex(data: &[u8]) -> String {
    hex::encode(Sha256::digest(data).as_slice())
}

pub fn cdf_csv(header: &str, cdf: Option<&EmpiricalCdf>) -> String {
    let mut out = String::with_capacity(cdf.map_or(0, |c| c.len() * 40) + header.len() + 1);
    out.push_str(header);
    out.push('\n');
    if let Some(cdf) = cdf {
        for (value, p) in cdf.points() {
            out.push_str(&format!("{value},{p}\n"));
        }
    }
    out
}

#[derive(Debug, Serialize)]
pub struct StrategyReport {
    pub strategy: String,
    pub user_samples: usize,
    pub mean_rate: Option<f64>,
    pub rate_std_err: Option<f64>,
    pub p5_rate: Option<f64>,
    pub frac_rate_above_edge: Option<f64>,
    pub frac_kappa_above_one: Option<f64>,
    pub mean_travel: f64,
    pub travel_std_err: f64,
    pub max_travel: f64,
}

impl From<&StrategySummary> for StrategyReport {
    fn from(s: &StrategySummary) -> Self {
        let r = s.rate.as_ref();
        StrategyReport {
            strategy: s.strategy.to_string(),
            user_samples: s.user_samples,
            mean_rate: r.map(|r| r.mean),
            rate_std_err: r.map(|r| r.std_err),
            p5_rate: r.map(|r| r.p5),
            frac_rate_above_edge: r.map(|r| r.frac_above_edge_rate),
            frac_kappa_above_one: r.map(|r| r.frac_kappa_above_one),
            mean_travel: s.travel.mean,
            travel_std_err: s.travel.std_err,
            max_travel: s.travel.max,
        }
    }
}

#[derive(Debug, Serialize)]
pub struct SummaryReport {
    pub theta_edge_deg: f64,
    pub altitude_over_dmax: f64,
    pub n_timeslots: u64,
    pub n_users: u64,
    pub strategies: Vec<StrategyReport>,
}

impl From<&SummaryStats> for SummaryReport {
    fn from(s: &SummaryStats) -> Self {
        SummaryReport {
            theta_edge_deg: s.theta_edge_deg,
            altitude_over_dmax: s.theta_edge_deg.to_radians().tan(),
            n_timeslots: s.n_timeslots,
            n_users: s.n_users,
            strategies: s.strategies.iter().map(StrategyReport::from).collect(),
        }
    }
}

#[derive(Debug, Serialize)]
pub struct RunManifest<'a> {
    pub artifact: &'static str,
    pub version: &'static str,
    pub command: &'a str,
    pub seed: u64,
    pub timestamp_unix: u64,
    pub config: &'a RunConfig,
    pub files: Vec<OutputFile>,
}

impl<'a> RunManifest<'a> {
    pub fn new(command: &'a str, config: &'a RunConfig, files: Vec<OutputFile>) -> Self {
        RunManifest {
            artifact: env!("CARGO_PKG_NAME"),
            version: env!("CARGO_PKG_VERSION"),
            command,
            seed: config.seed,
            timestamp_unix: SystemTime::now()
                .duration_since(UNIX_EPOCH)
                .map_or(0, |d| d.as_secs()),
            config,
            files,
        }
    }
}

pub fn to_json_pretty<T: Serialize>(value: &T, name: &str) -> Result<Vec<u8>> {
    let mut bytes = serde_json::to_vec_pretty(value).map_err(|source| Error::Json {
        path: PathBuf::from(name),
        source,
    })?;
    bytes.push(b'\n');
    Ok(bytes)
}
