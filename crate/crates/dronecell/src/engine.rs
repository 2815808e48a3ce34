//! Parallel driver for the timeslot simulation.
//!
//! Timeslots are evaluated on a rayon pool and collected in index order, then
//! summarized sequentially. Outputs are therefore identical for any worker
//! count.

use dronecell_core::sim::{self, SimConfig, SummaryStats, TimeslotResult};
use dronecell_core::RateModel;
use rayon::prelude::*;

use crate::error::{Error, Result};

#[derive(Debug, Clone)]
pub struct SimOutcome {
    pub model: RateModel,
    pub summary: SummaryStats,
}

/// Evaluates every timeslot of `config` on `workers` threads.
pub fn evaluate_all(config: &SimConfig, model: &RateModel, workers: usize) -> Result<Vec<TimeslotResult>> {
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(workers.max(1))
        .build()
        .map_err(|e| Error::Config(format!("cannot start {workers} workers: {e}")))?;
    let results = pool.install(|| {
        (0..config.n_timeslots)
            .into_par_iter()
            .map(|t| sim::evaluate_timeslot(config, model, t))
            .collect::<Result<Vec<_>, _>>()
    })?;
    Ok(results)
}

pub fn run_simulation(config: &SimConfig, workers: usize) -> Result<SimOutcome> {
    config.validate()?;
    let model = RateModel::optimal(config.scenario)?;
    let results = evaluate_all(config, &model, workers)?;
    let summary = sim::summarize(config, &model, results)?;
    Ok(SimOutcome { model, summary })
}
