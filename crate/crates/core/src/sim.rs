//! Snapshot Monte-Carlo evaluation of the repositioning strategies.
//!
//! Timeslots are independent: each draws a Poisson user count and uniform
//! positions from its own random stream, and every enabled strategy is
//! evaluated on the same users. Travel distance is the only quantity that
//! links consecutive timeslots, and it is filled in by [`summarize`] in
//! timeslot order.

use alloc::vec::Vec;

use crate::channel::{RateModel, ScenarioParams};
use crate::dhop::{self, Strategy, UserSet};
use crate::error::{Error, Result};
use crate::geometry::Point2D;
use crate::sampling::{self, Purpose};
use crate::stats::{EmpiricalCdf, MeanEstimate};

/// Rate that a user at the cell edge receives, bits/symbol.
pub const EDGE_RATE: f64 = 1.0;

#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct SimConfig {
    /// Mean users per timeslot.
    pub lambda: f64,
    /// Fixed user count overriding the Poisson draw.
    pub fixed_n: Option<usize>,
    pub n_timeslots: u64,
    pub seed: u64,
    pub strategies: Vec<Strategy>,
    /// Cell radius, meters. Results are normalized by it.
    pub d_max: f64,
    pub scenario: ScenarioParams,
}

impl Default for SimConfig {
    fn default() -> Self {
        SimConfig {
            lambda: 5.0,
            fixed_n: None,
            n_timeslots: 100_000,
            seed: 42,
            strategies: Strategy::ALL.to_vec(),
            d_max: 500.0,
            scenario: ScenarioParams::urban(),
        }
    }
}

impl SimConfig {
    pub fn validate(&self) -> Result<()> {
        self.scenario.validate()?;
        match self.fixed_n {
            Some(0) => return Err(Error::InvalidConfig("fixed_n must be at least 1")),
            Some(_) => {}
            None if !(self.lambda > 0.0 && self.lambda.is_finite()) => {
                return Err(Error::InvalidConfig("lambda must be positive and finite"))
            }
            None => {}
        }
        if self.n_timeslots == 0 {
            return Err(Error::InvalidConfig("n_timeslots must be at least 1"));
        }
        if self.strategies.is_empty() {
            return Err(Error::InvalidConfig("at least one strategy is required"));
        }
        if !(self.d_max > 0.0 && self.d_max.is_finite()) {
            return Err(Error::InvalidConfig("d_max must be positive and finite"));
        }
        Ok(())
    }

    /// Enabled strategies, deduplicated, in canonical order.
    pub fn strategy_order(&self) -> Vec<Strategy> {
        Strategy::ALL
            .into_iter()
            .filter(|s| self.strategies.contains(s))
            .collect()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct StrategyOutcome {
    pub strategy: Strategy,
    pub position: Point2D,
    pub kappas: Vec<f64>,
    pub rates: Vec<f64>,
    /// Displacement from the previous timeslot's position, in units of d_max.
    pub travel: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct TimeslotResult {
    pub index: u64,
    pub n_users: usize,
    /// One entry per enabled strategy, in canonical order.
    pub outcomes: Vec<StrategyOutcome>,
}

impl TimeslotResult {
    pub fn outcome(&self, strategy: Strategy) -> Option<&StrategyOutcome> {
        self.outcomes.iter().find(|o| o.strategy == strategy)
    }

    /// Recomputes travel distances against `previous` positions, given in the
    /// same order as `outcomes`.
    pub fn link(&mut self, previous: &[Point2D], d_max: f64) {
        for (o, &prev) in self.outcomes.iter_mut().zip(previous) {
            o.travel = o.position.distance(prev) / d_max;
        }
    }

    pub fn positions(&self) -> Vec<Point2D> {
        self.outcomes.iter().map(|o| o.position).collect()
    }
}

/// Draws the users of timeslot `index`.
pub fn sample_timeslot(config: &SimConfig, index: u64) -> Result<UserSet> {
    let n = match config.fixed_n {
        Some(n) => n,
        None => {
            let mut rng = sampling::timeslot_rng(config.seed, index, Purpose::UserCount);
            sampling::sample_user_count(config.lambda, &mut rng)?
        }
    };
    let mut rng = sampling::timeslot_rng(config.seed, index, Purpose::Positions);
    sampling::sample_users_uniform_disc(n, Point2D::ORIGIN, config.d_max, &mut rng)
}

/// Evaluates `strategies` on one user set. `previous` holds each strategy's
/// position in the preceding timeslot (the cell center before the first).
pub fn run_timeslot(
    index: u64,
    users: &UserSet,
    strategies: &[Strategy],
    model: &RateModel,
    previous: &[Point2D],
) -> Result<TimeslotResult> {
    if previous.len() != strategies.len() {
        return Err(Error::InvalidConfig("one previous position per strategy is required"));
    }
    let needs = |s| strategies.contains(&s);
    let sbc = (needs(Strategy::Sbc) || needs(Strategy::Cmp)).then(|| dhop::sbc_position(users, model));
    let mar = (needs(Strategy::Mar) || needs(Strategy::Cmp)).then(|| dhop::mar_position(users, model));

    let mut outcomes = Vec::with_capacity(strategies.len());
    for (&strategy, &prev) in strategies.iter().zip(previous) {
        let placement = match strategy {
            Strategy::Static => dhop::static_position(users, model),
            Strategy::Sbc => sbc.clone().expect("computed above"),
            Strategy::Mar => mar.clone().expect("computed above"),
            Strategy::Cmp => dhop::cmp_choose(
                users,
                sbc.clone().expect("computed above"),
                mar.clone().expect("computed above"),
            ),
        };
        let rates = placement.rates(model)?;
        outcomes.push(StrategyOutcome {
            strategy,
            position: placement.position,
            travel: placement.position.distance(prev) / users.d_max(),
            kappas: placement.kappas,
            rates,
        });
    }
    Ok(TimeslotResult {
        index,
        n_users: users.len(),
        outcomes,
    })
}

/// Samples and evaluates timeslot `index` with travel measured from the cell
/// center. [`summarize`] relinks travel against the true predecessor.
pub fn evaluate_timeslot(config: &SimConfig, model: &RateModel, index: u64) -> Result<TimeslotResult> {
    let users = sample_timeslot(config, index)?;
    let strategies = config.strategy_order();
    let centers = alloc::vec![Point2D::ORIGIN; strategies.len()];
    run_timeslot(index, &users, &strategies, model, &centers)
}

#[derive(Debug, Clone, PartialEq)]
pub struct RateStats {
    pub mean: f64,
    pub std_err: f64,
    /// Nearest-rank 5th percentile.
    pub p5: f64,
    /// Fraction of users above the edge rate.
    pub frac_above_edge_rate: f64,
    /// Fraction of users farther than one cell radius from the drone.
    pub frac_kappa_above_one: f64,
    pub cdf: EmpiricalCdf,
}

#[derive(Debug, Clone, PartialEq)]
pub struct TravelStats {
    pub mean: f64,
    pub std_err: f64,
    pub max: f64,
    pub cdf: EmpiricalCdf,
}

#[derive(Debug, Clone, PartialEq)]
pub struct StrategySummary {
    pub strategy: Strategy,
    pub user_samples: usize,
    /// `None` when no timeslot had any user.
    pub rate: Option<RateStats>,
    pub travel: TravelStats,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SummaryStats {
    pub n_timeslots: u64,
    pub n_users: u64,
    pub theta_edge_deg: f64,
    pub strategies: Vec<StrategySummary>,
}

impl SummaryStats {
    pub fn get(&self, strategy: Strategy) -> Option<&StrategySummary> {
        self.strategies.iter().find(|s| s.strategy == strategy)
    }
}

/// Aggregates timeslot results, which must arrive in timeslot order, into
/// per-strategy statistics. Travel distances are relinked on the way.
pub fn summarize<I>(config: &SimConfig, model: &RateModel, results: I) -> Result<SummaryStats>
where
    I: IntoIterator<Item = TimeslotResult>,
{
    let strategies = config.strategy_order();
    let k = strategies.len();
    let mut rates: Vec<Vec<f64>> = alloc::vec![Vec::new(); k];
    let mut kappa_over: Vec<u64> = alloc::vec![0; k];
    let mut travel: Vec<Vec<f64>> = alloc::vec![Vec::new(); k];
    let mut previous = alloc::vec![Point2D::ORIGIN; k];
    let mut n_timeslots = 0;
    let mut n_users = 0;

    for mut slot in results {
        if slot.outcomes.len() != k {
            return Err(Error::InvalidConfig("timeslot result does not match the strategy list"));
        }
        slot.link(&previous, config.d_max);
        n_timeslots += 1;
        n_users += slot.n_users as u64;
        for (i, o) in slot.outcomes.iter().enumerate() {
            rates[i].extend_from_slice(&o.rates);
            kappa_over[i] += o.kappas.iter().filter(|&&k| k > 1.0).count() as u64;
            travel[i].push(o.travel);
            previous[i] = o.position;
        }
    }
    if n_timeslots == 0 {
        return Err(Error::InvalidConfig("no timeslots to summarize"));
    }

    let mut out = Vec::with_capacity(k);
    for (i, &strategy) in strategies.iter().enumerate() {
        let samples = core::mem::take(&mut rates[i]);
        let user_samples = samples.len();
        let rate = if samples.is_empty() {
            None
        } else {
            let est: MeanEstimate = samples.iter().copied().collect();
            let cdf = EmpiricalCdf::new(samples)?;
            Some(RateStats {
                mean: est.mean,
                std_err: est.std_err(),
                p5: cdf.percentile(5.0)?,
                frac_above_edge_rate: cdf.exceedance(EDGE_RATE),
                frac_kappa_above_one: kappa_over[i] as f64 / user_samples as f64,
                cdf,
            })
        };
        let moves = core::mem::take(&mut travel[i]);
        let est: MeanEstimate = moves.iter().copied().collect();
        let cdf = EmpiricalCdf::new(moves)?;
        out.push(StrategySummary {
            strategy,
            user_samples,
            rate,
            travel: TravelStats {
                mean: est.mean,
                std_err: est.std_err(),
                max: cdf.max(),
                cdf,
            },
        });
    }
    Ok(SummaryStats {
        n_timeslots,
        n_users,
        theta_edge_deg: model.theta_edge_deg(),
        strategies: out,
    })
}

/// Runs the whole campaign on the calling thread.
pub fn run_simulation(config: &SimConfig) -> Result<SummaryStats> {
    config.validate()?;
    let model = RateModel::optimal(config.scenario)?;
    let results = (0..config.n_timeslots)
        .map(|t| evaluate_timeslot(config, &model, t))
        .collect::<Result<Vec<_>>>()?;
    summarize(config, &model, results)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn small(fixed_n: Option<usize>) -> SimConfig {
        SimConfig {
            n_timeslots: 200,
            fixed_n,
            ..SimConfig::default()
        }
    }

    #[test]
    fn config_validation() {
        assert!(SimConfig::default().validate().is_ok());
        assert!(SimConfig { lambda: 0.0, ..SimConfig::default() }.validate().is_err());
        assert!(SimConfig { lambda: 0.0, fixed_n: Some(3), ..SimConfig::default() }.validate().is_ok());
        assert!(SimConfig { fixed_n: Some(0), ..SimConfig::default() }.validate().is_err());
        assert!(SimConfig { n_timeslots: 0, ..SimConfig::default() }.validate().is_err());
        assert!(SimConfig { strategies: Vec::new(), ..SimConfig::default() }.validate().is_err());
    }

    #[test]
    fn single_user_slot() {
        let config = small(Some(1));
        let model = RateModel::optimal(config.scenario).unwrap();
        let slot = evaluate_timeslot(&config, &model, 0).unwrap();
        let peak = model.rate(0.0).unwrap();
        for o in &slot.outcomes {
            if o.strategy.is_dynamic() {
                assert!((o.rates[0] - peak).abs() < 1e-9, "{:?}", o);
            } else {
                assert!(o.rates[0] < peak);
            }
        }
    }

    #[test]
    fn empty_slot_returns_to_center() {
        let config = small(None);
        let model = RateModel::optimal(config.scenario).unwrap();
        let users = UserSet::new(Vec::new(), Point2D::ORIGIN, config.d_max).unwrap();
        let strategies = config.strategy_order();
        let prev: Vec<_> = (0..4).map(|i| Point2D::new(10.0 * i as f64, 0.0)).collect();
        let slot = run_timeslot(9, &users, &strategies, &model, &prev).unwrap();
        for (o, p) in slot.outcomes.iter().zip(&prev) {
            assert_eq!(o.position, Point2D::ORIGIN);
            assert_eq!(o.travel, p.norm() / config.d_max);
            assert!(o.rates.is_empty());
        }
    }

    #[test]
    fn rates_recompute_from_kappa() {
        let config = small(None);
        let model = RateModel::optimal(config.scenario).unwrap();
        for t in 0..20 {
            let slot = evaluate_timeslot(&config, &model, t).unwrap();
            for o in &slot.outcomes {
                for (&k, &r) in o.kappas.iter().zip(&o.rates) {
                    assert!((model.rate(k).unwrap() - r).abs() <= 1e-12);
                }
            }
        }
    }

    #[test]
    fn summary_shape() {
        let config = small(None);
        let s = run_simulation(&config).unwrap();
        assert_eq!(s.n_timeslots, 200);
        assert_eq!(s.strategies.len(), 4);
        let st = s.get(Strategy::Static).unwrap();
        let rate = st.rate.as_ref().unwrap();
        assert_eq!(rate.frac_above_edge_rate, 1.0);
        assert_eq!(rate.frac_kappa_above_one, 0.0);
        assert_eq!(st.travel.max, 0.0);
        for strat in &s.strategies {
            assert!(strat.travel.max <= 2.0);
            assert_eq!(strat.travel.cdf.len(), 200);
        }
    }
}
