use dronecell_core::sim::{self, SimConfig};
use dronecell_core::Strategy;

fn run(lambda: f64, fixed_n: Option<usize>, n_timeslots: u64) -> sim::SummaryStats {
    let config = SimConfig {
        lambda,
        fixed_n,
        n_timeslots,
        seed: 2024,
        ..SimConfig::default()
    };
    sim::run_simulation(&config).unwrap()
}

fn mean_rate(s: &sim::SummaryStats, strategy: Strategy) -> (f64, f64) {
    let r = s.get(strategy).unwrap().rate.as_ref().unwrap();
    (r.mean, r.std_err)
}

#[test]
fn strategy_ordering_and_hard_limits() {
    let s = run(5.0, None, 3_000);
    let (mar, mar_se) = mean_rate(&s, Strategy::Mar);
    let (cmp, cmp_se) = mean_rate(&s, Strategy::Cmp);
    let (sbc, sbc_se) = mean_rate(&s, Strategy::Sbc);
    let (st, st_se) = mean_rate(&s, Strategy::Static);
    let slack = |a: f64, b: f64| 3.0 * (a * a + b * b).sqrt();
    assert!(mar >= cmp - slack(mar_se, cmp_se));
    assert!(cmp >= st - slack(cmp_se, st_se));
    assert!(mar >= sbc - slack(mar_se, sbc_se));

    let sbc_stats = s.get(Strategy::Sbc).unwrap();
    assert_eq!(sbc_stats.rate.as_ref().unwrap().frac_kappa_above_one, 0.0);
    for st in &s.strategies {
        assert!(st.travel.max <= 2.0);
        let r = st.rate.as_ref().unwrap();
        assert!((0.0..=1.0).contains(&r.frac_above_edge_rate));
        assert!((0.0..=1.0).contains(&r.frac_kappa_above_one));
        let last = r.cdf.points().last().unwrap();
        assert_eq!(last.1, 1.0);
    }
    let st = s.get(Strategy::Static).unwrap().rate.as_ref().unwrap();
    assert_eq!(st.frac_above_edge_rate, 1.0);
}

#[test]
fn static_mean_kappa_approaches_two_thirds() {
    let config = SimConfig {
        fixed_n: Some(50),
        n_timeslots: 4_000,
        seed: 7,
        strategies: vec![Strategy::Static],
        ..SimConfig::default()
    };
    let model = dronecell_core::RateModel::optimal(config.scenario).unwrap();
    let kappas: Vec<f64> = (0..config.n_timeslots)
        .flat_map(|t| sim::evaluate_timeslot(&config, &model, t).unwrap().outcomes[0].kappas.clone())
        .collect();
    assert!(kappas.iter().all(|&k| k <= 1.0));
    let mean = kappas.iter().sum::<f64>() / kappas.len() as f64;
    assert!((mean - 2.0 / 3.0).abs() < 2e-3, "mean kappa {mean}");
}

#[test]
fn gains_shrink_as_users_grow() {
    let counts = [1usize, 2, 5, 10, 20];
    let runs: Vec<_> = counts.iter().map(|&n| run(1.0, Some(n), 1_500)).collect();
    for strategy in [Strategy::Sbc, Strategy::Mar, Strategy::Cmp] {
        let gains: Vec<(f64, f64)> = runs
            .iter()
            .map(|s| {
                let (d, dse) = mean_rate(s, strategy);
                let (st, stse) = mean_rate(s, Strategy::Static);
                (d - st, (dse * dse + stse * stse).sqrt())
            })
            .collect();
        for w in gains.windows(2) {
            let slack = 3.0 * (w[0].1 * w[0].1 + w[1].1 * w[1].1).sqrt();
            assert!(w[1].0 <= w[0].0 + slack, "{strategy}: {gains:?}");
        }
    }
}

#[test]
fn single_user_dynamic_strategies_agree() {
    let s = run(1.0, Some(1), 500);
    let (sbc, _) = mean_rate(&s, Strategy::Sbc);
    let (mar, _) = mean_rate(&s, Strategy::Mar);
    let (cmp, _) = mean_rate(&s, Strategy::Cmp);
    assert!((sbc - mar).abs() < 1e-9 && (sbc - cmp).abs() < 1e-9);
}
