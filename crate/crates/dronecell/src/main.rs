use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use dronecell::{commands, Error, Overrides, RunConfig};
use dronecell_core::Strategy;

/// Cell design and repositioning simulator for drone-mounted small cells.
#[derive(Debug, Parser)]
#[command(name = "dronecell", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,

    #[command(flatten)]
    flags: Flags,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Optimal edge elevation angle over an antenna-efficiency sweep.
    Design,
    /// Best-case overhead rate over an antenna-efficiency sweep.
    Gain,
    /// Monte-Carlo comparison of the repositioning strategies.
    Simulate,
}

#[derive(Debug, Args)]
struct Flags {
    /// Flat JSON configuration; flags override its values.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    #[arg(long = "scenario-a", global = true)]
    a: Option<f64>,
    #[arg(long = "scenario-b", global = true)]
    b: Option<f64>,
    #[arg(long, global = true)]
    eta_los: Option<f64>,
    #[arg(long, global = true)]
    eta_nlos: Option<f64>,
    #[arg(long, global = true)]
    freq_hz: Option<f64>,
    /// Antenna efficiency exponent in [0, 1).
    #[arg(long = "er", global = true)]
    e_r: Option<f64>,
    /// Mean active users per timeslot.
    #[arg(long, global = true)]
    lambda: Option<f64>,
    /// Fixed user count instead of a Poisson draw.
    #[arg(long, global = true)]
    fixed_n: Option<usize>,
    #[arg(long, global = true)]
    timeslots: Option<u64>,
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Comma-separated subset of static,sbc,mar,cmp.
    #[arg(long, global = true, value_delimiter = ',')]
    strategies: Option<Vec<Strategy>>,
    /// Cell radius in meters.
    #[arg(long = "dmax", global = true)]
    d_max: Option<f64>,
    #[arg(long, global = true)]
    er_min: Option<f64>,
    #[arg(long, global = true)]
    er_max: Option<f64>,
    #[arg(long, global = true)]
    er_step: Option<f64>,
    /// Worker threads; never changes the outputs.
    #[arg(long, global = true, default_value_t = 1)]
    workers: usize,
    /// Output directory. `design` and `gain` print to stdout without it.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
}

impl Flags {
    fn overrides(&self) -> Overrides {
        Overrides {
            a: self.a,
            b: self.b,
            eta_los: self.eta_los,
            eta_nlos: self.eta_nlos,
            freq_hz: self.freq_hz,
            e_r: self.e_r,
            lambda: self.lambda,
            fixed_n: self.fixed_n,
            timeslots: self.timeslots,
            seed: self.seed,
            strategies: self.strategies.clone(),
            d_max: self.d_max,
            er_min: self.er_min,
            er_max: self.er_max,
            er_step: self.er_step,
        }
    }
}

fn run(cli: &Cli) -> Result<(), Error> {
    let cfg = RunConfig::load(cli.flags.config.as_deref(), &cli.flags.overrides())?;
    let out = cli.flags.out.as_deref();
    match cli.command {
        Command::Design => print!("{}", commands::design(&cfg, out)?),
        Command::Gain => print!("{}", commands::gain(&cfg, out)?),
        Command::Simulate => {
            let dir = out.unwrap_or_else(|| "out".as_ref());
            let report = commands::simulate(&cfg, cli.flags.workers, dir)?;
            for s in &report.strategies {
                println!(
                    "{:<6} mean_rate={} p5_rate={} frac_kappa_above_one={} mean_travel={}",
                    s.strategy,
                    fmt_opt(s.mean_rate),
                    fmt_opt(s.p5_rate),
                    fmt_opt(s.frac_kappa_above_one),
                    s.mean_travel
                );
            }
        }
    }
    Ok(())
}

fn fmt_opt(v: Option<f64>) -> String {
    v.map_or_else(|| "n/a".into(), |x| format!("{x:.6}"))
}

fn report(kind: &str, message: &str, code: u8) -> ExitCode {
    let line = serde_json::json!({ "error": { "kind": kind, "message": message } });
    eprintln!("{line}");
    ExitCode::from(code)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if !e.use_stderr() => {
            // --help and --version
            let _ = e.print();
            return ExitCode::SUCCESS;
        }
        Err(e) => {
            let detail = e.to_string();
            let first = detail.lines().next().unwrap_or_default();
            return report("usage", first.trim_start_matches("error: "), 2);
        }
    };
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => report(e.kind(), &e.to_string(), e.exit_code() as u8),
    }
}
