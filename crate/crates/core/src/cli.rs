//! The `card` command line.
//!
//! ```text
//! card list
//! card run --scenario van --trace van.csv --summary van.json
//! card run --config my.toml --rule selfish-power --divergence-bound 30
//! card batch van wan nine_users_congested --out-dir results/
//! card analytic knee --scenario wan
//! card analytic delay-curve --scenario wan --max-window 5
//! card analytic filter-accuracy --p 0.6 --k 1
//! ```

use std::ffi::OsString;
use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};

use crate::analytic::{self, BalancedMm1, PowerParams, WindowTarget};
use crate::config::{self, load_scenario};
use crate::controller::{Cadence, DecisionRule};
use crate::scenarios::{self, builtin_scenario, RunLength, Scenario, BUILTIN_NAMES};
use crate::time;
use crate::{Error, Result};

#[derive(Debug, Parser)]
#[command(name = "card", about = "Delay-gradient congestion avoidance simulator")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// List built-in scenarios and their knee capacities.
    List,
    /// Simulate one scenario and write its trace and summary.
    Run(RunArgs),
    /// Simulate several built-in scenarios in parallel.
    Batch(BatchArgs),
    /// Evaluate closed-form quantities.
    #[command(subcommand)]
    Analytic(AnalyticCommand),
}

#[derive(Debug, Args)]
struct Source {
    /// Built-in scenario name.
    #[arg(long, conflicts_with = "config")]
    scenario: Option<String>,
    /// Scenario file (TOML).
    #[arg(long)]
    config: Option<PathBuf>,
}

impl Source {
    fn load(&self) -> Result<Scenario> {
        match (&self.scenario, &self.config) {
            (Some(name), None) => builtin_scenario(name),
            (None, Some(path)) => load_scenario(path),
            _ => Err(Error::Config("give either --scenario or --config".into())),
        }
    }
}

#[derive(Debug, Args)]
struct Overrides {
    /// Divergence bound; defaults to ten times the knee capacity.
    #[arg(long)]
    divergence_bound: Option<f64>,
    /// Decision cadence for every user: every-rtt or every-two-rtt.
    #[arg(long)]
    cadence: Option<Cadence>,
    /// Decision rule for every user, e.g. ndg-zero, selfish-power, known-n:3.
    #[arg(long)]
    rule: Option<DecisionRule>,
    /// Simulated time to run for.
    #[arg(long)]
    run_length: Option<f64>,
}

impl Overrides {
    fn apply(&self, mut scenario: Scenario) -> Result<Scenario> {
        if let Some(rule) = self.rule {
            scenario = scenario.with_rule(rule);
        }
        if let Some(cadence) = self.cadence {
            for user in &mut scenario.users {
                user.params.cadence = cadence;
            }
        }
        if let Some(length) = self.run_length {
            scenario.run_length = RunLength::Time(time::from_f64(length)?);
        }
        scenario.validate()?;
        Ok(scenario)
    }

    fn bound_for(&self, scenario: &Scenario) -> f64 {
        self.divergence_bound
            .unwrap_or_else(|| scenarios::default_divergence_bound(scenarios::knee_of(scenario)))
    }
}

#[derive(Debug, Args)]
struct RunArgs {
    #[command(flatten)]
    source: Source,
    /// Trace output (CSV). Omitted: no trace is written.
    #[arg(long)]
    trace: Option<PathBuf>,
    /// Summary output (JSON). Omitted: printed to stdout.
    #[arg(long)]
    summary: Option<PathBuf>,
    #[command(flatten)]
    overrides: Overrides,
}

#[derive(Debug, Args)]
struct BatchArgs {
    /// Built-in scenario names.
    #[arg(required = true)]
    scenarios: Vec<String>,
    /// Directory receiving `<name>.csv` and `<name>.json` per scenario.
    #[arg(long)]
    out_dir: PathBuf,
    #[command(flatten)]
    overrides: Overrides,
}

#[derive(Debug, Subcommand)]
enum AnalyticCommand {
    /// Knee capacity: sum of service times over bottleneck service time.
    Knee(Source),
    /// Delay versus window, one `window,delay` line per grid point.
    DelayCurve(CurveArgs),
    /// Power versus window, one `window,power` line per grid point.
    PowerCurve(CurveArgs),
    /// Selfish, social and known-n optimal windows.
    Optima(OptimaArgs),
    /// Balanced cycle of exponential servers.
    Mm1(Mm1Args),
    /// Accuracy of a majority vote over 2k+1 single-sample decisions.
    FilterAccuracy(FilterArgs),
}

#[derive(Debug, Args)]
struct CurveArgs {
    #[command(flatten)]
    source: Source,
    #[arg(long, default_value_t = 1.0)]
    min_window: f64,
    #[arg(long, default_value_t = 30.0)]
    max_window: f64,
    #[arg(long, default_value_t = 1.0)]
    step: f64,
    #[arg(long, default_value_t = 1.0)]
    alpha: f64,
}

#[derive(Debug, Args)]
struct OptimaArgs {
    #[arg(long)]
    delay: f64,
    #[arg(long)]
    gradient: f64,
    #[arg(long, default_value_t = 0.0)]
    sum_other: f64,
    #[arg(long, default_value_t = 1)]
    n: u32,
    #[arg(long, default_value_t = 1.0)]
    alpha: f64,
}

#[derive(Debug, Args)]
struct Mm1Args {
    /// Number of hops `h`; the cycle has `h + 1` servers.
    #[arg(long)]
    hops: u32,
    #[arg(long)]
    service_time: f64,
    #[arg(long, default_value_t = 0.0)]
    total_window: f64,
}

#[derive(Debug, Args)]
struct FilterArgs {
    #[arg(long)]
    p: f64,
    #[arg(long)]
    k: u32,
}

/// Parses `args` (program name first) and runs the command. Returns the
/// process exit code.
pub fn run_cli<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = e.exit_code();
            let rendered = e.render().to_string();
            if code == 0 {
                let _ = write!(out, "{rendered}");
            } else {
                let _ = write!(err, "{rendered}");
            }
            return code;
        }
    };
    match execute(cli.command, out) {
        Ok(()) => 0,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            1
        }
    }
}

fn execute(command: Command, out: &mut dyn Write) -> Result<()> {
    match command {
        Command::List => cmd_list(out),
        Command::Run(args) => cmd_run(args, out),
        Command::Batch(args) => cmd_batch(args, out),
        Command::Analytic(cmd) => cmd_analytic(cmd, out),
    }
}

fn cmd_list(out: &mut dyn Write) -> Result<()> {
    for name in BUILTIN_NAMES {
        let s = builtin_scenario(name)?;
        writeln!(
            out,
            "{name:<22} users {:<2} knee {}",
            s.users.len(),
            scenarios::knee_of(&s)
        )?;
    }
    Ok(())
}

fn simulate(scenario: &Scenario, bound: f64, trace_path: Option<&Path>) -> Result<String> {
    let trace = crate::sim::run(scenario)?;
    if let Some(path) = trace_path {
        config::write_trace(&trace.records, BufWriter::new(File::create(path)?))?;
    }
    let summary = scenarios::summarize(&trace, bound)?;
    config::summary_to_json(&summary)
}

fn cmd_run(args: RunArgs, out: &mut dyn Write) -> Result<()> {
    let scenario = args.overrides.apply(args.source.load()?)?;
    let bound = args.overrides.bound_for(&scenario);
    let summary = simulate(&scenario, bound, args.trace.as_deref())?;
    match args.summary {
        Some(path) => std::fs::write(path, summary + "\n")?,
        None => writeln!(out, "{summary}")?,
    }
    Ok(())
}

fn cmd_batch(args: BatchArgs, out: &mut dyn Write) -> Result<()> {
    std::fs::create_dir_all(&args.out_dir)?;
    let jobs = args
        .scenarios
        .iter()
        .map(|name| {
            let scenario = args.overrides.apply(builtin_scenario(name)?)?;
            let bound = args.overrides.bound_for(&scenario);
            Ok((name.clone(), scenario, bound))
        })
        .collect::<Result<Vec<_>>>()?;
    let results: Vec<Result<()>> = std::thread::scope(|scope| {
        let handles: Vec<_> = jobs
            .iter()
            .map(|(name, scenario, bound)| {
                let dir = &args.out_dir;
                scope.spawn(move || {
                    let summary =
                        simulate(scenario, *bound, Some(&dir.join(format!("{name}.csv"))))?;
                    std::fs::write(dir.join(format!("{name}.json")), summary + "\n")?;
                    Ok(())
                })
            })
            .collect();
        handles
            .into_iter()
            .map(|h| h.join().expect("simulation thread panicked"))
            .collect()
    });
    for ((name, _, _), result) in jobs.iter().zip(results) {
        result?;
        writeln!(out, "{name}: ok")?;
    }
    Ok(())
}

fn grid(args: &CurveArgs) -> Result<Vec<f64>> {
    if !(args.step > 0.0) {
        return Err(Error::domain("step", args.step, "must be positive"));
    }
    if !(args.min_window >= 0.0 && args.max_window >= args.min_window) {
        return Err(Error::domain(
            "max_window",
            args.max_window,
            "must be at least min_window >= 0",
        ));
    }
    let count = ((args.max_window - args.min_window) / args.step + 1e-9).floor() as usize;
    Ok((0..=count)
        .map(|i| args.min_window + i as f64 * args.step)
        .collect())
}

fn fmt_target(target: WindowTarget) -> String {
    match target {
        WindowTarget::Unbounded => "inf".to_string(),
        WindowTarget::Finite(w) => w.to_string(),
    }
}

fn cmd_analytic(cmd: AnalyticCommand, out: &mut dyn Write) -> Result<()> {
    match cmd {
        AnalyticCommand::Knee(source) => {
            let scenario = source.load()?;
            writeln!(out, "{}", scenarios::knee_of(&scenario))?;
        }
        AnalyticCommand::DelayCurve(args) => {
            let path = args.source.load()?.path;
            writeln!(out, "window,delay")?;
            for w in grid(&args)? {
                let d = analytic::deterministic_delay(&path, time::from_f64(w)?)?;
                writeln!(out, "{w},{}", time::to_f64(d))?;
            }
        }
        AnalyticCommand::PowerCurve(args) => {
            let path = args.source.load()?.path;
            let params = PowerParams::new(args.alpha)?;
            writeln!(out, "window,power")?;
            for w in grid(&args)? {
                writeln!(out, "{w},{}", analytic::path_power(&path, w, params)?)?;
            }
        }
        AnalyticCommand::Optima(args) => {
            let params = PowerParams::new(args.alpha)?;
            let selfish = analytic::optimal_window_selfish(args.delay, args.gradient, params)?;
            let social =
                analytic::optimal_window_social(args.delay, args.gradient, args.sum_other, params)?;
            let known = analytic::known_n_window_target(args.n, args.delay, args.gradient, params)?;
            writeln!(out, "selfish {}", fmt_target(selfish))?;
            writeln!(out, "social {}", fmt_target(social))?;
            writeln!(out, "known_n {}", fmt_target(known))?;
        }
        AnalyticCommand::Mm1(args) => {
            let net = BalancedMm1::new(args.hops, args.service_time)?;
            writeln!(out, "delay {}", net.delay(args.total_window)?)?;
            writeln!(out, "min_delay {}", net.min_delay())?;
            writeln!(out, "knee_total_window {}", net.knee_total_window())?;
            writeln!(out, "knee_delay {}", net.knee_delay())?;
        }
        AnalyticCommand::FilterAccuracy(args) => {
            writeln!(
                out,
                "{}",
                analytic::decision_filter_accuracy(args.p, args.k)?
            )?;
        }
    }
    Ok(())
}
