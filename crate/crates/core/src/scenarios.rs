//! Built-in experiments and run metrics.

use num_rational::Ratio;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::analytic::{self, NetworkPath};
use crate::controller::{ControllerParams, DecisionRule};
use crate::sim::{ReconfigureEvent, RecordKind, Trace};
use crate::time::{self, Time};
use crate::{Error, Result};

#[derive(Debug, Clone, PartialEq)]
pub struct UserSpec {
    pub params: ControllerParams,
    pub initial_window: f64,
}

impl UserSpec {
    pub fn new(params: ControllerParams, initial_window: f64) -> Self {
        UserSpec {
            params,
            initial_window,
        }
    }
}

impl Default for UserSpec {
    fn default() -> Self {
        let params = ControllerParams::default();
        let initial_window = params.w_min;
        UserSpec {
            params,
            initial_window,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RunLength {
    /// Simulate events up to and including this time.
    Time(Time),
    /// Stop after this many acknowledgments, summed over users.
    Acks(u64),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TraceOptions {
    #[serde(default = "yes")]
    pub sends: bool,
    #[serde(default = "yes")]
    pub acks: bool,
    #[serde(default = "yes")]
    pub decisions: bool,
}

fn yes() -> bool {
    true
}

impl Default for TraceOptions {
    fn default() -> Self {
        TraceOptions {
            sends: true,
            acks: true,
            decisions: true,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Scenario {
    pub name: String,
    pub path: NetworkPath,
    pub users: Vec<UserSpec>,
    pub reconfigurations: Vec<ReconfigureEvent>,
    pub run_length: RunLength,
    pub trace: TraceOptions,
}

impl Scenario {
    pub fn validate(&self) -> Result<()> {
        if self.users.is_empty() {
            return Err(Error::Config("a scenario needs at least one user".into()));
        }
        for (i, user) in self.users.iter().enumerate() {
            user.params
                .validate()
                .map_err(|e| Error::Config(format!("user {i}: {e}")))?;
            if !(user.initial_window >= user.params.w_min
                && user.initial_window <= user.params.w_max)
            {
                return Err(Error::Config(format!(
                    "user {i}: initial window {} outside [{}, {}]",
                    user.initial_window, user.params.w_min, user.params.w_max
                )));
            }
        }
        for (i, change) in self.reconfigurations.iter().enumerate() {
            if change.server_index >= self.path.len() {
                return Err(Error::Config(format!(
                    "reconfiguration {i}: server index {} out of range (path has {} servers)",
                    change.server_index,
                    self.path.len()
                )));
            }
            if change.new_service_time <= Time::zero() {
                return Err(Error::Config(format!(
                    "reconfiguration {i}: service time must be positive"
                )));
            }
            if change.time < Time::zero() {
                return Err(Error::Config(format!("reconfiguration {i}: negative time")));
            }
        }
        match self.run_length {
            RunLength::Time(t) if t <= Time::zero() => {
                Err(Error::Config("run length must be positive".into()))
            }
            RunLength::Acks(0) => Err(Error::Config("packet budget must be positive".into())),
            _ => Ok(()),
        }
    }

    /// Knee capacity of the path with every reconfiguration up to `at`
    /// applied.
    pub fn knee_at(&self, at: Time) -> Result<Time> {
        let mut changes: Vec<_> = self
            .reconfigurations
            .iter()
            .filter(|c| c.time <= at)
            .collect();
        changes.sort_by_key(|c| c.time);
        let mut path = self.path.clone();
        for change in changes {
            path = path.with_service_time(change.server_index, change.new_service_time)?;
        }
        Ok(analytic::knee_capacity(&path))
    }

    pub fn with_rule(mut self, rule: DecisionRule) -> Self {
        for user in &mut self.users {
            user.params.rule = rule;
        }
        self
    }
}

pub const BUILTIN_NAMES: [&str; 7] = [
    "van",
    "wan",
    "van_reconfig",
    "van_two_users",
    "van_high_start",
    "nine_users_congested",
    "divergence_demo",
];

/// Source (service time 1), four terrestrial servers and a satellite hop
/// of 62.5. Knee 15.5.
pub fn van_path() -> NetworkPath {
    NetworkPath::from_times(&[1.0, 2.0, 5.0, 3.0, 4.0], &[62.5]).expect("valid path")
}

/// Source plus four terrestrial servers. Knee 3.
pub fn wan_path() -> NetworkPath {
    NetworkPath::from_times(&[1.0, 2.0, 5.0, 4.0, 3.0], &[]).expect("valid path")
}

/// Index of the 5-unit bottleneck in [`van_path`].
pub const VAN_BOTTLENECK: usize = 2;

pub const VAN_RUN: i128 = 25_000;
pub const WAN_RUN: i128 = 6_000;
pub const RECONFIG_SEGMENT: i128 = 20_000;
pub const CONGESTED_RUN: i128 = 20_000;
pub const HIGH_START_WINDOW: f64 = 40.0;
pub const HIGH_START_W_MAX: f64 = 48.0;

fn scenario(name: &str, path: NetworkPath, users: Vec<UserSpec>, run: i128) -> Scenario {
    Scenario {
        name: name.to_string(),
        path,
        users,
        reconfigurations: Vec::new(),
        run_length: RunLength::Time(Time::from_integer(run)),
        trace: TraceOptions::default(),
    }
}

pub fn builtin_scenario(name: &str) -> Result<Scenario> {
    let card = UserSpec::default;
    Ok(match name {
        "van" => scenario(name, van_path(), vec![card()], VAN_RUN),
        "wan" => scenario(name, wan_path(), vec![card()], WAN_RUN),
        "van_reconfig" => {
            let mut s = scenario(name, van_path(), vec![card()], 3 * RECONFIG_SEGMENT);
            s.reconfigurations = vec![
                ReconfigureEvent {
                    time: Time::from_integer(RECONFIG_SEGMENT),
                    server_index: VAN_BOTTLENECK,
                    new_service_time: Ratio::new(5, 3),
                },
                ReconfigureEvent {
                    time: Time::from_integer(2 * RECONFIG_SEGMENT),
                    server_index: VAN_BOTTLENECK,
                    new_service_time: Time::from_integer(5),
                },
            ];
            s
        }
        "van_two_users" => scenario(name, van_path(), vec![card(), card()], VAN_RUN),
        "van_high_start" => {
            let params = ControllerParams {
                w_max: HIGH_START_W_MAX,
                ..Default::default()
            };
            scenario(
                name,
                van_path(),
                vec![UserSpec::new(params, HIGH_START_WINDOW)],
                VAN_RUN,
            )
        }
        "nine_users_congested" => scenario(name, wan_path(), vec![card(); 9], CONGESTED_RUN),
        "divergence_demo" => scenario(name, wan_path(), vec![card(); 9], CONGESTED_RUN)
            .with_rule(DecisionRule::SelfishPower),
        _ => {
            return Err(Error::UnknownScenario {
                name: name.to_string(),
                valid: BUILTIN_NAMES.to_vec(),
            })
        }
    })
}

/// Jain's index `(sum x)^2 / (n * sum x^2)`.
pub fn fairness_index(values: &[f64]) -> f64 {
    let n = values.len() as f64;
    let sum: f64 = values.iter().sum();
    let sum_sq: f64 = values.iter().map(|x| x * x).sum();
    if sum_sq == 0.0 {
        return 1.0;
    }
    sum * sum / (n * sum_sq)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct UserSummary {
    pub user_id: usize,
    pub decisions: usize,
    pub band_min: u32,
    pub band_max: u32,
    /// First decision (1-based) after which every later window lies in the
    /// band.
    pub convergence_epoch: Option<usize>,
    pub mean_window: f64,
    pub max_window: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunSummary {
    pub scenario: String,
    pub knee: f64,
    /// Band of the total (all-user) integer window after convergence.
    pub band_min: u32,
    pub band_max: u32,
    /// Latest per-user convergence epoch.
    pub convergence_epoch: Option<usize>,
    pub fairness_index: f64,
    pub diverged: bool,
    pub divergence_bound: f64,
    pub max_total_window: f64,
    pub users: Vec<UserSummary>,
}

/// Default divergence bound: ten knees.
pub fn default_divergence_bound(knee: f64) -> f64 {
    10.0 * knee
}

/// Computes band, convergence, fairness and divergence from a trace.
///
/// The band is taken over the last half of each user's decisions. The total
/// band samples the sum of all users' integer windows after every decision
/// in the last half of the run's decisions. The run has diverged when the
/// total window ever exceeded `divergence_bound`.
pub fn summarize(trace: &Trace, divergence_bound: f64) -> Result<RunSummary> {
    if trace.records.is_empty() {
        return Err(Error::EmptyTrace);
    }
    let mut current_int = vec![0u32; trace.users];
    let mut current_real = vec![0.0f64; trace.users];
    let mut seen = vec![false; trace.users];
    let mut totals: Vec<(u32, f64)> = Vec::new();
    let mut max_total = 0.0f64;
    let mut per_user: Vec<Vec<(u32, f64)>> = vec![Vec::new(); trace.users];
    let mut max_window = vec![0.0f64; trace.users];

    for rec in &trace.records {
        let u = rec.user_id;
        if u >= trace.users {
            return Err(Error::Config(format!("trace record names user {u}")));
        }
        current_int[u] = rec.window_int;
        current_real[u] = rec.window_real;
        seen[u] = true;
        max_window[u] = max_window[u].max(rec.window_real);
        let total_real: f64 = current_real.iter().sum();
        max_total = max_total.max(total_real);
        if rec.event_kind == RecordKind::Decision {
            per_user[u].push((rec.window_int, rec.window_real));
            totals.push((current_int.iter().sum(), total_real));
        }
    }

    let mut users = Vec::with_capacity(trace.users);
    for (u, windows) in per_user.iter().enumerate() {
        let (band_min, band_max, convergence_epoch, mean_window) = if windows.is_empty() {
            let w = current_int[u];
            (w, w, None, f64::from(w))
        } else {
            let suffix = &windows[windows.len() / 2..];
            let band_min = suffix.iter().map(|w| w.0).min().unwrap();
            let band_max = suffix.iter().map(|w| w.0).max().unwrap();
            let last_outside = windows
                .iter()
                .rposition(|w| w.0 < band_min || w.0 > band_max);
            let convergence = last_outside.map_or(1, |i| i + 2);
            let mean = suffix.iter().map(|w| f64::from(w.0)).sum::<f64>() / suffix.len() as f64;
            (band_min, band_max, Some(convergence), mean)
        };
        users.push(UserSummary {
            user_id: u,
            decisions: windows.len(),
            band_min,
            band_max,
            convergence_epoch,
            mean_window,
            max_window: max_window[u],
        });
    }

    let (band_min, band_max) = if totals.is_empty() {
        let t: u32 = current_int.iter().sum();
        (t, t)
    } else {
        let suffix = &totals[totals.len() / 2..];
        (
            suffix.iter().map(|t| t.0).min().unwrap(),
            suffix.iter().map(|t| t.0).max().unwrap(),
        )
    };
    let means: Vec<f64> = users.iter().map(|u| u.mean_window).collect();
    Ok(RunSummary {
        scenario: trace.scenario.clone(),
        knee: trace.knee,
        band_min,
        band_max,
        convergence_epoch: users.iter().filter_map(|u| u.convergence_epoch).max(),
        fairness_index: fairness_index(&means),
        diverged: max_total > divergence_bound,
        divergence_bound,
        max_total_window: max_total,
        users,
    })
}

/// Knee of the scenario's path before any reconfiguration, as `f64`.
pub fn knee_of(scenario: &Scenario) -> f64 {
    time::to_f64(analytic::knee_capacity(&scenario.path))
}
