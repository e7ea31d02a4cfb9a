//! Scenario files, trace files and summaries.
//!
//! Scenarios are TOML:
//!
//! ```toml
//! name = "van"
//!
//! [[path]]
//! service_time = 1.0
//! kind = "queueing"
//!
//! [[path]]
//! service_time = 62.5
//! kind = "fixed_delay"
//!
//! [[users]]
//! initial_window = 1.0
//! decrease_factor = 0.875
//! rule = { kind = "ndg_zero" }
//!
//! [[reconfigurations]]
//! time = 20000.0
//! server_index = 2
//! new_service_time = 1.6666666666666667
//!
//! [run]
//! length = 25000.0
//! ```
//!
//! Omitted user fields take the controller defaults. Unknown fields are
//! errors. Times given as decimals are snapped to exact fractions (see
//! [`crate::time`]).
//!
//! Traces are CSV with a header row; summaries are pretty-printed JSON.

use std::io::{Read, Write};
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::analytic::{NetworkPath, ServerKind, ServerSpec};
use crate::controller::{Cadence, ControllerParams, DecisionRule};
use crate::scenarios::{RunLength, RunSummary, Scenario, TraceOptions, UserSpec};
use crate::sim::{ReconfigureEvent, TraceRecord};
use crate::time;
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ServerKindConfig {
    Queueing,
    FixedDelay,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ServerConfig {
    pub service_time: f64,
    #[serde(default = "default_kind")]
    pub kind: ServerKindConfig,
}

fn default_kind() -> ServerKindConfig {
    ServerKindConfig::Queueing
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum RuleConfig {
    NdgZero,
    Intercept {
        #[serde(default = "default_threshold_fraction")]
        threshold_fraction: f64,
    },
    InterceptGradientRatio {
        #[serde(default, skip_serializing_if = "Option::is_none")]
        ratio_threshold: Option<f64>,
    },
    DelayDoubling,
    SelfishPower,
    KnownN {
        n: u32,
    },
}

fn default_threshold_fraction() -> f64 {
    0.5
}

impl From<DecisionRule> for RuleConfig {
    fn from(rule: DecisionRule) -> Self {
        match rule {
            DecisionRule::NdgZero => RuleConfig::NdgZero,
            DecisionRule::Intercept { threshold_fraction } => {
                RuleConfig::Intercept { threshold_fraction }
            }
            DecisionRule::InterceptGradientRatio { ratio_threshold } => {
                RuleConfig::InterceptGradientRatio { ratio_threshold }
            }
            DecisionRule::DelayDoubling => RuleConfig::DelayDoubling,
            DecisionRule::SelfishPower => RuleConfig::SelfishPower,
            DecisionRule::KnownN(n) => RuleConfig::KnownN { n },
        }
    }
}

impl From<RuleConfig> for DecisionRule {
    fn from(rule: RuleConfig) -> Self {
        match rule {
            RuleConfig::NdgZero => DecisionRule::NdgZero,
            RuleConfig::Intercept { threshold_fraction } => {
                DecisionRule::Intercept { threshold_fraction }
            }
            RuleConfig::InterceptGradientRatio { ratio_threshold } => {
                DecisionRule::InterceptGradientRatio { ratio_threshold }
            }
            RuleConfig::DelayDoubling => DecisionRule::DelayDoubling,
            RuleConfig::SelfishPower => DecisionRule::SelfishPower,
            RuleConfig::KnownN { n } => DecisionRule::KnownN(n),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct UserConfig {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub initial_window: Option<f64>,
    #[serde(default = "d_delta_w")]
    pub delta_w: f64,
    #[serde(default = "d_decrease_factor")]
    pub decrease_factor: f64,
    #[serde(default = "d_w_min")]
    pub w_min: f64,
    #[serde(default = "d_w_max")]
    pub w_max: f64,
    #[serde(default = "d_alpha")]
    pub alpha: f64,
    #[serde(default = "d_rule")]
    pub rule: RuleConfig,
    #[serde(default)]
    pub cadence: Cadence,
}

fn d_delta_w() -> f64 {
    ControllerParams::default().delta_w
}
fn d_decrease_factor() -> f64 {
    ControllerParams::default().decrease_factor
}
fn d_w_min() -> f64 {
    ControllerParams::default().w_min
}
fn d_w_max() -> f64 {
    ControllerParams::default().w_max
}
fn d_alpha() -> f64 {
    ControllerParams::default().alpha
}
fn d_rule() -> RuleConfig {
    RuleConfig::NdgZero
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ReconfigureConfig {
    pub time: f64,
    pub server_index: usize,
    pub new_service_time: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    /// Simulated time. Exactly one of `length` and `packets` is required.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub length: Option<f64>,
    /// Total acknowledgments.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub packets: Option<u64>,
    #[serde(default)]
    pub trace: TraceOptions,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ScenarioConfig {
    #[serde(default = "d_name")]
    pub name: String,
    pub path: Vec<ServerConfig>,
    pub users: Vec<UserConfig>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub reconfigurations: Vec<ReconfigureConfig>,
    pub run: RunConfig,
}

fn d_name() -> String {
    "custom".into()
}

impl ScenarioConfig {
    pub fn parse(text: &str) -> Result<Self> {
        Ok(toml::from_str(text)?)
    }

    pub fn to_toml(&self) -> Result<String> {
        Ok(toml::to_string(self)?)
    }

    pub fn into_scenario(self) -> Result<Scenario> {
        let servers = self
            .path
            .iter()
            .enumerate()
            .map(|(i, s)| {
                let kind = match s.kind {
                    ServerKindConfig::Queueing => ServerKind::Queueing,
                    ServerKindConfig::FixedDelay => ServerKind::FixedDelay,
                };
                time::from_f64(s.service_time)
                    .and_then(|t| ServerSpec::new(kind, t))
                    .map_err(|e| Error::Config(format!("path[{i}].service_time: {e}")))
            })
            .collect::<Result<Vec<_>>>()?;
        let path = NetworkPath::new(servers)?;
        let users = self
            .users
            .into_iter()
            .map(|u| {
                let params = ControllerParams {
                    delta_w: u.delta_w,
                    decrease_factor: u.decrease_factor,
                    w_min: u.w_min,
                    w_max: u.w_max,
                    alpha: u.alpha,
                    rule: u.rule.into(),
                    cadence: u.cadence,
                };
                let initial_window = u.initial_window.unwrap_or(params.w_min);
                UserSpec::new(params, initial_window)
            })
            .collect();
        let reconfigurations = self
            .reconfigurations
            .iter()
            .enumerate()
            .map(|(i, r)| {
                let field = |name: &str, e: Error| {
                    Error::Config(format!("reconfigurations[{i}].{name}: {e}"))
                };
                Ok(ReconfigureEvent {
                    time: time::from_f64(r.time).map_err(|e| field("time", e))?,
                    server_index: r.server_index,
                    new_service_time: time::from_f64(r.new_service_time)
                        .map_err(|e| field("new_service_time", e))?,
                })
            })
            .collect::<Result<Vec<_>>>()?;
        let run_length = match (self.run.length, self.run.packets) {
            (Some(t), None) => RunLength::Time(
                time::from_f64(t).map_err(|e| Error::Config(format!("run.length: {e}")))?,
            ),
            (None, Some(n)) => RunLength::Acks(n),
            _ => {
                return Err(Error::Config(
                    "run: exactly one of `length` and `packets` must be given".into(),
                ))
            }
        };
        let scenario = Scenario {
            name: self.name,
            path,
            users,
            reconfigurations,
            run_length,
            trace: self.run.trace,
        };
        scenario.validate()?;
        Ok(scenario)
    }

    pub fn from_scenario(scenario: &Scenario) -> Self {
        let path = scenario
            .path
            .servers()
            .iter()
            .map(|s| ServerConfig {
                service_time: time::to_f64(s.service_time()),
                kind: match s.kind() {
                    ServerKind::Queueing => ServerKindConfig::Queueing,
                    ServerKind::FixedDelay => ServerKindConfig::FixedDelay,
                },
            })
            .collect();
        let users = scenario
            .users
            .iter()
            .map(|u| UserConfig {
                initial_window: Some(u.initial_window),
                delta_w: u.params.delta_w,
                decrease_factor: u.params.decrease_factor,
                w_min: u.params.w_min,
                w_max: u.params.w_max,
                alpha: u.params.alpha,
                rule: u.params.rule.into(),
                cadence: u.params.cadence,
            })
            .collect();
        let reconfigurations = scenario
            .reconfigurations
            .iter()
            .map(|r| ReconfigureConfig {
                time: time::to_f64(r.time),
                server_index: r.server_index,
                new_service_time: time::to_f64(r.new_service_time),
            })
            .collect();
        let (length, packets) = match scenario.run_length {
            RunLength::Time(t) => (Some(time::to_f64(t)), None),
            RunLength::Acks(n) => (None, Some(n)),
        };
        ScenarioConfig {
            name: scenario.name.clone(),
            path,
            users,
            reconfigurations,
            run: RunConfig {
                length,
                packets,
                trace: scenario.trace,
            },
        }
    }
}

pub fn parse_scenario(text: &str) -> Result<Scenario> {
    ScenarioConfig::parse(text)?.into_scenario()
}

pub fn load_scenario(path: &Path) -> Result<Scenario> {
    let text = std::fs::read_to_string(path)?;
    parse_scenario(&text)
}

pub fn scenario_to_toml(scenario: &Scenario) -> Result<String> {
    ScenarioConfig::from_scenario(scenario).to_toml()
}

/// Writes records as CSV. Floats use the shortest representation that
/// parses back to the same value.
pub fn write_trace<W: Write>(records: &[TraceRecord], out: W) -> Result<()> {
    let mut writer = csv::Writer::from_writer(out);
    for rec in records {
        writer.serialize(rec)?;
    }
    if records.is_empty() {
        writer.write_record([
            "time",
            "user_id",
            "event_kind",
            "window_real",
            "window_int",
            "rtt",
            "rule_statistic",
            "direction",
        ])?;
    }
    writer.flush()?;
    Ok(())
}

pub fn read_trace<R: Read>(input: R) -> Result<Vec<TraceRecord>> {
    let mut reader = csv::Reader::from_reader(input);
    reader
        .deserialize()
        .map(|r| r.map_err(Error::from))
        .collect()
}

pub fn trace_to_string(records: &[TraceRecord]) -> Result<String> {
    let mut buf = Vec::new();
    write_trace(records, &mut buf)?;
    Ok(String::from_utf8(buf).expect("csv output is utf-8"))
}

pub fn summary_to_json(summary: &RunSummary) -> Result<String> {
    Ok(serde_json::to_string_pretty(summary)?)
}
