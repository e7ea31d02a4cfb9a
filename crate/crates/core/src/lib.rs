//! Delay-gradient congestion avoidance for window-controlled sources.
//!
//! The crate has four layers:
//!
//! * [`analytic`]: closed-form delay/throughput/power relations of a
//!   deterministic closed network, the knee capacity of a path, optimal
//!   window targets and the decision-filter accuracy of a majority vote.
//! * [`controller`]: the per-user window state machine. Each round trip it
//!   compares two `(window, delay)` samples and either increases the window
//!   additively or decreases it multiplicatively.
//! * [`sim`]: a deterministic discrete-event simulator of a closed path of
//!   constant-service-time FIFO servers and fixed-delay stages, driven by
//!   any number of controlled sources.
//! * [`scenarios`]: reproducible built-in experiments and the metrics used to
//!   judge a run (oscillation band, convergence, fairness, divergence).
//!
//! [`config`] and [`cli`] provide the scenario file format, trace and summary
//! serialization, and the `card` command-line front end.
//!
//! Simulation time is exact rational arithmetic ([`Time`]), so a measured
//! round-trip delay on the flat part of the delay curve is bit-for-bit equal
//! to the sum of the service times.

// `!(x > 0.0)` also rejects NaN.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod analytic;
pub mod cli;
pub mod config;
pub mod controller;
mod error;
pub mod scenarios;
pub mod sim;
pub mod time;

pub use analytic::{DelaySample, NetworkPath, PowerParams, ServerKind, ServerSpec, WindowTarget};
pub use controller::{
    Cadence, Controller, ControllerParams, ControllerState, Decision, DecisionRule, Direction,
};
pub use error::{Error, Result};
pub use scenarios::{RunLength, RunSummary, Scenario, TraceOptions, UserSpec};
pub use sim::{run, ReconfigureEvent, Trace, TraceRecord};
pub use time::Time;
