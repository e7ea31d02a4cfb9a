//! Per-user window controller.
//!
//! Every decision epoch the controller pairs the newest `(W_out, D)` sample
//! with the previous one and moves the window one step: additive increase
//! by `delta_w` or multiplicative decrease by `decrease_factor`. There is no
//! hold state; a window that stays put cannot detect that the load moved.
//!
//! The default rule decreases when the normalized delay gradient is positive.
//! The alternatives (intercept, intercept/gradient ratio, delay doubling,
//! known user count) and the divergent selfish-power rule are selectable
//! through [`DecisionRule`].

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::analytic::{self, DelaySample, PowerParams, WindowTarget};
use crate::time::Time;
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Direction {
    Increase,
    Decrease,
}

impl fmt::Display for Direction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Direction::Increase => "increase",
            Direction::Decrease => "decrease",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub enum DecisionRule {
    /// Decrease iff the normalized delay gradient is positive.
    #[default]
    NdgZero,
    /// Fit `D = aW + b` through the two samples; increase while the
    /// intercept `b` exceeds `threshold_fraction * D`.
    Intercept { threshold_fraction: f64 },
    /// Increase while `b / a` exceeds the threshold. `None` uses the window
    /// of the current sample.
    InterceptGradientRatio { ratio_threshold: Option<f64> },
    /// Increase while the delay is below twice the delay measured at
    /// window 1.
    DelayDoubling,
    /// Increase while the window is below the selfish power optimum. Diverges
    /// under heavy congestion; kept to demonstrate that.
    SelfishPower,
    /// Selfish optimum scaled by `1/(2n - 1)` for a known user count `n`.
    KnownN(u32),
}

impl DecisionRule {
    pub const NAMES: [&'static str; 6] = [
        "ndg-zero",
        "intercept",
        "intercept-gradient-ratio",
        "delay-doubling",
        "selfish-power",
        "known-n:<n>",
    ];

    pub fn intercept() -> Self {
        DecisionRule::Intercept {
            threshold_fraction: 0.5,
        }
    }

    pub fn intercept_gradient_ratio() -> Self {
        DecisionRule::InterceptGradientRatio {
            ratio_threshold: None,
        }
    }
}

impl FromStr for DecisionRule {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let normalized = s.trim().to_ascii_lowercase().replace('_', "-");
        Ok(match normalized.as_str() {
            "ndg-zero" | "ndg" => DecisionRule::NdgZero,
            "intercept" => DecisionRule::intercept(),
            "intercept-gradient-ratio" | "ratio" => DecisionRule::intercept_gradient_ratio(),
            "delay-doubling" => DecisionRule::DelayDoubling,
            "selfish-power" => DecisionRule::SelfishPower,
            other => match other.strip_prefix("known-n:") {
                Some(n) => {
                    let n: u32 = n
                        .parse()
                        .map_err(|_| Error::Config(format!("bad user count in rule `{s}`")))?;
                    if n == 0 {
                        return Err(Error::Config("known-n rule needs n >= 1".into()));
                    }
                    DecisionRule::KnownN(n)
                }
                None => {
                    return Err(Error::Config(format!(
                        "unknown decision rule `{s}`; expected one of {}",
                        Self::NAMES.join(", ")
                    )))
                }
            },
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Cadence {
    #[default]
    EveryRtt,
    /// Decide on every second measurement and discard the others.
    EveryTwoRtt,
}

impl FromStr for Cadence {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().replace('_', "-").as_str() {
            "every-rtt" | "1" => Ok(Cadence::EveryRtt),
            "every-two-rtt" | "2" => Ok(Cadence::EveryTwoRtt),
            _ => Err(Error::Config(format!(
                "unknown cadence `{s}`; expected every-rtt or every-two-rtt"
            ))),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ControllerParams {
    pub delta_w: f64,
    pub decrease_factor: f64,
    pub w_min: f64,
    pub w_max: f64,
    pub alpha: f64,
    pub rule: DecisionRule,
    pub cadence: Cadence,
}

impl Default for ControllerParams {
    fn default() -> Self {
        ControllerParams {
            delta_w: 1.0,
            decrease_factor: 0.875,
            w_min: 1.0,
            w_max: 65535.0,
            alpha: 1.0,
            rule: DecisionRule::NdgZero,
            cadence: Cadence::EveryRtt,
        }
    }
}

impl ControllerParams {
    pub fn validate(&self) -> Result<()> {
        if !(self.delta_w > 0.0 && self.delta_w.is_finite()) {
            return Err(Error::domain("delta_w", self.delta_w, "must be positive"));
        }
        if !(self.decrease_factor > 0.0 && self.decrease_factor < 1.0) {
            return Err(Error::domain(
                "decrease_factor",
                self.decrease_factor,
                "must lie strictly between 0 and 1",
            ));
        }
        if !(self.w_min >= 1.0) {
            return Err(Error::domain("w_min", self.w_min, "must be at least 1"));
        }
        if !(self.w_max >= self.w_min && self.w_max.is_finite()) {
            return Err(Error::domain(
                "w_max",
                self.w_max,
                "must be finite and at least w_min",
            ));
        }
        PowerParams::new(self.alpha)?;
        match self.rule {
            DecisionRule::Intercept { threshold_fraction } if !(threshold_fraction > 0.0) => Err(
                Error::domain("threshold_fraction", threshold_fraction, "must be positive"),
            ),
            DecisionRule::InterceptGradientRatio {
                ratio_threshold: Some(r),
            } if !(r > 0.0) => Err(Error::domain("ratio_threshold", r, "must be positive")),
            DecisionRule::KnownN(0) => Err(Error::domain("n", 0.0, "must be at least 1")),
            _ => Ok(()),
        }
    }

    pub fn power(&self) -> PowerParams {
        PowerParams::new(self.alpha).unwrap_or_default()
    }

    /// Window equal bounds switch the adjustment off.
    pub fn is_disabled(&self) -> bool {
        self.w_min == self.w_max
    }
}

pub fn increase(window: f64, params: &ControllerParams) -> f64 {
    (window + params.delta_w).min(params.w_max)
}

pub fn decrease(window: f64, params: &ControllerParams) -> f64 {
    (window * params.decrease_factor).max(params.w_min)
}

/// Packets a window of `window` keeps in flight: nearest integer, halves
/// rounded up.
pub fn packets_for(window: f64) -> u32 {
    (window + 0.5).floor().max(0.0) as u32
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Decision {
    pub direction: Direction,
    pub old_window: f64,
    pub new_window: f64,
    /// Rule-specific diagnostic: the NDG value, the intercept, the
    /// intercept/gradient ratio, the delay ratio or the optimal window.
    /// `None` for bootstrap and boundary decisions.
    pub statistic: Option<f64>,
}

/// Send time and outstanding count recorded on a timed packet.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Stamp {
    pub send_time: Time,
    pub w_out: u32,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ControllerState {
    pub window: f64,
    pub prev_sample: Option<DelaySample>,
    /// Latest sample whose window differs from `prev_sample`'s.
    pub anchor: Option<DelaySample>,
    /// Delay last measured with a single packet outstanding.
    pub baseline_delay: Option<f64>,
    pub last_decision_time: Option<Time>,
    /// Measurements taken since the last decision.
    pub rtt_since_decision: u32,
    pub epochs: u64,
    pub decisions: u64,
    timing_armed: bool,
}

impl ControllerState {
    pub fn new(window: f64) -> Self {
        ControllerState {
            window,
            prev_sample: None,
            anchor: None,
            baseline_delay: None,
            last_decision_time: None,
            rtt_since_decision: 0,
            epochs: 0,
            decisions: 0,
            timing_armed: true,
        }
    }
}

/// What a rule concluded from a pair of samples.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RuleOutcome {
    pub direction: Direction,
    pub statistic: f64,
}

/// Applies a decision rule to two samples at distinct windows.
pub fn evaluate_rule(
    rule: DecisionRule,
    current: DelaySample,
    previous: DelaySample,
    baseline_delay: Option<f64>,
    power: PowerParams,
) -> Result<RuleOutcome> {
    let gradient = || -> Result<f64> {
        if current.window == previous.window {
            return Err(Error::UndefinedGradient {
                window: current.window,
            });
        }
        Ok((current.delay - previous.delay) / (current.window - previous.window))
    };
    let toward = |target: WindowTarget| RuleOutcome {
        direction: target.direction_for(current.window),
        statistic: target.finite().unwrap_or(f64::INFINITY),
    };
    match rule {
        DecisionRule::NdgZero => {
            let value = analytic::ndg(current, previous)?;
            let direction = if value > 0.0 {
                Direction::Decrease
            } else {
                Direction::Increase
            };
            Ok(RuleOutcome {
                direction,
                statistic: value,
            })
        }
        DecisionRule::Intercept { threshold_fraction } => {
            let slope = gradient()?;
            let intercept = current.delay - slope * current.window;
            let direction = if intercept > threshold_fraction * current.delay {
                Direction::Increase
            } else {
                Direction::Decrease
            };
            Ok(RuleOutcome {
                direction,
                statistic: intercept,
            })
        }
        DecisionRule::InterceptGradientRatio { ratio_threshold } => {
            let slope = gradient()?;
            let intercept = current.delay - slope * current.window;
            // A flat or falling delay puts the ratio at +infinity.
            let ratio = if slope > 0.0 {
                intercept / slope
            } else {
                f64::INFINITY
            };
            let threshold = ratio_threshold.unwrap_or(current.window);
            let direction = if ratio > threshold {
                Direction::Increase
            } else {
                Direction::Decrease
            };
            Ok(RuleOutcome {
                direction,
                statistic: ratio,
            })
        }
        DecisionRule::DelayDoubling => {
            let baseline = baseline_delay.ok_or(Error::MissingBaseline)?;
            let ratio = current.delay / baseline;
            let direction = if ratio < 2.0 {
                Direction::Increase
            } else {
                Direction::Decrease
            };
            Ok(RuleOutcome {
                direction,
                statistic: ratio,
            })
        }
        DecisionRule::SelfishPower => {
            let slope = gradient()?;
            if slope <= 0.0 {
                return Ok(toward(WindowTarget::Unbounded));
            }
            Ok(toward(analytic::optimal_window_selfish(
                current.delay,
                slope,
                power,
            )?))
        }
        DecisionRule::KnownN(n) => {
            let slope = gradient()?;
            if slope <= 0.0 {
                return Ok(toward(WindowTarget::Unbounded));
            }
            Ok(toward(analytic::known_n_window_target(
                n,
                current.delay,
                slope,
                power,
            )?))
        }
    }
}

/// Decision for one epoch.
///
/// The sample is compared against the latest earlier sample taken at a
/// different window: a decrease that leaves the rounded packet count
/// unchanged yields a second sample at the same window, and the gradient
/// between those two is undefined.
///
/// * window at `w_max`: decrease;
/// * no reference sample yet: increase (bootstrap);
/// * otherwise: whatever the rule says.
pub fn decide(
    state: &mut ControllerState,
    params: &ControllerParams,
    sample: DelaySample,
) -> Result<Decision> {
    if sample.window == 1.0 {
        state.baseline_delay = Some(sample.delay);
    }
    let reference = match state.prev_sample {
        Some(prev) if prev.window != sample.window => {
            state.anchor = Some(prev);
            Some(prev)
        }
        _ => state.anchor,
    };
    state.prev_sample = Some(sample);
    let window = state.window;
    let at_max = window >= params.w_max;

    let (direction, statistic) = match reference {
        None if at_max => (Direction::Decrease, None),
        None => (Direction::Increase, None),
        Some(reference) => {
            let outcome = evaluate_rule(
                params.rule,
                sample,
                reference,
                state.baseline_delay,
                params.power(),
            )?;
            let direction = if at_max {
                Direction::Decrease
            } else {
                outcome.direction
            };
            (direction, Some(outcome.statistic))
        }
    };

    let new_window = match direction {
        Direction::Increase => increase(window, params),
        Direction::Decrease => decrease(window, params),
    };
    state.window = new_window;
    state.decisions += 1;
    Ok(Decision {
        direction,
        old_window: window,
        new_window,
        statistic,
    })
}

/// A controller bound to its parameters.
#[derive(Debug, Clone, PartialEq)]
pub struct Controller {
    params: ControllerParams,
    state: ControllerState,
}

impl Controller {
    pub fn new(params: ControllerParams, initial_window: f64) -> Result<Self> {
        params.validate()?;
        if !(initial_window >= params.w_min && initial_window <= params.w_max) {
            return Err(Error::domain(
                "initial_window",
                initial_window,
                "must lie within [w_min, w_max]",
            ));
        }
        Ok(Controller {
            params,
            state: ControllerState::new(initial_window),
        })
    }

    pub fn params(&self) -> &ControllerParams {
        &self.params
    }

    pub fn state(&self) -> &ControllerState {
        &self.state
    }

    pub fn window(&self) -> f64 {
        self.state.window
    }

    pub fn packets_target(&self) -> u32 {
        packets_for(self.state.window)
    }

    pub fn decide(&mut self, sample: DelaySample) -> Result<Decision> {
        decide(&mut self.state, &self.params, sample)
    }

    /// True while the next packet sent should carry a timing stamp.
    pub fn timing_armed(&self) -> bool {
        self.state.timing_armed
    }

    /// Stamps a departing packet. `w_out` counts packets outstanding
    /// including this one. One packet per round trip is timed; this disarms
    /// timing until its ack returns.
    pub fn on_packet_sent(&mut self, now: Time, w_out: u32) -> Stamp {
        self.state.timing_armed = false;
        Stamp {
            send_time: now,
            w_out,
        }
    }

    /// Ends a measurement epoch. Under [`Cadence::EveryTwoRtt`] odd
    /// measurements are discarded.
    pub fn on_ack(&mut self, stamp: Stamp, now: Time) -> Result<Option<Decision>> {
        self.state.timing_armed = true;
        self.state.epochs += 1;
        self.state.rtt_since_decision += 1;
        if self.params.cadence == Cadence::EveryTwoRtt && self.state.epochs % 2 == 1 {
            return Ok(None);
        }
        let delay = crate::time::to_f64(now - stamp.send_time);
        let sample = DelaySample::new(f64::from(stamp.w_out), delay);
        let decision = self.decide(sample)?;
        self.state.last_decision_time = Some(now);
        self.state.rtt_since_decision = 0;
        Ok(Some(decision))
    }
}

#[cfg(test)]
mod tests {
    use num_rational::Ratio;

    use super::*;

    fn s(w: f64, d: f64) -> DelaySample {
        DelaySample::new(w, d)
    }

    fn state_with(window: f64, prev: Option<DelaySample>) -> ControllerState {
        let mut state = ControllerState::new(window);
        state.prev_sample = prev;
        state
    }

    #[test]
    fn increase_and_decrease_examples() {
        let p = ControllerParams::default();
        assert_eq!(increase(5.0, &p), 6.0);
        assert_eq!(increase(p.w_max, &p), p.w_max);
        assert_eq!(increase(13.0, &p), 14.0);
        assert_eq!(packets_for(increase(13.0, &p)), 14);
        assert_eq!(decrease(16.0, &p), 14.0);
        assert_eq!(decrease(8.0, &p), 7.0);
        assert_eq!(decrease(1.0, &p), 1.0);
    }

    #[test]
    fn packets_round_half_up() {
        assert_eq!(packets_for(12.25), 12);
        assert_eq!(packets_for(12.5), 13);
        assert_eq!(packets_for(13.25), 13);
        assert_eq!(packets_for(15.5), 16);
        assert_eq!(packets_for(1.0), 1);
    }

    #[test]
    fn flat_segment_increases() {
        let p = ControllerParams::default();
        let mut st = state_with(13.0, Some(s(12.0, 77.5)));
        let d = decide(&mut st, &p, s(13.0, 77.5)).unwrap();
        assert_eq!(d.direction, Direction::Increase);
        assert_eq!(d.new_window, 14.0);
        assert_eq!(d.statistic, Some(0.0));
        assert_eq!(st.prev_sample, Some(s(13.0, 77.5)));
    }

    #[test]
    fn sloped_segment_decreases() {
        let p = ControllerParams::default();
        let mut st = state_with(17.0, Some(s(16.0, 80.0)));
        let d = decide(&mut st, &p, s(17.0, 85.0)).unwrap();
        assert_eq!(d.direction, Direction::Decrease);
        assert_eq!(d.new_window, 14.875);
        assert_eq!(d.statistic, Some(1.0));
    }

    #[test]
    fn at_w_max_always_decreases() {
        let p = ControllerParams {
            w_max: 20.0,
            ..Default::default()
        };
        let mut st = state_with(20.0, Some(s(19.0, 77.5)));
        let d = decide(&mut st, &p, s(20.0, 77.5)).unwrap();
        assert_eq!(d.direction, Direction::Decrease);
        assert_eq!(d.new_window, 17.5);
    }

    #[test]
    fn bootstrap_increases() {
        let p = ControllerParams::default();
        let mut st = ControllerState::new(1.0);
        let d = decide(&mut st, &p, s(1.0, 77.5)).unwrap();
        assert_eq!(d.direction, Direction::Increase);
        assert_eq!(d.statistic, None);
        assert_eq!(st.baseline_delay, Some(77.5));
    }

    #[test]
    fn equal_windows_compare_against_anchor() {
        let p = ControllerParams::default();
        let mut st = state_with(5.0, Some(s(4.0, 20.0)));
        // Sloped step from 4 to 5 becomes the anchor pair.
        let d = decide(&mut st, &p, s(5.0, 25.0)).unwrap();
        assert_eq!(d.direction, Direction::Decrease);
        assert_eq!(st.anchor, Some(s(4.0, 20.0)));
        // 4.375 still sends five packets: compared against (4, 20) again.
        let d = decide(&mut st, &p, s(5.0, 25.0)).unwrap();
        assert_eq!(d.direction, Direction::Decrease);
        assert_eq!(d.statistic, Some(1.0));
        assert_eq!(st.anchor, Some(s(4.0, 20.0)));
        assert_eq!(st.prev_sample, Some(s(5.0, 25.0)));
    }

    #[test]
    fn equal_windows_without_anchor_bootstrap() {
        let p = ControllerParams::default();
        let mut st = state_with(1.0, Some(s(1.0, 20.0)));
        let d = decide(&mut st, &p, s(1.0, 45.0)).unwrap();
        assert_eq!(d.direction, Direction::Increase);
        assert_eq!(d.new_window, 2.0);
        assert_eq!(d.statistic, None);
    }

    #[test]
    fn disabled_controller_never_moves() {
        let p = ControllerParams {
            w_min: 10.0,
            w_max: 10.0,
            ..Default::default()
        };
        let mut c = Controller::new(p, 10.0).unwrap();
        for (w, d) in [(10.0, 77.5), (10.0, 80.0), (9.0, 77.5)] {
            assert_eq!(c.decide(s(w, d)).unwrap().new_window, 10.0);
        }
        assert_eq!(c.window(), 10.0);
    }

    #[test]
    fn param_validation() {
        let bad = [
            ControllerParams {
                decrease_factor: 1.0,
                ..Default::default()
            },
            ControllerParams {
                w_min: 0.5,
                ..Default::default()
            },
            ControllerParams {
                w_max: 0.9,
                ..Default::default()
            },
            ControllerParams {
                delta_w: 0.0,
                ..Default::default()
            },
            ControllerParams {
                rule: DecisionRule::KnownN(0),
                ..Default::default()
            },
        ];
        for p in bad {
            assert!(p.validate().is_err(), "{p:?}");
        }
        assert!(Controller::new(ControllerParams::default(), 0.5).is_err());
    }

    #[test]
    fn stamping_and_cadence() {
        let mut every = Controller::new(ControllerParams::default(), 1.0).unwrap();
        let mut every_two = Controller::new(
            ControllerParams {
                cadence: Cadence::EveryTwoRtt,
                ..Default::default()
            },
            1.0,
        )
        .unwrap();
        let mut decided = (Vec::new(), Vec::new());
        for epoch in 1..=6i128 {
            let now = Ratio::from_integer(epoch * 100);
            for (c, log) in [
                (&mut every, &mut decided.0),
                (&mut every_two, &mut decided.1),
            ] {
                assert!(c.timing_armed());
                let w_out = c.packets_target();
                let stamp = c.on_packet_sent(now, w_out);
                assert!(!c.timing_armed());
                if c.on_ack(stamp, now + Ratio::new(155, 2)).unwrap().is_some() {
                    log.push(epoch);
                }
            }
        }
        assert_eq!(decided.0, vec![1, 2, 3, 4, 5, 6]);
        assert_eq!(decided.1, vec![2, 4, 6]);
    }

    #[test]
    fn stamp_counts_outstanding() {
        let mut c = Controller::new(ControllerParams::default(), 8.0).unwrap();
        let stamp = c.on_packet_sent(Time::from_integer(3), 7 + 1);
        assert_eq!(stamp.w_out, 8);
        assert_eq!(c.on_packet_sent(Time::from_integer(3), 1).w_out, 1);
    }

    #[test]
    fn intercept_rules_follow_the_knee() {
        let one = PowerParams::default();
        let flat = evaluate_rule(
            DecisionRule::intercept(),
            s(12.0, 77.5),
            s(11.0, 77.5),
            None,
            one,
        )
        .unwrap();
        assert_eq!(flat.direction, Direction::Increase);
        assert_eq!(flat.statistic, 77.5);
        let sloped = evaluate_rule(
            DecisionRule::intercept(),
            s(16.0, 80.0),
            s(14.0, 70.0),
            None,
            one,
        )
        .unwrap();
        assert_eq!(sloped.direction, Direction::Decrease);
        assert_eq!(sloped.statistic, 0.0);

        let ratio = DecisionRule::intercept_gradient_ratio();
        assert_eq!(
            evaluate_rule(ratio, s(12.0, 77.5), s(11.0, 77.5), None, one)
                .unwrap()
                .direction,
            Direction::Increase
        );
        assert_eq!(
            evaluate_rule(ratio, s(16.0, 80.0), s(14.0, 70.0), None, one)
                .unwrap()
                .direction,
            Direction::Decrease
        );
    }

    #[test]
    fn delay_doubling_rule() {
        let one = PowerParams::default();
        assert!(matches!(
            evaluate_rule(
                DecisionRule::DelayDoubling,
                s(3.0, 20.0),
                s(2.0, 15.0),
                None,
                one
            ),
            Err(Error::MissingBaseline)
        ));
        // balanced M/M/1, h = 5, tb = 2: D0 = 10, knee delay 20 = 2 * D0
        let at_knee = evaluate_rule(
            DecisionRule::DelayDoubling,
            s(5.0, 20.0),
            s(4.0, 18.0),
            Some(10.0),
            one,
        )
        .unwrap();
        assert_eq!(at_knee.direction, Direction::Decrease);
        assert_eq!(at_knee.statistic, 2.0);
        let below = evaluate_rule(
            DecisionRule::DelayDoubling,
            s(4.0, 18.0),
            s(3.0, 16.0),
            Some(10.0),
            one,
        )
        .unwrap();
        assert_eq!(below.direction, Direction::Increase);
    }

    #[test]
    fn selfish_power_rule() {
        let one = PowerParams::default();
        // zero gradient: unbounded target
        let below = evaluate_rule(
            DecisionRule::SelfishPower,
            s(3.0, 77.5),
            s(2.0, 77.5),
            None,
            one,
        )
        .unwrap();
        assert_eq!(below.direction, Direction::Increase);
        assert!(below.statistic.is_infinite());
        // gradient 5 at D = 90: target 9, window 18 is above it
        let above = evaluate_rule(
            DecisionRule::SelfishPower,
            s(18.0, 90.0),
            s(16.0, 80.0),
            None,
            one,
        )
        .unwrap();
        assert_eq!(above.direction, Direction::Decrease);
        assert_eq!(above.statistic, 9.0);
    }

    #[test]
    fn known_n_rule_scales_selfish_target() {
        let one = PowerParams::default();
        let out = evaluate_rule(
            DecisionRule::KnownN(2),
            s(2.0, 80.0),
            s(1.0, 75.0),
            None,
            one,
        )
        .unwrap();
        assert!((out.statistic - 8.0 / 3.0).abs() < 1e-12);
        assert_eq!(out.direction, Direction::Increase);
    }

    #[test]
    fn rule_names_parse() {
        assert_eq!(
            "ndg-zero".parse::<DecisionRule>().unwrap(),
            DecisionRule::NdgZero
        );
        assert_eq!(
            "SELFISH_POWER".parse::<DecisionRule>().unwrap(),
            DecisionRule::SelfishPower
        );
        assert_eq!(
            "known-n:9".parse::<DecisionRule>().unwrap(),
            DecisionRule::KnownN(9)
        );
        assert!("known-n:0".parse::<DecisionRule>().is_err());
        assert!("bogus".parse::<DecisionRule>().is_err());
        assert_eq!(
            "every-two-rtt".parse::<Cadence>().unwrap(),
            Cadence::EveryTwoRtt
        );
    }
}
