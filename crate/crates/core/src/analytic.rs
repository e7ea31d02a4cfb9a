//! Closed-form model of a deterministic closed network.
//!
//! A path is an ordered list of servers. Queueing servers serve one packet
//! at a time for a constant service time; fixed-delay stages (a satellite
//! hop, say) add a constant delay to every packet and never queue. With `W`
//! packets circulating, the round-trip delay is
//!
//! ```text
//! D(W) = max(sum of all service times, W * bottleneck service time)
//! ```
//!
//! where the bottleneck is the slowest *queueing* server. The two segments
//! meet at the knee, `W_knee = sum / bottleneck`, which is also where power
//! (`throughput^alpha / delay`) peaks.

use num_traits::Zero;

use crate::controller::Direction;
use crate::time::{self, Time};
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ServerKind {
    Queueing,
    FixedDelay,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ServerSpec {
    service_time: Time,
    kind: ServerKind,
}

impl ServerSpec {
    pub fn new(kind: ServerKind, service_time: Time) -> Result<Self> {
        if service_time <= Time::zero() {
            return Err(Error::domain(
                "service_time",
                time::to_f64(service_time),
                "must be positive",
            ));
        }
        Ok(ServerSpec { service_time, kind })
    }

    pub fn queueing(service_time: f64) -> Result<Self> {
        Self::new(ServerKind::Queueing, time::from_f64(service_time)?)
    }

    pub fn fixed_delay(service_time: f64) -> Result<Self> {
        Self::new(ServerKind::FixedDelay, time::from_f64(service_time)?)
    }

    pub fn service_time(&self) -> Time {
        self.service_time
    }

    pub fn kind(&self) -> ServerKind {
        self.kind
    }

    pub(crate) fn set_service_time(&mut self, service_time: Time) {
        self.service_time = service_time;
    }
}

/// The black box seen by a source: servers visited in order on each round
/// trip.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NetworkPath {
    servers: Vec<ServerSpec>,
}

impl NetworkPath {
    pub fn new(servers: Vec<ServerSpec>) -> Result<Self> {
        if !servers.iter().any(|s| s.kind == ServerKind::Queueing) {
            return Err(Error::Config(
                "a path needs at least one queueing server".into(),
            ));
        }
        Ok(NetworkPath { servers })
    }

    /// Queueing servers with the given service times followed by fixed-delay
    /// stages.
    pub fn from_times(queueing: &[f64], fixed: &[f64]) -> Result<Self> {
        let servers = queueing
            .iter()
            .map(|&t| ServerSpec::queueing(t))
            .chain(fixed.iter().map(|&t| ServerSpec::fixed_delay(t)))
            .collect::<Result<Vec<_>>>()?;
        Self::new(servers)
    }

    pub fn servers(&self) -> &[ServerSpec] {
        &self.servers
    }

    pub fn len(&self) -> usize {
        self.servers.len()
    }

    pub fn is_empty(&self) -> bool {
        self.servers.is_empty()
    }

    /// Minimum round-trip delay: every service time, fixed stages included.
    pub fn sum_service_times(&self) -> Time {
        self.servers.iter().map(|s| s.service_time).sum()
    }

    /// Slowest queueing server. Fixed-delay stages are excluded.
    pub fn bottleneck_time(&self) -> Time {
        self.servers
            .iter()
            .filter(|s| s.kind == ServerKind::Queueing)
            .map(|s| s.service_time)
            .max()
            .expect("validated path has a queueing server")
    }

    /// Returns a copy with server `index` running at a new service time.
    pub fn with_service_time(&self, index: usize, service_time: Time) -> Result<Self> {
        let mut servers = self.servers.clone();
        let server = servers.get_mut(index).ok_or_else(|| {
            Error::Config(format!(
                "server index {index} out of range for a path of {} servers",
                self.servers.len()
            ))
        })?;
        *server = ServerSpec::new(server.kind, service_time)?;
        Self::new(servers)
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PowerParams {
    alpha: f64,
}

impl PowerParams {
    pub fn new(alpha: f64) -> Result<Self> {
        if !(alpha > 0.0 && alpha.is_finite()) {
            return Err(Error::domain("alpha", alpha, "must be positive"));
        }
        Ok(PowerParams { alpha })
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    /// `alpha / (1 + alpha)`: the normalized delay gradient at the knee.
    pub fn knee_fraction(&self) -> f64 {
        self.alpha / (1.0 + self.alpha)
    }
}

impl Default for PowerParams {
    fn default() -> Self {
        PowerParams { alpha: 1.0 }
    }
}

/// One round-trip measurement: the number of packets outstanding when the
/// timed packet left, and the delay it saw.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DelaySample<T = f64> {
    pub window: T,
    pub delay: T,
}

impl<T> DelaySample<T> {
    pub fn new(window: T, delay: T) -> Self {
        DelaySample { window, delay }
    }
}

/// Result of an optimal-window computation. A zero gradient puts the optimum
/// at infinity, which only says "increase".
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum WindowTarget {
    Unbounded,
    Finite(f64),
}

impl WindowTarget {
    /// Only the sign of `target - window` carries information.
    pub fn direction_for(&self, window: f64) -> Direction {
        match *self {
            WindowTarget::Unbounded => Direction::Increase,
            WindowTarget::Finite(target) if window < target => Direction::Increase,
            WindowTarget::Finite(_) => Direction::Decrease,
        }
    }

    pub fn finite(&self) -> Option<f64> {
        match *self {
            WindowTarget::Unbounded => None,
            WindowTarget::Finite(w) => Some(w),
        }
    }
}

pub fn deterministic_delay(path: &NetworkPath, window: Time) -> Result<Time> {
    if window < Time::zero() {
        return Err(Error::domain(
            "window",
            time::to_f64(window),
            "must be nonnegative",
        ));
    }
    Ok(path
        .sum_service_times()
        .max(window * path.bottleneck_time()))
}

/// Packets in flight at the knee: sum of service times over the bottleneck
/// service time.
pub fn knee_capacity(path: &NetworkPath) -> Time {
    path.sum_service_times() / path.bottleneck_time()
}

pub fn throughput(window: f64, delay: f64) -> Result<f64> {
    if !(delay > 0.0) {
        return Err(Error::domain("delay", delay, "must be positive"));
    }
    Ok(window / delay)
}

pub fn power(throughput: f64, delay: f64, params: PowerParams) -> Result<f64> {
    if !(delay > 0.0) {
        return Err(Error::domain("delay", delay, "must be positive"));
    }
    if throughput < 0.0 {
        return Err(Error::domain(
            "throughput",
            throughput,
            "must be nonnegative",
        ));
    }
    Ok(throughput.powf(params.alpha) / delay)
}

/// Power of a path carrying `window` packets, from the deterministic delay law.
pub fn path_power(path: &NetworkPath, window: f64, params: PowerParams) -> Result<f64> {
    let delay = time::to_f64(deterministic_delay(path, time::from_f64(window)?)?);
    power(throughput(window, delay)?, delay, params)
}

/// Normalized delay gradient `(dD/dW) / (D/W)` estimated from two samples:
///
/// ```text
/// ((D - D_old) / (D + D_old)) * ((W + W_old) / (W - W_old))
/// ```
///
/// Dimensionless, so rescaling every delay leaves it unchanged.
pub fn ndg(current: DelaySample, previous: DelaySample) -> Result<f64> {
    if current.window == previous.window {
        return Err(Error::UndefinedGradient {
            window: current.window,
        });
    }
    for d in [current.delay, previous.delay] {
        if !(d > 0.0) {
            return Err(Error::domain("delay", d, "must be positive"));
        }
    }
    let delay_term = (current.delay - previous.delay) / (current.delay + previous.delay);
    let window_term = (current.window + previous.window) / (current.window - previous.window);
    Ok(delay_term * window_term)
}

/// Exact-arithmetic twin of [`ndg`].
pub fn ndg_exact(current: DelaySample<Time>, previous: DelaySample<Time>) -> Result<Time> {
    if current.window == previous.window {
        return Err(Error::UndefinedGradient {
            window: time::to_f64(current.window),
        });
    }
    for d in [current.delay, previous.delay] {
        if d <= Time::zero() {
            return Err(Error::domain("delay", time::to_f64(d), "must be positive"));
        }
    }
    Ok(
        (current.delay - previous.delay) / (current.delay + previous.delay)
            * ((current.window + previous.window) / (current.window - previous.window)),
    )
}

fn check_gradient_inputs(delay: f64, gradient: f64) -> Result<()> {
    if !(delay > 0.0) {
        return Err(Error::domain("delay", delay, "must be positive"));
    }
    if !(gradient >= 0.0) {
        return Err(Error::domain(
            "gradient",
            gradient,
            "delay must be nondecreasing in window",
        ));
    }
    Ok(())
}

/// Window that maximizes one user's own power: `(a/(1+a)) * D / (dD/dW)`.
pub fn optimal_window_selfish(
    delay: f64,
    gradient: f64,
    params: PowerParams,
) -> Result<WindowTarget> {
    check_gradient_inputs(delay, gradient)?;
    if gradient == 0.0 {
        return Ok(WindowTarget::Unbounded);
    }
    Ok(WindowTarget::Finite(
        params.knee_fraction() * delay / gradient,
    ))
}

/// Window that maximizes system power given everyone else's windows. May be
/// negative; callers clamp to their minimum window.
pub fn optimal_window_social(
    delay: f64,
    gradient: f64,
    sum_other_windows: f64,
    params: PowerParams,
) -> Result<WindowTarget> {
    if !(sum_other_windows >= 0.0) {
        return Err(Error::domain(
            "sum_other_windows",
            sum_other_windows,
            "must be nonnegative",
        ));
    }
    Ok(match optimal_window_selfish(delay, gradient, params)? {
        WindowTarget::Unbounded => WindowTarget::Unbounded,
        WindowTarget::Finite(w) => WindowTarget::Finite(w - sum_other_windows),
    })
}

/// Selfish optimum scaled by `1/(2n - 1)` for a path known to carry `n`
/// users.
pub fn known_n_window_target(
    users: u32,
    delay: f64,
    gradient: f64,
    params: PowerParams,
) -> Result<WindowTarget> {
    if users == 0 {
        return Err(Error::domain("n", 0.0, "must be at least 1"));
    }
    Ok(match optimal_window_selfish(delay, gradient, params)? {
        WindowTarget::Unbounded => WindowTarget::Unbounded,
        WindowTarget::Finite(w) => WindowTarget::Finite(w / f64::from(2 * users - 1)),
    })
}

/// Fixed point of every user applying [`known_n_window_target`] at once:
/// each holds `1/n` of the single-user optimum.
pub fn known_n_fixed_point(
    users: u32,
    delay: f64,
    gradient: f64,
    params: PowerParams,
) -> Result<WindowTarget> {
    if users == 0 {
        return Err(Error::domain("n", 0.0, "must be at least 1"));
    }
    Ok(match optimal_window_selfish(delay, gradient, params)? {
        WindowTarget::Unbounded => WindowTarget::Unbounded,
        WindowTarget::Finite(w) => WindowTarget::Finite(w / f64::from(users)),
    })
}

/// Cycle of `h + 1` identical exponential servers with mean service time
/// `tb`. The delay curve has no visible knee; power still peaks when the
/// total window equals `h`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BalancedMm1 {
    hops: u32,
    service_time: f64,
}

impl BalancedMm1 {
    pub fn new(hops: u32, service_time: f64) -> Result<Self> {
        if hops == 0 {
            return Err(Error::domain("h", 0.0, "must be at least 1"));
        }
        if !(service_time > 0.0) {
            return Err(Error::domain("tb", service_time, "must be positive"));
        }
        Ok(BalancedMm1 { hops, service_time })
    }

    /// Mean round-trip delay `(h + total_window) * tb`.
    pub fn delay(&self, total_window: f64) -> Result<f64> {
        if !(total_window >= 0.0) {
            return Err(Error::domain(
                "total_window",
                total_window,
                "must be nonnegative",
            ));
        }
        Ok((f64::from(self.hops) + total_window) * self.service_time)
    }

    pub fn min_delay(&self) -> f64 {
        f64::from(self.hops) * self.service_time
    }

    pub fn knee_total_window(&self) -> f64 {
        f64::from(self.hops)
    }

    pub fn knee_delay(&self) -> f64 {
        2.0 * f64::from(self.hops) * self.service_time
    }
}

pub fn balanced_mm1_delay(hops: u32, total_window: f64, service_time: f64) -> Result<f64> {
    BalancedMm1::new(hops, service_time)?.delay(total_window)
}

fn check_probability(p: f64) -> Result<()> {
    if !(0.0..=1.0).contains(&p) {
        return Err(Error::domain("p", p, "must be a probability in [0, 1]"));
    }
    Ok(())
}

fn binomial_term(trials: u64, successes: u64, p: f64) -> f64 {
    let coefficient = num_integer::binomial(trials, successes) as f64;
    coefficient * p.powi(successes as i32) * (1.0 - p).powi((trials - successes) as i32)
}

/// Probability that a majority of `2k + 1` independent single-sample
/// decisions, each right with probability `p`, is right.
pub fn decision_filter_accuracy(p: f64, k: u32) -> Result<f64> {
    check_probability(p)?;
    let trials = 2 * u64::from(k) + 1;
    Ok((u64::from(k) + 1..=trials)
        .map(|i| binomial_term(trials, i, p))
        .sum())
}

/// Complement of [`decision_filter_accuracy`]: the majority is wrong.
pub fn decision_filter_error(p: f64, k: u32) -> Result<f64> {
    check_probability(p)?;
    let trials = 2 * u64::from(k) + 1;
    Ok((0..=u64::from(k))
        .map(|i| binomial_term(trials, i, p))
        .sum())
}
