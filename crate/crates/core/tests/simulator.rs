use card::controller::ControllerParams;
use card::scenarios::{builtin_scenario, RunLength, Scenario, UserSpec};
use card::sim::{RecordKind, Simulation};
use card::time::Time;
use num_rational::Ratio;

fn pinned(windows: &[u32], length: i128) -> Scenario {
    let mut s = builtin_scenario("van").unwrap();
    s.users = windows
        .iter()
        .map(|&w| {
            let params = ControllerParams {
                w_min: f64::from(w),
                w_max: f64::from(w),
                ..Default::default()
            };
            UserSpec::new(params, f64::from(w))
        })
        .collect();
    s.run_length = RunLength::Time(Time::from_integer(length));
    s
}

/// Acks of `user` (or of everyone) with ack time in `[from, to)`.
fn acks_between(trace: &card::Trace, user: Option<usize>, from: i128, to: i128) -> usize {
    let (from, to) = (Time::from_integer(from), Time::from_integer(to));
    trace
        .rtts
        .iter()
        .filter(|r| user.is_none_or(|u| r.user == u))
        .filter(|r| r.ack_time >= from && r.ack_time < to)
        .count()
}

#[test]
fn packets_are_conserved_and_sends_respect_the_window() {
    for name in [
        "van",
        "van_two_users",
        "nine_users_congested",
        "van_reconfig",
    ] {
        let mut scenario = builtin_scenario(name).unwrap();
        scenario.run_length = RunLength::Time(Time::from_integer(8000));
        let mut sim = Simulation::new(&scenario).unwrap();
        let users = scenario.users.len();
        let mut prev: Vec<u32> = (0..users).map(|u| sim.in_flight(u)).collect();
        while sim.step().unwrap() {
            for (u, before) in prev.iter_mut().enumerate() {
                let now = sim.in_flight(u);
                // Windows shrink by draining, never by recalling packets.
                assert!(
                    now <= (*before).max(sim.controller(u).packets_target()),
                    "{name}"
                );
                *before = now;
            }
            for server in sim.servers() {
                assert!(
                    server.queue_len() == 0 || server.is_busy(),
                    "{name}: idle with a queue"
                );
            }
        }
        let in_flight: u64 = (0..users).map(|u| u64::from(sim.in_flight(u))).sum();
        let trace = sim.run_to_end().unwrap();
        assert_eq!(
            trace.packets_sent,
            trace.packets_acked + in_flight,
            "{name}"
        );
        assert_eq!(trace.rtts.len() as u64, trace.packets_acked);
        let sends = trace
            .records
            .iter()
            .filter(|r| r.event_kind == RecordKind::Send)
            .count();
        assert_eq!(sends as u64, trace.packets_sent);
    }
}

#[test]
fn one_timed_packet_per_decision() {
    let trace = card::run(&builtin_scenario("van_two_users").unwrap()).unwrap();
    for user in 0..2 {
        let timed = trace
            .rtts
            .iter()
            .filter(|r| r.user == user && r.timed)
            .count();
        assert_eq!(timed, trace.decisions(user).count());
    }
}

#[test]
fn throughput_is_window_over_delay() {
    // Below the knee D = 77.5, above it D = 5W; one user, 1000 time units.
    for (w, num, den) in [(6u32, 155, 2), (10, 155, 2), (20, 100, 1), (30, 150, 1)] {
        let trace = card::run(&pinned(&[w], 3000)).unwrap();
        let acks = acks_between(&trace, None, 2000, 3000) as f64;
        let expected = f64::from(w) * 1000.0 / (f64::from(num) / f64::from(den));
        assert!(
            (acks - expected).abs() <= 1.0,
            "W={w}: {acks} acks, expected {expected}"
        );
    }
}

#[test]
fn users_below_the_knee_see_the_minimum_delay() {
    let trace = card::run(&pinned(&[4, 5, 6], 3000)).unwrap();
    let late = Time::from_integer(1000);
    for r in trace.rtts.iter().filter(|r| r.ack_time > late) {
        assert_eq!(r.rtt, Ratio::new(155, 2));
    }
}

#[test]
fn users_above_the_knee_saturate_the_bottleneck() {
    let trace = card::run(&pinned(&[8, 8, 8], 4000)).unwrap();
    let total = acks_between(&trace, None, 2000, 4000) as f64;
    assert!((total - 2000.0 / 5.0).abs() <= 1.0, "{total}");
    // Each user's steady delay equals the total window times the bottleneck.
    let late = Time::from_integer(2000);
    for r in trace.rtts.iter().filter(|r| r.ack_time > late) {
        assert_eq!(r.rtt, Time::from_integer(120));
    }
}

#[test]
fn reconfiguration_moves_the_steady_delay() {
    // Pinned at 20 packets: D = 100 with the 5-unit bottleneck, and
    // 20 * 4 = 80 once the second-slowest server (4) is the bottleneck.
    let mut s = pinned(&[20], 6000);
    s.reconfigurations.push(card::ReconfigureEvent {
        time: Time::from_integer(3000),
        server_index: card::scenarios::VAN_BOTTLENECK,
        new_service_time: Ratio::new(5, 3),
    });
    let trace = card::run(&s).unwrap();
    let at = |from: i128, to: i128| -> Vec<Time> {
        trace
            .rtts
            .iter()
            .filter(|r| {
                r.ack_time >= Time::from_integer(from) && r.ack_time < Time::from_integer(to)
            })
            .map(|r| r.rtt)
            .collect()
    };
    assert!(at(2000, 3000).iter().all(|&d| d == Time::from_integer(100)));
    assert!(at(5000, 6000).iter().all(|&d| d == Time::from_integer(80)));
}

#[test]
fn packet_budget_stops_the_run() {
    let mut s = builtin_scenario("wan").unwrap();
    s.run_length = RunLength::Acks(250);
    let trace = card::run(&s).unwrap();
    assert_eq!(trace.packets_acked, 250);
}

#[test]
fn trace_options_filter_records() {
    let mut s = builtin_scenario("wan").unwrap();
    s.trace.sends = false;
    s.trace.acks = false;
    let trace = card::run(&s).unwrap();
    assert!(!trace.records.is_empty());
    assert!(trace
        .records
        .iter()
        .all(|r| r.event_kind == RecordKind::Decision));
}

#[test]
fn invalid_scenarios_fail_before_running() {
    let mut s = builtin_scenario("van").unwrap();
    s.run_length = RunLength::Time(Time::from_integer(-1));
    assert!(card::run(&s).is_err());
    let mut s = builtin_scenario("van").unwrap();
    s.reconfigurations.push(card::ReconfigureEvent {
        time: Time::from_integer(1),
        server_index: 42,
        new_service_time: Time::from_integer(1),
    });
    assert!(Simulation::new(&s).is_err());
}
