use card::analytic::{NetworkPath, ServerKind, ServerSpec};
use card::config::{parse_scenario, read_trace, scenario_to_toml, trace_to_string};
use card::controller::{Cadence, ControllerParams, DecisionRule};
use card::scenarios::{
    builtin_scenario, RunLength, Scenario, TraceOptions, UserSpec, BUILTIN_NAMES,
};
use card::time::Time;
use card::ReconfigureEvent;
use num_rational::Ratio;
use proptest::prelude::*;

fn quarter(n: u32) -> Time {
    Ratio::new(i128::from(n), 4)
}

fn rule() -> impl Strategy<Value = DecisionRule> {
    prop_oneof![
        Just(DecisionRule::NdgZero),
        (1u32..8).prop_map(|k| DecisionRule::Intercept {
            threshold_fraction: f64::from(k) / 8.0
        }),
        prop::option::of(1u32..40).prop_map(|r| DecisionRule::InterceptGradientRatio {
            ratio_threshold: r.map(f64::from)
        }),
        Just(DecisionRule::DelayDoubling),
        Just(DecisionRule::SelfishPower),
        (1u32..10).prop_map(DecisionRule::KnownN),
    ]
}

fn user() -> impl Strategy<Value = UserSpec> {
    (
        rule(),
        any::<bool>(),
        1u32..4,
        1u32..8,
        0u32..30,
        0u32..30,
        1u32..4,
    )
        .prop_map(|(rule, two, dw, c, lo, span, alpha)| {
            let w_min = 1.0 + f64::from(lo);
            let w_max = w_min + f64::from(span);
            let params = ControllerParams {
                delta_w: f64::from(dw),
                decrease_factor: f64::from(c) / 8.0,
                w_min,
                w_max,
                alpha: f64::from(alpha) / 2.0,
                rule,
                cadence: if two {
                    Cadence::EveryTwoRtt
                } else {
                    Cadence::EveryRtt
                },
            };
            UserSpec::new(params, w_max)
        })
}

fn scenario() -> impl Strategy<Value = Scenario> {
    (
        prop::collection::vec((1u32..40, any::<bool>()), 1..6),
        prop::collection::vec(user(), 1..4),
        prop::collection::vec((1u32..500, 1u32..40), 0..3),
        prop_oneof![
            (1u32..100_000).prop_map(|t| RunLength::Time(quarter(t))),
            (1u64..10_000).prop_map(RunLength::Acks),
        ],
        any::<(bool, bool, bool)>(),
    )
        .prop_map(
            |(servers, users, changes, run_length, (sends, acks, decisions))| {
                let mut specs: Vec<ServerSpec> = servers
                    .iter()
                    .map(|&(t, fixed)| {
                        let kind = if fixed {
                            ServerKind::FixedDelay
                        } else {
                            ServerKind::Queueing
                        };
                        ServerSpec::new(kind, quarter(t)).unwrap()
                    })
                    .collect();
                specs.push(ServerSpec::new(ServerKind::Queueing, quarter(4)).unwrap());
                let len = specs.len();
                let reconfigurations = changes
                    .iter()
                    .map(|&(at, t)| ReconfigureEvent {
                        time: Time::from_integer(i128::from(at)),
                        server_index: at as usize % len,
                        new_service_time: quarter(t),
                    })
                    .collect();
                Scenario {
                    name: "generated".into(),
                    path: NetworkPath::new(specs).unwrap(),
                    users,
                    reconfigurations,
                    run_length,
                    trace: TraceOptions {
                        sends,
                        acks,
                        decisions,
                    },
                }
            },
        )
}

proptest! {
    #[test]
    fn scenarios_survive_toml(s in scenario()) {
        s.validate().unwrap();
        let text = scenario_to_toml(&s).unwrap();
        prop_assert_eq!(parse_scenario(&text).unwrap(), s);
    }
}

#[test]
fn builtins_survive_toml() {
    for name in BUILTIN_NAMES {
        let s = builtin_scenario(name).unwrap();
        assert_eq!(
            parse_scenario(&scenario_to_toml(&s).unwrap()).unwrap(),
            s,
            "{name}"
        );
    }
}

#[test]
fn traces_survive_csv() {
    let mut s = builtin_scenario("van_two_users").unwrap();
    s.run_length = RunLength::Time(Time::from_integer(3000));
    let trace = card::run(&s).unwrap();
    let text = trace_to_string(&trace.records).unwrap();
    assert_eq!(read_trace(text.as_bytes()).unwrap(), trace.records);
}

#[test]
fn unknown_keys_are_rejected() {
    let text = scenario_to_toml(&builtin_scenario("wan").unwrap()).unwrap();
    assert!(parse_scenario(&text.replacen("[run]", "[run]\nspeed = 3", 1)).is_err());
}
