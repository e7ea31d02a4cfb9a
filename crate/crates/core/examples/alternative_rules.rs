//! The same single-user satellite run under each decision rule.

use card::controller::DecisionRule;
use card::scenarios::{builtin_scenario, default_divergence_bound, summarize};

fn main() -> card::Result<()> {
    let rules = [
        DecisionRule::NdgZero,
        DecisionRule::intercept(),
        DecisionRule::intercept_gradient_ratio(),
        DecisionRule::DelayDoubling,
        DecisionRule::KnownN(1),
        DecisionRule::SelfishPower,
    ];
    for rule in rules {
        let scenario = builtin_scenario("van")?.with_rule(rule);
        let trace = card::run(&scenario)?;
        let s = summarize(&trace, default_divergence_bound(trace.knee))?;
        println!(
            "{:<50} band [{:>2}, {:>2}]",
            format!("{rule:?}"),
            s.band_min,
            s.band_max
        );
    }
    Ok(())
}
