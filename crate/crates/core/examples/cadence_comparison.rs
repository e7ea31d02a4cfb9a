//! Deciding every round trip versus every second round trip.
//!
//! A window change needs one round trip to reach the network and another
//! before its effect comes back in a delay sample. Deciding every round
//! trip therefore overshoots the knee by one increment; discarding every
//! other sample removes the overshoot at the cost of slower reaction.

use card::controller::Cadence;
use card::scenarios::{builtin_scenario, default_divergence_bound, summarize};

fn main() -> card::Result<()> {
    println!(
        "{:<16} {:<14} {:>8} {:>10}",
        "scenario", "cadence", "band", "converged"
    );
    for name in ["van", "wan", "van_two_users"] {
        for cadence in [Cadence::EveryRtt, Cadence::EveryTwoRtt] {
            let mut s = builtin_scenario(name)?;
            for u in &mut s.users {
                u.params.cadence = cadence;
            }
            let trace = card::run(&s)?;
            let summary = summarize(&trace, default_divergence_bound(trace.knee))?;
            println!(
                "{name:<16} {:<14} {:>8} {:>10?}",
                format!("{cadence:?}"),
                format!("[{},{}]", summary.band_min, summary.band_max),
                summary.convergence_epoch
            );
        }
    }
    Ok(())
}
