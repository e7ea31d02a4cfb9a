//! One user on the satellite path, starting at the minimum window.
//!
//! Prints the window after every decision and the run summary.

use card::scenarios::{builtin_scenario, default_divergence_bound, summarize};

fn main() -> card::Result<()> {
    let scenario = builtin_scenario("van")?;
    let trace = card::run(&scenario)?;
    println!("decision  window  packets  statistic");
    for (i, rec) in trace.decisions(0).enumerate().take(60) {
        println!(
            "{:>8}  {:>6.3}  {:>7}  {}",
            i + 1,
            rec.window_real,
            rec.window_int,
            rec.rule_statistic
                .map_or("-".to_string(), |s| format!("{s:.4}"))
        );
    }
    let summary = summarize(&trace, default_divergence_bound(trace.knee))?;
    println!(
        "knee {}  band [{}, {}]  converged after decision {:?}",
        summary.knee, summary.band_min, summary.band_max, summary.convergence_epoch
    );
    Ok(())
}
