//! A user that starts far above the knee comes down by repeated
//! multiplicative decreases.

use card::scenarios::{builtin_scenario, default_divergence_bound, summarize};

fn main() -> card::Result<()> {
    let scenario = builtin_scenario("van_high_start")?;
    let trace = card::run(&scenario)?;
    for (i, rec) in trace.decisions(0).enumerate().take(24) {
        let dir = rec.direction.map(|d| d.to_string()).unwrap_or_default();
        println!("{:>3}  {dir:<8}  {:>7.3}", i + 1, rec.window_real);
    }
    let s = summarize(&trace, default_divergence_bound(trace.knee))?;
    println!(
        "band [{}, {}] after decision {:?}",
        s.band_min, s.band_max, s.convergence_epoch
    );
    Ok(())
}
