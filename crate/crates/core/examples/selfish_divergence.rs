//! Nine users each maximizing their own power instead of checking the
//! delay gradient. The total window keeps climbing past any fixed bound.

use card::scenarios::{builtin_scenario, summarize, RunLength};
use card::time::Time;

fn main() -> card::Result<()> {
    let base = builtin_scenario("divergence_demo")?;
    println!(
        "{:>10}  {:>10}  diverged (B = 30)",
        "run length", "max total"
    );
    for length in [2_500, 5_000, 10_000, 20_000, 40_000] {
        let mut s = base.clone();
        s.run_length = RunLength::Time(Time::from_integer(length));
        s.trace.sends = false;
        s.trace.acks = false;
        let summary = summarize(&card::run(&s)?, 30.0)?;
        println!(
            "{length:>10}  {:>10.2}  {}",
            summary.max_total_window, summary.diverged
        );
    }
    Ok(())
}
