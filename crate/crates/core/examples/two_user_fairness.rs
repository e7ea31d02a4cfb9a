//! Two users share the satellite path, both starting at the minimum window.
//! Each keeps about half of the knee and the total tracks the knee.

use card::scenarios::{builtin_scenario, default_divergence_bound, summarize};

fn main() -> card::Result<()> {
    let scenario = builtin_scenario("van_two_users")?;
    let trace = card::run(&scenario)?;
    let a: Vec<f64> = trace.decisions(0).map(|r| r.window_real).collect();
    let b: Vec<f64> = trace.decisions(1).map(|r| r.window_real).collect();
    println!("decision   user 0   user 1    total");
    for (i, (x, y)) in a.iter().zip(&b).enumerate().take(40) {
        println!("{:>8}  {x:>7.3}  {y:>7.3}  {:>7.3}", i + 1, x + y);
    }
    let s = summarize(&trace, default_divergence_bound(trace.knee))?;
    for u in &s.users {
        println!(
            "user {} band [{}, {}] mean {:.3}",
            u.user_id, u.band_min, u.band_max, u.mean_window
        );
    }
    println!(
        "total band [{}, {}]  fairness {:.4}",
        s.band_min, s.band_max, s.fairness_index
    );
    Ok(())
}
