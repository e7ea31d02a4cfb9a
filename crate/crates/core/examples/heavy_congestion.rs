//! Nine users on a path that only holds three packets at the knee. Every
//! user keeps one or two packets in flight and nobody runs away.

use card::scenarios::{builtin_scenario, summarize};

fn main() -> card::Result<()> {
    let scenario = builtin_scenario("nine_users_congested")?;
    let trace = card::run(&scenario)?;
    let s = summarize(&trace, 30.0)?;
    for u in &s.users {
        println!(
            "user {}  band [{}, {}]  mean {:.3}  max {:.3}",
            u.user_id, u.band_min, u.band_max, u.mean_window, u.max_window
        );
    }
    println!(
        "total band [{}, {}]  max total {:.3}  diverged {}",
        s.band_min, s.band_max, s.max_total_window, s.diverged
    );
    Ok(())
}
