//! The satellite path's bottleneck speeds up threefold for the middle third
//! of the run and then reverts. The window follows the knee both ways.

use card::analytic::knee_capacity;
use card::scenarios::builtin_scenario;
use card::time::{to_f64, Time};

fn main() -> card::Result<()> {
    let scenario = builtin_scenario("van_reconfig")?;
    let trace = card::run(&scenario)?;
    let mut bounds: Vec<Time> = scenario.reconfigurations.iter().map(|r| r.time).collect();
    bounds.insert(0, Time::from_integer(0));
    bounds.push(trace.end_time);
    for pair in bounds.windows(2) {
        let (start, end) = (to_f64(pair[0]), to_f64(pair[1]));
        let knee = scenario.knee_at(pair[0])?;
        let windows: Vec<f64> = trace
            .decisions(0)
            .filter(|r| r.time >= start && r.time < end)
            .map(|r| r.window_real)
            .collect();
        let tail = &windows[windows.len() / 2..];
        let mean = tail.iter().sum::<f64>() / tail.len() as f64;
        let lo = tail.iter().cloned().fold(f64::INFINITY, f64::min);
        let hi = tail.iter().cloned().fold(0.0, f64::max);
        println!(
            "t in [{start:>6}, {end:>6})  knee {:>7.3}  settled window mean {mean:.3} range [{lo:.2}, {hi:.2}]",
            to_f64(knee)
        );
    }
    println!("original path knee {}", knee_capacity(&scenario.path));
    Ok(())
}
