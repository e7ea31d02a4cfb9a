//! Runs every built-in scenario and prints its summary line.

use card::scenarios::{builtin_scenario, default_divergence_bound, summarize, BUILTIN_NAMES};

fn main() -> card::Result<()> {
    println!(
        "{:<22} {:>6} {:>9} {:>9} {:>8} {:>8}  per-user bands",
        "scenario", "knee", "band", "converged", "fairness", "diverged"
    );
    for name in BUILTIN_NAMES {
        let scenario = builtin_scenario(name)?;
        let trace = card::run(&scenario)?;
        let s = summarize(&trace, default_divergence_bound(trace.knee))?;
        let bands: Vec<String> = s
            .users
            .iter()
            .map(|u| format!("[{},{}]", u.band_min, u.band_max))
            .collect();
        println!(
            "{name:<22} {:>6.3} {:>9} {:>9} {:>8.4} {:>8}  {}",
            s.knee,
            format!("[{},{}]", s.band_min, s.band_max),
            s.convergence_epoch.map_or("-".into(), |e| e.to_string()),
            s.fairness_index,
            s.diverged,
            bands.join(" ")
        );
    }
    Ok(())
}
