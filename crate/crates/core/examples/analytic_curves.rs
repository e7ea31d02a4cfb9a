//! Closed-form delay and power curves for both built-in paths, and the
//! selfish, social and known-n optima for a sample operating point.

use card::analytic::{
    deterministic_delay, knee_capacity, known_n_window_target, optimal_window_selfish,
    optimal_window_social, path_power, PowerParams,
};
use card::scenarios::{van_path, wan_path};
use card::time::{from_f64, to_f64};

fn main() -> card::Result<()> {
    let alpha = PowerParams::default();
    for (name, path) in [("van", van_path()), ("wan", wan_path())] {
        let knee = to_f64(knee_capacity(&path));
        println!("{name}: knee {knee}");
        println!("  window    delay    power");
        let mut w = 1.0;
        while w <= 2.0 * knee + 1.0 {
            let d = to_f64(deterministic_delay(&path, from_f64(w)?)?);
            println!("  {w:>6}  {d:>7.2}  {:.6}", path_power(&path, w, alpha)?);
            w += (knee / 6.0).max(0.5).round();
        }
    }

    // Three users on the sloped segment of the satellite path: D = 5W.
    let (delay, gradient) = (100.0, 5.0);
    println!("optima at D = {delay}, dD/dW = {gradient}:");
    println!(
        "  selfish       {:?}",
        optimal_window_selfish(delay, gradient, alpha)?
    );
    println!(
        "  social (others hold 4)  {:?}",
        optimal_window_social(delay, gradient, 4.0, alpha)?
    );
    println!(
        "  known n = 3   {:?}",
        known_n_window_target(3, delay, gradient, alpha)?
    );
    Ok(())
}
