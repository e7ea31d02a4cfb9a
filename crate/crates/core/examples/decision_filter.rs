//! How much a majority vote over several noisy decisions helps, and the
//! knee of a balanced cycle of exponential servers.

use card::analytic::{decision_filter_accuracy, BalancedMm1};

fn main() -> card::Result<()> {
    println!("single-decision accuracy p vs. majority of 2k+1");
    print!("{:>5}", "p");
    for k in 0..=4 {
        print!("  k={k:<6}");
    }
    println!();
    for i in 5..=9 {
        let p = f64::from(i) / 10.0;
        print!("{p:>5.1}");
        for k in 0..=4 {
            print!("  {:<8.5}", decision_filter_accuracy(p, k)?);
        }
        println!();
    }

    let net = BalancedMm1::new(4, 1.0)?;
    println!(
        "balanced M/M/1, 4 hops: minimum delay {}, knee at total window {}, delay there {}",
        net.min_delay(),
        net.knee_total_window(),
        net.knee_delay()
    );
    Ok(())
}
