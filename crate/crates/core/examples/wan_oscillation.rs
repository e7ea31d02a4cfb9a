//! One user on the terrestrial path whose knee is exactly three packets.
//!
//! Prints every ack's round-trip time next to the window so the two-segment
//! delay law is visible in the raw trace.

use card::scenarios::{builtin_scenario, default_divergence_bound, summarize};
use card::sim::RecordKind;

fn main() -> card::Result<()> {
    let scenario = builtin_scenario("wan")?;
    let trace = card::run(&scenario)?;
    for rec in trace.records.iter().filter(|r| r.time < 400.0) {
        match rec.event_kind {
            RecordKind::Ack => println!(
                "{:>7.1}  ack       rtt {:>5}",
                rec.time,
                rec.rtt.unwrap_or_default()
            ),
            RecordKind::Decision => println!(
                "{:>7.1}  {:<9} window {:.3} ({} packets)",
                rec.time,
                rec.direction.map(|d| d.to_string()).unwrap_or_default(),
                rec.window_real,
                rec.window_int
            ),
            RecordKind::Send => {}
        }
    }
    let s = summarize(&trace, default_divergence_bound(trace.knee))?;
    println!("knee {}  band [{}, {}]", s.knee, s.band_min, s.band_max);
    Ok(())
}
