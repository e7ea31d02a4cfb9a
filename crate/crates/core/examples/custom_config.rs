//! Builds a scenario from TOML, runs it and writes the trace as CSV and the
//! summary as JSON into a temporary directory.

use card::config::{parse_scenario, summary_to_json, write_trace};
use card::scenarios::{default_divergence_bound, knee_of, summarize};

const SCENARIO: &str = r#"
name = "three_hop"

[[path]]
service_time = 1.0
[[path]]
service_time = 4.0
[[path]]
service_time = 2.0
[[path]]
service_time = 20.0
kind = "fixed_delay"

[[users]]
[[users]]
initial_window = 4.0
rule = { kind = "intercept", threshold_fraction = 0.5 }

[run]
length = 5000.0
"#;

fn main() -> card::Result<()> {
    let scenario = parse_scenario(SCENARIO)?;
    println!("{}: knee {:.3}", scenario.name, knee_of(&scenario));
    let trace = card::run(&scenario)?;

    let dir = std::env::temp_dir().join("card-custom-config");
    std::fs::create_dir_all(&dir)?;
    let csv = dir.join("trace.csv");
    write_trace(&trace.records, std::fs::File::create(&csv)?)?;
    let summary = summarize(&trace, default_divergence_bound(trace.knee))?;
    let json = summary_to_json(&summary)?;
    std::fs::write(dir.join("summary.json"), &json)?;
    println!(
        "{} records written to {}",
        trace.records.len(),
        csv.display()
    );
    println!("{json}");
    Ok(())
}
