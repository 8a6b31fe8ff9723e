//! Reports are pure functions of (params, master seed): save, reload, rerun.
//!
//! `cargo run --release --example reproducible_reports`

use coverforge::covering::Guards;
use coverforge::ensembles::Rows;
use coverforge::experiments::{rerun, theorem1_trial, ExperimentReport};

fn main() -> coverforge::Result<()> {
    let g = Guards::default();
    let report = theorem1_trial(10, Rows::Constant(2.0), 40, 0xC0FFEE, &g)?;
    let json = report.to_json();

    let saved: ExperimentReport = serde_json::from_str(&json)?;
    let again = rerun(&saved, &g)?;
    assert_eq!(again.to_json(), json);
    println!("rerun reproduced {} bytes exactly", json.len());

    print!("\n{}", report.summary_csv());
    println!("\nfirst trials:");
    for line in report.trials_csv().lines().take(4) {
        println!("  {line}");
    }
    Ok(())
}
