//! Uncovered fraction of Wozencraft codes and full coverage by the augmented
//! ensemble, with a sweep over n.
//!
//! `cargo run --release --example coverage_experiments`

use coverforge::covering::Guards;
use coverforge::ensembles::Rows;
use coverforge::experiments::{lemma1_trial, sweep, theorem1_trial};

fn main() -> coverforge::Result<()> {
    let guards = Guards::default();
    let seed = 1;

    let r = lemma1_trial(12, 50, seed, &guards)?;
    println!("lemma1 n=12: {}", serde_json::to_string(&r.summary)?);

    for n in [10, 12] {
        let r = theorem1_trial(n, Rows::Constant(3.0), 100, seed, &guards)?;
        println!(
            "theorem1 n={n}: failures {} of 100, radius {}, t {}  ({:.2?})",
            r.summary["failures"], r.summary["radius"], r.summary["t"], r.timings.total
        );
    }

    // the ball radius dwarfs the code's own covering radius here, so even one
    // appended row rarely leaves a gap
    let r = sweep(&[8, 10, 12], Rows::Count(1), 100, seed, &guards)?;
    print!("\nsweep with t = 1:\n{}", r.trials_csv());
    Ok(())
}
