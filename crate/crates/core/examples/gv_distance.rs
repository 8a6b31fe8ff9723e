//! Minimum distances of sampled Wozencraft codes against the Varshamov threshold.
//!
//! `cargo run --release --example gv_distance -- 10`

use coverforge::experiments::{gv_check, varshamov_threshold};

fn main() -> coverforge::Result<()> {
    let n: usize = std::env::args().nth(1).map_or(10, |s| s.parse().expect("n"));
    println!("threshold for [{}, {n}]: {}", 2 * n, varshamov_threshold(2 * n, n)?);
    let r = gv_check(n, 200, 5)?;
    println!("distance histogram: {}", r.summary["distance_histogram"]);
    println!("fraction meeting: {}", r.summary["fraction_meeting_threshold"]);
    Ok(())
}
