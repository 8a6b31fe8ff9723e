//! Covering radii of [I | Q] with Q circulant, next to Wozencraft and random codes.
//!
//! `cargo run --release --example quasicyclic -- 7`

use coverforge::covering::Guards;
use coverforge::experiments::quasicyclic_experiment;

fn main() -> coverforge::Result<()> {
    let n: usize = std::env::args().nth(1).map_or(7, |s| s.parse().expect("n"));
    let r = quasicyclic_experiment(n, 200, 6, &Guards::default())?;
    println!("radius  quasicyclic  wozencraft  random");
    let col = |k: &str, i: usize| r.summary[k][i].as_u64().unwrap();
    for i in 0..=2 * n {
        let row = [
            col("quasicyclic_histogram", i),
            col("wozencraft_histogram", i),
            col("random_linear_histogram", i),
        ];
        if row.iter().any(|&c| c > 0) {
            println!("{i:>6}  {:>11}  {:>10}  {:>6}", row[0], row[1], row[2]);
        }
    }
    Ok(())
}
