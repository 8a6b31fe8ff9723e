//! Direct sums: radii add, and a long code from many small random members.
//!
//! `cargo run --release --example concatenation`

use coverforge::covering::{covering_radius, Engine, Guards};
use coverforge::ensembles::Rows;
use coverforge::experiments::{concat_radius_report, direct_sum_radius_check};
use coverforge::linalg::LinearCode;

fn main() -> coverforge::Result<()> {
    let g = Guards::default();
    let a = LinearCode::hamming_7_4();
    let b = LinearCode::repetition(3);
    let s = a.direct_sum(&b);
    println!(
        "r([7,4]) + r(rep3) = {} + {} = r(sum) = {}",
        covering_radius(&a, Engine::Auto, &g)?,
        covering_radius(&b, Engine::Auto, &g)?,
        covering_radius(&s, Engine::Bitmap, &g)?
    );

    let r = direct_sum_radius_check(50, 4, &g)?;
    println!("50 random pairs, violations: {}", r.summary["violations"]);

    let r = concat_radius_report(6, Rows::Count(2), 100, 4, &g)?;
    for key in ["total_radius", "total_blocklength", "relative_radius", "bad_fraction"] {
        println!("{key}: {}", r.summary[key]);
    }
    Ok(())
}
