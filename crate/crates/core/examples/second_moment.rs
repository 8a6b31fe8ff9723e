//! Mean and variance of |W' ∩ A| for a random coset W' of a Wozencraft code.
//!
//! `cargo run --release --example second_moment`

use coverforge::covering::{BallSpec, Guards};
use coverforge::experiments::{
    collision_pair_count, collision_pairs_total, intersection_distribution, second_moment_check,
};
use coverforge::numfmt::ratio_string;

fn main() -> coverforge::Result<()> {
    // exact law over all (alpha, b) at n = 4, ball radius 3
    let d = intersection_distribution(4, 3, (0, 0))?;
    println!("n=4 r=3 histogram {:?}", d.histogram);
    println!(
        "  mean {}  var {}  P(empty) {}  Var/E^2 {}",
        ratio_string(&d.mean()),
        ratio_string(&d.variance()),
        ratio_string(&d.p_empty()),
        d.chebyshev_bound().map(|b| ratio_string(&b)).unwrap_or_default()
    );

    for n in [4, 6, 8, 10] {
        let ball = BallSpec::new(2 * n, n / 2)?;
        println!(
            "n={n:>2} r={}: equal-weight pairs {}, all pairs {}",
            ball.radius,
            collision_pair_count(n, &ball)?,
            collision_pairs_total(n, &ball)?
        );
    }

    let r = second_moment_check(12, 1000, 3, &Guards::default())?;
    for key in ["expected_mean", "empirical_mean", "mean_relative_error", "empirical_variance"] {
        println!("{key}: {}", r.summary[key]);
    }
    Ok(())
}
