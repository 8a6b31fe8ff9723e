//! Covered fraction |C + B_r| / 2^m as an exact rational, radius by radius.
//!
//! `cargo run --release --example covered_fraction -- 10`

use coverforge::covering::{covered_fraction, sphere_covering_holds, BallSpec, Engine, Guards};
use coverforge::ensembles::{sample, EnsembleParams};
use coverforge::numfmt::{ratio_f64, ratio_string};

fn main() -> coverforge::Result<()> {
    let n: usize = std::env::args().nth(1).map_or(10, |s| s.parse().expect("n"));
    let guards = Guards::default();
    let s = sample(&EnsembleParams::with_constant(n, 3.0)?, 7)?;
    let code = s.augmented();
    let m = code.blocklength();
    println!("augmented code [{m}, {}], alpha = {}", code.dimension(), s.alpha.to_hex());

    for r in 0..=m {
        let ball = BallSpec::new(m, r)?;
        let f = covered_fraction(&code, &ball, Engine::Auto, &guards)?;
        let bound = sphere_covering_holds(code.dimension(), m, r)?;
        println!("r = {r:>2}  |B_r| = {:>8}  covered = {:<24} {:.6}  sphere bound ok: {bound}",
            ball.volume().to_string(), ratio_string(&f), ratio_f64(&f));
        if ratio_f64(&f) == 1.0 {
            break;
        }
    }

    // a ball chosen by volume: smallest radius reaching n^3 * 2^n
    let target = num_bigint::BigUint::from(n).pow(3) << n;
    let ball = BallSpec::for_volume(m, target.min(num_bigint::BigUint::from(1u8) << m))?;
    println!("volume-chosen ball: {}", serde_json::to_string(&ball)?);
    Ok(())
}
