//! Every code family, built from one seed.
//!
//! `cargo run --example build_codes -- 6`

use coverforge::ensembles::{
    concatenated_code, puncture_wozencraft, quasicyclic, random_bits, random_linear, sample,
    truncate_wozencraft, EnsembleParams,
};
use coverforge::linalg::LinearCode;
use coverforge::seed::{rng_from_seed, DEFAULT_MASTER_SEED};

fn show(name: &str, code: &LinearCode) {
    println!(
        "{name:<12} [{}, {}] rate {:.3}",
        code.blocklength(),
        code.dimension(),
        code.rate()
    );
}

fn main() -> coverforge::Result<()> {
    let n: usize = std::env::args().nth(1).map_or(6, |s| s.parse().expect("n"));
    let seed = DEFAULT_MASTER_SEED;

    let params = EnsembleParams::with_constant(n, 3.0)?;
    let s = sample(&params, seed)?;
    println!("alpha = {}, t = {}", s.alpha.to_hex(), params.t);

    show("wozencraft", &s.wozencraft());
    show("augmented", &s.augmented());
    let k = n / 2;
    show("punctured", &puncture_wozencraft(&s.alpha, k)?);
    show("truncated", &truncate_wozencraft(&s.alpha, k)?);
    let row = random_bits(&mut rng_from_seed(seed), n);
    show("quasicyclic", &quasicyclic(&row));
    show("random", &random_linear(n, 2 * n, seed)?);
    show("concat x3", &concatenated_code(&[s.wozencraft(), s.wozencraft(), s.augmented()])?);

    println!("\nWozencraft generator [I | A]:");
    let g = s.wozencraft();
    for i in 0..g.generator().rows() {
        println!("  {}", g.generator().row(i).to_bit_string());
    }
    println!("\nas JSON: {}", serde_json::to_string(&g)?);
    Ok(())
}
