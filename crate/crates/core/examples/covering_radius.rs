//! Exact covering radii from the bitmap and coset-leader engines.
//!
//! `cargo run --release --example covering_radius`

use coverforge::covering::{coset_leader_profile, covering_radius, Engine, Guards};
use coverforge::ensembles::{random_linear, sample, EnsembleParams};
use coverforge::linalg::LinearCode;

fn main() -> coverforge::Result<()> {
    let guards = Guards::default();
    let mut codes = vec![
        ("zero code m=5", LinearCode::zero(5)),
        ("full space m=5", LinearCode::full(5)),
        ("repetition 3", LinearCode::repetition(3)),
        ("hamming [7,4]", LinearCode::hamming_7_4()),
    ];
    for n in [6, 8, 10] {
        let s = sample(&EnsembleParams::new(n, 0)?, 42)?;
        codes.push(("wozencraft", s.wozencraft()));
    }
    codes.push(("random [20,9]", random_linear(9, 20, 1)?));

    println!("{:<16} {:>4} {:>4} {:>7} {:>7}", "code", "m", "k", "bitmap", "coset");
    for (name, code) in &codes {
        let a = covering_radius(code, Engine::Bitmap, &guards)?;
        let b = covering_radius(code, Engine::CosetLeader, &guards)?;
        assert_eq!(a, b);
        println!("{name:<16} {:>4} {:>4} {a:>7} {b:>7}", code.blocklength(), code.dimension());
    }

    let profile = coset_leader_profile(&LinearCode::hamming_7_4(), &guards)?;
    print!("\ncoset leader weights of [7,4]:\n{}", profile.to_csv());
    Ok(())
}
