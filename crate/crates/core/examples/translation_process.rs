//! The union-of-translates process C_i = C_{i-1} ∪ (C_{i-1} + u_i).
//!
//! `cargo run --release --example translation_process`

use coverforge::covering::{Guards, SpaceBitmap};
use coverforge::experiments::{lemma2_conditional_check, lemma2_process, translation_identity};

fn main() -> coverforge::Result<()> {
    // a Hamming ball as the start set
    let start = SpaceBitmap::ball(12, 4);
    let trace = lemma2_process(&start, 20, 9);
    print!("{}", trace.to_csv());
    println!("padded sum of Y: {} of {}", trace.padded_y_sum(), trace.t);

    let id = translation_identity(&SpaceBitmap::ball(10, 3))?;
    println!(
        "\naverage |U_1| over all translations = {}, |U_0|^2 / 2^m = {}, equal: {}",
        id.average,
        id.expected,
        id.holds()
    );

    let r = lemma2_conditional_check(14, 40, 1000, 5, 2, &Guards::default())?;
    for key in ["y_frequency", "tail_frequency", "tail_bound", "exact_identity_holds"] {
        println!("{key}: {}", r.summary[key]);
    }
    Ok(())
}
