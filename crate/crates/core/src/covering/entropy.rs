use num_bigint::BigUint;
use num_traits::One;

use crate::error::{Error, Result};

use super::ball::ball_volume;

const INVERSE_TOLERANCE: f64 = 1e-12;

fn check_unit(name: &str, x: f64) -> Result<()> {
    if !(0.0..=1.0).contains(&x) {
        return Err(Error::invalid(format!("{name} = {x} outside [0, 1]")));
    }
    Ok(())
}

/// `h(x) = −x log2 x − (1−x) log2 (1−x)`, with `h(0) = h(1) = 0`.
pub fn binary_entropy(x: f64) -> Result<f64> {
    check_unit("entropy argument", x)?;
    if x == 0.0 || x == 1.0 {
        return Ok(0.0);
    }
    Ok(-x * x.log2() - (1.0 - x) * (1.0 - x).log2())
}

/// The preimage of `y` under `h` on `[0, 1/2]`, by bisection.
pub fn entropy_inverse(y: f64) -> Result<f64> {
    check_unit("entropy value", y)?;
    let (mut lo, mut hi) = (0.0f64, 0.5f64);
    while hi - lo > INVERSE_TOLERANCE {
        let mid = 0.5 * (lo + hi);
        if binary_entropy(mid)? < y {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(0.5 * (lo + hi))
}

/// Lower bound `1 − h(γ)` on the rate of a code with relative covering radius `γ`.
pub fn sphere_covering_rate(gamma: f64) -> Result<f64> {
    if !(0.0..=0.5).contains(&gamma) {
        return Err(Error::invalid(format!(
            "relative covering radius {gamma} outside [0, 1/2]"
        )));
    }
    Ok(1.0 - binary_entropy(gamma)?)
}

/// `2^dimension · |B_r| ≥ 2^m`: a code of that size with covering radius `r`
/// must satisfy this.
pub fn sphere_covering_holds(dimension: usize, m: usize, r: usize) -> Result<bool> {
    Ok((BigUint::one() << dimension) * ball_volume(m, r)? >= BigUint::one() << m)
}
