use num_bigint::BigUint;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::numfmt;

/// `C(m, i)` for `i = 0..=m`.
pub fn binomial_row(m: usize) -> Vec<BigUint> {
    let mut row = Vec::with_capacity(m + 1);
    let mut c = BigUint::one();
    row.push(c.clone());
    for i in 0..m {
        c = c * BigUint::from(m - i) / BigUint::from(i + 1);
        row.push(c.clone());
    }
    row
}

pub fn binomial(m: usize, i: usize) -> BigUint {
    if i > m {
        BigUint::zero()
    } else {
        binomial_row(m).swap_remove(i)
    }
}

/// Cumulative volumes `|B_r|` for `r = 0..=m`.
pub fn ball_volumes(m: usize) -> Vec<BigUint> {
    let mut acc = BigUint::zero();
    binomial_row(m)
        .into_iter()
        .map(|c| {
            acc += c;
            acc.clone()
        })
        .collect()
}

/// `|B_r| = Σ_{i ≤ r} C(m, i)`.
pub fn ball_volume(m: usize, r: usize) -> Result<BigUint> {
    if r > m {
        return Err(Error::invalid(format!("ball radius {r} exceeds dimension {m}")));
    }
    Ok(ball_volumes(m).swap_remove(r))
}

/// Smallest `r` with `|B_r| ≥ target`, for `1 ≤ target ≤ 2^m`.
pub fn radius_for_volume(m: usize, target: &BigUint) -> Result<usize> {
    if target.is_zero() || *target > (BigUint::one() << m) {
        return Err(Error::invalid(format!(
            "ball volume target {target} outside 1..=2^{m}"
        )));
    }
    Ok(ball_volumes(m)
        .iter()
        .position(|v| v >= target)
        .expect("the full ball reaches every admissible target"))
}

/// A Hamming ball around the origin of `F_2^m`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BallSpec {
    pub m: usize,
    pub radius: usize,
    /// The volume this ball was sized for, when built by [`BallSpec::for_volume`].
    #[serde(with = "numfmt::opt_big_uint", default)]
    pub target_volume: Option<BigUint>,
}

impl BallSpec {
    pub fn new(m: usize, radius: usize) -> Result<Self> {
        if radius > m {
            return Err(Error::invalid(format!("ball radius {radius} exceeds dimension {m}")));
        }
        Ok(BallSpec {
            m,
            radius,
            target_volume: None,
        })
    }

    /// Smallest ball with volume at least `target`.
    pub fn for_volume(m: usize, target: BigUint) -> Result<Self> {
        let radius = radius_for_volume(m, &target)?;
        Ok(BallSpec {
            m,
            radius,
            target_volume: Some(target),
        })
    }

    pub fn volume(&self) -> BigUint {
        ball_volume(self.m, self.radius).expect("radius validated at construction")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn naive_volume(m: usize, r: usize) -> u64 {
        (0u64..1 << m).filter(|x| x.count_ones() as usize <= r).count() as u64
    }

    #[test]
    fn volume_examples() {
        assert_eq!(ball_volume(3, 1).unwrap(), BigUint::from(4u32));
        for m in 0..12 {
            assert_eq!(ball_volume(m, m).unwrap(), BigUint::one() << m);
            for r in 0..=m {
                assert_eq!(ball_volume(m, r).unwrap(), BigUint::from(naive_volume(m, r)));
            }
        }
        assert_eq!(ball_volume(24, 12).unwrap(), BigUint::from(9_740_686u32));
        assert!(ball_volume(3, 4).is_err());
    }

    #[test]
    fn radius_examples() {
        assert_eq!(radius_for_volume(10, &BigUint::one()).unwrap(), 0);
        assert_eq!(radius_for_volume(10, &(BigUint::one() << 10)).unwrap(), 10);
        // 12^3 * 2^12 = 7,077,888; |B_11| = 7,036,530 < target <= |B_12|
        let target = BigUint::from(12u32).pow(3) << 12;
        assert_eq!(target, BigUint::from(7_077_888u32));
        assert_eq!(ball_volume(24, 11).unwrap(), BigUint::from(7_036_530u32));
        assert_eq!(radius_for_volume(24, &target).unwrap(), 12);
        assert!(radius_for_volume(4, &BigUint::zero()).is_err());
        assert!(radius_for_volume(4, &BigUint::from(17u32)).is_err());
    }

    #[test]
    fn ball_spec_volume_invariant() {
        let b = BallSpec::for_volume(20, BigUint::from(1_024_000u32)).unwrap();
        assert_eq!(b.radius, 14);
        assert!(b.volume() >= BigUint::from(1_024_000u32));
        assert!(ball_volume(20, 13).unwrap() < BigUint::from(1_024_000u32));
        let json = serde_json::to_string(&b).unwrap();
        assert_eq!(json, r#"{"m":20,"radius":14,"target_volume":"1024000"}"#);
        assert_eq!(serde_json::from_str::<BallSpec>(&json).unwrap(), b);
    }

    #[test]
    fn binomial_edges() {
        assert_eq!(binomial(5, 6), BigUint::zero());
        assert_eq!(binomial(19, 3), BigUint::from(969u32));
        assert_eq!(binomial(0, 0), BigUint::one());
    }
}
