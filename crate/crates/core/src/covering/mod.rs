//! Exact covering radii and covered fractions.
//!
//! Two independent engines answer the same questions:
//!
//! * **bitmap**: materialise the code as a `2^m`-bit indicator and grow it by
//!   one Hamming shell per round (`S + B_1`, `S + B_2`, ...);
//! * **coset leader**: breadth-first search over the `2^(m − rank)` syndromes,
//!   stepping by the parity-check columns. The depth of a syndrome is the
//!   weight of its coset leader.
//!
//! `|C + B_r| = 2^rank · #{syndromes with leader weight ≤ r}`, so both engines
//! yield the same exact rationals. Tests hold them to that.

mod ball;
mod bitmap;
mod coset;
mod entropy;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::One;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::LinearCode;

pub use ball::{ball_volume, ball_volumes, binomial, binomial_row, radius_for_volume, BallSpec};
pub use bitmap::{code_bitmap, SpaceBitmap, ABSOLUTE_MAX_DIM};
pub use coset::{coset_leader_profile, CosetLeaderProfile};
pub use entropy::{binary_entropy, entropy_inverse, sphere_covering_holds, sphere_covering_rate};

pub const DEFAULT_MAX_BITMAP_DIM: usize = 28;
pub const DEFAULT_MAX_SYNDROME_DIM: usize = 26;

/// Size limits for the two engines.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Guards {
    /// Largest ambient dimension `m` for a `2^m`-bit bitmap.
    pub max_bitmap_dim: usize,
    /// Largest redundancy `m − rank` for the syndrome table.
    pub max_syndrome_dim: usize,
}

impl Default for Guards {
    fn default() -> Self {
        Guards {
            max_bitmap_dim: DEFAULT_MAX_BITMAP_DIM,
            max_syndrome_dim: DEFAULT_MAX_SYNDROME_DIM,
        }
    }
}

impl Guards {
    pub fn check_bitmap(&self, m: usize) -> Result<()> {
        let limit = self.max_bitmap_dim.min(ABSOLUTE_MAX_DIM);
        if m > limit {
            return Err(Error::guard("bitmap dimension", m as u64, limit as u64));
        }
        Ok(())
    }

    pub fn check_syndrome(&self, redundancy: usize) -> Result<()> {
        if redundancy > self.max_syndrome_dim {
            return Err(Error::guard(
                "syndrome dimension",
                redundancy as u64,
                self.max_syndrome_dim as u64,
            ));
        }
        Ok(())
    }
}

/// Which exact algorithm to run.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(rename_all = "snake_case")]
pub enum Engine {
    /// Cheaper of the two that fits the guards.
    #[default]
    Auto,
    Bitmap,
    CosetLeader,
}

impl Engine {
    /// Resolves `Auto` for a concrete code.
    pub fn resolve(self, code: &LinearCode, guards: &Guards) -> Result<Engine> {
        let m = code.blocklength();
        let red = code.redundancy();
        let bitmap_ok = guards.check_bitmap(m).is_ok() && m <= 64;
        let coset_ok = guards.check_syndrome(red).is_ok() && red <= 40;
        match self {
            Engine::Bitmap | Engine::CosetLeader => Ok(self),
            Engine::Auto => {
                // BFS touches 2^red syndromes; the bitmap touches 2^m/64 words per shell
                if coset_ok && (!bitmap_ok || red + 3 <= m) {
                    Ok(Engine::CosetLeader)
                } else if bitmap_ok {
                    Ok(Engine::Bitmap)
                } else if coset_ok {
                    Ok(Engine::CosetLeader)
                } else {
                    Err(Error::GuardExceeded {
                        what: format!(
                            "covering computation (blocklength {m} > bitmap limit {} and redundancy {red} > syndrome limit {})",
                            guards.max_bitmap_dim, guards.max_syndrome_dim
                        ),
                        required: red as u64,
                        limit: guards.max_syndrome_dim as u64,
                    })
                }
            }
        }
    }
}

/// `|C + B_r|` as an exact integer.
pub fn covered_points(
    code: &LinearCode,
    radius: usize,
    engine: Engine,
    guards: &Guards,
) -> Result<BigUint> {
    let m = code.blocklength();
    if radius > m {
        return Err(Error::invalid(format!("radius {radius} exceeds blocklength {m}")));
    }
    match engine.resolve(code, guards)? {
        Engine::Bitmap => {
            let b = code_bitmap(code, guards)?.expand_ball(radius);
            Ok(BigUint::from(b.count()))
        }
        Engine::CosetLeader => {
            let p = coset_leader_profile(code, guards)?;
            Ok(BigUint::from(p.syndromes_within(radius)) << code.dimension())
        }
        Engine::Auto => unreachable!("resolved above"),
    }
}

/// `|C + B_r| / 2^m` in lowest terms.
pub fn covered_fraction(
    code: &LinearCode,
    ball: &BallSpec,
    engine: Engine,
    guards: &Guards,
) -> Result<BigRational> {
    if ball.m != code.blocklength() {
        return Err(Error::DimensionMismatch {
            context: "ball vs code blocklength",
            expected: code.blocklength(),
            found: ball.m,
        });
    }
    let covered = covered_points(code, ball.radius, engine, guards)?;
    Ok(BigRational::new(
        BigInt::from(covered),
        BigInt::one() << code.blocklength(),
    ))
}

/// Exact covering radius.
pub fn covering_radius(code: &LinearCode, engine: Engine, guards: &Guards) -> Result<usize> {
    match engine.resolve(code, guards)? {
        Engine::Bitmap => Ok(code_bitmap(code, guards)?
            .covering_radius()
            .expect("a code contains the origin")),
        Engine::CosetLeader => Ok(coset_leader_profile(code, guards)?.covering_radius()),
        Engine::Auto => unreachable!("resolved above"),
    }
}
