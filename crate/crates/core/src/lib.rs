//! Binary covering codes at desk scale.
//!
//! `coverforge` builds random code ensembles over GF(2) (the Wozencraft
//! ensemble `x ↦ (x, αx)`, its augmented, punctured and truncated variants,
//! quasicyclic `[I | Q]` codes, uniform random codes, direct sums), computes
//! exact covering radii and covered fractions with two independent engines,
//! and runs seeded experiments whose reports are reproducible byte for byte.
//!
//! ```
//! use coverforge::covering::{covering_radius, Engine, Guards};
//! use coverforge::ensembles::wozencraft;
//! use coverforge::gf2::FieldSpec;
//!
//! let field = FieldSpec::canonical(6)?;
//! let code = wozencraft(&field.element(0b100101)?);
//! let g = Guards::default();
//! let r = covering_radius(&code, Engine::Bitmap, &g)?;
//! assert_eq!(r, covering_radius(&code, Engine::CosetLeader, &g)?);
//! # Ok::<(), coverforge::Error>(())
//! ```
//!
//! Runnable examples live in `examples/`:
//!
//! | example | shows |
//! |---|---|
//! | `field_arithmetic` | GF(2^n) products, inverses, multiplication matrices |
//! | `build_codes` | every code family from one seed |
//! | `covering_radius` | both engines side by side, coset-leader weights |
//! | `covered_fraction` | exact `\|C + B_r\| / 2^m` per radius |
//! | `coverage_experiments` | uncovered fraction, full coverage, sweep over `n` |
//! | `second_moment` | mean/variance of `\|W′ ∩ A\|`, collision pairs |
//! | `translation_process` | `C_i = C_{i-1} ∪ (C_{i-1} + u_i)` traces and the exact identity |
//! | `concatenation` | direct-sum radius additivity, long concatenated codes |
//! | `gv_distance` | minimum distances vs the Varshamov threshold |
//! | `quasicyclic` | circulant codes vs Wozencraft and random baselines |
//! | `reproducible_reports` | save, reload and rerun a report |
//!
//! The `coverforge` binary wraps [`cli`].

pub mod cli;
pub mod covering;
pub mod ensembles;
pub mod error;
pub mod experiments;
pub mod gf2;
pub mod linalg;
pub mod numfmt;
pub mod seed;

pub use error::{Error, Result};
