use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::RngCore;
use serde::Serialize;

use super::report::{record, ExperimentReport, ReportParams};
use super::{check_pair_dim, mean, run_trials, sample_variance, LemmaBall, Stopwatch};
use crate::covering::{ball_volume, binomial_row, BallSpec, Guards};
use crate::ensembles::{random_element, EnsembleParams};
use crate::error::{Error, Result};
use crate::gf2::FieldSpec;
use crate::numfmt::{big_f64, ratio_f64, ratio_string};
use crate::seed::{rng_from_seed, splitmix64};

/// Largest `2n` accepted by the collision-pair counters.
pub const COLLISION_MAX_DIM: usize = 24;
/// Largest `n` for full `(α, b)` enumeration.
pub const DISTRIBUTION_MAX_N: usize = 8;
const SPOT_CHECK_MAX_N: usize = 10;
const SPOT_CHECKS: usize = 3;
const SPOT_STREAM_TAG: u64 = 0x5350_4f54;

/// `|(⟨C_α⟩ + (0, b)) ∩ (B_r + u)|`: the number of `x` with
/// `wt(x + u₁) + wt(αx + b + u₂) ≤ r`, walking `x` in Gray-code order.
pub fn intersection_count(field: FieldSpec, alpha: u64, b: u64, u: (u64, u64), r: usize) -> u64 {
    let n = field.n();
    let images: Vec<u64> = (0..n).map(|j| field.mul_bits(alpha, 1 << j)).collect();
    let (u1, u2) = u;
    let hit = |x: u64, ax: u64| ((x ^ u1).count_ones() + (ax ^ b ^ u2).count_ones()) as usize <= r;
    let mut x = 0u64;
    let mut ax = 0u64;
    let mut count = hit(x, ax) as u64;
    for step in 1u64..field.order() {
        let j = step.trailing_zeros() as usize;
        x ^= 1 << j;
        ax ^= images[j];
        count += hit(x, ax) as u64;
    }
    count
}

/// Exact law of `|W′ ∩ A_u|` over all `2ⁿ · 2ⁿ` choices of `(α, b)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntersectionDistribution {
    pub n: usize,
    pub radius: usize,
    /// `histogram[k]` = number of `(α, b)` with `|W′ ∩ A_u| = k`.
    pub histogram: Vec<u64>,
}

impl IntersectionDistribution {
    pub fn pairs(&self) -> u64 {
        self.histogram.iter().sum()
    }

    fn moment(&self, power: u32) -> BigRational {
        let total: BigInt = self
            .histogram
            .iter()
            .enumerate()
            .map(|(k, &c)| BigInt::from(k).pow(power) * BigInt::from(c))
            .sum();
        BigRational::new(total, BigInt::from(self.pairs()))
    }

    pub fn mean(&self) -> BigRational {
        self.moment(1)
    }

    pub fn variance(&self) -> BigRational {
        let mu = self.mean();
        self.moment(2) - &mu * &mu
    }

    pub fn p_empty(&self) -> BigRational {
        BigRational::new(BigInt::from(self.histogram[0]), BigInt::from(self.pairs()))
    }

    /// `Var / E²`, undefined when the mean is zero.
    pub fn chebyshev_bound(&self) -> Option<BigRational> {
        let mu = self.mean();
        (!mu.is_zero()).then(|| self.variance() / (&mu * &mu))
    }
}

/// Enumerates every `(α, b)` for the ball of radius `r` around `u` in `F_2^{2n}`.
pub fn intersection_distribution(
    n: usize,
    r: usize,
    u: (u64, u64),
) -> Result<IntersectionDistribution> {
    if n > DISTRIBUTION_MAX_N {
        return Err(Error::guard(
            "exact intersection enumeration (n)",
            n as u64,
            DISTRIBUTION_MAX_N as u64,
        ));
    }
    if r > 2 * n {
        return Err(Error::invalid(format!("radius {r} exceeds 2n = {}", 2 * n)));
    }
    let field = FieldSpec::canonical(n as u32)?;
    let mut histogram = vec![0u64; (1usize << n) + 1];
    for alpha in 0..field.order() {
        for b in 0..field.order() {
            histogram[intersection_count(field, alpha, b, u, r) as usize] += 1;
        }
    }
    while histogram.len() > 1 && *histogram.last().unwrap() == 0 {
        histogram.pop();
    }
    Ok(IntersectionDistribution {
        n,
        radius: r,
        histogram,
    })
}

fn check_collision_args(n: usize, ball: &BallSpec) -> Result<()> {
    if 2 * n > COLLISION_MAX_DIM {
        return Err(Error::guard(
            "collision pair count (2n)",
            2 * n as u64,
            COLLISION_MAX_DIM as u64,
        ));
    }
    if ball.m != 2 * n {
        return Err(Error::DimensionMismatch {
            context: "collision ball dimension",
            expected: 2 * n,
            found: ball.m,
        });
    }
    Ok(())
}

/// `Σ_{j ≤ r} Σ_{i ≤ j} C(n,i)·C(n,j−i)·(C(n,j−i) − 1)`.
///
/// This counts ordered pairs `a₁ ≠ a₂` of the ball that share their first
/// half and whose second halves have equal weight. [`collision_pairs_total`]
/// drops the equal-weight restriction.
pub fn collision_pair_count(n: usize, ball: &BallSpec) -> Result<BigUint> {
    check_collision_args(n, ball)?;
    let c = binomial_row(n);
    let choose = |k: usize| c.get(k).cloned().unwrap_or_else(BigUint::zero);
    let mut total = BigUint::zero();
    for j in 0..=ball.radius {
        for i in 0..=j {
            let second = choose(j - i);
            if second.is_zero() {
                continue;
            }
            total += choose(i) * &second * (&second - 1u32);
        }
    }
    Ok(total)
}

/// `|{(a₁, a₂) ∈ A² : a₁ ≠ a₂, a₁⁽¹⁾ = a₂⁽¹⁾}|`
/// `= Σ_{i ≤ r} C(n,i) · V(r−i) · (V(r−i) − 1)` with `V(s) = |B_s^n|`.
pub fn collision_pairs_total(n: usize, ball: &BallSpec) -> Result<BigUint> {
    check_collision_args(n, ball)?;
    let c = binomial_row(n);
    let mut total = BigUint::zero();
    for (i, ci) in c.iter().enumerate().take(ball.radius.min(n) + 1) {
        let v = ball_volume(n, (ball.radius - i).min(n))?;
        total += ci * &v * (&v - 1u32);
    }
    Ok(total)
}

#[derive(Serialize)]
struct MomentRecord {
    sample: usize,
    seed: String,
    alpha_hex: String,
    b2_hex: String,
    intersection: u64,
}

#[derive(Serialize)]
struct SpotCheck {
    u_hex: String,
    mean: Option<f64>,
}

#[derive(Serialize)]
struct ExactMoments {
    mean: String,
    variance: String,
    p_empty: String,
    chebyshev_bound: Option<String>,
    chebyshev_holds: bool,
    mean_equals_volume_over_2n: bool,
}

/// Monte Carlo mean and variance of `|W′ ∩ A|` with `u = 0`, where
/// `W′ = ⟨C_α⟩ + (0, b)` for uniform `α` and `b`.
pub fn second_moment_check(
    n: usize,
    samples: usize,
    master_seed: u64,
    guards: &Guards,
) -> Result<ExperimentReport> {
    check_pair_dim(n, guards)?;
    let clock = Stopwatch::start();
    let ball = LemmaBall::for_inner_dimension(n)?;
    let r = ball.radius();
    let field = EnsembleParams::new(n, 0)?.field()?;

    let draws = run_trials(samples, master_seed, |sample, seed| {
        let mut rng = rng_from_seed(seed);
        let alpha = random_element(&mut rng, field).bits();
        let b2 = rng.next_u64() & field.mask();
        Ok(MomentRecord {
            sample,
            seed: seed.to_string(),
            alpha_hex: format!("{alpha:x}"),
            b2_hex: format!("{b2:x}"),
            intersection: intersection_count(field, alpha, b2, (0, 0), r),
        })
    })?;

    let volume = ball.ball.volume();
    let expected = BigRational::new(BigInt::from(volume.clone()), BigInt::one() << n);
    let values: Vec<f64> = draws.iter().map(|d| d.intersection as f64).collect();
    let emp_mean = mean(values.iter().copied());
    let emp_var = sample_variance(&values);
    let expected_f = ratio_f64(&expected);

    let mut report = ExperimentReport::new(
        "moments",
        ReportParams {
            n: Some(n),
            trials: samples,
            ball_target: Some(ball.target_string()),
            ball_radius: Some(r),
            ..Default::default()
        },
        master_seed,
    );
    report.summarize("radius", r);
    report.summarize("ball_volume", volume.to_string());
    report.summarize("degenerate_ball", ball.degenerate);
    report.summarize("radius_exceeds_half", ball.radius_exceeds_half);
    report.summarize("expected_mean", ratio_string(&expected));
    report.summarize("expected_mean_f64", expected_f);
    report.summarize("empirical_mean", emp_mean);
    report.summarize(
        "mean_relative_error",
        emp_mean.map(|m| (m - expected_f).abs() / expected_f),
    );
    report.summarize("empirical_variance", emp_var);
    // leading term of the variance estimate
    report.summarize("variance_estimate", expected_f);
    report.summarize(
        "empirical_p_empty",
        (samples > 0).then(|| draws.iter().filter(|d| d.intersection == 0).count() as f64 / samples as f64),
    );

    if 2 * n <= COLLISION_MAX_DIM {
        let s_conv = collision_pair_count(n, &ball.ball)?;
        let s_total = collision_pairs_total(n, &ball.ball)?;
        let two_n = BigUint::one() << n;
        let four_n = BigUint::one() << (2 * n);
        report.summarize("collision_pairs", s_conv.to_string());
        report.summarize("collision_pairs_all_weights", s_total.to_string());
        report.summarize(
            "collision_ratio",
            big_f64(&s_conv) / (big_f64(&two_n) * big_f64(&volume)),
        );
        // |A|/2^n − (|A| + |S|)/2^{2n}
        report.summarize(
            "variance_expression",
            big_f64(&volume) / big_f64(&two_n) - big_f64(&(&volume + &s_conv)) / big_f64(&four_n),
        );
    }

    if n <= 5 {
        let dist = intersection_distribution(n, r, (0, 0))?;
        let bound = dist.chebyshev_bound();
        let exact = ExactMoments {
            mean: ratio_string(&dist.mean()),
            variance: ratio_string(&dist.variance()),
            p_empty: ratio_string(&dist.p_empty()),
            chebyshev_holds: bound.as_ref().is_none_or(|b| dist.p_empty() <= *b),
            chebyshev_bound: bound.as_ref().map(ratio_string),
            mean_equals_volume_over_2n: dist.mean() == expected,
        };
        report.summarize("exact", exact);
    }

    if n <= SPOT_CHECK_MAX_N {
        let mut rng = rng_from_seed(splitmix64(master_seed ^ SPOT_STREAM_TAG));
        let checks: Vec<SpotCheck> = (0..SPOT_CHECKS)
            .map(|_| {
                let u1 = rng.next_u64() & field.mask();
                let u2 = rng.next_u64() & field.mask();
                let vals = draws.iter().map(|d| {
                    let a = u64::from_str_radix(&d.alpha_hex, 16).unwrap();
                    let b = u64::from_str_radix(&d.b2_hex, 16).unwrap();
                    intersection_count(field, a, b, (u1, u2), r) as f64
                });
                SpotCheck {
                    u_hex: format!("{:x}", u1 | u2 << n),
                    mean: mean(vals),
                }
            })
            .collect();
        report.summarize("shifted_ball_means", checks);
    }

    report.trials = draws.iter().map(record).collect();
    clock.finish(&mut report);
    Ok(report)
}
