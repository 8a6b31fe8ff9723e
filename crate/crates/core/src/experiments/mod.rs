//! Seeded, reproducible experiment harnesses.
//!
//! Every experiment takes a master seed; trial `i` runs on its own stream
//! derived with [`trial_seed`](crate::seed::trial_seed). Trials execute on the
//! rayon pool and are reassembled in trial order, so reports do not depend on
//! thread count or scheduling.

mod codes;
mod coverage;
mod lemma2;
mod moments;
mod report;

use std::time::Instant;

use num_bigint::BigUint;
use num_traits::One;
use rayon::prelude::*;
use serde::Serialize;

use crate::covering::{BallSpec, Guards};
use crate::ensembles::Rows;
use crate::error::{Error, Result};
use crate::seed::trial_seed;

pub use codes::{
    concat_radius_report, direct_sum_radius_check, gv_check, quasicyclic_experiment,
    varshamov_threshold,
};
pub use coverage::{lemma1_trial, sweep, theorem1_trial};
pub use lemma2::{
    lemma2_conditional_check, lemma2_process, translation_identity, TranslationIdentity,
    TranslationTrace, DEFAULT_EXACT_STARTS, EXACT_PATH_MAX_DIM,
};
pub use moments::{
    collision_pair_count, collision_pairs_total, intersection_count, intersection_distribution,
    second_moment_check, IntersectionDistribution, COLLISION_MAX_DIM,
};
pub use report::{records_csv, ExperimentReport, ReportParams, Timings};

/// Runs `trial(index, seed)` for every trial in parallel and returns the
/// results in index order.
pub(crate) fn run_trials<T, F>(trials: usize, master_seed: u64, trial: F) -> Result<Vec<T>>
where
    T: Send,
    F: Fn(usize, u64) -> Result<T> + Sync,
{
    (0..trials)
        .into_par_iter()
        .map(|i| trial(i, trial_seed(master_seed, i as u64)))
        .collect()
}

/// The Hamming ball `A ⊂ F_2^{2n}` of volume at least `n³·2ⁿ`.
#[derive(Clone, Debug, Serialize)]
pub struct LemmaBall {
    pub ball: BallSpec,
    /// `n³·2ⁿ ≥ 2^{2n}`: the ball is the whole space.
    pub degenerate: bool,
    /// The radius exceeds `n/2`.
    pub radius_exceeds_half: bool,
}

impl LemmaBall {
    pub fn for_inner_dimension(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::invalid("inner dimension must be positive"));
        }
        let m = 2 * n;
        let space = BigUint::one() << m;
        let target = BigUint::from(n).pow(3) << n;
        let degenerate = target >= space;
        let ball = BallSpec::for_volume(m, target.min(space))?;
        let radius_exceeds_half = 2 * ball.radius > n;
        Ok(LemmaBall {
            ball,
            degenerate,
            radius_exceeds_half,
        })
    }

    pub fn radius(&self) -> usize {
        self.ball.radius
    }

    pub fn target_string(&self) -> String {
        self.ball
            .target_volume
            .as_ref()
            .map(|v| v.to_string())
            .unwrap_or_default()
    }
}

pub(crate) fn check_pair_dim(n: usize, guards: &Guards) -> Result<()> {
    guards.check_bitmap(2 * n)
}

pub(crate) struct Stopwatch(Instant);

impl Stopwatch {
    pub(crate) fn start() -> Self {
        Stopwatch(Instant::now())
    }

    pub(crate) fn finish(self, report: &mut ExperimentReport) {
        report.timings.total = self.0.elapsed();
    }
}

pub(crate) fn mean(xs: impl IntoIterator<Item = f64>) -> Option<f64> {
    let (sum, count) = xs.into_iter().fold((0.0, 0usize), |(s, c), x| (s + x, c + 1));
    (count > 0).then(|| sum / count as f64)
}

/// Unbiased sample variance.
pub(crate) fn sample_variance(xs: &[f64]) -> Option<f64> {
    if xs.len() < 2 {
        return None;
    }
    let mu = mean(xs.iter().copied())?;
    Some(xs.iter().map(|x| (x - mu) * (x - mu)).sum::<f64>() / (xs.len() - 1) as f64)
}

/// Re-runs the experiment named in `report` from its embedded parameters and
/// master seed.
pub fn rerun(report: &ExperimentReport, guards: &Guards) -> Result<ExperimentReport> {
    let p = &report.params;
    let seed = report.master_seed()?;
    let rows = || match (p.c, p.t) {
        (Some(c), _) => Ok(Rows::Constant(c)),
        (None, Some(t)) => Ok(Rows::Count(t)),
        (None, None) => Err(Error::Parse("report params lack c and t".into())),
    };
    let need = |v: Option<usize>, what: &str| {
        v.ok_or_else(|| Error::Parse(format!("report params lack {what}")))
    };
    match report.name.as_str() {
        "lemma1" => lemma1_trial(need(p.n, "n")?, p.trials, seed, guards),
        "moments" => second_moment_check(need(p.n, "n")?, p.trials, seed, guards),
        "lemma2" => lemma2_conditional_check(
            need(p.m, "m")?,
            need(p.t, "t")?,
            p.trials,
            need(p.exact_starts, "exact_starts")?,
            seed,
            guards,
        ),
        "theorem1" => theorem1_trial(
            need(p.n, "n")?,
            rows()?,
            p.trials,
            seed,
            guards,
        ),
        "directsum" => direct_sum_radius_check(p.trials, seed, guards),
        "gv" => gv_check(need(p.n, "n")?, p.trials, seed),
        "concat" => concat_radius_report(
            need(p.n, "n")?,
            rows()?,
            p.trials,
            seed,
            guards,
        ),
        "quasicyclic" => quasicyclic_experiment(need(p.n, "n")?, p.trials, seed, guards),
        "sweep" => sweep(
            &p.ns,
            rows()?,
            p.trials,
            seed,
            guards,
        ),
        other => Err(Error::Parse(format!("unknown experiment {other:?}"))),
    }
}
