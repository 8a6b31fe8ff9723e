use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::One;
use serde::Serialize;

use super::report::{record, ExperimentReport, ReportParams};
use super::{check_pair_dim, mean, run_trials, LemmaBall, Stopwatch};
use crate::covering::{covered_points, entropy_inverse, Engine, Guards};
use crate::ensembles::{sample, EnsembleParams, Rows};
use crate::error::Result;
use crate::numfmt::{ratio_f64, ratio_string};

#[derive(Serialize)]
struct Lemma1Record {
    trial: usize,
    seed: String,
    alpha_hex: String,
    uncovered_points: String,
    uncovered_fraction: String,
    uncovered_fraction_f64: f64,
    at_least_one_over_n: bool,
}

/// Uncovered fraction of `⟨C_α⟩ + A` for uniformly random `α`.
pub fn lemma1_trial(
    n: usize,
    trials: usize,
    master_seed: u64,
    guards: &Guards,
) -> Result<ExperimentReport> {
    check_pair_dim(n, guards)?;
    let clock = Stopwatch::start();
    let ball = LemmaBall::for_inner_dimension(n)?;
    let params = EnsembleParams::new(n, 0)?;
    let space = BigUint::one() << (2 * n);

    let records = run_trials(trials, master_seed, |trial, seed| {
        let s = sample(&params, seed)?;
        let covered = covered_points(&s.wozencraft(), ball.radius(), Engine::Auto, guards)?;
        let uncovered = &space - covered;
        let frac = BigRational::new(BigInt::from(uncovered.clone()), BigInt::from(space.clone()));
        Ok(Lemma1Record {
            trial,
            seed: seed.to_string(),
            alpha_hex: s.alpha.to_hex(),
            uncovered_fraction_f64: ratio_f64(&frac),
            uncovered_fraction: ratio_string(&frac),
            at_least_one_over_n: &uncovered * BigUint::from(n) >= space,
            uncovered_points: uncovered.to_string(),
        })
    })?;

    let mut report = ExperimentReport::new(
        "lemma1",
        ReportParams {
            n: Some(n),
            trials,
            ball_target: Some(ball.target_string()),
            ball_radius: Some(ball.radius()),
            ..Default::default()
        },
        master_seed,
    );
    let bad = records.iter().filter(|r| r.at_least_one_over_n).count();
    report.summarize("radius", ball.radius());
    report.summarize("ball_volume", ball.ball.volume().to_string());
    report.summarize("degenerate_ball", ball.degenerate);
    report.summarize("radius_exceeds_half", ball.radius_exceeds_half);
    report.summarize(
        "mean_uncovered_fraction",
        mean(records.iter().map(|r| r.uncovered_fraction_f64)),
    );
    report.summarize(
        "max_uncovered_fraction",
        records
            .iter()
            .map(|r| r.uncovered_fraction_f64)
            .fold(None, |acc: Option<f64>, x| Some(acc.map_or(x, |a| a.max(x)))),
    );
    report.summarize("trials_uncovered_at_least_one_over_n", bad);
    report.summarize(
        "frequency_uncovered_at_least_one_over_n",
        (trials > 0).then(|| bad as f64 / trials as f64),
    );
    report.summarize("bound_one_over_n_squared", 1.0 / (n * n) as f64);
    report.trials = records.iter().map(record).collect();
    clock.finish(&mut report);
    Ok(report)
}

#[derive(Serialize)]
struct Theorem1Record {
    trial: usize,
    seed: String,
    alpha_hex: String,
    rank: usize,
    covered: bool,
    uncovered_points: String,
}

struct Theorem1Outcome {
    records: Vec<Theorem1Record>,
    ball: LemmaBall,
    t: usize,
}

fn theorem1_records(
    n: usize,
    rows: Rows,
    trials: usize,
    master_seed: u64,
    guards: &Guards,
) -> Result<Theorem1Outcome> {
    check_pair_dim(n, guards)?;
    let ball = LemmaBall::for_inner_dimension(n)?;
    let params = EnsembleParams::with_rows(n, rows)?;
    let space = BigUint::one() << (2 * n);
    let records = run_trials(trials, master_seed, |trial, seed| {
        let s = sample(&params, seed)?;
        let code = s.augmented();
        let covered = covered_points(&code, ball.radius(), Engine::Auto, guards)?;
        let uncovered = &space - covered;
        Ok(Theorem1Record {
            trial,
            seed: seed.to_string(),
            alpha_hex: s.alpha.to_hex(),
            rank: code.dimension(),
            covered: uncovered == BigUint::from(0u32),
            uncovered_points: uncovered.to_string(),
        })
    })?;
    Ok(Theorem1Outcome {
        records,
        ball,
        t: params.t,
    })
}

/// Exact full-coverage test of `⟨G_0⟩ + A` for the augmented ensemble.
pub fn theorem1_trial(
    n: usize,
    rows: Rows,
    trials: usize,
    master_seed: u64,
    guards: &Guards,
) -> Result<ExperimentReport> {
    let clock = Stopwatch::start();
    let out = theorem1_records(n, rows, trials, master_seed, guards)?;
    let mut report = ExperimentReport::new(
        "theorem1",
        ReportParams {
            n: Some(n),
            t: Some(out.t),
            c: rows.constant(),
            trials,
            ball_target: Some(out.ball.target_string()),
            ball_radius: Some(out.ball.radius()),
            ..Default::default()
        },
        master_seed,
    );
    let failures = out.records.iter().filter(|r| !r.covered).count();
    let r = out.ball.radius();
    report.summarize("t", out.t);
    report.summarize("radius", r);
    report.summarize("ball_volume", out.ball.ball.volume().to_string());
    report.summarize("degenerate_ball", out.ball.degenerate);
    report.summarize("radius_exceeds_half", out.ball.radius_exceeds_half);
    report.summarize("failures", failures);
    report.summarize(
        "failure_rate",
        (trials > 0).then(|| failures as f64 / trials as f64),
    );
    report.summarize("relative_radius", r as f64 / (2 * n) as f64);
    report.summarize("entropy_inverse_half", entropy_inverse(0.5)?);
    report.summarize("nominal_rate", (n + out.t) as f64 / (2 * n) as f64);
    report.summarize(
        "mean_effective_rate",
        mean(out.records.iter().map(|r| r.rank as f64 / (2 * n) as f64)),
    );
    report.trials = out.records.iter().map(record).collect();
    clock.finish(&mut report);
    Ok(report)
}

#[derive(Serialize)]
struct SweepRow {
    n: usize,
    t: usize,
    radius: usize,
    degenerate_ball: bool,
    trials: usize,
    failures: usize,
    failure_rate: Option<f64>,
}

/// [`theorem1_trial`] at each `n`, one summary row per `n`.
pub fn sweep(
    ns: &[usize],
    rows: Rows,
    trials: usize,
    master_seed: u64,
    guards: &Guards,
) -> Result<ExperimentReport> {
    let clock = Stopwatch::start();
    let mut table = Vec::with_capacity(ns.len());
    for &n in ns {
        let out = theorem1_records(n, rows, trials, master_seed, guards)?;
        let failures = out.records.iter().filter(|r| !r.covered).count();
        table.push(SweepRow {
            n,
            t: out.t,
            radius: out.ball.radius(),
            degenerate_ball: out.ball.degenerate,
            trials,
            failures,
            failure_rate: (trials > 0).then(|| failures as f64 / trials as f64),
        });
    }
    let mut report = ExperimentReport::new(
        "sweep",
        ReportParams {
            t: rows.count(),
            c: rows.constant(),
            trials,
            ns: ns.to_vec(),
            ..Default::default()
        },
        master_seed,
    );
    let nonincreasing = table.windows(2).all(|w| w[1].failures <= w[0].failures);
    report.summarize("failure_counts_nonincreasing", nonincreasing);
    report.trials = table.iter().map(record).collect();
    clock.finish(&mut report);
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::json;

    #[test]
    fn lemma1_zero_trials_is_valid() {
        let r = lemma1_trial(6, 0, 1, &Guards::default()).unwrap();
        assert!(r.trials.is_empty());
        assert_eq!(r.summary["mean_uncovered_fraction"], json!(null));
        serde_json::from_str::<serde_json::Value>(&r.to_json()).unwrap();
    }

    #[test]
    fn lemma1_records_are_consistent() {
        let r = lemma1_trial(10, 8, 3, &Guards::default()).unwrap();
        assert_eq!(r.trials.len(), 8);
        assert_eq!(r.summary["degenerate_ball"], json!(false));
        for t in &r.trials {
            let f = t["uncovered_fraction_f64"].as_f64().unwrap();
            assert!((0.0..1.0).contains(&f));
        }
    }

    #[test]
    fn theorem1_degenerate_regime_always_covers() {
        let r = theorem1_trial(6, Rows::Constant(3.0), 10, 9, &Guards::default()).unwrap();
        assert_eq!(r.summary["degenerate_ball"], json!(true));
        assert_eq!(r.summary["failures"], json!(0));
    }

    #[test]
    fn theorem1_full_rank_covers_at_radius_zero() {
        // with t >= n the stacked rows almost surely complete the rank
        let r = theorem1_trial(4, Rows::Count(20), 20, 2, &Guards::default()).unwrap();
        for t in &r.trials {
            if t["rank"] == json!(8) {
                assert_eq!(t["covered"], json!(true));
            }
        }
    }

    #[test]
    fn theorem1_rejects_oversized() {
        let g = Guards {
            max_bitmap_dim: 20,
            ..Guards::default()
        };
        assert!(theorem1_trial(12, Rows::default(), 1, 0, &g).unwrap_err().is_guard());
    }

    #[test]
    fn sweep_has_one_row_per_n() {
        let r = sweep(&[4, 5, 6], Rows::default(), 5, 1, &Guards::default()).unwrap();
        assert_eq!(r.trials.len(), 3);
        assert_eq!(r.trials[2]["n"], json!(6));
    }
}
