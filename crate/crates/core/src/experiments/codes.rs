use num_bigint::BigUint;
use num_traits::One;
use rand::Rng;
use serde::Serialize;

use super::report::{record, ExperimentReport, ReportParams};
use super::{mean, run_trials, Stopwatch};
use crate::covering::{binomial_row, covering_radius, entropy_inverse, Engine, Guards};
use crate::ensembles::{
    concatenated_code, quasicyclic, random_bits, random_linear, random_matrix, sample,
    EnsembleParams, Rows,
};
use crate::error::{Error, Result};
use crate::linalg::LinearCode;
use crate::seed::rng_from_seed;

/// Largest component blocklength in [`direct_sum_radius_check`].
pub const DIRECT_SUM_MAX_PART: usize = 8;
/// Largest `n` for [`gv_check`] (`2ⁿ` codewords enumerated).
pub const GV_MAX_N: usize = 14;
/// Largest blocklength with an exact per-code radius in the code experiments.
pub const SMALL_CODE_MAX_DIM: usize = 16;

fn check_small(what: &str, m: usize) -> Result<()> {
    if m > SMALL_CODE_MAX_DIM {
        return Err(Error::guard(what, m as u64, SMALL_CODE_MAX_DIM as u64));
    }
    Ok(())
}

fn histogram(values: impl IntoIterator<Item = usize>, len: usize) -> Vec<u64> {
    let mut h = vec![0u64; len];
    for v in values {
        h[v] += 1;
    }
    h
}

#[derive(Serialize)]
struct DirectSumRecord {
    trial: usize,
    seed: String,
    m_a: usize,
    rank_a: usize,
    radius_a: usize,
    m_b: usize,
    rank_b: usize,
    radius_b: usize,
    radius_sum: usize,
    additive: bool,
}

/// Radius additivity on random pairs of small codes.
///
/// Components go through the coset-leader engine and the direct sum through
/// the bitmap engine, so each trial compares two independent computations.
pub fn direct_sum_radius_check(
    trials: usize,
    master_seed: u64,
    guards: &Guards,
) -> Result<ExperimentReport> {
    guards.check_bitmap(2 * DIRECT_SUM_MAX_PART)?;
    guards.check_syndrome(DIRECT_SUM_MAX_PART)?;
    let clock = Stopwatch::start();
    let records = run_trials(trials, master_seed, |trial, seed| {
        let mut rng = rng_from_seed(seed);
        let mut part = || {
            let m = rng.gen_range(1..=DIRECT_SUM_MAX_PART);
            let k = rng.gen_range(0..=m);
            LinearCode::new(random_matrix(&mut rng, k, m))
        };
        let a = part();
        let b = part();
        let ra = covering_radius(&a, Engine::CosetLeader, guards)?;
        let rb = covering_radius(&b, Engine::CosetLeader, guards)?;
        let rs = covering_radius(&a.direct_sum(&b), Engine::Bitmap, guards)?;
        Ok(DirectSumRecord {
            trial,
            seed: seed.to_string(),
            m_a: a.blocklength(),
            rank_a: a.dimension(),
            radius_a: ra,
            m_b: b.blocklength(),
            rank_b: b.dimension(),
            radius_b: rb,
            radius_sum: rs,
            additive: rs == ra + rb,
        })
    })?;
    let mut report = ExperimentReport::new(
        "directsum",
        ReportParams {
            trials,
            ..Default::default()
        },
        master_seed,
    );
    let violations = records.iter().filter(|r| !r.additive).count();
    report.summarize("violations", violations);
    report.summarize("all_additive", violations == 0);
    report.trials = records.iter().map(record).collect();
    clock.finish(&mut report);
    Ok(report)
}

/// Largest `d` with `Σ_{i ≤ d−2} C(N−1, i) < 2^{N−K}`, the distance a linear
/// `[N, K]` code is guaranteed to reach. Returns 1 when no `d ≥ 2` qualifies.
pub fn varshamov_threshold(blocklength: usize, dimension: usize) -> Result<usize> {
    if blocklength == 0 || dimension > blocklength {
        return Err(Error::invalid(format!(
            "need 0 < N and K <= N, got N = {blocklength}, K = {dimension}"
        )));
    }
    let bound = BigUint::one() << (blocklength - dimension);
    let row = binomial_row(blocklength - 1);
    let mut sum = BigUint::from(0u32);
    let mut d = 1;
    for c in &row {
        sum += c;
        if sum >= bound {
            break;
        }
        d += 1;
    }
    Ok(d.min(blocklength))
}

#[derive(Serialize)]
struct GvRecord {
    trial: usize,
    seed: String,
    alpha_hex: String,
    min_distance: usize,
    relative_distance: f64,
    meets_threshold: bool,
}

/// Exact minimum distances of sampled Wozencraft codes against the
/// finite-length Varshamov threshold at rate 1/2.
pub fn gv_check(n: usize, trials: usize, master_seed: u64) -> Result<ExperimentReport> {
    if n > GV_MAX_N {
        return Err(Error::guard("gv_check inner dimension (n)", n as u64, GV_MAX_N as u64));
    }
    let clock = Stopwatch::start();
    let params = EnsembleParams::new(n, 0)?;
    let threshold = varshamov_threshold(2 * n, n)?;
    let records = run_trials(trials, master_seed, |trial, seed| {
        let s = sample(&params, seed)?;
        let d = s.wozencraft().min_distance()?;
        Ok(GvRecord {
            trial,
            seed: seed.to_string(),
            alpha_hex: s.alpha.to_hex(),
            min_distance: d,
            relative_distance: d as f64 / (2 * n) as f64,
            meets_threshold: d >= threshold,
        })
    })?;
    let mut report = ExperimentReport::new(
        "gv",
        ReportParams {
            n: Some(n),
            trials,
            ..Default::default()
        },
        master_seed,
    );
    let meeting = records.iter().filter(|r| r.meets_threshold).count();
    let fraction = (trials > 0).then(|| meeting as f64 / trials as f64);
    let h_inv = entropy_inverse(0.5)?;
    let mean_rel = mean(records.iter().map(|r| r.relative_distance));
    report.summarize("varshamov_threshold", threshold);
    report.summarize("meeting_threshold", meeting);
    report.summarize("fraction_meeting_threshold", fraction);
    report.summarize("majority_meets_threshold", 2 * meeting > trials);
    report.summarize(
        "distance_histogram",
        histogram(records.iter().map(|r| r.min_distance), 2 * n + 1),
    );
    report.summarize("mean_relative_distance", mean_rel);
    report.summarize("entropy_inverse_half", h_inv);
    report.summarize("gap_to_entropy_inverse", mean_rel.map(|m| m - h_inv));
    report.trials = records.iter().map(record).collect();
    clock.finish(&mut report);
    Ok(report)
}

#[derive(Serialize)]
struct ConcatRecord {
    member: usize,
    seed: String,
    alpha_hex: String,
    rank: usize,
    radius: usize,
    relative_radius: f64,
    bad: bool,
}

/// Exact radii of `members` augmented-ensemble codes and the aggregate
/// radius of their concatenation.
pub fn concat_radius_report(
    inner_n: usize,
    rows: Rows,
    members: usize,
    master_seed: u64,
    guards: &Guards,
) -> Result<ExperimentReport> {
    check_small("concatenation member blocklength (2n)", 2 * inner_n)?;
    let clock = Stopwatch::start();
    let params = EnsembleParams::with_rows(inner_n, rows)?;
    let h_inv = entropy_inverse(0.5)?;
    let bad_threshold = h_inv + (inner_n as f64).log2() / inner_n as f64;
    let len = 2 * inner_n;

    let samples = run_trials(members, master_seed, |member, seed| {
        let s = sample(&params, seed)?;
        let code = s.augmented();
        let radius = covering_radius(&code, Engine::Auto, guards)?;
        let relative = radius as f64 / len as f64;
        let rank = code.dimension();
        Ok((
            code,
            ConcatRecord {
                member,
                seed: seed.to_string(),
                alpha_hex: s.alpha.to_hex(),
                rank,
                radius,
                relative_radius: relative,
                bad: relative > bad_threshold,
            },
        ))
    })?;

    let total_radius: usize = samples.iter().map(|(_, r)| r.radius).sum();
    let total_len = members * len;
    let direct = if members > 0 && total_len <= SMALL_CODE_MAX_DIM {
        let codes: Vec<LinearCode> = samples.iter().map(|(c, _)| c.clone()).collect();
        let whole = concatenated_code(&codes)?;
        Some(covering_radius(&whole, Engine::Bitmap, guards)? == total_radius)
    } else {
        None
    };
    let bad = samples.iter().filter(|(_, r)| r.bad).count();
    let relative = (members > 0).then(|| total_radius as f64 / total_len as f64);

    let mut report = ExperimentReport::new(
        "concat",
        ReportParams {
            n: Some(inner_n),
            t: Some(params.t),
            c: rows.constant(),
            trials: members,
            ..Default::default()
        },
        master_seed,
    );
    report.summarize("members", members);
    report.summarize("total_radius", total_radius);
    report.summarize("total_blocklength", total_len);
    report.summarize("relative_radius", relative);
    report.summarize("entropy_inverse_half", h_inv);
    report.summarize("gap_to_entropy_inverse", relative.map(|r| r - h_inv));
    report.summarize("bad_threshold", bad_threshold);
    report.summarize("bad_members", bad);
    report.summarize("bad_fraction", (members > 0).then(|| bad as f64 / members as f64));
    report.summarize("additivity_checked_directly", direct);
    report.trials = samples
        .iter()
.map(|(_, r)| record(r)).collect();
    clock.finish(&mut report);
    Ok(report)
}

#[derive(Serialize)]
struct QuasicyclicRecord {
    trial: usize,
    seed: String,
    first_row_hex: String,
    quasicyclic_rank: usize,
    quasicyclic_radius: usize,
    alpha_hex: String,
    wozencraft_radius: usize,
    random_linear_rank: usize,
    random_linear_radius: usize,
}

/// Covering radii of `[I | Q]` codes with uniformly random circulant `Q`,
/// beside Wozencraft and uniformly random `n × 2n` codes drawn from the same
/// per-trial seed.
pub fn quasicyclic_experiment(
    n: usize,
    trials: usize,
    master_seed: u64,
    guards: &Guards,
) -> Result<ExperimentReport> {
    check_small("quasicyclic blocklength (2n)", 2 * n)?;
    let clock = Stopwatch::start();
    let params = EnsembleParams::new(n, 0)?;
    let records = run_trials(trials, master_seed, |trial, seed| {
        let first_row = random_bits(&mut rng_from_seed(seed), n);
        let qc = quasicyclic(&first_row);
        let s = sample(&params, seed)?;
        let rl = random_linear(n, 2 * n, seed)?;
        Ok(QuasicyclicRecord {
            trial,
            seed: seed.to_string(),
            first_row_hex: first_row.to_hex(),
            quasicyclic_rank: qc.dimension(),
            quasicyclic_radius: covering_radius(&qc, Engine::Auto, guards)?,
            alpha_hex: s.alpha.to_hex(),
            wozencraft_radius: covering_radius(&s.wozencraft(), Engine::Auto, guards)?,
            random_linear_rank: rl.dimension(),
            random_linear_radius: covering_radius(&rl, Engine::Auto, guards)?,
        })
    })?;
    let mut report = ExperimentReport::new(
        "quasicyclic",
        ReportParams {
            n: Some(n),
            trials,
            ..Default::default()
        },
        master_seed,
    );
    let len = 2 * n + 1;
    report.summarize(
        "quasicyclic_histogram",
        histogram(records.iter().map(|r| r.quasicyclic_radius), len),
    );
    report.summarize(
        "wozencraft_histogram",
        histogram(records.iter().map(|r| r.wozencraft_radius), len),
    );
    report.summarize(
        "random_linear_histogram",
        histogram(records.iter().map(|r| r.random_linear_radius), len),
    );
    report.summarize(
        "quasicyclic_mean_radius",
        mean(records.iter().map(|r| r.quasicyclic_radius as f64)),
    );
    report.summarize(
        "wozencraft_mean_radius",
        mean(records.iter().map(|r| r.wozencraft_radius as f64)),
    );
    report.summarize(
        "random_linear_mean_radius",
        mean(records.iter().map(|r| r.random_linear_radius as f64)),
    );
    report.trials = records.iter().map(record).collect();
    clock.finish(&mut report);
    Ok(report)
}
