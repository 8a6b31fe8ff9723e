use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use rand::{Rng, RngCore};
use serde::{Deserialize, Serialize};

use super::report::{record, ExperimentReport, ReportParams};
use super::{run_trials, Stopwatch};
use crate::covering::{Guards, SpaceBitmap};
use crate::error::{Error, Result};
use crate::linalg::low_mask;
use crate::numfmt::ratio_string;
use crate::seed::{rng_from_seed, splitmix64, trial_seed, TrialRng};

/// Largest ambient dimension for the full-enumeration identity check.
pub const EXACT_PATH_MAX_DIM: usize = 16;
pub const DEFAULT_EXACT_STARTS: usize = 20;
const EXACT_STREAM_TAG: u64 = 0x4558_4143;
const STEP_COLUMNS: usize = 8;

/// One run of `C_i = C_{i-1} ∪ (C_{i-1} + u_i)`.
///
/// `sizes[i]` is `|U_i|`, the number of points outside `C_i`; `y_flags[i]`
/// records whether step `i + 1` at least squared the uncovered density
/// (up to a factor 2). The run stops early once nothing is left uncovered.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TranslationTrace {
    pub m: usize,
    pub t: usize,
    pub u_list: Vec<u64>,
    pub sizes: Vec<u64>,
    pub y_flags: Vec<bool>,
    pub seed: String,
}

impl TranslationTrace {
    pub fn steps(&self) -> usize {
        self.u_list.len()
    }

    pub fn final_uncovered(&self) -> u64 {
        *self.sizes.last().expect("sizes holds |U_0|")
    }

    pub fn y_sum(&self) -> usize {
        self.y_flags.iter().filter(|&&y| y).count()
    }

    /// `ΣY_i` over all `t` steps; steps skipped after `U` emptied count as 1.
    pub fn padded_y_sum(&self) -> usize {
        self.y_sum() + (self.t - self.steps())
    }

    /// `ΣY_i ≤ t/4`.
    pub fn tail_event(&self) -> bool {
        4 * self.padded_y_sum() <= self.t
    }

    /// `step,u_hex,uncovered,y`, with the initial state as step 0.
    pub fn to_csv(&self) -> String {
        let mut out = format!("step,u_hex,uncovered,y\n0,,{},\n", self.sizes[0]);
        for i in 0..self.steps() {
            out.push_str(&format!(
                "{},{:x},{},{}\n",
                i + 1,
                self.u_list[i],
                self.sizes[i + 1],
                self.y_flags[i] as u8
            ));
        }
        out
    }
}

fn y_flag(m: usize, before: u64, after: u64) -> bool {
    (after as u128) << m <= 2 * (before as u128) * (before as u128)
}

/// Runs up to `t` uniform translations starting from `start`.
pub fn lemma2_process(start: &SpaceBitmap, t: usize, seed: u64) -> TranslationTrace {
    let m = start.m();
    let mut rng = rng_from_seed(seed);
    let mut covered = start.clone();
    let mut sizes = vec![start.num_points() - start.count()];
    let mut u_list = Vec::new();
    let mut y_flags = Vec::new();
    while u_list.len() < t && *sizes.last().unwrap() > 0 {
        let u = rng.next_u64() & low_mask(m);
        covered = covered.union_translate(u);
        let before = *sizes.last().unwrap();
        let after = covered.num_points() - covered.count();
        u_list.push(u);
        y_flags.push(y_flag(m, before, after));
        sizes.push(after);
    }
    TranslationTrace {
        m,
        t,
        u_list,
        sizes,
        y_flags,
        seed: seed.to_string(),
    }
}

/// Full enumeration of `|U_1|` over every translation `u` of a start set.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TranslationIdentity {
    pub m: usize,
    pub uncovered: u64,
    pub sum_next_uncovered: BigUint,
    /// `Σ_u |U_1(u)| / 2^m`.
    pub average: BigRational,
    /// `|U_0|² / 2^m`.
    pub expected: BigRational,
}

impl TranslationIdentity {
    pub fn holds(&self) -> bool {
        self.average == self.expected
    }
}

pub fn translation_identity(start: &SpaceBitmap) -> Result<TranslationIdentity> {
    let m = start.m();
    if m > EXACT_PATH_MAX_DIM {
        return Err(Error::guard(
            "translation identity enumeration (m)",
            m as u64,
            EXACT_PATH_MAX_DIM as u64,
        ));
    }
    let uncovered = start.complement();
    let total: u64 = (0..start.num_points())
        .map(|u| uncovered.intersection_count(&uncovered.xor_translate(u)))
        .sum();
    let space = BigInt::from(start.num_points());
    let u0 = BigInt::from(uncovered.count());
    Ok(TranslationIdentity {
        m,
        uncovered: uncovered.count(),
        sum_next_uncovered: BigUint::from(total),
        average: BigRational::new(BigInt::from(total), space.clone()),
        expected: BigRational::new(&u0 * &u0, space),
    })
}

fn random_subset(rng: &mut TrialRng, m: usize, density: f64) -> SpaceBitmap {
    SpaceBitmap::from_points(m, (0..1u64 << m).filter(|_| rng.gen_bool(density)))
}

/// Each word drawn uniformly: every point independently with probability 1/2.
fn half_density_subset(rng: &mut TrialRng, m: usize) -> SpaceBitmap {
    let mut s = SpaceBitmap::empty(m);
    let mut words: Vec<u64> = (0..s.words().len()).map(|_| rng.next_u64()).collect();
    if m < 6 {
        words[0] &= low_mask(1 << m);
    }
    for (wi, w) in words.into_iter().enumerate() {
        let mut rest = w;
        while rest != 0 {
            s.insert(((wi as u64) << 6) | rest.trailing_zeros() as u64);
            rest &= rest - 1;
        }
    }
    s
}

#[derive(Serialize)]
struct TraceRecord {
    trial: usize,
    seed: String,
    start_uncovered: u64,
    steps: usize,
    final_uncovered: u64,
    y_sum: usize,
    padded_y_sum: usize,
    tail_event: bool,
}

#[derive(Serialize)]
struct ExactRecord {
    start: usize,
    seed: String,
    density: f64,
    uncovered: u64,
    average: String,
    expected: String,
    holds: bool,
}

#[derive(Serialize)]
struct StepFrequency {
    step: usize,
    traces: usize,
    y_ones: usize,
    frequency: f64,
}

/// Monte Carlo traces from half-density starts, plus exact checks of
/// `E[|U_{i+1}| | U_i] = |U_i|²/2^m` on `exact_starts` random starts.
pub fn lemma2_conditional_check(
    m: usize,
    t: usize,
    trials: usize,
    exact_starts: usize,
    master_seed: u64,
    guards: &Guards,
) -> Result<ExperimentReport> {
    guards.check_bitmap(m)?;
    if exact_starts > 0 && m > EXACT_PATH_MAX_DIM {
        return Err(Error::guard(
            "translation identity enumeration (m)",
            m as u64,
            EXACT_PATH_MAX_DIM as u64,
        ));
    }
    let clock = Stopwatch::start();

    let traces = run_trials(trials, master_seed, |_, seed| {
        let mut rng = rng_from_seed(seed);
        let start = half_density_subset(&mut rng, m);
        Ok(lemma2_process(&start, t, splitmix64(seed)))
    })?;

    let exact_master = splitmix64(master_seed ^ EXACT_STREAM_TAG);
    let exact = run_trials(exact_starts, exact_master, |j, seed| {
        let density = (j + 1) as f64 / (exact_starts + 1) as f64;
        let start = random_subset(&mut rng_from_seed(seed), m, density);
        let id = translation_identity(&start)?;
        Ok(ExactRecord {
            start: j,
            seed: seed.to_string(),
            density,
            uncovered: id.uncovered,
            average: ratio_string(&id.average),
            expected: ratio_string(&id.expected),
            holds: id.holds(),
        })
    })?;

    let mut report = ExperimentReport::new(
        "lemma2",
        ReportParams {
            m: Some(m),
            t: Some(t),
            trials,
            exact_starts: Some(exact_starts),
            ..Default::default()
        },
        master_seed,
    );

    let steps: usize = traces.iter().map(|tr| tr.steps()).sum();
    let ones: usize = traces.iter().map(|tr| tr.y_sum()).sum();
    let tails = traces.iter().filter(|tr| tr.tail_event()).count();
    let by_step: Vec<StepFrequency> = (0..t.min(STEP_COLUMNS))
        .map(|i| {
            let live: Vec<bool> = traces.iter().filter_map(|tr| tr.y_flags.get(i).copied()).collect();
            let y_ones = live.iter().filter(|&&y| y).count();
            StepFrequency {
                step: i + 1,
                traces: live.len(),
                y_ones,
                frequency: if live.is_empty() { 0.0 } else { y_ones as f64 / live.len() as f64 },
            }
        })
        .filter(|s| s.traces > 0)
        .collect();

    report.summarize("recorded_steps", steps);
    report.summarize("y_ones", ones);
    report.summarize("y_frequency", (steps > 0).then(|| ones as f64 / steps as f64));
    report.summarize("y_frequency_by_step", by_step);
    report.summarize("tail_events", tails);
    report.summarize("tail_frequency", (trials > 0).then(|| tails as f64 / trials as f64));
    report.summarize("tail_bound", (-(t as f64) / 32.0).exp());
    report.summarize(
        "fully_covered_traces",
        traces.iter().filter(|tr| tr.final_uncovered() == 0).count(),
    );
    report.summarize("exact_starts_checked", exact.len());
    report.summarize("exact_identity_holds", exact.iter().all(|e| e.holds));
    report.summarize("exact", exact.iter().map(record).collect::<Vec<_>>());

    report.trials = traces
        .iter()
        .enumerate()
        .map(|(trial, tr)| {
            record(&TraceRecord {
                trial,
                seed: trial_seed(master_seed, trial as u64).to_string(),
                start_uncovered: tr.sizes[0],
                steps: tr.steps(),
                final_uncovered: tr.final_uncovered(),
                y_sum: tr.y_sum(),
                padded_y_sum: tr.padded_y_sum(),
                tail_event: tr.tail_event(),
            })
        })
        .collect();
    clock.finish(&mut report);
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::{prop_assert, prop_assert_eq, proptest};

    #[test]
    fn full_start_takes_no_steps() {
        let tr = lemma2_process(&SpaceBitmap::full(6), 10, 1);
        assert_eq!(tr.steps(), 0);
        assert_eq!(tr.sizes, vec![0]);
        assert_eq!(tr.padded_y_sum(), 10);
        assert_eq!(tr.to_csv(), "step,u_hex,uncovered,y\n0,,0,\n");
    }

    #[test]
    fn zero_steps_requested() {
        let tr = lemma2_process(&SpaceBitmap::singleton(5, 0), 0, 1);
        assert_eq!(tr.steps(), 0);
        assert_eq!(tr.sizes, vec![31]);
        assert!(tr.tail_event());
    }

    #[test]
    fn singleton_start_grows_at_most_doubly() {
        let m = 12;
        let tr = lemma2_process(&SpaceBitmap::singleton(m, 0), 10, 7);
        for (i, &s) in tr.sizes.iter().enumerate() {
            assert!(s >= (1 << m) - (1 << i));
        }
    }

    #[test]
    fn identity_on_192_point_start() {
        let mut rng = rng_from_seed(3);
        let mut pts: Vec<u64> = (0..256).collect();
        // first 192 of a seeded shuffle
        for i in (1..pts.len()).rev() {
            pts.swap(i, rng.gen_range(0..=i));
        }
        let start = SpaceBitmap::from_points(8, pts[..192].iter().copied());
        let id = translation_identity(&start).unwrap();
        assert_eq!(id.uncovered, 64);
        assert_eq!(id.expected, BigRational::from_integer(16.into()));
        assert!(id.holds());
    }

    #[test]
    fn identity_guard() {
        let e = translation_identity(&SpaceBitmap::empty(17)).unwrap_err();
        assert!(e.is_guard());
        let e = lemma2_conditional_check(17, 4, 1, 1, 0, &Guards::default()).unwrap_err();
        assert!(e.is_guard());
        assert!(lemma2_conditional_check(17, 4, 2, 0, 0, &Guards::default()).is_ok());
    }

    #[test]
    fn report_records_traces() {
        let r = lemma2_conditional_check(10, 12, 30, 3, 5, &Guards::default()).unwrap();
        assert_eq!(r.trials.len(), 30);
        assert_eq!(r.summary["exact_identity_holds"], serde_json::json!(true));
        assert_eq!(r.summary["exact"].as_array().unwrap().len(), 3);
    }

    proptest! {
        #[test]
        fn trace_invariants(m in 2usize..10, seed: u64, t in 0usize..12) {
            let mut rng = rng_from_seed(seed);
            let start = half_density_subset(&mut rng, m);
            let tr = lemma2_process(&start, t, seed);
            prop_assert_eq!(tr.sizes.len(), tr.steps() + 1);
            prop_assert!(tr.steps() <= t);
            for i in 0..tr.steps() {
                prop_assert!(tr.sizes[i + 1] <= tr.sizes[i]);
                // x stays uncovered only if x and x + u were both uncovered
                let covered_before = (1u64 << m) - tr.sizes[i];
                prop_assert!(tr.sizes[i + 1] + covered_before >= tr.sizes[i]);
                prop_assert_eq!(tr.y_flags[i], y_flag(m, tr.sizes[i], tr.sizes[i + 1]));
            }
        }

        #[test]
        fn identity_holds_for_random_starts(m in 1usize..8, seed: u64) {
            let start = half_density_subset(&mut rng_from_seed(seed), m);
            prop_assert!(translation_identity(&start).unwrap().holds());
        }
    }
}
