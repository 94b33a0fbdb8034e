//! Solvability probability: exact by enumeration at tiny scale, Monte Carlo
//! with Wilson intervals otherwise, bisection for the half-probability
//! pebble count, closed-form threshold evaluators, and the iterated product
//! inequality table for hypercubes.

use std::collections::BTreeMap;
use std::ops::ControlFlow;

use num_bigint::BigUint;
use num_rational::BigRational;
use num_traits::Zero;
use serde::Serialize;

use crate::config::{config_count, for_each_configuration, sample_uniform, Configuration};
use crate::error::{Error, Result};
use crate::grid::GridSpec;
use crate::rng::derive_stream;
use crate::solver::{is_solvable_exact, path_solvable_all, Verdict};

/// z for a two-sided 95% interval.
pub const WILSON_Z_95: f64 = 1.959963984540054;

/// Trial-doubling cap used by the bisection when an interval straddles 1/2.
pub const TRIAL_CAP: u64 = 1 << 20;

/// Wilson score interval for `successes` out of `trials`.
pub fn wilson_interval(successes: u64, trials: u64, z: f64) -> (f64, f64) {
    if trials == 0 {
        return (0.0, 1.0);
    }
    let n = trials as f64;
    let p = successes as f64 / n;
    let z2 = z * z;
    let denom = 1.0 + z2 / n;
    let center = p + z2 / (2.0 * n);
    let half = z * (p * (1.0 - p) / n + z2 / (4.0 * n * n)).sqrt();
    (
        ((center - half) / denom).max(0.0),
        ((center + half) / denom).min(1.0),
    )
}

/// Decision for one sampled configuration.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct TrialReport {
    pub solvable: bool,
    pub max_pile: u64,
    pub states_explored: u64,
    /// The solver ran out of states; the trial is excluded, not failed.
    pub budget_exceeded: bool,
}

/// Monte Carlo estimate of the probability that a uniform configuration of
/// `k` pebbles is solvable.
#[derive(Debug, Clone, PartialEq)]
pub struct McEstimate {
    pub k: u64,
    pub trials: u64,
    pub successes: u64,
    pub excluded: u64,
    pub p_hat: f64,
    pub ci_lo: f64,
    pub ci_hi: f64,
    pub max_pile_max: u64,
    pub max_pile_histogram: BTreeMap<u64, u64>,
    pub seed: u64,
    pub reports: Vec<TrialReport>,
}

/// Per-probe summary recorded by the bisection.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PerKStats {
    pub k: u64,
    pub trials: u64,
    pub successes: u64,
    pub excluded: u64,
    pub p_hat: f64,
    pub ci_lo: f64,
    pub ci_hi: f64,
    pub max_pile_max: u64,
}

/// Bracket on the half-probability pebble count: the interval (k_low, k_high]
/// contains the smallest k whose solvability probability reaches 1/2.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ThresholdEstimate {
    pub k_low: u64,
    pub k_high: u64,
    pub per_k: Vec<PerKStats>,
    pub seed: u64,
    /// Set when some probe hit the trial cap with its interval still
    /// straddling 1/2; the bracket may then be wider than one step.
    pub straddle: bool,
}

/// Exact fraction of the `C(N+k-1, k)` configurations of `k` pebbles that
/// are solvable, by full enumeration. `budget` caps both the number of
/// enumerated configurations and the per-query solver states.
pub fn exact_solvable_prob(g: &GridSpec, k: u64, budget: u64) -> Result<BigRational> {
    let total = config_count(g, k);
    if total > BigUint::from(budget) {
        return Err(Error::BudgetExceeded { limit: budget });
    }
    let mut solvable = BigUint::zero();
    let mut failure = None;
    for_each_configuration(g, k, |counts| {
        let c = Configuration::new(g, counts.to_vec()).expect("enumerated counts fit");
        match is_solvable_exact(g, &c, budget) {
            Ok(report) => {
                match report.verdict {
                    Verdict::Solvable => solvable += 1u32,
                    Verdict::Unsolvable => {}
                    Verdict::BudgetExceeded => {
                        failure = Some(Error::BudgetExceeded { limit: budget });
                        return ControlFlow::Break(());
                    }
                }
                ControlFlow::Continue(())
            }
            Err(e) => {
                failure = Some(e);
                ControlFlow::Break(())
            }
        }
    });
    if let Some(e) = failure {
        return Err(e);
    }
    Ok(BigRational::new(solvable.into(), total.into()))
}

fn decide_trial(g: &GridSpec, k: u64, trial_seed: u64, budget: u64) -> Result<TrialReport> {
    let c = sample_uniform(g, k, trial_seed);
    let max_pile = c.max_pile();
    if g.dim() == 1 {
        let solvable = path_solvable_all(g, &c)?.into_iter().all(|s| s);
        return Ok(TrialReport {
            solvable,
            max_pile,
            states_explored: 0,
            budget_exceeded: false,
        });
    }
    let report = is_solvable_exact(g, &c, budget)?;
    Ok(TrialReport {
        solvable: report.verdict == Verdict::Solvable,
        max_pile,
        states_explored: report.states_explored,
        budget_exceeded: report.verdict == Verdict::BudgetExceeded,
    })
}

/// Sample `trials` configurations of `k` pebbles and decide each one: the
/// one-dimensional criterion on paths, otherwise the exact solver behind its
/// weight-criteria fast paths.
///
/// Per-trial seeds are derived from `(seed, trial_index)`, so the outcome is
/// independent of `threads`.
pub fn mc_solvable_prob(
    g: &GridSpec,
    k: u64,
    trials: u64,
    seed: u64,
    budget: u64,
    threads: usize,
) -> Result<McEstimate> {
    if trials == 0 {
        return Err(Error::domain("at least one trial is required"));
    }
    let reports = run_trials(g, k, trials, seed, budget, threads.max(1))?;
    let mut successes = 0u64;
    let mut excluded = 0u64;
    let mut histogram = BTreeMap::new();
    for r in &reports {
        if r.budget_exceeded {
            excluded += 1;
        } else if r.solvable {
            successes += 1;
        }
        *histogram.entry(r.max_pile).or_insert(0u64) += 1;
    }
    let decided = trials - excluded;
    let p_hat = if decided == 0 {
        0.0
    } else {
        successes as f64 / decided as f64
    };
    let (ci_lo, ci_hi) = wilson_interval(successes, decided, WILSON_Z_95);
    Ok(McEstimate {
        k,
        trials,
        successes,
        excluded,
        p_hat,
        ci_lo,
        ci_hi,
        max_pile_max: histogram.keys().next_back().copied().unwrap_or(0),
        max_pile_histogram: histogram,
        seed,
        reports,
    })
}

fn run_trials(
    g: &GridSpec,
    k: u64,
    trials: u64,
    seed: u64,
    budget: u64,
    threads: usize,
) -> Result<Vec<TrialReport>> {
    if threads == 1 || trials < 2 {
        return (0..trials)
            .map(|i| decide_trial(g, k, derive_stream(seed, i), budget))
            .collect();
    }
    let threads = threads.min(trials as usize);
    let chunk = trials.div_ceil(threads as u64);
    let mut partials: Vec<Result<Vec<TrialReport>>> = Vec::new();
    std::thread::scope(|scope| {
        let handles: Vec<_> = (0..threads as u64)
            .map(|t| {
                let lo = t * chunk;
                let hi = ((t + 1) * chunk).min(trials);
                scope.spawn(move || {
                    (lo..hi)
                        .map(|i| decide_trial(g, k, derive_stream(seed, i), budget))
                        .collect::<Result<Vec<TrialReport>>>()
                })
            })
            .collect();
        for h in handles {
            partials.push(h.join().expect("trial thread panicked"));
        }
    });
    let mut out = Vec::with_capacity(trials as usize);
    for p in partials {
        out.extend(p?);
    }
    Ok(out)
}

enum Class {
    Below,
    Above,
    Straddle,
}

fn classify(
    g: &GridSpec,
    k: u64,
    base_trials: u64,
    seed: u64,
    budget: u64,
    threads: usize,
) -> Result<(Class, PerKStats)> {
    let k_seed = derive_stream(seed, k);
    let mut trials = base_trials.max(1);
    let mut attempt = 0u64;
    loop {
        let est = mc_solvable_prob(g, k, trials, derive_stream(k_seed, attempt), budget, threads)?;
        let stats = PerKStats {
            k,
            trials: est.trials,
            successes: est.successes,
            excluded: est.excluded,
            p_hat: est.p_hat,
            ci_lo: est.ci_lo,
            ci_hi: est.ci_hi,
            max_pile_max: est.max_pile_max,
        };
        if est.ci_hi < 0.5 {
            return Ok((Class::Below, stats));
        }
        if est.ci_lo > 0.5 {
            return Ok((Class::Above, stats));
        }
        if trials >= TRIAL_CAP {
            return Ok((Class::Straddle, stats));
        }
        trials = (trials * 2).min(TRIAL_CAP);
        attempt += 1;
    }
}

/// Bracket the half-probability pebble count by binary search on k.
///
/// A probe is classified only when its Wilson interval excludes 1/2,
/// doubling trials up to [`TRIAL_CAP`] otherwise; an unclassifiable probe
/// stops the refinement and flags the (wider) bracket.
pub fn phalf_bisect(
    g: &GridSpec,
    k_min: u64,
    k_max: u64,
    trials_per_k: u64,
    seed: u64,
    budget: u64,
    threads: usize,
) -> Result<ThresholdEstimate> {
    if k_min >= k_max {
        return Err(Error::domain(format!(
            "bracket requires k_min < k_max, got [{k_min}, {k_max}]"
        )));
    }
    let mut per_k = Vec::new();
    let mut straddle = false;

    let (lo_class, lo_stats) = classify(g, k_min, trials_per_k, seed, budget, threads)?;
    per_k.push(lo_stats);
    match lo_class {
        Class::Below => {}
        Class::Above => {
            return Err(Error::domain(format!(
                "solvability probability at k_min = {k_min} already exceeds 1/2; lower k_min"
            )));
        }
        Class::Straddle => straddle = true,
    }
    let (hi_class, hi_stats) = classify(g, k_max, trials_per_k, seed, budget, threads)?;
    per_k.push(hi_stats);
    match hi_class {
        Class::Above => {}
        Class::Below => {
            return Err(Error::domain(format!(
                "solvability probability at k_max = {k_max} stays below 1/2; raise k_max"
            )));
        }
        Class::Straddle => straddle = true,
    }

    let mut lo = k_min;
    let mut hi = k_max;
    while hi - lo > 1 {
        let mid = lo + (hi - lo) / 2;
        let (class, stats) = classify(g, mid, trials_per_k, seed, budget, threads)?;
        per_k.push(stats);
        match class {
            Class::Below => lo = mid,
            Class::Above => hi = mid,
            Class::Straddle => {
                straddle = true;
                break;
            }
        }
    }
    per_k.sort_by_key(|s| s.k);
    Ok(ThresholdEstimate {
        k_low: lo,
        k_high: hi,
        per_k,
        seed,
        straddle,
    })
}

/// Closed-form threshold shape for pebbling on the d-dimensional cube `[n]^d`
/// with per-axis costs `q`:
///
/// ```text
/// n^d exp( ((d+1)! ln n prod_i ln q_i / 2)^(1/(d+1)) - d lnln n / (d+1) + gamma )
/// ```
///
/// The additive constant the asymptotics leave open is exposed as `gamma`.
pub fn theorem1_value(n: u64, d: usize, q: &[u64], gamma: f64) -> Result<f64> {
    if n < 3 {
        return Err(Error::domain(format!("threshold shape needs n >= 3, got {n}")));
    }
    if d == 0 || q.len() != d {
        return Err(Error::DimensionMismatch {
            expected: d.max(1),
            got: q.len(),
        });
    }
    if let Some(&bad) = q.iter().find(|&&qi| qi < 2) {
        return Err(Error::domain(format!("costs must be at least 2, got {bad}")));
    }
    let nf = n as f64;
    let mut factorial = 1.0f64;
    for i in 2..=(d + 1) {
        factorial *= i as f64;
    }
    let prod_lnq: f64 = q.iter().map(|&qi| (qi as f64).ln()).product();
    let base = factorial * nf.ln() * prod_lnq / 2.0;
    // d = 1 is a square root; sqrt is the more precise evaluation there
    let root = if d == 1 {
        base.sqrt()
    } else {
        base.powf(1.0 / (d as f64 + 1.0))
    };
    let correction = (d as f64) * nf.ln().ln() / (d as f64 + 1.0);
    Ok(nf.powi(d as i32) * (root - correction + gamma).exp())
}

/// Path specialization of the threshold shape:
/// `n exp( sqrt(ln q ln n) - lnln n / 2 + delta )`.
pub fn theorem2_value(n: u64, q: u64, delta: f64) -> Result<f64> {
    if n < 3 {
        return Err(Error::domain(format!("threshold shape needs n >= 3, got {n}")));
    }
    if q < 2 {
        return Err(Error::domain(format!("cost must be at least 2, got {q}")));
    }
    let nf = n as f64;
    let root = ((q as f64).ln() * nf.ln()).sqrt();
    let correction = nf.ln().ln() / 2.0;
    Ok(nf * (root - correction + delta).exp())
}

/// One row of the iterated product-inequality table.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct GrahamRow {
    pub s: u32,
    /// log2 of the iterated upper bound `C^(2^s - 1) b^(2^s)`.
    pub log2_upper: f64,
    /// Exponent of the lower bound `2^((1 - 1/n0) 2^s n0)`.
    pub lower_exponent: f64,
    /// True when the upper bound falls strictly below the lower bound.
    pub contradiction: bool,
}

/// Iterate the product inequality `P(G1 x G2) <= C P(G1) P(G2)` up a tower
/// of hypercube doublings, starting from dimension `n0` with value `b`, and
/// compare in log2 space against the growth floor `2^((1 - 1/n0) 2^s n0)`.
pub fn graham_table(n0: u64, c: f64, b: f64, s_max: u32) -> Result<Vec<GrahamRow>> {
    if n0 == 0 {
        return Err(Error::domain("initial dimension must be at least 1"));
    }
    if !b.is_finite() || b <= 0.0 {
        return Err(Error::domain(format!("starting value must be positive, got {b}")));
    }
    if !c.is_finite() || c <= 0.0 {
        return Err(Error::domain(format!("product constant must be positive, got {c}")));
    }
    let mut rows = Vec::with_capacity(s_max as usize + 1);
    for s in 0..=s_max {
        let two_s = 2f64.powi(s as i32);
        let log2_upper = (two_s - 1.0) * c.log2() + two_s * b.log2();
        let lower_exponent = (1.0 - 1.0 / n0 as f64) * two_s * n0 as f64;
        rows.push(GrahamRow {
            s,
            log2_upper,
            lower_exponent,
            contradiction: log2_upper < lower_exponent,
        });
    }
    Ok(rows)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numeric::rational_to_f64;
    use crate::rng::Rng;

    fn rat(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn exact_probability_examples() {
        let p2 = GridSpec::path(2, 2).unwrap();
        assert_eq!(exact_solvable_prob(&p2, 1, 100_000).unwrap(), rat(0, 1));

        let p3 = GridSpec::path(3, 2).unwrap();
        assert_eq!(exact_solvable_prob(&p3, 2, 100_000).unwrap(), rat(1, 6));
        assert_eq!(exact_solvable_prob(&p3, 3, 100_000).unwrap(), rat(4, 5));

        assert!(matches!(
            exact_solvable_prob(&p3, 50, 100),
            Err(Error::BudgetExceeded { .. })
        ));
    }

    #[test]
    fn exact_probability_monotone_in_k() {
        for n in [2usize, 3, 4] {
            let g = GridSpec::path(n, 2).unwrap();
            let mut prev = BigRational::zero();
            for k in 0..=8u64 {
                let p = exact_solvable_prob(&g, k, 1_000_000).unwrap();
                assert!(p >= prev, "P{n} k={k}: {p} < {prev}");
                prev = p;
            }
        }
    }

    #[test]
    fn wilson_interval_sanity() {
        let (lo, hi) = wilson_interval(0, 100, WILSON_Z_95);
        assert!(lo.abs() < 1e-12);
        assert!(hi > 0.0 && hi < 0.05);
        let (lo, hi) = wilson_interval(100, 100, WILSON_Z_95);
        assert!(lo > 0.95 && hi == 1.0);
        let (lo, hi) = wilson_interval(50, 100, WILSON_Z_95);
        assert!(lo < 0.5 && hi > 0.5);
        assert!((lo - 0.40383).abs() < 1e-4, "wilson lower {lo}");
        assert!((hi - 0.59617).abs() < 1e-4, "wilson upper {hi}");
    }

    #[test]
    fn mc_examples() {
        let p3 = GridSpec::path(3, 2).unwrap();
        let est = mc_solvable_prob(&p3, 2, 100_000, 0xD1CE, 100_000, 1).unwrap();
        assert!((est.p_hat - 1.0 / 6.0).abs() < 0.01, "p_hat {}", est.p_hat);
        assert_eq!(est.excluded, 0);
        assert!(est.ci_lo <= est.p_hat && est.p_hat <= est.ci_hi);
        assert!(est.max_pile_max <= 2);

        let zero = mc_solvable_prob(&p3, 0, 1000, 7, 100_000, 1).unwrap();
        assert_eq!(zero.successes, 0);
        assert_eq!(zero.p_hat, 0.0);

        assert!(mc_solvable_prob(&p3, 2, 0, 7, 100_000, 1).is_err());
    }

    #[test]
    fn mc_is_deterministic_across_thread_counts() {
        let g = GridSpec::new(vec![3, 3], vec![2, 2]).unwrap();
        let serial = mc_solvable_prob(&g, 6, 400, 99, 100_000, 1).unwrap();
        let parallel = mc_solvable_prob(&g, 6, 400, 99, 100_000, 4).unwrap();
        assert_eq!(serial.reports, parallel.reports);
        assert_eq!(serial.successes, parallel.successes);
        let again = mc_solvable_prob(&g, 6, 400, 99, 100_000, 2).unwrap();
        assert_eq!(serial.reports, again.reports);
        // max piles never exceed the pebble total
        assert!(serial.reports.iter().all(|r| r.max_pile <= 6));
    }

    #[test]
    fn mc_converges_to_exact() {
        let p3 = GridSpec::path(3, 2).unwrap();
        let exact = rational_to_f64(&exact_solvable_prob(&p3, 2, 100_000).unwrap());
        let mut within = 0;
        for seed in 0..30u64 {
            let est = mc_solvable_prob(&p3, 2, 10_000, seed, 100_000, 1).unwrap();
            let half_width = (est.ci_hi - est.ci_lo) / 2.0;
            if (est.p_hat - exact).abs() <= 3.0 * half_width {
                within += 1;
            }
        }
        assert!(within >= 30, "only {within}/30 runs within 3 half-widths");
    }

    #[test]
    fn max_pile_scales_like_lambda_log_n_in_regime() {
        // density regime ln N << lambda << sqrt(N): the largest pile across
        // trials sits at the lambda ln N scale
        let g = GridSpec::path(10_000, 2).unwrap();
        let k = 300_000u64;
        let est = mc_solvable_prob(&g, k, 20, 42, 1_000_000, 1).unwrap();
        let lambda = k as f64 / 10_000.0;
        let scale = lambda * (10_000f64).ln();
        let max = est.max_pile_max as f64;
        assert!(max <= 2.0 * scale, "max pile {max} above 2x scale {scale}");
        assert!(max >= 0.5 * scale, "max pile {max} below half the scale {scale}");
        // and per-trial piles never exceed the pebble total
        assert!(est.reports.iter().all(|r| r.max_pile <= k));
    }

    #[test]
    fn phalf_brackets_p2() {
        let p2 = GridSpec::path(2, 2).unwrap();
        let est = phalf_bisect(&p2, 0, 4, 200, 0xF00D, 100_000, 1).unwrap();
        assert_eq!((est.k_low, est.k_high), (1, 2));
        assert!(!est.straddle);
        // the bracket invariant in terms of the recorded intervals
        for stats in &est.per_k {
            if stats.k == est.k_low {
                assert!(stats.ci_hi < 0.5);
            }
            if stats.k == est.k_high {
                assert!(stats.ci_lo > 0.5);
            }
        }
    }

    #[test]
    fn phalf_agrees_with_exhaustive_probabilities_on_p5() {
        let p5 = GridSpec::path(5, 2).unwrap();
        let est = phalf_bisect(&p5, 0, 40, 400, 0xBEAD, 1_000_000, 1).unwrap();
        assert!(est.k_low < est.k_high);
        if !est.straddle {
            let below = exact_solvable_prob(&p5, est.k_low, 10_000_000).unwrap();
            let above = exact_solvable_prob(&p5, est.k_high, 10_000_000).unwrap();
            assert!(below < rat(1, 2), "P(k_low) = {below}");
            assert!(above >= rat(1, 2), "P(k_high) = {above}");
        }
        // success fractions are (noisily) nondecreasing in k
        for pair in est.per_k.windows(2) {
            assert!(pair[1].ci_hi >= pair[0].ci_lo - 1e-12);
        }
    }

    #[test]
    fn phalf_flags_a_straddle_when_probability_sits_at_one_half() {
        // P4 with cost 3 at k = 6 is solvable in exactly half of the
        // C(9,6) = 84 configurations, so no amount of sampling can push the
        // interval off 1/2; the probe must hit the trial cap and flag
        let g = GridSpec::path(4, 3).unwrap();
        assert_eq!(exact_solvable_prob(&g, 6, 100_000).unwrap(), rat(1, 2));

        let est = phalf_bisect(&g, 0, 12, 1024, 1, 1_000_000, 2).unwrap();
        assert!(est.straddle, "probe at the knife edge must flag");
        assert_eq!((est.k_low, est.k_high), (0, 12), "bracket stays wide");
        let probe = est.per_k.iter().find(|s| s.k == 6).expect("k=6 probed");
        assert_eq!(probe.trials, TRIAL_CAP);
        assert!(probe.ci_lo < 0.5 && 0.5 < probe.ci_hi);
    }

    #[test]
    fn mc_matches_exact_on_a_two_dimensional_grid() {
        let g = GridSpec::new(vec![3, 2], vec![2, 2]).unwrap();
        let exact = exact_solvable_prob(&g, 4, 1_000_000).unwrap();
        assert_eq!(exact, rat(41, 126));
        let est = mc_solvable_prob(&g, 4, 20_000, 0x2D, 1_000_000, 2).unwrap();
        let truth = rational_to_f64(&exact);
        assert_eq!(est.excluded, 0);
        assert!((est.p_hat - truth).abs() < 0.015, "estimate {}", est.p_hat);
        assert!(est.ci_lo <= truth && truth <= est.ci_hi);
    }

    #[test]
    fn phalf_rejects_bad_brackets() {
        let p2 = GridSpec::path(2, 2).unwrap();
        assert!(phalf_bisect(&p2, 3, 3, 100, 1, 100_000, 1).is_err());
        // k_min already solvable more than half the time
        assert!(phalf_bisect(&p2, 2, 6, 200, 1, 100_000, 1).is_err());
        // k_max still below one half
        assert!(phalf_bisect(&p2, 0, 1, 200, 1, 100_000, 1).is_err());
    }

    #[test]
    fn theorem_values_match_reference() {
        // independently computed high-precision reference
        let reference = 278.1649501681387;
        let v = theorem2_value(100, 2, 0.0).unwrap();
        assert!((v - reference).abs() / reference < 1e-12, "{v}");
        assert!(theorem2_value(2, 2, 0.0).is_err());
        assert!(theorem1_value(100, 2, &[2], 0.0).is_err()); // q length mismatch
    }

    #[test]
    fn theorem1_specializes_to_theorem2_exactly() {
        let mut rng = Rng::new(0x7157);
        for _ in 0..100 {
            let n = rng.range(3, 1_000_000);
            let q = rng.range(2, 11);
            let shift = (rng.next_u64() % 2000) as f64 / 500.0 - 2.0;
            let a = theorem1_value(n, 1, &[q], shift).unwrap();
            let b = theorem2_value(n, q, shift).unwrap();
            assert_eq!(a.to_bits(), b.to_bits(), "n={n} q={q} shift={shift}");
        }
    }

    #[test]
    fn theorem_shape_properties() {
        // additive shifts act multiplicatively
        let base = theorem2_value(500, 2, 0.0).unwrap();
        let shifted = theorem2_value(500, 2, 0.7).unwrap();
        assert!((shifted / base - 0.7f64.exp()).abs() < 1e-12);

        // larger cost, larger value
        assert!(theorem2_value(100, 3, 0.0).unwrap() > theorem2_value(100, 2, 0.0).unwrap());

        // superlinear, yet falling ever further behind n^1.1
        let mut prev_linear = 0.0;
        let mut prev_power = f64::MAX;
        for n in [1_000u64, 100_000, 10_000_000, 1_000_000_000] {
            let v = theorem2_value(n, 2, 0.0).unwrap();
            let linear = v / n as f64;
            let power = v / (n as f64).powf(1.1);
            assert!(linear > prev_linear, "v/n must grow");
            assert!(power < prev_power, "v/n^1.1 must shrink");
            prev_linear = linear;
            prev_power = power;
        }
    }

    #[test]
    fn graham_rows_examples() {
        let rows = graham_table(2, 1.0, 2.0, 1).unwrap();
        assert_eq!(rows[1].log2_upper, 2.0);
        assert_eq!(rows[1].lower_exponent, 2.0);
        assert!(!rows[1].contradiction);

        let rows = graham_table(4, 1.0, 8.0, 3).unwrap();
        assert_eq!(rows[3].log2_upper, 24.0);
        assert_eq!(rows[3].lower_exponent, 24.0);
        assert!(!rows[3].contradiction);

        let rows = graham_table(4, 1.0, 4.0, 5).unwrap();
        for row in &rows[1..] {
            assert!(row.contradiction, "s={} should contradict", row.s);
            assert_eq!(row.log2_upper, 2.0 * 2f64.powi(row.s as i32));
            assert_eq!(row.lower_exponent, 3.0 * 2f64.powi(row.s as i32));
        }
    }
}
