//! Counting marked positions by phase estimation on the amplification step,
//! exactly simulated, plus the split-the-string strategy that runs p
//! independent counters on disjoint blocks and adds their estimates.
//!
//! The estimation register is the workspace: uniformized, then entangled by
//! applying the amplify-and-reflect step G m times to the branch whose
//! workspace value is m, then read out through an inverse Fourier transform.
//! Outcome m decodes to the estimate N·sin²(πm/2^t). Everything up to the
//! final sampling is an exact statevector computation; sampling enters only
//! when independent counters are combined over random trials.

use crate::error::{Error, Result};
use crate::model::{CountingSpec, OracleInput};
use crate::numerics::AmplitudeVector;
use crate::simulator::gates::Gate;
use crate::simulator::{apply_parallel_oracle, StateLayout};
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::collections::BTreeMap;
use std::f64::consts::PI;

/// The count value outcome m decodes to: N·sin²(πm/2^t).
pub fn outcome_estimate(len: u64, m: u64, t_bits: u32) -> f64 {
    let w = (1u64 << t_bits) as f64;
    len as f64 * (PI * m as f64 / w).sin().powi(2)
}

/// Half-up rounding to a whole count.
pub fn round_half_up(x: f64) -> u64 {
    (x + 0.5).floor() as u64
}

/// One measurement outcome of the estimation register.
#[derive(Debug, Clone, PartialEq)]
pub struct CountOutcome {
    pub m: u64,
    pub probability: f64,
    /// Decoded estimate N·sin²(πm/2^t), before rounding.
    pub estimate: f64,
    pub rounded: u64,
    /// Whether the rounded estimate is an admissible answer for the true
    /// count.
    pub accepted: bool,
}

/// Exact outcome distribution of a t-bit counter run against a string with
/// k marked positions.
#[derive(Debug, Clone, PartialEq)]
pub struct CountEstimate {
    pub t_bits: u32,
    /// Oracle calls consumed: 2^t − 1.
    pub queries: u64,
    pub outcomes: Vec<CountOutcome>,
    /// Total probability of admissible rounded estimates.
    pub success_prob: f64,
    /// Most likely rounded estimate, aggregating outcomes that decode to the
    /// same count (smallest estimate on ties).
    pub mode_estimate: u64,
    /// Total probability of `mode_estimate` across its outcomes.
    pub mode_prob: f64,
}

pub fn phase_estimation_count(spec: &CountingSpec, k: u64, t_bits: u32) -> Result<CountEstimate> {
    if k > spec.len() {
        return Err(Error::Overflow {
            value: k,
            n: spec.len(),
        });
    }
    if t_bits == 0 || t_bits > 16 {
        return Err(Error::invalid("estimation register needs 1..=16 bits"));
    }
    let w = 1usize << t_bits;
    let lay = StateLayout::new(spec.qubits(), 1, w)?;
    let sub = StateLayout::new(spec.qubits(), 1, 1)?;
    let mask = if k == 64 { u64::MAX } else { (1u64 << k) - 1 };
    let x = OracleInput::new(spec.qubits(), mask)?;

    // Pre-oracle state on the index+result part: uniform index, |−⟩ result.
    let mut seed_state = AmplitudeVector::basis_state(sub.dim(), 0);
    Gate::IndexHadamard.apply(&sub, &mut seed_state);
    Gate::ResultMinus.apply(&sub, &mut seed_state);

    // Tensor with the uniformized estimation register.
    let root_w = (w as f64).sqrt();
    let mut amps = vec![Complex64::new(0.0, 0.0); lay.dim()];
    for (ib, a) in seed_state.amps().iter().enumerate() {
        for m in 0..w {
            amps[ib * w + m] = a / root_w;
        }
    }

    // Branch m experiences the amplification step m times.
    for m in 1..w {
        let mut branch =
            AmplitudeVector::from_amps((0..sub.dim()).map(|ib| amps[ib * w + m]).collect());
        for _ in 0..m {
            apply_parallel_oracle(&sub, &x, &mut branch)?;
            Gate::Diffusion.apply(&sub, &mut branch);
        }
        for (ib, a) in branch.amps().iter().enumerate() {
            amps[ib * w + m] = *a;
        }
    }

    let mut state = AmplitudeVector::from_amps(amps);
    Gate::WorkspaceInverseQft.apply(&lay, &mut state);

    let mut outcomes = Vec::with_capacity(w);
    let mut success_prob = 0.0;
    for m in 0..w {
        let probability: f64 = (0..sub.dim())
            .map(|ib| state.amps()[ib * w + m].norm_sqr())
            .sum();
        let estimate = outcome_estimate(spec.len(), m as u64, t_bits);
        let rounded = round_half_up(estimate);
        let accepted = spec.accepts(k, rounded);
        if accepted {
            success_prob += probability;
        }
        outcomes.push(CountOutcome {
            m: m as u64,
            probability,
            estimate,
            rounded,
            accepted,
        });
    }
    let mut by_estimate: BTreeMap<u64, f64> = BTreeMap::new();
    for o in &outcomes {
        *by_estimate.entry(o.rounded).or_insert(0.0) += o.probability;
    }
    let (mode_estimate, mode_prob) =
        by_estimate
            .into_iter()
            .fold((0u64, -1.0f64), |best, (est, prob)| {
                if prob > best.1 {
                    (est, prob)
                } else {
                    best
                }
            });
    Ok(CountEstimate {
        t_bits,
        queries: (1u64 << t_bits) - 1,
        success_prob,
        mode_estimate,
        mode_prob,
        outcomes,
    })
}

/// Result of combining p independent counters on disjoint blocks of the
/// string, each estimating its own block count, summed per trial.
#[derive(Debug, Clone, PartialEq)]
pub struct ParallelCountSummary {
    pub p: u64,
    /// Positions per block: N/p.
    pub block_positions: u64,
    /// Marked positions per block: K/p.
    pub block_marked: u64,
    pub t_bits: u32,
    /// Oracle rounds any single block performs: 2^t − 1. Blocks run side by
    /// side, so this is the schedule depth.
    pub depth: u64,
    /// p · depth individual oracle calls.
    pub total_queries: u64,
    pub trials: u64,
    pub seed: u64,
    /// Fraction of trials whose rounded total is an admissible answer.
    pub success_rate: f64,
    /// Mean of the unrounded trial totals.
    pub mean: f64,
    /// Sample variance (ddof = 1) of the unrounded trial totals; 0 for a
    /// single trial.
    pub variance: f64,
    /// (rounded total, number of trials) pairs, ascending.
    pub histogram: Vec<(u64, u64)>,
}

/// Split the string into p equal blocks with the marked positions spread
/// evenly (requires p | N and p | K), run the exact t-bit counter on one
/// block, and sample p independent block outcomes per trial. Sampling is
/// trial-major, block-minor, fully determined by the seed.
pub fn parallel_disjoint_counters(
    spec: &CountingSpec,
    k: u64,
    p: u64,
    t_bits: u32,
    seed: u64,
    trials: u64,
) -> Result<ParallelCountSummary> {
    if p == 0 {
        return Err(Error::invalid("parallelism p must be at least 1"));
    }
    if trials == 0 {
        return Err(Error::invalid("at least one trial is required"));
    }
    if k > spec.len() {
        return Err(Error::Overflow {
            value: k,
            n: spec.len(),
        });
    }
    let n = spec.len();
    if !n.is_multiple_of(p) || !k.is_multiple_of(p) {
        return Err(Error::IndivisibleParameters { p, n, k });
    }
    let block_positions = n / p;
    if block_positions < 2 {
        return Err(Error::invalid("each block needs at least two positions"));
    }
    let block_marked = k / p;
    let block_spec = CountingSpec::new(block_positions.trailing_zeros(), spec.epsilon())?;
    let block = phase_estimation_count(&block_spec, block_marked, t_bits)?;

    let cdf: Vec<f64> = block
        .outcomes
        .iter()
        .scan(0.0, |acc, o| {
            *acc += o.probability;
            Some(*acc)
        })
        .collect();
    let draw = |u: f64| -> usize {
        cdf.iter()
            .position(|&c| u < c)
            .unwrap_or(block.outcomes.len() - 1)
    };

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut totals = Vec::with_capacity(trials as usize);
    let mut histogram = BTreeMap::new();
    let mut successes = 0u64;
    for _ in 0..trials {
        let mut total = 0.0;
        for _ in 0..p {
            let m = draw(rng.gen::<f64>());
            total += block.outcomes[m].estimate;
        }
        let rounded = round_half_up(total);
        if spec.accepts(k, rounded) {
            successes += 1;
        }
        *histogram.entry(rounded).or_insert(0u64) += 1;
        totals.push(total);
    }
    let mean = totals.iter().sum::<f64>() / trials as f64;
    let variance = if trials > 1 {
        totals.iter().map(|t| (t - mean) * (t - mean)).sum::<f64>() / (trials - 1) as f64
    } else {
        0.0
    };
    Ok(ParallelCountSummary {
        p,
        block_positions,
        block_marked,
        t_bits,
        depth: block.queries,
        total_queries: p * block.queries,
        trials,
        seed,
        success_rate: successes as f64 / trials as f64,
        mean,
        variance,
        histogram: histogram.into_iter().collect(),
    })
}

/// Exact distribution moments of the summed estimate of p independent block
/// counters (no sampling).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EstimateMoments {
    pub mean: f64,
    pub variance: f64,
    /// Fourth central moment of the sum, for error bars on sampled
    /// variances.
    pub fourth_central: f64,
}

pub fn exact_sum_moments(
    spec: &CountingSpec,
    k: u64,
    p: u64,
    t_bits: u32,
) -> Result<EstimateMoments> {
    if p == 0 {
        return Err(Error::invalid("parallelism p must be at least 1"));
    }
    let n = spec.len();
    if !n.is_multiple_of(p) || !k.is_multiple_of(p) {
        return Err(Error::IndivisibleParameters { p, n, k });
    }
    let block_positions = n / p;
    if block_positions < 2 {
        return Err(Error::invalid("each block needs at least two positions"));
    }
    let block_spec = CountingSpec::new(block_positions.trailing_zeros(), spec.epsilon())?;
    let block = phase_estimation_count(&block_spec, k / p, t_bits)?;
    let mu: f64 = block
        .outcomes
        .iter()
        .map(|o| o.probability * o.estimate)
        .sum();
    let central = |r: i32| -> f64 {
        block
            .outcomes
            .iter()
            .map(|o| o.probability * (o.estimate - mu).powi(r))
            .sum()
    };
    let m2 = central(2);
    let m4 = central(4);
    let pf = p as f64;
    Ok(EstimateMoments {
        mean: pf * mu,
        variance: pf * m2,
        fourth_central: pf * m4 + 3.0 * pf * (pf - 1.0) * m2 * m2,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_rational::Ratio;

    fn spec16() -> CountingSpec {
        CountingSpec::new(4, Ratio::new(1, 2)).unwrap()
    }

    #[test]
    fn estimate_decoding() {
        assert_eq!(outcome_estimate(16, 0, 3), 0.0);
        assert!((outcome_estimate(16, 4, 3) - 16.0).abs() < 1e-12);
        assert!((outcome_estimate(16, 2, 3) - 8.0).abs() < 1e-12);
        assert_eq!(round_half_up(2.5), 3);
        assert_eq!(round_half_up(2.4999999), 2);
        assert_eq!(round_half_up(0.0), 0);
    }

    #[test]
    fn exact_count_concentrates_on_dyadic_values() {
        // K = 8 of 16: the rotation angle is exactly representable in 3 bits,
        // so the distribution is two spikes both decoding to 8.
        let est = phase_estimation_count(&spec16(), 8, 3).unwrap();
        assert!(est.outcomes[2].probability + est.outcomes[6].probability > 1.0 - 1e-9);
        assert_eq!(est.outcomes[2].rounded, 8);
        assert_eq!(est.outcomes[6].rounded, 8);
        assert_eq!(est.mode_estimate, 8);
        assert!(est.mode_prob > 1.0 - 1e-9);
        assert!(est.success_prob > 1.0 - 1e-9);
        assert_eq!(est.queries, 7);

        let zero = phase_estimation_count(&spec16(), 0, 3).unwrap();
        assert!(zero.outcomes[0].probability > 1.0 - 1e-9);
        assert!(zero.success_prob > 1.0 - 1e-9);

        let full = phase_estimation_count(&spec16(), 16, 3).unwrap();
        assert!(full.outcomes[4].probability > 1.0 - 1e-9);
        assert_eq!(full.outcomes[4].rounded, 16);
    }

    #[test]
    fn frozen_distribution_for_four_of_sixteen() {
        let est = phase_estimation_count(&spec16(), 4, 3).unwrap();
        let want = [
            0.046875,
            0.353228151840597,
            0.09375,
            0.021771848159403,
            0.015625,
            0.021771848159403,
            0.09375,
            0.353228151840597,
        ];
        for (o, w) in est.outcomes.iter().zip(want) {
            assert!(
                (o.probability - w).abs() < 1e-11,
                "m={} got {} want {w}",
                o.m,
                o.probability
            );
        }
        let total: f64 = est.outcomes.iter().map(|o| o.probability).sum();
        assert!((total - 1.0).abs() < 1e-12);
        // Outcomes m=1 and m=7 both decode to 2; together they dominate.
        assert_eq!(est.mode_estimate, 2);
        assert!((est.mode_prob - 2.0 * 0.353228151840597).abs() < 1e-11);
        // No rounded estimate lands in the ε = 1/2 window around 4 at t = 3.
        assert_eq!(est.success_prob, 0.0);
    }

    #[test]
    fn window_capture_grows_with_precision() {
        let probs: Vec<f64> = (3..=6)
            .map(|t| {
                phase_estimation_count(&spec16(), 4, t)
                    .unwrap()
                    .success_prob
            })
            .collect();
        assert!((probs[2] - 0.6851778208915305).abs() < 1e-9);
        assert!((probs[3] - 0.8555131394352536).abs() < 1e-9);
        for pair in probs.windows(2) {
            assert!(pair[1] >= pair[0] - 1e-12);
        }
    }

    #[test]
    fn parameter_rejection() {
        assert!(phase_estimation_count(&spec16(), 17, 3).is_err());
        assert!(phase_estimation_count(&spec16(), 4, 0).is_err());
        assert!(matches!(
            parallel_disjoint_counters(&spec16(), 4, 3, 3, 0, 10),
            Err(Error::IndivisibleParameters { p: 3, n: 16, k: 4 })
        ));
        assert!(matches!(
            parallel_disjoint_counters(&spec16(), 6, 4, 3, 0, 10),
            Err(Error::IndivisibleParameters { p: 4, n: 16, k: 6 })
        ));
        // p = N would leave single-position blocks.
        assert!(parallel_disjoint_counters(&spec16(), 16, 16, 3, 0, 10).is_err());
        assert!(parallel_disjoint_counters(&spec16(), 4, 4, 3, 0, 0).is_err());
    }

    #[test]
    fn two_blocks_of_sixteen_count_exactly() {
        // 32 positions, 16 marked, split once: each block is the dyadic 8-of-16
        // case, so every trial totals exactly 16 after 7 rounds of depth.
        let spec = CountingSpec::new(5, Ratio::new(1, 2)).unwrap();
        let s = parallel_disjoint_counters(&spec, 16, 2, 3, 424242, 200).unwrap();
        assert_eq!(s.depth, 7);
        assert_eq!(s.total_queries, 14);
        assert_eq!(s.block_positions, 16);
        assert_eq!(s.block_marked, 8);
        assert_eq!(s.success_rate, 1.0);
        assert!((s.mean - 16.0).abs() < 1e-9);
        assert!(s.variance < 1e-18);
        assert_eq!(s.histogram, vec![(16, 200)]);
    }

    #[test]
    fn frozen_sum_variances() {
        // 16 positions, 4 marked, 3-bit counters: exact variances of the
        // summed estimate at p = 1, 2, 4.
        let want = [(1u64, 12.0), (2, 6.0), (4, 3.0)];
        for (p, var) in want {
            let m = exact_sum_moments(&spec16(), 4, p, 3).unwrap();
            assert!((m.variance - var).abs() < 1e-9, "p={p}: {}", m.variance);
            assert!((m.mean - 4.0).abs() < 1e-9, "p={p}: mean {}", m.mean);
            assert!(m.fourth_central > 0.0);
        }
    }

    #[test]
    fn sampling_is_seed_deterministic() {
        let a = parallel_disjoint_counters(&spec16(), 4, 2, 3, 11, 500).unwrap();
        let b = parallel_disjoint_counters(&spec16(), 4, 2, 3, 11, 500).unwrap();
        assert_eq!(a, b);
        let c = parallel_disjoint_counters(&spec16(), 4, 2, 3, 12, 500).unwrap();
        assert_ne!(a.histogram, c.histogram);
    }

    #[test]
    fn sampled_variance_tracks_exact_variance() {
        let s = parallel_disjoint_counters(&spec16(), 4, 2, 3, 3141, 10_000).unwrap();
        let m = exact_sum_moments(&spec16(), 4, 2, 3).unwrap();
        // Standard error of the sample variance from the fourth moment.
        let nt = s.trials as f64;
        let se =
            ((m.fourth_central - m.variance * m.variance * (nt - 3.0) / (nt - 1.0)) / nt).sqrt();
        assert!(
            (s.variance - m.variance).abs() < 3.0 * se,
            "sampled {} exact {} se {se}",
            s.variance,
            m.variance
        );
        assert!((s.mean - m.mean).abs() < 3.0 * (m.variance / nt).sqrt());
    }
}
