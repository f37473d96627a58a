//! Search by amplitude amplification, run exactly through the oracle
//! schedule machinery, plus the textbook closed form it must land on.

use crate::error::Result;
use crate::model::OracleInput;
use crate::simulator::gates::Gate;
use crate::simulator::schedule::{run_schedule, Schedule};
use crate::simulator::StateLayout;

/// Probability that measuring the index register after `iters` rounds of
/// amplify-and-reflect lands on a marked position. Exact statevector run:
/// uniformize the index register, put the result qubit in |−⟩ so each oracle
/// call becomes a phase flip, then alternate oracle and reflection.
pub fn grover_success(n: u32, marked: &[usize], iters: usize) -> Result<f64> {
    let mut mask = 0u64;
    for &i in marked {
        if i >= 64 {
            return Err(crate::Error::IndexOutOfRange { index: i, len: 64 });
        }
        mask |= 1 << i;
    }
    let x = OracleInput::new(n, mask)?;
    let lay = StateLayout::new(n, 1, 1)?;
    let mut gates = vec![Gate::Compose(vec![Gate::IndexHadamard, Gate::ResultMinus])];
    gates.extend(std::iter::repeat_n(Gate::Diffusion, iters));
    let sch = Schedule::new(lay, gates)?;
    let states = run_schedule(&sch, &x)?;
    let last = states.last().expect("at least the prepared state");
    let mut success = 0.0;
    for (idx, amp) in last.amps().iter().enumerate() {
        let (is, _, _) = lay.decompose(idx);
        if x.bit(is[0]) {
            success += amp.norm_sqr();
        }
    }
    Ok(success)
}

/// sin²((2t+1)·asin√(K/N)), the exact success probability of t amplification
/// rounds with K marked among N.
pub fn grover_closed_form(len: u64, marked: u64, iters: usize) -> f64 {
    let theta = (marked as f64 / len as f64).sqrt().asin();
    ((2 * iters + 1) as f64 * theta).sin().powi(2)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn frozen_single_marked_case() {
        // Success after two rounds on 8 positions with one marked: 121/128.
        let s = grover_success(3, &[5], 2).unwrap();
        assert!((s - 0.9453125).abs() < 1e-12);
        assert!((grover_closed_form(8, 1, 2) - 0.9453125).abs() < 1e-12);
    }

    #[test]
    fn matches_closed_form_everywhere_small() {
        for n in 1..=3u32 {
            let len = 1u64 << n;
            for iters in 0..=4usize {
                for k in 0..=len {
                    let marked: Vec<usize> = (0..k as usize).collect();
                    let s = grover_success(n, &marked, iters).unwrap();
                    let cf = grover_closed_form(len, k, iters);
                    assert!((s - cf).abs() < 1e-12, "n={n} k={k} t={iters}: {s} vs {cf}");
                }
            }
        }
    }

    #[test]
    fn marked_set_position_does_not_matter() {
        let a = grover_success(3, &[0], 3).unwrap();
        let b = grover_success(3, &[7], 3).unwrap();
        assert!((a - b).abs() < 1e-12);
        // duplicates in the marked list are harmless
        let c = grover_success(3, &[7, 7], 3).unwrap();
        assert!((b - c).abs() < 1e-12);
    }

    #[test]
    fn out_of_range_marked_rejected() {
        assert!(grover_success(2, &[4], 1).is_err());
        assert!(grover_success(2, &[64], 1).is_err());
    }
}
