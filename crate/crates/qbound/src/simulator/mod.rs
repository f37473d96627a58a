//! Exact statevector simulation of algorithms that query a bit-string oracle
//! at p positions per step.
//!
//! A register bundle holds p index registers (each over the N = 2^n string
//! positions), p result qubits, and one workspace register of arbitrary
//! dimension w. Amplitudes live in a flat vector of length N^p · 2^p · w,
//! addressed as `(I · 2^p + B) · w + ws` with the first index register in the
//! most significant digit of I and the first result qubit in the most
//! significant bit of B.
//!
//! The oracle itself is the permutation that XORs the queried string bits
//! into the result qubits: |i₁…i_p, b₁…b_p, ws⟩ ↦ |i₁…i_p, b₁⊕x[i₁] …, ws⟩.
//! Everything an algorithm does between queries is a [`gates::Gate`], and a
//! [`schedule::Schedule`] strings them together.

pub mod counting;
pub mod gates;
pub mod grover;
pub mod progress;
pub mod schedule;

pub use counting::{
    parallel_disjoint_counters, phase_estimation_count, CountEstimate, CountOutcome,
    ParallelCountSummary,
};
pub use gates::{CMatrix, Gate};
pub use grover::{grover_closed_form, grover_success};
pub use progress::{final_overlap_check, progress_trace, OverlapCheck, ProgressTrace};
pub use schedule::{run_schedule, Schedule};

use crate::error::{Error, Result};
use crate::model::{OracleInput, MAX_ORACLE_QUBITS};
use crate::numerics::AmplitudeVector;
use num_complex::Complex64;

/// Hard ceiling on statevector length, amply above anything the oracle-string
/// cap n ≤ 6 can produce at small p.
const MAX_STATE_DIM: usize = 1 << 22;

/// Shape of the register bundle: p index registers over N = 2^n positions,
/// p result qubits, a workspace of dimension w.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct StateLayout {
    n: u32,
    p: usize,
    w: usize,
}

// `len` counts oracle positions, N = 2^n, which is never zero.
#[allow(clippy::len_without_is_empty)]
impl StateLayout {
    pub fn new(n: u32, p: usize, w: usize) -> Result<Self> {
        if n == 0 || n > MAX_ORACLE_QUBITS {
            return Err(Error::invalid(
                "index registers need between 1 and 6 qubits",
            ));
        }
        if p == 0 {
            return Err(Error::invalid("at least one query register is required"));
        }
        if w == 0 {
            return Err(Error::invalid("workspace dimension must be at least 1"));
        }
        let len = 1usize << n;
        let dim = len
            .checked_pow(p as u32)
            .and_then(|d| d.checked_shl(p as u32))
            .and_then(|d| d.checked_mul(w))
            .filter(|&d| d <= MAX_STATE_DIM);
        match dim {
            Some(_) => Ok(Self { n, p, w }),
            None => Err(Error::invalid("statevector would exceed the size ceiling")),
        }
    }

    pub fn qubits(&self) -> u32 {
        self.n
    }

    /// Number of string positions N = 2^n.
    pub fn len(&self) -> usize {
        1 << self.n
    }

    /// Queries per oracle call.
    pub fn parallelism(&self) -> usize {
        self.p
    }

    /// Workspace dimension.
    pub fn workspace(&self) -> usize {
        self.w
    }

    /// Total statevector length N^p · 2^p · w.
    pub fn dim(&self) -> usize {
        self.len().pow(self.p as u32) * (1 << self.p) * self.w
    }

    /// Flat index of |i₁…i_p, b₁…b_p, ws⟩.
    pub fn compose(&self, indices: &[usize], results: &[bool], ws: usize) -> usize {
        assert_eq!(indices.len(), self.p);
        assert_eq!(results.len(), self.p);
        assert!(ws < self.w);
        let mut i_part = 0usize;
        for &i in indices {
            assert!(i < self.len());
            i_part = i_part * self.len() + i;
        }
        let mut b_part = 0usize;
        for &b in results {
            b_part = b_part * 2 + b as usize;
        }
        (i_part << self.p | b_part) * self.w + ws
    }

    /// Inverse of [`StateLayout::compose`].
    pub fn decompose(&self, idx: usize) -> (Vec<usize>, Vec<bool>, usize) {
        assert!(idx < self.dim());
        let ws = idx % self.w;
        let rest = idx / self.w;
        let b_part = rest & ((1 << self.p) - 1);
        let mut i_part = rest >> self.p;
        let mut indices = vec![0usize; self.p];
        for j in (0..self.p).rev() {
            indices[j] = i_part % self.len();
            i_part /= self.len();
        }
        let results = (0..self.p)
            .map(|j| (b_part >> (self.p - 1 - j)) & 1 == 1)
            .collect();
        (indices, results, ws)
    }

    /// Where the oracle for string `x` sends basis state `idx`.
    fn oracle_image(&self, idx: usize, x: &OracleInput) -> usize {
        let ws = idx % self.w;
        let rest = idx / self.w;
        let b_part = rest & ((1 << self.p) - 1);
        let i_part = rest >> self.p;
        // Digit j of I (low to high) pairs with bit j of B: both belong to
        // query register p − j.
        let mut flips = 0usize;
        let mut digits = i_part;
        for j in 0..self.p {
            let i = digits % self.len();
            digits /= self.len();
            if x.bit(i) {
                flips |= 1 << j;
            }
        }
        (i_part << self.p | (b_part ^ flips)) * self.w + ws
    }
}

/// One oracle call: XOR the p queried string bits into the result qubits.
/// A permutation of basis states, its own inverse, norm-preserving.
pub fn apply_parallel_oracle(
    lay: &StateLayout,
    x: &OracleInput,
    v: &mut AmplitudeVector,
) -> Result<()> {
    if x.len() as usize != lay.len() {
        return Err(Error::DimMismatch {
            left: x.len() as usize,
            right: lay.len(),
            context: "oracle string length vs layout positions",
        });
    }
    if v.dim() != lay.dim() {
        return Err(Error::DimMismatch {
            left: v.dim(),
            right: lay.dim(),
            context: "state length vs layout dimension",
        });
    }
    let mut out = vec![Complex64::new(0.0, 0.0); lay.dim()];
    for (idx, amp) in v.amps().iter().enumerate() {
        out[lay.oracle_image(idx, x)] = *amp;
    }
    *v = AmplitudeVector::from_amps(out);
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::OracleInput;
    use proptest::prelude::*;

    #[test]
    fn layout_arithmetic_roundtrip() {
        let lay = StateLayout::new(2, 2, 3).unwrap();
        assert_eq!(lay.dim(), 16 * 4 * 3);
        for idx in 0..lay.dim() {
            let (i, b, ws) = lay.decompose(idx);
            assert_eq!(lay.compose(&i, &b, ws), idx);
        }
        // First index register is the most significant digit.
        let idx = lay.compose(&[3, 1], &[true, false], 2);
        assert_eq!(idx, (((3 * 4 + 1) * 4 + 0b10) * 3) + 2);
    }

    #[test]
    fn layout_rejects_bad_shapes() {
        assert!(StateLayout::new(0, 1, 1).is_err());
        assert!(StateLayout::new(7, 1, 1).is_err());
        assert!(StateLayout::new(2, 0, 1).is_err());
        assert!(StateLayout::new(2, 1, 0).is_err());
        assert!(StateLayout::new(6, 4, 1 << 12).is_err());
    }

    #[test]
    fn oracle_writes_queried_bits() {
        let lay = StateLayout::new(2, 1, 1).unwrap();
        let x = OracleInput::new(2, 0b0100).unwrap();
        let mut v = AmplitudeVector::basis_state(lay.dim(), lay.compose(&[2], &[false], 0));
        apply_parallel_oracle(&lay, &x, &mut v).unwrap();
        let expect = lay.compose(&[2], &[true], 0);
        assert_eq!(v.amps()[expect].re, 1.0);

        // Querying an unmarked position leaves the result qubit alone.
        let mut v = AmplitudeVector::basis_state(lay.dim(), lay.compose(&[1], &[false], 0));
        apply_parallel_oracle(&lay, &x, &mut v).unwrap();
        assert_eq!(v.amps()[lay.compose(&[1], &[false], 0)].re, 1.0);
    }

    #[test]
    fn parallel_oracle_touches_each_register() {
        let lay = StateLayout::new(2, 2, 2).unwrap();
        let x = OracleInput::new(2, 0b0110).unwrap();
        let start = lay.compose(&[1, 3], &[false, true], 1);
        let mut v = AmplitudeVector::basis_state(lay.dim(), start);
        apply_parallel_oracle(&lay, &x, &mut v).unwrap();
        // x[1] = 1 flips the first result bit; x[3] = 0 leaves the second.
        let expect = lay.compose(&[1, 3], &[true, true], 1);
        assert_eq!(v.amps()[expect].re, 1.0);
    }

    #[test]
    fn oracle_dimension_checks() {
        let lay = StateLayout::new(2, 1, 1).unwrap();
        let x = OracleInput::new(3, 1).unwrap();
        let mut v = AmplitudeVector::basis_state(lay.dim(), 0);
        assert!(apply_parallel_oracle(&lay, &x, &mut v).is_err());
    }

    proptest! {
        /// The oracle is an involution and preserves norm, for any state.
        #[test]
        fn oracle_involution(mask in 0u64..16, p in 1usize..3, seed in 0u64..500) {
            let lay = StateLayout::new(2, p, 2).unwrap();
            let x = OracleInput::new(2, mask).unwrap();
            // cheap deterministic pseudo-state
            let amps: Vec<_> = (0..lay.dim())
                .map(|i| {
                    let t = ((i as u64 + 1) * (seed + 7)) % 97;
                    num_complex::Complex64::new(t as f64 / 97.0, ((t * t) % 89) as f64 / 89.0)
                })
                .collect();
            let v0 = AmplitudeVector::from_amps(amps);
            let mut v = v0.clone();
            apply_parallel_oracle(&lay, &x, &mut v).unwrap();
            prop_assert!((v.norm() - v0.norm()).abs() < 1e-12);
            apply_parallel_oracle(&lay, &x, &mut v).unwrap();
            for (a, b) in v.amps().iter().zip(v0.amps()) {
                prop_assert_eq!(a, b);
            }
        }
    }
}
