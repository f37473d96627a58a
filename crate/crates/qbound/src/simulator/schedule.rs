//! Query schedules: the unitaries an algorithm interleaves with its oracle
//! calls, and the exact state trajectory they generate.
//!
//! A schedule with T queries is U_T · O_x · U_{T−1} ⋯ U_1 · O_x · U_0 applied
//! to the all-zeros basis state. Running it yields the T+1 states after each
//! unitary; the oracle string is the only thing that varies between runs, so
//! trajectories for different strings are directly comparable.

use crate::error::{Error, Result};
use crate::model::OracleInput;
use crate::numerics::AmplitudeVector;
use crate::simulator::gates::{CMatrix, Gate};
use crate::simulator::{apply_parallel_oracle, StateLayout};
use crate::tol::STEP_NORM_TOL;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

#[derive(Debug, Clone)]
pub struct Schedule {
    layout: StateLayout,
    unitaries: Vec<Gate>,
}

impl Schedule {
    /// `unitaries` holds T+1 gates for a T-query schedule; each is validated
    /// against the layout up front.
    pub fn new(layout: StateLayout, unitaries: Vec<Gate>) -> Result<Self> {
        if unitaries.is_empty() {
            return Err(Error::invalid(
                "a schedule needs at least the initial unitary",
            ));
        }
        for g in &unitaries {
            g.validate(&layout)?;
        }
        Ok(Self { layout, unitaries })
    }

    /// A T-query schedule of independent pseudo-random unitaries, fully
    /// determined by the seed.
    pub fn random(layout: StateLayout, queries: usize, seed: u64) -> Self {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let unitaries = (0..=queries)
            .map(|_| Gate::Explicit(CMatrix::random_unitary(layout.dim(), &mut rng)))
            .collect();
        Self::new(layout, unitaries).expect("random unitaries validate")
    }

    pub fn layout(&self) -> &StateLayout {
        &self.layout
    }

    pub fn queries(&self) -> usize {
        self.unitaries.len() - 1
    }

    pub fn unitaries(&self) -> &[Gate] {
        &self.unitaries
    }
}

/// Execute the schedule against one oracle string, returning the T+1 states
/// |ψ^0⟩ … |ψ^T⟩ (state t is the one after U_t). Norm preservation is
/// asserted after every step.
pub fn run_schedule(sch: &Schedule, x: &OracleInput) -> Result<Vec<AmplitudeVector>> {
    let lay = sch.layout();
    if x.len() as usize != lay.len() {
        return Err(Error::DimMismatch {
            left: x.len() as usize,
            right: lay.len(),
            context: "oracle string length vs layout positions",
        });
    }
    let mut v = AmplitudeVector::basis_state(lay.dim(), 0);
    let mut states = Vec::with_capacity(sch.unitaries.len());
    for (t, gate) in sch.unitaries.iter().enumerate() {
        if t > 0 {
            apply_parallel_oracle(lay, x, &mut v)?;
        }
        gate.apply(lay, &mut v);
        assert!(
            (v.norm() - 1.0).abs() <= STEP_NORM_TOL,
            "norm drifted to {} after step {t}",
            v.norm()
        );
        states.push(v.clone());
    }
    Ok(states)
}
