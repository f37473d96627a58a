//! The dynamical reading of the adversary bound: a weighted sum of pairwise
//! state overlaps that starts at the largest eigenvalue, must end small for
//! any algorithm that answers reliably, and can move only a bounded amount
//! per oracle call.
//!
//! The weight of trajectory pair (x, y) is Γ_xy · δ_x · δ_y with δ the
//! principal eigenvector of Γ. Running one schedule against every input of
//! the matrix gives the whole progress curve exactly, so the per-step bound
//! 2·max_tuple λ(Γ filtered) can be checked against reality instead of taken
//! on faith.

use crate::adversary::{spectral_bound, AdversaryMatrix};
use crate::error::{Error, Result};
use crate::numerics::{overlap, principal_eigenpair, AmplitudeVector};
use crate::simulator::schedule::{run_schedule, Schedule};
use crate::tol::{ASSERT_TOL, IMAG_TOL};

/// The exact progress curve of one schedule against an adversary matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct ProgressTrace {
    /// Largest eigenvalue of Γ; equals the first curve value.
    pub lambda: f64,
    /// Principal eigenvector entries, indexed like the matrix inputs.
    pub weights: Vec<f64>,
    /// W^0 … W^T, one value per schedule step.
    pub values: Vec<f64>,
    /// |W^{t+1} − W^t| for each query.
    pub steps: Vec<f64>,
    /// 2·max over ≤p-position tuples of the filtered largest eigenvalue.
    pub step_bound: f64,
    pub max_step: f64,
    /// Whether every observed step is within the bound (tolerance 1e-9).
    pub step_bound_ok: bool,
    /// Tuple attaining the step bound.
    pub worst_tuple: Vec<usize>,
}

/// Run the schedule against every input of the matrix and trace the weighted
/// overlap sum step by step. The schedule's parallelism decides which tuple
/// family the step bound ranges over.
pub fn progress_trace(a: &AdversaryMatrix, sch: &Schedule) -> Result<ProgressTrace> {
    let lay = sch.layout();
    if a.positions() != lay.len() {
        return Err(Error::DimMismatch {
            left: a.positions(),
            right: lay.len(),
            context: "matrix inputs vs layout positions",
        });
    }
    let (lambda, weights) = principal_eigenpair(a.gamma())?;
    let bound_report = spectral_bound(a, lay.parallelism())?;
    let step_bound = 2.0 * bound_report.max_filtered_lambda;

    let trajectories: Vec<Vec<AmplitudeVector>> = a
        .inputs()
        .iter()
        .map(|x| run_schedule(sch, x))
        .collect::<Result<_>>()?;

    let dim = a.dim();
    let steps_count = sch.queries() + 1;
    let mut values = Vec::with_capacity(steps_count);
    // t slices across every input's trajectory at once, so an index loop is
    // the natural shape here.
    #[allow(clippy::needless_range_loop)]
    for t in 0..steps_count {
        let mut acc = num_complex::Complex64::new(0.0, 0.0);
        for u in 0..dim {
            for v in 0..dim {
                let g = a.gamma().get(u, v);
                if g != 0.0 {
                    acc += g
                        * weights[u]
                        * weights[v]
                        * overlap(&trajectories[u][t], &trajectories[v][t])?;
                }
            }
        }
        assert!(
            acc.im.abs() <= IMAG_TOL,
            "progress value developed an imaginary part: {}",
            acc.im
        );
        values.push(acc.re);
    }
    let steps: Vec<f64> = values.windows(2).map(|w| (w[1] - w[0]).abs()).collect();
    let max_step = steps.iter().cloned().fold(0.0, f64::max);
    Ok(ProgressTrace {
        lambda,
        weights,
        step_bound,
        max_step,
        step_bound_ok: max_step <= step_bound + ASSERT_TOL,
        worst_tuple: bound_report.worst_tuple,
        values,
        steps,
    })
}

/// Final-state separation check: a schedule that distinguishes the two sides
/// of every charged pair with error at most δ must leave each such pair's
/// final overlap at or below 2·√(δ(1−δ)).
#[derive(Debug, Clone, PartialEq)]
pub struct OverlapCheck {
    pub delta: f64,
    /// 2·√(δ(1−δ)).
    pub threshold: f64,
    pub max_overlap: f64,
    /// Input index pair attaining the maximum overlap.
    pub worst_pair: (usize, usize),
    /// max_overlap ≤ threshold (tolerance 1e-9).
    pub all_below: bool,
}

pub fn final_overlap_check(
    a: &AdversaryMatrix,
    sch: &Schedule,
    delta: f64,
) -> Result<OverlapCheck> {
    if !(0.0..=0.5).contains(&delta) {
        return Err(Error::invalid("error probability must lie in [0, 1/2]"));
    }
    let lay = sch.layout();
    if a.positions() != lay.len() {
        return Err(Error::DimMismatch {
            left: a.positions(),
            right: lay.len(),
            context: "matrix inputs vs layout positions",
        });
    }
    let finals: Vec<AmplitudeVector> = a
        .inputs()
        .iter()
        .map(|x| Ok(run_schedule(sch, x)?.pop().expect("nonempty trajectory")))
        .collect::<Result<_>>()?;
    let mut max_overlap = -1.0;
    let mut worst_pair = (0, 0);
    for u in 0..a.dim() {
        for v in u + 1..a.dim() {
            if a.gamma().get(u, v) != 0.0 {
                let o = overlap(&finals[u], &finals[v])?.norm();
                if o > max_overlap {
                    max_overlap = o;
                    worst_pair = (u, v);
                }
            }
        }
    }
    if max_overlap < 0.0 {
        return Err(Error::ZeroMatrix);
    }
    let threshold = 2.0 * (delta * (1.0 - delta)).sqrt();
    Ok(OverlapCheck {
        delta,
        threshold,
        max_overlap,
        worst_pair,
        all_below: max_overlap <= threshold + ASSERT_TOL,
    })
}
