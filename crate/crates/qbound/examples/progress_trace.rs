//! Watch the adversary progress measure decay, step by step.
//!
//! W^t = Σ Γ[x,y]·δ[x]·δ[y]·⟨ψ_x^t|ψ_y^t⟩ starts at the largest eigenvalue
//! λ(Γ) — the algorithm hasn't looked at anything yet — and must reach a
//! small value before the answer can be read out. No single round of p
//! parallel queries can move it by more than twice the largest filtered
//! eigenvalue, whatever unitaries surround the queries. Dividing the total
//! required drop by the per-round ceiling is the query lower bound.
//!
//! This example traces W^t under seeded random schedules on the flagship
//! instance and checks every step against the ceiling, then shows that a
//! schedule which never queries keeps pairs indistinguishable.

use num_rational::Ratio;
use qbound::adversary::AdversaryMatrix;
use qbound::combinatorics::enumerate_relation;
use qbound::model::{CountingInstance, CountingSpec};
use qbound::simulator::{final_overlap_check, progress_trace, Schedule, StateLayout};

fn main() -> qbound::Result<()> {
    let spec = CountingSpec::new(2, Ratio::new(1, 1))?;
    let inst = CountingInstance::build(spec, 1)?;
    let gamma = AdversaryMatrix::from_relation(&enumerate_relation(&inst));

    for p in [1usize, 2] {
        println!("p = {p}, three random 3-round schedules:");
        for seed in [7u64, 8, 9] {
            let layout = StateLayout::new(2, p, 1)?;
            let schedule = Schedule::random(layout, 3, seed);
            let trace = progress_trace(&gamma, &schedule)?;
            let values: Vec<String> = trace.values.iter().map(|v| format!("{v:.4}")).collect();
            println!(
                "  seed {seed}: W = [{}]  max step {:.4} <= ceiling {:.4}: {}",
                values.join(", "),
                trace.max_step,
                trace.step_bound,
                trace.step_bound_ok
            );
        }
    }
    println!();

    // A schedule that never touches the oracle cannot separate any charged
    // pair: final overlaps stay at 1, far above the 2√(δ(1−δ)) threshold
    // that answering with error δ would require.
    let layout = StateLayout::new(2, 1, 1)?;
    let lazy = Schedule::new(layout, vec![qbound::simulator::Gate::Identity])?;
    let check = final_overlap_check(&gamma, &lazy, 0.1)?;
    println!(
        "no-query schedule: max final overlap {:.4} vs threshold {:.4} -> solved = {}",
        check.max_overlap, check.threshold, check.all_below
    );
    Ok(())
}
