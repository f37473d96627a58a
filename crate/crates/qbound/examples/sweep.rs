//! Evaluate every bound over a small parameter grid and emit the CSV table.
//!
//! Rows are ordered lexicographically in (n, K, ε, p). Parameter points
//! that fail validation (non-integer εK, overlapping value windows, and so
//! on) are skipped with a note on stderr rather than aborting the sweep —
//! the table that comes out contains exactly the valid points.

use num_rational::Ratio;
use qbound::report::{render_sweep_csv, sweep};

fn main() {
    let ns = [2u32, 3];
    let ks = [1u64, 2, 3];
    let epss = [Ratio::new(1u64, 1), Ratio::new(1u64, 2)];
    let ps = [1u64, 2, 4];

    let outcome = sweep(&ns, &ks, &epss, &ps);
    for msg in &outcome.skipped {
        eprintln!("{msg}");
    }
    print!("{}", render_sweep_csv(&outcome.rows));
    eprintln!(
        "{} rows, {} skipped points",
        outcome.rows.len(),
        outcome.skipped.len()
    );
}
