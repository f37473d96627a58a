//! Adversary matrices over an input relation, position-tuple filtering, and
//! the spectral form of the query bound.
//!
//! The bound is a ratio of two largest eigenvalues: the full matrix Γ on top,
//! and on the bottom the worst case, over all tuples of at most p positions,
//! of Γ with every entry removed whose input pair agrees on the whole tuple.
//! Filtering can only discard entries, so the denominator never exceeds the
//! numerator and the ratio is at least 1.

use crate::combinatorics::{index_tuples, RelationTable};
use crate::error::{Error, Result};
use crate::model::OracleInput;
use crate::numerics::{spectral_norm, SymMatrix};
use rayon::prelude::*;

/// A symmetric, entrywise-nonnegative weight matrix indexed by oracle
/// inputs, zero on pairs the bound is not allowed to charge.
///
/// Inputs are stored xs-then-ys; `x_count` marks the split. The matrix from
/// [`AdversaryMatrix::from_relation`] is the 0/1 biadjacency of the relation,
/// mirrored to make it symmetric.
#[derive(Debug, Clone, PartialEq)]
pub struct AdversaryMatrix {
    inputs: Vec<OracleInput>,
    x_count: usize,
    gamma: SymMatrix,
}

impl AdversaryMatrix {
    pub fn new(inputs: Vec<OracleInput>, x_count: usize, gamma: SymMatrix) -> Result<Self> {
        if inputs.len() != gamma.dim() {
            return Err(Error::DimMismatch {
                left: inputs.len(),
                right: gamma.dim(),
                context: "inputs vs matrix dimension",
            });
        }
        if x_count > inputs.len() {
            return Err(Error::IndexOutOfRange {
                index: x_count,
                len: inputs.len(),
            });
        }
        Ok(Self {
            inputs,
            x_count,
            gamma,
        })
    }

    pub fn from_relation(rel: &RelationTable) -> Self {
        let nx = rel.xs.len();
        let dim = nx + rel.ys.len();
        let mut gamma = SymMatrix::zeros(dim);
        for &(xi, yi) in &rel.pairs {
            gamma.set(xi, nx + yi, 1.0);
        }
        let mut inputs = rel.xs.clone();
        inputs.extend_from_slice(&rel.ys);
        Self {
            inputs,
            x_count: nx,
            gamma,
        }
    }

    pub fn inputs(&self) -> &[OracleInput] {
        &self.inputs
    }

    pub fn x_count(&self) -> usize {
        self.x_count
    }

    pub fn gamma(&self) -> &SymMatrix {
        &self.gamma
    }

    pub fn dim(&self) -> usize {
        self.inputs.len()
    }

    /// String length N of the underlying inputs.
    pub fn positions(&self) -> usize {
        self.inputs.first().map(|i| i.len() as usize).unwrap_or(0)
    }
}

/// What a well-formed adversary matrix must not contain.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ViolationKind {
    /// An entry below zero.
    NegativeEntry,
    /// A nonzero diagonal entry.
    NonzeroDiagonal,
    /// A nonzero entry on a pair the predicate says should not be charged
    /// (for counting instances: two inputs whose acceptance windows meet).
    OverlappingPair,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Violation {
    pub row: usize,
    pub col: usize,
    pub value: f64,
    pub kind: ViolationKind,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn is_clean(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Check the structural requirements on an adversary matrix. `values_overlap`
/// decides whether a pair of inputs can share an admissible output; nonzero
/// weight on such a pair is a violation.
pub fn validate_adversary(
    a: &AdversaryMatrix,
    values_overlap: impl Fn(&OracleInput, &OracleInput) -> bool,
) -> ValidationReport {
    let mut violations = Vec::new();
    let g = a.gamma();
    for row in 0..g.dim() {
        for col in row..g.dim() {
            let value = g.get(row, col);
            if value < 0.0 {
                violations.push(Violation {
                    row,
                    col,
                    value,
                    kind: ViolationKind::NegativeEntry,
                });
            }
            if row == col && value != 0.0 {
                violations.push(Violation {
                    row,
                    col,
                    value,
                    kind: ViolationKind::NonzeroDiagonal,
                });
            }
            if row != col && value != 0.0 && values_overlap(&a.inputs[row], &a.inputs[col]) {
                violations.push(Violation {
                    row,
                    col,
                    value,
                    kind: ViolationKind::OverlappingPair,
                });
            }
        }
    }
    ValidationReport { violations }
}

/// Γ restricted to pairs that differ at some position of `tuple`; everything
/// else is zeroed. Duplicate positions in the tuple are harmless.
pub fn filter_matrix(a: &AdversaryMatrix, tuple: &[usize]) -> Result<SymMatrix> {
    let n = a.positions();
    let mut mask = 0u64;
    for &i in tuple {
        if i >= n {
            return Err(Error::IndexOutOfRange { index: i, len: n });
        }
        mask |= 1 << i;
    }
    let mut out = SymMatrix::zeros(a.dim());
    for row in 0..a.dim() {
        for col in row + 1..a.dim() {
            if (a.inputs[row].mask() ^ a.inputs[col].mask()) & mask != 0 {
                out.set(row, col, a.gamma.get(row, col));
            }
        }
    }
    Ok(out)
}

/// The spectral bound at parallelism p, with the tuple that attains the
/// denominator.
#[derive(Debug, Clone, PartialEq)]
pub struct SpectralBoundReport {
    pub p: usize,
    /// Largest eigenvalue of the full matrix.
    pub lambda: f64,
    /// max over tuples of ≤ p positions of the filtered largest eigenvalue.
    pub max_filtered_lambda: f64,
    /// First tuple attaining the maximum, in the canonical sweep order.
    pub worst_tuple: Vec<usize>,
    /// lambda / max_filtered_lambda.
    pub ratio: f64,
}

/// Evaluate λ(Γ) / max_tuple λ(Γ filtered), sweeping all position tuples of
/// size 1..=p. Ties on the filtered eigenvalue resolve to the earliest tuple
/// in the canonical order, so the witness is reproducible.
pub fn spectral_bound(a: &AdversaryMatrix, p: usize) -> Result<SpectralBoundReport> {
    if p == 0 {
        return Err(Error::invalid("parallelism p must be at least 1"));
    }
    if a.gamma().is_zero() {
        return Err(Error::ZeroMatrix);
    }
    let lambda = spectral_norm(a.gamma());
    let tuples = index_tuples(a.positions(), p);
    let scored: Result<Vec<(usize, f64)>> = tuples
        .par_iter()
        .enumerate()
        .map(|(idx, tuple)| Ok((idx, spectral_norm(&filter_matrix(a, tuple)?))))
        .collect();
    let scored = scored?;
    let (best_idx, max_filtered_lambda) = scored
        .into_iter()
        .reduce(|best, cand| if cand.1 > best.1 { cand } else { best })
        .expect("at least one tuple for p >= 1");
    Ok(SpectralBoundReport {
        p,
        lambda,
        max_filtered_lambda,
        worst_tuple: tuples[best_idx].clone(),
        ratio: lambda / max_filtered_lambda,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::combinatorics::enumerate_relation;
    use crate::model::{CountingInstance, CountingSpec};
    use crate::tol::ASSERT_TOL;
    use num_rational::Ratio;

    fn flagship_matrix() -> AdversaryMatrix {
        let spec = CountingSpec::new(2, Ratio::new(1, 1)).unwrap();
        let rel = enumerate_relation(&CountingInstance::build(spec, 1).unwrap());
        AdversaryMatrix::from_relation(&rel)
    }

    #[test]
    fn relation_matrix_shape() {
        let a = flagship_matrix();
        assert_eq!(a.dim(), 10);
        assert_eq!(a.x_count(), 4);
        // 12 related pairs, each mirrored once.
        let ones: f64 = (0..10)
            .flat_map(|r| (0..10).map(move |c| (r, c)))
            .map(|(r, c)| a.gamma().get(r, c))
            .sum();
        assert_eq!(ones, 24.0);
    }

    #[test]
    fn relation_matrix_is_clean() {
        let a = flagship_matrix();
        let spec = CountingSpec::new(2, Ratio::new(1, 1)).unwrap();
        let report = validate_adversary(&a, |u, v| !spec.values_disjoint(u, v));
        assert!(report.is_clean());
    }

    #[test]
    fn validation_flags_each_kind() {
        let spec = CountingSpec::new(2, Ratio::new(1, 1)).unwrap();
        let inst = CountingInstance::build(spec, 1).unwrap();
        let mut inputs = vec![inst.xs[0], inst.xs[1]];
        inputs.push(inst.ys[0]);
        let mut gamma = SymMatrix::zeros(3);
        gamma.set(0, 1, 1.0); // both weight 1: windows overlap
        gamma.set(0, 2, -0.5); // negative
        gamma.set(1, 1, 2.0); // diagonal
        let a = AdversaryMatrix::new(inputs, 2, gamma).unwrap();
        let report = validate_adversary(&a, |u, v| !spec.values_disjoint(u, v));
        let kinds: Vec<ViolationKind> = report.violations.iter().map(|v| v.kind).collect();
        assert!(kinds.contains(&ViolationKind::OverlappingPair));
        assert!(kinds.contains(&ViolationKind::NegativeEntry));
        assert!(kinds.contains(&ViolationKind::NonzeroDiagonal));
        assert_eq!(report.violations.len(), 3);
    }

    #[test]
    fn flagship_spectral_ladder() {
        let a = flagship_matrix();
        let b1 = spectral_bound(&a, 1).unwrap();
        assert!((b1.lambda - 6f64.sqrt()).abs() < ASSERT_TOL);
        assert!((b1.ratio - 6f64.sqrt()).abs() < ASSERT_TOL);
        assert!((b1.max_filtered_lambda - 1.0).abs() < ASSERT_TOL);
        assert_eq!(b1.worst_tuple, vec![0]);

        let b2 = spectral_bound(&a, 2).unwrap();
        assert!((b2.ratio - 3f64.sqrt()).abs() < ASSERT_TOL);
        assert!((b2.max_filtered_lambda - 2f64.sqrt()).abs() < ASSERT_TOL);
        assert_eq!(b2.worst_tuple, vec![0, 1]);

        let b4 = spectral_bound(&a, 4).unwrap();
        assert!((b4.ratio - 1.0).abs() < ASSERT_TOL);
        assert_eq!(b4.worst_tuple, vec![0, 1, 2, 3]);

        let b3 = spectral_bound(&a, 3).unwrap();
        assert!(b1.ratio >= b2.ratio - ASSERT_TOL);
        assert!(b2.ratio >= b3.ratio - ASSERT_TOL);
        assert!(b3.ratio >= b4.ratio - ASSERT_TOL);
    }

    #[test]
    fn pair_tuple_keeps_six_pairs() {
        let a = flagship_matrix();
        let f = filter_matrix(&a, &[0, 1]).unwrap();
        let kept: f64 = (0..10)
            .flat_map(|r| (0..10).map(move |c| (r, c)))
            .map(|(r, c)| f.get(r, c))
            .sum();
        assert_eq!(kept, 12.0); // 6 pairs mirrored
        assert!((spectral_norm(&f) - 2f64.sqrt()).abs() < ASSERT_TOL);
    }

    #[test]
    fn duplicate_indices_do_not_change_the_filter() {
        let a = flagship_matrix();
        let once = filter_matrix(&a, &[1]).unwrap();
        let thrice = filter_matrix(&a, &[1, 1, 1]).unwrap();
        assert_eq!(once, thrice);
        assert!(matches!(
            filter_matrix(&a, &[7]),
            Err(Error::IndexOutOfRange { index: 7, len: 4 })
        ));
    }

    #[test]
    fn ratio_monotone_in_parallelism() {
        for (n, k, eps) in [(2u32, 1u64, Ratio::new(1, 1)), (3, 2, Ratio::new(1, 1))] {
            let spec = CountingSpec::new(n, eps).unwrap();
            let rel = enumerate_relation(&CountingInstance::build(spec, k).unwrap());
            let a = AdversaryMatrix::from_relation(&rel);
            let mut last = f64::INFINITY;
            for p in 1..=3 {
                let b = spectral_bound(&a, p).unwrap();
                assert!(b.ratio <= last + ASSERT_TOL, "p={p} ratio {}", b.ratio);
                assert!(b.ratio >= 1.0 - ASSERT_TOL);
                last = b.ratio;
            }
        }
    }

    #[test]
    fn zero_matrix_rejected() {
        let spec = CountingSpec::new(2, Ratio::new(1, 1)).unwrap();
        let inst = CountingInstance::build(spec, 1).unwrap();
        let a = AdversaryMatrix::new(inst.xs.clone(), 4, SymMatrix::zeros(4)).unwrap();
        assert_eq!(spectral_bound(&a, 1).unwrap_err(), Error::ZeroMatrix);
    }
}
