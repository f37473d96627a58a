//! Exact counting: the relation behind an instance, its row/column extrema,
//! closed forms, and the bounds assembled from them.
//!
//! Everything here is integer-exact (big integers, no floats) until the very
//! last step where a finished ratio is converted once for a square root. The
//! enumerated quantities are ground truth; the closed forms are predictions to
//! be audited against them. They genuinely differ for ℓ at p ≥ 2 — the
//! enumeration takes the worst case over *tuples* of positions while the
//! closed form counts a single position — and that mismatch is surfaced as a
//! warning by the report layer, never papered over.

use crate::error::{Error, Result};
use crate::model::{CountingInstance, CountingSpec, OracleInput};
use itertools::Itertools;
use num_bigint::BigUint;
use num_rational::Ratio;
use num_traits::{One, ToPrimitive, Zero};

/// C(top, bottom) with out-of-range arguments (negative anywhere, bottom >
/// top) giving 0. Multiplicative evaluation: each partial product is exactly
/// divisible, so the arithmetic stays in integers.
pub fn binomial(top: i64, bottom: i64) -> BigUint {
    if bottom < 0 || bottom > top {
        return BigUint::zero();
    }
    let bottom = bottom.min(top - bottom) as u64;
    let top = top as u64;
    let mut acc = BigUint::one();
    for i in 0..bottom {
        acc = acc * BigUint::from(top - i) / BigUint::from(i + 1);
    }
    acc
}

/// The distinguishing relation of an instance: pairs (x, y) with x ≤ y
/// componentwise, stored as index pairs into the instance's input tables.
#[derive(Debug, Clone, PartialEq)]
pub struct RelationTable {
    pub xs: Vec<OracleInput>,
    pub ys: Vec<OracleInput>,
    pub pairs: Vec<(usize, usize)>,
}

impl RelationTable {
    pub fn row_counts(&self) -> Vec<u64> {
        let mut rows = vec![0u64; self.xs.len()];
        for &(xi, _) in &self.pairs {
            rows[xi] += 1;
        }
        rows
    }

    pub fn col_counts(&self) -> Vec<u64> {
        let mut cols = vec![0u64; self.ys.len()];
        for &(_, yi) in &self.pairs {
            cols[yi] += 1;
        }
        cols
    }

    /// String length N shared by all inputs.
    pub fn positions(&self) -> u64 {
        self.xs.first().map(|x| x.len()).unwrap_or(0)
    }
}

/// All related pairs of an instance, in (x index, y index) ascending order.
pub fn enumerate_relation(inst: &CountingInstance) -> RelationTable {
    let mut pairs = Vec::new();
    for (xi, x) in inst.xs.iter().enumerate() {
        for (yi, y) in inst.ys.iter().enumerate() {
            if x.is_subset_of(y) {
                pairs.push((xi, yi));
            }
        }
    }
    RelationTable {
        xs: inst.xs.clone(),
        ys: inst.ys.clone(),
        pairs,
    }
}

/// The subset of `pairs` a position tuple can expose: pairs that differ at
/// some position in the tuple. Duplicate positions are allowed and harmless.
pub fn filtered_pairs(rel: &RelationTable, tuple: &[usize]) -> Result<Vec<(usize, usize)>> {
    let mask = tuple_mask(tuple, rel.positions())?;
    Ok(rel
        .pairs
        .iter()
        .copied()
        .filter(|&(xi, yi)| (rel.xs[xi].mask() ^ rel.ys[yi].mask()) & mask != 0)
        .collect())
}

fn tuple_mask(tuple: &[usize], len: u64) -> Result<u64> {
    let mut mask = 0u64;
    for &i in tuple {
        if i as u64 >= len {
            return Err(Error::IndexOutOfRange {
                index: i,
                len: len as usize,
            });
        }
        mask |= 1 << i;
    }
    Ok(mask)
}

/// Distinct index subsets of {0, …, len−1} with 1 ≤ size ≤ p, sizes ascending
/// and each size in lexicographic order. This is the canonical sweep order
/// every max/argmax in the crate iterates in, which pins down witnesses and
/// tie-breaks. Subsets suffice for maxima over tuples: repeating an index
/// leaves the exposed set unchanged, and order never matters.
pub fn index_tuples(len: usize, p: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    for size in 1..=p.min(len) {
        out.extend((0..len).combinations(size));
    }
    out
}

/// Enumerated extrema of a relation at parallelism p, with witnesses.
///
/// h and h′ are the minimum row/column degrees of the full relation; ℓ and ℓ′
/// the maximum row/column degrees over all filtered relations, maximized over
/// position tuples of size ≤ p.
#[derive(Debug, Clone, PartialEq)]
pub struct ExtremaReport {
    pub p: usize,
    pub h: BigUint,
    pub h_prime: BigUint,
    pub ell: BigUint,
    pub ell_prime: BigUint,
    /// x index attaining h.
    pub h_row: usize,
    /// y index attaining h′.
    pub h_prime_col: usize,
    /// (tuple, x index) attaining ℓ.
    pub ell_witness: (Vec<usize>, usize),
    /// (tuple, y index) attaining ℓ′.
    pub ell_prime_witness: (Vec<usize>, usize),
}

pub fn extrema(rel: &RelationTable, p: usize) -> Result<ExtremaReport> {
    let rows = rel.row_counts();
    let cols = rel.col_counts();
    for (i, &c) in rows.iter().enumerate() {
        if c == 0 {
            return Err(Error::EmptyRowOrColumn {
                axis: "row",
                index: i,
            });
        }
    }
    for (j, &c) in cols.iter().enumerate() {
        if c == 0 {
            return Err(Error::EmptyRowOrColumn {
                axis: "column",
                index: j,
            });
        }
    }
    let argmin = |v: &[u64]| {
        let mut best = 0;
        for i in 1..v.len() {
            if v[i] < v[best] {
                best = i;
            }
        }
        best
    };
    let h_row = argmin(&rows);
    let h_prime_col = argmin(&cols);

    let mut ell = 0u64;
    let mut ell_prime = 0u64;
    let mut ell_witness = (Vec::new(), 0usize);
    let mut ell_prime_witness = (Vec::new(), 0usize);
    for tuple in index_tuples(rel.positions() as usize, p) {
        let kept = filtered_pairs(rel, &tuple)?;
        let mut r = vec![0u64; rel.xs.len()];
        let mut c = vec![0u64; rel.ys.len()];
        for (xi, yi) in kept {
            r[xi] += 1;
            c[yi] += 1;
        }
        for (xi, &cnt) in r.iter().enumerate() {
            if cnt > ell {
                ell = cnt;
                ell_witness = (tuple.clone(), xi);
            }
        }
        for (yi, &cnt) in c.iter().enumerate() {
            if cnt > ell_prime {
                ell_prime = cnt;
                ell_prime_witness = (tuple.clone(), yi);
            }
        }
    }

    Ok(ExtremaReport {
        p,
        h: rows[h_row].into(),
        h_prime: cols[h_prime_col].into(),
        ell: ell.into(),
        ell_prime: ell_prime.into(),
        h_row,
        h_prime_col,
        ell_witness,
        ell_prime_witness,
    })
}

/// Closed-form predictions for a counting instance.
///
/// h and h′ are exact (every row and column of the relation has the same
/// degree). `ell` counts the single-position worst case C(N−K−1, εK−1), which
/// enumeration can exceed once tuples come into play; `ell_prime_cap` is the
/// union bound p·C((1+ε)K−1, K), an upper bound rather than an exact value.
#[derive(Debug, Clone, PartialEq)]
pub struct ClosedForms {
    pub h: BigUint,
    pub h_prime: BigUint,
    pub ell: BigUint,
    pub ell_prime_cap: BigUint,
}

pub fn counting_closed_forms(spec: &CountingSpec, k: u64, p: usize) -> Result<ClosedForms> {
    if k == 0 || p == 0 {
        return Err(Error::invalid("K and p must be at least 1"));
    }
    let ek_ratio = spec.epsilon() * Ratio::from_integer(k);
    if !ek_ratio.is_integer() || ek_ratio == Ratio::from_integer(0) {
        return Err(Error::NonIntegerParameters {
            value: ek_ratio.to_string(),
        });
    }
    let ek = ek_ratio.to_integer() as i64;
    let n = spec.len() as i64;
    let k = k as i64;
    if k + ek > n {
        return Err(Error::Overflow {
            value: (k + ek) as u64,
            n: n as u64,
        });
    }
    Ok(ClosedForms {
        h: binomial(n - k, ek),
        h_prime: binomial(k + ek, k),
        ell: binomial(n - k - 1, ek - 1),
        ell_prime_cap: BigUint::from(p) * binomial(k + ek - 1, k),
    })
}

/// √(h·h′ / (ℓ·ℓ′)), the products formed exactly in big integers and
/// converted to floating point once at the end.
pub fn combinatorial_bound(
    h: &BigUint,
    h_prime: &BigUint,
    ell: &BigUint,
    ell_prime: &BigUint,
) -> Result<f64> {
    if h.is_zero() || h_prime.is_zero() || ell.is_zero() || ell_prime.is_zero() {
        return Err(Error::invalid(
            "combinatorial bound needs h, h', ell, ell' all positive",
        ));
    }
    let num = (h * h_prime).to_f64().expect("finite");
    let den = (ell * ell_prime).to_f64().expect("finite");
    Ok((num / den).sqrt())
}

/// The counting rate (1/ε)·√(N/(pK)): what the closed forms collapse to for
/// this instance family.
pub fn counting_query_bound(spec: &CountingSpec, k: u64, p: usize) -> Result<f64> {
    if k == 0 || p == 0 {
        return Err(Error::invalid("K and p must be at least 1"));
    }
    let n = spec.len() as f64;
    Ok((1.0 / spec.epsilon_f64()) * (n / (p as f64 * k as f64)).sqrt())
}
