//! Dense symmetric eigensolver and small vector helpers.
//!
//! The adversary bounds need full spectra of modest symmetric matrices
//! (dimension ≤ a few thousand, usually ≤ 150). A cyclic Jacobi iteration is
//! the right tool at that scale: it is simple enough to audit, deterministic
//! (no pivoting heuristics), and accurate to roundoff for every eigenvalue at
//! once — important because the same decomposition feeds both spectral norms
//! (max |λ|) and principal eigenvectors. Rotations sweep the strict upper
//! triangle in a fixed row-major order until the off-diagonal mass is gone.

use crate::error::{Error, Result};
use crate::tol;
use num_complex::Complex64;

/// Real symmetric matrix, dense row-major storage.
///
/// Symmetry is exact and enforced at every way in: `set` writes both
/// triangles, `from_rows` rejects asymmetric input outright.
#[derive(Debug, Clone, PartialEq)]
pub struct SymMatrix {
    dim: usize,
    a: Vec<f64>,
}

impl SymMatrix {
    pub fn zeros(dim: usize) -> Self {
        SymMatrix {
            dim,
            a: vec![0.0; dim * dim],
        }
    }

    /// Build from a function of (row, col); only the upper triangle is
    /// evaluated and the result is mirrored, so symmetry holds by
    /// construction.
    pub fn from_fn(dim: usize, mut f: impl FnMut(usize, usize) -> f64) -> Self {
        let mut m = SymMatrix::zeros(dim);
        for i in 0..dim {
            for j in i..dim {
                let v = f(i, j);
                m.a[i * dim + j] = v;
                m.a[j * dim + i] = v;
            }
        }
        m
    }

    /// Build from explicit rows, rejecting anything not exactly symmetric.
    pub fn from_rows(rows: &[Vec<f64>]) -> Result<Self> {
        let dim = rows.len();
        for (i, r) in rows.iter().enumerate() {
            if r.len() != dim {
                return Err(Error::DimMismatch {
                    left: r.len(),
                    right: dim,
                    context: "matrix row length vs dimension",
                });
            }
            for (j, &v) in r.iter().enumerate() {
                if v != rows[j][i] {
                    return Err(Error::AsymmetricMatrix { row: i, col: j });
                }
            }
        }
        Ok(SymMatrix {
            dim,
            a: rows.iter().flat_map(|r| r.iter().copied()).collect(),
        })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.a[i * self.dim + j]
    }

    /// Write both (i,j) and (j,i).
    pub fn set(&mut self, i: usize, j: usize, v: f64) {
        self.a[i * self.dim + j] = v;
        self.a[j * self.dim + i] = v;
    }

    pub fn is_zero(&self) -> bool {
        self.a.iter().all(|&v| v == 0.0)
    }

    pub fn min_entry(&self) -> f64 {
        self.a.iter().copied().fold(f64::INFINITY, f64::min)
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.a.iter().map(|v| v * v).sum::<f64>().sqrt()
    }

    /// y = A·x.
    pub fn mul_vec(&self, x: &[f64]) -> Vec<f64> {
        assert_eq!(x.len(), self.dim);
        (0..self.dim)
            .map(|i| {
                let row = &self.a[i * self.dim..(i + 1) * self.dim];
                row.iter().zip(x).map(|(a, b)| a * b).sum()
            })
            .collect()
    }
}

/// Full eigendecomposition: `values` descending, `vectors[k]` the unit
/// eigenvector paired with `values[k]`.
#[derive(Debug, Clone)]
pub struct Eigen {
    pub values: Vec<f64>,
    pub vectors: Vec<Vec<f64>>,
}

/// Cyclic Jacobi on a copy of `m`. When `accumulate` is false the rotations
/// are not applied to an eigenvector matrix, which roughly halves the work
/// for callers that only need eigenvalues.
fn jacobi(m: &SymMatrix, accumulate: bool) -> (Vec<f64>, Option<Vec<f64>>) {
    let n = m.dim;
    let mut a = m.a.clone();
    let mut v = if accumulate {
        let mut id = vec![0.0; n * n];
        for i in 0..n {
            id[i * n + i] = 1.0;
        }
        Some(id)
    } else {
        None
    };
    if n < 2 {
        return (
            (0..n)
                .map(|i| a.get(i * n + i).copied().unwrap_or(0.0))
                .collect(),
            v,
        );
    }

    let scale = m.frobenius_norm();
    if scale == 0.0 {
        return (vec![0.0; n], v);
    }

    // Quadratic convergence makes 64 sweeps unreachable for any matrix this
    // crate can hold; hitting the cap means the rotations are broken.
    for sweep in 0..64 {
        let mut off = 0.0;
        for p in 0..n {
            for q in (p + 1)..n {
                off += 2.0 * a[p * n + q] * a[p * n + q];
            }
        }
        if off.sqrt() <= tol::EIGEN_CONVERGENCE * scale {
            break;
        }
        assert!(sweep < 63, "Jacobi failed to converge in 64 sweeps");

        for p in 0..n {
            for q in (p + 1)..n {
                let apq = a[p * n + q];
                if apq == 0.0 {
                    continue;
                }
                let theta = (a[q * n + q] - a[p * n + p]) / (2.0 * apq);
                // Smaller-angle root of t² + 2tθ − 1 = 0; the guarded branch
                // avoids overflow in θ² for extreme diagonal imbalance.
                let t = if theta.abs() > 1e154 {
                    0.5 / theta
                } else if theta >= 0.0 {
                    1.0 / (theta + (theta * theta + 1.0).sqrt())
                } else {
                    1.0 / (theta - (theta * theta + 1.0).sqrt())
                };
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;
                let tau = s / (1.0 + c);

                a[p * n + p] -= t * apq;
                a[q * n + q] += t * apq;
                a[p * n + q] = 0.0;
                a[q * n + p] = 0.0;
                for r in 0..n {
                    if r == p || r == q {
                        continue;
                    }
                    let arp = a[r * n + p];
                    let arq = a[r * n + q];
                    let new_rp = arp - s * (arq + tau * arp);
                    let new_rq = arq + s * (arp - tau * arq);
                    a[r * n + p] = new_rp;
                    a[p * n + r] = new_rp;
                    a[r * n + q] = new_rq;
                    a[q * n + r] = new_rq;
                }
                if let Some(vm) = v.as_mut() {
                    for r in 0..n {
                        let vrp = vm[r * n + p];
                        let vrq = vm[r * n + q];
                        vm[r * n + p] = vrp - s * (vrq + tau * vrp);
                        vm[r * n + q] = vrq + s * (vrp - tau * vrq);
                    }
                }
            }
        }
    }

    ((0..n).map(|i| a[i * n + i]).collect(), v)
}

/// Full spectrum of a symmetric matrix, eigenvalues descending.
pub fn eigendecompose(m: &SymMatrix) -> Eigen {
    let n = m.dim;
    let (vals, vmat) = jacobi(m, true);
    let vmat = vmat.expect("accumulation requested");
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| vals[j].partial_cmp(&vals[i]).unwrap());
    let values = order.iter().map(|&k| vals[k]).collect();
    let vectors = order
        .iter()
        .map(|&k| (0..n).map(|r| vmat[r * n + k]).collect())
        .collect();
    Eigen { values, vectors }
}

/// max |λ| over the spectrum; 0 for the empty or zero matrix.
pub fn spectral_norm(m: &SymMatrix) -> f64 {
    let (vals, _) = jacobi(m, false);
    vals.iter().fold(0.0, |acc: f64, v| acc.max(v.abs()))
}

/// Largest eigenvalue of an entrywise-nonnegative symmetric matrix together
/// with a nonnegative unit eigenvector for it.
///
/// For a nonnegative matrix the spectral radius is itself an eigenvalue and
/// owns a nonnegative eigenvector. When that eigenvalue is degenerate (the
/// matrix splits into components), any single solver vector may carry mixed
/// signs, so the vector is recovered by projecting the all-ones vector onto
/// the top eigenspace — a nonnegative combination of the per-component
/// vectors, and basis-independent, hence deterministic.
pub fn principal_eigenpair(m: &SymMatrix) -> Result<(f64, Vec<f64>)> {
    if m.is_zero() {
        return Err(Error::ZeroMatrix);
    }
    if m.min_entry() < 0.0 {
        return Err(Error::invalid(
            "principal eigenpair needs an entrywise nonnegative matrix",
        ));
    }
    let n = m.dim;
    let eig = eigendecompose(m);
    let lam = eig.values[0];
    let deg_tol = tol::ASSERT_TOL * lam.abs().max(1.0);

    let mut w = vec![0.0; n];
    for (val, vec) in eig.values.iter().zip(&eig.vectors) {
        if lam - val > deg_tol {
            break;
        }
        let ones_dot: f64 = vec.iter().sum();
        for (wi, vi) in w.iter_mut().zip(vec) {
            *wi += ones_dot * vi;
        }
    }
    let norm = w.iter().map(|x| x * x).sum::<f64>().sqrt();
    assert!(
        norm > tol::ASSERT_TOL,
        "all-ones vector has no weight in the top eigenspace of a nonnegative matrix"
    );
    for x in w.iter_mut() {
        *x /= norm;
        // Roundoff may leave dust below zero; anything materially negative
        // would mean the eigenspace projection above is wrong.
        assert!(*x > -tol::ASSERT_TOL, "principal eigenvector entry {x} < 0");
        *x = x.max(0.0);
    }
    let norm2 = w.iter().map(|x| x * x).sum::<f64>().sqrt();
    for x in w.iter_mut() {
        *x /= norm2;
    }
    Ok((lam, w))
}

/// Complex amplitude vector; the unit of currency for simulator states.
#[derive(Debug, Clone, PartialEq)]
pub struct AmplitudeVector {
    amps: Vec<Complex64>,
}

impl AmplitudeVector {
    /// |idx⟩ in a `dim`-dimensional space.
    pub fn basis_state(dim: usize, idx: usize) -> Self {
        assert!(idx < dim);
        let mut amps = vec![Complex64::new(0.0, 0.0); dim];
        amps[idx] = Complex64::new(1.0, 0.0);
        AmplitudeVector { amps }
    }

    pub fn from_amps(amps: Vec<Complex64>) -> Self {
        AmplitudeVector { amps }
    }

    pub fn dim(&self) -> usize {
        self.amps.len()
    }

    pub fn amps(&self) -> &[Complex64] {
        &self.amps
    }

    pub fn amps_mut(&mut self) -> &mut [Complex64] {
        &mut self.amps
    }

    pub fn norm(&self) -> f64 {
        self.amps.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt()
    }

    pub fn is_normalized(&self) -> bool {
        (self.norm() - 1.0).abs() <= tol::NORM_TOL
    }
}

/// ⟨u|v⟩ with the physics convention (u conjugated).
pub fn overlap(u: &AmplitudeVector, v: &AmplitudeVector) -> Result<Complex64> {
    if u.dim() != v.dim() {
        return Err(Error::DimMismatch {
            left: u.dim(),
            right: v.dim(),
            context: "overlap of amplitude vectors",
        });
    }
    Ok(u.amps.iter().zip(&v.amps).map(|(a, b)| a.conj() * b).sum())
}
