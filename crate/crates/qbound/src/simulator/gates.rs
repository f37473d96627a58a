//! The unitaries an algorithm may apply between oracle calls.
//!
//! Structured gates cover the standard moves (uniformize the index
//! registers, put result qubits into the |−⟩ basis, reflect about the mean,
//! fold results into the workspace, inverse Fourier transform the
//! workspace); [`Gate::Explicit`] admits an arbitrary unitary given as a
//! dense matrix, which is how randomized schedules are built.

use crate::error::{Error, Result};
use crate::numerics::AmplitudeVector;
use crate::simulator::StateLayout;
use crate::tol::UNITARITY_TOL;
use num_complex::Complex64;
use rand::Rng;
use std::f64::consts::{FRAC_1_SQRT_2, TAU};

/// Dense complex square matrix, row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct CMatrix {
    dim: usize,
    data: Vec<Complex64>,
}

impl CMatrix {
    pub fn identity(dim: usize) -> Self {
        let mut m = Self {
            dim,
            data: vec![Complex64::new(0.0, 0.0); dim * dim],
        };
        for i in 0..dim {
            m.data[i * dim + i] = Complex64::new(1.0, 0.0);
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Complex64>>) -> Result<Self> {
        let dim = rows.len();
        for r in &rows {
            if r.len() != dim {
                return Err(Error::DimMismatch {
                    left: r.len(),
                    right: dim,
                    context: "matrix row length vs dimension",
                });
            }
        }
        Ok(Self {
            dim,
            data: rows.into_iter().flatten().collect(),
        })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn get(&self, r: usize, c: usize) -> Complex64 {
        self.data[r * self.dim + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: Complex64) {
        self.data[r * self.dim + c] = v;
    }

    pub fn mul_vec(&self, v: &[Complex64]) -> Vec<Complex64> {
        assert_eq!(v.len(), self.dim);
        (0..self.dim)
            .map(|r| {
                (0..self.dim)
                    .map(|c| self.data[r * self.dim + c] * v[c])
                    .sum()
            })
            .collect()
    }

    /// max |(U†U − I)_{rc}|: zero for a perfect unitary.
    pub fn unitarity_defect(&self) -> f64 {
        let d = self.dim;
        let mut worst = 0.0f64;
        for r in 0..d {
            for c in 0..d {
                let mut dot = Complex64::new(0.0, 0.0);
                for k in 0..d {
                    dot += self.data[k * d + r].conj() * self.data[k * d + c];
                }
                if r == c {
                    dot -= 1.0;
                }
                worst = worst.max(dot.norm());
            }
        }
        worst
    }

    /// A pseudo-random unitary: complex Gaussian matrix orthonormalized by
    /// modified Gram–Schmidt (with one re-orthogonalization pass for
    /// stability). Deterministic in the generator state.
    pub fn random_unitary<R: Rng>(dim: usize, rng: &mut R) -> Self {
        let mut cols: Vec<Vec<Complex64>> = (0..dim)
            .map(|_| {
                (0..dim)
                    .map(|_| Complex64::new(gaussian(rng), gaussian(rng)))
                    .collect()
            })
            .collect();
        for k in 0..dim {
            let (done, rest) = cols.split_at_mut(k);
            let ck = &mut rest[0];
            for _pass in 0..2 {
                for cj in done.iter() {
                    let proj: Complex64 =
                        cj.iter().zip(ck.iter()).map(|(a, b)| a.conj() * b).sum();
                    for (x, y) in ck.iter_mut().zip(cj.iter()) {
                        *x -= proj * y;
                    }
                }
            }
            let norm = ck.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
            assert!(norm > 1e-8, "gaussian columns were dependent");
            for z in ck.iter_mut() {
                *z /= norm;
            }
        }
        let mut m = Self::identity(dim);
        for (c, col) in cols.iter().enumerate() {
            for (r, z) in col.iter().enumerate() {
                m.set(r, c, *z);
            }
        }
        m
    }
}

/// One standard normal draw (Box–Muller).
fn gaussian<R: Rng>(rng: &mut R) -> f64 {
    loop {
        let u: f64 = rng.gen();
        if u > 0.0 {
            let v: f64 = rng.gen();
            return (-2.0 * u.ln()).sqrt() * (TAU * v).cos();
        }
    }
}

/// A unitary applicable to a state in a given layout.
#[derive(Debug, Clone)]
pub enum Gate {
    Identity,
    /// Hadamard on every qubit of every index register.
    IndexHadamard,
    /// (HX) on every result qubit: |0⟩ ↦ |−⟩, so a later oracle XOR turns
    /// into a phase kickback.
    ResultMinus,
    /// Reflection 2|s⟩⟨s| − 1 about the uniform state of the joint index
    /// registers; result and workspace untouched.
    Diffusion,
    /// XOR the result bits B into the workspace value (needs w a power of
    /// two with w ≥ 2^p), a measurement-free way to record what was seen.
    CopyResultsToWorkspace,
    /// Inverse discrete Fourier transform on the workspace register.
    WorkspaceInverseQft,
    /// Arbitrary unitary on the full state.
    Explicit(CMatrix),
    /// Apply each gate in order, first element first.
    Compose(Vec<Gate>),
}

impl Gate {
    /// Check the gate fits the layout and is actually unitary.
    pub fn validate(&self, lay: &StateLayout) -> Result<()> {
        match self {
            Gate::Explicit(m) => {
                if m.dim() != lay.dim() {
                    return Err(Error::DimMismatch {
                        left: m.dim(),
                        right: lay.dim(),
                        context: "gate matrix vs layout dimension",
                    });
                }
                let defect = m.unitarity_defect();
                if defect > UNITARITY_TOL {
                    return Err(Error::NonUnitary { defect });
                }
                Ok(())
            }
            Gate::CopyResultsToWorkspace => {
                let w = lay.workspace();
                if !w.is_power_of_two() || w < (1 << lay.parallelism()) {
                    return Err(Error::invalid(
                        "result copy needs a power-of-two workspace holding all result bits",
                    ));
                }
                Ok(())
            }
            Gate::Compose(gs) => gs.iter().try_for_each(|g| g.validate(lay)),
            _ => Ok(()),
        }
    }

    pub fn apply(&self, lay: &StateLayout, v: &mut AmplitudeVector) {
        assert_eq!(v.dim(), lay.dim(), "state does not fit the layout");
        match self {
            Gate::Identity => {}
            Gate::IndexHadamard => {
                let h = [
                    [FRAC_1_SQRT_2, FRAC_1_SQRT_2],
                    [FRAC_1_SQRT_2, -FRAC_1_SQRT_2],
                ];
                for q in 0..(lay.qubits() as usize * lay.parallelism()) {
                    let stride = lay.workspace() << (lay.parallelism() + q);
                    butterfly(v.amps_mut(), stride, &h);
                }
            }
            Gate::ResultMinus => {
                let hx = [
                    [FRAC_1_SQRT_2, FRAC_1_SQRT_2],
                    [-FRAC_1_SQRT_2, FRAC_1_SQRT_2],
                ];
                for q in 0..lay.parallelism() {
                    let stride = lay.workspace() << q;
                    butterfly(v.amps_mut(), stride, &hx);
                }
            }
            Gate::Diffusion => {
                let np = lay.len().pow(lay.parallelism() as u32);
                let block = (1 << lay.parallelism()) * lay.workspace();
                let amps = v.amps_mut();
                for rem in 0..block {
                    let mut mean = Complex64::new(0.0, 0.0);
                    for i in 0..np {
                        mean += amps[i * block + rem];
                    }
                    mean /= np as f64;
                    for i in 0..np {
                        let a = &mut amps[i * block + rem];
                        *a = 2.0 * mean - *a;
                    }
                }
            }
            Gate::CopyResultsToWorkspace => {
                let w = lay.workspace();
                let mut out = vec![Complex64::new(0.0, 0.0); lay.dim()];
                for (idx, amp) in v.amps().iter().enumerate() {
                    let ws = idx % w;
                    let rest = idx / w;
                    let b = rest & ((1 << lay.parallelism()) - 1);
                    out[rest * w + (ws ^ b)] = *amp;
                }
                *v = AmplitudeVector::from_amps(out);
            }
            Gate::WorkspaceInverseQft => {
                let w = lay.workspace();
                let amps = v.amps_mut();
                let scale = 1.0 / (w as f64).sqrt();
                for block in amps.chunks_mut(w) {
                    let old = block.to_vec();
                    for (a, slot) in block.iter_mut().enumerate() {
                        let mut acc = Complex64::new(0.0, 0.0);
                        for (b, amp) in old.iter().enumerate() {
                            let angle = -TAU * ((a * b) % w) as f64 / w as f64;
                            acc += amp * Complex64::from_polar(1.0, angle);
                        }
                        *slot = acc * scale;
                    }
                }
            }
            Gate::Explicit(m) => {
                let out = m.mul_vec(v.amps());
                *v = AmplitudeVector::from_amps(out);
            }
            Gate::Compose(gs) => {
                for g in gs {
                    g.apply(lay, v);
                }
            }
        }
    }
}

/// Apply a real 2×2 matrix across every pair of amplitudes whose flat
/// indices differ by `stride` (pair base chosen where the stride digit is
/// even). With power-of-two strides this is a one-qubit gate.
fn butterfly(amps: &mut [Complex64], stride: usize, m: &[[f64; 2]; 2]) {
    for base in 0..amps.len() {
        if (base / stride).is_multiple_of(2) {
            let a = amps[base];
            let b = amps[base + stride];
            amps[base] = m[0][0] * a + m[0][1] * b;
            amps[base + stride] = m[1][0] * a + m[1][1] * b;
        }
    }
}
