//! Lower bounds for parallel quantum search, computed three ways and checked
//! against an exact simulator.
//!
//! A quantum algorithm gets `p` oracle queries per round instead of one. How
//! much does that buy? This crate measures the cost of distinguishing oracle
//! strings through three independent routes and insists they agree:
//!
//! * **spectral**: the adversary progress measure. Build a matrix Γ that
//!   connects inputs with different answers, and compare its largest eigenvalue
//!   against the filtered matrices Γ^t that a single p-tuple of positions can
//!   expose ([`adversary::spectral_bound`]).
//! * **combinatorial**: row/column minima and filtered maxima (h, h′, ℓ, ℓ′) of
//!   the underlying relation, combined as √(h·h′/(ℓ·ℓ′))
//!   ([`combinatorics::combinatorial_bound`]), with exact big-integer counts.
//! * **dynamical**: run actual query schedules on an exact statevector and
//!   watch the progress measure W^t decay step by step ([`simulator`]).
//!
//! The flagship relation is approximate counting — decide whether a bit string
//! has weight K or (1+ε)K — where the three routes meet the closed-form rate
//! (1/ε)·√(N/(pK)) ([`combinatorics::counting_query_bound`]) and the simulator
//! reproduces the matching phase-estimation upper bound.
//!
//! # Start with the examples
//!
//! Each major capability has one runnable example; they are the intended front
//! door and double as usage documentation:
//!
//! ```text
//! cargo run --example flagship_bound     # the N=4, K=1, ε=1 instance end to end
//! cargo run --example closed_form_audit  # enumerated vs closed-form extrema, WARN included
//! cargo run --example grover             # exact simulation vs sin²((2t+1)θ)
//! cargo run --example quantum_counting   # phase-estimation count distributions
//! cargo run --example parallel_counters  # p disjoint counters, variance vs p
//! cargo run --example progress_trace     # W^t decay under random schedules
//! cargo run --example sweep              # parameter sweep as CSV
//! ```
//!
//! There is also a thin `qbound` binary exposing the same operations as
//! subcommands (`bound`, `simulate`, `sweep`) for scripting; see the README.
//!
//! # Quick taste
//!
//! ```
//! use qbound::model::{CountingSpec, CountingInstance};
//! use qbound::combinatorics::{enumerate_relation, extrema, combinatorial_bound};
//! use qbound::adversary::{AdversaryMatrix, spectral_bound};
//! use num_rational::Ratio;
//!
//! // N = 4 positions, distinguish weight 1 from weight 2 (ε = 1).
//! let spec = CountingSpec::new(2, Ratio::new(1, 1)).unwrap();
//! let inst = CountingInstance::build(spec, 1).unwrap();
//! let rel = enumerate_relation(&inst);
//!
//! let ex = extrema(&rel, 1).unwrap();
//! let comb = combinatorial_bound(&ex.h, &ex.h_prime, &ex.ell, &ex.ell_prime).unwrap();
//!
//! let gamma = AdversaryMatrix::from_relation(&rel);
//! let spec1 = spectral_bound(&gamma, 1).unwrap();
//!
//! // Both routes give √6 for one query per round.
//! assert!((comb - 6f64.sqrt()).abs() < 1e-9);
//! assert!((spec1.ratio - 6f64.sqrt()).abs() < 1e-9);
//! ```
//!
//! # Module map
//!
//! | module | what it owns |
//! |---|---|
//! | [`numerics`] | symmetric eigensolver (cyclic Jacobi), amplitude vectors, overlaps |
//! | [`model`] | oracle inputs, the ε-window acceptance predicate, counting instances |
//! | [`combinatorics`] | exact binomials, relation tables, extrema, closed forms, rate bounds |
//! | [`adversary`] | adversary matrices, position filters, the spectral bound |
//! | [`simulator`] | exact statevector runs: schedules, Grover, counting, progress traces |
//! | [`report`] | bound reports, experiment records, sweeps, serialization |
//!
//! Everything is deterministic: fixed tolerances (see [`tol`]), seeded
//! generators, and stable orderings throughout, so repeated runs are
//! byte-identical.

pub mod adversary;
pub mod combinatorics;
pub mod error;
pub mod model;
pub mod numerics;
pub mod report;
pub mod simulator;
pub mod tol;

pub use error::{Error, Result};
