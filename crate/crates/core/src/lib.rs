//! Two qubits can carry a spin direction n either as the parallel pair
//! |n, n⟩ or as the anti-parallel pair |n, −n⟩. The two encodings are not
//! interchangeable: a single unitary flips the second spin exactly for
//! every n on one great circle of the Bloch sphere and for no larger set,
//! while larger families of directions can at best be converted with some
//! probability, or not at all. Anti-parallel pairs also spread out more in
//! Hilbert space, which makes them strictly easier to discriminate.
//!
//! This crate builds those objects and checks those claims numerically:
//!
//! * [`bloch`]: Bloch vectors, single-qubit states, great circles.
//! * [`states`]: parallel / anti-parallel pairs, Gram matrices, span
//!   dimensions, and the phase-consistency test for exact (unitary)
//!   transformability of one state family into another.
//! * [`machines`]: the spin-flip unitary attached to a great circle and its
//!   fidelity off the circle.
//! * [`protrans`]: probabilistic exact transformations (uniform success
//!   probability maximisation under a positive-semidefiniteness condition)
//!   and unambiguous discrimination, plus a one-call comparison report.
//! * [`linalg`]: the small dense complex-matrix kernel the rest sits on.
//!
//! Everything is f64, deterministic, and sized for hand-held problems
//! (matrices up to 8×8); there are no random or parallel code paths.

#![forbid(unsafe_code)]

pub mod bloch;
pub mod linalg;
pub mod machines;
pub mod protrans;
pub mod states;

mod util;

pub use num_complex::Complex64;

pub use bloch::{BlochError, BlochVector, CircleFit, GreatCircle, QubitState};
pub use linalg::{ComplexMatrix, LinalgError};
pub use machines::{BasisActionReport, FlipMachine, MachineError};
pub use protrans::{
    AsymmetryReport, FeasibilityResult, ImpossibleReason, ProtransError, RankWitness, UsdResult,
};
pub use states::{GramMatrix, StateError, Transformability, TransformWitness, TwoQubitState, WitnessKind};
