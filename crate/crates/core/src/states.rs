//! Two-qubit product families built from Bloch directions, their Gram
//! matrices, and the test for exact (unitary) transformability of one
//! family into another.
//!
//! A unitary taking every |inᵢ⟩ to e^{iϑᵢ}|outᵢ⟩ exists exactly when the
//! two Gram matrices agree entrywise up to those phases, i.e.
//! ⟨inᵢ|inⱼ⟩ = e^{i(ϑⱼ−ϑᵢ)}⟨outᵢ|outⱼ⟩. [`exact_transformability`] checks
//! this by first comparing moduli, then propagating phase requirements over
//! the graph of non-orthogonal pairs and verifying every edge closes
//! consistently. Orthogonal pairs impose no phase constraint, which is why
//! the graph may fall apart into components with independent base phases.

use num_complex::Complex64;
use thiserror::Error;

use crate::bloch::{qubit_from_bloch, BlochVector, QubitState};
use crate::linalg::{self, ComplexMatrix};
use crate::util::wrap_angle;

pub type Result<T> = std::result::Result<T, StateError>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum StateError {
    #[error("state norm {norm} deviates from 1 beyond 1e-12")]
    NotNormalized { norm: f64 },
    #[error("input list is empty")]
    EmptyInput,
    #[error("input lists have different lengths ({left} vs {right})")]
    LengthMismatch { left: usize, right: usize },
    #[error("vector dimension mismatch: expected {expected}, got {found}")]
    DimensionMismatch { expected: usize, found: usize },
}

/// Normalised pure state of two qubits, amplitudes ordered
/// |00⟩, |01⟩, |10⟩, |11⟩.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TwoQubitState {
    amps: [Complex64; 4],
}

impl TwoQubitState {
    pub fn new(amps: [Complex64; 4]) -> Result<Self> {
        let norm = amps.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt();
        if !norm.is_finite() || (norm - 1.0).abs() > 1e-12 {
            return Err(StateError::NotNormalized { norm });
        }
        Ok(TwoQubitState { amps })
    }

    /// Tensor product of two single-qubit states.
    pub fn product(first: &QubitState, second: &QubitState) -> Self {
        let [f0, f1] = first.amplitudes();
        let [s0, s1] = second.amplitudes();
        TwoQubitState {
            amps: [f0 * s0, f0 * s1, f1 * s0, f1 * s1],
        }
    }

    pub fn amplitudes(&self) -> &[Complex64; 4] {
        &self.amps
    }

    pub fn to_vec(&self) -> Vec<Complex64> {
        self.amps.to_vec()
    }

    /// ⟨self | other⟩, conjugate-linear in `self`.
    pub fn inner(&self, other: &TwoQubitState) -> Complex64 {
        self.amps
            .iter()
            .zip(&other.amps)
            .map(|(a, b)| a.conj() * b)
            .sum()
    }
}

/// |n, n⟩: both spins along n. The phase gauge is inherited from the
/// single-qubit construction.
pub fn parallel(n: BlochVector) -> TwoQubitState {
    let q = qubit_from_bloch(n);
    TwoQubitState::product(&q, &q)
}

/// |n, −n⟩: first spin along n, second against it.
pub fn antiparallel(n: BlochVector) -> TwoQubitState {
    let q = qubit_from_bloch(n);
    let q_opp = qubit_from_bloch(n.antipode());
    TwoQubitState::product(&q, &q_opp)
}

/// Hermitian positive-semidefinite matrix of pairwise overlaps with unit
/// diagonal.
#[derive(Debug, Clone, PartialEq)]
pub struct GramMatrix {
    m: ComplexMatrix,
}

impl GramMatrix {
    /// Pairwise inner products of arbitrary equal-dimension vectors.
    pub fn from_vectors(vectors: &[Vec<Complex64>]) -> Result<Self> {
        if vectors.is_empty() {
            return Err(StateError::EmptyInput);
        }
        let m = linalg::gram_matrix(vectors).map_err(|e| match e {
            linalg::LinalgError::DimensionMismatch { expected, found } => {
                StateError::DimensionMismatch { expected, found }
            }
            other => unreachable!("gram construction only reports dimension errors: {other}"),
        })?;
        Ok(GramMatrix { m })
    }

    pub fn size(&self) -> usize {
        self.m.rows()
    }

    pub fn entry(&self, i: usize, j: usize) -> Complex64 {
        self.m.get(i, j)
    }

    pub fn as_matrix(&self) -> &ComplexMatrix {
        &self.m
    }
}

/// Gram matrix of a state family.
pub fn gram(states: &[TwoQubitState]) -> Result<GramMatrix> {
    let vectors: Vec<Vec<Complex64>> = states.iter().map(|s| s.to_vec()).collect();
    GramMatrix::from_vectors(&vectors)
}

/// Dimension of the linear span of a state family.
pub fn span_dimension(states: &[TwoQubitState], tol: f64) -> Result<usize> {
    if states.is_empty() {
        return Err(StateError::EmptyInput);
    }
    let vectors: Vec<Vec<Complex64>> = states.iter().map(|s| s.to_vec()).collect();
    Ok(linalg::numerical_rank(&vectors, tol).expect("state vectors share dimension 4"))
}

/// Which Gram comparison a witness pair failed.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum WitnessKind {
    /// |⟨inᵢ|inⱼ⟩| differs from |⟨outᵢ|outⱼ⟩|.
    Modulus,
    /// Moduli agree but no phase assignment closes the loop.
    Phase,
}

/// First (lexicographic) pair of indices at which transformability fails,
/// with the offending residual.
#[derive(Debug, Clone, PartialEq)]
pub struct TransformWitness {
    pub pair: (usize, usize),
    pub residual: f64,
    pub kind: WitnessKind,
}

/// Verdict of [`exact_transformability`].
#[derive(Debug, Clone, PartialEq)]
pub enum Transformability {
    /// A unitary maps inᵢ ↦ e^{iϑᵢ} outᵢ; the phases below, one per state,
    /// are wrapped into (−π, π] with the first state of each connected
    /// component pinned to 0.
    Exact { phases: Vec<f64> },
    Infeasible(TransformWitness),
}

impl Transformability {
    pub fn is_exact(&self) -> bool {
        matches!(self, Transformability::Exact { .. })
    }
}

/// Decides whether some unitary maps every input state onto the matching
/// output state up to per-state phases, within `tol`.
///
/// The verdict is gauge-invariant: multiplying any state by a unit phase
/// changes the reported ϑᵢ but never the outcome.
pub fn exact_transformability(
    inputs: &[TwoQubitState],
    outputs: &[TwoQubitState],
    tol: f64,
) -> Result<Transformability> {
    if inputs.len() != outputs.len() {
        return Err(StateError::LengthMismatch {
            left: inputs.len(),
            right: outputs.len(),
        });
    }
    if inputs.is_empty() {
        return Err(StateError::EmptyInput);
    }
    let g_in = gram(inputs)?;
    let g_out = gram(outputs)?;
    Ok(gram_phase_consistency(&g_in, &g_out, tol))
}

/// Core of the transformability test, on Gram matrices directly.
pub(crate) fn gram_phase_consistency(
    g_in: &GramMatrix,
    g_out: &GramMatrix,
    tol: f64,
) -> Transformability {
    let k = g_in.size();
    debug_assert_eq!(k, g_out.size());

    // Moduli must match pair by pair; a unitary cannot change overlaps.
    for i in 0..k {
        for j in (i + 1)..k {
            let residual = (g_in.entry(i, j).norm() - g_out.entry(i, j).norm()).abs();
            if residual > tol {
                return Transformability::Infeasible(TransformWitness {
                    pair: (i, j),
                    residual,
                    kind: WitnessKind::Modulus,
                });
            }
        }
    }

    // Propagate phases over the graph whose edges are non-orthogonal pairs.
    // Each connected component gets an independent base phase of 0.
    let mut phases = vec![0.0f64; k];
    let mut visited = vec![false; k];
    for start in 0..k {
        if visited[start] {
            continue;
        }
        visited[start] = true;
        phases[start] = 0.0;
        let mut queue = std::collections::VecDeque::from([start]);
        while let Some(i) = queue.pop_front() {
            for j in 0..k {
                if visited[j] || g_in.entry(i, j).norm() <= tol {
                    continue;
                }
                // ⟨inᵢ|inⱼ⟩ = e^{i(ϑⱼ−ϑᵢ)}⟨outᵢ|outⱼ⟩ fixes ϑⱼ from ϑᵢ.
                let delta = (g_in.entry(i, j) * g_out.entry(i, j).conj()).arg();
                phases[j] = wrap_angle(phases[i] + delta);
                visited[j] = true;
                queue.push_back(j);
            }
        }
    }

    // Every edge, tree or not, must close under the propagated phases.
    for i in 0..k {
        for j in (i + 1)..k {
            if g_in.entry(i, j).norm() <= tol {
                continue;
            }
            let rotated = Complex64::cis(phases[j] - phases[i]) * g_out.entry(i, j);
            let residual = (g_in.entry(i, j) - rotated).norm();
            if residual > tol {
                return Transformability::Infeasible(TransformWitness {
                    pair: (i, j),
                    residual,
                    kind: WitnessKind::Phase,
                });
            }
        }
    }

    Transformability::Exact { phases }
}
