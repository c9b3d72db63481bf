//! Probabilistic exact transformations and unambiguous discrimination.
//!
//! A family of input states can be sent to a family of output states by a
//! measurement branch that succeeds on state i with probability γᵢ exactly
//! when G_in − D G_out D† is positive semidefinite for D = diag(√γᵢ e^{iδᵢ})
//! and some phases δᵢ. [`max_uniform_gamma`] climbs a verdict ladder on
//! that condition: exact transformability first, then a rank comparison
//! (a branch can only shrink the span, never grow it), then bisection on a
//! uniform γ with a phase search inside each feasibility query.
//!
//! Unambiguous discrimination is the special case where the outputs are
//! orthonormal: maximise Σ pᵢγᵢ subject to G − diag(γ) ⪰ 0. The maximiser
//! here follows the central path of a log-det barrier, which handles the
//! curved boundary reliably where greedy coordinate steps stall.

use num_complex::Complex64;
use std::f64::consts::TAU;
use thiserror::Error;

use crate::bloch::{great_circle_fit, BlochVector, CircleFit};
use crate::linalg::{self, ComplexMatrix, DEFAULT_RANK_TOL};
use crate::states::{
    antiparallel, exact_transformability, gram, parallel, span_dimension, GramMatrix, StateError,
    Transformability, TwoQubitState,
};
use crate::util::wrap_angle;

/// Bisection stops once the uniform-γ bracket is this narrow.
const GAMMA_BISECTION_WIDTH: f64 = 1e-6;

/// Points per free phase in the coarse search grid.
const PHASE_GRID: usize = 32;

/// Pattern-search refinement stops below this phase step.
const PHASE_REFINE_STEP: f64 = 1e-4;

/// Hard cap on refinement evaluations per phase search.
const PHASE_REFINE_BUDGET: usize = 4000;

/// Priors must sum to 1 within this.
const PRIOR_SUM_TOL: f64 = 1e-10;

/// Two directions closer than this count as duplicates in a report.
const DUPLICATE_TOL: f64 = 1e-9;

pub type Result<T> = std::result::Result<T, ProtransError>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ProtransError {
    #[error("input lists have different lengths ({left} vs {right})")]
    LengthMismatch { left: usize, right: usize },
    #[error("input list is empty")]
    EmptyInput,
    #[error("size mismatch: {left} states but {right} coefficients")]
    SizeMismatch { left: usize, right: usize },
    #[error("gamma[{index}] = {value} is outside [0, 1]")]
    GammaOutOfRange { index: usize, value: f64 },
    #[error("bad priors: {detail}")]
    PriorMismatch { detail: String },
    #[error("vectors {i} and {j} coincide within 1e-9")]
    DuplicateVectors { i: usize, j: usize },
    #[error("vector dimension mismatch: expected {expected}, got {found}")]
    DimensionMismatch { expected: usize, found: usize },
}

/// Why no positive uniform success probability exists.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ImpossibleReason {
    /// The outputs span more dimensions than the inputs.
    RankObstruction { rank_in: usize, rank_out: usize },
    /// Ranks permit it but the PSD condition fails for every γ > 0.
    PsdInfeasible,
}

/// Verdict ladder for transforming one family into another.
#[derive(Debug, Clone, PartialEq)]
pub enum FeasibilityResult {
    /// A unitary does it with certainty; phases as in
    /// [`Transformability::Exact`].
    Exact { phases: Vec<f64> },
    /// Best uniform success probability found by bisection, the measurement
    /// phases δ realising it, and the smallest eigenvalue of the PSD
    /// condition there (the feasibility certificate, ≥ −tol).
    Probabilistic {
        gamma: f64,
        phases: Vec<f64>,
        certificate: f64,
    },
    Impossible { reason: ImpossibleReason },
}

impl FeasibilityResult {
    pub fn is_exact(&self) -> bool {
        matches!(self, FeasibilityResult::Exact { .. })
    }
}

/// Rank pair witnessing that a transformation cannot succeed with any
/// non-zero probability on every state.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RankWitness {
    pub rank_in: usize,
    pub rank_out: usize,
}

/// Evaluates the feasibility condition G_in − D G_out D† ⪰ 0 for
/// D = diag(√γᵢ e^{iδᵢ}).
pub fn psd_feasible(
    g_in: &GramMatrix,
    g_out: &GramMatrix,
    gammas: &[f64],
    phases: &[f64],
    tol: f64,
) -> Result<bool> {
    let k = g_in.size();
    if g_out.size() != k {
        return Err(ProtransError::SizeMismatch {
            left: k,
            right: g_out.size(),
        });
    }
    if gammas.len() != k {
        return Err(ProtransError::SizeMismatch {
            left: k,
            right: gammas.len(),
        });
    }
    if phases.len() != k {
        return Err(ProtransError::SizeMismatch {
            left: k,
            right: phases.len(),
        });
    }
    for (index, &value) in gammas.iter().enumerate() {
        if !(0.0..=1.0).contains(&value) || value.is_nan() {
            return Err(ProtransError::GammaOutOfRange { index, value });
        }
    }
    let m = feasibility_matrix(g_in.as_matrix(), g_out.as_matrix(), gammas, phases);
    Ok(linalg::is_psd(&m, tol).expect("difference of Gram matrices is Hermitian"))
}

/// G_in − D G_out D†, built exactly Hermitian.
fn feasibility_matrix(
    g_in: &ComplexMatrix,
    g_out: &ComplexMatrix,
    gammas: &[f64],
    phases: &[f64],
) -> ComplexMatrix {
    let k = g_in.rows();
    let mut m = ComplexMatrix::zeros(k, k);
    for i in 0..k {
        for j in i..k {
            let weight = (gammas[i] * gammas[j]).sqrt();
            let rotation = Complex64::cis(phases[i] - phases[j]);
            let v = g_in.get(i, j) - rotation * g_out.get(i, j) * weight;
            if i == j {
                m.set(i, i, Complex64::new(v.re, 0.0));
            } else {
                m.set(i, j, v);
                m.set(j, i, v.conj());
            }
        }
    }
    m
}

/// Rank comparison between the two families: `Some` when the outputs span
/// strictly more dimensions than the inputs, which rules out every
/// probabilistic exact transformation.
pub fn rank_obstruction(
    inputs: &[TwoQubitState],
    outputs: &[TwoQubitState],
) -> Result<Option<RankWitness>> {
    if inputs.len() != outputs.len() {
        return Err(ProtransError::LengthMismatch {
            left: inputs.len(),
            right: outputs.len(),
        });
    }
    if inputs.is_empty() {
        return Err(ProtransError::EmptyInput);
    }
    let rank_in = span_dimension(inputs, DEFAULT_RANK_TOL).expect("non-empty by check above");
    let rank_out = span_dimension(outputs, DEFAULT_RANK_TOL).expect("non-empty by check above");
    Ok(if rank_out > rank_in {
        Some(RankWitness { rank_in, rank_out })
    } else {
        None
    })
}

/// Largest uniform success probability for transforming `inputs` into
/// `outputs`, as a three-rung ladder: Exact, else rank obstruction, else
/// bisection on γ with a deterministic phase search per feasibility query.
///
/// The search is fully deterministic (fixed grids, fixed sweep order), so
/// repeated runs agree bit for bit.
pub fn max_uniform_gamma(
    inputs: &[TwoQubitState],
    outputs: &[TwoQubitState],
    tol: f64,
) -> Result<FeasibilityResult> {
    if inputs.len() != outputs.len() {
        return Err(ProtransError::LengthMismatch {
            left: inputs.len(),
            right: outputs.len(),
        });
    }
    if inputs.is_empty() {
        return Err(ProtransError::EmptyInput);
    }

    match exact_transformability(inputs, outputs, tol).expect("lengths validated above") {
        Transformability::Exact { phases } => return Ok(FeasibilityResult::Exact { phases }),
        Transformability::Infeasible(_) => {}
    }

    if let Some(witness) = rank_obstruction(inputs, outputs)? {
        return Ok(FeasibilityResult::Impossible {
            reason: ImpossibleReason::RankObstruction {
                rank_in: witness.rank_in,
                rank_out: witness.rank_out,
            },
        });
    }

    let g_in = gram(inputs).expect("non-empty by check above");
    let g_out = gram(outputs).expect("non-empty by check above");
    Ok(bisect_uniform_gamma(&g_in, &g_out, tol))
}

fn bisect_uniform_gamma(g_in: &GramMatrix, g_out: &GramMatrix, tol: f64) -> FeasibilityResult {
    let feasible = |r: &PhaseSearch| r.min_eigenvalue >= -tol;

    // γ = 1 feasible would mean the transformation is exact after all; the
    // Exact rung already ran, so this only fires on boundary roundoff.
    let top = search_phases(g_in, g_out, 1.0);
    if feasible(&top) {
        let phases = top.phases.iter().map(|&d| wrap_angle(-d)).collect();
        return FeasibilityResult::Exact { phases };
    }

    // Feasibility is monotone in γ: shrinking γ only adds back a PSD term.
    let mut lo = 0.0f64;
    let mut hi = 1.0f64;
    let mut at_lo = search_phases(g_in, g_out, 0.0);
    while hi - lo > GAMMA_BISECTION_WIDTH {
        let mid = 0.5 * (lo + hi);
        let probe = search_phases(g_in, g_out, mid);
        if feasible(&probe) {
            lo = mid;
            at_lo = probe;
        } else {
            hi = mid;
        }
    }

    if lo <= GAMMA_BISECTION_WIDTH {
        return FeasibilityResult::Impossible {
            reason: ImpossibleReason::PsdInfeasible,
        };
    }
    FeasibilityResult::Probabilistic {
        gamma: lo,
        phases: at_lo.phases,
        certificate: at_lo.min_eigenvalue,
    }
}

struct PhaseSearch {
    phases: Vec<f64>,
    min_eigenvalue: f64,
}

/// Maximises the smallest eigenvalue of the feasibility matrix over the
/// free phases (δ₁ ≡ 0): a coarse grid, then pattern-search refinement.
fn search_phases(g_in: &GramMatrix, g_out: &GramMatrix, gamma: f64) -> PhaseSearch {
    let k = g_in.size();
    let gammas = vec![gamma; k];
    let eval = |phases: &[f64]| -> f64 {
        let m = feasibility_matrix(g_in.as_matrix(), g_out.as_matrix(), &gammas, phases);
        linalg::hermitian_eigenvalues(&m).expect("feasibility matrix is Hermitian")[0]
    };

    let mut best = vec![0.0f64; k];
    let mut best_value = eval(&best);
    if k == 1 {
        return PhaseSearch {
            phases: best,
            min_eigenvalue: best_value,
        };
    }

    // Coarse grid over the k−1 free phases.
    let mut index = vec![0usize; k - 1];
    'grid: loop {
        let mut candidate = vec![0.0f64; k];
        for (slot, &i) in index.iter().enumerate() {
            candidate[slot + 1] = TAU * i as f64 / PHASE_GRID as f64;
        }
        let value = eval(&candidate);
        if value > best_value {
            best_value = value;
            best = candidate;
        }
        let mut pos = 0;
        loop {
            index[pos] += 1;
            if index[pos] < PHASE_GRID {
                break;
            }
            index[pos] = 0;
            pos += 1;
            if pos == k - 1 {
                break 'grid;
            }
        }
    }

    // Pattern search from the best grid point.
    let mut step = TAU / PHASE_GRID as f64;
    let mut budget = PHASE_REFINE_BUDGET;
    while step > PHASE_REFINE_STEP && budget > 0 {
        let mut improved = false;
        for slot in 1..k {
            for direction in [1.0, -1.0] {
                if budget == 0 {
                    break;
                }
                budget -= 1;
                let mut candidate = best.clone();
                candidate[slot] = (candidate[slot] + direction * step).rem_euclid(TAU);
                let value = eval(&candidate);
                if value > best_value + 1e-15 {
                    best_value = value;
                    best = candidate;
                    improved = true;
                }
            }
        }
        if !improved {
            step *= 0.5;
        }
    }

    PhaseSearch {
        phases: best,
        min_eigenvalue: best_value,
    }
}

/// Value and per-state success probabilities of optimal unambiguous
/// discrimination.
#[derive(Debug, Clone, PartialEq)]
pub struct UsdResult {
    /// Σ pᵢ γᵢ at the optimum.
    pub value: f64,
    pub gammas: Vec<f64>,
}

/// Maximum average success probability of unambiguous discrimination of
/// `states` drawn with the given priors.
///
/// Linearly dependent families cannot be unambiguously discriminated at
/// all, so they return value 0 exactly.
pub fn usd_max_success(states: &[TwoQubitState], priors: &[f64]) -> Result<UsdResult> {
    let vectors: Vec<Vec<Complex64>> = states.iter().map(|s| s.to_vec()).collect();
    usd_max_success_vectors(&vectors, priors)
}

/// [`usd_max_success`] for pure states of any fixed dimension.
pub fn usd_max_success_vectors(vectors: &[Vec<Complex64>], priors: &[f64]) -> Result<UsdResult> {
    let k = vectors.len();
    if k == 0 {
        return Err(ProtransError::EmptyInput);
    }
    validate_priors(k, priors)?;

    let rank = linalg::numerical_rank(vectors, DEFAULT_RANK_TOL).map_err(|e| match e {
        linalg::LinalgError::DimensionMismatch { expected, found } => {
            ProtransError::DimensionMismatch { expected, found }
        }
        other => unreachable!("rank only reports dimension errors: {other}"),
    })?;
    if rank < k {
        return Ok(UsdResult {
            value: 0.0,
            gammas: vec![0.0; k],
        });
    }

    let g = linalg::gram_matrix(vectors).expect("dimensions validated by rank computation");
    let gammas = maximise_success_barrier(&g, priors);
    let value = priors.iter().zip(&gammas).map(|(p, g)| p * g).sum();
    Ok(UsdResult { value, gammas })
}

fn validate_priors(k: usize, priors: &[f64]) -> Result<()> {
    if priors.len() != k {
        return Err(ProtransError::PriorMismatch {
            detail: format!("{} priors for {} states", priors.len(), k),
        });
    }
    if let Some(p) = priors.iter().find(|&&p| !(p >= 0.0)) {
        return Err(ProtransError::PriorMismatch {
            detail: format!("negative or non-finite prior {p}"),
        });
    }
    let sum: f64 = priors.iter().sum();
    if (sum - 1.0).abs() > PRIOR_SUM_TOL {
        return Err(ProtransError::PriorMismatch {
            detail: format!("priors sum to {sum}, expected 1"),
        });
    }
    Ok(())
}

/// Maximises Σ pᵢγᵢ over {γ ∈ [0,1]^k : G − diag(γ) ⪰ 0} by following the
/// central path of the barrier
///     Σ pᵢγᵢ + μ (log det(G − diag γ) + Σ log γᵢ + Σ log(1 − γᵢ))
/// with damped Newton steps. The final duality gap is bounded by 3kμ, far
/// below the 1e−5 accuracy this crate promises.
fn maximise_success_barrier(g: &ComplexMatrix, priors: &[f64]) -> Vec<f64> {
    let k = g.rows();
    let lambda_min = linalg::hermitian_eigenvalues(g).expect("gram matrix is Hermitian")[0];
    // Strictly interior start: γ = t·1 keeps G − diag(γ) ⪰ (λmin − t)·1.
    let t0 = (0.5 * lambda_min).clamp(1e-12, 0.5);
    let mut gamma = vec![t0; k];

    let mut mu = 0.5f64;
    while mu > 1e-11 {
        for _ in 0..60 {
            let m = subtract_diagonal(g, &gamma);
            let eig = linalg::hermitian_eigen(&m).expect("shifted gram matrix is Hermitian");
            if eig.values[0] <= 0.0 {
                break;
            }
            let m_inv = inverse_from_eigen(&eig);

            let mut grad = vec![0.0f64; k];
            let mut hess = vec![vec![0.0f64; k]; k];
            for i in 0..k {
                grad[i] = priors[i] - mu * m_inv.get(i, i).re + mu / gamma[i]
                    - mu / (1.0 - gamma[i]);
                for j in 0..k {
                    hess[i][j] = -mu * m_inv.get(i, j).norm_sqr();
                }
                let gi = gamma[i];
                hess[i][i] -= mu * (1.0 / (gi * gi) + 1.0 / ((1.0 - gi) * (1.0 - gi)));
            }
            let grad_norm = grad.iter().fold(0.0f64, |acc, g| acc.max(g.abs()));
            if grad_norm <= 1e-4 * mu {
                break;
            }

            let rhs: Vec<f64> = grad.iter().map(|g| -g).collect();
            let delta = solve_symmetric(hess, rhs);

            let objective = |cand: &[f64]| -> Option<f64> {
                if !cand.iter().all(|&x| x > 0.0 && x < 1.0) {
                    return None;
                }
                let mc = subtract_diagonal(g, cand);
                let vals = linalg::hermitian_eigenvalues(&mc).ok()?;
                if vals[0] <= 0.0 {
                    return None;
                }
                let linear: f64 = priors.iter().zip(cand).map(|(p, x)| p * x).sum();
                let barrier: f64 = vals.iter().map(|v| v.ln()).sum::<f64>()
                    + cand.iter().map(|x| x.ln() + (1.0 - x).ln()).sum::<f64>();
                Some(linear + mu * barrier)
            };
            let current = objective(&gamma).expect("iterate stays interior");

            let mut accepted = false;
            let mut scale = 1.0f64;
            for _ in 0..50 {
                let candidate: Vec<f64> = gamma
                    .iter()
                    .zip(&delta)
                    .map(|(x, d)| x + scale * d)
                    .collect();
                if let Some(value) = objective(&candidate) {
                    if value >= current - 1e-12 {
                        gamma = candidate;
                        accepted = true;
                        break;
                    }
                }
                scale *= 0.5;
            }
            if !accepted {
                break;
            }
        }
        mu *= 0.15;
    }
    gamma
}

fn subtract_diagonal(g: &ComplexMatrix, gamma: &[f64]) -> ComplexMatrix {
    let mut m = g.clone();
    for (i, &x) in gamma.iter().enumerate() {
        let d = m.get(i, i);
        m.set(i, i, Complex64::new(d.re - x, 0.0));
    }
    m
}

fn inverse_from_eigen(eig: &linalg::HermitianEigen) -> ComplexMatrix {
    let n = eig.values.len();
    let mut inv = ComplexMatrix::zeros(n, n);
    for i in 0..n {
        for j in 0..n {
            let mut acc = Complex64::new(0.0, 0.0);
            for (l, &lam) in eig.values.iter().enumerate() {
                acc += eig.vectors.get(i, l) * eig.vectors.get(j, l).conj() / lam;
            }
            inv.set(i, j, acc);
        }
    }
    inv
}

/// Gaussian elimination with partial pivoting; fine at these sizes.
fn solve_symmetric(mut a: Vec<Vec<f64>>, mut b: Vec<f64>) -> Vec<f64> {
    let n = b.len();
    for col in 0..n {
        let pivot = (col..n)
            .max_by(|&i, &j| a[i][col].abs().total_cmp(&a[j][col].abs()))
            .expect("non-empty range");
        a.swap(col, pivot);
        b.swap(col, pivot);
        let head = a[col][col];
        if head.abs() < 1e-300 {
            continue;
        }
        for row in (col + 1)..n {
            let factor = a[row][col] / head;
            for k in col..n {
                a[row][k] -= factor * a[col][k];
            }
            b[row] -= factor * b[col];
        }
    }
    let mut x = vec![0.0f64; n];
    for row in (0..n).rev() {
        let mut acc = b[row];
        for col in (row + 1)..n {
            acc -= a[row][col] * x[col];
        }
        x[row] = if a[row][row].abs() < 1e-300 {
            0.0
        } else {
            acc / a[row][row]
        };
    }
    x
}

/// Everything this crate can say about one set of directions, both ways
/// round: geometry, spans, exact and probabilistic transformability, and
/// discrimination of the two families.
#[derive(Debug, Clone, PartialEq)]
pub struct AsymmetryReport {
    pub circle: CircleFit,
    /// (parallel span, anti-parallel span).
    pub dims: (usize, usize),
    pub exact_pa: Transformability,
    pub exact_ap: Transformability,
    pub protrans_pa: FeasibilityResult,
    pub protrans_ap: FeasibilityResult,
    pub usd_parallel: UsdResult,
    pub usd_antiparallel: UsdResult,
}

/// Builds the full parallel-versus-anti-parallel comparison for a set of
/// distinct directions, with uniform priors for the discrimination parts.
pub fn compare_sets(vectors: &[BlochVector], tol: f64) -> Result<AsymmetryReport> {
    if vectors.is_empty() {
        return Err(ProtransError::EmptyInput);
    }
    for i in 0..vectors.len() {
        for j in (i + 1)..vectors.len() {
            if vectors[i].distance(&vectors[j]) < DUPLICATE_TOL {
                return Err(ProtransError::DuplicateVectors { i, j });
            }
        }
    }

    let p: Vec<TwoQubitState> = vectors.iter().map(|&v| parallel(v)).collect();
    let a: Vec<TwoQubitState> = vectors.iter().map(|&v| antiparallel(v)).collect();
    let uniform = vec![1.0 / vectors.len() as f64; vectors.len()];

    let circle = great_circle_fit(vectors, tol).expect("non-empty by check above");
    let dims = (
        span_dimension(&p, DEFAULT_RANK_TOL).expect("non-empty by check above"),
        span_dimension(&a, DEFAULT_RANK_TOL).expect("non-empty by check above"),
    );
    let map_state_err = |e: StateError| match e {
        StateError::LengthMismatch { left, right } => ProtransError::LengthMismatch { left, right },
        StateError::EmptyInput => ProtransError::EmptyInput,
        other => unreachable!("families are well-formed: {other}"),
    };
    let exact_pa = exact_transformability(&p, &a, tol).map_err(map_state_err)?;
    let exact_ap = exact_transformability(&a, &p, tol).map_err(map_state_err)?;
    let protrans_pa = max_uniform_gamma(&p, &a, tol)?;
    let protrans_ap = max_uniform_gamma(&a, &p, tol)?;
    let usd_parallel = usd_max_success(&p, &uniform)?;
    let usd_antiparallel = usd_max_success(&a, &uniform)?;

    Ok(AsymmetryReport {
        circle,
        dims,
        exact_pa,
        exact_ap,
        protrans_pa,
        protrans_ap,
        usd_parallel,
        usd_antiparallel,
    })
}
