//! Bloch-sphere geometry: unit direction vectors, the single-qubit states
//! they label, and great circles.
//!
//! A direction n = (sinθ cosφ, sinθ sinφ, cosθ) labels the qubit state
//! |n⟩ = cos(θ/2)|0⟩ + e^{iφ} sin(θ/2)|1⟩. The overall phase is fixed by
//! making the first amplitude of modulus above 1e−12 real and non-negative,
//! so equal directions always produce identical amplitude pairs.

use num_complex::Complex64;
use thiserror::Error;

use crate::linalg::{self, ComplexMatrix};

/// Construction paths renormalise whenever the norm is further than this
/// from 1, so stored coordinates are unit to machine precision.
const NORM_SNAP: f64 = 1e-12;

/// Amplitudes below this modulus do not anchor the phase gauge.
const GAUGE_FLOOR: f64 = 1e-12;

pub type Result<T> = std::result::Result<T, BlochError>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum BlochError {
    #[error("vector norm {norm} deviates from 1 beyond 1e-9")]
    NotUnit { norm: f64 },
    #[error("state norm {norm} deviates from 1 beyond 1e-12")]
    NotNormalized { norm: f64 },
    #[error("cannot normalise a (near-)zero vector")]
    ZeroVector,
    #[error("input list is empty")]
    EmptyInput,
}

/// Unit vector on the Bloch sphere.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BlochVector {
    x: f64,
    y: f64,
    z: f64,
}

impl BlochVector {
    pub const X: BlochVector = BlochVector { x: 1.0, y: 0.0, z: 0.0 };
    pub const Y: BlochVector = BlochVector { x: 0.0, y: 1.0, z: 0.0 };
    pub const Z: BlochVector = BlochVector { x: 0.0, y: 0.0, z: 1.0 };

    /// Accepts coordinates whose norm is within 1e−9 of unit. Coordinates
    /// already unit to 1e−12 are stored exactly as given; anything else is
    /// renormalised once.
    pub fn new(x: f64, y: f64, z: f64) -> Result<Self> {
        let norm = (x * x + y * y + z * z).sqrt();
        if !norm.is_finite() || (norm - 1.0).abs() > 1e-9 {
            return Err(BlochError::NotUnit { norm });
        }
        if (norm - 1.0).abs() <= NORM_SNAP {
            Ok(BlochVector { x, y, z })
        } else {
            Ok(BlochVector {
                x: x / norm,
                y: y / norm,
                z: z / norm,
            })
        }
    }

    /// Scales an arbitrary non-zero vector onto the sphere.
    pub fn normalized(x: f64, y: f64, z: f64) -> Result<Self> {
        let norm = (x * x + y * y + z * z).sqrt();
        if !norm.is_finite() || norm < 1e-12 {
            return Err(BlochError::ZeroVector);
        }
        Ok(BlochVector {
            x: x / norm,
            y: y / norm,
            z: z / norm,
        })
    }

    pub fn x(&self) -> f64 {
        self.x
    }

    pub fn y(&self) -> f64 {
        self.y
    }

    pub fn z(&self) -> f64 {
        self.z
    }

    pub fn dot(&self, other: &BlochVector) -> f64 {
        self.x * other.x + self.y * other.y + self.z * other.z
    }

    /// The opposite point on the sphere. Exact: coordinate negation does
    /// not round.
    pub fn antipode(&self) -> BlochVector {
        BlochVector {
            x: -self.x,
            y: -self.y,
            z: -self.z,
        }
    }

    /// Euclidean distance to another direction.
    pub fn distance(&self, other: &BlochVector) -> f64 {
        let dx = self.x - other.x;
        let dy = self.y - other.y;
        let dz = self.z - other.z;
        (dx * dx + dy * dy + dz * dz).sqrt()
    }

    fn cross(&self, other: &BlochVector) -> (f64, f64, f64) {
        (
            self.y * other.z - self.z * other.y,
            self.z * other.x - self.x * other.z,
            self.x * other.y - self.y * other.x,
        )
    }

    /// A deterministic unit vector perpendicular to `self`.
    fn some_perpendicular(&self) -> BlochVector {
        let against = if self.z.abs() < 0.9 {
            BlochVector::Z
        } else {
            BlochVector::X
        };
        let (cx, cy, cz) = self.cross(&against);
        BlochVector::normalized(cx, cy, cz).expect("cross with a non-parallel axis is non-zero")
    }
}

/// Single-qubit pure state with a fixed phase gauge.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QubitState {
    a0: Complex64,
    a1: Complex64,
}

impl QubitState {
    /// Accepts amplitudes normalised to 1e−12 and fixes the gauge: the
    /// first amplitude of modulus above 1e−12 becomes real and ≥ 0.
    pub fn new(a0: Complex64, a1: Complex64) -> Result<Self> {
        let norm = (a0.norm_sqr() + a1.norm_sqr()).sqrt();
        if !norm.is_finite() || (norm - 1.0).abs() > 1e-12 {
            return Err(BlochError::NotNormalized { norm });
        }
        let anchor = if a0.norm() > GAUGE_FLOOR { a0 } else { a1 };
        let phase = anchor / anchor.norm();
        Ok(QubitState {
            a0: a0 * phase.conj(),
            a1: a1 * phase.conj(),
        })
    }

    pub fn a0(&self) -> Complex64 {
        self.a0
    }

    pub fn a1(&self) -> Complex64 {
        self.a1
    }

    pub fn amplitudes(&self) -> [Complex64; 2] {
        [self.a0, self.a1]
    }

    /// ⟨self | other⟩, conjugate-linear in `self`.
    pub fn inner(&self, other: &QubitState) -> Complex64 {
        self.a0.conj() * other.a0 + self.a1.conj() * other.a1
    }
}

/// Spin state pointing along a Bloch direction.
pub fn qubit_from_bloch(n: BlochVector) -> QubitState {
    let theta = n.z().clamp(-1.0, 1.0).acos();
    let phi = n.y().atan2(n.x());
    let a0 = Complex64::new((theta / 2.0).cos(), 0.0);
    let a1 = Complex64::cis(phi) * (theta / 2.0).sin();
    QubitState::new(a0, a1).expect("trig amplitudes are normalised")
}

/// Bloch direction of a qubit state: (2 Re ā₀a₁, 2 Im ā₀a₁, |a₀|² − |a₁|²).
pub fn bloch_from_qubit(state: &QubitState) -> BlochVector {
    let cross = state.a0.conj() * state.a1;
    let x = 2.0 * cross.re;
    let y = 2.0 * cross.im;
    let z = state.a0.norm_sqr() - state.a1.norm_sqr();
    BlochVector::new(x, y, z).expect("image of a normalised state is unit")
}

/// Great circle of the Bloch sphere, stored as its canonical unit normal:
/// the sign is chosen so that the first coordinate of modulus above 1e−12
/// is positive.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GreatCircle {
    normal: BlochVector,
}

impl GreatCircle {
    pub fn new(normal: BlochVector) -> Self {
        let coords = [normal.x(), normal.y(), normal.z()];
        let flip = coords
            .iter()
            .find(|c| c.abs() > 1e-12)
            .map_or(false, |&c| c < 0.0);
        GreatCircle {
            normal: if flip { normal.antipode() } else { normal },
        }
    }

    pub fn normal(&self) -> BlochVector {
        self.normal
    }

    /// Signed distance of a direction from the circle's plane.
    pub fn plane_distance(&self, n: &BlochVector) -> f64 {
        self.normal.dot(n)
    }

    /// Whether a direction lies on the circle within `tol`.
    pub fn contains(&self, n: &BlochVector, tol: f64) -> bool {
        self.plane_distance(n).abs() <= tol
    }
}

/// Outcome of fitting a single great circle to a set of directions.
#[derive(Debug, Clone, PartialEq)]
pub enum CircleFit {
    Fit(GreatCircle),
    NoFit { residual: f64 },
}

impl CircleFit {
    pub fn is_fit(&self) -> bool {
        matches!(self, CircleFit::Fit(_))
    }

    pub fn circle(&self) -> Option<&GreatCircle> {
        match self {
            CircleFit::Fit(c) => Some(c),
            CircleFit::NoFit { .. } => None,
        }
    }
}

/// Finds a great circle containing every direction within `tol`, if one
/// exists.
///
/// The candidate normal minimises the summed squared plane distances (the
/// smallest-eigenvector direction of the 3×3 scatter matrix); the fit is
/// accepted when the worst |n·ŵ| is at most `tol`, and otherwise that
/// residual is reported. One direction picks a deterministic perpendicular;
/// two distinct non-antipodal directions use their cross product.
pub fn great_circle_fit(vectors: &[BlochVector], tol: f64) -> Result<CircleFit> {
    assert!(tol > 0.0, "fit tolerance must be positive");
    if vectors.is_empty() {
        return Err(BlochError::EmptyInput);
    }

    let normal = match vectors {
        [only] => only.some_perpendicular(),
        [a, b] => {
            let (cx, cy, cz) = a.cross(b);
            match BlochVector::normalized(cx, cy, cz) {
                Ok(n) => n,
                // Equal or antipodal pair: any circle through `a` works.
                Err(_) => a.some_perpendicular(),
            }
        }
        _ => scatter_minor_axis(vectors),
    };

    let residual = vectors
        .iter()
        .map(|v| normal.dot(v).abs())
        .fold(0.0, f64::max);
    if residual <= tol {
        Ok(CircleFit::Fit(GreatCircle::new(normal)))
    } else {
        Ok(CircleFit::NoFit { residual })
    }
}

/// Direction of least scatter: eigenvector for the smallest eigenvalue of
/// Σ nᵢnᵢᵀ.
fn scatter_minor_axis(vectors: &[BlochVector]) -> BlochVector {
    let mut s = [[0.0f64; 3]; 3];
    for v in vectors {
        let coords = [v.x(), v.y(), v.z()];
        for i in 0..3 {
            for j in 0..3 {
                s[i][j] += coords[i] * coords[j];
            }
        }
    }
    let m = ComplexMatrix::new(
        3,
        3,
        s.iter()
            .flatten()
            .map(|&v| Complex64::new(v, 0.0))
            .collect(),
    );
    let eig = linalg::hermitian_eigen(&m).expect("scatter matrix is real symmetric");
    // Real input keeps the Jacobi rotations real, so the imaginary parts
    // are exactly zero.
    let w = [
        eig.vectors.get(0, 0).re,
        eig.vectors.get(1, 0).re,
        eig.vectors.get(2, 0).re,
    ];
    BlochVector::normalized(w[0], w[1], w[2]).expect("eigenvector of a 3x3 scatter is unit")
}

/// w·σ for a unit vector w: [[w_z, w_x − i w_y], [w_x + i w_y, −w_z]].
/// Hermitian, unitary, traceless.
pub fn pauli_dot(w: BlochVector) -> ComplexMatrix {
    ComplexMatrix::new(
        2,
        2,
        vec![
            Complex64::new(w.z(), 0.0),
            Complex64::new(w.x(), -w.y()),
            Complex64::new(w.x(), w.y()),
            Complex64::new(-w.z(), 0.0),
        ],
    )
}
