//! Shared helpers for the integration suites: seeded sampling and small
//! closed-form eigenvalue oracles that do not touch the library's iterative
//! solver.

#![allow(dead_code)]

use antipar::linalg::ComplexMatrix;
use antipar::BlochVector;
use antipar::Complex64;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use std::f64::consts::{PI, TAU};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Uniform direction on the sphere (area measure).
pub fn random_direction(rng: &mut ChaCha8Rng) -> BlochVector {
    let z: f64 = rng.gen_range(-1.0..1.0);
    let phi: f64 = rng.gen_range(0.0..TAU);
    let r = (1.0 - z * z).sqrt();
    BlochVector::new(r * phi.cos(), r * phi.sin(), z).expect("unit by construction")
}

/// Random point on the great circle with the given unit normal.
pub fn random_on_circle(rng: &mut ChaCha8Rng, normal: BlochVector) -> BlochVector {
    let (e1, e2) = circle_frame(normal);
    let alpha: f64 = rng.gen_range(0.0..TAU);
    BlochVector::new(
        alpha.cos() * e1.0 + alpha.sin() * e2.0,
        alpha.cos() * e1.1 + alpha.sin() * e2.1,
        alpha.cos() * e1.2 + alpha.sin() * e2.2,
    )
    .expect("unit by construction")
}

/// Orthonormal pair spanning the plane orthogonal to `normal`.
pub fn circle_frame(normal: BlochVector) -> ((f64, f64, f64), (f64, f64, f64)) {
    let (wx, wy, wz) = (normal.x(), normal.y(), normal.z());
    // Cross with the axis the normal leans on least.
    let (ax, ay, az) = if wz.abs() < 0.9 {
        (0.0, 0.0, 1.0)
    } else {
        (1.0, 0.0, 0.0)
    };
    let (cx, cy, cz) = (wy * az - wz * ay, wz * ax - wx * az, wx * ay - wy * ax);
    let n1 = (cx * cx + cy * cy + cz * cz).sqrt();
    let e1 = (cx / n1, cy / n1, cz / n1);
    let e2 = (
        wy * e1.2 - wz * e1.1,
        wz * e1.0 - wx * e1.2,
        wx * e1.1 - wy * e1.0,
    );
    (e1, e2)
}

/// Dense random Hermitian matrix with entries of order one.
pub fn random_hermitian(rng: &mut ChaCha8Rng, n: usize) -> ComplexMatrix {
    let mut m = ComplexMatrix::zeros(n, n);
    for i in 0..n {
        m.set(i, i, Complex64::new(rng.gen_range(-1.0..1.0), 0.0));
        for j in (i + 1)..n {
            let v = Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0));
            m.set(i, j, v);
            m.set(j, i, v.conj());
        }
    }
    m
}

/// Random unitary as a product of complex Givens rotations and diagonal
/// phases; unitarity is structural, no orthogonalisation involved.
pub fn random_unitary(rng: &mut ChaCha8Rng, n: usize) -> ComplexMatrix {
    let mut u = ComplexMatrix::identity(n);
    for p in 0..n {
        for q in (p + 1)..n {
            let theta: f64 = rng.gen_range(0.0..TAU);
            let phase: f64 = rng.gen_range(0.0..TAU);
            let (c, s) = (theta.cos(), theta.sin());
            let e = Complex64::cis(phase);
            let mut g = ComplexMatrix::identity(n);
            g.set(p, p, Complex64::new(c, 0.0));
            g.set(p, q, e * s);
            g.set(q, p, -e.conj() * s);
            g.set(q, q, Complex64::new(c, 0.0));
            u = u.mul(&g);
        }
    }
    let mut d = ComplexMatrix::identity(n);
    for i in 0..n {
        d.set(i, i, Complex64::cis(rng.gen_range(0.0..TAU)));
    }
    u.mul(&d)
}

/// U diag(values) U† for a prescribed spectrum.
pub fn with_spectrum(u: &ComplexMatrix, values: &[f64]) -> ComplexMatrix {
    let n = values.len();
    let mut d = ComplexMatrix::zeros(n, n);
    for (i, &v) in values.iter().enumerate() {
        d.set(i, i, Complex64::new(v, 0.0));
    }
    u.mul(&d).mul(&u.adjoint())
}

/// Smallest eigenvalue of a 2×2 Hermitian matrix, in closed form.
pub fn min_eig_2x2(m: &ComplexMatrix) -> f64 {
    let a = m.get(0, 0).re;
    let b = m.get(1, 1).re;
    let g = m.get(0, 1);
    let mid = 0.5 * (a + b);
    let half_gap = 0.5 * (a - b);
    mid - (half_gap * half_gap + g.norm_sqr()).sqrt()
}

/// Smallest eigenvalue of a 3×3 Hermitian matrix via the trigonometric
/// solution of the characteristic cubic.
pub fn min_eig_3x3(m: &ComplexMatrix) -> f64 {
    let q = (m.get(0, 0).re + m.get(1, 1).re + m.get(2, 2).re) / 3.0;
    let p1 = m.get(0, 1).norm_sqr() + m.get(0, 2).norm_sqr() + m.get(1, 2).norm_sqr();
    let p2 = (m.get(0, 0).re - q).powi(2)
        + (m.get(1, 1).re - q).powi(2)
        + (m.get(2, 2).re - q).powi(2)
        + 2.0 * p1;
    if p2 <= 0.0 {
        return q;
    }
    let p = (p2 / 6.0).sqrt();
    let b = |i: usize, j: usize| {
        let shift = if i == j {
            Complex64::new(q, 0.0)
        } else {
            Complex64::new(0.0, 0.0)
        };
        (m.get(i, j) - shift) / p
    };
    let det = b(0, 0) * (b(1, 1) * b(2, 2) - b(1, 2) * b(2, 1))
        - b(0, 1) * (b(1, 0) * b(2, 2) - b(1, 2) * b(2, 0))
        + b(0, 2) * (b(1, 0) * b(2, 1) - b(1, 1) * b(2, 0));
    let r = (det.re / 2.0).clamp(-1.0, 1.0);
    let phi = r.acos() / 3.0;
    // cos(phi + 2π/3) is the smallest of the three branch values.
    q + 2.0 * p * (phi + 2.0 * PI / 3.0).cos()
}

/// The tetrahedron directions: four unit vectors with pairwise dot −1/3.
pub fn tetrahedron() -> Vec<BlochVector> {
    vec![
        BlochVector::Z,
        BlochVector::new(8.0f64.sqrt() / 3.0, 0.0, -1.0 / 3.0).unwrap(),
        BlochVector::new(-(2.0f64.sqrt()) / 3.0, (2.0 / 3.0f64).sqrt(), -1.0 / 3.0).unwrap(),
        BlochVector::new(-(2.0f64.sqrt()) / 3.0, -((2.0 / 3.0f64).sqrt()), -1.0 / 3.0).unwrap(),
    ]
}
