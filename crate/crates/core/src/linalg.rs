//! Small dense complex matrices and the few decompositions the crate needs:
//! Hermitian eigensolving, singular values, numerical rank, and PSD /
//! unitarity tests.
//!
//! Everything here targets matrices of dimension at most 8, so the
//! decompositions are cyclic Jacobi variants: slow asymptotically, but
//! simple, deterministic, and accurate to near machine precision at these
//! sizes. Singular values come from a one-sided Jacobi pass over the raw
//! vectors rather than from eigenvalues of the Gram matrix, which would
//! square away half the available precision and make rank decisions near
//! the tolerance unreliable.

use num_complex::Complex64;
use thiserror::Error;

/// Matrices further than this from their own adjoint (max entry modulus)
/// are rejected as non-Hermitian rather than symmetrised.
pub const HERMITICITY_TOL: f64 = 1e-12;

/// Default relative tolerance for rank decisions: singular values at or
/// below `DEFAULT_RANK_TOL * largest` count as zero.
pub const DEFAULT_RANK_TOL: f64 = 1e-8;

const MAX_JACOBI_SWEEPS: usize = 100;
const JACOBI_CONVERGENCE: f64 = 1e-15;

pub type Result<T> = std::result::Result<T, LinalgError>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum LinalgError {
    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },
    #[error("matrix is not Hermitian (max |m - m†| entry {deviation:.3e})")]
    NotHermitian { deviation: f64 },
    #[error("vector dimension mismatch: expected {expected}, got {found}")]
    DimensionMismatch { expected: usize, found: usize },
}

/// Dense complex matrix, row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct ComplexMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<Complex64>,
}

impl ComplexMatrix {
    /// Builds a matrix from row-major entries.
    ///
    /// Panics if the entry count does not match the shape or any entry is
    /// non-finite; both indicate a bug at the call site, not bad data.
    pub fn new(rows: usize, cols: usize, entries: Vec<Complex64>) -> Self {
        assert_eq!(
            entries.len(),
            rows * cols,
            "entry count {} does not match shape {}x{}",
            entries.len(),
            rows,
            cols
        );
        assert!(
            entries.iter().all(|e| e.re.is_finite() && e.im.is_finite()),
            "matrix entries must be finite"
        );
        ComplexMatrix { rows, cols, entries }
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        ComplexMatrix {
            rows,
            cols,
            entries: vec![Complex64::new(0.0, 0.0); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, Complex64::new(1.0, 0.0));
        }
        m
    }

    pub fn from_rows(rows: &[Vec<Complex64>]) -> Self {
        let r = rows.len();
        let c = if r == 0 { 0 } else { rows[0].len() };
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        ComplexMatrix::new(r, c, rows.concat())
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> Complex64 {
        self.entries[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: Complex64) {
        self.entries[i * self.cols + j] = v;
    }

    pub fn adjoint(&self) -> ComplexMatrix {
        let mut out = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.set(j, i, self.get(i, j).conj());
            }
        }
        out
    }

    pub fn mul(&self, other: &ComplexMatrix) -> ComplexMatrix {
        assert_eq!(self.cols, other.rows, "inner dimensions must agree");
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a == Complex64::new(0.0, 0.0) {
                    continue;
                }
                for j in 0..other.cols {
                    let v = out.get(i, j) + a * other.get(k, j);
                    out.set(i, j, v);
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[Complex64]) -> Vec<Complex64> {
        assert_eq!(self.cols, v.len(), "vector length must match columns");
        (0..self.rows)
            .map(|i| (0..self.cols).map(|j| self.get(i, j) * v[j]).sum())
            .collect()
    }

    pub fn sub(&self, other: &ComplexMatrix) -> ComplexMatrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let entries = self
            .entries
            .iter()
            .zip(&other.entries)
            .map(|(a, b)| a - b)
            .collect();
        ComplexMatrix::new(self.rows, self.cols, entries)
    }

    /// Kronecker product, row index of `self` varying slowest.
    pub fn kron(&self, other: &ComplexMatrix) -> ComplexMatrix {
        let mut out = Self::zeros(self.rows * other.rows, self.cols * other.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                let a = self.get(i, j);
                for p in 0..other.rows {
                    for q in 0..other.cols {
                        out.set(i * other.rows + p, j * other.cols + q, a * other.get(p, q));
                    }
                }
            }
        }
        out
    }

    pub fn trace(&self) -> Complex64 {
        assert!(self.is_square(), "trace of a non-square matrix");
        (0..self.rows).map(|i| self.get(i, i)).sum()
    }

    /// Largest entry modulus of `self - other`.
    pub fn max_abs_diff(&self, other: &ComplexMatrix) -> f64 {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        self.entries
            .iter()
            .zip(&other.entries)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    /// Largest value of |m[i][j] - conj(m[j][i])|.
    pub fn hermiticity_deviation(&self) -> f64 {
        assert!(self.is_square(), "hermiticity of a non-square matrix");
        let mut dev: f64 = 0.0;
        for i in 0..self.rows {
            for j in 0..self.cols {
                dev = dev.max((self.get(i, j) - self.get(j, i).conj()).norm());
            }
        }
        dev
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.entries.iter().map(|e| e.norm_sqr()).sum::<f64>().sqrt()
    }

    fn off_diagonal_norm(&self) -> f64 {
        let mut s = 0.0;
        for i in 0..self.rows {
            for j in 0..self.cols {
                if i != j {
                    s += self.get(i, j).norm_sqr();
                }
            }
        }
        s.sqrt()
    }
}

/// Pairwise inner products `g[i][j] = ⟨v_i | v_j⟩` (conjugate-linear in the
/// left argument). The result is Hermitian by construction: the upper
/// triangle is computed and mirrored.
pub fn gram_matrix(vectors: &[Vec<Complex64>]) -> Result<ComplexMatrix> {
    let k = vectors.len();
    check_equal_dims(vectors)?;
    let mut g = ComplexMatrix::zeros(k, k);
    for i in 0..k {
        for j in i..k {
            let v: Complex64 = vectors[i]
                .iter()
                .zip(&vectors[j])
                .map(|(a, b)| a.conj() * b)
                .sum();
            if i == j {
                g.set(i, i, Complex64::new(v.re, 0.0));
            } else {
                g.set(i, j, v);
                g.set(j, i, v.conj());
            }
        }
    }
    Ok(g)
}

/// Eigendecomposition of a Hermitian matrix.
#[derive(Debug, Clone)]
pub struct HermitianEigen {
    /// Eigenvalues in ascending order.
    pub values: Vec<f64>,
    /// Unitary matrix whose column j is the eigenvector for `values[j]`.
    pub vectors: ComplexMatrix,
}

/// Eigenvalues of a Hermitian matrix, ascending.
pub fn hermitian_eigenvalues(m: &ComplexMatrix) -> Result<Vec<f64>> {
    Ok(hermitian_eigen(m)?.values)
}

/// Full eigendecomposition of a Hermitian matrix by cyclic Jacobi rotations.
///
/// Input must be square and Hermitian within [`HERMITICITY_TOL`]; anything
/// else is an error, never silently repaired.
pub fn hermitian_eigen(m: &ComplexMatrix) -> Result<HermitianEigen> {
    check_square(m)?;
    let dev = m.hermiticity_deviation();
    if dev > HERMITICITY_TOL {
        return Err(LinalgError::NotHermitian { deviation: dev });
    }
    let n = m.rows();
    let mut a = m.clone();
    let mut u = ComplexMatrix::identity(n);
    let frob = a.frobenius_norm();

    for _ in 0..MAX_JACOBI_SWEEPS {
        if a.off_diagonal_norm() <= JACOBI_CONVERGENCE * frob {
            break;
        }
        for p in 0..n {
            for q in (p + 1)..n {
                let g = a.get(p, q);
                let w = g.norm();
                if w <= f64::MIN_POSITIVE {
                    continue;
                }
                // Unitary 2x2 block V = [[c, s], [-s*ē, c*ē]] with ē the
                // conjugate pivot phase; the angle choice zeroes a[p][q].
                let e = g / w;
                let alpha = a.get(p, p).re;
                let beta = a.get(q, q).re;
                let theta = (beta - alpha) / (2.0 * w);
                let t = if theta >= 0.0 {
                    1.0 / (theta + (theta * theta + 1.0).sqrt())
                } else {
                    -1.0 / (-theta + (theta * theta + 1.0).sqrt())
                };
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;
                let se = Complex64::new(s, 0.0) * e;
                let ce = Complex64::new(c, 0.0) * e;

                // A <- A·V on columns p, q.
                for r in 0..n {
                    let arp = a.get(r, p);
                    let arq = a.get(r, q);
                    a.set(r, p, arp * c - arq * se.conj());
                    a.set(r, q, arp * s + arq * ce.conj());
                }
                // A <- V†·A on rows p, q.
                for r in 0..n {
                    let apr = a.get(p, r);
                    let aqr = a.get(q, r);
                    a.set(p, r, apr * c - aqr * se);
                    a.set(q, r, apr * s + aqr * ce);
                }
                // The rotation makes these exact zeros; drop the roundoff.
                a.set(p, q, Complex64::new(0.0, 0.0));
                a.set(q, p, Complex64::new(0.0, 0.0));
                let app = a.get(p, p);
                let aqq = a.get(q, q);
                a.set(p, p, Complex64::new(app.re, 0.0));
                a.set(q, q, Complex64::new(aqq.re, 0.0));

                // U <- U·V accumulates the eigenvectors.
                for r in 0..n {
                    let urp = u.get(r, p);
                    let urq = u.get(r, q);
                    u.set(r, p, urp * c - urq * se.conj());
                    u.set(r, q, urp * s + urq * ce.conj());
                }
            }
        }
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| a.get(i, i).re.total_cmp(&a.get(j, j).re));
    let values: Vec<f64> = order.iter().map(|&i| a.get(i, i).re).collect();
    let mut vectors = ComplexMatrix::zeros(n, n);
    for (col, &src) in order.iter().enumerate() {
        for r in 0..n {
            vectors.set(r, col, u.get(r, src));
        }
    }
    Ok(HermitianEigen { values, vectors })
}

/// Singular values of the matrix whose columns are the given vectors,
/// in descending order, via one-sided Jacobi orthogonalisation.
pub fn singular_values(vectors: &[Vec<Complex64>]) -> Result<Vec<f64>> {
    check_equal_dims(vectors)?;
    let k = vectors.len();
    let mut cols: Vec<Vec<Complex64>> = vectors.to_vec();

    for _ in 0..MAX_JACOBI_SWEEPS {
        let mut rotated = false;
        for p in 0..k {
            for q in (p + 1)..k {
                let app: f64 = cols[p].iter().map(|z| z.norm_sqr()).sum();
                let aqq: f64 = cols[q].iter().map(|z| z.norm_sqr()).sum();
                let apq: Complex64 = cols[p]
                    .iter()
                    .zip(&cols[q])
                    .map(|(a, b)| a.conj() * b)
                    .sum();
                let w = apq.norm();
                if w <= JACOBI_CONVERGENCE * (app * aqq).sqrt() || w <= f64::MIN_POSITIVE {
                    continue;
                }
                let e = apq / w;
                let theta = (aqq - app) / (2.0 * w);
                let t = if theta >= 0.0 {
                    1.0 / (theta + (theta * theta + 1.0).sqrt())
                } else {
                    -1.0 / (-theta + (theta * theta + 1.0).sqrt())
                };
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;
                let se = Complex64::new(s, 0.0) * e;
                let ce = Complex64::new(c, 0.0) * e;
                for r in 0..cols[p].len() {
                    let vp = cols[p][r];
                    let vq = cols[q][r];
                    cols[p][r] = vp * c - vq * se.conj();
                    cols[q][r] = vp * s + vq * ce.conj();
                }
                rotated = true;
            }
        }
        if !rotated {
            break;
        }
    }

    let mut sv: Vec<f64> = cols
        .iter()
        .map(|col| col.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt())
        .collect();
    sv.sort_by(|a, b| b.total_cmp(a));
    Ok(sv)
}

/// Number of singular values exceeding `tol` times the largest one.
///
/// An empty list has rank 0. `tol` is relative and must be positive.
pub fn numerical_rank(vectors: &[Vec<Complex64>], tol: f64) -> Result<usize> {
    assert!(tol > 0.0, "rank tolerance must be positive");
    if vectors.is_empty() {
        return Ok(0);
    }
    let sv = singular_values(vectors)?;
    let largest = sv[0];
    Ok(sv.iter().filter(|&&s| s > tol * largest).count())
}

/// Whether all eigenvalues of a Hermitian matrix are at least `-tol`.
pub fn is_psd(m: &ComplexMatrix, tol: f64) -> Result<bool> {
    let values = hermitian_eigenvalues(m)?;
    Ok(values.first().map_or(true, |&v| v >= -tol))
}

/// Whether `m† m` is the identity to entrywise tolerance `tol`.
pub fn is_unitary(m: &ComplexMatrix, tol: f64) -> Result<bool> {
    check_square(m)?;
    let product = m.adjoint().mul(m);
    Ok(product.max_abs_diff(&ComplexMatrix::identity(m.rows())) <= tol)
}

fn check_square(m: &ComplexMatrix) -> Result<()> {
    if !m.is_square() {
        return Err(LinalgError::NotSquare {
            rows: m.rows(),
            cols: m.cols(),
        });
    }
    Ok(())
}

fn check_equal_dims(vectors: &[Vec<Complex64>]) -> Result<()> {
    if let Some(first) = vectors.first() {
        for v in vectors {
            if v.len() != first.len() {
                return Err(LinalgError::DimensionMismatch {
                    expected: first.len(),
                    found: v.len(),
                });
            }
        }
    }
    Ok(())
}
