//! Checks the Hermitian eigensolver against oracles that share none of its
//! machinery: power sums of matrix traces, Newton-identity characteristic
//! polynomials, Gershgorin bounds, planted spectra, and closed-form 2×2 and
//! 3×3 eigenvalues.

mod common;

use antipar::linalg::{self, ComplexMatrix};
use antipar::Complex64;
use common::{min_eig_2x2, min_eig_3x3, random_hermitian, random_unitary, rng, with_spectrum};

/// tr(A^r) for r = 1..=max, by repeated multiplication.
fn power_traces(m: &ComplexMatrix, max: usize) -> Vec<f64> {
    let mut traces = Vec::with_capacity(max);
    let mut power = m.clone();
    for _ in 0..max {
        traces.push(power.trace().re);
        power = power.mul(m);
    }
    traces
}

/// Elementary symmetric polynomials e1..=ek of the spectrum from power
/// sums, via Newton's identities. Never touches the eigensolver.
fn elementary_symmetric(power_sums: &[f64]) -> Vec<f64> {
    let k = power_sums.len();
    let mut e = vec![0.0f64; k + 1];
    e[0] = 1.0;
    for r in 1..=k {
        let mut acc = 0.0;
        for i in 1..=r {
            let sign = if i % 2 == 1 { 1.0 } else { -1.0 };
            acc += sign * e[r - i] * power_sums[i - 1];
        }
        e[r] = acc / r as f64;
    }
    e.remove(0);
    e
}

/// Largest |λ| can get, straight off the entries.
fn gershgorin_radius(m: &ComplexMatrix) -> f64 {
    let n = m.rows();
    (0..n)
        .map(|i| (0..n).map(|j| m.get(i, j).norm()).sum::<f64>())
        .fold(0.0f64, f64::max)
}

#[test]
fn eigenvalue_power_sums_match_matrix_traces() {
    let mut rng = rng(11);
    for _ in 0..40 {
        let m = random_hermitian(&mut rng, 4);
        let values = linalg::hermitian_eigenvalues(&m).unwrap();
        let traces = power_traces(&m, 4);
        let radius = gershgorin_radius(&m);
        for (r, trace) in traces.iter().enumerate() {
            let power_sum: f64 = values.iter().map(|v| v.powi(r as i32 + 1)).sum();
            let scale = radius.powi(r as i32 + 1).max(1.0);
            assert!(
                (power_sum - trace).abs() <= 1e-10 * scale,
                "power sum {} mismatch: {power_sum} vs {trace}",
                r + 1
            );
        }
    }
}

#[test]
fn characteristic_polynomial_annihilates_reported_eigenvalues() {
    let mut rng = rng(12);
    for _ in 0..40 {
        let m = random_hermitian(&mut rng, 4);
        let e = elementary_symmetric(&power_traces(&m, 4));
        let values = linalg::hermitian_eigenvalues(&m).unwrap();
        let radius = gershgorin_radius(&m);
        let scale = radius.powi(4).max(1.0);
        for &v in &values {
            let p = v.powi(4) - e[0] * v.powi(3) + e[1] * v.powi(2) - e[2] * v + e[3];
            assert!(
                p.abs() <= 1e-9 * scale,
                "char poly does not vanish at {v}: {p}"
            );
        }
    }
}

#[test]
fn psd_matrices_have_nonnegative_symmetric_functions() {
    let mut rng = rng(13);
    for _ in 0..40 {
        let b = random_hermitian(&mut rng, 4);
        let m = b.adjoint().mul(&b);
        // Real-rooted quartic with all e_k ≥ 0 has no negative root.
        let e = elementary_symmetric(&power_traces(&m, 4));
        for (k, &ek) in e.iter().enumerate() {
            assert!(ek >= -1e-9, "e{} = {ek} negative for a PSD matrix", k + 1);
        }
        let values = linalg::hermitian_eigenvalues(&m).unwrap();
        assert!(values[0] >= -1e-10 * gershgorin_radius(&m).max(1.0));
        assert!(linalg::is_psd(&m, 1e-8).unwrap());
    }
}

#[test]
fn indefinite_matrices_fail_both_certificates() {
    let mut rng = rng(14);
    for _ in 0..40 {
        let u = random_unitary(&mut rng, 4);
        let m = with_spectrum(&u, &[-0.5, 1.0, 2.0, 3.0]);
        let e = elementary_symmetric(&power_traces(&m, 4));
        assert!(
            e.iter().any(|&ek| ek < -1e-10),
            "indefinite spectrum must break a sign: {e:?}"
        );
        let values = linalg::hermitian_eigenvalues(&m).unwrap();
        assert!((values[0] + 0.5).abs() < 1e-9);
        assert!(!linalg::is_psd(&m, 1e-8).unwrap());
    }
}

#[test]
fn planted_spectra_are_recovered() {
    let mut rng = rng(15);
    let spectra: Vec<Vec<f64>> = vec![
        vec![-2.0, -1.0, 0.0, 5.0],
        vec![1.0, 1.0, 1.0, 1.0],
        vec![0.0, 0.0, 1e-6, 1.0],
        vec![-3.0, 2.0, 2.0, 2.0],
        vec![1e-12, 0.5, 0.5, 7.0],
    ];
    for spectrum in &spectra {
        for _ in 0..8 {
            let u = random_unitary(&mut rng, 4);
            let m = with_spectrum(&u, spectrum);
            let values = linalg::hermitian_eigenvalues(&m).unwrap();
            for (found, planted) in values.iter().zip(spectrum) {
                assert!(
                    (found - planted).abs() <= 1e-10,
                    "planted {planted}, found {found} in {spectrum:?}"
                );
            }
        }
    }
}

#[test]
fn eigenvectors_reconstruct_planted_matrices() {
    let mut rng = rng(16);
    for _ in 0..20 {
        let u = random_unitary(&mut rng, 4);
        let m = with_spectrum(&u, &[-1.0, 0.25, 0.5, 2.0]);
        let eig = linalg::hermitian_eigen(&m).unwrap();
        for (col, &value) in eig.values.iter().enumerate() {
            let v: Vec<Complex64> = (0..4).map(|r| eig.vectors.get(r, col)).collect();
            let mv = m.mul_vec(&v);
            for r in 0..4 {
                assert!(
                    (mv[r] - v[r] * value).norm() <= 1e-9,
                    "column {col} fails the eigen equation"
                );
            }
        }
    }
}

#[test]
fn closed_forms_match_the_solver() {
    let mut rng = rng(17);
    for _ in 0..200 {
        let m2 = random_hermitian(&mut rng, 2);
        let solver = linalg::hermitian_eigenvalues(&m2).unwrap()[0];
        let oracle = min_eig_2x2(&m2);
        assert!(
            (solver - oracle).abs() <= 1e-11 * gershgorin_radius(&m2).max(1.0),
            "2x2 disagreement: {solver} vs {oracle}"
        );

        let m3 = random_hermitian(&mut rng, 3);
        let solver = linalg::hermitian_eigenvalues(&m3).unwrap()[0];
        let oracle = min_eig_3x3(&m3);
        assert!(
            (solver - oracle).abs() <= 1e-10 * gershgorin_radius(&m3).max(1.0),
            "3x3 disagreement: {solver} vs {oracle}"
        );
    }
}
