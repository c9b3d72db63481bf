//! Spin-flip machines: the unitary attached to a great circle that turns
//! parallel pairs into anti-parallel pairs for every direction on it.
//!
//! For a circle with unit normal w the machine is 1 ⊗ (w·σ): acting on the
//! second qubit only, it maps |n, n⟩ to |n, −n⟩ up to phase exactly when
//! n·w = 0, because w·σ reflects Bloch vectors through the normal axis and
//! that reflection sends every in-plane direction to its antipode. Off the
//! circle the transition amplitude has modulus √(1 − (n·w)²), so the circle
//! is exactly the locus of unit fidelity.

use num_complex::Complex64;
use thiserror::Error;

use crate::bloch::{pauli_dot, BlochVector, GreatCircle};
use crate::linalg::ComplexMatrix;
use crate::states::{antiparallel, parallel, TwoQubitState};
use crate::util::{mod_pi_distance, wrap_angle};

/// A circle counts as a meridian when the poles sit in its plane to within
/// this tolerance on |w·ẑ|.
pub const MERIDIAN_TOL: f64 = 1e-9;

pub type Result<T> = std::result::Result<T, MachineError>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum MachineError {
    #[error("circle is not a meridian: |normal·z| = {pole_component:.3e}")]
    NotMeridian { pole_component: f64 },
}

/// Flip unitary for one great circle: a 2×2 single-qubit action and its
/// two-qubit embedding acting on the second slot.
#[derive(Debug, Clone, PartialEq)]
pub struct FlipMachine {
    circle: GreatCircle,
    u2: ComplexMatrix,
    u4: ComplexMatrix,
}

impl FlipMachine {
    fn from_single_qubit(circle: GreatCircle, u2: ComplexMatrix) -> Self {
        let u4 = ComplexMatrix::identity(2).kron(&u2);
        FlipMachine { circle, u2, u4 }
    }

    pub fn circle(&self) -> &GreatCircle {
        &self.circle
    }

    pub fn u2(&self) -> &ComplexMatrix {
        &self.u2
    }

    pub fn u4(&self) -> &ComplexMatrix {
        &self.u4
    }

    /// Applies the two-qubit unitary to a state.
    pub fn apply(&self, state: &TwoQubitState) -> Vec<Complex64> {
        self.u4.mul_vec(state.amplitudes())
    }
}

/// Machine sending |n, n⟩ to |n, −n⟩ (up to phase) for every n on the
/// circle: u2 = w·σ.
pub fn flipper_for_circle(circle: &GreatCircle) -> FlipMachine {
    FlipMachine::from_single_qubit(*circle, pauli_dot(circle.normal()))
}

/// Machine for the reverse direction, |n, −n⟩ to |n, n⟩: the adjoint
/// single-qubit action. Since w·σ is Hermitian this coincides with the
/// forward machine, which is why flipping twice is the identity.
pub fn antiparallel_to_parallel_machine(circle: &GreatCircle) -> FlipMachine {
    FlipMachine::from_single_qubit(*circle, pauli_dot(circle.normal()).adjoint())
}

/// |⟨n,−n| U |n,n⟩|: modulus of the transition amplitude from the parallel
/// to the anti-parallel pair. Equals √(1 − s²) with s = n·w, so 1 on the
/// circle and 0 along the normal.
pub fn machine_fidelity(machine: &FlipMachine, n: BlochVector) -> f64 {
    let image = machine.apply(&parallel(n));
    let target = antiparallel(n);
    target
        .amplitudes()
        .iter()
        .zip(&image)
        .map(|(t, i)| t.conj() * i)
        .sum::<Complex64>()
        .norm()
}

/// Computational-basis action of a meridian machine.
///
/// For a circle through both poles, u4 sends |00⟩ ↦ e^{ia}|01⟩,
/// |11⟩ ↦ e^{ib}|10⟩ and (|01⟩+|10⟩)/√2 ↦ e^{ic}(c₁|00⟩ + c₂|11⟩). The
/// circle's azimuth is pinned by the first two phases: φ = (a − b + π)/2
/// modulo π.
#[derive(Debug, Clone, PartialEq)]
pub struct BasisActionReport {
    /// Phase on |00⟩ ↦ |01⟩, in (−π, π].
    pub a: f64,
    /// Phase on |11⟩ ↦ |10⟩, in (−π, π].
    pub b: f64,
    /// Global phase split off the symmetric-state image, in (−π, π].
    pub c: f64,
    /// Amplitude of |00⟩ in the symmetric-state image after removing c.
    pub c1: Complex64,
    /// Amplitude of |11⟩ in the symmetric-state image after removing c.
    pub c2: Complex64,
    /// Azimuth (a − b + π)/2 mod π predicted from the basis phases.
    pub phi_constraint: f64,
    /// Azimuth of the machine's circle, mod π.
    pub circle_azimuth: f64,
}

impl BasisActionReport {
    /// Distance between predicted and actual azimuth in ℝ/πℤ.
    pub fn constraint_residual(&self) -> f64 {
        mod_pi_distance(self.phi_constraint, self.circle_azimuth)
    }

    fn normalised(mut self) -> Self {
        self.phi_constraint = self.phi_constraint.rem_euclid(std::f64::consts::PI);
        self
    }
}

/// Extracts the basis action of a meridian machine and the azimuth it
/// implies. Fails with [`MachineError::NotMeridian`] when the circle's
/// plane misses the poles.
pub fn verify_basis_action(machine: &FlipMachine) -> Result<BasisActionReport> {
    let w = machine.circle().normal();
    if w.z().abs() > MERIDIAN_TOL {
        return Err(MachineError::NotMeridian {
            pole_component: w.z(),
        });
    }

    let u2 = machine.u2();
    // Meridian normals have no z component, so u2 is purely off-diagonal.
    let a = u2.get(1, 0).arg();
    let b = u2.get(0, 1).arg();

    let inv_sqrt2 = Complex64::new(std::f64::consts::FRAC_1_SQRT_2, 0.0);
    let zero = Complex64::new(0.0, 0.0);
    let symmetric = machine.u4().mul_vec(&[zero, inv_sqrt2, inv_sqrt2, zero]);
    let z00 = symmetric[0];
    let z11 = symmetric[3];
    let anchor = if z00.norm() > 1e-12 { z00 } else { z11 };
    let c = anchor.arg();
    let unwind = Complex64::cis(-c);

    let azimuth = wrap_angle(w.y().atan2(w.x()) + std::f64::consts::FRAC_PI_2)
        .rem_euclid(std::f64::consts::PI);

    Ok(BasisActionReport {
        a: wrap_angle(a),
        b: wrap_angle(b),
        c: wrap_angle(c),
        c1: z00 * unwind,
        c2: z11 * unwind,
        phi_constraint: (a - b + std::f64::consts::PI) / 2.0_f64,
        circle_azimuth: azimuth,
    }
    .normalised())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{self, ComplexMatrix};
    use approx::assert_relative_eq;
    use proptest::prelude::*;
    use std::f64::consts::{FRAC_PI_2, PI, TAU};

    fn equator() -> GreatCircle {
        GreatCircle::new(BlochVector::Z)
    }

    fn meridian(normal_azimuth: f64) -> GreatCircle {
        GreatCircle::new(
            BlochVector::new(normal_azimuth.cos(), normal_azimuth.sin(), 0.0).unwrap(),
        )
    }

    #[test]
    fn equator_machine_is_pauli_z() {
        let m = flipper_for_circle(&equator());
        assert_relative_eq!(m.u2().get(0, 0).re, 1.0, epsilon = 1e-15);
        assert_relative_eq!(m.u2().get(1, 1).re, -1.0, epsilon = 1e-15);
        assert!(m.u2().get(0, 1).norm() < 1e-15);
    }

    #[test]
    fn fidelity_is_one_on_the_circle() {
        let m = flipper_for_circle(&equator());
        assert_relative_eq!(machine_fidelity(&m, BlochVector::X), 1.0, epsilon = 1e-12);
        assert_relative_eq!(machine_fidelity(&m, BlochVector::Y), 1.0, epsilon = 1e-12);
    }

    #[test]
    fn fidelity_vanishes_along_the_normal() {
        let m = flipper_for_circle(&equator());
        assert!(machine_fidelity(&m, BlochVector::Z) < 1e-12);
    }

    #[test]
    fn fidelity_at_thirty_degrees_off_plane() {
        // n·w = 1/2 gives √(1 − 1/4) = √3/2.
        let m = flipper_for_circle(&equator());
        let n = BlochVector::new((3.0f64).sqrt() / 2.0, 0.0, 0.5).unwrap();
        assert_relative_eq!(
            machine_fidelity(&m, n),
            (3.0f64).sqrt() / 2.0,
            epsilon = 1e-12
        );
    }

    #[test]
    fn y_normal_machine_basis_action() {
        // u2 = σ_y: |0⟩ ↦ i|1⟩ and |1⟩ ↦ −i|0⟩.
        let report = verify_basis_action(&flipper_for_circle(&meridian(FRAC_PI_2))).unwrap();
        assert_relative_eq!(report.a, FRAC_PI_2, epsilon = 1e-12);
        assert_relative_eq!(report.b, -FRAC_PI_2, epsilon = 1e-12);
        assert!(report.phi_constraint.min(PI - report.phi_constraint) < 1e-12);
        assert!(report.constraint_residual() < 1e-12);
    }

    #[test]
    fn x_normal_machine_basis_action() {
        // u2 = σ_x: both basis phases vanish and the azimuth is π/2.
        let report = verify_basis_action(&flipper_for_circle(&meridian(0.0))).unwrap();
        assert!(report.a.abs() < 1e-12);
        assert!(report.b.abs() < 1e-12);
        assert_relative_eq!(report.phi_constraint, FRAC_PI_2, epsilon = 1e-12);
        assert!(report.constraint_residual() < 1e-12);
    }

    #[test]
    fn equator_machine_is_not_a_meridian() {
        match verify_basis_action(&flipper_for_circle(&equator())) {
            Err(MachineError::NotMeridian { pole_component }) => {
                assert_relative_eq!(pole_component, 1.0, epsilon = 1e-15)
            }
            Ok(_) => panic!("the equator misses the poles"),
        }
    }

    #[test]
    fn reverse_machine_composes_to_identity() {
        let c = meridian(1.234);
        let forward = flipper_for_circle(&c);
        let reverse = antiparallel_to_parallel_machine(&c);
        let product = forward.u4().mul(reverse.u4());
        assert!(product.max_abs_diff(&ComplexMatrix::identity(4)) < 1e-12);
    }

    #[test]
    fn reverse_machine_maps_antiparallel_to_parallel() {
        let c = equator();
        let reverse = antiparallel_to_parallel_machine(&c);
        let n = BlochVector::X;
        let image = reverse.apply(&antiparallel(n));
        let overlap: Complex64 = parallel(n)
            .amplitudes()
            .iter()
            .zip(&image)
            .map(|(t, i)| t.conj() * i)
            .sum();
        assert_relative_eq!(overlap.norm(), 1.0, epsilon = 1e-12);
    }

    fn unit_vector() -> impl Strategy<Value = BlochVector> {
        (-1.0f64..1.0, 0.0..TAU).prop_map(|(z, phi)| {
            let r = (1.0 - z * z).sqrt();
            BlochVector::new(r * phi.cos(), r * phi.sin(), z).unwrap()
        })
    }

    proptest! {
        #[test]
        fn fidelity_law_holds_everywhere(w in unit_vector(), n in unit_vector()) {
            let m = flipper_for_circle(&GreatCircle::new(w));
            let s = n.dot(&m.circle().normal());
            let expected = (1.0 - s * s).max(0.0).sqrt();
            prop_assert!((machine_fidelity(&m, n) - expected).abs() < 1e-12);
        }

        #[test]
        fn machines_are_unitary_involutions(w in unit_vector()) {
            let m = flipper_for_circle(&GreatCircle::new(w));
            prop_assert!(linalg::is_unitary(m.u4(), 1e-12).unwrap());
            let square = m.u4().mul(m.u4());
            prop_assert!(square.max_abs_diff(&ComplexMatrix::identity(4)) < 1e-12);
        }

        #[test]
        fn meridian_azimuth_constraint(az in 0.0..TAU) {
            let report = verify_basis_action(&flipper_for_circle(&meridian(az))).unwrap();
            prop_assert!(report.constraint_residual() < 1e-9);
            let weight = report.c1.norm_sqr() + report.c2.norm_sqr();
            prop_assert!((weight - 1.0).abs() < 1e-12);
        }
    }
}
