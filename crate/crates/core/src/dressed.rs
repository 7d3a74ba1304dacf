//! Analytic dressed states for the Lambda and tied five-level systems, plus a
//! numeric diagonalization oracle used to cross-check every formula.
//!
//! Sign conventions: Rabi frequencies are real and nonnegative, so the mixing
//! angle theta lies in [0, pi/2]. The two-level angles Phi_1, Phi_2 are taken
//! as arctangents of -Lambda_{1,2}/Omega_1 in (-pi/2, pi/2). With that choice
//! the intermediate-level components of psi_1, psi_2 (and their primed
//! partners) enter with +sin Phi, which is what actually satisfies the
//! eigenvalue equation; the printed forms with -sin Phi differ only by the
//! sign convention of the angle.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64 as C64;

use crate::error::{Error, Result};
use crate::model::{HamiltonianSample, PulseSet};

/// Dressed decomposition of the Lambda3 system at one instant.
///
/// `eigenvalues` are ordered (dark, bright1, bright2) = (0, lambda_-,
/// lambda_+). `phi` is the two-level mixing angle with tan(2 phi) =
/// 2 Omega / Delta, Omega^2 = Omega_1^2 + Omega_2^2.
#[derive(Debug, Clone)]
pub struct Lambda3Dressed {
    pub theta: f64,
    pub phi: f64,
    pub dark: DVector<C64>,
    pub bright1: DVector<C64>,
    pub bright2: DVector<C64>,
    pub eigenvalues: [f64; 3],
}

/// Dressed decomposition of the tied five-level system (Omega_4 = Omega_1).
///
/// `lambdas` are in the paper's index order (Lambda_0 .. Lambda_4), not
/// sorted. `vec_lambda1` is the dark-like transfer state with exactly zero
/// amplitude on level |3>; `vec_lambda2` is the bright-like partner.
#[derive(Debug, Clone)]
pub struct FiveDressed {
    pub lambdas: [f64; 5],
    pub theta: f64,
    pub phi1: f64,
    pub phi2: f64,
    pub phi: f64,
    pub vec_lambda1: DVector<C64>,
    pub vec_lambda2: DVector<C64>,
}

/// General five-level spectrum under the two-photon resonance conditions
/// delta_2 = delta_4 = 0, delta_1 = delta_3 = Delta (no tie required).
///
/// The quadratic x^2 - Omega_s^2 x + V^4 = 0 in x = Lambda(Lambda - Delta)
/// yields roots x_1 <= x_2 with x_1 x_2 = V^4 and x_1 + x_2 = Omega_s^2.
#[derive(Debug, Clone, Copy)]
pub struct GeneralFiveSpectrum {
    pub x1: f64,
    pub x2: f64,
    /// All five eigenvalues, sorted ascending.
    pub lambdas: [f64; 5],
    pub omega_s_sq: f64,
    pub v4: f64,
}

fn real_vec(components: &[f64]) -> DVector<C64> {
    DVector::from_iterator(components.len(), components.iter().map(|x| C64::new(*x, 0.0)))
}

/// Gauge factors u_k with u_k u_{k+1}^* = e^{i phi_k}, mapping zero-phase
/// eigenvectors onto eigenvectors of the phased Hamiltonian.
fn gauge_factors(phases: &[f64]) -> Vec<C64> {
    let mut u = Vec::with_capacity(phases.len() + 1);
    u.push(C64::new(1.0, 0.0));
    let mut acc = 0.0;
    for p in phases {
        acc -= p;
        u.push(C64::from_polar(1.0, acc));
    }
    u
}

fn apply_gauge(v: &mut DVector<C64>, gauge: &[C64]) {
    for (x, u) in v.iter_mut().zip(gauge) {
        *x *= *u;
    }
}

/// Dressed states of the Lambda3 system: one dark and two bright states.
///
/// `phases` are the constant pulse phases (phi_1, phi_2) folded into the
/// Hamiltonian couplings.
pub fn lambda3_dressed(
    omega1: f64,
    omega2: f64,
    delta: f64,
    phases: (f64, f64),
) -> Result<Lambda3Dressed> {
    if omega1 == 0.0 && omega2 == 0.0 {
        return Err(Error::DegenerateInput(
            "mixing angle undefined with both fields zero".into(),
        ));
    }
    if !(omega1.is_finite() && omega2.is_finite() && delta.is_finite()) {
        return Err(Error::InvalidParameter("non-finite dressed-state input".into()));
    }
    let theta = omega1.atan2(omega2);
    let omega = omega1.hypot(omega2);
    let root = (delta * delta + 4.0 * omega * omega).sqrt();
    let lambda_minus = 0.5 * (delta - root);
    let lambda_plus = 0.5 * (delta + root);
    // Half-angle form of tan(2 phi) = 2 Omega / Delta, stable for all Delta.
    let phi = (2.0 * omega).atan2(delta + root);

    let (st, ct) = theta.sin_cos();
    let (sp, cp) = phi.sin_cos();
    // Bright combination orthogonal to the dark state.
    let mut dark = real_vec(&[ct, 0.0, -st]);
    let mut bright1 = real_vec(&[st * cp, sp, ct * cp]);
    let mut bright2 = real_vec(&[-st * sp, cp, -ct * sp]);

    let gauge = gauge_factors(&[phases.0, phases.1]);
    apply_gauge(&mut dark, &gauge);
    apply_gauge(&mut bright1, &gauge);
    apply_gauge(&mut bright2, &gauge);

    Ok(Lambda3Dressed {
        theta,
        phi,
        dark,
        bright1,
        bright2,
        eigenvalues: [0.0, lambda_minus, lambda_plus],
    })
}

/// Eigenvalues of the tied five-level Hamiltonian, in the paper's index order
/// (Lambda_0, Lambda_1, Lambda_2, Lambda_3, Lambda_4).
pub fn five_eigenvalues_tied(omega1: f64, omega2: f64, omega3: f64, delta: f64) -> [f64; 5] {
    let s1 = (delta * delta + 4.0 * omega1 * omega1).sqrt();
    let x2 = omega1 * omega1 + omega2 * omega2 + omega3 * omega3;
    let s2 = (delta * delta + 4.0 * x2).sqrt();
    [
        0.0,
        0.5 * (delta - s1),
        0.5 * (delta - s2),
        0.5 * (delta + s1),
        0.5 * (delta + s2),
    ]
}

/// General (untied) five-level eigenvalues under the gate resonance
/// conditions, via the quadratic in x = Lambda(Lambda - Delta).
pub fn five_eigenvalues_general(omegas: [f64; 4], delta: f64) -> GeneralFiveSpectrum {
    let sq: Vec<f64> = omegas.iter().map(|o| o * o).collect();
    let omega_s_sq = sq.iter().sum::<f64>();
    let v4 = sq[1] * sq[3] + sq[0] * sq[2] + sq[0] * sq[3];
    let disc = omega_s_sq * omega_s_sq - 4.0 * v4;
    assert!(
        disc >= -1e-9 * omega_s_sq.powi(2).max(1.0),
        "discriminant Omega_s^4 - 4 V^4 = {disc} went negative"
    );
    let root = disc.max(0.0).sqrt();
    let x1 = 0.5 * (omega_s_sq - root);
    let x2 = 0.5 * (omega_s_sq + root);
    // Lambda(Lambda - Delta) = x  =>  Lambda = (Delta +- sqrt(Delta^2+4x))/2.
    let s1 = (delta * delta + 4.0 * x1.max(0.0)).sqrt();
    let s2 = (delta * delta + 4.0 * x2).sqrt();
    let mut lambdas = [
        0.0,
        0.5 * (delta - s1),
        0.5 * (delta - s2),
        0.5 * (delta + s1),
        0.5 * (delta + s2),
    ];
    lambdas.sort_by(|a, b| a.partial_cmp(b).unwrap());
    GeneralFiveSpectrum { x1, x2, lambdas, omega_s_sq, v4 }
}

/// Analytic eigenvectors |Lambda_1>, |Lambda_2> of the tied five-level
/// system, together with the mixing angles of the decomposition.
pub fn five_eigenvectors_tied(
    omega1: f64,
    omega2: f64,
    omega3: f64,
    delta: f64,
) -> Result<FiveDressed> {
    if omega1 == 0.0 && omega2 == 0.0 && omega3 == 0.0 && delta == 0.0 {
        return Err(Error::DegenerateInput(
            "all fields and the detuning are zero; angles undefined".into(),
        ));
    }
    let lambdas = five_eigenvalues_tied(omega1, omega2, omega3, delta);
    let omega_sq = omega2 * omega2 + omega3 * omega3;
    let omega = omega_sq.sqrt();
    let x2 = omega1 * omega1 + omega_sq;
    let s1 = (delta * delta + 4.0 * omega1 * omega1).sqrt();
    let s2 = (delta * delta + 4.0 * x2).sqrt();

    let theta = omega2.atan2(omega3);
    // tan Phi_1 = -Lambda_1/Omega_1 = (s1 - Delta)/(2 Omega_1); for Delta >= 0
    // the difference is computed cancellation-free as 4 Omega_1^2/(s1+Delta).
    let num1 = if delta >= 0.0 { 4.0 * omega1 * omega1 / (s1 + delta) } else { s1 - delta };
    let phi1 = num1.atan2(2.0 * omega1);
    let num2 = if delta >= 0.0 { 4.0 * x2 / (s2 + delta) } else { s2 - delta };
    let phi2 = num2.atan2(2.0 * omega1);
    // tan Phi = -(Omega/Omega_1) cos Phi_2, with cos Phi_2 expanded so the
    // Omega_1 -> 0 limit stays finite.
    let phi = (-2.0 * omega).atan2(num2.hypot(2.0 * omega1));

    let (st, ct) = theta.sin_cos();
    let (s1p, c1p) = phi1.sin_cos();
    let (s2p, c2p) = phi2.sin_cos();
    let (sp, cp) = phi.sin_cos();

    // |Lambda_1> = cos(theta) psi_1 - sin(theta) psi_2 with
    // psi_1 = cos(Phi_1)|1> + sin(Phi_1)|2>, psi_2 likewise on |5>, |4>.
    let vec_lambda1 = real_vec(&[ct * c1p, ct * s1p, 0.0, -st * s1p, -st * c1p]);
    // |Lambda_2> = cos(Phi) sin(theta) psi'_1 - sin(Phi)|3>
    //            + cos(Phi) cos(theta) psi'_2.
    let vec_lambda2 =
        real_vec(&[cp * st * c2p, cp * st * s2p, -sp, cp * ct * s2p, cp * ct * c2p]);

    Ok(FiveDressed { lambdas, theta, phi1, phi2, phi, vec_lambda1, vec_lambda2 })
}

/// A full eigen-decomposition: eigenvalues ascending, orthonormal vectors.
#[derive(Debug, Clone)]
pub struct EigenPairs {
    pub values: Vec<f64>,
    pub vectors: Vec<DVector<C64>>,
}

/// Numerically diagonalize a Hermitian Hamiltonian sample.
///
/// Eigenvalues come back ascending, degenerate groups ordered by the bare
/// state each vector overlaps most, and each vector's first non-negligible
/// component is made real and positive so comparisons are deterministic.
pub fn numeric_spectrum(h: &HamiltonianSample) -> Result<EigenPairs> {
    let defect = h.hermiticity_defect();
    let scale = h.matrix.iter().fold(0.0f64, |a, x| a.max(x.norm())).max(1.0);
    if defect > 1e-12 * scale {
        return Err(Error::NonHermitian(defect));
    }
    let n = h.matrix.nrows();
    let eig = h.matrix.clone().symmetric_eigen();
    let mut order: Vec<usize> = (0..n).collect();
    let bare_rank = |k: usize| -> usize {
        let col = eig.eigenvectors.column(k);
        (0..n)
            .max_by(|&a, &b| col[a].norm().partial_cmp(&col[b].norm()).unwrap())
            .unwrap()
    };
    order.sort_by(|&a, &b| {
        eig.eigenvalues[a]
            .partial_cmp(&eig.eigenvalues[b])
            .unwrap()
            .then(bare_rank(a).cmp(&bare_rank(b)))
    });
    let values: Vec<f64> = order.iter().map(|&k| eig.eigenvalues[k]).collect();
    let vectors: Vec<DVector<C64>> = order
        .iter()
        .map(|&k| {
            let mut v: DVector<C64> = eig.eigenvectors.column(k).into_owned();
            v /= C64::new(v.norm(), 0.0);
            if let Some(first) = v.iter().find(|x| x.norm() > 1e-12).copied() {
                let phase = first / first.norm();
                v /= phase;
            }
            v
        })
        .collect();
    Ok(EigenPairs { values, vectors })
}

/// Residual ||H v - lambda v|| for one candidate eigenpair.
pub fn eigen_residual(h: &DMatrix<C64>, value: f64, vector: &DVector<C64>) -> f64 {
    (h * vector - vector * C64::new(value, 0.0)).norm()
}

/// Dressed decomposition of a Lambda3 pulse set at time `t`, convenience
/// wrapper used by trajectory diagnostics.
pub fn lambda3_dressed_at(pulses: &PulseSet, delta: f64, t: f64) -> Result<Lambda3Dressed> {
    let o1 = pulses.envelopes[0].value(t);
    let o2 = pulses.envelopes[1].value(t);
    lambda3_dressed(o1, o2, delta, (pulses.envelopes[0].phase, pulses.envelopes[1].phase))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::{build_hamiltonian, LevelScheme, PulseEnvelope, PulseSet};
    use approx::assert_relative_eq;

    fn lambda3_hamiltonian(o1: f64, o2: f64, delta: f64) -> HamiltonianSample {
        let scheme = LevelScheme::lambda3(delta);
        let e = |p: f64| PulseEnvelope::new(p, 0.0, 1.0, 0.0).unwrap();
        build_hamiltonian(&scheme, &PulseSet::lambda3(e(o1), e(o2)), 0.0).unwrap()
    }

    fn five_hamiltonian(o1: f64, o2: f64, o3: f64, delta: f64) -> HamiltonianSample {
        let scheme = LevelScheme::m5_resonant(delta);
        let e = |p: f64| PulseEnvelope::new(p, 0.0, 1.0, 0.0).unwrap();
        build_hamiltonian(&scheme, &PulseSet::five_tied(e(o1), e(o2), e(o3)), 0.0).unwrap()
    }

    #[test]
    fn stokes_only_dark_state_is_bare_one() {
        let d = lambda3_dressed(0.0, 5.0, 50.0, (0.0, 0.0)).unwrap();
        assert_eq!(d.theta, 0.0);
        assert_relative_eq!(d.dark[0].re, 1.0, max_relative = 1e-14);
        assert_eq!(d.dark[2], C64::new(0.0, 0.0));
    }

    #[test]
    fn equal_fields_give_pi_over_four() {
        let d = lambda3_dressed(10.0, 10.0, 50.0, (0.0, 0.0)).unwrap();
        assert_relative_eq!(d.theta, std::f64::consts::FRAC_PI_4, max_relative = 1e-14);
        assert_relative_eq!(d.dark[0].re, 1.0 / 2.0f64.sqrt(), max_relative = 1e-12);
        assert_relative_eq!(d.dark[2].re, -1.0 / 2.0f64.sqrt(), max_relative = 1e-12);
    }

    #[test]
    fn lambda3_vectors_are_eigenvectors() {
        let h = lambda3_hamiltonian(30.0, 40.0, 50.0);
        let d = lambda3_dressed(30.0, 40.0, 50.0, (0.0, 0.0)).unwrap();
        for (v, lam) in [(&d.dark, 0.0), (&d.bright1, d.eigenvalues[1]), (&d.bright2, d.eigenvalues[2])]
        {
            assert!(eigen_residual(&h.matrix, lam, v) < 1e-8, "residual too large");
        }
    }

    #[test]
    fn lambda3_vectors_orthonormal_with_phases() {
        let d = lambda3_dressed(30.0, 40.0, 50.0, (0.7, -1.2)).unwrap();
        let vs = [&d.dark, &d.bright1, &d.bright2];
        for (i, a) in vs.iter().enumerate() {
            for (j, b) in vs.iter().enumerate() {
                let dot = a.dotc(b).norm();
                let expect = if i == j { 1.0 } else { 0.0 };
                assert!((dot - expect).abs() < 1e-10, "({i},{j}) dot = {dot}");
            }
        }
        // With phases the vectors still diagonalize the phased Hamiltonian.
        let scheme = LevelScheme::lambda3(50.0);
        let e = |p: f64, ph: f64| PulseEnvelope::new(p, 0.0, 1.0, ph).unwrap();
        let h = build_hamiltonian(
            &scheme,
            &PulseSet::lambda3(e(30.0, 0.7), e(40.0, -1.2)),
            0.0,
        )
        .unwrap();
        assert!(eigen_residual(&h.matrix, 0.0, &d.dark) < 1e-8);
        assert!(eigen_residual(&h.matrix, d.eigenvalues[1], &d.bright1) < 1e-8);
        assert!(eigen_residual(&h.matrix, d.eigenvalues[2], &d.bright2) < 1e-8);
    }

    #[test]
    fn both_fields_zero_is_degenerate() {
        assert!(lambda3_dressed(0.0, 0.0, 50.0, (0.0, 0.0)).is_err());
    }

    #[test]
    fn tied_eigenvalues_with_fields_off() {
        let l = five_eigenvalues_tied(0.0, 0.0, 0.0, 50.0);
        assert_eq!(l, [0.0, 0.0, 0.0, 50.0, 50.0]);
    }

    #[test]
    fn tied_eigenvalues_collapse_pairwise_without_short_pulses() {
        let l = five_eigenvalues_tied(100.0, 0.0, 0.0, 50.0);
        let s = (2500.0f64 + 40000.0).sqrt();
        assert_relative_eq!(l[1], 0.5 * (50.0 - s), max_relative = 1e-14);
        assert_relative_eq!(l[1], l[2], max_relative = 1e-14);
        assert_relative_eq!(l[3], 0.5 * (50.0 + s), max_relative = 1e-14);
        assert_relative_eq!(l[3], l[4], max_relative = 1e-14);
    }

    #[test]
    fn tied_eigenvalues_match_numeric_oracle() {
        let h = five_hamiltonian(100.0, 60.0, 80.0, 50.0);
        let numeric = numeric_spectrum(&h).unwrap();
        let mut analytic = five_eigenvalues_tied(100.0, 60.0, 80.0, 50.0);
        analytic.sort_by(|a, b| a.partial_cmp(b).unwrap());
        for (a, n) in analytic.iter().zip(&numeric.values) {
            assert_relative_eq!(a, n, max_relative = 1e-10, epsilon = 1e-10);
        }
    }

    #[test]
    fn general_spectrum_symmetric_pair() {
        let s = five_eigenvalues_general([1.0, 0.0, 0.0, 1.0], 0.0);
        assert_relative_eq!(s.v4, 1.0);
        assert_relative_eq!(s.omega_s_sq, 2.0);
        assert_relative_eq!(s.x1, 1.0);
        assert_relative_eq!(s.x2, 1.0);
        let expect = [-1.0, -1.0, 0.0, 1.0, 1.0];
        for (a, b) in s.lambdas.iter().zip(&expect) {
            assert_relative_eq!(a, b, epsilon = 1e-12);
        }
    }

    #[test]
    fn general_spectrum_reduces_to_tied_form() {
        // With Omega_4 = Omega_1, x1 = Omega_1^2 and x2 = Omega_1^2 +
        // Omega_2^2 + Omega_3^2 (Vieta forces this; reproduces the tied
        // eigenvalue formula).
        let (o1, o2, o3, delta) = (100.0, 60.0, 80.0, 50.0);
        let s = five_eigenvalues_general([o1, o2, o3, o1], delta);
        assert_relative_eq!(s.x1, o1 * o1, max_relative = 1e-12);
        assert_relative_eq!(s.x2, o1 * o1 + o2 * o2 + o3 * o3, max_relative = 1e-12);
        let mut tied = five_eigenvalues_tied(o1, o2, o3, delta);
        tied.sort_by(|a, b| a.partial_cmp(b).unwrap());
        for (a, b) in s.lambdas.iter().zip(&tied) {
            assert_relative_eq!(a, b, max_relative = 1e-12, epsilon = 1e-12);
        }
    }

    #[test]
    fn general_spectrum_all_zero() {
        let s = five_eigenvalues_general([0.0; 4], 50.0);
        let expect = [0.0, 0.0, 0.0, 50.0, 50.0];
        for (a, b) in s.lambdas.iter().zip(&expect) {
            assert_relative_eq!(a, b, epsilon = 1e-12);
        }
    }

    #[test]
    fn vec_lambda1_limit_without_long_pulse() {
        let d = five_eigenvectors_tied(0.0, 3.0, 4.0, 50.0).unwrap();
        // Phi_1 -> 0, so |Lambda_1> -> cos(theta)|1> - sin(theta)|5>.
        assert_relative_eq!(d.vec_lambda1[0].re, 0.8, max_relative = 1e-12);
        assert_relative_eq!(d.vec_lambda1[4].re, -0.6, max_relative = 1e-12);
        assert!(d.vec_lambda1[1].norm() < 1e-12);
        assert!(d.vec_lambda1[3].norm() < 1e-12);
    }

    #[test]
    fn vec_lambda1_theta_zero_lives_on_first_pair() {
        let d = five_eigenvectors_tied(100.0, 1e-6, 80.0, 50.0).unwrap();
        assert!(d.vec_lambda1[3].norm() < 1e-6);
        assert!(d.vec_lambda1[4].norm() < 1e-6);
        assert!((d.vec_lambda1[0].norm_sqr() + d.vec_lambda1[1].norm_sqr() - 1.0).abs() < 1e-10);
    }

    #[test]
    fn five_vectors_are_eigenvectors() {
        let h = five_hamiltonian(100.0, 60.0, 80.0, 50.0);
        let d = five_eigenvectors_tied(100.0, 60.0, 80.0, 50.0).unwrap();
        assert!(eigen_residual(&h.matrix, d.lambdas[1], &d.vec_lambda1) < 1e-8);
        assert!(eigen_residual(&h.matrix, d.lambdas[2], &d.vec_lambda2) < 1e-8);
        assert!(d.vec_lambda1[2].norm() == 0.0, "|3> amplitude is structurally zero");
        assert_relative_eq!(d.vec_lambda1.norm(), 1.0, max_relative = 1e-12);
        assert_relative_eq!(d.vec_lambda2.norm(), 1.0, max_relative = 1e-12);
    }

    #[test]
    fn numeric_spectrum_diagonal_case() {
        let scheme = LevelScheme::lambda3(50.0);
        let p = PulseSet::lambda3(PulseEnvelope::off(), PulseEnvelope::off());
        let h = build_hamiltonian(&scheme, &p, 0.0).unwrap();
        let e = numeric_spectrum(&h).unwrap();
        assert_relative_eq!(e.values[0], 0.0, epsilon = 1e-12);
        assert_relative_eq!(e.values[1], 0.0, epsilon = 1e-12);
        assert_relative_eq!(e.values[2], 50.0, max_relative = 1e-12);
    }

    #[test]
    fn numeric_spectrum_shift_invariance() {
        let h = five_hamiltonian(100.0, 60.0, 80.0, 50.0);
        let e0 = numeric_spectrum(&h).unwrap();
        let c = 7.5;
        let mut shifted = h.clone();
        let n = shifted.matrix.nrows();
        for i in 0..n {
            shifted.matrix[(i, i)] += C64::new(c, 0.0);
        }
        let e1 = numeric_spectrum(&shifted).unwrap();
        for (a, b) in e0.values.iter().zip(&e1.values) {
            assert_relative_eq!(a + c, b, max_relative = 1e-10, epsilon = 1e-9);
        }
        for (va, vb) in e0.vectors.iter().zip(&e1.vectors) {
            assert!((va - vb).norm() < 1e-8);
        }
    }

    #[test]
    fn numeric_spectrum_rejects_non_hermitian() {
        let mut h = five_hamiltonian(100.0, 60.0, 80.0, 50.0);
        h.matrix[(0, 1)] += C64::new(1e-3, 0.0);
        assert!(matches!(numeric_spectrum(&h), Err(Error::NonHermitian(_))));
    }
}
