//! Pulses, level schemes, detuning conventions, and assembly of the
//! time-dependent Hamiltonian.
//!
//! Units: hbar = 1, time in units of the short-pulse width T, frequencies in
//! 1/T. The coupling matrix element is -Omega_i exactly (no factor 1/2), so
//! the analytic dressed-state formulas hold verbatim. Constant pulse phases
//! are folded into the off-diagonal elements as -Omega_i e^{i phi_i}.

use nalgebra::DMatrix;
use num_complex::Complex64 as C64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A single Gaussian Rabi-frequency profile.
///
/// `value(t) = peak * exp(-((t - center) / width)^2)`; the width is the 1/e
/// half-width of the Rabi frequency, not a FWHM.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PulseEnvelope {
    /// Peak Rabi frequency [1/T].
    pub peak: f64,
    /// Pulse center [T].
    pub center: f64,
    /// 1/e half-width [T].
    pub width: f64,
    /// Constant phase [rad].
    #[serde(default)]
    pub phase: f64,
}

impl PulseEnvelope {
    pub fn new(peak: f64, center: f64, width: f64, phase: f64) -> Result<Self> {
        if !(peak.is_finite() && center.is_finite() && width.is_finite() && phase.is_finite()) {
            return Err(Error::InvalidParameter("non-finite pulse parameter".into()));
        }
        if peak < 0.0 {
            return Err(Error::InvalidParameter(format!("pulse peak {peak} < 0")));
        }
        if width <= 0.0 {
            return Err(Error::InvalidParameter(format!("pulse width {width} <= 0")));
        }
        Ok(Self { peak, center, width, phase })
    }

    /// A pulse that is identically zero (a switched-off control field).
    pub fn off() -> Self {
        Self { peak: 0.0, center: 0.0, width: 1.0, phase: 0.0 }
    }

    /// Rabi frequency at time `t`.
    pub fn value(&self, t: f64) -> f64 {
        let u = (t - self.center) / self.width;
        self.peak * (-u * u).exp()
    }

    /// Same envelope with the peak set to zero.
    pub fn switched_off(&self) -> Self {
        Self { peak: 0.0, ..*self }
    }
}

/// Coupling topology and detuning convention.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SchemeKind {
    TwoLevel,
    Lambda3,
    M5,
    ExtendedLambda5,
}

impl SchemeKind {
    pub fn dimension(self) -> usize {
        match self {
            SchemeKind::TwoLevel => 2,
            SchemeKind::Lambda3 => 3,
            SchemeKind::M5 | SchemeKind::ExtendedLambda5 => 5,
        }
    }
}

/// A level scheme: chain topology plus single-photon detunings Delta_i.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LevelScheme {
    pub kind: SchemeKind,
    /// Single-photon detunings [1/T]: one shared Delta for TwoLevel/Lambda3,
    /// exactly four (Delta_1..Delta_4) for the five-level schemes.
    pub single_photon_detunings: Vec<f64>,
}

impl LevelScheme {
    pub fn new(kind: SchemeKind, single_photon_detunings: Vec<f64>) -> Result<Self> {
        let expected = match kind {
            SchemeKind::TwoLevel | SchemeKind::Lambda3 => 1,
            SchemeKind::M5 | SchemeKind::ExtendedLambda5 => 4,
        };
        if single_photon_detunings.len() != expected {
            return Err(Error::DimensionMismatch(format!(
                "{kind:?} takes {expected} single-photon detunings, got {}",
                single_photon_detunings.len()
            )));
        }
        if single_photon_detunings.iter().any(|d| !d.is_finite()) {
            return Err(Error::InvalidParameter("non-finite detuning".into()));
        }
        Ok(Self { kind, single_photon_detunings })
    }

    pub fn two_level(delta: f64) -> Self {
        Self::new(SchemeKind::TwoLevel, vec![delta]).expect("valid by construction")
    }

    /// Lambda scheme with a shared one-photon detuning and exact two-photon
    /// resonance between |1> and |3>.
    pub fn lambda3(delta: f64) -> Self {
        Self::new(SchemeKind::Lambda3, vec![delta]).expect("valid by construction")
    }

    /// M-type five-level scheme in the gate regime: all single-photon
    /// detunings equal, so delta_2 = delta_4 = 0 and delta_1 = delta_3 = Delta.
    pub fn m5_resonant(delta: f64) -> Self {
        Self::new(SchemeKind::M5, vec![delta; 4]).expect("valid by construction")
    }

    /// Extended-Lambda five-level scheme in the gate regime: equal absolute
    /// detunings with alternating signs.
    pub fn extended_lambda5_resonant(delta: f64) -> Self {
        Self::new(SchemeKind::ExtendedLambda5, vec![delta, -delta, -delta, delta])
            .expect("valid by construction")
    }

    pub fn dimension(&self) -> usize {
        self.kind.dimension()
    }

    /// Multi-photon detuning ladder (delta_0 .. delta_{dim-1}) occupying the
    /// Hamiltonian diagonal, for any scheme kind.
    pub fn detuning_ladder(&self) -> Vec<f64> {
        let d = &self.single_photon_detunings;
        match self.kind {
            SchemeKind::TwoLevel => vec![0.0, d[0]],
            // Two-photon resonance between |1> and |3> is assumed.
            SchemeKind::Lambda3 => vec![0.0, d[0], 0.0],
            SchemeKind::M5 => vec![
                0.0,
                d[0],
                d[0] - d[1],
                d[2] + d[0] - d[1],
                d[3] - d[2] + d[1] - d[0],
            ],
            SchemeKind::ExtendedLambda5 => vec![
                0.0,
                d[0],
                d[0] + d[1],
                -d[2] + d[0] + d[1],
                -d[3] - d[2] + d[1] + d[0],
            ],
        }
    }
}

/// Multi-photon detunings (delta_0 .. delta_4) for the five-level schemes.
pub fn multiphoton_detunings(scheme: &LevelScheme) -> Result<Vec<f64>> {
    match scheme.kind {
        SchemeKind::M5 | SchemeKind::ExtendedLambda5 => Ok(scheme.detuning_ladder()),
        other => Err(Error::UnsupportedScheme(format!(
            "multi-photon detunings are defined for the five-level schemes, not {other:?}"
        ))),
    }
}

/// Check the Eq.-6 gate regime (delta_2 = delta_4 = 0, delta_1 = delta_3 =
/// Delta) and return Delta.
pub fn require_gate_resonance(scheme: &LevelScheme) -> Result<f64> {
    let ladder = multiphoton_detunings(scheme)?;
    let tol = 1e-9 * (1.0 + ladder.iter().fold(0.0f64, |a, d| a.max(d.abs())));
    if ladder[2].abs() > tol || ladder[4].abs() > tol {
        return Err(Error::ResonanceViolation(format!(
            "two-photon resonance requires delta_2 = delta_4 = 0, got {:.3e}, {:.3e}",
            ladder[2], ladder[4]
        )));
    }
    if (ladder[1] - ladder[3]).abs() > tol {
        return Err(Error::ResonanceViolation(format!(
            "gate regime requires delta_1 = delta_3, got {} and {}",
            ladder[1], ladder[3]
        )));
    }
    Ok(ladder[1])
}

/// Envelopes for the coupling chain, indexed by transition (Omega_1..Omega_4
/// for the five-level schemes, Omega_1/Omega_2 for Lambda3).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PulseSet {
    pub envelopes: Vec<PulseEnvelope>,
    /// Force Omega_4 to be the same field as Omega_1.
    #[serde(default)]
    pub tie_1_4: bool,
}

impl PulseSet {
    pub fn new(mut envelopes: Vec<PulseEnvelope>, tie_1_4: bool) -> Result<Self> {
        if tie_1_4 {
            if envelopes.len() != 4 {
                return Err(Error::DimensionMismatch(
                    "tie_1_4 applies to four-transition pulse sets only".into(),
                ));
            }
            envelopes[3] = envelopes[0];
        }
        Ok(Self { envelopes, tie_1_4 })
    }

    pub fn two_level(omega1: PulseEnvelope) -> Self {
        Self { envelopes: vec![omega1], tie_1_4: false }
    }

    pub fn lambda3(omega1: PulseEnvelope, omega2: PulseEnvelope) -> Self {
        Self { envelopes: vec![omega1, omega2], tie_1_4: false }
    }

    /// Five-level set with Omega_4 tied to Omega_1.
    pub fn five_tied(
        omega1: PulseEnvelope,
        omega2: PulseEnvelope,
        omega3: PulseEnvelope,
    ) -> Self {
        Self { envelopes: vec![omega1, omega2, omega3, omega1], tie_1_4: true }
    }

    pub fn transitions(&self) -> usize {
        self.envelopes.len()
    }

    /// Rabi frequencies of every transition at time `t`.
    pub fn values(&self, t: f64) -> Vec<f64> {
        self.envelopes.iter().map(|e| e.value(t)).collect()
    }

    /// Smallest interval outside of which every active envelope has dropped
    /// below `frac * peak`.
    pub fn support(&self, frac: f64) -> Option<(f64, f64)> {
        let half = (-frac.ln()).sqrt();
        self.envelopes
            .iter()
            .filter(|e| e.peak > 0.0)
            .map(|e| (e.center - half * e.width, e.center + half * e.width))
            .reduce(|(a0, b0), (a1, b1)| (a0.min(a1), b0.max(b1)))
    }
}

/// "Stokes preceding pump": a Lambda3 pulse set with Omega_2 = Stokes and
/// Omega_1 = pump, the Stokes pulse strictly first.
pub fn sp_pair(stokes: PulseEnvelope, pump: PulseEnvelope) -> Result<PulseSet> {
    if stokes.center >= pump.center {
        return Err(Error::SequenceOrder { stokes: stokes.center, pump: pump.center });
    }
    Ok(PulseSet::lambda3(pump, stokes))
}

/// The Hamiltonian matrix at one instant.
#[derive(Debug, Clone, PartialEq)]
pub struct HamiltonianSample {
    pub matrix: DMatrix<C64>,
    pub time: f64,
}

impl HamiltonianSample {
    /// Largest elementwise deviation from Hermiticity.
    pub fn hermiticity_defect(&self) -> f64 {
        let n = self.matrix.nrows();
        let mut worst = 0.0f64;
        for i in 0..n {
            for j in 0..n {
                worst = worst.max((self.matrix[(i, j)] - self.matrix[(j, i)].conj()).norm());
            }
        }
        worst
    }
}

/// Assemble the chain Hamiltonian at time `t`: diagonal is the multi-photon
/// detuning ladder, chain couplings are -Omega_i(t) e^{i phi_i}.
pub fn build_hamiltonian(
    scheme: &LevelScheme,
    pulses: &PulseSet,
    t: f64,
) -> Result<HamiltonianSample> {
    let dim = scheme.dimension();
    if pulses.transitions() != dim - 1 {
        return Err(Error::DimensionMismatch(format!(
            "{:?} needs {} envelopes, got {}",
            scheme.kind,
            dim - 1,
            pulses.transitions()
        )));
    }
    let ladder = scheme.detuning_ladder();
    let mut h = DMatrix::<C64>::zeros(dim, dim);
    for (i, delta) in ladder.iter().enumerate() {
        h[(i, i)] = C64::new(*delta, 0.0);
    }
    for (i, env) in pulses.envelopes.iter().enumerate() {
        let coupling = -env.value(t) * C64::from_polar(1.0, env.phase);
        h[(i, i + 1)] = coupling;
        h[(i + 1, i)] = coupling.conj();
    }
    Ok(HamiltonianSample { matrix: h, time: t })
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn envelope_value_at_center_is_peak() {
        let p = PulseEnvelope::new(100.0, 0.0, 1.0, 0.0).unwrap();
        assert_eq!(p.value(0.0), 100.0);
    }

    #[test]
    fn envelope_value_one_width_out() {
        let p = PulseEnvelope::new(100.0, 0.0, 1.0, 0.0).unwrap();
        assert_relative_eq!(p.value(1.0), 100.0 * (-1.0f64).exp(), max_relative = 1e-12);
    }

    #[test]
    fn zero_pulse_is_zero_everywhere() {
        let p = PulseEnvelope::new(0.0, 0.0, 1.0, 0.0).unwrap();
        for t in [-3.0, 0.0, 0.5, 10.0] {
            assert_eq!(p.value(t), 0.0);
        }
    }

    #[test]
    fn envelope_rejects_bad_parameters() {
        assert!(PulseEnvelope::new(-1.0, 0.0, 1.0, 0.0).is_err());
        assert!(PulseEnvelope::new(1.0, 0.0, 0.0, 0.0).is_err());
        assert!(PulseEnvelope::new(1.0, f64::NAN, 1.0, 0.0).is_err());
    }

    #[test]
    fn m5_equal_detunings_give_gate_ladder() {
        let s = LevelScheme::m5_resonant(50.0);
        assert_eq!(multiphoton_detunings(&s).unwrap(), vec![0.0, 50.0, 0.0, 50.0, 0.0]);
    }

    #[test]
    fn extended_lambda5_alternating_signs_give_gate_ladder() {
        let s = LevelScheme::extended_lambda5_resonant(50.0);
        assert_eq!(multiphoton_detunings(&s).unwrap(), vec![0.0, 50.0, 0.0, 50.0, 0.0]);
    }

    #[test]
    fn m5_zero_detunings_give_zero_ladder() {
        let s = LevelScheme::new(SchemeKind::M5, vec![0.0; 4]).unwrap();
        assert_eq!(multiphoton_detunings(&s).unwrap(), vec![0.0; 5]);
    }

    #[test]
    fn multiphoton_detunings_reject_lambda3() {
        let s = LevelScheme::lambda3(50.0);
        assert!(matches!(multiphoton_detunings(&s), Err(Error::UnsupportedScheme(_))));
    }

    #[test]
    fn lambda3_hamiltonian_with_zero_fields_is_diagonal() {
        let s = LevelScheme::lambda3(50.0);
        let p = PulseSet::lambda3(PulseEnvelope::off(), PulseEnvelope::off());
        let h = build_hamiltonian(&s, &p, 0.0).unwrap();
        for i in 0..3 {
            for j in 0..3 {
                let expect = if i == j && i == 1 { 50.0 } else { 0.0 };
                assert_eq!(h.matrix[(i, j)], C64::new(expect, 0.0));
            }
        }
    }

    #[test]
    fn m5_hamiltonian_structure_at_peaks() {
        let s = LevelScheme::m5_resonant(50.0);
        let e = |peak: f64, c: f64| PulseEnvelope::new(peak, c, 1.0, 0.0).unwrap();
        let p = PulseSet::five_tied(e(100.0, 0.0), e(60.0, 0.0), e(80.0, 0.0));
        let h = build_hamiltonian(&s, &p, 0.0).unwrap().matrix;
        let diag: Vec<f64> = (0..5).map(|i| h[(i, i)].re).collect();
        assert_eq!(diag, vec![0.0, 50.0, 0.0, 50.0, 0.0]);
        assert_eq!(h[(0, 1)].re, -100.0);
        assert_eq!(h[(1, 2)].re, -60.0);
        assert_eq!(h[(2, 3)].re, -80.0);
        assert_eq!(h[(3, 4)].re, -100.0);
        assert_eq!(h[(0, 2)], C64::new(0.0, 0.0));
    }

    #[test]
    fn tie_1_4_makes_edge_couplings_equal() {
        let s = LevelScheme::m5_resonant(50.0);
        let e = |peak: f64, c: f64| PulseEnvelope::new(peak, c, 1.0, 0.3).unwrap();
        let p = PulseSet::five_tied(e(100.0, 0.2), e(60.0, -0.75), e(80.0, 0.75));
        for t in [-2.0, -0.3, 0.0, 1.1] {
            let h = build_hamiltonian(&s, &p, t).unwrap().matrix;
            assert_eq!(h[(0, 1)], h[(3, 4)]);
        }
    }

    #[test]
    fn hamiltonian_dimension_mismatch_rejected() {
        let s = LevelScheme::m5_resonant(50.0);
        let p = PulseSet::lambda3(PulseEnvelope::off(), PulseEnvelope::off());
        assert!(matches!(build_hamiltonian(&s, &p, 0.0), Err(Error::DimensionMismatch(_))));
    }

    #[test]
    fn gate_resonance_checked_not_assumed() {
        assert_relative_eq!(
            require_gate_resonance(&LevelScheme::m5_resonant(50.0)).unwrap(),
            50.0
        );
        let bad = LevelScheme::new(SchemeKind::M5, vec![50.0, 40.0, 50.0, 50.0]).unwrap();
        assert!(matches!(require_gate_resonance(&bad), Err(Error::ResonanceViolation(_))));
    }

    #[test]
    fn sp_pair_requires_strict_ordering() {
        let e = |c: f64| PulseEnvelope::new(100.0, c, 1.0, 0.0).unwrap();
        let pair = sp_pair(e(-0.75), e(0.75)).unwrap();
        assert_eq!(pair.envelopes[0].center, 0.75); // pump is Omega_1
        assert_eq!(pair.envelopes[1].center, -0.75); // Stokes is Omega_2
        assert!(sp_pair(e(1.0), e(0.0)).is_err());
        assert!(sp_pair(e(0.5), e(0.5)).is_err());
    }

    #[test]
    fn detuning_ladder_is_linear_in_detunings() {
        let d = vec![12.0, -3.5, 7.25, 1.0];
        let doubled: Vec<f64> = d.iter().map(|x| 2.0 * x).collect();
        for kind in [SchemeKind::M5, SchemeKind::ExtendedLambda5] {
            let a = LevelScheme::new(kind, d.clone()).unwrap().detuning_ladder();
            let b = LevelScheme::new(kind, doubled.clone()).unwrap().detuning_ladder();
            for (x, y) in a.iter().zip(&b) {
                assert_relative_eq!(2.0 * x, *y, max_relative = 1e-14);
            }
        }
    }
}
