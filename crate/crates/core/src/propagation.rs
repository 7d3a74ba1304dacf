//! First-order one-dimensional pulse propagation through a medium of
//! five-level atoms, exhibiting the optical-length restriction on adiabatic
//! gate operation.
//!
//! The reduced Maxwell-Schrodinger system marches the Rabi-frequency profiles
//! Omega_i(z, tau) and the single-photon detunings Delta_i(z, tau) along the
//! medium. The right-hand sides are tau-derivatives of bare-state amplitude
//! bilinears taken from a fresh single-atom integration at each z slice:
//!
//!   dOmega_1/dz = q_1 d/dtau |b_1|^2 + q_4 d/dtau |b_5|^2
//!   dOmega_2/dz = -q_2 d/dtau (|b_1|^2 + |b_2|^2)
//!   dOmega_3/dz = -q_3 d/dtau (|b_4|^2 + |b_5|^2)
//!   dDelta_1/dz = q_1 d/dtau Re(b_1* b_2)/Omega_1
//!              + q_4 d/dtau Re(b_4* b_5)/Omega_1
//!   dDelta_{2,3}/dz = -q_{2,3} d/dtau Re(b_{2,3}* b_{3,4})/Omega_div
//!
//! For the extended-Lambda topology the signs of the Omega_2 and Omega_3
//! equations (and their detuning-drift partners) are exchanged. The divisor
//! Omega_div is Omega_1 by default; a config switch selects the field driving
//! the transition itself instead. Divisions are regularized smoothly: the
//! ratio rolls off to zero where the divisor sits below `floor_omega`.
//!
//! The fourth field is the same physical field as the first, so Omega_4 and
//! Delta_4 track Omega_1 and Delta_1 identically; only tied pulse sets are
//! accepted. Detuning drifts feed back into the Hamiltonian at the next z
//! step; multi-photon resonance is not re-imposed, its violation is part of
//! the degradation physics.

use nalgebra::DMatrix;
use num_complex::Complex64 as C64;
use serde::{Deserialize, Serialize};

use crate::adiabaticity::{check_five_sequence, Thresholds};
use crate::dynamics::{integrate_hamiltonian, HamiltonianFill, InitialState, TimeGrid, Trajectory};
use crate::error::{Error, Result};
use crate::gates::{GateInput, GateKind, GateParams};
use crate::model::{LevelScheme, PulseSet, SchemeKind};

/// Which field divides the coherence terms in the Delta_2, Delta_3 drift
/// equations.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum DriftDivisor {
    /// The long Omega_1(=Omega_4) field.
    #[default]
    LongField,
    /// The field driving the transition itself (Omega_2 or Omega_3).
    OwnField,
}

/// Medium and grid description for a propagation run.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MediumConfig {
    pub scheme: LevelScheme,
    /// Entry-face pulses; must be a tied four-transition set.
    pub pulses: PulseSet,
    /// Propagation couplings q_1..q_4 [1/(T * length)].
    pub couplings: [f64; 4],
    /// Medium length [length units].
    pub length: f64,
    /// Number of z-march steps (>= 1).
    pub z_steps: usize,
    /// Retarded-time window and integrator tolerance shared by every z slice.
    pub grid: TimeGrid,
    /// Number of uniformly spaced tau samples carrying the field profiles.
    #[serde(default = "default_tau_samples")]
    pub tau_samples: usize,
    /// Rabi-frequency regularizer for the drift divisions.
    #[serde(default = "default_floor")]
    pub floor_omega: f64,
    /// Low-pass width [T] applied to the amplitude bilinears before their
    /// tau-derivatives are taken. The envelope equations assume structure
    /// slow compared to the detuning period; unfiltered grid-scale noise
    /// excites coherence oscillations at that frequency and grows with z.
    #[serde(default = "default_smoothing")]
    pub smoothing_tau: f64,
    #[serde(default)]
    pub drift_divisor: DriftDivisor,
    /// Bare state the atoms start in (0-based level index).
    #[serde(default)]
    pub entry_state: usize,
}

fn default_tau_samples() -> usize {
    12_001
}
fn default_floor() -> f64 {
    1e-4
}
fn default_smoothing() -> f64 {
    0.1
}

impl MediumConfig {
    /// Default gate-regime medium: the all-controls-on four-bit configuration
    /// with every coupling set so that q_1 L / Delta takes the given value.
    pub fn gate_default(q1_l_over_delta: f64) -> Result<Self> {
        let params = GateParams::default();
        let input = GateInput::parse(GateKind::Toffoli4, "1110")?;
        let scenario = crate::gates::encode(GateKind::Toffoli4, &input, &params)?;
        let length = 1.0;
        let q = q1_l_over_delta * params.delta / length;
        let mut grid = scenario.grid;
        grid.tol = 1e-7;
        Ok(Self {
            scheme: scenario.scheme,
            pulses: scenario.pulses,
            couplings: [q; 4],
            length,
            z_steps: 16,
            grid,
            tau_samples: default_tau_samples(),
            floor_omega: default_floor() * params.peak,
            smoothing_tau: default_smoothing(),
            drift_divisor: DriftDivisor::default(),
            entry_state: scenario.initial_index,
        })
    }

    fn validate(&self) -> Result<()> {
        if self.scheme.dimension() != 5 {
            return Err(Error::UnsupportedScheme(
                "propagation is defined for the five-level schemes".into(),
            ));
        }
        if self.pulses.transitions() != 4 || !self.pulses.tie_1_4 {
            return Err(Error::UnsupportedScheme(
                "propagation needs a tied four-transition pulse set".into(),
            ));
        }
        if self.couplings.iter().any(|q| !(*q >= 0.0)) {
            return Err(Error::InvalidParameter("couplings must be >= 0".into()));
        }
        if !(self.length >= 0.0) || !self.length.is_finite() {
            return Err(Error::InvalidParameter("medium length must be >= 0".into()));
        }
        if self.z_steps < 1 {
            return Err(Error::InvalidParameter("z_steps must be >= 1".into()));
        }
        if self.tau_samples < 101 {
            return Err(Error::InvalidParameter("need at least 101 tau samples".into()));
        }
        if !(self.floor_omega > 0.0) {
            return Err(Error::InvalidParameter("floor_omega must be positive".into()));
        }
        if !(self.smoothing_tau >= 0.0) || !self.smoothing_tau.is_finite() {
            return Err(Error::InvalidParameter("smoothing_tau must be finite and >= 0".into()));
        }
        if self.entry_state >= 5 {
            return Err(Error::IndexOutOfRange { index: self.entry_state, dim: 5 });
        }
        Ok(())
    }
}

/// Outcome of a propagation run; everything is indexed by the z samples,
/// which include both faces (z_steps + 1 entries).
#[derive(Debug, Clone)]
pub struct PropagationResult {
    pub z: Vec<f64>,
    /// Downsampled tau grid on which the field snapshots are stored.
    pub tau_coarse: Vec<f64>,
    /// Field snapshots: `fields[iz][ik]` holds (Omega_1..Omega_4) at
    /// `z[iz]`, `tau_coarse[ik]`.
    pub fields: Vec<Vec<[f64; 4]>>,
    /// Largest absolute detuning drift |Delta_i(z, tau) - Delta_i(0)| per z.
    pub max_detuning_drift: Vec<[f64; 4]>,
    /// Bare-state populations at the end of the tau window, per z.
    pub exit_populations: Vec<Vec<f64>>,
    /// Population of the transfer target state at the end of the tau window.
    pub exit_fidelity: Vec<f64>,
    /// Entry-face adiabaticity pre-check (a warning flag, not a failure).
    pub adiabaticity_ok: bool,
}

/// Eq.-14 optical-length indicator alpha_0 L Gamma / Delta; adiabatic gate
/// operation survives while this stays well below 1.
pub fn optical_length_indicator(alpha0: f64, length: f64, gamma: f64, delta: f64) -> Result<f64> {
    if !(delta > 0.0) {
        return Err(Error::InvalidParameter("indicator needs a positive detuning".into()));
    }
    for (name, v) in [("alpha0", alpha0), ("length", length), ("gamma", gamma)] {
        if !(v >= 0.0) || !v.is_finite() {
            return Err(Error::InvalidParameter(format!("{name} must be finite and >= 0")));
        }
    }
    Ok(alpha0 * length * gamma / delta)
}

/// Chain Hamiltonian whose couplings and detunings are sampled on a uniform
/// tau grid and linearly interpolated (constant beyond the edges).
pub struct SampledDrive {
    tau0: f64,
    dtau: f64,
    omegas: Vec<[f64; 4]>,
    ladders: Vec<[f64; 5]>,
    phases: [f64; 4],
}

impl SampledDrive {
    pub fn new(
        tau: &[f64],
        omegas: Vec<[f64; 4]>,
        ladders: Vec<[f64; 5]>,
        phases: [f64; 4],
    ) -> Self {
        assert!(tau.len() >= 2 && omegas.len() == tau.len() && ladders.len() == tau.len());
        Self { tau0: tau[0], dtau: tau[1] - tau[0], omegas, ladders, phases }
    }

    #[inline]
    fn locate(&self, t: f64) -> (usize, f64) {
        let n = self.omegas.len();
        let s = ((t - self.tau0) / self.dtau).clamp(0.0, (n - 1) as f64);
        let i = (s as usize).min(n - 2);
        (i, s - i as f64)
    }
}

impl HamiltonianFill for SampledDrive {
    fn dim(&self) -> usize {
        5
    }

    fn fill(&self, t: f64, h: &mut DMatrix<C64>) {
        let (i, w) = self.locate(t);
        let (la, lb) = (&self.ladders[i], &self.ladders[i + 1]);
        let (oa, ob) = (&self.omegas[i], &self.omegas[i + 1]);
        for j in 0..5 {
            h[(j, j)] = C64::new(la[j] + w * (lb[j] - la[j]), 0.0);
        }
        for k in 0..4 {
            let o = oa[k] + w * (ob[k] - oa[k]);
            let c = -o * C64::from_polar(1.0, self.phases[k]);
            h[(k, k + 1)] = c;
            h[(k + 1, k)] = c.conj();
        }
    }
}

/// Field and detuning profiles at one z slice.
#[derive(Debug, Clone)]
struct SliceState {
    /// `omegas[k][i]` = Omega_{i+1}(tau_k), with index 3 tied to index 0.
    omegas: Vec<[f64; 4]>,
    /// `deltas[k][i]` = Delta_{i+1}(tau_k), with index 3 tied to index 0.
    deltas: Vec<[f64; 4]>,
}

fn ladder_from(kind: SchemeKind, d: &[f64; 4]) -> [f64; 5] {
    match kind {
        SchemeKind::M5 => {
            [0.0, d[0], d[0] - d[1], d[2] + d[0] - d[1], d[3] - d[2] + d[1] - d[0]]
        }
        SchemeKind::ExtendedLambda5 => {
            [0.0, d[0], d[0] + d[1], -d[2] + d[0] + d[1], -d[3] - d[2] + d[1] + d[0]]
        }
        _ => unreachable!("validated as five-level"),
    }
}

/// One normalized boxcar pass with half-width `w`, window truncated at the
/// ends; applied twice this gives a triangular low-pass kernel.
fn boxcar(f: &mut [f64], w: usize, scratch: &mut Vec<f64>) {
    let n = f.len();
    scratch.clear();
    scratch.extend_from_slice(f);
    // Prefix sums for O(n) windowed means.
    let mut prefix = vec![0.0; n + 1];
    for k in 0..n {
        prefix[k + 1] = prefix[k] + scratch[k];
    }
    for k in 0..n {
        let lo = k.saturating_sub(w);
        let hi = (k + w).min(n - 1);
        f[k] = (prefix[hi + 1] - prefix[lo]) / (hi + 1 - lo) as f64;
    }
}

fn smooth(f: &mut [f64], dtau: f64, smoothing_tau: f64, scratch: &mut Vec<f64>) {
    let w = (smoothing_tau / dtau).round() as usize;
    if w >= 1 {
        boxcar(f, w, scratch);
        boxcar(f, w, scratch);
    }
}

/// Central differences on a uniform grid, one-sided at the ends.
fn d_dtau(f: &[f64], dtau: f64, out: &mut Vec<f64>) {
    let n = f.len();
    out.clear();
    out.resize(n, 0.0);
    out[0] = (f[1] - f[0]) / dtau;
    out[n - 1] = (f[n - 1] - f[n - 2]) / dtau;
    let inv2 = 0.5 / dtau;
    for k in 1..n - 1 {
        out[k] = (f[k + 1] - f[k - 1]) * inv2;
    }
}

struct SliceDerivative {
    d_omegas: Vec<[f64; 4]>,
    d_deltas: Vec<[f64; 4]>,
    exit_populations: Vec<f64>,
}

/// Single-atom trajectory driven by the given slice's sampled fields.
fn slice_trajectory(cfg: &MediumConfig, tau: &[f64], state: &SliceState) -> Result<Trajectory> {
    let ladders: Vec<[f64; 5]> =
        state.deltas.iter().map(|d| ladder_from(cfg.scheme.kind, d)).collect();
    let phases = [
        cfg.pulses.envelopes[0].phase,
        cfg.pulses.envelopes[1].phase,
        cfg.pulses.envelopes[2].phase,
        cfg.pulses.envelopes[3].phase,
    ];
    let drive = SampledDrive::new(tau, state.omegas.clone(), ladders, phases);
    integrate_hamiltonian(&drive, &InitialState::Bare(cfg.entry_state), &cfg.grid, tau.len())
}

/// Evaluate the z-derivatives of the fields and detunings at one slice.
fn slice_derivative(
    cfg: &MediumConfig,
    tau: &[f64],
    state: &SliceState,
) -> Result<SliceDerivative> {
    let traj = slice_trajectory(cfg, tau, state)?;
    let n = tau.len();
    let dtau = tau[1] - tau[0];
    let b = &traj.states;

    // Smooth Tikhonov-style division: num/div well above the floor, rolling
    // continuously to zero below it. A hard cutoff would put a step
    // discontinuity in the drift profile exactly at the floor crossing, and
    // its tau-derivative then injects a detuning spike that grows with z.
    let floor2 = cfg.floor_omega * cfg.floor_omega;
    let reg = |num: f64, div: f64| num * div / (div * div + floor2);
    let mut p1 = vec![0.0; n];
    let mut p12 = vec![0.0; n];
    let mut p45 = vec![0.0; n];
    let mut p5 = vec![0.0; n];
    let mut g1 = vec![0.0; n]; // Re(b1* b2)/O1 + tied Re(b4* b5)/O1 weighted later
    let mut g1b = vec![0.0; n];
    let mut g2 = vec![0.0; n];
    let mut g3 = vec![0.0; n];
    for k in 0..n {
        let s = &b[k];
        let o = &state.omegas[k];
        p1[k] = s[0].norm_sqr();
        p12[k] = s[0].norm_sqr() + s[1].norm_sqr();
        p45[k] = s[3].norm_sqr() + s[4].norm_sqr();
        p5[k] = s[4].norm_sqr();
        g1[k] = reg((s[0].conj() * s[1]).re, o[0]);
        g1b[k] = reg((s[3].conj() * s[4]).re, o[0]);
        let (div2, div3) = match cfg.drift_divisor {
            DriftDivisor::LongField => (o[0], o[0]),
            DriftDivisor::OwnField => (o[1], o[2]),
        };
        g2[k] = reg((s[1].conj() * s[2]).re, div2);
        g3[k] = reg((s[2].conj() * s[3]).re, div3);
    }

    let mut scratch = Vec::new();
    for profile in [&mut p1, &mut p12, &mut p45, &mut p5, &mut g1, &mut g1b, &mut g2, &mut g3] {
        smooth(profile, dtau, cfg.smoothing_tau, &mut scratch);
    }

    let mut buf = Vec::new();
    let mut d_omegas = vec![[0.0; 4]; n];
    let mut d_deltas = vec![[0.0; 4]; n];
    let [q1, q2, q3, q4] = cfg.couplings;
    // The extended-Lambda topology exchanges the signs of the short-field
    // equations relative to the M form.
    let short_sign = match cfg.scheme.kind {
        SchemeKind::ExtendedLambda5 => 1.0,
        _ => -1.0,
    };

    d_dtau(&p1, dtau, &mut buf);
    for k in 0..n {
        d_omegas[k][0] = q1 * buf[k];
    }
    d_dtau(&p5, dtau, &mut buf);
    for k in 0..n {
        d_omegas[k][0] += q4 * buf[k];
        d_omegas[k][3] = d_omegas[k][0];
    }
    d_dtau(&p12, dtau, &mut buf);
    for k in 0..n {
        d_omegas[k][1] = short_sign * q2 * buf[k];
    }
    d_dtau(&p45, dtau, &mut buf);
    for k in 0..n {
        d_omegas[k][2] = short_sign * q3 * buf[k];
    }
    d_dtau(&g1, dtau, &mut buf);
    for k in 0..n {
        d_deltas[k][0] = q1 * buf[k];
    }
    d_dtau(&g1b, dtau, &mut buf);
    for k in 0..n {
        d_deltas[k][0] += q4 * buf[k];
        d_deltas[k][3] = d_deltas[k][0];
    }
    d_dtau(&g2, dtau, &mut buf);
    for k in 0..n {
        d_deltas[k][1] = short_sign * q2 * buf[k];
    }
    d_dtau(&g3, dtau, &mut buf);
    for k in 0..n {
        d_deltas[k][2] = short_sign * q3 * buf[k];
    }

    Ok(SliceDerivative {
        d_omegas,
        d_deltas,
        exit_populations: traj.final_state().iter().map(|a| a.norm_sqr()).collect(),
    })
}

/// Apply `state + h * deriv`, clamping tiny negative field excursions to zero
/// and rejecting ones beyond the regularizer.
fn advance(
    state: &SliceState,
    d: &SliceDerivative,
    h: f64,
    floor: f64,
    z: f64,
) -> Result<SliceState> {
    let n = state.omegas.len();
    let mut out = SliceState { omegas: vec![[0.0; 4]; n], deltas: vec![[0.0; 4]; n] };
    for k in 0..n {
        for i in 0..4 {
            let o = state.omegas[k][i] + h * d.d_omegas[k][i];
            if !o.is_finite() {
                return Err(Error::ZStepInstability { z, reason: "non-finite field".into() });
            }
            if o < -floor {
                return Err(Error::ZStepInstability {
                    z,
                    reason: format!("field {} fell to {o:.3e}", i + 1),
                });
            }
            out.omegas[k][i] = o.max(0.0);
            let del = state.deltas[k][i] + h * d.d_deltas[k][i];
            if !del.is_finite() {
                return Err(Error::ZStepInstability { z, reason: "non-finite detuning".into() });
            }
            out.deltas[k][i] = del;
        }
    }
    Ok(out)
}

/// Reference single-atom trajectory on the shared tau grid at the entry face
/// (identical numerics to the z = 0 slice of a propagation run).
pub fn single_atom_reference(cfg: &MediumConfig) -> Result<Trajectory> {
    cfg.validate()?;
    let (tau, state) = entry_slice(cfg);
    slice_trajectory(cfg, &tau, &state)
}

fn entry_slice(cfg: &MediumConfig) -> (Vec<f64>, SliceState) {
    let n = cfg.tau_samples;
    let tau: Vec<f64> = (0..n)
        .map(|k| cfg.grid.t_start + cfg.grid.span() * (k as f64) / ((n - 1) as f64))
        .collect();
    let d0 = &cfg.scheme.single_photon_detunings;
    let deltas = vec![[d0[0], d0[1], d0[2], d0[3]]; n];
    let omegas: Vec<[f64; 4]> = tau
        .iter()
        .map(|t| {
            let v = cfg.pulses.values(*t);
            [v[0], v[1], v[2], v[3]]
        })
        .collect();
    (tau, SliceState { omegas, deltas })
}

/// March the medium from the entry face to z = length with an explicit
/// midpoint (second-order) z-stepper, re-solving the single-atom dynamics at
/// every stage.
pub fn propagate_medium(cfg: &MediumConfig) -> Result<PropagationResult> {
    cfg.validate()?;
    let adiabaticity_ok = match check_five_sequence(
        &cfg.pulses,
        cfg.scheme.single_photon_detunings[0].abs().max(f64::MIN_POSITIVE),
        shortest_active_width(&cfg.pulses),
        &Thresholds::default(),
    ) {
        Ok(report) => report.overall,
        Err(_) => false,
    };

    let (tau, mut state) = entry_slice(cfg);
    let n = tau.len();
    let target = if cfg.entry_state == 0 { 4 } else { 0 };

    // Downsampled tau grid for the stored snapshots.
    let stride = ((n - 1) / 200).max(1);
    let coarse_idx: Vec<usize> = (0..n).step_by(stride).chain(std::iter::once(n - 1)).collect();
    let coarse_idx: Vec<usize> = {
        let mut v = coarse_idx;
        v.dedup();
        v
    };
    let tau_coarse: Vec<f64> = coarse_idx.iter().map(|&k| tau[k]).collect();

    let dz = cfg.length / cfg.z_steps as f64;
    let mut result = PropagationResult {
        z: Vec::with_capacity(cfg.z_steps + 1),
        tau_coarse,
        fields: Vec::with_capacity(cfg.z_steps + 1),
        max_detuning_drift: Vec::with_capacity(cfg.z_steps + 1),
        exit_populations: Vec::with_capacity(cfg.z_steps + 1),
        exit_fidelity: Vec::with_capacity(cfg.z_steps + 1),
        adiabaticity_ok,
    };
    let d_entry = cfg.scheme.single_photon_detunings.clone();

    for iz in 0..=cfg.z_steps {
        let z = dz * iz as f64;
        let k1 = slice_derivative(cfg, &tau, &state)?;

        result.z.push(z);
        result.fields.push(coarse_idx.iter().map(|&k| state.omegas[k]).collect());
        let mut drift = [0.0f64; 4];
        for row in &state.deltas {
            for i in 0..4 {
                drift[i] = drift[i].max((row[i] - d_entry[i]).abs());
            }
        }
        result.max_detuning_drift.push(drift);
        result.exit_fidelity.push(k1.exit_populations[target]);
        result.exit_populations.push(k1.exit_populations.clone());

        if iz < cfg.z_steps {
            let mid = advance(&state, &k1, 0.5 * dz, cfg.floor_omega, z + 0.5 * dz)?;
            let k2 = slice_derivative(cfg, &tau, &mid)?;
            state = advance(&state, &k2, dz, cfg.floor_omega, z + dz)?;
        }
    }
    Ok(result)
}

fn shortest_active_width(pulses: &PulseSet) -> f64 {
    pulses
        .envelopes
        .iter()
        .filter(|e| e.peak > 0.0)
        .map(|e| e.width)
        .fold(f64::INFINITY, f64::min)
        .min(1.0e6)
        .max(f64::MIN_POSITIVE)
}
