//! Norm-preserving integration of i d/dt psi = H(t) psi and extraction of
//! population trajectories.
//!
//! The integrator is classical fourth-order Runge-Kutta with step-doubling
//! error control. The norm is never renormalized: its drift is a diagnostic
//! for grid adequacy, not something to hide.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64 as C64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::model::{LevelScheme, PulseSet};

/// Integration window and accuracy settings.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TimeGrid {
    pub t_start: f64,
    pub t_end: f64,
    /// Step count for the non-adaptive mode; initial-step hint otherwise.
    #[serde(default = "default_steps")]
    pub steps: usize,
    #[serde(default = "default_true")]
    pub adaptive: bool,
    /// Local error tolerance per unit time (adaptive) or the allowed
    /// step-halving disagreement in final populations (fixed step).
    #[serde(default = "default_tol")]
    pub tol: f64,
}

fn default_steps() -> usize {
    1000
}
fn default_true() -> bool {
    true
}
fn default_tol() -> f64 {
    1e-10
}

impl TimeGrid {
    pub fn new(t_start: f64, t_end: f64, steps: usize, adaptive: bool, tol: f64) -> Result<Self> {
        if !(t_start.is_finite() && t_end.is_finite()) || t_end == t_start {
            return Err(Error::InvalidParameter("degenerate time grid".into()));
        }
        if !adaptive && steps < 100 {
            return Err(Error::InvalidParameter(format!(
                "non-adaptive grids need at least 100 steps, got {steps}"
            )));
        }
        if !(tol > 0.0) {
            return Err(Error::InvalidParameter("tolerance must be positive".into()));
        }
        Ok(Self { t_start, t_end, steps, adaptive, tol })
    }

    /// Adaptive grid over `[t_start, t_end]` at the default tolerance.
    pub fn adaptive(t_start: f64, t_end: f64) -> Self {
        Self { t_start, t_end, steps: default_steps(), adaptive: true, tol: default_tol() }
    }

    pub fn span(&self) -> f64 {
        self.t_end - self.t_start
    }
}

/// Initial condition: a bare-state index or an arbitrary amplitude vector.
#[derive(Debug, Clone)]
pub enum InitialState {
    Bare(usize),
    Vector(DVector<C64>),
}

impl InitialState {
    fn amplitudes(&self, dim: usize) -> Result<DVector<C64>> {
        match self {
            InitialState::Bare(k) => {
                if *k >= dim {
                    return Err(Error::IndexOutOfRange { index: *k, dim });
                }
                let mut v = DVector::<C64>::zeros(dim);
                v[*k] = C64::new(1.0, 0.0);
                Ok(v)
            }
            InitialState::Vector(v) => {
                if v.len() != dim {
                    return Err(Error::DimensionMismatch(format!(
                        "initial state has {} amplitudes, Hamiltonian dimension is {dim}",
                        v.len()
                    )));
                }
                if (v.norm() - 1.0).abs() > 1e-8 {
                    return Err(Error::InvalidParameter(format!(
                        "initial state not normalized: |psi| = {}",
                        v.norm()
                    )));
                }
                Ok(v.clone())
            }
        }
    }
}

/// Time grid samples plus complex amplitude vectors.
#[derive(Debug, Clone)]
pub struct Trajectory {
    pub times: Vec<f64>,
    pub states: Vec<DVector<C64>>,
}

impl Trajectory {
    pub fn dimension(&self) -> usize {
        self.states[0].len()
    }

    /// rho_jj(t_k) = |psi_j(t_k)|^2.
    pub fn population(&self, sample: usize, level: usize) -> f64 {
        self.states[sample][level].norm_sqr()
    }

    pub fn populations_at(&self, sample: usize) -> Vec<f64> {
        self.states[sample].iter().map(|a| a.norm_sqr()).collect()
    }

    pub fn final_state(&self) -> &DVector<C64> {
        self.states.last().expect("trajectory is never empty")
    }

    /// Largest deviation of the state norm from 1 over all stored samples.
    pub fn max_norm_drift(&self) -> f64 {
        self.states.iter().fold(0.0f64, |a, s| a.max((s.norm() - 1.0).abs()))
    }
}

/// Population of the target bare state at the final time.
pub fn final_fidelity(traj: &Trajectory, target: usize) -> Result<f64> {
    if target >= traj.dimension() {
        return Err(Error::IndexOutOfRange { index: target, dim: traj.dimension() });
    }
    Ok(traj.final_state()[target].norm_sqr())
}

/// Maximum population of one level over the whole trajectory.
pub fn transient_peak(traj: &Trajectory, level: usize) -> Result<f64> {
    if level >= traj.dimension() {
        return Err(Error::IndexOutOfRange { index: level, dim: traj.dimension() });
    }
    Ok((0..traj.times.len()).fold(0.0f64, |a, k| a.max(traj.population(k, level))))
}

/// Anything that can fill the Hamiltonian matrix at a given time.
pub trait HamiltonianFill {
    fn dim(&self) -> usize;
    fn fill(&self, t: f64, h: &mut DMatrix<C64>);
}

/// Chain Hamiltonian driven by analytic Gaussian envelopes.
pub struct ChainDrive {
    ladder: Vec<f64>,
    pulses: PulseSet,
}

impl ChainDrive {
    pub fn new(scheme: &LevelScheme, pulses: &PulseSet) -> Result<Self> {
        if pulses.transitions() != scheme.dimension() - 1 {
            return Err(Error::DimensionMismatch(format!(
                "{:?} needs {} envelopes, got {}",
                scheme.kind,
                scheme.dimension() - 1,
                pulses.transitions()
            )));
        }
        Ok(Self { ladder: scheme.detuning_ladder(), pulses: pulses.clone() })
    }
}

impl HamiltonianFill for ChainDrive {
    fn dim(&self) -> usize {
        self.ladder.len()
    }

    fn fill(&self, t: f64, h: &mut DMatrix<C64>) {
        for (i, d) in self.ladder.iter().enumerate() {
            h[(i, i)] = C64::new(*d, 0.0);
        }
        for (i, env) in self.pulses.envelopes.iter().enumerate() {
            let c = -env.value(t) * C64::from_polar(1.0, env.phase);
            h[(i, i + 1)] = c;
            h[(i + 1, i)] = c.conj();
        }
    }
}

struct Rk4Workspace {
    h: DMatrix<C64>,
    k1: DVector<C64>,
    k2: DVector<C64>,
    k3: DVector<C64>,
    k4: DVector<C64>,
    tmp: DVector<C64>,
}

/// k = -i H(t) y
fn derivative(
    drive: &impl HamiltonianFill,
    t: f64,
    y: &DVector<C64>,
    h: &mut DMatrix<C64>,
    k: &mut DVector<C64>,
) {
    drive.fill(t, h);
    k.gemv(C64::new(0.0, -1.0), h, y, C64::new(0.0, 0.0));
}

impl Rk4Workspace {
    fn new(dim: usize) -> Self {
        Self {
            h: DMatrix::zeros(dim, dim),
            k1: DVector::zeros(dim),
            k2: DVector::zeros(dim),
            k3: DVector::zeros(dim),
            k4: DVector::zeros(dim),
            tmp: DVector::zeros(dim),
        }
    }

    /// One classical RK4 step; `y` is advanced in place.
    fn step(&mut self, drive: &impl HamiltonianFill, t: f64, dt: f64, y: &mut DVector<C64>) {
        let half = 0.5 * dt;
        let one = C64::new(1.0, 0.0);
        derivative(drive, t, y, &mut self.h, &mut self.k1);
        self.tmp.copy_from(y);
        self.tmp.axpy(C64::new(half, 0.0), &self.k1, one);
        derivative(drive, t + half, &self.tmp, &mut self.h, &mut self.k2);
        self.tmp.copy_from(y);
        self.tmp.axpy(C64::new(half, 0.0), &self.k2, one);
        derivative(drive, t + half, &self.tmp, &mut self.h, &mut self.k3);
        self.tmp.copy_from(y);
        self.tmp.axpy(C64::new(dt, 0.0), &self.k3, one);
        derivative(drive, t + dt, &self.tmp, &mut self.h, &mut self.k4);
        let w = C64::new(dt / 6.0, 0.0);
        y.axpy(w, &self.k1, one);
        y.axpy(w * 2.0, &self.k2, one);
        y.axpy(w * 2.0, &self.k3, one);
        y.axpy(w, &self.k4, one);
    }
}

/// Integrate an arbitrary time-dependent Hamiltonian, recording `n_samples`
/// uniformly spaced states (endpoints included). The direction may be
/// reversed by passing `t_end < t_start`.
pub fn integrate_hamiltonian(
    drive: &impl HamiltonianFill,
    initial: &InitialState,
    grid: &TimeGrid,
    n_samples: usize,
) -> Result<Trajectory> {
    let dim = drive.dim();
    let y0 = initial.amplitudes(dim)?;
    if n_samples < 2 {
        return Err(Error::InvalidParameter("need at least 2 output samples".into()));
    }
    let span = grid.span();
    let dir = span.signum();
    let sample_times: Vec<f64> = (0..n_samples)
        .map(|k| grid.t_start + span * (k as f64) / ((n_samples - 1) as f64))
        .collect();

    let mut ws = Rk4Workspace::new(dim);
    let mut y = y0;
    let mut t = grid.t_start;
    let mut states = Vec::with_capacity(n_samples);
    states.push(y.clone());

    if grid.adaptive {
        let mut dt = span / (grid.steps.max(100) as f64);
        let mut y_big = DVector::<C64>::zeros(dim);
        let mut y_fine = DVector::<C64>::zeros(dim);
        for target in sample_times.iter().skip(1) {
            while (target - t) * dir > 1e-14 * span.abs() {
                let mut h_step = dt;
                if (t + h_step - target) * dir > 0.0 {
                    h_step = target - t;
                }
                loop {
                    y_big.copy_from(&y);
                    ws.step(drive, t, h_step, &mut y_big);
                    y_fine.copy_from(&y);
                    ws.step(drive, t, 0.5 * h_step, &mut y_fine);
                    ws.step(drive, t + 0.5 * h_step, 0.5 * h_step, &mut y_fine);
                    let err = (&y_fine - &y_big).norm();
                    // The error estimate bottoms out at accumulated rounding
                    // noise; below that floor, shrinking the step buys nothing
                    // and the controller must not keep rejecting.
                    let tol_local = (grid.tol * h_step.abs()).max(ERR_FLOOR);
                    if err <= tol_local || h_step.abs() < 1e-14 * span.abs() {
                        // Local extrapolation: fine solution plus the
                        // step-doubling error estimate.
                        y.copy_from(&y_fine);
                        y.axpy(C64::new(1.0 / 15.0, 0.0), &y_fine, C64::new(1.0, 0.0));
                        y.axpy(C64::new(-1.0 / 15.0, 0.0), &y_big, C64::new(1.0, 0.0));
                        t += h_step;
                        let grow =
                            0.9 * (tol_local / err.max(1e-300)).powf(0.2).clamp(0.2, 5.0);
                        dt = h_step * grow;
                        break;
                    }
                    h_step *= 0.9 * (tol_local / err).powf(0.2).clamp(0.1, 0.9);
                }
            }
            t = *target;
            states.push(y.clone());
        }
    } else {
        // Fixed-step mode, verified against a step-halved pass.
        let run = |steps: usize| -> DVector<C64> {
            let mut ws = Rk4Workspace::new(dim);
            let mut y = initial.amplitudes(dim).expect("validated above");
            let dt = span / steps as f64;
            for k in 0..steps {
                let t = grid.t_start + span * (k as f64) / (steps as f64);
                ws.step(drive, t, dt, &mut y);
            }
            y
        };
        let dt = span / grid.steps as f64;
        let mut next_sample = 1usize;
        for k in 0..grid.steps {
            ws.step(drive, t, dt, &mut y);
            t = grid.t_start + span * ((k + 1) as f64) / (grid.steps as f64);
            while next_sample < n_samples
                && (sample_times[next_sample] - t) * dir <= 1e-12 * span.abs()
            {
                states.push(y.clone());
                next_sample += 1;
            }
        }
        while states.len() < n_samples {
            states.push(y.clone());
        }
        let halved = run(grid.steps * 2);
        let disagreement = (0..dim)
            .map(|j| (halved[j].norm_sqr() - y[j].norm_sqr()).abs())
            .fold(0.0f64, f64::max);
        if disagreement > grid.tol {
            return Err(Error::Accuracy(format!(
                "step-halving changes final populations by {disagreement:.3e} (tol {:.3e}); \
                 the grid is too coarse",
                grid.tol
            )));
        }
    }

    Ok(Trajectory { times: sample_times, states })
}

/// Default number of stored output samples.
pub const DEFAULT_SAMPLES: usize = 1000;

/// Absolute floor on the local error target of the adaptive controller,
/// a few dozen ulps of a unit-norm state.
const ERR_FLOOR: f64 = 1e-14;

/// Integrate a scheme + pulse set from a given initial state.
///
/// The grid must cover the pulse support: every active envelope has to have
/// decayed below 1e-6 of its peak at both grid edges.
pub fn integrate(
    scheme: &LevelScheme,
    pulses: &PulseSet,
    initial: &InitialState,
    grid: &TimeGrid,
) -> Result<Trajectory> {
    for (i, env) in pulses.envelopes.iter().enumerate() {
        if env.peak == 0.0 {
            continue;
        }
        let edge = env.value(grid.t_start).max(env.value(grid.t_end));
        if edge > 1e-6 * env.peak {
            return Err(Error::GridCoverage(format!(
                "envelope {} still at {:.3e} of peak at a grid edge",
                i + 1,
                edge / env.peak
            )));
        }
    }
    let drive = ChainDrive::new(scheme, pulses)?;
    integrate_hamiltonian(&drive, initial, grid, DEFAULT_SAMPLES)
}
