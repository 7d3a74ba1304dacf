//! JSON scenario files: a complete, schema-checked description of one run
//! (scheme, pulses, grid, optional gate and medium sections, output paths).
//!
//! Unknown keys are rejected and all physical values must be finite, so a
//! scenario that loads is a scenario that can run.

use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::dynamics::TimeGrid;
use crate::error::{Error, Result};
use crate::gates::{GateKind, GateParams};
use crate::model::{LevelScheme, PulseSet};
use crate::propagation::{DriftDivisor, MediumConfig};

/// Gate run description inside a scenario file.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GateSection {
    pub kind: GateKind,
    /// Bit string, controls first, target last (e.g. "1110"); empty means
    /// the whole truth table.
    #[serde(default)]
    pub input: Option<String>,
    #[serde(default)]
    pub params: Option<GateParams>,
}

/// Medium description inside a scenario file; combined with the scenario's
/// scheme, pulses, and grid to build a [`MediumConfig`].
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MediumSection {
    pub couplings: [f64; 4],
    pub length: f64,
    pub z_steps: usize,
    #[serde(default = "default_tau_samples")]
    pub tau_samples: usize,
    #[serde(default = "default_floor")]
    pub floor_omega: f64,
    #[serde(default = "default_smoothing")]
    pub smoothing_tau: f64,
    #[serde(default)]
    pub drift_divisor: DriftDivisor,
    #[serde(default)]
    pub entry_state: usize,
}

fn default_tau_samples() -> usize {
    12_001
}
fn default_floor() -> f64 {
    1e-2
}
fn default_smoothing() -> f64 {
    0.1
}

/// Output destinations; relative paths resolve against the CLI's --out dir.
#[derive(Debug, Clone, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OutputSection {
    #[serde(default)]
    pub trajectory_csv: Option<PathBuf>,
    #[serde(default)]
    pub pulses_csv: Option<PathBuf>,
    #[serde(default)]
    pub summary_json: Option<PathBuf>,
}

/// One fully specified run.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ScenarioFile {
    pub scheme: LevelScheme,
    pub pulses: PulseSet,
    pub grid: TimeGrid,
    /// Bare state the system starts in (0-based level index).
    #[serde(default)]
    pub initial_state: usize,
    #[serde(default)]
    pub gate: Option<GateSection>,
    #[serde(default)]
    pub medium: Option<MediumSection>,
    #[serde(default)]
    pub output: Option<OutputSection>,
}

impl ScenarioFile {
    pub fn from_str(text: &str) -> Result<Self> {
        let file: ScenarioFile = serde_json::from_str(text)
            .map_err(|e| Error::Config(format!("scenario parse error: {e}")))?;
        file.validate()?;
        Ok(file)
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)?;
        Self::from_str(&text)
    }

    pub fn validate(&self) -> Result<()> {
        // Reconstruct through the checked constructors so every structural
        // invariant (detuning count, tie rules, finite values) is enforced
        // even on hand-written files.
        LevelScheme::new(self.scheme.kind, self.scheme.single_photon_detunings.clone())?;
        PulseSet::new(self.pulses.envelopes.clone(), self.pulses.tie_1_4)?;
        for (i, e) in self.pulses.envelopes.iter().enumerate() {
            if !(e.peak.is_finite()
                && e.center.is_finite()
                && e.width.is_finite()
                && e.phase.is_finite())
            {
                return Err(Error::Config(format!("envelope {} has non-finite values", i + 1)));
            }
            if e.peak < 0.0 || e.width <= 0.0 {
                return Err(Error::Config(format!(
                    "envelope {} needs peak >= 0 and width > 0",
                    i + 1
                )));
            }
        }
        if self.pulses.transitions() != self.scheme.dimension() - 1 {
            return Err(Error::Config(format!(
                "{:?} needs {} envelopes, scenario provides {}",
                self.scheme.kind,
                self.scheme.dimension() - 1,
                self.pulses.transitions()
            )));
        }
        TimeGrid::new(
            self.grid.t_start,
            self.grid.t_end,
            self.grid.steps,
            self.grid.adaptive,
            self.grid.tol,
        )?;
        if self.initial_state >= self.scheme.dimension() {
            return Err(Error::Config(format!(
                "initial state {} outside a {}-level scheme",
                self.initial_state,
                self.scheme.dimension()
            )));
        }
        if let Some(gate) = &self.gate {
            if let Some(bits) = &gate.input {
                crate::gates::GateInput::parse(gate.kind, bits)
                    .map_err(|e| Error::Config(format!("gate input: {e}")))?;
            }
            if matches!(gate.kind, GateKind::Toffoli3) && self.scheme.dimension() != 3 {
                return Err(Error::Config(
                    "a three-bit gate section needs a three-level scheme".into(),
                ));
            }
            if matches!(gate.kind, GateKind::Toffoli4) && self.scheme.dimension() != 5 {
                return Err(Error::Config(
                    "a four-bit gate section needs a five-level scheme".into(),
                ));
            }
        }
        if let Some(m) = &self.medium {
            self.medium_config(m).map_err(|e| Error::Config(format!("medium: {e}")))?;
        }
        Ok(())
    }

    fn medium_config(&self, m: &MediumSection) -> Result<MediumConfig> {
        Ok(MediumConfig {
            scheme: self.scheme.clone(),
            pulses: self.pulses.clone(),
            couplings: m.couplings,
            length: m.length,
            z_steps: m.z_steps,
            grid: self.grid,
            tau_samples: m.tau_samples,
            floor_omega: m.floor_omega,
            smoothing_tau: m.smoothing_tau,
            drift_divisor: m.drift_divisor,
            entry_state: m.entry_state,
        })
    }

    /// Build the medium configuration, if the scenario has a medium section.
    pub fn medium(&self) -> Result<Option<MediumConfig>> {
        match &self.medium {
            Some(m) => Ok(Some(self.medium_config(m)?)),
            None => Ok(None),
        }
    }
}
