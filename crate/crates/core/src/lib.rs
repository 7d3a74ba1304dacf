//! Simulation of adiabatic population transfer (STIRAP, its bright-state
//! counterpart, and coherent population return) in few-level chain systems
//! driven by Gaussian pulses, and reversible Toffoli logic built on top of it.
//!
//! Module map:
//! - [`model`]: pulse envelopes, level schemes, Hamiltonian assembly.
//! - [`dressed`]: analytic dressed states plus a numeric eigen oracle.
//! - [`dynamics`]: Schrodinger-equation integration and trajectories.
//! - [`adiabaticity`]: dimensionless adiabaticity criteria and reports.
//! - [`gates`]: Toffoli truth-table encoding, execution, readout.
//! - [`propagation`]: first-order pulse propagation through a medium.
//! - [`scenario`]: JSON scenario files.
//! - [`cli`]: the command-line surface.

pub mod adiabaticity;
pub mod cli;
pub mod dressed;
pub mod dynamics;
pub mod error;
pub mod gates;
pub mod model;
pub mod propagation;
pub mod scenario;

pub use error::{Error, Result};
