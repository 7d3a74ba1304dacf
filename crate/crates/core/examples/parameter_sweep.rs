//! Sweep the single-photon detuning for the three-bit flip row and show how
//! the transfer fidelity tracks the adiabaticity margin.
//!
//! Run with: cargo run --release --example parameter_sweep

use rayon::prelude::*;

use stirap_gates::adiabaticity::{check_lambda3_sequence, Thresholds};
use stirap_gates::gates::{
    encode, expected_state_population, run_gate, GateInput, GateKind, GateParams,
};

fn main() -> stirap_gates::Result<()> {
    let input = GateInput::parse(GateKind::Toffoli3, "110")?;
    let deltas: Vec<f64> = (0..12).map(|k| 2.0 + 8.0 * k as f64).collect();

    let rows: stirap_gates::Result<Vec<(f64, f64, f64)>> = deltas
        .par_iter()
        .map(|delta| {
            let mut params = GateParams::default();
            params.delta = *delta;
            let outcome = run_gate(GateKind::Toffoli3, &input, &params)?;
            let fidelity =
                expected_state_population(&outcome, GateKind::Toffoli3, input.expected_output());
            let scenario = encode(GateKind::Toffoli3, &input, &params)?;
            let report = check_lambda3_sequence(
                &scenario.pulses,
                params.delta,
                params.short_width,
                &Thresholds::default(),
            )?;
            Ok((*delta, fidelity, report.min_margin().unwrap_or(f64::INFINITY)))
        })
        .collect();

    println!("detuning   flip fidelity   min adiabaticity margin");
    for (delta, fidelity, margin) in rows? {
        println!("{delta:8.1}   {fidelity:.6}        {margin:10.2}");
    }
    Ok(())
}
