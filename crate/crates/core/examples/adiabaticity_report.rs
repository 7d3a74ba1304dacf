//! Evaluate the adiabaticity criteria for the default gate pulse sequences
//! and show how the margins collapse when the detuning becomes too small.
//!
//! Run with: cargo run --release --example adiabaticity_report

use stirap_gates::adiabaticity::{check_five_sequence, check_lambda3_sequence, Thresholds};
use stirap_gates::gates::{encode, GateInput, GateKind, GateParams};

fn main() -> stirap_gates::Result<()> {
    let thr = Thresholds::default();

    for delta in [50.0, 2.0] {
        let mut params = GateParams::default();
        params.delta = delta;

        let input = GateInput::parse(GateKind::Toffoli3, "110")?;
        let s3 = encode(GateKind::Toffoli3, &input, &params)?;
        let report = check_lambda3_sequence(&s3.pulses, params.delta, params.short_width, &thr)?;
        println!("three-level sequence at detuning {delta}/T:");
        print!("{report}");

        let input = GateInput::parse(GateKind::Toffoli4, "1110")?;
        let s5 = encode(GateKind::Toffoli4, &input, &params)?;
        let report = check_five_sequence(&s5.pulses, params.delta, params.short_width, &thr)?;
        println!("five-level sequence at detuning {delta}/T:");
        print!("{report}");
        println!();
    }
    Ok(())
}
