//! Verify the three-bit and four-bit Toffoli truth tables by simulating every
//! row of each gate.
//!
//! Run with: cargo run --release --example truth_tables

use stirap_gates::gates::{truth_table, GateKind, GateParams, ReadoutBit};

fn main() -> stirap_gates::Result<()> {
    let params = GateParams::default();
    for kind in [GateKind::Toffoli3, GateKind::Toffoli4] {
        let table = truth_table(kind, &params)?;
        println!("{kind:?} (controls first, target last):");
        for row in &table.rows {
            let observed = match row.observed_target {
                ReadoutBit::Bit(b) => b.to_string(),
                ReadoutBit::Indeterminate => "?".into(),
            };
            println!(
                "  {} -> expected {}, observed {} (fidelity {:.6}, leakage {:.2e}) {}",
                row.input,
                row.expected_target,
                observed,
                row.fidelity,
                row.leakage,
                if row.ok { "ok" } else { "MISMATCH" }
            );
        }
        println!("  result: {}\n", if table.pass { "PASS" } else { "FAIL" });
    }
    Ok(())
}
