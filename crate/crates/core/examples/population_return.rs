//! Coherent population return: an off-resonant pulse transiently excites a
//! two-level atom and then hands the population back. The transient peak is
//! compared with the adiabatic estimate (1 - Delta / sqrt(Delta^2 + 4
//! Omega^2)) / 2.
//!
//! Run with: cargo run --release --example population_return

use stirap_gates::dynamics::{integrate, InitialState, TimeGrid};
use stirap_gates::model::{LevelScheme, PulseEnvelope, PulseSet};

fn main() -> stirap_gates::Result<()> {
    let peak = 100.0;
    println!("delta    peak rho_2 (simulated)   adiabatic estimate   final rho_1");
    for delta in [25.0, 50.0, 100.0, 200.0] {
        let scheme = LevelScheme::two_level(delta);
        let pulses = PulseSet::two_level(PulseEnvelope::new(peak, 0.0, 1.0, 0.0)?);
        let traj = integrate(
            &scheme,
            &pulses,
            &InitialState::Bare(0),
            &TimeGrid::adaptive(-5.0, 5.0),
        )?;
        let measured = (0..traj.times.len()).fold(0.0f64, |a, k| a.max(traj.population(k, 1)));
        let estimate = 0.5 * (1.0 - delta / (delta * delta + 4.0 * peak * peak).sqrt());
        let returned = traj.final_state()[0].norm_sqr();
        println!("{delta:6.1}   {measured:.6}               {estimate:.6}             {returned:.6}");
    }
    Ok(())
}
