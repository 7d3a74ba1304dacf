//! Property-based invariants for the algebraic layers (no time integration
//! here; those paths are covered by the unit and acceptance suites).

use proptest::prelude::*;

use stirap_gates::dressed::{
    eigen_residual, five_eigenvalues_general, five_eigenvalues_tied, five_eigenvectors_tied,
    lambda3_dressed, numeric_spectrum,
};
use stirap_gates::gates::{enumerate_inputs, GateInput, GateKind};
use stirap_gates::model::{build_hamiltonian, LevelScheme, PulseEnvelope, PulseSet, SchemeKind};

fn envelope_strategy() -> impl Strategy<Value = PulseEnvelope> {
    (0.0..200.0f64, -10.0..10.0f64, 0.05..5.0f64, -3.2..3.2f64)
        .prop_map(|(p, c, w, ph)| PulseEnvelope::new(p, c, w, ph).unwrap())
}

proptest! {
    #[test]
    fn hamiltonian_is_exactly_hermitian(
        e1 in envelope_strategy(),
        e2 in envelope_strategy(),
        e3 in envelope_strategy(),
        d in proptest::collection::vec(-200.0..200.0f64, 4),
        t in -10.0..10.0f64,
    ) {
        let scheme = LevelScheme::new(SchemeKind::M5, d).unwrap();
        let pulses = PulseSet::five_tied(e1, e2, e3);
        let h = build_hamiltonian(&scheme, &pulses, t).unwrap();
        prop_assert_eq!(h.hermiticity_defect(), 0.0);
    }

    #[test]
    fn envelope_is_symmetric_about_its_center(
        e in envelope_strategy(),
        dt in 0.0..20.0f64,
    ) {
        // center +/- dt round differently, so allow a few ulps of slack.
        let (a, b) = (e.value(e.center + dt), e.value(e.center - dt));
        prop_assert!((a - b).abs() <= 1e-12 * a.abs().max(b.abs()), "{a} vs {b}");
        prop_assert!(e.value(e.center) >= a.min(b));
    }

    #[test]
    fn detuning_ladder_is_linear_in_the_detunings(
        a in proptest::collection::vec(-100.0..100.0f64, 4),
        b in proptest::collection::vec(-100.0..100.0f64, 4),
    ) {
        for kind in [SchemeKind::M5, SchemeKind::ExtendedLambda5] {
            let la = LevelScheme::new(kind, a.clone()).unwrap().detuning_ladder();
            let lb = LevelScheme::new(kind, b.clone()).unwrap().detuning_ladder();
            let sum: Vec<f64> = a.iter().zip(&b).map(|(x, y)| x + y).collect();
            let ls = LevelScheme::new(kind, sum).unwrap().detuning_ladder();
            for i in 0..5 {
                prop_assert!((la[i] + lb[i] - ls[i]).abs() < 1e-9);
            }
        }
    }

    #[test]
    fn three_level_analytic_matches_numeric(
        o1 in 1e-3..1e3f64,
        o2 in 1e-3..1e3f64,
        delta in -1e3..1e3f64,
    ) {
        let e = |p: f64| PulseEnvelope::new(p, 0.0, 1.0, 0.0).unwrap();
        let h = build_hamiltonian(
            &LevelScheme::lambda3(delta),
            &PulseSet::lambda3(e(o1), e(o2)),
            0.0,
        ).unwrap();
        let numeric = numeric_spectrum(&h).unwrap();
        let d = lambda3_dressed(o1, o2, delta, (0.0, 0.0)).unwrap();
        let mut vals = d.eigenvalues;
        vals.sort_by(|a, b| a.partial_cmp(b).unwrap());
        let scale = vals.iter().fold(1.0f64, |a, x| a.max(x.abs()));
        for (a, n) in vals.iter().zip(&numeric.values) {
            prop_assert!((a - n).abs() < 1e-9 * scale);
        }
        for (v, lam) in [
            (&d.dark, d.eigenvalues[0]),
            (&d.bright1, d.eigenvalues[1]),
            (&d.bright2, d.eigenvalues[2]),
        ] {
            prop_assert!(eigen_residual(&h.matrix, lam, v) < 1e-9 * scale.max(1.0));
        }
    }

    #[test]
    fn tied_five_level_vectors_stay_eigenvectors(
        o1 in 1e-3..1e3f64,
        o2 in 1e-3..1e3f64,
        o3 in 1e-3..1e3f64,
        delta in -1e3..1e3f64,
    ) {
        let e = |p: f64| PulseEnvelope::new(p, 0.0, 1.0, 0.0).unwrap();
        let h = build_hamiltonian(
            &LevelScheme::new(SchemeKind::M5, vec![delta; 4]).unwrap(),
            &PulseSet::five_tied(e(o1), e(o2), e(o3)),
            0.0,
        ).unwrap();
        let d = five_eigenvectors_tied(o1, o2, o3, delta).unwrap();
        let scale = d.lambdas.iter().fold(1.0f64, |a, x| a.max(x.abs()));
        prop_assert!(eigen_residual(&h.matrix, d.lambdas[1], &d.vec_lambda1) < 1e-9 * scale);
        prop_assert!(eigen_residual(&h.matrix, d.lambdas[2], &d.vec_lambda2) < 1e-9 * scale);
        prop_assert!((d.vec_lambda1.norm() - 1.0).abs() < 1e-12);
        prop_assert!((d.vec_lambda2.norm() - 1.0).abs() < 1e-12);
        prop_assert_eq!(d.vec_lambda1[2].norm(), 0.0);
    }

    #[test]
    fn general_spectrum_roots_satisfy_vieta(
        o in proptest::collection::vec(0.0..500.0f64, 4),
        delta in -500.0..500.0f64,
    ) {
        let s = five_eigenvalues_general([o[0], o[1], o[2], o[3]], delta);
        prop_assert!(s.x1 <= s.x2 + 1e-9);
        let scale = s.omega_s_sq.max(1.0);
        prop_assert!((s.x1 + s.x2 - s.omega_s_sq).abs() < 1e-9 * scale);
        prop_assert!((s.x1 * s.x2 - s.v4).abs() < 1e-6 * scale * scale);
        // Tied inputs reduce to the closed-form pair of eigenvalue branches.
        let mut tied = five_eigenvalues_tied(o[0], o[1], o[2], delta);
        tied.sort_by(|a, b| a.partial_cmp(b).unwrap());
        let t = five_eigenvalues_general([o[0], o[1], o[2], o[0]], delta);
        let tied_scale = tied.iter().fold(1.0f64, |a, x| a.max(x.abs()));
        for (a, b) in t.lambdas.iter().zip(&tied) {
            prop_assert!((a - b).abs() < 1e-8 * tied_scale);
        }
    }

    #[test]
    fn dressed_basis_is_orthonormal_under_phases(
        o1 in 1e-3..1e3f64,
        o2 in 1e-3..1e3f64,
        delta in -1e3..1e3f64,
        p1 in -3.2..3.2f64,
        p2 in -3.2..3.2f64,
    ) {
        let d = lambda3_dressed(o1, o2, delta, (p1, p2)).unwrap();
        let vs = [&d.dark, &d.bright1, &d.bright2];
        for (i, a) in vs.iter().enumerate() {
            for (j, b) in vs.iter().enumerate() {
                let dot = a.dotc(b).norm();
                let expect = if i == j { 1.0 } else { 0.0 };
                prop_assert!((dot - expect).abs() < 1e-10);
            }
        }
    }

    #[test]
    fn support_bounds_the_envelopes(
        e1 in envelope_strategy(),
        e2 in envelope_strategy(),
        frac in 1e-8..0.5f64,
    ) {
        let pulses = PulseSet::lambda3(e1, e2);
        if let Some((t0, t1)) = pulses.support(frac) {
            prop_assert!(t0 < t1);
            for e in &pulses.envelopes {
                if e.peak > 0.0 {
                    prop_assert!(e.value(t0) <= frac * e.peak * (1.0 + 1e-12));
                    prop_assert!(e.value(t1) <= frac * e.peak * (1.0 + 1e-12));
                }
            }
        } else {
            prop_assert!(pulses.envelopes.iter().all(|e| e.peak == 0.0));
        }
    }

    #[test]
    fn gate_inputs_round_trip(bits in proptest::collection::vec(0u8..2, 3)) {
        let input = GateInput::new(GateKind::Toffoli3, bits[..2].to_vec(), bits[2]).unwrap();
        let parsed = GateInput::parse(GateKind::Toffoli3, &input.bit_string()).unwrap();
        prop_assert_eq!(&parsed, &input);
        let all = enumerate_inputs(GateKind::Toffoli3);
        prop_assert_eq!(&all[input.row_index()], &input);
    }
}
