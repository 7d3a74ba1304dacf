//! Adiabaticity and medium-length inequalities, evaluated into structured
//! pass/fail reports.
//!
//! Every inequality in the source analysis is of the form "value >> 1" or
//! "value << 1" without a quantitative cutoff; the defaults interpret ">> 1"
//! as >= 10 and "<< 1" as <= 0.1, both configurable.

use serde::{Deserialize, Serialize};
use std::fmt;

use crate::error::{Error, Result};
use crate::model::PulseSet;

/// Quantitative interpretation of the asymptotic inequalities.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Thresholds {
    /// ">> 1" passes at or above this value.
    pub much_greater: f64,
    /// "<< 1" passes at or below this value.
    pub much_less: f64,
}

impl Default for Thresholds {
    fn default() -> Self {
        Self { much_greater: 10.0, much_less: 0.1 }
    }
}

/// Which way the inequality points.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Direction {
    AtLeast,
    AtMost,
    /// An order-of-magnitude indicator compared against ~1, not a hard gate.
    Advisory,
}

/// One evaluated inequality.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Criterion {
    pub name: String,
    pub formula: String,
    pub value: f64,
    pub threshold: f64,
    pub direction: Direction,
    /// False where the source analysis marks the condition meaningless
    /// (e.g. no pulse overlap); inapplicable criteria do not gate `overall`.
    pub applicable: bool,
    pub pass: bool,
}

impl Criterion {
    fn at_least(name: &str, formula: &str, value: f64, threshold: f64) -> Self {
        Self {
            name: name.into(),
            formula: formula.into(),
            value,
            threshold,
            direction: Direction::AtLeast,
            applicable: true,
            pass: value >= threshold,
        }
    }

    fn at_most(name: &str, formula: &str, value: f64, threshold: f64) -> Self {
        Self {
            name: name.into(),
            formula: formula.into(),
            value,
            threshold,
            direction: Direction::AtMost,
            applicable: true,
            pass: value <= threshold,
        }
    }

    fn advisory(name: &str, formula: &str, value: f64) -> Self {
        Self {
            name: name.into(),
            formula: formula.into(),
            value,
            threshold: 1.0,
            direction: Direction::Advisory,
            applicable: true,
            pass: value <= 1.0,
        }
    }

    fn inapplicable(mut self) -> Self {
        self.applicable = false;
        self.pass = true;
        self
    }
}

/// Evaluated criteria plus the combined verdict.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct AdiabaticityReport {
    pub criteria: Vec<Criterion>,
    pub overall: bool,
}

impl AdiabaticityReport {
    fn from_criteria(criteria: Vec<Criterion>) -> Self {
        assert!(criteria.iter().all(|c| c.value.is_finite()), "criterion value not finite");
        let overall = criteria.iter().all(|c| c.pass);
        Self { criteria, overall }
    }

    pub fn criterion(&self, name: &str) -> Option<&Criterion> {
        self.criteria.iter().find(|c| c.name == name)
    }

    /// Smallest applicable ">> 1" margin in the report.
    pub fn min_margin(&self) -> Option<f64> {
        self.criteria
            .iter()
            .filter(|c| c.applicable && c.direction == Direction::AtLeast)
            .map(|c| c.value)
            .min_by(|a, b| a.partial_cmp(b).unwrap())
    }
}

impl fmt::Display for AdiabaticityReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            f,
            "{:<28} {:<16} {:>14} {:>6} {:>10} {:>6}",
            "criterion", "formula", "value", "dir", "threshold", "pass"
        )?;
        for c in &self.criteria {
            let dir = match c.direction {
                Direction::AtLeast => ">=",
                Direction::AtMost => "<=",
                Direction::Advisory => "~<",
            };
            let verdict = if !c.applicable {
                "n/a"
            } else if c.pass {
                "pass"
            } else {
                "FAIL"
            };
            writeln!(
                f,
                "{:<28} {:<16} {:>14.6e} {:>6} {:>10} {:>6}",
                c.name, c.formula, c.value, dir, c.threshold, verdict
            )?;
        }
        write!(f, "overall: {}", if self.overall { "pass" } else { "FAIL" })
    }
}

fn require_positive(pairs: &[(&str, f64)]) -> Result<()> {
    for (name, v) in pairs {
        if !(v.is_finite() && *v > 0.0) {
            return Err(Error::InvalidParameter(format!("{name} must be positive, got {v}")));
        }
    }
    Ok(())
}

fn require_nonnegative(pairs: &[(&str, f64)]) -> Result<()> {
    for (name, v) in pairs {
        if !(v.is_finite() && *v >= 0.0) {
            return Err(Error::InvalidParameter(format!("{name} must be nonnegative, got {v}")));
        }
    }
    Ok(())
}

/// Single-atom Lambda3 conditions: |Omega^2 T / Delta| >> 1 and Delta T >> 1.
pub fn check_lambda3(
    omega_peak: f64,
    delta: f64,
    t_pulse: f64,
    thr: &Thresholds,
) -> Result<AdiabaticityReport> {
    require_positive(&[("delta", delta), ("t_pulse", t_pulse)])?;
    require_nonnegative(&[("omega_peak", omega_peak)])?;
    let rabi = (omega_peak * omega_peak * t_pulse / delta).abs();
    Ok(AdiabaticityReport::from_criteria(vec![
        Criterion::at_least("lambda3_rabi", "|Omega^2 T/Delta|", rabi, thr.much_greater),
        Criterion::at_least("one_photon", "Delta T", delta * t_pulse, thr.much_greater),
    ]))
}

/// Lambda3 medium conditions: qL/(Omega^2 T) << 1 and qL/(Delta^2 T) << 1.
pub fn check_lambda3_medium(
    q: f64,
    length: f64,
    omega_peak: f64,
    delta: f64,
    t_pulse: f64,
    thr: &Thresholds,
) -> Result<AdiabaticityReport> {
    require_positive(&[("omega_peak", omega_peak), ("delta", delta), ("t_pulse", t_pulse)])?;
    require_nonnegative(&[("q", q), ("length", length)])?;
    let ql = q * length;
    Ok(AdiabaticityReport::from_criteria(vec![
        Criterion::at_most(
            "medium_rabi",
            "qL/(Omega^2 T)",
            ql / (omega_peak * omega_peak * t_pulse),
            thr.much_less,
        ),
        Criterion::at_most(
            "medium_detuning",
            "qL/(Delta^2 T)",
            ql / (delta * delta * t_pulse),
            thr.much_less,
        ),
    ]))
}

/// Tied five-level conditions in the exact forms (gap/duration products) with
/// the large-detuning forms reported alongside.
pub fn check_five(
    omega1: f64,
    omega2: f64,
    omega3: f64,
    delta: f64,
    t_short: f64,
    thr: &Thresholds,
) -> Result<AdiabaticityReport> {
    require_positive(&[("delta", delta), ("t_short", t_short)])?;
    require_nonnegative(&[("omega1", omega1), ("omega2", omega2), ("omega3", omega3)])?;
    let o1sq = omega1 * omega1;
    let short_sq = omega2 * omega2 + omega3 * omega3;
    let os_sq = 2.0 * o1sq + short_sq; // Omega_s^2 with Omega_4 = Omega_1
    let gap_s = (delta * delta + 4.0 * os_sq).sqrt();
    let gap_1 = (delta * delta + 4.0 * o1sq).sqrt();
    let overlap = short_sq > 0.0 && o1sq > 0.0;

    let mut short_gap =
        Criterion::at_least("short_pulses_gap", "(O2^2+O3^2)T/sqrt(D^2+4Os^2)", short_sq * t_short / gap_s, thr.much_greater);
    if short_sq == 0.0 {
        short_gap = short_gap.inapplicable();
    }
    let mut long_gap = Criterion::at_least(
        "long_pulse_gap",
        "O1^2 T/sqrt(D^2+4O1^2)",
        o1sq * t_short / gap_1,
        thr.much_greater,
    );
    if !overlap {
        long_gap = long_gap.inapplicable();
    }
    let mut total_gap = Criterion::at_least(
        "total_gap",
        "Os^2 T/sqrt(D^2+4Os^2)",
        os_sq * t_short / gap_s,
        thr.much_greater,
    );
    if os_sq == 0.0 {
        total_gap = total_gap.inapplicable();
    }
    let mut short_large_delta = Criterion::at_least(
        "short_pulses_large_delta",
        "(O2^2+O3^2)T/Delta",
        short_sq * t_short / delta,
        thr.much_greater,
    );
    if short_sq == 0.0 {
        short_large_delta = short_large_delta.inapplicable();
    }
    let mut long_large_delta = Criterion::at_least(
        "long_pulse_large_delta",
        "O1^2 T/Delta",
        o1sq * t_short / delta,
        thr.much_greater,
    );
    if !overlap {
        long_large_delta = long_large_delta.inapplicable();
    }

    Ok(AdiabaticityReport::from_criteria(vec![
        Criterion::at_least("one_photon", "Delta T", delta * t_short, thr.much_greater),
        short_gap,
        long_gap,
        total_gap,
        short_large_delta,
        long_large_delta,
    ]))
}

/// General (untied) five-level single-atom conditions via the x_{1,2} roots.
///
/// The first family is implemented with denominator sqrt(Delta^2 + 4 x_2);
/// the printed form squares x_2 inside the root, which is dimensionally
/// inconsistent with its siblings.
pub fn check_five_general(
    omegas: [f64; 4],
    delta: f64,
    t_short: f64,
    thr: &Thresholds,
) -> Result<AdiabaticityReport> {
    require_positive(&[("delta", delta), ("t_short", t_short)])?;
    require_nonnegative(&[
        ("omega1", omegas[0]),
        ("omega2", omegas[1]),
        ("omega3", omegas[2]),
        ("omega4", omegas[3]),
    ])?;
    let spec = crate::dressed::five_eigenvalues_general(omegas, delta);
    let (x1, x2) = (spec.x1, spec.x2);
    let gap1 = (delta * delta + 4.0 * x1.max(0.0)).sqrt();
    let gap2 = (delta * delta + 4.0 * x2).sqrt();

    let mut split = Criterion::at_least(
        "root_splitting",
        "(x2-x1)T/sqrt(D^2+4x2)",
        (x2 - x1) * t_short / gap2,
        thr.much_greater,
    );
    if x2 - x1 <= 0.0 {
        split = split.inapplicable();
    }
    let mut lower = Criterion::at_least(
        "lower_pair_gap",
        "x1 T/sqrt(D^2+4x1)",
        x1.max(0.0) * t_short / gap1,
        thr.much_greater,
    );
    let mut upper = Criterion::at_least(
        "upper_pair_gap",
        "x2 T/sqrt(D^2+4x2)",
        x2 * t_short / gap2,
        thr.much_greater,
    );
    // The pairwise-gap family is meaningful only during pulse overlap.
    if spec.v4 <= 0.0 {
        lower = lower.inapplicable();
        if x2 <= 0.0 {
            upper = upper.inapplicable();
        }
    }

    Ok(AdiabaticityReport::from_criteria(vec![
        Criterion::at_least("one_photon", "sqrt(D^2+4x1) T", gap1 * t_short, thr.much_greater),
        split,
        lower,
        upper,
    ]))
}

/// Five-level medium conditions: the propagation correction
/// (q1 L/Delta)(Delta/(Omega1^2 T)) << 1 and the optical-length indicator
/// alpha0 L Gamma / Delta compared against ~1.
#[allow(clippy::too_many_arguments)]
pub fn check_medium_five(
    q1: f64,
    length: f64,
    delta: f64,
    omega1_peak: f64,
    t_pulse: f64,
    gamma: f64,
    alpha0: f64,
    thr: &Thresholds,
) -> Result<AdiabaticityReport> {
    require_positive(&[
        ("delta", delta),
        ("omega1_peak", omega1_peak),
        ("t_pulse", t_pulse),
    ])?;
    require_nonnegative(&[("q1", q1), ("length", length), ("gamma", gamma), ("alpha0", alpha0)])?;
    let propagation = (q1 * length / delta) * (delta / (omega1_peak * omega1_peak * t_pulse));
    let optical = alpha0 * length * gamma / delta;
    Ok(AdiabaticityReport::from_criteria(vec![
        Criterion::at_most(
            "medium_propagation",
            "(q1 L/D)(D/(O1^2 T))",
            propagation,
            thr.much_less,
        ),
        Criterion::advisory("optical_length", "alpha0 L Gamma/D", optical),
    ]))
}

/// Worst-case margins of the tied five-level conditions over a pulse
/// sequence.
///
/// Time-dependent criteria are evaluated at the instant of minimum margin,
/// restricted to the half-maximum window of the couplings each criterion
/// involves; outside that window the condition is not meaningful (no
/// overlap) and pulse wings would trivially report zero.
pub fn check_five_sequence(
    pulses: &PulseSet,
    delta: f64,
    t_short: f64,
    thr: &Thresholds,
) -> Result<AdiabaticityReport> {
    require_positive(&[("delta", delta), ("t_short", t_short)])?;
    if pulses.transitions() != 4 {
        return Err(Error::DimensionMismatch("five-level pulse set expected".into()));
    }
    let (t0, t1) = pulses.support(1e-6).unwrap_or((0.0, 1.0));
    let n = 2001;
    let mut worst: Option<AdiabaticityReport> = None;
    let mut short_sq_max = 0.0f64;
    let mut overlap_max = 0.0f64;
    let samples: Vec<(f64, f64, f64)> = (0..n)
        .map(|k| {
            let t = t0 + (t1 - t0) * (k as f64) / ((n - 1) as f64);
            let v = pulses.values(t);
            (v[0], v[1], v[2])
        })
        .collect();
    for (o1, o2, o3) in &samples {
        let short_sq = o2 * o2 + o3 * o3;
        short_sq_max = short_sq_max.max(short_sq);
        overlap_max = overlap_max.max(short_sq * o1 * o1);
    }
    for (o1, o2, o3) in &samples {
        let short_sq = o2 * o2 + o3 * o3;
        let in_short = short_sq >= 0.5 * short_sq_max && short_sq_max > 0.0;
        let in_overlap = short_sq * o1 * o1 >= 0.5 * overlap_max && overlap_max > 0.0;
        let mut report = check_five(*o1, *o2, *o3, delta, t_short, thr)?;
        for c in &mut report.criteria {
            let relevant = match c.name.as_str() {
                "one_photon" => true,
                "short_pulses_gap" | "short_pulses_large_delta" | "total_gap" => in_short,
                "long_pulse_gap" | "long_pulse_large_delta" => in_overlap,
                _ => true,
            };
            if !relevant {
                c.applicable = false;
                c.pass = true;
            }
        }
        worst = Some(match worst {
            None => report,
            Some(acc) => merge_worst(acc, report),
        });
    }
    Ok(worst.expect("nonempty scan"))
}

/// Worst-case margins of the Lambda3 conditions over an SP pulse pair, with
/// the same half-maximum windowing.
pub fn check_lambda3_sequence(
    pulses: &PulseSet,
    delta: f64,
    t_pulse: f64,
    thr: &Thresholds,
) -> Result<AdiabaticityReport> {
    require_positive(&[("delta", delta), ("t_pulse", t_pulse)])?;
    if pulses.transitions() != 2 {
        return Err(Error::DimensionMismatch("Lambda3 pulse set expected".into()));
    }
    let (t0, t1) = pulses.support(1e-6).unwrap_or((0.0, 1.0));
    let n = 2001;
    let values: Vec<f64> = (0..n)
        .map(|k| {
            let t = t0 + (t1 - t0) * (k as f64) / ((n - 1) as f64);
            let v = pulses.values(t);
            v[0] * v[0] + v[1] * v[1]
        })
        .collect();
    let max = values.iter().cloned().fold(0.0f64, f64::max);
    let mut worst: Option<AdiabaticityReport> = None;
    for total_sq in values {
        if max > 0.0 && total_sq < 0.5 * max {
            continue;
        }
        let report = check_lambda3(total_sq.sqrt(), delta, t_pulse, thr)?;
        worst = Some(match worst {
            None => report,
            Some(acc) => merge_worst(acc, report),
        });
    }
    Ok(worst.expect("nonempty scan"))
}

fn merge_worst(a: AdiabaticityReport, b: AdiabaticityReport) -> AdiabaticityReport {
    let criteria: Vec<Criterion> = a
        .criteria
        .into_iter()
        .zip(b.criteria)
        .map(|(ca, cb)| {
            // Prefer applicable entries; among applicable ones keep the
            // smaller margin (or larger "<<" value).
            match (ca.applicable, cb.applicable) {
                (true, false) => ca,
                (false, true) => cb,
                _ => {
                    let keep_a = match ca.direction {
                        Direction::AtLeast => ca.value <= cb.value,
                        Direction::AtMost | Direction::Advisory => ca.value >= cb.value,
                    };
                    if keep_a {
                        ca
                    } else {
                        cb
                    }
                }
            }
        })
        .collect();
    AdiabaticityReport::from_criteria(criteria)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::{PulseEnvelope, PulseSet};
    use approx::assert_relative_eq;

    fn thr() -> Thresholds {
        Thresholds::default()
    }

    #[test]
    fn lambda3_figure_parameters_pass() {
        let r = check_lambda3(100.0, 50.0, 1.0, &thr()).unwrap();
        assert_relative_eq!(r.criterion("lambda3_rabi").unwrap().value, 200.0);
        assert_relative_eq!(r.criterion("one_photon").unwrap().value, 50.0);
        assert!(r.overall);
    }

    #[test]
    fn lambda3_zero_field_fails() {
        let r = check_lambda3(0.0, 50.0, 1.0, &thr()).unwrap();
        assert_eq!(r.criterion("lambda3_rabi").unwrap().value, 0.0);
        assert!(!r.overall);
    }

    #[test]
    fn lambda3_weak_field_fails_at_threshold() {
        let r = check_lambda3(10.0, 50.0, 1.0, &thr()).unwrap();
        assert_relative_eq!(r.criterion("lambda3_rabi").unwrap().value, 2.0);
        assert!(!r.criterion("lambda3_rabi").unwrap().pass);
    }

    #[test]
    fn lambda3_rejects_nonpositive_detuning() {
        assert!(check_lambda3(100.0, 0.0, 1.0, &thr()).is_err());
        assert!(check_lambda3(100.0, 50.0, -1.0, &thr()).is_err());
    }

    #[test]
    fn lambda3_medium_examples() {
        let r = check_lambda3_medium(100.0, 1.0, 100.0, 50.0, 1.0, &thr()).unwrap();
        assert_relative_eq!(r.criterion("medium_rabi").unwrap().value, 0.01);
        assert_relative_eq!(r.criterion("medium_detuning").unwrap().value, 0.04);
        assert!(r.overall);

        let r = check_lambda3_medium(1e4, 1.0, 100.0, 50.0, 1.0, &thr()).unwrap();
        assert_relative_eq!(r.criterion("medium_rabi").unwrap().value, 1.0);
        assert_relative_eq!(r.criterion("medium_detuning").unwrap().value, 4.0);
        assert!(!r.overall);

        let vacuum = check_lambda3_medium(0.0, 1.0, 100.0, 50.0, 1.0, &thr()).unwrap();
        assert!(vacuum.overall);
    }

    #[test]
    fn five_figure_parameters_pass() {
        let r = check_five(100.0, 100.0, 100.0, 50.0, 1.0, &thr()).unwrap();
        assert!(r.overall, "{r}");
        assert!(r.min_margin().unwrap() > 28.0);
    }

    #[test]
    fn five_without_short_pulses_marks_overlap_inapplicable() {
        let r = check_five(100.0, 0.0, 0.0, 50.0, 1.0, &thr()).unwrap();
        let c = r.criterion("short_pulses_gap").unwrap();
        assert!(!c.applicable);
        assert_eq!(c.value, 0.0);
        assert!(!r.criterion("long_pulse_gap").unwrap().applicable);
    }

    #[test]
    fn five_rejects_zero_detuning() {
        assert!(check_five(100.0, 100.0, 100.0, 0.0, 1.0, &thr()).is_err());
    }

    #[test]
    fn general_matches_tied_verdicts() {
        for (o1, o2, o3, delta) in [
            (100.0, 100.0, 100.0, 50.0),
            (100.0, 60.0, 80.0, 50.0),
            (5.0, 5.0, 5.0, 50.0),
            (100.0, 0.0, 0.0, 50.0),
        ] {
            let tied = check_five(o1, o2, o3, delta, 1.0, &thr()).unwrap();
            let general = check_five_general([o1, o2, o3, o1], delta, 1.0, &thr()).unwrap();
            assert_eq!(tied.overall, general.overall, "({o1},{o2},{o3},{delta})");
        }
    }

    #[test]
    fn general_all_fields_zero_marks_overlap_inapplicable() {
        let r = check_five_general([0.0; 4], 50.0, 1.0, &thr()).unwrap();
        assert!(!r.criterion("lower_pair_gap").unwrap().applicable);
        assert!(!r.criterion("upper_pair_gap").unwrap().applicable);
    }

    #[test]
    fn medium_five_examples() {
        let r = check_medium_five(50.0, 1.0, 50.0, 100.0, 1.0, 5.0, 1.0, &thr()).unwrap();
        // q1 L / Delta = 1, Delta/(O1^2 T) = 0.005
        assert_relative_eq!(r.criterion("medium_propagation").unwrap().value, 0.005);
        assert!(r.criterion("medium_propagation").unwrap().pass);

        let boundary = check_medium_five(1.0, 10.0, 50.0, 100.0, 1.0, 5.0, 1.0, &thr()).unwrap();
        assert_relative_eq!(boundary.criterion("optical_length").unwrap().value, 1.0);

        let empty = check_medium_five(1.0, 0.0, 50.0, 100.0, 1.0, 5.0, 1.0, &thr()).unwrap();
        assert_eq!(empty.criterion("medium_propagation").unwrap().value, 0.0);
        assert!(empty.overall);
    }

    #[test]
    fn criteria_are_dimensionless_under_unit_rescaling() {
        let s = 3.7; // new time unit in old units
        let (o, d, t) = (100.0, 50.0, 1.0);
        let a = check_lambda3(o, d, t, &thr()).unwrap();
        let b = check_lambda3(o / s, d / s, t * s, &thr()).unwrap();
        for (ca, cb) in a.criteria.iter().zip(&b.criteria) {
            assert_relative_eq!(ca.value, cb.value, max_relative = 1e-12);
        }
        let a = check_five(100.0, 60.0, 80.0, 50.0, 1.0, &thr()).unwrap();
        let b = check_five(100.0 / s, 60.0 / s, 80.0 / s, 50.0 / s, s, &thr()).unwrap();
        for (ca, cb) in a.criteria.iter().zip(&b.criteria) {
            assert_relative_eq!(ca.value, cb.value, max_relative = 1e-12);
        }
    }

    #[test]
    fn margins_are_monotone_in_the_expected_direction() {
        let lo = check_five(50.0, 100.0, 100.0, 50.0, 1.0, &thr()).unwrap();
        let hi = check_five(150.0, 100.0, 100.0, 50.0, 1.0, &thr()).unwrap();
        assert!(
            hi.criterion("long_pulse_gap").unwrap().value
                > lo.criterion("long_pulse_gap").unwrap().value
        );
        let short = check_medium_five(1.0, 1.0, 50.0, 100.0, 1.0, 5.0, 1.0, &thr()).unwrap();
        let long = check_medium_five(1.0, 100.0, 50.0, 100.0, 1.0, 5.0, 1.0, &thr()).unwrap();
        assert!(
            long.criterion("medium_propagation").unwrap().value
                > short.criterion("medium_propagation").unwrap().value
        );
        assert!(
            long.criterion("optical_length").unwrap().value
                > short.criterion("optical_length").unwrap().value
        );
    }

    #[test]
    fn sequence_scan_passes_at_default_gate_parameters() {
        let e = |p: f64, c: f64, w: f64| PulseEnvelope::new(p, c, w, 0.0).unwrap();
        let pulses =
            PulseSet::five_tied(e(100.0, 0.0, 4.0), e(100.0, 0.75, 1.0), e(100.0, -0.75, 1.0));
        let r = check_five_sequence(&pulses, 50.0, 1.0, &thr()).unwrap();
        assert!(r.overall, "{r}");

        let sp = crate::model::sp_pair(e(100.0, -0.75, 1.0), e(100.0, 0.75, 1.0)).unwrap();
        let r = check_lambda3_sequence(&sp, 50.0, 1.0, &thr()).unwrap();
        assert!(r.overall, "{r}");
    }
}
