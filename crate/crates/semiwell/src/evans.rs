//! Eigenvalue detection by projectivized shooting.
//!
//! Writing theta = atan2(eps x', x) turns eps^2 x'' = (V - E) x into the
//! scalar angle equation theta' = ((V - E) cos^2 theta - sin^2 theta)/eps.
//! One sweep follows the solution growing out of the left forbidden region,
//! a second follows the one decaying into the right forbidden region
//! (integrated backward); E is an eigenvalue exactly when the two angles
//! agree mod pi at the matching point. The angle mismatch D(E) decreases
//! monotonically and drops by pi per eigenvalue, so levels are found by
//! scanning D on an action-equidistributed grid and bisecting each integer
//! crossing.
//!
//! Start points sit deep enough in the forbidden regions that the frozen
//! initial direction relaxes onto the hyperbolic slow manifold: the
//! initialization error is damped by exp(-(2/eps) int sqrt(V - E)), and the
//! start is pushed outward until that exponent reaches a fixed budget.

use crate::action::{action_j, forbidden_sqrt_integral, invert_action};
use crate::num::ode::{self, OdeOpts};
use crate::potential::PotentialModel;
use crate::quantize::{MethodTag, Spectrum, SpectrumRow};
use crate::turning::{midpoint_t0, solve_level, turning_points};
use crate::{Error, Result};
use rayon::prelude::*;
use std::f64::consts::PI;

/// Below this eps the angle equation becomes too stiff for the explicit
/// integrator's step budget; callers should switch to the grid solver.
pub const MIN_EPS: f64 = 1e-3;

/// Required value of (2/eps) * int sqrt(V - E) between start point and
/// turning point. e^{-30} ~ 1e-13 leaves the frozen-direction start error
/// far below the energy bisection tolerance.
const CONTRACTION_BUDGET: f64 = 30.0;

/// One projectivized sweep from a forbidden-region start point to the
/// matching point.
#[derive(Debug, Clone, serde::Serialize)]
pub struct PruferTrace {
    pub t_start: f64,
    pub t_end: f64,
    /// Angle at the matching point.
    pub theta_end: f64,
    /// Zeros of the underlying solution crossed during the sweep. Crossings
    /// of theta = pi/2 + m pi are strictly one-way (theta' = -1/eps there),
    /// so a floor difference counts them exactly.
    pub winding: i64,
    pub steps: u64,
    /// Pessimistic estimate of accumulated angle error (per-step tolerance
    /// times sqrt of the step count).
    pub err_est: f64,
    /// (t, theta) at accepted steps; empty unless recording was requested.
    pub samples: Vec<(f64, f64)>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    /// Left sweep, forward in t, following the growing solution.
    Unstable,
    /// Right sweep, backward in t, following the solution decaying to +inf.
    Stable,
}

fn guard_eps(eps: f64) -> Result<()> {
    if !(eps >= MIN_EPS) {
        return Err(Error::EpsOutOfRange {
            eps,
            reason: "the shooting method requires eps >= 1e-3",
        });
    }
    Ok(())
}

/// Start point on the chosen side: at least the fixed depth and potential
/// gap max(0.5, 2 eps^{2/3}) past the turning point, then pushed outward
/// until the contraction integral meets the budget.
fn pick_start(
    p: &PotentialModel,
    eps: f64,
    e: f64,
    t_turn: f64,
    outward: f64,
) -> Result<f64> {
    let delta = 0.5f64.max(2.0 * eps.powf(2.0 / 3.0));
    let t_gap = solve_level(p, e + delta, outward)?;
    let mut t_a = if outward < 0.0 {
        (t_turn - delta).min(t_gap)
    } else {
        (t_turn + delta).max(t_gap)
    };
    for _ in 0..200 {
        let w = forbidden_sqrt_integral(p, e, t_turn, t_a, 1e-9)?;
        if 2.0 / eps * w >= CONTRACTION_BUDGET {
            return Ok(t_a);
        }
        t_a = t_turn + (t_a - t_turn) * 1.5;
    }
    Err(Error::Bracket {
        what: "hyperbolic start point",
        cap: t_a,
    })
}

#[allow(clippy::too_many_arguments)]
fn shoot_side(
    p: &PotentialModel,
    eps: f64,
    e: f64,
    side: Side,
    t_minus: f64,
    t_plus: f64,
    t_match: f64,
    record: bool,
) -> Result<PruferTrace> {
    let (t_turn, outward) = match side {
        Side::Unstable => (t_minus, -1.0),
        Side::Stable => (t_plus, 1.0),
    };
    let t_a = pick_start(p, eps, e, t_turn, outward)?;
    let lam = (p.v(t_a) - e).max(0.0).sqrt();
    // Frozen slow-manifold direction: eps x'/x = +lambda for the growing
    // solution on the left, -lambda for the decaying one on the right.
    let theta0 = match side {
        Side::Unstable => lam.atan2(1.0),
        Side::Stable => (-lam).atan2(1.0),
    };
    let rhs = |t: f64, th: f64| {
        let (s, c) = th.sin_cos();
        ((p.v(t) - e) * c * c - s * s) / eps
    };
    let opts = OdeOpts {
        rtol: 1e-10,
        atol: 1e-12,
        max_steps: 10_000_000,
        max_step: 0.0,
    };
    let mut samples = if record {
        vec![(t_a, theta0)]
    } else {
        Vec::new()
    };
    let (theta_end, stats) = ode::integrate(
        rhs,
        t_a,
        t_match,
        theta0,
        &opts,
        |t, th| {
            if record {
                samples.push((t, th));
            }
        },
    )?;
    // The small bias settles ownership of a zero sitting exactly at the
    // matching point (theta_end lands on a level up to root-finding error):
    // it reads as "not yet crossed" for the descending unstable sweep and
    // "crossed" for the ascending stable one, so it is counted exactly once.
    let level = |th: f64| ((th - PI / 2.0 + 1e-6) / PI).floor() as i64;
    let winding = match side {
        Side::Unstable => level(theta0) - level(theta_end),
        Side::Stable => level(theta_end) - level(theta0),
    };
    let err_est =
        (stats.steps.max(1) as f64).sqrt() * (1e-10 * theta_end.abs().max(1.0) + 1e-12);
    Ok(PruferTrace {
        t_start: t_a,
        t_end: t_match,
        theta_end,
        winding,
        steps: stats.steps,
        err_est,
        samples,
    })
}

/// One sweep from the chosen side to the matching point, with per-step
/// samples recorded.
pub fn prufer_shoot(p: &PotentialModel, eps: f64, e: f64, side: Side) -> Result<PruferTrace> {
    guard_eps(eps)?;
    let (tm, tp) = turning_points(p, e)?;
    let t0 = midpoint_t0(p, e)?;
    shoot_side(p, eps, e, side, tm, tp, t0, true)
}

/// Both sweeps at energy E, with per-step samples recorded.
pub fn prufer_traces(
    p: &PotentialModel,
    eps: f64,
    e: f64,
) -> Result<(PruferTrace, PruferTrace)> {
    guard_eps(eps)?;
    let (tm, tp) = turning_points(p, e)?;
    let t0 = midpoint_t0(p, e)?;
    let u = shoot_side(p, eps, e, Side::Unstable, tm, tp, t0, true)?;
    let s = shoot_side(p, eps, e, Side::Stable, tm, tp, t0, true)?;
    Ok((u, s))
}

/// Angle mismatch D(E) = theta_u - theta_s at the matching point. Strictly
/// decreasing in E; integer multiples of pi are eigenvalues.
pub fn evans_mismatch(p: &PotentialModel, eps: f64, e: f64) -> Result<f64> {
    guard_eps(eps)?;
    let (tm, tp) = turning_points(p, e)?;
    let t0 = midpoint_t0(p, e)?;
    let u = shoot_side(p, eps, e, Side::Unstable, tm, tp, t0, false)?;
    let s = shoot_side(p, eps, e, Side::Stable, tm, tp, t0, false)?;
    Ok(u.theta_end - s.theta_end)
}

/// sin of the angle mismatch: a smooth function of E whose zeros are the
/// eigenvalues, convenient as a sign-change detector.
pub fn evans_delta(p: &PotentialModel, eps: f64, e: f64) -> Result<f64> {
    Ok(evans_mismatch(p, eps, e)?.sin())
}

/// All eigenvalues in (0, e_max] located by the shooting method.
///
/// D(E) is sampled where the action passes quarter-integer multiples of
/// eps (eigenvalues are roughly one eps of action apart, so this cannot
/// step over two of them), then every integer-pi crossing is bisected to
/// |Delta E| <= 1e-10. Row indices come from rounding J(E)/eps - 1/2; the
/// zero count from the sweeps cross-checks them, and disagreement is
/// reported as a warning.
pub fn evans_spectrum(p: &PotentialModel, eps: f64, e_max: f64) -> Result<Spectrum> {
    guard_eps(eps)?;
    if e_max <= 0.0 {
        return Err(Error::EnergyNotPositive(e_max));
    }
    let j_max = action_j(p, e_max)?;
    let step = 0.25 * eps;
    let k_max = (j_max / step).floor() as i64;
    let mut energies = Vec::new();
    for k in 1..=k_max {
        energies.push(invert_action(p, k as f64 * step)?);
    }
    energies.push(e_max);
    let mismatches: Vec<Result<f64>> = energies
        .par_iter()
        .map(|&e| evans_mismatch(p, eps, e))
        .collect();
    let mut ds = Vec::with_capacity(mismatches.len());
    for d in mismatches {
        ds.push(d?);
    }

    // Integer-pi levels crossed between consecutive samples (D decreasing).
    let mut brackets = Vec::new();
    for i in 1..energies.len() {
        let (da, db) = (ds[i - 1], ds[i]);
        let (lo_m, hi_m) = ((db / PI).ceil() as i64, (da / PI).floor() as i64);
        for m in lo_m..=hi_m {
            // Half-open convention keeps a level sitting exactly on a
            // sample from being claimed by both intervals.
            let lv = m as f64 * PI;
            if db < lv && lv <= da {
                brackets.push((energies[i - 1], energies[i], da, db, lv));
            }
        }
    }

    let found: Vec<Result<SpectrumRow>> = brackets
        .par_iter()
        .map(|&(ea, eb, da, db, lv)| {
            let (mut lo, mut hi) = (ea, eb);
            let (mut dlo, mut dhi) = (da, db);
            while hi - lo > 1e-10 {
                let mid = 0.5 * (lo + hi);
                if mid <= lo || mid >= hi {
                    break;
                }
                let dm = evans_mismatch(p, eps, mid)?;
                if dm >= lv {
                    lo = mid;
                    dlo = dm;
                } else {
                    hi = mid;
                    dhi = dm;
                }
            }
            // Interpolate within the final bracket for the last digits.
            let e_star = if dlo > dhi {
                lo + (dlo - lv) / (dlo - dhi) * (hi - lo)
            } else {
                0.5 * (lo + hi)
            };
            let j = action_j(p, e_star)?;
            let n = (j / eps - 0.5).round();
            let (tm, tp) = turning_points(p, e_star)?;
            let t0 = midpoint_t0(p, e_star)?;
            let u = shoot_side(p, eps, e_star, Side::Unstable, tm, tp, t0, false)?;
            let s = shoot_side(p, eps, e_star, Side::Stable, tm, tp, t0, false)?;
            let residual = (u.theta_end - s.theta_end).sin().abs();
            let zeros = u.winding + s.winding;
            Ok(SpectrumRow {
                n: n.max(0.0) as usize,
                energy: e_star,
                method: MethodTag::Evans,
                residual: Some(residual),
                diagnostics: vec![("zeros".to_string(), zeros.to_string())],
            })
        })
        .collect();

    let mut rows = Vec::with_capacity(found.len());
    for r in found {
        rows.push(r?);
    }
    rows.sort_by(|a, b| a.energy.partial_cmp(&b.energy).unwrap());
    let mut warnings = Vec::new();
    for row in &rows {
        if let Some((_, zeros)) = row.diagnostics.iter().find(|(k, _)| k == "zeros") {
            if zeros != &row.n.to_string() {
                warnings.push(format!(
                    "zero count {} disagrees with action index {} at E = {}",
                    zeros, row.n, row.energy
                ));
            }
        }
    }
    let spectrum = Spectrum { rows, warnings };
    spectrum.validate()?;
    Ok(spectrum)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::potential::make_potential;

    #[test]
    fn rejects_small_eps() {
        let p = make_potential("harmonic").unwrap();
        assert!(matches!(
            evans_mismatch(&p, 5e-4, 0.3),
            Err(Error::EpsOutOfRange { .. })
        ));
        assert!(matches!(
            evans_spectrum(&p, 9.9e-4, 1.0),
            Err(Error::EpsOutOfRange { .. })
        ));
    }

    #[test]
    fn harmonic_delta_vanishes_at_eigenvalue() {
        // E = 0.3 = (2*1+1) * 0.1 is the n = 1 level.
        let p = make_potential("harmonic").unwrap();
        let d = evans_delta(&p, 0.1, 0.3).unwrap();
        assert!(d.abs() < 1e-6, "delta = {d:e}");
    }

    #[test]
    fn harmonic_delta_large_between_eigenvalues() {
        let p = make_potential("harmonic").unwrap();
        let d = evans_delta(&p, 0.1, 0.2).unwrap();
        assert!(d.abs() > 0.5, "delta = {d}");
    }

    #[test]
    fn delta_changes_sign_across_level() {
        let p = make_potential("harmonic").unwrap();
        let a = evans_delta(&p, 0.1, 0.25).unwrap();
        let b = evans_delta(&p, 0.1, 0.35).unwrap();
        assert!(a * b < 0.0, "no sign change: {a}, {b}");
    }

    #[test]
    fn mismatch_drops_by_pi_per_level() {
        let p = make_potential("harmonic").unwrap();
        let d0 = evans_mismatch(&p, 0.1, 0.1).unwrap();
        let d1 = evans_mismatch(&p, 0.1, 0.3).unwrap();
        assert!((d0 - d1 - PI).abs() < 1e-5, "d0 - d1 = {}", d0 - d1);
    }

    #[test]
    fn harmonic_spectrum_five_levels() {
        let p = make_potential("harmonic").unwrap();
        let s = evans_spectrum(&p, 0.1, 1.0).unwrap();
        assert_eq!(s.rows.len(), 5);
        for row in &s.rows {
            let want = 0.1 * (2 * row.n + 1) as f64;
            assert!(
                (row.energy - want).abs() < 1e-8,
                "n = {}: {} vs {want}",
                row.n,
                row.energy
            );
            assert!(row.residual.unwrap() < 1e-6);
        }
        assert!(s.warnings.is_empty(), "{:?}", s.warnings);
    }

    #[test]
    fn empty_below_ground_state() {
        let p = make_potential("harmonic").unwrap();
        let s = evans_spectrum(&p, 0.1, 0.05).unwrap();
        assert!(s.rows.is_empty());
    }

    #[test]
    fn winding_matches_index() {
        let p = make_potential("harmonic").unwrap();
        let (tm, tp) = turning_points(&p, 0.7).unwrap();
        let t0 = midpoint_t0(&p, 0.7).unwrap();
        let u = shoot_side(&p, 0.1, 0.7, Side::Unstable, tm, tp, t0, false).unwrap();
        let s = shoot_side(&p, 0.1, 0.7, Side::Stable, tm, tp, t0, false).unwrap();
        assert_eq!(u.winding + s.winding, 3);
    }

    #[test]
    fn traces_record_samples() {
        let p = make_potential("quartic:0.1").unwrap();
        let (u, s) = prufer_traces(&p, 0.1, 0.3).unwrap();
        assert!(u.samples.len() > 10 && s.samples.len() > 10);
        assert_eq!(u.samples.first().unwrap().0, u.t_start);
        assert!((u.samples.last().unwrap().0 - u.t_end).abs() < 1e-12);
        // Backward sweep: samples run from the right edge down to t0.
        assert!(s.t_start > s.t_end);
        assert!(s.samples.first().unwrap().0 > s.samples.last().unwrap().0);
        assert!(u.err_est < 1e-6);
    }
}
