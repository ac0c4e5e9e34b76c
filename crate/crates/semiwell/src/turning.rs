//! Turning points t_-(E) < 0 < t_+(E) where V = E, and the interior
//! matching point t_0(E) that splits the phase integral into equal halves.

use crate::action;
use crate::num::roots::{bisect_hybrid, RootOpts};
use crate::potential::PotentialModel;
use crate::{Error, Result};

/// Turning-point pair plus the derived matching data for one energy level.
#[derive(Debug, Clone, Copy)]
pub struct TurningData {
    pub energy: f64,
    pub t_minus: f64,
    pub t_plus: f64,
    /// Interior point with equal sqrt(E - V) phase on both sides.
    pub t_zero: f64,
    /// Action J(E).
    pub action: f64,
}

/// Find the unique solutions of V(t) = E on each side of the well by
/// geometric bracket expansion (start 1e-4, ratio 2) followed by hybrid
/// bisection. Single-well monotonicity makes each root unique.
pub fn turning_points(p: &PotentialModel, e: f64) -> Result<(f64, f64)> {
    if e <= 0.0 {
        return Err(Error::EnergyNotPositive(e));
    }
    let t_plus = solve_level(p, e, 1.0)?;
    let t_minus = solve_level(p, e, -1.0)?;
    Ok((t_minus, t_plus))
}

/// The unique t on the chosen side of the origin (sign = +-1) with
/// V(t) = e. Shared by turning-point location and domain truncation.
pub(crate) fn solve_level(p: &PotentialModel, e: f64, sign: f64) -> Result<f64> {
    let mut s = 1e-4;
    let cap = 1e-4 * (2.0f64).powi(60);
    let mut inner = 0.0; // V(inner) < E
    while p.v(sign * s) < e {
        inner = s;
        s *= 2.0;
        if s > cap {
            return Err(Error::Bracket {
                what: "turning point",
                cap: sign * s,
            });
        }
    }
    if !p.v(sign * s).is_finite() {
        return Err(Error::Bracket {
            what: "turning point (non-finite potential)",
            cap: sign * s,
        });
    }
    let (a, b) = if sign > 0.0 {
        (inner, s)
    } else {
        (-s, -inner)
    };
    let opts = RootOpts {
        xtol: 1e-14,
        ftol: 0.0,
        max_iter: 200,
    };
    bisect_hybrid(&|t: f64| p.v(t) - e, a, b, &opts)
}

/// The interior point m with
/// integral_{t_-}^{m} sqrt(E - V) = integral_{m}^{t_+} sqrt(E - V),
/// solved by Newton on the strictly increasing split function
/// F(m) = left - right, F'(m) = 2 sqrt(E - V(m)), with bisection fallback.
/// For even potentials this is 0 up to quadrature accuracy.
pub fn midpoint_t0(p: &PotentialModel, e: f64) -> Result<f64> {
    let (tm, tp) = turning_points(p, e)?;
    midpoint_from_points(p, e, tm, tp)
}

fn midpoint_from_points(p: &PotentialModel, e: f64, tm: f64, tp: f64) -> Result<f64> {
    // Rough total first, then a tolerance that certifies the 1e-10 * J
    // split-residual target.
    let mid = 0.5 * (tm + tp);
    let rough = action::sqrt_piece_from_left(p, e, tm, mid, 1e-9)?
        + action::sqrt_piece_from_right(p, e, tp, mid, 1e-9)?;
    let tol = (5e-12 * rough).max(1e-15);

    let split = |m: f64| -> Result<f64> {
        let left = action::sqrt_piece_from_left(p, e, tm, m, tol)?;
        let right = action::sqrt_piece_from_right(p, e, tp, m, tol)?;
        Ok(left - right)
    };

    let (mut lo, mut hi) = (tm, tp);
    let mut m = mid;
    for _ in 0..200 {
        let f = split(m)?;
        if f.abs() <= 2e-11 * rough {
            return Ok(m);
        }
        if f > 0.0 {
            hi = m;
        } else {
            lo = m;
        }
        let deriv = 2.0 * (e - p.v(m)).max(0.0).sqrt();
        let mut next = if deriv > 0.0 { m - f / deriv } else { 0.5 * (lo + hi) };
        if !(next > lo && next < hi) {
            next = 0.5 * (lo + hi);
        }
        if (next - m).abs() < 1e-16 * (tp - tm) {
            return Ok(next);
        }
        m = next;
    }
    Err(Error::RootSolve(format!(
        "phase-split midpoint did not converge for E = {e}"
    )))
}

/// Turning points, matching point and action for one energy, bundled.
pub fn turning_data(p: &PotentialModel, e: f64) -> Result<TurningData> {
    let (t_minus, t_plus) = turning_points(p, e)?;
    let t_zero = midpoint_from_points(p, e, t_minus, t_plus)?;
    let action = action::action_j(p, e)?;
    Ok(TurningData {
        energy: e,
        t_minus,
        t_plus,
        t_zero,
        action,
    })
}
