//! The action integral J(E) = (1/pi) * integral of sqrt(E - V) between the
//! turning points, its energy derivative, and its inverse.
//!
//! Both integrands have inverse-square-root structure at the turning points
//! (E - V has a simple zero there), so integrals are computed after the
//! substitution t = t_- + s^2 (left half) / t = t_+ - s^2 (right half),
//! which makes them smooth: sqrt(E - V) * 2s and s / sqrt(E - V) are both
//! bounded with all derivatives, because sqrt(E - V) = s * smooth(s).

use crate::num::quad;
use crate::potential::PotentialModel;
use crate::turning::turning_points;
use crate::{Error, Result};
use std::f64::consts::PI;

const QUAD_TOL: f64 = 1e-13;
const QUAD_DEPTH: u32 = 24;

/// Accurate U = E - V(t0 + dir s^2) near a turning point t0 (dir = +1 for
/// the left endpoint, -1 for the right). Direct subtraction loses all of
/// its digits within ~1e-8 of the root and the resulting jitter sends the
/// adaptive quadrature chasing noise; below `sigma_c` (in sigma = s^2) a
/// three-term Taylor model anchored at the computed root is smooth and far
/// more accurate, and it also removes the integral's square-root
/// sensitivity to the last-ulp placement of the root itself.
struct EndpointU<'a> {
    p: &'a PotentialModel,
    e: f64,
    t0: f64,
    dir: f64,
    a1: f64,
    a2: f64,
    a3: f64,
    sigma_c: f64,
}

impl<'a> EndpointU<'a> {
    fn new(p: &'a PotentialModel, e: f64, t0: f64, dir: f64) -> Self {
        let guard = |x: f64| if x.is_finite() { x } else { 0.0 };
        EndpointU {
            p,
            e,
            t0,
            dir,
            a1: -dir * p.v1(t0),
            a2: -0.5 * guard(p.v2(t0)),
            a3: -dir * guard(p.v3(t0)) / 6.0,
            sigma_c: 1e-4 * (1.0 + t0.abs()),
        }
    }

    fn t(&self, s: f64) -> f64 {
        self.t0 + self.dir * s * s
    }

    /// E - V at sigma = s^2 along `dir`: model below sigma_c, direct beyond.
    fn raw(&self, sigma: f64) -> f64 {
        if sigma < self.sigma_c {
            sigma * (self.a1 + sigma * (self.a2 + sigma * self.a3))
        } else {
            self.e - self.p.v(self.t0 + self.dir * sigma)
        }
    }

    /// U on the allowed side, clamped positive.
    fn at(&self, s: f64) -> f64 {
        let sigma = s * s;
        let m = self.raw(sigma);
        if m > 0.0 {
            m
        } else {
            self.a1.abs().max(f64::MIN_POSITIVE) * sigma
        }
    }

    /// V - E on the forbidden side, clamped positive.
    fn forbidden_at(&self, s: f64) -> f64 {
        let sigma = s * s;
        let m = -self.raw(sigma);
        if m > 0.0 {
            m
        } else {
            self.a1.abs().max(f64::MIN_POSITIVE) * sigma
        }
    }
}

/// Integral of sqrt(V - E) over the forbidden stretch between a turning
/// point and `t_far` beyond it (either side), with the same substitution
/// treatment of the square-root zero at the turning point. Used for
/// tunneling-suppression estimates.
pub(crate) fn forbidden_sqrt_integral(
    p: &PotentialModel,
    e: f64,
    t_turn: f64,
    t_far: f64,
    tol: f64,
) -> Result<f64> {
    if t_far == t_turn {
        return Ok(0.0);
    }
    let dir = (t_far - t_turn).signum();
    let end = EndpointU::new(p, e, t_turn, dir);
    let f = |s: f64| 2.0 * s * end.forbidden_at(s).sqrt();
    quad::integrate(f, 0.0, (t_far - t_turn).abs().sqrt(), tol, QUAD_DEPTH)
}

/// Integral of sqrt(E - V) from t_minus to `to` (left singular endpoint).
pub(crate) fn sqrt_piece_from_left(
    p: &PotentialModel,
    e: f64,
    t_minus: f64,
    to: f64,
    tol: f64,
) -> Result<f64> {
    if to <= t_minus {
        return Ok(0.0);
    }
    let end = EndpointU::new(p, e, t_minus, 1.0);
    let f = |s: f64| 2.0 * s * end.at(s).sqrt();
    quad::integrate(f, 0.0, (to - t_minus).sqrt(), tol, QUAD_DEPTH)
}

/// Integral of sqrt(E - V) from `from` to t_plus (right singular endpoint).
pub(crate) fn sqrt_piece_from_right(
    p: &PotentialModel,
    e: f64,
    t_plus: f64,
    from: f64,
    tol: f64,
) -> Result<f64> {
    if from >= t_plus {
        return Ok(0.0);
    }
    let end = EndpointU::new(p, e, t_plus, -1.0);
    let f = |s: f64| 2.0 * s * end.at(s).sqrt();
    quad::integrate(f, 0.0, (t_plus - from).sqrt(), tol, QUAD_DEPTH)
}

/// Integral of sqrt(E - V) over [from, to] inside the allowed region
/// [t_minus, t_plus]; endpoint-touching intervals get the substitution.
/// `touch_tol` decides what counts as touching.
pub(crate) fn phase_sqrt(
    p: &PotentialModel,
    e: f64,
    (t_minus, t_plus): (f64, f64),
    from: f64,
    to: f64,
    tol: f64,
) -> Result<f64> {
    if to < from {
        return Ok(-phase_sqrt(p, e, (t_minus, t_plus), to, from, tol)?);
    }
    let touch = 1e-9 * (1.0 + t_plus - t_minus);
    if from < t_minus - touch || to > t_plus + touch {
        return Err(Error::OutsideAllowed {
            from,
            to,
            t_minus,
            t_plus,
        });
    }
    let from_touches = from <= t_minus + touch;
    let to_touches = to >= t_plus - touch;
    match (from_touches, to_touches) {
        (true, true) => {
            let mid = 0.5 * (t_minus + t_plus);
            Ok(sqrt_piece_from_left(p, e, t_minus, mid, tol)?
                + sqrt_piece_from_right(p, e, t_plus, mid, tol)?)
        }
        (true, false) => sqrt_piece_from_left(p, e, t_minus, to, tol),
        (false, true) => sqrt_piece_from_right(p, e, t_plus, from, tol),
        (false, false) => {
            let f = |t: f64| (e - p.v(t)).max(0.0).sqrt();
            quad::integrate(f, from, to, tol, QUAD_DEPTH)
        }
    }
}

/// Integral of w(t) / sqrt(E - V) over the full allowed interval, split at
/// the middle with the substitution on each half (integrand s * w / sqrt(U)
/// is bounded: near the endpoint it tends to w(t_pm)/sqrt(|V'(t_pm)|)).
pub(crate) fn weighted_inv_sqrt<F: Fn(f64) -> f64>(
    p: &PotentialModel,
    e: f64,
    (t_minus, t_plus): (f64, f64),
    w: F,
    tol: f64,
) -> Result<f64> {
    let mid = 0.5 * (t_minus + t_plus);
    let left = {
        let end = EndpointU::new(p, e, t_minus, 1.0);
        let f = |s: f64| 2.0 * s * w(end.t(s)) / end.at(s).sqrt();
        quad::integrate(f, 0.0, (mid - t_minus).sqrt(), tol, QUAD_DEPTH)?
    };
    let right = {
        let end = EndpointU::new(p, e, t_plus, -1.0);
        let f = |s: f64| 2.0 * s * w(end.t(s)) / end.at(s).sqrt();
        quad::integrate(f, 0.0, (t_plus - mid).sqrt(), tol, QUAD_DEPTH)?
    };
    Ok(left + right)
}

/// J(E) = (1/pi) * integral of sqrt(E - V) between the turning points.
pub fn action_j(p: &PotentialModel, e: f64) -> Result<f64> {
    if e <= 0.0 {
        return Err(Error::EnergyNotPositive(e));
    }
    let (tm, tp) = turning_points(p, e)?;
    let mid = 0.5 * (tm + tp);
    let val = sqrt_piece_from_left(p, e, tm, mid, QUAD_TOL)?
        + sqrt_piece_from_right(p, e, tp, mid, QUAD_TOL)?;
    Ok(val / PI)
}

/// J'(E) = (1/pi) * integral of 1/(2 sqrt(E - V)); strictly positive.
pub fn action_derivative(p: &PotentialModel, e: f64) -> Result<f64> {
    if e <= 0.0 {
        return Err(Error::EnergyNotPositive(e));
    }
    let tp = turning_points(p, e)?;
    let val = weighted_inv_sqrt(p, e, tp, |_| 1.0, QUAD_TOL)?;
    Ok(val / (2.0 * PI))
}

/// Solve J(E) = target for E. Newton with the analytic derivative, kept
/// inside a sign-checked bracket; the harmonic-exact initial guess
/// E0 = 2 * target starts within a factor of J'(0)=1/2 scaling.
pub fn invert_action(p: &PotentialModel, target: f64) -> Result<f64> {
    if target <= 0.0 {
        return Err(Error::RootSolve(format!(
            "action target must be positive, got {target}"
        )));
    }
    let mut lo = 2.0 * target;
    let mut hi = lo;
    // Expand a bracket [lo, hi] with J(lo) < target < J(hi).
    let mut guard = 0;
    while action_j(p, lo)? > target {
        lo *= 0.5;
        guard += 1;
        if guard > 200 {
            return Err(Error::Bracket {
                what: "action inverse (lower)",
                cap: lo,
            });
        }
    }
    guard = 0;
    while action_j(p, hi)? < target {
        hi *= 2.0;
        guard += 1;
        if guard > 80 {
            return Err(Error::Bracket {
                what: "action inverse (upper)",
                cap: hi,
            });
        }
    }
    let mut e = 0.5 * (lo + hi);
    for _ in 0..100 {
        let j = action_j(p, e)?;
        let resid = j - target;
        if resid.abs() <= 1e-12 * (1.0 + target.abs()) {
            return Ok(e);
        }
        if resid > 0.0 {
            hi = e;
        } else {
            lo = e;
        }
        let jp = action_derivative(p, e)?;
        let mut next = e - resid / jp;
        if !(next > lo && next < hi) {
            next = 0.5 * (lo + hi);
        }
        if (next - e).abs() <= 1e-15 * e.abs() {
            return Ok(next);
        }
        e = next;
    }
    Err(Error::RootSolve(format!(
        "action inversion stalled at E = {e} (target {target})"
    )))
}
