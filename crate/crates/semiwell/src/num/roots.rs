//! Bracketed scalar root finding: secant acceleration guarded by bisection.
//! Never leaves the bracket, so convergence is unconditional for continuous f.

use crate::{Error, Result};

pub struct RootOpts {
    /// Absolute tolerance on the abscissa.
    pub xtol: f64,
    /// Absolute tolerance on |f|; either criterion stops the iteration.
    pub ftol: f64,
    pub max_iter: u32,
}

impl Default for RootOpts {
    fn default() -> Self {
        RootOpts {
            xtol: 1e-13,
            ftol: 0.0,
            max_iter: 200,
        }
    }
}

/// Find a root of `f` in `[a, b]`. Requires a sign change (or an endpoint
/// root) on the bracket.
pub fn bisect_hybrid<F: FnMut(f64) -> f64>(mut f: F, a: f64, b: f64, opts: &RootOpts) -> Result<f64> {
    let (mut lo, mut hi) = if a <= b { (a, b) } else { (b, a) };
    let mut flo = f(lo);
    if flo == 0.0 || flo.abs() <= opts.ftol {
        return Ok(lo);
    }
    let mut fhi = f(hi);
    if fhi == 0.0 || fhi.abs() <= opts.ftol {
        return Ok(hi);
    }
    if flo.signum() == fhi.signum() {
        return Err(Error::RootSolve(format!(
            "no sign change on [{lo}, {hi}] (f = {flo:.3e}, {fhi:.3e})"
        )));
    }
    for _ in 0..opts.max_iter {
        // Secant proposal, clamped away from the bracket edges; fall back to
        // the midpoint whenever it is degenerate or escapes.
        let mid = 0.5 * (lo + hi);
        let denom = fhi - flo;
        let mut x = if denom != 0.0 { lo - flo * (hi - lo) / denom } else { mid };
        let margin = 0.01 * (hi - lo);
        if !(x > lo + margin && x < hi - margin) {
            x = mid;
        }
        let fx = f(x);
        if fx == 0.0 || fx.abs() <= opts.ftol {
            return Ok(x);
        }
        if fx.signum() == flo.signum() {
            lo = x;
            flo = fx;
        } else {
            hi = x;
            fhi = fx;
        }
        if hi - lo <= opts.xtol {
            return Ok(0.5 * (lo + hi));
        }
    }
    Err(Error::RootSolve(format!(
        "no convergence after {} iterations; bracket [{lo}, {hi}]",
        opts.max_iter
    )))
}
