//! Adaptive Dormand-Prince 5(4) integration for scalar ODEs dy/dt = f(t, y).
//!
//! Supports both time directions (`t1 < t0` integrates backward). The caller
//! receives every accepted step through an observer closure, which the Prufer
//! machinery uses to count angle level crossings without storing dense output.

use crate::{Error, Result};

pub struct OdeOpts {
    pub rtol: f64,
    pub atol: f64,
    pub max_steps: u64,
    /// Upper bound on |h|; zero means "no bound beyond the interval length".
    pub max_step: f64,
}

impl Default for OdeOpts {
    fn default() -> Self {
        OdeOpts {
            rtol: 1e-10,
            atol: 1e-12,
            max_steps: 10_000_000,
            max_step: 0.0,
        }
    }
}

#[derive(Debug, Clone, Copy)]
pub struct OdeStats {
    pub steps: u64,
    pub rejected: u64,
}

// Butcher tableau (Dormand & Prince 1980, RK5(4)7M).
const C: [f64; 7] = [0.0, 1.0 / 5.0, 3.0 / 10.0, 4.0 / 5.0, 8.0 / 9.0, 1.0, 1.0];
const A: [[f64; 6]; 6] = [
    [1.0 / 5.0, 0.0, 0.0, 0.0, 0.0, 0.0],
    [3.0 / 40.0, 9.0 / 40.0, 0.0, 0.0, 0.0, 0.0],
    [44.0 / 45.0, -56.0 / 15.0, 32.0 / 9.0, 0.0, 0.0, 0.0],
    [
        19372.0 / 6561.0,
        -25360.0 / 2187.0,
        64448.0 / 6561.0,
        -212.0 / 729.0,
        0.0,
        0.0,
    ],
    [
        9017.0 / 3168.0,
        -355.0 / 33.0,
        46732.0 / 5247.0,
        49.0 / 176.0,
        -5103.0 / 18656.0,
        0.0,
    ],
    [
        35.0 / 384.0,
        0.0,
        500.0 / 1113.0,
        125.0 / 192.0,
        -2187.0 / 6784.0,
        11.0 / 84.0,
    ],
];
const B5: [f64; 7] = [
    35.0 / 384.0,
    0.0,
    500.0 / 1113.0,
    125.0 / 192.0,
    -2187.0 / 6784.0,
    11.0 / 84.0,
    0.0,
];
const B4: [f64; 7] = [
    5179.0 / 57600.0,
    0.0,
    7571.0 / 16695.0,
    393.0 / 640.0,
    -92097.0 / 339200.0,
    187.0 / 2100.0,
    1.0 / 40.0,
];

/// Integrate from `(t0, y0)` to `t1`, invoking `observe(t, y)` after every
/// accepted step (including the final clipped one). Returns the terminal value.
pub fn integrate<F, O>(
    f: F,
    t0: f64,
    t1: f64,
    y0: f64,
    opts: &OdeOpts,
    mut observe: O,
) -> Result<(f64, OdeStats)>
where
    F: Fn(f64, f64) -> f64,
    O: FnMut(f64, f64),
{
    let span = t1 - t0;
    if span == 0.0 {
        return Ok((y0, OdeStats { steps: 0, rejected: 0 }));
    }
    let dir = span.signum();
    let mut t = t0;
    let mut y = y0;
    let mut k0 = f(t, y);

    // Initial step from the local derivative scale.
    let scale = opts.atol + opts.rtol * y.abs();
    let mut h = dir
        * (0.01 * scale / (k0.abs() + 1e-30))
            .min(span.abs())
            .max(1e-12 * span.abs());
    let h_cap = if opts.max_step > 0.0 { opts.max_step } else { span.abs() };

    let mut stats = OdeStats { steps: 0, rejected: 0 };
    loop {
        if (t - t1) * dir >= 0.0 {
            return Ok((y, stats));
        }
        if stats.steps + stats.rejected >= opts.max_steps {
            return Err(Error::StepBudget {
                budget: opts.max_steps,
                context: format!("t = {t:.6}, target {t1:.6}"),
            });
        }
        // Clip to the endpoint.
        if (t + h - t1) * dir > 0.0 {
            h = t1 - t;
        }
        let mut k = [k0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0];
        for stage in 1..7 {
            let mut yi = 0.0;
            for (j, kj) in k.iter().enumerate().take(stage) {
                yi += A[stage - 1][j] * kj;
            }
            k[stage] = f(t + C[stage] * h, y + h * yi);
        }
        let mut y5 = 0.0;
        let mut y4 = 0.0;
        for i in 0..7 {
            y5 += B5[i] * k[i];
            y4 += B4[i] * k[i];
        }
        let y_new = y + h * y5;
        let err_abs = (h * (y5 - y4)).abs();
        let tol = opts.atol + opts.rtol * y.abs().max(y_new.abs());
        let err = err_abs / tol;

        if err <= 1.0 || h.abs() <= 1e-14 * (1.0 + t.abs()) {
            t += h;
            y = y_new;
            k0 = k[6]; // FSAL
            stats.steps += 1;
            observe(t, y);
        } else {
            stats.rejected += 1;
        }
        let factor = if err > 0.0 {
            (0.9 * err.powf(-0.2)).clamp(0.2, 5.0)
        } else {
            5.0
        };
        h = (h * factor).clamp(-h_cap, h_cap);
        if h == 0.0 {
            h = dir * 1e-14 * (1.0 + t.abs());
        }
    }
}
