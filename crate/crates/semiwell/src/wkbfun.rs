//! Approximate eigenfunctions assembled from WKB pieces with Airy patches
//! at the turning points, plus the quasi-diagonalization coefficient
//! recursion that supplies higher-order phase corrections.
//!
//! The five regions: exponentially decaying WKB in both forbidden tails,
//! the linear-potential Airy solution in a patch around each turning point,
//! and oscillatory WKB in between. Relative amplitudes are fixed
//! numerically (scalar least squares on overlap points at each seam)
//! instead of via analytic connection constants; the residual seam
//! mismatch doubles as an "is E actually an eigenvalue" diagnostic.

use crate::action::{
    action_j, forbidden_sqrt_integral, invert_action, phase_sqrt, weighted_inv_sqrt,
};
use crate::potential::PotentialModel;
use crate::specfun::airy_ai;
use crate::turning::turning_points;
use crate::{Error, Result};
use num_complex::Complex64;
use serde::Serialize;
use std::f64::consts::PI;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum RegionTag {
    ForbiddenLeft,
    AiryLeft,
    Allowed,
    AiryRight,
    ForbiddenRight,
}

impl RegionTag {
    pub fn as_str(self) -> &'static str {
        match self {
            RegionTag::ForbiddenLeft => "forbidden-left",
            RegionTag::AiryLeft => "airy-left",
            RegionTag::Allowed => "allowed",
            RegionTag::AiryRight => "airy-right",
            RegionTag::ForbiddenRight => "forbidden-right",
        }
    }

    #[cfg(test)]
    fn rank(self) -> u8 {
        match self {
            RegionTag::ForbiddenLeft => 0,
            RegionTag::AiryLeft => 1,
            RegionTag::Allowed => 2,
            RegionTag::AiryRight => 3,
            RegionTag::ForbiddenRight => 4,
        }
    }
}

impl std::fmt::Display for RegionTag {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Piecewise WKB/Airy approximation to an eigenfunction, sup-normalized.
#[derive(Debug, Clone, Serialize)]
pub struct Eigenfunction {
    pub energy: f64,
    pub eps: f64,
    /// round(J(E)/eps - 1/2), clamped at zero: the index E sits nearest to.
    pub index_estimate: usize,
    pub grid: Vec<f64>,
    pub values: Vec<f64>,
    pub regions: Vec<RegionTag>,
    /// Worst cross-seam disagreement, relative to the sup norm.
    pub seam_mismatch: f64,
    pub seam_tol: f64,
    /// seam_mismatch <= seam_tol; false flags E as too far off quantization.
    pub seam_ok: bool,
}

/// Phase integral of sqrt(E - V) over [t_from, t_to] inside the allowed
/// region; endpoint-touching intervals are handled by substitution.
pub fn wkb_phase(p: &PotentialModel, e: f64, t_from: f64, t_to: f64) -> Result<f64> {
    let bounds = turning_points(p, e)?;
    phase_sqrt(p, e, bounds, t_from, t_to, 1e-13)
}

/// Patch half-width in units of the Airy length scale (eps^2/|V'|)^{1/3}.
/// 1.5 keeps the seam ahead of the Airy oscillation zone, where the
/// linearized-potential phase error would otherwise drown the seam
/// diagnostic; at 4 scales the on/off-eigenvalue separation is lost.
const PATCH_SCALES: f64 = 1.5;

fn patch_width(eps: f64, slope: f64) -> f64 {
    PATCH_SCALES * (eps * eps / slope.abs()).cbrt()
}

/// Push the grid edge into the forbidden region until the WKB amplitude
/// has decayed to ~e^{-16}; further tail carries no visible information.
fn extend_edge(p: &PotentialModel, e: f64, t_turn: f64, outward: f64, eps: f64, w0: f64) -> Result<f64> {
    let mut d = (2.0 * w0).max(0.25);
    for _ in 0..60 {
        let wint = forbidden_sqrt_integral(p, e, t_turn, t_turn + outward * d, 1e-9)?;
        if wint / eps >= 16.0 {
            break;
        }
        d *= 1.5;
    }
    Ok(t_turn + outward * d)
}

/// Scalar a minimizing sum (reference - a * fit)^2.
fn lsq_scale(reference: &[f64], fit: &[f64]) -> f64 {
    let num: f64 = reference.iter().zip(fit).map(|(r, f)| r * f).sum();
    let den: f64 = fit.iter().map(|f| f * f).sum();
    if den == 0.0 {
        1.0
    } else {
        num / den
    }
}

pub fn build_eigenfunction(
    p: &PotentialModel,
    eps: f64,
    e: f64,
    grid_points: usize,
) -> Result<Eigenfunction> {
    if eps <= 0.0 {
        return Err(Error::EpsOutOfRange {
            eps,
            reason: "must be positive",
        });
    }
    if grid_points < 200 {
        return Err(Error::BadParameter(format!(
            "grid_points must be at least 200, got {grid_points}"
        )));
    }
    let (tm, tp) = turning_points(p, e)?;
    let j = action_j(p, e)?;
    let index_estimate = (j / eps - 0.5).round().max(0.0) as usize;
    let width = tp - tm;
    // Cap the patches so an interior sliver always survives; for the lowest
    // states the nominal patch would swallow the entire well.
    let w_l = patch_width(eps, p.v1(tm)).min(0.4 * width);
    let w_r = patch_width(eps, p.v1(tp)).min(0.4 * width);
    let edge_l = extend_edge(p, e, tm, -1.0, eps, w_l)?;
    let edge_r = extend_edge(p, e, tp, 1.0, eps, w_r)?;

    let scale_l = (p.v1(tm).abs() / (eps * eps)).cbrt();
    let scale_r = (p.v1(tp).abs() / (eps * eps)).cbrt();
    let ai_l = |t: f64| airy_ai(scale_l * (tm - t));
    let ai_r = |t: f64| airy_ai(scale_r * (t - tp));
    let osc = |t: f64| -> Result<f64> {
        let u = (e - p.v(t)).max(1e-300);
        let phi = phase_sqrt(p, e, (tm, tp), tm, t, 1e-12)?;
        Ok(u.powf(-0.25) * (phi / eps - PI / 4.0).cos())
    };
    let forb = |t: f64, t_turn: f64| -> Result<f64> {
        let v = (p.v(t) - e).max(1e-300);
        let wint = forbidden_sqrt_integral(p, e, t_turn, t, 1e-12)?;
        Ok(v.powf(-0.25) * (-wint / eps).exp())
    };

    // Five sample points straddling each seam.
    let seam_points = |seam: f64, h: f64| -> [f64; 5] {
        [seam - 2.0 * h, seam - h, seam, seam + h, seam + 2.0 * h]
    };

    // Seam order: forbidden-left | airy-left | allowed | airy-right |
    // forbidden-right. The oscillatory region is the amplitude reference;
    // patches are fitted to it, tails to the patches.
    let s1 = seam_points(tm - w_l, w_l / 10.0);
    let s2 = seam_points(tm + w_l, w_l / 10.0);
    let s3 = seam_points(tp - w_r, w_r / 10.0);
    let s4 = seam_points(tp + w_r, w_r / 10.0);

    let osc_s2: Vec<f64> = s2.iter().map(|&t| osc(t)).collect::<Result<_>>()?;
    let ai_l_s2: Vec<f64> = s2.iter().map(|&t| Ok(ai_l(t))).collect::<Result<_>>()?;
    let a_al = lsq_scale(&osc_s2, &ai_l_s2);

    let al_s1: Vec<f64> = s1.iter().map(|&t| Ok(a_al * ai_l(t))).collect::<Result<_>>()?;
    let fl_s1: Vec<f64> = s1.iter().map(|&t| forb(t, tm)).collect::<Result<_>>()?;
    let a_fl = lsq_scale(&al_s1, &fl_s1);

    let osc_s3: Vec<f64> = s3.iter().map(|&t| osc(t)).collect::<Result<_>>()?;
    let ai_r_s3: Vec<f64> = s3.iter().map(|&t| Ok(ai_r(t))).collect::<Result<_>>()?;
    let a_ar = lsq_scale(&osc_s3, &ai_r_s3);

    let ar_s4: Vec<f64> = s4.iter().map(|&t| Ok(a_ar * ai_r(t))).collect::<Result<_>>()?;
    let fr_s4: Vec<f64> = s4.iter().map(|&t| forb(t, tp)).collect::<Result<_>>()?;
    let a_fr = lsq_scale(&ar_s4, &fr_s4);

    // Assemble on a uniform grid.
    let mut grid = Vec::with_capacity(grid_points);
    let mut values = Vec::with_capacity(grid_points);
    let mut regions = Vec::with_capacity(grid_points);
    let (b1, b2, b3, b4) = (tm - w_l, tm + w_l, tp - w_r, tp + w_r);
    let h = (edge_r - edge_l) / (grid_points as f64 - 1.0);
    for i in 0..grid_points {
        let t = edge_l + h * i as f64;
        let (tag, x) = if t < b1 {
            (RegionTag::ForbiddenLeft, a_fl * forb(t, tm)?)
        } else if t < b2 {
            (RegionTag::AiryLeft, a_al * ai_l(t))
        } else if t <= b3 {
            (RegionTag::Allowed, osc(t)?)
        } else if t <= b4 {
            (RegionTag::AiryRight, a_ar * ai_r(t))
        } else {
            (RegionTag::ForbiddenRight, a_fr * forb(t, tp)?)
        };
        grid.push(t);
        values.push(x);
        regions.push(tag);
    }
    let sup = values.iter().fold(0.0f64, |a, &v| a.max(v.abs()));
    if !(sup > 0.0 && sup.is_finite()) {
        return Err(Error::Validation(format!(
            "degenerate eigenfunction assembly (sup = {sup})"
        )));
    }
    for v in &mut values {
        *v /= sup;
    }

    // Worst disagreement across any seam, relative to the sup norm.
    let scaled = |vals: &[f64], a: f64| -> Vec<f64> { vals.iter().map(|v| a * v).collect() };
    let seams = [
        (scaled(&fl_s1, a_fl), al_s1.clone()),
        (scaled(&ai_l_s2, a_al), osc_s2.clone()),
        (osc_s3.clone(), scaled(&ai_r_s3, a_ar)),
        (ar_s4.clone(), scaled(&fr_s4, a_fr)),
    ];
    let mut mismatch = 0.0f64;
    for (left, right) in &seams {
        for (l, r) in left.iter().zip(right.iter()) {
            mismatch = mismatch.max((l - r).abs() / sup);
        }
    }

    let seam_tol = 0.1;
    Ok(Eigenfunction {
        energy: e,
        eps,
        index_estimate,
        grid,
        values,
        regions,
        seam_mismatch: mismatch,
        seam_tol,
        seam_ok: mismatch <= seam_tol,
    })
}

/// Strict sign changes over the grid, forbidden tails excluded (they are
/// one-signed; their sub-threshold wiggle is numerical).
pub fn count_zeros(f: &Eigenfunction) -> usize {
    let thresh = 1e-8;
    let mut count = 0;
    let mut prev = 0.0f64;
    for (i, &v) in f.values.iter().enumerate() {
        match f.regions[i] {
            RegionTag::ForbiddenLeft | RegionTag::ForbiddenRight => continue,
            _ => {}
        }
        if v.abs() < thresh {
            continue;
        }
        if prev != 0.0 && v * prev < 0.0 {
            count += 1;
        }
        prev = v;
    }
    count
}

/// Coefficients R_1..R_N of the quasi-diagonalization recursion at a point
/// strictly inside the allowed region, with the nu_N(eps) evaluator.
#[derive(Debug, Clone)]
pub struct QuasiCoefficients {
    pub lambda: Complex64,
    /// R_1..R_N.
    pub r: Vec<Complex64>,
}

impl QuasiCoefficients {
    /// nu_N = lambda (1 - eps R_1 + eps^2 R_2 - ...): the first-order term
    /// is -1/2 lambda^{-1} lambda' eps since R_1 = lambda'/(2 lambda^2).
    pub fn nu(&self, eps: f64) -> Complex64 {
        let mut acc = Complex64::new(1.0, 0.0);
        let mut pow = 1.0;
        for rk in &self.r {
            pow *= -eps;
            acc += rk * pow;
        }
        self.lambda * acc
    }
}

/// R_1 = lambda'/(2 lambda^2) and, for order 2, the recursion
/// R_2 = -1/2 R_1^2 + 1/2 lambda^{-1} R_1' + 1/2 lambda^{-2} lambda' R_1,
/// all with lambda = i sqrt(E - V) and derivatives through V', V''.
/// `eps` only sets the turning-point exclusion zone (one patch width).
pub fn quasi_coefficients(
    p: &PotentialModel,
    e: f64,
    t: f64,
    eps: f64,
    order: u32,
) -> Result<QuasiCoefficients> {
    if order == 0 || order > 2 {
        return Err(Error::UnsupportedOrder(order));
    }
    // The exclusion guard needs the turning points; a potential without
    // them on both sides (synthetic, non-well) skips the guard.
    if let Ok((tm, tp)) = turning_points(p, e) {
        // Distance to the nearer turning point; valid inside and outside
        // the well, as long as the point is not near either one.
        let (d_m, d_p) = ((t - tm).abs(), (tp - t).abs());
        let gap = d_m.min(d_p);
        let min_gap = patch_width(eps, p.v1(if d_m < d_p { tm } else { tp }));
        if gap < min_gap {
            return Err(Error::TooCloseToTurning { t, gap, min_gap });
        }
    }
    let mu = e - p.v(t);
    // lambda = i sqrt(E - V) in the allowed region; for V > E the principal
    // square root of (V - E) is real and the same formulas continue it.
    let lambda = if mu >= 0.0 {
        Complex64::new(0.0, mu.sqrt())
    } else {
        Complex64::new((-mu).sqrt(), 0.0)
    };
    let d1 = p.v1(t);
    let d2 = p.v2(t);
    // lambda^2 = V - E: lambda' = V'/(2 lambda), lambda'' = V''/(2 lambda) - V'^2/(4 lambda^3).
    let lp = d1 / (2.0 * lambda);
    let lpp = d2 / (2.0 * lambda) - d1 * d1 / (4.0 * lambda.powi(3));
    let r1 = lp / (2.0 * lambda.powi(2));
    let mut r = vec![r1];
    if order == 2 {
        let r1p = lpp / (2.0 * lambda.powi(2)) - lp * lp / lambda.powi(3);
        let r2 = -0.5 * r1 * r1 + 0.5 * r1p / lambda + 0.5 * lp * r1 / lambda.powi(2);
        r.push(r2);
    }
    Ok(QuasiCoefficients { lambda, r })
}

/// Quantization including the eps^2 phase correction from the second-order
/// quasi-diagonalization term: solves
///   J(E) - eps^2/(24 pi) * d/dE [ int V''/sqrt(E - V) dt ] = (n + 1/2) eps.
/// For the harmonic well the correction vanishes identically (the inner
/// integral is E-independent) and this reduces to plain quantization.
pub fn corrected_energy(p: &PotentialModel, eps: f64, n: usize) -> Result<f64> {
    if eps <= 0.0 {
        return Err(Error::EpsOutOfRange {
            eps,
            reason: "must be positive",
        });
    }
    let target = (n as f64 + 0.5) * eps;
    let e0 = invert_action(p, target)?;
    let g = |e: f64| -> Result<f64> {
        let bounds = turning_points(p, e)?;
        Ok(weighted_inv_sqrt(p, e, bounds, |t| p.v2(t), 1e-11)? / (24.0 * PI))
    };
    let f = |e: f64| -> Result<f64> {
        let h = 1e-4 * e;
        let dg = (g(e + h)? - g(e - h)?) / (2.0 * h);
        Ok(action_j(p, e)? - eps * eps * dg - target)
    };
    // Bracket around the uncorrected solution; the correction is O(eps^2).
    let jp = crate::action::action_derivative(p, e0)?;
    let mut delta = (4.0 * eps * eps / jp).max(1e-12 * (1.0 + e0));
    let mut lo = (e0 - delta).max(0.5 * e0);
    let mut hi = e0 + delta;
    let mut flo = f(lo)?;
    let mut fhi = f(hi)?;
    let mut tries = 0;
    while flo.signum() == fhi.signum() {
        tries += 1;
        if tries > 40 {
            return Err(Error::RootSolve(format!(
                "corrected quantization bracket failed near E = {e0}"
            )));
        }
        delta *= 2.0;
        lo = (e0 - delta).max(0.25 * e0);
        hi = e0 + delta;
        flo = f(lo)?;
        fhi = f(hi)?;
    }
    let _ = fhi;
    while hi - lo > 1e-12 * (1.0 + e0) {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        let fm = f(mid)?;
        if fm == 0.0 {
            return Ok(mid);
        }
        if fm.signum() == flo.signum() {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
        }
    }
    Ok(0.5 * (lo + hi))
}
