//! Scaling studies: measure the asymptotic orders of the quantization
//! remainder, the low-lying correction, the eigenvalue gaps, and the
//! intermediate-regime residual, against the finite-difference reference
//! solver. The reference solver is the ground truth throughout; the
//! shooting method is itself one of the things under study.

use crate::action::{action_derivative, action_j, invert_action};
use crate::num::fit::fit_line;
use crate::potential::PotentialModel;
use crate::quantize::{bohr_sommerfeld_spectrum, intermediate_residual};
use crate::refsolver::{discretize, reference_spectrum, sturm_count, suggested_grid, truncation_domain};
use crate::{Error, Result};
use rayon::prelude::*;
use serde::Serialize;

/// Observables below this are treated as quantization being exact for the
/// potential (harmonic): the residual is reference-solver noise and a
/// log-log fit on it would be meaningless.
const EXACTNESS_FLOOR: f64 = 1e-8;

/// One cell of a study: the measured observable at a given (eps, index).
#[derive(Debug, Clone, Copy, Serialize)]
pub struct StudyRow {
    pub eps: f64,
    pub n: i64,
    pub observable: f64,
}

/// Result of one scaling experiment. `slope` is the fitted log-log slope
/// of the per-eps aggregate when a fit applies; gap-style studies leave it
/// empty and judge the raw observables against `band` directly.
#[derive(Debug, Clone, Serialize)]
pub struct ScalingReport {
    pub experiment: String,
    pub rows: Vec<StudyRow>,
    /// (eps, aggregated observable) pairs the fit runs over.
    pub per_eps: Vec<(f64, f64)>,
    pub slope: Option<f64>,
    pub slope_stderr: Option<f64>,
    /// Declared pass band. For slope studies it constrains the slope; for
    /// gap/band studies it constrains the observables themselves.
    pub band: (f64, f64),
    pub passed: bool,
    /// Observables at machine level across the board; fit skipped.
    pub exact: bool,
    pub notes: Vec<String>,
}

fn check_eps_list(eps_list: &[f64]) -> Result<()> {
    if eps_list.len() < 2 {
        return Err(Error::BadParameter(format!(
            "need at least 2 eps values for a scaling study, got {}",
            eps_list.len()
        )));
    }
    for &eps in eps_list {
        if !(eps >= 1e-3) {
            return Err(Error::EpsOutOfRange {
                eps,
                reason: "scaling studies need eps >= 1e-3 for the reference solver",
            });
        }
    }
    Ok(())
}

/// Returns (slope, stderr, prefactor) for observable ~ prefactor * eps^slope.
fn log_fit(per_eps: &[(f64, f64)]) -> (f64, f64, f64) {
    let xs: Vec<f64> = per_eps.iter().map(|(e, _)| e.ln()).collect();
    let ys: Vec<f64> = per_eps.iter().map(|(_, v)| v.max(1e-300).ln()).collect();
    let fit = fit_line(&xs, &ys);
    (fit.slope, fit.slope_stderr, fit.intercept.exp())
}

fn small_sample_note(eps_list: &[f64], notes: &mut Vec<String>) {
    if eps_list.len() < 4 {
        notes.push(format!(
            "only {} eps values; slope estimate is weakly constrained",
            eps_list.len()
        ));
    }
}

/// Remainder of plain quantization against reference eigenvalues:
/// r_n = |J(E_n) - (n + 1/2) eps| for indices with n*eps inside `window`,
/// aggregated as the per-eps maximum. Passes when the fitted order
/// (slope minus two standard errors) is at least 1.6, i.e. at least the
/// 5/3 the remainder analysis guarantees; the measured value is reported
/// as-is and may well be 2.
pub fn bs_remainder_study(
    p: &PotentialModel,
    eps_list: &[f64],
    window: (f64, f64),
) -> Result<ScalingReport> {
    check_eps_list(eps_list)?;
    if !(window.0 > 0.0 && window.1 > window.0) {
        return Err(Error::BadParameter(format!(
            "bad index window [{}, {}]",
            window.0, window.1
        )));
    }
    let cells: Vec<(f64, Vec<StudyRow>)> = eps_list
        .par_iter()
        .map(|&eps| -> Result<(f64, Vec<StudyRow>)> {
            // Enough depth that every index with n*eps <= window.1 exists.
            let e_max = invert_action(p, window.1 + 1.5 * eps)?;
            let grid = suggested_grid(p, eps, e_max)?;
            let spec = reference_spectrum(p, eps, e_max, grid)?;
            let mut rows = Vec::new();
            for row in &spec.rows {
                let ne = row.n as f64 * eps;
                if ne < window.0 || ne > window.1 {
                    continue;
                }
                let r = (action_j(p, row.energy)? - (row.n as f64 + 0.5) * eps).abs();
                rows.push(StudyRow {
                    eps,
                    n: row.n as i64,
                    observable: r,
                });
            }
            if rows.is_empty() {
                return Err(Error::Validation(format!(
                    "window [{}, {}] contains no indices at eps = {eps}",
                    window.0, window.1
                )));
            }
            Ok((eps, rows))
        })
        .collect::<Result<Vec<_>>>()?;

    let mut rows = Vec::new();
    let mut per_eps = Vec::new();
    let mut parity = (Vec::new(), Vec::new());
    for (eps, cell) in &cells {
        let agg = cell.iter().fold(0.0f64, |a, r| a.max(r.observable));
        per_eps.push((*eps, agg));
        let even = cell
            .iter()
            .filter(|r| r.n % 2 == 0)
            .fold(0.0f64, |a, r| a.max(r.observable));
        let odd = cell
            .iter()
            .filter(|r| r.n % 2 != 0)
            .fold(0.0f64, |a, r| a.max(r.observable));
        if even > 0.0 {
            parity.0.push((*eps, even));
        }
        if odd > 0.0 {
            parity.1.push((*eps, odd));
        }
        rows.extend_from_slice(cell);
    }

    let mut notes = Vec::new();
    small_sample_note(eps_list, &mut notes);
    let exact = per_eps.iter().all(|&(_, v)| v < EXACTNESS_FLOOR);
    if exact {
        notes.push("quantization exact at machine precision; slope fit skipped".into());
        return Ok(ScalingReport {
            experiment: "bs-remainder".into(),
            rows,
            per_eps,
            slope: None,
            slope_stderr: None,
            band: (1.6, f64::INFINITY),
            passed: true,
            exact: true,
            notes,
        });
    }
    let (slope, se, pref) = log_fit(&per_eps);
    notes.push(format!("fit: remainder ~ {pref:.3e} * eps^{slope:.3}"));
    if parity.0.len() >= 2 && parity.1.len() >= 2 {
        let (s_even, _, _) = log_fit(&parity.0);
        let (s_odd, _, _) = log_fit(&parity.1);
        notes.push(format!(
            "parity split: even slope {s_even:.3}, odd slope {s_odd:.3}"
        ));
    }
    // Two eps values give no residual dof; test the point estimate then.
    let passed = if se.is_nan() {
        slope >= 1.6
    } else {
        slope - 2.0 * se >= 1.6
    };
    Ok(ScalingReport {
        experiment: "bs-remainder".into(),
        rows,
        per_eps,
        slope: Some(slope),
        slope_stderr: Some(se),
        band: (1.6, f64::INFINITY),
        passed,
        exact: false,
        notes,
    })
}

/// Low-lying deviation from the harmonic ladder:
/// observable = |E_n - (2n+1) eps sqrt(V''(0)/2)| per (n, eps), expected
/// to shrink like eps^2. Each index is fitted separately; the report
/// passes when every per-index two-sigma slope interval meets [1.8, 2.2].
pub fn low_lying_study(
    p: &PotentialModel,
    eps_list: &[f64],
    n_max: usize,
) -> Result<ScalingReport> {
    check_eps_list(eps_list)?;
    let omega = (p.v2(0.0) / 2.0).sqrt();
    if !(omega > 0.0) {
        return Err(Error::Validation(
            "low-lying study needs a nondegenerate minimum (V''(0) > 0)".into(),
        ));
    }
    let mut notes = Vec::new();
    small_sample_note(eps_list, &mut notes);
    let eps_top = eps_list.iter().cloned().fold(0.0f64, f64::max);
    if (2.0 * n_max as f64 + 1.0) * eps_top * omega > 0.2 {
        notes.push(format!(
            "largest level (2n+1)*eps*omega = {:.3} is outside the low-lying regime; slopes may degrade",
            (2.0 * n_max as f64 + 1.0) * eps_top * omega
        ));
    }

    let cells: Vec<Vec<StudyRow>> = eps_list
        .par_iter()
        .map(|&eps| -> Result<Vec<StudyRow>> {
            let e_max = (2.0 * n_max as f64 + 3.0) * eps * omega * 1.3;
            let grid = suggested_grid(p, eps, e_max)?;
            let spec = reference_spectrum(p, eps, e_max, grid)?;
            let mut rows = Vec::new();
            for row in spec.rows.iter().take(n_max + 1) {
                rows.push(StudyRow {
                    eps,
                    n: row.n as i64,
                    observable: (row.energy - (2.0 * row.n as f64 + 1.0) * eps * omega).abs(),
                });
            }
            if rows.len() < n_max + 1 {
                return Err(Error::Validation(format!(
                    "reference solver found only {} of {} requested levels at eps = {eps}",
                    rows.len(),
                    n_max + 1
                )));
            }
            Ok(rows)
        })
        .collect::<Result<Vec<_>>>()?;

    let rows: Vec<StudyRow> = cells.iter().flatten().copied().collect();
    let per_eps: Vec<(f64, f64)> = cells
        .iter()
        .map(|c| (c[0].eps, c.iter().fold(0.0f64, |a, r| a.max(r.observable))))
        .collect();
    let exact = rows.iter().all(|r| r.observable < EXACTNESS_FLOOR);
    if exact {
        notes.push("harmonic ladder exact at machine precision; slope fit skipped".into());
        return Ok(ScalingReport {
            experiment: "low-lying".into(),
            rows,
            per_eps,
            slope: None,
            slope_stderr: None,
            band: (1.8, 2.2),
            passed: true,
            exact: true,
            notes,
        });
    }

    let mut passed = true;
    for n in 0..=n_max {
        let pts: Vec<(f64, f64)> = rows
            .iter()
            .filter(|r| r.n == n as i64)
            .map(|r| (r.eps, r.observable))
            .collect();
        let (s, se, _) = log_fit(&pts);
        let ok = if se.is_nan() {
            (1.8..=2.2).contains(&s)
        } else {
            s + 2.0 * se >= 1.8 && s - 2.0 * se <= 2.2
        };
        if se.is_nan() {
            notes.push(format!("n={n}: slope {s:.3}"));
        } else {
            notes.push(format!("n={n}: slope {s:.3} +- {se:.3}"));
        }
        passed &= ok;
    }
    let (slope, se, pref) = log_fit(&per_eps);
    notes.push(format!("fit: deviation ~ {pref:.3e} * eps^{slope:.3}"));
    Ok(ScalingReport {
        experiment: "low-lying".into(),
        rows,
        per_eps,
        slope: Some(slope),
        slope_stderr: Some(se),
        band: (1.8, 2.2),
        passed,
        exact: false,
        notes,
    })
}

/// Adjacent-gap law at one eps: normalized gap (E_{n+1} - E_n) J'(mid)/eps
/// must sit in [0.9, 1.1] for gaps with midpoint in `window`. Also checks
/// that the window holds exactly the predicted number of eigenvalues
/// (Sturm counts at the edges vs quantization indices, +-1) and that every
/// reference eigenvalue has a quantization partner within eps/2.
pub fn gap_study(p: &PotentialModel, eps: f64, window: (f64, f64)) -> Result<ScalingReport> {
    check_eps_list(&[eps, eps])?;
    if !(window.0 > 0.0 && window.1 > window.0) {
        return Err(Error::BadParameter(format!(
            "bad energy window [{}, {}]",
            window.0, window.1
        )));
    }
    let e_max = window.1 + 3.0 * eps;
    let grid = suggested_grid(p, eps, e_max)?;
    let spec = reference_spectrum(p, eps, e_max, grid)?;
    let bs = bohr_sommerfeld_spectrum(p, eps, e_max)?;

    let mut rows = Vec::new();
    let mut notes = Vec::new();
    let mut passed = true;
    for pair in spec.rows.windows(2) {
        let mid = 0.5 * (pair[0].energy + pair[1].energy);
        if mid < window.0 || mid > window.1 {
            continue;
        }
        let g = (pair[1].energy - pair[0].energy) * action_derivative(p, mid)? / eps;
        if !(0.9..=1.1).contains(&g) {
            passed = false;
            notes.push(format!(
                "normalized gap {g:.4} outside [0.9, 1.1] between n={} and n={}",
                pair[0].n, pair[1].n
            ));
        }
        rows.push(StudyRow {
            eps,
            n: pair[0].n as i64,
            observable: g,
        });
    }
    if rows.is_empty() {
        return Err(Error::Validation(format!(
            "no adjacent eigenvalue pairs inside [{}, {}]",
            window.0, window.1
        )));
    }

    // Completeness: Sturm count across the window vs quantization count.
    let domain = truncation_domain(p, e_max, 10.0)?;
    let tri = discretize(p, eps, domain, grid);
    let counted = sturm_count(&tri, window.1) as i64 - sturm_count(&tri, window.0) as i64;
    let predicted = bs
        .rows
        .iter()
        .filter(|r| r.energy >= window.0 && r.energy <= window.1)
        .count() as i64;
    if (counted - predicted).abs() > 1 {
        passed = false;
        notes.push(format!(
            "window holds {counted} eigenvalues but quantization predicts {predicted}"
        ));
    } else {
        notes.push(format!(
            "completeness: {counted} eigenvalues in window, quantization predicts {predicted}"
        ));
    }
    // Partner check: each reference level near some quantization level.
    for row in spec.rows.iter().filter(|r| (window.0..=window.1).contains(&r.energy)) {
        let best = bs
            .rows
            .iter()
            .map(|b| (b.energy - row.energy).abs())
            .fold(f64::INFINITY, f64::min);
        if best > 0.5 * eps {
            passed = false;
            notes.push(format!(
                "reference level {:.6} has no quantization partner within eps/2",
                row.energy
            ));
        }
    }

    Ok(ScalingReport {
        experiment: "gaps".into(),
        rows,
        per_eps: vec![(eps, 1.0)],
        slope: None,
        slope_stderr: None,
        band: (0.9, 1.1),
        passed,
        exact: false,
        notes,
    })
}

/// Intermediate-regime residual [J(E) - (n+1/2)eps] / [eps^{3/2}(eps/E)^{1/6}]
/// for reference eigenvalues with E in [20 eps, 0.3]. The scaled residual
/// should neither grow nor collapse as eps shrinks: the per-eps maxima
/// must stay within a two-sided factor-3 band.
pub fn intermediate_study(p: &PotentialModel, eps_list: &[f64]) -> Result<ScalingReport> {
    check_eps_list(eps_list)?;
    for &eps in eps_list {
        if 20.0 * eps >= 0.3 {
            return Err(Error::Validation(format!(
                "intermediate regime [20 eps, 0.3] is empty at eps = {eps}"
            )));
        }
    }
    let cells: Vec<Vec<StudyRow>> = eps_list
        .par_iter()
        .map(|&eps| -> Result<Vec<StudyRow>> {
            let (lo, hi) = (20.0 * eps, 0.3);
            let e_max = hi + 3.0 * eps;
            let grid = suggested_grid(p, eps, e_max)?;
            let spec = reference_spectrum(p, eps, e_max, grid)?;
            let mut rows = Vec::new();
            for row in &spec.rows {
                if row.energy < lo || row.energy > hi {
                    continue;
                }
                let r = intermediate_residual(p, eps, row.energy, row.n)?;
                rows.push(StudyRow {
                    eps,
                    n: row.n as i64,
                    observable: r,
                });
            }
            if rows.is_empty() {
                return Err(Error::Validation(format!(
                    "no reference eigenvalues in [20 eps, 0.3] at eps = {eps}"
                )));
            }
            Ok(rows)
        })
        .collect::<Result<Vec<_>>>()?;

    let rows: Vec<StudyRow> = cells.iter().flatten().copied().collect();
    let per_eps: Vec<(f64, f64)> = cells
        .iter()
        .map(|c| (c[0].eps, c.iter().fold(0.0f64, |a, r| a.max(r.observable.abs()))))
        .collect();
    let mut notes = Vec::new();
    let exact = per_eps.iter().all(|&(_, v)| v < 1e-4);
    let mut passed = true;
    if exact {
        notes.push("scaled residual at noise level (quantization exact); band check skipped".into());
    } else {
        let hi = per_eps.iter().map(|&(_, v)| v).fold(0.0f64, f64::max);
        let lo = per_eps.iter().map(|&(_, v)| v).fold(f64::INFINITY, f64::min);
        passed = hi <= 3.0 * lo;
        notes.push(format!(
            "per-eps maxima span [{lo:.4}, {hi:.4}], ratio {:.2}",
            hi / lo
        ));
    }
    Ok(ScalingReport {
        experiment: "intermediate".into(),
        rows,
        per_eps,
        slope: None,
        slope_stderr: None,
        band: (1.0, 3.0),
        passed,
        exact,
        notes,
    })
}
