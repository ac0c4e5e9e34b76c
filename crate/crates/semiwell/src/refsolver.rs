//! Brute-force reference eigensolver: central-difference discretization on
//! a truncated interval, Sturm-sequence bisection for the eigenvalues, and
//! inverse iteration for eigenvectors.
//!
//! This module is the ground truth the asymptotic methods are tested
//! against, so it is built for robustness over speed: Dirichlet truncation
//! where the potential exceeds the energy window by a wide margin (the
//! discarded mass is exponentially small in 1/eps), bisection rather than
//! QR (only the low part of the spectrum is needed), and a three-grid
//! double Richardson extrapolation that upgrades the second-order scheme
//! to sixth order.

use crate::potential::PotentialModel;
use crate::quantize::{MethodTag, Spectrum, SpectrumRow};
use crate::turning::solve_level;
use crate::{Error, Result};
use rayon::prelude::*;

/// Symmetric tridiagonal discretization of eps^2 x'' = (V - E) x with
/// Dirichlet walls: d[i] = 2 eps^2/h^2 + V(a + (i+1)h), e[i] = -eps^2/h^2.
#[derive(Debug, Clone)]
pub struct Tridiagonal {
    pub d: Vec<f64>,
    pub e: Vec<f64>,
    pub h: f64,
    pub a: f64,
    pub b: f64,
}

/// Interval [a, b] with V(a) = V(b) = E_max + margin (then nudged outward a
/// hair so the inequality V >= E_max + margin holds at both walls).
/// Eigenfunctions below E_max decay like exp(-(1/eps) * integral sqrt(V-E))
/// past their turning points, so with margin of order 10 the Dirichlet
/// truncation error is far below every tolerance used here.
pub fn truncation_domain(p: &PotentialModel, e_max: f64, margin: f64) -> Result<(f64, f64)> {
    if e_max <= 0.0 {
        return Err(Error::EnergyNotPositive(e_max));
    }
    if margin <= 0.0 {
        return Err(Error::Validation(format!(
            "truncation margin must be positive, got {margin}"
        )));
    }
    let level = e_max + margin;
    let b = solve_level(p, level, 1.0)?;
    let a = solve_level(p, level, -1.0)?;
    Ok((a - 1e-9 * (1.0 + a.abs()), b + 1e-9 * (1.0 + b.abs())))
}

/// Interior-point discretization; n is the number of unknowns.
pub fn discretize(p: &PotentialModel, eps: f64, domain: (f64, f64), n: usize) -> Tridiagonal {
    let (a, b) = domain;
    assert!(n >= 3, "need at least 3 interior points");
    let h = (b - a) / (n as f64 + 1.0);
    let w = eps * eps / (h * h);
    let d = (0..n).map(|i| 2.0 * w + p.v(a + (i as f64 + 1.0) * h)).collect();
    let e = vec![-w; n - 1];
    Tridiagonal { d, e, h, a, b }
}

/// Number of eigenvalues strictly below `lambda`, by the Sturm sign-count
/// recursion q_i = (d_i - lambda) - e_{i-1}^2 / q_{i-1}. Tiny pivots are
/// replaced by -pivmin (counting them as crossings), the standard guard
/// that keeps the count monotone in lambda.
pub fn sturm_count(t: &Tridiagonal, lambda: f64) -> usize {
    let max_e2 = t
        .e
        .iter()
        .fold(1.0f64, |acc, &x| acc.max(x * x));
    let pivmin = f64::MIN_POSITIVE * max_e2;
    let mut count = 0usize;
    let mut q = t.d[0] - lambda;
    if q.abs() < pivmin {
        q = -pivmin;
    }
    if q < 0.0 {
        count += 1;
    }
    for i in 1..t.d.len() {
        q = (t.d[i] - lambda) - t.e[i - 1] * t.e[i - 1] / q;
        if q.abs() < pivmin {
            q = -pivmin;
        }
        if q < 0.0 {
            count += 1;
        }
    }
    count
}

/// All eigenvalues of T strictly below `upper`, ascending, each bisected to
/// width 1e-12. Bisections for distinct indices run in parallel.
pub fn eigenvalues_below(t: &Tridiagonal, upper: f64) -> Vec<f64> {
    let lower = t
        .d
        .iter()
        .enumerate()
        .map(|(i, &d)| {
            let left = if i > 0 { t.e[i - 1].abs() } else { 0.0 };
            let right = if i < t.e.len() { t.e[i].abs() } else { 0.0 };
            d - left - right
        })
        .fold(f64::INFINITY, f64::min);
    let m = sturm_count(t, upper);
    (0..m)
        .into_par_iter()
        .map(|idx| {
            let (mut lo, mut hi) = (lower, upper);
            while hi - lo > 1e-12 {
                let mid = 0.5 * (lo + hi);
                if mid <= lo || mid >= hi {
                    break; // interval at floating-point resolution
                }
                if sturm_count(t, mid) <= idx {
                    lo = mid;
                } else {
                    hi = mid;
                }
            }
            0.5 * (lo + hi)
        })
        .collect()
}

/// Smallest interior-point count whose step obeys the oscillation guard
/// h <= eps/8 on the truncated domain.
pub fn suggested_grid(p: &PotentialModel, eps: f64, e_max: f64) -> Result<usize> {
    let (a, b) = truncation_domain(p, e_max, 10.0)?;
    let n = ((b - a) * 8.0 / eps).ceil() as usize;
    Ok(n.max(299))
}

/// Eigenvalues below E_max, Richardson-extrapolated over the nested grids
/// n, 2n+1, 4n+3 (same interval, step halved twice). Each halving feeds
/// the fourth-order combination (4 fine - coarse)/3; the pair of those
/// feeds (16 finer - coarser)/15, eliminating the h^2 and h^4 error terms
/// of the central-difference scheme. The residual column reports the raw
/// difference between the two finest grids.
pub fn reference_spectrum(
    p: &PotentialModel,
    eps: f64,
    e_max: f64,
    n: usize,
) -> Result<Spectrum> {
    if eps <= 0.0 {
        return Err(Error::EpsOutOfRange {
            eps,
            reason: "must be positive",
        });
    }
    let domain = truncation_domain(p, e_max, 10.0)?;
    let mut warnings = Vec::new();
    let h = (domain.1 - domain.0) / (n as f64 + 1.0);
    if h > eps / 8.0 {
        warnings.push(format!(
            "grid step h = {h:.3e} exceeds the resolution guard eps/8 = {:.3e}; \
             eigenvalues may be under-resolved",
            eps / 8.0
        ));
    }
    let grids = [n, 2 * n + 1, 4 * n + 3];
    let levels: Vec<Vec<f64>> = grids
        .iter()
        .map(|&m| {
            let t = discretize(p, eps, domain, m);
            eigenvalues_below(&t, e_max)
        })
        .collect();
    let k = levels.iter().map(Vec::len).min().unwrap_or(0);
    let rows = (0..k)
        .map(|i| {
            let (e0, e1, e2) = (levels[0][i], levels[1][i], levels[2][i]);
            let r1 = (4.0 * e1 - e0) / 3.0;
            let r2 = (4.0 * e2 - e1) / 3.0;
            SpectrumRow {
                n: i,
                energy: (16.0 * r2 - r1) / 15.0,
                method: MethodTag::Reference,
                residual: Some((e2 - e1).abs()),
                diagnostics: Vec::new(),
            }
        })
        .collect();
    let spectrum = Spectrum { rows, warnings };
    spectrum.validate()?;
    Ok(spectrum)
}

/// Eigenvector of T for an eigenvalue estimate `lambda`, by inverse
/// iteration with a partially pivoted tridiagonal solve. Normalized to
/// sup-norm 1, sign fixed so the largest-magnitude entry is positive.
pub fn eigenvector(t: &Tridiagonal, lambda: f64) -> Vec<f64> {
    let n = t.d.len();
    // Deterministic quasi-random start: avoids accidental orthogonality to
    // the target mode without depending on an RNG crate at runtime.
    let mut state = 0x2545f4914f6cdd1du64;
    let mut x: Vec<f64> = (0..n)
        .map(|_| {
            state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            ((state >> 11) as f64 / (1u64 << 53) as f64) * 2.0 - 1.0
        })
        .collect();
    for _ in 0..3 {
        x = solve_shifted(t, lambda, &x);
        let norm = x.iter().fold(0.0f64, |a, &v| a.max(v.abs()));
        if !(norm.is_finite() && norm > 0.0) {
            break;
        }
        for v in &mut x {
            *v /= norm;
        }
    }
    let (mut best, mut best_abs) = (0usize, 0.0f64);
    for (i, &v) in x.iter().enumerate() {
        if v.abs() > best_abs {
            best_abs = v.abs();
            best = i;
        }
    }
    if x[best] < 0.0 {
        for v in &mut x {
            *v = -*v;
        }
    }
    x
}

/// Solve (T - lambda I) y = rhs with partial pivoting. Row swaps introduce
/// a second superdiagonal (fill-in), tracked in `sup2`.
fn solve_shifted(t: &Tridiagonal, lambda: f64, rhs: &[f64]) -> Vec<f64> {
    let n = t.d.len();
    let mut diag: Vec<f64> = t.d.iter().map(|&d| d - lambda).collect();
    let mut sup1 = vec![0.0; n];
    let mut sup2 = vec![0.0; n];
    sup1[..n - 1].copy_from_slice(&t.e);
    let mut x = rhs.to_vec();
    for i in 0..n - 1 {
        let sub = t.e[i];
        if sub.abs() > diag[i].abs() {
            let r0 = (diag[i], sup1[i], sup2[i], x[i]);
            let r1 = (sub, diag[i + 1], sup1[i + 1], x[i + 1]);
            diag[i] = r1.0;
            sup1[i] = r1.1;
            sup2[i] = r1.2;
            x[i] = r1.3;
            diag[i + 1] = r0.1;
            sup1[i + 1] = r0.2;
            x[i + 1] = r0.3;
            let m = r0.0 / diag[i];
            diag[i + 1] -= m * sup1[i];
            sup1[i + 1] -= m * sup2[i];
            x[i + 1] -= m * x[i];
        } else {
            let piv = if diag[i] == 0.0 { 1e-300 } else { diag[i] };
            let m = sub / piv;
            diag[i + 1] -= m * sup1[i];
            sup1[i + 1] -= m * sup2[i];
            x[i + 1] -= m * x[i];
        }
    }
    for i in (0..n).rev() {
        let mut v = x[i];
        if i + 1 < n {
            v -= sup1[i] * x[i + 1];
        }
        if i + 2 < n {
            v -= sup2[i] * x[i + 2];
        }
        let piv = if diag[i] == 0.0 { 1e-300 } else { diag[i] };
        x[i] = v / piv;
    }
    x
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::potential::make_potential;

    #[test]
    fn truncation_domain_matches_level_sets() {
        let h = make_potential("harmonic").unwrap();
        let (a, b) = truncation_domain(&h, 1.0, 10.0).unwrap();
        let want = (11.0f64).sqrt();
        assert!((b - want).abs() < 1e-6 && (a + want).abs() < 1e-6);

        let c = make_potential("coshwell").unwrap();
        let (_, b) = truncation_domain(&c, 1.0, 10.0).unwrap();
        // 2 cosh(b) - 2 = 11, so b = acosh(6.5).
        assert!((b - 2.558978977028613).abs() < 1e-6, "b = {b:.12}");
        assert!(c.v(b) >= 11.0);

        let q = make_potential("quartic:0.1").unwrap();
        let (_, b) = truncation_domain(&q, 1.0, 10.0).unwrap();
        assert!((q.v(b) - 11.0).abs() < 1e-6, "V(b) = {}", q.v(b));
        assert!((b - 2.5727) .abs() < 1e-3);
    }

    #[test]
    fn discretize_small_example() {
        let p = make_potential("harmonic").unwrap();
        let t = discretize(&p, 1.0, (-1.0, 1.0), 3);
        assert_eq!(t.h, 0.5);
        assert_eq!(t.d, vec![8.25, 8.0, 8.25]);
        assert_eq!(t.e, vec![-4.0, -4.0]);
    }

    #[test]
    fn discretize_palindromic_for_even_potential() {
        let p = make_potential("quartic:0.2").unwrap();
        let t = discretize(&p, 0.3, (-2.0, 2.0), 41);
        for i in 0..t.d.len() {
            let j = t.d.len() - 1 - i;
            assert!((t.d[i] - t.d[j]).abs() < 1e-12);
        }
        let t2 = discretize(&p, 0.3, (-2.0, 2.0), 83);
        assert!((t2.h - t.h / 2.0).abs() < 1e-15);
    }

    #[test]
    fn sturm_count_diagonal_case() {
        let t = Tridiagonal {
            d: vec![1.0, 2.0, 3.0],
            e: vec![0.0, 0.0],
            h: 1.0,
            a: 0.0,
            b: 4.0,
        };
        assert_eq!(sturm_count(&t, 2.5), 2);
        assert_eq!(sturm_count(&t, 0.5), 0);
        assert_eq!(sturm_count(&t, -10.0), 0); // below Gershgorin range
        assert_eq!(sturm_count(&t, 100.0), 3); // above Gershgorin range
    }

    #[test]
    fn sturm_count_monotone_on_sample() {
        let p = make_potential("quartic:0.1").unwrap();
        let t = discretize(&p, 0.2, (-3.0, 3.0), 101);
        let mut prev = 0;
        for i in 0..40 {
            let lam = 0.05 * i as f64;
            let c = sturm_count(&t, lam);
            assert!(c >= prev, "count dropped at lambda = {lam}");
            prev = c;
        }
    }

    #[test]
    fn harmonic_reference_levels() {
        let p = make_potential("harmonic").unwrap();
        let n = suggested_grid(&p, 0.1, 1.05).unwrap();
        let s = reference_spectrum(&p, 0.1, 1.05, n).unwrap();
        assert_eq!(s.rows.len(), 5);
        assert!(s.warnings.is_empty());
        for row in &s.rows {
            let want = (2.0 * row.n as f64 + 1.0) * 0.1;
            assert!(
                (row.energy - want).abs() < 1e-7,
                "n={}: {} vs {want}",
                row.n,
                row.energy
            );
        }
    }

    #[test]
    fn ground_energy_scales_linearly_in_eps() {
        let p = make_potential("harmonic").unwrap();
        let e_at = |eps: f64| {
            let n = suggested_grid(&p, eps, 0.3).unwrap();
            reference_spectrum(&p, eps, 0.3, n).unwrap().rows[0].energy
        };
        let a = e_at(0.1);
        let b = e_at(0.05);
        assert!((a / b - 2.0).abs() < 1e-5, "ratio {}", a / b);
    }

    #[test]
    fn extrapolation_stable_under_refinement() {
        let p = make_potential("harmonic").unwrap();
        let n = suggested_grid(&p, 0.1, 0.75).unwrap();
        let s1 = reference_spectrum(&p, 0.1, 0.75, n).unwrap();
        let s2 = reference_spectrum(&p, 0.1, 0.75, 3 * n + 2).unwrap();
        assert_eq!(s1.rows.len(), s2.rows.len());
        for (a, b) in s1.rows.iter().zip(&s2.rows) {
            assert!(
                (a.energy - b.energy).abs() <= 1e-8,
                "n={}: {} vs {}",
                a.n,
                a.energy,
                b.energy
            );
        }
    }

    #[test]
    fn grid_halving_shrinks_error_by_four() {
        // Second-order scheme: consecutive-grid differences drop ~4x.
        let p = make_potential("quartic:0.1").unwrap();
        let domain = truncation_domain(&p, 0.6, 10.0).unwrap();
        let n = 801;
        let levels: Vec<Vec<f64>> = [n, 2 * n + 1, 4 * n + 3]
            .iter()
            .map(|&m| eigenvalues_below(&discretize(&p, 0.1, domain, m), 0.6))
            .collect();
        #[allow(clippy::needless_range_loop)]
        for i in 0..levels[2].len().min(levels[0].len()).min(levels[1].len()) {
            let d01 = (levels[1][i] - levels[0][i]).abs();
            let d12 = (levels[2][i] - levels[1][i]).abs();
            if d01 > 1e-10 {
                let ratio = d01 / d12;
                assert!(
                    (2.5..8.0).contains(&ratio),
                    "index {i}: ratio {ratio} (d01 {d01:e}, d12 {d12:e})"
                );
            }
        }
    }

    #[test]
    fn resolution_guard_warns_but_returns() {
        let p = make_potential("harmonic").unwrap();
        let s = reference_spectrum(&p, 0.05, 0.4, 299).unwrap();
        assert!(!s.warnings.is_empty(), "expected a resolution warning");
        assert!(!s.rows.is_empty());
    }

    #[test]
    fn eigenvector_sign_changes_match_index() {
        let p = make_potential("harmonic").unwrap();
        let domain = truncation_domain(&p, 0.8, 10.0).unwrap();
        let t = discretize(&p, 0.1, domain, 1201);
        let evs = eigenvalues_below(&t, 0.8);
        for (idx, &lam) in evs.iter().enumerate().take(4) {
            let x = eigenvector(&t, lam);
            let thresh = 1e-8;
            let mut changes = 0;
            let mut prev = 0.0f64;
            for &v in &x {
                if v.abs() < thresh {
                    continue;
                }
                if prev != 0.0 && v * prev < 0.0 {
                    changes += 1;
                }
                prev = v;
            }
            assert_eq!(changes, idx, "eigenvalue {lam}");
        }
    }
}
