//! Asymptotic eigenvalue solvers and the shared spectrum container.
//!
//! Three regimes:
//! * [`bohr_sommerfeld_spectrum`]: J(E_n) = (n + 1/2) eps, valid for E of
//!   order one; exact for the harmonic well where J = E/2.
//! * [`low_lying_spectrum`]: well-bottom (Weber) asymptotics
//!   E_n = (2n+1) eps sqrt(c2/2) plus an eps^{3/2} splitting correction
//!   whose slope [`melnikov_first_order`] vanishes by parity.
//! * [`intermediate_residual`]: the normalized Bohr-Sommerfeld defect that
//!   stays bounded on the bridge regime E in [c1 eps, c2]; measured by the
//!   study harness, not expanded symbolically.

use crate::action::{action_j, invert_action};
use crate::num::quad;
use crate::potential::PotentialModel;
use crate::specfun::{hermite, hermite_norm_sq};
use crate::{Error, Result};
use rayon::prelude::*;
use serde::Serialize;

/// Which solver produced a spectrum row.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum MethodTag {
    BohrSommerfeld,
    LowLying,
    Evans,
    Reference,
}

impl MethodTag {
    pub fn as_str(self) -> &'static str {
        match self {
            MethodTag::BohrSommerfeld => "bohr-sommerfeld",
            MethodTag::LowLying => "low-lying",
            MethodTag::Evans => "evans",
            MethodTag::Reference => "reference",
        }
    }
}

impl std::fmt::Display for MethodTag {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

/// One eigenvalue record. `residual` is a method-specific defect: the
/// quantization-condition mismatch for Bohr-Sommerfeld, the two-grid
/// difference for the reference solver, the bisection width for the Evans
/// scan; asymptotic closed forms leave it unset.
#[derive(Debug, Clone, Serialize)]
pub struct SpectrumRow {
    pub n: usize,
    pub energy: f64,
    pub method: MethodTag,
    pub residual: Option<f64>,
    #[serde(skip_serializing_if = "Vec::is_empty", default)]
    pub diagnostics: Vec<(String, String)>,
}

/// Ordered eigenvalue list of one method. Invariants (checked by
/// [`Spectrum::validate`]): energies strictly increasing, indices strictly
/// increasing and consecutive.
#[derive(Debug, Clone, Default, Serialize)]
pub struct Spectrum {
    pub rows: Vec<SpectrumRow>,
    #[serde(skip_serializing_if = "Vec::is_empty", default)]
    pub warnings: Vec<String>,
}

impl Spectrum {
    pub fn energies(&self) -> Vec<f64> {
        self.rows.iter().map(|r| r.energy).collect()
    }

    pub fn validate(&self) -> Result<()> {
        for w in self.rows.windows(2) {
            if w[1].energy <= w[0].energy {
                return Err(Error::Validation(format!(
                    "energies not strictly increasing: E_{} = {} after E_{} = {}",
                    w[1].n, w[1].energy, w[0].n, w[0].energy
                )));
            }
            if w[1].n != w[0].n + 1 {
                return Err(Error::Validation(format!(
                    "index gap: n = {} follows n = {}",
                    w[1].n, w[0].n
                )));
            }
        }
        for r in &self.rows {
            if !(r.energy > 0.0 && r.energy.is_finite()) {
                return Err(Error::Validation(format!(
                    "nonpositive or non-finite energy at n = {}: {}",
                    r.n, r.energy
                )));
            }
        }
        Ok(())
    }
}

/// All E_n with J(E_n) = (n + 1/2) eps <= J(E_max), by inverting the action.
/// The residual re-evaluates |J(E_n) - (n + 1/2) eps| as an independent
/// defect of the returned energy.
pub fn bohr_sommerfeld_spectrum(p: &PotentialModel, eps: f64, e_max: f64) -> Result<Spectrum> {
    if eps <= 0.0 {
        return Err(Error::EpsOutOfRange {
            eps,
            reason: "must be positive",
        });
    }
    if e_max <= 0.0 {
        return Err(Error::EnergyNotPositive(e_max));
    }
    let j_max = action_j(p, e_max)?;
    let count = ((j_max / eps - 0.5).floor() as i64 + 1).max(0) as usize;
    let rows: Result<Vec<SpectrumRow>> = (0..count)
        .into_par_iter()
        .map(|n| {
            let target = (n as f64 + 0.5) * eps;
            let energy = invert_action(p, target)?;
            let resid = (action_j(p, energy)? - target).abs();
            Ok(SpectrumRow {
                n,
                energy,
                method: MethodTag::BohrSommerfeld,
                residual: Some(resid),
                diagnostics: Vec::new(),
            })
        })
        .collect();
    let spectrum = Spectrum {
        rows: rows?,
        warnings: Vec::new(),
    };
    spectrum.validate()?;
    Ok(spectrum)
}

/// Weber-regime closed form for the lowest levels:
/// E_n = (2n+1) eps sqrt(c2/2) + eps^{3/2} melnikov sqrt(c2/2).
/// No defect is computable without a reference solve, so residual is unset.
pub fn low_lying_spectrum(p: &PotentialModel, eps: f64, n_max: usize) -> Result<Spectrum> {
    if eps <= 0.0 {
        return Err(Error::EpsOutOfRange {
            eps,
            reason: "must be positive",
        });
    }
    let c2 = p.c2();
    if !(c2 > 0.0) {
        return Err(Error::Validation(format!(
            "V''(0) = {c2} must be positive for the low-lying expansion"
        )));
    }
    let freq = (c2 / 2.0).sqrt();
    let mut rows = Vec::with_capacity(n_max + 1);
    for n in 0..=n_max {
        let slope = melnikov_first_order(p, n as u32)?;
        let energy = (2.0 * n as f64 + 1.0) * eps * freq + eps.powf(1.5) * slope * freq;
        rows.push(SpectrumRow {
            n,
            energy,
            method: MethodTag::LowLying,
            residual: None,
            diagnostics: Vec::new(),
        });
    }
    let spectrum = Spectrum {
        rows,
        warnings: Vec::new(),
    };
    spectrum.validate()?;
    Ok(spectrum)
}

/// Slope of the eps^{1/2}-correction to the n-th low-lying level: the
/// splitting integral
///   [ integral e^{-t^2} H_n(t)^2 t^3 R2(0) dt ] / (sqrt(pi) 2^n n!),
/// with R2(0) = V'''(0)/(3 c2) the cubic coefficient of the potential
/// rescaled to curvature 2. The weight t^3 against the even Gaussian
/// density makes this vanish identically; it is evaluated by quadrature
/// anyway so the cancellation is demonstrated, not assumed.
pub fn melnikov_first_order(p: &PotentialModel, n: u32) -> Result<f64> {
    let c2 = p.c2();
    if !(c2 > 0.0) {
        return Err(Error::Validation(format!(
            "V''(0) = {c2} must be positive for the splitting integral"
        )));
    }
    let r2_at_zero = p.v3(0.0) / (3.0 * c2);
    let norm = hermite_norm_sq(n)?;
    let f = |t: f64| -> f64 {
        let h = hermite(n, t).unwrap_or(f64::NAN);
        (-t * t).exp() * h * h * t * t * t * r2_at_zero
    };
    let tol = 1e-13 * (1.0 + norm);
    let integral = quad::integrate(f, -12.0, 12.0, tol, 24)?;
    Ok(integral / norm)
}

/// Normalized Bohr-Sommerfeld defect for the intermediate regime:
/// [J(E) - (n + 1/2) eps] / [eps^{3/2} (eps/E)^{1/6}].
/// Boundedness of this quantity across eps is the testable content of the
/// bridge-regime expansion; the harness tracks it.
pub fn intermediate_residual(p: &PotentialModel, eps: f64, e: f64, n: usize) -> Result<f64> {
    if eps <= 0.0 {
        return Err(Error::EpsOutOfRange {
            eps,
            reason: "must be positive",
        });
    }
    if e <= 0.0 {
        return Err(Error::EnergyNotPositive(e));
    }
    let j = action_j(p, e)?;
    let defect = j - (n as f64 + 0.5) * eps;
    Ok(defect / (eps.powf(1.5) * (eps / e).powf(1.0 / 6.0)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::potential::make_potential;

    #[test]
    fn harmonic_bs_exact() {
        let p = make_potential("harmonic").unwrap();
        for eps in [0.2, 0.1, 0.05] {
            let s = bohr_sommerfeld_spectrum(&p, eps, 1.0).unwrap();
            for row in &s.rows {
                let want = (2.0 * row.n as f64 + 1.0) * eps;
                assert!(
                    (row.energy - want).abs() < 1e-10,
                    "eps={eps} n={}: {} vs {want}",
                    row.n,
                    row.energy
                );
                assert!(row.residual.unwrap() < 1e-11);
            }
        }
    }

    #[test]
    fn harmonic_bs_count() {
        let p = make_potential("harmonic").unwrap();
        let s = bohr_sommerfeld_spectrum(&p, 0.1, 1.0).unwrap();
        let es = s.energies();
        assert_eq!(es.len(), 5);
        for (i, want) in [0.1, 0.3, 0.5, 0.7, 0.9].iter().enumerate() {
            assert!((es[i] - want).abs() < 1e-10);
        }
        // Below the first level: empty.
        let s = bohr_sommerfeld_spectrum(&p, 0.1, 0.05).unwrap();
        assert!(s.rows.is_empty());
    }

    #[test]
    fn quartic_bs_count_matches_action_budget() {
        // J(1) = 0.4835...; with eps = 0.05 the largest n has
        // (n + 1/2) * 0.05 <= J(1), so n <= 9: ten levels.
        let p = make_potential("quartic:0.1").unwrap();
        let s = bohr_sommerfeld_spectrum(&p, 0.05, 1.0).unwrap();
        assert_eq!(s.rows.len(), 10, "energies: {:?}", s.energies());
        assert!(s.energies().iter().all(|&e| e <= 1.0 + 1e-9));
        s.validate().unwrap();
    }

    #[test]
    fn low_lying_harmonic() {
        let p = make_potential("harmonic").unwrap();
        let s = low_lying_spectrum(&p, 0.01, 2).unwrap();
        let es = s.energies();
        for (i, want) in [0.01, 0.03, 0.05].iter().enumerate() {
            assert!((es[i] - want).abs() < 1e-12, "n={i}: {}", es[i]);
        }
    }

    #[test]
    fn melnikov_vanishes_by_parity() {
        for spec in ["harmonic", "quartic:0.1", "coshwell", "asym:0.3"] {
            let p = make_potential(spec).unwrap();
            for n in 0..=5u32 {
                let m = melnikov_first_order(&p, n).unwrap();
                assert!(m.abs() <= 1e-12, "{spec} n={n}: {m:e}");
            }
        }
    }

    #[test]
    fn intermediate_residual_zero_for_harmonic() {
        let p = make_potential("harmonic").unwrap();
        for (eps, n) in [(0.05, 2usize), (0.02, 7), (0.01, 11)] {
            let e = (2.0 * n as f64 + 1.0) * eps;
            let r = intermediate_residual(&p, eps, e, n).unwrap();
            assert!(r.abs() < 1e-7, "eps={eps} n={n}: {r:e}");
        }
    }

    #[test]
    fn spectrum_validation_catches_disorder() {
        let mk = |n: usize, e: f64| SpectrumRow {
            n,
            energy: e,
            method: MethodTag::Reference,
            residual: None,
            diagnostics: Vec::new(),
        };
        let bad_order = Spectrum {
            rows: vec![mk(0, 0.3), mk(1, 0.2)],
            warnings: Vec::new(),
        };
        assert!(bad_order.validate().is_err());
        let gap = Spectrum {
            rows: vec![mk(0, 0.1), mk(2, 0.2)],
            warnings: Vec::new(),
        };
        assert!(gap.validate().is_err());
        let good = Spectrum {
            rows: vec![mk(3, 0.1), mk(4, 0.2)],
            warnings: Vec::new(),
        };
        good.validate().unwrap();
    }

    #[test]
    fn rejects_bad_inputs() {
        let p = make_potential("harmonic").unwrap();
        assert!(bohr_sommerfeld_spectrum(&p, -0.1, 1.0).is_err());
        assert!(bohr_sommerfeld_spectrum(&p, 0.1, -1.0).is_err());
        assert!(low_lying_spectrum(&p, 0.0, 3).is_err());
        assert!(intermediate_residual(&p, 0.01, -0.5, 3).is_err());
    }
}
