//! Single-well potentials: builtin families with closed-form derivatives,
//! arbitrary expression potentials with symbolic derivatives, and the
//! validation checks that the rest of the pipeline assumes.
//!
//! The model keeps evaluators for `V`, `V'`, `V''`, `V'''` because every
//! downstream stage needs some subset: quadrature needs `V`, turning-point
//! derivative formulas need `V'`, the second-order quantization correction
//! needs `V''`, the well-bottom cubic coefficient needs `V'''(0)`.

use crate::expr::{parse_expression, ExprAst};
use crate::{Error, Result};
use serde::Serialize;

#[derive(Debug, Clone)]
enum Kind {
    Harmonic,
    Quartic { a: f64 },
    Asym { b: f64 },
    CoshWell,
    Symbolic {
        v: ExprAst,
        d1: ExprAst,
        d2: ExprAst,
        d3: ExprAst,
    },
}

/// A potential with value and first three derivatives, plus the curvature
/// `c2 = V''(0)` that the low-lying formulas need. Immutable; share freely
/// across threads.
#[derive(Debug, Clone)]
pub struct PotentialModel {
    kind: Kind,
    descriptor: String,
    c2: f64,
}

impl PotentialModel {
    /// Potential value. For expression potentials a domain error during
    /// evaluation yields NaN; the numerics layer rejects non-finite values
    /// with context, and `validate_single_well` reports them with the
    /// witnessing `t`.
    pub fn v(&self, t: f64) -> f64 {
        match &self.kind {
            Kind::Harmonic => t * t,
            Kind::Quartic { a } => t * t * (1.0 + a * t * t),
            Kind::Asym { b } => t * t + b * t * t * t * (-t * t).exp(),
            Kind::CoshWell => 2.0 * ((t).cosh() - 1.0),
            Kind::Symbolic { v, .. } => v.evaluate(t).unwrap_or(f64::NAN),
        }
    }

    /// First derivative V'.
    pub fn v1(&self, t: f64) -> f64 {
        match &self.kind {
            Kind::Harmonic => 2.0 * t,
            Kind::Quartic { a } => 2.0 * t + 4.0 * a * t * t * t,
            Kind::Asym { b } => {
                let t2 = t * t;
                2.0 * t + b * t2 * (3.0 - 2.0 * t2) * (-t2).exp()
            }
            Kind::CoshWell => 2.0 * t.sinh(),
            Kind::Symbolic { d1, .. } => d1.evaluate(t).unwrap_or(f64::NAN),
        }
    }

    /// Second derivative V''.
    pub fn v2(&self, t: f64) -> f64 {
        match &self.kind {
            Kind::Harmonic => 2.0,
            Kind::Quartic { a } => 2.0 + 12.0 * a * t * t,
            Kind::Asym { b } => {
                let t2 = t * t;
                2.0 + b * t * (6.0 + t2 * (-14.0 + 4.0 * t2)) * (-t2).exp()
            }
            Kind::CoshWell => 2.0 * t.cosh(),
            Kind::Symbolic { d2, .. } => d2.evaluate(t).unwrap_or(f64::NAN),
        }
    }

    /// Third derivative V'''.
    pub fn v3(&self, t: f64) -> f64 {
        match &self.kind {
            Kind::Harmonic => 0.0,
            Kind::Quartic { a } => 24.0 * a * t,
            Kind::Asym { b } => {
                let t2 = t * t;
                b * (6.0 + t2 * (-54.0 + t2 * (48.0 - 8.0 * t2))) * (-t2).exp()
            }
            Kind::CoshWell => 2.0 * t.sinh(),
            Kind::Symbolic { d3, .. } => d3.evaluate(t).unwrap_or(f64::NAN),
        }
    }

    /// Curvature at the bottom, `V''(0)`. The harmonically-normalized wells
    /// have c2 = 2; low-lying formulas carry the general case through the
    /// frequency factor sqrt(c2/2).
    pub fn c2(&self) -> f64 {
        self.c2
    }

    /// Builtin name (with parameter) or the expression source text.
    pub fn descriptor(&self) -> &str {
        &self.descriptor
    }

    /// Construct from an already-parsed expression tree.
    pub fn from_ast(ast: ExprAst, source: &str) -> PotentialModel {
        let d1 = ast.differentiate();
        let d2 = d1.differentiate();
        let d3 = d2.differentiate();
        let c2 = d2.evaluate(0.0).unwrap_or(f64::NAN);
        PotentialModel {
            kind: Kind::Symbolic { v: ast, d1, d2, d3 },
            descriptor: source.to_string(),
            c2,
        }
    }
}

/// Build a potential from its command-line descriptor.
///
/// Accepted forms: `harmonic`, `coshwell`, `quartic:A` or `quartic(A)` with
/// `A >= 0`, `asym:B` or `asym(B)`, `expr:SOURCE`, or bare expression source
/// as a fallback when the name is not a builtin but parses as an expression.
pub fn make_potential(spec: &str) -> Result<PotentialModel> {
    let spec = spec.trim();
    if let Some(src) = spec.strip_prefix("expr:") {
        return Ok(PotentialModel::from_ast(parse_expression(src)?, src));
    }
    let (name, param) = split_descriptor(spec);
    match name {
        "harmonic" => {
            reject_param(name, param)?;
            Ok(PotentialModel {
                kind: Kind::Harmonic,
                descriptor: "harmonic".into(),
                c2: 2.0,
            })
        }
        "coshwell" => {
            reject_param(name, param)?;
            Ok(PotentialModel {
                kind: Kind::CoshWell,
                descriptor: "coshwell".into(),
                c2: 2.0,
            })
        }
        "quartic" => {
            let a = require_param(name, param)?;
            if a < 0.0 {
                return Err(Error::BadParameter(format!(
                    "quartic coefficient must be >= 0, got {a}"
                )));
            }
            Ok(PotentialModel {
                kind: Kind::Quartic { a },
                descriptor: format!("quartic({a})"),
                c2: 2.0,
            })
        }
        "asym" => {
            let b = require_param(name, param)?;
            Ok(PotentialModel {
                kind: Kind::Asym { b },
                descriptor: format!("asym({b})"),
                c2: 2.0,
            })
        }
        _ => {
            // Not a builtin; treat the whole descriptor as expression source.
            match parse_expression(spec) {
                Ok(ast) => Ok(PotentialModel::from_ast(ast, spec)),
                Err(Error::UnknownIdentifier { name, .. }) => Err(Error::UnknownBuiltin(name)),
                Err(e) => Err(e),
            }
        }
    }
}

fn split_descriptor(spec: &str) -> (&str, Option<&str>) {
    if let Some((name, rest)) = spec.split_once(':') {
        return (name, Some(rest));
    }
    if let Some(open) = spec.find('(') {
        if let Some(stripped) = spec[open + 1..].strip_suffix(')') {
            return (&spec[..open], Some(stripped));
        }
    }
    (spec, None)
}

fn reject_param(name: &str, param: Option<&str>) -> Result<()> {
    match param {
        None => Ok(()),
        Some(p) => Err(Error::BadParameter(format!(
            "builtin `{name}` takes no parameter, got `{p}`"
        ))),
    }
}

fn require_param(name: &str, param: Option<&str>) -> Result<f64> {
    let p = param.ok_or_else(|| {
        Error::BadParameter(format!("builtin `{name}` needs a parameter, e.g. `{name}:0.1`"))
    })?;
    p.trim()
        .parse::<f64>()
        .map_err(|_| Error::BadParameter(format!("cannot parse `{p}` as a number for `{name}`")))
}

/// The decay-rate integrand V^{-1/4} (V^{-1/4})'' whose integrability over
/// the tails guarantees solutions with prescribed decay at infinity.
/// Expanded: (5/16) V'^2 V^{-5/2} - (1/4) V'' V^{-3/2}.
pub fn phi_integrand(p: &PotentialModel, t: f64) -> f64 {
    let v = p.v(t);
    if !(v > 0.0) {
        return f64::NAN;
    }
    let v1 = p.v1(t);
    let v2 = p.v2(t);
    0.3125 * v1 * v1 * v.powf(-2.5) - 0.25 * v2 * v.powf(-1.5)
}

/// Outcome of the single-well checks. `failures` are hard violations of the
/// well assumptions; `warnings` are heuristics (tail-decay sampling) that do
/// not block computation.
#[derive(Debug, Clone, Serialize)]
pub struct ValidationReport {
    pub descriptor: String,
    pub zero_at_origin: bool,
    pub flat_at_origin: bool,
    pub convex_at_origin: bool,
    pub single_well: bool,
    pub finite_everywhere: bool,
    pub phi_tail_max_right: f64,
    pub phi_tail_max_left: f64,
    pub phi_decay_ok: bool,
    pub failures: Vec<String>,
    pub warnings: Vec<String>,
}

impl ValidationReport {
    /// True when all hard checks pass (warnings allowed).
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    /// True when hard checks pass and no warnings were raised.
    pub fn clean(&self) -> bool {
        self.failures.is_empty() && self.warnings.is_empty()
    }
}

/// Sample-based verification of the single-well assumptions:
///
/// * `V(0) = 0`, `V'(0) = 0`, `V''(0) > 0` (well bottom at the origin),
/// * `sign(V'(t)) = sign(t)` on a grid over `[-half_width, half_width]`
///   (exactly one critical point),
/// * finite values everywhere on the grid,
/// * decay of the tail integrand [`phi_integrand`] by at least 10x from
///   `|t| = 1` out to `|t| = half_width` (warning only; this is a sampled
///   heuristic for tail integrability, not a proof).
///
/// Report-only: never errors, every failed check carries the witnessing `t`.
pub fn validate_single_well(p: &PotentialModel, half_width: f64, samples: usize) -> ValidationReport {
    let samples = samples.max(100);
    let mut failures = Vec::new();
    let mut warnings = Vec::new();

    let v0 = p.v(0.0);
    let zero_at_origin = v0.abs() <= 1e-12;
    if !zero_at_origin {
        failures.push(format!("V(0) = {v0}, expected 0 (witness t = 0)"));
    }
    let v10 = p.v1(0.0);
    let flat_at_origin = v10.abs() <= 1e-10;
    if !flat_at_origin {
        failures.push(format!("V'(0) = {v10}, expected 0 (witness t = 0)"));
    }
    let c2 = p.v2(0.0);
    let convex_at_origin = c2 > 0.0;
    if !convex_at_origin {
        failures.push(format!("V''(0) = {c2}, expected > 0 (witness t = 0)"));
    }

    let mut single_well = true;
    let mut finite_everywhere = true;
    for i in 0..=samples {
        let t = -half_width + 2.0 * half_width * (i as f64) / (samples as f64);
        let v = p.v(t);
        let v1 = p.v1(t);
        if !v.is_finite() || !v1.is_finite() {
            if finite_everywhere {
                failures.push(format!("non-finite V or V' (witness t = {t})"));
            }
            finite_everywhere = false;
            continue;
        }
        // Skip a neighborhood of the bottom where V' legitimately vanishes.
        if t.abs() < 1e-6 {
            continue;
        }
        if v1 * t <= 0.0 && single_well {
            failures.push(format!(
                "sign(V') != sign(t): V'({t}) = {v1} (not a single well)"
            ));
            single_well = false;
        }
        if v < 0.0 && single_well {
            failures.push(format!("V({t}) = {v} < 0 (minimum not at origin)"));
            single_well = false;
        }
    }

    // Tail-decay heuristic. Compare |phi| near |t| = 1 against |t| near
    // half_width; integrable tails (algebraic, exponential growth of V)
    // decay fast, the b*sin(t^3) + t^2 family grows linearly.
    let (mut phi_tail_max_right, mut phi_tail_max_left) = (0.0f64, 0.0f64);
    let mut phi_decay_ok = true;
    if half_width > 2.0 {
        let n = samples.max(400);
        let mut head_max = 0.0f64; // |t| in [1, 1 + 0.1(T-1)]
        let mut tail_max = 0.0f64; // |t| in [T - 0.1(T-1), T]
        for i in 0..=n {
            let x = 1.0 + (half_width - 1.0) * (i as f64) / (n as f64);
            for t in [x, -x] {
                let g = phi_integrand(p, t).abs();
                if !g.is_finite() {
                    continue;
                }
                if t > 0.0 {
                    phi_tail_max_right = phi_tail_max_right.max(g);
                } else {
                    phi_tail_max_left = phi_tail_max_left.max(g);
                }
                let frac = (i as f64) / (n as f64);
                if frac <= 0.1 {
                    head_max = head_max.max(g);
                } else if frac >= 0.9 {
                    tail_max = tail_max.max(g);
                }
            }
        }
        if tail_max > 0.1 * head_max && head_max > 0.0 {
            phi_decay_ok = false;
            warnings.push(format!(
                "tail integrand decays too slowly: max {tail_max:.3e} near |t| = {half_width} \
                 vs {head_max:.3e} near |t| = 1 (needs 10x drop); \
                 decay-at-infinity assumption may fail"
            ));
        }
    }

    ValidationReport {
        descriptor: p.descriptor().to_string(),
        zero_at_origin,
        flat_at_origin,
        convex_at_origin,
        single_well,
        finite_everywhere,
        phi_tail_max_right,
        phi_tail_max_left,
        phi_decay_ok,
        failures,
        warnings,
    }
}
