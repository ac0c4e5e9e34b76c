//! Serialization of computed artifacts. CSV schemas are frozen: header
//! row, lowercase snake_case columns, `.` decimal, no locale. JSON mirrors
//! the CSV rows and adds a metadata object (potential descriptor, solver
//! parameters, crate version). No timestamps anywhere: output is a pure
//! function of the input data.

use crate::evans::PruferTrace;
use crate::harness::ScalingReport;
use crate::quantize::Spectrum;
use crate::wkbfun::Eigenfunction;
use serde::Serialize;
use serde_json::{json, Map, Value};
use std::collections::BTreeMap;
use std::fmt::Write as _;

/// Run metadata for JSON payloads. Kept out of the row data so the rows
/// stay schema-stable for plotting tools.
#[derive(Debug, Clone, Serialize)]
pub struct Metadata {
    pub potential: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub eps: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub method: Option<String>,
    #[serde(skip_serializing_if = "BTreeMap::is_empty")]
    pub tolerances: BTreeMap<String, f64>,
    pub version: String,
}

impl Metadata {
    pub fn new(potential: &str) -> Self {
        Metadata {
            potential: potential.to_string(),
            eps: None,
            method: None,
            tolerances: BTreeMap::new(),
            version: env!("CARGO_PKG_VERSION").to_string(),
        }
    }

    pub fn eps(mut self, eps: f64) -> Self {
        self.eps = Some(eps);
        self
    }

    pub fn method(mut self, method: &str) -> Self {
        self.method = Some(method.to_string());
        self
    }

    pub fn tolerance(mut self, name: &str, value: f64) -> Self {
        self.tolerances.insert(name.to_string(), value);
        self
    }
}

fn meta_value(meta: &Metadata) -> Value {
    serde_json::to_value(meta).expect("metadata serializes")
}

pub fn spectrum_csv(s: &Spectrum) -> String {
    let mut out = String::from("n,energy,method,residual\n");
    for r in &s.rows {
        let residual = r.residual.map(|v| v.to_string()).unwrap_or_default();
        let _ = writeln!(out, "{},{},{},{}", r.n, r.energy, r.method.as_str(), residual);
    }
    out
}

pub fn spectrum_json(s: &Spectrum, meta: &Metadata) -> Value {
    let rows: Vec<Value> = s
        .rows
        .iter()
        .map(|r| {
            json!({
                "n": r.n,
                "energy": r.energy,
                "method": r.method.as_str(),
                "residual": r.residual,
            })
        })
        .collect();
    json!({
        "metadata": meta_value(meta),
        "rows": rows,
        "warnings": s.warnings,
    })
}

pub fn eigenfunction_csv(f: &Eigenfunction) -> String {
    let mut out = String::from("t,x,region\n");
    for i in 0..f.grid.len() {
        let _ = writeln!(out, "{},{},{}", f.grid[i], f.values[i], f.regions[i]);
    }
    out
}

pub fn eigenfunction_json(f: &Eigenfunction, meta: &Metadata) -> Value {
    let rows: Vec<Value> = (0..f.grid.len())
        .map(|i| json!({"t": f.grid[i], "x": f.values[i], "region": f.regions[i].as_str()}))
        .collect();
    json!({
        "metadata": meta_value(meta),
        "energy": f.energy,
        "eps": f.eps,
        "index_estimate": f.index_estimate,
        "seam_mismatch": f.seam_mismatch,
        "seam_tol": f.seam_tol,
        "seam_ok": f.seam_ok,
        "rows": rows,
    })
}

pub fn trace_csv(tr: &PruferTrace) -> String {
    let mut out = String::from("t,theta\n");
    for &(t, theta) in &tr.samples {
        let _ = writeln!(out, "{t},{theta}");
    }
    out
}

pub fn trace_json(tr: &PruferTrace, meta: &Metadata) -> Value {
    let rows: Vec<Value> = tr
        .samples
        .iter()
        .map(|&(t, theta)| json!({"t": t, "theta": theta}))
        .collect();
    json!({
        "metadata": meta_value(meta),
        "t_start": tr.t_start,
        "t_end": tr.t_end,
        "theta_end": tr.theta_end,
        "winding": tr.winding,
        "steps": tr.steps,
        "err_est": tr.err_est,
        "rows": rows,
    })
}

pub fn scaling_csv(r: &ScalingReport) -> String {
    let mut out = String::from("experiment,eps,n,observable\n");
    for row in &r.rows {
        let _ = writeln!(out, "{},{},{},{}", r.experiment, row.eps, row.n, row.observable);
    }
    out
}

/// The full report with metadata folded in; the `slope` field is kept at
/// the top level for plotting pipelines.
pub fn scaling_json(r: &ScalingReport, meta: &Metadata) -> Value {
    let mut obj = match serde_json::to_value(r).expect("report serializes") {
        Value::Object(m) => m,
        _ => Map::new(),
    };
    obj.insert("metadata".to_string(), meta_value(meta));
    Value::Object(obj)
}

/// One row of a method-vs-method comparison. A side is `None` when that
/// method produced no eigenvalue matching the other's index.
#[derive(Debug, Clone, Serialize)]
pub struct ComparePair {
    pub n: usize,
    pub energy_a: Option<f64>,
    pub energy_b: Option<f64>,
    pub abs_delta: Option<f64>,
    pub matched: bool,
}

pub fn compare_csv(pairs: &[ComparePair]) -> String {
    let mut out = String::from("n,energy_a,energy_b,abs_delta,matched\n");
    for p in pairs {
        let fmt = |v: Option<f64>| v.map(|x| x.to_string()).unwrap_or_default();
        let _ = writeln!(
            out,
            "{},{},{},{},{}",
            p.n,
            fmt(p.energy_a),
            fmt(p.energy_b),
            fmt(p.abs_delta),
            p.matched
        );
    }
    out
}

pub fn compare_json(pairs: &[ComparePair], meta: &Metadata) -> Value {
    json!({
        "metadata": meta_value(meta),
        "rows": pairs,
        "all_matched": pairs.iter().all(|p| p.matched),
    })
}
