//! Command-line front end. Thin argument handling over the library ops;
//! all output goes through [`crate::report`] so file formats stay frozen.
//!
//! Exit codes: 0 success, 1 data-level failure (unmatched comparison rows,
//! failed validation, strict-mode warnings), 2 usage errors, 3 method
//! domain errors (e.g. shooting with eps below its floor), 4 runtime
//! failures inside the numerics.

use crate::action::{action_j, invert_action};
use crate::evans::{evans_spectrum, prufer_shoot, Side, MIN_EPS};
use crate::harness::{bs_remainder_study, gap_study, intermediate_study, low_lying_study, ScalingReport};
use crate::potential::{make_potential, validate_single_well, PotentialModel};
use crate::quantize::{bohr_sommerfeld_spectrum, low_lying_spectrum, Spectrum};
use crate::refsolver::{reference_spectrum, suggested_grid};
use crate::report::{
    compare_csv, compare_json, eigenfunction_csv, eigenfunction_json, scaling_csv, scaling_json,
    spectrum_csv, spectrum_json, trace_csv, trace_json, ComparePair, Metadata,
};
use crate::wkbfun::build_eigenfunction;
use crate::Error;
use clap::{Args, Parser, Subcommand, ValueEnum};
use std::collections::{BTreeMap, HashMap};
use std::io::Write;
use std::path::{Path, PathBuf};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Method {
    Bs,
    Lowlying,
    Evans,
    Reference,
}

impl Method {
    fn as_str(self) -> &'static str {
        match self {
            Method::Bs => "bs",
            Method::Lowlying => "lowlying",
            Method::Evans => "evans",
            Method::Reference => "reference",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

#[derive(Parser)]
#[command(
    name = "semiwell",
    version,
    about = "Eigenvalues of eps^2 x'' = (V(t) - E) x for smooth single-well potentials"
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Compute a spectrum by one method (bs | lowlying | evans | reference)
    Spectrum(SpectrumArgs),
    /// Compute two spectra and pair them index-by-index
    Compare(CompareArgs),
    /// Run a scaling study and emit its report
    Study(StudyArgs),
    /// Assemble an approximate eigenfunction and export it
    Eigenfunction(EigenArgs),
    /// Check the single-well assumptions for a potential
    Validate(ValidateArgs),
}

#[derive(Args, Default)]
struct SpectrumArgs {
    /// Builtin name (harmonic, coshwell, quartic:A) or expr:...
    #[arg(long)]
    potential: Option<String>,
    #[arg(long)]
    eps: Option<f64>,
    #[arg(long, value_enum)]
    method: Option<Method>,
    /// Upper energy bound (exclusive with --nmax)
    #[arg(long)]
    emax: Option<f64>,
    /// Highest index to include (exclusive with --emax)
    #[arg(long)]
    nmax: Option<usize>,
    /// Write here instead of stdout
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, value_enum)]
    format: Option<Format>,
    /// key=value file presetting any of the long flags above
    #[arg(long)]
    config: Option<PathBuf>,
    /// Turn potential-validation warnings and spectrum warnings into exit 1
    #[arg(long)]
    strict: bool,
    /// Dump the Prufer angle trace at this energy instead of a spectrum
    /// (method must be evans)
    #[arg(long)]
    trace_at: Option<f64>,
    /// Side for --trace-at: u (left, growing) or s (right, decaying)
    #[arg(long, default_value = "u")]
    trace_side: String,
}

#[derive(Args, Default)]
struct CompareArgs {
    #[arg(long)]
    potential: Option<String>,
    #[arg(long)]
    eps: Option<f64>,
    /// Exactly two occurrences: the methods to pair
    #[arg(long = "method", value_enum)]
    methods: Vec<Method>,
    #[arg(long)]
    emax: Option<f64>,
    #[arg(long)]
    nmax: Option<usize>,
    /// Pairing tolerance on |E_a - E_b|; defaults to eps/2
    #[arg(long)]
    match_tol: Option<f64>,
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, value_enum)]
    format: Option<Format>,
    #[arg(long)]
    config: Option<PathBuf>,
}

#[derive(Args, Default)]
struct StudyArgs {
    /// bs-remainder | low-lying | gaps | intermediate
    #[arg(long)]
    tag: Option<String>,
    #[arg(long)]
    potential: Option<String>,
    /// Repeatable; defaults depend on the tag
    #[arg(long = "eps")]
    eps: Vec<f64>,
    #[arg(long)]
    window_lo: Option<f64>,
    #[arg(long)]
    window_hi: Option<f64>,
    #[arg(long)]
    nmax: Option<usize>,
    #[arg(long)]
    out: Option<PathBuf>,
    /// Defaults to json for studies
    #[arg(long, value_enum)]
    format: Option<Format>,
    #[arg(long)]
    config: Option<PathBuf>,
    /// Exit 1 when the study's pass criterion fails
    #[arg(long)]
    strict: bool,
}

#[derive(Args, Default)]
struct EigenArgs {
    #[arg(long)]
    potential: Option<String>,
    #[arg(long)]
    eps: Option<f64>,
    /// Eigenvalue index
    #[arg(long)]
    n: Option<usize>,
    /// Method supplying E_n; defaults to reference
    #[arg(long, value_enum)]
    method: Option<Method>,
    #[arg(long, default_value_t = 801)]
    grid_points: usize,
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, value_enum)]
    format: Option<Format>,
    #[arg(long)]
    config: Option<PathBuf>,
    /// Exit 1 when the seam mismatch exceeds its tolerance
    #[arg(long)]
    strict: bool,
}

#[derive(Args, Default)]
struct ValidateArgs {
    #[arg(long)]
    potential: Option<String>,
    /// Half-width of the sampling interval
    #[arg(long, default_value_t = 6.0)]
    half_width: f64,
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long)]
    config: Option<PathBuf>,
    /// Exit 1 on warnings, not just hard failures
    #[arg(long)]
    strict: bool,
}

/// Entry point used by the binary: arguments include argv[0].
pub fn run(args: Vec<String>) -> i32 {
    let mut out = std::io::stdout();
    let mut err = std::io::stderr();
    run_with_io(args, &mut out, &mut err)
}

/// Testable entry point: all stdout/stderr writes go to the given sinks.
pub fn run_with_io(args: Vec<String>, out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    init_thread_pool();
    let cli = match Cli::try_parse_from(&args) {
        Ok(c) => c,
        Err(e) => {
            // clap renders --help/--version as "errors" with success status.
            if e.use_stderr() {
                let _ = write!(err, "{e}");
                return 2;
            }
            let _ = write!(out, "{e}");
            return 0;
        }
    };
    let result = match cli.cmd {
        Cmd::Spectrum(a) => cmd_spectrum(a, out, err),
        Cmd::Compare(a) => cmd_compare(a, out, err),
        Cmd::Study(a) => cmd_study(a, out, err),
        Cmd::Eigenfunction(a) => cmd_eigenfunction(a, out, err),
        Cmd::Validate(a) => cmd_validate(a, out, err),
    };
    match result {
        Ok(code) => code,
        Err(fail) => {
            let _ = writeln!(err, "error: {}", fail.message);
            fail.code
        }
    }
}

/// Honor SEMISPEC_THREADS once per process; later calls are no-ops.
fn init_thread_pool() {
    if let Ok(v) = std::env::var("SEMISPEC_THREADS") {
        if let Ok(n) = v.trim().parse::<usize>() {
            if n >= 1 {
                let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
            }
        }
    }
}

struct Failure {
    code: i32,
    message: String,
}

fn usage(message: impl Into<String>) -> Failure {
    Failure {
        code: 2,
        message: message.into(),
    }
}

fn lib_failure(e: Error) -> Failure {
    let code = match &e {
        Error::Syntax { .. }
        | Error::UnknownIdentifier { .. }
        | Error::VariableExponent { .. }
        | Error::UnknownBuiltin(_)
        | Error::BadParameter(_)
        | Error::Usage(_) => 2,
        Error::EpsOutOfRange { .. } => 3,
        Error::Validation(_) => 1,
        _ => 4,
    };
    Failure {
        code,
        message: e.to_string(),
    }
}

type CmdResult = std::result::Result<i32, Failure>;

fn read_config(path: &Path) -> std::result::Result<HashMap<String, String>, Failure> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| usage(format!("cannot read config {}: {e}", path.display())))?;
    let mut map = HashMap::new();
    for (i, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let (k, v) = line
            .split_once('=')
            .ok_or_else(|| usage(format!("config line {} is not key=value: {line}", i + 1)))?;
        map.insert(k.trim().to_string(), v.trim().to_string());
    }
    Ok(map)
}

fn cfg_parse<T: std::str::FromStr>(
    cfg: &HashMap<String, String>,
    key: &str,
) -> std::result::Result<Option<T>, Failure> {
    match cfg.get(key) {
        None => Ok(None),
        Some(s) => s
            .parse::<T>()
            .map(Some)
            .map_err(|_| usage(format!("config value for {key} is invalid: {s}"))),
    }
}

fn cfg_method(cfg: &HashMap<String, String>, key: &str) -> std::result::Result<Option<Method>, Failure> {
    match cfg.get(key) {
        None => Ok(None),
        Some(s) => <Method as ValueEnum>::from_str(s, true)
            .map(Some)
            .map_err(|_| usage(format!("config value for {key} is not a method: {s}"))),
    }
}

fn cfg_format(cfg: &HashMap<String, String>, key: &str) -> std::result::Result<Option<Format>, Failure> {
    match cfg.get(key) {
        None => Ok(None),
        Some(s) => <Format as ValueEnum>::from_str(s, true)
            .map(Some)
            .map_err(|_| usage(format!("config value for {key} is not a format: {s}"))),
    }
}

fn load_potential(spec: &str) -> std::result::Result<PotentialModel, Failure> {
    make_potential(spec).map_err(|e| Failure {
        code: 2,
        message: e.to_string(),
    })
}

fn emit(out_path: Option<&Path>, sink: &mut dyn Write, content: &str) -> CmdResult {
    match out_path {
        Some(p) => std::fs::write(p, content).map_err(|e| Failure {
            code: 4,
            message: format!("cannot write {}: {e}", p.display()),
        })?,
        None => {
            let _ = sink.write_all(content.as_bytes());
        }
    }
    Ok(0)
}

fn json_text(v: &serde_json::Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("json renders");
    s.push('\n');
    s
}

/// Translate an index bound into the energy bound the index-free methods
/// need: J(E) = (n_max + 1) eps sits between levels n_max and n_max + 1.
fn emax_for_nmax(p: &PotentialModel, eps: f64, nmax: usize) -> std::result::Result<f64, Failure> {
    invert_action(p, (nmax as f64 + 1.0) * eps).map_err(lib_failure)
}

fn compute_spectrum(
    p: &PotentialModel,
    eps: f64,
    method: Method,
    emax: Option<f64>,
    nmax: Option<usize>,
) -> std::result::Result<Spectrum, Failure> {
    if emax.is_some() == nmax.is_some() {
        return Err(usage("exactly one of --emax and --nmax is required"));
    }
    if method == Method::Evans && eps < MIN_EPS {
        return Err(Failure {
            code: 3,
            message: format!("evans method requires eps >= {MIN_EPS}, got {eps}"),
        });
    }
    let mut spec = match method {
        Method::Lowlying => {
            let n_top = match nmax {
                Some(n) => n,
                None => {
                    let j = action_j(p, emax.unwrap()).map_err(lib_failure)?;
                    let f = (j / eps - 0.5).floor();
                    if f < 0.0 {
                        return Err(lib_failure(Error::Validation(
                            "no levels below --emax".into(),
                        )));
                    }
                    f as usize
                }
            };
            low_lying_spectrum(p, eps, n_top).map_err(lib_failure)?
        }
        _ => {
            let e_top = match emax {
                Some(e) => e,
                None => emax_for_nmax(p, eps, nmax.unwrap())?,
            };
            match method {
                Method::Bs => bohr_sommerfeld_spectrum(p, eps, e_top).map_err(lib_failure)?,
                Method::Evans => evans_spectrum(p, eps, e_top).map_err(lib_failure)?,
                Method::Reference => {
                    let grid = suggested_grid(p, eps, e_top).map_err(lib_failure)?;
                    reference_spectrum(p, eps, e_top, grid).map_err(lib_failure)?
                }
                Method::Lowlying => unreachable!(),
            }
        }
    };
    if let Some(n) = nmax {
        spec.rows.retain(|r| r.n <= n);
    }
    Ok(spec)
}

fn spectrum_metadata(p: &PotentialModel, eps: f64, method: Method) -> Metadata {
    let meta = Metadata::new(p.descriptor()).eps(eps).method(method.as_str());
    match method {
        Method::Bs => meta.tolerance("quantization_root_tol", 1e-13),
        Method::Lowlying => meta.tolerance("quantization_root_tol", 1e-13),
        Method::Evans => meta
            .tolerance("bisection_tol", 1e-10)
            .tolerance("ode_rtol", 1e-10),
        Method::Reference => meta.tolerance("extrapolation_order", 6.0),
    }
}

fn cmd_spectrum(mut a: SpectrumArgs, out: &mut dyn Write, err: &mut dyn Write) -> CmdResult {
    if let Some(cfg_path) = &a.config {
        let cfg = read_config(cfg_path)?;
        a.potential = a.potential.or(cfg.get("potential").cloned());
        a.eps = match a.eps {
            Some(v) => Some(v),
            None => cfg_parse(&cfg, "eps")?,
        };
        a.method = match a.method {
            Some(m) => Some(m),
            None => cfg_method(&cfg, "method")?,
        };
        a.emax = match a.emax {
            Some(v) => Some(v),
            None => cfg_parse(&cfg, "emax")?,
        };
        a.nmax = match a.nmax {
            Some(v) => Some(v),
            None => cfg_parse(&cfg, "nmax")?,
        };
        a.format = match a.format {
            Some(f) => Some(f),
            None => cfg_format(&cfg, "format")?,
        };
    }
    let pstr = a.potential.ok_or_else(|| usage("missing --potential"))?;
    let p = load_potential(&pstr)?;
    let eps = a.eps.ok_or_else(|| usage("missing --eps"))?;
    if !(eps > 0.0 && eps.is_finite()) {
        return Err(usage(format!("--eps must be positive, got {eps}")));
    }
    let method = a.method.ok_or_else(|| usage("missing --method"))?;

    let report = validate_single_well(&p, 6.0, 2000);
    for f in &report.failures {
        let _ = writeln!(err, "warning: {f}");
    }
    if a.strict && !report.passed() {
        return Err(Failure {
            code: 1,
            message: "potential fails single-well validation (strict mode)".into(),
        });
    }

    if let Some(e_trace) = a.trace_at {
        if method != Method::Evans {
            return Err(usage("--trace-at requires --method evans"));
        }
        let side = match a.trace_side.as_str() {
            "u" => Side::Unstable,
            "s" => Side::Stable,
            other => return Err(usage(format!("--trace-side must be u or s, got {other}"))),
        };
        let tr = prufer_shoot(&p, eps, e_trace, side).map_err(lib_failure)?;
        let meta = spectrum_metadata(&p, eps, method);
        let text = match a.format.unwrap_or(Format::Csv) {
            Format::Csv => trace_csv(&tr),
            Format::Json => json_text(&trace_json(&tr, &meta)),
        };
        return emit(a.out.as_deref(), out, &text);
    }

    let spec = compute_spectrum(&p, eps, method, a.emax, a.nmax)?;
    for w in &spec.warnings {
        let _ = writeln!(err, "warning: {w}");
    }
    let meta = spectrum_metadata(&p, eps, method);
    let text = match a.format.unwrap_or(Format::Csv) {
        Format::Csv => spectrum_csv(&spec),
        Format::Json => json_text(&spectrum_json(&spec, &meta)),
    };
    emit(a.out.as_deref(), out, &text)?;
    if a.strict && !spec.warnings.is_empty() {
        return Ok(1);
    }
    Ok(0)
}

fn cmd_compare(mut a: CompareArgs, out: &mut dyn Write, err: &mut dyn Write) -> CmdResult {
    if let Some(cfg_path) = &a.config {
        let cfg = read_config(cfg_path)?;
        a.potential = a.potential.or(cfg.get("potential").cloned());
        a.eps = match a.eps {
            Some(v) => Some(v),
            None => cfg_parse(&cfg, "eps")?,
        };
        a.emax = match a.emax {
            Some(v) => Some(v),
            None => cfg_parse(&cfg, "emax")?,
        };
        a.nmax = match a.nmax {
            Some(v) => Some(v),
            None => cfg_parse(&cfg, "nmax")?,
        };
    }
    if a.methods.len() != 2 {
        return Err(usage(format!(
            "compare needs exactly two --method flags, got {}",
            a.methods.len()
        )));
    }
    let pstr = a.potential.ok_or_else(|| usage("missing --potential"))?;
    let p = load_potential(&pstr)?;
    let eps = a.eps.ok_or_else(|| usage("missing --eps"))?;
    if !(eps > 0.0 && eps.is_finite()) {
        return Err(usage(format!("--eps must be positive, got {eps}")));
    }
    let (ma, mb) = (a.methods[0], a.methods[1]);
    let sa = compute_spectrum(&p, eps, ma, a.emax, a.nmax)?;
    let sb = compute_spectrum(&p, eps, mb, a.emax, a.nmax)?;
    for w in sa.warnings.iter().chain(sb.warnings.iter()) {
        let _ = writeln!(err, "warning: {w}");
    }
    let tol = a.match_tol.unwrap_or(0.5 * eps);

    let mut by_n: BTreeMap<usize, (Option<f64>, Option<f64>)> = BTreeMap::new();
    for r in &sa.rows {
        by_n.entry(r.n).or_default().0 = Some(r.energy);
    }
    for r in &sb.rows {
        by_n.entry(r.n).or_default().1 = Some(r.energy);
    }
    let pairs: Vec<ComparePair> = by_n
        .into_iter()
        .map(|(n, (ea, eb))| {
            let delta = match (ea, eb) {
                (Some(x), Some(y)) => Some((x - y).abs()),
                _ => None,
            };
            ComparePair {
                n,
                energy_a: ea,
                energy_b: eb,
                abs_delta: delta,
                matched: delta.map(|d| d <= tol).unwrap_or(false),
            }
        })
        .collect();

    let meta = Metadata::new(p.descriptor())
        .eps(eps)
        .method(&format!("{}-vs-{}", ma.as_str(), mb.as_str()))
        .tolerance("match_tol", tol);
    let text = match a.format.unwrap_or(Format::Csv) {
        Format::Csv => compare_csv(&pairs),
        Format::Json => json_text(&compare_json(&pairs, &meta)),
    };
    emit(a.out.as_deref(), out, &text)?;
    if pairs.iter().any(|p| !p.matched) {
        return Ok(1);
    }
    Ok(0)
}

fn cmd_study(mut a: StudyArgs, out: &mut dyn Write, _err: &mut dyn Write) -> CmdResult {
    if let Some(cfg_path) = &a.config {
        let cfg = read_config(cfg_path)?;
        a.tag = a.tag.or(cfg.get("tag").cloned());
        a.potential = a.potential.or(cfg.get("potential").cloned());
        a.nmax = match a.nmax {
            Some(v) => Some(v),
            None => cfg_parse(&cfg, "nmax")?,
        };
    }
    let tag = a.tag.ok_or_else(|| usage("missing --tag"))?;
    let pstr = a.potential.ok_or_else(|| usage("missing --potential"))?;
    let p = load_potential(&pstr)?;
    let report: ScalingReport = match tag.as_str() {
        "bs-remainder" => {
            let eps = if a.eps.is_empty() {
                vec![0.1, 0.05, 0.025, 0.0125]
            } else {
                a.eps.clone()
            };
            let window = (a.window_lo.unwrap_or(0.25), a.window_hi.unwrap_or(0.55));
            bs_remainder_study(&p, &eps, window).map_err(lib_failure)?
        }
        "low-lying" => {
            let eps = if a.eps.is_empty() {
                vec![0.02, 0.01, 0.005, 0.0025]
            } else {
                a.eps.clone()
            };
            low_lying_study(&p, &eps, a.nmax.unwrap_or(2)).map_err(lib_failure)?
        }
        "gaps" => {
            let eps = a.eps.first().copied().unwrap_or(0.05);
            let window = (a.window_lo.unwrap_or(0.3), a.window_hi.unwrap_or(0.7));
            gap_study(&p, eps, window).map_err(lib_failure)?
        }
        "intermediate" => {
            let eps = if a.eps.is_empty() {
                vec![0.01, 0.005, 0.0025]
            } else {
                a.eps.clone()
            };
            intermediate_study(&p, &eps).map_err(lib_failure)?
        }
        other => return Err(usage(format!("unknown study tag `{other}`"))),
    };
    let meta = Metadata::new(p.descriptor()).method(&tag);
    let text = match a.format.unwrap_or(Format::Json) {
        Format::Csv => scaling_csv(&report),
        Format::Json => json_text(&scaling_json(&report, &meta)),
    };
    emit(a.out.as_deref(), out, &text)?;
    if a.strict && !report.passed {
        return Ok(1);
    }
    Ok(0)
}

fn energy_of_level(
    p: &PotentialModel,
    eps: f64,
    method: Method,
    n: usize,
) -> std::result::Result<f64, Failure> {
    let spec = compute_spectrum(p, eps, method, None, Some(n))?;
    spec.rows
        .iter()
        .find(|r| r.n == n)
        .map(|r| r.energy)
        .ok_or_else(|| {
            lib_failure(Error::Validation(format!(
                "method {} did not produce level n = {n}",
                method.as_str()
            )))
        })
}

fn cmd_eigenfunction(mut a: EigenArgs, out: &mut dyn Write, err: &mut dyn Write) -> CmdResult {
    if let Some(cfg_path) = &a.config {
        let cfg = read_config(cfg_path)?;
        a.potential = a.potential.or(cfg.get("potential").cloned());
        a.eps = match a.eps {
            Some(v) => Some(v),
            None => cfg_parse(&cfg, "eps")?,
        };
        a.n = match a.n {
            Some(v) => Some(v),
            None => cfg_parse(&cfg, "n")?,
        };
        a.method = match a.method {
            Some(m) => Some(m),
            None => cfg_method(&cfg, "method")?,
        };
    }
    let pstr = a.potential.ok_or_else(|| usage("missing --potential"))?;
    let p = load_potential(&pstr)?;
    let eps = a.eps.ok_or_else(|| usage("missing --eps"))?;
    if !(eps > 0.0 && eps.is_finite()) {
        return Err(usage(format!("--eps must be positive, got {eps}")));
    }
    let n = a.n.ok_or_else(|| usage("missing --n"))?;
    let method = a.method.unwrap_or(Method::Reference);
    let energy = energy_of_level(&p, eps, method, n)?;
    let f = build_eigenfunction(&p, eps, energy, a.grid_points).map_err(lib_failure)?;
    if !f.seam_ok {
        let _ = writeln!(
            err,
            "warning: seam mismatch {:.3} exceeds tolerance {:.3}; E = {energy} may be off quantization",
            f.seam_mismatch, f.seam_tol
        );
    }
    let meta = Metadata::new(p.descriptor())
        .eps(eps)
        .method(method.as_str())
        .tolerance("seam_tol", f.seam_tol);
    let text = match a.format.unwrap_or(Format::Csv) {
        Format::Csv => eigenfunction_csv(&f),
        Format::Json => json_text(&eigenfunction_json(&f, &meta)),
    };
    emit(a.out.as_deref(), out, &text)?;
    if a.strict && !f.seam_ok {
        return Ok(1);
    }
    Ok(0)
}

fn cmd_validate(mut a: ValidateArgs, out: &mut dyn Write, _err: &mut dyn Write) -> CmdResult {
    if let Some(cfg_path) = &a.config {
        let cfg = read_config(cfg_path)?;
        a.potential = a.potential.or(cfg.get("potential").cloned());
    }
    let pstr = a.potential.ok_or_else(|| usage("missing --potential"))?;
    let p = load_potential(&pstr)?;
    let report = validate_single_well(&p, a.half_width, 4000);
    let mut v = serde_json::to_value(&report).expect("report serializes");
    if let serde_json::Value::Object(m) = &mut v {
        m.insert(
            "version".into(),
            serde_json::Value::String(env!("CARGO_PKG_VERSION").into()),
        );
    }
    emit(a.out.as_deref(), out, &json_text(&v))?;
    if !report.passed() || (a.strict && !report.clean()) {
        return Ok(1);
    }
    Ok(0)
}
