//! Exercises the installed binary end to end: exit codes, file formats,
//! and the compare/validate data-level failure paths.

use std::process::Command;

fn semiwell(args: &[&str]) -> (i32, String, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_semiwell"))
        .args(args)
        .output()
        .expect("binary runs");
    (
        out.status.code().unwrap_or(-1),
        String::from_utf8_lossy(&out.stdout).into_owned(),
        String::from_utf8_lossy(&out.stderr).into_owned(),
    )
}

#[test]
fn spectrum_csv_schema_is_stable() {
    let (code, out, _) = semiwell(&[
        "spectrum",
        "--potential",
        "harmonic",
        "--eps",
        "0.1",
        "--method",
        "reference",
        "--emax",
        "0.55",
    ]);
    assert_eq!(code, 0);
    let mut lines = out.lines();
    assert_eq!(lines.next(), Some("n,energy,method,residual"));
    let first = lines.next().unwrap();
    assert!(first.starts_with("0,0.1000000"), "{first}");
    assert!(first.contains(",reference,"), "{first}");
    // No timestamps or locale decimals anywhere.
    assert!(!out.contains(';'));
    assert!(!out.to_lowercase().contains("time"));
}

#[test]
fn json_output_carries_metadata() {
    let (code, out, _) = semiwell(&[
        "spectrum",
        "--potential",
        "quartic:0.2",
        "--eps",
        "0.1",
        "--method",
        "bs",
        "--nmax",
        "3",
        "--format",
        "json",
    ]);
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    // Descriptors normalize to the paren form, which make_potential accepts back.
    assert_eq!(v["metadata"]["potential"], "quartic(0.2)");
    assert_eq!(v["metadata"]["eps"], 0.1);
    assert_eq!(v["metadata"]["method"], "bs");
    assert_eq!(v["rows"].as_array().unwrap().len(), 4);
    assert!(v["metadata"]["version"].is_string());
}

#[test]
fn usage_errors_exit_2() {
    let cases: &[&[&str]] = &[
        &["spectrum", "--potential", "harmonic", "--method", "bs", "--emax", "1"],
        &["spectrum", "--potential", "harmonic", "--eps", "0.1", "--method", "bs"],
        &["spectrum", "--potential", "nosuch", "--eps", "0.1", "--method", "bs", "--emax", "1"],
        &["spectrum", "--potential", "expr:t^", "--eps", "0.1", "--method", "bs", "--emax", "1"],
        &["compare", "--potential", "harmonic", "--eps", "0.1", "--method", "bs", "--emax", "1"],
        &["study", "--tag", "sideways", "--potential", "harmonic"],
        &["eigenfunction", "--potential", "harmonic", "--eps", "0.1"],
    ];
    for args in cases {
        let (code, _, err) = semiwell(args);
        assert_eq!(code, 2, "args {args:?} gave {code}: {err}");
    }
}

#[test]
fn shooting_eps_floor_exits_3() {
    let (code, _, err) = semiwell(&[
        "spectrum",
        "--potential",
        "harmonic",
        "--eps",
        "0.0001",
        "--method",
        "evans",
        "--emax",
        "0.01",
    ]);
    assert_eq!(code, 3, "{err}");
}

#[test]
fn compare_unmatched_exits_1() {
    let (code, out, _) = semiwell(&[
        "compare",
        "--potential",
        "quartic:0.1",
        "--eps",
        "0.1",
        "--method",
        "bs",
        "--method",
        "reference",
        "--emax",
        "0.6",
        "--match-tol",
        "1e-12",
    ]);
    assert_eq!(code, 1);
    assert!(out.lines().skip(1).all(|l| l.ends_with("false")), "{out}");
}

#[test]
fn validate_failure_exits_1_and_reports_json() {
    let (code, out, _) = semiwell(&["validate", "--potential", "expr:t^2 + 0.5*sin(t^3)"]);
    assert_eq!(code, 1);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["descriptor"], "t^2 + 0.5*sin(t^3)");
    assert!(!v["failures"].as_array().unwrap().is_empty() || !v["warnings"].as_array().unwrap().is_empty());
}

#[test]
fn eigenfunction_export_has_regions() {
    let (code, out, _) = semiwell(&[
        "eigenfunction",
        "--potential",
        "coshwell",
        "--eps",
        "0.1",
        "--n",
        "1",
        "--method",
        "bs",
    ]);
    assert_eq!(code, 0);
    assert!(out.starts_with("t,x,region\n"));
    for tag in [
        "forbidden-left",
        "airy-left",
        "allowed",
        "airy-right",
        "forbidden-right",
    ] {
        assert!(out.contains(tag), "missing {tag}");
    }
}

#[test]
fn study_csv_is_flat() {
    let (code, out, _) = semiwell(&[
        "study",
        "--tag",
        "gaps",
        "--potential",
        "harmonic",
        "--eps",
        "0.1",
        "--format",
        "csv",
    ]);
    assert_eq!(code, 0);
    let mut lines = out.lines();
    assert_eq!(lines.next(), Some("experiment,eps,n,observable"));
    for line in lines {
        assert_eq!(line.split(',').count(), 4, "{line}");
        assert!(line.starts_with("gaps,"), "{line}");
    }
}
