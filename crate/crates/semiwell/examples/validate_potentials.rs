//! Every solver in this crate assumes a smooth single well: V(0) = 0,
//! V'(0) = 0, V''(0) > 0, V' nonzero away from 0, and enough growth in
//! the tails. `validate_single_well` probes those assumptions numerically
//! and reports failures and softer warnings.

use semiwell::potential::{make_potential, validate_single_well};

fn main() {
    let cases = [
        "harmonic",
        "quartic:0.25",
        "coshwell",
        "expr:t^2/(1 + t^2)",      // bounded; tails flatten out
        "expr:t^2 + 0.5*sin(t^3)", // oscillating growth; V' changes sign
        "expr:t^4",                // flat at the origin, V''(0) = 0
    ];
    for desc in cases {
        let p = match make_potential(desc) {
            Ok(p) => p,
            Err(e) => {
                println!("{desc}\n  parse error: {e}\n");
                continue;
            }
        };
        let r = validate_single_well(&p, 6.0, 2000);
        let verdict = if r.passed() && r.clean() {
            "ok"
        } else if r.passed() {
            "ok with warnings"
        } else {
            "FAILED"
        };
        println!("{desc}\n  verdict: {verdict}");
        for f in &r.failures {
            println!("  failure: {f}");
        }
        for w in &r.warnings {
            println!("  warning: {w}");
        }
        println!();
    }
}
