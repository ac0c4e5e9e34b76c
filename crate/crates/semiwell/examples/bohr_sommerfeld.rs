//! Quantization by the action rule J(E) = (n + 1/2) eps.
//!
//! For V = t^2 the rule is exact at every eps: J(E) = E/2, so
//! E_n = (2n + 1) eps with no error term at all. For other wells the
//! rule is asymptotic; compare against the reference solver to see the
//! remainder.

use semiwell::potential::make_potential;
use semiwell::quantize::bohr_sommerfeld_spectrum;
use semiwell::refsolver::{reference_spectrum, suggested_grid};

fn main() {
    let eps = 0.05;

    let harmonic = make_potential("harmonic").unwrap();
    let spec = bohr_sommerfeld_spectrum(&harmonic, eps, 0.5).unwrap();
    println!("harmonic, eps = {eps}: E_n vs (2n+1) eps");
    for row in &spec.rows {
        let exact = (2 * row.n + 1) as f64 * eps;
        println!(
            "  n = {:2}  E = {:.15}  error = {:+.2e}",
            row.n,
            row.energy,
            row.energy - exact
        );
    }

    let quartic = make_potential("quartic:0.1").unwrap();
    let spec = bohr_sommerfeld_spectrum(&quartic, eps, 0.5).unwrap();
    let grid = suggested_grid(&quartic, eps, 0.5).unwrap();
    let refs = reference_spectrum(&quartic, eps, 0.5, grid).unwrap();
    println!("\nquartic:0.1, eps = {eps}: quantization vs reference");
    for (row, r) in spec.rows.iter().zip(refs.rows.iter()) {
        println!(
            "  n = {:2}  E_bs = {:.10}  E_ref = {:.10}  delta = {:+.2e}",
            row.n,
            row.energy,
            r.energy,
            row.energy - r.energy
        );
    }
}
