//! Eigenvalue detection by shooting: integrate the Prufer angle of the
//! growing solution from the left and the decaying solution from the
//! right, and compare angles at the well midpoint. The difference
//! D(E) = theta_u - theta_s decreases strictly in E and passes an
//! integer multiple of pi exactly at each eigenvalue; sin D(E) is the
//! sign-change detector built on that.

use semiwell::evans::{evans_delta, evans_mismatch, evans_spectrum, prufer_shoot, Side};
use semiwell::potential::make_potential;
use std::f64::consts::PI;

fn main() {
    let p = make_potential("quartic:0.1").unwrap();
    let eps = 0.05;

    println!("scan of D(E)/pi and sin D(E), quartic:0.1, eps = {eps}:");
    let mut e = 0.02;
    let mut prev_floor = i64::MAX;
    while e <= 0.42 {
        let d = evans_mismatch(&p, eps, e).unwrap();
        let s = evans_delta(&p, eps, e).unwrap();
        let fl = (d / PI).floor() as i64;
        let mark = if fl < prev_floor && prev_floor != i64::MAX {
            "  <- crossed a multiple of pi"
        } else {
            ""
        };
        prev_floor = fl;
        println!("  E = {e:.3}  D/pi = {:+8.4}  sin D = {s:+.4}{mark}", d / PI);
        e += 0.02;
    }

    let spec = evans_spectrum(&p, eps, 0.45).unwrap();
    println!("\ncrossings bracketed and bisected:");
    for row in &spec.rows {
        println!("  n = {}  E = {:.12}", row.n, row.energy);
    }

    // The raw angle traces behind one mismatch evaluation.
    let e = spec.rows[1].energy;
    let tu = prufer_shoot(&p, eps, e, Side::Unstable).unwrap();
    let ts = prufer_shoot(&p, eps, e, Side::Stable).unwrap();
    println!(
        "\nat E_1 = {e:.6}: theta_u({:.3}) = {:.6}, theta_s({:.3}) = {:.6}",
        tu.t_end, tu.theta_end, ts.t_end, ts.theta_end
    );
    println!(
        "(theta_u - theta_s)/pi = {:.9}, integer at an eigenvalue",
        (tu.theta_end - ts.theta_end) / PI
    );
}
