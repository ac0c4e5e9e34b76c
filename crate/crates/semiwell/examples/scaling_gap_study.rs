//! Two harness runs. The gap study checks the local spacing law
//! E_{n+1} - E_n ~ eps / J'(E) inside an energy window at one eps, plus
//! eigenvalue completeness by Sturm counts. The remainder study fits the
//! order of |J(E_n) - (n + 1/2) eps| across eps and reports the slope.

use semiwell::harness::{bs_remainder_study, gap_study};
use semiwell::potential::make_potential;

fn main() {
    let p = make_potential("quartic:0.1").unwrap();

    let gaps = gap_study(&p, 0.05, (0.3, 0.7)).unwrap();
    println!("gap study, quartic:0.1, eps = 0.05, window [0.3, 0.7]");
    println!("  passed: {}", gaps.passed);
    for note in &gaps.notes {
        println!("  note: {note}");
    }
    for row in gaps.rows.iter().take(4) {
        println!("  n = {:2}  normalized gap = {:.6}", row.n, row.observable);
    }
    println!("  ... ({} gaps total)\n", gaps.rows.len());

    let rem = bs_remainder_study(&p, &[0.1, 0.05, 0.025], (0.25, 0.55)).unwrap();
    println!("remainder study, quartic:0.1, n*eps in [0.25, 0.55]");
    println!(
        "  slope = {:.3} +- {:.3} (pass band: at least {})",
        rem.slope.unwrap(),
        rem.slope_stderr.unwrap(),
        rem.band.0
    );
    println!("  passed: {}", rem.passed);
    for note in &rem.notes {
        println!("  note: {note}");
    }
    for (eps, obs) in &rem.per_eps {
        println!("  eps = {eps:<7} max remainder = {obs:.3e}");
    }
}
