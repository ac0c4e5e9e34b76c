//! Checks against values computed outside this crate: special-function
//! tables at 30 digits, closed forms, and a brute-force midpoint rule
//! for the action integral. Nothing here reuses the quadrature under test.

use semiwell::action::{action_derivative, action_j, invert_action};
use semiwell::potential::make_potential;
use semiwell::refsolver::{reference_spectrum, suggested_grid};
use semiwell::specfun::{airy_ai, airy_ai_prime, hermite, hermite_norm_sq};
use semiwell::turning::turning_points;

#[test]
fn airy_matches_30_digit_table() {
    let table = [
        (0.0, 0.355_028_053_887_817_2),
        (1.0, 0.135_292_416_312_881_41),
        (-1.0, 0.535_560_883_292_352_1),
        (2.5, 0.015_725_923_380_470_49),
        (5.0, 0.000_108_344_428_136_074_42),
        (-5.0, 0.350_761_009_024_114_33),
        (10.0, 1.104_753_255_289_868_6e-10),
        (-10.0, 0.040_241_238_486_443_19),
    ];
    for (x, want) in table {
        let got = airy_ai(x);
        assert!(
            (got - want).abs() <= 1e-12 * (1.0 + want.abs()),
            "Ai({x}) = {got}, table says {want}"
        );
    }
    let dtable = [
        (0.0, -0.258_819_403_792_806_8),
        (-3.0, 0.314_583_769_216_598_8),
        (5.0, -0.000_247_413_890_868_462_5),
    ];
    for (x, want) in dtable {
        let got = airy_ai_prime(x);
        assert!(
            (got - want).abs() <= 1e-12 * (1.0 + want.abs()),
            "Ai'({x}) = {got}, table says {want}"
        );
    }
}

#[test]
fn hermite_norms_match_closed_form() {
    // integral of e^{-t^2} H_n^2 = sqrt(pi) 2^n n!
    let mut want = std::f64::consts::PI.sqrt();
    for n in 0..=10u32 {
        let got = hermite_norm_sq(n).unwrap();
        assert!(
            (got - want).abs() <= 1e-13 * want,
            "norm^2({n}) = {got}, closed form {want}"
        );
        want *= 2.0 * (n as f64 + 1.0);
    }
}

#[test]
fn hermite_values_match_explicit_polynomials() {
    for &t in &[-2.3, -0.7, 0.0, 0.4, 1.9] {
        assert_eq!(hermite(0, t).unwrap(), 1.0);
        assert!((hermite(1, t).unwrap() - 2.0 * t).abs() < 1e-12);
        assert!((hermite(2, t).unwrap() - (4.0 * t * t - 2.0)).abs() < 1e-11);
        let h3 = 8.0 * t * t * t - 12.0 * t;
        assert!((hermite(3, t).unwrap() - h3).abs() < 1e-10);
        let h4 = 16.0 * t.powi(4) - 48.0 * t * t + 12.0;
        assert!((hermite(4, t).unwrap() - h4).abs() < 1e-10);
    }
}

#[test]
fn turning_points_match_closed_forms() {
    let h = make_potential("harmonic").unwrap();
    let q = make_potential("quartic:0.1").unwrap();
    let c = make_potential("coshwell").unwrap();
    for e in [0.1, 0.35, 0.5, 0.9] {
        let (tm, tp) = turning_points(&h, e).unwrap();
        assert!((tp - e.sqrt()).abs() < 1e-12, "harmonic t+ at E = {e}");
        assert!((tm + e.sqrt()).abs() < 1e-12);

        // coshwell is V = 2(cosh t - 1), so cosh t+ = 1 + E/2
        let (tm, tp) = turning_points(&c, e).unwrap();
        let want = (1.0 + e / 2.0).acosh();
        assert!((tp - want).abs() < 1e-12, "coshwell t+ at E = {e}");
        assert!((tm + want).abs() < 1e-12);
    }
    // quartic: t+^2 solves a u^2 + u - E = 0
    let (tm, tp) = turning_points(&q, 0.5).unwrap();
    assert!((tp - 0.690_815_152_592_689_7).abs() < 1e-12);
    assert!((tm + 0.690_815_152_592_689_7).abs() < 1e-12);
}

#[test]
fn action_matches_30_digit_quadrature() {
    let q = make_potential("quartic:0.1").unwrap();
    let j = action_j(&q, 0.5).unwrap();
    assert!(
        (j - 0.245_622_839_023_211_05).abs() < 1e-12,
        "quartic J(0.5) = {j}"
    );
    let c = make_potential("coshwell").unwrap();
    let j = action_j(&c, 0.3).unwrap();
    assert!(
        (j - 0.148_631_823_390_895_12).abs() < 1e-12,
        "coshwell J(0.3) = {j}"
    );
    // Exact everywhere for the harmonic well.
    let h = make_potential("harmonic").unwrap();
    for e in [0.05, 0.3, 0.85] {
        assert!((action_j(&h, e).unwrap() - e / 2.0).abs() < 1e-13);
    }
}

#[test]
fn action_agrees_with_blind_midpoint_rule() {
    // A million flat panels know nothing about endpoint singularities;
    // the h^{3/2} midpoint error for a sqrt edge still lands near 1e-9.
    let p = make_potential("coshwell").unwrap();
    let e = 0.45;
    let (tm, tp) = turning_points(&p, e).unwrap();
    let n = 1_000_000usize;
    let h = (tp - tm) / n as f64;
    let mut sum = 0.0;
    for i in 0..n {
        let t = tm + (i as f64 + 0.5) * h;
        sum += (e - p.v(t)).max(0.0).sqrt();
    }
    let oracle = sum * h / std::f64::consts::PI;
    let j = action_j(&p, e).unwrap();
    assert!(
        (j - oracle).abs() < 2e-9,
        "J = {j}, midpoint oracle = {oracle}, diff = {:.2e}",
        (j - oracle).abs()
    );
}

#[test]
fn action_derivative_agrees_with_finite_difference() {
    let p = make_potential("quartic:0.2").unwrap();
    for e in [0.2, 0.5, 0.8] {
        let h = 1e-5 * e;
        let fd = (action_j(&p, e + h).unwrap() - action_j(&p, e - h).unwrap()) / (2.0 * h);
        let dj = action_derivative(&p, e).unwrap();
        assert!(
            (dj - fd).abs() < 1e-6 * dj.abs(),
            "J'({e}) = {dj} vs FD {fd}"
        );
    }
}

#[test]
fn action_inversion_round_trips() {
    let p = make_potential("coshwell").unwrap();
    for e in [0.05, 0.2, 0.6, 0.95] {
        let j = action_j(&p, e).unwrap();
        let back = invert_action(&p, j).unwrap();
        assert!((back - e).abs() < 1e-9 * e, "round trip at E = {e}: {back}");
    }
}

#[test]
fn reference_solver_hits_exact_harmonic_levels() {
    let p = make_potential("harmonic").unwrap();
    let eps = 0.1;
    let grid = suggested_grid(&p, eps, 0.75).unwrap();
    let spec = reference_spectrum(&p, eps, 0.75, grid).unwrap();
    assert_eq!(spec.rows.len(), 4);
    for row in &spec.rows {
        let want = (2 * row.n + 1) as f64 * eps;
        assert!(
            (row.energy - want).abs() < 1e-9,
            "E_{} = {}, exact {want}",
            row.n,
            row.energy
        );
    }
}
