//! Airy Ai and physicists' Hermite polynomials, implemented from scratch.
//!
//! Ai and Ai' come from the Maclaurin series for |x| <= 9 and the standard
//! large-|x| asymptotic expansions beyond. The series suffers catastrophic
//! cancellation for moderately large positive x (the two entire solutions
//! grow like e^{+zeta} while Ai decays like e^{-zeta}), so it is summed in
//! compensated double-double arithmetic; that keeps it accurate out past
//! |x| = 10, which in turn lets the switch point sit at 9 where the
//! asymptotic series has already bottomed out far below 1e-12.

use crate::num::dd::Dd;
use crate::{Error, Result};

/// Ai(0) = 3^{-2/3}/Gamma(2/3), split into double-double parts.
const C1: Dd = Dd {
    hi: 0.3550280538878172,
    lo: 2.05233632436212e-17,
};
/// -Ai'(0) = 3^{-1/3}/Gamma(1/3), split into double-double parts.
const C2: Dd = Dd {
    hi: 0.2588194037928068,
    lo: -2.522243111610832e-17,
};
const SQRT_PI: f64 = 1.772453850905516;

/// Series/asymptotics handoff; see module docs.
const SWITCH: f64 = 9.0;

/// Airy function of the first kind.
pub fn airy_ai(x: f64) -> f64 {
    airy_both(x).0
}

/// Derivative of the Airy function of the first kind.
pub fn airy_ai_prime(x: f64) -> f64 {
    airy_both(x).1
}

/// (Ai, Ai') in one pass; the series and asymptotic branches both produce
/// the pair at no extra cost.
pub fn airy_both(x: f64) -> (f64, f64) {
    if x.abs() <= SWITCH {
        ai_maclaurin(x)
    } else if x > 0.0 {
        ai_asymptotic_pos(x)
    } else {
        ai_asymptotic_neg(-x)
    }
}

/// Maclaurin branch. Ai = C1 f - C2 g where f, g are the two entire
/// solutions of y'' = x y with (f, f')(0) = (1, 0), (g, g')(0) = (0, 1).
/// Term recurrences (m = 0, 1, ...):
///   f:  a_{m+1} = a_m x^3 / ((3m+2)(3m+3)),  a_0 = 1
///   g:  b_{m+1} = b_m x^3 / ((3m+3)(3m+4)),  b_0 = x
///   f': t_1 = x^2/2, t_{m+1} = t_m x^3 / (3m(3m+2))
///   g': s_0 = 1,     s_{m+1} = s_m x^3 / ((3m+1)(3m+3))
fn ai_maclaurin(x: f64) -> (f64, f64) {
    let x3 = Dd::from(x).mul(Dd::from(x)).mul(Dd::from(x));
    let mut f = Dd::from(1.0);
    let mut g = Dd::from(x);
    let mut fp = Dd::ZERO;
    let mut gp = Dd::from(1.0);
    let mut a = Dd::from(1.0);
    let mut b = Dd::from(x);
    let mut t = Dd::ZERO;
    let mut s = Dd::from(1.0);
    for m in 0..200usize {
        let mf = m as f64;
        a = a.mul(x3).div_f64((3.0 * mf + 2.0) * (3.0 * mf + 3.0));
        f = f.add(a);
        b = b.mul(x3).div_f64((3.0 * mf + 3.0) * (3.0 * mf + 4.0));
        g = g.add(b);
        s = s.mul(x3).div_f64((3.0 * mf + 1.0) * (3.0 * mf + 3.0));
        gp = gp.add(s);
        if m == 0 {
            t = Dd::from(x).mul(Dd::from(x)).mul_f64(0.5);
        } else {
            t = t.mul(x3).div_f64(3.0 * mf * (3.0 * mf + 2.0));
        }
        fp = fp.add(t);
        let biggest = a.value().abs().max(b.value().abs()).max(t.value().abs());
        if biggest < 1e-40 * (1.0 + f.value().abs() + g.value().abs()) {
            break;
        }
    }
    let ai = C1.mul(f).sub(C2.mul(g)).value();
    let aip = C1.mul(fp).sub(C2.mul(gp)).value();
    (ai, aip)
}

/// u_k, v_k coefficient stream of the large-|x| expansions:
/// u_0 = 1, u_{k+1} = u_k (6k+1)(6k+3)(6k+5) / (216 (k+1)(2k+1)),
/// v_k = u_k (6k+1)/(1-6k).
struct UvStream {
    k: u32,
    u: f64,
}

impl UvStream {
    fn new() -> Self {
        UvStream { k: 0, u: 1.0 }
    }
    /// (u_k, v_k), then advance.
    fn next(&mut self) -> (f64, f64) {
        let k = self.k as f64;
        let v = if self.k == 0 {
            1.0
        } else {
            self.u * (6.0 * k + 1.0) / (1.0 - 6.0 * k)
        };
        let out = (self.u, v);
        self.u *= (6.0 * k + 1.0) * (6.0 * k + 3.0) * (6.0 * k + 5.0)
            / (216.0 * (k + 1.0) * (2.0 * k + 1.0));
        self.k += 1;
        out
    }
}

/// Decaying branch, x > SWITCH:
/// Ai ~ e^{-z}/(2 sqrt(pi) x^{1/4}) sum (-1)^k u_k z^{-k}, z = (2/3)x^{3/2}.
fn ai_asymptotic_pos(x: f64) -> (f64, f64) {
    let zeta = 2.0 / 3.0 * x.powf(1.5);
    let mut stream = UvStream::new();
    let mut pow = 1.0; // (-1)^k zeta^{-k}
    let mut su = 0.0;
    let mut sv = 0.0;
    let mut last = f64::INFINITY;
    for _ in 0..60 {
        let (u, v) = stream.next();
        let term = u * pow;
        if term.abs() >= last {
            break; // asymptotic series started diverging
        }
        last = term.abs();
        su += term;
        sv += v * pow;
        if term.abs() < 1e-18 * su.abs() {
            break;
        }
        pow = -pow / zeta;
    }
    let root4 = x.powf(0.25);
    let damp = (-zeta).exp() / (2.0 * SQRT_PI);
    (damp * su / root4, -damp * sv * root4)
}

/// Oscillatory branch, x < -SWITCH, evaluated at z = -x > 0:
/// with w = (2/3)z^{3/2} - pi/4,
/// Ai(-z)  ~ (cos w * Se + sin w * So) / (sqrt(pi) z^{1/4}),
/// Ai'(-z) ~ z^{1/4}/sqrt(pi) * (sin w * Pe - cos w * Po),
/// where Se/So (Pe/Po) collect the even/odd u_k (v_k) with alternating signs.
fn ai_asymptotic_neg(z: f64) -> (f64, f64) {
    let xi = 2.0 / 3.0 * z.powf(1.5);
    let w = xi - std::f64::consts::FRAC_PI_4;
    let (cw, sw) = (w.cos(), w.sin());
    let mut stream = UvStream::new();
    let mut pow = 1.0; // xi^{-k}
    let mut se = 0.0;
    let mut so = 0.0;
    let mut pe = 0.0;
    let mut po = 0.0;
    let mut last = f64::INFINITY;
    for k in 0..60u32 {
        let (u, v) = stream.next();
        let term = u * pow;
        if term.abs() >= last {
            break;
        }
        last = term.abs();
        // sign (-1)^{floor(k/2)}
        let sgn = if (k / 2) % 2 == 0 { 1.0 } else { -1.0 };
        if k % 2 == 0 {
            se += sgn * term;
            pe += sgn * v * pow;
        } else {
            so += sgn * term;
            po += sgn * v * pow;
        }
        if term.abs() < 1e-18 {
            break;
        }
        pow /= xi;
    }
    let root4 = z.powf(0.25);
    let ai = (cw * se + sw * so) / (SQRT_PI * root4);
    let aip = root4 / SQRT_PI * (sw * pe - cw * po);
    (ai, aip)
}

/// Physicists' Hermite polynomial H_n(t) by the three-term recurrence
/// H_{n+1} = 2t H_n - 2n H_{n-1}. Supported for n <= 60 (values stay well
/// inside f64 range there for the |t| <= 12 quadrature windows used here).
pub fn hermite(n: u32, t: f64) -> Result<f64> {
    if n > 60 {
        return Err(Error::HermiteRange(n));
    }
    let mut hm = 1.0; // H_0
    if n == 0 {
        return Ok(hm);
    }
    let mut h = 2.0 * t; // H_1
    for k in 1..n {
        let next = 2.0 * t * h - 2.0 * (k as f64) * hm;
        hm = h;
        h = next;
    }
    Ok(h)
}

/// The Gaussian-weighted norm: integral of e^{-t^2} H_n(t)^2 over the line,
/// equal to sqrt(pi) 2^n n!.
pub fn hermite_norm_sq(n: u32) -> Result<f64> {
    if n > 60 {
        return Err(Error::HermiteRange(n));
    }
    let mut v = SQRT_PI;
    for k in 1..=n {
        v *= 2.0 * (k as f64);
    }
    Ok(v)
}

#[cfg(test)]
mod tests {
    use super::*;

    // Reference values computed independently at 30+ digits.
    const AI_TABLE: &[(f64, f64, f64)] = &[
        (0.0, 0.355_028_053_887_817_2, -0.2588194037928068),
        (1.0, 0.13529241631288142, -0.159_147_441_296_793_2),
        (-1.0, 0.535_560_883_292_352_1, -0.010_160_567_116_645_21),
        (4.0, 9.515_638_512_048_018e-4, -1.958_640_950_204_179e-3),
        (-4.0, -0.070_265_532_949_289_51, -0.790_628_575_368_581_3),
        (6.0, 9.947_694_360_252_889e-6, -2.4765200397034955e-5),
        (-6.5, -0.2380203019971158, -0.6749524925132022),
        (8.0, 4.6922076160992316e-8, -1.3414392979067866e-7),
        (-8.0, -0.0527050503563862, 0.9355609381983066),
        (10.0, 1.1047532552898686e-10, -3.5206336767389236e-10),
        (-10.0, 0.0402412384864432, 0.996_265_044_132_79),
        (10.5, 2.2022745192834016e-11, -7.187696781451567e-11),
        (-10.5, -0.3119260350510506, 0.0909574873906817),
        (12.0, 1.3931846888753608e-13, -4.854_736_554_985_309e-13),
        (-12.0, -0.0665551750543731, 1.0231104533679707),
        (20.0, 1.6916728686705403e-27, -7.586391625748355e-27),
        (-20.0, -0.1764061270779847, 0.8928628567364712),
    ];

    #[test]
    fn airy_reference_values() {
        for &(x, ai, aip) in AI_TABLE {
            let (a, ap) = airy_both(x);
            let scale = ai.abs().max(1e-3);
            assert!(
                (a - ai).abs() / scale < 1e-10,
                "Ai({x}): got {a:e}, want {ai:e}"
            );
            let scale_p = aip.abs().max(1e-3);
            assert!(
                (ap - aip).abs() / scale_p < 1e-10,
                "Ai'({x}): got {ap:e}, want {aip:e}"
            );
        }
    }

    #[test]
    fn airy_branch_overlap_band() {
        // Both branches must agree through the handoff band [8, 10]; on the
        // negative side the comparison is against the oscillation envelope.
        let mut x = 8.0;
        while x <= 10.0 {
            let (s, sp) = ai_maclaurin(x);
            let (a, ap) = ai_asymptotic_pos(x);
            assert!((s - a).abs() <= 1e-9 * s.abs(), "Ai mismatch at {x}");
            assert!((sp - ap).abs() <= 1e-9 * sp.abs(), "Ai' mismatch at {x}");

            let (sn, snp) = ai_maclaurin(-x);
            let (an, anp) = ai_asymptotic_neg(x);
            let env = 1.0 / (SQRT_PI * x.powf(0.25));
            let env_p = x.powf(0.25) / SQRT_PI;
            assert!((sn - an).abs() <= 1e-9 * env, "Ai mismatch at {}", -x);
            assert!((snp - anp).abs() <= 1e-9 * env_p, "Ai' mismatch at {}", -x);
            x += 0.125;
        }
    }

    #[test]
    fn airy_ode_residual_five_point() {
        // Ai'' = x Ai, checked with the fourth-order second-difference.
        let h = 0.01;
        let mut x = -10.0;
        while x <= 10.0 {
            let f = |y: f64| airy_ai(y);
            let second = (-f(x + 2.0 * h) + 16.0 * f(x + h) - 30.0 * f(x)
                + 16.0 * f(x - h)
                - f(x - 2.0 * h))
                / (12.0 * h * h);
            let resid = (second - x * airy_ai(x)).abs();
            assert!(resid <= 1e-6, "ODE residual {resid:e} at x = {x}");
            x += 0.25;
        }
    }

    #[test]
    fn airy_derivative_consistency() {
        // Central difference of Ai matches Ai' to the FD truncation level.
        let h = 1e-4;
        for &x in &[-9.5, -7.0, -2.0, 0.0, 1.5, 5.0, 8.5, 9.5] {
            let fd = (airy_ai(x + h) - airy_ai(x - h)) / (2.0 * h);
            let scale = airy_ai_prime(x).abs().max(1e-6);
            assert!(
                (fd - airy_ai_prime(x)).abs() / scale < 1e-6,
                "Ai' mismatch at {x}"
            );
        }
    }

    #[test]
    fn airy_decay_and_oscillation() {
        // Monotone decay on x >= 1.
        let mut prev = airy_ai(1.0);
        let mut x = 1.25;
        while x <= 10.0 {
            let cur = airy_ai(x);
            assert!(cur < prev && cur > 0.0, "no decay at {x}");
            prev = cur;
            x += 0.25;
        }
        // At least one sign change per length-3 interval below -4.
        for k in 0..5 {
            let a = -4.0 - 3.0 * k as f64;
            let mut changes = 0;
            let mut last = airy_ai(a);
            for i in 1..=60 {
                let cur = airy_ai(a - 3.0 * i as f64 / 60.0);
                if cur * last < 0.0 {
                    changes += 1;
                }
                last = cur;
            }
            assert!(changes >= 1, "no oscillation in [{}, {}]", a - 3.0, a);
        }
    }

    #[test]
    fn hermite_values() {
        assert_eq!(hermite(0, 123.4).unwrap(), 1.0);
        assert_eq!(hermite(1, 0.7).unwrap(), 1.4);
        assert_eq!(hermite(2, 1.0).unwrap(), 2.0); // 4t^2 - 2
        assert_eq!(hermite(3, 0.0).unwrap(), 0.0); // odd polynomial
        assert_eq!(hermite(3, 1.0).unwrap(), -4.0); // 8t^3 - 12t
        assert_eq!(hermite(5, 1.0).unwrap(), -8.0);
        assert_eq!(hermite(10, 1.0).unwrap(), 8224.0);
        assert!(matches!(hermite(61, 0.0), Err(Error::HermiteRange(61))));
    }

    #[test]
    fn hermite_parity() {
        for n in 0..12u32 {
            for &t in &[0.3, 1.1, 2.7] {
                let a = hermite(n, t).unwrap();
                let b = hermite(n, -t).unwrap();
                let want = if n % 2 == 0 { b } else { -b };
                assert_eq!(a, want, "parity failure n={n} t={t}");
            }
        }
    }

    #[test]
    fn hermite_ode_exact_coefficients() {
        // H_n'' - 2t H_n' + 2n H_n = 0, verified on exact coefficient
        // vectors for n <= 5 (integer arithmetic, no rounding).
        for n in 0..=5usize {
            // Build coefficients by the recurrence.
            let mut prev = vec![1.0]; // H_0
            let mut cur = vec![0.0, 2.0]; // H_1
            if n == 0 {
                cur = prev.clone();
                prev = vec![];
            }
            for k in 1..n {
                let mut next = vec![0.0; cur.len() + 1];
                for (i, c) in cur.iter().enumerate() {
                    next[i + 1] += 2.0 * c;
                }
                for (i, c) in prev.iter().enumerate() {
                    next[i] -= 2.0 * (k as f64) * c;
                }
                prev = cur;
                cur = next;
            }
            let h = cur;
            // residual coefficients of H'' - 2t H' + 2n H
            let mut resid = vec![0.0; h.len()];
            for (i, c) in h.iter().enumerate() {
                if i >= 2 {
                    resid[i - 2] += (i as f64) * ((i - 1) as f64) * c;
                }
                resid[i] += -2.0 * (i as f64) * c + 2.0 * (n as f64) * c;
            }
            assert!(resid.iter().all(|&r| r == 0.0), "n={n}: {resid:?}");
        }
    }

    #[test]
    fn hermite_ode_fd_residual() {
        // FD residual of the defining ODE for larger n.
        let h = 1e-5;
        for n in 6..=20u32 {
            for &t in &[-2.3, -0.9, 0.4, 1.8] {
                let f = |y: f64| hermite(n, y).unwrap();
                let d1 = (f(t + h) - f(t - h)) / (2.0 * h);
                let d2 = (f(t + h) - 2.0 * f(t) + f(t - h)) / (h * h);
                let resid = d2 - 2.0 * t * d1 + 2.0 * (n as f64) * f(t);
                let scale = f(t).abs().max(d1.abs()).max(1.0);
                assert!(
                    resid.abs() <= 1e-6 * scale * (n as f64),
                    "n={n} t={t}: resid {resid:e} scale {scale:e}"
                );
            }
        }
    }

    #[test]
    fn hermite_norms() {
        let rt_pi = SQRT_PI;
        assert!((hermite_norm_sq(0).unwrap() - rt_pi).abs() < 1e-15);
        assert!((hermite_norm_sq(1).unwrap() - 2.0 * rt_pi).abs() < 1e-14);
        assert!((hermite_norm_sq(2).unwrap() - 8.0 * rt_pi).abs() < 1e-13);
        // ratio law: N_{n+1}/N_n = 2(n+1)
        for n in 0..20u32 {
            let r = hermite_norm_sq(n + 1).unwrap() / hermite_norm_sq(n).unwrap();
            assert!((r - 2.0 * (n as f64 + 1.0)).abs() < 1e-9 * r);
        }
    }
}
