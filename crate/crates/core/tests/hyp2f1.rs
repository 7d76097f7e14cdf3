mod common;

use common::*;
use periodlab::hyp2f1::{calf, f21, g21, laurent_f, period_matrix, HypParams};
use std::f64::consts::PI;

/// Coefficients of `b(c-b)ℱ(a, b, c; y)` in `(a, b, c-b)` up to total
/// degree `d`, by the discrete Cauchy formula on the torus of radius `r`.
fn torus_coefficients(y: f64, d: usize, n: usize, r: f64) -> Vec<(Vec<u32>, C)> {
    let roots: Vec<C> = (0..n).map(|k| C::from_polar(1.0, 2.0 * PI * k as f64 / n as f64)).collect();
    let mut vals = vec![C::new(0.0, 0.0); n * n * n];
    for p in 0..n {
        for q in 0..n {
            for t in 0..n {
                let (a, b, cb) = (roots[p] * r, roots[q] * r, roots[t] * r);
                let h = HypParams::new(a, b, b + cb, cr(y)).unwrap();
                vals[(p * n + q) * n + t] = b * cb * calf(&h).unwrap();
            }
        }
    }
    let mut out = Vec::new();
    for i in 0..=d {
        for j in 0..=d - i {
            for k in 0..=d - i - j {
                let mut acc = C::new(0.0, 0.0);
                for p in 0..n {
                    for q in 0..n {
                        for t in 0..n {
                            let phase = roots[(p * i + q * j + t * k) % n].conj();
                            acc += vals[(p * n + q) * n + t] * phase;
                        }
                    }
                }
                let scale = (n * n * n) as f64 * r.powi((i + j + k) as i32);
                out.push((vec![i as u32, j as u32, k as u32], acc / scale));
            }
        }
    }
    out
}

#[test]
fn laurent_matches_cauchy_torus() {
    let y = 0.35;
    let l = laurent_f(cr(y), 2).unwrap();
    let cleared = l.cleared().unwrap();
    let want = torus_coefficients(y, 2, 7, 0.1);
    let err = max_coeff_error(&cleared, &want);
    assert!(err <= 1e-6, "{err:e}");
}

#[test]
fn laurent_eval_near_origin() {
    let y = cr(-0.4);
    let l = laurent_f(y, 6).unwrap();
    let (a, b, c) = (cr(0.03), cr(0.02), cr(0.05));
    let want = calf(&HypParams::new(a, b, c, y).unwrap()).unwrap();
    let got = l.eval(a, b, c);
    assert!((got - want).norm() <= 1e-9 * want.norm(), "{got} {want}");
}

#[test]
fn known_closed_forms() {
    // 2F1(1, 1; 2; y) = -log(1-y)/y and 2F1(a, b; b; y) = (1-y)^{-a}
    let y = 0.6;
    let p = HypParams::real(1.0, 1.0, 2.0, y).unwrap();
    let v = f21(&p).unwrap();
    assert!((v.re + (1.0 - y).ln() / y).abs() < 1e-13);
    let p = HypParams::real(0.3, 0.45, 0.45, -0.7).unwrap();
    let v = f21(&p).unwrap();
    assert!((v.re - 1.7f64.powf(-0.3)).abs() < 1e-12, "{v}");
}

#[test]
fn zero_argument_and_genericity() {
    let p = HypParams::real(0.2, 0.3, 0.4, 0.0).unwrap();
    assert_eq!(f21(&p).unwrap(), cr(1.0));
    assert!(g21(&p).is_err());
    let p = HypParams::real(0.2, 0.3, 1.0, 0.3).unwrap();
    let e = period_matrix(&p).unwrap_err().to_string();
    assert!(e.contains("c ∈ ℤ violates genericity"), "{e}");
    assert!(HypParams::real(0.2, 0.3, 0.4, 1.5).is_err());
}
