//! Oracles shared by the integration tests, written independently of the
//! library's own gamma and zeta code.

#![allow(dead_code)]

use periodlab::ncalg::{MultiSeries, NCSeries, Word};
use periodlab::ring::q;
use periodlab::{Complex64, Q};
use std::f64::consts::PI;

pub type C = Complex64;

pub fn cr(x: f64) -> C {
    C::new(x, 0.0)
}

/// ζ(n) for 2 ≤ n ≤ 7: even values from powers of π, odd ones as literals.
pub fn zeta_oracle(n: usize) -> f64 {
    match n {
        2 => PI.powi(2) / 6.0,
        3 => 1.202_056_903_159_594_3,
        4 => PI.powi(4) / 90.0,
        5 => 1.036_927_755_143_37,
        6 => PI.powi(6) / 945.0,
        7 => 1.008_349_277_381_922_8,
        _ => panic!("no oracle for zeta({n})"),
    }
}

/// log Γ(x) for real x > 0 by upward shift and the Stirling series.
pub fn ln_gamma_oracle(x: f64) -> f64 {
    assert!(x > 0.0);
    let mut x = x;
    let mut shift = 0.0;
    while x < 20.0 {
        shift -= x.ln();
        x += 1.0;
    }
    let x2 = x * x;
    let series = 1.0 / (12.0 * x) - 1.0 / (360.0 * x * x2) + 1.0 / (1260.0 * x * x2 * x2)
        - 1.0 / (1680.0 * x * x2 * x2 * x2);
    shift + (x - 0.5) * x.ln() - x + 0.5 * (2.0 * PI).ln() + series
}

/// Γ(x) for real x ∉ ℤ≤0, with reflection below 0.
pub fn gamma_oracle(x: f64) -> f64 {
    if x > 0.0 {
        ln_gamma_oracle(x).exp()
    } else {
        PI / ((PI * x).sin() * gamma_oracle(1.0 - x))
    }
}

pub fn beta_oracle(a: f64, b: f64) -> f64 {
    gamma_oracle(a) * gamma_oracle(b) / gamma_oracle(a + b)
}

/// Γ(a)Γ(b)Γ(1-a-b)/(Γ(a+b)Γ(1-a)Γ(1-b)).
pub fn sv_beta_oracle(a: f64, b: f64) -> f64 {
    gamma_oracle(a) * gamma_oracle(b) * gamma_oracle(1.0 - a - b)
        / (gamma_oracle(a + b) * gamma_oracle(1.0 - a) * gamma_oracle(1.0 - b))
}

/// Taylor coefficients of `s0 s1/(s0+s1) β(s0, s1)` to `degree`, from
/// `exp(Σ (-1)^{k-1} ζ(k)/k ((s0+s1)^k - s0^k - s1^k))` expanded with plain
/// dense arrays.
pub fn beta_expansion_oracle(degree: usize) -> Vec<Vec<f64>> {
    let d = degree;
    let mut log = vec![vec![0.0; d + 1]; d + 1];
    let binom = |n: usize, k: usize| -> f64 { (0..k).fold(1.0, |acc, i| acc * (n - i) as f64 / (i + 1) as f64) };
    for k in 2..=d {
        let sign = if k % 2 == 0 { -1.0 } else { 1.0 };
        let z = zeta_oracle(k) / k as f64 * sign;
        for i in 1..k {
            log[i][k - i] += z * binom(k, i);
        }
    }
    // exp by the recurrence on total degree: E = Σ log^m/m!
    let mut out = vec![vec![0.0; d + 1]; d + 1];
    out[0][0] = 1.0;
    let mut term = out.clone();
    for m in 1..=d / 2 {
        let mut next = vec![vec![0.0; d + 1]; d + 1];
        for i in 0..=d {
            for j in 0..=d - i {
                if term[i][j] == 0.0 {
                    continue;
                }
                for a in 0..=d - i - j {
                    for b in 0..=d - i - j - a {
                        next[i + a][j + b] += term[i][j] * log[a][b];
                    }
                }
            }
        }
        for i in 0..=d {
            for j in 0..=d - i {
                next[i][j] /= m as f64;
                out[i][j] += next[i][j];
            }
        }
        term = next;
    }
    out
}

/// Coefficients of degree ≤ 2 of `f` at 0 by Richardson-extrapolated
/// central differences, keyed by exponent vectors.
pub fn taylor_by_differences(nv: usize, h: f64, f: &dyn Fn(&[f64]) -> C) -> Vec<(Vec<u32>, C)> {
    let at = |pts: &[(usize, f64)]| {
        let mut x = vec![0.0; nv];
        for &(k, v) in pts {
            x[k] += v;
        }
        f(&x)
    };
    let f0 = at(&[]);
    let first = |k: usize, h: f64| (at(&[(k, h)]) - at(&[(k, -h)])) / (2.0 * h);
    let pure = |k: usize, h: f64| (at(&[(k, h)]) - 2.0 * f0 + at(&[(k, -h)])) / (2.0 * h * h);
    let mixed = |k: usize, l: usize, h: f64| {
        (at(&[(k, h), (l, h)]) - at(&[(k, h), (l, -h)]) - at(&[(k, -h), (l, h)]) + at(&[(k, -h), (l, -h)]))
            / (4.0 * h * h)
    };
    let rich = |g: &dyn Fn(f64) -> C| (4.0 * g(h / 2.0) - g(h)) / 3.0;
    let mut out = vec![(vec![0; nv], f0)];
    for k in 0..nv {
        let mut e = vec![0; nv];
        e[k] = 1;
        out.push((e, rich(&|h| first(k, h))));
    }
    for k in 0..nv {
        for l in k..nv {
            let mut e = vec![0; nv];
            e[k] += 1;
            e[l] += 1;
            let v = if k == l { rich(&|h| pure(k, h)) } else { rich(&|h| mixed(k, l, h)) };
            out.push((e, v));
        }
    }
    out
}

/// Largest coefficient error of `series` against `(exponents, value)` pairs.
pub fn max_coeff_error(series: &MultiSeries<C>, want: &[(Vec<u32>, C)]) -> f64 {
    want.iter().fold(0.0, |m, (e, v)| m.max((series.coeff(e) - v).norm()))
}

/// A deterministic Lie element of weight ≤ `w` with rational coefficients,
/// built from letters and nested commutators seeded by `seed`.
pub fn lie_element(alphabet: usize, w: usize, seed: &[i64]) -> NCSeries<Q> {
    let letter = |k: usize| NCSeries::<Q>::letter(alphabet, w, k).expect("letter");
    let bracket = |x: &NCSeries<Q>, y: &NCSeries<Q>| x.mul(y).unwrap().sub(&y.mul(x).unwrap()).unwrap();
    let mut acc = NCSeries::<Q>::zero(alphabet, w);
    let mut gens: Vec<NCSeries<Q>> = (0..alphabet).map(letter).collect();
    for (t, &c) in seed.iter().enumerate() {
        let k = t % gens.len();
        acc = acc.add(&gens[k].scale(&q(c, 1 + t as i64))).unwrap();
        if t + 1 < seed.len() {
            let l = (t * 7 + c.unsigned_abs() as usize) % gens.len();
            let b = bracket(&gens[k], &gens[l]);
            if !b.is_empty() {
                gens.push(b);
            }
        }
    }
    acc
}

/// A deterministic series with constant term 1 and arbitrary rational
/// coefficients (not group-like in general).
pub fn unit_series(alphabet: usize, w: usize, seed: &[i64]) -> NCSeries<Q> {
    let words = periodlab::ncalg::all_words(alphabet, w);
    let terms = words.into_iter().enumerate().map(|(k, word)| {
        let c = if word.is_empty() {
            q(1, 1)
        } else {
            let s = seed[k % seed.len()];
            q(s + k as i64 % 3 - 1, 1 + (k as i64 % 4))
        };
        (word, c)
    });
    NCSeries::from_terms(alphabet, w, terms).expect("terms")
}

pub fn word(s: &str) -> Word {
    Word::parse(s).expect("word")
}
