//! Gamma, beta and zeta values used as closed-form oracles.

use num_complex::Complex64;
use std::f64::consts::PI;

const LANCZOS_G: f64 = 7.0;
const LANCZOS_COEF: [f64; 9] = [
    0.999_999_999_999_809_9,
    676.520_368_121_885_1,
    -1_259.139_216_722_402_8,
    771.323_428_777_653_1,
    -176.615_029_162_140_6,
    12.507_343_278_686_905,
    -0.138_571_095_265_720_12,
    9.984_369_578_019_572e-6,
    1.505_632_735_149_311_6e-7,
];

/// Gamma function for complex arguments (Lanczos, with reflection for
/// `Re z < 1/2`).
pub fn gamma(z: Complex64) -> Complex64 {
    if z.re < 0.5 {
        let s = (Complex64::new(PI, 0.0) * z).sin();
        return Complex64::new(PI, 0.0) / (s * gamma(Complex64::new(1.0, 0.0) - z));
    }
    let z = z - 1.0;
    let mut x = Complex64::new(LANCZOS_COEF[0], 0.0);
    for (i, c) in LANCZOS_COEF.iter().enumerate().skip(1) {
        x += *c / (z + i as f64);
    }
    let t = z + LANCZOS_G + 0.5;
    (2.0 * PI).sqrt() * t.powc(z + 0.5) * (-t).exp() * x
}

pub fn gamma_re(x: f64) -> f64 {
    gamma(Complex64::new(x, 0.0)).re
}

/// `β(a, b) = Γ(a)Γ(b)/Γ(a+b)`.
pub fn beta(a: Complex64, b: Complex64) -> Complex64 {
    gamma(a) * gamma(b) / gamma(a + b)
}

/// Single-valued beta function
/// `Γ(a)Γ(b)Γ(1-a-b) / (Γ(a+b)Γ(1-a)Γ(1-b))`.
pub fn sv_beta(a: Complex64, b: Complex64) -> Complex64 {
    let one = Complex64::new(1.0, 0.0);
    gamma(a) * gamma(b) * gamma(one - a - b) / (gamma(a + b) * gamma(one - a) * gamma(one - b))
}

const BERNOULLI_2K: [f64; 8] = [
    1.0 / 6.0,
    -1.0 / 30.0,
    1.0 / 42.0,
    -1.0 / 30.0,
    5.0 / 66.0,
    -691.0 / 2730.0,
    7.0 / 6.0,
    -3617.0 / 510.0,
];

/// Riemann zeta at an integer `n >= 2` via Euler-Maclaurin summation.
pub fn zeta(n: u32) -> f64 {
    assert!(n >= 2, "zeta(n) needs n >= 2");
    let s = n as f64;
    let big_n = 16.0_f64;
    let mut acc = 0.0;
    for k in 1..16 {
        acc += (k as f64).powf(-s);
    }
    acc += big_n.powf(1.0 - s) / (s - 1.0) + 0.5 * big_n.powf(-s);
    // sum_j B_2j/(2j)! * s(s+1)...(s+2j-2) * N^{-s-2j+1}
    let mut rising = s;
    let mut fact = 2.0;
    for (j, b) in BERNOULLI_2K.iter().enumerate() {
        let p = 2 * (j + 1);
        acc += b / fact * rising * big_n.powf(-s - p as f64 + 1.0);
        rising *= (s + p as f64 - 1.0) * (s + p as f64);
        fact *= ((p + 1) * (p + 2)) as f64;
    }
    acc
}

/// Single-valued zeta: `2ζ(n)` for odd `n`, `0` for even `n`.
pub fn zeta_sv(n: u32) -> f64 {
    if n % 2 == 1 {
        2.0 * zeta(n)
    } else {
        0.0
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(x: f64) -> Complex64 {
        Complex64::new(x, 0.0)
    }

    #[test]
    fn gamma_half_and_recursion() {
        assert!((gamma_re(0.5) - PI.sqrt()).abs() < 1e-14);
        for &x in &[0.3, 1.7, -0.4, 2.5] {
            let lhs = gamma(c(x + 1.0));
            let rhs = gamma(c(x)) * x;
            assert!((lhs - rhs).norm() < 1e-12 * lhs.norm());
        }
        let z = Complex64::new(0.3, 1.2);
        let lhs = gamma(z + 1.0);
        assert!((lhs - gamma(z) * z).norm() < 1e-13 * lhs.norm());
        assert!((gamma_re(5.0) - 24.0).abs() < 1e-11);
    }

    #[test]
    fn beta_half() {
        assert!((beta(c(0.5), c(0.5)).re - PI).abs() < 1e-13);
    }

    #[test]
    fn zeta_values() {
        assert!((zeta(2) - PI * PI / 6.0).abs() < 1e-15);
        assert!((zeta(4) - PI.powi(4) / 90.0).abs() < 1e-15);
        let direct: f64 = (1..200_000).map(|k| (k as f64).powi(-3)).sum();
        assert!((zeta(3) - direct).abs() < 1e-10);
        assert!((zeta(3) - 1.202_056_903_159_594_3).abs() < 1e-15);
        assert_eq!(zeta_sv(2), 0.0);
        assert!((zeta_sv(3) - 2.0 * zeta(3)).abs() < 1e-15);
    }
}
