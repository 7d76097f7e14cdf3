//! The Gauss hypergeometric function as a rank-two instance of the
//! Lauricella setting: `ℱ`, `𝒢`, period and intersection matrices, twisted
//! period relations, single-valued versions and the Laurent expansion.

use crate::config::Configuration;
use crate::cubature::{PlaneCubature, PlanePoint};
use crate::error::{Error, Result};
use crate::gamma::{beta, sv_beta};
use crate::hyperlog::associators;
use crate::lauricella::{clog1p, fl_matrix, mat_inverse, mat_mul, PeriodMatrix, Realization};
use crate::ncalg::MultiSeries;
use crate::quad::TanhSinh;
use num_complex::Complex64;
use serde::Serialize;
use std::f64::consts::PI;

type C = Complex64;

fn cr(x: f64) -> C {
    C::new(x, 0.0)
}

fn near_integer(z: C) -> Option<i64> {
    let r = z.re.round();
    if (z - cr(r)).norm() < 1e-12 {
        Some(r as i64)
    } else {
        None
    }
}

/// Parameters `(a, b, c; y)` together with the branch data that fixes the
/// powers `y^{1-c}` and `(-1)^{c-a-b}` in `𝒢`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct HypParams {
    pub a: C,
    pub b: C,
    pub c: C,
    pub y: C,
    /// Determination of `log y`.
    pub log_y: C,
    /// Determination of `log(-1)`, an odd multiple of `iπ`.
    pub log_minus_one: C,
}

impl HypParams {
    /// Principal `log y` and `log(-1) = iπ`. Rejects `y ∈ [1, ∞)`.
    pub fn new(a: C, b: C, c: C, y: C) -> Result<Self> {
        if !(a.re.is_finite() && b.re.is_finite() && c.re.is_finite() && y.re.is_finite())
            || !(a.im.is_finite() && b.im.is_finite() && c.im.is_finite() && y.im.is_finite())
        {
            return Err(Error::Domain("parameters must be finite".into()));
        }
        if y.im == 0.0 && y.re >= 1.0 {
            return Err(Error::Domain(format!("y = {} lies on the cut [1, ∞)", y.re)));
        }
        let log_y = if y == cr(0.0) { C::new(f64::NEG_INFINITY, 0.0) } else { y.ln() };
        Ok(HypParams {
            a,
            b,
            c,
            y,
            log_y,
            log_minus_one: C::new(0.0, PI),
        })
    }

    pub fn real(a: f64, b: f64, c: f64, y: f64) -> Result<Self> {
        Self::new(cr(a), cr(b), cr(c), cr(y))
    }

    /// Moves `log y` to sheet `k` (adds `2πik`).
    pub fn with_log_y_sheet(mut self, k: i64) -> Self {
        self.log_y = self.y.ln() + C::new(0.0, 2.0 * PI * k as f64);
        self
    }

    /// Sets `log(-1) = (2k+1)iπ`.
    pub fn with_log_minus_one_sheet(mut self, k: i64) -> Self {
        self.log_minus_one = C::new(0.0, (2 * k + 1) as f64 * PI);
        self
    }

    /// Same parameters at another `y`, keeping the sheet of `log y`.
    pub fn at_y(&self, y: C) -> Self {
        HypParams {
            y,
            log_y: y.ln() + (self.log_y - self.y.ln()),
            ..*self
        }
    }

    fn with_abc(&self, a: C, b: C, c: C) -> Self {
        HypParams { a, b, c, ..*self }
    }

    /// `(a + da, b + db, c + dc)` with the same `y` and branches.
    pub fn shifted(&self, da: f64, db: f64, dc: f64) -> Self {
        self.with_abc(self.a + da, self.b + db, self.c + dc)
    }

    /// `(-a, -b, -c)` with the same `y` and branches.
    pub fn negated(&self) -> Self {
        self.with_abc(-self.a, -self.b, -self.c)
    }

    /// `ȳ` with conjugated branch data and unchanged `a, b, c`.
    pub fn conj_y(&self) -> Self {
        HypParams {
            y: self.y.conj(),
            log_y: self.log_y.conj(),
            log_minus_one: self.log_minus_one.conj(),
            ..*self
        }
    }

    /// `a, b, c, c-a, c-b ∉ ℤ`, naming the first violation.
    pub fn check_generic(&self) -> Result<()> {
        let named = [
            ("a", self.a),
            ("b", self.b),
            ("c", self.c),
            ("c-a", self.c - self.a),
            ("c-b", self.c - self.b),
        ];
        for (name, v) in named {
            if near_integer(v).is_some() {
                return Err(Error::NonGeneric(format!("{name} ∈ ℤ violates genericity")));
            }
        }
        Ok(())
    }

    fn check_y_nonzero(&self) -> Result<()> {
        if self.y == cr(0.0) {
            return Err(Error::Domain("y = 0 is a singular point of 𝒢".into()));
        }
        Ok(())
    }

    fn check_calf(&self) -> Result<()> {
        for (name, v) in [("b", self.b), ("c-b", self.c - self.b)] {
            if let Some(k) = near_integer(v) {
                if k <= 0 {
                    return Err(Error::NonGeneric(format!("{name} ∈ ℤ≤0 makes ℱ singular")));
                }
            }
        }
        Ok(())
    }

    fn check_calg(&self) -> Result<()> {
        self.check_y_nonzero()?;
        for (name, v) in [("a", self.a), ("c-a", self.c - self.a)] {
            if let Some(k) = near_integer(v) {
                if k >= 1 {
                    return Err(Error::NonGeneric(format!("{name} ∈ ℤ≥1 makes 𝒢 singular")));
                }
            }
        }
        Ok(())
    }
}

const SERIES_MAX_TERMS: usize = 1_000_000;

/// `Σ (a)_n (b)_n / (c)_n y^n / n!`, summed until the geometric tail bound
/// drops below `tol` relative to the partial sum.
pub fn f21_series(p: &HypParams, tol: f64) -> Result<C> {
    if p.y.norm() >= 1.0 {
        return Err(Error::Domain(format!("series needs |y| < 1, got |y| = {}", p.y.norm())));
    }
    if let Some(k) = near_integer(p.c) {
        if k <= 0 {
            return Err(Error::NonGeneric("c ∈ ℤ≤0 makes the series undefined".into()));
        }
    }
    let mut term = cr(1.0);
    let mut sum = cr(1.0);
    let warm = (p.a.norm() + p.b.norm() + p.c.norm()) as usize + 2;
    for n in 0..SERIES_MAX_TERMS {
        let nf = n as f64;
        let ratio = (p.a + nf) * (p.b + nf) / ((p.c + nf) * (nf + 1.0)) * p.y;
        term *= ratio;
        sum += term;
        if term == cr(0.0) {
            return Ok(sum);
        }
        if n > warm {
            let q = ratio.norm().max(p.y.norm());
            if q < 1.0 && term.norm() * q / (1.0 - q) <= tol * sum.norm() {
                return Ok(sum);
            }
        }
    }
    Err(Error::Quadrature("hypergeometric series did not converge".into()))
}

fn leaf_quadrature() -> TanhSinh {
    TanhSinh {
        tol: 1e-14,
        max_level: 10,
        min_node: 1e-300,
    }
}

/// `∫_0^1 x^{b-1}(1-x)^{c-b-1}(1-yx)^{-a} dx` for `Re b, Re(c-b) > 0`.
fn calf_direct(a: C, b: C, c: C, y: C) -> Result<C> {
    leaf_quadrature().integrate(|x, xc| {
        let e = (b - 1.0) * x.ln() + (c - b - 1.0) * xc.ln() - a * clog1p(-y * x);
        e.exp()
    })
}

/// Real part below which a contiguity step is taken before integrating.
const CONTIGUITY_THRESHOLD: f64 = 0.1;
const MAX_CONTIGUITY_DEPTH: usize = 48;

fn calf_rec(a: C, b: C, c: C, y: C, depth: usize) -> Result<C> {
    if depth > MAX_CONTIGUITY_DEPTH {
        return Err(Error::Domain("too many contiguity steps; parameters too far from the convergent strip".into()));
    }
    if b.re > CONTIGUITY_THRESHOLD && (c - b).re > CONTIGUITY_THRESHOLD {
        return calf_direct(a, b, c, y);
    }
    let up = calf_rec(a + 1.0, b + 1.0, c + 2.0, y, depth + 1)?;
    if b.re <= CONTIGUITY_THRESHOLD {
        // ℱ(a,b,c) = (c/b) ℱ(a,b+1,c+1) - (a/b) y ℱ(a+1,b+1,c+2)
        let first = calf_rec(a, b + 1.0, c + 1.0, y, depth + 1)?;
        Ok((c * first - a * y * up).fdiv(b))
    } else {
        // ℱ(a,b,c) = c/(c-b) ℱ(a,b,c+1) + a/(c-b) y ℱ(a+1,b+1,c+2)
        let first = calf_rec(a, b, c + 1.0, y, depth + 1)?;
        Ok((c * first + a * y * up).fdiv(c - b))
    }
}

/// `ℱ(a,b,c;y) = ∫_0^1 x^b(1-x)^{c-b}(1-yx)^{-a} dx/(x(1-x))`, continued
/// to `b, c-b ∉ ℤ≤0` by the two contiguity relations.
pub fn calf(p: &HypParams) -> Result<C> {
    p.check_calf()?;
    calf_rec(p.a, p.b, p.c, p.y, 0)
}

/// `F = ℱ/β(b, c-b)` by quadrature, for `Re c > Re b > 0` only.
pub fn f21_integral(p: &HypParams) -> Result<C> {
    if !(p.b.re > 0.0 && (p.c - p.b).re > 0.0) {
        return Err(Error::Domain("integral representation needs Re c > Re b > 0".into()));
    }
    Ok(calf_direct(p.a, p.b, p.c, p.y)? / beta(p.b, p.c - p.b))
}

/// `F(a,b,c;y)`: the series for small `|y|`, otherwise `ℱ/β(b, c-b)`.
pub fn f21(p: &HypParams) -> Result<C> {
    if p.y == cr(0.0) {
        return Ok(cr(1.0));
    }
    if p.y.norm() < 0.75 {
        if let Ok(v) = f21_series(p, 1e-15) {
            return Ok(v);
        }
    }
    p.check_calf()?;
    Ok(calf(p)? / beta(p.b, p.c - p.b))
}

/// `𝒢(a,b,c;y) = (-1)^{c-a-b} y^{1-c} ℱ(1+b-c, 1+a-c, 2-c; y)`.
pub fn calg(p: &HypParams) -> Result<C> {
    p.check_calg()?;
    let q = p.with_abc(1.0 + p.b - p.c, 1.0 + p.a - p.c, 2.0 - p.c);
    let pref = ((p.c - p.a - p.b) * p.log_minus_one + (1.0 - p.c) * p.log_y).exp();
    Ok(pref * calf(&q)?)
}

/// `𝒢` by direct quadrature along `x = 1/(yt)`, `t ∈ (0, 1)`, with the
/// branches of `log x`, `log(1-x)`, `log(1-yx)` read off the parametrisation.
/// Needs `Re c < Re a + 1 < 2`.
pub fn calg_integral(p: &HypParams) -> Result<C> {
    p.check_calg()?;
    if !(p.c.re < p.a.re + 1.0 && p.a.re + 1.0 < 2.0) {
        return Err(Error::Domain("integral for 𝒢 needs Re c < Re a + 1 < 2".into()));
    }
    let (a, b, c, y) = (p.a, p.b, p.c, p.y);
    let (ly, lm) = (p.log_y, p.log_minus_one);
    leaf_quadrature().integrate(|t, tc| {
        let lt = t.ln();
        let log_x = -ly - lt;
        let log_1mx = lm + clog1p(-y * t) - ly - lt;
        let log_1myx = lm + tc.ln() - lt;
        // dx = -dt/(y t²) and -1 = exp(log(-1))
        let e = (b - 1.0) * log_x + (c - b - 1.0) * log_1mx - a * log_1myx + lm - ly - 2.0 * lt;
        e.exp()
    })
}

/// `G = sin πa sin π(c-a)/(π sin πc) · β(b, c-b)^{-1} 𝒢`.
pub fn g21(p: &HypParams) -> Result<C> {
    let pre = (PI * p.a).sin() * (PI * (p.c - p.a)).sin() / (PI * (PI * p.c).sin());
    Ok(pre * calg(p)? / beta(p.b, p.c - p.b))
}

/// `[[ℱ, ℱ(+1,+1,+2)], [𝒢, 𝒢(+1,+1,+2)]]`.
pub fn period_matrix(p: &HypParams) -> Result<PeriodMatrix<C>> {
    p.check_generic()?;
    p.check_y_nonzero()?;
    let up = p.shifted(1.0, 1.0, 2.0);
    PeriodMatrix::new(
        Realization::Ordinary,
        vec![vec![calf(p)?, calf(&up)?], vec![calg(p)?, calg(&up)?]],
    )
}

/// `(-1)^{c-a-b} y^{-c-1} (1-y)^{c-a-b} β(b, c-b) β(-a, a-c)`.
pub fn det_closed_form(p: &HypParams) -> Result<C> {
    p.check_generic()?;
    p.check_y_nonzero()?;
    let e = p.c - p.a - p.b;
    let pre = (e * p.log_minus_one + (-p.c - 1.0) * p.log_y + e * clog1p(-p.y)).exp();
    Ok(pre * beta(p.b, p.c - p.b) * beta(-p.a, p.a - p.c))
}

fn det2(m: &[Vec<C>]) -> C {
    m[0][0] * m[1][1] - m[0][1] * m[1][0]
}

/// Relative deviation of `det P` from its closed form.
pub fn det_residual(p: &HypParams) -> Result<f64> {
    let d = det2(&period_matrix(p)?.entries);
    let e = det_closed_form(p)?;
    Ok((d - e).norm() / e.norm())
}

fn row_sum_norm(m: &[Vec<C>]) -> f64 {
    m.iter()
        .map(|r| r.iter().map(|z| z.norm()).sum::<f64>())
        .fold(0.0, f64::max)
}

/// `‖P‖_∞ ‖P^{-1}‖_∞`.
pub fn condition_number(m: &PeriodMatrix<C>) -> Result<f64> {
    let inv = mat_inverse(&m.entries)?;
    Ok(row_sum_norm(&m.entries) * row_sum_norm(&inv))
}

fn diag(x: C, y: C) -> Vec<Vec<C>> {
    vec![vec![x, cr(0.0)], vec![cr(0.0), y]]
}

/// `diag(-c/(b(c-b)), c/(y² a(c-a)))`.
pub fn intersection_dr(p: &HypParams) -> Result<PeriodMatrix<C>> {
    p.check_generic()?;
    p.check_y_nonzero()?;
    let (a, b, c, y) = (p.a, p.b, p.c, p.y);
    PeriodMatrix::new(
        Realization::FormalDeRham,
        diag(-c / (b * (c - b)), c / (y * y * a * (c - a))),
    )
}

/// `diag(2i sin πb sin π(c-b)/sin πc, -2i sin πa sin π(c-a)/sin πc)`.
pub fn intersection_b(p: &HypParams) -> Result<PeriodMatrix<C>> {
    p.check_generic()?;
    let (a, b, c) = (p.a, p.b, p.c);
    let s = |z: C| (PI * z).sin();
    let i2 = C::new(0.0, 2.0);
    PeriodMatrix::new(
        Realization::Ordinary,
        diag(i2 * s(b) * s(c - b) / s(c), -i2 * s(a) * s(c - a) / s(c)),
    )
}

fn transpose(m: &[Vec<C>]) -> Vec<Vec<C>> {
    (0..m[0].len()).map(|j| m.iter().map(|r| r[j]).collect()).collect()
}

/// Max-norm of `ᵗP(-a,-b,-c) I^B P(a,b,c) - 2πi I^dR`.
pub fn twisted_relation_residual(p: &HypParams) -> Result<f64> {
    let pm = period_matrix(p)?;
    let pneg = period_matrix(&p.negated())?;
    let ib = intersection_b(p)?;
    let idr = intersection_dr(p)?;
    let lhs = mat_mul(&mat_mul(&transpose(&pneg.entries), &ib.entries), &pm.entries);
    let two_pi_i = C::new(0.0, 2.0 * PI);
    let mut r = 0.0f64;
    for i in 0..2 {
        for j in 0..2 {
            r = r.max((lhs[i][j] - two_pi_i * idr.entries[i][j]).norm());
        }
    }
    Ok(r)
}

/// `|F(a,b,c) F(1-a,1-b,2-c) - F(c-a,c-b,c) F(1+a-c,1+b-c,2-c)|`.
pub fn gauss_relation_residual(p: &HypParams) -> Result<f64> {
    let (a, b, c) = (p.a, p.b, p.c);
    let f = |a: C, b: C, c: C| f21(&p.with_abc(a, b, c));
    let one = cr(1.0);
    let lhs = f(a, b, c)? * f(one - a, one - b, 2.0 - c)?;
    let rhs = f(c - a, c - b, c)? * f(one + a - c, one + b - c, 2.0 - c)?;
    Ok((lhs - rhs).norm())
}

fn sin_factors(p: &HypParams) -> (C, C) {
    let s = |z: C| (PI * z).sin();
    let sc = PI * s(p.c);
    (s(p.b) * s(p.c - p.b) / sc, s(p.a) * s(p.c - p.a) / sc)
}

/// `ℱ^s` by the double copy formula, with `ȳ` carrying conjugated branches.
pub fn sv_calf(p: &HypParams) -> Result<C> {
    p.check_generic()?;
    let q = p.conj_y();
    let (kb, ka) = sin_factors(p);
    Ok(kb * calf(p)? * calf(&q)? - ka * calg(p)? * calg(&q)?)
}

/// `𝒢^s` by the double copy formula.
pub fn sv_calg(p: &HypParams) -> Result<C> {
    p.check_generic()?;
    let q = p.conj_y().shifted(1.0, 1.0, 2.0);
    let (kb, ka) = sin_factors(p);
    Ok(p.y.conj() * (kb * calf(p)? * calf(&q)? - ka * calg(p)? * calg(&q)?))
}

/// `F^s = β^s(b, c-b)^{-1} ℱ^s`.
pub fn sv_f(p: &HypParams) -> Result<C> {
    Ok(sv_calf(p)? / sv_beta(p.b, p.c - p.b))
}

/// `G^s = a(c-a)/c · β^s(b, c-b)^{-1} 𝒢^s`.
pub fn sv_g(p: &HypParams) -> Result<C> {
    Ok(p.a * (p.c - p.a) / p.c * sv_calg(p)? / sv_beta(p.b, p.c - p.b))
}

/// `w_{s,t} = π sin π(s+t) / (sin πs sin πt)`.
pub fn w_factor(s: C, t: C) -> C {
    PI * (PI * (s + t)).sin() / ((PI * s).sin() * (PI * t).sin())
}

/// `F(y)F(ȳ) - w_{a,c-a} w_{b,c-b} G(y)G(ȳ)` with the holomorphic and
/// antiholomorphic arguments supplied separately.
pub fn sv_f_split(p: &HypParams, y_hol: C, y_anti: C) -> Result<C> {
    p.check_generic()?;
    let ph = p.at_y(y_hol);
    let pa = p.at_y(y_anti.conj()).conj_y();
    let ww = w_factor(p.a, p.c - p.a) * w_factor(p.b, p.c - p.b);
    Ok(f21(&ph)? * f21(&pa)? - ww * g21(&ph)? * g21(&pa)?)
}

/// `G^s` from the `F, G` form of the double copy.
pub fn sv_g_from_fg(p: &HypParams) -> Result<C> {
    p.check_generic()?;
    let (a, b, c) = (p.a, p.b, p.c);
    let q = p.conj_y().shifted(1.0, 1.0, 2.0);
    let ww = w_factor(a, c - a) * w_factor(b, c - b);
    let pre = a * (c - a) * b * (c - b) * p.y.conj() / (c * c * (1.0 + c));
    Ok(pre * (f21(p)? * f21(&q)? - ww * g21(p)? * g21(&q)?))
}

/// `(1/π) ∬ |z|^{2b-2} |1-z|^{2(c-b)-2} |1-yz|^{-2a} dA`, valid for
/// `0 < Re b < Re c < Re a + 1 < 2`.
pub fn sv_calf_integral(p: &HypParams, tol: f64) -> Result<C> {
    let (a, b, c) = (p.a, p.b, p.c);
    if !(0.0 < b.re && b.re < c.re && c.re < a.re + 1.0 && a.re + 1.0 < 2.0) {
        return Err(Error::Domain("2D integral for ℱ^s needs 0 < Re b < Re c < Re a + 1 < 2".into()));
    }
    p.check_y_nonzero()?;
    let pts = [cr(0.0), cr(1.0), cr(1.0) / p.y];
    let ln_y = p.y.norm().ln();
    let cub = PlaneCubature::new(&pts, tol, 32);
    let v = cub.integrate(1, |q: &PlanePoint, out| {
        let l0 = q.offset(0, &pts).norm().ln();
        let l1 = q.offset(1, &pts).norm().ln();
        let l2 = q.offset(2, &pts).norm().ln() + ln_y;
        let e = 2.0 * ((b - 1.0) * l0 + (c - b - 1.0) * l1 - a * l2);
        out[0] = e.exp() / PI;
    })?;
    Ok(v[0])
}

/// `(1/π) ∬ |z|^{2b}|1-z|^{2(c-b)}|1-yz|^{-2a} ȳ/((1-ȳz̄) z (1-z)) dA`,
/// valid for `-1/2 < Re b < Re c + 1/2 < Re a + 1 < 3/2`.
pub fn sv_calg_integral(p: &HypParams, tol: f64) -> Result<C> {
    let (a, b, c) = (p.a, p.b, p.c);
    if !(-0.5 < b.re && b.re < c.re + 0.5 && c.re + 0.5 < a.re + 1.0 && a.re + 1.0 < 1.5) {
        return Err(Error::Domain(
            "2D integral for 𝒢^s needs -1/2 < Re b < Re c + 1/2 < Re a + 1 < 3/2".into(),
        ));
    }
    p.check_y_nonzero()?;
    let pts = [cr(0.0), cr(1.0), cr(1.0) / p.y];
    let ln_y = p.y.norm().ln();
    let yb = p.y.conj();
    let cub = PlaneCubature::new(&pts, tol, 32);
    let v = cub.integrate(1, |q: &PlanePoint, out| {
        let w0 = q.offset(0, &pts);
        let w1 = q.offset(1, &pts);
        let w2 = q.offset(2, &pts);
        let e = 2.0 * (b * w0.norm().ln() + (c - b) * w1.norm().ln() - a * (w2.norm().ln() + ln_y));
        // 1 - ȳz̄ = -ȳ (z - 1/y)‾ and 1 - z = -(z - 1)
        let den = (-yb * w2.conj()) * w0 * (-w1);
        out[0] = e.exp() * yb.fdiv(den) / PI;
    })?;
    Ok(v[0])
}

/// Relative residual of the hypergeometric operator applied to
/// `y ↦ F^s` in its holomorphic argument, by central differences.
pub fn sv_f_ode_residual(p: &HypParams, h: f64) -> Result<f64> {
    let (a, b, c, y) = (p.a, p.b, p.c, p.y);
    let yb = y.conj();
    let f0 = sv_f_split(p, y, yb)?;
    let fp = sv_f_split(p, y + h, yb)?;
    let fm = sv_f_split(p, y - h, yb)?;
    let d1 = (fp - fm) / (2.0 * h);
    let d2 = (fp - 2.0 * f0 + fm) / (h * h);
    let t2 = y * (1.0 - y) * d2;
    let t1 = (c - (a + b + 1.0) * y) * d1;
    let t0 = -a * b * f0;
    let scale = t2.norm() + t1.norm() + t0.norm();
    Ok((t2 + t1 + t0).norm() / scale)
}

/// Laurent expansion of `ℱ(a,b,c;y)` around `a = b = c = 0`:
/// `1/b + (1-y)^{-a}/(c-b) + R(a, b, c-b)` with `R` a power series.
/// Series variables are ordered `(a, b, c-b)`.
#[derive(Clone, Debug)]
pub struct LaurentF {
    pub y: C,
    /// Coefficient of `1/b`.
    pub pole_b: C,
    /// `(1-y)^{-a}` as a series in `(a, b, c-b)`, the residue at `c-b = 0`.
    pub pole_cb: MultiSeries<C>,
    pub regular: MultiSeries<C>,
}

fn factorial(n: u32) -> f64 {
    (1..=n).map(|k| k as f64).product()
}

/// Expands `ℱ` to total degree `max_degree` in the regular part.
pub fn laurent_f(y: C, max_degree: usize) -> Result<LaurentF> {
    if y.im == 0.0 && y.re >= 1.0 || y == cr(0.0) {
        return Err(Error::Domain("Laurent expansion needs y ∉ {0} ∪ [1, ∞)".into()));
    }
    let d = max_degree;
    let mut idx = Vec::new();
    for i in 0..=d as u32 {
        for j in 0..=d as u32 - i {
            for k in 0..=d as u32 - i - j {
                idx.push((i, j, k));
            }
        }
    }
    let log1my = clog1p(-y);
    let pow = |z: C, n: u32| -> C { (0..n).fold(cr(1.0), |acc, _| acc * z) };
    let ts = leaf_quadrature();
    let dim = idx.len();
    let vals = ts.integrate_vec(dim, |x, xc, out| {
        let lx = if x < 0.5 { x.ln() } else { (-xc).ln_1p() };
        let l1x = if xc < 0.5 { xc.ln() } else { (-x).ln_1p() };
        let lyx = clog1p(-y * x);
        // log(1-yx) - log(1-y), accurate near x = 1
        let dl = clog1p(y * xc / (1.0 - y));
        for (slot, &(i, j, k)) in out.iter_mut().zip(&idx) {
            let mut v = cr(0.0);
            let base = pow(cr(lx), i) * pow(cr(l1x), j);
            if (j, k) != (0, 0) {
                v += base * pow(lyx, k) / x;
            }
            if (i, k) != (0, 0) {
                let tail = if i == 0 {
                    // lyx^k - log1my^k = dl · Σ lyx^m log1my^{k-1-m}
                    let s: C = (0..k).map(|m| pow(lyx, m) * pow(log1my, k - 1 - m)).sum();
                    dl * s
                } else {
                    pow(lyx, k)
                };
                v += base * tail / xc;
            }
            *slot = v;
        }
    })?;
    let mut regular = MultiSeries::zero(3, d);
    for (v, &(i, j, k)) in vals.iter().zip(&idx) {
        let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
        let coef = v * sign / (factorial(i) * factorial(j) * factorial(k));
        regular.add_term(&[k, i, j], &coef);
    }
    let mut pole_cb = MultiSeries::zero(3, d);
    for k in 0..=d as u32 {
        pole_cb.add_term(&[k, 0, 0], &(pow(-log1my, k) / factorial(k)));
    }
    Ok(LaurentF {
        y,
        pole_b: cr(1.0),
        pole_cb,
        regular,
    })
}

impl LaurentF {
    /// `b(c-b)ℱ = (c-b) + b(1-y)^{-a} + b(c-b)R`, a power series in
    /// `(a, b, c-b)`.
    pub fn cleared(&self) -> Result<MultiSeries<C>> {
        let d = self.regular.max_degree();
        let b = MultiSeries::var(3, d, 1);
        let cb = MultiSeries::var(3, d, 2);
        let first = cb.scale(&self.pole_b);
        let second = b.mul(&self.pole_cb)?;
        let third = b.mul(&cb)?.mul(&self.regular)?;
        first.add(&second)?.add(&third)
    }

    /// Evaluates the truncated expansion at `(a, b, c)`.
    pub fn eval(&self, a: C, b: C, c: C) -> C {
        let v = [a, b, c - b];
        self.pole_b / b + self.pole_cb.eval(&v) / (c - b) + self.regular.eval(&v)
    }
}

/// Rewrites a series in the Lauricella variables `(s0, s1, s2) = (b, c-b, -a)`
/// in the variables `(a, b, c-b)`.
pub fn abc_from_lauricella_vars(x: &MultiSeries<C>) -> MultiSeries<C> {
    let mut out = MultiSeries::zero(3, x.max_degree());
    for (e, c) in x.terms() {
        let (e0, e1, e2) = (e.0[0], e.0[1], e.0[2]);
        let sign = if e2 % 2 == 0 { 1.0 } else { -1.0 };
        out.add_term(&[e2, e0, e1], &(c * sign));
    }
    out
}

/// `b(c-b)ℱ = c FL_{1,1} + (c-b) FL_{1,2}` for `Σ = {0, 1, 1/y}`, from the
/// numerically computed associators, in the variables `(a, b, c-b)`.
pub fn cleared_from_fl(y: C, max_degree: usize) -> Result<MultiSeries<C>> {
    if y == cr(0.0) {
        return Err(Error::Domain("y = 0 is excluded".into()));
    }
    let cfg = Configuration::new(&[cr(1.0), cr(1.0) / y])?;
    let z = associators(&cfg, max_degree)?;
    let fl = fl_matrix(&z, max_degree)?;
    let d = max_degree;
    let s0 = MultiSeries::var(3, d, 0);
    let s1 = MultiSeries::var(3, d, 1);
    let c = s0.add(&s1)?;
    let v = c.mul(fl.entry(1, 1))?.add(&s1.mul(fl.entry(1, 2))?)?;
    Ok(abc_from_lauricella_vars(&v))
}

/// `β(1+a-c, 1-a)` against `(1-c)^{-1} β(a, c-a)^{-1} π sin πc/(sin πa sin π(c-a))`.
pub fn beta_identity_residual(p: &HypParams) -> f64 {
    let (a, c) = (p.a, p.c);
    let one = cr(1.0);
    let lhs = beta(one + a - c, one - a);
    let rhs = PI * (PI * c).sin() / ((one - c) * beta(a, c - a) * (PI * a).sin() * (PI * (c - a)).sin());
    (lhs - rhs).norm() / lhs.norm()
}

/// `β^s(b, c-b)` against `sin πb sin π(c-b)/(π sin πc) β(b, c-b)²`.
pub fn sv_beta_identity_residual(p: &HypParams) -> f64 {
    let (b, c) = (p.b, p.c);
    let lhs = sv_beta(b, c - b);
    let (kb, _) = sin_factors(p);
    let rhs = kb * beta(b, c - b) * beta(b, c - b);
    (lhs - rhs).norm() / lhs.norm()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p0() -> HypParams {
        HypParams::real(0.21, 0.37, 0.84, 0.35).unwrap()
    }

    fn p1() -> HypParams {
        HypParams::real(0.3, 0.2, 0.4, 0.25).unwrap()
    }

    #[test]
    fn series_log() {
        let p = HypParams::real(1.0, 1.0, 2.0, 0.3).unwrap();
        let v = f21_series(&p, 1e-15).unwrap();
        let exact = -(0.7f64).ln() / 0.3;
        assert!((v.re - exact).abs() < 1e-14, "{v}");
        assert!((v.re - 1.188_916_47).abs() < 1e-8);
    }

    #[test]
    fn series_vs_integral_and_contiguity() {
        let p = p1();
        let s = f21_series(&p, 1e-15).unwrap();
        let i = f21_integral(&p).unwrap();
        assert!((s - i).norm() < 1e-12, "{s} {i}");
        let q = HypParams::real(0.21, -0.53, -0.16, 0.35).unwrap();
        let s = f21_series(&q, 1e-15).unwrap();
        let c = calf(&q).unwrap() / beta(q.b, q.c - q.b);
        assert!((s - c).norm() < 1e-11 * s.norm(), "{s} {c}");
    }

    #[test]
    fn contiguity_relations() {
        let p = p1();
        let f = |da, db, dc| calf(&p.shifted(da, db, dc)).unwrap();
        let (a, b, c, y) = (p.a, p.b, p.c, p.y);
        let r1 = f(0.0, 0.0, 0.0) - (c / b * f(0.0, 1.0, 1.0) - a / b * y * f(1.0, 1.0, 2.0));
        let r2 = f(0.0, 0.0, 0.0) - (c / (c - b) * f(0.0, 0.0, 1.0) + a / (c - b) * y * f(1.0, 1.0, 2.0));
        assert!(r1.norm() < 1e-10 && r2.norm() < 1e-10, "{r1} {r2}");
    }

    #[test]
    fn calg_two_routes() {
        let p = p1();
        let a = calg(&p).unwrap();
        let b = calg_integral(&p).unwrap();
        assert!((a - b).norm() < 1e-10 * a.norm(), "{a} {b}");
    }

    #[test]
    fn matrices() {
        let p = p0();
        assert!(det_residual(&p).unwrap() < 1e-10);
        assert!(twisted_relation_residual(&p).unwrap() < 1e-10);
        assert!(gauss_relation_residual(&p).unwrap() < 1e-12);
        let idr = intersection_dr(&p).unwrap();
        let idr_neg = intersection_dr(&p.negated()).unwrap();
        for i in 0..2 {
            for j in 0..2 {
                assert!((idr_neg.entries[i][j] + idr.entries[j][i]).norm() < 1e-14);
            }
        }
        let e = HypParams::real(0.2, 0.3, 1.0, 0.3).unwrap();
        let err = period_matrix(&e).unwrap_err().to_string();
        assert!(err.contains("c ∈ ℤ violates genericity"), "{err}");
    }

    #[test]
    fn double_copy_real() {
        let p = HypParams::real(0.3, 0.2, 0.4, 0.3).unwrap();
        let v = sv_f(&p).unwrap();
        assert!(v.im.abs() < 1e-12, "{v}");
        let w = sv_f_split(&p, p.y, p.y).unwrap();
        assert!((v - w).norm() < 1e-11 * v.norm(), "{v} {w}");
        let g = sv_g(&p).unwrap();
        let g2 = sv_g_from_fg(&p).unwrap();
        assert!((g - g2).norm() < 1e-11 * g.norm(), "{g} {g2}");
        assert!(sv_f_ode_residual(&p, 1e-3).unwrap() < 1e-5);
    }

    #[test]
    fn identities() {
        assert!(beta_identity_residual(&p0()) < 1e-12);
        assert!(sv_beta_identity_residual(&p0()) < 1e-12);
    }
}
