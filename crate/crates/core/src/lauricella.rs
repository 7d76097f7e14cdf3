//! Lauricella period matrices: line integrals, their single-valued versions,
//! Taylor expansions at `s = 0`, and the matrices built from beta quotients
//! of associators.

use crate::config::Configuration;
use crate::cubature::{PlaneCubature, PlanePoint};
use crate::error::{Error, Result};
use crate::ncalg::{all_exponents, Exponents, MultiSeries, NCSeries};
use crate::path::AdmissiblePath;
use crate::quad::TanhSinh;
use crate::ring::Coeff;
use num_complex::Complex64;
use serde::Serialize;
use std::f64::consts::PI;

type C = Complex64;

fn czero() -> C {
    C::new(0.0, 0.0)
}

/// Parameters `s0..sn`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ParameterVector {
    pub s: Vec<C>,
}

fn is_integer(z: C) -> bool {
    z.im == 0.0 && z.re.fract() == 0.0
}

impl ParameterVector {
    pub fn new(s: Vec<C>) -> Self {
        ParameterVector { s }
    }

    pub fn real(s: &[f64]) -> Self {
        ParameterVector {
            s: s.iter().map(|&x| C::new(x, 0.0)).collect(),
        }
    }

    /// Number of marked points besides 0.
    pub fn n(&self) -> usize {
        self.s.len().saturating_sub(1)
    }

    pub fn sum(&self) -> C {
        self.s.iter().sum()
    }

    /// No `s_k` and not their sum is an integer.
    pub fn is_generic(&self) -> bool {
        !self.s.iter().any(|&x| is_integer(x)) && !is_integer(self.sum())
    }

    pub fn is_real(&self) -> bool {
        self.s.iter().all(|x| x.im == 0.0)
    }

    pub fn neg(&self) -> Self {
        ParameterVector {
            s: self.s.iter().map(|x| -x).collect(),
        }
    }

    fn check(&self, cfg: &Configuration) -> Result<()> {
        if self.s.len() != cfg.n() + 1 {
            return Err(Error::AlphabetMismatch(self.s.len(), cfg.n() + 1));
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Realization {
    Ordinary,
    SingleValued,
    FormalMotivic,
    FormalDeRham,
}

/// Square matrix of periods; `entry(i, j)` uses indices `1..=n`.
#[derive(Clone, Debug, PartialEq)]
pub struct PeriodMatrix<T> {
    pub realization: Realization,
    pub entries: Vec<Vec<T>>,
}

impl<T> PeriodMatrix<T> {
    pub fn new(realization: Realization, entries: Vec<Vec<T>>) -> Result<Self> {
        let n = entries.len();
        if entries.iter().any(|r| r.len() != n) {
            return Err(Error::Domain("period matrix must be square".into()));
        }
        Ok(PeriodMatrix {
            realization,
            entries,
        })
    }

    pub fn dim(&self) -> usize {
        self.entries.len()
    }

    pub fn entry(&self, i: usize, j: usize) -> &T {
        &self.entries[i - 1][j - 1]
    }
}

fn check_indices(cfg: &Configuration, i: usize, j: usize) -> Result<()> {
    let n = cfg.n();
    if i == 0 || j == 0 || i > n || j > n {
        return Err(Error::Domain(format!("indices ({i}, {j}) out of range 1..={n}")));
    }
    Ok(())
}

/// `log(1 + z)` without cancellation for small `z`.
pub fn clog1p(z: C) -> C {
    let re = 0.5 * (2.0 * z.re + z.norm_sqr()).ln_1p();
    let im = z.im.atan2(1.0 + z.re);
    C::new(re, im)
}

/// `exp(z) - 1` without cancellation for small `z`.
pub fn cexpm1(z: C) -> C {
    let (s, c) = z.im.sin_cos();
    let h = (0.5 * z.im).sin();
    C::new(z.re.exp_m1() * c - 2.0 * h * h, z.re.exp() * s)
}

/// `Log(d/base)` where `d = base + w`, accurate both for small `w` and
/// for `d` near 0.
fn log_ratio(d: C, w: C, base: C) -> C {
    let z = w / base;
    if z.norm() < 0.5 {
        clog1p(z)
    } else {
        (d / base).ln()
    }
}

/// Integrates `f(x, L, δ, dx)` over every piece of the path, where `L` are
/// the continuous logarithms and `δ_k = L_k(x) - L_k(σ_i)` (`k != i`), the
/// latter computed without cancellation on the final segment.
fn path_integral(
    cfg: &Configuration,
    path: &AdmissiblePath,
    dim: usize,
    f: impl Fn(&[C], &[C], &[C], C, &mut [C]),
) -> Result<Vec<C>> {
    let starts = path.log_starts(cfg);
    let ends = path.end_logs(cfg);
    let i = path.target;
    let npts = cfg.points.len();
    let sig_i = cfg.sigma(i);
    let last = path.pieces.len() - 1;
    let ts = TanhSinh {
        tol: cfg.quad.tol,
        max_level: cfg.quad.max_level,
        min_node: 1e-300,
    };
    let mut total = vec![czero(); dim];
    for (pi, piece) in path.pieces.iter().enumerate() {
        let v = ts.integrate_vec(dim, |t, tc, out| {
            let logs = path.logs_at(cfg, &starts, pi, t, tc);
            let offs: Vec<C> = (0..npts).map(|k| piece.offset(cfg.sigma(k), t, tc)).collect();
            let mut delta = vec![czero(); npts];
            for k in 0..npts {
                if k == i {
                    continue;
                }
                delta[k] = if pi == last {
                    log_ratio(offs[k], offs[i], sig_i - cfg.sigma(k))
                } else {
                    logs[k] - ends[k]
                };
            }
            let dx = piece.deriv(t);
            f(&offs, &logs, &delta, dx, out);
        })?;
        for d in 0..dim {
            total[d] += v[d];
        }
    }
    Ok(total)
}

fn exp_dot(s: &[C], l: &[C]) -> C {
    s.iter().zip(l).map(|(a, b)| a * b).sum::<C>().exp()
}

/// Raw entry `-s_j ∫ x^{s0} Π(1 - x/σ_k)^{s_k} dx/(x - σ_j)` along `path`.
pub fn lauricella_entry_along(
    cfg: &Configuration,
    path: &AdmissiblePath,
    s: &ParameterVector,
    j: usize,
) -> Result<C> {
    s.check(cfg)?;
    let i = path.target;
    check_indices(cfg, i, j)?;
    if s.s[0].re <= -1.0 {
        return Err(Error::Domain("convergence requires Re s0 > −1".into()));
    }
    if i == j && s.s[i].re <= 0.0 {
        return Err(Error::Domain(format!("convergence requires Re s{i} > 0 for i = j")));
    }
    if i != j && s.s[i].re <= -1.0 {
        return Err(Error::Domain(format!("convergence requires Re s{i} > −1")));
    }
    let v = path_integral(cfg, path, 1, |offs, logs, _d, dx, out| {
        out[0] = exp_dot(&s.s, logs).fdiv(offs[j]) * dx;
    })?;
    Ok(-s.s[j] * v[0])
}

/// Raw entry along the default path to `σ_i`.
pub fn lauricella_entry(cfg: &Configuration, s: &ParameterVector, i: usize, j: usize) -> Result<C> {
    check_indices(cfg, i, j)?;
    let path = AdmissiblePath::default_for(cfg, i)?;
    lauricella_entry_along(cfg, &path, s, j)
}

/// Entry continued to `Re s_i > -1` through the renormalized integral:
/// `1_{i=j}·C - s_j ∫ Ω_j^{ren}` with `C = σ_i^{s0} Π_{k≠i}(1 - σ_i/σ_k)^{s_k}`.
pub fn lauricella_entry_continued_along(
    cfg: &Configuration,
    path: &AdmissiblePath,
    s: &ParameterVector,
    j: usize,
) -> Result<C> {
    s.check(cfg)?;
    let i = path.target;
    check_indices(cfg, i, j)?;
    if s.s[0].re <= -1.0 {
        return Err(Error::Domain("convergence requires Re s0 > −1".into()));
    }
    if s.s[i].re <= -1.0 {
        return Err(Error::Domain(format!("convergence requires Re s{i} > −1")));
    }
    if i != j {
        let v = path_integral(cfg, path, 1, |offs, logs, _d, dx, out| {
            out[0] = exp_dot(&s.s, logs).fdiv(offs[j]) * dx;
        })?;
        return Ok(-s.s[j] * v[0]);
    }
    let ends = path.end_logs(cfg);
    let c = exp_dot(&s.s, &ends);
    let v = path_integral(cfg, path, 1, |offs, logs, delta, dx, out| {
        let mut arg = czero();
        for k in 0..delta.len() {
            if k != i {
                arg += s.s[k] * delta[k];
            }
        }
        out[0] = (s.s[i] * logs[i]).exp() * cexpm1(arg).fdiv(offs[i]) * dx;
    })?;
    Ok(c * (C::new(1.0, 0.0) - s.s[i] * v[0]))
}

pub fn lauricella_entry_continued(cfg: &Configuration, s: &ParameterVector, i: usize, j: usize) -> Result<C> {
    check_indices(cfg, i, j)?;
    let path = AdmissiblePath::default_for(cfg, i)?;
    lauricella_entry_continued_along(cfg, &path, s, j)
}

/// Full matrix along the given paths (`paths[i-1]` ends at `σ_i`), using the
/// continued form.
pub fn lauricella_matrix_along(
    cfg: &Configuration,
    paths: &[AdmissiblePath],
    s: &ParameterVector,
) -> Result<PeriodMatrix<C>> {
    let n = cfg.n();
    let mut rows = Vec::with_capacity(n);
    for path in paths {
        let mut row = Vec::with_capacity(n);
        for j in 1..=n {
            row.push(lauricella_entry_continued_along(cfg, path, s, j)?);
        }
        rows.push(row);
    }
    PeriodMatrix::new(Realization::Ordinary, rows)
}

pub fn default_paths(cfg: &Configuration) -> Result<Vec<AdmissiblePath>> {
    (1..=cfg.n()).map(|i| AdmissiblePath::default_for(cfg, i)).collect()
}

pub fn lauricella_matrix(cfg: &Configuration, s: &ParameterVector) -> Result<PeriodMatrix<C>> {
    lauricella_matrix_along(cfg, &default_paths(cfg)?, s)
}

/// Dense monomial basis for vector-valued integration of series.
struct Basis {
    exps: Vec<Exponents>,
}

impl Basis {
    fn new(nvars: usize, deg: usize) -> Self {
        Basis {
            exps: all_exponents(nvars, deg as u32),
        }
    }

    /// Writes `Π_k a_k^{m_k}/m_k!` for every monomial; when `skip` is
    /// `Some(i)`, monomials involving only `s_i` are set to zero.
    fn fill_exp(&self, a: &[C], factor: C, skip: Option<usize>, out: &mut [C]) {
        let deg = self.exps.last().map_or(0, |e| e.degree() as usize);
        let pows: Vec<Vec<C>> = a
            .iter()
            .map(|&x| {
                let mut p = vec![C::new(1.0, 0.0); deg + 1];
                for m in 1..=deg {
                    p[m] = p[m - 1] * x / m as f64;
                }
                p
            })
            .collect();
        for (idx, e) in self.exps.iter().enumerate() {
            if let Some(i) = skip {
                if e.0.iter().enumerate().all(|(k, &m)| k == i || m == 0) {
                    out[idx] = czero();
                    continue;
                }
            }
            let mut v = factor;
            for (k, &m) in e.0.iter().enumerate() {
                if m > 0 {
                    v *= pows[k][m as usize];
                }
            }
            out[idx] = v;
        }
    }

    fn series(&self, nvars: usize, max_degree: usize, vals: &[C]) -> MultiSeries<C> {
        let mut s = MultiSeries::zero(nvars, max_degree);
        for (e, v) in self.exps.iter().zip(vals) {
            s.add_term(&e.0, v);
        }
        s
    }
}

/// `exp(Σ_k s_k a_k)` as a truncated series.
fn exp_linear(a: &[C], max_degree: usize) -> MultiSeries<C> {
    let basis = Basis::new(a.len(), max_degree);
    let mut vals = vec![czero(); basis.exps.len()];
    basis.fill_exp(a, C::new(1.0, 0.0), None, &mut vals);
    basis.series(a.len(), max_degree, &vals)
}

/// Taylor series of the `(i, j)` entry at `s = 0` along `path`, each
/// coefficient a convergent integral of log-power integrands.
pub fn lauricella_taylor_along(
    cfg: &Configuration,
    path: &AdmissiblePath,
    j: usize,
    max_degree: usize,
) -> Result<MultiSeries<C>> {
    let i = path.target;
    check_indices(cfg, i, j)?;
    let nv = cfg.n() + 1;
    if max_degree == 0 {
        let c = if i == j { C::new(1.0, 0.0) } else { czero() };
        return Ok(MultiSeries::constant(nv, 0, c));
    }
    let basis = Basis::new(nv, max_degree - 1);
    let dim = basis.exps.len();
    let sj = MultiSeries::var(nv, max_degree, j);
    if i != j {
        let v = path_integral(cfg, path, dim, |offs, logs, _d, dx, out| {
            basis.fill_exp(logs, dx.fdiv(offs[j]), None, out);
        })?;
        let integral = basis.series(nv, max_degree, &v);
        return Ok(sj.mul(&integral)?.neg());
    }
    let v = path_integral(cfg, path, dim, |offs, logs, delta, dx, out| {
        let mut a = delta.to_vec();
        a[i] = logs[i];
        basis.fill_exp(&a, dx.fdiv(offs[i]), Some(i), out);
    })?;
    let integral = basis.series(nv, max_degree, &v);
    let c = exp_linear(&path.end_logs(cfg), max_degree);
    let one = MultiSeries::one(nv, max_degree);
    c.mul(&one.sub(&sj.mul(&integral)?)?)
}

pub fn lauricella_taylor(cfg: &Configuration, i: usize, j: usize, max_degree: usize) -> Result<MultiSeries<C>> {
    check_indices(cfg, i, j)?;
    let path = AdmissiblePath::default_for(cfg, i)?;
    lauricella_taylor_along(cfg, &path, j, max_degree)
}

pub fn lauricella_taylor_matrix(cfg: &Configuration, max_degree: usize) -> Result<PeriodMatrix<MultiSeries<C>>> {
    let n = cfg.n();
    let mut rows = Vec::with_capacity(n);
    for i in 1..=n {
        let path = AdmissiblePath::default_for(cfg, i)?;
        let mut row = Vec::with_capacity(n);
        for j in 1..=n {
            row.push(lauricella_taylor_along(cfg, &path, j, max_degree)?);
        }
        rows.push(row);
    }
    PeriodMatrix::new(Realization::Ordinary, rows)
}

fn cubature(cfg: &Configuration) -> PlaneCubature {
    PlaneCubature::new(&cfg.points, cfg.quad.cubature_tol, cfg.quad.theta_points)
}

/// `σ̄_i / ((z̄ - σ̄_i) z̄ (z - σ_j))`.
fn kernel(cfg: &Configuration, offs: &[C], i: usize, j: usize) -> C {
    cfg.sigma(i).conj().fdiv(offs[i].conj()).fdiv(offs[0].conj()).fdiv(offs[j])
}

fn plane_offsets(cfg: &Configuration, p: &PlanePoint) -> Vec<C> {
    (0..cfg.points.len()).map(|k| p.offset(k, &cfg.points)).collect()
}

/// `λ_0 = 2 ln|z|`, `λ_k = 2 ln|1 - z/σ_k|`.
fn abs_logs(cfg: &Configuration, offs: &[C]) -> Vec<f64> {
    (0..offs.len())
        .map(|k| {
            let d = if k == 0 { offs[0] } else { offs[k] / cfg.sigma(k) };
            2.0 * d.norm().ln()
        })
        .collect()
}

/// `λ_k(z) - λ_k(σ_i)` for `k != i`.
fn abs_deltas(cfg: &Configuration, offs: &[C], i: usize) -> Vec<f64> {
    let si = cfg.sigma(i);
    (0..offs.len())
        .map(|k| if k == i { 0.0 } else { 2.0 * log_ratio(offs[k], offs[i], si - cfg.sigma(k)).re })
        .collect()
}

fn abs_end_logs(cfg: &Configuration, i: usize) -> Vec<f64> {
    let si = cfg.sigma(i);
    (0..cfg.points.len())
        .map(|k| {
            if k == i {
                0.0
            } else if k == 0 {
                2.0 * si.norm().ln()
            } else {
                2.0 * (C::new(1.0, 0.0) - si / cfg.sigma(k)).norm().ln()
            }
        })
        .collect()
}

fn check_sv_domain(s: &ParameterVector) -> Result<()> {
    if !s.is_real() {
        return Err(Error::Domain("single-valued integrals require real s".into()));
    }
    for (k, x) in s.s.iter().enumerate() {
        if x.re <= 0.0 {
            return Err(Error::Domain(format!("convergence requires s{k} > 0")));
        }
    }
    if s.sum().re >= 0.5 {
        return Err(Error::Domain("convergence requires s0 + … + sn < ½".into()));
    }
    Ok(())
}

/// Single-valued entry `(s_j/π) ∬ |z|^{2s0} Π|1 - z/σ_k|^{2s_k} K_ij dA`.
pub fn sv_lauricella_entry(cfg: &Configuration, s: &ParameterVector, i: usize, j: usize) -> Result<C> {
    s.check(cfg)?;
    check_indices(cfg, i, j)?;
    check_sv_domain(s)?;
    let sr: Vec<f64> = s.s.iter().map(|x| x.re).collect();
    let cub = cubature(cfg);
    if i != j {
        let v = cub.integrate(1, |p, out| {
            let offs = plane_offsets(cfg, p);
            let l = abs_logs(cfg, &offs);
            let f: f64 = sr.iter().zip(&l).map(|(a, b)| a * b).sum::<f64>().exp();
            out[0] = kernel(cfg, &offs, i, j) * f;
        })?;
        return Ok(v[0] * (sr[j] / PI));
    }
    let ends = abs_end_logs(cfg, i);
    let c2: f64 = sr.iter().zip(&ends).map(|(a, b)| a * b).sum::<f64>().exp();
    let v = cub.integrate(1, |p, out| {
        let offs = plane_offsets(cfg, p);
        let l = abs_logs(cfg, &offs);
        let d = abs_deltas(cfg, &offs, i);
        let arg: f64 = (0..sr.len()).filter(|&k| k != i).map(|k| sr[k] * d[k]).sum();
        out[0] = kernel(cfg, &offs, i, i) * ((sr[i] * l[i]).exp() * arg.exp_m1());
    })?;
    Ok(C::new(c2, 0.0) * (C::new(1.0, 0.0) + v[0] * (sr[i] / PI)))
}

/// Taylor series of the single-valued entry at `s = 0`.
pub fn sv_lauricella_taylor(cfg: &Configuration, i: usize, j: usize, max_degree: usize) -> Result<MultiSeries<C>> {
    check_indices(cfg, i, j)?;
    let nv = cfg.n() + 1;
    if max_degree == 0 {
        let c = if i == j { C::new(1.0, 0.0) } else { czero() };
        return Ok(MultiSeries::constant(nv, 0, c));
    }
    let basis = Basis::new(nv, max_degree - 1);
    let dim = basis.exps.len();
    let sj = MultiSeries::var(nv, max_degree, j);
    let cub = cubature(cfg);
    let scale = C::new(1.0 / PI, 0.0);
    if i != j {
        let v = cub.integrate(dim, |p, out| {
            let offs = plane_offsets(cfg, p);
            let l: Vec<C> = abs_logs(cfg, &offs).into_iter().map(|x| C::new(x, 0.0)).collect();
            basis.fill_exp(&l, kernel(cfg, &offs, i, j) * scale, None, out);
        })?;
        let integral = basis.series(nv, max_degree, &v);
        return sj.mul(&integral);
    }
    let v = cub.integrate(dim, |p, out| {
        let offs = plane_offsets(cfg, p);
        let mut a: Vec<C> = abs_deltas(cfg, &offs, i).into_iter().map(|x| C::new(x, 0.0)).collect();
        a[i] = C::new(abs_logs(cfg, &offs)[i], 0.0);
        basis.fill_exp(&a, kernel(cfg, &offs, i, i) * scale, Some(i), out);
    })?;
    let integral = basis.series(nv, max_degree, &v);
    let ends: Vec<C> = abs_end_logs(cfg, i).into_iter().map(|x| C::new(x, 0.0)).collect();
    let c2 = exp_linear(&ends, max_degree);
    let one = MultiSeries::one(nv, max_degree);
    c2.mul(&one.add(&sj.mul(&integral)?)?)
}

pub fn sv_lauricella_matrix(cfg: &Configuration, s: &ParameterVector) -> Result<PeriodMatrix<C>> {
    let n = cfg.n();
    let mut rows = Vec::with_capacity(n);
    for i in 1..=n {
        let mut row = Vec::with_capacity(n);
        for j in 1..=n {
            row.push(sv_lauricella_entry(cfg, s, i, j)?);
        }
        rows.push(row);
    }
    PeriodMatrix::new(Realization::SingleValued, rows)
}

pub fn sv_lauricella_taylor_matrix(cfg: &Configuration, max_degree: usize) -> Result<PeriodMatrix<MultiSeries<C>>> {
    let n = cfg.n();
    let mut rows = Vec::with_capacity(n);
    for i in 1..=n {
        let mut row = Vec::with_capacity(n);
        for j in 1..=n {
            row.push(sv_lauricella_taylor(cfg, i, j, max_degree)?);
        }
        rows.push(row);
    }
    PeriodMatrix::new(Realization::SingleValued, rows)
}

/// The two plane integrals
/// `-(1/π)∬(1/(z̄-σ̄) - 1/z̄)|z|^{2s}/z dA` and
/// `-(1/π)∬(1/(z̄-σ̄) - 1/z̄)|1-z/σ|^{2s}/(z-σ) dA`,
/// whose closed forms are `|σ|^{2s}/s` and `-1/s`.
pub fn sv_lemma_integrals(sigma: C, s: f64, tol: f64) -> Result<(C, C)> {
    if !(s > 0.0 && s < 0.5) {
        return Err(Error::Domain("convergence requires 0 < s < ½".into()));
    }
    let pts = [czero(), sigma];
    let cub = PlaneCubature::new(&pts, tol, 64);
    let v = cub.integrate(2, |p, out| {
        let z = p.offset(0, &pts);
        let w = p.offset(1, &pts);
        let k = sigma.conj().fdiv(w.conj()).fdiv(z.conj());
        out[0] = (k * z.norm().powf(2.0 * s)).fdiv(z);
        out[1] = (k * (w / sigma).norm().powf(2.0 * s)).fdiv(w);
    })?;
    Ok((-v[0] / PI, -v[1] / PI))
}

/// `FL_ij = 1_{i=j}·ab(Z^i) - s_j·bq_j(Z^i)` from the associators
/// `Z^1..Z^n`.
pub fn fl_matrix<R: Coeff>(source: &[NCSeries<R>], max_degree: usize) -> Result<PeriodMatrix<MultiSeries<R>>> {
    let n = source.len();
    let mut rows = Vec::with_capacity(n);
    for (idx, z) in source.iter().enumerate() {
        if z.alphabet() != n + 1 {
            return Err(Error::AlphabetMismatch(z.alphabet(), n + 1));
        }
        if z.max_weight() < max_degree {
            return Err(Error::WeightExceeded {
                requested: max_degree,
                cutoff: z.max_weight(),
            });
        }
        let i = idx + 1;
        let ab = z.abelianize().truncate(max_degree).with_max_degree(max_degree);
        let mut row = Vec::with_capacity(n);
        for j in 1..=n {
            let sj = MultiSeries::var(n + 1, max_degree, j);
            let bq = z.beta_quotient(j)?.with_max_degree(max_degree);
            let mut e = sj.mul(&bq)?.neg();
            if i == j {
                e = e.add(&ab)?;
            }
            row.push(e);
        }
        rows.push(row);
    }
    PeriodMatrix::new(Realization::FormalMotivic, rows)
}

pub fn mat_mul(a: &[Vec<C>], b: &[Vec<C>]) -> Vec<Vec<C>> {
    let n = a.len();
    let m = b.first().map_or(0, |r| r.len());
    (0..n)
        .map(|r| {
            (0..m)
                .map(|c| (0..b.len()).map(|k| a[r][k] * b[k][c]).sum())
                .collect()
        })
        .collect()
}

/// Inverse by Gauss-Jordan elimination with partial pivoting.
pub fn mat_inverse(a: &[Vec<C>]) -> Result<Vec<Vec<C>>> {
    let n = a.len();
    let scale = a
        .iter()
        .flatten()
        .fold(0.0f64, |m, z| m.max(z.norm()))
        .max(1e-300);
    let mut m: Vec<Vec<C>> = a.to_vec();
    let mut inv: Vec<Vec<C>> = (0..n)
        .map(|r| (0..n).map(|c| if r == c { C::new(1.0, 0.0) } else { czero() }).collect())
        .collect();
    for col in 0..n {
        let piv = (col..n)
            .max_by(|&x, &y| m[x][col].norm().total_cmp(&m[y][col].norm()))
            .expect("nonempty");
        if m[piv][col].norm() <= 1e-14 * scale {
            return Err(Error::Singular);
        }
        m.swap(col, piv);
        inv.swap(col, piv);
        let p = m[col][col];
        for c in 0..n {
            m[col][c] /= p;
            inv[col][c] /= p;
        }
        for r in 0..n {
            if r != col {
                let f = m[r][col];
                if f != czero() {
                    for c in 0..n {
                        let a = m[col][c];
                        let b = inv[col][c];
                        m[r][c] -= f * a;
                        inv[r][c] -= f * b;
                    }
                }
            }
        }
    }
    Ok(inv)
}

pub fn max_diff(a: &[Vec<C>], b: &[Vec<C>]) -> f64 {
    a.iter()
        .flatten()
        .zip(b.iter().flatten())
        .fold(0.0, |m, (x, y)| m.max((x - y).norm()))
}

/// Both sides of `L^s(s) = L_Σ̄(-s)^{-1} L_Σ(s)`, with the paths for `Σ̄`
/// the complex conjugates of the default paths for `Σ`.
pub struct DoubleCopy {
    pub sv: PeriodMatrix<C>,
    pub product: Vec<Vec<C>>,
    pub residual: f64,
}

pub fn double_copy(cfg: &Configuration, s: &ParameterVector) -> Result<DoubleCopy> {
    s.check(cfg)?;
    check_sv_domain(s)?;
    let paths = default_paths(cfg)?;
    let conj_cfg = cfg.conjugate();
    let conj_paths: Vec<AdmissiblePath> = paths.iter().map(AdmissiblePath::conjugate).collect();
    let l = lauricella_matrix_along(cfg, &paths, s)?;
    let lbar = lauricella_matrix_along(&conj_cfg, &conj_paths, &s.neg())?;
    let product = mat_mul(&mat_inverse(&lbar.entries)?, &l.entries);
    let sv = sv_lauricella_matrix(cfg, s)?;
    let residual = max_diff(&sv.entries, &product);
    Ok(DoubleCopy { sv, product, residual })
}

/// Max-norm of `L^s - L_Σ̄(-s)^{-1} L_Σ(s)`.
pub fn double_copy_check(cfg: &Configuration, s: &ParameterVector) -> Result<f64> {
    Ok(double_copy(cfg, s)?.residual)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gamma::{beta, sv_beta};

    fn c(x: f64) -> C {
        C::new(x, 0.0)
    }

    #[test]
    fn beta_entry() {
        let cfg = Configuration::real(&[1.0]).unwrap();
        for &(a, b) in &[(0.3, 0.4), (0.5, 0.5), (0.15, 0.7)] {
            let s = ParameterVector::real(&[a, b]);
            let v = lauricella_entry(&cfg, &s, 1, 1).unwrap();
            let want = beta(c(a), c(b)) * (a * b / (a + b));
            assert!((v - want).norm() < 1e-10 * want.norm(), "{v} {want}");
            let w = lauricella_entry_continued(&cfg, &s, 1, 1).unwrap();
            assert!((w - want).norm() < 1e-10 * want.norm());
        }
    }

    #[test]
    fn continued_beta_negative() {
        let cfg = Configuration::real(&[1.0]).unwrap();
        let s = ParameterVector::real(&[0.3, -0.4]);
        let v = lauricella_entry_continued(&cfg, &s, 1, 1).unwrap();
        let want = beta(c(0.3), c(-0.4)) * (0.3 * -0.4 / (0.3 - 0.4));
        assert!((v - want).norm() < 1e-10 * want.norm(), "{v} {want}");
        assert!(lauricella_entry(&cfg, &s, 1, 1).is_err());
    }

    #[test]
    fn taylor_n1() {
        let cfg = Configuration::real(&[1.0]).unwrap();
        let t = lauricella_taylor(&cfg, 1, 1, 4).unwrap();
        assert!((t.coeff(&[0, 0]) - c(1.0)).norm() < 1e-12);
        assert!((t.coeff(&[1, 1]) + c(crate::gamma::zeta(2))).norm() < 1e-10);
    }

    #[test]
    fn sv_beta_entry() {
        let cfg = Configuration::real(&[1.0]).unwrap();
        let s = ParameterVector::real(&[0.2, 0.2]);
        let v = sv_lauricella_entry(&cfg, &s, 1, 1).unwrap();
        let want = sv_beta(c(0.2), c(0.2)) * 0.1;
        assert!((v - want).norm() < 1e-7 * want.norm(), "{v} {want}");
    }

    #[test]
    fn inverse() {
        let a = vec![vec![c(2.0), c(1.0)], vec![c(1.0), c(3.0)]];
        let b = mat_mul(&a, &mat_inverse(&a).unwrap());
        assert!((b[0][0] - c(1.0)).norm() < 1e-14 && b[0][1].norm() < 1e-14);
    }
}
