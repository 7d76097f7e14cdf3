//! Verification suites behind `periodlab verify`. Each suite returns a
//! [`RunReport`] whose checks carry the residual and its tolerance.

use crate::coaction::{coact_associator, coact_fl, coact_hyp2f1_local, drop_length_one};
use crate::config::Configuration;
use crate::error::{Error, Result};
use crate::gamma::{beta, sv_beta, zeta};
use crate::hyp2f1::{self as h, HypParams};
use crate::hyperlog::associators;
use crate::lauricella::{
    double_copy, fl_matrix, lauricella_entry, lauricella_taylor, lauricella_taylor_matrix, sv_lauricella_entry,
    sv_lauricella_taylor, ParameterVector, PeriodMatrix,
};
use crate::ncalg::{MultiSeries, Word};
use crate::periods::{beta_loc_exp_with, coact_zeta};
use crate::report::{self, Check, RunReport};
use crate::ring::Coeff;
use num_complex::Complex64;
use serde_json::json;

type C = Complex64;

pub const SUITES: [&str; 6] = ["beta", "double-copy", "twisted", "coaction", "fl-agreement", "hyp2f1"];

/// Default tolerances.
pub mod tol {
    pub const BETA: f64 = 1e-9;
    pub const EXPANSION: f64 = 1e-8;
    pub const SV_BETA: f64 = 1e-5;
    pub const SV_ZETA2: f64 = 1e-5;
    pub const DOUBLE_COPY_N1: f64 = 1e-5;
    pub const DOUBLE_COPY: f64 = 1e-4;
    pub const TWISTED: f64 = 1e-9;
    pub const GAUSS: f64 = 1e-10;
    pub const DET: f64 = 1e-9;
    pub const FL_AGREEMENT: f64 = 1e-6;
    pub const HYP_ROUTES: f64 = 1e-9;
    pub const CALG_ROUTES: f64 = 1e-8;
    pub const SV_2D: f64 = 1e-4;
    pub const SV_IMAG: f64 = 1e-10;
    pub const ODE: f64 = 1e-4;
    pub const LAURENT: f64 = 1e-6;
    pub const IDENTITY: f64 = 1e-10;
}

/// Options shared by the suites; `None` selects the suite defaults.
#[derive(Clone, Debug, Default)]
pub struct VerifyOptions {
    pub n: Option<usize>,
    pub degree: Option<usize>,
}

pub const TWISTED_POINT: (f64, f64, f64, f64) = (0.21, 0.37, 0.84, 0.35);

pub const TWISTED_SWEEP: [(f64, f64, f64, f64); 5] = [
    (0.21, 0.37, 0.84, 0.35),
    (0.1, 0.6, 0.3, 0.2),
    (-0.4, 0.25, 1.3, 0.5),
    (1.3, -0.7, 0.45, 0.35),
    (0.45, 0.15, -0.35, 0.2),
];

pub fn run_suite(name: &str, opts: &VerifyOptions) -> Result<RunReport> {
    let config = json!({ "suite": name, "n": opts.n, "degree": opts.degree });
    let mut r = RunReport::new("verify", config);
    match name {
        "beta" => beta_suite(&mut r),
        "double-copy" => double_copy_suite(&mut r, opts),
        "twisted" => twisted_suite(&mut r),
        "coaction" => coaction_suite(&mut r, opts)?,
        "fl-agreement" => fl_suite(&mut r, opts),
        "hyp2f1" => hyp2f1_suite(&mut r),
        _ => return Err(Error::UnknownSuite(name.to_string())),
    }
    Ok(r)
}

/// Records a numeric check, or a failed one with the error message.
fn numeric(r: &mut RunReport, name: &str, v: Result<f64>, tol: f64) {
    match v {
        Ok(x) => r.push(Check::numeric(name, x, tol)),
        Err(e) => {
            r.set_result(&format!("error:{name}"), json!(e.to_string()));
            r.push(Check::failed(name));
        }
    }
}

fn exact(r: &mut RunReport, name: &str, v: Result<bool>) {
    match v {
        Ok(b) => r.push(Check::exact(name, b)),
        Err(e) => {
            r.set_result(&format!("error:{name}"), json!(e.to_string()));
            r.push(Check::failed(name));
        }
    }
}

fn rel(a: C, b: C) -> f64 {
    (a - b).norm() / b.norm()
}

fn cr(x: f64) -> C {
    C::new(x, 0.0)
}

/// Largest coefficient difference of two series.
pub fn series_diff(a: &MultiSeries<C>, b: &MultiSeries<C>) -> Result<f64> {
    Ok(a.sub(b)?.terms().fold(0.0, |m, (_, c)| m.max(c.norm())))
}

pub fn series_matrix_diff(a: &PeriodMatrix<MultiSeries<C>>, b: &PeriodMatrix<MultiSeries<C>>) -> Result<f64> {
    let mut m = 0.0f64;
    for (ra, rb) in a.entries.iter().zip(&b.entries) {
        for (x, y) in ra.iter().zip(rb) {
            m = m.max(series_diff(x, y)?);
        }
    }
    Ok(m)
}

/// `s0 s1/(s0+s1) · β(s0, s1)` as a Taylor series, from the zeta values.
pub fn beta_expansion(max_degree: usize) -> Result<MultiSeries<C>> {
    beta_loc_exp_with(2, max_degree, |n| Ok(cr(zeta(n as u32))))
}

fn beta_suite(r: &mut RunReport) {
    r.tolerance("beta", tol::BETA);
    r.tolerance("expansion", tol::EXPANSION);
    r.tolerance("sv_beta", tol::SV_BETA);
    r.tolerance("sv_zeta2", tol::SV_ZETA2);
    let cfg = match Configuration::real(&[1.0]) {
        Ok(c) => c,
        Err(e) => return r.fail_with(&e),
    };
    for &(a, b) in &[(0.3, 0.4), (0.5, 0.5), (0.15, 0.7)] {
        let v = lauricella_entry(&cfg, &ParameterVector::real(&[a, b]), 1, 1)
            .map(|v| rel(v, beta(cr(a), cr(b)) * (a * b / (a + b))));
        numeric(r, &format!("beta({a}, {b})"), v, tol::BETA);
    }
    let v = lauricella_taylor(&cfg, 1, 1, 6).and_then(|t| series_diff(&t, &beta_expansion(6)?));
    numeric(r, "expansion degree 6", v, tol::EXPANSION);
    for &(a, b) in &[(0.2, 0.2), (0.15, 0.1)] {
        let v = sv_lauricella_entry(&cfg, &ParameterVector::real(&[a, b]), 1, 1)
            .map(|v| rel(v, sv_beta(cr(a), cr(b)) * (a * b / (a + b))));
        numeric(r, &format!("sv beta({a}, {b})"), v, tol::SV_BETA);
    }
    let v = sv_lauricella_taylor(&cfg, 1, 1, 2).map(|t| t.coeff(&[1, 1]).norm());
    numeric(r, "sv coefficient of s0 s1", v, tol::SV_ZETA2);
}

fn double_copy_suite(r: &mut RunReport, opts: &VerifyOptions) {
    r.tolerance("n1", tol::DOUBLE_COPY_N1);
    r.tolerance("n2", tol::DOUBLE_COPY);
    let cases: Vec<(usize, Vec<f64>, Vec<f64>, f64)> = vec![
        (1, vec![1.0], vec![0.15, 0.2], tol::DOUBLE_COPY_N1),
        (2, vec![1.0, 3.0], vec![0.1, 0.12, 0.08], tol::DOUBLE_COPY),
    ];
    for (n, pts, s, t) in cases {
        if opts.n.is_some_and(|m| m != n) {
            continue;
        }
        let v = Configuration::real(&pts).and_then(|cfg| double_copy(&cfg, &ParameterVector::real(&s)));
        let name = format!("double copy n={n}");
        match v {
            Ok(dc) => {
                r.set_result(&format!("n{n}.sv"), report::matrix(&dc.sv.entries));
                r.set_result(&format!("n{n}.product"), report::matrix(&dc.product));
                r.push(Check::numeric(name, dc.residual, t));
            }
            Err(e) => numeric(r, &name, Err(e), t),
        }
    }
}

fn hyp(p: (f64, f64, f64, f64)) -> Result<HypParams> {
    HypParams::real(p.0, p.1, p.2, p.3)
}

fn twisted_suite(r: &mut RunReport) {
    r.tolerance("twisted", tol::TWISTED);
    r.tolerance("gauss", tol::GAUSS);
    r.tolerance("det", tol::DET);
    if let Ok(p) = hyp(TWISTED_POINT) {
        if let Ok(m) = h::period_matrix(&p) {
            r.set_result("period_matrix", report::period_matrix(&m));
        }
    }
    for (k, &q) in TWISTED_SWEEP.iter().enumerate() {
        let p = hyp(q);
        let tag = format!("({}, {}, {}; {})", q.0, q.1, q.2, q.3);
        numeric(r, &format!("twisted {k} {tag}"), p.clone().and_then(|p| h::twisted_relation_residual(&p)), tol::TWISTED);
        numeric(r, &format!("gauss {k}"), p.clone().and_then(|p| h::gauss_relation_residual(&p)), tol::GAUSS);
        numeric(r, &format!("det {k}"), p.clone().and_then(|p| h::det_residual(&p)), tol::DET);
    }
}

fn coaction_suite(r: &mut RunReport, opts: &VerifyOptions) -> Result<()> {
    let cases: Vec<(usize, usize)> = match (opts.n, opts.degree) {
        (Some(n), Some(d)) => vec![(n, d)],
        (Some(1), None) => vec![(1, 4)],
        (Some(n), None) => vec![(n, 3)],
        (None, Some(d)) => vec![(1, d), (2, d)],
        (None, None) => vec![(1, 4), (2, 3)],
    };
    for &(n, _) in &cases {
        if n == 0 {
            return Err(Error::Domain("coaction needs n ≥ 1".into()));
        }
    }
    for (n, d) in cases {
        let name = format!("coact_fl n={n} degree {d}");
        match coact_fl(n, d) {
            Ok(c) => {
                let shown: Vec<_> = c.mismatches.iter().take(8).collect();
                r.set_result(&format!("mismatches n={n}"), json!(shown));
                r.push(Check::exact(name, c.verdict));
            }
            Err(e) => exact(r, &name, Err(e)),
        }
    }
    let z3 = coact_associator(1, 1, 3).and_then(|d| {
        let c = Coeff::neg(&d.coeff(&Word::parse("e1e0e0").expect("word")));
        let reduced = drop_length_one(&c)?;
        let want = coact_zeta(3)?;
        r.set_result("zeta3", json!(reduced.to_string()));
        Ok(reduced == want)
    });
    exact(r, "coefficient of -e1e0e0 is coaction of zeta(3)", z3);
    let d = opts.degree.unwrap_or(4);
    match coact_hyp2f1_local(d) {
        Ok(c) => {
            r.push(Check::exact(format!("2F1 local calF degree {d}"), c.calf));
            r.push(Check::exact(format!("2F1 local beta degree {d}"), c.beta));
            r.push(Check::exact(format!("2F1 local F degree {d}"), c.f));
            r.set_result("2f1_literal_without_lef", json!(c.literal_f));
        }
        Err(e) => exact(r, "2F1 local", Err(e)),
    }
    Ok(())
}

/// Agreement of the beta-quotient and integral routes to the Taylor
/// expansion of the period matrix.
pub fn fl_agreement(cfg: &Configuration, max_degree: usize) -> Result<f64> {
    let fl = fl_matrix(&associators(cfg, max_degree)?, max_degree)?;
    let taylor = lauricella_taylor_matrix(cfg, max_degree)?;
    series_matrix_diff(&fl, &taylor)
}

fn fl_suite(r: &mut RunReport, opts: &VerifyOptions) {
    r.tolerance("fl_agreement", tol::FL_AGREEMENT);
    let d = opts.degree.unwrap_or(3);
    for (label, pts) in [("{0, 1, 3}", [1.0, 3.0]), ("{0, 1, 1/0.35}", [1.0, 1.0 / 0.35])] {
        let v = Configuration::real(&pts).and_then(|cfg| fl_agreement(&cfg, d));
        numeric(r, &format!("FL vs Taylor {label} degree {d}"), v, tol::FL_AGREEMENT);
    }
}

fn hyp2f1_suite(r: &mut RunReport) {
    r.tolerance("routes", tol::HYP_ROUTES);
    r.tolerance("calg_routes", tol::CALG_ROUTES);
    r.tolerance("sv_2d", tol::SV_2D);
    r.tolerance("sv_imag", tol::SV_IMAG);
    r.tolerance("ode", tol::ODE);
    r.tolerance("laurent", tol::LAURENT);
    r.tolerance("identity", tol::IDENTITY);

    let v = hyp((0.3, 0.2, 0.4, 0.25))
        .and_then(|p| Ok(rel(h::f21_integral(&p)?, h::f21_series(&p, 1e-15)?)));
    numeric(r, "F series vs integral", v, tol::HYP_ROUTES);
    let v = hyp((0.21, -0.53, -0.16, 0.35))
        .and_then(|p| Ok(rel(h::calf(&p)? / beta(p.b, p.c - p.b), h::f21_series(&p, 1e-15)?)));
    numeric(r, "F series vs contiguity", v, tol::HYP_ROUTES);
    let v = hyp((0.3, 0.2, 0.4, 0.25)).and_then(|p| Ok(rel(h::calg_integral(&p)?, h::calg(&p)?)));
    numeric(r, "calG two routes", v, tol::CALG_ROUTES);

    let sv = hyp((0.3, 0.2, 0.4, 0.3));
    let v = sv.clone().and_then(|p| Ok(rel(h::sv_calf_integral(&p, 1e-9)?, h::sv_calf(&p)?)));
    numeric(r, "sv calF double copy vs 2D", v, tol::SV_2D);
    let v = sv.clone().and_then(|p| Ok(rel(h::sv_calg_integral(&p, 1e-9)?, h::sv_calg(&p)?)));
    numeric(r, "sv calG double copy vs 2D", v, tol::SV_2D);
    let v = sv.clone().and_then(|p| {
        let f = h::sv_f(&p)?;
        r.set_result("sv_f", report::complex(f));
        Ok(f.im.abs())
    });
    numeric(r, "sv F imaginary part", v, tol::SV_IMAG);
    let v = sv.clone().and_then(|p| h::sv_f_ode_residual(&p, 1e-3));
    numeric(r, "sv F ODE residual", v, tol::ODE);

    let y = cr(0.35);
    let v = h::laurent_f(y, 3).and_then(|l| series_diff(&l.cleared()?, &h::cleared_from_fl(y, 3)?));
    numeric(r, "Laurent vs FL degree 3", v, tol::LAURENT);

    let v = hyp(TWISTED_POINT).map(|p| h::beta_identity_residual(&p));
    numeric(r, "beta reflection identity", v, tol::IDENTITY);
    let v = hyp(TWISTED_POINT).map(|p| h::sv_beta_identity_residual(&p));
    numeric(r, "sv beta identity", v, tol::IDENTITY);
}
