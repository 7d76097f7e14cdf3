//! The `periodlab` command-line frontend.
//!
//! Every command produces a [`RunReport`]. JSON goes to `--json PATH` when
//! given and to stdout otherwise; `--table` prints a plain check table
//! instead. Exit code 0 means every check passed, 1 that some check failed
//! and 2 that the command could not run.

use crate::config::Configuration;
use crate::error::{Error, Result};
use crate::gamma::{beta, sv_beta};
use crate::hyp2f1::{self as h, HypParams};
use crate::lauricella::{
    lauricella_entry_continued, lauricella_matrix, lauricella_taylor, lauricella_taylor_matrix, sv_lauricella_entry,
    sv_lauricella_matrix, sv_lauricella_taylor, sv_lauricella_taylor_matrix, ParameterVector, PeriodMatrix,
    Realization,
};
use crate::ncalg::MultiSeries;
use crate::report::{self, Check, RunReport};
use crate::verify::{self, series_diff, tol, VerifyOptions};
use clap::{Args, Parser, Subcommand};
use num_complex::Complex64;
use serde_json::json;
use std::path::PathBuf;
use std::time::Instant;

type C = Complex64;

#[derive(Parser, Debug)]
#[command(name = "periodlab", version, about = "Lauricella period matrices, associators and coaction checks")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    /// Write the JSON report to this file.
    #[arg(long, global = true)]
    pub json: Option<PathBuf>,
    /// Print a plain table of checks on stdout instead of JSON.
    #[arg(long, global = true)]
    pub table: bool,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Period matrix, single-valued matrix or Taylor expansion.
    Lauricella(LauricellaArgs),
    /// Run a verification suite.
    Verify(VerifyArgs),
    /// Gauss hypergeometric function and its period matrix.
    Hyp2f1(HypArgs),
}

#[derive(Args, Debug)]
pub struct LauricellaArgs {
    /// Configuration file with [points], [branches], [quadrature].
    #[arg(long, conflicts_with = "points")]
    pub config: Option<PathBuf>,
    /// Comma-separated σ1..σn, e.g. `1,3` or `1,2+1i`.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    pub points: Option<Vec<String>>,
    /// Comma-separated s0..sn.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    pub s: Option<Vec<String>>,
    /// Taylor expansion to this total degree.
    #[arg(long)]
    pub taylor: Option<usize>,
    /// Single-valued version.
    #[arg(long)]
    pub sv: bool,
    /// Restrict to one entry `i,j` (1-based).
    #[arg(long, value_delimiter = ',')]
    pub entry: Option<Vec<usize>>,
}

#[derive(Args, Debug)]
pub struct VerifyArgs {
    /// One of beta, double-copy, twisted, coaction, fl-agreement, hyp2f1.
    pub suite: String,
    #[arg(long)]
    pub n: Option<usize>,
    #[arg(long)]
    pub degree: Option<usize>,
}

#[derive(Args, Debug)]
pub struct HypArgs {
    #[arg(long, allow_hyphen_values = true)]
    pub a: String,
    #[arg(long, allow_hyphen_values = true)]
    pub b: String,
    #[arg(long, allow_hyphen_values = true)]
    pub c: String,
    #[arg(long, allow_hyphen_values = true)]
    pub y: String,
    /// Single-valued ℱ^s, 𝒢^s, F^s, G^s.
    #[arg(long)]
    pub sv: bool,
    /// Period matrix, determinant and twisted period relations.
    #[arg(long)]
    pub matrix: bool,
    /// Laurent expansion of ℱ to this degree.
    #[arg(long)]
    pub laurent: Option<usize>,
}

pub fn parse_complex(s: &str) -> Result<C> {
    s.trim()
        .parse::<C>()
        .map_err(|_| Error::Config(format!("cannot parse `{s}` as a number")))
}

fn parse_list(v: &[String]) -> Result<Vec<C>> {
    v.iter().map(|s| parse_complex(s)).collect()
}

fn command_name(c: &Command) -> &'static str {
    match c {
        Command::Lauricella(_) => "lauricella",
        Command::Verify(_) => "verify",
        Command::Hyp2f1(_) => "hyp2f1",
    }
}

/// Runs a parsed command; errors are folded into the report.
pub fn execute(cli: &Cli) -> RunReport {
    let out = match &cli.command {
        Command::Lauricella(a) => cmd_lauricella(a),
        Command::Verify(a) => cmd_verify(a),
        Command::Hyp2f1(a) => cmd_hyp2f1(a),
    };
    out.unwrap_or_else(|e| {
        let mut r = RunReport::new(command_name(&cli.command), json!(null));
        r.fail_with(&e);
        r
    })
}

pub fn exit_code(r: &RunReport) -> i32 {
    if r.error.is_some() {
        2
    } else if r.passed {
        0
    } else {
        1
    }
}

/// Parses `args`, runs, writes output and returns the exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let args: Vec<std::ffi::OsString> = args.into_iter().map(Into::into).collect();
    let cli = match Cli::try_parse_from(&args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 2 } else { 0 };
        }
    };
    let start = Instant::now();
    let mut r = execute(&cli);
    if r.config.is_null() {
        let argv: Vec<String> = args.iter().skip(1).map(|a| a.to_string_lossy().into_owned()).collect();
        r.config = json!({ "args": argv });
    }
    eprintln!("wall time {:.3} s", start.elapsed().as_secs_f64());
    let text = r.to_json();
    if let Some(p) = &cli.json {
        if let Err(e) = std::fs::write(p, format!("{text}\n")) {
            eprintln!("error: {}: {e}", p.display());
            return 2;
        }
    }
    if cli.table {
        print!("{}", r.to_table());
    } else if cli.json.is_none() {
        println!("{text}");
    }
    exit_code(&r)
}

fn load_config(a: &LauricellaArgs) -> Result<Configuration> {
    match (&a.config, &a.points) {
        (Some(p), _) => Configuration::from_file(p),
        (None, Some(pts)) => Configuration::new(&parse_list(pts)?),
        (None, None) => Err(Error::Config("give --config FILE or --points".into())),
    }
}

fn entry_index(a: &LauricellaArgs, n: usize) -> Result<Option<(usize, usize)>> {
    match &a.entry {
        None => Ok(None),
        Some(v) if v.len() == 2 && (1..=n).contains(&v[0]) && (1..=n).contains(&v[1]) => Ok(Some((v[0], v[1]))),
        Some(_) => Err(Error::Config(format!("--entry must be i,j with 1 ≤ i, j ≤ {n}"))),
    }
}

pub fn cmd_lauricella(a: &LauricellaArgs) -> Result<RunReport> {
    let cfg = load_config(a)?;
    let n = cfg.n();
    let entry = entry_index(a, n)?;
    let s = a.s.as_deref().map(parse_list).transpose()?.map(ParameterVector::new);
    if let Some(s) = &s {
        if s.s.len() != n + 1 {
            return Err(Error::Config(format!("--s needs {} values s0..s{n}", n + 1)));
        }
    }
    if s.is_none() && a.taylor.is_none() {
        return Err(Error::Config("give --s values, --taylor N, or both".into()));
    }
    // n = 1 with σ1 = 1 on the principal branch is the beta function
    let is_beta = n == 1 && cfg.sigma(1) == C::new(1.0, 0.0) && cfg.log_branches[0] == 0;
    let config = json!({ "configuration": cfg, "s": s, "sv": a.sv, "taylor": a.taylor, "entry": entry });
    let mut r = RunReport::new("lauricella", config);

    if let Some(d) = a.taylor {
        let m = match (entry, a.sv) {
            (Some((i, j)), false) => single(Realization::Ordinary, lauricella_taylor(&cfg, i, j, d)?),
            (Some((i, j)), true) => single(Realization::SingleValued, sv_lauricella_taylor(&cfg, i, j, d)?),
            (None, false) => lauricella_taylor_matrix(&cfg, d)?,
            (None, true) => sv_lauricella_taylor_matrix(&cfg, d)?,
        };
        let mut out = report::series_matrix(&m, d);
        if let Some((i, j)) = entry {
            out["entries"][0]["i"] = json!(i);
            out["entries"][0]["j"] = json!(j);
        }
        r.set_result("taylor", out);
        if is_beta && !a.sv {
            let diff = series_diff(&m.entries[0][0], &verify::beta_expansion(d)?)?;
            r.tolerance("expansion", tol::EXPANSION);
            r.push(Check::numeric("Taylor vs zeta expansion", diff, tol::EXPANSION));
        }
        if is_beta && a.sv && d >= 2 {
            r.tolerance("sv_zeta2", tol::SV_ZETA2);
            r.push(Check::numeric("sv coefficient of s0 s1", m.entries[0][0].coeff(&[1, 1]).norm(), tol::SV_ZETA2));
        }
    }

    if let Some(s) = &s {
        let m = match (entry, a.sv) {
            (Some((i, j)), false) => single(Realization::Ordinary, lauricella_entry_continued(&cfg, s, i, j)?),
            (Some((i, j)), true) => single(Realization::SingleValued, sv_lauricella_entry(&cfg, s, i, j)?),
            (None, false) => lauricella_matrix(&cfg, s)?,
            (None, true) => sv_lauricella_matrix(&cfg, s)?,
        };
        r.set_result("matrix", report::period_matrix(&m));
        if is_beta {
            let (s0, s1) = (s.s[0], s.s[1]);
            let f = s0 * s1 / (s0 + s1);
            let (want, key, t) = if a.sv {
                (sv_beta(s0, s1) * f, "sv_beta", tol::SV_BETA)
            } else {
                (beta(s0, s1) * f, "beta", tol::BETA)
            };
            let got = m.entries[0][0];
            r.tolerance(key, t);
            r.push(Check::numeric(format!("{key} closed form"), (got - want).norm() / want.norm(), t));
        }
    }
    Ok(r)
}

fn single<T>(realization: Realization, x: T) -> PeriodMatrix<T> {
    PeriodMatrix {
        realization,
        entries: vec![vec![x]],
    }
}

pub fn cmd_verify(a: &VerifyArgs) -> Result<RunReport> {
    verify::run_suite(
        &a.suite,
        &VerifyOptions {
            n: a.n,
            degree: a.degree,
        },
    )
}

pub fn cmd_hyp2f1(a: &HypArgs) -> Result<RunReport> {
    let p = HypParams::new(
        parse_complex(&a.a)?,
        parse_complex(&a.b)?,
        parse_complex(&a.c)?,
        parse_complex(&a.y)?,
    )?;
    p.check_generic()?;
    let config = json!({ "a": report::Cx::from(p.a), "b": report::Cx::from(p.b), "c": report::Cx::from(p.c),
        "y": report::Cx::from(p.y), "sv": a.sv, "matrix": a.matrix, "laurent": a.laurent });
    let mut r = RunReport::new("hyp2f1", config);
    r.set_result("F", report::complex(h::f21(&p)?));
    let y0 = p.y == C::new(0.0, 0.0);
    if y0 {
        return Ok(r);
    }
    r.set_result("G", report::complex(h::g21(&p)?));
    r.set_result("calF", report::complex(h::calf(&p)?));
    r.set_result("calG", report::complex(h::calg(&p)?));

    if a.matrix {
        let m = h::period_matrix(&p)?;
        r.set_result("period_matrix", report::period_matrix(&m));
        r.set_result("det_closed_form", report::complex(h::det_closed_form(&p)?));
        r.set_result("condition_number", json!(h::condition_number(&m)?));
        r.tolerance("det", tol::DET);
        r.tolerance("twisted", tol::TWISTED);
        r.push(Check::numeric("det residual", h::det_residual(&p)?, tol::DET));
        r.push(Check::numeric("twisted period relation", h::twisted_relation_residual(&p)?, tol::TWISTED));
    }

    if a.sv {
        let f = h::sv_f(&p)?;
        r.set_result("sv_calF", report::complex(h::sv_calf(&p)?));
        r.set_result("sv_calG", report::complex(h::sv_calg(&p)?));
        r.set_result("sv_F", report::complex(f));
        r.set_result("sv_G", report::complex(h::sv_g(&p)?));
        let real = [p.a, p.b, p.c, p.y].iter().all(|z| z.im == 0.0);
        if real {
            r.tolerance("sv_imag", tol::SV_IMAG);
            r.push(Check::numeric("sv F imaginary part", f.im.abs(), tol::SV_IMAG));
        }
    }

    if let Some(d) = a.laurent {
        let l = h::laurent_f(p.y, d)?;
        r.set_result(
            "laurent",
            json!({ "variables": ["a", "b", "c-b"], "pole_b": report::Cx::from(l.pole_b),
                "pole_cb": report::series(&l.pole_cb), "regular": report::series(&l.regular) }),
        );
        let cleared: MultiSeries<C> = l.cleared()?;
        let diff = series_diff(&cleared, &h::cleared_from_fl(p.y, d)?)?;
        r.tolerance("laurent", tol::LAURENT);
        r.push(Check::numeric("Laurent vs FL", diff, tol::LAURENT));
    }
    Ok(r)
}
