//! Formal algebra of motivic and de Rham period symbols.
//!
//! Generators are the Lefschetz symbol `L` (weight 2, invertible) and the
//! word coefficients of the symbolic associators `Zm_i[w]`, `Zdr_i[w]`
//! (weight `2|w|`), all relative to one fixed configuration. Expressions
//! are rational combinations of monomials; no relations are imposed.

use crate::config::Configuration;
use crate::error::{Error, Result};
use crate::gamma::zeta;
use crate::hyperlog::associators;
use crate::ncalg::{all_words, MultiSeries, NCSeries, Word};
use crate::ring::{Coeff, Q};
use num_complex::Complex64;
use num_traits::{Signed, ToPrimitive};
use std::collections::BTreeMap;
use std::f64::consts::PI;
use std::fmt;

type C = Complex64;

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Gen {
    Lef,
    AssocM { i: usize, w: Word },
    AssocDr { i: usize, w: Word },
}

impl Gen {
    pub fn weight(&self) -> i32 {
        match self {
            Gen::Lef => 2,
            Gen::AssocM { w, .. } | Gen::AssocDr { w, .. } => 2 * w.len() as i32,
        }
    }
}

impl fmt::Display for Gen {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Gen::Lef => write!(f, "L"),
            Gen::AssocM { i, w } => write!(f, "Zm{i}[{w}]"),
            Gen::AssocDr { i, w } => write!(f, "Zdr{i}[{w}]"),
        }
    }
}

/// Sorted generator powers with nonzero exponents.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Monomial(pub Vec<(Gen, i32)>);

impl Monomial {
    pub fn one() -> Self {
        Monomial(Vec::new())
    }

    pub fn gen(g: Gen, e: i32) -> Self {
        if e == 0 {
            Monomial::one()
        } else {
            Monomial(vec![(g, e)])
        }
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    pub fn weight(&self) -> i32 {
        self.0.iter().map(|(g, e)| g.weight() * e).sum()
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let mut m: BTreeMap<Gen, i32> = self.0.iter().cloned().collect();
        for (g, e) in &other.0 {
            *m.entry(g.clone()).or_insert(0) += e;
        }
        Monomial(m.into_iter().filter(|(_, e)| *e != 0).collect())
    }

    pub fn lef_power(&self) -> i32 {
        self.0
            .iter()
            .find(|(g, _)| *g == Gen::Lef)
            .map_or(0, |(_, e)| *e)
    }

    fn only_lef(&self) -> bool {
        self.0.iter().all(|(g, _)| *g == Gen::Lef)
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "1");
        }
        for (k, (g, e)) in self.0.iter().enumerate() {
            if k > 0 {
                write!(f, "*")?;
            }
            if *e == 1 {
                write!(f, "{g}")?;
            } else {
                write!(f, "{g}^{e}")?;
            }
        }
        Ok(())
    }
}

fn write_q(f: &mut fmt::Formatter<'_>, q: &Q, first: bool) -> fmt::Result {
    let a = q.abs();
    if q.is_negative() {
        write!(f, "{}", if first { "-" } else { " - " })?;
    } else if !first {
        write!(f, " + ")?;
    }
    if a != Q::one() {
        write!(f, "{a}*")?;
    }
    Ok(())
}

/// Rational combination of monomials.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PeriodExpr(pub BTreeMap<Monomial, Q>);

impl PeriodExpr {
    pub fn monomial(m: Monomial, c: Q) -> Self {
        let mut e = PeriodExpr::default();
        e.add_term(m, &c);
        e
    }

    pub fn gen(g: Gen) -> Self {
        PeriodExpr::monomial(Monomial::gen(g, 1), Q::one())
    }

    pub fn lef(e: i32) -> Self {
        PeriodExpr::monomial(Monomial::gen(Gen::Lef, e), Q::one())
    }

    /// `Zm_i[w]`, with the empty word reducing to 1.
    pub fn assoc_m(i: usize, w: &Word) -> Self {
        if w.is_empty() {
            PeriodExpr::one()
        } else {
            PeriodExpr::gen(Gen::AssocM { i, w: w.clone() })
        }
    }

    /// `Zdr_i[w]`, with the empty word reducing to 1.
    pub fn assoc_dr(i: usize, w: &Word) -> Self {
        if w.is_empty() {
            PeriodExpr::one()
        } else {
            PeriodExpr::gen(Gen::AssocDr { i, w: w.clone() })
        }
    }

    /// `ζ^m(n) = -Zm_1[e1 e0^{n-1}]` for the configuration `{0, 1}`.
    pub fn zeta_m(n: usize) -> Self {
        PeriodExpr::assoc_m(1, &zeta_word(n)).neg()
    }

    pub fn zeta_dr(n: usize) -> Self {
        PeriodExpr::assoc_dr(1, &zeta_word(n)).neg()
    }

    pub fn scalar(q: Q) -> Self {
        PeriodExpr::monomial(Monomial::one(), q)
    }

    pub fn add_term(&mut self, m: Monomial, c: &Q) {
        if c.is_zero() {
            return;
        }
        let e = self.0.entry(m.clone()).or_insert_with(Q::zero);
        *e += c;
        if e.is_zero() {
            self.0.remove(&m);
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Q)> {
        self.0.iter()
    }

    /// `Some(w)` if every monomial has weight `w` (0 for the zero
    /// expression), `None` if inhomogeneous.
    pub fn weight(&self) -> Option<i32> {
        let mut ws = self.0.keys().map(Monomial::weight);
        let first = ws.next().unwrap_or(0);
        ws.all(|w| w == first).then_some(first)
    }

    /// Applies an algebra map given on generators (`None` keeps the
    /// generator). Negative powers are only allowed for generators mapped to
    /// invertible images.
    pub fn substitute(&self, f: &impl Fn(&Gen) -> Option<PeriodExpr>) -> Result<PeriodExpr> {
        let mut out = PeriodExpr::default();
        for (m, c) in &self.0 {
            let mut term = PeriodExpr::scalar(c.clone());
            for (g, e) in &m.0 {
                let img = match f(g) {
                    Some(x) => x,
                    None => PeriodExpr::monomial(Monomial::gen(g.clone(), 1), Q::one()),
                };
                let base = if *e < 0 {
                    Coeff::inv(&img).ok_or_else(|| {
                        Error::NegativeLef(format!("cannot invert the image of {g}"))
                    })?
                } else {
                    img
                };
                for _ in 0..e.unsigned_abs() {
                    term = Coeff::mul(&term, &base);
                }
            }
            out = Coeff::add(&out, &term);
        }
        Ok(out)
    }

    pub fn to_text(&self) -> String {
        self.to_string()
    }
}

fn zeta_word(n: usize) -> Word {
    let mut v = vec![1usize];
    v.extend(std::iter::repeat(0).take(n.saturating_sub(1)));
    Word::new(&v)
}

impl fmt::Display for PeriodExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "0");
        }
        for (k, (m, c)) in self.0.iter().enumerate() {
            if m.is_one() {
                let a = c.abs();
                if c.is_negative() {
                    write!(f, "{}", if k == 0 { "-" } else { " - " })?;
                } else if k > 0 {
                    write!(f, " + ")?;
                }
                write!(f, "{a}")?;
            } else {
                write_q(f, c, k == 0)?;
                write!(f, "{m}")?;
            }
        }
        Ok(())
    }
}

impl Coeff for PeriodExpr {
    fn zero() -> Self {
        PeriodExpr::default()
    }
    fn one() -> Self {
        PeriodExpr::scalar(Q::one())
    }
    fn is_zero(&self) -> bool {
        self.0.is_empty()
    }
    fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (m, c) in &other.0 {
            out.add_term(m.clone(), c);
        }
        out
    }
    fn mul(&self, other: &Self) -> Self {
        let mut out = PeriodExpr::default();
        for (a, x) in &self.0 {
            for (b, y) in &other.0 {
                out.add_term(a.mul(b), &(x * y));
            }
        }
        out
    }
    fn neg(&self) -> Self {
        PeriodExpr(self.0.iter().map(|(m, c)| (m.clone(), -c)).collect())
    }
    fn from_q(x: &Q) -> Self {
        PeriodExpr::scalar(x.clone())
    }
    fn inv(&self) -> Option<Self> {
        if self.0.len() != 1 {
            return None;
        }
        let (m, c) = self.0.iter().next().expect("one term");
        if !m.only_lef() {
            return None;
        }
        let inv_m = Monomial(m.0.iter().map(|(g, e)| (g.clone(), -e)).collect());
        Some(PeriodExpr::monomial(inv_m, c.recip()))
    }
}

/// The de Rham projection: `L ↦ 0`, `Zm_i[w] ↦ Zdr_i[w]`.
pub fn de_rham_projection(expr: &PeriodExpr) -> Result<PeriodExpr> {
    for m in expr.0.keys() {
        if m.lef_power() < 0 {
            return Err(Error::NegativeLef(format!(
                "de Rham projection of the non-effective monomial {m}"
            )));
        }
    }
    expr.substitute(&|g| match g {
        Gen::Lef => Some(PeriodExpr::default()),
        Gen::AssocM { i, w } => Some(PeriodExpr::assoc_dr(*i, w)),
        Gen::AssocDr { .. } => None,
    })
}

/// Symbolic associator `Σ_w Zm_i[w]·w` (or its de Rham version) on the
/// alphabet `e0..en`.
pub fn symbolic_associator(n: usize, i: usize, max_weight: usize, de_rham: bool) -> NCSeries<PeriodExpr> {
    let terms = all_words(n + 1, max_weight).into_iter().map(|w| {
        let c = if de_rham {
            PeriodExpr::assoc_dr(i, &w)
        } else {
            PeriodExpr::assoc_m(i, &w)
        };
        (w, c)
    });
    NCSeries::from_terms(n + 1, max_weight, terms).expect("words fit the alphabet")
}

pub fn symbolic_associators(n: usize, max_weight: usize, de_rham: bool) -> Vec<NCSeries<PeriodExpr>> {
    (1..=n)
        .map(|i| symbolic_associator(n, i, max_weight, de_rham))
        .collect()
}

/// Weight of a series with period coefficients, counting each `s_k` as
/// weight `-2`: `Some(w)` if every term has total weight `w`.
pub fn series_weight(s: &MultiSeries<PeriodExpr>) -> Option<i32> {
    let mut found: Option<i32> = None;
    for (e, c) in s.terms() {
        let w = c.weight()? - 2 * e.degree() as i32;
        match found {
            None => found = Some(w),
            Some(x) if x != w => return None,
            _ => {}
        }
    }
    Some(found.unwrap_or(0))
}

/// Numeric data for the period and single-valued period maps.
#[derive(Clone, Debug)]
pub struct PeriodBackend {
    pub assocs: Vec<NCSeries<C>>,
    /// `log|σ_i|²`, `log|1 - σ_i/σ_k|²` indexed `[i-1][k]`.
    sv_length_one: Vec<Vec<f64>>,
    /// Whether the configuration is `{0, 1}` (enables the sv zeta table).
    is_01: bool,
}

impl PeriodBackend {
    pub fn new(cfg: &Configuration, max_weight: usize) -> Result<Self> {
        let assocs = associators(cfg, max_weight)?;
        let sv_length_one = (1..=cfg.n())
            .map(|i| {
                let si = cfg.sigma(i);
                (0..=cfg.n())
                    .map(|k| {
                        if k == i {
                            0.0
                        } else if k == 0 {
                            si.norm_sqr().ln()
                        } else {
                            (C::new(1.0, 0.0) - si / cfg.sigma(k)).norm_sqr().ln()
                        }
                    })
                    .collect()
            })
            .collect();
        let is_01 = cfg.n() == 1 && cfg.sigma(1) == C::new(1.0, 0.0);
        Ok(PeriodBackend {
            assocs,
            sv_length_one,
            is_01,
        })
    }

    fn assoc(&self, i: usize, w: &Word) -> Result<C> {
        let z = self
            .assocs
            .get(i.wrapping_sub(1))
            .ok_or_else(|| Error::NoBackend(format!("no associator for index {i}")))?;
        if w.len() > z.max_weight() {
            return Err(Error::WeightExceeded {
                requested: w.len(),
                cutoff: z.max_weight(),
            });
        }
        Ok(z.coeff(w))
    }
}

fn eval_with(expr: &PeriodExpr, f: impl Fn(&Gen) -> Result<C>) -> Result<C> {
    let mut total = C::new(0.0, 0.0);
    for (m, c) in &expr.0 {
        let mut v = C::new(c.to_f64().unwrap_or(f64::NAN), 0.0);
        for (g, e) in &m.0 {
            v *= f(g)?.powi(*e);
        }
        total += v;
    }
    Ok(total)
}

/// Period map: `L ↦ 2πi`, `Zm_i[w] ↦` the numeric associator coefficient.
pub fn per_eval(expr: &PeriodExpr, backend: &PeriodBackend) -> Result<C> {
    eval_with(expr, |g| match g {
        Gen::Lef => Ok(C::new(0.0, 2.0 * PI)),
        Gen::AssocM { i, w } => backend.assoc(*i, w),
        Gen::AssocDr { .. } => Err(Error::NoBackend(format!(
            "the period map is not defined on the de Rham symbol {g}"
        ))),
    })
}

/// Single-valued period map on de Rham symbols: `L ↦ -1`, length-one words
/// by `2 Re ∫ω_k`, and for `{0, 1}` the single-valued zeta values through
/// weight 4.
pub fn sv_eval(expr: &PeriodExpr, backend: &PeriodBackend) -> Result<C> {
    eval_with(expr, |g| match g {
        Gen::Lef => Ok(C::new(-1.0, 0.0)),
        Gen::AssocDr { i, w } => {
            if w.len() == 1 {
                let k = w.last().expect("length one");
                let row = backend
                    .sv_length_one
                    .get(i.wrapping_sub(1))
                    .ok_or_else(|| Error::NoBackend(format!("no data for index {i}")))?;
                return Ok(C::new(row[k], 0.0));
            }
            if backend.is_01 {
                // every coefficient of weight ≤ 4 is a rational multiple of
                // ζ(weight); sv kills ζ(2), ζ(4) and doubles ζ(3)
                return match w.len() {
                    2 | 4 => Ok(C::new(0.0, 0.0)),
                    3 => Ok(backend.assoc(*i, w)? * 2.0),
                    _ => Err(Error::NoBackend(format!(
                        "single-valued value of {g} needs weight ≤ 4"
                    ))),
                };
            }
            Err(Error::NoBackend(format!(
                "no single-valued backend for {g} on this configuration"
            )))
        }
        Gen::AssocM { .. } => Err(Error::NoBackend(format!(
            "the single-valued map is not defined on the motivic symbol {g}"
        ))),
    })
}

/// Element of `P^m ⊗ P^ϖ` in bilinear normal form.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct TensorExpr(pub BTreeMap<(Monomial, Monomial), Q>);

impl TensorExpr {
    pub fn pure(left: &PeriodExpr, right: &PeriodExpr) -> Self {
        let mut out = TensorExpr::default();
        for (a, x) in &left.0 {
            for (b, y) in &right.0 {
                out.add_term((a.clone(), b.clone()), &(x * y));
            }
        }
        out
    }

    pub fn left(x: &PeriodExpr) -> Self {
        TensorExpr::pure(x, &PeriodExpr::one())
    }

    pub fn right(y: &PeriodExpr) -> Self {
        TensorExpr::pure(&PeriodExpr::one(), y)
    }

    pub fn add_term(&mut self, k: (Monomial, Monomial), c: &Q) {
        if c.is_zero() {
            return;
        }
        let e = self.0.entry(k.clone()).or_insert_with(Q::zero);
        *e += c;
        if e.is_zero() {
            self.0.remove(&k);
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&(Monomial, Monomial), &Q)> {
        self.0.iter()
    }

    /// Applies `f` to each right factor monomial.
    pub fn map_right(&self, f: impl Fn(&Monomial) -> Monomial) -> Self {
        let mut out = TensorExpr::default();
        for ((a, b), c) in &self.0 {
            out.add_term((a.clone(), f(b)), c);
        }
        out
    }

    /// `(id ⊗ ε)`: `L ↦ 1`, every nonempty de Rham symbol to 0.
    pub fn counit(&self) -> PeriodExpr {
        let mut out = PeriodExpr::default();
        for ((a, b), c) in &self.0 {
            if b.only_lef() {
                out.add_term(a.clone(), c);
            }
        }
        out
    }

    /// Applies an algebra map to both factors, for example to impose known
    /// vanishing of symbols.
    pub fn substitute(&self, f: &impl Fn(&Gen) -> Option<PeriodExpr>) -> Result<TensorExpr> {
        let mut out = TensorExpr::default();
        for ((a, b), c) in &self.0 {
            let l = PeriodExpr::monomial(a.clone(), c.clone()).substitute(f)?;
            let r = PeriodExpr::monomial(b.clone(), Q::one()).substitute(f)?;
            out = Coeff::add(&out, &TensorExpr::pure(&l, &r));
        }
        Ok(out)
    }
}

impl fmt::Display for TensorExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "0");
        }
        for (k, ((a, b), c)) in self.0.iter().enumerate() {
            write_q(f, c, k == 0)?;
            write!(f, "({a})⊗({b})")?;
        }
        Ok(())
    }
}

impl Coeff for TensorExpr {
    fn zero() -> Self {
        TensorExpr::default()
    }
    fn one() -> Self {
        TensorExpr::pure(&PeriodExpr::one(), &PeriodExpr::one())
    }
    fn is_zero(&self) -> bool {
        self.0.is_empty()
    }
    fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (k, c) in &other.0 {
            out.add_term(k.clone(), c);
        }
        out
    }
    fn mul(&self, other: &Self) -> Self {
        let mut out = TensorExpr::default();
        for ((a, b), x) in &self.0 {
            for ((c, d), y) in &other.0 {
                out.add_term((a.mul(c), b.mul(d)), &(x * y));
            }
        }
        out
    }
    fn neg(&self) -> Self {
        TensorExpr(self.0.iter().map(|(k, c)| (k.clone(), -c)).collect())
    }
    fn from_q(x: &Q) -> Self {
        let mut out = TensorExpr::default();
        out.add_term((Monomial::one(), Monomial::one()), x);
        out
    }
    fn inv(&self) -> Option<Self> {
        if self.0.len() != 1 {
            return None;
        }
        let ((a, b), c) = self.0.iter().next().expect("one term");
        if !a.only_lef() || !b.only_lef() {
            return None;
        }
        let flip = |m: &Monomial| Monomial(m.0.iter().map(|(g, e)| (g.clone(), -e)).collect());
        let mut out = TensorExpr::default();
        out.add_term((flip(a), flip(b)), &c.recip());
        Some(out)
    }
}

/// `Δζ^m(n) = ζ^m(n) ⊗ L^n + 1 ⊗ ζ^dr(n)`, with `ζ^dr(n) = 0` for even `n`.
pub fn coact_zeta(n: usize) -> Result<TensorExpr> {
    if n < 2 {
        return Err(Error::Domain("coact_zeta needs n ≥ 2".into()));
    }
    let mut out = TensorExpr::pure(&PeriodExpr::zeta_m(n), &PeriodExpr::lef(n as i32));
    if n % 2 == 1 {
        out = Coeff::add(&out, &TensorExpr::right(&PeriodExpr::zeta_dr(n)));
    }
    Ok(out)
}

/// Exponential part `E` of the local beta function
/// `β_loc(s0, s1) = (s0+s1)/(s0 s1) · E`, with
/// `E = exp(Σ_{n≥2} (-1)^{n-1} ζ(n)/n ((s0+s1)^n - s0^n - s1^n))`.
///
/// `s0, s1` are variables `0, 1` of a series in `num_vars` variables, and
/// `zeta(n)` supplies the coefficient standing for `ζ(n)`.
pub fn beta_loc_exp_with<R: Coeff>(
    num_vars: usize,
    max_degree: usize,
    zeta: impl Fn(usize) -> Result<R>,
) -> Result<MultiSeries<R>> {
    if num_vars < 2 {
        return Err(Error::Domain("β_loc needs at least two variables".into()));
    }
    let s0 = MultiSeries::<R>::var(num_vars, max_degree, 0);
    let s1 = MultiSeries::<R>::var(num_vars, max_degree, 1);
    let c = s0.add(&s1)?;
    let one = MultiSeries::<R>::one(num_vars, max_degree);
    let (mut p0, mut p1, mut pc) = (one.clone(), one.clone(), one);
    let mut arg = MultiSeries::<R>::zero(num_vars, max_degree);
    for n in 1..=max_degree {
        p0 = p0.mul(&s0)?;
        p1 = p1.mul(&s1)?;
        pc = pc.mul(&c)?;
        if n < 2 {
            continue;
        }
        let sign = if n % 2 == 0 { -1 } else { 1 };
        let k = R::from_q(&Q::new(sign.into(), (n as i64).into())).mul(&zeta(n)?);
        arg = arg.add(&pc.sub(&p0)?.sub(&p1)?.scale(&k))?;
    }
    arg.exp()
}

/// `E` with motivic (`de_rham = false`) or de Rham zeta symbols; the de
/// Rham even zeta values vanish.
pub fn beta_loc_exp(num_vars: usize, max_degree: usize, de_rham: bool) -> Result<MultiSeries<PeriodExpr>> {
    beta_loc_exp_with(num_vars, max_degree, |n| {
        Ok(if de_rham && n % 2 == 0 {
            PeriodExpr::default()
        } else if de_rham {
            PeriodExpr::zeta_dr(n)
        } else {
            PeriodExpr::zeta_m(n)
        })
    })
}

/// Numeric `ζ(n)` table used to validate the period map on `{0, 1}`.
pub fn zeta_table(max_n: u32) -> Vec<(u32, f64)> {
    (2..=max_n).map(|n| (n, zeta(n))).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::q;

    fn w(s: &str) -> Word {
        Word::parse(s).unwrap()
    }

    #[test]
    fn weights_and_text() {
        assert_eq!(PeriodExpr::lef(1).weight(), Some(2));
        assert_eq!(PeriodExpr::assoc_m(1, &w("e0e1")).weight(), Some(4));
        let x = Coeff::add(&PeriodExpr::lef(1), &PeriodExpr::assoc_m(1, &w("e0e1")));
        assert_eq!(x.weight(), None);
        let y = Coeff::mul(&PeriodExpr::lef(2), &PeriodExpr::lef(-2));
        assert_eq!(y, PeriodExpr::one());
        let z = PeriodExpr::monomial(Monomial::gen(Gen::Lef, 2), q(-3, 2));
        assert_eq!(z.to_text(), "-3/2*L^2");
        assert_eq!(PeriodExpr::assoc_m(2, &w("e1e0")).to_text(), "Zm2[e1e0]");
    }

    #[test]
    fn beta_loc_numeric() {
        let e = beta_loc_exp_with(2, 10, |n| Ok(C::new(zeta(n as u32), 0.0))).unwrap();
        let (s0, s1) = (0.1, 0.15);
        let v = e.eval(&[C::new(s0, 0.0), C::new(s1, 0.0)]) * (s0 + s1) / (s0 * s1);
        let exact = crate::gamma::beta(C::new(s0, 0.0), C::new(s1, 0.0));
        assert!((v - exact).norm() < 1e-7 * exact.norm(), "{v} {exact}");
    }

    #[test]
    fn projection() {
        assert_eq!(de_rham_projection(&PeriodExpr::lef(1)).unwrap(), PeriodExpr::default());
        let a = PeriodExpr::assoc_m(1, &w("e0e1"));
        assert_eq!(de_rham_projection(&a).unwrap(), PeriodExpr::assoc_dr(1, &w("e0e1")));
        assert_eq!(de_rham_projection(&PeriodExpr::one()).unwrap(), PeriodExpr::one());
        assert!(de_rham_projection(&PeriodExpr::lef(-1)).is_err());
    }

    #[test]
    fn zeta_coaction() {
        let d2 = coact_zeta(2).unwrap();
        assert_eq!(d2, TensorExpr::pure(&PeriodExpr::zeta_m(2), &PeriodExpr::lef(2)));
        let d3 = coact_zeta(3).unwrap();
        assert_eq!(d3.counit(), PeriodExpr::zeta_m(3));
        assert!(coact_zeta(1).is_err());
    }
}
