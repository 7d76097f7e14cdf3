//! Truncated noncommutative power series in letters `e0..en` and truncated
//! commutative power series in `s0..sn`, over a generic [`Coeff`] ring.
//!
//! Every series carries a mandatory weight (resp. degree) cutoff and all
//! products silently truncate at it.

use crate::error::{Error, Result};
use crate::ring::{Coeff, Q};
use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

/// A word in the letters `e0..en`, stored as letter indices.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct Word(pub Vec<u8>);

impl Word {
    pub fn empty() -> Self {
        Word(Vec::new())
    }

    pub fn new(letters: &[usize]) -> Self {
        Word(letters.iter().map(|&l| l as u8).collect())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn letters(&self) -> impl Iterator<Item = usize> + '_ {
        self.0.iter().map(|&l| l as usize)
    }

    pub fn last(&self) -> Option<usize> {
        self.0.last().map(|&l| l as usize)
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut v = Vec::with_capacity(self.len() + other.len());
        v.extend_from_slice(&self.0);
        v.extend_from_slice(&other.0);
        Word(v)
    }

    pub fn push(&self, letter: usize) -> Word {
        let mut v = self.0.clone();
        v.push(letter as u8);
        Word(v)
    }

    /// The word with its last letter removed.
    pub fn init(&self) -> Word {
        Word(self.0[..self.0.len().saturating_sub(1)].to_vec())
    }

    pub fn max_letter(&self) -> Option<usize> {
        self.0.iter().max().map(|&l| l as usize)
    }

    /// Letter counts, i.e. the exponent vector of the abelianized word.
    pub fn content(&self, alphabet: usize) -> Vec<u32> {
        let mut e = vec![0u32; alphabet];
        for l in self.letters() {
            e[l] += 1;
        }
        e
    }

    /// Parses `e0e1e1` (or the empty string / `1` for the empty word).
    pub fn parse(s: &str) -> Option<Word> {
        let s = s.trim();
        if s.is_empty() || s == "1" || s == "∅" {
            return Some(Word::empty());
        }
        let mut out = Vec::new();
        for part in s.split('e').skip(1) {
            out.push(part.parse::<u8>().ok()?);
        }
        if !s.starts_with('e') {
            return None;
        }
        Some(Word(out))
    }
}

impl Ord for Word {
    fn cmp(&self, other: &Self) -> Ordering {
        self.len().cmp(&other.len()).then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Word {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_empty() {
            return write!(f, "1");
        }
        for l in &self.0 {
            write!(f, "e{l}")?;
        }
        Ok(())
    }
}

/// All words over `alphabet` letters of length at most `max_len`, in word order.
pub fn all_words(alphabet: usize, max_len: usize) -> Vec<Word> {
    let mut out = vec![Word::empty()];
    let mut layer = vec![Word::empty()];
    for _ in 0..max_len {
        let mut next = Vec::with_capacity(layer.len() * alphabet);
        for w in &layer {
            for l in 0..alphabet {
                next.push(w.push(l));
            }
        }
        out.extend(next.iter().cloned());
        layer = next;
    }
    out
}

/// Shuffle product of two words with integer multiplicities.
pub fn shuffle(u: &Word, v: &Word) -> BTreeMap<Word, u64> {
    fn rec(u: &[u8], v: &[u8], prefix: &mut Vec<u8>, out: &mut BTreeMap<Word, u64>) {
        if u.is_empty() || v.is_empty() {
            let mut w = prefix.clone();
            w.extend_from_slice(u);
            w.extend_from_slice(v);
            *out.entry(Word(w)).or_insert(0) += 1;
            return;
        }
        prefix.push(u[0]);
        rec(&u[1..], v, prefix, out);
        prefix.pop();
        prefix.push(v[0]);
        rec(u, &v[1..], prefix, out);
        prefix.pop();
    }
    let mut out = BTreeMap::new();
    rec(&u.0, &v.0, &mut Vec::new(), &mut out);
    out
}

/// A truncated noncommutative power series.
#[derive(Clone, Debug, PartialEq)]
pub struct NCSeries<R: Coeff> {
    alphabet: usize,
    max_weight: usize,
    coeffs: BTreeMap<Word, R>,
}

impl<R: Coeff> NCSeries<R> {
    pub fn zero(alphabet: usize, max_weight: usize) -> Self {
        NCSeries {
            alphabet,
            max_weight,
            coeffs: BTreeMap::new(),
        }
    }

    pub fn one(alphabet: usize, max_weight: usize) -> Self {
        Self::constant(alphabet, max_weight, R::one())
    }

    pub fn constant(alphabet: usize, max_weight: usize, c: R) -> Self {
        let mut s = Self::zero(alphabet, max_weight);
        if !c.is_zero() {
            s.coeffs.insert(Word::empty(), c);
        }
        s
    }

    /// The series consisting of the single letter `e_k`.
    pub fn letter(alphabet: usize, max_weight: usize, k: usize) -> Result<Self> {
        Self::from_terms(alphabet, max_weight, [(Word::new(&[k]), R::one())])
    }

    /// Builds a series from terms; repeated words are summed and words longer
    /// than `max_weight` are dropped.
    pub fn from_terms(
        alphabet: usize,
        max_weight: usize,
        terms: impl IntoIterator<Item = (Word, R)>,
    ) -> Result<Self> {
        let mut s = Self::zero(alphabet, max_weight);
        for (w, c) in terms {
            s.add_term(w, &c)?;
        }
        Ok(s)
    }

    pub fn alphabet(&self) -> usize {
        self.alphabet
    }

    pub fn max_weight(&self) -> usize {
        self.max_weight
    }

    pub fn coeff(&self, w: &Word) -> R {
        self.coeffs.get(w).cloned().unwrap_or_else(R::zero)
    }

    pub fn get(&self, w: &Word) -> Option<&R> {
        self.coeffs.get(w)
    }

    pub fn constant_term(&self) -> R {
        self.coeff(&Word::empty())
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Word, &R)> {
        self.coeffs.iter()
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    fn check_word(&self, w: &Word) -> Result<()> {
        match w.max_letter() {
            Some(l) if l >= self.alphabet => Err(Error::LetterOutOfRange {
                letter: l,
                size: self.alphabet,
            }),
            _ => Ok(()),
        }
    }

    /// Adds `c` to the coefficient of `w`.
    pub fn add_term(&mut self, w: Word, c: &R) -> Result<()> {
        self.check_word(&w)?;
        if w.len() > self.max_weight || c.is_zero() {
            return Ok(());
        }
        self.add_term_unchecked(w, c);
        Ok(())
    }

    fn add_term_unchecked(&mut self, w: Word, c: &R) {
        match self.coeffs.get_mut(&w) {
            Some(x) => {
                x.add_assign(c);
                if x.is_zero() {
                    self.coeffs.remove(&w);
                }
            }
            None => {
                if !c.is_zero() {
                    self.coeffs.insert(w, c.clone());
                }
            }
        }
    }

    pub fn set(&mut self, w: Word, c: R) -> Result<()> {
        self.check_word(&w)?;
        if w.len() > self.max_weight {
            return Ok(());
        }
        if c.is_zero() {
            self.coeffs.remove(&w);
        } else {
            self.coeffs.insert(w, c);
        }
        Ok(())
    }

    fn check_compatible(&self, other: &Self) -> Result<()> {
        if self.alphabet != other.alphabet {
            return Err(Error::AlphabetMismatch(self.alphabet, other.alphabet));
        }
        Ok(())
    }

    /// Restricts to words of length at most `w`.
    pub fn truncate(&self, w: usize) -> Self {
        let w = w.min(self.max_weight);
        NCSeries {
            alphabet: self.alphabet,
            max_weight: w,
            coeffs: self
                .coeffs
                .iter()
                .filter(|(k, _)| k.len() <= w)
                .map(|(k, v)| (k.clone(), v.clone()))
                .collect(),
        }
    }

    /// Homogeneous part of the given weight.
    pub fn weight_part(&self, w: usize) -> Self {
        NCSeries {
            alphabet: self.alphabet,
            max_weight: self.max_weight,
            coeffs: self
                .coeffs
                .iter()
                .filter(|(k, _)| k.len() == w)
                .map(|(k, v)| (k.clone(), v.clone()))
                .collect(),
        }
    }

    pub fn map_coeffs<S: Coeff>(&self, f: impl Fn(&Word, &R) -> S) -> NCSeries<S> {
        let mut out = NCSeries::zero(self.alphabet, self.max_weight);
        for (w, c) in &self.coeffs {
            let v = f(w, c);
            if !v.is_zero() {
                out.coeffs.insert(w.clone(), v);
            }
        }
        out
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_compatible(other)?;
        let mut out = self.clone();
        out.max_weight = self.max_weight.min(other.max_weight);
        out.coeffs.retain(|w, _| w.len() <= out.max_weight);
        for (w, c) in &other.coeffs {
            if w.len() <= out.max_weight {
                out.add_term_unchecked(w.clone(), c);
            }
        }
        Ok(out)
    }

    pub fn neg(&self) -> Self {
        self.map_coeffs(|_, c| c.neg())
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.neg())
    }

    pub fn scale(&self, c: &R) -> Self {
        self.map_coeffs(|_, x| c.mul(x))
    }

    /// Concatenation product, truncated at the smaller of the two cutoffs.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check_compatible(other)?;
        let w = self.max_weight.min(other.max_weight);
        let mut out = NCSeries::zero(self.alphabet, w);
        for (u, a) in &self.coeffs {
            if u.len() > w {
                continue;
            }
            for (v, b) in &other.coeffs {
                if u.len() + v.len() > w {
                    continue;
                }
                out.add_term_unchecked(u.concat(v), &a.mul(b));
            }
        }
        Ok(out)
    }

    /// Inverse for the concatenation product.
    pub fn inverse(&self) -> Result<Self> {
        let a0 = self.constant_term();
        let a0_inv = a0.inv().ok_or(Error::NotInvertible)?;
        // A = a0 (1 + N), A^{-1} = sum_k (-N)^k a0^{-1}
        let mut n = self.scale(&a0_inv);
        n.coeffs.remove(&Word::empty());
        let minus_n = n.neg();
        let mut term = Self::one(self.alphabet, self.max_weight);
        let mut acc = term.clone();
        for _ in 0..self.max_weight {
            term = term.mul(&minus_n)?;
            if term.is_empty() {
                break;
            }
            acc = acc.add(&term)?;
        }
        Ok(acc.scale(&a0_inv))
    }

    /// Exponential of a series with zero constant term.
    pub fn exp(&self) -> Result<Self> {
        if !self.constant_term().is_zero() {
            return Err(Error::NonzeroConstant);
        }
        let mut term = Self::one(self.alphabet, self.max_weight);
        let mut acc = term.clone();
        for k in 1..=self.max_weight {
            term = term.mul(self)?.scale(&R::from_q(&Q::new(1.into(), (k as i64).into())));
            if term.is_empty() {
                break;
            }
            acc = acc.add(&term)?;
        }
        Ok(acc)
    }

    /// Logarithm of a series with constant term 1.
    pub fn log(&self) -> Result<Self> {
        if self.constant_term() != R::one() {
            return Err(Error::ConstantNotOne);
        }
        let mut x = self.clone();
        x.coeffs.remove(&Word::empty());
        let mut term = Self::one(self.alphabet, self.max_weight);
        let mut acc = Self::zero(self.alphabet, self.max_weight);
        for k in 1..=self.max_weight {
            term = term.mul(&x)?;
            if term.is_empty() {
                break;
            }
            let sign = if k % 2 == 1 { 1 } else { -1 };
            acc = acc.add(&term.scale(&R::from_q(&Q::new(sign.into(), (k as i64).into()))))?;
        }
        Ok(acc)
    }

    /// Largest shuffle-relation defect `|A(u)A(v) - sum_{w in u sh v} A(w)|`
    /// over all nonempty word pairs with `|u|+|v| <= max_weight`, relative to
    /// the size of the terms involved.
    pub fn shuffle_defect(&self) -> f64 {
        let words: Vec<Word> = all_words(self.alphabet, self.max_weight.saturating_sub(1))
            .into_iter()
            .filter(|w| !w.is_empty())
            .collect();
        let mut worst: f64 = 0.0;
        for (a, u) in words.iter().enumerate() {
            for v in words[a..].iter() {
                if u.len() + v.len() > self.max_weight {
                    continue;
                }
                let lhs = self.coeff(u).mul(&self.coeff(v));
                let mut rhs = R::zero();
                let mut scale = lhs.magnitude();
                for (w, m) in shuffle(u, v) {
                    let c = self.coeff(&w);
                    scale = scale.max(c.magnitude());
                    rhs.add_assign(&c.mul(&R::from_i64(m as i64)));
                }
                let d = lhs.sub(&rhs);
                if !d.is_zero() {
                    worst = worst.max(d.magnitude() / scale.max(1.0));
                }
            }
        }
        worst
    }

    /// Whether all shuffle relations hold (exactly for exact rings, within a
    /// relative tolerance for complex coefficients).
    pub fn is_group_like(&self, tol: f64) -> bool {
        if !self.constant_term().close_to(&R::one(), tol) {
            return false;
        }
        let words: Vec<Word> = all_words(self.alphabet, self.max_weight.saturating_sub(1))
            .into_iter()
            .filter(|w| !w.is_empty())
            .collect();
        for (a, u) in words.iter().enumerate() {
            for v in words[a..].iter() {
                if u.len() + v.len() > self.max_weight {
                    continue;
                }
                let lhs = self.coeff(u).mul(&self.coeff(v));
                let mut rhs = R::zero();
                for (w, m) in shuffle(u, v) {
                    rhs.add_assign(&self.coeff(&w).mul(&R::from_i64(m as i64)));
                }
                if !lhs.close_to(&rhs, tol) {
                    return false;
                }
            }
        }
        true
    }

    /// The series `A_j` obtained by stripping a final `e_j` from every word
    /// ending in `e_j` (words not ending in `e_j` are dropped).
    pub fn strip_last(&self, j: usize) -> Result<Self> {
        if j >= self.alphabet {
            return Err(Error::LetterOutOfRange {
                letter: j,
                size: self.alphabet,
            });
        }
        let mut out = NCSeries::zero(self.alphabet, self.max_weight.saturating_sub(1));
        for (w, c) in &self.coeffs {
            if w.last() == Some(j) {
                out.coeffs.insert(w.init(), c.clone());
            }
        }
        Ok(out)
    }

    /// Abelianization: each word maps to the monomial of its letter content.
    pub fn abelianize(&self) -> MultiSeries<R> {
        let mut out = MultiSeries::zero(self.alphabet, self.max_weight);
        for (w, c) in &self.coeffs {
            out.add_term_unchecked(Exponents(w.content(self.alphabet)), c);
        }
        out
    }

    /// Beta quotient: abelianization of [`NCSeries::strip_last`].
    pub fn beta_quotient(&self, j: usize) -> Result<MultiSeries<R>> {
        Ok(self.strip_last(j)?.abelianize())
    }

    /// Ihara-type substitution
    /// `F(λe0, λG1e1G1⁻¹, …, λGnenGn⁻¹)·G_i`, truncated at the cutoff.
    ///
    /// `g` holds `G_1..G_n` (so `g[k-1]` is `G_k`) and `i` ranges over `1..=n`.
    pub fn ihara_substitute(&self, lambda: &R, g: &[NCSeries<R>], i: usize) -> Result<Self> {
        let n = self.alphabet - 1;
        if g.len() != n {
            return Err(Error::AlphabetMismatch(g.len() + 1, self.alphabet));
        }
        if i == 0 || i > n {
            return Err(Error::LetterOutOfRange {
                letter: i,
                size: self.alphabet,
            });
        }
        for (k, gk) in g.iter().enumerate() {
            self.check_compatible(gk)?;
            if gk.constant_term() != R::one() {
                return Err(Error::NonUnital(k + 1));
            }
        }
        let w = self.max_weight;
        let mut subs = Vec::with_capacity(self.alphabet);
        subs.push(Self::letter(self.alphabet, w, 0)?.scale(lambda));
        for (k, gk) in g.iter().enumerate() {
            let gk = gk.truncate(w);
            let ek = Self::letter(self.alphabet, w, k + 1)?;
            let conj = gk.mul(&ek)?.mul(&gk.inverse()?)?;
            subs.push(conj.scale(lambda));
        }
        // images of all prefixes of stored words
        let mut images: BTreeMap<Word, Self> = BTreeMap::new();
        images.insert(Word::empty(), Self::one(self.alphabet, w));
        let mut out = Self::zero(self.alphabet, w);
        for (word, c) in &self.coeffs {
            let img = Self::image_of(word, &subs, &mut images)?;
            out = out.add(&img.scale(c))?;
        }
        out.mul(&g[i - 1].truncate(w))
    }

    fn image_of(
        word: &Word,
        subs: &[Self],
        cache: &mut BTreeMap<Word, Self>,
    ) -> Result<Self> {
        if let Some(v) = cache.get(word) {
            return Ok(v.clone());
        }
        let prefix = word.init();
        let p = Self::image_of(&prefix, subs, cache)?;
        let v = p.mul(&subs[word.last().expect("nonempty")])?;
        cache.insert(word.clone(), v.clone());
        Ok(v)
    }
}

impl<R: Coeff + fmt::Display> fmt::Display for NCSeries<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (w, c) in &self.coeffs {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write!(f, "({c}){w}")?;
        }
        Ok(())
    }
}

/// Exponent vector of a commutative monomial, ordered by total degree first.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Exponents(pub Vec<u32>);

impl Exponents {
    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn zero(n: usize) -> Self {
        Exponents(vec![0; n])
    }

    pub fn unit(n: usize, k: usize) -> Self {
        let mut e = vec![0; n];
        e[k] = 1;
        Exponents(e)
    }

    pub fn add(&self, other: &Exponents) -> Exponents {
        Exponents(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }
}

impl Ord for Exponents {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| other.0.cmp(&self.0))
    }
}

impl PartialOrd for Exponents {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// All exponent vectors in `n` variables of total degree at most `d`, in
/// monomial order.
pub fn all_exponents(n: usize, d: u32) -> Vec<Exponents> {
    fn rec(n: usize, left: u32, cur: &mut Vec<u32>, out: &mut Vec<Exponents>) {
        if cur.len() == n {
            out.push(Exponents(cur.clone()));
            return;
        }
        for e in 0..=left {
            cur.push(e);
            rec(n, left - e, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(n, d, &mut Vec::new(), &mut out);
    out.sort();
    out
}

/// A truncated commutative power series in `s0..s_{num_vars-1}`.
#[derive(Clone, Debug, PartialEq)]
pub struct MultiSeries<R: Coeff> {
    num_vars: usize,
    max_degree: usize,
    coeffs: BTreeMap<Exponents, R>,
}

impl<R: Coeff> MultiSeries<R> {
    pub fn zero(num_vars: usize, max_degree: usize) -> Self {
        MultiSeries {
            num_vars,
            max_degree,
            coeffs: BTreeMap::new(),
        }
    }

    pub fn constant(num_vars: usize, max_degree: usize, c: R) -> Self {
        let mut s = Self::zero(num_vars, max_degree);
        s.add_term_unchecked(Exponents::zero(num_vars), &c);
        s
    }

    pub fn one(num_vars: usize, max_degree: usize) -> Self {
        Self::constant(num_vars, max_degree, R::one())
    }

    /// The variable `s_k`.
    pub fn var(num_vars: usize, max_degree: usize, k: usize) -> Self {
        let mut s = Self::zero(num_vars, max_degree);
        if max_degree >= 1 {
            s.add_term_unchecked(Exponents::unit(num_vars, k), &R::one());
        }
        s
    }

    pub fn from_terms(
        num_vars: usize,
        max_degree: usize,
        terms: impl IntoIterator<Item = (Vec<u32>, R)>,
    ) -> Result<Self> {
        let mut s = Self::zero(num_vars, max_degree);
        for (e, c) in terms {
            if e.len() != num_vars {
                return Err(Error::AlphabetMismatch(e.len(), num_vars));
            }
            s.add_term(&e, &c);
        }
        Ok(s)
    }

    pub fn num_vars(&self) -> usize {
        self.num_vars
    }

    pub fn max_degree(&self) -> usize {
        self.max_degree
    }

    pub fn coeff(&self, e: &[u32]) -> R {
        self.coeffs
            .get(&Exponents(e.to_vec()))
            .cloned()
            .unwrap_or_else(R::zero)
    }

    pub fn constant_term(&self) -> R {
        self.coeff(&vec![0; self.num_vars])
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Exponents, &R)> {
        self.coeffs.iter()
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn add_term(&mut self, e: &[u32], c: &R) {
        let e = Exponents(e.to_vec());
        if e.degree() as usize <= self.max_degree {
            self.add_term_unchecked(e, c);
        }
    }

    fn add_term_unchecked(&mut self, e: Exponents, c: &R) {
        if c.is_zero() {
            return;
        }
        match self.coeffs.get_mut(&e) {
            Some(x) => {
                x.add_assign(c);
                if x.is_zero() {
                    self.coeffs.remove(&e);
                }
            }
            None => {
                self.coeffs.insert(e, c.clone());
            }
        }
    }

    fn check_compatible(&self, other: &Self) -> Result<()> {
        if self.num_vars != other.num_vars {
            return Err(Error::AlphabetMismatch(self.num_vars, other.num_vars));
        }
        Ok(())
    }

    pub fn truncate(&self, d: usize) -> Self {
        let d = d.min(self.max_degree);
        MultiSeries {
            num_vars: self.num_vars,
            max_degree: d,
            coeffs: self
                .coeffs
                .iter()
                .filter(|(e, _)| e.degree() as usize <= d)
                .map(|(e, c)| (e.clone(), c.clone()))
                .collect(),
        }
    }

    /// Raises the nominal cutoff without adding terms (the caller asserts the
    /// omitted higher-degree part is zero).
    pub fn with_max_degree(mut self, d: usize) -> Self {
        self.max_degree = d;
        self.coeffs.retain(|e, _| e.degree() as usize <= d);
        self
    }

    pub fn map_coeffs<S: Coeff>(&self, f: impl Fn(&Exponents, &R) -> S) -> MultiSeries<S> {
        let mut out = MultiSeries::zero(self.num_vars, self.max_degree);
        for (e, c) in &self.coeffs {
            out.add_term_unchecked(e.clone(), &f(e, c));
        }
        out
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_compatible(other)?;
        let d = self.max_degree.min(other.max_degree);
        let mut out = self.truncate(d);
        for (e, c) in &other.coeffs {
            if e.degree() as usize <= d {
                out.add_term_unchecked(e.clone(), c);
            }
        }
        Ok(out)
    }

    pub fn neg(&self) -> Self {
        self.map_coeffs(|_, c| c.neg())
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.neg())
    }

    pub fn scale(&self, c: &R) -> Self {
        self.map_coeffs(|_, x| c.mul(x))
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check_compatible(other)?;
        let d = self.max_degree.min(other.max_degree);
        let mut out = MultiSeries::zero(self.num_vars, d);
        for (e, a) in &self.coeffs {
            let de = e.degree() as usize;
            if de > d {
                continue;
            }
            for (f, b) in &other.coeffs {
                if de + f.degree() as usize > d {
                    continue;
                }
                out.add_term_unchecked(e.add(f), &a.mul(b));
            }
        }
        Ok(out)
    }

    /// Multiplication by `s_k`; the cutoff is kept.
    pub fn mul_var(&self, k: usize) -> Self {
        let mut out = MultiSeries::zero(self.num_vars, self.max_degree);
        for (e, c) in &self.coeffs {
            if (e.degree() as usize) < self.max_degree {
                let mut e2 = e.clone();
                e2.0[k] += 1;
                out.coeffs.insert(e2, c.clone());
            }
        }
        out
    }

    /// Multiplies the homogeneous part of each degree `d` by `f(d)`.
    pub fn scale_by_degree(&self, f: impl Fn(u32) -> R) -> Self {
        self.map_coeffs(|e, c| f(e.degree()).mul(c))
    }

    pub fn inverse(&self) -> Result<Self> {
        let a0 = self.constant_term();
        let a0_inv = a0.inv().ok_or(Error::NotInvertible)?;
        let mut n = self.scale(&a0_inv);
        n.coeffs.remove(&Exponents::zero(self.num_vars));
        let minus_n = n.neg();
        let mut term = Self::one(self.num_vars, self.max_degree);
        let mut acc = term.clone();
        for _ in 0..self.max_degree {
            term = term.mul(&minus_n)?;
            if term.is_empty() {
                break;
            }
            acc = acc.add(&term)?;
        }
        Ok(acc.scale(&a0_inv))
    }

    pub fn exp(&self) -> Result<Self> {
        if !self.constant_term().is_zero() {
            return Err(Error::NonzeroConstant);
        }
        let mut term = Self::one(self.num_vars, self.max_degree);
        let mut acc = term.clone();
        for k in 1..=self.max_degree {
            term = term
                .mul(self)?
                .scale(&R::from_q(&Q::new(1.into(), (k as i64).into())));
            if term.is_empty() {
                break;
            }
            acc = acc.add(&term)?;
        }
        Ok(acc)
    }

    /// Substitutes `s_k -> sum_l m[k][l] t_l` into a series in new variables
    /// `t_0..t_{new_vars-1}`.
    pub fn compose_linear(&self, m: &[Vec<R>], new_vars: usize) -> Result<Self> {
        if m.len() != self.num_vars {
            return Err(Error::AlphabetMismatch(m.len(), self.num_vars));
        }
        let d = self.max_degree;
        let images: Vec<Self> = m
            .iter()
            .map(|row| {
                let mut s = Self::zero(new_vars, d);
                for (l, c) in row.iter().enumerate() {
                    if d >= 1 {
                        s.add_term_unchecked(Exponents::unit(new_vars, l), c);
                    }
                }
                s
            })
            .collect();
        // powers[k][p] = images[k]^p
        let mut powers: Vec<Vec<Self>> = Vec::new();
        for img in &images {
            let mut v = vec![Self::one(new_vars, d)];
            for p in 1..=d {
                let next = v[p - 1].mul(img)?;
                v.push(next);
            }
            powers.push(v);
        }
        let mut out = Self::zero(new_vars, d);
        for (e, c) in &self.coeffs {
            let mut t = Self::constant(new_vars, d, c.clone());
            for (k, &p) in e.0.iter().enumerate() {
                if p > 0 {
                    t = t.mul(&powers[k][p as usize])?;
                }
            }
            out = out.add(&t)?;
        }
        Ok(out)
    }
}

impl MultiSeries<num_complex::Complex64> {
    /// Evaluates the truncated polynomial at a point.
    pub fn eval(&self, s: &[num_complex::Complex64]) -> num_complex::Complex64 {
        let mut acc = num_complex::Complex64::new(0.0, 0.0);
        for (e, c) in &self.coeffs {
            let mut t = *c;
            for (k, &p) in e.0.iter().enumerate() {
                t *= s[k].powu(p);
            }
            acc += t;
        }
        acc
    }

    /// Maximum coefficientwise distance to another complex series.
    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        let d = self.max_degree.min(other.max_degree);
        let mut worst: f64 = 0.0;
        for e in self.coeffs.keys().chain(other.coeffs.keys()) {
            if e.degree() as usize > d {
                continue;
            }
            let a = self.coeff(&e.0);
            let b = other.coeff(&e.0);
            worst = worst.max((a - b).norm());
        }
        worst
    }
}

impl<R: Coeff + fmt::Display> fmt::Display for MultiSeries<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (e, c) in &self.coeffs {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write!(f, "({c})")?;
            for (k, &p) in e.0.iter().enumerate() {
                match p {
                    0 => {}
                    1 => write!(f, "s{k}")?,
                    _ => write!(f, "s{k}^{p}")?,
                }
            }
        }
        Ok(())
    }
}

/// Lie bracket `[a, b] = ab - ba`.
pub fn bracket<R: Coeff>(a: &NCSeries<R>, b: &NCSeries<R>) -> Result<NCSeries<R>> {
    a.mul(b)?.sub(&b.mul(a)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::q;

    fn w(l: &[usize]) -> Word {
        Word::new(l)
    }

    #[test]
    fn shuffle_examples() {
        let s = shuffle(&w(&[0]), &w(&[1]));
        assert_eq!(s.len(), 2);
        assert_eq!(s[&w(&[0, 1])], 1);
        assert_eq!(s[&w(&[1, 0])], 1);
        let s = shuffle(&Word::empty(), &w(&[1, 0, 1]));
        assert_eq!(s.into_iter().collect::<Vec<_>>(), vec![(w(&[1, 0, 1]), 1)]);
        let s = shuffle(&w(&[0, 1]), &w(&[0]));
        assert_eq!(s.values().sum::<u64>(), 3);
        assert_eq!(s[&w(&[0, 0, 1])], 2);
    }

    #[test]
    fn concat_examples() {
        let one = NCSeries::<Q>::one(2, 4);
        let e0 = NCSeries::<Q>::letter(2, 4, 0).unwrap();
        let e1 = NCSeries::<Q>::letter(2, 4, 1).unwrap();
        assert_eq!(one.mul(&e1).unwrap(), e1);
        let p = e0.mul(&e1).unwrap();
        assert_eq!(p.len(), 1);
        assert_eq!(p.coeff(&w(&[0, 1])), q(1, 1));
        let a = one.add(&e0).unwrap();
        let sq = a.mul(&a).unwrap();
        assert_eq!(sq.coeff(&Word::empty()), q(1, 1));
        assert_eq!(sq.coeff(&w(&[0])), q(2, 1));
        assert_eq!(sq.coeff(&w(&[0, 0])), q(1, 1));
        assert_eq!(sq.len(), 3);
    }

    #[test]
    fn alphabet_mismatch() {
        let a = NCSeries::<Q>::one(2, 3);
        let b = NCSeries::<Q>::one(3, 3);
        assert_eq!(a.mul(&b), Err(Error::AlphabetMismatch(2, 3)));
    }

    #[test]
    fn inverse_geometric() {
        let a = NCSeries::<Q>::one(2, 4)
            .add(&NCSeries::letter(2, 4, 0).unwrap())
            .unwrap();
        let inv = a.inverse().unwrap();
        for k in 0..=4usize {
            let sign = if k % 2 == 0 { 1 } else { -1 };
            assert_eq!(inv.coeff(&Word::new(&vec![0; k])), q(sign, 1));
        }
        assert_eq!(a.mul(&inv).unwrap(), NCSeries::one(2, 4));
        assert_eq!(NCSeries::<Q>::one(2, 4).inverse().unwrap(), NCSeries::one(2, 4));
        assert_eq!(NCSeries::<Q>::zero(2, 4).inverse(), Err(Error::NotInvertible));
    }

    #[test]
    fn exp_log() {
        let z = NCSeries::<Q>::zero(2, 4);
        assert_eq!(z.exp().unwrap(), NCSeries::one(2, 4));
        let e0 = NCSeries::<Q>::letter(2, 4, 0).unwrap();
        assert_eq!(e0.exp().unwrap().log().unwrap(), e0);
        let l = e0.add(&NCSeries::letter(2, 4, 1).unwrap()).unwrap();
        let ex = l.exp().unwrap();
        for word in [[0, 0], [0, 1], [1, 0], [1, 1]] {
            assert_eq!(ex.coeff(&w(&word)), q(1, 2));
        }
        assert_eq!(NCSeries::<Q>::one(2, 3).exp(), Err(Error::NonzeroConstant));
        assert_eq!(NCSeries::<Q>::zero(2, 3).log(), Err(Error::ConstantNotOne));
    }

    #[test]
    fn exp_e1_inverse() {
        let e1 = NCSeries::<Q>::letter(2, 5, 1).unwrap();
        let a = e1.exp().unwrap();
        let b = e1.neg().exp().unwrap();
        assert_eq!(a.inverse().unwrap(), b);
        assert_eq!(a.mul(&b).unwrap(), NCSeries::one(2, 5));
    }

    #[test]
    fn group_like_examples() {
        let e0 = NCSeries::<Q>::letter(2, 4, 0).unwrap();
        assert!(e0.exp().unwrap().is_group_like(0.0));
        let bad = NCSeries::<Q>::from_terms(
            2,
            4,
            [(Word::empty(), q(1, 1)), (w(&[0, 1]), q(1, 1))],
        )
        .unwrap();
        assert!(!bad.is_group_like(0.0));
    }

    #[test]
    fn abelianize_examples() {
        let e0 = NCSeries::<Q>::letter(2, 4, 0).unwrap();
        let ab = e0.exp().unwrap().abelianize();
        let fact = [1, 1, 2, 6, 24];
        for k in 0..=4u32 {
            assert_eq!(ab.coeff(&[k, 0]), q(1, fact[k as usize]));
        }
        let s = NCSeries::<Q>::from_terms(
            2,
            4,
            [
                (Word::empty(), q(1, 1)),
                (w(&[0, 1]), q(1, 1)),
                (w(&[1, 0]), q(1, 1)),
            ],
        )
        .unwrap();
        let ab = s.abelianize();
        assert_eq!(ab.len(), 2);
        assert_eq!(ab.coeff(&[1, 1]), q(2, 1));
    }

    #[test]
    fn beta_quotient_exp_e1() {
        let e1 = NCSeries::<Q>::letter(2, 5, 1).unwrap();
        let a = e1.exp().unwrap();
        let b1 = a.beta_quotient(1).unwrap();
        let fact = [1i64, 1, 2, 6, 24, 120];
        for k in 1..=5usize {
            assert_eq!(b1.coeff(&[0, (k - 1) as u32]), q(1, fact[k]));
        }
        assert!(a.beta_quotient(0).unwrap().is_empty());
        assert!(a.beta_quotient(2).is_err());
    }

    #[test]
    fn ihara_identity_and_scaling() {
        let f = NCSeries::<Q>::from_terms(
            2,
            3,
            [
                (Word::empty(), q(1, 1)),
                (w(&[0, 1]), q(3, 1)),
                (w(&[1, 0, 0]), q(-2, 5)),
                (w(&[1]), q(1, 7)),
            ],
        )
        .unwrap();
        let g = vec![NCSeries::<Q>::one(2, 3)];
        assert_eq!(f.ihara_substitute(&q(1, 1), &g, 1).unwrap(), f);
        let scaled = f.ihara_substitute(&q(2, 1), &g, 1).unwrap();
        for (word, c) in f.terms() {
            let lam = q(2i64.pow(word.len() as u32), 1);
            assert_eq!(scaled.coeff(word), c * lam);
        }
        let bad = vec![NCSeries::<Q>::zero(2, 3)];
        assert_eq!(f.ihara_substitute(&q(1, 1), &bad, 1), Err(Error::NonUnital(1)));
    }

    #[test]
    fn ihara_weight_two_conjugation() {
        // F = e1 + e0 e1, G1 = 1 + c (e0e1 - e1e0); at weight 2 the
        // conjugation G1 e1 G1^{-1} contributes nothing beyond e1.
        let c = q(5, 3);
        let f = NCSeries::<Q>::from_terms(2, 3, [(w(&[1]), q(1, 1)), (w(&[0, 1]), q(1, 1))])
            .unwrap();
        let g1 = NCSeries::<Q>::from_terms(
            2,
            3,
            [
                (Word::empty(), q(1, 1)),
                (w(&[0, 1]), c.clone()),
                (w(&[1, 0]), -c.clone()),
            ],
        )
        .unwrap();
        let out = f.ihara_substitute(&q(1, 1), &[g1], 1).unwrap();
        // by hand: (e1 + c(e0e1e1 - 2e1e0e1 + e1e1e0) + e0e1)(1 + c(e0e1 - e1e0))
        assert_eq!(out.coeff(&w(&[1])), q(1, 1));
        assert_eq!(out.coeff(&w(&[0, 1])), q(1, 1));
        assert_eq!(out.coeff(&w(&[0, 1, 1])), c.clone());
        assert_eq!(out.coeff(&w(&[1, 0, 1])), -c.clone() - c.clone() + c.clone());
        assert_eq!(out.coeff(&w(&[1, 1, 0])), c.clone() - c.clone());
    }

    #[test]
    fn multiseries_ops() {
        let s0 = MultiSeries::<Q>::var(2, 4, 0);
        let one = MultiSeries::<Q>::one(2, 4);
        let a = one.add(&s0).unwrap();
        let inv = a.inverse().unwrap();
        assert_eq!(a.mul(&inv).unwrap(), one);
        let e = s0.exp().unwrap();
        assert_eq!(e.coeff(&[3, 0]), q(1, 6));
        let m = vec![vec![q(1, 1), q(1, 1)], vec![q(0, 1), q(-1, 1)]];
        let c = a.compose_linear(&m, 2).unwrap();
        assert_eq!(c.coeff(&[0, 1]), q(1, 1));
        assert_eq!(s0.mul_var(1).coeff(&[1, 1]), q(1, 1));
    }

    #[test]
    fn word_parse_display() {
        let x = w(&[0, 1, 1]);
        assert_eq!(x.to_string(), "e0e1e1");
        assert_eq!(Word::parse("e0e1e1"), Some(x));
        assert_eq!(Word::parse("1"), Some(Word::empty()));
        assert_eq!(Word::parse("x1"), None);
    }
}
