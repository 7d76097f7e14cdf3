//! Regularized iterated integrals of `ω_k = dx/(x - σ_k)` and generalized
//! associators.
//!
//! The generating series `S` solves `dS = S·Σ e_k ω_k` (iterated integrals
//! read left to right). Near 0 it is `exp(e0 log x)·H(x)` with `H` analytic,
//! near `σ_i` it is `Z·exp(e_i log u)·M(u)` with `u = 1 - x/σ_i`; the
//! regularized value `Z` is obtained by transporting `S` across the interior
//! with Chebyshev panels and stripping the local factor at `σ_i`.

use crate::config::Configuration;
use crate::error::{Error, Result};
use crate::ncalg::{all_words, NCSeries, Word};
use crate::path::AdmissiblePath;
use crate::quad::ChebPanel;
use num_complex::Complex64;

type C = Complex64;

fn cz() -> C {
    C::new(0.0, 0.0)
}

/// Dense truncated series indexed by words in length-then-lexicographic order.
#[derive(Clone, Debug)]
struct Dense {
    alphabet: usize,
    weight: usize,
    /// offset[l] = index of the first word of length l
    offset: Vec<usize>,
    data: Vec<C>,
}

impl Dense {
    fn zero(alphabet: usize, weight: usize) -> Self {
        let mut offset = vec![0usize; weight + 2];
        let mut p = 1usize;
        for l in 0..=weight {
            offset[l + 1] = offset[l] + p;
            p *= alphabet;
        }
        let n = offset[weight + 1];
        Dense {
            alphabet,
            weight,
            offset,
            data: vec![cz(); n],
        }
    }

    fn one(alphabet: usize, weight: usize) -> Self {
        let mut d = Self::zero(alphabet, weight);
        d.data[0] = C::new(1.0, 0.0);
        d
    }

    fn len(&self) -> usize {
        self.data.len()
    }

    fn level_size(&self, l: usize) -> usize {
        self.offset[l + 1] - self.offset[l]
    }

    /// `self · e_k`
    fn right_letter(&self, k: usize) -> Self {
        let mut out = Self::zero(self.alphabet, self.weight);
        for l in 0..self.weight {
            for c in 0..self.level_size(l) {
                out.data[self.offset[l + 1] + c * self.alphabet + k] = self.data[self.offset[l] + c];
            }
        }
        out
    }

    /// `e_k · self`
    fn left_letter(&self, k: usize) -> Self {
        let mut out = Self::zero(self.alphabet, self.weight);
        for l in 0..self.weight {
            let sz = self.level_size(l);
            for c in 0..sz {
                out.data[self.offset[l + 1] + k * sz + c] = self.data[self.offset[l] + c];
            }
        }
        out
    }

    fn axpy(&mut self, a: C, x: &Self) {
        for (y, v) in self.data.iter_mut().zip(&x.data) {
            *y += a * v;
        }
    }

    fn scale(&mut self, a: C) {
        for y in self.data.iter_mut() {
            *y *= a;
        }
    }

    fn norm(&self) -> f64 {
        self.data.iter().fold(0.0, |m, z| m.max(z.norm()))
    }

    fn mul(&self, other: &Self) -> Self {
        let mut out = Self::zero(self.alphabet, self.weight);
        for la in 0..=self.weight {
            for ca in 0..self.level_size(la) {
                let a = self.data[self.offset[la] + ca];
                if a == cz() {
                    continue;
                }
                for lb in 0..=(self.weight - la) {
                    let szb = other.level_size(lb);
                    let base = self.offset[la + lb] + ca * szb;
                    for cb in 0..szb {
                        out.data[base + cb] += a * other.data[other.offset[lb] + cb];
                    }
                }
            }
        }
        out
    }

    /// `exp(e_k · t)`
    fn exp_letter(alphabet: usize, weight: usize, k: usize, t: C) -> Self {
        let mut out = Self::one(alphabet, weight);
        let mut term = Self::one(alphabet, weight);
        for m in 1..=weight {
            term = term.left_letter(k);
            term.scale(t / m as f64);
            out.axpy(C::new(1.0, 0.0), &term);
        }
        out
    }

    fn to_series(&self) -> NCSeries<C> {
        let words = all_words(self.alphabet, self.weight);
        NCSeries::from_terms(
            self.alphabet,
            self.weight,
            words.into_iter().zip(self.data.iter().cloned()),
        )
        .expect("letters in range")
    }
}

/// Solves `(n - ad)(X) = R` with `ad(X) = X e_k - e_k X` nilpotent.
fn solve_shifted(r: &Dense, n: usize, k: usize) -> Dense {
    let mut out = r.clone();
    out.scale(C::new(1.0 / n as f64, 0.0));
    let mut t = r.clone();
    for p in 1..=r.weight {
        let next = {
            let mut a = t.right_letter(k);
            a.axpy(C::new(-1.0, 0.0), &t.left_letter(k));
            a
        };
        t = next;
        out.axpy(C::new(1.0 / (n as f64).powi(p as i32 + 1), 0.0), &t);
    }
    out
}

/// Evaluates `Σ_n A_n z^n` for the series solutions; stops when terms are
/// negligible.
fn sum_local(terms: &[Dense], z: C) -> Dense {
    let mut acc = terms[0].clone();
    let mut zp = C::new(1.0, 0.0);
    for t in terms.iter().skip(1) {
        zp *= z;
        acc.axpy(zp, t);
    }
    acc
}

/// Local solution at 0: coefficients `H_n` of `H(x) = Σ H_n x^n`.
fn local_at_zero(cfg: &Configuration, weight: usize, r: f64) -> Result<Vec<Dense>> {
    let a = cfg.points.len();
    let order = cfg.quad.series_order;
    let mut h: Vec<Dense> = vec![Dense::one(a, weight)];
    // H_q e_k, cached
    let mut he: Vec<Vec<Dense>> = vec![(0..a).map(|k| h[0].right_letter(k)).collect()];
    let inv: Vec<C> = cfg.points.iter().map(|&s| if s == cz() { cz() } else { 1.0 / s }).collect();
    let mut small = 0;
    for n in 1..=order {
        let mut rhs = Dense::zero(a, weight);
        for k in 1..a {
            // f_{k,p} = -σ_k^{-p-1}
            let mut f = -inv[k];
            for q in (0..n).rev() {
                // p = n-1-q, iterate q descending so p ascends
                rhs.axpy(f, &he[q][k]);
                f *= inv[k];
            }
        }
        let hn = solve_shifted(&rhs, n, 0);
        let size = hn.norm() * r.powi(n as i32);
        he.push((0..a).map(|k| hn.right_letter(k)).collect());
        h.push(hn);
        if size < 1e-18 {
            small += 1;
            if small >= 3 {
                return Ok(h);
            }
        } else {
            small = 0;
        }
    }
    Err(Error::Quadrature(format!(
        "local series at 0 did not converge within {order} terms"
    )))
}

/// Local factor at `σ_i`: coefficients `K_n` of `K(u) = M(u)^{-1}`.
fn local_at_target(cfg: &Configuration, i: usize, weight: usize, r: f64) -> Result<Vec<Dense>> {
    let a = cfg.points.len();
    let order = cfg.quad.series_order;
    let si = cfg.sigma(i);
    // α_k = σ_i/(σ_k - σ_i)
    let alpha: Vec<C> = cfg.points.iter().map(|&s| si / (s - si)).collect();
    let mut kk: Vec<Dense> = vec![Dense::one(a, weight)];
    let mut ek: Vec<Vec<Dense>> = vec![(0..a).map(|k| kk[0].left_letter(k)).collect()];
    let mut small = 0;
    for n in 1..=order {
        let mut rhs = Dense::zero(a, weight);
        for k in 0..a {
            if k == i {
                continue;
            }
            // g_{k,p} = α_k (-α_k)^p
            let mut g = alpha[k];
            for q in (0..n).rev() {
                rhs.axpy(-g, &ek[q][k]);
                g *= -alpha[k];
            }
        }
        let kn = solve_shifted(&rhs, n, i);
        let size = kn.norm() * r.powi(n as i32);
        ek.push((0..a).map(|k| kn.left_letter(k)).collect());
        kk.push(kn);
        if size < 1e-18 {
            small += 1;
            if small >= 3 {
                return Ok(kk);
            }
        } else {
            small = 0;
        }
    }
    Err(Error::Quadrature(format!(
        "local series at σ{i} did not converge within {order} terms"
    )))
}

/// Generalized associator `Z^i` along an explicit admissible path.
pub fn associator_along(cfg: &Configuration, path: &AdmissiblePath, max_weight: usize) -> Result<NCSeries<C>> {
    path.validate(cfg)?;
    let i = path.target;
    let a = cfg.points.len();
    let q = &cfg.quad;
    let np = path.pieces.len();
    let first = &path.pieces[0];
    let last = &path.pieces[np - 1];

    // basepoint disks
    let r0 = q.endpoint_ratio * cfg.isolation(0);
    let ri = q.endpoint_ratio * cfg.isolation(i);
    let len_first = first.length();
    let len_last = last.length();
    if np == 1 && r0 + ri >= len_first {
        return Err(Error::Path("endpoint disks overlap".into()));
    }
    let ta = (r0 / len_first).min(0.5);
    let r0 = ta * len_first;
    let tb = 1.0 - (ri / len_last).min(0.5);
    let ri = (1.0 - tb) * len_last;

    // S(x_a) = exp(e0 log x_a) H(x_a)
    let xa = first.point(ta, 1.0 - ta);
    let log_xa = C::new(r0.ln(), 0.0) + path.log_start;
    let h = local_at_zero(cfg, max_weight, r0)?;
    let mut s = Dense::exp_letter(a, max_weight, 0, log_xa).mul(&sum_local(&h, xa));

    // interior transport
    let mut ranges = Vec::new();
    for p in 0..np {
        let t0 = if p == 0 { ta } else { 0.0 };
        let t1 = if p == np - 1 { tb } else { 1.0 };
        ranges.push((p, t0, t1));
    }
    let panels = path.panels(cfg, &ranges, q.panel_ratio);
    let cheb = ChebPanel::new(q.panel_nodes);
    let nn = cheb.nodes.len();
    let mut phi = vec![vec![cz(); nn]; a];
    let mut vals: Vec<Vec<C>> = vec![vec![cz(); nn]; s.len()];
    for (pi, t0, t1) in panels {
        let piece = &path.pieces[pi];
        let half = 0.5 * (t1 - t0);
        for (m, xi) in cheb.nodes.iter().enumerate() {
            let t = t0 + half * (1.0 + xi);
            let x = piece.point(t, 1.0 - t);
            let dx = piece.deriv(t) * half;
            for k in 0..a {
                phi[k][m] = dx / (x - cfg.sigma(k));
            }
        }
        // level 0 is constant
        for m in 0..nn {
            vals[0][m] = s.data[0];
        }
        for l in 1..=max_weight {
            let prev_off = s.offset[l - 1];
            let prev_sz = s.level_size(l - 1);
            for c in 0..prev_sz {
                for k in 0..a {
                    let idx = s.offset[l] + c * a + k;
                    let start = s.data[idx];
                    let src = prev_off + c;
                    let f: Vec<C> = (0..nn).map(|j| vals[src][j] * phi[k][j]).collect();
                    for m in 0..nn {
                        let mut acc = start;
                        for j in 0..nn {
                            acc += f[j] * cheb.cumint[m][j];
                        }
                        vals[idx][m] = acc;
                    }
                }
            }
        }
        for (w, v) in vals.iter().enumerate() {
            s.data[w] = v[nn - 1];
        }
    }

    // strip the local factor at σ_i
    let ub = -last.offset(cfg.sigma(i), tb, 1.0 - tb) / cfg.sigma(i);
    let log_ub = ub.ln();
    let kser = local_at_target(cfg, i, max_weight, ri / cfg.sigma(i).norm())?;
    let t = sum_local(&kser, ub).mul(&Dense::exp_letter(a, max_weight, i, -log_ub));
    let z = s.mul(&t);

    // admissibility: the e_i coefficient must vanish
    if max_weight >= 1 {
        let ci = z.data[z.offset[1] + i];
        if ci.norm() > 1e-6 {
            return Err(Error::Path(format!(
                "path is not admissible: regularized ∫ω_{i} = {ci} (winds around σ{i})"
            )));
        }
    }
    Ok(z.to_series())
}

/// Generalized associator `Z^i` along the configuration's default path.
pub fn associator(cfg: &Configuration, i: usize, max_weight: usize) -> Result<NCSeries<C>> {
    let path = AdmissiblePath::default_for(cfg, i)?;
    associator_along(cfg, &path, max_weight)
}

/// All associators `Z^1..Z^n` (index `i-1`).
pub fn associators(cfg: &Configuration, max_weight: usize) -> Result<Vec<NCSeries<C>>> {
    (1..=cfg.n()).map(|i| associator(cfg, i, max_weight)).collect()
}

/// Maximum supported weight of a single iterated-integral request.
pub const MAX_WEIGHT: usize = 8;

/// A single regularized iterated integral along `path`.
pub fn reg_iterated_integral(cfg: &Configuration, path: &AdmissiblePath, w: &Word) -> Result<C> {
    if w.len() > MAX_WEIGHT {
        return Err(Error::WeightExceeded {
            requested: w.len(),
            cutoff: MAX_WEIGHT,
        });
    }
    if let Some(l) = w.max_letter() {
        if l >= cfg.points.len() {
            return Err(Error::LetterOutOfRange {
                letter: l,
                size: cfg.points.len(),
            });
        }
    }
    Ok(associator_along(cfg, path, w.len())?.coeff(w))
}

/// Largest relative shuffle-relation defect of the numeric associator.
pub fn shuffle_regularization_check(cfg: &Configuration, i: usize, max_weight: usize) -> Result<f64> {
    Ok(associator(cfg, i, max_weight)?.shuffle_defect())
}

/// Closed forms of the length-one coefficients along `path`:
/// `log σ_i`, `log(1 - σ_i/σ_k)` for `k ∉ {0, i}`, and `0` for `k = i`.
pub fn length_one_closed_forms(cfg: &Configuration, path: &AdmissiblePath) -> Vec<C> {
    path.end_logs(cfg)
}
