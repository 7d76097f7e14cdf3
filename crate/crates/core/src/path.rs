//! Piecewise-smooth admissible paths from the tangential basepoint at 0 to
//! the one at `σ_i`, with continuous logarithms along them.

use crate::config::{Configuration, Side};
use crate::error::{Error, Result};
use num_complex::Complex64;
use serde::Serialize;
use std::f64::consts::PI;

type C = Complex64;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub enum Piece {
    Segment { a: C, b: C },
    /// `center + radius·e^{iθ}` for θ running linearly from `theta0` to `theta1`.
    Arc {
        center: C,
        radius: f64,
        theta0: f64,
        theta1: f64,
    },
}

impl Piece {
    pub fn start(&self) -> C {
        self.point(0.0, 1.0)
    }

    pub fn end(&self) -> C {
        self.point(1.0, 0.0)
    }

    /// Point at parameter `t`, with `tc = 1 - t` supplied separately.
    pub fn point(&self, t: f64, tc: f64) -> C {
        match *self {
            Piece::Segment { a, b } => {
                if t <= 0.5 {
                    a + (b - a) * t
                } else {
                    b - (b - a) * tc
                }
            }
            Piece::Arc {
                center,
                radius,
                theta0,
                theta1,
            } => center + C::from_polar(radius, theta0 + (theta1 - theta0) * t),
        }
    }

    pub fn deriv(&self, t: f64) -> C {
        match *self {
            Piece::Segment { a, b } => b - a,
            Piece::Arc {
                radius,
                theta0,
                theta1,
                ..
            } => {
                let th = theta0 + (theta1 - theta0) * t;
                C::new(0.0, theta1 - theta0) * C::from_polar(radius, th)
            }
        }
    }

    /// `x(t) - p`, computed without cancellation when `p` is an endpoint of a
    /// segment or the center of an arc.
    pub fn offset(&self, p: C, t: f64, tc: f64) -> C {
        match *self {
            Piece::Segment { a, b } => {
                if t <= 0.5 {
                    (a - p) + (b - a) * t
                } else {
                    (b - p) - (b - a) * tc
                }
            }
            Piece::Arc {
                center,
                radius,
                theta0,
                theta1,
            } => (center - p) + C::from_polar(radius, theta0 + (theta1 - theta0) * t),
        }
    }

    pub fn length(&self) -> f64 {
        match *self {
            Piece::Segment { a, b } => (b - a).norm(),
            Piece::Arc {
                radius,
                theta0,
                theta1,
                ..
            } => radius * (theta1 - theta0).abs(),
        }
    }

    pub fn conjugate(&self) -> Piece {
        match *self {
            Piece::Segment { a, b } => Piece::Segment {
                a: a.conj(),
                b: b.conj(),
            },
            Piece::Arc {
                center,
                radius,
                theta0,
                theta1,
            } => Piece::Arc {
                center: center.conj(),
                radius,
                theta0: -theta0,
                theta1: -theta1,
            },
        }
    }

    /// The sub-piece for parameters in `[t0, t1]`.
    pub fn restrict(&self, t0: f64, t1: f64) -> Piece {
        match *self {
            Piece::Segment { .. } => Piece::Segment {
                a: self.point(t0, 1.0 - t0),
                b: self.point(t1, 1.0 - t1),
            },
            Piece::Arc {
                center,
                radius,
                theta0,
                theta1,
            } => Piece::Arc {
                center,
                radius,
                theta0: theta0 + (theta1 - theta0) * t0,
                theta1: theta0 + (theta1 - theta0) * t1,
            },
        }
    }

    fn is_arc_around(&self, p: C) -> bool {
        matches!(*self, Piece::Arc { center, .. } if center == p)
    }
}

/// A path from 0 to `σ_target` given by pieces, plus the determination of
/// `log x` on the initial segment.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct AdmissiblePath {
    pub target: usize,
    pub pieces: Vec<Piece>,
    /// `log` of the unit direction of the first segment, including the
    /// branch (`log x = ln|x| + log_start` on the first segment).
    pub log_start: C,
}

impl AdmissiblePath {
    /// Straight segment from 0 to `σ_i` with semicircular detours around
    /// marked points lying on it.
    pub fn default_for(cfg: &Configuration, i: usize) -> Result<Self> {
        if i == 0 || i > cfg.n() {
            return Err(Error::Path(format!("target index {i} out of range 1..={}", cfg.n())));
        }
        let target = cfg.sigma(i);
        let dir = target / target.norm();
        let len = target.norm();
        let rho = cfg.detour_radius;
        let mut hits: Vec<(f64, C)> = Vec::new();
        for (k, &p) in cfg.points.iter().enumerate() {
            if k == 0 || k == i {
                continue;
            }
            let rel = p / dir;
            let along = rel.re;
            let across = rel.im;
            if along <= 0.0 || along >= len {
                if (along <= 0.0 && p.norm() < rho) || (along >= len && (p - target).norm() < rho) {
                    return Err(Error::Path(format!("σ{k} is too close to an endpoint")));
                }
                continue;
            }
            if across.abs() <= 1e-12 * len {
                hits.push((along, p));
            } else if across.abs() < rho {
                return Err(Error::Path(format!(
                    "σ{k} lies within the detour radius of the straight path to σ{i}; supply an explicit path"
                )));
            }
        }
        hits.sort_by(|a, b| a.0.partial_cmp(&b.0).expect("finite"));
        let phi = dir.arg();
        let mut pieces = Vec::new();
        let mut cur = C::new(0.0, 0.0);
        for (_, p) in hits {
            let before = p - dir * rho;
            let after = p + dir * rho;
            pieces.push(Piece::Segment { a: cur, b: before });
            let (theta0, theta1) = match cfg.side {
                Side::Left => (phi + PI, phi),
                Side::Right => (phi - PI, phi),
            };
            pieces.push(Piece::Arc {
                center: p,
                radius: rho,
                theta0,
                theta1,
            });
            cur = after;
        }
        pieces.push(Piece::Segment { a: cur, b: target });
        let path = AdmissiblePath {
            target: i,
            pieces,
            log_start: C::new(0.0, phi + 2.0 * PI * cfg.log_branches[i - 1] as f64),
        };
        path.validate(cfg)?;
        Ok(path)
    }

    /// Path from explicit pieces; the branch of `log x` on the first segment
    /// is the principal argument of its direction plus `2π·branch`.
    pub fn from_pieces(cfg: &Configuration, target: usize, pieces: Vec<Piece>, branch: i64) -> Result<Self> {
        let first = pieces
            .first()
            .ok_or_else(|| Error::Path("empty path".into()))?;
        let dir = first.deriv(0.0);
        let path = AdmissiblePath {
            target,
            log_start: C::new(0.0, dir.arg() + 2.0 * PI * branch as f64),
            pieces,
        };
        path.validate(cfg)?;
        Ok(path)
    }

    pub fn conjugate(&self) -> AdmissiblePath {
        AdmissiblePath {
            target: self.target,
            pieces: self.pieces.iter().map(Piece::conjugate).collect(),
            log_start: self.log_start.conj(),
        }
    }

    pub fn validate(&self, cfg: &Configuration) -> Result<()> {
        let i = self.target;
        if i == 0 || i > cfg.n() {
            return Err(Error::Path(format!("target index {i} out of range")));
        }
        let first = &self.pieces[0];
        let last = self.pieces.last().expect("nonempty");
        match first {
            Piece::Segment { a, .. } if *a == C::new(0.0, 0.0) => {}
            _ => return Err(Error::Path("path must start with a segment from 0".into())),
        }
        match last {
            Piece::Segment { a, b } if *b == cfg.sigma(i) => {
                let d = (b - a) / (b - a).norm();
                let want = cfg.sigma(i) / cfg.sigma(i).norm();
                if (d - want).norm() > 1e-9 {
                    return Err(Error::Path(
                        "the final segment must arrive at σ_i along the direction of σ_i".into(),
                    ));
                }
            }
            _ => return Err(Error::Path("path must end with a segment into σ_i".into())),
        }
        for w in self.pieces.windows(2) {
            if (w[0].end() - w[1].start()).norm() > 1e-12 * (1.0 + w[0].end().norm()) {
                return Err(Error::Path("pieces are not contiguous".into()));
            }
        }
        // interior avoidance, sampled
        let nsamp = 64;
        for (pi, piece) in self.pieces.iter().enumerate() {
            for s in 0..=nsamp {
                let t = s as f64 / nsamp as f64;
                if (pi == 0 && s == 0) || (pi + 1 == self.pieces.len() && s == nsamp) {
                    continue;
                }
                let x = piece.point(t, 1.0 - t);
                for (k, p) in cfg.points.iter().enumerate() {
                    let allowed = (pi == 0 && k == 0) || (pi + 1 == self.pieces.len() && k == i);
                    if !allowed && (x - p).norm() < 1e-3 * cfg.min_distance() {
                        return Err(Error::Path(format!("path passes too close to σ{k}")));
                    }
                }
            }
        }
        Ok(())
    }

    /// Start values of the continuous logarithms `L_0 = log x` and
    /// `L_k = log(1 - x/σ_k)` on each piece. Entry `[p][k]`; `L_0` on the
    /// first piece is not used (it is `ln|x| + log_start`).
    pub fn log_starts(&self, cfg: &Configuration) -> Vec<Vec<C>> {
        let npts = cfg.points.len();
        let mut out = Vec::with_capacity(self.pieces.len());
        let mut cur = vec![C::new(0.0, 0.0); npts];
        for (pi, piece) in self.pieces.iter().enumerate() {
            out.push(cur.clone());
            let mut next = cur.clone();
            for k in 0..npts {
                if pi == 0 && k == 0 {
                    let end = piece.end();
                    next[0] = C::new(end.norm().ln(), 0.0) + self.log_start;
                    continue;
                }
                if pi + 1 == self.pieces.len() && k == self.target {
                    continue;
                }
                next[k] = cur[k] + self.log_increment(piece, cfg.sigma(k), 1.0, 0.0);
            }
            cur = next;
        }
        out
    }

    fn log_increment(&self, piece: &Piece, p: C, t: f64, tc: f64) -> C {
        if piece.is_arc_around(p) {
            if let Piece::Arc { theta0, theta1, .. } = *piece {
                return C::new(0.0, (theta1 - theta0) * t);
            }
        }
        let d0 = piece.offset(p, 0.0, 1.0);
        let d = piece.offset(p, t, tc);
        (d / d0).ln()
    }

    /// Continuous logarithms at parameter `t` of piece `pi`, given the start
    /// values from [`AdmissiblePath::log_starts`].
    pub fn logs_at(&self, cfg: &Configuration, starts: &[Vec<C>], pi: usize, t: f64, tc: f64) -> Vec<C> {
        let piece = &self.pieces[pi];
        let npts = cfg.points.len();
        let mut out = Vec::with_capacity(npts);
        for k in 0..npts {
            if pi == 0 && k == 0 {
                let b = piece.end();
                out.push(C::new((b.norm() * t).ln(), 0.0) + self.log_start);
                continue;
            }
            if pi + 1 == self.pieces.len() && k == self.target {
                // L_i = L_i(start) + ln(1 - t) on the final segment
                out.push(starts[pi][k] + C::new(tc.ln(), 0.0));
                continue;
            }
            out.push(starts[pi][k] + self.log_increment(piece, cfg.sigma(k), t, tc));
        }
        out
    }

    /// The continuous logarithms evaluated at the endpoint `σ_i` for
    /// `k != i`: `L_0(σ_i) = log σ_i` and `L_k(σ_i) = log(1 - σ_i/σ_k)`.
    pub fn end_logs(&self, cfg: &Configuration) -> Vec<C> {
        let starts = self.log_starts(cfg);
        let last = self.pieces.len() - 1;
        let piece = &self.pieces[last];
        (0..cfg.points.len())
            .map(|k| {
                if k == self.target {
                    C::new(0.0, 0.0)
                } else if last == 0 && k == 0 {
                    C::new(cfg.sigma(self.target).norm().ln(), 0.0) + self.log_start
                } else {
                    starts[last][k] + self.log_increment(piece, cfg.sigma(k), 1.0, 0.0)
                }
            })
            .collect()
    }

    /// Largest parameter-space panel subdivision used by the transport
    /// solver: returns `(piece index, t0, t1)` with panel length at most
    /// `ratio` times the distance to the nearest marked point.
    pub fn panels(
        &self,
        cfg: &Configuration,
        ranges: &[(usize, f64, f64)],
        ratio: f64,
    ) -> Vec<(usize, f64, f64)> {
        let dist = |x: C| {
            cfg.points
                .iter()
                .map(|p| (x - p).norm())
                .fold(f64::INFINITY, f64::min)
        };
        let mut out = Vec::new();
        for &(pi, t0, t1) in ranges {
            let piece = &self.pieces[pi];
            let len = piece.length();
            let mut t = t0;
            while t < t1 {
                let d = dist(piece.point(t, 1.0 - t));
                let mut step = (ratio * d / len).min(t1 - t);
                loop {
                    let tn = (t + step).min(t1);
                    let dn = dist(piece.point(tn, 1.0 - tn));
                    if step * len <= ratio * dn.min(d) * 1.000_001 || step < 1e-12 {
                        break;
                    }
                    step *= 0.5;
                }
                let tn = if t1 - (t + step) < 1e-12 { t1 } else { t + step };
                out.push((pi, t, tn));
                t = tn;
            }
        }
        out
    }
}
