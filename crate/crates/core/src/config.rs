//! Marked-point configurations and numeric options, loadable from a
//! key-value file with `[points]`, `[branches]` and `[quadrature]` sections.
//!
//! ```text
//! [points]
//! sigma1 = [1.0, 0.0]
//! sigma2 = [3.0, 0.0]
//!
//! [branches]
//! sigma1 = 0
//! sigma2 = 0
//! detour_radius = 0.4
//! side = "left"
//!
//! [quadrature]
//! tol = 1e-13
//! ```

use crate::error::{Error, Result};
use num_complex::Complex64;
use serde::Serialize;
use std::path::Path;

type C = Complex64;

/// Side of the direction of travel on which detours around intermediate
/// points are taken. For real points traversed left to right, `Left` is the
/// upper half-plane.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    Left,
    Right,
}

impl Side {
    pub fn flip(self) -> Side {
        match self {
            Side::Left => Side::Right,
            Side::Right => Side::Left,
        }
    }
}

/// Numeric knobs shared by the line integrals, transport and cubature.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct QuadOptions {
    /// Relative tolerance for tanh-sinh line integrals.
    pub tol: f64,
    pub max_level: usize,
    /// Maximum order of the local series solutions at tangential basepoints.
    pub series_order: usize,
    /// Chebyshev nodes per transport panel.
    pub panel_nodes: usize,
    /// Panel length as a fraction of the distance to the nearest singularity.
    pub panel_ratio: f64,
    /// Endpoint disk radius as a fraction of the distance to the nearest
    /// other marked point.
    pub endpoint_ratio: f64,
    /// Relative tolerance for two-dimensional cubature.
    pub cubature_tol: f64,
    /// Initial number of angular points in polar cubature.
    pub theta_points: usize,
}

impl Default for QuadOptions {
    fn default() -> Self {
        QuadOptions {
            tol: 1e-13,
            max_level: 9,
            series_order: 80,
            panel_nodes: 24,
            panel_ratio: 0.5,
            endpoint_ratio: 0.3,
            cubature_tol: 1e-9,
            theta_points: 64,
        }
    }
}

/// Marked points `σ0 = 0, σ1, …, σn` with branch data and path policy.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Configuration {
    /// All points, `points[0] = 0`.
    pub points: Vec<C>,
    /// Branch integer `b_i` per `σ_i` (`log σ_i = Log σ_i + 2πi b_i`);
    /// `log_branches[i-1]` belongs to `σ_i`.
    pub log_branches: Vec<i64>,
    pub detour_radius: f64,
    pub side: Side,
    pub quad: QuadOptions,
}

impl Configuration {
    /// Builds a configuration from `σ1..σn` with principal branches, left
    /// detours and a detour radius of a quarter of the minimal distance.
    pub fn new(sigmas: &[C]) -> Result<Self> {
        let mut points = vec![C::new(0.0, 0.0)];
        points.extend_from_slice(sigmas);
        let mut cfg = Configuration {
            points,
            log_branches: vec![0; sigmas.len()],
            detour_radius: 0.0,
            side: Side::Left,
            quad: QuadOptions::default(),
        };
        if sigmas.is_empty() {
            return Err(Error::Config("need at least one point besides 0".into()));
        }
        cfg.detour_radius = 0.25 * cfg.min_distance();
        cfg.validate()?;
        Ok(cfg)
    }

    /// Convenience constructor for real points.
    pub fn real(sigmas: &[f64]) -> Result<Self> {
        let v: Vec<C> = sigmas.iter().map(|&x| C::new(x, 0.0)).collect();
        Self::new(&v)
    }

    pub fn with_branches(mut self, b: Vec<i64>) -> Result<Self> {
        self.log_branches = b;
        self.validate()?;
        Ok(self)
    }

    pub fn with_detour(mut self, radius: f64, side: Side) -> Result<Self> {
        self.detour_radius = radius;
        self.side = side;
        self.validate()?;
        Ok(self)
    }

    /// Number of nonzero points `n`.
    pub fn n(&self) -> usize {
        self.points.len() - 1
    }

    pub fn sigma(&self, k: usize) -> C {
        self.points[k]
    }

    pub fn is_real(&self) -> bool {
        self.points.iter().all(|p| p.im == 0.0)
    }

    pub fn min_distance(&self) -> f64 {
        let mut d = f64::INFINITY;
        for a in 0..self.points.len() {
            for b in a + 1..self.points.len() {
                d = d.min((self.points[a] - self.points[b]).norm());
            }
        }
        d
    }

    /// Distance from `σ_k` to the nearest other marked point.
    pub fn isolation(&self, k: usize) -> f64 {
        self.points
            .iter()
            .enumerate()
            .filter(|(j, _)| *j != k)
            .map(|(_, p)| (p - self.points[k]).norm())
            .fold(f64::INFINITY, f64::min)
    }

    /// The chosen determination of `log σ_i`.
    pub fn log_sigma(&self, i: usize) -> C {
        let s = self.points[i];
        C::new(s.norm().ln(), s.arg() + 2.0 * std::f64::consts::PI * self.log_branches[i - 1] as f64)
    }

    pub fn validate(&self) -> Result<()> {
        if self.points.is_empty() || self.points[0] != C::new(0.0, 0.0) {
            return Err(Error::Config("σ0 must be 0".into()));
        }
        for p in &self.points {
            if !(p.re.is_finite() && p.im.is_finite()) {
                return Err(Error::Config("points must be finite".into()));
            }
        }
        let d = self.min_distance();
        if d == 0.0 {
            return Err(Error::Config("points must be pairwise distinct".into()));
        }
        if self.log_branches.len() != self.n() {
            return Err(Error::Config(format!(
                "expected {} branch integers, got {}",
                self.n(),
                self.log_branches.len()
            )));
        }
        if !(self.detour_radius > 0.0 && self.detour_radius < 0.5 * d) {
            return Err(Error::Config(format!(
                "detour radius {} must satisfy 0 < r < {} (half the minimal distance)",
                self.detour_radius,
                0.5 * d
            )));
        }
        Ok(())
    }

    /// The complex-conjugate configuration: conjugated points, conjugated
    /// logarithms and detours on the opposite side.
    pub fn conjugate(&self) -> Configuration {
        // + 0.0 normalizes -0.0 so that principal arguments stay in (-π, π]
        let points: Vec<C> = self.points.iter().map(|p| C::new(p.re, -p.im + 0.0)).collect();
        let log_branches = (1..=self.n())
            .map(|i| {
                let s = self.points[i];
                // conj(Log σ) = Log σ̄ except on the negative real axis
                let shift = if s.im == 0.0 && s.re < 0.0 { -1 } else { 0 };
                -self.log_branches[i - 1] + shift
            })
            .collect();
        Configuration {
            points,
            log_branches,
            detour_radius: self.detour_radius,
            side: self.side.flip(),
            quad: self.quad.clone(),
        }
    }

    pub fn from_file(path: &Path) -> Result<Self> {
        let s = std::fs::read_to_string(path)
            .map_err(|e| Error::Config(format!("{}: {e}", path.display())))?;
        Self::from_toml_str(&s)
    }

    /// Parses the key-value format documented at the module level.
    pub fn from_toml_str(s: &str) -> Result<Self> {
        let v: toml::Table = s
            .parse()
            .map_err(|e: toml::de::Error| Error::Config(e.message().to_string()))?;
        let points = v
            .get("points")
            .and_then(|p| p.as_table())
            .ok_or_else(|| Error::Config("missing [points] section".into()))?;
        let mut sigmas = Vec::new();
        for k in 1.. {
            let key = format!("sigma{k}");
            match points.get(&key) {
                None => break,
                Some(val) => sigmas.push(parse_complex(val, &key)?),
            }
        }
        if sigmas.len() != points.len() {
            return Err(Error::Config(
                "[points] keys must be sigma1, sigma2, … without gaps".into(),
            ));
        }
        let mut cfg = Configuration::new(&sigmas)?;
        if let Some(b) = v.get("branches").and_then(|b| b.as_table()) {
            for k in 1..=cfg.n() {
                if let Some(x) = b.get(&format!("sigma{k}")) {
                    cfg.log_branches[k - 1] = x
                        .as_integer()
                        .ok_or_else(|| Error::Config(format!("branches.sigma{k} must be an integer")))?;
                }
            }
            if let Some(r) = b.get("detour_radius") {
                cfg.detour_radius = as_f64(r, "detour_radius")?;
            }
            if let Some(side) = b.get("side") {
                cfg.side = match side.as_str() {
                    Some("left") | Some("upper") => Side::Left,
                    Some("right") | Some("lower") => Side::Right,
                    _ => {
                        return Err(Error::Config(
                            "branches.side must be left|right|upper|lower".into(),
                        ))
                    }
                };
            }
        }
        if let Some(qt) = v.get("quadrature").and_then(|b| b.as_table()) {
            let q = &mut cfg.quad;
            for (key, val) in qt {
                match key.as_str() {
                    "tol" => q.tol = as_f64(val, key)?,
                    "max_level" => q.max_level = as_usize(val, key)?,
                    "series_order" => q.series_order = as_usize(val, key)?,
                    "panel_nodes" => q.panel_nodes = as_usize(val, key)?,
                    "panel_ratio" => q.panel_ratio = as_f64(val, key)?,
                    "endpoint_ratio" => q.endpoint_ratio = as_f64(val, key)?,
                    "cubature_tol" => q.cubature_tol = as_f64(val, key)?,
                    "theta_points" => q.theta_points = as_usize(val, key)?,
                    _ => return Err(Error::Config(format!("unknown quadrature key `{key}`"))),
                }
            }
        }
        cfg.validate()?;
        Ok(cfg)
    }
}

fn as_f64(v: &toml::Value, key: &str) -> Result<f64> {
    v.as_float()
        .or_else(|| v.as_integer().map(|i| i as f64))
        .ok_or_else(|| Error::Config(format!("`{key}` must be a number")))
}

fn as_usize(v: &toml::Value, key: &str) -> Result<usize> {
    v.as_integer()
        .filter(|&i| i >= 0)
        .map(|i| i as usize)
        .ok_or_else(|| Error::Config(format!("`{key}` must be a non-negative integer")))
}

fn parse_complex(v: &toml::Value, key: &str) -> Result<C> {
    if let Some(a) = v.as_array() {
        if a.len() == 2 {
            return Ok(C::new(as_f64(&a[0], key)?, as_f64(&a[1], key)?));
        }
    }
    as_f64(v, key)
        .map(|x| C::new(x, 0.0))
        .map_err(|_| Error::Config(format!("`{key}` must be [re, im] or a number")))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_file_format() {
        let cfg = Configuration::from_toml_str(
            "[points]\nsigma1 = [1.0, 0.0]\nsigma2 = 3\n[branches]\nsigma2 = 1\ndetour_radius = 0.4\nside = \"lower\"\n[quadrature]\ntol = 1e-12\n",
        )
        .unwrap();
        assert_eq!(cfg.n(), 2);
        assert_eq!(cfg.sigma(2), C::new(3.0, 0.0));
        assert_eq!(cfg.log_branches, vec![0, 1]);
        assert_eq!(cfg.side, Side::Right);
        assert_eq!(cfg.quad.tol, 1e-12);
        assert!((cfg.log_sigma(2).im - 2.0 * std::f64::consts::PI).abs() < 1e-15);
    }

    #[test]
    fn rejects_bad_radius_and_coincident_points() {
        assert!(Configuration::real(&[1.0, 1.0]).is_err());
        let cfg = Configuration::real(&[1.0, 3.0]).unwrap();
        assert!(cfg.with_detour(0.6, Side::Left).is_err());
        assert!(Configuration::from_toml_str("[points]\nsigma2 = 1.0\n").is_err());
    }

    #[test]
    fn conjugate_logs() {
        let cfg = Configuration::new(&[C::new(1.0, 1.0), C::new(-2.0, 0.0)]).unwrap();
        let cc = cfg.conjugate();
        for i in 1..=2 {
            assert!((cc.log_sigma(i) - cfg.log_sigma(i).conj()).norm() < 1e-15);
        }
    }
}
