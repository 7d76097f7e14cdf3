//! Integration over the complex plane of integrands with algebraic
//! singularities at finitely many points and algebraic decay at infinity.
//!
//! The plane is split by a smooth partition of unity: a bump around each
//! marked point (integrated in local polar coordinates, tanh-sinh in the
//! radius), a smooth remainder in polar coordinates around 0 (adaptive
//! Gauss-Kronrod in the radius), and a tail `|z| > R` mapped to `(0, 1]`.

use crate::error::Result;
use crate::quad::{gk_adaptive_vec, periodic_trapezoid_vec, TanhSinh};
use num_complex::Complex64;

type C = Complex64;

/// A sample point, remembering the offset from the marked point whose disk
/// it was generated in so that distances to that point stay exact.
#[derive(Clone, Copy, Debug)]
pub struct PlanePoint {
    pub z: C,
    center: Option<usize>,
    w: C,
}

impl PlanePoint {
    pub fn plain(z: C) -> Self {
        PlanePoint { z, center: None, w: z }
    }

    /// `z - points[k]`.
    pub fn offset(&self, k: usize, points: &[C]) -> C {
        match self.center {
            Some(c) if c == k => self.w,
            Some(c) => (points[c] - points[k]) + self.w,
            None => self.z - points[k],
        }
    }
}

fn smooth_step(x: f64) -> f64 {
    // C^∞ step: 0 for x <= 0, 1 for x >= 1
    if x <= 0.0 {
        return 0.0;
    }
    if x >= 1.0 {
        return 1.0;
    }
    let f = |t: f64| (-1.0 / t).exp();
    let a = f(x);
    a / (a + f(1.0 - x))
}

#[derive(Clone, Debug)]
pub struct PlaneCubature {
    pub points: Vec<C>,
    /// Bump radius around each point.
    pub radius: f64,
    /// Fraction of the radius on which each bump is identically 1.
    pub plateau: f64,
    pub tol: f64,
    pub theta_points: usize,
}

impl PlaneCubature {
    pub fn new(points: &[C], tol: f64, theta_points: usize) -> Self {
        let mut d = f64::INFINITY;
        for a in 0..points.len() {
            for b in a + 1..points.len() {
                d = d.min((points[a] - points[b]).norm());
            }
        }
        PlaneCubature {
            points: points.to_vec(),
            radius: 0.45 * d,
            plateau: 0.3,
            tol,
            theta_points,
        }
    }

    fn bump(&self, r: f64) -> f64 {
        let x = (1.0 - r / self.radius) / (1.0 - self.plateau);
        smooth_step(x)
    }

    fn partition_rest(&self, p: &PlanePoint) -> f64 {
        let mut s = 0.0;
        for k in 0..self.points.len() {
            let r = p.offset(k, &self.points).norm();
            if r < self.radius {
                s += self.bump(r);
            }
        }
        1.0 - s
    }

    fn outer_radius(&self) -> f64 {
        let m = self.points.iter().fold(0.0f64, |m, p| m.max(p.norm()));
        1.5 * m + 2.0 * self.radius
    }

    /// `∬_ℂ f dA` for a vector-valued integrand.
    pub fn integrate(&self, dim: usize, f: impl Fn(&PlanePoint, &mut [C])) -> Result<Vec<C>> {
        let mut total = vec![C::new(0.0, 0.0); dim];
        let inner_tol = (self.tol * 1e-2).max(1e-14);
        let nth = self.theta_points;
        let radial = TanhSinh {
            tol: self.tol,
            max_level: 8,
            min_node: 1e-150,
        };

        // disks around each marked point
        for k in 0..self.points.len() {
            let center = self.points[k];
            let r = self.radius;
            let v = radial.integrate_vec(dim, |x, _xc, out| {
                let rho = r * x;
                let phi = self.bump(rho);
                if phi == 0.0 {
                    return;
                }
                let th = periodic_trapezoid_vec(
                    dim,
                    |theta, o| {
                        let w = C::from_polar(rho, theta);
                        let p = PlanePoint {
                            z: center + w,
                            center: Some(k),
                            w,
                        };
                        f(&p, o);
                    },
                    nth,
                    inner_tol,
                    nth * 64,
                );
                let jac = rho * r * phi;
                for d in 0..dim {
                    out[d] = th[d] * jac;
                }
            })?;
            for d in 0..dim {
                total[d] += v[d];
            }
        }

        // smooth remainder on |z| <= R
        let big = self.outer_radius();
        let v = gk_adaptive_vec(
            0.0,
            big,
            dim,
            |rho, out| {
                let th = periodic_trapezoid_vec(
                    dim,
                    |theta, o| {
                        let p = PlanePoint::plain(C::from_polar(rho, theta));
                        let w = self.partition_rest(&p);
                        if w <= 0.0 {
                            return;
                        }
                        f(&p, o);
                        for x in o.iter_mut() {
                            *x *= w;
                        }
                    },
                    nth,
                    inner_tol,
                    nth * 64,
                );
                for d in 0..dim {
                    out[d] = th[d] * rho;
                }
            },
            self.tol * 1e-3,
            self.tol,
            4000,
        )?;
        for d in 0..dim {
            total[d] += v[d];
        }

        // tail |z| > R with ρ = R/t
        let tail = TanhSinh {
            tol: self.tol,
            max_level: 8,
            min_node: 1e-100,
        };
        let v = tail.integrate_vec(dim, |t, _tc, out| {
            let rho = big / t;
            let th = periodic_trapezoid_vec(
                dim,
                |theta, o| f(&PlanePoint::plain(C::from_polar(rho, theta)), o),
                nth,
                inner_tol,
                nth * 64,
            );
            // ρ dρ = ρ · (R/t²) dt = ρ³/R dt
            for d in 0..dim {
                out[d] = th[d] * rho * rho * (rho / big);
            }
        })?;
        for d in 0..dim {
            total[d] += v[d];
        }
        Ok(total)
    }
}
