//! One-dimensional quadrature: tanh-sinh on `[0, 1]` with accurate endpoint
//! complements, adaptive Gauss-Kronrod, periodic trapezoid, and Chebyshev
//! cumulative integration on panels.

use crate::error::{Error, Result};
use num_complex::Complex64;
use std::cmp::Ordering;
use std::collections::BinaryHeap;
use std::f64::consts::PI;

type C = Complex64;

fn czero() -> C {
    C::new(0.0, 0.0)
}

fn max_norm(v: &[C]) -> f64 {
    v.iter().fold(0.0, |m, z| m.max(z.norm()))
}

fn diff_norm(a: &[C], b: &[C]) -> f64 {
    a.iter().zip(b).fold(0.0, |m, (x, y)| m.max((x - y).norm()))
}

/// Double-exponential quadrature on `[0, 1]`.
///
/// The integrand receives `(x, 1 - x)` with both computed without
/// cancellation, so algebraic and logarithmic endpoint singularities can be
/// evaluated accurately in terms of the distance to the nearer endpoint.
#[derive(Clone, Debug)]
pub struct TanhSinh {
    /// Relative tolerance on the max-norm of the result vector.
    pub tol: f64,
    pub max_level: usize,
    /// Smallest endpoint distance at which nodes are placed.
    pub min_node: f64,
}

impl Default for TanhSinh {
    fn default() -> Self {
        TanhSinh {
            tol: 1e-13,
            max_level: 9,
            min_node: 1e-300,
        }
    }
}

impl TanhSinh {
    pub fn with_tol(tol: f64) -> Self {
        TanhSinh {
            tol,
            ..Default::default()
        }
    }

    fn node(tau: f64) -> (f64, f64, f64) {
        let z = 0.5 * PI * tau.sinh();
        let e = (-2.0 * z.abs()).exp();
        let big = 1.0 / (1.0 + e);
        let small = e / (1.0 + e);
        let (x, xc) = if z >= 0.0 { (big, small) } else { (small, big) };
        let w = PI * tau.cosh() * x * xc;
        (x, xc, w)
    }

    /// Integrates a scalar function over `[0, 1]`.
    pub fn integrate(&self, mut f: impl FnMut(f64, f64) -> C) -> Result<C> {
        let v = self.integrate_vec(1, |x, xc, out| out[0] = f(x, xc))?;
        Ok(v[0])
    }

    /// Integrates a vector-valued function over `[0, 1]`.
    pub fn integrate_vec(
        &self,
        dim: usize,
        mut f: impl FnMut(f64, f64, &mut [C]),
    ) -> Result<Vec<C>> {
        let tau_max = ((1.0 / self.min_node).ln() / PI).asinh();
        let mut buf = vec![czero(); dim];
        let mut sum = vec![czero(); dim];
        let mut add_node = |tau: f64, sum: &mut [C], buf: &mut [C]| -> Result<()> {
            let (x, xc, w) = Self::node(tau);
            if w == 0.0 || x.min(xc) < self.min_node {
                return Ok(());
            }
            buf.iter_mut().for_each(|b| *b = czero());
            f(x, xc, buf);
            for (s, b) in sum.iter_mut().zip(buf.iter()) {
                let t = *b * w;
                if !(t.re.is_finite() && t.im.is_finite()) {
                    if x.min(xc) < 1e-200 {
                        continue;
                    }
                    return Err(Error::Quadrature(format!(
                        "non-finite integrand at x = {x:e}"
                    )));
                }
                *s += t;
            }
            Ok(())
        };
        // level 0: integer nodes
        let kmax = tau_max.floor() as i64;
        for k in -kmax..=kmax {
            add_node(k as f64, &mut sum, &mut buf)?;
        }
        let mut prev: Vec<C> = sum.clone();
        let mut h = 1.0;
        let mut last_diff = f64::INFINITY;
        for level in 1..=self.max_level {
            h *= 0.5;
            let mut k = 1i64;
            loop {
                let tau = k as f64 * h;
                if tau > tau_max {
                    break;
                }
                add_node(tau, &mut sum, &mut buf)?;
                add_node(-tau, &mut sum, &mut buf)?;
                k += 2;
            }
            let cur: Vec<C> = sum.iter().map(|s| s * h).collect();
            let diff = diff_norm(&cur, &prev);
            let scale = max_norm(&cur).max(1e-300);
            if level >= 3 && diff <= self.tol * scale {
                return Ok(cur);
            }
            if level == self.max_level {
                if diff <= 1e3 * self.tol * scale || (diff <= 1e-9 * scale && diff >= last_diff) {
                    return Ok(cur);
                }
                return Err(Error::Quadrature(format!(
                    "tanh-sinh did not converge: relative change {:.3e}",
                    diff / scale
                )));
            }
            last_diff = diff;
            prev = cur;
        }
        Ok(prev)
    }
}

const GK_XK: [f64; 11] = [
    0.995_657_163_025_808_1,
    0.973_906_528_517_171_7,
    0.930_157_491_355_708_2,
    0.865_063_366_688_984_5,
    0.780_817_726_586_416_9,
    0.679_409_568_299_024_4,
    0.562_757_134_668_604_7,
    0.433_395_394_129_247_2,
    0.294_392_862_701_460_2,
    0.148_874_338_981_631_2,
    0.0,
];
const GK_WK: [f64; 11] = [
    0.011_694_638_867_371_87,
    0.032_558_162_307_964_73,
    0.054_755_896_574_351_99,
    0.075_039_674_810_919_95,
    0.093_125_454_583_697_61,
    0.109_387_158_802_297_6,
    0.123_491_976_262_065_9,
    0.134_709_217_311_473_3,
    0.142_775_938_577_060_1,
    0.147_739_104_901_338_5,
    0.149_445_554_002_916_9,
];
const GK_WG: [f64; 5] = [
    0.066_671_344_308_688_14,
    0.149_451_349_150_580_6,
    0.219_086_362_515_982_0,
    0.269_266_719_309_996_4,
    0.295_524_224_714_752_9,
];

/// One Gauss-Kronrod 10/21 panel: returns (Kronrod estimate, error estimate).
pub fn gk21(a: f64, b: f64, dim: usize, f: &mut impl FnMut(f64, &mut [C])) -> (Vec<C>, f64) {
    let c = 0.5 * (a + b);
    let h = 0.5 * (b - a);
    let mut k = vec![czero(); dim];
    let mut g = vec![czero(); dim];
    let mut buf = vec![czero(); dim];
    let mut eval = |x: f64, buf: &mut [C]| {
        buf.iter_mut().for_each(|b| *b = czero());
        f(x, buf);
    };
    eval(c, &mut buf);
    for d in 0..dim {
        k[d] += buf[d] * GK_WK[10];
    }
    for i in 0..10 {
        let dx = h * GK_XK[i];
        for &x in &[c - dx, c + dx] {
            eval(x, &mut buf);
            for d in 0..dim {
                k[d] += buf[d] * GK_WK[i];
                if i % 2 == 1 {
                    g[d] += buf[d] * GK_WG[i / 2];
                }
            }
        }
    }
    for d in 0..dim {
        k[d] *= h;
        g[d] *= h;
    }
    let err = diff_norm(&k, &g);
    (k, err)
}

struct Panel {
    a: f64,
    b: f64,
    val: Vec<C>,
    err: f64,
}

impl PartialEq for Panel {
    fn eq(&self, o: &Self) -> bool {
        self.err == o.err
    }
}
impl Eq for Panel {}
impl PartialOrd for Panel {
    fn partial_cmp(&self, o: &Self) -> Option<Ordering> {
        Some(self.cmp(o))
    }
}
impl Ord for Panel {
    fn cmp(&self, o: &Self) -> Ordering {
        self.err
            .partial_cmp(&o.err)
            .unwrap_or(Ordering::Equal)
            .then_with(|| o.a.partial_cmp(&self.a).unwrap_or(Ordering::Equal))
    }
}

/// Globally adaptive Gauss-Kronrod integration of a vector-valued function.
pub fn gk_adaptive_vec(
    a: f64,
    b: f64,
    dim: usize,
    mut f: impl FnMut(f64, &mut [C]),
    abs_tol: f64,
    rel_tol: f64,
    max_panels: usize,
) -> Result<Vec<C>> {
    let mut heap = BinaryHeap::new();
    let (val, err) = gk21(a, b, dim, &mut f);
    let mut total = val.clone();
    let mut total_err = err;
    heap.push(Panel { a, b, val, err });
    while total_err > abs_tol.max(rel_tol * max_norm(&total)) {
        if heap.len() >= max_panels {
            return Err(Error::Quadrature(format!(
                "adaptive Gauss-Kronrod exceeded {max_panels} panels (error estimate {total_err:.3e})"
            )));
        }
        let p = heap.pop().expect("nonempty");
        let m = 0.5 * (p.a + p.b);
        let (v1, e1) = gk21(p.a, m, dim, &mut f);
        let (v2, e2) = gk21(m, p.b, dim, &mut f);
        for d in 0..dim {
            total[d] += v1[d] + v2[d] - p.val[d];
        }
        total_err += e1 + e2 - p.err;
        heap.push(Panel {
            a: p.a,
            b: m,
            val: v1,
            err: e1,
        });
        heap.push(Panel {
            a: m,
            b: p.b,
            val: v2,
            err: e2,
        });
    }
    // re-sum to avoid drift from the running updates
    let mut out = vec![czero(); dim];
    let mut panels: Vec<Panel> = heap.into_vec();
    panels.sort_by(|x, y| x.a.partial_cmp(&y.a).unwrap_or(Ordering::Equal));
    for p in &panels {
        for d in 0..dim {
            out[d] += p.val[d];
        }
    }
    Ok(out)
}

/// Trapezoid rule for a `2π`-periodic function, doubling the number of points
/// until the max-norm change is below `tol` (relative).
pub fn periodic_trapezoid_vec(
    dim: usize,
    mut f: impl FnMut(f64, &mut [C]),
    n0: usize,
    tol: f64,
    max_n: usize,
) -> Vec<C> {
    let mut buf = vec![czero(); dim];
    let mut sum = vec![czero(); dim];
    let mut n = n0;
    for k in 0..n {
        buf.iter_mut().for_each(|b| *b = czero());
        f(2.0 * PI * k as f64 / n as f64, &mut buf);
        for d in 0..dim {
            sum[d] += buf[d];
        }
    }
    let mut prev: Vec<C> = sum.iter().map(|s| s * (2.0 * PI / n as f64)).collect();
    while n < max_n {
        for k in 0..n {
            buf.iter_mut().for_each(|b| *b = czero());
            f(2.0 * PI * (2 * k + 1) as f64 / (2 * n) as f64, &mut buf);
            for d in 0..dim {
                sum[d] += buf[d];
            }
        }
        n *= 2;
        let cur: Vec<C> = sum.iter().map(|s| s * (2.0 * PI / n as f64)).collect();
        let diff = diff_norm(&cur, &prev);
        prev = cur;
        if diff <= tol * max_norm(&prev).max(1e-300) {
            break;
        }
    }
    prev
}

/// Chebyshev points of the second kind on `[-1, 1]`, increasing, and the
/// cumulative integration matrix `M` with `∫_{-1}^{x_m} f ≈ Σ_k M[m][k] f(x_k)`.
#[derive(Clone, Debug)]
pub struct ChebPanel {
    pub nodes: Vec<f64>,
    pub cumint: Vec<Vec<f64>>,
}

impl ChebPanel {
    pub fn new(n: usize) -> Self {
        assert!(n >= 3);
        let m = n - 1;
        let nodes: Vec<f64> = (0..n)
            .map(|j| -(PI * j as f64 / m as f64).cos())
            .collect();
        // values -> Chebyshev coefficients (exact interpolation at these nodes)
        let theta: Vec<f64> = (0..n).map(|j| PI - PI * j as f64 / m as f64).collect();
        let mut cumint = vec![vec![0.0; n]; n];
        for k in 0..n {
            // unit vector at node k
            let mut coef = vec![0.0; n];
            for (p, c) in coef.iter_mut().enumerate() {
                let wk = if k == 0 || k == m { 0.5 } else { 1.0 };
                *c = 2.0 / m as f64 * wk * (p as f64 * theta[k]).cos();
            }
            coef[0] *= 0.5;
            coef[m] *= 0.5;
            // integrate: ∫ T_p = T_{p+1}/(2(p+1)) - T_{p-1}/(2(p-1))
            let mut icoef = vec![0.0; n + 1];
            for p in 0..n {
                let c = coef[p];
                match p {
                    0 => icoef[1] += c,
                    1 => {
                        icoef[2] += c / 4.0;
                        icoef[0] += c / 4.0;
                    }
                    _ => {
                        icoef[p + 1] += c / (2.0 * (p + 1) as f64);
                        icoef[p - 1] -= c / (2.0 * (p - 1) as f64);
                    }
                }
            }
            // fix constant so value at -1 is zero
            let at_minus1: f64 = icoef
                .iter()
                .enumerate()
                .map(|(p, c)| if p % 2 == 0 { *c } else { -*c })
                .sum();
            icoef[0] -= at_minus1;
            for (mrow, th) in theta.iter().enumerate() {
                let v: f64 = icoef
                    .iter()
                    .enumerate()
                    .map(|(p, c)| c * (p as f64 * th).cos())
                    .sum();
                cumint[mrow][k] = v;
            }
        }
        ChebPanel { nodes, cumint }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tanh_sinh_endpoint_singularity() {
        let ts = TanhSinh::default();
        // ∫ x^{-1/2} = 2, ∫ log(1-x) = -1 using the complement
        let v = ts.integrate(|x, _| C::new(x.powf(-0.5), 0.0)).unwrap();
        assert!((v.re - 2.0).abs() < 1e-12);
        let v = ts.integrate(|_, xc| C::new(xc.ln(), 0.0)).unwrap();
        assert!((v.re + 1.0).abs() < 1e-12);
        let v = ts
            .integrate(|x, xc| C::new(x.powf(-0.7) * xc.powf(-0.6), 0.0))
            .unwrap();
        let exact = crate::gamma::gamma_re(0.3) * crate::gamma::gamma_re(0.4)
            / crate::gamma::gamma_re(0.7);
        assert!((v.re - exact).abs() < 1e-10 * exact);
    }

    #[test]
    fn gk_vector() {
        let v = gk_adaptive_vec(
            0.0,
            PI,
            2,
            |x, out| {
                out[0] = C::new(x.sin(), 0.0);
                out[1] = C::new(0.0, (x * x).cos());
            },
            1e-13,
            1e-13,
            200,
        )
        .unwrap();
        assert!((v[0].re - 2.0).abs() < 1e-12);
    }

    #[test]
    fn trapezoid_periodic() {
        let v = periodic_trapezoid_vec(1, |t, out| out[0] = C::new((t.cos()).exp(), 0.0), 8, 1e-14, 1024);
        // ∫_0^{2π} e^{cos t} = 2π I_0(1)
        assert!((v[0].re - 2.0 * PI * 1.266_065_877_752_008_4).abs() < 1e-12);
    }

    #[test]
    fn chebyshev_cumulative() {
        let p = ChebPanel::new(24);
        let f: Vec<f64> = p.nodes.iter().map(|x| x.exp()).collect();
        for (m, x) in p.nodes.iter().enumerate() {
            let v: f64 = p.cumint[m].iter().zip(&f).map(|(a, b)| a * b).sum();
            assert!((v - (x.exp() - (-1.0f64).exp())).abs() < 1e-14);
        }
    }
}
