//! Gauss hypergeometric periods: the period matrix, twisted period
//! relations and the single-valued version.

use periodlab::hyp2f1::{
    det_residual, f21, g21, gauss_relation_residual, period_matrix, sv_calf, sv_calf_integral, sv_f,
    twisted_relation_residual, HypParams,
};
use periodlab::Result;

fn main() -> Result<()> {
    let p = HypParams::real(0.21, 0.37, 0.84, 0.35)?;
    println!("F = {:.15}", f21(&p)?.re);
    println!("G = {:.15}", g21(&p)?.re);
    let m = period_matrix(&p)?;
    for row in &m.entries {
        println!("  {:+.12} {:+.12}", row[0], row[1]);
    }
    println!("det residual     {:.2e}", det_residual(&p)?);
    println!("twisted residual {:.2e}", twisted_relation_residual(&p)?);
    println!("Gauss relation   {:.2e}", gauss_relation_residual(&p)?);

    let q = HypParams::real(0.3, 0.2, 0.4, 0.3)?;
    let a = sv_calf(&q)?;
    let b = sv_calf_integral(&q, 1e-9)?;
    println!("sv calF double copy {:.12}, plane integral {:.12}", a.re, b.re);
    println!("sv F = {:.12} (imaginary part {:.1e})", sv_f(&q)?.re, sv_f(&q)?.im);
    Ok(())
}
