//! Single-valued Lauricella matrices as plane integrals, compared with the
//! double copy built from ordinary periods.

use periodlab::config::Configuration;
use periodlab::lauricella::{double_copy, sv_lauricella_taylor, ParameterVector};
use periodlab::Result;

fn main() -> Result<()> {
    let cfg = Configuration::real(&[1.0])?;
    let dc = double_copy(&cfg, &ParameterVector::real(&[0.15, 0.2]))?;
    println!("n = 1: L^s = {:.12}, residual {:.2e}", dc.sv.entry(1, 1).re, dc.residual);

    let t = sv_lauricella_taylor(&cfg, 1, 1, 3)?;
    println!("sv Taylor coefficients (the s0 s1 term vanishes):");
    for (e, c) in t.terms() {
        println!("  {:?} {:+.10}", e.0, c.re);
    }

    let cfg = Configuration::real(&[1.0, 3.0])?;
    let dc = double_copy(&cfg, &ParameterVector::real(&[0.1, 0.12, 0.08]))?;
    println!("n = 2: residual {:.2e}", dc.residual);
    for row in &dc.sv.entries {
        println!("  {:+.10} {:+.10}", row[0].re, row[1].re);
    }
    Ok(())
}
