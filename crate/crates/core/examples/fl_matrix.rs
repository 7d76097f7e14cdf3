//! The Taylor expansion of the period matrix two ways: from beta quotients
//! of the associators and from the renormalized integrals.

use periodlab::config::Configuration;
use periodlab::hyperlog::associators;
use periodlab::lauricella::{fl_matrix, lauricella_taylor_matrix};
use periodlab::verify::series_matrix_diff;
use periodlab::Result;

fn main() -> Result<()> {
    for pts in [[1.0, 3.0], [1.0, 1.0 / 0.35]] {
        let cfg = Configuration::real(&pts)?;
        let fl = fl_matrix(&associators(&cfg, 3)?, 3)?;
        let taylor = lauricella_taylor_matrix(&cfg, 3)?;
        println!("Σ = {{0, {}, {:.6}}}", pts[0], pts[1]);
        for (e, c) in fl.entry(1, 2).terms().take(6) {
            println!("  FL_12 {:?} {:+.12} {:+.12}i", e.0, c.re, c.im);
        }
        println!("  max coefficient difference {:.2e}", series_matrix_diff(&fl, &taylor)?);
    }
    Ok(())
}
