//! The n = 1 Lauricella entry is a beta function. Compares the integral with
//! the gamma closed form and prints its Taylor expansion at s = 0.

use periodlab::config::Configuration;
use periodlab::gamma::beta;
use periodlab::lauricella::{lauricella_entry, lauricella_taylor, ParameterVector};
use periodlab::{Complex64, Result};

fn main() -> Result<()> {
    let cfg = Configuration::real(&[1.0])?;
    for (s0, s1) in [(0.3, 0.4), (0.5, 0.5), (0.15, 0.7)] {
        let v = lauricella_entry(&cfg, &ParameterVector::real(&[s0, s1]), 1, 1)?;
        let want = beta(Complex64::new(s0, 0.0), Complex64::new(s1, 0.0)) * (s0 * s1 / (s0 + s1));
        println!("s = ({s0}, {s1}): L = {:.15}  closed form = {:.15}", v.re, want.re);
    }
    let t = lauricella_taylor(&cfg, 1, 1, 4)?;
    println!("Taylor expansion in (s0, s1):");
    for (e, c) in t.terms() {
        println!("  {:?}  {:+.12}", e.0, c.re);
    }
    Ok(())
}
