//! Generalized associators for Σ = {0, 1, 3}: a few coefficients, the
//! shuffle defect, and the multiple zeta values hidden in Z^1.

use periodlab::config::Configuration;
use periodlab::gamma::zeta;
use periodlab::hyperlog::associators;
use periodlab::ncalg::Word;
use periodlab::Result;

fn main() -> Result<()> {
    let cfg = Configuration::real(&[1.0, 3.0])?;
    let z = associators(&cfg, 4)?;
    for (i, zi) in z.iter().enumerate() {
        println!("Z^{} shuffle defect {:.2e}", i + 1, zi.shuffle_defect());
        for w in ["e1", "e2", "e0e1", "e1e2", "e0e2e1"] {
            let c = zi.coeff(&Word::parse(w).expect("word"));
            println!("  {w:8} {:+.12} {:+.12}i", c.re, c.im);
        }
    }
    // Z^1 restricted to e0, e1 is the Drinfeld associator of {0, 1}
    let one = Configuration::real(&[1.0])?;
    let z1 = &associators(&one, 3)?[0];
    let c = z1.coeff(&Word::parse("e0e1").expect("word"));
    println!("coeff e0e1 = {:+.15}, -zeta(2) = {:+.15}", c.re, -zeta(2));
    let c = z1.coeff(&Word::parse("e0e0e1").expect("word"));
    println!("coeff e0e0e1 = {:+.15}, -zeta(3) = {:+.15}", c.re, -zeta(3));
    Ok(())
}
