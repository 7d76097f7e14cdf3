//! Exact coaction checks on rational coefficients.

use periodlab::coaction::{coact_associator, coact_fl, coact_hyp2f1_local, drop_length_one};
use periodlab::ncalg::Word;
use periodlab::periods::coact_zeta;
use periodlab::{Coeff, Result};

fn main() -> Result<()> {
    let d = coact_associator(1, 1, 3)?;
    let c = Coeff::neg(&d.coeff(&Word::parse("e1e0e0").expect("word")));
    let reduced = drop_length_one(&c)?;
    println!("coefficient of -e1e0e0: {reduced}");
    println!("matches coaction of zeta(3): {}", reduced == coact_zeta(3)?);

    for (n, deg) in [(1, 4), (2, 3)] {
        let r = coact_fl(n, deg)?;
        println!("coaction on FL, n = {n}, degree {deg}: {}", r.verdict);
    }
    let r = coact_hyp2f1_local(4)?;
    println!("local 2F1 coaction: calF {} beta {} F {}", r.calf, r.beta, r.f);
    Ok(())
}
