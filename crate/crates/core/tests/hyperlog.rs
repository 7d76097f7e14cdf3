mod common;

use common::*;
use periodlab::config::Configuration;
use periodlab::hyperlog::{associators, shuffle_regularization_check};

#[test]
fn drinfeld_coefficients_are_zeta_values() {
    let cfg = Configuration::real(&[1.0]).unwrap();
    let z = &associators(&cfg, 5).unwrap()[0];
    for k in 2..=5 {
        let w = format!("{}e1", "e0".repeat(k - 1));
        let c = z.coeff(&word(&w));
        let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
        assert!((c - cr(sign * zeta_oracle(k))).norm() < 1e-12, "{w}: {c}");
    }
    assert!(z.shuffle_defect() < 1e-12);
}

#[test]
fn associators_are_group_like() {
    let cfg = Configuration::new(&[cr(1.0), C::new(0.5, 1.5)]).unwrap();
    for (i, z) in associators(&cfg, 4).unwrap().iter().enumerate() {
        assert!(z.is_group_like(1e-11), "Z^{}", i + 1);
        assert!(shuffle_regularization_check(&cfg, i + 1, 3).unwrap() < 1e-11);
    }
}
