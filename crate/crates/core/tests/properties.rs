mod common;

use common::*;
use periodlab::coaction::{coact_associator, counit_series};
use periodlab::hyp2f1::{calf, f21_series, sv_f, twisted_relation_residual, HypParams};
use periodlab::gamma::beta;
use periodlab::ncalg::{shuffle, NCSeries, Word};
use periodlab::periods::symbolic_associator;
use periodlab::Q;
use proptest::prelude::*;

fn coeffs() -> impl Strategy<Value = Vec<i64>> {
    prop::collection::vec(-5i64..=5, 3..7)
}

fn small_word(alphabet: usize, max_len: usize) -> impl Strategy<Value = Vec<usize>> {
    prop::collection::vec(0..alphabet, 0..=max_len)
}

/// `x` stays at least `margin` away from every integer.
fn off_integers(x: f64, margin: f64) -> bool {
    (x - x.round()).abs() > margin
}

fn bq_product_defect(x: &NCSeries<Q>, y: &NCSeries<Q>, j: usize) -> bool {
    let w = x.max_weight();
    let lhs = x.mul(y).unwrap().beta_quotient(j).unwrap().with_max_degree(w);
    let rhs = x
        .abelianize()
        .mul(&y.beta_quotient(j).unwrap().with_max_degree(w))
        .unwrap()
        .add(&x.beta_quotient(j).unwrap().with_max_degree(w).scale(&y.constant_term()))
        .unwrap();
    lhs.truncate(w - 1) == rhs.truncate(w - 1)
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 48, ..ProptestConfig::default() })]

    #[test]
    fn shuffle_is_commutative_with_binomial_count(u in small_word(3, 3), v in small_word(3, 3)) {
        let (u, v) = (Word::new(&u), Word::new(&v));
        let uv = shuffle(&u, &v);
        prop_assert_eq!(&uv, &shuffle(&v, &u));
        let n = u.len() + v.len();
        let binom = (0..u.len()).fold(1u64, |acc, i| acc * (n - i) as u64 / (i + 1) as u64);
        prop_assert_eq!(uv.values().sum::<u64>(), binom);
        for w in uv.keys() {
            prop_assert_eq!(w.len(), n);
        }
    }

    #[test]
    fn exp_of_lie_is_group_like(seed in coeffs(), alphabet in 2usize..=3) {
        let l = lie_element(alphabet, 4, &seed);
        let x = l.exp().unwrap();
        prop_assert!(x.is_group_like(0.0));
        prop_assert_eq!(x.log().unwrap(), l.clone());
        // the inverse of a group-like series is exp(-L)
        prop_assert_eq!(x.inverse().unwrap(), l.neg().exp().unwrap());
    }

    #[test]
    fn beta_quotient_product_and_inverse(s in coeffs(), t in coeffs(), j in 0usize..3) {
        let x = unit_series(3, 4, &s);
        let y = unit_series(3, 4, &t);
        prop_assert!(bq_product_defect(&x, &y, j));
        let w = 4;
        let inv = x.inverse().unwrap().beta_quotient(j).unwrap().with_max_degree(w);
        let want = x
            .abelianize()
            .inverse()
            .unwrap()
            .mul(&x.beta_quotient(j).unwrap().with_max_degree(w))
            .unwrap()
            .neg();
        prop_assert_eq!(inv.truncate(w - 1), want.truncate(w - 1));
    }

    #[test]
    fn abelianization_of_group_like(seed in coeffs()) {
        // brackets abelianize to zero, so ab(exp L) = exp(linear part of L)
        let l = lie_element(3, 4, &seed);
        let ab = l.abelianize();
        let linear = ab.truncate(1);
        prop_assert_eq!(ab, linear.clone().with_max_degree(4));
        prop_assert_eq!(l.exp().unwrap().abelianize(), linear.with_max_degree(4).exp().unwrap());
    }
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 24, ..ProptestConfig::default() })]

    #[test]
    fn twisted_relations_hold(
        a in -0.9f64..1.4, b in -0.9f64..1.4, c in -0.9f64..1.4, y in 0.05f64..0.7,
    ) {
        let m = 0.08;
        prop_assume!([a, b, c, c - a, c - b, a - b].iter().all(|&x| off_integers(x, m)));
        let p = HypParams::real(a, b, c, y).unwrap();
        let r = twisted_relation_residual(&p).unwrap();
        prop_assert!(r <= 1e-9, "residual {r:e} at ({a}, {b}, {c}; {y})");
    }

    #[test]
    fn series_and_integral_routes_agree(
        a in -0.9f64..1.4, b in -0.9f64..1.4, c in -0.9f64..1.4, y in -0.6f64..0.6,
    ) {
        prop_assume!([b, c, c - b].iter().all(|&x| off_integers(x, 0.08)));
        prop_assume!(y.abs() > 1e-3);
        let p = HypParams::real(a, b, c, y).unwrap();
        let s = f21_series(&p, 1e-15).unwrap();
        let f = calf(&p).unwrap() / beta(p.b, p.c - p.b);
        prop_assert!((s - f).norm() <= 1e-9 * s.norm().max(1.0), "{s} vs {f}");
    }

    #[test]
    fn sv_f_is_real_for_real_parameters(
        a in 0.05f64..0.45, b in 0.05f64..0.4, cb in 0.05f64..0.4, y in -0.8f64..0.8,
    ) {
        let c = b + cb;
        prop_assume!([c, c - a].iter().all(|&x| off_integers(x, 0.05)) && y.abs() > 1e-3);
        let p = HypParams::real(a, b, c, y).unwrap();
        let v = sv_f(&p).unwrap();
        prop_assert!(v.im.abs() <= 1e-10 * v.norm().max(1.0), "{v}");
    }
}

#[test]
fn exact_checks_are_not_vacuous() {
    assert!(!unit_series(2, 3, &[1, 2, 3]).is_group_like(0.0));
    let y = unit_series(3, 4, &[2, -1, 1]);
    let z = unit_series(3, 4, &[1, 1, -2]);
    let w = 4;
    // the product rule without its second term fails
    let partial = y
        .abelianize()
        .mul(&z.beta_quotient(1).unwrap().with_max_degree(w))
        .unwrap();
    let full = y.mul(&z).unwrap().beta_quotient(1).unwrap().with_max_degree(w);
    assert_ne!(partial.truncate(w - 1), full.truncate(w - 1));
}

#[test]
fn counit_recovers_associator() {
    for (n, i) in [(1, 1), (2, 1), (2, 2)] {
        let d = coact_associator(n, i, 4).unwrap();
        assert_eq!(counit_series(&d), symbolic_associator(n, i, 4, false));
    }
}
