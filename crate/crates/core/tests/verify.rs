use periodlab::verify::{run_suite, VerifyOptions, SUITES};
use periodlab::Error;

#[test]
fn every_suite_passes() {
    for s in SUITES {
        let r = run_suite(s, &VerifyOptions::default()).unwrap();
        let failed: Vec<_> = r.checks.iter().filter(|c| !c.pass).map(|c| &c.name).collect();
        assert!(r.passed && failed.is_empty(), "{s}: {failed:?}");
    }
}

#[test]
fn unknown_suite() {
    let e = run_suite("gamma", &VerifyOptions::default()).unwrap_err();
    assert_eq!(e, Error::UnknownSuite("gamma".into()));
}
