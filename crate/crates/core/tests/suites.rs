use derilab::suites::{run_suite, Suite};

#[test]
fn all_suites_pass_and_are_deterministic() {
    for suite in Suite::ALL {
        let r = run_suite(suite, 7, None).unwrap();
        assert!(r.checks() > 0, "{suite}");
        assert!(r.passed(), "{suite}: {:?}", r.failing_cases);
        assert_eq!(r, run_suite(suite, 7, None).unwrap());
        assert_eq!(suite.to_string().parse::<Suite>().unwrap(), suite);
    }
}

#[test]
fn slide_suite_genus() {
    assert!(run_suite(Suite::Slides, 1, Some(3)).is_err());
    assert!(run_suite(Suite::Slides, 1, Some(4)).unwrap().passed());
    assert!(run_suite(Suite::Slides, 2, Some(9)).unwrap().passed());
}
