use qtrin_core::suite::{
    execute_sequential, render_report, run_suite, run_suite_with, CaseSpec, Execution, Format, Params, Status,
    SuiteName, SuiteOptions, SuiteReport,
};
use qtrin_core::Error;

fn opts() -> SuiteOptions {
    SuiteOptions::default()
}

#[test]
fn appendix_passes_at_lmax_8() {
    let r = run_suite(SuiteName::Appendix, &SuiteOptions { lmax: Some(8), ..opts() }).unwrap();
    assert!(r.all_pass(), "{}", render_report(&r, Format::Text, false));
    assert!(r.summary.pass > 0);
}

#[test]
fn props_at_three_four() {
    let o = SuiteOptions { lmax: Some(10), pair: Some((3, 4)), ..opts() };
    let r = run_suite(SuiteName::Props, &o).unwrap();
    assert!(r.all_pass(), "{}", render_report(&r, Format::Text, false));
    assert!(r.cases.iter().any(|c| c.id.starts_with("props/prop3/")));
    assert!(r.cases.iter().all(|c| !c.id.starts_with("props/prop5")));
}

#[test]
fn everything_at_lmax_0() {
    let r = run_suite(SuiteName::All, &SuiteOptions { lmax: Some(0), order: Some(6), ..opts() }).unwrap();
    assert!(r.all_pass(), "{}", render_report(&r, Format::Text, false));
    let ids: std::collections::BTreeSet<_> = r.cases.iter().map(|c| &c.id).collect();
    assert_eq!(ids.len(), r.cases.len(), "case ids must be unique");
    for s in ["appendix/", "trinom/", "connect/", "virasoro/", "section3/", "props/", "bailey/", "limits/"] {
        assert!(r.cases.iter().any(|c| c.id.starts_with(s)), "no {s} cases");
    }
}

#[test]
fn ids_carry_the_suite_name_once() {
    for s in SuiteName::ALL.into_iter().filter(|s| *s != SuiteName::All) {
        let r = run_suite(s, &SuiteOptions { lmax: Some(1), order: Some(4), ..opts() }).unwrap();
        let head = format!("{s}/");
        for c in &r.cases {
            assert!(c.id.starts_with(&head), "{}", c.id);
            assert!(!c.id[head.len()..].starts_with(&head), "{}", c.id);
        }
    }
}

#[test]
fn parallel_and_sequential_reports_agree() {
    let o = SuiteOptions { lmax: Some(4), order: Some(8), seed: 3, ..opts() };
    let a = run_suite_with(SuiteName::All, &o, Execution::Parallel).unwrap();
    let b = run_suite_with(SuiteName::All, &o, Execution::Sequential).unwrap();
    assert_eq!(a.to_json(), b.to_json());
    let c = run_suite(SuiteName::Bailey, &SuiteOptions { seed: 4, ..o.clone() }).unwrap();
    let seeds = |r: &SuiteReport| r.cases.iter().filter_map(|c| c.params.get("seed").cloned()).collect::<Vec<_>>();
    let a_bailey = run_suite(SuiteName::Bailey, &o).unwrap();
    assert_ne!(seeds(&a_bailey), seeds(&c));
}

#[test]
fn filters() {
    let r = run_suite(SuiteName::Virasoro, &SuiteOptions { pair: Some((4, 5)), lmax: Some(3), ..opts() }).unwrap();
    assert!(r.all_pass());
    assert!(r.cases.iter().all(|c| c.params["p"] == 4 && c.params["pp"] == 5));
    let r = run_suite(SuiteName::Props, &SuiteOptions { n: Some(4), lmax: Some(3), ..opts() }).unwrap();
    assert!(r.all_pass());
    assert!(r.cases.iter().all(|c| c.params["n"] == 4));
    let r = run_suite(SuiteName::Limits, &SuiteOptions { n: Some(2), order: Some(5), ..opts() }).unwrap();
    assert_eq!(r.cases.iter().filter(|c| c.id.starts_with("limits/tainf/")).count(), 1);
}

#[test]
fn usage_errors() {
    assert!("bogus".parse::<SuiteName>().is_err());
    assert_eq!("section3".parse::<SuiteName>().unwrap(), SuiteName::Section3);
    for bad in [
        SuiteOptions { lmax: Some(-1), ..opts() },
        SuiteOptions { order: Some(-2), ..opts() },
        SuiteOptions { pair: Some((4, 6)), ..opts() },
        SuiteOptions { pair: Some((5, 4)), ..opts() },
        SuiteOptions { n: Some(0), ..opts() },
        SuiteOptions { threads: Some(0), ..opts() },
    ] {
        assert!(run_suite(SuiteName::Binom, &bad).is_err(), "{bad:?}");
    }
    // (7, 15) is a valid pair to which no proposition applies
    let e = run_suite(SuiteName::Props, &SuiteOptions { pair: Some((7, 15)), ..opts() });
    assert!(matches!(e, Err(Error::InvalidPair { .. })));
}

#[test]
fn empty_report() {
    let r = SuiteReport::new("binom", Vec::new());
    assert_eq!((r.summary.pass, r.summary.fail, r.summary.error), (0, 0, 0));
    assert!(r.all_pass());
}

#[test]
fn failing_and_erroring_cases() {
    let specs = vec![
        CaseSpec::new("z/fail", Params::new(), || {
            let lhs = qtrin_core::qbinom::qbin(3, 1);
            let rhs = qtrin_core::qcore::QPoly::from_coeffs(&[1, 1]);
            Ok(Some(format!("lhs - rhs = {}", &lhs - &rhs)))
        }),
        CaseSpec::new("a/error", Params::new(), || Err(Error::NegativeLength(-1))),
        CaseSpec::new("m/pass", Params::new(), || Ok(None)),
    ];
    let r = SuiteReport::new("demo", execute_sequential(&specs, false));
    let ids: Vec<_> = r.cases.iter().map(|c| c.id.as_str()).collect();
    assert_eq!(ids, ["a/error", "m/pass", "z/fail"]);
    assert_eq!((r.summary.pass, r.summary.fail, r.summary.error), (1, 1, 1));
    assert_eq!(r.cases[2].status, Status::Fail);
    assert_eq!(r.cases[2].detail, "lhs - rhs = q^2");
    assert!(r.cases[0].detail.contains("-1"));
    assert!(r.cases.iter().all(|c| c.millis == 0));
    assert!(!r.all_pass());
}

#[test]
fn json_round_trip() {
    let r = run_suite(SuiteName::Trinom, &SuiteOptions { lmax: Some(3), ..opts() }).unwrap();
    let text = r.to_json();
    let back: SuiteReport = serde_json::from_str(&text).unwrap();
    assert_eq!(back, r);
    let v: serde_json::Value = serde_json::from_str(&text).unwrap();
    for key in ["suite", "cases", "summary"] {
        assert!(v.get(key).is_some());
    }
    for key in ["id", "params", "status", "millis", "detail"] {
        assert!(v["cases"][0].get(key).is_some());
    }
    assert_eq!(v["cases"][0]["status"], "pass");
}

#[test]
fn emitted_json_file_parses_back() {
    let r = run_suite(SuiteName::Binom, &SuiteOptions { lmax: Some(2), ..opts() }).unwrap();
    let path = std::env::temp_dir().join(format!("qtrin-emit-{}.json", std::process::id()));
    qtrin_core::suite::emit_report(&r, Format::Json, Some(&path)).unwrap();
    let back: SuiteReport = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    std::fs::remove_file(&path).unwrap();
    assert_eq!(back, r);
    let dir = std::env::temp_dir();
    assert!(qtrin_core::suite::emit_report(&r, Format::Json, Some(&dir)).is_err());
}
