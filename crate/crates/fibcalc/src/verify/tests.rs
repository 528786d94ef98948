use super::corpus::*;
use super::*;
use crate::fincat::FinCat;
use std::sync::Arc;

#[test]
fn empty_report_json() {
    let r = Report::default();
    assert_eq!(serde_json::to_string(&r).unwrap(), r#"{"version":1,"records":[]}"#);
    assert!(r.passed());
}

#[test]
fn record_round_trips() {
    let r = Report::new(vec![Record {
        suite: "gray".into(),
        anchor: "plumbing".into(),
        case: "x".into(),
        status: Status::Pass,
        witness: json!({"checked": 1}),
        wall_ms: None,
    }]);
    assert_eq!(Report::from_json(&r.to_json()).unwrap(), r);
}

#[test]
fn suite_selection() {
    assert_eq!(parse_selection("all").unwrap().len(), 11);
    assert_eq!(parse_selection("mates,gray,mates").unwrap(), vec![Suite::Mates, Suite::Gray]);
    assert!(parse_selection("bogus").is_err());
    for s in Suite::ALL {
        assert_eq!(s.name().parse::<Suite>().unwrap(), s);
    }
}

#[test]
fn preorder_counts() {
    // labelled preorders on 1, 2, 3 points
    assert_eq!([1, 2, 3].map(|n| preorders(n).len()), [1, 4, 29]);
    assert_eq!(permutations(3).len(), 6);
}

#[test]
fn monotone_maps_keeping_the_top() {
    // maps [n] -> [m] with x_n = m: sequences of length n over [m]
    assert_eq!(monotone_onto_top(1, 1).len(), 2);
    assert_eq!(monotone_onto_top(1, 2).len(), 3);
    assert_eq!(monotone_onto_top(2, 2).len(), 6);
}

#[test]
fn generated_fibrations_are_distinct_up_to_relabelling() {
    let pt = Arc::new(FinCat::point());
    // thin categories on at most three objects over a point: preorders up
    // to isomorphism, 1 + 3 + 9
    assert_eq!(generated_over(&pt, &pt, "x").len(), 13);
}

fn small() -> Corpus {
    let c1 = Arc::new(FinCat::chain(1));
    let mut c = Corpus::over_base(c1);
    c.fibrations.truncate(40);
    c.families.truncate(6);
    c
}

#[test]
fn output_does_not_depend_on_threads() {
    let corpus = small();
    let opts = Options::default();
    let sel = [Suite::Taxonomy, Suite::CrossCheck, Suite::Mates, Suite::Localize];
    let one = rayon::ThreadPoolBuilder::new().num_threads(1).build().unwrap().install(|| run(&sel, &corpus, &opts));
    let four = rayon::ThreadPoolBuilder::new().num_threads(4).build().unwrap().install(|| run(&sel, &corpus, &opts));
    assert_eq!(one.to_json(), four.to_json());
    assert!(one.passed(), "{}", one.to_text());
}

#[test]
fn gray_suite_passes() {
    let r = run(&[Suite::Gray], &Corpus::default(), &Options::default());
    assert!(r.passed(), "{}", r.to_text());
    assert_eq!(r.records.len(), 4);
}

#[test]
fn strict_promotes_informational_records() {
    let corpus = Corpus { fibrations: vec![], categories: vec![], families: vec![] };
    let strict = Options { strict: true, ..Options::default() };
    assert!(run(&[Suite::Square], &corpus, &strict).records.is_empty());
}
