//! Every acceptance criterion on the standard corpus, one line each.
//!
//! Run with `cargo test -p fibcalc --test acceptance -- --nocapture` to see
//! the lines.

use fibcalc::verify::{run_suite, Corpus, Options, Record, Status, Suite};
use std::time::{Duration, Instant};

struct Criterion {
    number: usize,
    title: &'static str,
    suite: Suite,
    limit: Option<Duration>,
    informational: bool,
}

const fn crit(number: usize, title: &'static str, suite: Suite, limit: Option<u64>) -> Criterion {
    let limit = match limit {
        Some(s) => Some(Duration::from_secs(s)),
        None => None,
    };
    Criterion { number, title, suite, limit, informational: false }
}

const CRITERIA: [Criterion; 11] = [
    crit(1, "taxonomy lattice", Suite::Taxonomy, Some(60)),
    crit(2, "straightening round trip", Suite::Straighten, Some(120)),
    crit(3, "dualisation involution and fibres", Suite::Dualize, None),
    crit(4, "arrow and twisted arrow duality", Suite::ArTw, None),
    crit(5, "ortho and Gray criteria agree", Suite::CrossCheck, None),
    crit(6, "mate identity and involution", Suite::Mates, None),
    crit(7, "mapping space characterisation", Suite::Mapping, None),
    crit(8, "parametrised unit and conjugation", Suite::Unit, None),
    crit(9, "Gray combinatorics", Suite::Gray, None),
    crit(10, "localisation certificates", Suite::Localize, None),
    Criterion { number: 11, title: "dualisation square comparison", suite: Suite::Square, limit: None, informational: true },
];

const TOTAL_LIMIT: Duration = Duration::from_secs(600);

fn checked(records: &[Record]) -> u64 {
    records.iter().map(|r| r.witness.get("checked").and_then(|c| c.as_u64()).unwrap_or(1)).sum()
}

#[test]
fn acceptance() {
    let start = Instant::now();
    let corpus = Corpus::standard();
    let opts = Options::default();
    println!(
        "corpus: {} fibrations, {} categories, {} families",
        corpus.fibrations.len(),
        corpus.categories.len(),
        corpus.families.len()
    );
    let mut failed = Vec::new();
    for c in &CRITERIA {
        let t = Instant::now();
        let records = run_suite(c.suite, &corpus, &opts);
        let elapsed = t.elapsed();
        let fails: Vec<&Record> = records.iter().filter(|r| r.status == Status::Fail).collect();
        let in_time = c.limit.is_none_or(|l| elapsed < l);
        if c.informational {
            let agree = records.iter().filter(|r| r.witness.get("agrees").and_then(|a| a.as_bool()) == Some(true)).count();
            println!(
                "criterion {:>2} INFO {} ({}): {agree} of {} instances agree, {:.1}s",
                c.number,
                c.title,
                c.suite.name(),
                records.len(),
                elapsed.as_secs_f64()
            );
            continue;
        }
        let pass = fails.is_empty() && in_time && !records.is_empty();
        println!(
            "criterion {:>2} {} {} ({}): {} checks, {} failing records, {:.1}s{}",
            c.number,
            if pass { "PASS" } else { "FAIL" },
            c.title,
            c.suite.name(),
            checked(&records),
            fails.len(),
            elapsed.as_secs_f64(),
            c.limit.map_or(String::new(), |l| format!(" (limit {}s)", l.as_secs())),
        );
        for r in fails {
            println!("    {}: {}", r.case, r.witness);
        }
        if !pass {
            failed.push(c.number);
        }
    }
    let total = start.elapsed();
    println!("total {:.1}s (limit {}s)", total.as_secs_f64(), TOTAL_LIMIT.as_secs());
    assert!(failed.is_empty(), "failing criteria: {failed:?}");
    assert!(total < TOTAL_LIMIT);
}
