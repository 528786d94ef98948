use fibcalc::fibclass::io::fib_to_json;
use fibcalc::fibclass::{q_fibration, q_prime_fibration};
use fibcalc::fincat::io::validate;
use fibcalc::fincat::FinCat;
use fibcalc::mates::io::map_to_json;
use fibcalc::twistfree::arrow_cat;
use fibcalc::verify::corpus::chain_families;
use serde_json::Value;
use std::path::PathBuf;
use std::process::{Command, Output};
use std::sync::Arc;

fn data(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../data").join(name)
}

fn fibcalc(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_fibcalc")).args(args).env_remove("FIBCALC_CAPS").output().unwrap()
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap_or_else(|e| panic!("{e}: {}", String::from_utf8_lossy(&out.stdout)))
}

fn path(name: &str) -> String {
    data(name).display().to_string()
}

/// The bundled files as the library builds them.
fn bundled() -> Vec<(&'static str, Value)> {
    let c1 = Arc::new(FinCat::chain(1));
    let mate = chain_families(&c1, "[1]", &[(1, 1)]).into_iter().find(|f| f.name == "[1]:[1]->[1]:01/11").unwrap();
    vec![
        ("q.json", serde_json::to_value(fib_to_json(&q_fibration())).unwrap()),
        ("q_prime.json", serde_json::to_value(fib_to_json(&q_prime_fibration())).unwrap()),
        ("ar1.json", serde_json::to_value(fib_to_json(&arrow_cat(&c1).st)).unwrap()),
        ("mate_b1.json", serde_json::to_value(map_to_json(&mate.value)).unwrap()),
    ]
}

#[test]
fn bundled_data_is_current() {
    for (name, value) in bundled() {
        if std::env::var_os("FIBCALC_BLESS").is_some() {
            std::fs::write(data(name), serde_json::to_string_pretty(&value).unwrap() + "\n").unwrap();
        }
        let on_disk: Value = serde_json::from_str(&std::fs::read_to_string(data(name)).unwrap()).unwrap();
        assert_eq!(on_disk, value, "{name} is stale; rerun with FIBCALC_BLESS=1");
    }
    for (name, n) in [("B1.json", 1), ("B2.json", 2)] {
        let raw = serde_json::from_str(&std::fs::read_to_string(data(name)).unwrap()).unwrap();
        assert!(validate(&raw).unwrap().iso_by_names(&FinCat::chain(n)));
    }
    let raw = serde_json::from_str(&std::fs::read_to_string(data("B11.json")).unwrap()).unwrap();
    let sq = validate(&raw).unwrap();
    assert_eq!((sq.n_obj(), sq.n_mor()), (4, 9));
}

#[test]
fn classify_q() {
    let out = fibcalc(&["classify", "--fib", &path("q.json"), "--format", "json"]);
    assert!(out.status.success());
    let r = json(&out);
    let t = &r["records"][0]["witness"];
    assert_eq!(t["curved_ortho"], true);
    assert_eq!(t["ortho"], false);
    assert!(r["records"].as_array().unwrap().iter().all(|x| x["status"] == "pass"));
}

#[test]
fn gray_square_as_json() {
    let out = fibcalc(&["gray", "1", "1", "--format", "json"]);
    assert!(out.status.success());
    let r = json(&out);
    let homs = r["records"][0]["witness"]["homs"].as_array().unwrap();
    let h = homs.iter().find(|h| h["src"] == "00" && h["tgt"] == "11").unwrap();
    let size = h["hom"]["objects"].as_array().or(h["hom"]["poset"]["elements"].as_array()).unwrap().len();
    assert_eq!(size, 2);
}

#[test]
fn verify_mates_over_a_base() {
    let out = fibcalc(&["verify", "--suite", "mates", "--base", &path("B2.json"), "--format", "json"]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stdout));
    let r = json(&out);
    assert!(!r["records"].as_array().unwrap().is_empty());
}

#[test]
fn exit_codes() {
    assert_eq!(fibcalc(&["verify", "--suite", "nonsense"]).status.code(), Some(2));
    assert_eq!(fibcalc(&["gray", "1"]).status.code(), Some(2));
    assert_eq!(fibcalc(&["--jobs", "0", "gray", "1", "1"]).status.code(), Some(2));
    assert_eq!(fibcalc(&["classify", "--fib", &path("missing.json")]).status.code(), Some(3));
    // a category where a functor into a product is expected
    assert_eq!(fibcalc(&["classify", "--fib", &path("B1.json")]).status.code(), Some(3));
    assert_eq!(fibcalc(&["gray", "4", "1"]).status.code(), Some(3));
    // Q' is not a curved orthofibration, so cc dualisation over A is refused
    assert_eq!(fibcalc(&["dualize", "--fib", &path("q_prime.json"), "--direction", "cc"]).status.code(), Some(1));
    assert_eq!(fibcalc(&["dualize", "--fib", &path("q.json"), "--direction", "cc"]).status.code(), Some(0));
    let out = Command::new(env!("CARGO_BIN_EXE_fibcalc")).args(["gray", "1", "1"]).env("FIBCALC_CAPS", "x").output().unwrap();
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn mate_and_unit_on_the_bundled_example() {
    let out = fibcalc(&["mate", "--map", &path("mate_b1.json"), "--format", "json"]);
    assert!(out.status.success());
    let r = json(&out);
    assert_eq!(r["records"][0]["witness"]["lambda"]["0->1"][1], "01->11");
    assert!(fibcalc(&["unit", "--map", &path("mate_b1.json")]).status.success());
}

#[test]
fn straighten_and_scaling() {
    let out = fibcalc(&["straighten", "--fib", &path("q.json"), "--variance", "contravariant", "--format", "json"]);
    assert!(out.status.success());
    assert_eq!(json(&out)["records"].as_array().unwrap().len(), 2);
    let out = fibcalc(&["scaling", "--format", "json"]);
    assert!(out.status.success());
    // 4 x 4 monotone triples in [1] x [1], two of them nondegenerate; the
    // degenerate ones are always scaled and one square triangle is added
    assert_eq!(json(&out)["records"][0]["witness"]["scaling"].as_array().unwrap().len(), 14 + 1);
    // [1] has no nondegenerate triangles, so flat and sharp agree
    let flat = json(&fibcalc(&["scaling", "--flat", "--format", "json"]));
    assert_eq!(flat["records"][0]["witness"], json(&out)["records"][0]["witness"]);
    let big = |flat: bool| {
        let b2 = path("B2.json");
        let mut args = vec!["scaling", "--left", &b2, "--format", "json"];
        args.extend(flat.then_some("--flat"));
        json(&fibcalc(&args))["records"][0]["witness"]["scaling"].as_array().unwrap().len()
    };
    assert!(big(true) < big(false));
}

#[test]
fn reports_are_byte_identical_across_thread_counts() {
    let run = |jobs: &str| fibcalc(&["--jobs", jobs, "verify", "--suite", "taxonomy,crosscheck,straighten", "--base", &path("B1.json"), "--format", "json"]).stdout;
    let one = run("1");
    assert_eq!(one, run("4"));
    assert_eq!(one, run("1"));
}

#[test]
fn full_verification_passes_with_informational_square_records() {
    let out = fibcalc(&["verify", "--suite", "all", "--format", "json"]);
    assert!(out.status.success());
    let r = json(&out);
    let recs = r["records"].as_array().unwrap();
    assert!(recs.iter().all(|x| x["status"] != "fail"));
    assert!(recs.iter().any(|x| x["suite"] == "square" && x["status"] == "informational"));
    assert!(recs.iter().all(|x| x.get("wall_ms").is_none()));
    for s in ["taxonomy", "straighten", "dualize", "artw", "crosscheck", "mates", "mapping", "unit", "gray", "localize"] {
        assert!(recs.iter().any(|x| x["suite"] == s), "{s}");
    }
}
