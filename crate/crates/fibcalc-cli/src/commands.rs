use crate::{Cli, Command, DirectionArg, SideArg, VarianceArg};
use fibcalc::fibclass::io::{fib_from_json, fib_to_json, FibrationJson};
use fibcalc::fibclass::{classify, TwoVarFib};
use fibcalc::fincat::io::{validate, CategoryJson};
use fibcalc::fincat::FinCat;
use fibcalc::graytensor::{collapse_to_delta2_capped, gray_scaling, gray_simplices_capped, GrayError, ScaledComplex};
use fibcalc::grothendieck::{
    dualize, fib_equivalent_with_caps, straighten, unstraighten, Caps, Direction, EdgeSpec, Factor, Region, Variance,
};
use fibcalc::mates::io::{map_from_json, MapOverJson};
use fibcalc::mates::{adj_with_caps, MapOver};
use fibcalc::fibclass::LiftKind;
use fibcalc::verify::{self, Corpus, Named, Options, Record, Report, Status, Suite, SUITE_CAPS};
use serde::de::DeserializeOwned;
use serde_json::{json, Value};
use std::path::Path;
use std::sync::Arc;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{path}: {detail}")]
    File { path: String, detail: String },
    #[error("{0}")]
    Input(String),
}

const PLUMBING: &str = "plumbing";

fn read<T: DeserializeOwned>(path: &Path) -> Result<T, CliError> {
    let file = |detail: String| CliError::File { path: path.display().to_string(), detail };
    let text = std::fs::read_to_string(path).map_err(|e| file(e.to_string()))?;
    serde_json::from_str(&text).map_err(|e| file(e.to_string()))
}

fn case_name(path: &Path) -> String {
    path.file_name().map_or_else(|| path.display().to_string(), |n| n.to_string_lossy().into_owned())
}

fn load_fib(path: &Path) -> Result<TwoVarFib, CliError> {
    let raw: FibrationJson = read(path)?;
    fib_from_json(&raw).map_err(|e| CliError::File { path: path.display().to_string(), detail: e.to_string() })
}

fn load_map(path: &Path) -> Result<MapOver, CliError> {
    let raw: MapOverJson = read(path)?;
    map_from_json(&raw).map_err(|e| CliError::File { path: path.display().to_string(), detail: e.to_string() })
}

fn load_cat(path: &Path) -> Result<Arc<FinCat>, CliError> {
    let raw: CategoryJson = read(path)?;
    validate(&raw).map(Arc::new).map_err(|e| CliError::File { path: path.display().to_string(), detail: e.to_string() })
}

fn record(suite: &str, anchor: &str, case: &str, ok: bool, witness: Value) -> Record {
    Record {
        suite: suite.into(),
        anchor: anchor.into(),
        case: case.into(),
        status: if ok { Status::Pass } else { Status::Fail },
        witness,
        wall_ms: None,
    }
}

fn options(cli: &Cli) -> Result<Options, CliError> {
    let caps = match std::env::var("FIBCALC_CAPS") {
        Ok(s) => Caps::parse(&s).map_err(|e| CliError::Input(e.to_string()))?,
        Err(_) => SUITE_CAPS,
    };
    Ok(Options { caps, strict: cli.strict, timings: cli.timings })
}

fn one_fibration(name: &str, p: &TwoVarFib) -> Corpus {
    Corpus { fibrations: vec![Named { name: name.into(), value: p.clone() }], ..Corpus::default() }
}

fn one_family(name: &str, fam: &MapOver) -> Corpus {
    Corpus { families: vec![Named { name: name.into(), value: fam.clone() }], ..Corpus::default() }
}

pub fn run(cli: &Cli) -> Result<Report, CliError> {
    let opts = options(cli)?;
    let mut records = Vec::new();
    match &cli.command {
        Command::Classify { fib } => {
            let (name, p) = (case_name(fib), load_fib(fib)?);
            let t = classify(&p).map_err(|e| CliError::Input(e.to_string()))?;
            records.push(record("classify", PLUMBING, &name, true, serde_json::to_value(&t).unwrap_or_default()));
            let corpus = one_fibration(&name, &p);
            records.extend(verify::run(&[Suite::Taxonomy, Suite::CrossCheck], &corpus, &opts).records);
        }
        Command::Straighten { fib, variance, side } => {
            let (name, p) = (case_name(fib), load_fib(fib)?);
            let (v, f) = (variance_of(*variance), factor_of(*side));
            match straighten(&p, v, f) {
                Ok(pf) => {
                    records.push(record("straighten", PLUMBING, &name, true, pf.to_json()));
                    let kind = match v {
                        Variance::Covariant => LiftKind::Cocartesian,
                        Variance::Contravariant => LiftKind::Cartesian,
                    };
                    let region = if f == Factor::A { Region::Left } else { Region::Right };
                    let back = unstraighten(&pf).map(|u| if f == Factor::A { u.fib } else { u.fib.swap() });
                    let found = back.and_then(|q| fib_equivalent_with_caps(&p, &q, &EdgeSpec(vec![(kind, region)]), opts.caps));
                    let anchor = "unstraightening after straightening is equivalent to the identity";
                    records.push(match found {
                        Ok(e) => record("straighten", anchor, &format!("{name} round trip"), e.is_some(), Value::Null),
                        Err(e) => record("straighten", anchor, &format!("{name} round trip"), false, json!({ "error": e.to_string() })),
                    });
                }
                Err(e) => records.push(record("straighten", PLUMBING, &name, false, json!({ "error": e.to_string() }))),
            }
        }
        Command::Dualize { fib, side, direction } => {
            let (name, p) = (case_name(fib), load_fib(fib)?);
            let dir = match direction {
                DirectionArg::Ct => Direction::Ct,
                DirectionArg::Cc => Direction::Cc,
            };
            records.push(match dualize(&p, factor_of(*side), dir) {
                Ok(d) => record("dualize", PLUMBING, &name, true, serde_json::to_value(fib_to_json(&d)).unwrap_or_default()),
                Err(e) => record("dualize", PLUMBING, &name, false, json!({ "error": e.to_string() })),
            });
        }
        Command::Mate { map } => {
            let (name, fam) = (case_name(map), load_map(map)?);
            match adj_with_caps(&fam, opts.caps) {
                Ok(pa) => {
                    records.push(record("mate", PLUMBING, &name, true, pa.to_json()));
                    records.extend(verify::run(&[Suite::Mates], &one_family(&name, &fam), &opts).records);
                }
                Err(e) => records.push(record("mate", PLUMBING, &name, false, json!({ "error": e.to_string() }))),
            }
        }
        Command::Unit { map } => {
            let (name, fam) = (case_name(map), load_map(map)?);
            records.extend(verify::run(&[Suite::Unit], &one_family(&name, &fam), &opts).records);
        }
        Command::Gray { m, n, cap } => {
            let case = format!("[{m}]x[{n}]");
            let g = gray_simplices_capped(*m, *n, *cap).map_err(gray_input)?;
            let laws = g.check();
            records.push(record("gray", PLUMBING, &case, laws.is_ok(), g.to_json()));
            let c = collapse_to_delta2_capped(*m, *n, *cap).map_err(gray_input)?;
            let anchor = "Gray tensor products of simplices via maximal chains";
            let witness = json!({ "pairs": c.certificates.len(), "inverts_exactly_vertical": c.inverts_exactly_vertical });
            records.push(record("gray", anchor, &format!("{case} collapse"), c.certified(), witness));
        }
        Command::Scaling { left, right, flat } => {
            let get = |p: &Option<std::path::PathBuf>| -> Result<(String, Arc<FinCat>), CliError> {
                match p {
                    Some(p) => Ok((case_name(p), load_cat(p)?)),
                    None => Ok(("[1]".into(), Arc::new(FinCat::chain(1)))),
                }
            };
            let ((ln, l), (rn, r)) = (get(left)?, get(right)?);
            let scale = |c: &FinCat| -> Result<ScaledComplex, CliError> {
                let s = ScaledComplex::nerve(c).map_err(|e| CliError::Input(e.to_string()))?;
                Ok(if *flat { s } else { s.sharp() })
            };
            let x = gray_scaling(&scale(&l)?, &scale(&r)?);
            records.push(record("scaling", PLUMBING, &format!("{ln} x {rn}"), x.check().is_ok(), x.to_json()));
        }
        Command::Verify { suite, base } => {
            let corpus = match base {
                Some(p) => Corpus::over_base(load_cat(p)?),
                None => Corpus::standard(),
            };
            records.extend(verify::run(&suite.0, &corpus, &opts).records);
        }
    }
    Ok(Report::new(records))
}

fn gray_input(e: GrayError) -> CliError {
    CliError::Input(e.to_string())
}

fn variance_of(v: VarianceArg) -> Variance {
    match v {
        VarianceArg::Covariant => Variance::Covariant,
        VarianceArg::Contravariant => Variance::Contravariant,
    }
}

fn factor_of(s: SideArg) -> Factor {
    match s {
        SideArg::A => Factor::A,
        SideArg::B => Factor::B,
    }
}
