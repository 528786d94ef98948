use super::corpus::{Corpus, Named};
use super::{Options, Record, Status, Suite, Tally};
use crate::fibclass::{classify, cross_check, FibError, FibTaxonomy, LiftKind, TwoVarFib};
use crate::fincat::{localization_certificate, FinCat, Mor};
use crate::graytensor::{collapse_to_delta2, gray_scaling, gray_simplices, is_degenerate, loc_cocart_gray_classifier, ScaledComplex};
use crate::grothendieck::{
    dualize, fib_equivalent_with_caps, square_comparison, straighten, unstraighten, Caps, Direction, EdgeSpec, Factor, Region,
    Variance,
};
use crate::mates::{
    adj_with_caps, conjugation_checks, heyting_meet, involution, param_counit, param_unit, pass_to_adjoint, two_var_adjoint,
    verify_mate, MapOver, ParamAdjunction,
};
use crate::twistfree::{arrow_cat, corr_pullback_checks, tw, TwVariant};
use rayon::prelude::*;
use serde_json::json;
use std::sync::Arc;

/// One check on one case: `None` when it holds.
struct Outcome {
    check: String,
    anchor: &'static str,
    failure: Option<String>,
}

fn outcome(check: &str, anchor: &'static str, case: &str, ok: bool, detail: impl FnOnce() -> String) -> Outcome {
    let failure = (!ok).then(|| {
        let d = detail();
        if d.is_empty() { case.to_string() } else { format!("{case}: {d}") }
    });
    Outcome { check: check.to_string(), anchor, failure }
}

fn error(check: &str, anchor: &'static str, case: &str, e: impl std::fmt::Display) -> Outcome {
    Outcome { check: check.to_string(), anchor, failure: Some(format!("{case}: {e}")) }
}

/// Groups outcomes by check in order of first appearance.
fn tally(per_case: Vec<Vec<Outcome>>) -> Vec<Tally> {
    let mut out: Vec<Tally> = Vec::new();
    for o in per_case.into_iter().flatten() {
        let i = match out.iter().position(|t| t.check == o.check) {
            Some(i) => i,
            None => {
                out.push(Tally { check: o.check.clone(), anchor: o.anchor, checked: 0, failures: Vec::new() });
                out.len() - 1
            }
        };
        out[i].checked += 1;
        out[i].failures.extend(o.failure);
    }
    out
}

fn over_cases<T: Sync>(suite: Suite, cases: &[Named<T>], f: impl Fn(&str, &T) -> Vec<Outcome> + Sync) -> Vec<Record> {
    let per_case = cases.par_iter().map(|c| f(&c.name, &c.value)).collect();
    tally(per_case).iter().map(|t| t.record(suite)).collect()
}

pub(super) fn run(suite: Suite, corpus: &Corpus, opts: &Options) -> Vec<Record> {
    let caps = opts.caps;
    match suite {
        Suite::Taxonomy => over_cases(suite, &corpus.fibrations, taxonomy),
        Suite::Straighten => over_cases(suite, &corpus.fibrations, |n, p| straighten_round_trips(n, p, caps)),
        Suite::Dualize => over_cases(suite, &corpus.fibrations, |n, p| dualize_involution(n, p, caps)),
        Suite::ArTw => over_cases(suite, &corpus.categories, |n, c| ar_tw(n, c, caps)),
        Suite::CrossCheck => over_cases(suite, &corpus.fibrations, crosscheck),
        Suite::Mates => over_cases(suite, &corpus.families, |n, f| mates(n, f, caps)),
        Suite::Mapping => {
            let mut out = heyting(caps);
            out.extend(over_cases(suite, &corpus.families, |n, f| mapping(n, f, caps)));
            out
        }
        Suite::Unit => over_cases(suite, &corpus.families, |n, f| unit(n, f, caps)),
        Suite::Gray => gray(),
        Suite::Localize => localize(corpus, opts.strict),
        Suite::Square => square(corpus, caps, opts.strict),
    }
}

const LATTICE: &str = "implications between fibration classes";

fn taxonomy(name: &str, p: &TwoVarFib) -> Vec<Outcome> {
    let t = match classify(p) {
        Ok(t) => t,
        Err(e) => return vec![error("classify", LATTICE, name, e)],
    };
    let imp = |a: bool, b: bool| !a || b;
    vec![
        outcome("bifibration => orthofibration", LATTICE, name, imp(t.bifib, t.ortho), String::new),
        outcome("orthofibration => curved orthofibration", LATTICE, name, imp(t.ortho, t.curved_ortho), String::new),
        outcome("cocartesian => Gray", LATTICE, name, imp(t.cocartesian_fib, t.gray), String::new),
        outcome("Gray => locally cocartesian", LATTICE, name, imp(t.gray, t.locally_cocartesian_fib), String::new),
        outcome(
            "left fibration <=> cocartesian and conservative",
            LATTICE,
            name,
            t.left_fib == (t.cocartesian_fib && t.conservative),
            String::new,
        ),
    ]
}

fn equivalence(p: &TwoVarFib, q: &TwoVarFib, spec: &EdgeSpec, caps: Caps) -> Result<bool, FibError> {
    fib_equivalent_with_caps(p, q, spec, caps).map(|e| e.is_some())
}

const ROUND_TRIP: &str = "unstraightening after straightening is equivalent to the identity";

fn straighten_round_trips(name: &str, p: &TwoVarFib, caps: Caps) -> Vec<Outcome> {
    let t = match classify(p) {
        Ok(t) => t,
        Err(e) => return vec![error("classify", ROUND_TRIP, name, e)],
    };
    let cases: [(&'static str, bool, Variance, Factor, LiftKind, Region); 4] = [
        ("covariant over A", t.cocart_over_a, Variance::Covariant, Factor::A, LiftKind::Cocartesian, Region::Left),
        ("contravariant over A", t.cart_over_a, Variance::Contravariant, Factor::A, LiftKind::Cartesian, Region::Left),
        ("covariant over B", t.cocart_over_b, Variance::Covariant, Factor::B, LiftKind::Cocartesian, Region::Right),
        ("contravariant over B", t.cart_over_b, Variance::Contravariant, Factor::B, LiftKind::Cartesian, Region::Right),
    ];
    let mut out = Vec::new();
    for (check, applies, v, side, kind, region) in cases {
        if !applies {
            continue;
        }
        let back = straighten(p, v, side).and_then(|pf| unstraighten(&pf)).map(|u| match side {
            Factor::A => u.fib,
            Factor::B => u.fib.swap(),
        });
        out.push(match back.and_then(|q| equivalence(p, &q, &EdgeSpec(vec![(kind, region)]), caps)) {
            Ok(ok) => outcome(check, ROUND_TRIP, name, ok, || "no equivalence".into()),
            Err(e) => error(check, ROUND_TRIP, name, e),
        });
    }
    out
}

const INVOLUTION: &str = "dualisation is an involution restricting to the identity on fibres";

fn same_fibres(p: &TwoVarFib, d: &TwoVarFib) -> Option<String> {
    for a in p.base_a.objects() {
        for b in p.base_b.objects() {
            if !p.fibre(a, b).0.iso_by_names(&d.fibre(a, b).0) {
                return Some(format!("fibre over ({}, {})", p.base_a.obj_name(a), p.base_b.obj_name(b)));
            }
        }
    }
    None
}

fn dualize_involution(name: &str, p: &TwoVarFib, caps: Caps) -> Vec<Outcome> {
    let t = match classify(p) {
        Ok(t) => t,
        Err(e) => return vec![error("classify", INVOLUTION, name, e)],
    };
    let cases: [(&'static str, &'static str, bool, Factor, Direction, Direction); 3] = [
        ("ct then cc over A", "fibres under ct over A", t.gray, Factor::A, Direction::Ct, Direction::Cc),
        ("cc then ct over A", "fibres under cc over A", t.curved_ortho, Factor::A, Direction::Cc, Direction::Ct),
        ("ct then cc over B", "fibres under ct over B", t.curved_ortho, Factor::B, Direction::Ct, Direction::Cc),
    ];
    let mut out = Vec::new();
    for (check, fibres, applies, side, there, back) in cases {
        if !applies {
            continue;
        }
        let d = match dualize(p, side, there) {
            Ok(d) => d,
            Err(e) => {
                out.push(error(check, INVOLUTION, name, e));
                continue;
            }
        };
        let missing = same_fibres(p, &d);
        out.push(outcome(fibres, INVOLUTION, name, missing.is_none(), || missing.unwrap_or_default()));
        out.push(match dualize(&d, side, back).and_then(|dd| equivalence(&dd, p, &EdgeSpec::none(), caps)) {
            Ok(ok) => outcome(check, INVOLUTION, name, ok, || "no equivalence".into()),
            Err(e) => error(check, INVOLUTION, name, e),
        });
    }
    out
}

const AR_TW: &str = "dualising the arrow category gives the twisted arrow category";

fn ar_tw(name: &str, c: &Arc<FinCat>, caps: Caps) -> Vec<Outcome> {
    const CHECK: &str = "dualize_ct(s, t) ~ Tw^r";
    if c.n_obj() > 4 {
        return Vec::new();
    }
    let d = dualize(&arrow_cat(c).st, Factor::B, Direction::Ct);
    match d.and_then(|d| equivalence(&d, &tw(c, TwVariant::Right).st, &EdgeSpec::none(), caps)) {
        Ok(ok) => vec![outcome(CHECK, AR_TW, name, ok, || "no equivalence".into())],
        Err(e) => vec![error(CHECK, AR_TW, name, e)],
    }
}

const CRITERIA: &str = "equivalent criteria give equal answers";

fn crosscheck(name: &str, p: &TwoVarFib) -> Vec<Outcome> {
    let mut out = match cross_check(p) {
        Ok(groups) => groups
            .iter()
            .map(|g| {
                outcome(&format!("{} criteria", g.group), CRITERIA, name, g.agrees(), || format!("{:?}", g.criteria))
            })
            .collect(),
        Err(e) => vec![error("cross_check", CRITERIA, name, e)],
    };
    if p.base_a.is_thin() && p.base_b.is_thin() {
        const CHECK: &str = "Gray conditions against the taxonomy";
        let nerves = ScaledComplex::nerve(&p.base_a).and_then(|s| Ok((s.sharp(), ScaledComplex::nerve(&p.base_b)?.sharp())));
        out.push(match nerves.and_then(|(s, t)| loc_cocart_gray_classifier(p, &s, &t)) {
            Ok(r) => outcome(CHECK, CRITERIA, name, r.agrees(), || format!("{r:?}")),
            Err(e) => error(CHECK, CRITERIA, name, e),
        });
    }
    out
}

const MATE: &str = "the left mate is the Beck-Chevalley composite of the right mate";

fn mates(name: &str, fam: &MapOver, caps: Caps) -> Vec<Outcome> {
    let pa = match adj_with_caps(fam, caps) {
        Ok(pa) => pa,
        Err(e) => return vec![error("parametrised adjoint", MATE, name, e)],
    };
    let mut out = vec![match verify_mate(&pa) {
        Ok(r) => outcome("mate identity", MATE, name, r.holds(), || format!("{:?}", r.entries)),
        Err(e) => error("mate identity", MATE, name, e),
    }];
    if let Some(agrees) = pa.stitched_agrees {
        out.push(outcome("stitched adjoint", MATE, name, agrees, String::new));
    }
    out.push(match involution(&pa, caps) {
        Ok(found) => outcome("adj of adj is the identity", MATE, name, found.is_some(), || "no equivalence".into()),
        Err(e) => error("adj of adj is the identity", MATE, name, e),
    });
    out
}

const MAPPING: &str = "mapping spaces of a parametrised adjunction";

fn heyting(caps: Caps) -> Vec<Record> {
    let (f, p) = heyting_meet(2);
    let o = match two_var_adjoint(&f, &p, &p, caps) {
        Ok(two) => {
            let mut failures = two.bijection_failures.clone();
            failures.extend(two.naturality_failures.iter().cloned());
            let ok = two.triples == 27 && failures.is_empty();
            outcome("Heyting chain bijection and naturality", MAPPING, "P", ok, || {
                format!("{} triples; {}", two.triples, failures.join(", "))
            })
        }
        Err(e) => error("Heyting chain bijection and naturality", MAPPING, "P", e),
    };
    tally(vec![vec![o]]).iter().map(|t| t.record(Suite::Mapping)).collect()
}

fn mapping(name: &str, fam: &MapOver, caps: Caps) -> Vec<Outcome> {
    const CHECK: &str = "left fibration equivalence";
    let pa = match adj_with_caps(fam, caps) {
        Ok(pa) => pa,
        Err(e) => return vec![error(CHECK, MAPPING, name, e)],
    };
    match corr_pullback_checks(&pa, caps) {
        Ok(r) => {
            let mut out = vec![outcome(CHECK, MAPPING, name, r.equivalent == Some(true), || match r.equivalent {
                None => "beyond caps".into(),
                _ => "no equivalence".into(),
            })];
            if r.preserves_cocartesian {
                let f = &r.fibrewise_cartesian_failures;
                out.push(outcome("fibrewise cartesian morphisms are cartesian", MAPPING, name, f.is_empty(), || f.join(", ")));
            }
            let f = &r.tw_cartesian_failures;
            out.push(outcome("twisted squares are cartesian", MAPPING, name, f.is_empty(), || f.join(", ")));
            out
        }
        Err(e) => vec![error(CHECK, MAPPING, name, e)],
    }
}

const UNIT: &str = "the parametrised unit restricts to the fibrewise units";

fn unit_checks(name: &str, pa: &ParamAdjunction) -> Vec<Outcome> {
    let mut out = Vec::new();
    match param_unit(pa) {
        Ok(u) => {
            out.push(outcome("unit restricts to units", UNIT, name, u.restricts_to_units, String::new));
            out.push(outcome("unit agrees with the lax square", UNIT, name, u.agrees_with_lax, String::new));
            out.push(match pass_to_adjoint(pa, &u) {
                Ok(p) => outcome("passing to adjoints", UNIT, name, p.fibrewise_bijective, String::new),
                Err(e) => error("passing to adjoints", UNIT, name, e),
            });
        }
        Err(e) => out.push(error("unit restricts to units", UNIT, name, e)),
    }
    out.push(match param_counit(pa) {
        Ok(e) => outcome("counit restricts to counits", UNIT, name, e.restricts_to_counits, String::new),
        Err(e) => error("counit restricts to counits", UNIT, name, e),
    });
    let r = conjugation_checks(pa);
    let fails = || r.through_lambda.iter().chain(&r.through_rho).cloned().collect::<Vec<_>>().join(", ");
    out.push(outcome("conjugation identities", UNIT, name, r.holds(), fails));
    out
}

fn unit(name: &str, fam: &MapOver, caps: Caps) -> Vec<Outcome> {
    match adj_with_caps(fam, caps) {
        Ok(pa) => unit_checks(name, &pa),
        Err(e) => vec![error("parametrised adjoint", UNIT, name, e)],
    }
}

const GRAY: &str = "Gray tensor products of simplices via maximal chains";

fn gray() -> Vec<Record> {
    let mut cases = Vec::new();
    for m in 0..=2 {
        for n in 0..=2 {
            let case = format!("[{m}]x[{n}]");
            cases.push(vec![match gray_simplices(m, n).and_then(|g| g.check()) {
                Ok(()) => outcome("strict 2-category laws", GRAY, &case, true, String::new),
                Err(e) => error("strict 2-category laws", GRAY, &case, e),
            }]);
            cases.push(vec![match collapse_to_delta2(m, n) {
                Ok(c) => outcome("collapse inverts exactly the vertical edges", GRAY, &case, c.certified(), || {
                    let bad: Vec<String> = c.certificates.iter().filter(|c| !c.holds()).map(|c| format!("{:?}", c.failures)).collect();
                    format!("vertical {}; {}", c.inverts_exactly_vertical, bad.join(", "))
                }),
                Err(e) => error("collapse inverts exactly the vertical edges", GRAY, &case, e),
            }]);
        }
    }
    let square = gray_simplices(1, 1).map(|g| {
        let (x, y) = (g.objects.iter().position(|o| o == "00"), g.objects.iter().position(|o| o == "11"));
        let h = x.zip(y).and_then(|(x, y)| g.hom(x, y));
        h.map(|h| (h.n_obj(), h.morphisms().filter(|&m| !h.is_identity(m)).count()))
    });
    cases.push(vec![match square {
        Ok(sizes) => outcome("hom(00, 11) of [1]x[1] is the walking arrow", GRAY, "[1]x[1]", sizes == Some((2, 1)), || {
            format!("{sizes:?}")
        }),
        Err(e) => error("hom(00, 11) of [1]x[1] is the walking arrow", GRAY, "[1]x[1]", e),
    }]);
    const SCALED: &str = "sharp square scales one of two triangles";
    cases.push(vec![match ScaledComplex::nerve(&FinCat::chain(1)) {
        Ok(d1) => {
            let d1 = d1.sharp();
            let sq = gray_scaling(&d1, &d1);
            let nondeg: Vec<_> = sq.simplices[2].iter().filter(|s| !is_degenerate(s)).collect();
            let scaled = nondeg.iter().filter(|s| sq.scaling.contains(**s)).count();
            let ok = sq.check().is_ok() && nondeg.len() == 2 && scaled == 1;
            outcome(SCALED, GRAY, "D1#xD1#", ok, || format!("{scaled} of {}", nondeg.len()))
        }
        Err(e) => error(SCALED, GRAY, "D1#xD1#", e),
    }]);
    tally(cases).iter().map(|t| t.record(Suite::Gray)).collect()
}

const LOCALIZE: &str = "the twisted arrow category localises to the opposite";

fn localize(corpus: &Corpus, strict: bool) -> Vec<Record> {
    corpus
        .categories
        .par_iter()
        .map(|c| {
            let t = tw(&c.value, TwVariant::Right);
            let w: Vec<Mor> = t.cat().morphisms().filter(|&m| c.value.is_identity(t.keyed.mor_keys[m].3)).collect();
            let cert = localization_certificate(&t.st.p2, &w);
            let ok = cert.inverts_w && cert.reflective;
            Record {
                suite: Suite::Localize.name().into(),
                anchor: LOCALIZE.into(),
                case: format!("Tw^r({}) -> op", c.name),
                status: if ok { Status::Pass } else if strict { Status::Fail } else { Status::Informational },
                witness: json!({ "inverts_w": cert.inverts_w, "reflective": cert.reflective }),
                wall_ms: None,
            }
        })
        .collect()
}

const SQUARE: &str = "two-step dualisation against the one-variable dual";

fn square(corpus: &Corpus, caps: Caps, strict: bool) -> Vec<Record> {
    let per: Vec<Option<Record>> = corpus
        .fibrations
        .par_iter()
        .map(|c| {
            let t: FibTaxonomy = classify(&c.value).ok()?;
            if !t.cocartesian_fib {
                return None;
            }
            let (agrees, witness) = match square_comparison(&c.value, caps) {
                Ok(r) => (r.agrees == Some(true), serde_json::to_value(&r).unwrap_or_default()),
                Err(e) => (false, json!({ "error": e.to_string() })),
            };
            Some(Record {
                suite: Suite::Square.name().into(),
                anchor: SQUARE.into(),
                case: c.name.clone(),
                status: if strict && !agrees { Status::Fail } else { Status::Informational },
                witness,
                wall_ms: None,
            })
        })
        .collect();
    per.into_iter().flatten().collect()
}
