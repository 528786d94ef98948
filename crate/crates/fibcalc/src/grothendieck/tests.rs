use super::*;
use crate::fibclass::{classify, interpolating_edges, q_fibration, q_prime_fibration, Mode};
use crate::testgen::{arb_fib, thin_over};
use crate::twistfree::{arrow_cat, tw, TwVariant};
use proptest::prelude::*;

fn big() -> Caps {
    Caps { objects: 40, morphisms: 400 }
}

fn chain(n: usize) -> Arc<FinCat> {
    Arc::new(FinCat::chain(n))
}

fn round_trip(p: &TwoVarFib, variance: Variance, side: Factor) -> TwoVarFib {
    let pf = straighten(p, variance, side).unwrap();
    let q = unstraighten(&pf).unwrap().fib;
    match side {
        Factor::A => q,
        Factor::B => q.swap(),
    }
}

fn equivalent(p: &TwoVarFib, q: &TwoVarFib, spec: &EdgeSpec) -> bool {
    fib_equivalent_with_caps(p, q, spec, big()).unwrap().is_some()
}

#[test]
fn straightening_q_over_its_first_factor() {
    let q = q_fibration();
    let pf = straighten(&q, Variance::Contravariant, Factor::A).unwrap();
    assert_eq!(pf.fibres.len(), 2);
    let total: usize = pf.fibres.iter().map(|f| f.n_obj()).sum();
    assert_eq!(total, 5);
    // "0->1" runs 1 -> 0 in [1]^op; its transport goes from the fibre over
    // 0 to the fibre over 1
    let alpha = pf.base.mor_id("0->1").unwrap();
    assert_eq!(pf.transport_ends(alpha), (0, 1));
    assert!(straighten(&q, Variance::Covariant, Factor::A).is_err() || classify(&q).unwrap().cocart_over_a);
}

#[test]
fn round_trips_on_the_shapes() {
    let ar = arrow_cat(&chain(1)).st;
    let cases = [
        (q_fibration(), Variance::Contravariant, Factor::A, EdgeSpec::cartesian()),
        (q_fibration(), Variance::Covariant, Factor::B, EdgeSpec(vec![(LiftKind::Cocartesian, Region::Right)])),
        (q_prime_fibration(), Variance::Covariant, Factor::A, EdgeSpec(vec![(LiftKind::Cocartesian, Region::Left)])),
        (ar.clone(), Variance::Contravariant, Factor::A, EdgeSpec::cartesian()),
        (ar.clone(), Variance::Covariant, Factor::B, EdgeSpec::cocartesian()),
    ];
    for (p, v, side, spec) in cases {
        let q = round_trip(&p, v, side);
        assert!(equivalent(&p, &q, &spec), "{v:?} {side:?}");
    }
}

#[test]
fn dualising_q_gives_q_prime() {
    let d = dualize(&q_fibration(), Factor::A, Direction::Cc).unwrap();
    assert!(classify(&d).unwrap().gray);
    assert!(equivalent(&d, &q_prime_fibration(), &EdgeSpec::none()));
    let back = dualize(&q_prime_fibration(), Factor::A, Direction::Ct).unwrap();
    assert!(classify(&back).unwrap().curved_ortho);
    assert!(equivalent(&back, &q_fibration(), &EdgeSpec::none()));
}

#[test]
fn dualising_the_arrow_category_gives_twisted_arrows() {
    let c = chain(1);
    let d = dualize(&arrow_cat(&c).st, Factor::B, Direction::Ct).unwrap();
    let twr = tw(&c, TwVariant::Right).st;
    assert!(equivalent(&d, &twr, &EdgeSpec::none()));
    let d = dualize(&arrow_cat(&c).st, Factor::A, Direction::Cc).unwrap();
    let twl = tw(&c, TwVariant::Left).st;
    assert!(equivalent(&d, &twl, &EdgeSpec::none()));
}

#[test]
fn dualisation_is_an_involution_preserving_fibres() {
    let cases = [(q_prime_fibration(), Direction::Ct, Direction::Cc), (arrow_cat(&chain(1)).st, Direction::Cc, Direction::Ct)];
    for (p, there, back) in cases {
        let d = dualize(&p, Factor::A, there).unwrap();
        let dd = dualize(&d, Factor::A, back).unwrap();
        assert!(equivalent(&dd, &p, &EdgeSpec::none()));
        for a in p.base_a.objects() {
            for b in p.base_b.objects() {
                let (f, _) = p.fibre(a, b);
                let (g, _) = d.fibre(a, b);
                assert!(f.iso_by_names(&g));
            }
        }
    }
}

#[test]
fn interpolating_edges_survive_dualisation() {
    let q = q_fibration();
    let d = dualize(&q, Factor::A, Direction::Cc).unwrap();
    let names = |p: &TwoVarFib, mode| -> Vec<String> {
        let mut v: Vec<String> =
            interpolating_edges(p, mode).unwrap().iter().map(|e| p.total.mor_name(e.interpolating_edge).to_string()).collect();
        v.sort();
        v
    };
    assert_eq!(names(&q, Mode::CurvedOrtho), names(&d, Mode::Gray));
}

#[test]
fn dualising_over_a_point_factor() {
    // one-variable cocartesian fibration [1] × [1] -> [1]
    let c = chain(1);
    let prod = Arc::new(FinCat::product(&c, &c));
    let (p, _) = FinFunctor::projections(&c, &c, &prod);
    // A = point: nothing to dualise
    let over_b = TwoVarFib::one_var(&p).swap();
    let d = dualize(&over_b, Factor::A, Direction::Ct).unwrap();
    assert!(equivalent(&d, &over_b, &EdgeSpec::none()));
    // B = point: the one-variable dual, a cartesian fibration over [1]^op
    let d = dualize(&TwoVarFib::one_var(&p), Factor::A, Direction::Ct).unwrap();
    let t = classify(&d).unwrap();
    assert!(t.cartesian_fib);
    assert_eq!(d.base_a.mor_name(1), c.mor_name(1));
}

#[test]
fn dualisation_preconditions() {
    let (q, qp) = (q_fibration(), q_prime_fibration());
    for (p, side, dir) in [(&q, Factor::A, Direction::Ct), (&qp, Factor::A, Direction::Cc), (&qp, Factor::B, Direction::Ct)] {
        let t = classify(p).unwrap();
        let needed = match (side, dir) {
            (Factor::A, Direction::Ct) => t.gray,
            _ => t.curved_ortho,
        };
        assert_eq!(dualize(p, side, dir).is_ok(), needed, "{side:?} {dir:?}");
    }
}

#[test]
fn equivalence_search_basics() {
    let q = q_fibration();
    let e = fib_equivalent_with_caps(&q, &q, &EdgeSpec::cocartesian(), big()).unwrap().unwrap();
    assert!(e.forward.obj.iter().enumerate().all(|(i, &j)| i == j));
    assert!(e.unit.is_iso() && e.counit.is_iso());
    // the identity of the base has a single object per fibre, Q has two over (1,1)
    let base = FinFunctor::identity(&q.base);
    let id = TwoVarFib::new(base, q.base_a.clone(), q.base_b.clone()).unwrap();
    assert!(fib_equivalent_with_caps(&q, &id, &EdgeSpec::none(), big()).unwrap().is_none());
    assert!(matches!(
        fib_equivalent_with_caps(&q, &q, &EdgeSpec::none(), Caps { objects: 3, morphisms: 40 }),
        Err(FibError::SearchCapExceeded { .. })
    ));
    assert!(matches!(fib_equivalent(&q, &q_prime_fibration(), &EdgeSpec::none()), Err(FibError::BaseMismatch)));
}

#[test]
fn isomorphic_duplicates_are_equivalent_to_one_object() {
    // two isomorphic objects over the point vs one
    let pt = Arc::new(FinCat::point());
    let names: Vec<String> = vec!["a".into(), "b".into()];
    let two = Arc::new(FinCat::poset_from_leq(&names, |_, _| true));
    let p = TwoVarFib::one_var(&FinFunctor::to_point(&two, &pt));
    let q = TwoVarFib::one_var(&FinFunctor::identity(&pt));
    assert!(equivalent(&p, &q, &EdgeSpec::cocartesian()));
    assert!(equivalent(&q, &p, &EdgeSpec::cocartesian()));
}

#[test]
fn caps_parse() {
    assert_eq!(Caps::parse("7, 50").unwrap(), Caps { objects: 7, morphisms: 50 });
    assert!(Caps::parse("0,3").is_err());
    assert!(Caps::parse("x").is_err());
}

#[test]
fn opposite_reindexing_is_an_involution() {
    let pf = straighten(&q_prime_fibration(), Variance::Covariant, Factor::A).unwrap();
    let back = pf.reindex_opposite().reindex_opposite();
    assert_eq!(back.variance, pf.variance);
    assert_eq!(*back.base, *pf.base);
    assert_eq!(back.comp.keys().collect::<Vec<_>>(), pf.comp.keys().collect::<Vec<_>>());
    pf.reindex_opposite().check().unwrap();
    pf.fibrewise_opposite().check().unwrap();
}

#[test]
fn pseudofunctor_json_lists_coherence() {
    let pf = straighten(&q_prime_fibration(), Variance::Covariant, Factor::A).unwrap();
    let j = pf.to_json();
    assert_eq!(j["variance"], "covariant");
    assert_eq!(j["transport"].as_object().unwrap().len(), 3);
    assert_eq!(j["comp_isos"].as_array().unwrap().len(), pf.comp.len());
}

#[test]
fn transport_preservation_detects_lax_gray_fibrations() {
    // 00 -> 01 is sent to 10 -> 11, which factors through 11'
    assert!(!transports_preserve_cocartesian(&q_prime_fibration()).unwrap());
    // the square [1] × [1] over itself
    let p = thin_over(FinCat::chain(1), FinCat::chain(1), &[(0, 0), (0, 1), (1, 0), (1, 1)], &[(0, 1), (0, 2), (1, 3), (2, 3)]);
    assert!(transports_preserve_cocartesian(&p).unwrap());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(120))]

    #[test]
    fn round_trip_on_random_fibrations(p in arb_fib()) {
        let t = classify(&p).unwrap();
        if t.cocart_over_a {
            let q = round_trip(&p, Variance::Covariant, Factor::A);
            prop_assert!(equivalent(&p, &q, &EdgeSpec(vec![(LiftKind::Cocartesian, Region::Left)])));
        }
        if t.cart_over_a {
            let q = round_trip(&p, Variance::Contravariant, Factor::A);
            prop_assert!(equivalent(&p, &q, &EdgeSpec(vec![(LiftKind::Cartesian, Region::Left)])));
        }
    }

    #[test]
    fn dualisation_round_trip_on_random_fibrations(p in arb_fib()) {
        let t = classify(&p).unwrap();
        if t.gray {
            let d = dualize(&p, Factor::A, Direction::Ct).unwrap();
            prop_assert!(classify(&d).unwrap().curved_ortho);
            let dd = dualize(&d, Factor::A, Direction::Cc).unwrap();
            prop_assert!(equivalent(&dd, &p, &EdgeSpec::none()));
        }
        if t.curved_ortho {
            let d = dualize(&p, Factor::A, Direction::Cc).unwrap();
            prop_assert!(classify(&d).unwrap().gray);
            let d = dualize(&p, Factor::B, Direction::Ct).unwrap();
            let back = dualize(&d, Factor::B, Direction::Cc).unwrap();
            prop_assert!(equivalent(&back, &p, &EdgeSpec::none()));
        }
    }
}

#[test]
fn dualisation_square_on_small_cocartesian_fibrations() {
    let square = thin_over(FinCat::chain(1), FinCat::chain(1), &[(0, 0), (0, 1), (1, 0), (1, 1)], &[(0, 1), (0, 2), (1, 3), (2, 3)]);
    // a fibre [1] everywhere
    let coords: Vec<(usize, usize)> = (0..8).map(|i| ((i / 2) / 2, (i / 2) % 2)).collect();
    let edges: Vec<(usize, usize)> = (0..8)
        .flat_map(|i| (0..8).map(move |j| (i, j)))
        .filter(|&(i, j)| i != j && coords[i].0 <= coords[j].0 && coords[i].1 <= coords[j].1 && i % 2 <= j % 2)
        .collect();
    let thick = thin_over(FinCat::chain(1), FinCat::chain(1), &coords, &edges);
    for p in [square, thick] {
        let r = square_comparison(&p, big()).unwrap();
        assert!(r.middle_is_ortho && r.two_step_is_cartesian, "{r:?}");
        assert_eq!(r.agrees, Some(true));
    }
    assert!(square_comparison(&q_prime_fibration(), big()).is_err());
}
