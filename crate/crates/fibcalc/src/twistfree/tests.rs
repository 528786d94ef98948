use super::*;
use crate::fibclass::classify;
use crate::fincat::localization_certificate;
use crate::fincat::search::{search_functors, FunctorSearch};
use crate::grothendieck::EdgeSpec;
use crate::testgen::poset;
use proptest::prelude::*;

fn chain(n: usize) -> Arc<FinCat> {
    Arc::new(FinCat::chain(n))
}

fn point() -> Arc<FinCat> {
    Arc::new(FinCat::point())
}

fn big() -> Caps {
    Caps { objects: 40, morphisms: 400 }
}

fn is_left_fibration(p: &FinFunctor) -> bool {
    let rel = Rel::new(p);
    rel.is_fibration(LiftKind::Cocartesian) && rel.cocartesian.iter().all(|&c| c)
}

fn is_right_fibration(p: &FinFunctor) -> bool {
    let rel = Rel::new(p);
    rel.is_fibration(LiftKind::Cartesian) && rel.cartesian.iter().all(|&c| c)
}

/// Isomorphism of categories by exhaustive search.
fn isomorphic(x: &Arc<FinCat>, y: &Arc<FinCat>) -> bool {
    if x.n_obj() != y.n_obj() || x.n_mor() != y.n_mor() {
        return false;
    }
    let spec = FunctorSearch { fully_faithful: true, ..FunctorSearch::unconstrained(x, y) };
    let mut found = false;
    search_functors(x, y, &spec, &mut |f| {
        let mut seen = f.obj.clone();
        seen.sort();
        seen.dedup();
        found = seen.len() == y.n_obj();
        !found
    });
    found
}

/// Twisted squares in a poset: nested intervals `a <= a' <= b' <= b`.
fn nested_intervals(c: &FinCat) -> usize {
    let le = |a, b| !c.hom(a, b).is_empty();
    let n = c.n_obj();
    let mut count = 0;
    for a in 0..n {
        for b in 0..n {
            for a1 in 0..n {
                for b1 in 0..n {
                    if le(a, a1) && le(a1, b1) && le(b1, b) {
                        count += 1;
                    }
                }
            }
        }
    }
    count
}

fn arb_poset() -> impl Strategy<Value = Arc<FinCat>> {
    (1usize..=4).prop_flat_map(|n| proptest::collection::vec(any::<bool>(), n * n)).prop_map(|bits| {
        let n = (bits.len() as f64).sqrt() as usize;
        poset(n, |i, j| i < j && bits[i * n + j], (0..n).map(|i| i.to_string()).collect())
    })
}

#[test]
fn twisted_arrows_of_a_point() {
    for v in [TwVariant::Left, TwVariant::Right] {
        let t = tw(&point(), v);
        assert_eq!((t.cat().n_obj(), t.cat().n_mor()), (1, 1));
    }
}

#[test]
fn twisted_arrows_of_the_interval_form_a_span() {
    let c = chain(1);
    let t = tw(&c, TwVariant::Right);
    let k = t.cat();
    assert_eq!((k.n_obj(), k.n_mor()), (3, 5));
    let f = c.mor_id("0->1").unwrap();
    let apex = t.keyed.obj(&f);
    for x in [0, 1] {
        let leg = t.keyed.obj(&c.id(x));
        assert_eq!(k.hom(apex, leg).len(), 1);
        assert!(k.hom(leg, apex).is_empty());
    }
    let l = tw(&c, TwVariant::Left);
    assert_eq!(l.cat().hom(l.keyed.obj(&c.id(0)), l.keyed.obj(&f)).len(), 1);
}

#[test]
fn twisted_arrows_of_a_non_thin_category() {
    // two parallel arrows a, b: 0 -> 1
    let raw: crate::fincat::io::CategoryJson = serde_json::from_value(serde_json::json!({
        "objects": ["0", "1"],
        "morphisms": [
            {"id": "id_0", "src": "0", "tgt": "0"},
            {"id": "id_1", "src": "1", "tgt": "1"},
            {"id": "a", "src": "0", "tgt": "1"},
            {"id": "b", "src": "0", "tgt": "1"}
        ]
    }))
    .unwrap();
    let c = Arc::new(crate::fincat::io::validate(&raw).unwrap());
    let t = tw(&c, TwVariant::Left);
    // objects id_0, id_1, a, b; morphisms: identities and a, b each into both legs
    assert_eq!((t.cat().n_obj(), t.cat().n_mor()), (4, 8));
    assert!(is_left_fibration(&t.st.proj));
}

#[test]
fn left_variant_is_opposite_of_right() {
    let c = chain(2);
    let (l, r) = (tw(&c, TwVariant::Left), tw(&c, TwVariant::Right));
    assert_eq!(**l.cat(), r.cat().opposite());
    assert_eq!(l.keyed.mor_keys, r.keyed.mor_keys);
}

#[test]
fn free_cocartesian_fibration_on_an_identity_is_the_arrow_category() {
    let b = chain(2);
    let free = free_fib(&FinFunctor::identity(&b), LiftKind::Cocartesian).unwrap();
    let ar = arrow_cat(&b);
    let p = TwoVarFib::one_var(&free.proj);
    let q = TwoVarFib::one_var(&ar.st.p2);
    assert!(fib_equivalent_with_caps(&p, &q, &EdgeSpec::cocartesian(), big()).unwrap().is_some());
    assert!(classify(&p).unwrap().cocartesian_fib);
}

#[test]
fn free_fibration_over_a_point_is_the_map_itself() {
    let e = chain(1);
    let phi = FinFunctor::to_point(&e, &point());
    for kind in [LiftKind::Cocartesian, LiftKind::Cartesian] {
        let free = free_fib(&phi, kind).unwrap();
        assert!(isomorphic(&free.pullback.keyed.cat, &e));
        assert_eq!(free.proj.after(&free.unit), phi);
    }
}

#[test]
fn free_cocartesian_fibration_on_an_object() {
    let b = chain(1);
    let zero = FinFunctor::new(point(), b.clone(), vec![0], vec![b.id(0)]).unwrap();
    let free = free_fib(&zero, LiftKind::Cocartesian).unwrap();
    assert_eq!(free.pullback.keyed.cat.n_obj(), 2);
    assert!(Rel::new(&free.proj).is_fibration(LiftKind::Cocartesian));
    let cart = free_fib(&zero, LiftKind::Cartesian).unwrap();
    assert_eq!(cart.pullback.keyed.cat.n_obj(), 1);
    assert!(free_fib(&zero, LiftKind::LocallyCartesian).is_err());
}

/// Functors `free -> target` over the base extending `f` along the unit
/// and preserving the relevant edges.
fn extensions(free: &FreeFib, f: &FinFunctor, q: &FinFunctor) -> Vec<FinFunctor> {
    let total = &free.pullback.keyed.cat;
    let kind = free.kind;
    let (rp, rq) = (Rel::new(&free.proj), Rel::new(q));
    let over = |m: Mor, c: Mor| q.mor[c] == free.proj.mor[m];
    let mut spec = FunctorSearch::unconstrained(total, &q.src);
    spec.mor_ok = Some(&over);
    let mut out = Vec::new();
    search_functors(total, &q.src, &spec, &mut |g| {
        let preserves = total.morphisms().all(|m| !rp.flags(kind)[m] || rq.flags(kind)[g.mor[m]]);
        if preserves && g.after(&free.unit) == *f {
            out.push(g.clone());
        }
        true
    });
    out
}

#[test]
fn extension_to_the_free_fibration_is_unique() {
    let b = chain(1);
    let sq = Arc::new(FinCat::product(&b, &b));
    let (_, q) = FinFunctor::projections(&b, &b, &sq);
    // cocartesian: the object 0 of the base, sent to (1,0); cartesian: the
    // object 1, sent to (0,1)
    for (kind, base_obj, at) in [(LiftKind::Cocartesian, 0, "(1,0)"), (LiftKind::Cartesian, 1, "(0,1)")] {
        let phi = FinFunctor::new(point(), b.clone(), vec![base_obj], vec![b.id(base_obj)]).unwrap();
        let free = free_fib(&phi, kind).unwrap();
        let x = sq.obj_id(at).unwrap();
        let f = FinFunctor::new(point(), sq.clone(), vec![x], vec![sq.id(x)]).unwrap();
        let ext = extend_to_free(&free, &f, &q).unwrap();
        assert_eq!(q.after(&ext), free.proj);
        assert_eq!(extensions(&free, &f, &q), vec![ext]);
    }
}

#[test]
fn extension_needs_a_fibration() {
    let q = crate::fibclass::q_prime_fibration();
    let b = q.base.clone();
    let phi = FinFunctor::new(point(), b.clone(), vec![0], vec![b.id(0)]).unwrap();
    let free = free_fib(&phi, LiftKind::Cocartesian).unwrap();
    let f = FinFunctor::new(point(), q.total.clone(), vec![0], vec![q.total.id(0)]).unwrap();
    assert!(extend_to_free(&free, &f, &q.proj).is_err());
}

#[test]
fn dual_of_free_cartesian_is_pulled_back_twisted_arrows() {
    let b = chain(1);
    let cases = [
        FinFunctor::identity(&b),
        FinFunctor::new(point(), b.clone(), vec![1], vec![b.id(1)]).unwrap(),
        FinFunctor::to_point(&b, &point()),
    ];
    for phi in cases {
        let r = dual_of_free_check(&phi, big()).unwrap();
        assert!(r.equivalence.is_some());
    }
}

#[test]
fn correspondence_of_a_cylinder_is_the_twisted_arrow_category() {
    let c = chain(1);
    let i = chain(1);
    let cyl = Arc::new(FinCat::product(&i, &c));
    let (to_i, _) = FinFunctor::projections(&i, &c, &cyl);
    let q = TwoVarFib::one_var(&to_i);
    let k = corr(&q).unwrap();
    assert!(k.left_fibration);
    assert!(isomorphic(&k.total, tw(&c, TwVariant::Left).cat()));
}

#[test]
fn correspondence_of_the_interval_is_a_point() {
    let i = chain(1);
    let q = TwoVarFib::one_var(&FinFunctor::identity(&i));
    let k = corr(&q).unwrap();
    assert_eq!((k.total.n_obj(), k.target.n_obj()), (1, 1));
    assert!(k.left_fibration);
    let not_interval = TwoVarFib::one_var(&FinFunctor::identity(&chain(2)));
    assert!(corr(&not_interval).is_err());
}

#[test]
fn relative_twisted_arrows_over_a_point() {
    let e = chain(2);
    let ft = FibredTw::new(&FinFunctor::to_point(&e, &point())).unwrap();
    assert!(isomorphic(&ft.tw.fib.total, tw(&e, TwVariant::Left).cat()));
    assert!(is_left_fibration(&ft.to_pair));
}

#[test]
fn relative_twisted_arrows_of_an_identity() {
    let b = chain(2);
    let ft = FibredTw::new(&FinFunctor::identity(&b)).unwrap();
    assert!(isomorphic(&ft.tw.fib.total, &b));
    assert!(is_left_fibration(&ft.to_pair));
}

#[test]
fn relative_twisted_arrows_of_a_projection() {
    let (a, b) = (chain(1), chain(1));
    let prod = Arc::new(FinCat::product(&a, &b));
    let (_, p) = FinFunctor::projections(&a, &b, &prod);
    let ft = FibredTw::new(&p).unwrap();
    // fibrewise Tw([1]) over each of the two objects of the base
    assert_eq!(ft.tw.fib.total.n_obj(), 6);
    assert!(is_left_fibration(&ft.to_pair));
    assert!(Rel::new(&ft.pair_proj()).is_fibration(LiftKind::Cocartesian));
}

#[test]
fn target_projection_is_a_localisation() {
    for c in [chain(1), chain(2)] {
        let t = tw(&c, TwVariant::Right);
        let w: Vec<Mor> = t.cat().morphisms().filter(|&m| c.is_identity(t.keyed.mor_keys[m].3)).collect();
        let cert = localization_certificate(&t.st.p2, &w);
        assert!(cert.inverts_w && cert.reflective);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(60))]

    #[test]
    fn twisted_arrow_projections_are_one_sided_fibrations(c in arb_poset()) {
        let (l, r) = (tw(&c, TwVariant::Left), tw(&c, TwVariant::Right));
        prop_assert_eq!(l.cat().n_mor(), nested_intervals(&c));
        prop_assert!(is_left_fibration(&l.st.proj));
        prop_assert!(is_right_fibration(&r.st.proj));
        l.cat().check_laws().unwrap();
    }

    #[test]
    fn arrow_category_is_cartesian_in_the_source_and_cocartesian_in_the_target(c in arb_poset()) {
        let ar = arrow_cat(&c);
        let t = classify(&ar.st).unwrap();
        prop_assert!(t.cart_over_a && t.cocart_over_b && t.curved_ortho);
        prop_assert!(Rel::new(&ar.st.p2).is_fibration(LiftKind::Cocartesian));
        prop_assert!(Rel::new(&ar.st.p1).is_fibration(LiftKind::Cartesian));
    }

    #[test]
    fn free_cocartesian_unit_extends_uniquely(c in arb_poset(), x in 0usize..4) {
        let x = x % c.n_obj();
        let phi = FinFunctor::new(point(), c.clone(), vec![x], vec![c.id(x)]).unwrap();
        let free = free_fib(&phi, LiftKind::Cocartesian).unwrap();
        // the free fibration is the coslice under x
        prop_assert_eq!(free.pullback.keyed.cat.n_obj(), c.objects().filter(|&y| !c.hom(x, y).is_empty()).count());
        let q = free.proj.clone();
        let ext = extend_to_free(&free, &free.unit, &q).unwrap();
        prop_assert_eq!(ext, FinFunctor::identity(&free.pullback.keyed.cat));
    }
}

mod corr_pullbacks {
    use super::super::corr_pullback_checks;
    use crate::fincat::{FinCat, FinFunctor};
    use crate::grothendieck::Caps;
    use crate::mates::{adj_with_caps, heyting_meet, two_var_adjoint, MapOver};
    use std::sync::Arc;

    fn caps() -> Caps {
        Caps { objects: 40, morphisms: 800 }
    }

    /// `[1] × [1]` over its second factor
    fn strip() -> (Arc<FinCat>, FinFunctor) {
        let names: Vec<String> = ["00", "10", "01", "11"].iter().map(|s| s.to_string()).collect();
        let c = Arc::new(FinCat::poset_from_leq(&names, |i, j| i % 2 <= j % 2 && i / 2 <= j / 2));
        let b = Arc::new(FinCat::chain(1));
        let p = FinFunctor::monotone(&c, &b, vec![0, 0, 1, 1]).unwrap();
        (c, p)
    }

    #[test]
    fn identity_family() {
        let (_, p) = strip();
        let pa = adj_with_caps(&MapOver::identity(&p), caps()).unwrap();
        let r = corr_pullback_checks(&pa, caps()).unwrap();
        assert_eq!(r.equivalent, Some(true));
        assert!(r.preserves_cocartesian && r.fibrewise_cartesian_checked > 0);
        assert!(r.holds(), "{r:?}");
    }

    #[test]
    fn identity_then_constant() {
        let (c, p) = strip();
        let g = FinFunctor::monotone(&c, &c, vec![0, 1, 3, 3]).unwrap();
        let pa = adj_with_caps(&MapOver::new(g, p.clone(), p).unwrap(), caps()).unwrap();
        let r = corr_pullback_checks(&pa, caps()).unwrap();
        assert_eq!(r.equivalent, Some(true));
        assert!(r.tw_cartesian_checked > 0);
        assert!(r.holds(), "{r:?}");
    }

    #[test]
    fn heyting_chain() {
        let (f, p) = heyting_meet(2);
        let two = two_var_adjoint(&f, &p, &p, caps()).unwrap();
        assert_eq!(two.triples, 27);
        let r = corr_pullback_checks(&two.param, Caps { objects: 80, morphisms: 4000 }).unwrap();
        assert_eq!(r.equivalent, Some(true));
        assert!(r.holds(), "{r:?}");
    }
}
