use super::io::{validate, CategoryJson, MorphismJson};
use super::search::{search_functors, FunctorSearch};
use super::*;
use proptest::prelude::*;

fn table(objects: &[&str], mors: &[(&str, &str, &str)], compose: &[(&str, &str, &str)]) -> CategoryJson {
    CategoryJson::Table {
        objects: objects.iter().map(|s| s.to_string()).collect(),
        morphisms: mors
            .iter()
            .map(|(i, s, t)| MorphismJson { id: i.to_string(), src: s.to_string(), tgt: t.to_string() })
            .collect(),
        compose: compose
            .iter()
            .map(|(g, f, h)| (g.to_string(), f.to_string(), h.to_string()))
            .collect(),
        identities: None,
    }
}

fn cyclic(n: usize) -> FinCat {
    let names: Vec<String> = (0..n).map(|k| if k == 0 { "id_*".to_string() } else { format!("r{k}") }).collect();
    let mors: Vec<(&str, &str, &str)> = names.iter().map(|s| (s.as_str(), "*", "*")).collect();
    let mut comp = Vec::new();
    for a in 0..n {
        for b in 0..n {
            comp.push((names[a].clone(), names[b].clone(), names[(a + b) % n].clone()));
        }
    }
    let comp: Vec<(&str, &str, &str)> = comp.iter().map(|(a, b, c)| (a.as_str(), b.as_str(), c.as_str())).collect();
    validate(&table(&["*"], &mors, &comp)).unwrap()
}

fn monotone(src: &Arc<FinCat>, tgt: &Arc<FinCat>, obj: Vec<Obj>) -> FinFunctor {
    let mor = src
        .morphisms()
        .map(|f| tgt.hom(obj[src.src(f)], obj[src.tgt(f)])[0])
        .collect();
    FinFunctor::new(src.clone(), tgt.clone(), obj, mor).unwrap()
}

#[test]
fn walking_arrow_is_accepted_with_identity_isos() {
    let c = validate(&table(&["0", "1"], &[("id_0", "0", "0"), ("id_1", "1", "1"), ("f", "0", "1")], &[])).unwrap();
    let isos: Vec<&str> = c.morphisms().filter(|&f| c.is_iso(f)).map(|f| c.mor_name(f)).collect();
    assert_eq!(isos, vec!["id_0", "id_1"]);
}

#[test]
fn missing_composite_is_rejected() {
    let raw = table(
        &["a", "b", "c"],
        &[("id_a", "a", "a"), ("id_b", "b", "b"), ("id_c", "c", "c"), ("f", "a", "b"), ("g", "b", "c")],
        &[],
    );
    assert!(matches!(validate(&raw), Err(CatError::MissingComposite { .. })));
}

#[test]
fn nonassociative_and_dangling_tables_are_rejected() {
    let raw = table(&["a"], &[("id_a", "a", "a"), ("f", "a", "b")], &[]);
    assert!(matches!(validate(&raw), Err(CatError::DanglingEndpoint { .. })));
    // an idempotent e and a morphism f with e.f = f but f.e = e makes a
    // non-associative table: (f.e).e vs f.(e.e)
    let raw = table(
        &["a"],
        &[("id_a", "a", "a"), ("e", "a", "a"), ("f", "a", "a")],
        &[("e", "e", "e"), ("f", "f", "f"), ("e", "f", "e"), ("f", "e", "e")],
    );
    // e.f = e, f.e = e, e.e = e, f.f = f is associative; perturb one entry
    assert!(validate(&raw).is_ok());
    let raw = table(
        &["a"],
        &[("id_a", "a", "a"), ("e", "a", "a"), ("f", "a", "a")],
        &[("e", "e", "e"), ("f", "f", "e"), ("e", "f", "f"), ("f", "e", "e")],
    );
    assert!(matches!(validate(&raw), Err(CatError::NonAssociative { .. })));
}

#[test]
fn cyclic_group_has_only_isomorphisms() {
    let c = cyclic(3);
    // oracle: in a group of order 3 every element's inverse is its square
    for f in c.morphisms() {
        let sq = c.compose(f, f);
        assert_eq!(c.compose(sq, f), c.id(0));
        assert!(c.is_iso(f));
        assert_eq!(c.inverse(f), Some(sq));
    }
}

#[test]
fn opposite_of_walking_arrow_is_isomorphic_to_it() {
    let c = Arc::new(FinCat::chain(1));
    let op = Arc::new(c.opposite());
    let swap = FinFunctor::new(op.clone(), c.clone(), vec![1, 0], vec![2, 1, 0]);
    // morphisms of [1] in index order: id_0, 0->1, id_1
    let f = swap.expect("0<->1 is a functor [1]^op -> [1]");
    assert!(f.is_fully_faithful());
    assert_eq!(op.opposite(), *c);
}

#[test]
fn core_and_product_counts() {
    let c = Arc::new(FinCat::chain(1));
    let core = c.core();
    assert_eq!((core.n_obj(), core.n_mor()), (2, 2));
    let p = FinCat::product(&c, &c);
    assert_eq!((p.n_obj(), p.n_mor()), (4, 9));
    p.check_laws().unwrap();
}

#[test]
fn left_adjoint_of_identity_is_identity() {
    let c = Arc::new(FinCat::chain(2));
    let adj = find_adjoint(&FinFunctor::identity(&c), Side::Left).unwrap().unwrap();
    assert_eq!(adj.left, FinFunctor::identity(&c));
    assert!(adj.unit.is_identity() && adj.counit.is_identity());
}

#[test]
fn left_adjoint_of_collapse_map() {
    let c2 = Arc::new(FinCat::chain(2));
    let c1 = Arc::new(FinCat::chain(1));
    let g = monotone(&c2, &c1, vec![0, 1, 1]);
    let adj = find_adjoint(&g, Side::Left).unwrap().unwrap();
    assert_eq!(adj.left.obj, vec![0, 1]);
}

#[test]
fn adjoints_of_map_to_point_pick_extremes() {
    let c1 = Arc::new(FinCat::chain(1));
    let pt = Arc::new(FinCat::point());
    let g = FinFunctor::to_point(&c1, &pt);
    let left = find_adjoint(&g, Side::Left).unwrap().unwrap();
    assert_eq!(left.left.obj, vec![0]);
    let right = find_adjoint(&g, Side::Right).unwrap().unwrap();
    assert_eq!(right.right.obj, vec![1]);
    right.check_triangles().unwrap();
}

#[test]
fn missing_adjoint_is_absent() {
    // [0] + [0] -> [0] has neither adjoint
    let d = Arc::new(FinCat::discrete(&["a", "b"]));
    let pt = Arc::new(FinCat::point());
    let g = FinFunctor::to_point(&d, &pt);
    assert!(find_adjoint(&g, Side::Left).unwrap().is_none());
    assert!(find_adjoint(&g, Side::Right).unwrap().is_none());
}

#[test]
fn localisation_certificates() {
    let c = Arc::new(FinCat::chain(2));
    let isos: Vec<Mor> = c.morphisms().filter(|&f| c.is_iso(f)).collect();
    let cert = localization_certificate(&FinFunctor::identity(&c), &isos);
    assert_eq!(cert, LocalizationCertificate { inverts_w: true, reflective: true });
    let c1 = Arc::new(FinCat::chain(1));
    let pt = Arc::new(FinCat::point());
    let w = vec![c1.mor_id("0->1").unwrap()];
    let cert = localization_certificate(&FinFunctor::to_point(&c1, &pt), &w);
    assert_eq!(cert, LocalizationCertificate { inverts_w: true, reflective: true });
    let d = Arc::new(FinCat::discrete(&["a", "b"]));
    let cert = localization_certificate(&FinFunctor::to_point(&d, &pt), &[]);
    assert!(!cert.reflective);
}

#[test]
fn functor_search_counts_monotone_maps() {
    // monotone maps [1] -> [2]: pairs i <= j, 6 of them
    let a = Arc::new(FinCat::chain(1));
    let b = Arc::new(FinCat::chain(2));
    let n = search_functors(&a, &b, &FunctorSearch::unconstrained(&a, &b), &mut |_| true);
    assert_eq!(n, 6);
    // endofunctors of the cyclic group of order 3: group homomorphisms, 3 of them
    let g = Arc::new(cyclic(3));
    let n = search_functors(&g, &g, &FunctorSearch::unconstrained(&g, &g), &mut |f| {
        f.check().unwrap();
        true
    });
    assert_eq!(n, 3);
}

// ---------- random posets ----------

/// Random preorder on `n` elements given by an upper-triangular relation,
/// closed transitively.
fn poset_strategy(max: usize) -> impl Strategy<Value = Arc<FinCat>> {
    (1..=max).prop_flat_map(|n| {
        proptest::collection::vec(any::<bool>(), n * n).prop_map(move |bits| {
            let mut rel = vec![false; n * n];
            for i in 0..n {
                rel[i * n + i] = true;
                for j in i + 1..n {
                    rel[i * n + j] = bits[i * n + j];
                }
            }
            for k in 0..n {
                for i in 0..n {
                    for j in 0..n {
                        if rel[i * n + k] && rel[k * n + j] {
                            rel[i * n + j] = true;
                        }
                    }
                }
            }
            let els: Vec<String> = (0..n).map(|i| format!("p{i}")).collect();
            Arc::new(FinCat::poset_from_leq(&els, |a, b| rel[a * n + b]))
        })
    })
}

fn monotone_maps(a: &Arc<FinCat>, b: &Arc<FinCat>) -> Vec<FinFunctor> {
    let mut out = Vec::new();
    search_functors(a, b, &FunctorSearch::unconstrained(a, b), &mut |f| {
        out.push(f.clone());
        true
    });
    out
}

fn leq(c: &FinCat, x: Obj, y: Obj) -> bool {
    !c.hom(x, y).is_empty()
}

proptest! {
    #[test]
    fn opposite_is_an_involution(c in poset_strategy(5)) {
        prop_assert_eq!(&c.opposite().opposite(), &*c);
        c.opposite().check_laws().unwrap();
    }

    #[test]
    fn left_adjoints_of_monotone_maps_match_least_elements(a in poset_strategy(4), b in poset_strategy(3)) {
        for g in monotone_maps(&a, &b) {
            // oracle: for each y, the set {x : y <= g x} has a least element
            let mut expected = Some(());
            for y in b.objects() {
                let up: Vec<Obj> = a.objects().filter(|&x| leq(&b, y, g.obj[x])).collect();
                let least = up.iter().any(|&x| up.iter().all(|&x2| leq(&a, x, x2)));
                if !least { expected = None; }
            }
            let found = find_adjoint(&g, Side::Left).unwrap();
            prop_assert_eq!(found.is_some(), expected.is_some());
            if let Some(adj) = found {
                adj.check_triangles().unwrap();
                let f = &adj.left;
                for y in b.objects() {
                    for x in a.objects() {
                        prop_assert_eq!(leq(&a, f.obj[y], x), leq(&b, y, g.obj[x]));
                    }
                }
                // determinism
                prop_assert_eq!(&find_adjoint(&g, Side::Left).unwrap().unwrap(), &adj);
            }
        }
    }
}

#[test]
fn hom_bijection_for_non_thin_adjunction() {
    // the inclusion of the terminal object into a category with a terminal
    // object `t` and a non-trivial endomorphism monoid elsewhere
    let raw = table(
        &["x", "t"],
        &[("id_x", "x", "x"), ("s", "x", "x"), ("id_t", "t", "t"), ("u", "x", "t")],
        &[("s", "s", "id_x"), ("u", "s", "u")],
    );
    let c = Arc::new(validate(&raw).unwrap());
    let pt = Arc::new(FinCat::point());
    let g = FinFunctor::to_point(&c, &pt);
    let r = find_adjoint(&g, Side::Right).unwrap().unwrap();
    assert_eq!(c.obj_name(r.right.obj[0]), "t");
    // oracle: Hom(g x, *) has one element, Hom(x, t) has one element
    for x in c.objects() {
        assert_eq!(c.hom(x, r.right.obj[0]).len(), 1);
    }
    assert!(find_adjoint(&g, Side::Left).unwrap().is_none());
}
