use super::*;
use crate::fincat::FinCat;
use crate::testgen::{arb_fib, thin_over};
use proptest::prelude::*;

/// `(s, t): Ar([1]) -> [1] × [1]`
fn arrow_category_of_interval() -> TwoVarFib {
    // 0:(0,0) 1:(0,1) 2:(1,1)
    thin_over(FinCat::chain(1), FinCat::chain(1), &[(0, 0), (0, 1), (1, 1)], &[(0, 1), (1, 2)])
}

fn product_projection(a: FinCat, b: FinCat) -> FinFunctor {
    let (a, b) = (Arc::new(a), Arc::new(b));
    let prod = Arc::new(FinCat::product(&a, &b));
    FinFunctor::projections(&a, &b, &prod).0
}

/// Cartesianness straight from the definition: every `g: x -> z` with a
/// factorisation `p g = p e . k` lifts uniquely through `e` over `k`.
fn cartesian_by_definition(p: &FinFunctor, e: Mor) -> bool {
    let (c, s) = (&p.src, &p.tgt);
    let (y, z) = (c.src(e), c.tgt(e));
    for x in c.objects() {
        for &g in c.hom(x, z) {
            for &k in s.hom(p.obj[x], p.obj[y]) {
                if s.compose(p.mor[e], k) != p.mor[g] {
                    continue;
                }
                let lifts = c.hom(x, y).iter().filter(|&&h| c.compose(e, h) == g && p.mor[h] == k).count();
                if lifts != 1 {
                    return false;
                }
            }
        }
    }
    true
}

fn cocartesian_by_definition(p: &FinFunctor, e: Mor) -> bool {
    let (c, s) = (&p.src, &p.tgt);
    let (x, y) = (c.src(e), c.tgt(e));
    for z in c.objects() {
        for &g in c.hom(x, z) {
            for &k in s.hom(p.obj[y], p.obj[z]) {
                if s.compose(k, p.mor[e]) != p.mor[g] {
                    continue;
                }
                let lifts = c.hom(y, z).iter().filter(|&&h| c.compose(h, e) == g && p.mor[h] == k).count();
                if lifts != 1 {
                    return false;
                }
            }
        }
    }
    true
}

/// Cartesian in the pullback along `[1] -> S` picking out `p e`.
fn locally_cartesian_by_definition(p: &FinFunctor, e: Mor) -> bool {
    let (c, s) = (&p.src, &p.tgt);
    let (y, z) = (c.src(e), c.tgt(e));
    let beta = p.mor[e];
    let src_id = s.id(s.src(beta));
    for x in c.objects().filter(|&x| p.obj[x] == s.src(beta)) {
        let over_beta = c.hom(x, z).iter().filter(|&&g| p.mor[g] == beta).count();
        let mut hit = vec![0usize; c.n_mor()];
        let mut count = 0;
        for &h in c.hom(x, y).iter().filter(|&&h| p.mor[h] == src_id) {
            hit[c.compose(e, h)] += 1;
            count += 1;
        }
        if count != over_beta || hit.iter().any(|&n| n > 1) {
            return false;
        }
    }
    true
}

#[test]
fn q_is_curved_ortho_but_not_ortho() {
    let t = classify(&q_fibration()).unwrap();
    assert!(t.curved_ortho);
    assert!(!t.ortho);
    assert!(!t.bifib);
    assert!(matches!(t.witnesses["ortho"], Witness::Edge { ref morphism, .. } if morphism == "11'->11"));
}

#[test]
fn q_prime_is_gray_but_not_cocartesian() {
    let t = classify(&q_prime_fibration()).unwrap();
    assert!(t.gray);
    assert!(t.locally_cocartesian_fib);
    assert!(!t.cocartesian_fib);
    assert!(t.witnesses.contains_key("cocartesian_fib"));
}

#[test]
fn arrow_category_is_a_bifibration() {
    let t = classify(&arrow_category_of_interval()).unwrap();
    assert!(t.bifib);
    assert!(t.ortho);
    assert!(t.curved_ortho);
    assert!(!t.left_fib);
}

#[test]
fn product_projection_edges_are_bicartesian() {
    let p = product_projection(FinCat::chain(1), FinCat::chain(1));
    let c = edge_class_by_name(&p, "(0->1,id_0)").unwrap();
    assert!(c.cartesian && c.cocartesian && c.locally_cartesian && c.locally_cocartesian);
    let c = edge_class_by_name(&p, "(id_0,0->1)").unwrap();
    assert!(!c.cartesian && !c.cocartesian);
}

#[test]
fn interpolating_edge_of_q_is_neither_cartesian_nor_cocartesian() {
    let q = q_fibration();
    let c = edge_class_by_name(&q.proj, "11'->11").unwrap();
    assert!(!c.cartesian && !c.cocartesian);
    assert!(edge_class_by_name(&q.proj, "nope").is_err());
}

#[test]
fn identities_carry_every_flag() {
    let q = q_prime_fibration();
    let rel = Rel::new(&q.proj);
    for x in q.total.objects() {
        let c = rel.edge_class(q.total.id(x));
        assert!(c.cartesian && c.cocartesian && c.locally_cartesian && c.locally_cocartesian);
    }
}

#[test]
fn empty_total_category_is_everything() {
    let a = Arc::new(FinCat::chain(1));
    let empty = Arc::new(FinCat::discrete(&[]));
    let p = FinFunctor::new(empty, a, vec![], vec![]).unwrap();
    let t = classify(&TwoVarFib::one_var(&p)).unwrap();
    assert!(t.cartesian_fib && t.cocartesian_fib && t.left_fib && t.right_fib && t.bifib && t.ortho && t.gray);
}

#[test]
fn q_has_one_non_invertible_interpolating_edge() {
    let q = q_fibration();
    let ds = interpolating_edges(&q, Mode::CurvedOrtho).unwrap();
    assert_eq!(ds.len(), 1);
    assert_eq!(q.total.mor_name(ds[0].interpolating_edge), "11'->11");
    assert_eq!(q.total.obj_name(ds[0].source), "00");
}

#[test]
fn q_prime_has_one_non_invertible_interpolating_edge() {
    let q = q_prime_fibration();
    let ds = interpolating_edges(&q, Mode::Gray).unwrap();
    assert_eq!(ds.len(), 1);
    assert_eq!(q.total.mor_name(ds[0].interpolating_edge), "11'->11");
    assert_eq!(ds[0].image.obj, vec![0, 1, 2, 3, 4]);
}

#[test]
fn cross_checks_agree_on_the_shapes() {
    for p in [q_fibration(), q_prime_fibration(), arrow_category_of_interval()] {
        for c in cross_check(&p).unwrap() {
            assert!(c.agrees(), "{c:?}");
        }
    }
}

#[test]
fn one_variable_view_keeps_the_flags() {
    let p = product_projection(FinCat::chain(1), FinCat::chain(2));
    let t = classify(&TwoVarFib::one_var(&p)).unwrap();
    assert!(t.cartesian_fib && t.cocartesian_fib && !t.conservative);
    assert!(t.gray && t.curved_ortho);
}

#[test]
fn swap_and_opposite_exchange_flags() {
    let q = q_fibration();
    let op = classify(&q.opposite()).unwrap();
    let t = classify(&q).unwrap();
    assert_eq!(op.cocart_over_a, t.cart_over_a);
    assert_eq!(op.cart_over_b, t.cocart_over_b);
    let sw = classify(&q.swap()).unwrap();
    assert_eq!(sw.cocart_over_a, t.cocart_over_b);
    assert_eq!(sw.cart_over_b, t.cart_over_a);
}

#[test]
fn fibres_of_q() {
    let q = q_fibration();
    let (f, _) = q.fibre(1, 1);
    let mut names: Vec<&str> = f.obj_names().iter().map(|s| s.as_str()).collect();
    names.sort();
    assert_eq!(names, vec!["11", "11'"]);
    let (fa, _, to_b) = q.fibre_over_a(0);
    assert_eq!(fa.n_obj(), 2);
    assert_eq!(to_b.tgt.n_obj(), 2);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn edge_flags_match_the_definitions(p in arb_fib()) {
        let rel = Rel::new(&p.proj);
        for e in p.total.morphisms() {
            prop_assert_eq!(rel.cartesian[e], cartesian_by_definition(&p.proj, e));
            prop_assert_eq!(rel.cocartesian[e], cocartesian_by_definition(&p.proj, e));
            prop_assert_eq!(rel.locally_cartesian[e], locally_cartesian_by_definition(&p.proj, e));
        }
        let op = p.opposite();
        let rel_op = Rel::new(&op.proj);
        for e in p.total.morphisms() {
            prop_assert_eq!(rel.locally_cocartesian[e], rel_op.locally_cartesian[e]);
        }
    }

    #[test]
    fn taxonomy_implications(p in arb_fib()) {
        let t = classify(&p).unwrap();
        prop_assert!(!t.left_fib || t.cocartesian_fib);
        prop_assert!(!t.right_fib || t.cartesian_fib);
        prop_assert!(!t.cocartesian_fib || (t.locally_cocartesian_fib && t.cocart_over_a && t.cocart_over_b));
        prop_assert!(!t.cartesian_fib || (t.locally_cartesian_fib && t.cart_over_a && t.cart_over_b));
        prop_assert!(!t.bifib || t.curved_ortho);
        prop_assert!(!t.ortho || t.curved_ortho);
        prop_assert!(!t.bifib || t.ortho);
        prop_assert!(!(t.cocartesian_fib && t.pr_cocart) || t.gray);
        for (flag, value) in serde_json::to_value(&t).unwrap().as_object().unwrap() {
            if value == &serde_json::Value::Bool(false) {
                prop_assert!(t.witnesses.contains_key(flag), "no witness for {}", flag);
            }
        }
    }

    #[test]
    fn cartesian_iff_locally_cartesian_edges_compose(p in arb_fib()) {
        let t = classify(&p).unwrap();
        if !t.locally_cartesian_fib {
            return Ok(());
        }
        let rel = Rel::new(&p.proj);
        let e = &p.total;
        let closed = e.morphisms().all(|f| {
            e.out(e.tgt(f)).iter().all(|&g| {
                !(rel.locally_cartesian[f] && rel.locally_cartesian[g]) || rel.locally_cartesian[e.compose(g, f)]
            })
        });
        prop_assert_eq!(t.cartesian_fib, closed);
    }

    #[test]
    fn cross_check_groups_agree(p in arb_fib()) {
        for c in cross_check(&p).unwrap() {
            prop_assert!(c.agrees(), "{:?}", c);
        }
    }

    #[test]
    fn vertical_cocartesian_edges_are_cocartesian_for_the_second_projection(p in arb_fib()) {
        // in a curved orthofibration, an edge over (id, v) is p-cocartesian
        // exactly when it is p2-cocartesian
        let t = classify(&p).unwrap();
        if !t.curved_ortho {
            return Ok(());
        }
        let (full, two) = (Rel::new(&p.proj), Rel::new(&p.p2));
        for e in p.total.morphisms() {
            if p.base_a.is_identity(p.p1.mor[e]) {
                prop_assert_eq!(full.cocartesian[e], two.cocartesian[e]);
            }
        }
    }
}
