use super::*;
use crate::fibclass::{q_prime_fibration, TwoVarFib};
use crate::fincat::{FinCat, FinFunctor};
use crate::testgen::{arb_fib, thin_over};
use proptest::prelude::*;
use std::sync::Arc;

fn non_identity(c: &FinCat) -> usize {
    c.morphisms().filter(|&f| !c.is_identity(f)).count()
}

#[test]
fn chains_across_one_square() {
    let (ch, mx, max) = chain_posets(1, 1, (0, 0), (1, 1)).unwrap();
    assert_eq!(ch.chains.len(), 3);
    assert_eq!(mx.chains.len(), 2);
    assert_eq!(non_identity(&mx.cat), 1);
    // right-then-down below down-then-right
    let dr = mx.cat.obj_id("00<01<11").unwrap();
    let rd = mx.cat.obj_id("00<10<11").unwrap();
    assert_eq!(mx.cat.hom(rd, dr).len(), 1);
    assert!(mx.cat.hom(dr, rd).is_empty());
    let short = ch.cat.obj_id("00<11").unwrap();
    assert_eq!(mx.cat.obj_name(max.obj[short]), "00<10<11");
    // 00<11 ⊆ 00<10<11 is marked, 00<11 ⊆ 00<01<11 is not
    let marked: Vec<&str> = ch.marked.iter().map(|&f| ch.cat.mor_name(f)).collect();
    assert_eq!(marked, vec!["00<11->00<10<11"]);
}

#[test]
fn max_completes_right_then_down() {
    assert_eq!(max_of(&[(0, 0), (1, 1)]), vec![(0, 0), (1, 0), (1, 1)]);
    assert_eq!(max_of(&[(0, 0), (2, 1), (2, 2)]), vec![(0, 0), (1, 0), (2, 0), (2, 1), (2, 2)]);
}

#[test]
fn equal_endpoints_have_one_chain() {
    let (ch, mx, _) = chain_posets(2, 2, (1, 1), (1, 1)).unwrap();
    assert_eq!(ch.chains, vec![vec![(1, 1)]]);
    assert_eq!(mx.chains.len(), 1);
    assert!(chain_posets(1, 1, (1, 0), (0, 1)).is_err());
}

#[test]
fn max_is_a_surjective_localising_map_on_small_grids() {
    for (m, n) in [(1, 1), (2, 1), (1, 2), (2, 2), (3, 1)] {
        for x in 0..(m + 1) * (n + 1) {
            for y in 0..(m + 1) * (n + 1) {
                let (p, q) = ((x / (n + 1), x % (n + 1)), (y / (n + 1), y % (n + 1)));
                if p.0 > q.0 || p.1 > q.1 {
                    continue;
                }
                let (ch, mx, max) = chain_posets(m, n, p, q).unwrap();
                let mut hit = vec![false; mx.chains.len()];
                for &o in &max.obj {
                    hit[o] = true;
                }
                assert!(hit.iter().all(|&h| h), "{p:?} {q:?}");
                let cert = fibre_certificate(&ch, &mx, &max);
                assert!(cert.holds(), "{cert:?}");
            }
        }
    }
}

#[test]
fn max_need_not_be_a_fibration_of_posets() {
    let (ch, mx, max) = chain_posets(1, 1, (0, 0), (1, 1)).unwrap();
    let cert = fibre_certificate(&ch, &mx, &max);
    assert!(cert.cartesian && !cert.cocartesian);
    // 00<01<21 contains no chain over 00<10<11<21, and the only chain
    // over it above 00<21 is 00<11<21, which 00<01<21 does not contain
    let (ch, mx, max) = chain_posets(2, 1, (0, 0), (2, 1)).unwrap();
    let cert = fibre_certificate(&ch, &mx, &max);
    assert!(cert.holds() && !cert.cartesian && !cert.cocartesian);
}

#[test]
fn gray_with_a_point_has_singleton_homs() {
    let g = gray_simplices(1, 0).unwrap();
    assert_eq!(g.n_obj(), 2);
    assert!(g.hom_pairs().all(|(x, y)| g.hom(x, y).unwrap().n_obj() == 1));
    assert!(g.hom(1, 0).is_none());
}

#[test]
fn gray_square_has_one_two_cell() {
    let g = gray_simplices(1, 1).unwrap();
    let (x, y) = (g.objects.iter().position(|o| o == "00").unwrap(), g.objects.iter().position(|o| o == "11").unwrap());
    let h = g.hom(x, y).unwrap();
    assert_eq!(h.n_obj(), 2);
    assert_eq!(non_identity(h), 1);
}

#[test]
fn gray_simplices_are_strict_two_categories() {
    for m in 0..=2 {
        for n in 0..=2 {
            gray_simplices(m, n).unwrap().check().unwrap();
        }
    }
    assert!(matches!(gray_simplices(4, 1), Err(GrayError::CapExceeded { .. })));
    assert!(gray_simplices_capped(4, 1, 4).is_ok());
}

#[test]
fn theta_cells() {
    let t = theta_cell(2, &[1, 2]).unwrap();
    t.check().unwrap();
    assert_eq!(t.hom(0, 2).unwrap().n_obj(), 6);
    assert_eq!(t.hom(1, 1).unwrap().n_obj(), 1);
    assert!(theta_cell(2, &[1]).is_err());
}

#[test]
fn collapse_without_height_is_an_isomorphism() {
    for m in 0..=3 {
        let c = collapse_to_delta2(m, 0).unwrap();
        assert!(c.functor.is_isomorphism());
        assert!(c.certified());
    }
}

#[test]
fn collapse_of_the_square_is_the_walking_two_cell() {
    let c = collapse_to_delta2(1, 1).unwrap();
    let t = &c.functor.tgt;
    assert_eq!(t.n_obj(), 2);
    let h = t.hom(0, 1).unwrap();
    assert_eq!((h.n_obj(), non_identity(h)), (2, 1));
    assert!(!c.functor.is_isomorphism());
    assert!(c.inverts_exactly_vertical);
    // the two vertical edges land on identities
    let s = &c.functor.src;
    for (a, b) in [("00", "01"), ("10", "11")] {
        let (x, y) = (s.objects.iter().position(|o| o == a).unwrap(), s.objects.iter().position(|o| o == b).unwrap());
        assert_eq!(c.functor.obj[x], c.functor.obj[y]);
        assert_eq!(c.functor.homs[&(x, y)].obj[0], t.identity(c.functor.obj[x]));
    }
}

#[test]
fn collapse_certificates_on_small_grids() {
    let c = collapse_to_delta2(2, 1).unwrap();
    assert_eq!(c.certificates.len(), 12);
    assert!(c.certified());
    for (m, n) in [(1, 2), (2, 2)] {
        assert!(collapse_to_delta2(m, n).unwrap().certified());
    }
}

fn nerve(c: FinCat) -> ScaledComplex {
    ScaledComplex::nerve(&c).unwrap()
}

#[test]
fn scaling_with_a_point_is_unital() {
    let x = nerve(FinCat::chain(2)).with_scaling([vec![0, 1, 2]]).unwrap();
    let xp = gray_scaling(&x, &nerve(FinCat::point()));
    xp.check().unwrap();
    assert_eq!(xp.simplices.iter().map(Vec::len).collect::<Vec<_>>(), x.simplices.iter().map(Vec::len).collect::<Vec<_>>());
    assert_eq!(xp.scaling, x.scaling);
    let px = gray_scaling(&nerve(FinCat::point()), &x);
    assert_eq!(px.scaling, x.scaling);
}

#[test]
fn sharp_square_scales_one_of_two_triangles() {
    let d1 = nerve(FinCat::chain(1)).sharp();
    let sq = gray_scaling(&d1, &d1);
    sq.check().unwrap();
    let nondeg: Vec<&Simplex> = sq.simplices[2].iter().filter(|s| !is_degenerate(s)).collect();
    assert_eq!(nondeg.len(), 2);
    let scaled: Vec<&&Simplex> = nondeg.iter().filter(|s| sq.scaling.contains(**s)).collect();
    assert_eq!(scaled.len(), 1);
    let (a, b) = split_simplex(&d1, scaled[0]);
    assert_eq!((a, b), (vec![0, 1, 1], vec![0, 0, 1]));
    assert!(sq.simplices[2].iter().filter(|s| is_degenerate(s)).all(|s| sq.scaling.contains(s)));
}

fn arb_scaled(k: usize) -> impl Strategy<Value = ScaledComplex> {
    let base = nerve(FinCat::chain(k));
    let nondeg: Vec<Simplex> = base.simplices[2].iter().filter(|s| !is_degenerate(s)).cloned().collect();
    proptest::collection::vec(any::<bool>(), nondeg.len()).prop_map(move |bits| {
        let pick = nondeg.iter().zip(bits).filter(|(_, b)| *b).map(|(s, _)| s.clone());
        base.clone().with_scaling(pick).unwrap()
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn scaling_membership_matches_the_two_forms(x in (1usize..=3).prop_flat_map(arb_scaled), y in (1usize..=2).prop_flat_map(arb_scaled)) {
        let p = gray_scaling(&x, &y);
        prop_assert!(p.check().is_ok());
        for s in &p.simplices[2] {
            prop_assert_eq!(p.scaling.contains(s), is_gray_scaled(&x, &y, s), "{}", p.simplex_name(s));
        }
    }

    #[test]
    fn classifier_agrees_with_the_taxonomy(p in arb_fib()) {
        let (s, t) = (nerve((*p.base_a).clone()).sharp(), nerve((*p.base_b).clone()).sharp());
        let r = loc_cocart_gray_classifier(&p, &s, &t).unwrap();
        prop_assert!(r.agrees(), "{:?}", r);
    }
}

fn sharp_report(p: &TwoVarFib) -> GrayConditionReport {
    let (s, t) = (nerve((*p.base_a).clone()).sharp(), nerve((*p.base_b).clone()).sharp());
    loc_cocart_gray_classifier(p, &s, &t).unwrap()
}

#[test]
fn q_prime_satisfies_the_conditions() {
    let r = sharp_report(&q_prime_fibration());
    assert!(r.locally_cocartesian && r.conditions_hold());
    assert_eq!(r.taxonomy_gray, Some(true));
    assert!(r.agrees() && r.scaled_failures.is_empty());
}

#[test]
fn cocartesian_fibrations_satisfy_the_conditions() {
    // the projection [1] × [2] × [1] -> [2] × [1] and the identity of [2] × [1]
    let (a, b) = (Arc::new(FinCat::chain(2)), Arc::new(FinCat::chain(1)));
    let ab = Arc::new(FinCat::product(&a, &b));
    let e = Arc::new(FinCat::product(&Arc::new(FinCat::chain(1)), &ab));
    let k = ab.n_obj();
    let proj = FinFunctor::monotone(&e, &ab, e.objects().map(|o| o % k).collect()).unwrap();
    for p in [TwoVarFib::new(proj, a.clone(), b.clone()).unwrap(), TwoVarFib::new(FinFunctor::identity(&ab), a, b).unwrap()] {
        let r = sharp_report(&p);
        assert!(r.conditions_hold() && r.scaled_failures.is_empty(), "{r:?}");
        assert_eq!(r.taxonomy_gray, Some(true));
    }
}

/// `a < b < c` and `a < c' < c` over `[2]`, times `[1]`: the lift of
/// `0 -> 2` at `a` is `a -> c'`, not the composite through `b`.
fn composite_breaks() -> TwoVarFib {
    let fibre = [0usize, 1, 2, 2];
    let gens = [(0, 1), (1, 2), (0, 3), (3, 2)];
    let coords: Vec<(usize, usize)> = (0..8).map(|i| (fibre[i % 4], i / 4)).collect();
    let mut edges: Vec<(usize, usize)> = gens.iter().flat_map(|&(u, v)| [(u, v), (u + 4, v + 4)]).collect();
    edges.extend((0..4).map(|i| (i, i + 4)));
    thin_over(FinCat::chain(2), FinCat::chain(1), &coords, &edges)
}

#[test]
fn locally_cocartesian_but_not_gray() {
    let p = composite_breaks();
    let r = sharp_report(&p);
    assert!(r.locally_cocartesian);
    assert!(r.fibres_over_x.holds() && r.corners.holds());
    assert_eq!(r.fibres_over_y.witness.as_deref(), Some("(0,0) -> (1,0) -> (2,0)"));
    assert!(!r.scaled_failures.is_empty());
    assert_eq!(r.taxonomy_gray, Some(false));
    assert!(r.agrees());
    // over the flat scaling nothing is asked of the triangle
    let (s, t) = (nerve(FinCat::chain(2)), nerve(FinCat::chain(1)));
    assert!(loc_cocart_gray_classifier(&p, &s, &t).unwrap().conditions_hold());
}

#[test]
fn json_shapes() {
    let g = gray_simplices(1, 1).unwrap().to_json();
    assert_eq!(g["objects"].as_array().unwrap().len(), 4);
    let sq = gray_scaling(&nerve(FinCat::chain(1)).sharp(), &nerve(FinCat::chain(1)).sharp()).to_json();
    assert_eq!(sq["simplices"]["0"].as_array().unwrap().len(), 4);
}
