//! Two-variable adjunctions `F(x, b) ⊣ G(y, b)`, obtained by running the
//! parametrised construction on `F^op` over `B^op`.

use super::{adj_with_caps, MapOver, MateError, ParamAdjunction};
use crate::fincat::{find_adjoint, pullback, FinCat, FinFunctor, Mor, Obj, Side};
use crate::grothendieck::Caps;
use crate::twistfree::{tw, TwVariant};
use std::sync::Arc;

#[derive(Clone, Debug)]
pub struct TwoVarAdjunction {
    /// `F: D × B -> C`
    pub left: FinFunctor,
    /// `G: C × B^op -> D`
    pub right: FinFunctor,
    /// the parametrised adjunction of `F^op` over `B^op`
    pub param: ParamAdjunction,
    /// object triples `(x, b, y)` examined
    pub triples: usize,
    pub bijection_failures: Vec<String>,
    pub naturality_failures: Vec<String>,
    /// `(D × B) ×_C Tw^r(C) -> Tw^r(D)`, a morphism `F(x, b) -> y` going
    /// to its adjunct `x -> G(y, b)`
    pub tw_functor: FinFunctor,
}

impl TwoVarAdjunction {
    pub fn holds(&self) -> bool {
        self.bijection_failures.is_empty() && self.naturality_failures.is_empty()
    }
}

/// `f: D × B -> C` with `f.src` built as `FinCat::product(d, b)`.
pub fn two_var_adjoint(f: &FinFunctor, d: &Arc<FinCat>, b: &Arc<FinCat>, caps: Caps) -> Result<TwoVarAdjunction, MateError> {
    let db = Arc::new(FinCat::product(d, b));
    if *f.src != *db {
        return Err(MateError::Shape("the functor is not defined on the given product".into()));
    }
    let c = f.tgt.clone();
    let (nb, mb) = (b.n_obj(), b.n_mor());
    let at = |x: Obj, s: Obj| x * nb + s;
    let at_mor = |u: Mor, beta: Mor| u * mb + beta;
    let partial = |s: Obj| {
        FinFunctor::new_unchecked(
            d.clone(),
            c.clone(),
            d.objects().map(|x| f.obj[at(x, s)]).collect(),
            d.morphisms().map(|u| f.mor[at_mor(u, b.id(s))]).collect(),
        )
    };
    for s in b.objects() {
        if find_adjoint(&partial(s), Side::Right)?.is_none() {
            return Err(MateError::NotFibrewiseLeftAdjoint(b.obj_name(s).into()));
        }
    }

    // F^op over B^op is a parametrised right adjoint
    let cb = Arc::new(FinCat::product(&c, b));
    let (_, to_b) = FinFunctor::projections(d, b, &db);
    let (_, cb_to_b) = FinFunctor::projections(&c, b, &cb);
    let bop = Arc::new(b.opposite());
    let (db_op, cb_op) = (Arc::new(db.opposite()), Arc::new(cb.opposite()));
    let map = FinFunctor::pair(f, &to_b, cb.clone()).opposite_between(db_op.clone(), cb_op.clone());
    let fam = MapOver::new(map, to_b.opposite_between(db_op, bop.clone()), cb_to_b.opposite_between(cb_op, bop.clone()))?;
    let pa = adj_with_caps(&fam, caps)?;

    // fibre positions to objects and morphisms of D
    let d_obj = |s: Obj, p: Obj| pa.c.inc[s].obj[p] / nb;
    let d_mor = |s: Obj, p: Mor| pa.c.inc[s].mor[p] / mb;
    let c_pos = |y: Obj, s: Obj| pa.d.pos(at(y, s));
    let c_mor_pos = |k: Mor, s: Obj| pa.d.mor_pos(at_mor(k, b.id(s)));
    let g_obj = |y: Obj, s: Obj| d_obj(s, pa.per_fibre[s].left.obj[c_pos(y, s)]);
    // G(k, b): G(y, b) -> G(y', b), reversed twice
    let g_at = |k: Mor, s: Obj| d_mor(s, pa.per_fibre[s].left.mor[c_mor_pos(k, s)]);

    // G on C × B^op; beta^op: s -> t in B^op is beta: t -> s in B
    let cbop = Arc::new(FinCat::product(&c, &bop));
    let mut g_mor = Vec::with_capacity(cbop.n_mor());
    for k in c.morphisms() {
        for beta in bop.morphisms() {
            let (s, t) = (bop.src(beta), bop.tgt(beta));
            let lam = d_mor(t, pa.lambda[beta].comp[c_pos(c.src(k), s)]);
            g_mor.push(d.compose(g_at(k, t), lam));
        }
    }
    let g_objs = cbop.objects().map(|o| g_obj(o / nb, o % nb)).collect();
    let right = FinFunctor::new(cbop.clone(), d.clone(), g_objs, g_mor).map_err(|e| MateError::NonFunctorial(e.to_string()))?;
    let g_full = |k: Mor, beta: Mor| right.mor[at_mor(k, beta)];

    // unit x -> G(F(x, b), b) and counit F(G(y, b), b) -> y
    let eta = |x: Obj, s: Obj| pa.c.inc[s].mor[pa.per_fibre[s].counit.comp[pa.c.pos(at(x, s))]] / mb;
    let eps = |y: Obj, s: Obj| pa.d.inc[s].mor[pa.per_fibre[s].unit.comp[c_pos(y, s)]] / mb;
    // phi: F(x, b) -> y goes to G(phi, b) . eta
    let to_right = |phi: Mor, x: Obj, s: Obj| d.compose(g_full(phi, b.id(s)), eta(x, s));
    let to_left = |psi: Mor, y: Obj, s: Obj| c.compose(eps(y, s), f.mor[at_mor(psi, b.id(s))]);

    let mut triples = 0;
    let mut bijection_failures = Vec::new();
    let mut naturality_failures = Vec::new();
    for s in b.objects() {
        for x in d.objects() {
            for y in c.objects() {
                triples += 1;
                let fx = f.obj[at(x, s)];
                let gy = g_obj(y, s);
                let (lhs, rhs) = (c.hom(fx, y), d.hom(x, gy));
                let label = format!("({}, {}, {})", d.obj_name(x), b.obj_name(s), c.obj_name(y));
                let round_trips = lhs.len() == rhs.len()
                    && lhs.iter().all(|&phi| to_left(to_right(phi, x, s), y, s) == phi)
                    && rhs.iter().all(|&psi| to_right(to_left(psi, y, s), x, s) == psi);
                if !round_trips {
                    bijection_failures.push(label.clone());
                    continue;
                }
                // naturality in each variable separately
                for &psi in rhs {
                    let phi = to_left(psi, y, s);
                    for &a in d.inn(x) {
                        if to_left(d.compose(psi, a), y, s) != c.compose(phi, f.mor[at_mor(a, b.id(s))]) {
                            naturality_failures.push(format!("{label} along {}", d.mor_name(a)));
                        }
                    }
                    for &k in c.out(y) {
                        let y1 = c.tgt(k);
                        if to_left(d.compose(g_full(k, b.id(s)), psi), y1, s) != c.compose(k, phi) {
                            naturality_failures.push(format!("{label} along {}", c.mor_name(k)));
                        }
                    }
                    for &beta in b.inn(s) {
                        // beta: s0 -> s, G(y, beta^op): G(y, s) -> G(y, s0)
                        let s0 = b.src(beta);
                        let moved = to_left(d.compose(g_full(c.id(y), beta), psi), y, s0);
                        if moved != c.compose(phi, f.mor[at_mor(d.id(x), beta)]) {
                            naturality_failures.push(format!("{label} along {}", b.mor_name(beta)));
                        }
                    }
                }
            }
        }
    }

    // (D × B) ×_C Tw^r(C) -> Tw^r(D)
    let (twc, twd) = (tw(&c, TwVariant::Right), tw(d, TwVariant::Right));
    let source = pullback(f, &twc.st.p1);
    let adjunct = |(xb, phi_k): (Obj, Obj)| -> Mor {
        let phi = twc.keyed.obj_keys[phi_k];
        to_right(phi, xb / nb, xb % nb)
    };
    let obj = source.keyed.obj_keys.iter().map(|&k| twd.keyed.obj(&adjunct(k))).collect();
    let mut mor = Vec::with_capacity(source.keyed.mor_keys.len());
    for (i, &(ab, sq)) in source.keyed.mor_keys.iter().enumerate() {
        let (_, _, _, v) = twc.keyed.mor_keys[sq];
        let (a, beta) = (ab / mb, ab % mb);
        let from = source.keyed.obj_keys[source.keyed.cat.src(i)];
        let to = source.keyed.obj_keys[source.keyed.cat.tgt(i)];
        let key = (adjunct(from), adjunct(to), a, g_full(v, beta));
        mor.push(twd.keyed.try_mor(&key).ok_or_else(|| MateError::NonFunctorial(source.keyed.cat.mor_name(i).to_string()))?);
    }
    let tw_functor = FinFunctor::new(source.keyed.cat.clone(), twd.keyed.cat.clone(), obj, mor)
        .map_err(|e| MateError::NonFunctorial(e.to_string()))?;

    Ok(TwoVarAdjunction {
        left: f.clone(),
        right,
        param: pa,
        triples,
        bijection_failures,
        naturality_failures,
        tw_functor,
    })
}

/// `F(b, c) = b ∧ c` on the chain `{0 < 1 < 2}` as a functor `P × P -> P`.
pub fn heyting_meet(n: usize) -> (FinFunctor, Arc<FinCat>) {
    let p = Arc::new(FinCat::chain(n));
    let pp = Arc::new(FinCat::product(&p, &p));
    let w = n + 1;
    let f = FinFunctor::monotone(&pp, &p, pp.objects().map(|o| (o / w).min(o % w)).collect()).expect("meet is monotone");
    (f, p)
}
