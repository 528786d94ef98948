//! Arrow and twisted arrow categories, free (co)cartesian fibrations,
//! relative twisted arrows and correspondences.

mod corrcheck;
mod relative;

pub use corrcheck::{corr_pullback_checks, CorrPullbackReport};
pub use relative::{corr, Correspondence, FibredTw};

use crate::fibclass::{FibError, LiftKind, Rel, TwoVarFib};
use crate::fincat::{build_keyed, pullback, FinCat, FinFunctor, Keyed, Mor, Obj, Pullback};
use crate::grothendieck::{dualize, fib_equivalent_with_caps, Caps, Direction, EdgeSpec, Factor, FibEquivalence};
use serde::Serialize;
use std::hash::Hash;
use std::sync::Arc;

/// Square or twisted-square key: source arrow, target arrow and the two
/// connecting arrows.
pub type SquareKey = (Mor, Mor, Mor, Mor);

/// Build a keyed category, naming morphisms by `short` when that is
/// injective and by `long` otherwise.
fn build_named<O, M>(
    objs: Vec<O>,
    mors: Vec<M>,
    obj_name: impl Fn(&O) -> String,
    short: impl Fn(&M) -> String,
    long: impl Fn(&M) -> String,
    ends: impl Fn(&M) -> (O, O),
    ident: impl Fn(&O) -> M,
    compose: impl Fn(&M, &M) -> M,
) -> Keyed<O, M>
where
    O: Clone + Eq + Hash,
    M: Clone + Eq + Hash,
{
    let mut names: Vec<String> = mors.iter().map(&short).collect();
    names.sort();
    let unique = names.windows(2).all(|w| w[0] != w[1]);
    let name = |m: &M| if unique { short(m) } else { long(m) };
    build_keyed(objs, mors, obj_name, name, ends, ident, compose).expect("well-formed construction")
}

/// `Ar(C)` with `(s, t): Ar(C) -> C × C`. A morphism `f -> f'` is a
/// commutative square `(u, w)` with `f' . u = w . f`.
#[derive(Clone, Debug)]
pub struct ArrowCat {
    pub base: Arc<FinCat>,
    pub keyed: Keyed<Mor, SquareKey>,
    pub st: TwoVarFib,
}

pub fn arrow_cat(c: &Arc<FinCat>) -> ArrowCat {
    let objs: Vec<Mor> = c.morphisms().collect();
    let mut mors = Vec::new();
    for f in c.morphisms() {
        for f1 in c.morphisms() {
            for &u in c.hom(c.src(f), c.src(f1)) {
                for &w in c.hom(c.tgt(f), c.tgt(f1)) {
                    if c.compose(f1, u) == c.compose(w, f) {
                        mors.push((f, f1, u, w));
                    }
                }
            }
        }
    }
    let keyed = build_named(
        objs,
        mors,
        |&f| c.mor_name(f).to_string(),
        |&(_, _, u, w)| format!("({},{})", c.mor_name(u), c.mor_name(w)),
        |&(f, f1, u, w)| format!("({},{};{},{})", c.mor_name(f), c.mor_name(f1), c.mor_name(u), c.mor_name(w)),
        |&(f, f1, _, _)| (f, f1),
        |&f| (f, f, c.id(c.src(f)), c.id(c.tgt(f))),
        |&(_, f2, u2, w2), &(f, _, u1, w1)| (f, f2, c.compose(u2, u1), c.compose(w2, w1)),
    );
    let st = two_projections(&keyed, c.clone(), c.clone(), |f| (c.src(f), c.tgt(f)), |k| (k.2, k.3));
    ArrowCat { base: c.clone(), keyed, st }
}

fn two_projections(
    keyed: &Keyed<Mor, SquareKey>,
    a: Arc<FinCat>,
    b: Arc<FinCat>,
    obj: impl Fn(Mor) -> (Obj, Obj),
    mor: impl Fn(&SquareKey) -> (Mor, Mor),
) -> TwoVarFib {
    let ends: Vec<(Obj, Obj)> = keyed.obj_keys.iter().map(|&f| obj(f)).collect();
    let arrows: Vec<(Mor, Mor)> = keyed.mor_keys.iter().map(mor).collect();
    let p1 = FinFunctor::new_unchecked(keyed.cat.clone(), a, ends.iter().map(|e| e.0).collect(), arrows.iter().map(|m| m.0).collect());
    let p2 = FinFunctor::new_unchecked(keyed.cat.clone(), b, ends.iter().map(|e| e.1).collect(), arrows.iter().map(|m| m.1).collect());
    TwoVarFib::from_components(p1, p2).expect("projections of a construction")
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum TwVariant {
    Left,
    Right,
}

/// A twisted arrow category. Objects are the morphisms of `base`, keyed
/// by themselves; morphism keys are `(f, f', u, v)` for the right variant
/// square `f = v . f' . u` from `f` to `f'` (`u: x -> x'`, `v: y' -> y`).
/// The left variant is the opposite category with the same keys, so there
/// the key `(f, f', u, v)` is a morphism from `f'` to `f`.
#[derive(Clone, Debug)]
pub struct TwistedArrowCat {
    pub variant: TwVariant,
    pub base: Arc<FinCat>,
    pub keyed: Keyed<Mor, SquareKey>,
    /// `(s, t)` into `C × C^op` (right) or `C^op × C` (left)
    pub st: TwoVarFib,
}

impl TwistedArrowCat {
    pub fn cat(&self) -> &Arc<FinCat> {
        &self.keyed.cat
    }
}

pub fn tw(c: &Arc<FinCat>, variant: TwVariant) -> TwistedArrowCat {
    let objs: Vec<Mor> = c.morphisms().collect();
    let mut mors = Vec::new();
    for f in c.morphisms() {
        for f1 in c.morphisms() {
            for &u in c.hom(c.src(f), c.src(f1)) {
                for &v in c.hom(c.tgt(f1), c.tgt(f)) {
                    if c.compose_all(&[v, f1, u]) == f {
                        mors.push((f, f1, u, v));
                    }
                }
            }
        }
    }
    let right = build_named(
        objs,
        mors,
        |&f| c.mor_name(f).to_string(),
        |&(_, _, u, v)| format!("({},{})", c.mor_name(u), c.mor_name(v)),
        |&(f, f1, u, v)| format!("({},{};{},{})", c.mor_name(f), c.mor_name(f1), c.mor_name(u), c.mor_name(v)),
        |&(f, f1, _, _)| (f, f1),
        |&f| (f, f, c.id(c.src(f)), c.id(c.tgt(f))),
        |&(_, f2, u2, v2), &(f, _, u1, v1)| (f, f2, c.compose(u2, u1), c.compose(v1, v2)),
    );
    let c_op = Arc::new(c.opposite());
    let ends = |f: Mor| (c.src(f), c.tgt(f));
    match variant {
        TwVariant::Right => {
            let st = two_projections(&right, c.clone(), c_op, ends, |k| (k.2, k.3));
            TwistedArrowCat { variant, base: c.clone(), keyed: right, st }
        }
        TwVariant::Left => {
            let cat = Arc::new(right.cat.opposite());
            let keyed = Keyed::from_parts(cat, right.obj_keys.clone(), right.mor_keys.clone());
            let st = two_projections(&keyed, c_op, c.clone(), ends, |k| (k.2, k.3));
            TwistedArrowCat { variant, base: c.clone(), keyed, st }
        }
    }
}

/// `Tw(F)`: the functor induced on twisted arrow categories (either
/// variant, the same assignment on keys).
pub fn tw_functor(f: &FinFunctor, src: &TwistedArrowCat, tgt: &TwistedArrowCat) -> FinFunctor {
    let obj = src.keyed.obj_keys.iter().map(|&m| tgt.keyed.obj(&f.mor[m])).collect();
    let mor = src
        .keyed
        .mor_keys
        .iter()
        .map(|&(a, b, u, v)| tgt.keyed.mor(&(f.mor[a], f.mor[b], f.mor[u], f.mor[v])))
        .collect();
    FinFunctor::new_unchecked(src.cat().clone(), tgt.cat().clone(), obj, mor)
}

/// The free cocartesian (`Cocartesian`) or cartesian (`Cartesian`)
/// fibration on `phi: E -> B`: `E ×_B Ar(B)`, glued along the source
/// (resp. target) and projected by the target (resp. source).
#[derive(Clone, Debug)]
pub struct FreeFib {
    pub kind: LiftKind,
    pub phi: FinFunctor,
    pub arrows: ArrowCat,
    pub pullback: Pullback,
    pub proj: FinFunctor,
    /// `E -> E ×_B Ar(B)`, `e |-> (e, id)`
    pub unit: FinFunctor,
}

pub fn free_fib(phi: &FinFunctor, kind: LiftKind) -> Result<FreeFib, FibError> {
    let cocart = match kind {
        LiftKind::Cocartesian => true,
        LiftKind::Cartesian => false,
        _ => return Err(FibError::NotAFibration("free fibrations are cartesian or cocartesian".into())),
    };
    let b = &phi.tgt;
    let arrows = arrow_cat(b);
    let (glue, out) = if cocart { (&arrows.st.p1, &arrows.st.p2) } else { (&arrows.st.p2, &arrows.st.p1) };
    let pb = pullback(phi, glue);
    let proj = out.after(&pb.to_right);
    let e = &phi.src;
    let unit_obj = e.objects().map(|x| pb.keyed.obj(&(x, b.id(phi.obj[x])))).collect();
    let unit_mor = e
        .morphisms()
        .map(|u| {
            let (s, t) = (phi.obj[e.src(u)], phi.obj[e.tgt(u)]);
            let sq = arrows.keyed.mor(&(b.id(s), b.id(t), phi.mor[u], phi.mor[u]));
            pb.keyed.mor(&(u, sq))
        })
        .collect();
    let unit = FinFunctor::new(e.clone(), pb.keyed.cat.clone(), unit_obj, unit_mor)?;
    Ok(FreeFib { kind, phi: phi.clone(), arrows, pullback: pb, proj, unit })
}

/// The unique extension of `f: E -> F` over `B` (with `q: F -> B` a
/// fibration of the matching kind) to the free fibration, sending the
/// point `(e, beta)` to the transport of `f(e)` along `beta`.
pub fn extend_to_free(free: &FreeFib, f: &FinFunctor, q: &FinFunctor) -> Result<FinFunctor, FibError> {
    let rel = Rel::new(q);
    if !rel.is_fibration(free.kind) {
        return Err(FibError::NotAFibration(format!("extension target is not a {} fibration", free.kind.name())));
    }
    let total = &free.pullback.keyed.cat;
    let target = &q.src;
    let ar = &free.arrows.keyed;
    let lift = |(x, a): (Obj, Mor)| rel.require_lift(free.kind, f.obj[x], ar.obj_keys[a]);
    let mut obj = Vec::with_capacity(total.n_obj());
    for &(x, a) in &free.pullback.keyed.obj_keys {
        let l = lift((x, a))?;
        obj.push(match free.kind {
            LiftKind::Cocartesian => target.tgt(l),
            _ => target.src(l),
        });
    }
    let mut mor = Vec::with_capacity(total.n_mor());
    for &(u, sq) in &free.pullback.keyed.mor_keys {
        let (a, a1, s, t) = ar.mor_keys[sq];
        let x = free.phi.src.src(u);
        let x1 = free.phi.src.tgt(u);
        let (l, l1) = (lift((x, a))?, lift((x1, a1))?);
        let g = match free.kind {
            // l1 . f(u) factors through l over the target component
            LiftKind::Cocartesian => rel.factor_after(l, target.compose(l1, f.mor[u]), t)?,
            _ => rel.factor_before(l1, target.compose(f.mor[u], l), s)?,
        };
        mor.push(g);
    }
    Ok(FinFunctor::new(total.clone(), target.clone(), obj, mor)?)
}

/// Both sides of the duality between free cartesian fibrations and
/// pulled-back left twisted arrows, with the equivalence if found.
#[derive(Clone, Debug)]
pub struct DualFreeReport {
    pub dual_of_free: TwoVarFib,
    pub twisted_pullback: TwoVarFib,
    pub equivalence: Option<FibEquivalence>,
}

/// Compare `D^cc(free_cart(phi))` with `E ×_B Tw^l(B)` over `B^op`.
pub fn dual_of_free_check(phi: &FinFunctor, caps: Caps) -> Result<DualFreeReport, FibError> {
    let free = free_fib(phi, LiftKind::Cartesian)?;
    let dual = dualize(&TwoVarFib::one_var(&free.proj), Factor::A, Direction::Cc)?;
    let twl = tw(&phi.tgt, TwVariant::Left);
    let pb = pullback(phi, &twl.st.p2);
    let s = twl.st.p1.after(&pb.to_right);
    let twisted = TwoVarFib::one_var(&s);
    let equivalence = fib_equivalent_with_caps(&dual, &twisted, &EdgeSpec::cocartesian(), caps)?;
    Ok(DualFreeReport { dual_of_free: dual, twisted_pullback: twisted, equivalence })
}

#[cfg(test)]
mod tests;
