use super::{tw, tw_functor, TwVariant, TwistedArrowCat};
use crate::fibclass::{FibError, LiftKind, Rel, TwoVarFib};
use crate::fincat::{pullback, FinCat, FinFunctor, Mor, NatTransf, Obj, Pullback};
use crate::grothendieck::{straighten, unstraighten, Factor, PseudoFunctor, Unstraightened, Variance};
use std::sync::Arc;

/// The relative twisted arrow category `Tw^l_B(E)` of a cocartesian
/// fibration `E -> B`, the fibrewise opposite `(E^op)^v`, and the left
/// fibration `Tw^l_B(E) -> (E^op)^v ×_B E`.
#[derive(Clone, Debug)]
pub struct FibredTw {
    pub proj: FinFunctor,
    /// straightening of `proj` (fibres over a point)
    pub pf: PseudoFunctor,
    /// fibre inclusions `E_b -> E`
    pub inc: Vec<FinFunctor>,
    /// `(E^op)^v`, morphism keys `(beta, x, a)` with `a: x' -> beta_! x`
    pub dual_op: Unstraightened,
    /// `(E^op)^v ×_B E`
    pub pair: Pullback,
    pub tw_fibres: Vec<TwistedArrowCat>,
    /// `Tw^l_B(E)`, morphism keys `(beta, phi, w)` with `w` in
    /// `Tw^l(E_b')` from `beta_! phi`
    pub tw: Unstraightened,
    pub to_pair: FinFunctor,
    rel: Rel,
}

impl FibredTw {
    pub fn new(proj: &FinFunctor) -> Result<FibredTw, FibError> {
        let one = TwoVarFib::one_var(proj);
        let pf = straighten(&one, Variance::Covariant, Factor::A)?;
        let b = pf.base.clone();
        let inc: Vec<FinFunctor> = b.objects().map(|s| one.fibre_over_a(s).1).collect();
        let dual_op = unstraighten(&pf.fibrewise_opposite())?;
        let pair = pullback(&dual_op.fib.p1, proj);

        let tw_fibres: Vec<TwistedArrowCat> = pf.fibres.iter().map(|c| tw(c, TwVariant::Left)).collect();
        let pf_tw = twisted_pseudofunctor(&pf, &tw_fibres);
        let twb = unstraighten(&pf_tw)?;

        let rel = Rel::new(&one.proj);
        let lift = |y: Obj, beta: Mor| rel.require_lift(LiftKind::Cocartesian, y, one.base_mor(beta, 0));
        let e = &proj.src;
        let mut obj = Vec::with_capacity(twb.keys.obj_keys.len());
        for &(s, phi) in &twb.keys.obj_keys {
            let c = &pf.fibres[s];
            let x = dual_op.keys.obj(&(s, c.src(phi)));
            obj.push(pair.keyed.obj(&(x, inc[s].obj[c.tgt(phi)])));
        }
        let mut mor = Vec::with_capacity(twb.keys.mor_keys.len());
        for &(beta, phi, w) in &twb.keys.mor_keys {
            let (s, t) = (b.src(beta), b.tgt(beta));
            let (_, _, u, v) = tw_fibres[t].keyed.mor_keys[w];
            let a = dual_op.keys.mor(&(beta, pf.fibres[s].src(phi), u));
            let y = inc[s].obj[pf.fibres[s].tgt(phi)];
            let c = e.compose(inc[t].mor[v], lift(y, beta)?);
            mor.push(pair.keyed.mor(&(a, c)));
        }
        let to_pair = FinFunctor::new(twb.keys.cat.clone(), pair.keyed.cat.clone(), obj, mor)?;
        Ok(FibredTw { proj: proj.clone(), pf, inc, dual_op, pair, tw_fibres, tw: twb, to_pair, rel })
    }

    pub fn base(&self) -> &Arc<FinCat> {
        &self.pf.base
    }

    /// The chosen cocartesian lift of `beta` at `y`.
    pub fn lift(&self, y: Obj, beta: Mor) -> Result<Mor, FibError> {
        // the base of `rel` is `B × [0]`, indexed like `B`
        self.rel.require_lift(LiftKind::Cocartesian, y, beta)
    }

    /// `(E^op)^v ×_B E -> B`
    pub fn pair_proj(&self) -> FinFunctor {
        self.proj.after(&self.pair.to_right)
    }
}

/// `b |-> Tw^l(F(b))` with transports and coherence induced from `pf`.
fn twisted_pseudofunctor(pf: &PseudoFunctor, tws: &[TwistedArrowCat]) -> PseudoFunctor {
    let b = &pf.base;
    let point = Arc::new(FinCat::point());
    let transport: Vec<FinFunctor> = b
        .morphisms()
        .map(|m| {
            let (s, t) = pf.transport_ends(m);
            tw_functor(&pf.transport[m], &tws[s], &tws[t])
        })
        .collect();
    // component at phi: x -> y of an isomorphism n: G => H is the twisted
    // square from G(phi) to H(phi) given by (n_x^-1, n_y)
    let lift_iso = |n: &NatTransf, src: FinFunctor, tgt: FinFunctor, s: Obj, t: Obj| -> NatTransf {
        let (cs, ct) = (&pf.fibres[s], &pf.fibres[t]);
        let comp = cs
            .morphisms()
            .map(|phi| {
                let (x, y) = (cs.src(phi), cs.tgt(phi));
                let key = (n.tgt.mor[phi], n.src.mor[phi], ct.inverse(n.comp[x]).unwrap(), n.comp[y]);
                tws[t].keyed.mor(&key)
            })
            .collect();
        NatTransf { src, tgt, comp }
    };
    let unit = b
        .objects()
        .map(|s| {
            let src = transport[b.id(s)].clone();
            lift_iso(&pf.unit[s], src, FinFunctor::identity(tws[s].cat()), s, s)
        })
        .collect();
    let comp = pf
        .comp
        .iter()
        .map(|(&(g, f), mu)| {
            let (s, t) = pf.transport_ends(b.compose(g, f));
            let src = match pf.variance {
                Variance::Covariant => transport[g].after(&transport[f]),
                Variance::Contravariant => transport[f].after(&transport[g]),
            };
            let tgt = transport[b.compose(g, f)].clone();
            ((g, f), lift_iso(mu, src, tgt, s, t))
        })
        .collect();
    PseudoFunctor {
        base: b.clone(),
        other: point.clone(),
        variance: pf.variance,
        fibres: tws.iter().map(|t| t.cat().clone()).collect(),
        fibre_proj: tws.iter().map(|t| FinFunctor::to_point(t.cat(), &point)).collect(),
        transport,
        unit,
        comp,
    }
}

/// A left fibration `total -> target` extracted from `E -> [1] × B`.
#[derive(Clone, Debug)]
pub struct Correspondence {
    pub total: Arc<FinCat>,
    /// `(E_0^op)^v ×_B E_1`
    pub target: Arc<FinCat>,
    pub projection: FinFunctor,
    pub left_fibration: bool,
}

/// `corr_B(E)`: the part of `Tw^l_B(E)` over `(E_0^op)^v ×_B E_1`, where
/// `E -> [1] × B` is cocartesian over `B` along identities of `[1]`.
pub fn corr(q: &TwoVarFib) -> Result<Correspondence, FibError> {
    if q.base_a.n_obj() != 2 || q.base_a.hom(0, 1).len() != 1 || q.base_a.n_mor() != 3 {
        return Err(FibError::NotAFibration("correspondences need E -> [1] × B".into()));
    }
    let ft = FibredTw::new(&q.p2)?;
    let side = |x: Obj| q.p1.obj[x];
    let pair = &ft.pair.keyed;
    let pair_objs: Vec<Obj> = pair
        .cat
        .objects()
        .filter(|&o| {
            let (d, y) = pair.obj_keys[o];
            let (s, x) = ft.dual_op.keys.obj_keys[d];
            side(ft.inc[s].obj[x]) == 0 && side(y) == 1
        })
        .collect();
    let tw_objs: Vec<Obj> = ft.tw.keys.cat.objects().filter(|&o| pair_objs.contains(&ft.to_pair.obj[o])).collect();
    let (total, tw_inc) = ft.tw.keys.cat.full_subcategory(&tw_objs);
    let (target, pair_inc) = pair.cat.full_subcategory(&pair_objs);
    let mut obj_back = vec![usize::MAX; pair.cat.n_obj()];
    for (i, &o) in pair_inc.obj.iter().enumerate() {
        obj_back[o] = i;
    }
    let mut mor_back = vec![usize::MAX; pair.cat.n_mor()];
    for (i, &m) in pair_inc.mor.iter().enumerate() {
        mor_back[m] = i;
    }
    let projection = FinFunctor::new(
        total.clone(),
        target.clone(),
        tw_inc.obj.iter().map(|&o| obj_back[ft.to_pair.obj[o]]).collect(),
        tw_inc.mor.iter().map(|&m| mor_back[ft.to_pair.mor[m]]).collect(),
    )?;
    let rel = Rel::new(&projection);
    let left_fibration = rel.is_fibration(LiftKind::Cocartesian) && rel.cocartesian.iter().all(|&c| c);
    Ok(Correspondence { total, target, projection, left_fibration })
}
