//! Straightening and unstraightening over one factor, the dualisation
//! equivalences, and bounded search for equivalences of fibrations.

mod dualize;
mod equiv;

pub use dualize::{dualize, square_comparison, Direction, SquareComparison};
pub use equiv::{fib_equivalent, fib_equivalent_with_caps, Caps, EdgeSpec, FibEquivalence, Region};

use crate::fibclass::{FibAnalysis, FibError, LiftKind, Rel, TwoVarFib};
use crate::fincat::io::{functor_to_json, to_json};
use crate::fincat::{build_keyed, FinCat, FinFunctor, Keyed, Mor, NatTransf, Obj};
use serde::Serialize;
use serde_json::{json, Value};
use std::collections::BTreeMap;
use std::sync::Arc;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Variance {
    Covariant,
    Contravariant,
}

impl Variance {
    pub fn flip(self) -> Variance {
        match self {
            Variance::Covariant => Variance::Contravariant,
            Variance::Contravariant => Variance::Covariant,
        }
    }
}

/// Which factor of `A × B` to straighten over.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Factor {
    A,
    B,
}

/// A pseudofunctor out of `base` (covariant) or `base^op` (contravariant)
/// into categories over `other`. For `beta: s -> t` the transport goes
/// `F(s) -> F(t)` (covariant) or `F(t) -> F(s)` (contravariant).
#[derive(Clone, Debug)]
pub struct PseudoFunctor {
    pub base: Arc<FinCat>,
    pub other: Arc<FinCat>,
    pub variance: Variance,
    pub fibres: Vec<Arc<FinCat>>,
    pub fibre_proj: Vec<FinFunctor>,
    pub transport: Vec<FinFunctor>,
    /// `F(id_s) ⇒ id`
    pub unit: Vec<NatTransf>,
    /// keyed by `(g, f)` with `g . f` defined: covariant `F(g) F(f) ⇒ F(gf)`,
    /// contravariant `F(f) F(g) ⇒ F(gf)`
    pub comp: BTreeMap<(Mor, Mor), NatTransf>,
}

impl PseudoFunctor {
    /// Source and target fibre of the transport along `beta`.
    pub fn transport_ends(&self, beta: Mor) -> (Obj, Obj) {
        let (s, t) = (self.base.src(beta), self.base.tgt(beta));
        match self.variance {
            Variance::Covariant => (s, t),
            Variance::Contravariant => (t, s),
        }
    }

    /// Exhaustive coherence check: transports are functors over `other`,
    /// coherence data are natural isomorphisms over identities, and the
    /// associativity and unit pastings agree.
    pub fn check(&self) -> Result<(), FibError> {
        let b = &self.base;
        for beta in b.morphisms() {
            let f = &self.transport[beta];
            f.check()?;
            let (s, t) = self.transport_ends(beta);
            if *f.src != *self.fibres[s] || *f.tgt != *self.fibres[t] {
                return Err(FibError::NotAFibration(format!("transport along {} has wrong ends", b.mor_name(beta))));
            }
            if self.fibre_proj[t].after(f).mor != self.fibre_proj[s].mor {
                return Err(FibError::NotAFibration(format!("transport along {} is not over the other factor", b.mor_name(beta))));
            }
        }
        let over_ids = |t: &NatTransf, fibre: Obj| -> bool {
            t.is_iso() && t.comp.iter().all(|&m| self.other.is_identity(self.fibre_proj[fibre].mor[m]))
        };
        for s in b.objects() {
            self.unit[s].check()?;
            if !over_ids(&self.unit[s], s) {
                return Err(FibError::NotAFibration(format!("unit at {} is not an isomorphism over identities", b.obj_name(s))));
            }
        }
        for (&(g, f), mu) in &self.comp {
            mu.check()?;
            let (_, t) = self.transport_ends(b.compose(g, f));
            if !over_ids(mu, t) {
                return Err(FibError::NotAFibration(format!(
                    "composition isomorphism at ({}, {}) is not invertible over identities",
                    b.mor_name(g),
                    b.mor_name(f)
                )));
            }
        }
        // associativity: for h . g . f, both pastings into F(hgf)
        for f in b.morphisms() {
            for &g in b.out(b.tgt(f)) {
                for &h in b.out(b.tgt(g)) {
                    let (gf, hg) = (b.compose(g, f), b.compose(h, g));
                    let src_fibre = self.transport_ends(b.compose(hg, f)).0;
                    let tgt_fibre = self.transport_ends(b.compose(hg, f)).1;
                    let c = &self.fibres[tgt_fibre];
                    for x in self.fibres[src_fibre].objects() {
                        let (lhs, rhs) = match self.variance {
                            Variance::Covariant => (
                                c.compose(self.comp[&(h, gf)].comp[x], self.transport[h].mor[self.comp[&(g, f)].comp[x]]),
                                c.compose(self.comp[&(hg, f)].comp[x], self.comp[&(h, g)].comp[self.transport[f].obj[x]]),
                            ),
                            Variance::Contravariant => (
                                c.compose(self.comp[&(hg, f)].comp[x], self.transport[f].mor[self.comp[&(h, g)].comp[x]]),
                                c.compose(self.comp[&(h, gf)].comp[x], self.comp[&(g, f)].comp[self.transport[h].obj[x]]),
                            ),
                        };
                        if lhs != rhs {
                            return Err(FibError::NotAFibration(format!(
                                "associativity pasting fails at ({}, {}, {})",
                                b.mor_name(h),
                                b.mor_name(g),
                                b.mor_name(f)
                            )));
                        }
                    }
                }
            }
        }
        // unitality: comp(id, f) and comp(f, id) are determined by the units
        for f in b.morphisms() {
            let (s, t) = (b.src(f), b.tgt(f));
            let (from, to) = self.transport_ends(f);
            let c = &self.fibres[to];
            for x in self.fibres[from].objects() {
                let (left, right) = match self.variance {
                    // F(id_t) F(f) x -> F(f) x  vs  unit at F(f) x
                    Variance::Covariant => (
                        (self.comp[&(b.id(t), f)].comp[x], self.unit[t].comp[self.transport[f].obj[x]]),
                        (self.comp[&(f, b.id(s))].comp[x], self.transport[f].mor[self.unit[s].comp[x]]),
                    ),
                    Variance::Contravariant => (
                        (self.comp[&(f, b.id(s))].comp[x], self.unit[s].comp[self.transport[f].obj[x]]),
                        (self.comp[&(b.id(t), f)].comp[x], self.transport[f].mor[self.unit[t].comp[x]]),
                    ),
                };
                if left.0 != left.1 || right.0 != right.1 {
                    let _ = c;
                    return Err(FibError::NotAFibration(format!("unit pasting fails at {}", b.mor_name(f))));
                }
            }
        }
        Ok(())
    }

    /// The same data viewed as a functor out of `base^op` with the
    /// opposite variance.
    pub fn reindex_opposite(&self) -> PseudoFunctor {
        PseudoFunctor {
            base: Arc::new(self.base.opposite()),
            other: self.other.clone(),
            variance: self.variance.flip(),
            fibres: self.fibres.clone(),
            fibre_proj: self.fibre_proj.clone(),
            transport: self.transport.clone(),
            unit: self.unit.clone(),
            comp: self.comp.iter().map(|(&(g, f), mu)| ((f, g), mu.clone())).collect(),
        }
    }

    /// `b |-> F(b)^op` with the same transports; coherence components are
    /// inverted so that they point the right way in the opposites.
    pub fn fibrewise_opposite(&self) -> PseudoFunctor {
        let fibres: Vec<Arc<FinCat>> = self.fibres.iter().map(|c| Arc::new(c.opposite())).collect();
        let other = Arc::new(self.other.opposite());
        let op = |f: &FinFunctor, s: Obj, t: Obj| f.opposite_between(fibres[s].clone(), fibres[t].clone());
        let flip = |n: &NatTransf, s: Obj, t: Obj| NatTransf {
            src: op(&n.src, s, t),
            tgt: op(&n.tgt, s, t),
            comp: n.comp.iter().map(|&m| self.fibres[t].inverse(m).expect("coherence isomorphism")).collect(),
        };
        let b = &self.base;
        PseudoFunctor {
            base: b.clone(),
            other: other.clone(),
            variance: self.variance,
            fibre_proj: self.fibre_proj.iter().zip(&fibres).map(|(p, c)| p.opposite_between(c.clone(), other.clone())).collect(),
            transport: b
                .morphisms()
                .map(|m| {
                    let (s, t) = self.transport_ends(m);
                    op(&self.transport[m], s, t)
                })
                .collect(),
            unit: b.objects().map(|s| flip(&self.unit[s], s, s)).collect(),
            comp: self
                .comp
                .iter()
                .map(|(&(g, f), mu)| {
                    let (s, t) = self.transport_ends(b.compose(g, f));
                    ((g, f), flip(mu, s, t))
                })
                .collect(),
            fibres,
        }
    }

    pub fn to_json(&self) -> Value {
        let b = &self.base;
        let fibres: BTreeMap<String, Value> = b
            .objects()
            .map(|s| {
                (
                    b.obj_name(s).to_string(),
                    json!({
                        "category": to_json(&self.fibres[s]),
                        "over": functor_to_json(&self.fibre_proj[s]),
                    }),
                )
            })
            .collect();
        let transport: BTreeMap<String, Value> = b
            .morphisms()
            .map(|m| (b.mor_name(m).to_string(), serde_json::to_value(functor_to_json(&self.transport[m])).unwrap()))
            .collect();
        let comps = |t: &NatTransf| -> BTreeMap<String, String> {
            t.src
                .src
                .objects()
                .map(|x| (t.src.src.obj_name(x).to_string(), t.src.tgt.mor_name(t.comp[x]).to_string()))
                .collect()
        };
        let unit: BTreeMap<String, _> = b.objects().map(|s| (b.obj_name(s).to_string(), comps(&self.unit[s]))).collect();
        let comp: Vec<Value> = self
            .comp
            .iter()
            .map(|(&(g, f), mu)| json!({"second": b.mor_name(g), "first": b.mor_name(f), "components": comps(mu)}))
            .collect();
        json!({
            "base": to_json(b),
            "other": to_json(&self.other),
            "variance": self.variance,
            "fibres": fibres,
            "transport": transport,
            "unit_isos": unit,
            "comp_isos": comp,
        })
    }
}

/// Position of each total object (and each morphism over an identity of
/// the straightening factor) inside its fibre.
struct FibreIndex {
    fibres: Vec<(Arc<FinCat>, FinFunctor, FinFunctor)>,
    obj_pos: Vec<Obj>,
    mor_pos: Vec<Mor>,
}

impl FibreIndex {
    fn new(q: &TwoVarFib) -> FibreIndex {
        let fibres: Vec<_> = q.base_a.objects().map(|a| q.fibre_over_a(a)).collect();
        let mut obj_pos = vec![usize::MAX; q.total.n_obj()];
        let mut mor_pos = vec![usize::MAX; q.total.n_mor()];
        for (_, inc, _) in &fibres {
            for (i, &x) in inc.obj.iter().enumerate() {
                obj_pos[x] = i;
            }
            for (i, &f) in inc.mor.iter().enumerate() {
                mor_pos[f] = i;
            }
        }
        FibreIndex { fibres, obj_pos, mor_pos }
    }
}

/// Straighten `p` over the chosen factor using the fixed cleavage. The
/// fibres are the fibres over that factor, as categories over the other
/// factor; coherence isomorphisms are the unique factorisation
/// comparisons.
pub fn straighten(p: &TwoVarFib, variance: Variance, side: Factor) -> Result<PseudoFunctor, FibError> {
    let q = match side {
        Factor::A => p.clone(),
        Factor::B => p.swap(),
    };
    let an = FibAnalysis::new(&q);
    straighten_analysed(&an, variance)
}

pub(crate) fn straighten_analysed(an: &FibAnalysis, variance: Variance) -> Result<PseudoFunctor, FibError> {
    let q = &an.fib;
    let kind = match variance {
        Variance::Covariant => LiftKind::Cocartesian,
        Variance::Contravariant => LiftKind::Cartesian,
    };
    if let Some((x, beta)) = an.full.missing_lift(kind, &|m| an.mask_left[m]) {
        return Err(FibError::NotAFibration(format!(
            "no {} lift of {} at {}",
            kind.name(),
            q.base.mor_name(beta),
            q.total.obj_name(x)
        )));
    }
    let (e, a_, b_) = (&q.total, &q.base_a, &q.base_b);
    let ix = FibreIndex::new(q);
    let lift = |x: Obj, alpha: Mor| an.full.require_lift(kind, x, q.base_mor(alpha, b_.id(q.p2.obj[x])));
    let over = |a: Obj, f: Mor| q.base_mor(a_.id(a), q.p2.mor[f]);

    let mut transport = Vec::with_capacity(a_.n_mor());
    for alpha in a_.morphisms() {
        let (s, t) = (a_.src(alpha), a_.tgt(alpha));
        let (from, to) = match variance {
            Variance::Covariant => (s, t),
            Variance::Contravariant => (t, s),
        };
        let (src_cat, src_inc, _) = &ix.fibres[from];
        let tgt_cat = &ix.fibres[to].0;
        let mut obj = Vec::with_capacity(src_cat.n_obj());
        let mut lifts = Vec::with_capacity(src_cat.n_obj());
        for &x in &src_inc.obj {
            let l = lift(x, alpha)?;
            lifts.push(l);
            obj.push(ix.obj_pos[match variance {
                Variance::Covariant => e.tgt(l),
                Variance::Contravariant => e.src(l),
            }]);
        }
        let mut mor = Vec::with_capacity(src_cat.n_mor());
        for &f in &src_inc.mor {
            let (lx, ly) = (lifts[ix.obj_pos[e.src(f)]], lifts[ix.obj_pos[e.tgt(f)]]);
            let g = match variance {
                Variance::Covariant => an.full.factor_after(lx, e.compose(ly, f), over(to, f))?,
                Variance::Contravariant => an.full.factor_before(ly, e.compose(f, lx), over(to, f))?,
            };
            mor.push(ix.mor_pos[g]);
        }
        transport.push(FinFunctor::new_unchecked(src_cat.clone(), tgt_cat.clone(), obj, mor));
    }

    let unit: Vec<NatTransf> = a_
        .objects()
        .map(|s| {
            let t = &transport[a_.id(s)];
            NatTransf {
                src: t.clone(),
                tgt: FinFunctor::identity(&ix.fibres[s].0),
                comp: ix.fibres[s].0.objects().map(|x| ix.fibres[s].0.id(x)).collect(),
            }
        })
        .collect();

    let mut comp = BTreeMap::new();
    for f in a_.morphisms() {
        for &g in a_.out(a_.tgt(f)) {
            let gf = a_.compose(g, f);
            let (from, to) = match variance {
                Variance::Covariant => (a_.src(f), a_.tgt(g)),
                Variance::Contravariant => (a_.tgt(g), a_.src(f)),
            };
            let (src_cat, src_inc, _) = &ix.fibres[from];
            let mut comps = Vec::with_capacity(src_cat.n_obj());
            for &x in &src_inc.obj {
                let m = match variance {
                    Variance::Covariant => {
                        let l1 = lift(x, f)?;
                        let l2 = lift(e.tgt(l1), g)?;
                        let l12 = lift(x, gf)?;
                        an.full.factor_after(e.compose(l2, l1), l12, over(to, e.id(e.tgt(l12))))?
                    }
                    Variance::Contravariant => {
                        let c1 = lift(x, g)?;
                        let c2 = lift(e.src(c1), f)?;
                        let c12 = lift(x, gf)?;
                        an.full.factor_before(c12, e.compose(c1, c2), over(to, e.id(e.src(c12))))?
                    }
                };
                comps.push(ix.mor_pos[m]);
            }
            let src = match variance {
                Variance::Covariant => transport[g].after(&transport[f]),
                Variance::Contravariant => transport[f].after(&transport[g]),
            };
            comp.insert((g, f), NatTransf { src, tgt: transport[gf].clone(), comp: comps });
        }
    }

    let pf = PseudoFunctor {
        base: a_.clone(),
        other: b_.clone(),
        variance,
        fibres: ix.fibres.iter().map(|f| f.0.clone()).collect(),
        fibre_proj: ix.fibres.iter().map(|f| f.2.clone()).collect(),
        transport,
        unit,
        comp,
    };
    pf.check()?;
    Ok(pf)
}

/// Morphism key of the Grothendieck construction: base arrow, the fibre
/// object at the end not determined by the fibre arrow (source when
/// covariant, target when contravariant), and the fibre arrow.
pub type GrothMor = (Mor, Obj, Mor);

/// The Grothendieck construction with its keys; `fib` lies over
/// `base × other`.
#[derive(Clone, Debug)]
pub struct Unstraightened {
    pub fib: TwoVarFib,
    pub keys: Keyed<(Obj, Obj), GrothMor>,
}

/// The Grothendieck construction of `pf`. Objects are `(s, x)`; a
/// morphism over `beta: s -> t` is `u: F(beta) x -> y` (covariant) or
/// `u: x -> F(beta) y` (contravariant); composition is strictified
/// through the composition isomorphisms.
pub fn unstraighten(pf: &PseudoFunctor) -> Result<Unstraightened, FibError> {
    let b = &pf.base;
    let mut objs = Vec::new();
    for s in b.objects() {
        for x in pf.fibres[s].objects() {
            objs.push((s, x));
        }
    }
    let mut mors: Vec<GrothMor> = Vec::new();
    for beta in b.morphisms() {
        let (s, t) = (b.src(beta), b.tgt(beta));
        let tr = &pf.transport[beta];
        match pf.variance {
            Variance::Covariant => {
                for x in pf.fibres[s].objects() {
                    for &u in pf.fibres[t].out(tr.obj[x]) {
                        mors.push((beta, x, u));
                    }
                }
            }
            Variance::Contravariant => {
                for y in pf.fibres[t].objects() {
                    for &u in pf.fibres[s].inn(tr.obj[y]) {
                        mors.push((beta, y, u));
                    }
                }
            }
        }
    }
    let ends = |&(beta, x, u): &GrothMor| -> ((Obj, Obj), (Obj, Obj)) {
        let (s, t) = (b.src(beta), b.tgt(beta));
        match pf.variance {
            Variance::Covariant => ((s, x), (t, pf.fibres[t].tgt(u))),
            Variance::Contravariant => ((s, pf.fibres[s].src(u)), (t, x)),
        }
    };
    let ident = |&(s, x): &(Obj, Obj)| -> GrothMor {
        let c = &pf.fibres[s];
        let unit = pf.unit[s].comp[x];
        match pf.variance {
            Variance::Covariant => (b.id(s), x, unit),
            Variance::Contravariant => (b.id(s), x, c.inverse(unit).expect("unit is invertible")),
        }
    };
    let compose = |&(g, y, v): &GrothMor, &(f, x, u): &GrothMor| -> GrothMor {
        let gf = b.compose(g, f);
        match pf.variance {
            Variance::Covariant => {
                let c = &pf.fibres[b.tgt(g)];
                let mu = pf.comp[&(g, f)].comp[x];
                let mu_inv = c.inverse(mu).expect("composition isomorphism");
                (gf, x, c.compose_all(&[v, pf.transport[g].mor[u], mu_inv]))
            }
            Variance::Contravariant => {
                let c = &pf.fibres[b.src(f)];
                let mu = pf.comp[&(g, f)].comp[y];
                (gf, y, c.compose_all(&[mu, pf.transport[f].mor[v], u]))
            }
        }
    };

    let plain_objs = {
        let mut names: Vec<&str> = objs.iter().map(|&(s, x)| pf.fibres[s].obj_name(x)).collect();
        names.sort();
        names.windows(2).all(|w| w[0] != w[1])
    };
    let obj_name = |&(s, x): &(Obj, Obj)| -> String {
        if plain_objs {
            pf.fibres[s].obj_name(x).to_string()
        } else {
            format!("({},{})", b.obj_name(s), pf.fibres[s].obj_name(x))
        }
    };
    let fibre_of_u = |beta: Mor| match pf.variance {
        Variance::Covariant => b.tgt(beta),
        Variance::Contravariant => b.src(beta),
    };
    let end_fibre = |beta: Mor| match pf.variance {
        Variance::Covariant => b.src(beta),
        Variance::Contravariant => b.tgt(beta),
    };
    let styles: [&dyn Fn(&GrothMor) -> String; 3] = [
        &|&(beta, _, u)| {
            let un = pf.fibres[fibre_of_u(beta)].mor_name(u);
            if b.is_identity(beta) { un.to_string() } else { format!("({},{})", b.mor_name(beta), un) }
        },
        &|&(beta, x, u)| {
            let un = pf.fibres[fibre_of_u(beta)].mor_name(u);
            if b.is_identity(beta) {
                un.to_string()
            } else {
                format!("({},{},{})", b.mor_name(beta), pf.fibres[end_fibre(beta)].obj_name(x), un)
            }
        },
        &|&(beta, x, u)| {
            format!(
                "({},{},{})",
                b.mor_name(beta),
                pf.fibres[end_fibre(beta)].obj_name(x),
                pf.fibres[fibre_of_u(beta)].mor_name(u)
            )
        },
    ];
    let mut keyed = None;
    for style in styles {
        let mut names: Vec<String> = mors.iter().map(style).collect();
        let mut onames: Vec<String> = objs.iter().map(obj_name).collect();
        names.sort();
        onames.sort();
        if names.windows(2).any(|w| w[0] == w[1]) || onames.windows(2).any(|w| w[0] == w[1]) {
            continue;
        }
        keyed = Some(build_keyed(objs.clone(), mors.clone(), obj_name, style, ends, ident, compose)?);
        break;
    }
    let keys = keyed.ok_or_else(|| FibError::NotAFibration("cannot name the Grothendieck construction".into()))?;
    keys.cat.check_laws()?;

    let other = &pf.other;
    let p1 = FinFunctor::new_unchecked(
        keys.cat.clone(),
        b.clone(),
        keys.obj_keys.iter().map(|k| k.0).collect(),
        keys.mor_keys.iter().map(|k| k.0).collect(),
    );
    let p2 = FinFunctor::new_unchecked(
        keys.cat.clone(),
        other.clone(),
        keys.obj_keys.iter().map(|&(s, x)| pf.fibre_proj[s].obj[x]).collect(),
        keys.mor_keys.iter().map(|&(beta, _, u)| pf.fibre_proj[fibre_of_u(beta)].mor[u]).collect(),
    );
    let fib = TwoVarFib::from_components(p1, p2)?;
    Ok(Unstraightened { fib, keys })
}

/// Every transport of the covariant straightening of `p` over `A` maps
/// cocartesian edges of the fibres (over `B`) to cocartesian edges.
pub fn transports_preserve_cocartesian(p: &TwoVarFib) -> Result<bool, FibError> {
    let pf = straighten(p, Variance::Covariant, Factor::A)?;
    let rels: Vec<Rel> = pf.fibre_proj.iter().map(Rel::new).collect();
    for alpha in pf.base.morphisms() {
        let (s, t) = pf.transport_ends(alpha);
        let tr = &pf.transport[alpha];
        for u in pf.fibres[s].morphisms() {
            if rels[s].cocartesian[u] && !rels[t].cocartesian[tr.mor[u]] {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests;
