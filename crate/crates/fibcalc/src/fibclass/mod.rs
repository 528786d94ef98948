//! Edge classes, chosen lifts and the taxonomy of functors into a product
//! `A × B`.

mod crosscheck;
mod interpolate;
pub mod io;
mod localize;
mod shapes;
mod taxonomy;

pub use crosscheck::{cross_check, CrossCheck};
pub use interpolate::{interpolating_edges, InterpolationDiagram, Mode, Shape};
pub use localize::{fibred_localization_certificate, FibredCertificate};
pub use shapes::{q_fibration, q_prime_fibration};
pub use taxonomy::{classify, FibAnalysis, FibTaxonomy, Witness};

use crate::fincat::{CatError, FinCat, FinFunctor, Mor, Obj};
use serde::Serialize;
use std::collections::HashSet;
use std::sync::Arc;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FibError {
    #[error("equivalent criteria disagree for {flag}: {detail}")]
    InconsistentCriteria { flag: String, detail: String },
    #[error("no {kind} lift of {base} at {object}")]
    NoLift { kind: String, object: String, base: String },
    #[error("{count} factorisations of {mor} through {through} (expected exactly one)")]
    NonUniqueFactorisation { mor: String, through: String, count: usize },
    #[error("not a fibration of the required kind: {0}")]
    NotAFibration(String),
    #[error("unknown morphism {0}")]
    UnknownMorphism(String),
    #[error("the two fibrations lie over different bases")]
    BaseMismatch,
    #[error("{which} has {objects} objects and {morphisms} morphisms, beyond the search caps {cap_objects}/{cap_morphisms}")]
    SearchCapExceeded { which: String, objects: usize, morphisms: usize, cap_objects: usize, cap_morphisms: usize },
    #[error("invalid caps {0:?}: expected OBJECTS,MORPHISMS")]
    InvalidCaps(String),
    #[error(transparent)]
    Cat(#[from] CatError),
}

/// A functor `p = (p1, p2): E -> A × B`.
#[derive(Clone, Debug)]
pub struct TwoVarFib {
    pub total: Arc<FinCat>,
    pub base_a: Arc<FinCat>,
    pub base_b: Arc<FinCat>,
    /// `FinCat::product(base_a, base_b)`
    pub base: Arc<FinCat>,
    pub proj: FinFunctor,
    pub p1: FinFunctor,
    pub p2: FinFunctor,
}

impl TwoVarFib {
    pub fn from_components(p1: FinFunctor, p2: FinFunctor) -> Result<TwoVarFib, FibError> {
        if !Arc::ptr_eq(&p1.src, &p2.src) && p1.src != p2.src {
            return Err(FibError::NotAFibration("components have different sources".into()));
        }
        p1.check()?;
        p2.check()?;
        let base = Arc::new(FinCat::product(&p1.tgt, &p2.tgt));
        let proj = FinFunctor::pair(&p1, &p2, base.clone());
        Ok(TwoVarFib {
            total: p1.src.clone(),
            base_a: p1.tgt.clone(),
            base_b: p2.tgt.clone(),
            base,
            proj,
            p1,
            p2,
        })
    }

    /// `proj` must land in a category equal to `FinCat::product(a, b)`.
    pub fn new(proj: FinFunctor, a: Arc<FinCat>, b: Arc<FinCat>) -> Result<TwoVarFib, FibError> {
        let base = Arc::new(FinCat::product(&a, &b));
        if *proj.tgt != *base {
            return Err(FibError::NotAFibration("target is not the product of the bases".into()));
        }
        let proj = FinFunctor::new(proj.src.clone(), base.clone(), proj.obj, proj.mor)?;
        let (q1, q2) = FinFunctor::projections(&a, &b, &base);
        let p1 = q1.after(&proj);
        let p2 = q2.after(&proj);
        Ok(TwoVarFib { total: proj.src.clone(), base_a: a, base_b: b, base, proj, p1, p2 })
    }

    /// A one-variable functor `p: E -> S`, viewed over `S × [0]`.
    pub fn one_var(p: &FinFunctor) -> TwoVarFib {
        let pt = Arc::new(FinCat::point());
        let p2 = FinFunctor::to_point(&p.src, &pt);
        TwoVarFib::from_components(p.clone(), p2).expect("valid functor")
    }

    pub fn split_obj(&self, o: Obj) -> (Obj, Obj) {
        (o / self.base_b.n_obj(), o % self.base_b.n_obj())
    }
    pub fn split_mor(&self, m: Mor) -> (Mor, Mor) {
        (m / self.base_b.n_mor(), m % self.base_b.n_mor())
    }
    pub fn base_obj(&self, a: Obj, b: Obj) -> Obj {
        a * self.base_b.n_obj() + b
    }
    pub fn base_mor(&self, u: Mor, v: Mor) -> Mor {
        u * self.base_b.n_mor() + v
    }

    fn mask(&self, keep: impl Fn(Mor, Mor) -> bool) -> Vec<bool> {
        self.base.morphisms().map(|m| {
            let (u, v) = self.split_mor(m);
            keep(u, v)
        })
        .collect()
    }
    /// `A × ιB`
    pub fn mask_left(&self) -> Vec<bool> {
        self.mask(|_, v| self.base_b.is_iso(v))
    }
    /// `ιA × B`
    pub fn mask_right(&self) -> Vec<bool> {
        self.mask(|u, _| self.base_a.is_iso(u))
    }
    /// Morphisms `(id, v)`: the union of the fibres over objects of `A`.
    pub fn mask_fibres_a(&self) -> Vec<bool> {
        self.mask(|u, _| self.base_a.is_identity(u))
    }
    /// Morphisms `(u, id)`: the union of the fibres over objects of `B`.
    pub fn mask_fibres_b(&self) -> Vec<bool> {
        self.mask(|_, v| self.base_b.is_identity(v))
    }

    /// `(p2, p1): E -> B × A`.
    pub fn swap(&self) -> TwoVarFib {
        TwoVarFib::from_components(self.p2.clone(), self.p1.clone()).expect("valid components")
    }

    /// `p^op: E^op -> A^op × B^op`.
    pub fn opposite(&self) -> TwoVarFib {
        let e = Arc::new(self.total.opposite());
        let a = Arc::new(self.base_a.opposite());
        let b = Arc::new(self.base_b.opposite());
        TwoVarFib::from_components(
            self.p1.opposite_between(e.clone(), a),
            self.p2.opposite_between(e, b),
        )
        .expect("opposite of a functor")
    }

    pub fn objects_over(&self, a: Obj, b: Obj) -> Vec<Obj> {
        let s = self.base_obj(a, b);
        self.total.objects().filter(|&x| self.proj.obj[x] == s).collect()
    }

    /// The fibre over `(a, b)` with its inclusion.
    pub fn fibre(&self, a: Obj, b: Obj) -> (Arc<FinCat>, FinFunctor) {
        let objs = self.objects_over(a, b);
        let id = self.base.id(self.base_obj(a, b));
        let mors: Vec<Mor> = self.total.morphisms().filter(|&f| self.proj.mor[f] == id).collect();
        self.total.subcategory(&objs, &mors)
    }

    /// The fibre `E_a` over `a ∈ A`, its inclusion and its functor to `B`.
    pub fn fibre_over_a(&self, a: Obj) -> (Arc<FinCat>, FinFunctor, FinFunctor) {
        let objs: Vec<Obj> = self.total.objects().filter(|&x| self.p1.obj[x] == a).collect();
        let ida = self.base_a.id(a);
        let mors: Vec<Mor> = self.total.morphisms().filter(|&f| self.p1.mor[f] == ida).collect();
        let (cat, inc) = self.total.subcategory(&objs, &mors);
        let to_b = self.p2.after(&inc);
        (cat, inc, to_b)
    }

    /// The fibre `E_b` over `b ∈ B`, its inclusion and its functor to `A`.
    pub fn fibre_over_b(&self, b: Obj) -> (Arc<FinCat>, FinFunctor, FinFunctor) {
        let objs: Vec<Obj> = self.total.objects().filter(|&x| self.p2.obj[x] == b).collect();
        let idb = self.base_b.id(b);
        let mors: Vec<Mor> = self.total.morphisms().filter(|&f| self.p2.mor[f] == idb).collect();
        let (cat, inc) = self.total.subcategory(&objs, &mors);
        let to_a = self.p1.after(&inc);
        (cat, inc, to_a)
    }
}

/// The four edge flags of a single morphism relative to a functor.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct EdgeClass {
    pub cartesian: bool,
    pub cocartesian: bool,
    pub locally_cartesian: bool,
    pub locally_cocartesian: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum LiftKind {
    Cartesian,
    Cocartesian,
    LocallyCartesian,
    LocallyCocartesian,
}

impl LiftKind {
    fn covariant(self) -> bool {
        matches!(self, LiftKind::Cocartesian | LiftKind::LocallyCocartesian)
    }
    pub fn name(self) -> &'static str {
        match self {
            LiftKind::Cartesian => "cartesian",
            LiftKind::Cocartesian => "cocartesian",
            LiftKind::LocallyCartesian => "locally cartesian",
            LiftKind::LocallyCocartesian => "locally cocartesian",
        }
    }
}

/// A functor `p: E -> S` restricted to the preimage of a wide subcategory
/// of `S` (given as a morphism mask). Edge flags are computed eagerly for
/// every morphism of `E`; morphisms outside the preimage carry no flags.
#[derive(Clone, Debug)]
pub struct Rel {
    pub p: FinFunctor,
    mask: Option<Vec<bool>>,
    pub cartesian: Vec<bool>,
    pub cocartesian: Vec<bool>,
    pub locally_cartesian: Vec<bool>,
    pub locally_cocartesian: Vec<bool>,
}

impl Rel {
    pub fn new(p: &FinFunctor) -> Rel {
        Rel::build(p.clone(), None)
    }

    pub fn restricted(p: &FinFunctor, mask: Vec<bool>) -> Rel {
        Rel::build(p.clone(), Some(mask))
    }

    fn build(p: FinFunctor, mask: Option<Vec<bool>>) -> Rel {
        let mut r = Rel {
            p,
            mask,
            cartesian: Vec::new(),
            cocartesian: Vec::new(),
            locally_cartesian: Vec::new(),
            locally_cocartesian: Vec::new(),
        };
        let n = r.p.src.n_mor();
        let (mut c, mut cc, mut lc, mut lcc) = (vec![false; n], vec![false; n], vec![false; n], vec![false; n]);
        for e in 0..n {
            if r.keeps(e) {
                c[e] = r.check_cartesian(e);
                cc[e] = r.check_cocartesian(e);
                lc[e] = r.check_locally_cartesian(e);
                lcc[e] = r.check_locally_cocartesian(e);
            }
        }
        r.cartesian = c;
        r.cocartesian = cc;
        r.locally_cartesian = lc;
        r.locally_cocartesian = lcc;
        r
    }

    pub fn total(&self) -> &Arc<FinCat> {
        &self.p.src
    }
    pub fn base(&self) -> &Arc<FinCat> {
        &self.p.tgt
    }

    pub fn keeps_base(&self, k: Mor) -> bool {
        self.mask.as_ref().is_none_or(|m| m[k])
    }
    pub fn keeps(&self, e: Mor) -> bool {
        self.keeps_base(self.p.mor[e])
    }

    pub fn flags(&self, kind: LiftKind) -> &[bool] {
        match kind {
            LiftKind::Cartesian => &self.cartesian,
            LiftKind::Cocartesian => &self.cocartesian,
            LiftKind::LocallyCartesian => &self.locally_cartesian,
            LiftKind::LocallyCocartesian => &self.locally_cocartesian,
        }
    }

    pub fn edge_class(&self, e: Mor) -> EdgeClass {
        EdgeClass {
            cartesian: self.cartesian[e],
            cocartesian: self.cocartesian[e],
            locally_cartesian: self.locally_cartesian[e],
            locally_cocartesian: self.locally_cocartesian[e],
        }
    }

    /// `Hom(x, y) -> Hom(x, z) ×_{Hom(px, pz)} Hom(px, py)` is a bijection.
    fn check_cartesian(&self, e: Mor) -> bool {
        let (x_, s) = (&*self.p.src, &*self.p.tgt);
        let (y, z) = (x_.src(e), x_.tgt(e));
        let pe = self.p.mor[e];
        for x in x_.objects() {
            let mut seen = HashSet::new();
            for &g in x_.hom(x, y) {
                if self.keeps(g) && !seen.insert((x_.compose(e, g), self.p.mor[g])) {
                    return false;
                }
            }
            let (px, py) = (self.p.obj[x], self.p.obj[y]);
            let mut count = 0;
            for &h in x_.hom(x, z) {
                if !self.keeps(h) {
                    continue;
                }
                let ph = self.p.mor[h];
                count += s.hom(px, py).iter().filter(|&&k| self.keeps_base(k) && s.compose(pe, k) == ph).count();
            }
            if count != seen.len() {
                return false;
            }
        }
        true
    }

    /// `Hom(y, z) -> Hom(x, z) ×_{Hom(px, pz)} Hom(py, pz)` is a bijection.
    fn check_cocartesian(&self, e: Mor) -> bool {
        let (x_, s) = (&*self.p.src, &*self.p.tgt);
        let (x, y) = (x_.src(e), x_.tgt(e));
        let pe = self.p.mor[e];
        for z in x_.objects() {
            let mut seen = HashSet::new();
            for &g in x_.hom(y, z) {
                if self.keeps(g) && !seen.insert((x_.compose(g, e), self.p.mor[g])) {
                    return false;
                }
            }
            let (py, pz) = (self.p.obj[y], self.p.obj[z]);
            let mut count = 0;
            for &h in x_.hom(x, z) {
                if !self.keeps(h) {
                    continue;
                }
                let ph = self.p.mor[h];
                count += s.hom(py, pz).iter().filter(|&&k| self.keeps_base(k) && s.compose(k, pe) == ph).count();
            }
            if count != seen.len() {
                return false;
            }
        }
        true
    }

    /// Cartesian in the pullback along `p(e): [1] -> S`.
    fn check_locally_cartesian(&self, e: Mor) -> bool {
        let (x_, s) = (&*self.p.src, &*self.p.tgt);
        let (y, z) = (x_.src(e), x_.tgt(e));
        let pe = self.p.mor[e];
        let py = self.p.obj[y];
        let idpy = s.id(py);
        for x in x_.objects().filter(|&x| self.p.obj[x] == py) {
            let mut seen = HashSet::new();
            for &g in x_.hom(x, y) {
                if self.p.mor[g] == idpy && !seen.insert(x_.compose(e, g)) {
                    return false;
                }
            }
            let count = x_.hom(x, z).iter().filter(|&&h| self.p.mor[h] == pe).count();
            if count != seen.len() {
                return false;
            }
        }
        true
    }

    /// Cocartesian in the pullback along `p(e): [1] -> S`.
    fn check_locally_cocartesian(&self, e: Mor) -> bool {
        let (x_, s) = (&*self.p.src, &*self.p.tgt);
        let (x, y) = (x_.src(e), x_.tgt(e));
        let pe = self.p.mor[e];
        let py = self.p.obj[y];
        let idpy = s.id(py);
        for z in x_.objects().filter(|&z| self.p.obj[z] == py) {
            let mut seen = HashSet::new();
            for &g in x_.hom(y, z) {
                if self.p.mor[g] == idpy && !seen.insert(x_.compose(g, e)) {
                    return false;
                }
            }
            let count = x_.hom(x, z).iter().filter(|&&h| self.p.mor[h] == pe).count();
            if count != seen.len() {
                return false;
            }
        }
        true
    }

    /// The chosen lift of `beta` of the given kind: starting at `end` for
    /// the cocartesian kinds, ending at `end` for the cartesian ones. Over
    /// an identity the identity is chosen; otherwise the lift with the
    /// least free endpoint, then the least identifier.
    pub fn lift(&self, kind: LiftKind, end: Obj, beta: Mor) -> Option<Mor> {
        let e_ = &*self.p.src;
        let s = &*self.p.tgt;
        if !self.keeps_base(beta) {
            return None;
        }
        let anchored = if kind.covariant() { s.src(beta) } else { s.tgt(beta) };
        if self.p.obj[end] != anchored {
            return None;
        }
        let flags = self.flags(kind);
        if s.is_identity(beta) && flags[e_.id(end)] {
            return Some(e_.id(end));
        }
        let (cands, free): (&[Mor], fn(&FinCat, Mor) -> Obj) = if kind.covariant() {
            (e_.out(end), |c, f| c.tgt(f))
        } else {
            (e_.inn(end), |c, f| c.src(f))
        };
        cands
            .iter()
            .copied()
            .filter(|&f| self.p.mor[f] == beta && flags[f])
            .min_by_key(|&f| (e_.obj_rank(free(e_, f)), e_.mor_rank(f)))
    }

    /// As `lift`, with a `NoLift` error.
    pub fn require_lift(&self, kind: LiftKind, end: Obj, beta: Mor) -> Result<Mor, FibError> {
        self.lift(kind, end, beta).ok_or_else(|| FibError::NoLift {
            kind: kind.name().into(),
            object: self.p.src.obj_name(end).into(),
            base: self.p.tgt.mor_name(beta).into(),
        })
    }

    /// First `(x, beta)` with `beta` selected by `over` (and in the mask)
    /// for which no lift of the given kind exists.
    pub fn missing_lift(&self, kind: LiftKind, over: &dyn Fn(Mor) -> bool) -> Option<(Obj, Mor)> {
        let s = &*self.p.tgt;
        for x in self.p.src.objects() {
            let px = self.p.obj[x];
            let betas = if kind.covariant() { s.out(px) } else { s.inn(px) };
            for &beta in betas {
                if over(beta) && self.keeps_base(beta) && self.lift(kind, x, beta).is_none() {
                    return Some((x, beta));
                }
            }
        }
        None
    }

    /// Has lifts of the given kind of every morphism in the mask.
    pub fn is_fibration(&self, kind: LiftKind) -> bool {
        self.missing_lift(kind, &|_| true).is_none()
    }

    /// The unique `g` with `g . e = h` and `p(g) = k`.
    pub fn factor_after(&self, e: Mor, h: Mor, k: Mor) -> Result<Mor, FibError> {
        let c = &*self.p.src;
        let cands: Vec<Mor> = c
            .hom(c.tgt(e), c.tgt(h))
            .iter()
            .copied()
            .filter(|&g| self.p.mor[g] == k && c.compose(g, e) == h)
            .collect();
        self.unique(cands, h, e)
    }

    /// The unique `g` with `e . g = h` and `p(g) = k`.
    pub fn factor_before(&self, e: Mor, h: Mor, k: Mor) -> Result<Mor, FibError> {
        let c = &*self.p.src;
        let cands: Vec<Mor> = c
            .hom(c.src(h), c.src(e))
            .iter()
            .copied()
            .filter(|&g| self.p.mor[g] == k && c.compose(e, g) == h)
            .collect();
        self.unique(cands, h, e)
    }

    fn unique(&self, cands: Vec<Mor>, h: Mor, e: Mor) -> Result<Mor, FibError> {
        match cands[..] {
            [g] => Ok(g),
            _ => Err(FibError::NonUniqueFactorisation {
                mor: self.p.src.mor_name(h).into(),
                through: self.p.src.mor_name(e).into(),
                count: cands.len(),
            }),
        }
    }
}

/// The fibre of `p: E -> S` over `s` (objects over `s`, morphisms over
/// its identity) with its inclusion.
pub fn fibre_of(p: &FinFunctor, s: Obj) -> (Arc<FinCat>, FinFunctor) {
    let c = &p.src;
    let objs: Vec<Obj> = c.objects().filter(|&x| p.obj[x] == s).collect();
    let id = p.tgt.id(s);
    let mors: Vec<Mor> = c.morphisms().filter(|&f| p.mor[f] == id).collect();
    c.subcategory(&objs, &mors)
}

/// Edge class of a single morphism `e` relative to `p`.
pub fn edge_class(p: &FinFunctor, e: Mor) -> Result<EdgeClass, FibError> {
    if e >= p.src.n_mor() {
        return Err(FibError::UnknownMorphism(e.to_string()));
    }
    let r = Rel { p: p.clone(), mask: None, cartesian: vec![], cocartesian: vec![], locally_cartesian: vec![], locally_cocartesian: vec![] };
    Ok(EdgeClass {
        cartesian: r.check_cartesian(e),
        cocartesian: r.check_cocartesian(e),
        locally_cartesian: r.check_locally_cartesian(e),
        locally_cocartesian: r.check_locally_cocartesian(e),
    })
}

/// Edge class looked up by morphism identifier.
pub fn edge_class_by_name(p: &FinFunctor, name: &str) -> Result<EdgeClass, FibError> {
    let e = p.src.mor_id(name).ok_or_else(|| FibError::UnknownMorphism(name.into()))?;
    edge_class(p, e)
}

#[cfg(test)]
mod tests;
