//! Finite categories stored as composition tables, together with functors,
//! natural transformations, adjoint search and localisation certificates.

mod adjoint;
mod build;
pub mod io;
pub mod search;

pub use adjoint::{
    find_adjoint, localization_certificate, universal_arrows, Adjunction, LocalizationCertificate,
    Side,
};
pub use build::{build_keyed, pullback, Keyed, Pullback};

use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;
use thiserror::Error;

pub type Obj = usize;
pub type Mor = usize;

const NONE: u32 = u32::MAX;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CatError {
    #[error("composition is not associative at ({h}, {g}, {f})")]
    NonAssociative { h: String, g: String, f: String },
    #[error("object {0} has no identity morphism")]
    MissingIdentity(String),
    #[error("morphism {mor} refers to unknown object {end}")]
    DanglingEndpoint { mor: String, end: String },
    #[error("composite {g} . {f} is not defined")]
    MissingComposite { g: String, f: String },
    #[error("composite {g} . {f} = {h} has the wrong endpoints")]
    BadComposite { g: String, f: String, h: String },
    #[error("conflicting composites for {g} . {f}")]
    ConflictingComposite { g: String, f: String },
    #[error("identity law fails for {0}")]
    IdentityLaw(String),
    #[error("duplicate identifier {0}")]
    Duplicate(String),
    #[error("unknown object {0}")]
    UnknownObject(String),
    #[error("unknown morphism {0}")]
    UnknownMorphism(String),
    #[error("not a functor: {0}")]
    NotAFunctor(String),
    #[error("not a natural transformation: {0}")]
    NotNatural(String),
    #[error("two non-isomorphic initial objects in the comma category under {0}")]
    AmbiguousInitial(String),
}

/// A finite category. Objects and morphisms are indexed densely; the
/// composition table is total on composable pairs.
#[derive(Clone)]
pub struct FinCat {
    objs: Vec<String>,
    mors: Vec<String>,
    src: Vec<Obj>,
    tgt: Vec<Obj>,
    ident: Vec<Mor>,
    comp: Vec<u32>,
    homs: Vec<Vec<Mor>>,
    out: Vec<Vec<Mor>>,
    inn: Vec<Vec<Mor>>,
    inverse: Vec<Option<Mor>>,
    obj_ix: HashMap<String, Obj>,
    mor_ix: HashMap<String, Mor>,
    obj_rank: Vec<u32>,
    mor_rank: Vec<u32>,
}

impl fmt::Debug for FinCat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FinCat({} objects, {} morphisms)", self.objs.len(), self.mors.len())
    }
}

impl PartialEq for FinCat {
    fn eq(&self, other: &Self) -> bool {
        self.objs == other.objs
            && self.mors == other.mors
            && self.src == other.src
            && self.tgt == other.tgt
            && self.ident == other.ident
            && self.comp == other.comp
    }
}
impl Eq for FinCat {}

fn ranks(names: &[String]) -> Vec<u32> {
    let mut order: Vec<usize> = (0..names.len()).collect();
    order.sort_by(|&a, &b| names[a].cmp(&names[b]));
    let mut r = vec![0u32; names.len()];
    for (i, &k) in order.iter().enumerate() {
        r[k] = i as u32;
    }
    r
}

impl FinCat {
    /// Assemble a category from index-level tables without checking the
    /// category laws. `comp` maps composable pairs `(g, f)` to `g . f`.
    pub(crate) fn from_tables(
        objs: Vec<String>,
        mors: Vec<String>,
        src: Vec<Obj>,
        tgt: Vec<Obj>,
        ident: Vec<Mor>,
        comp: Vec<u32>,
    ) -> Result<FinCat, CatError> {
        let n = objs.len();
        let m = mors.len();
        let mut obj_ix = HashMap::with_capacity(n);
        for (i, o) in objs.iter().enumerate() {
            if obj_ix.insert(o.clone(), i).is_some() {
                return Err(CatError::Duplicate(o.clone()));
            }
        }
        let mut mor_ix = HashMap::with_capacity(m);
        for (i, o) in mors.iter().enumerate() {
            if mor_ix.insert(o.clone(), i).is_some() {
                return Err(CatError::Duplicate(o.clone()));
            }
        }
        let mut homs = vec![Vec::new(); n * n];
        let mut out = vec![Vec::new(); n];
        let mut inn = vec![Vec::new(); n];
        for f in 0..m {
            homs[src[f] * n + tgt[f]].push(f);
            out[src[f]].push(f);
            inn[tgt[f]].push(f);
        }
        for f in 0..m {
            for &g in &out[tgt[f]] {
                if comp[g * m + f] == NONE {
                    return Err(CatError::MissingComposite {
                        g: mors[g].clone(),
                        f: mors[f].clone(),
                    });
                }
            }
        }
        let mut inverse = vec![None; m];
        for f in 0..m {
            for &g in &homs[tgt[f] * n + src[f]] {
                if comp[g * m + f] as usize == ident[src[f]]
                    && comp[f * m + g] as usize == ident[tgt[f]]
                {
                    inverse[f] = Some(g);
                    break;
                }
            }
        }
        let obj_rank = ranks(&objs);
        let mor_rank = ranks(&mors);
        Ok(FinCat {
            objs,
            mors,
            src,
            tgt,
            ident,
            comp,
            homs,
            out,
            inn,
            inverse,
            obj_ix,
            mor_ix,
            obj_rank,
            mor_rank,
        })
    }

    /// Check unit and associativity laws exhaustively.
    pub fn check_laws(&self) -> Result<(), CatError> {
        let m = self.mors.len();
        for x in 0..self.objs.len() {
            let i = self.ident[x];
            if self.src[i] != x || self.tgt[i] != x {
                return Err(CatError::MissingIdentity(self.objs[x].clone()));
            }
        }
        for f in 0..m {
            for &g in &self.out[self.tgt[f]] {
                let h = self.comp[g * m + f] as usize;
                if self.src[h] != self.src[f] || self.tgt[h] != self.tgt[g] {
                    return Err(CatError::BadComposite {
                        g: self.mors[g].clone(),
                        f: self.mors[f].clone(),
                        h: self.mors[h].clone(),
                    });
                }
            }
            if self.compose(f, self.ident[self.src[f]]) != f
                || self.compose(self.ident[self.tgt[f]], f) != f
            {
                return Err(CatError::IdentityLaw(self.mors[f].clone()));
            }
        }
        for f in 0..m {
            for &g in &self.out[self.tgt[f]] {
                let gf = self.compose(g, f);
                for &h in &self.out[self.tgt[g]] {
                    let hg = self.compose(h, g);
                    if self.compose(h, gf) != self.compose(hg, f) {
                        return Err(CatError::NonAssociative {
                            h: self.mors[h].clone(),
                            g: self.mors[g].clone(),
                            f: self.mors[f].clone(),
                        });
                    }
                }
            }
        }
        Ok(())
    }

    pub fn n_obj(&self) -> usize {
        self.objs.len()
    }
    pub fn n_mor(&self) -> usize {
        self.mors.len()
    }
    pub fn obj_name(&self, x: Obj) -> &str {
        &self.objs[x]
    }
    pub fn mor_name(&self, f: Mor) -> &str {
        &self.mors[f]
    }
    pub fn obj_names(&self) -> &[String] {
        &self.objs
    }
    pub fn mor_names(&self) -> &[String] {
        &self.mors
    }
    pub fn obj_id(&self, name: &str) -> Option<Obj> {
        self.obj_ix.get(name).copied()
    }
    pub fn mor_id(&self, name: &str) -> Option<Mor> {
        self.mor_ix.get(name).copied()
    }
    pub fn src(&self, f: Mor) -> Obj {
        self.src[f]
    }
    pub fn tgt(&self, f: Mor) -> Obj {
        self.tgt[f]
    }
    pub fn id(&self, x: Obj) -> Mor {
        self.ident[x]
    }
    pub fn is_identity(&self, f: Mor) -> bool {
        self.ident[self.src[f]] == f
    }
    /// `g . f`; panics if the pair is not composable.
    pub fn compose(&self, g: Mor, f: Mor) -> Mor {
        debug_assert_eq!(self.src[g], self.tgt[f], "non-composable pair");
        self.comp[g * self.mors.len() + f] as usize
    }
    pub fn try_compose(&self, g: Mor, f: Mor) -> Option<Mor> {
        if self.src[g] != self.tgt[f] {
            return None;
        }
        Some(self.compose(g, f))
    }
    /// Compose a path given in diagrammatic order reversed: `[h, g, f]` is `h . g . f`.
    pub fn compose_all(&self, path: &[Mor]) -> Mor {
        let mut it = path.iter().rev();
        let mut acc = *it.next().expect("empty path");
        for &g in it {
            acc = self.compose(g, acc);
        }
        acc
    }
    pub fn hom(&self, x: Obj, y: Obj) -> &[Mor] {
        &self.homs[x * self.objs.len() + y]
    }
    pub fn out(&self, x: Obj) -> &[Mor] {
        &self.out[x]
    }
    pub fn inn(&self, y: Obj) -> &[Mor] {
        &self.inn[y]
    }
    pub fn is_iso(&self, f: Mor) -> bool {
        self.inverse[f].is_some()
    }
    pub fn inverse(&self, f: Mor) -> Option<Mor> {
        self.inverse[f]
    }
    pub fn iso_flags(&self) -> Vec<bool> {
        self.inverse.iter().map(|i| i.is_some()).collect()
    }
    pub fn obj_rank(&self, x: Obj) -> u32 {
        self.obj_rank[x]
    }
    pub fn mor_rank(&self, f: Mor) -> u32 {
        self.mor_rank[f]
    }
    pub fn is_thin(&self) -> bool {
        self.homs.iter().all(|h| h.len() <= 1)
    }
    pub fn is_groupoid(&self) -> bool {
        self.inverse.iter().all(|i| i.is_some())
    }
    pub fn objects(&self) -> std::ops::Range<Obj> {
        0..self.objs.len()
    }
    pub fn morphisms(&self) -> std::ops::Range<Mor> {
        0..self.mors.len()
    }

    /// True iff the two categories agree after matching objects and
    /// morphisms by identifier.
    pub fn iso_by_names(&self, other: &FinCat) -> bool {
        if self.n_obj() != other.n_obj() || self.n_mor() != other.n_mor() {
            return false;
        }
        let mut mmap = Vec::with_capacity(self.n_mor());
        for f in self.morphisms() {
            match other.mor_id(&self.mors[f]) {
                Some(g) => mmap.push(g),
                None => return false,
            }
        }
        for x in self.objects() {
            match other.obj_id(&self.objs[x]) {
                Some(y) if other.id(y) == mmap[self.id(x)] => {}
                _ => return false,
            }
        }
        for f in self.morphisms() {
            let g = mmap[f];
            if other.obj_name(other.src(g)) != self.obj_name(self.src(f))
                || other.obj_name(other.tgt(g)) != self.obj_name(self.tgt(f))
            {
                return false;
            }
            for &h in self.out(self.tgt(f)) {
                if other.compose(mmap[h], g) != mmap[self.compose(h, f)] {
                    return false;
                }
            }
        }
        true
    }

    // ----- constructions -----

    /// The terminal category `[0]`.
    pub fn point() -> FinCat {
        FinCat::poset_from_leq(&["0".to_string()], |_, _| true)
    }

    /// The chain `[n] = {0 < 1 < ... < n}`.
    pub fn chain(n: usize) -> FinCat {
        let els: Vec<String> = (0..=n).map(|i| i.to_string()).collect();
        FinCat::poset_from_leq(&els, |a, b| a <= b)
    }

    /// Discrete category on the given object names.
    pub fn discrete(names: &[&str]) -> FinCat {
        let els: Vec<String> = names.iter().map(|s| s.to_string()).collect();
        FinCat::poset_from_leq(&els, |a, b| a == b)
    }

    /// Thin category on `elements` with `a -> b` whenever `leq(a, b)`;
    /// `leq` must be a preorder on indices.
    pub fn poset_from_leq(elements: &[String], leq: impl Fn(usize, usize) -> bool) -> FinCat {
        let n = elements.len();
        let mut mors = Vec::new();
        let mut src = Vec::new();
        let mut tgt = Vec::new();
        let mut ident = vec![0; n];
        let mut idx = vec![usize::MAX; n * n];
        for a in 0..n {
            for b in 0..n {
                if leq(a, b) {
                    idx[a * n + b] = mors.len();
                    if a == b {
                        ident[a] = mors.len();
                        mors.push(format!("id_{}", elements[a]));
                    } else {
                        mors.push(format!("{}->{}", elements[a], elements[b]));
                    }
                    src.push(a);
                    tgt.push(b);
                }
            }
        }
        let m = mors.len();
        let mut comp = vec![NONE; m * m];
        for f in 0..m {
            for g in 0..m {
                if src[g] == tgt[f] {
                    let h = idx[src[f] * n + tgt[g]];
                    assert!(h != usize::MAX, "leq is not transitive");
                    comp[g * m + f] = h as u32;
                }
            }
        }
        FinCat::from_tables(elements.to_vec(), mors, src, tgt, ident, comp)
            .expect("poset construction")
    }

    /// Opposite category: same identifiers, endpoints swapped.
    pub fn opposite(&self) -> FinCat {
        let m = self.n_mor();
        let mut comp = vec![NONE; m * m];
        for f in 0..m {
            for &g in &self.out[self.tgt[f]] {
                // in the opposite, f . g is defined and equals (g . f)
                comp[f * m + g] = self.comp[g * m + f];
            }
        }
        FinCat::from_tables(
            self.objs.clone(),
            self.mors.clone(),
            self.tgt.clone(),
            self.src.clone(),
            self.ident.clone(),
            comp,
        )
        .expect("opposite")
    }

    /// Product category. Object `(a, b)` has index `a * |B| + b`; morphism
    /// `(u, v)` has index `u * |Mor B| + v`.
    pub fn product(a: &FinCat, b: &FinCat) -> FinCat {
        let (na, nb) = (a.n_obj(), b.n_obj());
        let (ma, mb) = (a.n_mor(), b.n_mor());
        let mut objs = Vec::with_capacity(na * nb);
        for x in 0..na {
            for y in 0..nb {
                objs.push(format!("({},{})", a.objs[x], b.objs[y]));
            }
        }
        let m = ma * mb;
        let mut mors = Vec::with_capacity(m);
        let mut src = Vec::with_capacity(m);
        let mut tgt = Vec::with_capacity(m);
        for u in 0..ma {
            for v in 0..mb {
                mors.push(format!("({},{})", a.mors[u], b.mors[v]));
                src.push(a.src[u] * nb + b.src[v]);
                tgt.push(a.tgt[u] * nb + b.tgt[v]);
            }
        }
        let mut ident = Vec::with_capacity(na * nb);
        for x in 0..na {
            for y in 0..nb {
                ident.push(a.ident[x] * mb + b.ident[y]);
            }
        }
        let mut comp = vec![NONE; m * m];
        for u in 0..ma {
            for v in 0..mb {
                let f = u * mb + v;
                for &u2 in &a.out[a.tgt[u]] {
                    for &v2 in &b.out[b.tgt[v]] {
                        let g = u2 * mb + v2;
                        let h = a.compose(u2, u) * mb + b.compose(v2, v);
                        comp[g * m + f] = h as u32;
                    }
                }
            }
        }
        FinCat::from_tables(objs, mors, src, tgt, ident, comp).expect("product")
    }

    /// Wide subcategory on the morphisms selected by `keep` (which must
    /// contain identities and be closed under composition), with its
    /// inclusion functor.
    pub fn wide_subcategory(self: &Arc<Self>, keep: &[bool]) -> (Arc<FinCat>, FinFunctor) {
        let kept: Vec<Mor> = self.morphisms().filter(|&f| keep[f]).collect();
        self.subcategory(&self.objects().collect::<Vec<_>>(), &kept)
    }

    /// Full subcategory on the given objects, with its inclusion.
    pub fn full_subcategory(self: &Arc<Self>, objs: &[Obj]) -> (Arc<FinCat>, FinFunctor) {
        let mut inside = vec![false; self.n_obj()];
        for &x in objs {
            inside[x] = true;
        }
        let kept: Vec<Mor> = self
            .morphisms()
            .filter(|&f| inside[self.src[f]] && inside[self.tgt[f]])
            .collect();
        self.subcategory(objs, &kept)
    }

    /// Subcategory on the given objects and morphisms (closed under
    /// composition and containing the identities), with its inclusion.
    pub fn subcategory(self: &Arc<Self>, objs: &[Obj], kept: &[Mor]) -> (Arc<FinCat>, FinFunctor) {
        let mut onew = vec![usize::MAX; self.n_obj()];
        for (i, &x) in objs.iter().enumerate() {
            onew[x] = i;
        }
        let mut mnew = vec![usize::MAX; self.n_mor()];
        for (i, &f) in kept.iter().enumerate() {
            mnew[f] = i;
        }
        let m = kept.len();
        let mut comp = vec![NONE; m * m];
        for (i, &f) in kept.iter().enumerate() {
            for &g in &self.out[self.tgt[f]] {
                if mnew[g] != usize::MAX {
                    let h = mnew[self.compose(g, f)];
                    assert!(h != usize::MAX, "subcategory not closed under composition");
                    comp[mnew[g] * m + i] = h as u32;
                }
            }
        }
        let sub = FinCat::from_tables(
            objs.iter().map(|&x| self.objs[x].clone()).collect(),
            kept.iter().map(|&f| self.mors[f].clone()).collect(),
            kept.iter().map(|&f| onew[self.src[f]]).collect(),
            kept.iter().map(|&f| onew[self.tgt[f]]).collect(),
            objs.iter().map(|&x| mnew[self.ident[x]]).collect(),
            comp,
        )
        .expect("subcategory");
        let sub = Arc::new(sub);
        let inc = FinFunctor::new_unchecked(sub.clone(), self.clone(), objs.to_vec(), kept.to_vec());
        (sub, inc)
    }

    /// The core: the wide subcategory of isomorphisms.
    pub fn core(self: &Arc<Self>) -> Arc<FinCat> {
        let flags = self.iso_flags();
        self.wide_subcategory(&flags).0
    }
}

/// Shared handle constructors.
pub fn arc(c: FinCat) -> Arc<FinCat> {
    Arc::new(c)
}

/// A functor between finite categories.
#[derive(Clone, Debug)]
pub struct FinFunctor {
    pub src: Arc<FinCat>,
    pub tgt: Arc<FinCat>,
    pub obj: Vec<Obj>,
    pub mor: Vec<Mor>,
}

impl PartialEq for FinFunctor {
    fn eq(&self, other: &Self) -> bool {
        (Arc::ptr_eq(&self.src, &other.src) || self.src == other.src)
            && (Arc::ptr_eq(&self.tgt, &other.tgt) || self.tgt == other.tgt)
            && self.obj == other.obj
            && self.mor == other.mor
    }
}

impl FinFunctor {
    pub fn new(
        src: Arc<FinCat>,
        tgt: Arc<FinCat>,
        obj: Vec<Obj>,
        mor: Vec<Mor>,
    ) -> Result<FinFunctor, CatError> {
        let f = FinFunctor { src, tgt, obj, mor };
        f.check()?;
        Ok(f)
    }

    pub fn new_unchecked(src: Arc<FinCat>, tgt: Arc<FinCat>, obj: Vec<Obj>, mor: Vec<Mor>) -> FinFunctor {
        FinFunctor { src, tgt, obj, mor }
    }

    /// Exhaustive functoriality check.
    pub fn check(&self) -> Result<(), CatError> {
        let (c, d) = (&*self.src, &*self.tgt);
        if self.obj.len() != c.n_obj() || self.mor.len() != c.n_mor() {
            return Err(CatError::NotAFunctor("table sizes".into()));
        }
        if self.obj.iter().any(|&y| y >= d.n_obj()) || self.mor.iter().any(|&g| g >= d.n_mor()) {
            return Err(CatError::NotAFunctor("image out of range".into()));
        }
        for x in c.objects() {
            if self.mor[c.id(x)] != d.id(self.obj[x]) {
                return Err(CatError::NotAFunctor(format!("identity of {}", c.obj_name(x))));
            }
        }
        for f in c.morphisms() {
            let g = self.mor[f];
            if d.src(g) != self.obj[c.src(f)] || d.tgt(g) != self.obj[c.tgt(f)] {
                return Err(CatError::NotAFunctor(format!("endpoints of {}", c.mor_name(f))));
            }
        }
        for f in c.morphisms() {
            for &g in c.out(c.tgt(f)) {
                if self.mor[c.compose(g, f)] != d.compose(self.mor[g], self.mor[f]) {
                    return Err(CatError::NotAFunctor(format!(
                        "composite {} . {}",
                        c.mor_name(g),
                        c.mor_name(f)
                    )));
                }
            }
        }
        Ok(())
    }

    /// Functor determined by an object map into a category where each
    /// required hom-set has exactly one element (e.g. a poset).
    pub fn monotone(src: &Arc<FinCat>, tgt: &Arc<FinCat>, obj: Vec<Obj>) -> Result<FinFunctor, CatError> {
        let mut mor = Vec::with_capacity(src.n_mor());
        for f in src.morphisms() {
            match tgt.hom(obj[src.src(f)], obj[src.tgt(f)]) {
                [g] => mor.push(*g),
                _ => return Err(CatError::NotAFunctor(format!("no unique image for {}", src.mor_name(f)))),
            }
        }
        FinFunctor::new(src.clone(), tgt.clone(), obj, mor)
    }

    pub fn identity(c: &Arc<FinCat>) -> FinFunctor {
        FinFunctor::new_unchecked(c.clone(), c.clone(), c.objects().collect(), c.morphisms().collect())
    }

    /// The unique functor to the terminal category.
    pub fn to_point(c: &Arc<FinCat>, point: &Arc<FinCat>) -> FinFunctor {
        FinFunctor::new_unchecked(c.clone(), point.clone(), vec![0; c.n_obj()], vec![0; c.n_mor()])
    }

    /// `self . first` (apply `first`, then `self`).
    pub fn after(&self, first: &FinFunctor) -> FinFunctor {
        FinFunctor::new_unchecked(
            first.src.clone(),
            self.tgt.clone(),
            first.obj.iter().map(|&x| self.obj[x]).collect(),
            first.mor.iter().map(|&f| self.mor[f]).collect(),
        )
    }

    /// The same assignment viewed between opposite categories.
    pub fn opposite_between(&self, src_op: Arc<FinCat>, tgt_op: Arc<FinCat>) -> FinFunctor {
        FinFunctor::new_unchecked(src_op, tgt_op, self.obj.clone(), self.mor.clone())
    }

    pub fn opposite(&self) -> FinFunctor {
        self.opposite_between(Arc::new(self.src.opposite()), Arc::new(self.tgt.opposite()))
    }

    /// Pair of functors into a product category built by `FinCat::product`.
    pub fn pair(f: &FinFunctor, g: &FinFunctor, prod: Arc<FinCat>) -> FinFunctor {
        let nb = g.tgt.n_obj();
        let mb = g.tgt.n_mor();
        FinFunctor::new_unchecked(
            f.src.clone(),
            prod,
            f.obj.iter().zip(&g.obj).map(|(&a, &b)| a * nb + b).collect(),
            f.mor.iter().zip(&g.mor).map(|(&u, &v)| u * mb + v).collect(),
        )
    }

    /// Product projections out of `FinCat::product(a, b)`.
    pub fn projections(a: &Arc<FinCat>, b: &Arc<FinCat>, prod: &Arc<FinCat>) -> (FinFunctor, FinFunctor) {
        let (nb, mb) = (b.n_obj(), b.n_mor());
        let p1 = FinFunctor::new_unchecked(
            prod.clone(),
            a.clone(),
            prod.objects().map(|x| x / nb).collect(),
            prod.morphisms().map(|f| f / mb).collect(),
        );
        let p2 = FinFunctor::new_unchecked(
            prod.clone(),
            b.clone(),
            prod.objects().map(|x| x % nb).collect(),
            prod.morphisms().map(|f| f % mb).collect(),
        );
        (p1, p2)
    }

    pub fn is_faithful(&self) -> bool {
        let c = &self.src;
        for x in c.objects() {
            for y in c.objects() {
                let mut seen = std::collections::HashSet::new();
                for &f in c.hom(x, y) {
                    if !seen.insert(self.mor[f]) {
                        return false;
                    }
                }
            }
        }
        true
    }

    pub fn is_fully_faithful(&self) -> bool {
        let c = &self.src;
        for x in c.objects() {
            for y in c.objects() {
                if c.hom(x, y).len() != self.tgt.hom(self.obj[x], self.obj[y]).len() {
                    return false;
                }
            }
        }
        self.is_faithful()
    }

    /// Every morphism sent to an isomorphism is an isomorphism.
    pub fn is_conservative(&self) -> bool {
        self.src
            .morphisms()
            .all(|f| !self.tgt.is_iso(self.mor[f]) || self.src.is_iso(f))
    }
}

/// A natural transformation between parallel functors.
#[derive(Clone, Debug, PartialEq)]
pub struct NatTransf {
    pub src: FinFunctor,
    pub tgt: FinFunctor,
    pub comp: Vec<Mor>,
}

impl NatTransf {
    pub fn new(src: FinFunctor, tgt: FinFunctor, comp: Vec<Mor>) -> Result<NatTransf, CatError> {
        let t = NatTransf { src, tgt, comp };
        t.check()?;
        Ok(t)
    }

    pub fn check(&self) -> Result<(), CatError> {
        let c = &self.src.src;
        let d = &self.src.tgt;
        if self.comp.len() != c.n_obj() {
            return Err(CatError::NotNatural("component table size".into()));
        }
        for x in c.objects() {
            let a = self.comp[x];
            if d.src(a) != self.src.obj[x] || d.tgt(a) != self.tgt.obj[x] {
                return Err(CatError::NotNatural(format!("component at {}", c.obj_name(x))));
            }
        }
        for f in c.morphisms() {
            let (x, y) = (c.src(f), c.tgt(f));
            if d.compose(self.tgt.mor[f], self.comp[x]) != d.compose(self.comp[y], self.src.mor[f]) {
                return Err(CatError::NotNatural(format!("square at {}", c.mor_name(f))));
            }
        }
        Ok(())
    }

    pub fn identity(f: &FinFunctor) -> NatTransf {
        NatTransf {
            src: f.clone(),
            tgt: f.clone(),
            comp: f.obj.iter().map(|&y| f.tgt.id(y)).collect(),
        }
    }

    pub fn is_iso(&self) -> bool {
        let d = &self.src.tgt;
        self.comp.iter().all(|&a| d.is_iso(a))
    }

    /// `other . self` (vertical composite).
    pub fn then(&self, other: &NatTransf) -> NatTransf {
        let d = &self.src.tgt;
        NatTransf {
            src: self.src.clone(),
            tgt: other.tgt.clone(),
            comp: self.comp.iter().zip(&other.comp).map(|(&a, &b)| d.compose(b, a)).collect(),
        }
    }

    pub fn is_identity(&self) -> bool {
        let d = &self.src.tgt;
        self.comp.iter().all(|&a| d.is_identity(a))
    }
}

#[cfg(test)]
mod tests;
