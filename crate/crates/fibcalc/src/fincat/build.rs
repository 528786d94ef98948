use super::{CatError, FinCat, Mor, Obj, NONE};
use std::collections::HashMap;
use std::hash::Hash;
use std::sync::Arc;

/// A category whose objects and morphisms carry structured keys, as produced
/// by the constructions (products, pullbacks, Grothendieck constructions,
/// arrow and twisted arrow categories, ...).
#[derive(Clone, Debug)]
pub struct Keyed<O, M> {
    pub cat: Arc<FinCat>,
    pub obj_keys: Vec<O>,
    pub mor_keys: Vec<M>,
    obj_ix: HashMap<O, Obj>,
    mor_ix: HashMap<M, Mor>,
}

impl<O: Clone + Eq + Hash, M: Clone + Eq + Hash> Keyed<O, M> {
    /// Attach keys to an existing category (for instance an opposite with
    /// the same indexing).
    pub fn from_parts(cat: Arc<FinCat>, obj_keys: Vec<O>, mor_keys: Vec<M>) -> Self {
        let obj_ix = obj_keys.iter().cloned().enumerate().map(|(i, k)| (k, i)).collect();
        let mor_ix = mor_keys.iter().cloned().enumerate().map(|(i, k)| (k, i)).collect();
        Keyed { cat, obj_keys, mor_keys, obj_ix, mor_ix }
    }
    pub fn obj(&self, k: &O) -> Obj {
        self.obj_ix[k]
    }
    pub fn mor(&self, k: &M) -> Mor {
        self.mor_ix[k]
    }
    pub fn try_obj(&self, k: &O) -> Option<Obj> {
        self.obj_ix.get(k).copied()
    }
    pub fn try_mor(&self, k: &M) -> Option<Mor> {
        self.mor_ix.get(k).copied()
    }
}

/// Build a category from keyed objects and morphisms. `ends` gives the
/// source and target of a morphism key, `ident` the identity key of an
/// object key and `compose(g, f)` the key of `g . f`. The category laws are
/// not checked here; constructions are tested through `FinCat::check_laws`.
#[allow(clippy::too_many_arguments)]
pub fn build_keyed<O, M>(
    objs: Vec<O>,
    mors: Vec<M>,
    obj_name: impl Fn(&O) -> String,
    mor_name: impl Fn(&M) -> String,
    ends: impl Fn(&M) -> (O, O),
    ident: impl Fn(&O) -> M,
    compose: impl Fn(&M, &M) -> M,
) -> Result<Keyed<O, M>, CatError>
where
    O: Clone + Eq + Hash,
    M: Clone + Eq + Hash,
{
    let mut obj_ix = HashMap::with_capacity(objs.len());
    for (i, o) in objs.iter().enumerate() {
        if obj_ix.insert(o.clone(), i).is_some() {
            return Err(CatError::Duplicate(obj_name(o)));
        }
    }
    let mut mor_ix = HashMap::with_capacity(mors.len());
    for (i, f) in mors.iter().enumerate() {
        if mor_ix.insert(f.clone(), i).is_some() {
            return Err(CatError::Duplicate(mor_name(f)));
        }
    }
    let mut src = Vec::with_capacity(mors.len());
    let mut tgt = Vec::with_capacity(mors.len());
    for f in &mors {
        let (s, t) = ends(f);
        let s = *obj_ix.get(&s).ok_or_else(|| CatError::DanglingEndpoint {
            mor: mor_name(f),
            end: obj_name(&s),
        })?;
        let t = *obj_ix.get(&t).ok_or_else(|| CatError::DanglingEndpoint {
            mor: mor_name(f),
            end: obj_name(&t),
        })?;
        src.push(s);
        tgt.push(t);
    }
    let mut ident_ix = Vec::with_capacity(objs.len());
    for o in &objs {
        let i = ident(o);
        ident_ix.push(
            *mor_ix
                .get(&i)
                .ok_or_else(|| CatError::MissingIdentity(obj_name(o)))?,
        );
    }
    let m = mors.len();
    let mut out: Vec<Vec<Mor>> = vec![Vec::new(); objs.len()];
    for f in 0..m {
        out[src[f]].push(f);
    }
    let mut comp = vec![NONE; m * m];
    for f in 0..m {
        for &g in &out[tgt[f]] {
            let h = if g == ident_ix[tgt[f]] {
                f
            } else if f == ident_ix[src[f]] {
                g
            } else {
                let k = compose(&mors[g], &mors[f]);
                *mor_ix.get(&k).ok_or_else(|| CatError::MissingComposite {
                    g: mor_name(&mors[g]),
                    f: mor_name(&mors[f]),
                })?
            };
            comp[g * m + f] = h as u32;
        }
    }
    let cat = FinCat::from_tables(
        objs.iter().map(&obj_name).collect(),
        mors.iter().map(&mor_name).collect(),
        src,
        tgt,
        ident_ix,
        comp,
    )?;
    Ok(Keyed {
        cat: Arc::new(cat),
        obj_keys: objs,
        mor_keys: mors,
        obj_ix,
        mor_ix,
    })
}

/// The strict pullback `C ×_S E` of `f: C -> S` and `p: E -> S`, with
/// objects keyed by pairs `(c, e)` and morphisms by pairs `(u, v)`.
#[derive(Clone, Debug)]
pub struct Pullback {
    pub keyed: Keyed<(Obj, Obj), (Mor, Mor)>,
    /// projection to the first factor `C`
    pub to_left: super::FinFunctor,
    /// projection to the second factor `E`
    pub to_right: super::FinFunctor,
}

pub fn pullback(f: &super::FinFunctor, p: &super::FinFunctor) -> Pullback {
    let (c, e) = (&f.src, &p.src);
    let mut objs = Vec::new();
    for x in c.objects() {
        for y in e.objects() {
            if f.obj[x] == p.obj[y] {
                objs.push((x, y));
            }
        }
    }
    let mut mors = Vec::new();
    for u in c.morphisms() {
        for v in e.morphisms() {
            if f.mor[u] == p.mor[v] {
                mors.push((u, v));
            }
        }
    }
    let keyed = build_keyed(
        objs,
        mors,
        |&(x, y)| format!("({},{})", c.obj_name(x), e.obj_name(y)),
        |&(u, v)| format!("({},{})", c.mor_name(u), e.mor_name(v)),
        |&(u, v)| ((c.src(u), e.src(v)), (c.tgt(u), e.tgt(v))),
        |&(x, y)| (c.id(x), e.id(y)),
        |&(u2, v2), &(u, v)| (c.compose(u2, u), e.compose(v2, v)),
    )
    .expect("pullback of functors");
    let to_left = super::FinFunctor::new_unchecked(
        keyed.cat.clone(),
        c.clone(),
        keyed.obj_keys.iter().map(|k| k.0).collect(),
        keyed.mor_keys.iter().map(|k| k.0).collect(),
    );
    let to_right = super::FinFunctor::new_unchecked(
        keyed.cat.clone(),
        e.clone(),
        keyed.obj_keys.iter().map(|k| k.1).collect(),
        keyed.mor_keys.iter().map(|k| k.1).collect(),
    );
    Pullback { keyed, to_left, to_right }
}
