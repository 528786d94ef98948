//! JSON encoding of finite categories and functors.

use super::{CatError, FinCat, FinFunctor, NONE};
use serde::{Deserialize, Serialize};
use std::collections::{BTreeMap, HashMap};
use std::sync::Arc;

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct MorphismJson {
    pub id: String,
    pub src: String,
    pub tgt: String,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct PosetJson {
    pub elements: Vec<String>,
    #[serde(default)]
    pub leq: Vec<(String, String)>,
}

/// Either a full composition table or the poset shorthand.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
#[serde(untagged)]
pub enum CategoryJson {
    Poset {
        poset: PosetJson,
    },
    Table {
        objects: Vec<String>,
        morphisms: Vec<MorphismJson>,
        #[serde(default)]
        compose: Vec<(String, String, String)>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        identities: Option<BTreeMap<String, String>>,
    },
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct FunctorJson {
    pub objects: BTreeMap<String, String>,
    pub morphisms: BTreeMap<String, String>,
}

/// Validate raw table data into a category. Identities are taken from the
/// optional `identities` map, else a morphism named `id_<x>`, else detected
/// from the table; composites with identities may be omitted.
pub fn validate(raw: &CategoryJson) -> Result<FinCat, CatError> {
    match raw {
        CategoryJson::Poset { poset } => poset_category(poset),
        CategoryJson::Table { objects, morphisms, compose, identities } => {
            table_category(objects, morphisms, compose, identities.as_ref())
        }
    }
}

fn poset_category(p: &PosetJson) -> Result<FinCat, CatError> {
    let n = p.elements.len();
    let mut ix = HashMap::new();
    for (i, e) in p.elements.iter().enumerate() {
        if ix.insert(e.clone(), i).is_some() {
            return Err(CatError::Duplicate(e.clone()));
        }
    }
    let mut rel = vec![false; n * n];
    for i in 0..n {
        rel[i * n + i] = true;
    }
    for (a, b) in &p.leq {
        let a = *ix.get(a).ok_or_else(|| CatError::UnknownObject(a.clone()))?;
        let b = *ix.get(b).ok_or_else(|| CatError::UnknownObject(b.clone()))?;
        rel[a * n + b] = true;
    }
    // reflexive-transitive closure
    for k in 0..n {
        for i in 0..n {
            if rel[i * n + k] {
                for j in 0..n {
                    if rel[k * n + j] {
                        rel[i * n + j] = true;
                    }
                }
            }
        }
    }
    Ok(FinCat::poset_from_leq(&p.elements, |a, b| rel[a * n + b]))
}

fn table_category(
    objects: &[String],
    morphisms: &[MorphismJson],
    compose: &[(String, String, String)],
    identities: Option<&BTreeMap<String, String>>,
) -> Result<FinCat, CatError> {
    let mut oix = HashMap::new();
    for (i, o) in objects.iter().enumerate() {
        if oix.insert(o.clone(), i).is_some() {
            return Err(CatError::Duplicate(o.clone()));
        }
    }
    let mut mix = HashMap::new();
    let mut src = Vec::new();
    let mut tgt = Vec::new();
    for (i, m) in morphisms.iter().enumerate() {
        if mix.insert(m.id.clone(), i).is_some() {
            return Err(CatError::Duplicate(m.id.clone()));
        }
        let dangling = |e: &String| CatError::DanglingEndpoint { mor: m.id.clone(), end: e.clone() };
        src.push(*oix.get(&m.src).ok_or_else(|| dangling(&m.src))?);
        tgt.push(*oix.get(&m.tgt).ok_or_else(|| dangling(&m.tgt))?);
    }
    let mcount = morphisms.len();
    let mut comp = vec![NONE; mcount * mcount];
    for (g, f, h) in compose {
        let gi = *mix.get(g).ok_or_else(|| CatError::UnknownMorphism(g.clone()))?;
        let fi = *mix.get(f).ok_or_else(|| CatError::UnknownMorphism(f.clone()))?;
        let hi = *mix.get(h).ok_or_else(|| CatError::UnknownMorphism(h.clone()))?;
        if src[gi] != tgt[fi] || src[hi] != src[fi] || tgt[hi] != tgt[gi] {
            return Err(CatError::BadComposite { g: g.clone(), f: f.clone(), h: h.clone() });
        }
        let slot = &mut comp[gi * mcount + fi];
        if *slot != NONE && *slot != hi as u32 {
            return Err(CatError::ConflictingComposite { g: g.clone(), f: f.clone() });
        }
        *slot = hi as u32;
    }
    let mut ident = Vec::with_capacity(objects.len());
    for (x, o) in objects.iter().enumerate() {
        let explicit = identities.and_then(|m| m.get(o));
        let found = if let Some(name) = explicit {
            Some(*mix.get(name).ok_or_else(|| CatError::UnknownMorphism(name.clone()))?)
        } else if let Some(&i) = mix.get(&format!("id_{o}")) {
            Some(i)
        } else {
            detect_identity(x, &src, &tgt, &comp, mcount)
        };
        match found {
            Some(i) if src[i] == x && tgt[i] == x => ident.push(i),
            _ => return Err(CatError::MissingIdentity(o.clone())),
        }
    }
    // composites with identities are implied
    for f in 0..mcount {
        let (s, t) = (src[f], tgt[f]);
        for (slot, val) in [(ident[t] * mcount + f, f), (f * mcount + ident[s], f)] {
            if comp[slot] == NONE {
                comp[slot] = val as u32;
            } else if comp[slot] != val as u32 {
                return Err(CatError::IdentityLaw(morphisms[f].id.clone()));
            }
        }
    }
    let cat = FinCat::from_tables(
        objects.to_vec(),
        morphisms.iter().map(|m| m.id.clone()).collect(),
        src,
        tgt,
        ident,
        comp,
    )?;
    cat.check_laws()?;
    Ok(cat)
}

fn detect_identity(x: usize, src: &[usize], tgt: &[usize], comp: &[u32], m: usize) -> Option<usize> {
    (0..m).find(|&e| {
        src[e] == x
            && tgt[e] == x
            && (0..m).all(|f| {
                (tgt[f] != x || comp[e * m + f] == f as u32) && (src[f] != x || comp[f * m + e] == f as u32)
            })
    })
}

/// Full-table encoding (the inverse of `validate` up to identifiers).
pub fn to_json(c: &FinCat) -> CategoryJson {
    let mut compose = Vec::new();
    for f in c.morphisms() {
        for &g in c.out(c.tgt(f)) {
            if c.is_identity(f) || c.is_identity(g) {
                continue;
            }
            compose.push((
                c.mor_name(g).to_string(),
                c.mor_name(f).to_string(),
                c.mor_name(c.compose(g, f)).to_string(),
            ));
        }
    }
    CategoryJson::Table {
        objects: c.obj_names().to_vec(),
        morphisms: c
            .morphisms()
            .map(|f| MorphismJson {
                id: c.mor_name(f).to_string(),
                src: c.obj_name(c.src(f)).to_string(),
                tgt: c.obj_name(c.tgt(f)).to_string(),
            })
            .collect(),
        compose,
        identities: Some(
            c.objects()
                .map(|x| (c.obj_name(x).to_string(), c.mor_name(c.id(x)).to_string()))
                .collect(),
        ),
    }
}

pub fn functor_from_json(
    raw: &FunctorJson,
    src: &Arc<FinCat>,
    tgt: &Arc<FinCat>,
) -> Result<FinFunctor, CatError> {
    let mut obj = Vec::with_capacity(src.n_obj());
    for x in src.objects() {
        let name = src.obj_name(x);
        let img = raw.objects.get(name).ok_or_else(|| CatError::UnknownObject(name.to_string()))?;
        obj.push(tgt.obj_id(img).ok_or_else(|| CatError::UnknownObject(img.clone()))?);
    }
    let mut mor = Vec::with_capacity(src.n_mor());
    for f in src.morphisms() {
        let name = src.mor_name(f);
        let img = match raw.morphisms.get(name) {
            Some(img) => tgt.mor_id(img).ok_or_else(|| CatError::UnknownMorphism(img.clone()))?,
            // identities and morphisms between objects with a unique
            // candidate may be left implicit
            None => {
                let cands = tgt.hom(obj[src.src(f)], obj[src.tgt(f)]);
                if src.is_identity(f) {
                    tgt.id(obj[src.src(f)])
                } else if cands.len() == 1 {
                    cands[0]
                } else {
                    return Err(CatError::UnknownMorphism(name.to_string()));
                }
            }
        };
        mor.push(img);
    }
    FinFunctor::new(src.clone(), tgt.clone(), obj, mor)
}

pub fn functor_to_json(f: &FinFunctor) -> FunctorJson {
    FunctorJson {
        objects: f
            .src
            .objects()
            .map(|x| (f.src.obj_name(x).to_string(), f.tgt.obj_name(f.obj[x]).to_string()))
            .collect(),
        morphisms: f
            .src
            .morphisms()
            .map(|u| (f.src.mor_name(u).to_string(), f.tgt.mor_name(f.mor[u]).to_string()))
            .collect(),
    }
}
