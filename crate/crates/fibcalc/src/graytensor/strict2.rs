//! Strict 2-categories with poset homs: `[m] ⊠ [n]`, the cells
//! `[m]([n_1], ..., [n_m])` and the collapse between them.

use super::chains::{chain_posets, fibre_certificate, max_chains, FibreCertificate, MaxChains};
use super::{point_name, GrayError, Point, DEFAULT_CAP};
use crate::fincat::io::to_json;
use crate::fincat::{FinCat, FinFunctor, Mor, Obj};
use serde_json::{json, Value};
use std::collections::BTreeMap;
use std::sync::Arc;

type Triple = (Obj, Obj, Obj);

#[derive(Clone, Debug)]
pub struct Strict2Cat {
    pub objects: Vec<String>,
    homs: BTreeMap<(Obj, Obj), Arc<FinCat>>,
    /// identity 1-cell of `x` as an object of `hom(x, x)`
    ids: Vec<Obj>,
    /// `hom(y, z) × hom(x, y) -> hom(x, z)`
    comp: BTreeMap<Triple, FinFunctor>,
}

impl Strict2Cat {
    /// Builds the composition functors from their object maps; the homs
    /// must be posets.
    pub fn new(
        objects: Vec<String>,
        homs: BTreeMap<(Obj, Obj), Arc<FinCat>>,
        ids: Vec<Obj>,
        compose: impl Fn(Triple, Obj, Obj) -> Obj,
    ) -> Result<Strict2Cat, GrayError> {
        let k = objects.len();
        for (&(x, y), h) in &homs {
            if !h.is_thin() {
                return Err(GrayError::NotThin(format!("hom({}, {})", objects[x], objects[y])));
            }
        }
        if ids.len() != k || (0..k).any(|x| !homs.contains_key(&(x, x))) {
            return Err(GrayError::Shape("every object needs an identity".into()));
        }
        let mut comp = BTreeMap::new();
        for (&(x, y), f_hom) in &homs {
            for z in 0..k {
                let Some(g_hom) = homs.get(&(y, z)) else { continue };
                let Some(gf_hom) = homs.get(&(x, z)) else {
                    return Err(GrayError::Law(format!("no hom({}, {}) for composites", objects[x], objects[z])));
                };
                let prod = Arc::new(FinCat::product(g_hom, f_hom));
                let nf = f_hom.n_obj();
                let obj = prod.objects().map(|o| compose((x, y, z), o / nf, o % nf)).collect();
                comp.insert((x, y, z), FinFunctor::monotone(&prod, gf_hom, obj)?);
            }
        }
        Ok(Strict2Cat { objects, homs, ids, comp })
    }

    pub fn n_obj(&self) -> usize {
        self.objects.len()
    }

    pub fn hom(&self, x: Obj, y: Obj) -> Option<&Arc<FinCat>> {
        self.homs.get(&(x, y))
    }

    pub fn hom_pairs(&self) -> impl Iterator<Item = (Obj, Obj)> + '_ {
        self.homs.keys().copied()
    }

    pub fn identity(&self, x: Obj) -> Obj {
        self.ids[x]
    }

    /// `g ∘ f` for 1-cells `f: x -> y`, `g: y -> z`.
    pub fn compose(&self, t: Triple, g: Obj, f: Obj) -> Obj {
        let c = &self.comp[&t];
        c.obj[g * self.homs[&(t.0, t.1)].n_obj() + f]
    }

    /// Horizontal composite `b * a` of 2-cells.
    pub fn whisker(&self, t: Triple, b: Mor, a: Mor) -> Mor {
        let c = &self.comp[&t];
        c.mor[b * self.homs[&(t.0, t.1)].n_mor() + a]
    }

    /// Associativity, unitality and interchange, exhaustively.
    pub fn check(&self) -> Result<(), GrayError> {
        let name = |x: Obj| self.objects[x].as_str();
        for (&(x, y), h) in &self.homs {
            let (ix, iy) = (self.ids[x], self.ids[y]);
            let (idx, idy) = (self.homs[&(x, x)].id(ix), self.homs[&(y, y)].id(iy));
            for f in h.objects() {
                if self.compose((x, y, y), iy, f) != f || self.compose((x, x, y), f, ix) != f {
                    return Err(GrayError::Law(format!("unit at {} in hom({}, {})", h.obj_name(f), name(x), name(y))));
                }
            }
            for a in h.morphisms() {
                if self.whisker((x, y, y), idy, a) != a || self.whisker((x, x, y), a, idx) != a {
                    return Err(GrayError::Law(format!("unit at {} in hom({}, {})", h.mor_name(a), name(x), name(y))));
                }
            }
        }
        for &(x, y, z) in self.comp.keys() {
            let (fh, gh, gfh) = (&self.homs[&(x, y)], &self.homs[&(y, z)], &self.homs[&(x, z)]);
            for b in gh.morphisms() {
                for b1 in gh.out(gh.tgt(b)) {
                    for a in fh.morphisms() {
                        for &a1 in fh.out(fh.tgt(a)) {
                            let lhs = self.whisker((x, y, z), gh.compose(*b1, b), fh.compose(a1, a));
                            let rhs = gfh.compose(self.whisker((x, y, z), *b1, a1), self.whisker((x, y, z), b, a));
                            if lhs != rhs {
                                return Err(GrayError::Law(format!("interchange at {} {}", gh.mor_name(b), fh.mor_name(a))));
                            }
                        }
                    }
                }
            }
            for w in 0..self.n_obj() {
                let Some(hh) = self.homs.get(&(z, w)) else { continue };
                for c in hh.morphisms() {
                    for b in gh.morphisms() {
                        for a in fh.morphisms() {
                            let lhs = self.whisker((x, z, w), c, self.whisker((x, y, z), b, a));
                            let rhs = self.whisker((x, y, w), self.whisker((y, z, w), c, b), a);
                            if lhs != rhs {
                                return Err(GrayError::Law(format!(
                                    "associativity at {}, {}, {}",
                                    hh.mor_name(c),
                                    gh.mor_name(b),
                                    fh.mor_name(a)
                                )));
                            }
                        }
                    }
                }
            }
        }
        Ok(())
    }

    pub fn to_json(&self) -> Value {
        let homs: Vec<Value> = self
            .homs
            .iter()
            .map(|(&(x, y), h)| json!({"src": self.objects[x], "tgt": self.objects[y], "hom": to_json(h)}))
            .collect();
        let composition: Vec<Value> = self
            .comp
            .keys()
            .map(|&(x, y, z)| {
                let (fh, gh, gfh) = (&self.homs[&(x, y)], &self.homs[&(y, z)], &self.homs[&(x, z)]);
                let table: Vec<[&str; 3]> = gh
                    .objects()
                    .flat_map(|g| fh.objects().map(move |f| (g, f)))
                    .map(|(g, f)| [gh.obj_name(g), fh.obj_name(f), gfh.obj_name(self.compose((x, y, z), g, f))])
                    .collect();
                json!({"objects": [self.objects[x], self.objects[y], self.objects[z]], "table": table})
            })
            .collect();
        let identities: Vec<&str> = (0..self.n_obj()).map(|x| self.homs[&(x, x)].obj_name(self.ids[x])).collect();
        json!({"objects": self.objects, "homs": homs, "identities": identities, "composition": composition})
    }
}

fn grid_point(n: usize, o: Obj) -> Point {
    (o / (n + 1), o % (n + 1))
}

fn check_cap(what: &str, value: usize, cap: usize) -> Result<(), GrayError> {
    if value > cap {
        return Err(GrayError::CapExceeded { what: what.into(), value, cap });
    }
    Ok(())
}

/// `[m] ⊠ [n]` with the default cap.
pub fn gray_simplices(m: usize, n: usize) -> Result<Strict2Cat, GrayError> {
    gray_simplices_capped(m, n, DEFAULT_CAP)
}

pub fn gray_simplices_capped(m: usize, n: usize, cap: usize) -> Result<Strict2Cat, GrayError> {
    Ok(gray_with_chains(m, n, cap)?.0)
}

fn gray_with_chains(m: usize, n: usize, cap: usize) -> Result<(Strict2Cat, BTreeMap<(Obj, Obj), MaxChains>), GrayError> {
    check_cap("m", m, cap)?;
    check_cap("n", n, cap)?;
    let k = (m + 1) * (n + 1);
    let objects: Vec<String> = (0..k).map(|o| point_name(grid_point(n, o))).collect();
    let mut chains = BTreeMap::new();
    for x in 0..k {
        for y in 0..k {
            let (p, q) = (grid_point(n, x), grid_point(n, y));
            if p.0 <= q.0 && p.1 <= q.1 {
                chains.insert((x, y), max_chains(p, q));
            }
        }
    }
    let homs = chains.iter().map(|(&k, mc)| (k, mc.cat.clone())).collect();
    let two = Strict2Cat::new(objects, homs, vec![0; k], |(x, y, z), g, f| {
        let mut c = chains[&(x, y)].chains[f].clone();
        c.extend_from_slice(&chains[&(y, z)].chains[g][1..]);
        chains[&(x, z)].index(&c).expect("concatenation of maximal chains is maximal")
    })?;
    Ok((two, chains))
}

fn tuples(widths: &[usize]) -> Vec<Vec<usize>> {
    widths.iter().fold(vec![Vec::new()], |acc, &w| {
        acc.into_iter().flat_map(|t| (0..=w).map(move |i| [t.clone(), vec![i]].concat())).collect()
    })
}

fn tuple_name(t: &[usize]) -> String {
    if t.is_empty() {
        "id".into()
    } else {
        t.iter().map(|i| i.to_string()).collect::<Vec<_>>().join(",")
    }
}

/// `[m]([n_1], ..., [n_m])`: `hom(i, j)` is `[n_{i+1}] × ... × [n_j]`.
pub fn theta_cell(m: usize, widths: &[usize]) -> Result<Strict2Cat, GrayError> {
    theta_cell_capped(m, widths, DEFAULT_CAP)
}

pub fn theta_cell_capped(m: usize, widths: &[usize], cap: usize) -> Result<Strict2Cat, GrayError> {
    if widths.len() != m {
        return Err(GrayError::Shape(format!("{} widths for [{m}]", widths.len())));
    }
    check_cap("m", m, cap)?;
    for &w in widths {
        check_cap("width", w, cap)?;
    }
    let mut elems = BTreeMap::new();
    for i in 0..=m {
        for j in i..=m {
            elems.insert((i, j), tuples(&widths[i..j]));
        }
    }
    let homs = elems
        .iter()
        .map(|(&k, ts)| {
            let names: Vec<String> = ts.iter().map(|t| tuple_name(t)).collect();
            (k, Arc::new(FinCat::poset_from_leq(&names, |a, b| ts[a].iter().zip(&ts[b]).all(|(u, v)| u <= v))))
        })
        .collect();
    let objects = (0..=m).map(|i| i.to_string()).collect();
    Strict2Cat::new(objects, homs, vec![0; m + 1], |(x, y, z), g, f| {
        let t = [elems[&(x, y)][f].clone(), elems[&(y, z)][g].clone()].concat();
        elems[&(x, z)].iter().position(|s| *s == t).expect("tuples concatenate")
    })
}

/// A strict 2-functor between poset-enriched 2-categories.
#[derive(Clone, Debug)]
pub struct Strict2Functor {
    pub src: Strict2Cat,
    pub tgt: Strict2Cat,
    pub obj: Vec<Obj>,
    pub homs: BTreeMap<(Obj, Obj), FinFunctor>,
}

impl Strict2Functor {
    pub fn check(&self) -> Result<(), GrayError> {
        let s = &self.src;
        for x in 0..s.n_obj() {
            if self.homs[&(x, x)].obj[s.identity(x)] != self.tgt.identity(self.obj[x]) {
                return Err(GrayError::Law(format!("identity of {} is not preserved", s.objects[x])));
            }
        }
        for &(x, y, z) in s.comp.keys() {
            let (fh, gh) = (&s.homs[&(x, y)], &s.homs[&(y, z)]);
            let t = (self.obj[x], self.obj[y], self.obj[z]);
            let (hf, hg, hgf) = (&self.homs[&(x, y)], &self.homs[&(y, z)], &self.homs[&(x, z)]);
            for b in gh.morphisms() {
                for a in fh.morphisms() {
                    if hgf.mor[s.whisker((x, y, z), b, a)] != self.tgt.whisker(t, hg.mor[b], hf.mor[a]) {
                        return Err(GrayError::Law(format!("composite of {} and {}", gh.mor_name(b), fh.mor_name(a))));
                    }
                }
            }
            for g in gh.objects() {
                for f in fh.objects() {
                    if hgf.obj[s.compose((x, y, z), g, f)] != self.tgt.compose(t, hg.obj[g], hf.obj[f]) {
                        return Err(GrayError::Law(format!("composite of {} and {}", gh.obj_name(g), fh.obj_name(f))));
                    }
                }
            }
        }
        Ok(())
    }

    /// Bijective on objects and on every hom poset.
    pub fn is_isomorphism(&self) -> bool {
        let bijective = |v: &[usize], k: usize| {
            let mut seen = vec![false; k];
            v.len() == k && v.iter().all(|&i| !std::mem::replace(&mut seen[i], true))
        };
        bijective(&self.obj, self.tgt.n_obj())
            && self.src.homs.len() == self.tgt.homs.len()
            && self.homs.values().all(|h| bijective(&h.obj, h.tgt.n_obj()) && bijective(&h.mor, h.tgt.n_mor()))
    }
}

/// The collapse `[m] ⊠ [n] -> [m]([n], ..., [n])` with its certificates.
#[derive(Clone, Debug)]
pub struct Collapse {
    pub functor: Strict2Functor,
    /// one per pair `x < y` of grid points
    pub certificates: Vec<FibreCertificate>,
    /// a 1-cell goes to an identity exactly when it stays in one column
    pub inverts_exactly_vertical: bool,
}

impl Collapse {
    pub fn certified(&self) -> bool {
        self.inverts_exactly_vertical && self.certificates.iter().all(|c| c.holds())
    }
}

pub fn collapse_to_delta2(m: usize, n: usize) -> Result<Collapse, GrayError> {
    collapse_to_delta2_capped(m, n, DEFAULT_CAP)
}

pub fn collapse_to_delta2_capped(m: usize, n: usize, cap: usize) -> Result<Collapse, GrayError> {
    let (src, chains) = gray_with_chains(m, n, cap)?;
    let tgt = theta_cell_capped(m, &vec![n; m], cap)?;
    let obj: Vec<Obj> = (0..src.n_obj()).map(|o| grid_point(n, o).0).collect();
    let mut homs = BTreeMap::new();
    let mut inverts_exactly_vertical = true;
    let mut certificates = Vec::new();
    for (&(x, y), mc) in &chains {
        let (p, q) = (grid_point(n, x), grid_point(n, y));
        let th = tgt.hom(p.0, q.0).expect("columns are ordered");
        // a right step in row r goes to r
        let image = |c: &[Point]| -> Obj {
            let t: Vec<usize> = c.windows(2).filter(|w| w[0].0 != w[1].0).map(|w| w[0].1).collect();
            th.obj_id(&tuple_name(&t)).expect("tuple in the theta hom")
        };
        let f = FinFunctor::monotone(&mc.cat, th, mc.chains.iter().map(|c| image(c)).collect())?;
        for c in mc.cat.objects() {
            let collapsed = p.0 == q.0 && f.obj[c] == tgt.identity(p.0);
            inverts_exactly_vertical &= collapsed == (p.0 == q.0);
        }
        homs.insert((x, y), f);
        if x != y {
            let (ch, mx, max) = chain_posets(m, n, p, q)?;
            certificates.push(fibre_certificate(&ch, &mx, &max));
        }
    }
    let functor = Strict2Functor { src, tgt, obj, homs };
    functor.check()?;
    Ok(Collapse { functor, certificates, inverts_exactly_vertical })
}
