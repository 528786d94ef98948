//! Backtracking enumeration of functors between finite categories.

use super::{FinCat, FinFunctor, Mor, Obj};
use std::sync::Arc;

/// Constraints for a functor search.
pub struct FunctorSearch<'a> {
    /// Allowed images per source object.
    pub obj_candidates: Vec<Vec<Obj>>,
    /// Extra admissibility test for `(source morphism, target morphism)`.
    pub mor_ok: Option<&'a (dyn Fn(Mor, Mor) -> bool + Sync)>,
    /// Only enumerate fully faithful functors.
    pub fully_faithful: bool,
}

impl<'a> FunctorSearch<'a> {
    pub fn unconstrained(x: &FinCat, y: &FinCat) -> Self {
        FunctorSearch {
            obj_candidates: vec![y.objects().collect(); x.n_obj()],
            mor_ok: None,
            fully_faithful: false,
        }
    }
}

struct State<'s> {
    x: &'s FinCat,
    y: &'s FinCat,
    spec: &'s FunctorSearch<'s>,
    obj: Vec<Obj>,
    mor: Vec<Mor>,
    /// non-identity morphisms in assignment order
    order: Vec<Mor>,
    /// triples (g, f, gf) completed once position i is assigned
    checks: Vec<Vec<(Mor, Mor, Mor)>>,
}

const UNSET: usize = usize::MAX;

/// Enumerate functors satisfying `spec`, calling `visit` on each; `visit`
/// returns `false` to stop. Returns the number of functors visited.
pub fn search_functors(
    x: &Arc<FinCat>,
    y: &Arc<FinCat>,
    spec: &FunctorSearch<'_>,
    visit: &mut dyn FnMut(&FinFunctor) -> bool,
) -> usize {
    let n = x.n_obj();
    // objects with few candidates first
    let mut obj_order: Vec<Obj> = x.objects().collect();
    obj_order.sort_by_key(|&o| spec.obj_candidates[o].len());
    let order: Vec<Mor> = x.morphisms().filter(|&f| !x.is_identity(f)).collect();
    let mut pos = vec![UNSET; x.n_mor()];
    for (i, &f) in order.iter().enumerate() {
        pos[f] = i;
    }
    let mut checks = vec![Vec::new(); order.len()];
    for f in x.morphisms() {
        for &g in x.out(x.tgt(f)) {
            let h = x.compose(g, f);
            let ps = [pos[g], pos[f], pos[h]];
            if ps[0] == UNSET || ps[1] == UNSET {
                continue;
            }
            let last = ps.iter().filter(|&&p| p != UNSET).max().copied().unwrap();
            checks[last].push((g, f, h));
        }
    }
    let mut st = State {
        x,
        y,
        spec,
        obj: vec![UNSET; n],
        mor: vec![UNSET; x.n_mor()],
        order,
        checks,
    };
    let mut count = 0usize;
    let mut stop = false;
    assign_obj(&mut st, &obj_order, 0, &mut |st| {
        assign_mor(st, 0, &mut |st| {
            let f = FinFunctor::new_unchecked(
                Arc::clone(x),
                Arc::clone(y),
                st.obj.clone(),
                st.mor.clone(),
            );
            count += 1;
            if !visit(&f) {
                stop = true;
            }
            !stop
        })
    });
    count
}

fn assign_obj(st: &mut State<'_>, order: &[Obj], i: usize, k: &mut dyn FnMut(&mut State<'_>) -> bool) -> bool {
    if i == order.len() {
        for o in st.x.objects() {
            st.mor[st.x.id(o)] = st.y.id(st.obj[o]);
        }
        return k(st);
    }
    let o = order[i];
    let cands = st.spec.obj_candidates[o].clone();
    for c in cands {
        st.obj[o] = c;
        if st.spec.fully_faithful && !hom_sizes_ok(st, o, &order[..=i]) {
            continue;
        }
        if !identity_ok(st, o) {
            continue;
        }
        if !assign_obj(st, order, i + 1, k) {
            st.obj[o] = UNSET;
            return false;
        }
    }
    st.obj[o] = UNSET;
    true
}

fn identity_ok(st: &State<'_>, o: Obj) -> bool {
    match st.spec.mor_ok {
        Some(ok) => ok(st.x.id(o), st.y.id(st.obj[o])),
        None => true,
    }
}

fn hom_sizes_ok(st: &State<'_>, o: Obj, assigned: &[Obj]) -> bool {
    let (x, y) = (st.x, st.y);
    for &p in assigned {
        let (fo, fp) = (st.obj[o], st.obj[p]);
        if x.hom(o, p).len() != y.hom(fo, fp).len() || x.hom(p, o).len() != y.hom(fp, fo).len() {
            return false;
        }
    }
    true
}

fn assign_mor(st: &mut State<'_>, i: usize, k: &mut dyn FnMut(&mut State<'_>) -> bool) -> bool {
    if i == st.order.len() {
        return k(st);
    }
    let f = st.order[i];
    let (a, b) = (st.obj[st.x.src(f)], st.obj[st.x.tgt(f)]);
    let cands: Vec<Mor> = st.y.hom(a, b).to_vec();
    for c in cands {
        if let Some(ok) = st.spec.mor_ok {
            if !ok(f, c) {
                continue;
            }
        }
        if st.spec.fully_faithful {
            // injective on each hom-set
            let (s, t) = (st.x.src(f), st.x.tgt(f));
            if st.x.hom(s, t).iter().any(|&g| g != f && st.mor[g] == c) {
                continue;
            }
        }
        st.mor[f] = c;
        let ok = st.checks[i]
            .iter()
            .all(|&(g, h, gh)| st.y.compose(st.mor[g], st.mor[h]) == st.mor[gh]);
        if ok && !assign_mor(st, i + 1, k) {
            st.mor[f] = UNSET;
            return false;
        }
    }
    st.mor[f] = UNSET;
    true
}
