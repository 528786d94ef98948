//! The parametrised unit and counit of a parametrised adjunction, their
//! conjugation identities and the passage to adjoint morphisms.

use super::{Fibred, MateError, ParamAdjunction};
use crate::fincat::{pullback, FinFunctor, Mor, Obj, Pullback};
use crate::twistfree::{arrow_cat, tw, ArrowCat, TwVariant};
use serde::Serialize;

impl ParamAdjunction {
    /// `eta_gamma(y) = g lambda_gamma(y) . eta(gamma_! y)`, a morphism
    /// `gamma_! y -> g gamma_! f y` of the fibre `D(tgt gamma)`.
    pub fn unit_at(&self, gamma: Mor, y: Obj) -> Mor {
        let t = self.base.tgt(gamma);
        let a = &self.per_fibre[t];
        let ty = self.d.transport(gamma).obj[y];
        self.d.fibre(t).compose(a.right.mor[self.lambda[gamma].comp[y]], a.unit.comp[ty])
    }

    /// `eps_gamma(x) = eps(gamma_! x) . f rho_gamma(x)`, a morphism
    /// `f gamma_! g x -> gamma_! x` of the fibre `C(tgt gamma)`.
    pub fn counit_at(&self, gamma: Mor, x: Obj) -> Mor {
        let t = self.base.tgt(gamma);
        let a = &self.per_fibre[t];
        let tx = self.c.transport(gamma).obj[x];
        self.c.fibre(t).compose(a.counit.comp[tx], a.left.mor[self.rho[gamma].comp[x]])
    }
}

/// The morphism `gamma1_! x -> gamma_! y` over `u` induced by
/// `m: x -> v_! y`, where `gamma = u . gamma1 . v`; `m` is a total
/// morphism, `x` lies over `src gamma1` and `y` over `src gamma`.
#[allow(clippy::too_many_arguments)]
fn induced(fib: &Fibred, x: Obj, y: Obj, m: Mor, gamma1: Mor, gamma: Mor, u: Mor, v: Mor) -> Result<Mor, MateError> {
    let b = fib.base();
    let (b1p, bp) = (b.src(gamma1), b.src(gamma));
    let lv = fib.lift(bp, y, v)?;
    let lg = fib.lift(bp, y, gamma)?;
    let to_gamma = fib.rel.factor_after(lv, lg, b.compose(u, gamma1))?;
    let h = fib.proj.src.compose(to_gamma, m);
    Ok(fib.rel.factor_after(fib.lift(b1p, x, gamma1)?, h, u)?)
}

/// The parametrised unit `D^v ×_{B^op} Tw^l(B^op) -> Ar(D)`, sending
/// `(y, gamma)` to `eta_gamma(y)`.
#[derive(Clone, Debug)]
pub struct ParamUnit {
    pub source: Pullback,
    pub target: ArrowCat,
    pub functor: FinFunctor,
    /// `(y, gamma) -> gamma_! f y` into `C`
    pub transported_left: FinFunctor,
    /// over identities the values are the stored fibrewise units
    pub restricts_to_units: bool,
    /// `g lambda_gamma . eta gamma_!` equals `rho_gamma f . gamma_! eta`
    pub agrees_with_lax: bool,
    /// the source object `(y, id_b)` for `y` in the fibre over `b`
    pub at_identity: Vec<Vec<Obj>>,
}

pub fn param_unit(pa: &ParamAdjunction) -> Result<ParamUnit, MateError> {
    let (b, d, c) = (&pa.base, &pa.d, &pa.c);
    let bop = pa.dual_d.fib.p1.tgt.clone();
    let twl = tw(&bop, TwVariant::Left);
    let source = pullback(&pa.dual_d.fib.p1, &twl.st.p2);
    let target = arrow_cat(&d.proj.src);
    let (dt, ct) = (&d.proj.src, &c.proj.src);
    let split = |k: (Obj, Obj)| -> (Obj, Mor) {
        let (_, y) = pa.dual_d.keys.obj_keys[k.0];
        (y, twl.keyed.obj_keys[k.1])
    };
    let value = |k: (Obj, Obj)| -> Mor {
        let (y, gamma) = split(k);
        d.inc[b.tgt(gamma)].mor[pa.unit_at(gamma, y)]
    };

    let mut restricts_to_units = true;
    let mut agrees_with_lax = true;
    let mut obj = Vec::with_capacity(source.keyed.obj_keys.len());
    let mut k_obj = Vec::with_capacity(source.keyed.obj_keys.len());
    let mut at_identity: Vec<Vec<Obj>> = b.objects().map(|s| vec![usize::MAX; d.fibre(s).n_obj()]).collect();
    for (i, &k) in source.keyed.obj_keys.iter().enumerate() {
        let (y, gamma) = split(k);
        let (s, t) = (b.src(gamma), b.tgt(gamma));
        let eta = pa.unit_at(gamma, y);
        if b.is_identity(gamma) {
            restricts_to_units &= eta == pa.per_fibre[s].unit.comp[y];
            at_identity[s][y] = i;
        }
        let fy = pa.per_fibre[s].left.obj[y];
        let lax = d.fibre(t).compose(pa.rho[gamma].comp[fy], d.transport(gamma).mor[pa.per_fibre[s].unit.comp[y]]);
        agrees_with_lax &= lax == eta;
        obj.push(target.keyed.obj(&value(k)));
        k_obj.push(c.inc[t].obj[c.transport(gamma).obj[fy]]);
    }

    let mut mor = Vec::with_capacity(source.keyed.mor_keys.len());
    let mut k_mor = Vec::with_capacity(source.keyed.mor_keys.len());
    for (i, &(mk, sk)) in source.keyed.mor_keys.iter().enumerate() {
        let (v, y1, m) = pa.dual_d.keys.mor_keys[mk];
        let (gamma, gamma1, u, v2) = twl.keyed.mor_keys[sk];
        debug_assert_eq!(v, v2);
        let (from, to) = (source.keyed.cat.src(i), source.keyed.cat.tgt(i));
        let (x, _) = split(source.keyed.obj_keys[from]);
        let b1p = b.tgt(v);
        let a = induced(d, x, y1, d.inc[b1p].mor[m], gamma1, gamma, u, v)?;
        let left1 = &pa.per_fibre[b1p].left;
        let mc = c.fibre(b1p).compose(pa.lambda[v].comp[y1], left1.mor[m]);
        let fy1 = pa.per_fibre[b.src(v)].left.obj[y1];
        let cc = induced(c, left1.obj[x], fy1, c.inc[b1p].mor[mc], gamma1, gamma, u, v)?;
        let w = pa.right.map.mor[cc];
        let (eta, eta1) = (value(source.keyed.obj_keys[from]), value(source.keyed.obj_keys[to]));
        let name = || source.keyed.cat.mor_name(i).to_string();
        if d.proj.mor[a] != u || c.proj.mor[cc] != u || dt.compose(eta1, a) != dt.compose(w, eta) {
            return Err(MateError::NonFunctorial(format!("unit square at {} does not commute over the base", name())));
        }
        mor.push(target.keyed.try_mor(&(eta, eta1, a, w)).ok_or_else(|| MateError::NonFunctorial(name()))?);
        k_mor.push(cc);
    }
    let functor = FinFunctor::new(source.keyed.cat.clone(), target.keyed.cat.clone(), obj, mor)
        .map_err(|e| MateError::NonFunctorial(e.to_string()))?;
    let transported_left = FinFunctor::new(source.keyed.cat.clone(), ct.clone(), k_obj, k_mor)
        .map_err(|e| MateError::NonFunctorial(e.to_string()))?;
    Ok(ParamUnit { source, target, functor, transported_left, restricts_to_units, agrees_with_lax, at_identity })
}

/// The parametrised counit `C ×_B Tw^r(B) -> Ar(C^v)`, sending
/// `(x, gamma)` to `eps_gamma(x)` as a morphism over an identity of `B^op`.
#[derive(Clone, Debug)]
pub struct ParamCounit {
    pub source: Pullback,
    pub target: ArrowCat,
    pub functor: FinFunctor,
    pub restricts_to_counits: bool,
}

pub fn param_counit(pa: &ParamAdjunction) -> Result<ParamCounit, MateError> {
    let (b, d, c) = (&pa.base, &pa.d, &pa.c);
    let twr = tw(b, TwVariant::Right);
    let source = pullback(&c.proj, &twr.st.p1);
    let dual = &pa.dual_c.keys;
    let target = arrow_cat(&dual.cat);
    let (dt, ct) = (&d.proj.src, &c.proj.src);
    let value = |k: (Obj, Obj)| -> Mor {
        let gamma = twr.keyed.obj_keys[k.1];
        let t = b.tgt(gamma);
        let x = c.pos(k.0);
        dual.mor(&(b.id(t), c.transport(gamma).obj[x], pa.counit_at(gamma, x)))
    };

    let mut restricts_to_counits = true;
    let mut obj = Vec::with_capacity(source.keyed.obj_keys.len());
    for &k in &source.keyed.obj_keys {
        let gamma = twr.keyed.obj_keys[k.1];
        if b.is_identity(gamma) {
            let x = c.pos(k.0);
            restricts_to_counits &= pa.counit_at(gamma, x) == pa.per_fibre[b.src(gamma)].counit.comp[x];
        }
        obj.push(target.keyed.obj(&value(k)));
    }

    let mut mor = Vec::with_capacity(source.keyed.mor_keys.len());
    for (i, &(k, sk)) in source.keyed.mor_keys.iter().enumerate() {
        let (gamma, gamma1, _, v) = twr.keyed.mor_keys[sk];
        let (from, to) = (source.keyed.obj_keys[source.keyed.cat.src(i)], source.keyed.obj_keys[source.keyed.cat.tgt(i)]);
        let (s, s1, t1, t) = (b.src(gamma), b.src(gamma1), b.tgt(gamma1), b.tgt(gamma));
        let (x, x1) = (c.pos(from.0), c.pos(to.0));
        // gamma_! x -> v_! gamma1_! x1 in C
        let tx1 = c.transport(gamma1).obj[x1];
        let along = ct.compose_all(&[c.lift(t1, tx1, v)?, c.lift(s1, x1, gamma1)?, k]);
        let cm = c.rel.factor_after(c.lift(s, x, gamma)?, along, b.id(t))?;
        // the same in D for g, then f and lambda_v
        let (gs, gs1) = (&pa.per_fibre[s].right, &pa.per_fibre[s1].right);
        let tgx1 = d.transport(gamma1).obj[gs1.obj[x1]];
        let along = dt.compose_all(&[d.lift(t1, tgx1, v)?, d.lift(s1, gs1.obj[x1], gamma1)?, pa.right.map.mor[k]]);
        let dm = d.rel.factor_after(d.lift(s, gs.obj[x], gamma)?, along, b.id(t))?;
        let a = c.fibre(t).compose(pa.lambda[v].comp[tgx1], pa.per_fibre[t].left.mor[d.mor_pos(dm)]);
        let cm = c.mor_pos(cm);
        let ft1 = pa.per_fibre[t1].left.obj[tgx1];
        let (a_dual, c_dual) = (dual.mor(&(v, ft1, a)), dual.mor(&(v, tx1, cm)));
        let (eps, eps1) = (value(from), value(to));
        let name = || source.keyed.cat.mor_name(i).to_string();
        let e = c.fibre(t).compose(cm, pa.counit_at(gamma, x));
        let e1 = c.fibre(t).compose(c.transport(v).mor[pa.counit_at(gamma1, x1)], a);
        if e != e1 {
            return Err(MateError::NonFunctorial(format!("counit square at {} does not commute", name())));
        }
        mor.push(target.keyed.try_mor(&(eps, eps1, a_dual, c_dual)).ok_or_else(|| MateError::NonFunctorial(name()))?);
    }
    let functor = FinFunctor::new(source.keyed.cat.clone(), target.keyed.cat.clone(), obj, mor)
        .map_err(|e| MateError::NonFunctorial(e.to_string()))?;
    Ok(ParamCounit { source, target, functor, restricts_to_counits })
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct ConjugationReport {
    /// composable pairs and objects examined
    pub checked: usize,
    /// failures of `eta_{b c} = g b_!(lambda_c) . eta_b(c_! -)`
    pub through_lambda: Vec<String>,
    /// failures of `eta_{a b} = rho_a(b_! f -) . a_!(eta_b)`
    pub through_rho: Vec<String>,
}

impl ConjugationReport {
    pub fn holds(&self) -> bool {
        self.through_lambda.is_empty() && self.through_rho.is_empty()
    }
}

/// Both conjugation identities for the unit on every composable pair
/// `(beta, gamma)` and every `y` over `src gamma`, up to the composition
/// isomorphisms of the chosen cleavages.
pub fn conjugation_checks(pa: &ParamAdjunction) -> ConjugationReport {
    let (b, d, c) = (&pa.base, &pa.d, &pa.c);
    let mut report = ConjugationReport::default();
    for (&(beta, gamma), comp_d) in &d.pf.comp {
        let (s, t) = (b.src(gamma), b.tgt(beta));
        let comp_c = &c.pf.comp[&(beta, gamma)];
        let (dt, gt) = (d.fibre(t), &pa.per_fibre[t].right);
        let bg = b.compose(beta, gamma);
        for y in d.fibre(s).objects() {
            report.checked += 1;
            let fy = pa.per_fibre[s].left.obj[y];
            let lhs = dt.compose(pa.unit_at(bg, y), comp_d.comp[y]);
            let back = gt.mor[comp_c.comp[fy]];
            let gy = d.transport(gamma).obj[y];
            let via_lambda =
                dt.compose_all(&[back, gt.mor[c.transport(beta).mor[pa.lambda[gamma].comp[y]]], pa.unit_at(beta, gy)]);
            let gfy = c.transport(gamma).obj[fy];
            let via_rho = dt.compose_all(&[back, pa.rho[beta].comp[gfy], d.transport(beta).mor[pa.unit_at(gamma, y)]]);
            let label = || format!("({}, {}) at {}", b.mor_name(beta), b.mor_name(gamma), d.fibre(s).obj_name(y));
            if lhs != via_lambda {
                report.through_lambda.push(label());
            }
            if lhs != via_rho {
                report.through_rho.push(label());
            }
        }
    }
    report
}

/// `(y, gamma, phi: gamma_! f y -> x) -> g(phi) . eta_gamma(y)` into
/// `Ar(D)`.
#[derive(Clone, Debug)]
pub struct PassToAdjoint {
    pub source: Pullback,
    pub functor: FinFunctor,
    /// on each fibre, `phi -> g(phi) . eta(y)` is a bijection
    /// `C_b(f y, x) -> D_b(y, g x)`
    pub fibrewise_bijective: bool,
}

pub fn pass_to_adjoint(pa: &ParamAdjunction, unit: &ParamUnit) -> Result<PassToAdjoint, MateError> {
    let (b, d, c) = (&pa.base, &pa.d, &pa.c);
    let (dt, ct) = (&d.proj.src, &c.proj.src);
    let arc = arrow_cat(ct);
    let source = pullback(&unit.transported_left, &arc.st.p1);
    let ar = &unit.target;
    let g = &pa.right.map;
    let value = |k: (Obj, Obj)| -> Mor {
        let eta = ar.keyed.obj_keys[unit.functor.obj[k.0]];
        dt.compose(g.mor[arc.keyed.obj_keys[k.1]], eta)
    };
    let obj: Vec<Obj> = source.keyed.obj_keys.iter().map(|&k| ar.keyed.obj(&value(k))).collect();
    let mut mor = Vec::with_capacity(source.keyed.mor_keys.len());
    for (i, &(uk, sq)) in source.keyed.mor_keys.iter().enumerate() {
        let (_, _, a, _) = ar.keyed.mor_keys[unit.functor.mor[uk]];
        let (_, _, _, w) = arc.keyed.mor_keys[sq];
        let (from, to) = (source.keyed.obj_keys[source.keyed.cat.src(i)], source.keyed.obj_keys[source.keyed.cat.tgt(i)]);
        let key = (value(from), value(to), a, g.mor[w]);
        mor.push(ar.keyed.try_mor(&key).ok_or_else(|| MateError::NonFunctorial(source.keyed.cat.mor_name(i).to_string()))?);
    }
    let functor = FinFunctor::new(source.keyed.cat.clone(), ar.keyed.cat.clone(), obj, mor)
        .map_err(|e| MateError::NonFunctorial(e.to_string()))?;

    let mut fibrewise_bijective = true;
    for s in b.objects() {
        let (df, cf, a) = (d.fibre(s), c.fibre(s), &pa.per_fibre[s]);
        for y in df.objects() {
            let uk = unit.at_identity[s][y];
            for x in cf.objects() {
                let mut seen: Vec<Mor> = cf
                    .hom(a.left.obj[y], x)
                    .iter()
                    .map(|&phi| {
                        let k = source.keyed.obj(&(uk, arc.keyed.obj(&c.inc[s].mor[phi])));
                        ar.keyed.obj_keys[functor.obj[k]]
                    })
                    .collect();
                seen.sort_unstable();
                seen.dedup();
                let expected: Vec<Mor> = {
                    let mut v: Vec<Mor> = df.hom(y, a.right.obj[x]).iter().map(|&m| d.inc[s].mor[m]).collect();
                    v.sort_unstable();
                    v
                };
                fibrewise_bijective &= seen == expected;
            }
        }
    }
    Ok(PassToAdjoint { source, functor, fibrewise_bijective })
}
