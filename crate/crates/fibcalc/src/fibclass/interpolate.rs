use super::shapes::{q_fibration, q_prime_fibration};
use super::taxonomy::FibAnalysis;
use super::{FibError, LiftKind, TwoVarFib};
use crate::fincat::{FinCat, FinFunctor, Mor, Obj};
use serde::Serialize;
use std::collections::VecDeque;
use std::sync::Arc;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Mode {
    /// curved orthofibrations, diagrams of shape `Q`
    CurvedOrtho,
    /// Gray fibrations, diagrams of shape `Q'`
    Gray,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Shape {
    Q,
    QPrime,
}

/// A `Q`- or `Q'`-shaped diagram in the total category, built from the
/// chosen lifts at `source` over the base arrows `alpha` and `beta`.
#[derive(Clone, Debug)]
pub struct InterpolationDiagram {
    pub shape: Shape,
    pub source: Obj,
    pub alpha: Mor,
    pub beta: Mor,
    pub image: FinFunctor,
    /// image of `11' -> 11`
    pub interpolating_edge: Mor,
}

/// Functor out of a thin shape determined by images of generating arrows.
fn diagram_functor(
    shape: &Arc<FinCat>,
    target: &Arc<FinCat>,
    objs: Vec<Obj>,
    gens: &[(Obj, Obj, Mor)],
) -> Result<FinFunctor, FibError> {
    let mut mor = Vec::with_capacity(shape.n_mor());
    for f in shape.morphisms() {
        let (s, t) = (shape.src(f), shape.tgt(f));
        // breadth-first path of generators from s to t
        let mut prev: Vec<Option<(Obj, Mor)>> = vec![None; shape.n_obj()];
        let mut seen = vec![false; shape.n_obj()];
        seen[s] = true;
        let mut queue = VecDeque::from([s]);
        while let Some(u) = queue.pop_front() {
            for &(a, b, g) in gens {
                if a == u && !seen[b] {
                    seen[b] = true;
                    prev[b] = Some((u, g));
                    queue.push_back(b);
                }
            }
        }
        let mut img = target.id(objs[s]);
        let mut path = Vec::new();
        let mut cur = t;
        while cur != s {
            let (u, g) = prev[cur].expect("shape generated by its arrows");
            path.push(g);
            cur = u;
        }
        for g in path.into_iter().rev() {
            img = target.compose(g, img);
        }
        mor.push(img);
    }
    Ok(FinFunctor::new(shape.clone(), target.clone(), objs, mor)?)
}

pub(crate) fn diagrams(an: &FibAnalysis, mode: Mode) -> Result<Vec<InterpolationDiagram>, FibError> {
    let p = &an.fib;
    let (e, a_, b_) = (&p.total, &p.base_a, &p.base_b);
    let shape = match mode {
        Mode::CurvedOrtho => q_fibration().total,
        Mode::Gray => q_prime_fibration().total,
    };
    let mut out = Vec::new();
    for x in e.objects() {
        let (a, b) = p.split_obj(p.proj.obj[x]);
        let alphas: Vec<Mor> = match mode {
            Mode::CurvedOrtho => a_.inn(a).to_vec(),
            Mode::Gray => a_.out(a).to_vec(),
        };
        for &alpha in alphas.iter().filter(|&&u| !a_.is_identity(u)) {
            for &beta in b_.out(b).iter().filter(|&&v| !b_.is_identity(v)) {
                let d = match mode {
                    Mode::CurvedOrtho => curved(an, &shape, x, alpha, beta)?,
                    Mode::Gray => gray(an, &shape, x, alpha, beta)?,
                };
                out.push(d);
            }
        }
    }
    Ok(out)
}

/// `alpha: a' -> a`, `beta: b -> b'`, `x` over `(a, b)`.
fn curved(an: &FibAnalysis, shape: &Arc<FinCat>, x: Obj, alpha: Mor, beta: Mor) -> Result<InterpolationDiagram, FibError> {
    let p: &TwoVarFib = &an.fib;
    let (e, a_, b_) = (&p.total, &p.base_a, &p.base_b);
    let (a, b) = p.split_obj(p.proj.obj[x]);
    let (a1, b1) = (a_.src(alpha), b_.tgt(beta));
    let full = &an.full;
    let c1 = full.require_lift(LiftKind::Cartesian, x, p.base_mor(alpha, b_.id(b)))?;
    let d1 = full.require_lift(LiftKind::Cocartesian, x, p.base_mor(a_.id(a), beta))?;
    let (x10, x01) = (e.src(c1), e.tgt(d1));
    let c2 = full.require_lift(LiftKind::Cartesian, x01, p.base_mor(alpha, b_.id(b1)))?;
    let d2 = full.require_lift(LiftKind::Cocartesian, x10, p.base_mor(a_.id(a1), beta))?;
    let (x11, x11p) = (e.src(c2), e.tgt(d2));
    let h = e.compose(d1, c1);
    let over_id = p.base.id(p.base_obj(a1, b1));
    // factor through the cartesian edge first, then through the cocartesian one
    let m = full.factor_before(c2, h, p.base_mor(a_.id(a1), beta))?;
    let i1 = full.factor_after(d2, m, over_id)?;
    // and in the other order
    let n = full.factor_after(d2, h, p.base_mor(alpha, b_.id(b1)))?;
    let i2 = full.factor_before(c2, n, over_id)?;
    if i1 != i2 {
        return Err(FibError::InconsistentCriteria {
            flag: "interpolating edge".into(),
            detail: format!("{} vs {}", e.mor_name(i1), e.mor_name(i2)),
        });
    }
    // Q: 0:10 1:00 2:11' 3:11 4:01
    let image = diagram_functor(
        shape,
        e,
        vec![x10, x, x11p, x11, x01],
        &[(0, 1, c1), (0, 2, d2), (2, 3, i1), (3, 4, c2), (1, 4, d1)],
    )?;
    Ok(InterpolationDiagram { shape: Shape::Q, source: x, alpha, beta, image, interpolating_edge: i1 })
}

/// `alpha: a -> a'`, `beta: b -> b'`, `x` over `(a, b)`.
fn gray(an: &FibAnalysis, shape: &Arc<FinCat>, x: Obj, alpha: Mor, beta: Mor) -> Result<InterpolationDiagram, FibError> {
    let p: &TwoVarFib = &an.fib;
    let (e, a_, b_) = (&p.total, &p.base_a, &p.base_b);
    let (a, b) = p.split_obj(p.proj.obj[x]);
    let (a1, b1) = (a_.tgt(alpha), b_.tgt(beta));
    let (full, right) = (&an.full, &an.right);
    let u1 = full.require_lift(LiftKind::Cocartesian, x, p.base_mor(alpha, b_.id(b)))?;
    let v1 = right.require_lift(LiftKind::Cocartesian, x, p.base_mor(a_.id(a), beta))?;
    let (x10, x01) = (e.tgt(u1), e.tgt(v1));
    let v2 = right.require_lift(LiftKind::Cocartesian, x10, p.base_mor(a_.id(a1), beta))?;
    let u2 = full.require_lift(LiftKind::Cocartesian, x01, p.base_mor(alpha, b_.id(b1)))?;
    let (x11p, x11) = (e.tgt(v2), e.tgt(u2));
    let h = e.compose(u2, v1);
    let over_id = p.base.id(p.base_obj(a1, b1));
    // through the p-cocartesian edge, then the p_r-cocartesian one
    let m = full.factor_after(u1, h, p.base_mor(a_.id(a1), beta))?;
    let i1 = right.factor_after(v2, m, over_id)?;
    // directly through the locally cocartesian composite
    let l = e.compose(v2, u1);
    let i2 = full.factor_after(l, h, over_id)?;
    if i1 != i2 {
        return Err(FibError::InconsistentCriteria {
            flag: "interpolating edge".into(),
            detail: format!("{} vs {}", e.mor_name(i1), e.mor_name(i2)),
        });
    }
    // Q': 0:00 1:10 2:01 3:11' 4:11
    let image = diagram_functor(
        shape,
        e,
        vec![x, x10, x01, x11p, x11],
        &[(0, 1, u1), (1, 3, v2), (3, 4, i1), (0, 2, v1), (2, 4, u2)],
    )?;
    Ok(InterpolationDiagram { shape: Shape::QPrime, source: x, alpha, beta, image, interpolating_edge: i1 })
}

/// Every interpolating diagram of `p` (one per source object and pair of
/// non-identity base arrows). Requires the matching classification flag.
pub fn interpolating_edges(p: &TwoVarFib, mode: Mode) -> Result<Vec<InterpolationDiagram>, FibError> {
    let an = FibAnalysis::new(p);
    let tax = an.classify()?;
    let (ok, flag) = match mode {
        Mode::CurvedOrtho => (tax.curved_ortho, "curved_ortho"),
        Mode::Gray => (tax.gray, "gray"),
    };
    if !ok {
        return Err(FibError::NotAFibration(format!("{flag} is false: {:?}", tax.witnesses.get(flag))));
    }
    diagrams(&an, mode)
}
