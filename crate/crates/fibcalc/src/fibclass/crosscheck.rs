use super::interpolate::{diagrams, Mode};
use super::taxonomy::FibAnalysis;
use super::{FibError, LiftKind, Rel, TwoVarFib};
use crate::fincat::{pullback, FinCat, FinFunctor, Mor, Obj};
use serde::Serialize;
use std::sync::Arc;

/// A group of criteria that should all take the same value.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CrossCheck {
    pub group: String,
    pub criteria: Vec<(String, bool)>,
}

impl CrossCheck {
    fn new(group: &str, criteria: Vec<(&str, bool)>) -> CrossCheck {
        CrossCheck {
            group: group.into(),
            criteria: criteria.into_iter().map(|(n, v)| (n.to_string(), v)).collect(),
        }
    }

    pub fn agrees(&self) -> bool {
        self.criteria.windows(2).all(|w| w[0].1 == w[1].1)
    }

    pub fn value(&self) -> Option<bool> {
        self.agrees().then(|| self.criteria.first().is_none_or(|c| c.1))
    }
}

fn fibres_are_groupoids(p: &TwoVarFib) -> bool {
    let (e, s) = (&p.total, &p.base);
    e.morphisms().all(|f| !s.is_identity(p.proj.mor[f]) || e.is_iso(f))
}

/// `alpha^*: E_a -> E_a'` preserves cocartesian edges of the fibres over
/// `A`, for every `alpha: a' -> a`.
fn pullbacks_preserve_fibre_cocartesian(an: &FibAnalysis) -> Result<bool, FibError> {
    let p = &an.fib;
    let (e, a_, b_) = (&p.total, &p.base_a, &p.base_b);
    for alpha in a_.morphisms() {
        let (a1, a) = (a_.src(alpha), a_.tgt(alpha));
        for u in e.morphisms() {
            let (pu1, pu2) = p.split_mor(p.proj.mor[u]);
            if pu1 != a_.id(a) || !an.fib_a.cocartesian[u] {
                continue;
            }
            let (x, y) = (e.src(u), e.tgt(u));
            let lift = |z: Obj| {
                let bz = p.p2.obj[z];
                an.full.require_lift(LiftKind::Cartesian, z, p.base_mor(alpha, b_.id(bz)))
            };
            let (cx, cy) = (lift(x)?, lift(y)?);
            let moved = an.full.factor_before(cy, e.compose(u, cx), p.base_mor(a_.id(a1), pu2))?;
            if !an.fib_a.cocartesian[moved] {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// `beta_!: E_b' -> E_b` preserves cartesian edges of the fibres over
/// `B`, for every `beta: b' -> b`.
fn pushforwards_preserve_fibre_cartesian(an: &FibAnalysis) -> Result<bool, FibError> {
    let p = &an.fib;
    let (e, a_, b_) = (&p.total, &p.base_a, &p.base_b);
    for beta in b_.morphisms() {
        let (b1, b) = (b_.src(beta), b_.tgt(beta));
        for u in e.morphisms() {
            let (pu1, pu2) = p.split_mor(p.proj.mor[u]);
            if pu2 != b_.id(b1) || !an.fib_b.cartesian[u] {
                continue;
            }
            let (x, y) = (e.src(u), e.tgt(u));
            let lift = |z: Obj| {
                let az = p.p1.obj[z];
                an.full.require_lift(LiftKind::Cocartesian, z, p.base_mor(a_.id(az), beta))
            };
            let (dx, dy) = (lift(x)?, lift(y)?);
            let moved = an.full.factor_after(dx, e.compose(dy, u), p.base_mor(pu1, b_.id(b)))?;
            if !an.fib_b.cartesian[moved] {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// `alpha_!: E_a -> E_a'` preserves cocartesian edges of the fibres over
/// `A`, for every `alpha: a -> a'`.
pub(crate) fn pushforwards_preserve_fibre_cocartesian(an: &FibAnalysis) -> Result<bool, FibError> {
    let p = &an.fib;
    let (e, a_, b_) = (&p.total, &p.base_a, &p.base_b);
    for alpha in a_.morphisms() {
        let (a, a1) = (a_.src(alpha), a_.tgt(alpha));
        for u in e.morphisms() {
            let (pu1, pu2) = p.split_mor(p.proj.mor[u]);
            if pu1 != a_.id(a) || !an.fib_a.cocartesian[u] {
                continue;
            }
            let (x, y) = (e.src(u), e.tgt(u));
            let lift = |z: Obj| {
                let bz = p.p2.obj[z];
                an.full.require_lift(LiftKind::Cocartesian, z, p.base_mor(alpha, b_.id(bz)))
            };
            let (ux, uy) = (lift(x)?, lift(y)?);
            let moved = an.full.factor_after(ux, e.compose(uy, u), p.base_mor(a_.id(a1), pu2))?;
            if !an.fib_a.cocartesian[moved] {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// `p` restricted along the triangle `s0 -f-> s1 -g-> s2` of the base is a
/// cocartesian fibration over `[2]`.
pub(crate) fn cocartesian_over_triangle(p: &TwoVarFib, f: Mor, g: Mor) -> bool {
    let s = &p.base;
    let chain = Arc::new(FinCat::chain(2));
    let objs = vec![s.src(f), s.tgt(f), s.tgt(g)];
    let sigma = FinFunctor::new_unchecked(
        chain.clone(),
        s.clone(),
        objs.clone(),
        chain
            .morphisms()
            .map(|m| match (chain.src(m), chain.tgt(m)) {
                (i, j) if i == j => s.id(objs[i]),
                (0, 1) => f,
                (1, 2) => g,
                _ => s.compose(g, f),
            })
            .collect(),
    );
    let pb = pullback(&sigma, &p.proj);
    Rel::new(&pb.to_left).is_fibration(LiftKind::Cocartesian)
}

/// Composable pairs `(f, g)` of base morphisms `(u, v)` whose components
/// are selected by the given predicates.
fn triangles(
    p: &TwoVarFib,
    first: impl Fn(Mor, Mor) -> bool,
    second: impl Fn(Mor, Mor) -> bool,
) -> Vec<(Mor, Mor)> {
    let s = &p.base;
    let mut out = Vec::new();
    for f in s.morphisms() {
        let (u, v) = p.split_mor(f);
        if !first(u, v) {
            continue;
        }
        for &g in s.out(s.tgt(f)) {
            let (u2, v2) = p.split_mor(g);
            if second(u2, v2) {
                out.push((f, g));
            }
        }
    }
    out
}

fn over_all(p: &TwoVarFib, tris: &[(Mor, Mor)]) -> bool {
    tris.iter().all(|&(f, g)| cocartesian_over_triangle(p, f, g))
}

/// Vertical (`B`-direction) then horizontal (`A`-direction) triangles.
pub(crate) fn vertical_then_horizontal(p: &TwoVarFib) -> Vec<(Mor, Mor)> {
    let (a_, b_) = (p.base_a.clone(), p.base_b.clone());
    triangles(p, |u, _| a_.is_identity(u), |_, v| b_.is_identity(v))
}

/// The three triangle forms whose cocartesianness characterises Gray
/// fibrations among locally cocartesian fibrations.
pub(crate) fn gray_triangles(p: &TwoVarFib) -> Vec<(Mor, Mor)> {
    let (a_, b_) = (p.base_a.clone(), p.base_b.clone());
    let vert = |u: Mor, _v: Mor| a_.is_identity(u);
    let horiz = |_u: Mor, v: Mor| b_.is_identity(v);
    let mut out = triangles(p, vert, vert);
    out.extend(triangles(p, horiz, horiz));
    out.extend(triangles(p, horiz, vert));
    out
}

/// Pairwise agreement of the equivalent criteria that apply to `p`.
pub fn cross_check(p: &TwoVarFib) -> Result<Vec<CrossCheck>, FibError> {
    let an = FibAnalysis::new(p);
    let tax = an.classify()?;
    let e = &p.total;
    let mut out = Vec::new();

    out.push(CrossCheck::new("curved_ortho", an.curved_ortho_criteria()));

    if tax.curved_ortho {
        let interp = diagrams(&an, Mode::CurvedOrtho)?;
        out.push(CrossCheck::new(
            "ortho",
            vec![
                ("interpolating edges invertible", interp.iter().all(|d| e.is_iso(d.interpolating_edge))),
                ("pullback transports preserve fibre-cocartesian edges", pullbacks_preserve_fibre_cocartesian(&an)?),
                ("pushforward transports preserve fibre-cartesian edges", pushforwards_preserve_fibre_cartesian(&an)?),
            ],
        ));
        let all_kept = |r: &Rel, flags: &[bool]| e.morphisms().all(|f| !r.keeps(f) || flags[f]);
        let components = an.one.is_fibration(LiftKind::Cartesian)
            && e.morphisms().all(|f| an.one.cartesian[f] == p.base_b.is_iso(p.p2.mor[f]))
            && an.two.is_fibration(LiftKind::Cocartesian)
            && e.morphisms().all(|f| an.two.cocartesian[f] == p.base_a.is_iso(p.p1.mor[f]));
        out.push(CrossCheck::new(
            "bifib",
            vec![
                ("conservative", tax.conservative),
                ("groupoid fibres", fibres_are_groupoids(p)),
                ("p_l right fibration", tax.pl_cart && all_kept(&an.left, &an.left.cartesian)),
                ("p_r left fibration", tax.pr_cocart && all_kept(&an.right, &an.right.cocartesian)),
                ("components", components),
            ],
        ));
    }

    if tax.locally_cocartesian_fib {
        out.push(CrossCheck::new(
            "gray_triangles",
            vec![("gray", tax.gray), ("cocartesian over the three triangle forms", over_all(p, &gray_triangles(p)))],
        ));
    }

    if tax.gray {
        let interp = diagrams(&an, Mode::Gray)?;
        out.push(CrossCheck::new(
            "gray_cocart",
            vec![
                ("cocartesian fibration", tax.cocartesian_fib),
                ("cocartesian over vertical-then-horizontal triangles", over_all(p, &vertical_then_horizontal(p))),
                ("interpolating edges invertible", interp.iter().all(|d| e.is_iso(d.interpolating_edge))),
                ("pushforward transports preserve fibre-cocartesian edges", pushforwards_preserve_fibre_cocartesian(&an)?),
                ("straightened transports are maps of cocartesian fibrations", crate::grothendieck::transports_preserve_cocartesian(p)?),
            ],
        ));
    }

    let groupoid_fibres = fibres_are_groupoids(p);
    out.push(CrossCheck::new(
        "left_fib",
        vec![
            ("left fibration", tax.left_fib),
            ("cocartesian and conservative", tax.cocartesian_fib && tax.conservative),
            ("cocartesian with groupoid fibres", tax.cocartesian_fib && groupoid_fibres),
        ],
    ));
    out.push(CrossCheck::new(
        "right_fib",
        vec![
            ("right fibration", tax.right_fib),
            ("cartesian and conservative", tax.cartesian_fib && tax.conservative),
            ("cartesian with groupoid fibres", tax.cartesian_fib && groupoid_fibres),
        ],
    ));
    Ok(out)
}
