//! Which locally cocartesian `p: E -> X × Y` are cocartesian over `S ⊠ T`.

use super::scaled::{degeneracy, gray_scaling, split_simplex, ScaledComplex, Simplex};
use super::GrayError;
use crate::fibclass::{classify, LiftKind, Rel, TwoVarFib};
use crate::fincat::{pullback, FinCat, FinFunctor};
use serde::Serialize;
use std::sync::Arc;

#[derive(Clone, Debug, Serialize)]
pub struct Condition {
    pub checked: usize,
    /// first triangle over which `p` is not cocartesian
    pub witness: Option<String>,
}

impl Condition {
    pub fn holds(&self) -> bool {
        self.witness.is_none()
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct GrayConditionReport {
    pub locally_cocartesian: bool,
    /// `E_x -> Y` cocartesian over `T`
    pub fibres_over_x: Condition,
    /// `E_y -> X` cocartesian over `S`
    pub fibres_over_y: Condition,
    /// cocartesian over every `(s_1 α, s_0 β)`
    pub corners: Condition,
    pub scaled_checked: usize,
    /// scaled 2-simplices of `S ⊠ T` over which `p` is not cocartesian
    pub scaled_failures: Vec<String>,
    /// the conditions imply cocartesian over all of `S ⊠ T`
    pub closure_holds: bool,
    /// the gray flag of the taxonomy, when `S` and `T` are maximal
    pub taxonomy_gray: Option<bool>,
}

impl GrayConditionReport {
    pub fn conditions_hold(&self) -> bool {
        self.fibres_over_x.holds() && self.fibres_over_y.holds() && self.corners.holds()
    }

    pub fn agrees(&self) -> bool {
        self.closure_holds && self.taxonomy_gray.is_none_or(|g| g == (self.locally_cocartesian && self.conditions_hold()))
    }
}

struct Over<'a> {
    p: &'a TwoVarFib,
    tri: Arc<FinCat>,
}

impl Over<'_> {
    fn name(&self, a: &[usize], b: &[usize]) -> String {
        let base = &self.p.base;
        a.iter().zip(b).map(|(&u, &v)| base.obj_name(self.p.base_obj(u, v))).collect::<Vec<_>>().join(" -> ")
    }

    /// `σ^* E -> [2]` is a cocartesian fibration.
    fn cocartesian(&self, a: &[usize], b: &[usize]) -> Result<bool, GrayError> {
        let obj = a.iter().zip(b).map(|(&u, &v)| self.p.base_obj(u, v)).collect();
        let sigma = FinFunctor::monotone(&self.tri, &self.p.base, obj)?;
        let pb = pullback(&sigma, &self.p.proj);
        Ok(Rel::new(&pb.to_left).is_fibration(LiftKind::Cocartesian))
    }

    fn condition(&self, triangles: impl Iterator<Item = (Simplex, Simplex)>) -> Result<Condition, GrayError> {
        let mut checked = 0;
        for (a, b) in triangles {
            checked += 1;
            if !self.cocartesian(&a, &b)? {
                return Ok(Condition { checked, witness: Some(self.name(&a, &b)) });
            }
        }
        Ok(Condition { checked, witness: None })
    }
}

/// `s` and `t` are scaled nerves of `p.base_a` and `p.base_b`.
pub fn loc_cocart_gray_classifier(p: &TwoVarFib, s: &ScaledComplex, t: &ScaledComplex) -> Result<GrayConditionReport, GrayError> {
    if !p.base_a.is_thin() || !p.base_b.is_thin() {
        return Err(GrayError::NotThin("base factor".into()));
    }
    if s.n_vertices() != p.base_a.n_obj() || t.n_vertices() != p.base_b.n_obj() {
        return Err(GrayError::Shape("scaled complexes do not match the base factors".into()));
    }
    let over = Over { p, tri: Arc::new(FinCat::chain(2)) };
    let locally_cocartesian = Rel::new(&p.proj).is_fibration(LiftKind::LocallyCocartesian);

    let fibres_over_x =
        over.condition((0..s.n_vertices()).flat_map(|x| t.scaling.iter().map(move |tau| (vec![x; 3], tau.clone()))))?;
    let fibres_over_y =
        over.condition((0..t.n_vertices()).flat_map(|y| s.scaling.iter().map(move |sigma| (sigma.clone(), vec![y; 3]))))?;
    let corners = over.condition(
        s.simplices[1]
            .iter()
            .flat_map(|alpha| t.simplices[1].iter().map(move |beta| (degeneracy(alpha, 1), degeneracy(beta, 0)))),
    )?;

    let prod = gray_scaling(s, t);
    let mut scaled_failures = Vec::new();
    for sim in &prod.scaling {
        let (a, b) = split_simplex(t, sim);
        if !over.cocartesian(&a, &b)? {
            scaled_failures.push(over.name(&a, &b));
        }
    }
    let conditions = fibres_over_x.holds() && fibres_over_y.holds() && corners.holds();
    let closure_holds = !(locally_cocartesian && conditions) || scaled_failures.is_empty();
    let taxonomy_gray = if s.is_sharp() && t.is_sharp() { Some(classify(p)?.gray) } else { None };

    Ok(GrayConditionReport {
        locally_cocartesian,
        fibres_over_x,
        fibres_over_y,
        corners,
        scaled_checked: prod.scaling.len(),
        scaled_failures,
        closure_holds,
        taxonomy_gray,
    })
}
