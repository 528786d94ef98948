//! JSON encoding of functors into a product.

use super::{FibError, TwoVarFib};
use crate::fincat::io::{functor_from_json, functor_to_json, to_json, validate, CategoryJson, FunctorJson};
use serde::{Deserialize, Serialize};
use std::sync::Arc;

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct FibrationJson {
    pub total: CategoryJson,
    pub base_a: CategoryJson,
    pub base_b: CategoryJson,
    pub p1: FunctorJson,
    pub p2: FunctorJson,
}

pub fn fib_from_json(raw: &FibrationJson) -> Result<TwoVarFib, FibError> {
    let total = Arc::new(validate(&raw.total)?);
    let a = Arc::new(validate(&raw.base_a)?);
    let b = Arc::new(validate(&raw.base_b)?);
    let p1 = functor_from_json(&raw.p1, &total, &a)?;
    let p2 = functor_from_json(&raw.p2, &total, &b)?;
    TwoVarFib::from_components(p1, p2)
}

pub fn fib_to_json(p: &TwoVarFib) -> FibrationJson {
    FibrationJson {
        total: to_json(&p.total),
        base_a: to_json(&p.base_a),
        base_b: to_json(&p.base_b),
        p1: functor_to_json(&p.p1),
        p2: functor_to_json(&p.p2),
    }
}
