//! JSON encoding of maps between fibrations over a common base.

use super::{MapOver, MateError};
use crate::fincat::io::{functor_from_json, functor_to_json, to_json, validate, CategoryJson, FunctorJson};
use serde::{Deserialize, Serialize};
use std::sync::Arc;

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct MapOverJson {
    pub source: CategoryJson,
    pub target: CategoryJson,
    pub base: CategoryJson,
    pub map: FunctorJson,
    pub source_proj: FunctorJson,
    pub target_proj: FunctorJson,
}

pub fn map_from_json(raw: &MapOverJson) -> Result<MapOver, MateError> {
    let c = Arc::new(validate(&raw.source)?);
    let d = Arc::new(validate(&raw.target)?);
    let b = Arc::new(validate(&raw.base)?);
    MapOver::new(
        functor_from_json(&raw.map, &c, &d)?,
        functor_from_json(&raw.source_proj, &c, &b)?,
        functor_from_json(&raw.target_proj, &d, &b)?,
    )
}

pub fn map_to_json(m: &MapOver) -> MapOverJson {
    MapOverJson {
        source: to_json(&m.map.src),
        target: to_json(&m.map.tgt),
        base: to_json(m.base()),
        map: functor_to_json(&m.map),
        source_proj: functor_to_json(&m.src_proj),
        target_proj: functor_to_json(&m.tgt_proj),
    }
}
