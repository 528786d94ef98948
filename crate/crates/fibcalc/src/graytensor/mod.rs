//! The strict Gray tensor of simplices, the collapse onto `Θ_2` cells and
//! locally cocartesian fibrations over scaled products.

mod chains;
mod classify;
mod scaled;
mod strict2;

pub use chains::{chain_name, chain_posets, fibre_certificate, max_chains, max_of, Chain, ChainPoset, FibreCertificate, MaxChains};
pub use classify::{loc_cocart_gray_classifier, Condition, GrayConditionReport};
pub use scaled::{degeneracy, face, gray_scaling, is_degenerate, is_gray_scaled, product_vertex, split_simplex, ScaledComplex, Simplex};
pub use strict2::{
    collapse_to_delta2, collapse_to_delta2_capped, gray_simplices, gray_simplices_capped, theta_cell, theta_cell_capped, Collapse,
    Strict2Cat, Strict2Functor,
};

use crate::fibclass::FibError;
use crate::fincat::CatError;
use thiserror::Error;

/// Grid point: first coordinate to the right, second down.
pub type Point = (usize, usize);

pub const DEFAULT_CAP: usize = 3;

pub fn point_name(p: Point) -> String {
    format!("{}{}", p.0, p.1)
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GrayError {
    #[error("{what} = {value} exceeds the cap {cap}")]
    CapExceeded { what: String, value: usize, cap: usize },
    #[error("{x} is not below {y} in the grid")]
    Endpoints { x: String, y: String },
    #[error("{0} is not a poset")]
    NotThin(String),
    #[error("shape mismatch: {0}")]
    Shape(String),
    #[error("2-category law fails: {0}")]
    Law(String),
    #[error(transparent)]
    Fib(#[from] FibError),
    #[error(transparent)]
    Cat(#[from] CatError),
}

#[cfg(test)]
mod tests;
