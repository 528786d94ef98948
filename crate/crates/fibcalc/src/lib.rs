//! Fibration calculus on finite categories.
//!
//! Two-variable fibrations are classified by exhaustive lift checks,
//! straightened and unstraightened through explicit cleavages, dualised,
//! and used to extract parametrised adjoints together with their mates.
//! Twisted arrow categories, free fibrations, correspondences and the
//! combinatorics of Gray tensor products of simplices are built on top.

pub mod fibclass;
pub mod fincat;
pub mod graytensor;
pub mod grothendieck;
pub mod mates;
pub mod twistfree;
pub mod verify;

#[cfg(test)]
mod testgen;

pub use fincat::{CatError, FinCat, FinFunctor, Mor, NatTransf, Obj};
