//! Shared generators for unit and property tests.

use crate::fibclass::TwoVarFib;
use crate::fincat::{FinCat, FinFunctor};
use proptest::prelude::*;
use std::sync::Arc;

pub fn poset(n: usize, rel: impl Fn(usize, usize) -> bool, names: Vec<String>) -> Arc<FinCat> {
    let mut r = vec![false; n * n];
    for i in 0..n {
        for j in 0..n {
            r[i * n + j] = i == j || rel(i, j);
        }
    }
    for k in 0..n {
        for i in 0..n {
            for j in 0..n {
                if r[i * n + k] && r[k * n + j] {
                    r[i * n + j] = true;
                }
            }
        }
    }
    Arc::new(FinCat::poset_from_leq(&names, |a, b| r[a * n + b]))
}

/// A thin total category with objects at the given coordinates and
/// generating arrows `edges`, over `a × b`.
pub fn thin_over(a: FinCat, b: FinCat, coords: &[(usize, usize)], edges: &[(usize, usize)]) -> TwoVarFib {
    let names = (0..coords.len()).map(|i| format!("x{i}")).collect();
    let total = poset(coords.len(), |i, j| edges.contains(&(i, j)), names);
    let (a, b) = (Arc::new(a), Arc::new(b));
    let p1 = FinFunctor::monotone(&total, &a, coords.iter().map(|c| c.0).collect()).unwrap();
    let p2 = FinFunctor::monotone(&total, &b, coords.iter().map(|c| c.1).collect()).unwrap();
    TwoVarFib::from_components(p1, p2).unwrap()
}

/// Thin fibrations with at most five objects over products of `[1]` and
/// `[1]^op`.
pub fn arb_fib() -> impl Strategy<Value = TwoVarFib> {
    (1usize..=5, any::<bool>(), any::<bool>())
        .prop_flat_map(|(n, a_op, b_op)| {
            (
                proptest::collection::vec((0usize..2, 0usize..2), n),
                proptest::collection::vec(any::<bool>(), n * n),
                Just((a_op, b_op)),
            )
        })
        .prop_map(|(coords, bits, (a_op, b_op))| {
            let n = coords.len();
            let le = |u: usize, v: usize, op: bool| if op { u >= v } else { u <= v };
            let mut edges = Vec::new();
            for i in 0..n {
                for j in i + 1..n {
                    let (ci, cj) = (coords[i], coords[j]);
                    if bits[i * n + j] && le(ci.0, cj.0, a_op) && le(ci.1, cj.1, b_op) {
                        edges.push((i, j));
                    }
                }
            }
            let base = |op: bool| if op { FinCat::chain(1).opposite() } else { FinCat::chain(1) };
            thin_over(base(a_op), base(b_op), &coords, &edges)
        })
}

