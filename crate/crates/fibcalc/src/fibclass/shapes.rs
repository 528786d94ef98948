use super::TwoVarFib;
use crate::fincat::{FinCat, FinFunctor};
use std::sync::Arc;

fn poset(elements: &[&str], gens: &[(usize, usize)]) -> FinCat {
    let n = elements.len();
    let mut rel = vec![false; n * n];
    for i in 0..n {
        rel[i * n + i] = true;
    }
    for &(a, b) in gens {
        rel[a * n + b] = true;
    }
    for k in 0..n {
        for i in 0..n {
            for j in 0..n {
                if rel[i * n + k] && rel[k * n + j] {
                    rel[i * n + j] = true;
                }
            }
        }
    }
    let els: Vec<String> = elements.iter().map(|s| s.to_string()).collect();
    FinCat::poset_from_leq(&els, |a, b| rel[a * n + b])
}

fn over(total: FinCat, a: FinCat, b: FinCat, coords: &[(usize, usize)]) -> TwoVarFib {
    let total = Arc::new(total);
    let (a, b) = (Arc::new(a), Arc::new(b));
    let p1 = FinFunctor::monotone(&total, &a, coords.iter().map(|c| c.0).collect()).expect("monotone");
    let p2 = FinFunctor::monotone(&total, &b, coords.iter().map(|c| c.1).collect()).expect("monotone");
    TwoVarFib::from_components(p1, p2).expect("valid projection")
}

/// The poset `Q` over `[1]^op × [1]`: `10 -> 00` cartesian over the first
/// factor, `10 -> 11'` and `00 -> 01` cocartesian over the second,
/// `11 -> 01` cartesian, and the interpolating edge `11' -> 11`.
pub fn q_fibration() -> TwoVarFib {
    // 0:10 1:00 2:11' 3:11 4:01
    let total = poset(&["10", "00", "11'", "11", "01"], &[(0, 1), (0, 2), (2, 3), (3, 4), (1, 4)]);
    let a = FinCat::chain(1).opposite();
    over(total, a, FinCat::chain(1), &[(1, 0), (0, 0), (1, 1), (1, 1), (0, 1)])
}

/// The poset `Q'` over `[1] × [1]`: `00 -> 10` and `01 -> 11` cocartesian
/// over the first factor, `00 -> 01` and `10 -> 11'` cocartesian over the
/// second, and the interpolating edge `11' -> 11`.
pub fn q_prime_fibration() -> TwoVarFib {
    // 0:00 1:10 2:01 3:11' 4:11
    let total = poset(&["00", "10", "01", "11'", "11"], &[(0, 1), (1, 3), (3, 4), (0, 2), (2, 4)]);
    over(total, FinCat::chain(1), FinCat::chain(1), &[(0, 0), (1, 0), (0, 1), (1, 1), (1, 1)])
}
