//! Chains in the grid `[m] × [n]` and the map `max: Ch -> MaxCh`.

use super::{point_name, GrayError, Point};
use crate::fibclass::{LiftKind, Rel};
use crate::fincat::{FinCat, FinFunctor, Mor};
use serde::Serialize;
use std::collections::{BTreeSet, HashMap, VecDeque};
use std::sync::Arc;

pub type Chain = Vec<Point>;

fn below(p: Point, q: Point) -> bool {
    p.0 <= q.0 && p.1 <= q.1
}

pub fn chain_name(c: &[Point]) -> String {
    c.iter().map(|&p| point_name(p)).collect::<Vec<_>>().join("<")
}

/// Nondegenerate chains from `x` to `y` ordered by inclusion, with the
/// marked single-point removals.
#[derive(Clone, Debug)]
pub struct ChainPoset {
    pub m: usize,
    pub n: usize,
    pub x: Point,
    pub y: Point,
    pub chains: Vec<Chain>,
    pub cat: Arc<FinCat>,
    /// inclusions `σ' ⊆ σ` dropping one `x_i` with `x_i^0 = x_{i+1}^0` or
    /// `x_{i-1}^1 = x_i^1`
    pub marked: Vec<Mor>,
}

/// Maximal chains, i.e. lattice paths of unit steps.
#[derive(Clone, Debug)]
pub struct MaxChains {
    pub chains: Vec<Chain>,
    /// generated by right-then-down <= down-then-right, the direction in
    /// which `max` is monotone
    pub cat: Arc<FinCat>,
}

impl MaxChains {
    pub fn index(&self, c: &[Point]) -> Option<usize> {
        self.chains.iter().position(|d| d == c)
    }
}

fn check_endpoints(m: usize, n: usize, x: Point, y: Point) -> Result<(), GrayError> {
    if y.0 > m || y.1 > n || !below(x, y) {
        return Err(GrayError::Endpoints { x: point_name(x), y: point_name(y) });
    }
    Ok(())
}

fn all_chains(x: Point, y: Point) -> Vec<Chain> {
    fn extend(cur: &mut Chain, y: Point, out: &mut Vec<Chain>) {
        let c = *cur.last().unwrap();
        if c == y {
            out.push(cur.clone());
            return;
        }
        for a in c.0..=y.0 {
            for b in c.1..=y.1 {
                if (a, b) != c {
                    cur.push((a, b));
                    extend(cur, y, out);
                    cur.pop();
                }
            }
        }
    }
    let mut out = Vec::new();
    extend(&mut vec![x], y, &mut out);
    out
}

/// Replace each step by its right steps followed by its down steps.
pub fn max_of(c: &[Point]) -> Chain {
    let mut out = vec![c[0]];
    for w in c.windows(2) {
        let ((a, b), (a1, b1)) = (w[0], w[1]);
        out.extend((a + 1..=a1).map(|i| (i, b)));
        out.extend((b + 1..=b1).map(|j| (a1, j)));
    }
    out
}

fn is_marked(small: &[Point], big: &[Point]) -> bool {
    if big.len() != small.len() + 1 {
        return false;
    }
    (1..big.len() - 1).any(|i| {
        let dropped: Vec<Point> = big.iter().enumerate().filter(|&(j, _)| j != i).map(|(_, &p)| p).collect();
        dropped == small && (big[i].0 == big[i + 1].0 || big[i - 1].1 == big[i].1)
    })
}

fn subchain(small: &[Point], big: &[Point]) -> bool {
    small.iter().all(|p| big.contains(p))
}

/// Maximal chains from `x` to `y` with their order.
pub fn max_chains(x: Point, y: Point) -> MaxChains {
    let chains: Vec<Chain> = all_chains(x, y).into_iter().filter(|c| c.len() == (y.0 - x.0) + (y.1 - x.1) + 1).collect();
    let at: HashMap<&Chain, usize> = chains.iter().enumerate().map(|(i, c)| (c, i)).collect();
    // close the generating moves (p, p+right, p+right+down) -> (p, p+down, ...)
    let k = chains.len();
    let mut leq = vec![false; k * k];
    for s in 0..k {
        let mut seen = vec![false; k];
        let mut queue = VecDeque::from([s]);
        seen[s] = true;
        while let Some(i) = queue.pop_front() {
            leq[s * k + i] = true;
            let c = &chains[i];
            for j in 1..c.len() - 1 {
                let (p, q) = (c[j - 1], c[j]);
                if q == (p.0 + 1, p.1) && c[j + 1] == (p.0 + 1, p.1 + 1) {
                    let mut d = c.clone();
                    d[j] = (p.0, p.1 + 1);
                    let t = at[&d];
                    if !seen[t] {
                        seen[t] = true;
                        queue.push_back(t);
                    }
                }
            }
        }
    }
    let names: Vec<String> = chains.iter().map(|c| chain_name(c)).collect();
    let cat = Arc::new(FinCat::poset_from_leq(&names, |i, j| leq[i * k + j]));
    MaxChains { chains, cat }
}

/// `Ch_{x,y}`, `MaxCh_{x,y}` and `max` for `x <= y` in `[m] × [n]`.
pub fn chain_posets(m: usize, n: usize, x: Point, y: Point) -> Result<(ChainPoset, MaxChains, FinFunctor), GrayError> {
    check_endpoints(m, n, x, y)?;
    let chains = all_chains(x, y);
    let names: Vec<String> = chains.iter().map(|c| chain_name(c)).collect();
    let cat = Arc::new(FinCat::poset_from_leq(&names, |i, j| subchain(&chains[i], &chains[j])));
    let marked = cat
        .morphisms()
        .filter(|&f| is_marked(&chains[cat.src(f)], &chains[cat.tgt(f)]))
        .collect();
    let mx = max_chains(x, y);
    let obj = chains.iter().map(|c| mx.index(&max_of(c)).expect("max lands on a maximal chain")).collect();
    let max = FinFunctor::monotone(&cat, &mx.cat, obj)?;
    Ok((ChainPoset { m, n, x, y, chains, cat, marked }, mx, max))
}

/// For one hom pair: each `τ` is the largest element of its preimage under
/// `max`, and every `σ ⊆ τ` there is a composite of marked inclusions.
/// Whether `max` is a (co)cartesian fibration of posets is recorded but
/// not required.
#[derive(Clone, Debug, Serialize)]
pub struct FibreCertificate {
    pub x: String,
    pub y: String,
    pub chains: usize,
    pub maximal_chains: usize,
    pub marked: usize,
    pub marked_to_identities: bool,
    pub cocartesian: bool,
    pub cartesian: bool,
    /// chains `σ` whose inclusion into `max(σ)` is not reached by marked steps
    pub failures: Vec<String>,
}

impl FibreCertificate {
    pub fn holds(&self) -> bool {
        self.marked_to_identities && self.failures.is_empty()
    }
}

pub fn fibre_certificate(ch: &ChainPoset, mx: &MaxChains, max: &FinFunctor) -> FibreCertificate {
    let marked_to_identities = ch.marked.iter().all(|&f| mx.cat.is_identity(max.mor[f]));
    let rel = Rel::new(max);
    let (cocartesian, cartesian) = (rel.is_fibration(LiftKind::Cocartesian), rel.is_fibration(LiftKind::Cartesian));
    let mut up: Vec<Vec<usize>> = vec![Vec::new(); ch.chains.len()];
    for &f in &ch.marked {
        up[ch.cat.src(f)].push(ch.cat.tgt(f));
    }
    let mut failures = Vec::new();
    for (i, c) in ch.chains.iter().enumerate() {
        let tau = &mx.chains[max.obj[i]];
        let top = ch.chains.iter().position(|d| d == tau).expect("maximal chains are chains");
        // every preimage element lies inside τ
        let inside = subchain(c, tau);
        let mut seen = BTreeSet::from([i]);
        let mut queue = VecDeque::from([i]);
        while let Some(s) = queue.pop_front() {
            for &t in &up[s] {
                if max.obj[t] == max.obj[i] && seen.insert(t) {
                    queue.push_back(t);
                }
            }
        }
        if !inside || !seen.contains(&top) {
            failures.push(chain_name(c));
        }
    }
    FibreCertificate {
        x: point_name(ch.x),
        y: point_name(ch.y),
        chains: ch.chains.len(),
        maximal_chains: mx.chains.len(),
        marked: ch.marked.len(),
        marked_to_identities,
        cocartesian,
        cartesian,
        failures,
    }
}
