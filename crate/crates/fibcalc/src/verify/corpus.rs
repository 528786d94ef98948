//! Bundled examples and small generated inputs.

use crate::fibclass::{q_fibration, q_prime_fibration, TwoVarFib};
use crate::fincat::{FinCat, FinFunctor};
use crate::mates::MapOver;
use crate::twistfree::{arrow_cat, tw, TwVariant};
use std::collections::BTreeSet;
use std::sync::Arc;

#[derive(Clone, Debug)]
pub struct Named<T> {
    pub name: String,
    pub value: T,
}

fn named<T>(name: impl Into<String>, value: T) -> Named<T> {
    Named { name: name.into(), value }
}

#[derive(Clone, Debug, Default)]
pub struct Corpus {
    pub fibrations: Vec<Named<TwoVarFib>>,
    /// bases and small categories for the arrow and twisted arrow checks
    pub categories: Vec<Named<Arc<FinCat>>>,
    /// parametrised right adjoints
    pub families: Vec<Named<MapOver>>,
}

fn preorder(names: &[&str], gens: &[(usize, usize)]) -> FinCat {
    let n = names.len();
    let mut r = vec![false; n * n];
    for i in 0..n {
        r[i * n + i] = true;
    }
    for &(a, b) in gens {
        r[a * n + b] = true;
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
    let names: Vec<String> = names.iter().map(|s| s.to_string()).collect();
    FinCat::poset_from_leq(&names, |a, b| r[a * n + b])
}

pub fn small_categories() -> Vec<Named<Arc<FinCat>>> {
    let c1 = Arc::new(FinCat::chain(1));
    vec![
        named("[0]", Arc::new(FinCat::point())),
        named("[1]", c1.clone()),
        named("[2]", Arc::new(FinCat::chain(2))),
        named("[3]", Arc::new(FinCat::chain(3))),
        named("[1]^op", Arc::new(FinCat::chain(1).opposite())),
        named("discrete2", Arc::new(FinCat::discrete(&["a", "b"]))),
        named("cospan", Arc::new(preorder(&["a", "c", "b"], &[(0, 1), (2, 1)]))),
        named("span", Arc::new(preorder(&["a", "c", "b"], &[(1, 0), (1, 2)]))),
        named("iso", Arc::new(preorder(&["a", "b"], &[(0, 1), (1, 0)]))),
        named("[1]x[1]", Arc::new(FinCat::product(&c1, &c1))),
    ]
}

/// Q, Q', arrow and twisted arrow categories of `[1]` and `[2]`.
pub fn bundled_fibrations() -> Vec<Named<TwoVarFib>> {
    let mut out = vec![named("Q", q_fibration()), named("Q'", q_prime_fibration())];
    for n in [1, 2] {
        let c = Arc::new(FinCat::chain(n));
        out.push(named(format!("Ar([{n}])"), arrow_cat(&c).st));
        out.push(named(format!("Tw^r([{n}])"), tw(&c, TwVariant::Right).st));
        out.push(named(format!("Tw^l([{n}])"), tw(&c, TwVariant::Left).st));
    }
    out
}

/// Reflexive transitive relations on `n` points, as bit matrices.
pub(crate) fn preorders(n: usize) -> Vec<Vec<bool>> {
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|i| (0..n).map(move |j| (i, j))).filter(|(i, j)| i != j).collect();
    (0u32..1 << pairs.len())
        .map(|bits| {
            let mut r = vec![false; n * n];
            for i in 0..n {
                r[i * n + i] = true;
            }
            for (k, &(i, j)) in pairs.iter().enumerate() {
                r[i * n + j] = bits >> k & 1 == 1;
            }
            r
        })
        .filter(|r| (0..n).all(|i| (0..n).all(|j| (0..n).all(|k| !(r[i * n + j] && r[j * n + k]) || r[i * n + k]))))
        .collect()
}

pub(crate) fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![Vec::new()];
    }
    permutations(n - 1)
        .into_iter()
        .flat_map(|p| (0..n).map(move |i| [&p[..i], &[n - 1], &p[i..]].concat()))
        .collect()
}

/// Every thin total category on at most three objects with a functor to
/// `a × b`, up to relabelling.
pub fn generated_over(a: &Arc<FinCat>, b: &Arc<FinCat>, label: &str) -> Vec<Named<TwoVarFib>> {
    let base = Arc::new(FinCat::product(a, b));
    let k = base.n_obj();
    let mut out = Vec::new();
    for n in 1..=3 {
        let perms = permutations(n);
        let mut seen = BTreeSet::new();
        for r in preorders(n) {
            for code in 0..k.pow(n as u32) {
                let obj: Vec<usize> = (0..n).map(|i| code / k.pow(i as u32) % k).collect();
                let canon = perms
                    .iter()
                    .map(|p| {
                        let rel: Vec<bool> = (0..n * n).map(|ij| r[p[ij / n] * n + p[ij % n]]).collect();
                        let o: Vec<usize> = (0..n).map(|i| obj[p[i]]).collect();
                        (rel, o)
                    })
                    .min()
                    .unwrap();
                if !seen.insert(canon) {
                    continue;
                }
                let names: Vec<String> = (0..n).map(|i| format!("e{i}")).collect();
                let total = Arc::new(FinCat::poset_from_leq(&names, |i, j| r[i * n + j]));
                let Ok(proj) = FinFunctor::monotone(&total, &base, obj.clone()) else { continue };
                if let Ok(p) = TwoVarFib::new(proj, a.clone(), b.clone()) {
                    out.push(named(format!("{label}#{n}.{}", out.len()), p));
                }
            }
        }
    }
    out
}

/// Factors with at most two objects and `[2]` against a point.
pub fn generated_fibrations() -> Vec<Named<TwoVarFib>> {
    let pt = Arc::new(FinCat::point());
    let c1 = Arc::new(FinCat::chain(1));
    let c1op = Arc::new(FinCat::chain(1).opposite());
    let c2 = Arc::new(FinCat::chain(2));
    let factors = [("[0]", &pt), ("[1]", &c1), ("[1]^op", &c1op)];
    let mut out = Vec::new();
    for (na, a) in factors {
        for (nb, b) in factors {
            out.extend(generated_over(a, b, &format!("{na}x{nb}")));
        }
    }
    out.extend(generated_over(&c2, &pt, "[2]x[0]"));
    out.extend(generated_over(&pt, &c2, "[0]x[2]"));
    out
}

/// `[n] × B -> B` for a poset `B`, object `(x, b)` at `b (n + 1) + x`.
fn strip(n: usize, b: &Arc<FinCat>) -> FinFunctor {
    let w = n + 1;
    let k = b.n_obj();
    let names: Vec<String> = (0..k * w).map(|i| format!("{}{}", i % w, b.obj_name(i / w))).collect();
    let c = Arc::new(FinCat::poset_from_leq(&names, |i, j| i % w <= j % w && !b.hom(i / w, j / w).is_empty()));
    FinFunctor::monotone(&c, b, (0..k * w).map(|i| i / w).collect()).expect("projection is monotone")
}

pub(crate) fn monotone_onto_top(n: usize, m: usize) -> Vec<Vec<usize>> {
    let mut out = vec![Vec::new()];
    for _ in 0..=n {
        out = out.into_iter().flat_map(|v: Vec<usize>| (v.last().copied().unwrap_or(0)..=m).map(move |y| [v.clone(), vec![y]].concat())).collect();
    }
    out.retain(|v| v[n] == m);
    out
}

/// All `g(x, b) = (g_b(x), b): [n] × B -> [m] × B` with every `g_b`
/// keeping the top.
pub fn chain_families(b: &Arc<FinCat>, label: &str, sizes: &[(usize, usize)]) -> Vec<Named<MapOver>> {
    let k = b.n_obj();
    let mut out = Vec::new();
    for &(n, m) in sizes {
        let (pc, pd) = (strip(n, b), strip(m, b));
        let maps = monotone_onto_top(n, m);
        for code in 0..maps.len().pow(k as u32) {
            let pick: Vec<&Vec<usize>> = (0..k).map(|s| &maps[code / maps.len().pow(s as u32) % maps.len()]).collect();
            let obj = (0..k * (n + 1)).map(|i| pick[i / (n + 1)][i % (n + 1)] + (i / (n + 1)) * (m + 1)).collect();
            let Ok(g) = FinFunctor::monotone(&pc.src, &pd.src, obj) else { continue };
            let tag: Vec<String> = pick.iter().map(|v| v.iter().map(|y| y.to_string()).collect()).collect();
            if let Ok(fam) = MapOver::new(g, pc.clone(), pd.clone()) {
                out.push(named(format!("{label}:[{n}]->[{m}]:{}", tag.join("/")), fam));
            }
        }
    }
    out
}

/// Families over `[1]`, `[2]` and `[1] × [1]`, plus identities of target
/// projections.
pub fn standard_families() -> Vec<Named<MapOver>> {
    let c1 = Arc::new(FinCat::chain(1));
    let c2 = Arc::new(FinCat::chain(2));
    let sq = Arc::new(FinCat::product(&c1, &c1));
    let mut out = chain_families(&c1, "[1]", &[(1, 1), (1, 2), (2, 1), (2, 2)]);
    out.extend(chain_families(&c2, "[2]", &[(1, 1), (1, 2), (2, 1), (2, 2)]));
    out.extend(chain_families(&sq, "[1]x[1]", &[(1, 1), (1, 2), (2, 1)]));
    for (name, b) in [("[1]", &c1), ("[2]", &c2), ("[1]x[1]", &sq)] {
        out.push(named(format!("{name}:id on Ar"), MapOver::identity(&arrow_cat(b).st.p2)));
    }
    out
}

impl Corpus {
    /// Bundled examples and the generated inputs.
    pub fn standard() -> Corpus {
        let mut fibrations = bundled_fibrations();
        fibrations.extend(generated_fibrations());
        Corpus { fibrations, categories: small_categories(), families: standard_families() }
    }

    /// Inputs over a single user-supplied base.
    pub fn over_base(b: Arc<FinCat>) -> Corpus {
        let pt = Arc::new(FinCat::point());
        let fibrations = if b.n_obj() <= 3 { generated_over(&b, &pt, "B") } else { Vec::new() };
        let families = if b.is_thin() { chain_families(&b, "B", &[(1, 1), (2, 1)]) } else { Vec::new() };
        Corpus { fibrations, categories: vec![named("B", b)], families }
    }
}
