//! Scaled nerves of posets, truncated at dimension 3, and the scaling
//! `S ⊠ T` on a product.

use super::GrayError;
use crate::fincat::FinCat;
use serde_json::{json, Value};
use std::collections::BTreeSet;

pub type Simplex = Vec<usize>;

/// The 3-skeleton of the nerve of a finite poset with a set of scaled
/// 2-simplices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ScaledComplex {
    pub vertices: Vec<String>,
    leq: Vec<bool>,
    /// `simplices[k]`: weakly increasing `(k + 1)`-tuples
    pub simplices: [Vec<Simplex>; 4],
    pub scaling: BTreeSet<Simplex>,
}

pub fn is_degenerate(s: &[usize]) -> bool {
    s.windows(2).any(|w| w[0] == w[1])
}

pub fn face(s: &[usize], i: usize) -> Simplex {
    s.iter().enumerate().filter(|&(j, _)| j != i).map(|(_, &v)| v).collect()
}

pub fn degeneracy(s: &[usize], i: usize) -> Simplex {
    let mut t = s.to_vec();
    t.insert(i, s[i]);
    t
}

impl ScaledComplex {
    fn from_order(vertices: Vec<String>, leq: Vec<bool>) -> ScaledComplex {
        let k = vertices.len();
        let mut simplices: [Vec<Simplex>; 4] = Default::default();
        simplices[0] = (0..k).map(|v| vec![v]).collect();
        for d in 1..4 {
            simplices[d] = simplices[d - 1]
                .iter()
                .flat_map(|s| {
                    let last = *s.last().unwrap();
                    let leq = &leq;
                    (0..k).filter(move |&v| leq[last * k + v]).map(move |v| [s.clone(), vec![v]].concat())
                })
                .collect();
        }
        let scaling = simplices[2].iter().filter(|s| is_degenerate(s)).cloned().collect();
        ScaledComplex { vertices, leq, simplices, scaling }
    }

    /// The nerve with only degenerate 2-simplices scaled.
    pub fn nerve(c: &FinCat) -> Result<ScaledComplex, GrayError> {
        if !c.is_thin() {
            return Err(GrayError::NotThin("nerve input".into()));
        }
        let k = c.n_obj();
        let leq = (0..k * k).map(|i| !c.hom(i / k, i % k).is_empty()).collect();
        Ok(ScaledComplex::from_order(c.obj_names().to_vec(), leq))
    }

    /// Every 2-simplex scaled.
    pub fn sharp(mut self) -> ScaledComplex {
        self.scaling = self.simplices[2].iter().cloned().collect();
        self
    }

    /// Scale the given 2-simplices in addition to the degenerate ones.
    pub fn with_scaling(mut self, extra: impl IntoIterator<Item = Simplex>) -> Result<ScaledComplex, GrayError> {
        for s in extra {
            if !self.simplices[2].contains(&s) {
                return Err(GrayError::Shape(format!("{s:?} is not a 2-simplex")));
            }
            self.scaling.insert(s);
        }
        Ok(self)
    }

    pub fn is_sharp(&self) -> bool {
        self.scaling.len() == self.simplices[2].len()
    }

    pub fn n_vertices(&self) -> usize {
        self.vertices.len()
    }

    pub fn leq(&self, a: usize, b: usize) -> bool {
        self.leq[a * self.n_vertices() + b]
    }

    pub fn simplex_name(&self, s: &[usize]) -> String {
        s.iter().map(|&v| self.vertices[v].as_str()).collect::<Vec<_>>().join("<=")
    }

    /// Faces and degeneracies stay inside the stored simplices, and the
    /// scaling holds every degenerate 2-simplex.
    pub fn check(&self) -> Result<(), GrayError> {
        let sets: Vec<BTreeSet<&Simplex>> = self.simplices.iter().map(|v| v.iter().collect()).collect();
        for d in 1..4 {
            for s in &self.simplices[d] {
                for i in 0..=d {
                    if !sets[d - 1].contains(&face(s, i)) {
                        return Err(GrayError::Shape(format!("face {i} of {s:?} is missing")));
                    }
                }
            }
        }
        for d in 0..3 {
            for s in &self.simplices[d] {
                for i in 0..=d {
                    if !sets[d + 1].contains(&degeneracy(s, i)) {
                        return Err(GrayError::Shape(format!("degeneracy {i} of {s:?} is missing")));
                    }
                }
            }
        }
        for s in &self.simplices[2] {
            if is_degenerate(s) && !self.scaling.contains(s) {
                return Err(GrayError::Shape(format!("degenerate {s:?} is not scaled")));
            }
        }
        if !self.scaling.iter().all(|s| sets[2].contains(s)) {
            return Err(GrayError::Shape("scaling outside the 2-simplices".into()));
        }
        Ok(())
    }

    pub fn to_json(&self) -> Value {
        let names = |v: &[Simplex]| -> Vec<Vec<&str>> {
            v.iter().map(|s| s.iter().map(|&i| self.vertices[i].as_str()).collect()).collect()
        };
        let scaling: Vec<Simplex> = self.scaling.iter().cloned().collect();
        json!({
            "vertices": self.vertices,
            "simplices": {
                "0": names(&self.simplices[0]),
                "1": names(&self.simplices[1]),
                "2": names(&self.simplices[2]),
                "3": names(&self.simplices[3]),
            },
            "scaling": names(&scaling),
        })
    }
}

/// Product vertex `(a, b)` sits at `a · |Y| + b`.
pub fn product_vertex(y: &ScaledComplex, a: usize, b: usize) -> usize {
    a * y.n_vertices() + b
}

pub fn split_simplex(y: &ScaledComplex, s: &[usize]) -> (Simplex, Simplex) {
    let k = y.n_vertices();
    (s.iter().map(|v| v / k).collect(), s.iter().map(|v| v % k).collect())
}

/// `(X, S) ⊠ (Y, T)`: the product with `(s_1 α, τ)` and `(σ, s_0 β)`
/// scaled, plus degenerates.
pub fn gray_scaling(x: &ScaledComplex, y: &ScaledComplex) -> ScaledComplex {
    let (kx, ky) = (x.n_vertices(), y.n_vertices());
    let vertices = (0..kx * ky).map(|i| format!("({},{})", x.vertices[i / ky], y.vertices[i % ky])).collect();
    let leq = (0..kx * ky * kx * ky)
        .map(|i| {
            let (p, q) = (i / (kx * ky), i % (kx * ky));
            x.leq(p / ky, q / ky) && y.leq(p % ky, q % ky)
        })
        .collect();
    let mut out = ScaledComplex::from_order(vertices, leq);
    let pair = |a: &[usize], b: &[usize]| -> Simplex { a.iter().zip(b).map(|(&u, &v)| product_vertex(y, u, v)).collect() };
    for alpha in &x.simplices[1] {
        for tau in &y.scaling {
            out.scaling.insert(pair(&degeneracy(alpha, 1), tau));
        }
    }
    for beta in &y.simplices[1] {
        for sigma in &x.scaling {
            out.scaling.insert(pair(sigma, &degeneracy(beta, 0)));
        }
    }
    out
}

/// Membership in `S ⊠ T` read off a product 2-simplex directly.
pub fn is_gray_scaled(x: &ScaledComplex, y: &ScaledComplex, s: &[usize]) -> bool {
    let (a, b) = split_simplex(y, s);
    is_degenerate(s) || (a[1] == a[2] && y.scaling.contains(&b)) || (b[0] == b[1] && x.scaling.contains(&a))
}
