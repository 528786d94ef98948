use super::{CatError, FinCat, FinFunctor, Mor, NatTransf, Obj};
use serde::{Deserialize, Serialize};
use std::sync::Arc;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    Left,
    Right,
}

/// `left ⊣ right` with `unit: id ⇒ right.left` and `counit: left.right ⇒ id`.
#[derive(Clone, Debug, PartialEq)]
pub struct Adjunction {
    pub left: FinFunctor,
    pub right: FinFunctor,
    pub unit: NatTransf,
    pub counit: NatTransf,
}

impl Adjunction {
    /// Both triangle identities, componentwise.
    pub fn check_triangles(&self) -> Result<(), CatError> {
        let (f, g) = (&self.left, &self.right);
        let (c, d) = (&f.tgt, &f.src);
        for y in d.objects() {
            let fy = f.obj[y];
            let t = c.compose(self.counit.comp[fy], f.mor[self.unit.comp[y]]);
            if t != c.id(fy) {
                return Err(CatError::NotNatural(format!("left triangle at {}", d.obj_name(y))));
            }
        }
        for x in c.objects() {
            let gx = g.obj[x];
            let t = d.compose(g.mor[self.counit.comp[x]], self.unit.comp[gx]);
            if t != d.id(gx) {
                return Err(CatError::NotNatural(format!("right triangle at {}", c.obj_name(x))));
            }
        }
        Ok(())
    }

    /// The adjunction `right^op ⊣ left^op` between the opposite categories.
    pub fn opposite(&self, d_op: &Arc<FinCat>, c_op: &Arc<FinCat>) -> Adjunction {
        // left: D -> C, right: C -> D.
        let left = self.right.opposite_between(c_op.clone(), d_op.clone());
        let right = self.left.opposite_between(d_op.clone(), c_op.clone());
        let unit = NatTransf {
            src: FinFunctor::identity(c_op),
            tgt: right.after(&left),
            comp: self.counit.comp.clone(),
        };
        let counit = NatTransf {
            src: left.after(&right),
            tgt: FinFunctor::identity(d_op),
            comp: self.unit.comp.clone(),
        };
        Adjunction { left, right, unit, counit }
    }
}

/// Is `(x, h: y -> g x)` initial in the comma category `(y ↓ g)`?
fn is_initial(g: &FinFunctor, y: Obj, x: Obj, h: Mor) -> bool {
    let (c, d) = (&*g.src, &*g.tgt);
    for x2 in c.objects() {
        for &h2 in d.hom(y, g.obj[x2]) {
            let n = c
                .hom(x, x2)
                .iter()
                .filter(|&&k| d.compose(g.mor[k], h) == h2)
                .count();
            if n != 1 {
                return false;
            }
        }
    }
    true
}

/// The unique `k: x -> x2` with `g(k) . h = h2`, assuming `(x, h)` initial.
fn factor(g: &FinFunctor, x: Obj, h: Mor, x2: Obj, h2: Mor) -> Mor {
    let (c, d) = (&*g.src, &*g.tgt);
    *c.hom(x, x2)
        .iter()
        .find(|&&k| d.compose(g.mor[k], h) == h2)
        .expect("initial object factorisation")
}

/// Universal arrows `y -> g(x_y)` for every `y`, or the first `y` whose
/// comma category has no initial object.
pub fn universal_arrows(g: &FinFunctor) -> Result<Result<Vec<(Obj, Mor)>, Obj>, CatError> {
    let (c, d) = (&*g.src, &*g.tgt);
    let mut out = Vec::with_capacity(d.n_obj());
    for y in d.objects() {
        let mut cands: Vec<(Obj, Mor)> = Vec::new();
        for x in c.objects() {
            for &h in d.hom(y, g.obj[x]) {
                if is_initial(g, y, x, h) {
                    cands.push((x, h));
                }
            }
        }
        let Some(&best) = cands.iter().min_by_key(|&&(_, h)| d.mor_rank(h)) else {
            return Ok(Err(y));
        };
        for &(x2, h2) in &cands {
            let k = factor(g, best.0, best.1, x2, h2);
            if !c.is_iso(k) {
                return Err(CatError::AmbiguousInitial(d.obj_name(y).to_string()));
            }
        }
        out.push(best);
    }
    Ok(Ok(out))
}

fn assemble_left(g: &FinFunctor, arrows: &[(Obj, Mor)]) -> Result<Adjunction, CatError> {
    let (c, d) = (&g.src, &g.tgt);
    let fobj: Vec<Obj> = arrows.iter().map(|a| a.0).collect();
    let eta: Vec<Mor> = arrows.iter().map(|a| a.1).collect();
    let fmor: Vec<Mor> = d
        .morphisms()
        .map(|v| {
            let (y, y2) = (d.src(v), d.tgt(v));
            factor(g, fobj[y], eta[y], fobj[y2], d.compose(eta[y2], v))
        })
        .collect();
    let f = FinFunctor::new(d.clone(), c.clone(), fobj.clone(), fmor)?;
    let eps: Vec<Mor> = c
        .objects()
        .map(|x| {
            let gx = g.obj[x];
            factor(g, fobj[gx], eta[gx], x, d.id(gx))
        })
        .collect();
    let unit = NatTransf::new(FinFunctor::identity(d), g.after(&f), eta)?;
    let counit = NatTransf::new(f.after(g), FinFunctor::identity(c), eps)?;
    let adj = Adjunction { left: f, right: g.clone(), unit, counit };
    adj.check_triangles()?;
    Ok(adj)
}

/// Search for an adjoint of `g` on the given side. For `Side::Left` the
/// result is `f ⊣ g`; for `Side::Right` it is `g ⊣ r`. `Ok(None)` means no
/// adjoint exists.
pub fn find_adjoint(g: &FinFunctor, side: Side) -> Result<Option<Adjunction>, CatError> {
    match side {
        Side::Left => match universal_arrows(g)? {
            Ok(arrows) => assemble_left(g, &arrows).map(Some),
            Err(_) => Ok(None),
        },
        Side::Right => {
            let c_op = Arc::new(g.src.opposite());
            let d_op = Arc::new(g.tgt.opposite());
            let g_op = g.opposite_between(c_op.clone(), d_op.clone());
            let Some(op_adj) = find_adjoint(&g_op, Side::Left)? else {
                return Ok(None);
            };
            // op_adj: r^op ⊣ g^op between D^op and C^op; read it back.
            let r = op_adj.left.opposite_between(g.tgt.clone(), g.src.clone());
            let unit = NatTransf::new(
                FinFunctor::identity(&g.src),
                r.after(g),
                op_adj.counit.comp,
            )?;
            let counit = NatTransf::new(
                g.after(&r),
                FinFunctor::identity(&g.tgt),
                op_adj.unit.comp,
            )?;
            let adj = Adjunction { left: g.clone(), right: r, unit, counit };
            adj.check_triangles()?;
            Ok(Some(adj))
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LocalizationCertificate {
    pub inverts_w: bool,
    pub reflective: bool,
}

/// Sufficient certificate that `f` is a localisation at `w`: `f` inverts
/// every member of `w` and has a fully faithful left or right adjoint.
pub fn localization_certificate(f: &FinFunctor, w: &[Mor]) -> LocalizationCertificate {
    let inverts_w = w.iter().all(|&u| f.tgt.is_iso(f.mor[u]));
    let ff_adjoint = |side| match find_adjoint(f, side) {
        Ok(Some(adj)) => match side {
            Side::Left => adj.left.is_fully_faithful(),
            Side::Right => adj.right.is_fully_faithful(),
        },
        _ => false,
    };
    let reflective = ff_adjoint(Side::Right) || ff_adjoint(Side::Left);
    LocalizationCertificate { inverts_w, reflective }
}

