use super::{fibre_of, LiftKind, Rel};
use crate::fincat::{localization_certificate, FinFunctor, Mor};
use serde::Serialize;

/// Certificate that `f: E -> F` over `S` is a localisation at `w`, built
/// fibrewise: `p` and `q` are fibrations of the same kind, `f` lies over
/// `S` and preserves the (co)cartesian edges, `w` consists of fibre
/// morphisms, and every fibre functor inverts its part of `w` and has a
/// fully faithful adjoint.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct FibredCertificate {
    pub inverts_w: bool,
    pub fibrations: bool,
    pub over_base: bool,
    pub preserves_edges: bool,
    pub w_in_fibres: bool,
    pub fibrewise_reflective: bool,
}

impl FibredCertificate {
    pub fn holds(&self) -> bool {
        self.inverts_w
            && self.fibrations
            && self.over_base
            && self.preserves_edges
            && self.w_in_fibres
            && self.fibrewise_reflective
    }
}

pub fn fibred_localization_certificate(
    f: &FinFunctor,
    p: &FinFunctor,
    q: &FinFunctor,
    w: &[Mor],
    kind: LiftKind,
) -> FibredCertificate {
    let inverts_w = w.iter().all(|&u| f.tgt.is_iso(f.mor[u]));
    let over_base = q.after(f) == *p;
    let (rp, rq) = (Rel::new(p), Rel::new(q));
    let fibrations = rp.is_fibration(kind) && rq.is_fibration(kind);
    let preserves_edges = f.src.morphisms().all(|u| !rp.flags(kind)[u] || rq.flags(kind)[f.mor[u]]);
    let s = &p.tgt;
    let w_in_fibres = w.iter().all(|&u| s.is_identity(p.mor[u]));
    let mut fibrewise_reflective = over_base;
    if over_base {
        for b in s.objects() {
            let (es, inc_e) = fibre_of(p, b);
            let (fs, inc_f) = fibre_of(q, b);
            let mut obj_ix = vec![usize::MAX; f.tgt.n_obj()];
            for (i, &y) in inc_f.obj.iter().enumerate() {
                obj_ix[y] = i;
            }
            let mut mor_ix = vec![usize::MAX; f.tgt.n_mor()];
            for (i, &g) in inc_f.mor.iter().enumerate() {
                mor_ix[g] = i;
            }
            let fb = FinFunctor::new_unchecked(
                es.clone(),
                fs.clone(),
                inc_e.obj.iter().map(|&x| obj_ix[f.obj[x]]).collect(),
                inc_e.mor.iter().map(|&u| mor_ix[f.mor[u]]).collect(),
            );
            let wb: Vec<Mor> = (0..es.n_mor()).filter(|&i| w.contains(&inc_e.mor[i])).collect();
            if !localization_certificate(&fb, &wb).reflective {
                fibrewise_reflective = false;
                break;
            }
        }
    }
    FibredCertificate { inverts_w, fibrations, over_base, preserves_edges, w_in_fibres, fibrewise_reflective }
}
