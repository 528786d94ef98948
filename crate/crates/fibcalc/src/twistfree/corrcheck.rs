use super::{tw, tw_functor, FibredTw, TwVariant};
use crate::fibclass::{FibError, Rel, TwoVarFib};
use crate::fincat::{pullback, FinFunctor, Pullback};
use crate::grothendieck::{fib_equivalent_with_caps, Caps, EdgeSpec};
use crate::mates::{MateError, ParamAdjunction};
use serde::Serialize;

#[derive(Clone, Debug, Serialize)]
pub struct CorrPullbackReport {
    /// `Tw^l_B(D)` along `id × g` against `Tw^l_B(C)` along `f^op × id`,
    /// both over `(D^op)^v ×_B C`; `None` beyond caps
    pub equivalent: Option<bool>,
    /// `g` preserves cocartesian morphisms, so the fibrewise criterion applies
    pub preserves_cocartesian: bool,
    pub fibrewise_cartesian_checked: usize,
    /// `g_b`-cartesian morphisms that are not `g`-cartesian
    pub fibrewise_cartesian_failures: Vec<String>,
    pub tw_cartesian_checked: usize,
    /// twisted squares with cocartesian source leg and cartesian target leg
    /// that are not `Tw^l(p)`-cartesian, for `p: C -> B`
    pub tw_cartesian_failures: Vec<String>,
}

impl CorrPullbackReport {
    pub fn holds(&self) -> bool {
        self.equivalent != Some(false) && self.fibrewise_cartesian_failures.is_empty() && self.tw_cartesian_failures.is_empty()
    }
}

pub fn corr_pullback_checks(pa: &ParamAdjunction, caps: Caps) -> Result<CorrPullbackReport, MateError> {
    let g = &pa.right.map;
    let (ftd, ftc) = (FibredTw::new(&pa.right.tgt_proj)?, FibredTw::new(&pa.right.src_proj)?);
    let q: Pullback = pullback(&ftd.dual_op.fib.p1, &pa.right.src_proj);
    let (pd, pc) = (&ftd.pair.keyed, &ftc.pair.keyed);

    // (D^op)^v = ((D^v)^op), so f^op acts on the same keys
    let fop_obj = |x| ftc.dual_op.keys.obj(&pa.dual_c.keys.obj_keys[pa.left.obj[pa.dual_d.keys.obj(&ftd.dual_op.keys.obj_keys[x])]]);
    let fop_mor = |a| ftc.dual_op.keys.mor(&pa.dual_c.keys.mor_keys[pa.left.mor[pa.dual_d.keys.mor(&ftd.dual_op.keys.mor_keys[a])]]);
    let along_g = FinFunctor::new(
        q.keyed.cat.clone(),
        pd.cat.clone(),
        q.keyed.obj_keys.iter().map(|&(x, c)| pd.obj(&(x, g.obj[c]))).collect(),
        q.keyed.mor_keys.iter().map(|&(a, k)| pd.mor(&(a, g.mor[k]))).collect(),
    )?;
    let along_f = FinFunctor::new(
        q.keyed.cat.clone(),
        pc.cat.clone(),
        q.keyed.obj_keys.iter().map(|&(x, c)| pc.obj(&(fop_obj(x), c))).collect(),
        q.keyed.mor_keys.iter().map(|&(a, k)| pc.mor(&(fop_mor(a), k))).collect(),
    )?;
    let p1 = pullback(&along_g, &ftd.to_pair);
    let p2 = pullback(&along_f, &ftc.to_pair);
    let (f1, f2) = (TwoVarFib::one_var(&p1.to_left), TwoVarFib::one_var(&p2.to_left));
    let equivalent = match fib_equivalent_with_caps(&f1, &f2, &EdgeSpec::cocartesian(), caps) {
        Ok(found) => Some(found.is_some()),
        Err(FibError::SearchCapExceeded { .. }) => None,
        Err(e) => return Err(e.into()),
    };

    // g_b-cartesian morphisms are g-cartesian
    let (c, d) = (&pa.c, &pa.d);
    let total = Rel::new(g);
    let preserves_cocartesian = c.rel.cocartesian.iter().enumerate().all(|(m, &cc)| !cc || d.rel.cocartesian[g.mor[m]]);
    let mut fibrewise_cartesian_checked = 0;
    let mut fibrewise_cartesian_failures = Vec::new();
    for s in pa.base.objects().filter(|_| preserves_cocartesian) {
        let gs = c.restrict(g, d, s);
        let rel = Rel::new(&gs);
        for phi in gs.src.morphisms().filter(|&m| rel.cartesian[m]) {
            fibrewise_cartesian_checked += 1;
            let m = c.inc[s].mor[phi];
            if !total.cartesian[m] {
                fibrewise_cartesian_failures.push(g.src.mor_name(m).to_string());
            }
        }
    }

    // Tw^l(p)-cartesian squares for p: C -> B
    let p = &pa.right.src_proj;
    let (twc, twb) = (tw(&p.src, TwVariant::Left), tw(&p.tgt, TwVariant::Left));
    let twp = tw_functor(p, &twc, &twb);
    let (rel_p, rel_tw) = (Rel::new(p), Rel::new(&twp));
    let mut tw_cartesian_checked = 0;
    let mut tw_cartesian_failures = Vec::new();
    for (m, &(_, _, u, v)) in twc.keyed.mor_keys.iter().enumerate() {
        if rel_p.cocartesian[u] && rel_p.cartesian[v] {
            tw_cartesian_checked += 1;
            if !rel_tw.cartesian[m] {
                tw_cartesian_failures.push(twc.cat().mor_name(m).to_string());
            }
        }
    }

    Ok(CorrPullbackReport {
        equivalent,
        preserves_cocartesian,
        fibrewise_cartesian_checked,
        fibrewise_cartesian_failures,
        tw_cartesian_checked,
        tw_cartesian_failures,
    })
}
