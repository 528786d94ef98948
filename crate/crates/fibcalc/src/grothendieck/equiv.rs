use crate::fibclass::{FibError, LiftKind, Rel, TwoVarFib};
use crate::fincat::search::{search_functors, FunctorSearch};
use crate::fincat::{FinFunctor, Mor, NatTransf, Obj};
use serde::Serialize;

/// Size caps for brute-force equivalence search, per category.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Caps {
    pub objects: usize,
    pub morphisms: usize,
}

impl Default for Caps {
    fn default() -> Self {
        Caps { objects: 6, morphisms: 40 }
    }
}

impl Caps {
    /// Parse `OBJECTS,MORPHISMS`; both must be positive.
    pub fn parse(s: &str) -> Result<Caps, FibError> {
        let bad = || FibError::InvalidCaps(s.to_string());
        let (o, m) = s.split_once(',').ok_or_else(bad)?;
        let objects: usize = o.trim().parse().map_err(|_| bad())?;
        let morphisms: usize = m.trim().parse().map_err(|_| bad())?;
        if objects == 0 || morphisms == 0 {
            return Err(bad());
        }
        Ok(Caps { objects, morphisms })
    }

    /// `FIBCALC_CAPS` if set, else the defaults.
    pub fn from_env() -> Result<Caps, FibError> {
        match std::env::var("FIBCALC_CAPS") {
            Ok(s) => Caps::parse(&s),
            Err(_) => Ok(Caps::default()),
        }
    }

    fn admit(&self, which: &str, p: &TwoVarFib) -> Result<(), FibError> {
        let (objects, morphisms) = (p.total.n_obj(), p.total.n_mor());
        if objects > self.objects || morphisms > self.morphisms {
            return Err(FibError::SearchCapExceeded {
                which: which.into(),
                objects,
                morphisms,
                cap_objects: self.objects,
                cap_morphisms: self.morphisms,
            });
        }
        Ok(())
    }
}

/// Which part of the base an edge condition is taken relative to.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Region {
    /// all of `A × B`
    All,
    /// `A × ιB`
    Left,
    /// `ιA × B`
    Right,
}

/// Edge classes that both functors of an equivalence must preserve.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct EdgeSpec(pub Vec<(LiftKind, Region)>);

impl EdgeSpec {
    pub fn none() -> EdgeSpec {
        EdgeSpec(Vec::new())
    }
    pub fn cocartesian() -> EdgeSpec {
        EdgeSpec(vec![(LiftKind::Cocartesian, Region::All)])
    }
    pub fn cartesian() -> EdgeSpec {
        EdgeSpec(vec![(LiftKind::Cartesian, Region::All)])
    }

    fn rels(&self, p: &TwoVarFib) -> Vec<Rel> {
        self.0
            .iter()
            .map(|&(_, region)| match region {
                Region::All => Rel::new(&p.proj),
                Region::Left => Rel::restricted(&p.proj, p.mask_left()),
                Region::Right => Rel::restricted(&p.proj, p.mask_right()),
            })
            .collect()
    }
}

/// An equivalence over the common base: `forward: E_p -> E_q`,
/// `backward: E_q -> E_p`, with invertible unit `id ⇒ backward . forward`
/// and counit `forward . backward ⇒ id` whose components lie over
/// identities.
#[derive(Clone, Debug)]
pub struct FibEquivalence {
    pub forward: FinFunctor,
    pub backward: FinFunctor,
    pub unit: NatTransf,
    pub counit: NatTransf,
    pub preserved: EdgeSpec,
}

fn preserves(f: &FinFunctor, spec: &EdgeSpec, from: &[Rel], to: &[Rel]) -> bool {
    spec.0.iter().enumerate().all(|(i, &(kind, _))| {
        let (a, b) = (from[i].flags(kind), to[i].flags(kind));
        f.src.morphisms().all(|m| !a[m] || b[f.mor[m]])
    })
}

/// Search for an equivalence over the base preserving `spec`, with caps
/// from `FIBCALC_CAPS` or the defaults.
pub fn fib_equivalent(p: &TwoVarFib, q: &TwoVarFib, spec: &EdgeSpec) -> Result<Option<FibEquivalence>, FibError> {
    fib_equivalent_with_caps(p, q, spec, Caps::from_env()?)
}

pub fn fib_equivalent_with_caps(
    p: &TwoVarFib,
    q: &TwoVarFib,
    spec: &EdgeSpec,
    caps: Caps,
) -> Result<Option<FibEquivalence>, FibError> {
    if *p.base != *q.base {
        return Err(FibError::BaseMismatch);
    }
    caps.admit("first fibration", p)?;
    caps.admit("second fibration", q)?;
    let (ep, eq) = (&p.total, &q.total);
    let (rels_p, rels_q) = (spec.rels(p), spec.rels(q));
    let candidates: Vec<Vec<Obj>> = ep
        .objects()
        .map(|x| eq.objects().filter(|&y| q.proj.obj[y] == p.proj.obj[x]).collect())
        .collect();
    let over_base = |f: Mor, g: Mor| q.proj.mor[g] == p.proj.mor[f];
    let search = FunctorSearch { obj_candidates: candidates, mor_ok: Some(&over_base), fully_faithful: true };
    let vertical_iso = |g: Mor| eq.is_iso(g) && q.base.is_identity(q.proj.mor[g]);

    let mut found = None;
    search_functors(ep, eq, &search, &mut |f| {
        if !preserves(f, spec, &rels_p, &rels_q) {
            return true;
        }
        // essential surjectivity through isomorphisms over identities
        let mut chosen: Vec<(Obj, Mor)> = Vec::with_capacity(eq.n_obj());
        for y in eq.objects() {
            let hit = ep
                .objects()
                .find_map(|x| eq.hom(f.obj[x], y).iter().copied().find(|&g| vertical_iso(g)).map(|g| (x, g)));
            match hit {
                Some(h) => chosen.push(h),
                None => return true,
            }
        }
        let preimage = |x: Obj, x1: Obj, target: Mor| -> Mor {
            *ep.hom(x, x1).iter().find(|&&k| f.mor[k] == target).expect("fully faithful")
        };
        let back_obj: Vec<Obj> = chosen.iter().map(|c| c.0).collect();
        let back_mor: Vec<Mor> = eq
            .morphisms()
            .map(|g| {
                let (y, y1) = (eq.src(g), eq.tgt(g));
                let (phi, phi1) = (chosen[y].1, chosen[y1].1);
                let target = eq.compose_all(&[eq.inverse(phi1).unwrap(), g, phi]);
                preimage(chosen[y].0, chosen[y1].0, target)
            })
            .collect();
        let Ok(backward) = FinFunctor::new(eq.clone(), ep.clone(), back_obj, back_mor) else {
            return true;
        };
        if !preserves(&backward, spec, &rels_q, &rels_p) {
            return true;
        }
        let unit_comp: Vec<Mor> = ep
            .objects()
            .map(|x| {
                let (x1, phi) = chosen[f.obj[x]];
                preimage(x, x1, eq.inverse(phi).unwrap())
            })
            .collect();
        let counit_comp: Vec<Mor> = chosen.iter().map(|c| c.1).collect();
        let unit = NatTransf::new(FinFunctor::identity(ep), backward.after(f), unit_comp);
        let counit = NatTransf::new(f.after(&backward), FinFunctor::identity(eq), counit_comp);
        if let (Ok(unit), Ok(counit)) = (unit, counit) {
            found = Some(FibEquivalence { forward: f.clone(), backward, unit, counit, preserved: spec.clone() });
            return false;
        }
        true
    });
    Ok(found)
}
