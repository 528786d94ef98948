use super::interpolate::{diagrams, Mode};
use super::{FibError, LiftKind, Rel, TwoVarFib};
use crate::fincat::{FinFunctor, Mor};
use serde::Serialize;
use std::collections::BTreeMap;

/// Evidence that a flag is false.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Witness {
    /// No lift of the given kind of `base_morphism` at `object`.
    MissingLift { lift: LiftKind, object: String, base_morphism: String },
    /// A single offending edge.
    Edge { morphism: String, reason: String },
    /// A triangle `(first, second)` in the base over which a restriction fails.
    Triangle { first: String, second: String, reason: String },
    /// The flag failed because a prerequisite flag failed.
    Requires { flag: String },
}

/// The full set of flags for a functor into `A × B`, with a witness for
/// every false flag.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FibTaxonomy {
    pub cartesian_fib: bool,
    pub cocartesian_fib: bool,
    pub locally_cartesian_fib: bool,
    pub locally_cocartesian_fib: bool,
    pub conservative: bool,
    pub left_fib: bool,
    pub right_fib: bool,
    pub bicartesian: bool,
    pub cocart_over_a: bool,
    pub cart_over_a: bool,
    pub cocart_over_b: bool,
    pub cart_over_b: bool,
    /// `p_r: E_r -> ιA × B` is a cocartesian fibration
    pub pr_cocart: bool,
    pub pr_cart: bool,
    /// `p_l: E_l -> A × ιB` is a cartesian fibration
    pub pl_cart: bool,
    pub pl_cocart: bool,
    pub curved_ortho: bool,
    pub gray: bool,
    pub op_gray: bool,
    pub ortho: bool,
    pub bifib: bool,
    pub witnesses: BTreeMap<String, Witness>,
}

/// All relative functors needed to classify a `TwoVarFib`, computed once.
#[derive(Clone, Debug)]
pub struct FibAnalysis {
    pub fib: TwoVarFib,
    /// `p`
    pub full: Rel,
    /// `p` over `A × ιB`
    pub left: Rel,
    /// `p` over `ιA × B`
    pub right: Rel,
    /// `p1: E -> A`
    pub one: Rel,
    /// `p2: E -> B`
    pub two: Rel,
    /// the fibres `E_a -> B`, all at once
    pub fib_a: Rel,
    /// the fibres `E_b -> A`, all at once
    pub fib_b: Rel,
    pub mask_left: Vec<bool>,
    pub mask_right: Vec<bool>,
}

impl FibAnalysis {
    pub fn new(p: &TwoVarFib) -> FibAnalysis {
        let mask_left = p.mask_left();
        let mask_right = p.mask_right();
        FibAnalysis {
            full: Rel::new(&p.proj),
            left: Rel::restricted(&p.proj, mask_left.clone()),
            right: Rel::restricted(&p.proj, mask_right.clone()),
            one: Rel::new(&p.p1),
            two: Rel::new(&p.p2),
            fib_a: Rel::restricted(&p.proj, p.mask_fibres_a()),
            fib_b: Rel::restricted(&p.proj, p.mask_fibres_b()),
            mask_left,
            mask_right,
            fib: p.clone(),
        }
    }

    fn name(&self, e: Mor) -> String {
        self.fib.total.mor_name(e).to_string()
    }

    fn lift_flag(
        &self,
        w: &mut BTreeMap<String, Witness>,
        flag: &str,
        rel: &Rel,
        kind: LiftKind,
        over: &dyn Fn(Mor) -> bool,
    ) -> bool {
        match rel.missing_lift(kind, over) {
            None => true,
            Some((x, beta)) => {
                w.insert(
                    flag.into(),
                    Witness::MissingLift {
                        lift: kind,
                        object: self.fib.total.obj_name(x).into(),
                        base_morphism: rel.base().mor_name(beta).into(),
                    },
                );
                false
            }
        }
    }

    /// First morphism over an isomorphism that is not itself invertible.
    pub fn non_conservative_edge(&self) -> Option<Mor> {
        let (e, s) = (&self.fib.total, &self.fib.base);
        e.morphisms().find(|&f| s.is_iso(self.fib.proj.mor[f]) && !e.is_iso(f))
    }

    /// Every `rel`-flagged edge of `kind` has an invertible image under `q`.
    fn flagged_edges_over_isos(&self, rel: &Rel, kind: LiftKind, q: &FinFunctor) -> bool {
        rel.total()
            .morphisms()
            .all(|f| !rel.flags(kind)[f] || q.tgt.is_iso(q.mor[f]))
    }

    /// The equivalent descriptions of a curved orthofibration, in order:
    /// the definition; the four-condition reformulation through `p1` and
    /// `p2`; through `p1` and the fibres over `A`; through `p_r`; through
    /// `p2` and the fibres over `B`; through `p_l`.
    pub fn curved_ortho_criteria(&self) -> Vec<(&'static str, bool)> {
        let cart_over_a = self.full.missing_lift(LiftKind::Cartesian, &|m| self.mask_left[m]).is_none();
        let cocart_over_b = self.full.missing_lift(LiftKind::Cocartesian, &|m| self.mask_right[m]).is_none();
        let one_cart = self.one.is_fibration(LiftKind::Cartesian);
        let two_cocart = self.two.is_fibration(LiftKind::Cocartesian);
        let one_over_iso = self.flagged_edges_over_isos(&self.one, LiftKind::Cartesian, &self.fib.p2);
        let two_over_iso = self.flagged_edges_over_isos(&self.two, LiftKind::Cocartesian, &self.fib.p1);
        let fib_a_cocart = self.fib_a.is_fibration(LiftKind::Cocartesian);
        let fib_b_cart = self.fib_b.is_fibration(LiftKind::Cartesian);
        let pr_cocart = self.right.is_fibration(LiftKind::Cocartesian);
        let pl_cart = self.left.is_fibration(LiftKind::Cartesian);
        vec![
            ("definition", cart_over_a && cocart_over_b),
            ("components", one_cart && two_cocart && one_over_iso && two_over_iso),
            ("p1 and fibres over A", one_cart && one_over_iso && fib_a_cocart),
            ("cartesian over A and p_r", cart_over_a && pr_cocart),
            ("p2 and fibres over B", two_cocart && two_over_iso && fib_b_cart),
            ("cocartesian over B and p_l", cocart_over_b && pl_cart),
        ]
    }

    pub fn classify(&self) -> Result<FibTaxonomy, FibError> {
        let mut w = BTreeMap::new();
        let all = |_: Mor| true;
        let ml = |m: Mor| self.mask_left[m];
        let mr = |m: Mor| self.mask_right[m];
        let e = &self.fib.total;

        let cocartesian_fib = self.lift_flag(&mut w, "cocartesian_fib", &self.full, LiftKind::Cocartesian, &all);
        let cartesian_fib = self.lift_flag(&mut w, "cartesian_fib", &self.full, LiftKind::Cartesian, &all);
        let locally_cocartesian_fib =
            self.lift_flag(&mut w, "locally_cocartesian_fib", &self.full, LiftKind::LocallyCocartesian, &all);
        let locally_cartesian_fib =
            self.lift_flag(&mut w, "locally_cartesian_fib", &self.full, LiftKind::LocallyCartesian, &all);

        let conservative = match self.non_conservative_edge() {
            None => true,
            Some(f) => {
                w.insert(
                    "conservative".into(),
                    Witness::Edge { morphism: self.name(f), reason: "lies over an isomorphism but is not invertible".into() },
                );
                false
            }
        };
        let mut every_edge = |flag: &str, prereq: (&str, bool), flags: &[bool], what: &str| -> bool {
            if !prereq.1 {
                w.insert(flag.into(), Witness::Requires { flag: prereq.0.into() });
                return false;
            }
            match e.morphisms().find(|&f| !flags[f]) {
                None => true,
                Some(f) => {
                    w.insert(flag.into(), Witness::Edge { morphism: self.name(f), reason: format!("is not {what}") });
                    false
                }
            }
        };
        let left_fib = every_edge("left_fib", ("cocartesian_fib", cocartesian_fib), &self.full.cocartesian, "cocartesian");
        let right_fib = every_edge("right_fib", ("cartesian_fib", cartesian_fib), &self.full.cartesian, "cartesian");

        let cocart_over_a = self.lift_flag(&mut w, "cocart_over_a", &self.full, LiftKind::Cocartesian, &ml);
        let cart_over_a = self.lift_flag(&mut w, "cart_over_a", &self.full, LiftKind::Cartesian, &ml);
        let cocart_over_b = self.lift_flag(&mut w, "cocart_over_b", &self.full, LiftKind::Cocartesian, &mr);
        let cart_over_b = self.lift_flag(&mut w, "cart_over_b", &self.full, LiftKind::Cartesian, &mr);
        let pr_cocart = self.lift_flag(&mut w, "pr_cocart", &self.right, LiftKind::Cocartesian, &all);
        let pr_cart = self.lift_flag(&mut w, "pr_cart", &self.right, LiftKind::Cartesian, &all);
        let pl_cart = self.lift_flag(&mut w, "pl_cart", &self.left, LiftKind::Cartesian, &all);
        let pl_cocart = self.lift_flag(&mut w, "pl_cocart", &self.left, LiftKind::Cocartesian, &all);

        let both = |w: &mut BTreeMap<String, Witness>, flag: &str, a: (&str, bool), b: (&str, bool)| -> bool {
            for (name, ok) in [a, b] {
                if !ok {
                    let inherited = w.get(name).cloned().unwrap_or(Witness::Requires { flag: name.into() });
                    w.insert(flag.into(), inherited);
                    return false;
                }
            }
            true
        };
        let bicartesian = both(&mut w, "bicartesian", ("cartesian_fib", cartesian_fib), ("cocartesian_fib", cocartesian_fib));
        let curved_ortho = both(&mut w, "curved_ortho", ("cart_over_a", cart_over_a), ("cocart_over_b", cocart_over_b));
        let gray = both(&mut w, "gray", ("cocart_over_a", cocart_over_a), ("pr_cocart", pr_cocart));
        let op_gray = both(&mut w, "op_gray", ("cart_over_a", cart_over_a), ("pr_cart", pr_cart));
        let bifib = both(&mut w, "bifib", ("curved_ortho", curved_ortho), ("conservative", conservative));

        let criteria = self.curved_ortho_criteria();
        if criteria.iter().any(|c| c.1 != curved_ortho) {
            return Err(FibError::InconsistentCriteria {
                flag: "curved_ortho".into(),
                detail: format!("{criteria:?}"),
            });
        }

        let ortho = if !curved_ortho {
            w.insert("ortho".into(), Witness::Requires { flag: "curved_ortho".into() });
            false
        } else {
            match diagrams(self, Mode::CurvedOrtho)?.into_iter().find(|d| !e.is_iso(d.interpolating_edge)) {
                None => true,
                Some(d) => {
                    w.insert(
                        "ortho".into(),
                        Witness::Edge {
                            morphism: self.name(d.interpolating_edge),
                            reason: "interpolating edge is not invertible".into(),
                        },
                    );
                    false
                }
            }
        };

        Ok(FibTaxonomy {
            cartesian_fib,
            cocartesian_fib,
            locally_cartesian_fib,
            locally_cocartesian_fib,
            conservative,
            left_fib,
            right_fib,
            bicartesian,
            cocart_over_a,
            cart_over_a,
            cocart_over_b,
            cart_over_b,
            pr_cocart,
            pr_cart,
            pl_cart,
            pl_cocart,
            curved_ortho,
            gray,
            op_gray,
            ortho,
            bifib,
            witnesses: w,
        })
    }
}

/// Decide every flag of the taxonomy by exhaustive lift and edge checks.
pub fn classify(p: &TwoVarFib) -> Result<FibTaxonomy, FibError> {
    FibAnalysis::new(p).classify()
}
