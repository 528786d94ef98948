use super::{fib_equivalent_with_caps, straighten_analysed, unstraighten, Caps, EdgeSpec, Factor, Variance};
use crate::fibclass::{FibAnalysis, FibError, TwoVarFib};
use crate::fincat::FinFunctor;
use serde::Serialize;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Direction {
    /// straighten covariantly, unstraighten contravariantly
    Ct,
    /// straighten contravariantly, unstraighten covariantly
    Cc,
}

/// Dualise `p` over one factor: straighten over that factor, view the
/// result over its opposite and unstraighten with the other variance.
///
/// Over `A`, `Ct` takes Gray fibrations over `A × B` to curved
/// orthofibrations over `A^op × B` and `Cc` goes back. Over `B`, `Ct` takes
/// curved orthofibrations over `A × B` to op-Gray fibrations (with the
/// factors swapped) over `A × B^op`, and `Cc` goes back.
pub fn dualize(p: &TwoVarFib, side: Factor, dir: Direction) -> Result<TwoVarFib, FibError> {
    let an = FibAnalysis::new(p);
    let tax = an.classify()?;
    let (ok, needs) = match (side, dir) {
        (Factor::A, Direction::Ct) => (tax.gray, "gray"),
        (Factor::A, Direction::Cc) | (Factor::B, Direction::Ct) => (tax.curved_ortho, "curved_ortho"),
        (Factor::B, Direction::Cc) => (tax.cart_over_b && tax.pl_cart, "op_gray over the swapped factors"),
    };
    if !ok {
        return Err(FibError::NotAFibration(format!("dualisation needs {needs}")));
    }
    let variance = match dir {
        Direction::Ct => Variance::Covariant,
        Direction::Cc => Variance::Contravariant,
    };
    let pf = match side {
        Factor::A => straighten_analysed(&an, variance)?,
        Factor::B => straighten_analysed(&FibAnalysis::new(&p.swap()), variance)?,
    };
    let q = unstraighten(&pf.reindex_opposite())?.fib;
    Ok(match side {
        Factor::A => q,
        Factor::B => q.swap(),
    })
}

/// Both ways round the dualisation square for a cocartesian fibration
/// `q: E -> A^op × B` (with `q.base_a` playing `A^op`).
#[derive(Clone, Debug, Serialize)]
pub struct SquareComparison {
    /// `D^ct` over `A` is an orthofibration over `A × B`
    pub middle_is_ortho: bool,
    /// `D^ct` over `B` of that is a cartesian fibration over `A × B^op`
    pub two_step_is_cartesian: bool,
    /// the two-step composite against the one-variable dual; `None` beyond
    /// the search caps
    pub agrees: Option<bool>,
}

pub fn square_comparison(q: &TwoVarFib, caps: Caps) -> Result<SquareComparison, FibError> {
    if !FibAnalysis::new(q).classify()?.cocartesian_fib {
        return Err(FibError::NotAFibration("the square starts from a cocartesian fibration".into()));
    }
    let middle = dualize(q, Factor::A, Direction::Ct)?;
    let middle_is_ortho = FibAnalysis::new(&middle).classify()?.ortho;
    let two_step = dualize(&middle, Factor::B, Direction::Ct)?;
    let two_step_is_cartesian = FibAnalysis::new(&two_step).classify()?.cartesian_fib;

    // the one-variable dual lives over (A^op × B)^op, which has the same
    // identifiers as A × B^op
    let one = dualize(&TwoVarFib::one_var(&q.proj), Factor::A, Direction::Ct)?;
    let proj = FinFunctor::new(one.total.clone(), two_step.base.clone(), one.p1.obj.clone(), one.p1.mor.clone())?;
    let one = TwoVarFib::new(proj, two_step.base_a.clone(), two_step.base_b.clone())?;
    let agrees = match fib_equivalent_with_caps(&two_step, &one, &EdgeSpec::cartesian(), caps) {
        Ok(found) => Some(found.is_some()),
        Err(FibError::SearchCapExceeded { .. }) => None,
        Err(e) => return Err(e),
    };
    Ok(SquareComparison { middle_is_ortho, two_step_is_cartesian, agrees })
}
