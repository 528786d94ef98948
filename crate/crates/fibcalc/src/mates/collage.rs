use super::MateError;
use crate::fibclass::TwoVarFib;
use crate::fincat::{build_keyed, FinCat, FinFunctor, Keyed, Mor, Obj};
use std::sync::Arc;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum CollageObj {
    Zero(Obj),
    One(Obj),
}

/// `Cross(h, e)`: for a right collage `h: p -> g(q)` in `P` with `e = q`,
/// for a left collage `h: f(p) -> q` in `Q` with `e = p`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum CollageMor {
    Zero(Mor),
    One(Mor),
    Cross(Mor, Obj),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Style {
    /// glued along `g: Q -> P`, cross morphisms `Hom_P(p, g q)`
    Right,
    /// glued along `f: P -> Q`, cross morphisms `Hom_Q(f p, q)`
    Left,
}

/// The collage of a functor between two categories over `S`, as a functor
/// to `[1] × S` with `P` over `0` and `Q` over `1`.
#[derive(Clone, Debug)]
pub struct Collage {
    pub style: Style,
    pub fib: TwoVarFib,
    pub keys: Keyed<CollageObj, CollageMor>,
}

/// `zero: P -> S`, `one: Q -> S`; `map` is `Q -> P` (right style) or
/// `P -> Q` (left style) and must lie over `S`.
pub fn collage(zero: &FinFunctor, one: &FinFunctor, map: &FinFunctor, style: Style) -> Result<Collage, MateError> {
    let (p, q) = (&zero.src, &one.src);
    let s = &zero.tgt;
    if *one.tgt != **s {
        return Err(MateError::Shape("the two sides lie over different bases".into()));
    }
    let over = match style {
        Style::Right => *map.src == **q && *map.tgt == **p && zero.after(map).mor == one.mor,
        Style::Left => *map.src == **p && *map.tgt == **q && one.after(map).mor == zero.mor,
    };
    if !over {
        return Err(MateError::Shape("the glueing functor does not lie over the base".into()));
    }
    let mut objs: Vec<CollageObj> = p.objects().map(CollageObj::Zero).collect();
    objs.extend(q.objects().map(CollageObj::One));
    let mut mors: Vec<CollageMor> = p.morphisms().map(CollageMor::Zero).collect();
    mors.extend(q.morphisms().map(CollageMor::One));
    match style {
        Style::Right => {
            for e in q.objects() {
                for x in p.objects() {
                    mors.extend(p.hom(x, map.obj[e]).iter().map(|&h| CollageMor::Cross(h, e)));
                }
            }
        }
        Style::Left => {
            for e in p.objects() {
                for y in q.objects() {
                    mors.extend(q.hom(map.obj[e], y).iter().map(|&h| CollageMor::Cross(h, e)));
                }
            }
        }
    }
    let obj_name = |o: &CollageObj| match *o {
        CollageObj::Zero(x) => format!("(0,{})", p.obj_name(x)),
        CollageObj::One(y) => format!("(1,{})", q.obj_name(y)),
    };
    let mor_name = |m: &CollageMor| match *m {
        CollageMor::Zero(u) => format!("(0,{})", p.mor_name(u)),
        CollageMor::One(w) => format!("(1,{})", q.mor_name(w)),
        CollageMor::Cross(h, e) => match style {
            Style::Right => format!("(0->1,{},{})", p.mor_name(h), q.obj_name(e)),
            Style::Left => format!("(0->1,{},{})", q.mor_name(h), p.obj_name(e)),
        },
    };
    let ends = |m: &CollageMor| match *m {
        CollageMor::Zero(u) => (CollageObj::Zero(p.src(u)), CollageObj::Zero(p.tgt(u))),
        CollageMor::One(w) => (CollageObj::One(q.src(w)), CollageObj::One(q.tgt(w))),
        CollageMor::Cross(h, e) => match style {
            Style::Right => (CollageObj::Zero(p.src(h)), CollageObj::One(e)),
            Style::Left => (CollageObj::Zero(e), CollageObj::One(q.tgt(h))),
        },
    };
    let ident = |o: &CollageObj| match *o {
        CollageObj::Zero(x) => CollageMor::Zero(p.id(x)),
        CollageObj::One(y) => CollageMor::One(q.id(y)),
    };
    let compose = |g: &CollageMor, f: &CollageMor| match (*g, *f, style) {
        (CollageMor::Zero(a), CollageMor::Zero(b), _) => CollageMor::Zero(p.compose(a, b)),
        (CollageMor::One(a), CollageMor::One(b), _) => CollageMor::One(q.compose(a, b)),
        (CollageMor::One(w), CollageMor::Cross(h, _), Style::Right) => CollageMor::Cross(p.compose(map.mor[w], h), q.tgt(w)),
        (CollageMor::One(w), CollageMor::Cross(h, e), Style::Left) => CollageMor::Cross(q.compose(w, h), e),
        (CollageMor::Cross(h, e), CollageMor::Zero(v), Style::Right) => CollageMor::Cross(p.compose(h, v), e),
        (CollageMor::Cross(h, _), CollageMor::Zero(v), Style::Left) => CollageMor::Cross(q.compose(h, map.mor[v]), p.src(v)),
        _ => unreachable!("no morphisms from the 1-side to the 0-side"),
    };
    let keys = build_keyed(objs, mors, obj_name, mor_name, ends, ident, compose)?;

    let interval = Arc::new(FinCat::chain(1));
    let arrow = interval.mor_id("0->1").expect("[1] has its arrow");
    let p1 = FinFunctor::new_unchecked(
        keys.cat.clone(),
        interval.clone(),
        keys.obj_keys.iter().map(|o| matches!(o, CollageObj::One(_)) as usize).collect(),
        keys.mor_keys
            .iter()
            .map(|m| match *m {
                CollageMor::Zero(_) => interval.id(0),
                CollageMor::One(_) => interval.id(1),
                CollageMor::Cross(..) => arrow,
            })
            .collect(),
    );
    let p2 = FinFunctor::new_unchecked(
        keys.cat.clone(),
        s.clone(),
        keys.obj_keys
            .iter()
            .map(|o| match *o {
                CollageObj::Zero(x) => zero.obj[x],
                CollageObj::One(y) => one.obj[y],
            })
            .collect(),
        keys.mor_keys
            .iter()
            .map(|m| match (*m, style) {
                (CollageMor::Zero(u), _) => zero.mor[u],
                (CollageMor::One(w), _) => one.mor[w],
                (CollageMor::Cross(h, _), Style::Right) => zero.mor[h],
                (CollageMor::Cross(h, _), Style::Left) => one.mor[h],
            })
            .collect(),
    );
    let fib = TwoVarFib::from_components(p1, p2)?;
    Ok(Collage { style, fib, keys })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fibclass::classify;
    use crate::grothendieck::{fib_equivalent_with_caps, Caps, EdgeSpec};

    #[test]
    fn collage_of_the_identity_is_the_cylinder() {
        let c = Arc::new(FinCat::chain(1));
        let pt = Arc::new(FinCat::point());
        let to_pt = FinFunctor::to_point(&c, &pt);
        let x = collage(&to_pt, &to_pt, &FinFunctor::identity(&c), Style::Right).unwrap();
        x.fib.total.check_laws().unwrap();
        // [1] × [1]: 4 objects, 9 morphisms
        assert_eq!(x.fib.total.n_obj(), 4);
        assert_eq!(x.fib.total.n_mor(), 9);
        let t = classify(&x.fib).unwrap();
        assert!(t.cocart_over_a && t.cart_over_a);
        let y = collage(&to_pt, &to_pt, &FinFunctor::identity(&c), Style::Left).unwrap();
        let caps = Caps { objects: 10, morphisms: 40 };
        assert!(fib_equivalent_with_caps(&x.fib, &y.fib, &EdgeSpec::none(), caps).unwrap().is_some());
    }

    #[test]
    fn right_collages_are_cartesian_over_the_interval() {
        // g: [2] -> [1], 0 -> 0, 1 -> 1, 2 -> 1
        let (c, d) = (Arc::new(FinCat::chain(2)), Arc::new(FinCat::chain(1)));
        let pt = Arc::new(FinCat::point());
        let g = FinFunctor::monotone(&c, &d, vec![0, 1, 1]).unwrap();
        let x = collage(&FinFunctor::to_point(&d, &pt), &FinFunctor::to_point(&c, &pt), &g, Style::Right).unwrap();
        let t = classify(&x.fib).unwrap();
        assert!(t.cart_over_a);
        // g has a left adjoint, so the collage is cocartesian as well
        assert!(t.cocart_over_a);
        let bad = FinFunctor::monotone(&d, &c, vec![0, 2]).unwrap();
        assert!(collage(&FinFunctor::to_point(&d, &pt), &FinFunctor::to_point(&c, &pt), &bad, Style::Right).is_err());
    }
}
