//! The four structural rewrite rules and their carrier bijections.
//!
//! ```text
//! R1  PLP2(PLP2(A;B);C)    <->  PLP2(A;PLP2(B;C))
//! R2  PLP2(PLP1(A;H;L);B)  <->  PLP1(A;H;PLP2(L;B))
//! R3  PLP1(A;H;PLP1(B;K;C)) <-> PLP1(PLP1(A;H;B);H x K;C)
//! R4  PLP2(A;PLP1(B;K;C))  <->  PLP1(PLP2(A;B);gr(A) x K;C)
//! ```
//!
//! Every rule keeps the leaves in order and the group part unchanged, so
//! subgroup descriptors of enclosing nodes stay meaningful.

use std::fmt;

use serde::Serialize;

use crate::element::{Element, Fiber};
use crate::error::{Error, Result};
use crate::term::{Shape, Term};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum Rule {
    R1,
    R2,
    R3,
    R4,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum Direction {
    LeftToRight,
    RightToLeft,
}

impl Direction {
    pub fn reversed(self) -> Direction {
        match self {
            Direction::LeftToRight => Direction::RightToLeft,
            Direction::RightToLeft => Direction::LeftToRight,
        }
    }
}

/// Steps from the root: `0` enters the first factor, `1` the second.
pub type Path = Vec<u8>;

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct RewriteStep {
    pub rule: Rule,
    pub direction: Direction,
    pub path: Path,
}

impl RewriteStep {
    pub fn new(rule: Rule, direction: Direction, path: Path) -> Self {
        RewriteStep { rule, direction, path }
    }

    pub fn inverse(&self) -> RewriteStep {
        RewriteStep {
            direction: self.direction.reversed(),
            ..self.clone()
        }
    }

    /// Human-readable description of the element bijection.
    pub fn bijection(&self) -> &'static str {
        match self.local_map() {
            LocalMap::Flatten => "((x,y),z) -> (x,(y,z)); ((x,s),_) -> (x,s) for s in {T,B}",
            LocalMap::Unflatten(Fiber::Top) => "(x,(y,z)) -> ((x,y),z); (x,s) -> ((x,s),T) for s in {T,B}",
            LocalMap::Unflatten(_) => "(x,(y,z)) -> ((x,y),z); (x,s) -> ((x,s),B) for s in {T,B}",
        }
    }

    fn local_map(&self) -> LocalMap {
        match (self.rule, self.direction) {
            (Rule::R1 | Rule::R2, Direction::LeftToRight) | (Rule::R3 | Rule::R4, Direction::RightToLeft) => {
                LocalMap::Flatten
            }
            (Rule::R1 | Rule::R2, Direction::RightToLeft) => LocalMap::Unflatten(Fiber::Top),
            (Rule::R3 | Rule::R4, Direction::LeftToRight) => LocalMap::Unflatten(Fiber::Bottom),
        }
    }

    /// Image of an element of the source term under this step.
    pub fn map_element(&self, e: &Element) -> Element {
        let local = self.local_map();
        map_at(e, &self.path, &|inner| local.apply(inner))
    }
}

impl fmt::Display for RewriteStep {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let arrow = match self.direction {
            Direction::LeftToRight => "->",
            Direction::RightToLeft => "<-",
        };
        let path: Vec<String> = self.path.iter().map(|p| p.to_string()).collect();
        write!(f, "{:?} {} at [{}]", self.rule, arrow, path.join(","))
    }
}

#[derive(Debug, Clone)]
enum LocalMap {
    Flatten,
    /// Nests `(x,(y,z))` as `((x,y),z)`, padding added points with the
    /// given fiber.
    Unflatten(Fiber),
}

impl LocalMap {
    fn apply(&self, e: &Element) -> Element {
        let (x, s) = match e {
            Element::Pair(x, s) => (x, s),
            Element::Scalar(_) => return e.clone(),
        };
        match self {
            LocalMap::Flatten => match &**x {
                Element::Pair(a, Fiber::Val(l)) => {
                    Element::with_val((**a).clone(), Element::pair((**l).clone(), s.clone()))
                }
                Element::Pair(a, point) => Element::pair((**a).clone(), point.clone()),
                Element::Scalar(_) => e.clone(),
            },
            LocalMap::Unflatten(pad) => match s {
                Fiber::Val(v) => match &**v {
                    Element::Pair(l, z) => {
                        Element::pair(Element::with_val((**x).clone(), (**l).clone()), z.clone())
                    }
                    Element::Scalar(_) => e.clone(),
                },
                point => Element::pair(Element::pair((**x).clone(), point.clone()), pad.clone()),
            },
        }
    }
}

fn map_at(e: &Element, path: &[u8], f: &dyn Fn(&Element) -> Element) -> Element {
    let Some((&step, rest)) = path.split_first() else {
        return f(e);
    };
    match (e, step) {
        (Element::Pair(x, s), 0) => Element::pair(map_at(x, rest, f), s.clone()),
        (Element::Pair(x, Fiber::Val(v)), _) => Element::with_val((**x).clone(), map_at(v, rest, f)),
        _ => e.clone(),
    }
}

pub fn subterm<'a>(term: &'a Term, path: &[u8]) -> Option<&'a Term> {
    path.iter().try_fold(term, |t, &step| match step {
        0 => t.first(),
        _ => t.second(),
    })
}

fn replace_at(term: &Term, path: &[u8], new: Term) -> Result<Term> {
    let Some((&step, rest)) = path.split_first() else {
        return Ok(new);
    };
    let child = |t: &Term| replace_at(t, rest, new.clone());
    let shape = match (term.shape().clone(), step) {
        (Shape::Z | Shape::R, _) => {
            return Err(Error::PatternMismatch(format!("path leaves the term at {}", term)))
        }
        (Shape::Plp1 { x, h, y }, 0) => Shape::Plp1 { x: child(&x)?, h, y },
        (Shape::Plp1 { x, h, y }, _) => Shape::Plp1 { x, h, y: child(&y)? },
        (Shape::Plp2 { x, y }, 0) => Shape::Plp2 { x: child(&x)?, y },
        (Shape::Plp2 { x, y }, _) => Shape::Plp2 { x, y: child(&y)? },
        (Shape::Plp3 { x, v, w, y }, 0) => Shape::Plp3 { x: child(&x)?, v, w, y },
        (Shape::Plp3 { x, v, w, y }, _) => Shape::Plp3 { x, v, w, y: child(&y)? },
        (Shape::Plp4 { x, v, y }, 0) => Shape::Plp4 { x: child(&x)?, v, y },
        (Shape::Plp4 { x, v, y }, _) => Shape::Plp4 { x, v, y: child(&y)? },
    };
    Ok(Term::from_shape(shape))
}

fn plp1(x: Term, h: crate::subgroup::Subgroup, y: Term) -> Term {
    Term::from_shape(Shape::Plp1 { x, h, y })
}

fn plp2(x: Term, y: Term) -> Term {
    Term::from_shape(Shape::Plp2 { x, y })
}

/// Rewrites the redex itself, without validating the result.
fn rewrite_local(t: &Term, rule: Rule, direction: Direction) -> Option<Term> {
    use Direction::*;
    match (rule, direction, t.shape()) {
        (Rule::R1, LeftToRight, Shape::Plp2 { x, y: c }) => match x.shape() {
            Shape::Plp2 { x: a, y: b } => Some(plp2(a.clone(), plp2(b.clone(), c.clone()))),
            _ => None,
        },
        (Rule::R1, RightToLeft, Shape::Plp2 { x: a, y }) => match y.shape() {
            Shape::Plp2 { x: b, y: c } => Some(plp2(plp2(a.clone(), b.clone()), c.clone())),
            _ => None,
        },
        (Rule::R2, LeftToRight, Shape::Plp2 { x, y: b }) => match x.shape() {
            Shape::Plp1 { x: a, h, y: l } => Some(plp1(a.clone(), h.clone(), plp2(l.clone(), b.clone()))),
            _ => None,
        },
        (Rule::R2, RightToLeft, Shape::Plp1 { x: a, h, y }) => match y.shape() {
            Shape::Plp2 { x: l, y: b } => Some(plp2(plp1(a.clone(), h.clone(), l.clone()), b.clone())),
            _ => None,
        },
        (Rule::R3, LeftToRight, Shape::Plp1 { x: a, h, y }) => match y.shape() {
            Shape::Plp1 { x: b, h: k, y: c } => {
                Some(plp1(plp1(a.clone(), h.clone(), b.clone()), h.product(k), c.clone()))
            }
            _ => None,
        },
        (Rule::R3, RightToLeft, Shape::Plp1 { x, h: hk, y: c }) => match x.shape() {
            Shape::Plp1 { x: a, h, y: b } => {
                let (prefix, k) = hk.split_at(a.leaves().len());
                (prefix == *h).then(|| plp1(a.clone(), h.clone(), plp1(b.clone(), k, c.clone())))
            }
            _ => None,
        },
        (Rule::R4, LeftToRight, Shape::Plp2 { x: a, y }) => match y.shape() {
            Shape::Plp1 { x: b, h: k, y: c } => Some(plp1(
                plp2(a.clone(), b.clone()),
                a.group_part().product(k),
                c.clone(),
            )),
            _ => None,
        },
        (Rule::R4, RightToLeft, Shape::Plp1 { x, h: gk, y: c }) => match x.shape() {
            Shape::Plp2 { x: a, y: b } => {
                let (prefix, k) = gk.split_at(a.leaves().len());
                (prefix == *a.group_part()).then(|| plp2(a.clone(), plp1(b.clone(), k, c.clone())))
            }
            _ => None,
        },
        _ => None,
    }
}

/// Applies `step` without checking that the result is well defined.
pub fn rewrite_unchecked(term: &Term, step: &RewriteStep) -> Result<Term> {
    let target = subterm(term, &step.path)
        .ok_or_else(|| Error::PatternMismatch(format!("no subterm at {:?} in {}", step.path, term)))?;
    let replaced = rewrite_local(target, step.rule, step.direction).ok_or_else(|| {
        Error::PatternMismatch(format!("{} does not match {:?} {:?}", target, step.rule, step.direction))
    })?;
    replace_at(term, &step.path, replaced)
}

/// Applies `step` and validates the result.
pub fn rewrite(term: &Term, step: &RewriteStep) -> Result<Term> {
    let out = rewrite_unchecked(term, step)?;
    out.validate()?;
    Ok(out)
}

pub fn rewrite_r1(term: &Term, path: Path, direction: Direction) -> Result<Term> {
    rewrite(term, &RewriteStep::new(Rule::R1, direction, path))
}

pub fn rewrite_r2(term: &Term, path: Path, direction: Direction) -> Result<Term> {
    rewrite(term, &RewriteStep::new(Rule::R2, direction, path))
}

/// Whether `rule` matches the node at the root of `t` in the given direction.
pub fn matches(t: &Term, rule: Rule, direction: Direction) -> bool {
    rewrite_local(t, rule, direction).is_some()
}
