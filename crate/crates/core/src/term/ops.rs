use std::cmp::Ordering;

use super::{Node, Term};
use crate::element::{Element, Fiber};
use crate::error::{Error, Result};
use crate::subgroup::Subgroup;

/// The monoid unit `t` and the constant `f` defining the negation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UnitConstants {
    pub t: Element,
    pub f: Element,
}

pub(crate) fn in_subgroup(sub: &Subgroup, e: &Element) -> bool {
    e.scalars().is_some_and(|s| sub.contains_scalars(&s))
}

impl Term {
    /// Checks the carrier pattern of `e` against this term.
    pub fn check_element(&self, e: &Element) -> Result<()> {
        match (self.node(), e) {
            (Node::Leaf(leaf), Element::Scalar(s)) => {
                if s.leaf() == leaf {
                    Ok(())
                } else {
                    Err(Error::MalformedElement(format!(
                        "{} is not an element of {:?}",
                        s, leaf
                    )))
                }
            }
            (Node::Lower { x, v, w, y }, Element::Pair(a, s)) => {
                x.check_element(a)?;
                let allowed = if in_subgroup(w, a) {
                    true
                } else if in_subgroup(v, a) {
                    !matches!(s, Fiber::Val(_))
                } else {
                    matches!(s, Fiber::Bottom)
                };
                if !allowed {
                    return Err(Error::MalformedElement(format!(
                        "({},{}) is not in {}: first coordinate {} admits {}",
                        a,
                        s,
                        self,
                        a,
                        if in_subgroup(v, a) { "only T or B" } else { "only B" }
                    )));
                }
                match s {
                    Fiber::Val(b) => y.check_element(b),
                    _ => Ok(()),
                }
            }
            (Node::Upper { x, v, y }, Element::Pair(a, s)) => {
                x.check_element(a)?;
                match s {
                    Fiber::Bottom => Err(Error::MalformedElement(format!(
                        "({},B) is not in {}: type II/IV products have no added bottom",
                        a, self
                    ))),
                    Fiber::Top => Ok(()),
                    Fiber::Val(b) => {
                        if !in_subgroup(v, a) {
                            return Err(Error::MalformedElement(format!(
                                "({},{}) is not in {}: first coordinate {} admits only T",
                                a, b, self, a
                            )));
                        }
                        y.check_element(b)
                    }
                }
            }
            (_, e) => Err(Error::MalformedElement(format!(
                "{} does not match the shape of {}",
                e, self
            ))),
        }
    }

    pub fn is_well_formed(&self, e: &Element) -> bool {
        self.check_element(e).is_ok()
    }

    pub fn compare(&self, a: &Element, b: &Element) -> Result<Ordering> {
        self.check_element(a)?;
        self.check_element(b)?;
        Ok(a.lex_cmp(b))
    }

    pub fn mul(&self, a: &Element, b: &Element) -> Result<Element> {
        self.check_element(a)?;
        self.check_element(b)?;
        Ok(self.mul_raw(a, b))
    }

    pub fn neg(&self, a: &Element) -> Result<Element> {
        self.check_element(a)?;
        Ok(self.neg_raw(a))
    }

    /// Residuum `x -> z`, computed as `neg(x * neg(z))`.
    pub fn res(&self, x: &Element, z: &Element) -> Result<Element> {
        self.check_element(x)?;
        self.check_element(z)?;
        Ok(self.res_raw(x, z))
    }

    pub fn unit(&self) -> UnitConstants {
        let t = self.unit_element();
        UnitConstants { f: t.clone(), t }
    }

    pub fn is_idempotent(&self, a: &Element) -> Result<bool> {
        Ok(self.mul(a, a)? == *a)
    }

    /// Structural decision: every layer is a scalar and the leaf values lie
    /// in the group part descriptor.
    pub fn is_invertible(&self, a: &Element) -> Result<bool> {
        self.check_element(a)?;
        Ok(in_subgroup(self.group_part(), a))
    }

    /// The inverse of an invertible element; in an odd algebra it is the
    /// residual complement.
    pub fn inverse(&self, a: &Element) -> Result<Option<Element>> {
        if !self.is_invertible(a)? {
            return Ok(None);
        }
        Ok(Some(self.neg_raw(a)))
    }

    pub(crate) fn mul_raw(&self, a: &Element, b: &Element) -> Element {
        match (self.node(), a, b) {
            (Node::Leaf(_), Element::Scalar(p), Element::Scalar(q)) => Element::Scalar(p.add(q)),
            (
                Node::Lower { x, y, .. } | Node::Upper { x, y, .. },
                Element::Pair(a1, s1),
                Element::Pair(a2, s2),
            ) => {
                let first = x.mul_raw(a1, a2);
                let second = match (s1, s2) {
                    (Fiber::Bottom, _) | (_, Fiber::Bottom) => Fiber::Bottom,
                    (Fiber::Top, _) | (_, Fiber::Top) => Fiber::Top,
                    (Fiber::Val(p), Fiber::Val(q)) => Fiber::Val(Box::new(y.mul_raw(p, q))),
                };
                Element::pair(first, second)
            }
            _ => unreachable!("element shape checked before multiplication"),
        }
    }

    pub(crate) fn neg_raw(&self, a: &Element) -> Element {
        match (self.node(), a) {
            (Node::Leaf(_), Element::Scalar(s)) => Element::Scalar(s.neg()),
            (Node::Lower { x, v, y, .. }, Element::Pair(first, second)) => {
                let n = x.neg_raw(first);
                if !in_subgroup(v, first) {
                    return Element::bottom(n);
                }
                let s = match second {
                    Fiber::Val(b) => Fiber::Val(Box::new(y.neg_raw(b))),
                    other => other.flip(),
                };
                Element::pair(n, s)
            }
            (Node::Upper { x, y, .. }, Element::Pair(first, second)) => match second {
                Fiber::Val(b) => Element::with_val(x.neg_raw(first), y.neg_raw(b)),
                _ => {
                    let n = x.neg_raw(first);
                    if in_subgroup(x.group_part(), first) {
                        // The pair (neg x, B) is not in the carrier; the
                        // element just below it is (pred(neg x), T).
                        let below = x.pred_opt(&n).expect("group part is discretely embedded");
                        Element::top(below)
                    } else {
                        Element::top(n)
                    }
                }
            },
            _ => unreachable!("element shape checked before negation"),
        }
    }

    pub(crate) fn res_raw(&self, x: &Element, z: &Element) -> Element {
        self.neg_raw(&self.mul_raw(x, &self.neg_raw(z)))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Scalar;
    use crate::subgroup::{Coord, Subgroup};
    use crate::term::build_basic;

    fn q(p: i64, d: i64) -> Element {
        Element::Scalar(Scalar::rat(p, d))
    }

    fn z(n: i64) -> Element {
        Element::Scalar(Scalar::int(n))
    }

    fn plp1_r_z_r() -> Term {
        Term::plp1(Term::r(), Subgroup::new(vec![Coord::scaled(1, 1)]), Term::r()).unwrap()
    }

    #[test]
    fn compare_examples() {
        let u1 = build_basic(1);
        let a = Element::top(z(0));
        let b = Element::with_val(z(1), q(-5, 1));
        assert_eq!(u1.compare(&a, &b).unwrap(), Ordering::Less);
        let t = plp1_r_z_r();
        assert_eq!(
            t.compare(&Element::bottom(q(1, 1)), &Element::top(q(1, 1))).unwrap(),
            Ordering::Less
        );
        assert_eq!(Term::r().compare(&q(2, 3), &q(2, 3)).unwrap(), Ordering::Equal);
    }

    #[test]
    fn mul_examples() {
        assert_eq!(Term::r().mul(&q(1, 2), &q(1, 3)).unwrap(), q(5, 6));
        let u1 = build_basic(1);
        let p = u1
            .mul(&Element::top(z(2)), &Element::with_val(z(-1), q(5, 1)))
            .unwrap();
        assert_eq!(p, Element::top(z(1)));
        let t = plp1_r_z_r();
        let p = t
            .mul(&Element::bottom(q(1, 1)), &Element::with_val(q(2, 1), q(3, 1)))
            .unwrap();
        assert_eq!(p, Element::bottom(q(3, 1)));
    }

    #[test]
    fn neg_examples() {
        assert_eq!(Term::r().neg(&q(3, 2)).unwrap(), q(-3, 2));
        let u1 = build_basic(1);
        assert_eq!(u1.neg(&Element::top(z(0))).unwrap(), Element::top(z(-1)));
        let t = plp1_r_z_r();
        assert_eq!(t.neg(&Element::bottom(q(1, 2))).unwrap(), Element::bottom(q(-1, 2)));
    }

    #[test]
    fn res_examples() {
        assert_eq!(Term::r().res(&q(1, 2), &q(3, 4)).unwrap(), q(1, 4));
        let u1 = build_basic(1);
        let x = Element::with_val(z(1), q(2, 1));
        let t = u1.unit().t;
        assert_eq!(u1.res(&x, &t).unwrap(), Element::with_val(z(-1), q(-2, 1)));
        let top0 = Element::top(z(0));
        assert_eq!(u1.res(&top0, &top0).unwrap(), top0);
    }

    #[test]
    fn units() {
        assert_eq!(Term::z().unit().t, z(0));
        let u1 = build_basic(1);
        let c = u1.unit();
        assert_eq!(c.t, Element::with_val(z(0), q(0, 1)));
        assert_eq!(c.t, c.f);
        assert_eq!(plp1_r_z_r().unit().t, Element::with_val(q(0, 1), q(0, 1)));
    }

    #[test]
    fn idempotent_and_invertible() {
        let u1 = build_basic(1);
        assert!(u1.is_idempotent(&Element::top(z(0))).unwrap());
        assert!(!u1.is_idempotent(&Element::top(z(-1))).unwrap());
        let a = Element::with_val(z(3), q(1, 2));
        assert!(u1.is_invertible(&a).unwrap());
        let inv = u1.inverse(&a).unwrap().unwrap();
        assert_eq!(inv, Element::with_val(z(-3), q(-1, 2)));
        assert_eq!(u1.mul(&a, &inv).unwrap(), u1.unit().t);
        assert!(!u1.is_invertible(&Element::top(z(3))).unwrap());
    }

    #[test]
    fn malformed_elements_rejected() {
        let u1 = build_basic(1);
        let bad = Element::with_val(q(1, 2), q(5, 1));
        assert!(matches!(u1.check_element(&bad), Err(Error::MalformedElement(_))));
        assert!(u1.check_element(&Element::bottom(z(0))).is_err());
        let t = plp1_r_z_r();
        // 1/2 is outside H = Z, so only B is allowed.
        assert!(t.check_element(&Element::top(q(1, 2))).is_err());
        assert!(t.check_element(&Element::with_val(q(1, 2), q(0, 1))).is_err());
        assert!(t.check_element(&Element::top(q(1, 1))).is_ok());
        let iv = Term::plp4(Term::z(), Subgroup::new(vec![Coord::scaled(2, 1)]), Term::r()).unwrap();
        assert!(iv.check_element(&Element::with_val(z(1), q(0, 1))).is_err());
        assert!(iv.check_element(&Element::with_val(z(2), q(0, 1))).is_ok());
    }
}
