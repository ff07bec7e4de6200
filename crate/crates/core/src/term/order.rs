//! Successor and predecessor in the carrier chain.
//!
//! Every carrier built from `Z` and `R` is unbounded in both directions, so
//! a fiber's neighbours are found from the fiber pattern of the first
//! coordinate alone.

use super::ops::in_subgroup;
use super::{Node, Term};
use crate::element::{Element, Fiber};
use crate::error::Result;
use crate::scalar::Leaf;

impl Term {
    /// Least element above `a`, or `a` itself if there is none.
    pub fn successor(&self, a: &Element) -> Result<Element> {
        self.check_element(a)?;
        Ok(self.succ_opt(a).unwrap_or_else(|| a.clone()))
    }

    /// Greatest element below `a`, or `a` itself if there is none.
    pub fn predecessor(&self, a: &Element) -> Result<Element> {
        self.check_element(a)?;
        Ok(self.pred_opt(a).unwrap_or_else(|| a.clone()))
    }

    pub(crate) fn succ_opt(&self, a: &Element) -> Option<Element> {
        match (self.node(), a) {
            (Node::Leaf(Leaf::Z), Element::Scalar(s)) => Some(Element::Scalar(s.offset(1))),
            (Node::Leaf(Leaf::R), _) => None,
            (_, Element::Pair(x, s)) => match s {
                Fiber::Val(y) => {
                    let y_term = self.second().expect("product node");
                    y_term.succ_opt(y).map(|up| Element::with_val((**x).clone(), up))
                }
                Fiber::Bottom => {
                    if self.fiber_has_values(x) {
                        None
                    } else if self.fiber_has_top(x) {
                        Some(Element::top((**x).clone()))
                    } else {
                        self.next_fiber(x)
                    }
                }
                Fiber::Top => self.next_fiber(x),
            },
            _ => None,
        }
    }

    pub(crate) fn pred_opt(&self, a: &Element) -> Option<Element> {
        match (self.node(), a) {
            (Node::Leaf(Leaf::Z), Element::Scalar(s)) => Some(Element::Scalar(s.offset(-1))),
            (Node::Leaf(Leaf::R), _) => None,
            (_, Element::Pair(x, s)) => match s {
                Fiber::Val(y) => {
                    let y_term = self.second().expect("product node");
                    y_term.pred_opt(y).map(|down| Element::with_val((**x).clone(), down))
                }
                Fiber::Top => {
                    if self.fiber_has_values(x) {
                        None
                    } else if self.fiber_has_bottom() {
                        Some(Element::bottom((**x).clone()))
                    } else {
                        self.prev_fiber(x)
                    }
                }
                Fiber::Bottom => self.prev_fiber(x),
            },
            _ => None,
        }
    }

    fn next_fiber(&self, x: &Element) -> Option<Element> {
        let up = self.first()?.succ_opt(x)?;
        let low = self.fiber_min(&up)?;
        Some(Element::pair(up, low))
    }

    fn prev_fiber(&self, x: &Element) -> Option<Element> {
        let down = self.first()?.pred_opt(x)?;
        let high = self.fiber_max(&down);
        Some(Element::pair(down, high))
    }

    /// Whether the fiber over `x` contains elements of the second factor.
    pub(crate) fn fiber_has_values(&self, x: &Element) -> bool {
        match self.node() {
            Node::Lower { w, .. } => in_subgroup(w, x),
            Node::Upper { v, .. } => in_subgroup(v, x),
            Node::Leaf(_) => false,
        }
    }

    pub(crate) fn fiber_has_top(&self, x: &Element) -> bool {
        match self.node() {
            Node::Lower { v, .. } => in_subgroup(v, x),
            Node::Upper { .. } => true,
            Node::Leaf(_) => false,
        }
    }

    fn fiber_has_bottom(&self) -> bool {
        matches!(self.node(), Node::Lower { .. })
    }

    /// Least point of the fiber over `x`; `None` when the fiber contains the
    /// (unbounded) second factor.
    pub(crate) fn fiber_min(&self, x: &Element) -> Option<Fiber> {
        match self.node() {
            Node::Lower { .. } => Some(Fiber::Bottom),
            Node::Upper { v, .. } => (!in_subgroup(v, x)).then_some(Fiber::Top),
            Node::Leaf(_) => None,
        }
    }

    /// Greatest point of the fiber over `x`.
    pub(crate) fn fiber_max(&self, x: &Element) -> Fiber {
        if self.fiber_has_top(x) {
            Fiber::Top
        } else {
            Fiber::Bottom
        }
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

    #[test]
    fn integers_step_by_one() {
        assert_eq!(Term::z().successor(&z(3)).unwrap(), z(4));
        assert_eq!(Term::z().predecessor(&z(3)).unwrap(), z(2));
        assert_eq!(Term::r().successor(&q(1, 2)).unwrap(), q(1, 2));
    }

    #[test]
    fn u1_top_has_no_successor() {
        // Fiber over 1 is a copy of Q with no least element.
        let u1 = build_basic(1);
        let a = Element::top(z(0));
        assert_eq!(u1.successor(&a).unwrap(), a);
        // ...but (1, q) has predecessor nowhere either, while (0,T) has none below.
        assert_eq!(u1.predecessor(&a).unwrap(), a);
    }

    #[test]
    fn type_iii_gap() {
        let t = Term::plp3(
            Term::r(),
            Subgroup::full(1),
            Subgroup::new(vec![Coord::scaled(1, 1)]),
            Term::r(),
        )
        .unwrap();
        let lo = Element::bottom(q(1, 2));
        let hi = Element::top(q(1, 2));
        assert_eq!(t.successor(&lo).unwrap(), hi);
        assert_eq!(t.predecessor(&hi).unwrap(), lo);
    }

    #[test]
    fn type_iv_gap_below_missing_fiber() {
        let t = Term::plp4(Term::z(), Subgroup::new(vec![Coord::scaled(2, 1)]), Term::r()).unwrap();
        assert_eq!(t.successor(&Element::top(z(0))).unwrap(), Element::top(z(1)));
        assert_eq!(t.predecessor(&Element::top(z(1))).unwrap(), Element::top(z(0)));
        // Above (1,T) comes the fiber over 2, which has no least element.
        assert_eq!(t.successor(&Element::top(z(1))).unwrap(), Element::top(z(1)));
    }

    #[test]
    fn type_i_over_z_has_boundary_gaps() {
        let t = Term::plp1(Term::z(), Subgroup::full(1), Term::r()).unwrap();
        assert_eq!(t.successor(&Element::top(z(0))).unwrap(), Element::bottom(z(1)));
        let u = Term::plp2(Term::z(), Term::z()).unwrap();
        let a = Element::with_val(z(0), z(5));
        assert_eq!(u.successor(&a).unwrap(), Element::with_val(z(0), z(6)));
    }
}
