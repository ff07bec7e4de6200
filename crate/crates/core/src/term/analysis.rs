//! Gap detection, realizability and a summary of structural facts.

use std::fmt;

use serde::Serialize;

use super::census::IdempotentCensus;
use super::{Node, PlpKind, Shape, Term};
use crate::element::Element;
use crate::scalar::{Leaf, Scalar};
use crate::subgroup::Subgroup;

/// Which clause of the gap search produced a witness.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum GapProvenance {
    /// Consecutive integers in a `Z` leaf.
    DiscreteLeaf,
    /// `(a,B) < (a,T)` for `a` in `V` but not in `W`.
    ProperTypeIII,
    /// `(a-1,T) < (a,T)` for `a` in `gr(X)` but not in `V`.
    ProperTypeIV,
    /// A gap of the first factor, closed off by the added points of a type
    /// I/III product.
    PropagatedFromFirst,
    /// A gap of the first factor whose upper end is not invertible, seen
    /// through the `T`-only fibers of a type II/IV product.
    FiberBoundary,
    /// A gap of the second factor, placed over the unit of the first.
    LiftedFromSecond,
}

/// A pair `lower < upper` with nothing strictly between them.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GapWitness {
    pub lower: Element,
    pub upper: Element,
    pub provenance: GapProvenance,
}

impl fmt::Display for GapWitness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} < {} ({:?})", self.lower, self.upper, self.provenance)
    }
}

/// Result of the realizability decision together with the steps taken.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Realizability {
    pub realizable: bool,
    pub trace: Vec<String>,
}

#[derive(Debug, Clone, Serialize)]
pub struct StructuralFacts {
    pub term: String,
    pub kind: Option<PlpKind>,
    pub depth: usize,
    pub leaves: Vec<Leaf>,
    pub group_part: Subgroup,
    pub group_part_discrete: bool,
    pub proper_gapped_node: bool,
    pub dense: bool,
    pub gap_outside_group_part: Option<GapWitness>,
    pub realizability: Realizability,
    pub idempotents: IdempotentCensus,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum GapKind {
    Any,
    /// Both ends outside the group part. A gap whose upper end is not
    /// invertible never starts at an invertible element, so one search
    /// serves both purposes.
    Outside,
}

impl Term {
    /// Some gap of the carrier, if there is one. The search is complete:
    /// `None` means the chain is dense.
    pub fn find_gap(&self) -> Option<GapWitness> {
        self.gap(GapKind::Any)
    }

    pub fn has_gap(&self) -> bool {
        self.find_gap().is_some()
    }

    /// A gap neither of whose ends is invertible.
    pub fn gap_outside_group_part(&self) -> Option<GapWitness> {
        self.gap(GapKind::Outside)
    }

    fn gap(&self, kind: GapKind) -> Option<GapWitness> {
        match self.node() {
            Node::Leaf(Leaf::Z) if kind == GapKind::Any => Some(GapWitness {
                lower: Element::Scalar(Scalar::int(0)),
                upper: Element::Scalar(Scalar::int(1)),
                provenance: GapProvenance::DiscreteLeaf,
            }),
            Node::Leaf(_) => None,
            Node::Lower { x, v, w, y } => {
                if let Some(a) = outside(v, w, x) {
                    return Some(GapWitness {
                        lower: Element::bottom(a.clone()),
                        upper: Element::top(a),
                        provenance: GapProvenance::ProperTypeIII,
                    });
                }
                if let Some(g) = x.gap(GapKind::Any) {
                    let high = self.fiber_max(&g.lower);
                    return Some(GapWitness {
                        lower: Element::pair(g.lower, high),
                        upper: Element::bottom(g.upper),
                        provenance: GapProvenance::PropagatedFromFirst,
                    });
                }
                self.lift(x, y, kind)
            }
            Node::Upper { x, v, y } => {
                if let Some(g) = x.gap(GapKind::Outside) {
                    return Some(GapWitness {
                        lower: Element::top(g.lower),
                        upper: Element::top(g.upper),
                        provenance: GapProvenance::FiberBoundary,
                    });
                }
                if let Some(a) = outside(x.group_part(), v, x) {
                    let below = x.pred_opt(&a).expect("group part is discretely embedded");
                    return Some(GapWitness {
                        lower: Element::top(below),
                        upper: Element::top(a),
                        provenance: GapProvenance::ProperTypeIV,
                    });
                }
                self.lift(x, y, kind)
            }
        }
    }

    fn lift(&self, x: &Term, y: &Term, kind: GapKind) -> Option<GapWitness> {
        let g = y.gap(kind)?;
        let t = x.unit_element();
        Some(GapWitness {
            lower: Element::with_val(t.clone(), g.lower),
            upper: Element::with_val(t, g.upper),
            provenance: GapProvenance::LiftedFromSecond,
        })
    }

    /// Decides whether the algebra is isomorphic to a uninorm on `[0,1]`.
    ///
    /// A gapped chain never is. Otherwise the term is rewritten towards a
    /// left-nested type I chain of basic algebras and every index subgroup
    /// must be countable.
    pub fn realizability(&self) -> Realizability {
        let mut trace = Vec::new();
        let realizable = match self.find_gap() {
            Some(g) => {
                trace.push(format!("{}: carrier has a gap {}", self, g));
                false
            }
            None => self.real_rec(&mut trace),
        };
        Realizability { realizable, trace }
    }

    pub fn is_realizable(&self) -> bool {
        self.realizability().realizable
    }

    fn real_rec(&self, trace: &mut Vec<String>) -> bool {
        match self.shape() {
            Shape::R => {
                trace.push("R: realizable".into());
                true
            }
            Shape::Z => {
                trace.push("Z: not realizable (not densely ordered)".into());
                false
            }
            _ if self.is_type_i_like() => {
                let (x, y) = (self.first().unwrap(), self.second().unwrap());
                let h = self.group_part().split_at(x.leaves().len()).0;
                trace.push(format!("{}: type I node", self));
                x.real_rec(trace) && countable(&h, x.leaves(), self, trace) && y.real_rec(trace)
            }
            _ if self.is_type_ii_like() => {
                let (x, y) = (self.first().unwrap(), self.second().unwrap());
                trace.push(format!("{}: type II node", self));
                real_upper(x, y, trace)
            }
            _ => {
                trace.push(format!("{}: proper type III/IV node", self));
                false
            }
        }
    }

    pub fn analyze(&self) -> StructuralFacts {
        StructuralFacts {
            term: self.to_string(),
            kind: self.kind(),
            depth: self.depth(),
            leaves: self.leaves().to_vec(),
            group_part: self.group_part().clone(),
            group_part_discrete: self.group_part_discrete(),
            proper_gapped_node: self.has_proper_gapped_node(),
            dense: !self.has_gap(),
            gap_outside_group_part: self.gap_outside_group_part(),
            realizability: self.realizability(),
            idempotents: self.idempotent_census(),
        }
    }
}

/// Realizability of `PLP2(x; y)`.
fn real_upper(x: &Term, y: &Term, trace: &mut Vec<String>) -> bool {
    match x.shape() {
        Shape::Z => y.real_rec(trace),
        _ if x.is_type_ii_like() => {
            let (a, b) = (x.first().unwrap(), x.second().unwrap());
            let inner = Term::from_shape(Shape::Plp2 {
                x: b.clone(),
                y: y.clone(),
            });
            trace.push(format!("reassociate to PLP2({};{})", a, inner));
            real_upper(a, &inner, trace)
        }
        _ if x.is_type_i_like() => {
            let (a, l) = (x.first().unwrap(), x.second().unwrap());
            let h = x.group_part().split_at(a.leaves().len()).0;
            let inner = Term::from_shape(Shape::Plp2 {
                x: l.clone(),
                y: y.clone(),
            });
            trace.push(format!("distribute to PLP1({};{};{})", a, h, inner));
            a.real_rec(trace) && countable(&h, a.leaves(), x, trace) && inner.real_rec(trace)
        }
        _ => {
            trace.push(format!("{}: first factor is not of type I or II", x));
            false
        }
    }
}

fn countable(h: &Subgroup, leaves: &[Leaf], at: &Term, trace: &mut Vec<String>) -> bool {
    if h.is_countable(leaves) {
        trace.push(format!("{}: index subgroup {} is countable", at, h));
        true
    } else {
        trace.push(format!("{}: index subgroup {} is uncountable", at, h));
        false
    }
}

/// An element of the first factor lying in `big` but not in `small`.
fn outside(big: &Subgroup, small: &Subgroup, x: &Term) -> Option<Element> {
    let values = big.witness_outside(small, x.leaves())?;
    x.element_from_scalars(&values).ok()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::subgroup::Coord;
    use crate::term::{build_basic, build_representation};

    fn zint() -> Subgroup {
        Subgroup::new(vec![Coord::scaled(1, 1)])
    }

    fn assert_gap(t: &Term, provenance: GapProvenance) {
        let g = t.find_gap().unwrap_or_else(|| panic!("{t} should have a gap"));
        assert_eq!(g.provenance, provenance, "{t}: {g}");
        assert!(t.is_well_formed(&g.lower) && t.is_well_formed(&g.upper), "{t}: {g}");
        assert_eq!(t.succ_opt(&g.lower), Some(g.upper.clone()), "{t}: {g}");
        assert_eq!(t.pred_opt(&g.upper), Some(g.lower.clone()), "{t}: {g}");
    }

    #[test]
    fn outside_gaps_avoid_the_group_part() {
        let lifted = Term::plp2(Term::z(), Term::z()).unwrap();
        assert!(lifted.find_gap().is_some());
        assert!(lifted.gap_outside_group_part().is_none());
        let two = Subgroup::new(vec![Coord::scaled(2, 1)]);
        let iv = Term::plp4(Term::z(), two, Term::r()).unwrap();
        let g = iv.gap_outside_group_part().unwrap();
        assert!(!iv.is_invertible(&g.lower).unwrap() && !iv.is_invertible(&g.upper).unwrap());
        let facts = iv.analyze();
        assert!(!facts.dense && !facts.realizability.realizable);
    }

    #[test]
    fn dense_terms_have_no_gap() {
        for t in [
            Term::r(),
            build_basic(1),
            build_basic(3),
            build_representation(&[0, 0], &[zint()]).unwrap(),
        ] {
            assert!(t.find_gap().is_none(), "{t}");
        }
    }

    #[test]
    fn gap_clauses() {
        assert_gap(&Term::z(), GapProvenance::DiscreteLeaf);
        let iii = Term::plp3(Term::r(), Subgroup::full(1), zint(), Term::r()).unwrap();
        assert_gap(&iii, GapProvenance::ProperTypeIII);
        let two = Subgroup::new(vec![Coord::scaled(2, 1)]);
        let iv = Term::plp4(Term::z(), two.clone(), Term::r()).unwrap();
        assert_gap(&iv, GapProvenance::ProperTypeIV);
        // Here the predecessor of the witness lies in V, so the gap must sit
        // just below a, not above it.
        let iv = Term::plp4(Term::z(), Subgroup::trivial(1), Term::r()).unwrap();
        assert_gap(&iv, GapProvenance::ProperTypeIV);
        let i = Term::plp1(Term::z(), Subgroup::full(1), Term::r()).unwrap();
        assert_gap(&i, GapProvenance::PropagatedFromFirst);
        let inner = Term::plp1(Term::z(), two, Term::z()).unwrap();
        let outer = Term::plp2(inner, Term::r()).unwrap();
        assert_gap(&outer, GapProvenance::FiberBoundary);
        let lifted = Term::plp2(Term::z(), Term::z()).unwrap();
        assert_gap(&lifted, GapProvenance::LiftedFromSecond);
    }

    #[test]
    fn realizability_examples() {
        assert!(Term::r().is_realizable());
        assert!(!Term::z().is_realizable());
        assert!(build_basic(2).is_realizable());
        assert!(build_representation(&[0, 1], &[zint()]).unwrap().is_realizable());
        // An uncountable index set of fibers cannot be embedded into [0,1].
        let t = Term::plp1(Term::r(), Subgroup::full(1), Term::r()).unwrap();
        let r = t.realizability();
        assert!(!r.realizable);
        assert!(r.trace.iter().any(|s| s.contains("uncountable")), "{:?}", r.trace);
        let nested = Term::plp2(Term::plp2(Term::z(), Term::z()).unwrap(), Term::r()).unwrap();
        assert!(nested.is_realizable());
    }

    #[test]
    fn type_i_first_factor_under_type_ii() {
        let x = Term::plp1(Term::r(), zint(), Term::z()).unwrap();
        let t = Term::plp2(x, Term::r()).unwrap();
        assert!(t.find_gap().is_none());
        assert!(t.is_realizable());
    }
}
