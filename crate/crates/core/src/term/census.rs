//! Enumeration of idempotent elements.
//!
//! Squaring doubles every scalar layer and leaves `T` and `B` alone, so an
//! idempotent has zero in every scalar position. The candidates are all
//! elements of that form.

use serde::Serialize;

use super::ops::in_subgroup;
use super::{Node, Term};
use crate::element::{Element, Fiber};
use crate::scalar::Scalar;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct IdempotentCensus {
    /// Idempotents at or above the unit.
    pub positive: usize,
    /// Idempotents at or below the unit.
    pub negative: usize,
    /// All idempotents in increasing order.
    pub elements: Vec<Element>,
}

impl Term {
    /// Every idempotent of the algebra, in increasing order.
    pub fn enumerate_idempotents(&self) -> Vec<Element> {
        let mut out: Vec<Element> = self
            .zero_candidates()
            .into_iter()
            .filter(|e| self.mul_raw(e, e) == *e)
            .collect();
        out.sort_by(|a, b| a.lex_cmp(b));
        out
    }

    pub fn idempotent_census(&self) -> IdempotentCensus {
        let elements = self.enumerate_idempotents();
        let t = self.unit_element();
        let positive = elements.iter().filter(|e| e.lex_cmp(&t).is_ge()).count();
        let negative = elements.iter().filter(|e| e.lex_cmp(&t).is_le()).count();
        IdempotentCensus {
            positive,
            negative,
            elements,
        }
    }

    fn zero_candidates(&self) -> Vec<Element> {
        match self.node() {
            Node::Leaf(leaf) => vec![Element::Scalar(Scalar::zero(leaf))],
            Node::Lower { x, v, w, y } => {
                let ys = y.zero_candidates();
                let mut out = Vec::new();
                for a in x.zero_candidates() {
                    out.push(Element::bottom(a.clone()));
                    if in_subgroup(w, &a) {
                        out.extend(ys.iter().map(|b| Element::with_val(a.clone(), b.clone())));
                    }
                    if in_subgroup(v, &a) {
                        out.push(Element::pair(a, Fiber::Top));
                    }
                }
                out
            }
            Node::Upper { x, v, y } => {
                let ys = y.zero_candidates();
                let mut out = Vec::new();
                for a in x.zero_candidates() {
                    if in_subgroup(v, &a) {
                        out.extend(ys.iter().map(|b| Element::with_val(a.clone(), b.clone())));
                    }
                    out.push(Element::top(a));
                }
                out
            }
        }
    }
}
