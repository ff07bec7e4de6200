//! Carrier points of construction terms.
//!
//! An element of a leaf is a [`Scalar`]. An element of a product node is a
//! pair whose first component is an element of the first factor and whose
//! second component is either an element of the second factor or one of the
//! two added points, `T` (top) and `B` (bottom).

use std::cmp::Ordering;
use std::fmt;

use serde::{Serialize, Serializer};

use crate::scalar::Scalar;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Element {
    Scalar(Scalar),
    Pair(Box<Element>, Fiber),
}

/// Second component of a pair.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Fiber {
    Bottom,
    Val(Box<Element>),
    Top,
}

impl Element {
    pub fn pair(first: Element, second: Fiber) -> Element {
        Element::Pair(Box::new(first), second)
    }

    pub fn with_val(first: Element, second: Element) -> Element {
        Element::Pair(Box::new(first), Fiber::Val(Box::new(second)))
    }

    pub fn top(first: Element) -> Element {
        Element::Pair(Box::new(first), Fiber::Top)
    }

    pub fn bottom(first: Element) -> Element {
        Element::Pair(Box::new(first), Fiber::Bottom)
    }

    pub fn as_scalar(&self) -> Option<&Scalar> {
        match self {
            Element::Scalar(s) => Some(s),
            Element::Pair(..) => None,
        }
    }

    pub fn as_pair(&self) -> Option<(&Element, &Fiber)> {
        match self {
            Element::Pair(x, s) => Some((x, s)),
            Element::Scalar(_) => None,
        }
    }

    /// Leaf values in left-to-right order, or `None` if any layer holds `T`
    /// or `B` (such elements are never invertible).
    pub fn scalars(&self) -> Option<Vec<&Scalar>> {
        let mut out = Vec::new();
        self.collect_scalars(&mut out).then_some(out)
    }

    fn collect_scalars<'a>(&'a self, out: &mut Vec<&'a Scalar>) -> bool {
        match self {
            Element::Scalar(s) => {
                out.push(s);
                true
            }
            Element::Pair(x, Fiber::Val(y)) => x.collect_scalars(out) && y.collect_scalars(out),
            Element::Pair(..) => false,
        }
    }

    /// Lexicographic order, outermost layer first, `B < values < T`.
    /// Only meaningful for two elements of the same term.
    pub fn lex_cmp(&self, other: &Element) -> Ordering {
        match (self, other) {
            (Element::Scalar(a), Element::Scalar(b)) => a.cmp(b),
            (Element::Pair(x1, s1), Element::Pair(x2, s2)) => {
                x1.lex_cmp(x2).then_with(|| s1.lex_cmp(s2))
            }
            (Element::Scalar(_), Element::Pair(..)) => Ordering::Less,
            (Element::Pair(..), Element::Scalar(_)) => Ordering::Greater,
        }
    }
}

impl Fiber {
    fn rank(&self) -> u8 {
        match self {
            Fiber::Bottom => 0,
            Fiber::Val(_) => 1,
            Fiber::Top => 2,
        }
    }

    pub fn lex_cmp(&self, other: &Fiber) -> Ordering {
        match (self, other) {
            (Fiber::Val(a), Fiber::Val(b)) => a.lex_cmp(b),
            _ => self.rank().cmp(&other.rank()),
        }
    }

    /// Swaps the two added points and leaves values alone.
    pub fn flip(&self) -> Fiber {
        match self {
            Fiber::Bottom => Fiber::Top,
            Fiber::Top => Fiber::Bottom,
            Fiber::Val(v) => Fiber::Val(v.clone()),
        }
    }

    pub fn as_val(&self) -> Option<&Element> {
        match self {
            Fiber::Val(v) => Some(v),
            _ => None,
        }
    }
}

impl fmt::Display for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Element::Scalar(s) => write!(f, "{}", s),
            Element::Pair(x, s) => write!(f, "({},{})", x, s),
        }
    }
}

impl fmt::Display for Fiber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Fiber::Bottom => write!(f, "B"),
            Fiber::Top => write!(f, "T"),
            Fiber::Val(v) => write!(f, "{}", v),
        }
    }
}

/// Elements serialize as their compact text form.
impl Serialize for Element {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}
