//! Construction terms: expression trees over `Z`, `R` and the four partial
//! lexicographic products, with validation and builders.

mod analysis;
mod census;
mod ops;
mod order;

use std::fmt;
use std::sync::Arc;

use serde::Serialize;

use crate::element::Element;
use crate::error::{Error, Result};
use crate::scalar::{Leaf, Scalar};
use crate::subgroup::Subgroup;

pub use analysis::{GapProvenance, GapWitness, Realizability, StructuralFacts};
pub use census::IdempotentCensus;
pub use ops::UnitConstants;

/// An immutable, cheaply clonable construction term.
///
/// Terms built through [`Term::from_shape`] are not validated; the builders
/// ([`Term::plp1`] and friends, [`make_plp`]) are. Element operations assume
/// a valid term.
#[derive(Clone)]
pub struct Term(Arc<TermInner>);

struct TermInner {
    shape: Shape,
    leaves: Vec<Leaf>,
    group: Subgroup,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Shape {
    Z,
    R,
    /// Type I: `PLP1(X; H; Y)`.
    Plp1 { x: Term, h: Subgroup, y: Term },
    /// Type II: `PLP2(X; Y)`.
    Plp2 { x: Term, y: Term },
    /// Type III: `PLP3(X; V; W; Y)`.
    Plp3 {
        x: Term,
        v: Subgroup,
        w: Subgroup,
        y: Term,
    },
    /// Type IV: `PLP4(X; V; Y)`.
    Plp4 { x: Term, v: Subgroup, y: Term },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum PlpKind {
    I,
    II,
    III,
    IV,
}

/// Uniform view of a node: types I and III pad the second factor with both
/// `T` and `B` ("lower" products), types II and IV with `T` only.
pub(crate) enum Node<'a> {
    Leaf(Leaf),
    Lower {
        x: &'a Term,
        v: &'a Subgroup,
        w: &'a Subgroup,
        y: &'a Term,
    },
    Upper {
        x: &'a Term,
        v: &'a Subgroup,
        y: &'a Term,
    },
}

impl Term {
    pub fn from_shape(shape: Shape) -> Term {
        let shape = match shape {
            Shape::Plp1 { x, h, y } => Shape::Plp1 {
                h: h.canonical(x.leaves()),
                x,
                y,
            },
            Shape::Plp3 { x, v, w, y } => Shape::Plp3 {
                v: v.canonical(x.leaves()),
                w: w.canonical(x.leaves()),
                x,
                y,
            },
            Shape::Plp4 { x, v, y } => Shape::Plp4 {
                v: v.canonical(x.leaves()),
                x,
                y,
            },
            other => other,
        };
        let (leaves, group) = match &shape {
            Shape::Z => (vec![Leaf::Z], Subgroup::full(1)),
            Shape::R => (vec![Leaf::R], Subgroup::full(1)),
            Shape::Plp1 { x, h: sub, y }
            | Shape::Plp3 { x, w: sub, y, .. }
            | Shape::Plp4 { x, v: sub, y } => {
                (concat(x.leaves(), y.leaves()), sub.product(y.group_part()))
            }
            Shape::Plp2 { x, y } => (
                concat(x.leaves(), y.leaves()),
                x.group_part().product(y.group_part()),
            ),
        };
        Term(Arc::new(TermInner {
            shape,
            leaves,
            group,
        }))
    }

    pub fn z() -> Term {
        Term::from_shape(Shape::Z)
    }

    pub fn r() -> Term {
        Term::from_shape(Shape::R)
    }

    pub fn plp1(x: Term, h: Subgroup, y: Term) -> Result<Term> {
        checked(Shape::Plp1 { x, h, y })
    }

    pub fn plp2(x: Term, y: Term) -> Result<Term> {
        checked(Shape::Plp2 { x, y })
    }

    pub fn plp3(x: Term, v: Subgroup, w: Subgroup, y: Term) -> Result<Term> {
        checked(Shape::Plp3 { x, v, w, y })
    }

    pub fn plp4(x: Term, v: Subgroup, y: Term) -> Result<Term> {
        checked(Shape::Plp4 { x, v, y })
    }

    pub fn shape(&self) -> &Shape {
        &self.0.shape
    }

    /// Leaf groups in left-to-right order; these are the coordinates of the
    /// group part and of every subgroup descriptor over this term.
    pub fn leaves(&self) -> &[Leaf] {
        &self.0.leaves
    }

    /// Descriptor of the invertible elements.
    ///
    /// Type I/III: `W x gr(Y)`; type II: `gr(X) x gr(Y)`; type IV: `V x gr(Y)`.
    pub fn group_part(&self) -> &Subgroup {
        &self.0.group
    }

    pub fn kind(&self) -> Option<PlpKind> {
        match self.shape() {
            Shape::Z | Shape::R => None,
            Shape::Plp1 { .. } => Some(PlpKind::I),
            Shape::Plp2 { .. } => Some(PlpKind::II),
            Shape::Plp3 { .. } => Some(PlpKind::III),
            Shape::Plp4 { .. } => Some(PlpKind::IV),
        }
    }

    pub fn first(&self) -> Option<&Term> {
        match self.shape() {
            Shape::Z | Shape::R => None,
            Shape::Plp1 { x, .. }
            | Shape::Plp2 { x, .. }
            | Shape::Plp3 { x, .. }
            | Shape::Plp4 { x, .. } => Some(x),
        }
    }

    pub fn second(&self) -> Option<&Term> {
        match self.shape() {
            Shape::Z | Shape::R => None,
            Shape::Plp1 { y, .. }
            | Shape::Plp2 { y, .. }
            | Shape::Plp3 { y, .. }
            | Shape::Plp4 { y, .. } => Some(y),
        }
    }

    pub(crate) fn node(&self) -> Node<'_> {
        match self.shape() {
            Shape::Z => Node::Leaf(Leaf::Z),
            Shape::R => Node::Leaf(Leaf::R),
            Shape::Plp1 { x, h, y } => Node::Lower { x, v: h, w: h, y },
            Shape::Plp3 { x, v, w, y } => Node::Lower { x, v, w, y },
            Shape::Plp2 { x, y } => Node::Upper {
                x,
                v: x.group_part(),
                y,
            },
            Shape::Plp4 { x, v, y } => Node::Upper { x, v, y },
        }
    }

    /// Whether this node is semantically type I (a type III with `V = W`
    /// included).
    pub fn is_type_i_like(&self) -> bool {
        matches!(self.node(), Node::Lower { v, w, .. } if v == w)
    }

    /// Whether this node is semantically type II (a type IV with
    /// `V = gr(X)` included).
    pub fn is_type_ii_like(&self) -> bool {
        matches!(self.node(), Node::Upper { x, v, .. } if v == x.group_part())
    }

    /// True if some node is a type III product with `V != W` or a type IV
    /// product with `V != gr(X)`.
    pub fn has_proper_gapped_node(&self) -> bool {
        match self.node() {
            Node::Leaf(_) => false,
            Node::Lower { x, y, .. } | Node::Upper { x, y, .. } => {
                !(self.is_type_i_like() || self.is_type_ii_like())
                    || x.has_proper_gapped_node()
                    || y.has_proper_gapped_node()
            }
        }
    }

    /// Whether `gr(self)` is discretely embedded into the carrier.
    ///
    /// The successor of a group element `(w, y)` is `(w, y')` with `y'` the
    /// successor of `y` in the second factor, so the property is inherited
    /// from the second factor and ends at the rightmost leaf.
    pub fn group_part_discrete(&self) -> bool {
        match self.node() {
            Node::Leaf(leaf) => leaf == Leaf::Z,
            Node::Lower { y, .. } | Node::Upper { y, .. } => y.group_part_discrete(),
        }
    }

    pub fn depth(&self) -> usize {
        match (self.first(), self.second()) {
            (Some(x), Some(y)) => 1 + x.depth().max(y.depth()),
            _ => 0,
        }
    }

    /// Checks every node of the tree against the well-definedness conditions.
    pub fn validate(&self) -> Result<()> {
        let (x, y) = match (self.first(), self.second()) {
            (Some(x), Some(y)) => (x, y),
            _ => return Ok(()),
        };
        x.validate()?;
        y.validate()?;
        let leaves = x.leaves();
        let gr = x.group_part();
        match self.shape() {
            Shape::Plp1 { h, .. } => check_chain(h, "H", gr, "gr(X)", leaves),
            Shape::Plp3 { v, w, .. } => {
                check_chain(v, "V", gr, "gr(X)", leaves)?;
                check_chain(w, "W", v, "V", leaves)
            }
            Shape::Plp2 { .. } => check_discrete(x),
            Shape::Plp4 { v, .. } => {
                check_chain(v, "V", gr, "gr(X)", leaves)?;
                check_discrete(x)
            }
            Shape::Z | Shape::R => Ok(()),
        }
    }

    /// The unit as an element: zero at every leaf.
    pub fn unit_element(&self) -> Element {
        match self.node() {
            Node::Leaf(leaf) => Element::Scalar(Scalar::zero(leaf)),
            Node::Lower { x, y, .. } | Node::Upper { x, y, .. } => {
                Element::with_val(x.unit_element(), y.unit_element())
            }
        }
    }

    /// Builds the all-scalar element with the given leaf values.
    pub fn element_from_scalars(&self, values: &[Scalar]) -> Result<Element> {
        if values.len() != self.leaves().len() {
            return Err(Error::MalformedElement(format!(
                "expected {} leaf values, found {}",
                self.leaves().len(),
                values.len()
            )));
        }
        Ok(self.build_from_scalars(values))
    }

    fn build_from_scalars(&self, values: &[Scalar]) -> Element {
        match self.node() {
            Node::Leaf(_) => Element::Scalar(values[0].clone()),
            Node::Lower { x, y, .. } | Node::Upper { x, y, .. } => {
                let (a, b) = values.split_at(x.leaves().len());
                Element::with_val(x.build_from_scalars(a), y.build_from_scalars(b))
            }
        }
    }
}

fn concat(a: &[Leaf], b: &[Leaf]) -> Vec<Leaf> {
    a.iter().chain(b).copied().collect()
}

fn checked(shape: Shape) -> Result<Term> {
    let term = Term::from_shape(shape);
    term.validate()?;
    Ok(term)
}

fn check_chain(
    inner: &Subgroup,
    inner_name: &str,
    outer: &Subgroup,
    outer_name: &str,
    leaves: &[Leaf],
) -> Result<()> {
    inner.check(leaves)?;
    if inner.is_subgroup_of(outer, leaves) {
        return Ok(());
    }
    let witness = inner
        .witness_outside(outer, leaves)
        .map(|w| {
            let parts: Vec<String> = w.iter().map(|s| s.to_string()).collect();
            format!("; witness [{}] lies in {} but not in {}", parts.join(", "), inner_name, outer_name)
        })
        .unwrap_or_default();
    Err(Error::SubgroupChainViolation(format!(
        "{} = {} is not contained in {} = {}{}",
        inner_name, inner, outer_name, outer, witness
    )))
}

fn check_discrete(x: &Term) -> Result<()> {
    if x.group_part_discrete() {
        return Ok(());
    }
    let t = x.unit_element();
    let up = x.successor(&t).unwrap_or_else(|_| t.clone());
    Err(Error::DiscretenessViolation(format!(
        "gr(X) is not discretely embedded into X = {}: the unit {} has successor {}",
        x, t, up
    )))
}

/// Builds a validated product node of the given kind.
///
/// `subgroups` holds `H` for type I, nothing for type II, `V, W` for type
/// III and `V` for type IV.
pub fn make_plp(kind: PlpKind, x: Term, subgroups: Vec<Subgroup>, y: Term) -> Result<Term> {
    let expected = match kind {
        PlpKind::I | PlpKind::IV => 1,
        PlpKind::II => 0,
        PlpKind::III => 2,
    };
    if subgroups.len() != expected {
        return Err(Error::InvalidTerm(format!(
            "type {:?} product takes {} subgroup argument(s), got {}",
            kind,
            expected,
            subgroups.len()
        )));
    }
    let mut subs = subgroups.into_iter();
    let mut next = || subs.next().expect("length checked above");
    match kind {
        PlpKind::I => Term::plp1(x, next(), y),
        PlpKind::II => Term::plp2(x, y),
        PlpKind::III => {
            let v = next();
            Term::plp3(x, v, next(), y)
        }
        PlpKind::IV => Term::plp4(x, next(), y),
    }
}

/// The basic group-like uninorm `U_n`: `R` nested under `n` type II
/// products over `Z`, right-associated.
pub fn build_basic(n: usize) -> Term {
    (0..n).fold(Term::r(), |inner, _| {
        Term::from_shape(Shape::Plp2 { x: Term::z(), y: inner })
    })
}

/// Left-nested type I chain `PLP1(... PLP1(U_k1; H_1; U_k2) ...; H_{m-1}; U_km)`.
pub fn build_representation(k: &[usize], subgroups: &[Subgroup]) -> Result<Term> {
    let (&first, rest) = k
        .split_first()
        .ok_or_else(|| Error::InvalidTerm("representation needs at least one index".into()))?;
    if subgroups.len() != rest.len() {
        return Err(Error::ArityError {
            expected: rest.len(),
            found: subgroups.len(),
        });
    }
    rest.iter()
        .zip(subgroups)
        .try_fold(build_basic(first), |acc, (&ki, h)| {
            Term::plp1(acc, h.clone(), build_basic(ki))
        })
}

impl PartialEq for Term {
    fn eq(&self, other: &Term) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || self.shape() == other.shape()
    }
}

impl Eq for Term {}

impl std::hash::Hash for Term {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.shape().hash(state)
    }
}

impl fmt::Debug for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Term({})", self)
    }
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.shape() {
            Shape::Z => write!(f, "Z"),
            Shape::R => write!(f, "R"),
            Shape::Plp1 { x, h, y } => write!(f, "PLP1({};{};{})", x, h, y),
            Shape::Plp2 { x, y } => write!(f, "PLP2({};{})", x, y),
            Shape::Plp3 { x, v, w, y } => write!(f, "PLP3({};{};{};{})", x, v, w, y),
            Shape::Plp4 { x, v, y } => write!(f, "PLP4({};{};{})", x, v, y),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::subgroup::Coord;

    fn zint() -> Subgroup {
        Subgroup::new(vec![Coord::scaled(1, 1)])
    }

    #[test]
    fn type_ii_over_z_is_u1() {
        let u1 = make_plp(PlpKind::II, Term::z(), vec![], Term::r()).unwrap();
        assert_eq!(u1, build_basic(1));
        assert_eq!(u1.to_string(), "PLP2(Z;R)");
    }

    #[test]
    fn dense_first_factor_rejected() {
        let err = make_plp(PlpKind::II, Term::r(), vec![], Term::r()).unwrap_err();
        assert!(matches!(err, Error::DiscretenessViolation(_)), "{err}");
        let err = Term::plp2(build_basic(1), Term::r()).unwrap_err();
        assert!(matches!(err, Error::DiscretenessViolation(_)), "{err}");
        assert!(Term::plp2(Term::z(), build_basic(1)).is_ok());
    }

    #[test]
    fn subgroup_chain_checked() {
        let half = Subgroup::new(vec![Coord::scaled(1, 2)]);
        assert!(matches!(
            Term::plp1(Term::z(), half.clone(), Term::r()),
            Err(Error::SubgroupChainViolation(_))
        ));
        assert!(matches!(
            Term::plp3(Term::r(), zint(), half, Term::r()),
            Err(Error::SubgroupChainViolation(_))
        ));
        assert!(matches!(
            Term::plp1(Term::r(), Subgroup::full(2), Term::r()),
            Err(Error::ArityError { expected: 1, found: 2 })
        ));
        assert!(matches!(
            make_plp(PlpKind::III, Term::r(), vec![zint()], Term::r()),
            Err(Error::InvalidTerm(_))
        ));
    }

    #[test]
    fn group_parts() {
        let u1 = build_basic(1);
        assert_eq!(u1.group_part(), &Subgroup::full(2));
        let t = Term::plp1(Term::r(), zint(), Term::r()).unwrap();
        assert_eq!(t.group_part(), &Subgroup::new(vec![Coord::scaled(1, 1), Coord::Full]));
        assert_eq!(Term::z().group_part(), &Subgroup::full(1));
    }

    #[test]
    fn basic_and_representation_builders() {
        assert_eq!(build_basic(0), Term::r());
        assert_eq!(build_basic(2).to_string(), "PLP2(Z;PLP2(Z;R))");
        assert_eq!(build_representation(&[0], &[]).unwrap(), Term::r());
        let t = build_representation(&[0, 0], &[zint()]).unwrap();
        assert_eq!(t.to_string(), "PLP1(R;1*Zint;R)");
        let h = Subgroup::new(vec![Coord::Full, Coord::Trivial]);
        let t = build_representation(&[1, 0], &[h]).unwrap();
        assert_eq!(t.to_string(), "PLP1(PLP2(Z;R);full x triv;R)");
        assert!(build_representation(&[0, 0], &[]).is_err());
    }

    #[test]
    fn discreteness_follows_rightmost_leaf() {
        assert!(Term::z().group_part_discrete());
        assert!(!Term::r().group_part_discrete());
        assert!(!build_basic(1).group_part_discrete());
        assert!(Term::plp2(Term::z(), Term::z()).unwrap().group_part_discrete());
    }
}
