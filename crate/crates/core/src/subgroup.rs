//! Product-form subgroups of a term's group part.
//!
//! A descriptor lists one choice per leaf coordinate of the term it
//! restricts: the trivial group, a cyclic group `cZ`, or the whole leaf group.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::{format_rational, is_integral_multiple, parse_rational, Leaf, Scalar};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Coord {
    Trivial,
    /// `c·Z` for a positive `c`; under a `Z` leaf `c` is an integer.
    ScaledInt(BigRational),
    Full,
}

impl Coord {
    pub fn scaled(num: i64, den: i64) -> Coord {
        Coord::ScaledInt(BigRational::new(BigInt::from(num), BigInt::from(den)))
    }

    /// Rewrites `1·Z` under a `Z` leaf as `Full` so equal groups compare equal.
    fn canonical(&self, leaf: Leaf) -> Coord {
        match (self, leaf) {
            (Coord::ScaledInt(c), Leaf::Z) if c.is_one() => Coord::Full,
            _ => self.clone(),
        }
    }

    fn check(&self, leaf: Leaf) -> Result<()> {
        match self {
            Coord::ScaledInt(c) if *c <= BigRational::zero() => Err(Error::InvalidTerm(format!(
                "scale of {} must be positive",
                self
            ))),
            Coord::ScaledInt(c) if leaf == Leaf::Z && !c.is_integer() => {
                Err(Error::SubgroupChainViolation(format!(
                    "{} is not a subgroup of Z ({} is not an integer)",
                    self,
                    format_rational(c)
                )))
            }
            _ => Ok(()),
        }
    }

    pub fn contains(&self, value: &Scalar) -> bool {
        match self {
            Coord::Trivial => value.is_zero(),
            Coord::ScaledInt(c) => is_integral_multiple(&value.as_rational(), c),
            Coord::Full => true,
        }
    }

    /// Containment of canonical coordinates over the same leaf.
    pub fn is_subgroup_of(&self, other: &Coord, leaf: Leaf) -> bool {
        match (self, other) {
            (Coord::Trivial, _) => true,
            (_, Coord::Trivial) => false,
            (_, Coord::Full) => true,
            (Coord::ScaledInt(c), Coord::ScaledInt(d)) => is_integral_multiple(c, d),
            (Coord::Full, Coord::ScaledInt(d)) => leaf == Leaf::Z && d.is_one(),
        }
    }

    /// Countable once `R` stands for the reals: everything except the full
    /// real line.
    pub fn is_countable(&self, leaf: Leaf) -> bool {
        !(leaf == Leaf::R && *self == Coord::Full)
    }

    /// Some value in `self` but not in `smaller`, if there is one.
    pub fn witness_outside(&self, smaller: &Coord, leaf: Leaf) -> Option<Scalar> {
        let value = match (self, smaller) {
            (Coord::Trivial, _) | (_, Coord::Full) => return None,
            (Coord::ScaledInt(c), Coord::Trivial) => c.clone(),
            (Coord::Full, Coord::Trivial) => BigRational::one(),
            (Coord::ScaledInt(c), Coord::ScaledInt(d)) => {
                if is_integral_multiple(c, d) {
                    return None;
                }
                c.clone()
            }
            (Coord::Full, Coord::ScaledInt(d)) => match leaf {
                Leaf::Z if d.is_one() => return None,
                Leaf::Z => BigRational::one(),
                Leaf::R => d / BigRational::from_integer(2.into()),
            },
        };
        Scalar::Rat(value).coerce(leaf)
    }

    /// Index of `value` in the cyclic enumeration of a countable coordinate:
    /// `value / c` for `cZ` and `Z`, zero for the trivial group.
    pub(crate) fn index_of(&self, value: &Scalar) -> Option<BigInt> {
        match self {
            Coord::Trivial => value.is_zero().then(BigInt::zero),
            Coord::ScaledInt(c) => {
                let q = value.as_rational() / c;
                q.is_integer().then(|| q.to_integer())
            }
            Coord::Full => match value {
                Scalar::Int(n) => Some(n.clone()),
                Scalar::Rat(_) => None,
            },
        }
    }

    /// Generator of a countable coordinate, `None` for the trivial group.
    pub(crate) fn generator(&self) -> Option<BigRational> {
        match self {
            Coord::Trivial => None,
            Coord::ScaledInt(c) => Some(c.clone()),
            Coord::Full => Some(BigRational::one()),
        }
    }
}

impl fmt::Display for Coord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Coord::Trivial => write!(f, "triv"),
            Coord::ScaledInt(c) => write!(f, "{}*Zint", format_rational(c)),
            Coord::Full => write!(f, "full"),
        }
    }
}

impl std::str::FromStr for Coord {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Coord, String> {
        let s = s.trim();
        match s {
            "triv" => Ok(Coord::Trivial),
            "full" => Ok(Coord::Full),
            _ => {
                let scale = s
                    .strip_suffix("Zint")
                    .and_then(|rest| rest.trim_end().strip_suffix('*'))
                    .ok_or_else(|| format!("expected `triv`, `full` or `c*Zint`, found `{}`", s))?;
                let c = parse_rational(scale).ok_or_else(|| format!("bad scale `{}`", scale))?;
                Ok(Coord::ScaledInt(c))
            }
        }
    }
}

impl Serialize for Coord {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for Coord {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Coord, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Subgroup(pub Vec<Coord>);

impl Subgroup {
    pub fn new(coords: Vec<Coord>) -> Subgroup {
        Subgroup(coords)
    }

    pub fn full(arity: usize) -> Subgroup {
        Subgroup(vec![Coord::Full; arity])
    }

    pub fn trivial(arity: usize) -> Subgroup {
        Subgroup(vec![Coord::Trivial; arity])
    }

    pub fn coords(&self) -> &[Coord] {
        &self.0
    }

    pub fn arity(&self) -> usize {
        self.0.len()
    }

    /// Cartesian product: coordinates of `self` followed by those of `other`.
    pub fn product(&self, other: &Subgroup) -> Subgroup {
        Subgroup(self.0.iter().chain(other.0.iter()).cloned().collect())
    }

    pub fn split_at(&self, mid: usize) -> (Subgroup, Subgroup) {
        let (a, b) = self.0.split_at(mid.min(self.0.len()));
        (Subgroup(a.to_vec()), Subgroup(b.to_vec()))
    }

    pub(crate) fn canonical(&self, leaves: &[Leaf]) -> Subgroup {
        if leaves.len() != self.0.len() {
            return self.clone();
        }
        Subgroup(self.0.iter().zip(leaves).map(|(c, &l)| c.canonical(l)).collect())
    }

    pub(crate) fn check(&self, leaves: &[Leaf]) -> Result<()> {
        if leaves.len() != self.0.len() {
            return Err(Error::ArityError {
                expected: leaves.len(),
                found: self.0.len(),
            });
        }
        self.0.iter().zip(leaves).try_for_each(|(c, &l)| c.check(l))
    }

    /// Membership of a flat list of leaf values.
    pub fn contains_scalars(&self, values: &[&Scalar]) -> bool {
        values.len() == self.0.len() && self.0.iter().zip(values).all(|(c, v)| c.contains(v))
    }

    pub fn is_subgroup_of(&self, other: &Subgroup, leaves: &[Leaf]) -> bool {
        self.0.len() == other.0.len()
            && self
                .0
                .iter()
                .zip(&other.0)
                .zip(leaves)
                .all(|((a, b), &l)| a.is_subgroup_of(b, l))
    }

    /// A flat element of `self` that is not in `smaller`.
    pub fn witness_outside(&self, smaller: &Subgroup, leaves: &[Leaf]) -> Option<Vec<Scalar>> {
        let (i, value) = self
            .0
            .iter()
            .zip(&smaller.0)
            .zip(leaves)
            .enumerate()
            .find_map(|(i, ((big, small), &l))| big.witness_outside(small, l).map(|v| (i, v)))?;
        Some(
            leaves
                .iter()
                .enumerate()
                .map(|(j, &l)| if j == i { value.clone() } else { Scalar::zero(l) })
                .collect(),
        )
    }

    pub fn is_countable(&self, leaves: &[Leaf]) -> bool {
        self.0.iter().zip(leaves).all(|(c, &l)| c.is_countable(l))
    }
}

impl fmt::Display for Subgroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, c) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, " x ")?;
            }
            write!(f, "{}", c)?;
        }
        Ok(())
    }
}
