//! Group coordinates: integers under a `Z` leaf, rationals under an `R` leaf.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

/// The two leaf groups a construction term can be built from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Leaf {
    /// The additive group of the integers.
    Z,
    /// The additive group of the rationals, standing in for the reals.
    R,
}

/// A value of a leaf group. Rationals are always in lowest terms with a
/// positive denominator (guaranteed by `BigRational`).
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Scalar {
    Int(BigInt),
    Rat(BigRational),
}

/// Largest denominator tried when snapping a float back to a rational.
pub const SNAP_DENOMINATOR_CAP: i128 = 1_000_000;
/// Relative tolerance under which a snapped rational is accepted.
pub const SNAP_TOLERANCE: f64 = 1e-9;

impl Scalar {
    pub fn zero(leaf: Leaf) -> Scalar {
        match leaf {
            Leaf::Z => Scalar::Int(BigInt::zero()),
            Leaf::R => Scalar::Rat(BigRational::zero()),
        }
    }

    pub fn int(n: i64) -> Scalar {
        Scalar::Int(BigInt::from(n))
    }

    pub fn rat(num: i64, den: i64) -> Scalar {
        Scalar::Rat(BigRational::new(BigInt::from(num), BigInt::from(den)))
    }

    pub fn leaf(&self) -> Leaf {
        match self {
            Scalar::Int(_) => Leaf::Z,
            Scalar::Rat(_) => Leaf::R,
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Int(n) => n.is_zero(),
            Scalar::Rat(q) => q.is_zero(),
        }
    }

    pub fn as_rational(&self) -> BigRational {
        match self {
            Scalar::Int(n) => BigRational::from_integer(n.clone()),
            Scalar::Rat(q) => q.clone(),
        }
    }

    /// Group operation. Mixed kinds never occur inside a well-formed element;
    /// they are added as rationals.
    pub fn add(&self, other: &Scalar) -> Scalar {
        match (self, other) {
            (Scalar::Int(a), Scalar::Int(b)) => Scalar::Int(a + b),
            (Scalar::Rat(a), Scalar::Rat(b)) => Scalar::Rat(a + b),
            (a, b) => Scalar::Rat(a.as_rational() + b.as_rational()),
        }
    }

    pub fn neg(&self) -> Scalar {
        match self {
            Scalar::Int(a) => Scalar::Int(-a),
            Scalar::Rat(a) => Scalar::Rat(-a),
        }
    }

    /// Integer shift, used for successor/predecessor in `Z`.
    pub fn offset(&self, by: i64) -> Scalar {
        match self {
            Scalar::Int(a) => Scalar::Int(a + by),
            Scalar::Rat(a) => Scalar::Rat(a + BigRational::from_integer(BigInt::from(by))),
        }
    }

    pub fn to_f64(&self) -> f64 {
        match self {
            Scalar::Int(n) => n.to_f64().unwrap_or(f64::NAN),
            Scalar::Rat(q) => q.to_f64().unwrap_or(f64::NAN),
        }
    }

    /// Converts a float into a scalar of the given leaf group.
    ///
    /// `Z` rounds to the nearest integer. `R` snaps to the simplest
    /// continued-fraction convergent with denominator at most
    /// [`SNAP_DENOMINATOR_CAP`] that lies within [`SNAP_TOLERANCE`]
    /// (relative); otherwise the exact binary value of the
    /// float is kept.
    pub fn from_f64(leaf: Leaf, x: f64) -> Option<Scalar> {
        if !x.is_finite() {
            return None;
        }
        match leaf {
            Leaf::Z => Some(Scalar::Int(BigInt::from_str(&format!("{:.0}", x.round())).ok()?)),
            Leaf::R => Some(Scalar::Rat(snap_rational(x)?)),
        }
    }

    /// Converts this scalar to the given leaf kind if that is exact.
    pub fn coerce(&self, leaf: Leaf) -> Option<Scalar> {
        match (self, leaf) {
            (Scalar::Int(_), Leaf::Z) | (Scalar::Rat(_), Leaf::R) => Some(self.clone()),
            (Scalar::Int(n), Leaf::R) => Some(Scalar::Rat(BigRational::from_integer(n.clone()))),
            (Scalar::Rat(q), Leaf::Z) => q.is_integer().then(|| Scalar::Int(q.to_integer())),
        }
    }
}

impl PartialOrd for Scalar {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Scalar {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (Scalar::Int(a), Scalar::Int(b)) => a.cmp(b),
            (Scalar::Rat(a), Scalar::Rat(b)) => a.cmp(b),
            (a, b) => a.as_rational().cmp(&b.as_rational()),
        }
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Int(n) => write!(f, "{}", n),
            Scalar::Rat(q) if q.denom().is_one() => write!(f, "{}", q.numer()),
            Scalar::Rat(q) => write!(f, "{}/{}", q.numer(), q.denom()),
        }
    }
}

/// Parses `int` or `p/q` into an exact rational.
pub fn parse_rational(text: &str) -> Option<BigRational> {
    let text = text.trim();
    match text.split_once('/') {
        Some((p, q)) => {
            let p = BigInt::from_str(p.trim()).ok()?;
            let q = BigInt::from_str(q.trim()).ok()?;
            if q.is_zero() {
                return None;
            }
            Some(BigRational::new(p, q))
        }
        None => Some(BigRational::from_integer(BigInt::from_str(text).ok()?)),
    }
}

pub fn format_rational(q: &BigRational) -> String {
    Scalar::Rat(q.clone()).to_string()
}

fn snap_rational(x: f64) -> Option<BigRational> {
    let exact = || BigRational::from_float(x);
    // Beyond 2^53 every float is an integer.
    if x.abs() >= 9.0e15 {
        return exact();
    }
    let (mut p0, mut q0, mut p1, mut q1): (i128, i128, i128, i128) = (0, 1, 1, 0);
    let mut rest = x;
    for _ in 0..64 {
        let a = rest.floor();
        let ai = a as i128;
        let p2 = ai * p1 + p0;
        let q2 = ai * q1 + q0;
        if q2 > SNAP_DENOMINATOR_CAP {
            break;
        }
        let approx = p2 as f64 / q2 as f64;
        if (approx - x).abs() <= SNAP_TOLERANCE * x.abs().max(1.0) {
            return Some(BigRational::new(BigInt::from(p2), BigInt::from(q2)));
        }
        let frac = rest - a;
        if frac <= 0.0 {
            break;
        }
        rest = 1.0 / frac;
        if !rest.is_finite() {
            break;
        }
        (p0, q0, p1, q1) = (p1, q1, p2, q2);
    }
    exact()
}

/// True when `value` lies in the cyclic group generated by `of`.
pub(crate) fn is_integral_multiple(value: &BigRational, of: &BigRational) -> bool {
    if of.is_zero() {
        return value.is_zero();
    }
    (value / of).is_integer()
}
