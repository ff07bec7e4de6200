//! Seeded random elements and terms.
//!
//! Integers are drawn from `[-50, 50]`, rationals as `p/q` with `|p| <= 100`
//! and `1 <= q <= 100`. A layer that admits values as well as added points
//! picks an added point with probability 1/4. First coordinates are biased
//! towards the subgroups that decide the fiber shape.

use num_bigint::BigInt;
use num_rational::BigRational;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::element::{Element, Fiber};
use crate::scalar::{Leaf, Scalar};
use crate::subgroup::{Coord, Subgroup};
use crate::term::{make_plp, PlpKind, Term};

pub const INT_RANGE: i64 = 50;
pub const NUM_RANGE: i64 = 100;
pub const DEN_MAX: i64 = 100;
pub const ADDED_POINT_PROBABILITY: f64 = 0.25;

/// Generator for sample `index` of a run: independent of how samples are
/// scheduled across threads.
pub fn sample_rng(seed: u64, stream: u64, index: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ stream.wrapping_mul(0x9E37_79B9_7F4A_7C15));
    rng.set_stream(index);
    rng
}

pub fn random_scalar<R: Rng + ?Sized>(leaf: Leaf, rng: &mut R) -> Scalar {
    match leaf {
        Leaf::Z => Scalar::int(rng.gen_range(-INT_RANGE..=INT_RANGE)),
        Leaf::R => Scalar::rat(rng.gen_range(-NUM_RANGE..=NUM_RANGE), rng.gen_range(1..=DEN_MAX)),
    }
}

fn random_in_coord<R: Rng + ?Sized>(coord: &Coord, leaf: Leaf, rng: &mut R) -> Scalar {
    match coord {
        Coord::Trivial => Scalar::zero(leaf),
        Coord::Full => random_scalar(leaf, rng),
        Coord::ScaledInt(c) => {
            let k = BigRational::from_integer(BigInt::from(rng.gen_range(-INT_RANGE..=INT_RANGE)));
            Scalar::Rat(k * c).coerce(leaf).expect("scaled generator fits its leaf")
        }
    }
}

/// A random element of `term` whose leaf values all lie in `sub`.
pub fn random_in_subgroup<R: Rng + ?Sized>(term: &Term, sub: &Subgroup, rng: &mut R) -> Element {
    let values: Vec<Scalar> = sub
        .coords()
        .iter()
        .zip(term.leaves())
        .map(|(c, &l)| random_in_coord(c, l, rng))
        .collect();
    term.element_from_scalars(&values)
        .expect("one value per leaf")
}

/// A random well-formed element of `term`.
pub fn random_element<R: Rng + ?Sized>(term: &Term, rng: &mut R) -> Element {
    let (x, y) = match (term.first(), term.second()) {
        (Some(x), Some(y)) => (x, y),
        _ => return Element::Scalar(random_scalar(term.leaves()[0], rng)),
    };
    let (inner, middle) = match term.shape() {
        crate::term::Shape::Plp1 { h, .. } => (h, h),
        crate::term::Shape::Plp3 { v, w, .. } => (w, v),
        crate::term::Shape::Plp4 { v, .. } => (v, x.group_part()),
        _ => (x.group_part(), x.group_part()),
    };
    let a = match rng.gen_range(0..3) {
        0 => random_in_subgroup(x, inner, rng),
        1 => random_in_subgroup(x, middle, rng),
        _ => random_element(x, rng),
    };
    let values = term.fiber_has_values(&a);
    let mut points = Vec::with_capacity(2);
    if term.fiber_has_top(&a) {
        points.push(Fiber::Top);
    }
    if term.kind().is_some_and(|k| matches!(k, PlpKind::I | PlpKind::III)) {
        points.push(Fiber::Bottom);
    }
    let s = if values && !rng.gen_bool(ADDED_POINT_PROBABILITY) {
        Fiber::Val(Box::new(random_element(y, rng)))
    } else {
        points.swap_remove(rng.gen_range(0..points.len()))
    };
    Element::pair(a, s)
}

/// A random subgroup contained in `outer`.
pub fn random_subgroup_within<R: Rng + ?Sized>(outer: &Subgroup, leaves: &[Leaf], rng: &mut R) -> Subgroup {
    let coords = outer
        .coords()
        .iter()
        .zip(leaves)
        .map(|(c, &leaf)| match c {
            Coord::Trivial => Coord::Trivial,
            Coord::ScaledInt(g) => match rng.gen_range(0..4) {
                0 => Coord::Trivial,
                k => Coord::ScaledInt(g * BigRational::from_integer(BigInt::from(k))),
            },
            Coord::Full => match (rng.gen_range(0..4), leaf) {
                (0, _) => Coord::Trivial,
                (1, _) => Coord::Full,
                (_, Leaf::Z) => Coord::scaled(rng.gen_range(1..=3), 1),
                (_, Leaf::R) => Coord::scaled(rng.gen_range(1..=3), rng.gen_range(1..=3)),
            },
        })
        .collect();
    Subgroup::new(coords).canonical(leaves)
}

/// Options for [`random_term`].
#[derive(Debug, Clone, Copy)]
pub struct TermShape {
    pub max_depth: usize,
    /// Whether type III/IV nodes may appear.
    pub gapped: bool,
    /// Probability that a leaf is `R`.
    pub dense_leaf: f64,
}

impl Default for TermShape {
    fn default() -> Self {
        TermShape {
            max_depth: 3,
            gapped: true,
            dense_leaf: 0.6,
        }
    }
}

/// A random valid term of depth at most `shape.max_depth`.
pub fn random_term<R: Rng + ?Sized>(shape: &TermShape, rng: &mut R) -> Term {
    loop {
        if let Some(t) = try_random_term(shape, shape.max_depth, rng) {
            return t;
        }
    }
}

fn try_random_term<R: Rng + ?Sized>(shape: &TermShape, depth: usize, rng: &mut R) -> Option<Term> {
    if depth == 0 || rng.gen_bool(0.3) {
        return Some(if rng.gen_bool(shape.dense_leaf) {
            Term::r()
        } else {
            Term::z()
        });
    }
    let kinds: &[PlpKind] = if shape.gapped {
        &[PlpKind::I, PlpKind::II, PlpKind::III, PlpKind::IV]
    } else {
        &[PlpKind::I, PlpKind::II]
    };
    let kind = kinds[rng.gen_range(0..kinds.len())];
    let x = try_random_term(shape, depth - 1, rng)?;
    let y = try_random_term(shape, depth - 1, rng)?;
    let leaves = x.leaves().to_vec();
    let gr = x.group_part().clone();
    let subs = match kind {
        PlpKind::I => vec![random_subgroup_within(&gr, &leaves, rng)],
        PlpKind::II => vec![],
        PlpKind::III => {
            let v = random_subgroup_within(&gr, &leaves, rng);
            let w = random_subgroup_within(&v, &leaves, rng);
            vec![v, w]
        }
        PlpKind::IV => vec![random_subgroup_within(&gr, &leaves, rng)],
    };
    make_plp(kind, x, subs, y).ok()
}
