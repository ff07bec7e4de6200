//! Order embeddings of realizable terms into the real line, and the induced
//! uninorm on `[0,1]`.
//!
//! The embedding works on the canonical form. A basic algebra
//! `PLP2(Z; Y)` sends `(n, y)` to `n + s(f_Y(y))` and `(n, T)` to `n + 1`,
//! where `s` squashes the line into `(0, 1)`. A type I node
//! `PLP1(A; H; D)` opens, just after the image of every `h` in `H`, an
//! interval of length `w * weight(h)` holding the fiber over `h`. The
//! weights are summable over the countable set `H`, so every element stays
//! inside a bounded window.

mod grid;

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive};

use crate::element::{Element, Fiber};
use crate::error::{Error, Result};
use crate::normalize::{normalize, Normalized};
use crate::scalar::{Leaf, Scalar};
use crate::subgroup::{Coord, Subgroup};
use crate::term::{Shape, Term};

pub use grid::{format_g, sample_grid, GridFormat, GridSample};

/// `phi^-1(x) = atan(x)/pi + 1/2`, a bijection from the line onto `(0, 1)`.
pub fn to_unit_interval(x: f64) -> f64 {
    x.atan() / std::f64::consts::PI + 0.5
}

/// `phi(u) = tan(pi*u - pi/2)`.
pub fn from_unit_interval(u: f64) -> Result<f64> {
    if !(u > 0.0 && u < 1.0) {
        return Err(Error::DomainError(format!("{} is not in the open interval (0,1)", u)));
    }
    Ok((std::f64::consts::PI * u - std::f64::consts::FRAC_PI_2).tan())
}

/// Squashed values this close to an integer are read as the added point
/// there. Scalars beyond roughly `1/(pi * EDGE)` in magnitude do not
/// survive a round trip through a basic layer.
const EDGE: f64 = 1e-9;

/// Squash used inside fibers; the same curve as [`to_unit_interval`].
fn squash(x: f64) -> f64 {
    to_unit_interval(x)
}

fn unsquash(u: f64) -> f64 {
    (std::f64::consts::PI * u - std::f64::consts::FRAC_PI_2).tan()
}

/// Summed weight of a countable coordinate.
fn coord_total(c: &Coord) -> f64 {
    match c {
        Coord::Trivial => 1.0,
        _ => 1.5,
    }
}

/// Weight of the `k`-th point of a cyclic coordinate; the weights of all
/// integers add up to 3/2.
fn cyclic_weight(k: &BigInt) -> f64 {
    let k = k.abs().to_f64().unwrap_or(f64::INFINITY);
    1.0 / ((k + 1.0) * (k + 2.0))
}

/// Sum of the weights of all indices strictly below `n`.
fn weight_below(n: &BigInt) -> f64 {
    if n.is_positive() {
        1.5 - 1.0 / (n.to_f64().unwrap_or(f64::INFINITY) + 1.0)
    } else {
        1.0 / (n.abs().to_f64().unwrap_or(f64::INFINITY) + 2.0)
    }
}

enum Token<'a> {
    Val(&'a Scalar),
    Above,
    Below,
}

/// Leaf values of `e` left to right; an added point ends the list with a
/// token above or below every value.
fn flatten<'a>(e: &'a Element, out: &mut Vec<Token<'a>>) -> bool {
    match e {
        Element::Scalar(s) => {
            out.push(Token::Val(s));
            true
        }
        Element::Pair(x, s) => {
            if !flatten(x, out) {
                return false;
            }
            match s {
                Fiber::Val(v) => flatten(v, out),
                Fiber::Top => {
                    out.push(Token::Above);
                    false
                }
                Fiber::Bottom => {
                    out.push(Token::Below);
                    false
                }
            }
        }
    }
}

/// Weight of `h` in `H`, or `None` if `h` is not in `H`.
fn weight_of(h: &Element, sub: &Subgroup) -> Option<f64> {
    let values = h.scalars()?;
    if !sub.contains_scalars(&values) {
        return None;
    }
    Some(
        sub.coords()
            .iter()
            .zip(values)
            .map(|(c, v)| match c {
                Coord::Trivial => 1.0,
                _ => cyclic_weight(&c.index_of(v).expect("value lies in the coordinate")),
            })
            .product(),
    )
}

/// Summed weight of the points of `H` strictly below `a` in the
/// lexicographic order.
fn weight_before(a: &Element, sub: &Subgroup) -> f64 {
    let mut tokens = Vec::new();
    flatten(a, &mut tokens);
    let coords = sub.coords();
    let mut suffix = vec![1.0; coords.len() + 1];
    for i in (0..coords.len()).rev() {
        suffix[i] = suffix[i + 1] * coord_total(&coords[i]);
    }
    let mut prefix = 1.0;
    let mut total = 0.0;
    for (i, (c, tok)) in coords.iter().zip(&tokens).enumerate() {
        let v = match tok {
            Token::Above => return total + prefix * suffix[i],
            Token::Below => return total,
            Token::Val(v) => v,
        };
        let below = match c {
            Coord::Trivial => {
                if v.as_rational().is_positive() {
                    1.0
                } else {
                    0.0
                }
            }
            _ => {
                let g = c.generator().expect("countable coordinate");
                weight_below(&(v.as_rational() / g).ceil().to_integer())
            }
        };
        total += prefix * below * suffix[i + 1];
        if !c.contains(v) {
            return total;
        }
        prefix *= match c {
            Coord::Trivial => 1.0,
            _ => cyclic_weight(&c.index_of(v).expect("value lies in the coordinate")),
        };
    }
    total
}

/// Basic algebras of a canonical chain, left to right, and the subgroups
/// joining them.
fn chain(t: &Term) -> (Vec<&Term>, Vec<&Subgroup>) {
    let (mut basics, mut subs) = (Vec::new(), Vec::new());
    let mut t = t;
    while let Shape::Plp1 { x, h, y } = t.shape() {
        basics.push(y);
        subs.push(h);
        t = x;
    }
    basics.push(t);
    basics.reverse();
    subs.reverse();
    (basics, subs)
}

/// `(((first, f_1), f_2), ...)` over `levels` chain levels, missing fibers
/// at `B`.
fn assemble(first: &Element, fibers: &[Fiber], levels: usize) -> Element {
    (1..levels).fold(first.clone(), |e, j| {
        Element::pair(e, fibers.get(j - 1).cloned().unwrap_or(Fiber::Bottom))
    })
}

/// Narrows `[lo, hi]` around the last point where the non-decreasing `g`
/// is still at most `v`.
fn bracket(mut lo: f64, mut hi: f64, g: impl Fn(f64) -> f64, v: f64) -> (f64, f64) {
    loop {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            return (lo, hi);
        }
        if g(mid) <= v {
            lo = mid;
        } else {
            hi = mid;
        }
    }
}

/// The first candidate whose completions reach `v` exactly, else the first
/// that reaches it within `tol`, given the lowest and highest completion
/// value of each. Without one, the candidate with the largest lowest
/// completion not above `v`, or else the lowest candidate.
fn select<T, const N: usize>(candidates: [T; N], reach: impl Fn(&T) -> (f64, f64), v: f64, tol: f64) -> T {
    let scored: Vec<((f64, f64), T)> = candidates.into_iter().map(|c| (reach(&c), c)).collect();
    let hits = |tol: f64| scored.iter().position(|((lo, hi), _)| *lo <= v + tol && *hi >= v - tol);
    let i = hits(0.0).or_else(|| hits(tol)).unwrap_or_else(|| {
        let below = scored.iter().enumerate().filter(|(_, ((lo, _), _))| *lo <= v);
        match below.max_by(|a, b| a.1 .0 .0.total_cmp(&b.1 .0 .0)) {
            Some((i, _)) => i,
            None => scored
                .iter()
                .enumerate()
                .min_by(|a, b| a.1 .0 .0.total_cmp(&b.1 .0 .0))
                .map(|(i, _)| i)
                .expect("at least one candidate"),
        }
    });
    scored.into_iter().nth(i).expect("index is in range").1
}

/// Numeric realization of a realizable term.
#[derive(Debug, Clone)]
pub struct RealizationMap {
    term: Term,
    normalized: Normalized,
    width: f64,
}

impl RealizationMap {
    pub fn term(&self) -> &Term {
        &self.term
    }

    pub fn canonical(&self) -> &Term {
        &self.normalized.trace.target
    }

    pub fn normalized(&self) -> &Normalized {
        &self.normalized
    }

    /// Scale `w` of the fiber intervals inserted by type I nodes.
    pub fn width(&self) -> f64 {
        self.width
    }

    /// Strictly increasing map from the carrier into the line.
    pub fn forward(&self, e: &Element) -> f64 {
        let c = self.normalized.trace.forward(e);
        self.fwd(self.canonical(), &c)
    }

    /// Approximate inverse of [`forward`](Self::forward). Dense layers snap
    /// to a nearby rational.
    ///
    /// `forward(backward(v))` agrees with `v` to about 1e-12 relative. The
    /// element itself is recovered only while float resolution lasts: every
    /// squash layer multiplies error by about `pi*(1+x^2)` and every fiber by
    /// the inverse of its width. Exact recovery is checked for canonical
    /// chains of at most two levels whose basic indices add up to at most
    /// 2, with scalars of magnitude at most 3 and denominators at most 4.
    ///
    /// The canonical element is found one chain level at a time, left to
    /// right: each level is the largest choice whose lowest completion
    /// (every later level at `B`) is not above `v`.
    pub fn backward(&self, v: f64) -> Element {
        let (basics, subs) = chain(self.canonical());
        let levels = basics.len();
        if levels == 1 {
            return self.normalized.trace.backward(&self.bwd(basics[0], v));
        }
        let value = |first: &Element, fibers: &[Fiber]| self.fwd(self.canonical(), &assemble(first, fibers, levels));
        // Lowest and highest completion of a prefix.
        let reach = |first: &Element, fibers: &[Fiber]| {
            let low = value(first, fibers);
            let prefix = assemble(first, fibers, fibers.len() + 1);
            let open = fibers.last().is_none_or(|f| matches!(f, Fiber::Val(_)));
            let high = match subs.get(fibers.len()) {
                Some(h) if open && weight_of(&prefix, h).is_some() => {
                    let mut up = fibers.to_vec();
                    up.push(Fiber::Top);
                    value(first, &up)
                }
                _ => low,
            };
            (low, high)
        };
        let tol = 1e-12 * v.abs().max(1.0);

        let spread: f64 = subs
            .iter()
            .map(|h| self.width * h.coords().iter().map(coord_total).product::<f64>())
            .sum();
        let first_at = |x: f64| self.bwd(basics[0], x);
        let (lo, hi) = bracket(v - spread - 1.0, v + 1.0, |x| value(&first_at(x), &[]), v);
        let (a_lo, a_hi) = (first_at(lo), first_at(hi));
        let offset = value(&a_lo, &[]) - self.fwd(basics[0], &a_lo);
        let refined = first_at(v - offset);
        let first = select([refined, a_hi, a_lo], |a| reach(a, &[]), v, tol);

        let mut fibers: Vec<Fiber> = Vec::new();
        let mut prefix = first.clone();
        for j in 1..levels {
            let Some(w) = weight_of(&prefix, subs[j - 1]) else { break };
            let scale = self.width * w;
            let fiber_at = |sigma: f64| {
                if sigma <= 0.0 {
                    Fiber::Bottom
                } else if sigma >= 1.0 {
                    Fiber::Top
                } else {
                    Fiber::Val(Box::new(self.bwd(basics[j], unsquash(sigma))))
                }
            };
            let sigma_of = |f: &Fiber| match f {
                Fiber::Bottom => 0.0,
                Fiber::Top => 1.0,
                Fiber::Val(d) => squash(self.fwd(basics[j], d)),
            };
            let extended = |f: &Fiber| {
                let mut all = fibers.clone();
                all.push(f.clone());
                all
            };
            let (lo, hi) = bracket(0.0, 1.0, |sigma| value(&first, &extended(&fiber_at(sigma))), v);
            let (f_lo, f_hi) = (fiber_at(lo), fiber_at(hi));
            let rest = value(&first, &extended(&f_lo)) - scale * sigma_of(&f_lo);
            let refined = fiber_at((v - rest) / scale);
            let candidates = [Fiber::Bottom, Fiber::Top, refined, f_lo, f_hi];
            let fiber = select(candidates, |f| reach(&first, &extended(f)), v, tol);
            prefix = Element::pair(prefix, fiber.clone());
            let more = matches!(fiber, Fiber::Val(_));
            fibers.push(fiber);
            if !more {
                break;
            }
        }
        let c = assemble(&first, &fibers, levels);
        self.normalized.trace.backward(&c)
    }

    fn fwd(&self, t: &Term, e: &Element) -> f64 {
        match (t.shape(), e) {
            (Shape::R, Element::Scalar(s)) => s.to_f64(),
            (Shape::Plp2 { y, .. }, Element::Pair(n, s)) => {
                let n = n.as_scalar().map_or(0.0, Scalar::to_f64);
                match s {
                    Fiber::Val(v) => n + squash(self.fwd(y, v)),
                    _ => n + 1.0,
                }
            }
            (Shape::Plp1 { x, h, y }, Element::Pair(a, s)) => {
                let base = self.fwd(x, a) + self.width * weight_before(a, h);
                match (s, weight_of(a, h)) {
                    (Fiber::Bottom, _) | (_, None) => base,
                    (Fiber::Top, Some(w)) => base + self.width * w,
                    (Fiber::Val(d), Some(w)) => base + self.width * w * squash(self.fwd(y, d)),
                }
            }
            _ => unreachable!("canonical forms contain only R, basic and type I nodes"),
        }
    }

    /// Inverse of `fwd` on a basic algebra.
    fn bwd(&self, t: &Term, v: f64) -> Element {
        match t.shape() {
            Shape::R => Element::Scalar(Scalar::from_f64(Leaf::R, v).unwrap_or_else(|| Scalar::zero(Leaf::R))),
            Shape::Plp2 { y, .. } => {
                let n = v.floor();
                let frac = v - n;
                let n_int = Scalar::from_f64(Leaf::Z, n).unwrap_or_else(|| Scalar::zero(Leaf::Z));
                if frac <= EDGE {
                    Element::top(Element::Scalar(n_int.offset(-1)))
                } else if frac >= 1.0 - EDGE {
                    Element::top(Element::Scalar(n_int))
                } else {
                    Element::with_val(Element::Scalar(n_int), self.bwd(y, unsquash(frac)))
                }
            }
            _ => unreachable!("chain levels are basic algebras"),
        }
    }

    /// Evaluates the uninorm on `[0,1]` induced by the embedding.
    pub fn eval(&self, x: f64, y: f64) -> Result<f64> {
        for u in [x, y] {
            if !(0.0..=1.0).contains(&u) {
                return Err(Error::DomainError(format!("{} is not in [0,1]", u)));
            }
        }
        if x.min(y) == 0.0 {
            return Ok(0.0);
        }
        if x.max(y) == 1.0 {
            return Ok(1.0);
        }
        let a = self.backward(from_unit_interval(x)?);
        let b = self.backward(from_unit_interval(y)?);
        let p = self.term.mul_raw(&a, &b);
        Ok(to_unit_interval(self.forward(&p)))
    }
}

/// Fiber interval scale used by [`realize`].
pub const DEFAULT_WIDTH: f64 = 1.0;

pub fn realize(term: &Term) -> Result<RealizationMap> {
    realize_with_width(term, DEFAULT_WIDTH)
}

pub fn realize_with_width(term: &Term, width: f64) -> Result<RealizationMap> {
    if !(width > 0.0 && width.is_finite()) {
        return Err(Error::DomainError(format!("interval width {} must be positive", width)));
    }
    let normalized = normalize(term)?;
    Ok(RealizationMap {
        term: term.clone(),
        normalized,
        width,
    })
}

pub fn eval_uninorm(term: &Term, x: f64, y: f64) -> Result<f64> {
    realize(term)?.eval(x, y)
}
