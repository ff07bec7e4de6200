//! Text and JSON syntax for terms and elements.
//!
//! ```text
//! term     := "Z" | "R"
//!           | "PLP1(" term ";" subgroup ";" term ")"
//!           | "PLP2(" term ";" term ")"
//!           | "PLP3(" term ";" subgroup ";" subgroup ";" term ")"
//!           | "PLP4(" term ";" subgroup ";" term ")"
//! subgroup := coord ("x" coord)*
//! coord    := "triv" | "full" | rational "*Zint"
//! element  := rational | "(" element "," (element | "T" | "B") ")"
//! ```
//!
//! Whitespace is allowed between tokens. Printing (the `Display` impls of
//! [`Term`] and [`Element`]) produces the compact spelling, and parsing it
//! back gives the same value.

use num_rational::BigRational;
use serde::{Deserialize, Serialize};

use crate::element::{Element, Fiber};
use crate::error::{Error, Result};
use crate::scalar::{Leaf, Scalar};
use crate::subgroup::{Coord, Subgroup};
use crate::term::{make_plp, PlpKind, Shape, Term};

struct Cursor<'a> {
    text: &'a str,
    pos: usize,
}

impl<'a> Cursor<'a> {
    fn new(text: &'a str) -> Self {
        Cursor { text, pos: 0 }
    }

    fn rest(&self) -> &'a str {
        &self.text[self.pos..]
    }

    fn skip_ws(&mut self) {
        let trimmed = self.rest().trim_start();
        self.pos = self.text.len() - trimmed.len();
    }

    fn error_at(&self, pos: usize, message: impl Into<String>) -> Error {
        let before = &self.text[..pos];
        let line = before.matches('\n').count() + 1;
        let column = before.rsplit('\n').next().map_or(0, |l| l.chars().count()) + 1;
        Error::Syntax {
            line,
            column,
            message: message.into(),
        }
    }

    fn error(&self, message: impl Into<String>) -> Error {
        self.error_at(self.pos, message)
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.rest().chars().next()
    }

    fn eat(&mut self, token: &str) -> bool {
        self.skip_ws();
        if self.rest().starts_with(token) {
            self.pos += token.len();
            true
        } else {
            false
        }
    }

    fn expect(&mut self, token: &str) -> Result<()> {
        if self.eat(token) {
            Ok(())
        } else {
            let found = self.rest().chars().next().map_or("end of input".to_string(), |c| format!("`{}`", c));
            Err(self.error(format!("expected `{}`, found {}", token, found)))
        }
    }

    fn word(&mut self) -> (usize, &'a str) {
        self.skip_ws();
        let start = self.pos;
        let len = self
            .rest()
            .find(|c: char| !c.is_ascii_alphanumeric())
            .unwrap_or(self.rest().len());
        self.pos += len;
        (start, &self.text[start..self.pos])
    }

    fn rational(&mut self) -> Result<BigRational> {
        self.skip_ws();
        let start = self.pos;
        let len = self
            .rest()
            .find(|c: char| !(c.is_ascii_digit() || c == '-' || c == '+' || c == '/' || c == ' '))
            .unwrap_or(self.rest().len());
        let raw = self.text[start..start + len].trim_end();
        self.pos = start + raw.len();
        crate::scalar::parse_rational(raw).ok_or_else(|| {
            self.error_at(start, format!("expected an integer or p/q, found `{}`", raw))
        })
    }

    fn finish(&mut self) -> Result<()> {
        self.skip_ws();
        if self.rest().is_empty() {
            Ok(())
        } else {
            Err(self.error("unexpected trailing input"))
        }
    }
}

/// Parses and validates a term.
pub fn parse_term(text: &str) -> Result<Term> {
    let mut c = Cursor::new(text);
    let t = term(&mut c, true)?;
    c.finish()?;
    Ok(t)
}

/// Parses a term without checking the well-definedness conditions, so that
/// invalid trees can be built and inspected. Call [`Term::validate`] later.
pub fn parse_term_unchecked(text: &str) -> Result<Term> {
    let mut c = Cursor::new(text);
    let t = term(&mut c, false)?;
    c.finish()?;
    Ok(t)
}

fn term(c: &mut Cursor, checked: bool) -> Result<Term> {
    let (start, name) = c.word();
    let kind = match name {
        "Z" => return Ok(Term::z()),
        "R" => return Ok(Term::r()),
        "PLP1" => PlpKind::I,
        "PLP2" => PlpKind::II,
        "PLP3" => PlpKind::III,
        "PLP4" => PlpKind::IV,
        "" => return Err(c.error("expected a term")),
        other => {
            return Err(c.error_at(
                start,
                format!("unknown constructor `{}` (expected Z, R or PLP1..PLP4)", other),
            ))
        }
    };
    c.expect("(")?;
    let x = term(c, checked)?;
    let n = match kind {
        PlpKind::I | PlpKind::IV => 1,
        PlpKind::II => 0,
        PlpKind::III => 2,
    };
    let mut subs = Vec::with_capacity(n);
    for _ in 0..n {
        c.expect(";")?;
        subs.push(subgroup(c)?);
    }
    c.expect(";")?;
    let y = term(c, checked)?;
    c.expect(")")?;
    if checked {
        return make_plp(kind, x, subs, y);
    }
    let mut subs = subs.into_iter();
    let mut next = || subs.next().expect("one subgroup per slot");
    Ok(Term::from_shape(match kind {
        PlpKind::I => Shape::Plp1 { x, h: next(), y },
        PlpKind::II => Shape::Plp2 { x, y },
        PlpKind::III => Shape::Plp3 { x, v: next(), w: next(), y },
        PlpKind::IV => Shape::Plp4 { x, v: next(), y },
    }))
}

fn subgroup(c: &mut Cursor) -> Result<Subgroup> {
    let mut coords = vec![coord(c)?];
    loop {
        c.skip_ws();
        let save = c.pos;
        let (_, w) = c.word();
        if w == "x" {
            coords.push(coord(c)?);
        } else {
            c.pos = save;
            return Ok(Subgroup::new(coords));
        }
    }
}

fn coord(c: &mut Cursor) -> Result<Coord> {
    match c.peek() {
        Some(ch) if ch.is_ascii_alphabetic() => {
            let (start, w) = c.word();
            match w {
                "triv" => Ok(Coord::Trivial),
                "full" => Ok(Coord::Full),
                _ => Err(c.error_at(start, format!("expected `triv`, `full` or `c*Zint`, found `{}`", w))),
            }
        }
        _ => {
            let scale = c.rational()?;
            c.expect("*")?;
            c.expect("Zint")?;
            Ok(Coord::ScaledInt(scale))
        }
    }
}

/// Parses an element literal and checks it against the carrier of `term`.
pub fn parse_element(term: &Term, text: &str) -> Result<Element> {
    let mut c = Cursor::new(text);
    let e = element(&mut c, term)?;
    c.finish()?;
    term.check_element(&e)?;
    Ok(e)
}

fn element(c: &mut Cursor, term: &Term) -> Result<Element> {
    match (term.first(), term.second()) {
        (Some(x), Some(y)) => {
            if c.peek() != Some('(') {
                return Err(Error::MalformedElement(format!(
                    "an element of {} is a pair, found `{}`",
                    term,
                    c.rest().trim()
                )));
            }
            c.expect("(")?;
            let a = element(c, x)?;
            c.expect(",")?;
            let s = if c.eat("T") {
                Fiber::Top
            } else if c.eat("B") {
                Fiber::Bottom
            } else {
                Fiber::Val(Box::new(element(c, y)?))
            };
            c.expect(")")?;
            Ok(Element::pair(a, s))
        }
        _ => {
            let leaf = term.leaves()[0];
            if c.peek() == Some('(') {
                return Err(Error::MalformedElement(format!(
                    "an element of {} is a scalar, found a pair",
                    term
                )));
            }
            let start = c.pos;
            let q = c.rational()?;
            let s = Scalar::Rat(q.clone()).coerce(leaf).ok_or_else(|| {
                Error::MalformedElement(format!(
                    "{} at column {} is not an element of {:?}",
                    crate::scalar::format_rational(&q),
                    start + 1,
                    leaf
                ))
            })?;
            Ok(Element::Scalar(s))
        }
    }
}

/// JSON mirror of a term tree.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type")]
pub enum TermJson {
    Z,
    R,
    #[serde(rename = "PLP1")]
    Plp1 { x: Box<TermJson>, h: Subgroup, y: Box<TermJson> },
    #[serde(rename = "PLP2")]
    Plp2 { x: Box<TermJson>, y: Box<TermJson> },
    #[serde(rename = "PLP3")]
    Plp3 {
        x: Box<TermJson>,
        v: Subgroup,
        w: Subgroup,
        y: Box<TermJson>,
    },
    #[serde(rename = "PLP4")]
    Plp4 { x: Box<TermJson>, v: Subgroup, y: Box<TermJson> },
}

impl TermJson {
    pub fn from_term(t: &Term) -> TermJson {
        let b = |t: &Term| Box::new(TermJson::from_term(t));
        match t.shape() {
            Shape::Z => TermJson::Z,
            Shape::R => TermJson::R,
            Shape::Plp1 { x, h, y } => TermJson::Plp1 {
                x: b(x),
                h: h.clone(),
                y: b(y),
            },
            Shape::Plp2 { x, y } => TermJson::Plp2 { x: b(x), y: b(y) },
            Shape::Plp3 { x, v, w, y } => TermJson::Plp3 {
                x: b(x),
                v: v.clone(),
                w: w.clone(),
                y: b(y),
            },
            Shape::Plp4 { x, v, y } => TermJson::Plp4 {
                x: b(x),
                v: v.clone(),
                y: b(y),
            },
        }
    }

    /// Builds and validates the term.
    pub fn to_term(&self) -> Result<Term> {
        match self {
            TermJson::Z => Ok(Term::z()),
            TermJson::R => Ok(Term::r()),
            TermJson::Plp1 { x, h, y } => make_plp(PlpKind::I, x.to_term()?, vec![h.clone()], y.to_term()?),
            TermJson::Plp2 { x, y } => make_plp(PlpKind::II, x.to_term()?, vec![], y.to_term()?),
            TermJson::Plp3 { x, v, w, y } => make_plp(
                PlpKind::III,
                x.to_term()?,
                vec![v.clone(), w.clone()],
                y.to_term()?,
            ),
            TermJson::Plp4 { x, v, y } => make_plp(PlpKind::IV, x.to_term()?, vec![v.clone()], y.to_term()?),
        }
    }
}

pub fn term_to_json(t: &Term) -> String {
    serde_json::to_string(&TermJson::from_term(t)).expect("term trees always serialize")
}

pub fn term_from_json(text: &str) -> Result<Term> {
    let mirror: TermJson = serde_json::from_str(text).map_err(|e| Error::Syntax {
        line: e.line(),
        column: e.column(),
        message: e.to_string(),
    })?;
    mirror.to_term()
}

/// Accepts either syntax: JSON if the text starts with `{`, DSL otherwise.
pub fn parse_term_any(text: &str) -> Result<Term> {
    if text.trim_start().starts_with('{') {
        term_from_json(text)
    } else {
        parse_term(text)
    }
}

/// Leaf kind of a scalar literal, for callers that build scalars by hand.
pub fn parse_scalar(leaf: Leaf, text: &str) -> Result<Scalar> {
    let mut c = Cursor::new(text);
    let q = c.rational()?;
    c.finish()?;
    Scalar::Rat(q)
        .coerce(leaf)
        .ok_or_else(|| Error::MalformedElement(format!("`{}` is not an element of {:?}", text.trim(), leaf)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::term::build_basic;

    #[test]
    fn parses_canonical_spellings() {
        assert_eq!(parse_term("PLP2(Z;PLP2(Z;R))").unwrap(), build_basic(2));
        let t = parse_term(" PLP1( R ; 1*Zint ; R )").unwrap();
        assert_eq!(t.to_string(), "PLP1(R;1*Zint;R)");
        let t = parse_term("PLP1(PLP2(Z;R);full x triv;R)").unwrap();
        assert_eq!(t.to_string(), "PLP1(PLP2(Z;R);full x triv;R)");
        let t = parse_term("PLP3(R;full;1/2*Zint;R)").unwrap();
        assert_eq!(parse_term(&t.to_string()).unwrap(), t);
    }

    #[test]
    fn syntax_errors_carry_position() {
        match parse_term("PLP2(Z;\n  Q)") {
            Err(Error::Syntax { line, column, .. }) => assert_eq!((line, column), (2, 3)),
            other => panic!("{other:?}"),
        }
        match parse_term("PLP2(Z R)") {
            Err(Error::Syntax { line, column, .. }) => assert_eq!((line, column), (1, 8)),
            other => panic!("{other:?}"),
        }
        assert!(matches!(parse_term("PLP2(Z;R) x"), Err(Error::Syntax { .. })));
        assert!(matches!(parse_term("PLP1(R;2*Zfoo;R)"), Err(Error::Syntax { .. })));
    }

    #[test]
    fn invalid_terms_are_not_syntax_errors() {
        let err = parse_term("PLP2(R;R)").unwrap_err();
        assert!(matches!(err, Error::DiscretenessViolation(_)));
        assert!(err.is_invalid_term());
    }

    #[test]
    fn elements_round_trip() {
        let u1 = build_basic(1);
        let e = parse_element(&u1, "(1, 2/3)").unwrap();
        assert_eq!(e.to_string(), "(1,2/3)");
        assert_eq!(parse_element(&u1, &e.to_string()).unwrap(), e);
        assert_eq!(parse_element(&u1, "(0,T)").unwrap().to_string(), "(0,T)");
        assert!(matches!(parse_element(&u1, "(1/2, 5)"), Err(Error::MalformedElement(_))));
        assert!(matches!(parse_element(&u1, "(0,B)"), Err(Error::MalformedElement(_))));
        assert!(matches!(parse_element(&u1, "(0,1"), Err(Error::Syntax { .. })));
        assert!(parse_element(&Term::r(), "-3/4").is_ok());
    }

    #[test]
    fn json_mirror_round_trips() {
        let t = parse_term("PLP1(PLP2(Z;R);full x triv;R)").unwrap();
        let j = term_to_json(&t);
        assert!(j.contains("\"type\":\"PLP1\""), "{j}");
        assert_eq!(term_from_json(&j).unwrap(), t);
        assert_eq!(parse_term_any(&j).unwrap(), t);
        assert!(matches!(term_from_json("{\"type\": \"PLP9\"}"), Err(Error::Syntax { .. })));
    }
}
