//! Rewriting realizable terms into a left-nested chain of basic algebras.

mod certify;
mod rewrite;

use std::fmt;

use serde::Serialize;

use crate::element::Element;
use crate::error::{Error, Result};
use crate::subgroup::Subgroup;
use crate::term::{build_representation, Shape, Term};

pub use certify::{certify_isomorphism, CertificateReport, CheckReport, ElementMap, FnMap};
pub use rewrite::{
    matches, rewrite, rewrite_r1, rewrite_r2, rewrite_unchecked, subterm, Direction, Path, RewriteStep, Rule,
};

/// One basic algebra `U_k` of the chain, with the index subgroup that joins
/// it to the next one (`None` on the last segment).
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct Segment {
    pub basic: usize,
    pub subgroup: Option<Subgroup>,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct CanonicalForm {
    pub segments: Vec<Segment>,
}

impl CanonicalForm {
    /// The term `PLP1(...PLP1(U_k1; H_1; U_k2)...; H_m-1; U_km)`.
    pub fn expand(&self) -> Result<Term> {
        let ks: Vec<usize> = self.segments.iter().map(|s| s.basic).collect();
        let hs: Vec<Subgroup> = self.segments.iter().filter_map(|s| s.subgroup.clone()).collect();
        build_representation(&ks, &hs)
    }

    fn from_term(t: &Term) -> Option<CanonicalForm> {
        match t.shape() {
            Shape::Plp1 { x, h, y } => {
                let mut form = CanonicalForm::from_term(x)?;
                form.segments.last_mut()?.subgroup = Some(h.clone());
                form.segments.push(Segment {
                    basic: basic_index(y)?,
                    subgroup: None,
                });
                Some(form)
            }
            _ => Some(CanonicalForm {
                segments: vec![Segment {
                    basic: basic_index(t)?,
                    subgroup: None,
                }],
            }),
        }
    }
}

impl fmt::Display for CanonicalForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, s) in self.segments.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            match &s.subgroup {
                Some(h) => write!(f, "({}, {})", s.basic, h)?,
                None => write!(f, "({})", s.basic)?,
            }
        }
        write!(f, "]")
    }
}

fn basic_index(t: &Term) -> Option<usize> {
    match t.shape() {
        Shape::R => Some(0),
        Shape::Plp2 { x, y } if *x.shape() == Shape::Z => Some(1 + basic_index(y)?),
        _ => None,
    }
}

/// The rewrite steps from a term to its normal form.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RewriteTrace {
    #[serde(serialize_with = "as_text")]
    pub source: Term,
    #[serde(serialize_with = "as_text")]
    pub target: Term,
    pub steps: Vec<TraceEntry>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TraceEntry {
    #[serde(flatten)]
    pub step: RewriteStep,
    pub bijection: &'static str,
    pub result: String,
}

fn as_text<S: serde::Serializer>(t: &Term, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&t.to_string())
}

impl RewriteTrace {
    pub fn forward(&self, e: &Element) -> Element {
        self.steps.iter().fold(e.clone(), |acc, s| s.step.map_element(&acc))
    }

    pub fn backward(&self, e: &Element) -> Element {
        self.steps
            .iter()
            .rev()
            .fold(e.clone(), |acc, s| s.step.inverse().map_element(&acc))
    }
}

impl ElementMap for RewriteTrace {
    fn apply(&self, e: &Element) -> Element {
        self.forward(e)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Normalized {
    pub form: CanonicalForm,
    pub trace: RewriteTrace,
}

/// Upper bound on rewrite steps; the strategy terminates well before it.
const MAX_STEPS: usize = 100_000;

/// Replaces type III nodes with `V = W` by type I and type IV nodes with
/// `V = gr(X)` by type II. The carrier and operations do not change.
pub fn relabel(t: &Term) -> Term {
    let shape = match t.shape() {
        Shape::Z | Shape::R => return t.clone(),
        Shape::Plp1 { x, h, y } => Shape::Plp1 {
            x: relabel(x),
            h: h.clone(),
            y: relabel(y),
        },
        Shape::Plp2 { x, y } => Shape::Plp2 {
            x: relabel(x),
            y: relabel(y),
        },
        Shape::Plp3 { x, v, w, y } if v == w => Shape::Plp1 {
            x: relabel(x),
            h: v.clone(),
            y: relabel(y),
        },
        Shape::Plp3 { x, v, w, y } => Shape::Plp3 {
            x: relabel(x),
            v: v.clone(),
            w: w.clone(),
            y: relabel(y),
        },
        Shape::Plp4 { x, v, y } if v == x.group_part() => Shape::Plp2 {
            x: relabel(x),
            y: relabel(y),
        },
        Shape::Plp4 { x, v, y } => Shape::Plp4 {
            x: relabel(x),
            v: v.clone(),
            y: relabel(y),
        },
    };
    Term::from_shape(shape)
}

/// First redex in pre-order (outermost, then first factor before second)
/// for any of `rules`.
fn find_redex(t: &Term, rules: &[Rule], path: &mut Path) -> Option<RewriteStep> {
    if let Some(&rule) = rules.iter().find(|&&r| matches(t, r, Direction::LeftToRight)) {
        return Some(RewriteStep::new(rule, Direction::LeftToRight, path.clone()));
    }
    for (step, child) in [(0u8, t.first()), (1u8, t.second())] {
        if let Some(c) = child {
            path.push(step);
            let found = find_redex(c, rules, path);
            path.pop();
            if found.is_some() {
                return found;
            }
        }
    }
    None
}

/// Rewrites a realizable term to its canonical form.
///
/// Strategy: while a type I node can be moved outwards (R2, R3, R4, at the
/// outermost position) do so; otherwise right-associate a type II chain
/// (R1). The result is a left-nested type I chain of basic algebras.
pub fn normalize(term: &Term) -> Result<Normalized> {
    term.validate()?;
    let source = relabel(term);
    if source.has_proper_gapped_node() {
        return Err(Error::NotRealizable(format!(
            "{} contains a proper type III or IV node, so its chain has a gap",
            term
        )));
    }
    let real = source.realizability();
    if !real.realizable {
        return Err(Error::NotRealizable(format!("{}: {}", term, real.trace.join("; "))));
    }
    let mut current = source.clone();
    let mut steps = Vec::new();
    while steps.len() < MAX_STEPS {
        let step = find_redex(&current, &[Rule::R2, Rule::R3, Rule::R4], &mut Vec::new())
            .or_else(|| find_redex(&current, &[Rule::R1], &mut Vec::new()));
        let Some(step) = step else { break };
        current = rewrite(&current, &step)?;
        steps.push(TraceEntry {
            bijection: step.bijection(),
            result: current.to_string(),
            step,
        });
    }
    let form = CanonicalForm::from_term(&current).ok_or_else(|| {
        Error::NotRealizable(format!("{} did not reduce to a chain of basic algebras", current))
    })?;
    Ok(Normalized {
        form,
        trace: RewriteTrace {
            source: term.clone(),
            target: current,
            steps,
        },
    })
}
