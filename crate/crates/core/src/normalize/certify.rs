//! Sampled isomorphism certificates between two terms.

use std::cmp::Ordering;

use rayon::prelude::*;
use serde::Serialize;

use crate::element::Element;
use crate::sample::{random_element, sample_rng};
use crate::term::Term;

/// A map from elements of one term to elements of another.
pub trait ElementMap: Sync {
    fn apply(&self, e: &Element) -> Element;
}

/// Adapter for closures.
pub struct FnMap<F>(pub F);

impl<F: Fn(&Element) -> Element + Sync> ElementMap for FnMap<F> {
    fn apply(&self, e: &Element) -> Element {
        (self.0)(e)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CheckReport {
    pub property: &'static str,
    pub violations: usize,
    pub counterexample: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CertificateReport {
    pub source: String,
    pub target: String,
    pub samples: usize,
    pub seed: u64,
    pub checks: Vec<CheckReport>,
}

impl CertificateReport {
    pub fn violations(&self) -> usize {
        self.checks.iter().map(|c| c.violations).sum()
    }

    pub fn passed(&self) -> bool {
        self.violations() == 0
    }
}

const PROPERTIES: [&str; 5] = ["well-formed", "homomorphism", "order", "unit", "negation"];

/// Checks over `samples` random pairs that `map` is well defined into
/// `target`, multiplicative, strictly order preserving, fixes the unit and
/// commutes with negation. Failures are returned in the report, never as
/// errors.
pub fn certify_isomorphism(
    source: &Term,
    target: &Term,
    map: &dyn ElementMap,
    samples: usize,
    seed: u64,
) -> CertificateReport {
    let results: Vec<[Option<String>; 5]> = (0..samples)
        .into_par_iter()
        .map(|i| check_pair(source, target, map, seed, i as u64))
        .collect();
    let mut checks: Vec<CheckReport> = PROPERTIES
        .iter()
        .enumerate()
        .map(|(k, &property)| CheckReport {
            property,
            violations: results.iter().filter(|r| r[k].is_some()).count(),
            counterexample: results.iter().find_map(|r| r[k].clone()),
        })
        .collect();
    let t = source.unit().t;
    let image = map.apply(&t);
    if image != target.unit().t {
        let unit = &mut checks[3];
        unit.violations += 1;
        unit.counterexample
            .get_or_insert_with(|| format!("phi(t) = {} but the unit of the target is {}", image, target.unit().t));
    }
    CertificateReport {
        source: source.to_string(),
        target: target.to_string(),
        samples,
        seed,
        checks,
    }
}

fn check_pair(source: &Term, target: &Term, map: &dyn ElementMap, seed: u64, index: u64) -> [Option<String>; 5] {
    let mut rng = sample_rng(seed, 0xC0DE, index);
    let a = random_element(source, &mut rng);
    let b = random_element(source, &mut rng);
    let (fa, fb) = (map.apply(&a), map.apply(&b));
    let mut out: [Option<String>; 5] = Default::default();
    if let Some(e) = [&fa, &fb].into_iter().find_map(|x| target.check_element(x).err()) {
        out[0] = Some(format!("a={a} b={b}: {e}"));
        return out;
    }
    let ab = map.apply(&source.mul_raw(&a, &b));
    let fafb = target.mul_raw(&fa, &fb);
    if ab != fafb {
        out[1] = Some(format!("a={a} b={b}: phi(a*b)={ab} but phi(a)*phi(b)={fafb}"));
    }
    let before = a.lex_cmp(&b);
    let after = fa.lex_cmp(&fb);
    if before != after {
        out[2] = Some(format!(
            "a={a} b={b}: a {} b but phi(a)={fa} {} phi(b)={fb}",
            symbol(before),
            symbol(after)
        ));
    }
    if a == source.unit().t && fa != target.unit().t {
        out[3] = Some(format!("phi(t)={fa}"));
    }
    let na = map.apply(&source.neg_raw(&a));
    let nfa = target.neg_raw(&fa);
    if na != nfa {
        out[4] = Some(format!("a={a}: phi(neg a)={na} but neg(phi a)={nfa}"));
    }
    out
}

fn symbol(o: Ordering) -> &'static str {
    match o {
        Ordering::Less => "<",
        Ordering::Equal => "=",
        Ordering::Greater => ">",
    }
}
