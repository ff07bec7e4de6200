//! Sampled verification of the algebraic laws of a term.

use std::cmp::Ordering;
use std::fmt;

use rayon::prelude::*;
use serde::Serialize;

use crate::element::Element;
use crate::sample::{random_element, sample_rng};
use crate::scalar::Scalar;
use crate::term::Term;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum Law {
    Commutativity,
    Associativity,
    Monotonicity,
    Adjointness,
    Involution,
    Oddness,
    OrderReversal,
    Closure,
    Invertibility,
}

impl Law {
    pub const ALL: [Law; 9] = [
        Law::Commutativity,
        Law::Associativity,
        Law::Monotonicity,
        Law::Adjointness,
        Law::Involution,
        Law::Oddness,
        Law::OrderReversal,
        Law::Closure,
        Law::Invertibility,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Law::Commutativity => "commutativity",
            Law::Associativity => "associativity",
            Law::Monotonicity => "monotonicity",
            Law::Adjointness => "adjointness",
            Law::Involution => "involution",
            Law::Oddness => "oddness",
            Law::OrderReversal => "order-reversal",
            Law::Closure => "closure",
            Law::Invertibility => "invertibility",
        }
    }
}

impl fmt::Display for Law {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// A deliberate defect, for checking that the suite notices.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize)]
pub enum Fault {
    #[default]
    None,
    /// Negation composed with a translation by a non-unit invertible element.
    BreakNeg,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LawReport {
    pub law: Law,
    pub samples: usize,
    pub violations: usize,
    /// The violating sample with the smallest index.
    pub counterexample: Option<String>,
}

impl LawReport {
    pub fn passed(&self) -> bool {
        self.violations == 0
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SuiteReport {
    pub term: String,
    pub seed: u64,
    pub samples: usize,
    pub fault: Fault,
    pub laws: Vec<LawReport>,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.laws.iter().all(LawReport::passed)
    }

    pub fn get(&self, law: Law) -> Option<&LawReport> {
        self.laws.iter().find(|r| r.law == law)
    }
}

impl fmt::Display for SuiteReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "term: {}", self.term)?;
        writeln!(f, "seed: {}  samples: {}", self.seed, self.samples)?;
        for r in &self.laws {
            let status = if r.passed() { "PASS" } else { "FAIL" };
            write!(f, "{:<16} {}  {}/{} violations", r.law.name(), status, r.violations, r.samples)?;
            if let Some(c) = &r.counterexample {
                write!(f, "  counterexample: {}", c)?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

/// The operations under test, possibly with a fault injected.
struct Ops<'a> {
    term: &'a Term,
    fault: Fault,
    shift: Element,
    t: Element,
}

impl<'a> Ops<'a> {
    fn new(term: &'a Term, fault: Fault) -> Self {
        let values: Vec<Scalar> = term
            .leaves()
            .iter()
            .enumerate()
            .map(|(i, &l)| if i == 0 { Scalar::int(1).coerce(l).unwrap() } else { Scalar::zero(l) })
            .collect();
        let shift = term.element_from_scalars(&values).expect("one value per leaf");
        Ops {
            term,
            fault,
            shift,
            t: term.unit().t,
        }
    }

    fn mul(&self, a: &Element, b: &Element) -> Element {
        self.term.mul_raw(a, b)
    }

    fn neg(&self, a: &Element) -> Element {
        let n = self.term.neg_raw(a);
        match self.fault {
            Fault::None => n,
            Fault::BreakNeg => self.term.mul_raw(&n, &self.shift),
        }
    }

    fn res(&self, x: &Element, z: &Element) -> Element {
        self.neg(&self.mul(x, &self.neg(z)))
    }

    fn le(&self, a: &Element, b: &Element) -> bool {
        a.lex_cmp(b) != Ordering::Greater
    }

    /// `None` if the law holds on this sample, else a description.
    fn check(&self, law: Law, seed: u64, index: u64) -> Option<String> {
        let mut rng = sample_rng(seed, law as u64, index);
        let mut draw = || random_element(self.term, &mut rng);
        match law {
            Law::Commutativity => {
                let (a, b) = (draw(), draw());
                let (ab, ba) = (self.mul(&a, &b), self.mul(&b, &a));
                (ab != ba).then(|| format!("a={a} b={b}: a*b={ab} b*a={ba}"))
            }
            Law::Associativity => {
                let (a, b, c) = (draw(), draw(), draw());
                let l = self.mul(&self.mul(&a, &b), &c);
                let r = self.mul(&a, &self.mul(&b, &c));
                (l != r).then(|| format!("a={a} b={b} c={c}: (a*b)*c={l} a*(b*c)={r}"))
            }
            Law::Monotonicity => {
                let (mut a, mut b, c) = (draw(), draw(), draw());
                if !self.le(&a, &b) {
                    std::mem::swap(&mut a, &mut b);
                }
                let (ca, cb) = (self.mul(&c, &a), self.mul(&c, &b));
                (!self.le(&ca, &cb)).then(|| format!("a={a} <= b={b}, c={c}: c*a={ca} > c*b={cb}"))
            }
            Law::Adjointness => {
                let (x, v) = (draw(), draw());
                // Every other sample sits on the boundary z = x*v.
                let z = if index % 2 == 0 { draw() } else { self.mul(&x, &v) };
                let r = self.res(&x, &z);
                let lhs = self.le(&self.mul(&x, &v), &z);
                let rhs = self.le(&v, &r);
                let back = self.le(&self.mul(&x, &r), &z);
                (lhs != rhs || !back).then(|| format!("x={x} v={v} z={z}: x*v<=z is {lhs}, v<=(x->z)={r} is {rhs}"))
            }
            Law::Involution => {
                let a = draw();
                let nn = self.neg(&self.neg(&a));
                (nn != a).then(|| format!("a={a}: neg(neg(a))={nn}"))
            }
            Law::Oddness => {
                let c = self.term.unit();
                let nt = self.neg(&c.t);
                let a = draw();
                // f is the residual complement of t, x -> f = neg(x).
                let via_f = self.res(&a, &self.neg(&c.t));
                let direct = self.neg(&a);
                if c.t != c.f || nt != self.t {
                    Some(format!("t={} f={} neg(t)={nt}", c.t, c.f))
                } else if via_f != direct {
                    Some(format!("a={a}: a->neg(t)={via_f} but neg(a)={direct}"))
                } else {
                    None
                }
            }
            Law::OrderReversal => {
                let (mut a, mut b) = (draw(), draw());
                if !self.le(&a, &b) {
                    std::mem::swap(&mut a, &mut b);
                }
                let (na, nb) = (self.neg(&a), self.neg(&b));
                (!self.le(&nb, &na)).then(|| format!("a={a} <= b={b}: neg(a)={na} < neg(b)={nb}"))
            }
            Law::Closure => {
                let (a, b) = (draw(), draw());
                let outputs = [self.mul(&a, &b), self.neg(&a), self.res(&a, &b)];
                outputs
                    .iter()
                    .find_map(|o| self.term.check_element(o).err())
                    .map(|e| format!("a={a} b={b}: {e}"))
            }
            Law::Invertibility => {
                let a = draw();
                let structural = self.term.is_invertible(&a).unwrap_or(false);
                let explicit = self.mul(&a, &self.neg(&a)) == self.t;
                (structural != explicit)
                    .then(|| format!("a={a}: structural {structural}, a*neg(a)=t is {explicit}"))
            }
        }
    }
}

/// Runs `laws` on `samples` random instances each.
///
/// Sample `i` of law `l` uses its own generator derived from `(seed, l, i)`,
/// so the report does not depend on the thread count.
pub fn run_laws(term: &Term, laws: &[Law], samples: usize, seed: u64, fault: Fault) -> SuiteReport {
    let ops = Ops::new(term, fault);
    let reports = laws
        .iter()
        .map(|&law| {
            let failures: Vec<(usize, String)> = (0..samples)
                .into_par_iter()
                .filter_map(|i| ops.check(law, seed, i as u64).map(|c| (i, c)))
                .collect();
            LawReport {
                law,
                samples,
                violations: failures.len(),
                counterexample: failures.into_iter().min_by_key(|(i, _)| *i).map(|(_, c)| c),
            }
        })
        .collect();
    SuiteReport {
        term: term.to_string(),
        seed,
        samples,
        fault,
        laws: reports,
    }
}

pub fn run_suite(term: &Term, samples: usize, seed: u64) -> SuiteReport {
    run_laws(term, &Law::ALL, samples, seed, Fault::None)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::subgroup::{Coord, Subgroup};
    use crate::term::build_basic;

    #[test]
    fn basic_algebras_satisfy_all_laws() {
        for t in [Term::r(), build_basic(1), build_basic(2)] {
            let r = run_suite(&t, 500, 1);
            assert!(r.passed(), "{r}");
        }
    }

    #[test]
    fn gapped_products_satisfy_all_laws() {
        let iii = Term::plp3(
            Term::r(),
            Subgroup::full(1),
            Subgroup::new(vec![Coord::scaled(1, 1)]),
            Term::r(),
        )
        .unwrap();
        let iv = Term::plp4(Term::z(), Subgroup::new(vec![Coord::scaled(2, 1)]), Term::r()).unwrap();
        for t in [iii, iv] {
            let r = run_suite(&t, 500, 2);
            assert!(r.passed(), "{r}");
        }
    }

    #[test]
    fn broken_negation_is_caught() {
        let r = run_laws(&build_basic(1), &Law::ALL, 200, 0, Fault::BreakNeg);
        assert!(!r.passed());
        let odd = r.get(Law::Oddness).unwrap();
        assert_eq!(odd.violations, 200);
        assert!(odd.counterexample.is_some());
    }

    #[test]
    fn reports_are_deterministic() {
        let t = build_basic(1);
        let a = run_laws(&t, &Law::ALL, 300, 9, Fault::BreakNeg);
        let b = run_laws(&t, &Law::ALL, 300, 9, Fault::BreakNeg);
        assert_eq!(a, b);
    }
}
