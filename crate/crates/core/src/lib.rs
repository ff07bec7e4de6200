//! Exact arithmetic for group-like uninorms presented as partial
//! lexicographic products of `Z` and `R`.
//!
//! `R` is modelled by the rationals. Terms are built with [`Term`] or parsed
//! with [`parse_term`]; elements live in [`Element`] and are always checked
//! against their term before use.

pub mod dsl;
pub mod element;
pub mod error;
pub mod laws;
pub mod normalize;
pub mod realization;
pub mod sample;
pub mod scalar;
pub mod subgroup;
pub mod term;

pub use dsl::{parse_element, parse_term, parse_term_any, parse_term_unchecked, term_from_json, term_to_json};
pub use element::{Element, Fiber};
pub use error::{Error, Result};
pub use laws::{run_laws, run_suite, Fault, Law, SuiteReport};
pub use normalize::{certify_isomorphism, normalize, CanonicalForm, CertificateReport, Normalized, Segment};
pub use realization::{eval_uninorm, from_unit_interval, realize, sample_grid, to_unit_interval, GridSample};
pub use scalar::{Leaf, Scalar};
pub use subgroup::{Coord, Subgroup};
pub use term::{
    build_basic, build_representation, make_plp, GapProvenance, GapWitness, IdempotentCensus, PlpKind,
    Realizability, Shape, StructuralFacts, Term, UnitConstants,
};
