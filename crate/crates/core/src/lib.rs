//! Regular elements of regular ideals in finite commutative rings.
//!
//! Given generators of an ideal `I` with no nonzero annihilator, the search in
//! [`regular`] produces an element of `I` that is not a zero divisor. It
//! approximates the set of maximal annihilator ideals by an independent list
//! ([`indlist`]), proposes a candidate from the list, and refines the list
//! whenever the candidate turns out to be a zero divisor. Every step is
//! recorded as a [`TraceEvent`] with enough witnesses to be re-checked by
//! [`trace::verify_events`].
//!
//! Rings are finite ([`ring`]), so ideals are materialized as element sets
//! ([`ideal`]) and every membership or inclusion question is decided exactly.
//! Rings, elements and generator lists have a text syntax ([`dsl`]).

pub mod dsl;
pub mod error;
pub mod ideal;
pub mod indlist;
pub mod regular;
pub mod ring;
pub mod trace;

pub use dsl::{parse_and_make_ring, parse_element, parse_generators, parse_ring, ParseError};
pub use error::{Error, Result};
pub use ideal::{
    annihilator, includes, intersect, is_prime, maximal_orthogonal_ideals, member, span,
    strictly_includes, ideal_eq, AnnIdeal, FgIdeal,
};
pub use indlist::{
    check_nondecreasing, independence_check, lex_less, make_independent, prec_step, precedes,
    FailureReport, Independence, IndependenceCertificate, IndList, PrecStep, Repaired,
};
pub use regular::{
    brute_force_regular_in_ideal, candidate, default_fuel, find_regular_element,
    is_regular_element, is_regular_ideal, regularity_witness, RunResult, TraceEvent,
};
pub use ring::{make_ring, Element, Ring, RingDescriptor, Value};
