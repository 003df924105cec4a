//! Searching a regular ideal for a regular element.
//!
//! The search keeps an independent list approximating the maximal orthogonal
//! ideals. From the list it builds a candidate in the ideal that multiplies
//! every list member to something nonzero. If the candidate is a zero divisor,
//! a nonzero element of its annihilator is appended and the list is repaired
//! back to independence; the list strictly increases in the lexicographic
//! order each round, which bounds the number of rounds.

use crate::error::{Error, Result};
use crate::ideal::{annihilator_of_index, span, FgIdeal};
use crate::indlist::{lex_less, make_independent, IndList, IndependenceCertificate};
use crate::ring::{Element, Ring};

/// One step of a run.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TraceEvent {
    Candidate {
        u: Element,
    },
    ZeroDivisorFound {
        u: Element,
        v: Element,
    },
    Append {
        list: Vec<Element>,
    },
    PrecStep {
        before: Vec<Element>,
        after: Vec<Element>,
        /// 1-based.
        pivot: usize,
    },
    IndependentReached {
        list: Vec<Element>,
        witnesses: Vec<Element>,
    },
    RegularFound {
        a: Element,
    },
}

#[derive(Clone, Debug)]
pub struct RunResult {
    pub element: Element,
    pub trace: Vec<TraceEvent>,
    /// Number of zero divisors found before the regular candidate.
    pub iterations: usize,
}

/// Iteration budget used when none is given: four times the ring size.
pub fn default_fuel(ring: &Ring) -> usize {
    4 * ring.cardinality()
}

fn check_members(ring: &Ring, xs: &[Element]) -> Result<()> {
    if xs.iter().all(|x| ring.contains(x)) {
        Ok(())
    } else {
        Err(Error::MixedRingOperands)
    }
}

/// True iff `x * a = 0` only for `x = 0`.
pub fn is_regular_element(ring: &Ring, a: &Element) -> Result<bool> {
    check_members(ring, std::slice::from_ref(a))?;
    Ok(ring.is_regular_index(a.index()))
}

/// The first nonzero `x` (in enumeration order) killing every generator, if any.
pub fn regularity_witness(ring: &Ring, gens: &[Element]) -> Result<Option<Element>> {
    check_members(ring, gens)?;
    Ok((1..ring.cardinality())
        .find(|&x| gens.iter().all(|g| ring.mul_index(x, g.index()) == 0))
        .map(|x| ring.at(x)))
}

/// True iff no nonzero element annihilates the ideal generated by `gens`.
pub fn is_regular_ideal(ring: &Ring, gens: &[Element]) -> Result<bool> {
    Ok(regularity_witness(ring, gens)?.is_none())
}

/// First regular member of `span(gens)` in enumeration order.
pub fn brute_force_regular_in_ideal(ring: &Ring, gens: &[Element]) -> Result<Option<Element>> {
    let ideal = span(ring, gens)?;
    let found = ideal.elements().find(|a| ring.is_regular_index(a.index()));
    Ok(found)
}

/// Builds `a = Σ_k t_k * g_{i_k}` where `t_k` are the certificate witnesses and
/// `i_k` is the first generator with `t_k * v_k * g_{i_k} != 0`. Then
/// `a * v_k = t_k * g_{i_k} * v_k != 0` for every `k`. For the empty list the
/// candidate is the first nonzero generator.
pub fn candidate(
    ideal: &FgIdeal,
    list: &IndList,
    certificate: &IndependenceCertificate,
) -> Result<Element> {
    let ring = ideal.ring();
    if list.ring() != ring {
        return Err(Error::MixedRingOperands);
    }
    let gens = ideal.generators();
    if list.is_empty() {
        return gens
            .iter()
            .find(|g| !g.is_zero())
            .cloned()
            .ok_or_else(|| Error::IdealNotRegular { witness: ring.one() });
    }
    if !certificate.verify(list) {
        return Err(Error::InvalidCertificate);
    }
    let mut a = 0;
    for (entry, t) in list.entries().iter().zip(certificate.witnesses()) {
        let tv = ring.mul_index(t.index(), entry.element().index());
        let g = gens
            .iter()
            .find(|g| ring.mul_index(tv, g.index()) != 0)
            .ok_or_else(|| Error::IdealNotRegular { witness: ring.at(tv) })?;
        a = ring.add_index(a, ring.mul_index(t.index(), g.index()));
    }
    if let Some(e) = list
        .entries()
        .iter()
        .find(|e| ring.mul_index(a, e.element().index()) == 0)
    {
        return Err(Error::InvariantViolation(format!(
            "candidate {} annihilates list member {}",
            ring.at(a),
            e.element()
        )));
    }
    Ok(ring.at(a))
}

/// Runs the dynamic search on `span(gens)`. The ideal must be regular; this is
/// checked up front. `fuel` bounds both the number of rounds and the number of
/// repair steps per round.
pub fn find_regular_element(ring: &Ring, gens: &[Element], fuel: usize) -> Result<RunResult> {
    if let Some(witness) = regularity_witness(ring, gens)? {
        return Err(Error::IdealNotRegular { witness });
    }
    let ideal = span(ring, gens)?;
    let mut trace = Vec::new();
    let mut list = IndList::empty(ring);
    let mut certificate = IndependenceCertificate::empty();
    trace.push(TraceEvent::IndependentReached {
        list: Vec::new(),
        witnesses: Vec::new(),
    });

    for iterations in 0..=fuel {
        let u = candidate(&ideal, &list, &certificate)?;
        trace.push(TraceEvent::Candidate { u: u.clone() });
        let ann = annihilator_of_index(ring, u.index());
        let Some(v) = ann.elements().find(|x| !x.is_zero()) else {
            trace.push(TraceEvent::RegularFound { a: u.clone() });
            return Ok(RunResult {
                element: u,
                trace,
                iterations,
            });
        };
        if iterations == fuel {
            break;
        }
        trace.push(TraceEvent::ZeroDivisorFound {
            u: u.clone(),
            v: v.clone(),
        });
        // u kills v but no list member, so ann(v) is not inside any earlier ann(v_i).
        let appended = list.push(&v).map_err(|e| {
            Error::InvariantViolation(format!("appending {v} to {list} failed: {e}"))
        })?;
        trace.push(TraceEvent::Append {
            list: appended.elements(),
        });
        let repaired = make_independent(&appended, fuel)?;
        for step in &repaired.steps {
            trace.push(TraceEvent::PrecStep {
                before: step.before.elements(),
                after: step.after.elements(),
                pivot: step.pivot,
            });
        }
        if !lex_less(&list, &repaired.list)? {
            return Err(Error::InvariantViolation(format!(
                "independent list did not increase: {list} then {}",
                repaired.list
            )));
        }
        trace.push(TraceEvent::IndependentReached {
            list: repaired.list.elements(),
            witnesses: repaired.certificate.witnesses().to_vec(),
        });
        list = repaired.list;
        certificate = repaired.certificate;
    }
    Err(Error::FuelExhausted(fuel))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::{RingDescriptor, Value};

    fn zmod(n: u64) -> Ring {
        Ring::new(&RingDescriptor::zmod(n)).unwrap()
    }

    fn res(r: &Ring, xs: &[u64]) -> Vec<Element> {
        xs.iter().map(|&x| r.from_value(&Value::Residue(x)).unwrap()).collect()
    }

    fn pair(r: &Ring, a: u64, b: u64) -> Element {
        r.from_value(&Value::pair(Value::Residue(a), Value::Residue(b))).unwrap()
    }

    fn klein() -> Ring {
        Ring::new(&RingDescriptor::product(RingDescriptor::zmod(2), RingDescriptor::zmod(2))).unwrap()
    }

    #[test]
    fn candidate_examples() {
        let z6 = zmod(6);
        let whole = span(&z6, &[z6.one()]).unwrap();
        let l = IndList::new(&z6, &res(&z6, &[2, 3])).unwrap();
        let c = IndependenceCertificate::new(res(&z6, &[2, 3]));
        assert_eq!(candidate(&whole, &l, &c).unwrap().to_string(), "5");

        let i = span(&z6, &res(&z6, &[2, 3])).unwrap();
        let l = IndList::new(&z6, &res(&z6, &[3])).unwrap();
        let c = IndependenceCertificate::new(res(&z6, &[1]));
        assert_eq!(candidate(&i, &l, &c).unwrap().to_string(), "3");

        let i = span(&z6, &res(&z6, &[0, 5])).unwrap();
        let empty = IndList::empty(&z6);
        let c = IndependenceCertificate::empty();
        assert_eq!(candidate(&i, &empty, &c).unwrap().to_string(), "5");
    }

    #[test]
    fn candidate_detects_non_regular_ideals() {
        let z6 = zmod(6);
        let i = span(&z6, &res(&z6, &[2])).unwrap();
        let l = IndList::new(&z6, &res(&z6, &[2])).unwrap();
        // t = 1, t*v = 2 and 2*2 = 4 != 0, fine; with v = 3 the product 3*2 = 0.
        let l3 = IndList::new(&z6, &res(&z6, &[3])).unwrap();
        let c = IndependenceCertificate::new(res(&z6, &[1]));
        assert!(candidate(&i, &l, &c).is_ok());
        assert_eq!(
            candidate(&i, &l3, &c).unwrap_err(),
            Error::IdealNotRegular { witness: res(&z6, &[3])[0].clone() }
        );
        let zero = span(&z6, &[]).unwrap();
        assert!(matches!(
            candidate(&zero, &IndList::empty(&z6), &IndependenceCertificate::empty()),
            Err(Error::IdealNotRegular { .. })
        ));
        assert_eq!(
            candidate(&i, &l3, &IndependenceCertificate::new(res(&z6, &[2]))).unwrap_err(),
            Error::InvalidCertificate
        );
    }

    #[test]
    fn regularity_predicates() {
        let z6 = zmod(6);
        assert!(is_regular_element(&z6, &res(&z6, &[5])[0]).unwrap());
        assert!(!is_regular_element(&z6, &res(&z6, &[2])[0]).unwrap());
        assert!(is_regular_element(&z6, &z6.one()).unwrap());

        assert!(is_regular_ideal(&z6, &res(&z6, &[2, 3])).unwrap());
        assert_eq!(
            regularity_witness(&z6, &res(&z6, &[2])).unwrap(),
            Some(res(&z6, &[3])[0].clone())
        );
        assert_eq!(regularity_witness(&z6, &[]).unwrap(), Some(z6.one()));
    }

    #[test]
    fn brute_force_examples() {
        let z6 = zmod(6);
        assert_eq!(brute_force_regular_in_ideal(&z6, &res(&z6, &[2, 3])).unwrap(), Some(z6.one()));
        assert_eq!(brute_force_regular_in_ideal(&z6, &res(&z6, &[2])).unwrap(), None);
        let k = klein();
        assert_eq!(
            brute_force_regular_in_ideal(&k, &[pair(&k, 1, 0), pair(&k, 0, 1)]).unwrap(),
            Some(pair(&k, 1, 1))
        );
    }

    #[test]
    fn run_on_z6() {
        let z6 = zmod(6);
        let run = find_regular_element(&z6, &res(&z6, &[2, 3]), 24).unwrap();
        assert_eq!(run.element, z6.one());
        assert_eq!(run.iterations, 2);
        let reached: Vec<Vec<Element>> = run
            .trace
            .iter()
            .filter_map(|e| match e {
                TraceEvent::IndependentReached { list, .. } => Some(list.clone()),
                _ => None,
            })
            .collect();
        assert_eq!(reached, [vec![], res(&z6, &[3]), res(&z6, &[3, 2])]);
    }

    #[test]
    fn run_on_unit_ideal() {
        let z6 = zmod(6);
        let run = find_regular_element(&z6, &res(&z6, &[5]), 24).unwrap();
        assert_eq!(run.element.to_string(), "5");
        assert_eq!(run.iterations, 0);
    }

    #[test]
    fn run_rejects_non_regular() {
        let z6 = zmod(6);
        assert_eq!(
            find_regular_element(&z6, &res(&z6, &[2]), 24).unwrap_err(),
            Error::IdealNotRegular { witness: res(&z6, &[3])[0].clone() }
        );
    }

    #[test]
    fn zero_fuel_still_accepts_a_regular_first_candidate() {
        let z6 = zmod(6);
        assert!(find_regular_element(&z6, &res(&z6, &[1]), 0).is_ok());
        assert_eq!(
            find_regular_element(&z6, &res(&z6, &[2, 3]), 0).unwrap_err(),
            Error::FuelExhausted(0)
        );
    }
}
