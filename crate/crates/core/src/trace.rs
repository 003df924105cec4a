//! Line-oriented JSON traces of a search run, and a replay checker.
//!
//! A trace file starts with a `run` header naming the ring, the ideal's
//! generators and the fuel, followed by one object per [`TraceEvent`]. Elements
//! and lists are written as DSL literals, so a trace is self-contained:
//!
//! ```text
//! {"event":"run","ring":"Z/6","ideal":["2","3"],"fuel":24}
//! {"event":"independent_reached","list":[],"witnesses":[]}
//! {"event":"candidate","u":"2"}
//! {"event":"zero_divisor_found","u":"2","v":"3"}
//! {"event":"append","list":["3"]}
//! ...
//! {"event":"regular_found","a":"1"}
//! ```

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::dsl::{parse_and_make_ring, parse_element, ParseError};
use crate::ideal::span;
use crate::indlist::{
    independence_check, lex_less, precedes, Independence, IndList, IndependenceCertificate,
};
use crate::regular::TraceEvent;
use crate::ring::{Element, Ring};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "event", rename_all = "snake_case", deny_unknown_fields)]
enum Record {
    Run {
        ring: String,
        ideal: Vec<String>,
        fuel: usize,
    },
    Candidate {
        u: String,
    },
    ZeroDivisorFound {
        u: String,
        v: String,
    },
    Append {
        list: Vec<String>,
    },
    PrecStep {
        before: Vec<String>,
        after: Vec<String>,
        pivot: usize,
    },
    IndependentReached {
        list: Vec<String>,
        witnesses: Vec<String>,
    },
    RegularFound {
        a: String,
    },
}

#[derive(Debug, Error)]
pub enum TraceError {
    #[error("line {line}: malformed record: {message}")]
    Malformed { line: usize, message: String },
    #[error("line {line}: {source}")]
    Literal {
        line: usize,
        #[source]
        source: ParseError,
    },
    #[error("trace does not start with a run header")]
    MissingHeader,
    #[error("event {index}: {reason}")]
    Invalid { index: usize, reason: String },
    #[error("trace ends without a regular_found event")]
    Incomplete,
}

/// A parsed trace file.
#[derive(Debug, Clone)]
pub struct TraceFile {
    pub ring: Ring,
    pub ideal: Vec<Element>,
    pub fuel: usize,
    pub events: Vec<TraceEvent>,
}

fn lits(xs: &[Element]) -> Vec<String> {
    xs.iter().map(Element::to_string).collect()
}

fn to_record(event: &TraceEvent) -> Record {
    match event {
        TraceEvent::Candidate { u } => Record::Candidate { u: u.to_string() },
        TraceEvent::ZeroDivisorFound { u, v } => Record::ZeroDivisorFound {
            u: u.to_string(),
            v: v.to_string(),
        },
        TraceEvent::Append { list } => Record::Append { list: lits(list) },
        TraceEvent::PrecStep {
            before,
            after,
            pivot,
        } => Record::PrecStep {
            before: lits(before),
            after: lits(after),
            pivot: *pivot,
        },
        TraceEvent::IndependentReached { list, witnesses } => Record::IndependentReached {
            list: lits(list),
            witnesses: lits(witnesses),
        },
        TraceEvent::RegularFound { a } => Record::RegularFound { a: a.to_string() },
    }
}

/// Renders one event as a single JSON line (without the newline).
pub fn event_to_json(event: &TraceEvent) -> String {
    serde_json::to_string(&to_record(event)).expect("records serialize")
}

/// Renders a full trace file, header included, one object per line.
pub fn write_trace(ring: &Ring, ideal: &[Element], fuel: usize, events: &[TraceEvent]) -> String {
    let header = Record::Run {
        ring: ring.to_string(),
        ideal: lits(ideal),
        fuel,
    };
    let mut out = serde_json::to_string(&header).expect("records serialize");
    out.push('\n');
    for e in events {
        out.push_str(&event_to_json(e));
        out.push('\n');
    }
    out
}

pub fn parse_trace(text: &str) -> Result<TraceFile, TraceError> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l))
        .filter(|(_, l)| !l.trim().is_empty());
    let record = |line: usize, l: &str| -> Result<Record, TraceError> {
        serde_json::from_str(l).map_err(|e| TraceError::Malformed {
            line,
            message: e.to_string(),
        })
    };
    let (line, first) = lines.next().ok_or(TraceError::MissingHeader)?;
    let Record::Run { ring, ideal, fuel } = record(line, first)? else {
        return Err(TraceError::MissingHeader);
    };
    let ring = parse_and_make_ring(&ring).map_err(|source| TraceError::Literal { line, source })?;
    let elem = |line: usize, s: &str| -> Result<Element, TraceError> {
        parse_element(s, &ring).map_err(|source| TraceError::Literal { line, source })
    };
    let elems = |line: usize, xs: &[String]| -> Result<Vec<Element>, TraceError> {
        xs.iter().map(|s| elem(line, s)).collect()
    };
    let ideal = elems(line, &ideal)?;
    let mut events = Vec::new();
    for (line, l) in lines {
        let event = match record(line, l)? {
            Record::Run { .. } => {
                return Err(TraceError::Malformed {
                    line,
                    message: "second run header".into(),
                })
            }
            Record::Candidate { u } => TraceEvent::Candidate { u: elem(line, &u)? },
            Record::ZeroDivisorFound { u, v } => TraceEvent::ZeroDivisorFound {
                u: elem(line, &u)?,
                v: elem(line, &v)?,
            },
            Record::Append { list } => TraceEvent::Append {
                list: elems(line, &list)?,
            },
            Record::PrecStep {
                before,
                after,
                pivot,
            } => TraceEvent::PrecStep {
                before: elems(line, &before)?,
                after: elems(line, &after)?,
                pivot,
            },
            Record::IndependentReached { list, witnesses } => TraceEvent::IndependentReached {
                list: elems(line, &list)?,
                witnesses: elems(line, &witnesses)?,
            },
            Record::RegularFound { a } => TraceEvent::RegularFound { a: elem(line, &a)? },
        };
        events.push(event);
    }
    Ok(TraceFile {
        ring,
        ideal,
        fuel,
        events,
    })
}

/// Re-checks every event of a run against the ideal generated by `ideal`:
/// candidates are nonzero members that multiply every current list member to
/// something nonzero, zero divisors really annihilate the candidate, appended
/// and repaired lists are non-decreasing, each `≺`-step enlarges its pivot
/// annihilator, successive independent lists strictly increase, their
/// certificates verify, and the final element is regular. Returns that element.
pub fn verify_events(
    ring: &Ring,
    ideal: &[Element],
    events: &[TraceEvent],
) -> Result<Element, TraceError> {
    let invalid = |index: usize, reason: String| TraceError::Invalid { index, reason };
    let ideal_set = span(ring, ideal).map_err(|e| invalid(0, e.to_string()))?;
    let make_list = |index: usize, xs: &[Element]| {
        IndList::new(ring, xs).map_err(|e| invalid(index, format!("bad list: {e}")))
    };

    let mut current: Option<IndList> = None;
    let mut pending: Option<IndList> = None;
    let mut last_candidate: Option<Element> = None;
    let mut zero_divisor: Option<Element> = None;
    let mut result: Option<Element> = None;

    for (index, event) in events.iter().enumerate() {
        if result.is_some() {
            return Err(invalid(index, "event after regular_found".into()));
        }
        match event {
            TraceEvent::IndependentReached { list, witnesses } => {
                let list = make_list(index, list)?;
                if !IndependenceCertificate::new(witnesses.clone()).verify(&list) {
                    return Err(invalid(index, format!("certificate does not verify for {list}")));
                }
                match (&current, &pending) {
                    (None, _) if !list.is_empty() => {
                        return Err(invalid(index, "first independent list must be empty".into()))
                    }
                    (None, _) => {}
                    (Some(_), None) => {
                        return Err(invalid(index, "independent list reached without a zero divisor".into()))
                    }
                    (Some(prev), Some(p)) => {
                        if *p != list {
                            return Err(invalid(index, format!("expected {p}, found {list}")));
                        }
                        if !lex_less(prev, &list).unwrap_or(false) {
                            return Err(invalid(index, format!("{list} does not increase over {prev}")));
                        }
                    }
                }
                current = Some(list);
                pending = None;
                last_candidate = None;
                zero_divisor = None;
            }
            TraceEvent::Candidate { u } => {
                let list = current
                    .as_ref()
                    .filter(|_| pending.is_none() && last_candidate.is_none())
                    .ok_or_else(|| invalid(index, "candidate outside an independent state".into()))?;
                if u.is_zero() || !ideal_set.contains(u).unwrap_or(false) {
                    return Err(invalid(index, format!("candidate {u} is zero or not in the ideal")));
                }
                if let Some(e) = list
                    .entries()
                    .iter()
                    .find(|e| ring.mul(u, e.element()).map(|p| p.is_zero()).unwrap_or(true))
                {
                    return Err(invalid(index, format!("candidate {u} kills list member {}", e.element())));
                }
                last_candidate = Some(u.clone());
            }
            TraceEvent::ZeroDivisorFound { u, v } => {
                if last_candidate.as_ref() != Some(u) || zero_divisor.is_some() {
                    return Err(invalid(index, format!("{u} is not the pending candidate")));
                }
                if v.is_zero() || !ring.mul(u, v).map(|p| p.is_zero()).unwrap_or(false) {
                    return Err(invalid(index, format!("{v} is not a nonzero annihilator of {u}")));
                }
                zero_divisor = Some(v.clone());
            }
            TraceEvent::Append { list } => {
                let (Some(cur), Some(v)) = (&current, &zero_divisor) else {
                    return Err(invalid(index, "append without a zero divisor".into()));
                };
                if pending.is_some() {
                    return Err(invalid(index, "second append in one round".into()));
                }
                let mut expected = cur.elements();
                expected.push(v.clone());
                if *list != expected {
                    return Err(invalid(index, "append does not extend the list by the zero divisor".into()));
                }
                pending = Some(make_list(index, list)?);
            }
            TraceEvent::PrecStep {
                before,
                after,
                pivot,
            } => {
                let p = pending
                    .as_ref()
                    .ok_or_else(|| invalid(index, "prec step outside a repair".into()))?;
                let before = make_list(index, before)?;
                let after = make_list(index, after)?;
                if *p != before {
                    return Err(invalid(index, format!("prec step starts from {before}, expected {p}")));
                }
                if matches!(independence_check(&before), Independence::Independent(_)) {
                    return Err(invalid(index, format!("prec step applied to independent {before}")));
                }
                if after.len() != *pivot
                    || !precedes(&before, &after).unwrap_or(false)
                    || !lex_less(&before, &after).unwrap_or(false)
                {
                    return Err(invalid(index, format!("{before} to {after} is not a prec step at {pivot}")));
                }
                pending = Some(after);
            }
            TraceEvent::RegularFound { a } => {
                if last_candidate.as_ref() != Some(a) || zero_divisor.is_some() {
                    return Err(invalid(index, format!("{a} is not the pending candidate")));
                }
                if !crate::regular::is_regular_element(ring, a).unwrap_or(false) {
                    return Err(invalid(index, format!("{a} is not regular")));
                }
                result = Some(a.clone());
            }
        }
    }
    result.ok_or(TraceError::Incomplete)
}

/// Parses and replays a trace file.
pub fn verify_trace(text: &str) -> Result<Element, TraceError> {
    let file = parse_trace(text)?;
    verify_events(&file.ring, &file.ideal, &file.events)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dsl::parse_generators;
    use crate::regular::find_regular_element;

    fn run(ring: &str, ideal: &str) -> (Ring, Vec<Element>, Vec<TraceEvent>) {
        let r = parse_and_make_ring(ring).unwrap();
        let g = parse_generators(ideal, &r).unwrap();
        let events = find_regular_element(&r, &g, 4 * r.cardinality()).unwrap().trace;
        (r, g, events)
    }

    #[test]
    fn z6_trace_text() {
        let (r, g, events) = run("Z/6", "2,3");
        let text = write_trace(&r, &g, 24, &events);
        let expected = concat!(
            r#"{"event":"run","ring":"Z/6","ideal":["2","3"],"fuel":24}"#, "\n",
            r#"{"event":"independent_reached","list":[],"witnesses":[]}"#, "\n",
            r#"{"event":"candidate","u":"2"}"#, "\n",
            r#"{"event":"zero_divisor_found","u":"2","v":"3"}"#, "\n",
            r#"{"event":"append","list":["3"]}"#, "\n",
            r#"{"event":"independent_reached","list":["3"],"witnesses":["1"]}"#, "\n",
            r#"{"event":"candidate","u":"3"}"#, "\n",
            r#"{"event":"zero_divisor_found","u":"3","v":"2"}"#, "\n",
            r#"{"event":"append","list":["3","2"]}"#, "\n",
            r#"{"event":"independent_reached","list":["3","2"],"witnesses":["3","2"]}"#, "\n",
            r#"{"event":"candidate","u":"1"}"#, "\n",
            r#"{"event":"regular_found","a":"1"}"#, "\n",
        );
        assert_eq!(text, expected);
        assert_eq!(verify_trace(&text).unwrap(), r.one());
    }

    #[test]
    fn parse_round_trip() {
        let (r, g, events) = run("Z/12 x Z/2[x]/(x^2)", "(2,x),(3,1)");
        let text = write_trace(&r, &g, 7, &events);
        let file = parse_trace(&text).unwrap();
        assert_eq!(file.ring, r);
        assert_eq!(file.ideal, g);
        assert_eq!(file.fuel, 7);
        assert_eq!(file.events, events);
    }

    #[test]
    fn tampering_is_detected() {
        let (r, g, events) = run("Z/6", "2,3");
        let ok = write_trace(&r, &g, 24, &events);
        let bad_zd = ok.replace(r#""u":"2","v":"3""#, r#""u":"2","v":"2""#);
        assert!(matches!(verify_trace(&bad_zd), Err(TraceError::Invalid { .. })));
        let bad_final = ok.replace(r#"{"event":"regular_found","a":"1"}"#, "");
        assert!(matches!(verify_trace(&bad_final), Err(TraceError::Incomplete)));
        let bad_cert = ok.replace(r#""witnesses":["3","2"]"#, r#""witnesses":["1","2"]"#);
        assert!(matches!(verify_trace(&bad_cert), Err(TraceError::Invalid { .. })));
        let bad_candidate = ok
            .replace(r#"{"event":"candidate","u":"1"}"#, r#"{"event":"candidate","u":"5"}"#);
        assert!(matches!(verify_trace(&bad_candidate), Err(TraceError::Invalid { .. })));
        assert!(matches!(verify_trace("{}"), Err(TraceError::Malformed { .. })));
        assert!(matches!(
            verify_trace(r#"{"event":"candidate","u":"1"}"#),
            Err(TraceError::MissingHeader)
        ));
    }

    #[test]
    fn prec_steps_replay() {
        let (r, g, events) = run("Z/4 x Z/2", "(2,0),(3,1)");
        let text = write_trace(&r, &g, 32, &events);
        assert!(text.contains(concat!(
            r#"{"event":"append","list":["(0,1)","(1,0)","(2,0)"]}"#, "\n",
            r#"{"event":"prec_step","before":["(0,1)","(1,0)","(2,0)"],"after":["(0,1)","(2,0)"],"pivot":2}"#, "\n",
            r#"{"event":"independent_reached","list":["(0,1)","(2,0)"],"witnesses":["(0,1)","(1,0)"]}"#, "\n",
            r#"{"event":"candidate","u":"(3,1)"}"#, "\n",
        )));
        assert_eq!(verify_trace(&text).unwrap().to_string(), "(3,1)");

        let forged = text.replace(r#""after":["(0,1)","(2,0)"],"pivot":2"#, r#""after":["(0,1)","(2,0)"],"pivot":1"#);
        assert!(matches!(verify_trace(&forged), Err(TraceError::Invalid { .. })));
    }
}
