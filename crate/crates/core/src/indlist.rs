//! Non-decreasing and independent lists of nonzero elements.
//!
//! A list `v_1, ..., v_n` is non-decreasing when `ann(v_i) ⊆ ann(v_j)` only for
//! `i <= j`, and independent when for every `k` the intersection of the other
//! annihilators is not contained in `ann(v_k)`. Dependent lists are repaired by
//! `≺`-steps: keep a prefix, replace the pivot by an element with a strictly
//! larger annihilator, and drop the rest. Positions in this module's public
//! values are 1-based.

use fixedbitset::FixedBitSet;

use crate::error::{Error, Result};
use crate::ideal::{annihilator_of_index, AnnIdeal};
use crate::ring::{Element, Ring};

#[derive(Clone, Debug)]
pub struct IndEntry {
    element: Element,
    ann: AnnIdeal,
}

impl IndEntry {
    pub fn element(&self) -> &Element {
        &self.element
    }

    pub fn ann(&self) -> &AnnIdeal {
        &self.ann
    }

    fn kernel(&self) -> &FixedBitSet {
        self.ann.members()
    }
}

/// A non-decreasing list of nonzero elements with cached annihilators.
#[derive(Clone, Debug)]
pub struct IndList {
    ring: Ring,
    entries: Vec<IndEntry>,
}

impl IndList {
    pub fn empty(ring: &Ring) -> Self {
        IndList {
            ring: ring.clone(),
            entries: Vec::new(),
        }
    }

    /// Builds a list, rejecting zero entries and lists that are not non-decreasing.
    pub fn new(ring: &Ring, elements: &[Element]) -> Result<Self> {
        let entries = make_entries(ring, elements)?;
        if let Some((earlier, later)) = first_violation(&entries) {
            return Err(Error::NotNonDecreasing { earlier, later });
        }
        Ok(IndList {
            ring: ring.clone(),
            entries,
        })
    }

    /// The list extended by `v`, if that extension is still non-decreasing.
    pub fn push(&self, v: &Element) -> Result<IndList> {
        let mut elements = self.elements();
        elements.push(v.clone());
        IndList::new(&self.ring, &elements)
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn entries(&self) -> &[IndEntry] {
        &self.entries
    }

    pub fn elements(&self) -> Vec<Element> {
        self.entries.iter().map(|e| e.element.clone()).collect()
    }

    /// `∩_{i != k} ann(v_i)` for a 0-based `k`; the empty intersection is the whole ring.
    fn others_intersection(&self, k: usize) -> FixedBitSet {
        let mut acc = FixedBitSet::with_capacity(self.ring.cardinality());
        acc.insert_range(..);
        for (i, e) in self.entries.iter().enumerate() {
            if i != k {
                acc.intersect_with(e.kernel());
            }
        }
        acc
    }
}

impl PartialEq for IndList {
    fn eq(&self, other: &Self) -> bool {
        self.ring == other.ring
            && self.len() == other.len()
            && self
                .entries
                .iter()
                .zip(&other.entries)
                .all(|(a, b)| a.element == b.element)
    }
}

impl Eq for IndList {}

impl std::fmt::Display for IndList {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str("(")?;
        for (i, e) in self.entries.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{}", e.element)?;
        }
        f.write_str(")")
    }
}

fn make_entries(ring: &Ring, elements: &[Element]) -> Result<Vec<IndEntry>> {
    elements
        .iter()
        .enumerate()
        .map(|(i, v)| {
            if !ring.contains(v) {
                return Err(Error::MixedRingOperands);
            }
            if v.is_zero() {
                return Err(Error::ZeroEntry { position: i + 1 });
            }
            Ok(IndEntry {
                element: v.clone(),
                ann: annihilator_of_index(ring, v.index()),
            })
        })
        .collect()
}

/// First pair `p < q` (1-based) with `ann(v_q) ⊆ ann(v_p)`.
fn first_violation(entries: &[IndEntry]) -> Option<(usize, usize)> {
    for q in 0..entries.len() {
        for p in 0..q {
            if entries[q].kernel().is_subset(entries[p].kernel()) {
                return Some((p + 1, q + 1));
            }
        }
    }
    None
}

/// Whether `elements` is non-decreasing. Zero entries are an error.
pub fn check_nondecreasing(ring: &Ring, elements: &[Element]) -> Result<bool> {
    let entries = make_entries(ring, elements)?;
    Ok(first_violation(&entries).is_none())
}

/// Witnesses `t_1, ..., t_n` with `t_k * v_i = 0` for `i != k` and `t_k * v_k != 0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IndependenceCertificate {
    witnesses: Vec<Element>,
}

impl IndependenceCertificate {
    pub fn new(witnesses: Vec<Element>) -> Self {
        IndependenceCertificate { witnesses }
    }

    pub fn empty() -> Self {
        IndependenceCertificate {
            witnesses: Vec::new(),
        }
    }

    pub fn witnesses(&self) -> &[Element] {
        &self.witnesses
    }

    /// Re-checks every witness by direct multiplication.
    pub fn verify(&self, list: &IndList) -> bool {
        let ring = list.ring();
        self.witnesses.len() == list.len()
            && self.witnesses.iter().enumerate().all(|(k, t)| {
                ring.contains(t)
                    && list.entries.iter().enumerate().all(|(i, e)| {
                        let zero = ring.mul_index(t.index(), e.element.index()) == 0;
                        zero == (i != k)
                    })
            })
    }
}

/// A position `k` (1-based) with `∩_{i != k} ann(v_i) ⊆ ann(v_k)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct FailureReport {
    pub position: usize,
}

impl FailureReport {
    pub fn verify(&self, list: &IndList) -> bool {
        let k = match self.position.checked_sub(1) {
            Some(k) if k < list.len() => k,
            _ => return false,
        };
        list.others_intersection(k)
            .is_subset(list.entries[k].kernel())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Independence {
    Independent(IndependenceCertificate),
    Dependent(FailureReport),
}

/// Decides independence. On failure reports the smallest failing position;
/// on success each witness is the first element of `J_k \ ann(v_k)` in
/// enumeration order.
pub fn independence_check(list: &IndList) -> Independence {
    let mut witnesses = Vec::with_capacity(list.len());
    for k in 0..list.len() {
        let mut candidates = list.others_intersection(k);
        candidates.difference_with(list.entries[k].kernel());
        match candidates.minimum() {
            Some(t) => witnesses.push(list.ring.at(t)),
            None => return Independence::Dependent(FailureReport { position: k + 1 }),
        }
    }
    Independence::Independent(IndependenceCertificate { witnesses })
}

/// One `≺`-step: `after = v_1, ..., v_{pivot-1}, replacement`.
#[derive(Clone, Debug)]
pub struct PrecStep {
    pub before: IndList,
    pub after: IndList,
    /// 1-based position that was replaced.
    pub pivot: usize,
    pub replacement: Element,
}

/// Repairs a dependent list. The pivot is the smallest position whose
/// annihilator is strictly contained in some `ann(w)` with `w != 0`, and `w`
/// is the first such element in enumeration order.
pub fn prec_step(list: &IndList, report: &FailureReport) -> Result<PrecStep> {
    if !report.verify(list) {
        return Err(match independence_check(list) {
            Independence::Independent(_) => Error::AlreadyIndependent,
            Independence::Dependent(_) => Error::InvalidFailureReport {
                position: report.position,
            },
        });
    }
    let ring = list.ring();
    let kernels: Vec<FixedBitSet> = (0..ring.cardinality()).map(|w| ring.kernel_of(w)).collect();
    for (j, entry) in list.entries.iter().enumerate() {
        let ann_v = entry.kernel();
        let found = (1..ring.cardinality())
            .find(|&w| ann_v.is_subset(&kernels[w]) && *ann_v != kernels[w]);
        if let Some(w) = found {
            let mut entries = list.entries[..j].to_vec();
            entries.push(IndEntry {
                element: ring.at(w),
                ann: annihilator_of_index(ring, w),
            });
            let after = IndList {
                ring: ring.clone(),
                entries,
            };
            if let Some((p, q)) = first_violation(&after.entries) {
                return Err(Error::InvariantViolation(format!(
                    "prec step produced a list that is not non-decreasing at ({p}, {q})"
                )));
            }
            if !lex_less(list, &after)? {
                return Err(Error::InvariantViolation(
                    "prec step did not increase the list".into(),
                ));
            }
            return Ok(PrecStep {
                before: list.clone(),
                after,
                pivot: j + 1,
                replacement: ring.at(w),
            });
        }
    }
    Err(Error::NoRepairFound)
}

/// Outcome of [`make_independent`].
#[derive(Clone, Debug)]
pub struct Repaired {
    pub list: IndList,
    pub certificate: IndependenceCertificate,
    pub steps: Vec<PrecStep>,
}

/// Applies `≺`-steps until the list is independent, taking at most `fuel` steps.
pub fn make_independent(list: &IndList, fuel: usize) -> Result<Repaired> {
    let mut current = list.clone();
    let mut steps: Vec<PrecStep> = Vec::new();
    loop {
        match independence_check(&current) {
            Independence::Independent(certificate) => {
                return Ok(Repaired {
                    list: current,
                    certificate,
                    steps,
                })
            }
            Independence::Dependent(report) => {
                if steps.len() >= fuel {
                    return Err(Error::FuelExhausted(steps.len()));
                }
                let step = prec_step(&current, &report)?;
                current = step.after.clone();
                steps.push(step);
            }
        }
    }
}

fn check_same_ring(alpha: &IndList, beta: &IndList) -> Result<()> {
    if alpha.ring == beta.ring {
        Ok(())
    } else {
        Err(Error::MixedRingOperands)
    }
}

/// `alpha ≺ beta`: `beta` is no longer than `alpha`, agrees with it before its
/// last position `m`, and `ann(alpha_m) ⊊ ann(beta_m)`.
pub fn precedes(alpha: &IndList, beta: &IndList) -> Result<bool> {
    check_same_ring(alpha, beta)?;
    let m = beta.len();
    if m == 0 || m > alpha.len() {
        return Ok(false);
    }
    let prefix_equal = (0..m - 1).all(|i| alpha.entries[i].element == beta.entries[i].element);
    let (a, b) = (alpha.entries[m - 1].kernel(), beta.entries[m - 1].kernel());
    Ok(prefix_equal && a.is_subset(b) && a != b)
}

/// The lexicographic order: `beta` strictly extends `alpha`, or at the first
/// position where they differ `ann(alpha_m) ⊊ ann(beta_m)`.
pub fn lex_less(alpha: &IndList, beta: &IndList) -> Result<bool> {
    check_same_ring(alpha, beta)?;
    for (a, b) in alpha.entries.iter().zip(&beta.entries) {
        if a.element != b.element {
            let (ka, kb) = (a.kernel(), b.kernel());
            return Ok(ka.is_subset(kb) && ka != kb);
        }
    }
    Ok(beta.len() > alpha.len())
}
