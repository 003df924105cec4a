//! Finitely generated ideals, materialized as element sets.
//!
//! Over a finite ring an ideal is determined by its element set, so inclusion,
//! equality and intersection are exact set operations on bitsets indexed by the
//! ring's enumeration order. The generator list is kept for provenance.

use std::fmt;
use std::ops::Deref;

use fixedbitset::FixedBitSet;

use crate::error::{Error, Result};
use crate::ring::{Element, Ring};

#[derive(Clone)]
pub struct FgIdeal {
    ring: Ring,
    generators: Vec<Element>,
    members: FixedBitSet,
}

impl FgIdeal {
    pub(crate) fn from_members(ring: &Ring, generators: Vec<Element>, members: FixedBitSet) -> Self {
        debug_assert!(members.contains(0));
        FgIdeal {
            ring: ring.clone(),
            generators,
            members,
        }
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn generators(&self) -> &[Element] {
        &self.generators
    }

    pub fn contains(&self, x: &Element) -> Result<bool> {
        if !self.ring.contains(x) {
            return Err(Error::MixedRingOperands);
        }
        Ok(self.members.contains(x.index()))
    }

    pub(crate) fn contains_index(&self, x: usize) -> bool {
        self.members.contains(x)
    }

    pub(crate) fn members(&self) -> &FixedBitSet {
        &self.members
    }

    /// Members in enumeration order.
    pub fn elements(&self) -> impl Iterator<Item = Element> + '_ {
        self.members.ones().map(|i| self.ring.element(i).expect("member index in range"))
    }

    pub fn len(&self) -> usize {
        self.members.count_ones(..)
    }

    /// Every ideal contains zero, so this only asks whether it is the zero ideal.
    pub fn is_empty(&self) -> bool {
        self.is_zero_ideal()
    }

    pub fn is_zero_ideal(&self) -> bool {
        self.len() == 1
    }

    pub fn is_whole_ring(&self) -> bool {
        self.len() == self.ring.cardinality()
    }

    /// A generating set picked greedily in enumeration order: a member is kept
    /// when it is not already in the span of the ones kept before it.
    pub fn small_generators(&self) -> Vec<Element> {
        let mut gens = Vec::new();
        let mut spanned = zero_set(&self.ring);
        for x in self.members.ones() {
            if !spanned.contains(x) {
                spanned = sum_with_principal(&self.ring, &spanned, x);
                gens.push(self.ring.element(x).expect("member index in range"));
            }
        }
        gens
    }
}

impl fmt::Debug for FgIdeal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// Writes the element set, e.g. `{0,2,4}`.
impl fmt::Display for FgIdeal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, e) in self.elements().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{e}")?;
        }
        f.write_str("}")
    }
}

/// The annihilator `{x : x*v = 0}` together with its source element `v`.
#[derive(Clone, Debug)]
pub struct AnnIdeal {
    source: Element,
    ideal: FgIdeal,
}

impl AnnIdeal {
    pub fn source(&self) -> &Element {
        &self.source
    }

    pub fn ideal(&self) -> &FgIdeal {
        &self.ideal
    }
}

impl Deref for AnnIdeal {
    type Target = FgIdeal;

    fn deref(&self) -> &FgIdeal {
        &self.ideal
    }
}

fn zero_set(ring: &Ring) -> FixedBitSet {
    let mut s = FixedBitSet::with_capacity(ring.cardinality());
    s.insert(0);
    s
}

/// `S + R*g` for an additive subgroup `S`.
fn sum_with_principal(ring: &Ring, set: &FixedBitSet, g: usize) -> FixedBitSet {
    let card = ring.cardinality();
    let mut multiples = FixedBitSet::with_capacity(card);
    for r in 0..card {
        multiples.insert(ring.mul_index(r, g));
    }
    if multiples.is_subset(set) {
        return set.clone();
    }
    let mut out = FixedBitSet::with_capacity(card);
    for s in set.ones() {
        for m in multiples.ones() {
            out.insert(ring.add_index(s, m));
        }
    }
    out
}

/// The ideal generated by `gens`. The sum of the principal ideals `R*g` is
/// built one generator at a time; each partial sum is an additive subgroup, so
/// one pass of pairwise sums closes it.
pub fn span(ring: &Ring, gens: &[Element]) -> Result<FgIdeal> {
    let mut members = zero_set(ring);
    for g in gens {
        if !ring.contains(g) {
            return Err(Error::MixedRingOperands);
        }
        members = sum_with_principal(ring, &members, g.index());
    }
    Ok(FgIdeal::from_members(ring, gens.to_vec(), members))
}

pub fn member(x: &Element, ideal: &FgIdeal) -> Result<bool> {
    ideal.contains(x)
}

fn same_ring(i: &FgIdeal, j: &FgIdeal) -> Result<()> {
    if i.ring == j.ring {
        Ok(())
    } else {
        Err(Error::MixedRingOperands)
    }
}

/// `J ⊆ I`.
pub fn includes(i: &FgIdeal, j: &FgIdeal) -> Result<bool> {
    same_ring(i, j)?;
    Ok(j.members.is_subset(&i.members))
}

/// `J ⊊ I`.
pub fn strictly_includes(i: &FgIdeal, j: &FgIdeal) -> Result<bool> {
    same_ring(i, j)?;
    Ok(j.members.is_subset(&i.members) && j.members != i.members)
}

pub fn ideal_eq(i: &FgIdeal, j: &FgIdeal) -> Result<bool> {
    same_ring(i, j)?;
    Ok(i.members == j.members)
}

/// Set intersection; the generator list is the intersection itself.
pub fn intersect(i: &FgIdeal, j: &FgIdeal) -> Result<FgIdeal> {
    same_ring(i, j)?;
    let mut members = i.members.clone();
    members.intersect_with(&j.members);
    Ok(intersection_ideal(&i.ring, members))
}

pub(crate) fn intersection_ideal(ring: &Ring, members: FixedBitSet) -> FgIdeal {
    let generators = members.ones().map(|x| ring.at(x)).collect();
    FgIdeal::from_members(ring, generators, members)
}

/// `{x : x*v = 0}`. `v = 0` is allowed and gives the whole ring.
pub fn annihilator(ring: &Ring, v: &Element) -> Result<AnnIdeal> {
    if !ring.contains(v) {
        return Err(Error::MixedRingOperands);
    }
    Ok(annihilator_of_index(ring, v.index()))
}

pub(crate) fn annihilator_of_index(ring: &Ring, v: usize) -> AnnIdeal {
    let members = ring.kernel_of(v);
    AnnIdeal {
        source: ring.at(v),
        ideal: intersection_ideal(ring, members),
    }
}

/// Exhaustive primality test: `1 ∉ I`, and `ab ∈ I` forces `a ∈ I` or `b ∈ I`.
pub fn is_prime(ideal: &FgIdeal) -> bool {
    let ring = &ideal.ring;
    if ideal.contains_index(ring.one().index()) {
        return false;
    }
    let outside: Vec<usize> = (0..ring.cardinality())
        .filter(|&x| !ideal.contains_index(x))
        .collect();
    outside.iter().all(|&a| {
        outside
            .iter()
            .all(|&b| !ideal.contains_index(ring.mul_index(a, b)))
    })
}

/// The inclusion-maximal ideals among all `ann(v)` with `v != 0`, one entry per
/// distinct ideal, represented by its first source in enumeration order.
pub fn maximal_orthogonal_ideals(ring: &Ring) -> Vec<AnnIdeal> {
    let mut distinct: Vec<(usize, FixedBitSet)> = Vec::new();
    for v in 1..ring.cardinality() {
        let ann = ring.kernel_of(v);
        if !distinct.iter().any(|(_, s)| *s == ann) {
            distinct.push((v, ann));
        }
    }
    let maximal: Vec<usize> = (0..distinct.len())
        .filter(|&i| {
            let s = &distinct[i].1;
            !distinct
                .iter()
                .any(|(_, t)| s.is_subset(t) && s != t)
        })
        .collect();
    maximal
        .into_iter()
        .map(|i| annihilator_of_index(ring, distinct[i].0))
        .collect()
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

    fn set(i: &FgIdeal) -> String {
        i.to_string()
    }

    #[test]
    fn spans() {
        let z6 = zmod(6);
        assert_eq!(set(&span(&z6, &res(&z6, &[2])).unwrap()), "{0,2,4}");
        assert_eq!(set(&span(&z6, &[]).unwrap()), "{0}");
        assert!(span(&z6, &res(&z6, &[2, 3])).unwrap().is_whole_ring());
    }

    #[test]
    fn inclusions() {
        let z6 = zmod(6);
        let i3 = span(&z6, &res(&z6, &[3])).unwrap();
        let i2 = span(&z6, &res(&z6, &[2])).unwrap();
        assert!(!includes(&i2, &i3).unwrap());
        assert!(includes(&i2, &i2).unwrap());
        assert!(!strictly_includes(&i2, &i2).unwrap());
        assert!(ideal_eq(&i2, &i2).unwrap());

        let z12 = zmod(12);
        let small = span(&z12, &res(&z12, &[6])).unwrap();
        let big = span(&z12, &res(&z12, &[2, 6])).unwrap();
        assert!(strictly_includes(&big, &small).unwrap());
        assert!(!strictly_includes(&small, &big).unwrap());
    }

    #[test]
    fn intersections() {
        let z6 = zmod(6);
        let two = res(&z6, &[2]).remove(0);
        let three = res(&z6, &[3]).remove(0);
        let i = intersect(&annihilator(&z6, &two).unwrap(), &annihilator(&z6, &three).unwrap()).unwrap();
        assert!(i.is_zero_ideal());

        let whole = span(&z6, &[z6.one()]).unwrap();
        let i2 = span(&z6, &[two]).unwrap();
        assert!(ideal_eq(&intersect(&i2, &whole).unwrap(), &i2).unwrap());

        let z12 = zmod(12);
        let v = res(&z12, &[2, 4]);
        let i = intersect(&annihilator(&z12, &v[0]).unwrap(), &annihilator(&z12, &v[1]).unwrap()).unwrap();
        assert_eq!(set(&i), "{0,6}");
    }

    #[test]
    fn annihilators() {
        let z6 = zmod(6);
        let v = res(&z6, &[2, 5, 0]);
        assert_eq!(set(&annihilator(&z6, &v[0]).unwrap()), "{0,3}");
        assert!(annihilator(&z6, &v[1]).unwrap().is_zero_ideal());
        assert!(annihilator(&z6, &v[2]).unwrap().is_whole_ring());

        let p = Ring::new(&RingDescriptor::product(RingDescriptor::zmod(2), RingDescriptor::zmod(2))).unwrap();
        let e = p.from_value(&Value::pair(Value::Residue(1), Value::Residue(0))).unwrap();
        assert_eq!(set(&annihilator(&p, &e).unwrap()), "{(0,0),(0,1)}");
    }

    #[test]
    fn primality() {
        let z6 = zmod(6);
        assert!(is_prime(&span(&z6, &res(&z6, &[2])).unwrap()));
        assert!(!is_prime(&span(&z6, &[z6.one()]).unwrap()));
        let z12 = zmod(12);
        assert!(!is_prime(&span(&z12, &res(&z12, &[4])).unwrap()));
        // Zero ideal of a field.
        let z5 = zmod(5);
        assert!(is_prime(&span(&z5, &[]).unwrap()));
    }

    #[test]
    fn maximal_orthogonal_catalogue() {
        let show = |r: &Ring| -> Vec<String> {
            maximal_orthogonal_ideals(r)
                .iter()
                .map(|a| format!("{} {}", a.source(), a.ideal()))
                .collect()
        };
        assert_eq!(show(&zmod(6)), ["2 {0,3}", "3 {0,2,4}"]);
        assert_eq!(show(&zmod(4)), ["2 {0,2}"]);
        assert_eq!(show(&zmod(5)), ["1 {0}"]);
    }

    #[test]
    fn small_generators_span_the_ideal() {
        let z12 = zmod(12);
        let ann = annihilator(&z12, &res(&z12, &[4])[0]).unwrap();
        let gens = ann.small_generators();
        assert_eq!(gens.len(), 1);
        assert!(ideal_eq(&span(&z12, &gens).unwrap(), &ann).unwrap());
    }

    #[test]
    fn mixed_rings() {
        let (a, b) = (zmod(6), zmod(7));
        assert_eq!(span(&a, &[b.one()]).unwrap_err(), Error::MixedRingOperands);
        let ia = span(&a, &[]).unwrap();
        let ib = span(&b, &[]).unwrap();
        assert_eq!(includes(&ia, &ib).unwrap_err(), Error::MixedRingOperands);
        assert_eq!(annihilator(&a, &b.one()).unwrap_err(), Error::MixedRingOperands);
    }
}
