//! Finite commutative rings with unit.
//!
//! A ring is described by a [`RingDescriptor`]: a residue ring `Z/n`, a quotient
//! `Z/n[x]/(f)` by a monic polynomial, or a binary product of rings. Every ring is
//! finite, so each element has a unique position in a fixed enumeration order and
//! an [`Element`] is stored as that position. The structured, fully reduced form
//! is recovered with [`Element::value`].
//!
//! Enumeration order (part of the external contract, every deterministic choice
//! downstream depends on it):
//!
//! * `Z/n`: residues `0, 1, ..., n-1`.
//! * `Z/n[x]/(f)` with `deg f = d`: coefficient vectors `(c_{d-1}, ..., c_1, c_0)`
//!   in lexicographic order, `c_0` varying fastest. The index of an element is
//!   `sum c_i * n^i`, so `Z/2[x]/(x^2)` enumerates as `0, 1, x, x+1`.
//! * `A x B`: pairs ordered lexicographically by `(left, right)`; the index is
//!   `index(left) * |B| + index(right)`.
//!
//! In every case the zero element comes first.

use std::cmp::Ordering;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::sync::{Arc, OnceLock};

use fixedbitset::FixedBitSet;

use crate::error::{Error, Result};

/// Largest cardinality accepted by [`Ring::new`]. Ideals are materialized as
/// bitsets over the enumeration, so this bounds memory per ideal.
pub const MAX_CARDINALITY: usize = 1 << 20;

/// Rings up to this size get precomputed addition and multiplication tables.
const TABLE_LIMIT: usize = 1024;

/// Algebraic description of a finite commutative ring.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum RingDescriptor {
    /// `Z/n`.
    Zmod(u64),
    /// `Z/base[x]/(modulus)`; `modulus` lists coefficients from the constant term up.
    Quotient { base: u64, modulus: Vec<u64> },
    /// `left x right`.
    Product(Box<RingDescriptor>, Box<RingDescriptor>),
}

impl RingDescriptor {
    pub fn zmod(n: u64) -> Self {
        RingDescriptor::Zmod(n)
    }

    pub fn quotient(base: u64, modulus: Vec<u64>) -> Self {
        RingDescriptor::Quotient { base, modulus }
    }

    pub fn product(left: RingDescriptor, right: RingDescriptor) -> Self {
        RingDescriptor::Product(Box::new(left), Box::new(right))
    }

    /// Checks the descriptor invariants and returns the canonical form, with
    /// quotient moduli reduced mod `n` and trailing zero coefficients dropped.
    pub fn canonicalize(&self) -> Result<RingDescriptor> {
        match self {
            RingDescriptor::Zmod(n) => {
                if *n < 2 {
                    return Err(Error::ModulusTooSmall(*n));
                }
                Ok(RingDescriptor::Zmod(*n))
            }
            RingDescriptor::Quotient { base, modulus } => {
                if *base < 2 {
                    return Err(Error::ModulusTooSmall(*base));
                }
                let mut coeffs: Vec<u64> = modulus.iter().map(|c| c % base).collect();
                while coeffs.last() == Some(&0) {
                    coeffs.pop();
                }
                if coeffs.len() < 2 {
                    return Err(Error::DegreeZeroModulus);
                }
                if coeffs.last() != Some(&1) {
                    return Err(Error::NonMonicModulus);
                }
                Ok(RingDescriptor::Quotient {
                    base: *base,
                    modulus: coeffs,
                })
            }
            RingDescriptor::Product(l, r) => Ok(RingDescriptor::product(
                l.canonicalize()?,
                r.canonicalize()?,
            )),
        }
    }

    /// Number of elements, or `None` on overflow.
    pub fn cardinality(&self) -> Option<usize> {
        match self {
            RingDescriptor::Zmod(n) => usize::try_from(*n).ok(),
            RingDescriptor::Quotient { base, modulus } => {
                let n = usize::try_from(*base).ok()?;
                let d = u32::try_from(modulus.len().checked_sub(1)?).ok()?;
                n.checked_pow(d)
            }
            RingDescriptor::Product(l, r) => l.cardinality()?.checked_mul(r.cardinality()?),
        }
    }

    fn one_value(&self) -> Value {
        match self {
            RingDescriptor::Zmod(_) => Value::Residue(1),
            RingDescriptor::Quotient { modulus, .. } => {
                let mut c = vec![0; modulus.len() - 1];
                c[0] = 1;
                Value::Poly(c)
            }
            RingDescriptor::Product(l, r) => {
                Value::Pair(Box::new(l.one_value()), Box::new(r.one_value()))
            }
        }
    }

    /// Brings an arbitrary value of the right shape into canonical form.
    fn reduce(&self, value: &Value) -> Result<Value> {
        match (self, value) {
            (RingDescriptor::Zmod(n), Value::Residue(r)) => Ok(Value::Residue(r % n)),
            (RingDescriptor::Quotient { base, modulus }, Value::Poly(c)) => {
                Ok(Value::Poly(reduce_poly(*base, modulus, c.clone())))
            }
            (RingDescriptor::Product(l, r), Value::Pair(a, b)) => {
                Ok(Value::Pair(Box::new(l.reduce(a)?), Box::new(r.reduce(b)?)))
            }
            _ => Err(Error::ShapeMismatch),
        }
    }

    /// Enumeration index of a canonical value.
    fn encode(&self, value: &Value) -> usize {
        match (self, value) {
            (RingDescriptor::Zmod(_), Value::Residue(r)) => *r as usize,
            (RingDescriptor::Quotient { base, .. }, Value::Poly(c)) => c
                .iter()
                .rev()
                .fold(0usize, |acc, &ci| acc * (*base as usize) + ci as usize),
            (RingDescriptor::Product(l, r), Value::Pair(a, b)) => {
                l.encode(a) * r.cardinality().expect("validated ring") + r.encode(b)
            }
            _ => unreachable!("encode called with a value of the wrong shape"),
        }
    }

    fn decode(&self, mut index: usize) -> Value {
        match self {
            RingDescriptor::Zmod(_) => Value::Residue(index as u64),
            RingDescriptor::Quotient { base, modulus } => {
                let n = *base as usize;
                let mut c = Vec::with_capacity(modulus.len() - 1);
                for _ in 0..modulus.len() - 1 {
                    c.push((index % n) as u64);
                    index /= n;
                }
                Value::Poly(c)
            }
            RingDescriptor::Product(l, r) => {
                let rc = r.cardinality().expect("validated ring");
                Value::Pair(
                    Box::new(l.decode(index / rc)),
                    Box::new(r.decode(index % rc)),
                )
            }
        }
    }

    fn add_values(&self, a: &Value, b: &Value) -> Value {
        match (self, a, b) {
            (RingDescriptor::Zmod(n), Value::Residue(x), Value::Residue(y)) => {
                Value::Residue((x + y) % n)
            }
            (RingDescriptor::Quotient { base, .. }, Value::Poly(x), Value::Poly(y)) => {
                Value::Poly(x.iter().zip(y).map(|(p, q)| (p + q) % base).collect())
            }
            (RingDescriptor::Product(l, r), Value::Pair(a1, a2), Value::Pair(b1, b2)) => {
                Value::Pair(
                    Box::new(l.add_values(a1, b1)),
                    Box::new(r.add_values(a2, b2)),
                )
            }
            _ => unreachable!("shape checked by caller"),
        }
    }

    fn neg_value(&self, a: &Value) -> Value {
        match (self, a) {
            (RingDescriptor::Zmod(n), Value::Residue(x)) => Value::Residue((n - x) % n),
            (RingDescriptor::Quotient { base, .. }, Value::Poly(x)) => {
                Value::Poly(x.iter().map(|p| (base - p) % base).collect())
            }
            (RingDescriptor::Product(l, r), Value::Pair(a1, a2)) => {
                Value::Pair(Box::new(l.neg_value(a1)), Box::new(r.neg_value(a2)))
            }
            _ => unreachable!("shape checked by caller"),
        }
    }

    fn mul_values(&self, a: &Value, b: &Value) -> Value {
        match (self, a, b) {
            (RingDescriptor::Zmod(n), Value::Residue(x), Value::Residue(y)) => {
                Value::Residue(((*x as u128 * *y as u128) % *n as u128) as u64)
            }
            (RingDescriptor::Quotient { base, modulus }, Value::Poly(x), Value::Poly(y)) => {
                let n = *base as u128;
                let mut prod = vec![0u64; x.len() + y.len() - 1];
                for (i, &p) in x.iter().enumerate() {
                    if p == 0 {
                        continue;
                    }
                    for (j, &q) in y.iter().enumerate() {
                        prod[i + j] = ((prod[i + j] as u128 + p as u128 * q as u128) % n) as u64;
                    }
                }
                Value::Poly(reduce_poly(*base, modulus, prod))
            }
            (RingDescriptor::Product(l, r), Value::Pair(a1, a2), Value::Pair(b1, b2)) => {
                Value::Pair(
                    Box::new(l.mul_values(a1, b1)),
                    Box::new(r.mul_values(a2, b2)),
                )
            }
            _ => unreachable!("shape checked by caller"),
        }
    }
}

/// Reduces coefficients mod `n` and the polynomial mod the monic `modulus`,
/// returning exactly `deg(modulus)` coefficients.
fn reduce_poly(n: u64, modulus: &[u64], mut coeffs: Vec<u64>) -> Vec<u64> {
    let n128 = n as u128;
    let d = modulus.len() - 1;
    for c in coeffs.iter_mut() {
        *c %= n;
    }
    for k in (d..coeffs.len()).rev() {
        let lead = coeffs[k];
        if lead == 0 {
            continue;
        }
        coeffs[k] = 0;
        let minus_lead = (n - lead) as u128;
        for (i, &f) in modulus[..d].iter().enumerate() {
            let slot = &mut coeffs[k - d + i];
            *slot = ((*slot as u128 + minus_lead * f as u128) % n128) as u64;
        }
    }
    coeffs.resize(d, 0);
    coeffs
}

/// Structured form of an element: a residue, a coefficient vector (constant
/// term first), or a pair.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Value {
    Residue(u64),
    Poly(Vec<u64>),
    Pair(Box<Value>, Box<Value>),
}

impl Value {
    pub fn pair(left: Value, right: Value) -> Self {
        Value::Pair(Box::new(left), Box::new(right))
    }
}

impl fmt::Display for Value {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Value::Residue(r) => write!(f, "{r}"),
            Value::Poly(c) => write_poly(f, c),
            Value::Pair(a, b) => write!(f, "({a},{b})"),
        }
    }
}

/// Writes a polynomial highest degree first, e.g. `x^2+2*x+1`; the zero
/// polynomial prints as `0`.
pub(crate) fn write_poly(f: &mut fmt::Formatter<'_>, coeffs: &[u64]) -> fmt::Result {
    let mut first = true;
    for (deg, &c) in coeffs.iter().enumerate().rev() {
        if c == 0 {
            continue;
        }
        if !first {
            f.write_str("+")?;
        }
        first = false;
        match (deg, c) {
            (0, c) => write!(f, "{c}")?,
            (1, 1) => f.write_str("x")?,
            (1, c) => write!(f, "{c}*x")?,
            (d, 1) => write!(f, "x^{d}")?,
            (d, c) => write!(f, "{c}*x^{d}")?,
        }
    }
    if first {
        f.write_str("0")?;
    }
    Ok(())
}

impl fmt::Display for RingDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RingDescriptor::Zmod(n) => write!(f, "Z/{n}"),
            RingDescriptor::Quotient { base, modulus } => {
                write!(f, "Z/{base}[x]/(")?;
                write_poly(f, modulus)?;
                f.write_str(")")
            }
            RingDescriptor::Product(l, r) => match **r {
                RingDescriptor::Product(..) => write!(f, "{l} x ({r})"),
                _ => write!(f, "{l} x {r}"),
            },
        }
    }
}

struct Tables {
    add: Vec<u32>,
    mul: Vec<u32>,
    neg: Vec<u32>,
    /// `kernels[v]` is the set of `x` with `x * v = 0`.
    kernels: Vec<FixedBitSet>,
}

struct RingInner {
    descriptor: RingDescriptor,
    cardinality: usize,
    one: usize,
    tables: OnceLock<Option<Tables>>,
}

/// Handle to a finite commutative ring. Cheap to clone; immutable.
#[derive(Clone)]
pub struct Ring {
    inner: Arc<RingInner>,
}

/// Builds a ring from its descriptor.
pub fn make_ring(descriptor: &RingDescriptor) -> Result<Ring> {
    Ring::new(descriptor)
}

impl Ring {
    pub fn new(descriptor: &RingDescriptor) -> Result<Ring> {
        let descriptor = descriptor.canonicalize()?;
        let cardinality = descriptor
            .cardinality()
            .filter(|&c| c <= MAX_CARDINALITY)
            .ok_or(Error::RingTooLarge {
                max: MAX_CARDINALITY,
            })?;
        let one = descriptor.encode(&descriptor.one_value());
        Ok(Ring {
            inner: Arc::new(RingInner {
                descriptor,
                cardinality,
                one,
                tables: OnceLock::new(),
            }),
        })
    }

    /// The canonical descriptor of this ring.
    pub fn descriptor(&self) -> &RingDescriptor {
        &self.inner.descriptor
    }

    pub fn cardinality(&self) -> usize {
        self.inner.cardinality
    }

    pub fn zero(&self) -> Element {
        self.at(0)
    }

    pub fn one(&self) -> Element {
        self.at(self.inner.one)
    }

    /// Element at `index` in enumeration order.
    pub fn element(&self, index: usize) -> Option<Element> {
        (index < self.cardinality()).then(|| self.at(index))
    }

    pub(crate) fn at(&self, index: usize) -> Element {
        debug_assert!(index < self.cardinality());
        Element {
            ring: self.clone(),
            index,
        }
    }

    /// Every element exactly once, in enumeration order, starting at zero.
    pub fn elements(&self) -> impl Iterator<Item = Element> + '_ {
        (0..self.cardinality()).map(move |i| self.at(i))
    }

    /// Canonical element for a value of matching shape.
    pub fn from_value(&self, value: &Value) -> Result<Element> {
        let reduced = self.descriptor().reduce(value)?;
        Ok(self.at(self.descriptor().encode(&reduced)))
    }

    /// True if `a` is an element of this ring.
    pub fn contains(&self, a: &Element) -> bool {
        a.ring == *self
    }

    fn check(&self, a: &Element) -> Result<usize> {
        if self.contains(a) {
            Ok(a.index)
        } else {
            Err(Error::MixedRingOperands)
        }
    }

    pub fn add(&self, a: &Element, b: &Element) -> Result<Element> {
        let (a, b) = (self.check(a)?, self.check(b)?);
        Ok(self.at(self.add_index(a, b)))
    }

    pub fn mul(&self, a: &Element, b: &Element) -> Result<Element> {
        let (a, b) = (self.check(a)?, self.check(b)?);
        Ok(self.at(self.mul_index(a, b)))
    }

    pub fn neg(&self, a: &Element) -> Result<Element> {
        let a = self.check(a)?;
        Ok(self.at(self.neg_index(a)))
    }

    pub fn sub(&self, a: &Element, b: &Element) -> Result<Element> {
        let nb = self.neg(b)?;
        self.add(a, &nb)
    }

    pub fn eq(&self, a: &Element, b: &Element) -> Result<bool> {
        Ok(self.check(a)? == self.check(b)?)
    }

    pub fn is_zero(&self, a: &Element) -> Result<bool> {
        Ok(self.check(a)? == 0)
    }

    fn tables(&self) -> Option<&Tables> {
        self.inner
            .tables
            .get_or_init(|| (self.cardinality() <= TABLE_LIMIT).then(|| self.build_tables()))
            .as_ref()
    }

    fn build_tables(&self) -> Tables {
        let card = self.cardinality();
        let desc = self.descriptor();
        let values: Vec<Value> = (0..card).map(|i| desc.decode(i)).collect();
        let mut add = Vec::with_capacity(card * card);
        let mut mul = Vec::with_capacity(card * card);
        let mut kernels = vec![FixedBitSet::with_capacity(card); card];
        for (i, a) in values.iter().enumerate() {
            for (j, b) in values.iter().enumerate() {
                add.push(desc.encode(&desc.add_values(a, b)) as u32);
                let p = desc.encode(&desc.mul_values(a, b));
                if p == 0 {
                    kernels[j].insert(i);
                }
                mul.push(p as u32);
            }
        }
        let neg = values
            .iter()
            .map(|a| desc.encode(&desc.neg_value(a)) as u32)
            .collect();
        Tables {
            add,
            mul,
            neg,
            kernels,
        }
    }

    pub(crate) fn add_index(&self, a: usize, b: usize) -> usize {
        match self.tables() {
            Some(t) => t.add[a * self.cardinality() + b] as usize,
            None => {
                let d = self.descriptor();
                d.encode(&d.add_values(&d.decode(a), &d.decode(b)))
            }
        }
    }

    pub(crate) fn mul_index(&self, a: usize, b: usize) -> usize {
        match self.tables() {
            Some(t) => t.mul[a * self.cardinality() + b] as usize,
            None => {
                let d = self.descriptor();
                d.encode(&d.mul_values(&d.decode(a), &d.decode(b)))
            }
        }
    }

    pub(crate) fn neg_index(&self, a: usize) -> usize {
        match self.tables() {
            Some(t) => t.neg[a] as usize,
            None => {
                let d = self.descriptor();
                d.encode(&d.neg_value(&d.decode(a)))
            }
        }
    }

    /// Indices `x` with `x * v = 0`.
    pub(crate) fn kernel_of(&self, v: usize) -> FixedBitSet {
        match self.tables() {
            Some(t) => t.kernels[v].clone(),
            None => {
                let mut set = FixedBitSet::with_capacity(self.cardinality());
                for x in 0..self.cardinality() {
                    if self.mul_index(x, v) == 0 {
                        set.insert(x);
                    }
                }
                set
            }
        }
    }

    /// True when `x * v = 0` only for `x = 0`.
    pub(crate) fn is_regular_index(&self, v: usize) -> bool {
        match self.tables() {
            Some(t) => t.kernels[v].count_ones(..) == 1,
            None => (1..self.cardinality()).all(|x| self.mul_index(x, v) != 0),
        }
    }
}

impl PartialEq for Ring {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.inner, &other.inner) || self.inner.descriptor == other.inner.descriptor
    }
}

impl Eq for Ring {}

impl fmt::Debug for Ring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Ring({})", self.descriptor())
    }
}

impl fmt::Display for Ring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.descriptor().fmt(f)
    }
}

/// A canonical element of a specific ring, stored as its enumeration index.
#[derive(Clone)]
pub struct Element {
    ring: Ring,
    index: usize,
}

impl Element {
    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    /// Position in the ring's enumeration order.
    pub fn index(&self) -> usize {
        self.index
    }

    pub fn is_zero(&self) -> bool {
        self.index == 0
    }

    /// The fully reduced structured form.
    pub fn value(&self) -> Value {
        self.ring.descriptor().decode(self.index)
    }
}

impl PartialEq for Element {
    fn eq(&self, other: &Self) -> bool {
        self.index == other.index && self.ring == other.ring
    }
}

impl Eq for Element {}

impl Hash for Element {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.index.hash(state);
    }
}

impl PartialOrd for Element {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Enumeration order within a ring; elements of different rings fall back to
/// comparing descriptors.
impl Ord for Element {
    fn cmp(&self, other: &Self) -> Ordering {
        self.index.cmp(&other.index).then_with(|| {
            if self.ring == other.ring {
                Ordering::Equal
            } else {
                self.ring.descriptor().cmp(other.ring.descriptor())
            }
        })
    }
}

impl fmt::Display for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.value().fmt(f)
    }
}

impl fmt::Debug for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} in {}", self, self.ring.descriptor())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn zmod(n: u64) -> Ring {
        Ring::new(&RingDescriptor::zmod(n)).unwrap()
    }

    fn el(r: &Ring, v: Value) -> Element {
        r.from_value(&v).unwrap()
    }

    #[test]
    fn cardinalities() {
        assert_eq!(zmod(6).cardinality(), 6);
        let q = Ring::new(&RingDescriptor::quotient(2, vec![1, 1, 1])).unwrap();
        assert_eq!(q.cardinality(), 4);
        let p = Ring::new(&RingDescriptor::product(
            RingDescriptor::zmod(2),
            RingDescriptor::zmod(3),
        ))
        .unwrap();
        assert_eq!(p.cardinality(), 6);
    }

    #[test]
    fn construction_errors() {
        assert_eq!(
            Ring::new(&RingDescriptor::zmod(1)).unwrap_err(),
            Error::ModulusTooSmall(1)
        );
        assert_eq!(
            Ring::new(&RingDescriptor::quotient(4, vec![1, 1, 2])).unwrap_err(),
            Error::NonMonicModulus
        );
        assert_eq!(
            Ring::new(&RingDescriptor::quotient(3, vec![2])).unwrap_err(),
            Error::DegreeZeroModulus
        );
        // 3*x^2 + 1 over Z/3 collapses to the constant 1.
        assert_eq!(
            Ring::new(&RingDescriptor::quotient(3, vec![1, 0, 3])).unwrap_err(),
            Error::DegreeZeroModulus
        );
        assert!(matches!(
            Ring::new(&RingDescriptor::quotient(2, vec![0; 40].into_iter().chain([1]).collect())),
            Err(Error::RingTooLarge { .. })
        ));
    }

    #[test]
    fn modulus_is_reduced_before_the_monic_check() {
        let r = Ring::new(&RingDescriptor::quotient(2, vec![1, 0, 3])).unwrap();
        assert_eq!(
            r.descriptor(),
            &RingDescriptor::quotient(2, vec![1, 0, 1])
        );
    }

    #[test]
    fn enumeration_orders() {
        let z4: Vec<String> = zmod(4).elements().map(|e| e.to_string()).collect();
        assert_eq!(z4, ["0", "1", "2", "3"]);

        let q = Ring::new(&RingDescriptor::quotient(2, vec![0, 0, 1])).unwrap();
        let listed: Vec<String> = q.elements().map(|e| e.to_string()).collect();
        assert_eq!(listed, ["0", "1", "x", "x+1"]);

        let p = Ring::new(&RingDescriptor::product(
            RingDescriptor::zmod(2),
            RingDescriptor::zmod(2),
        ))
        .unwrap();
        let listed: Vec<String> = p.elements().map(|e| e.to_string()).collect();
        assert_eq!(listed, ["(0,0)", "(0,1)", "(1,0)", "(1,1)"]);
    }

    #[test]
    fn small_arithmetic() {
        let z6 = zmod(6);
        let (two, three) = (el(&z6, Value::Residue(2)), el(&z6, Value::Residue(3)));
        assert_eq!(z6.add(&two, &three).unwrap().to_string(), "5");
        assert!(z6.mul(&two, &three).unwrap().is_zero());
        assert_eq!(z6.neg(&two).unwrap().to_string(), "4");

        let q = Ring::new(&RingDescriptor::quotient(2, vec![0, 0, 1])).unwrap();
        let x = el(&q, Value::Poly(vec![0, 1]));
        assert!(q.mul(&x, &x).unwrap().is_zero());

        let p = Ring::new(&RingDescriptor::product(
            RingDescriptor::zmod(2),
            RingDescriptor::zmod(3),
        ))
        .unwrap();
        let a = el(&p, Value::pair(Value::Residue(1), Value::Residue(2)));
        assert_eq!(p.mul(&a, &a).unwrap().to_string(), "(1,1)");
    }

    #[test]
    fn quotient_reduction() {
        let q = Ring::new(&RingDescriptor::quotient(2, vec![1, 1, 1])).unwrap();
        let x2 = el(&q, Value::Poly(vec![0, 0, 1]));
        assert_eq!(x2.to_string(), "x+1");
        // x^3 = 1 in F_4.
        let x3 = el(&q, Value::Poly(vec![0, 0, 0, 1]));
        assert_eq!(x3, q.one());
    }

    #[test]
    fn mixed_rings_are_rejected() {
        let (a, b) = (zmod(6), zmod(7));
        assert_eq!(
            a.add(&a.one(), &b.one()).unwrap_err(),
            Error::MixedRingOperands
        );
        assert_ne!(a.one(), b.one());
        // Two handles on the same descriptor are the same ring.
        let a2 = zmod(6);
        assert_eq!(a.mul(&a.one(), &a2.one()).unwrap(), a.one());
    }

    #[test]
    fn shape_mismatch() {
        assert_eq!(
            zmod(6).from_value(&Value::Poly(vec![1])).unwrap_err(),
            Error::ShapeMismatch
        );
    }

    #[test]
    fn untabled_ring_matches_structural_arithmetic() {
        // 2048 elements, above the table limit.
        let big = Ring::new(&RingDescriptor::product(
            RingDescriptor::zmod(32),
            RingDescriptor::zmod(64),
        ))
        .unwrap();
        assert!(big.tables().is_none());
        let a = el(&big, Value::pair(Value::Residue(6), Value::Residue(40)));
        let b = el(&big, Value::pair(Value::Residue(16), Value::Residue(8)));
        assert_eq!(big.mul(&a, &b).unwrap().to_string(), "(0,0)");
        assert_eq!(big.add(&a, &b).unwrap().to_string(), "(22,48)");
        assert!(!big.is_regular_index(a.index()));
        assert!(big.is_regular_index(big.one().index()));
    }
}
