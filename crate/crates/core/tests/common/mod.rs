//! Test corpus and brute-force oracles shared by the integration tests.
//!
//! The oracles use only element arithmetic and ordered sets of enumeration
//! indices, never the bitset paths of the library.

#![allow(dead_code)]

use std::collections::BTreeSet;

use rand::{Rng as _, SeedableRng};
use rand_chacha::ChaCha8Rng;
use regelem::{Element, Ring, RingDescriptor};

pub const CORPUS_SEED: u64 = 0x5EED_0001;
pub const IDEALS_PER_RING: usize = 25;

pub fn ring(d: RingDescriptor) -> Ring {
    Ring::new(&d).expect("corpus descriptor is valid")
}

/// All `Z/n` for `2 <= n <= 36`, all `Z/a x Z/b` with `a*b <= 100`, and all
/// `Z/p[x]/(f)` for `p` in {2, 3, 5} and monic `f` of degree 2 or 3 with at
/// most 125 elements.
pub fn corpus_descriptors() -> Vec<RingDescriptor> {
    let mut out = Vec::new();
    for n in 2..=36 {
        out.push(RingDescriptor::zmod(n));
    }
    for a in 2..=50u64 {
        for b in 2..=50u64 {
            if a * b <= 100 {
                out.push(RingDescriptor::product(
                    RingDescriptor::zmod(a),
                    RingDescriptor::zmod(b),
                ));
            }
        }
    }
    for p in [2u64, 3, 5] {
        for d in 2..=3u32 {
            if p.pow(d) > 125 {
                continue;
            }
            for code in 0..p.pow(d) {
                let mut coeffs: Vec<u64> = (0..d).map(|i| (code / p.pow(i)) % p).collect();
                coeffs.push(1);
                out.push(RingDescriptor::quotient(p, coeffs));
            }
        }
    }
    out
}

pub fn corpus_rings() -> Vec<Ring> {
    corpus_descriptors().into_iter().map(ring).collect()
}

pub fn random_element(r: &Ring, rng: &mut ChaCha8Rng) -> Element {
    r.element(rng.gen_range(0..r.cardinality())).unwrap()
}

/// 25 seeded generator lists of size 1 to 4, then the unit ideal `<1>`.
pub fn corpus_ideals(r: &Ring, ring_index: usize) -> Vec<Vec<Element>> {
    let mut rng = ChaCha8Rng::seed_from_u64(CORPUS_SEED ^ (ring_index as u64).wrapping_mul(0x9E37_79B9));
    let mut out: Vec<Vec<Element>> = (0..IDEALS_PER_RING)
        .map(|_| {
            let len = rng.gen_range(1..=4);
            (0..len).map(|_| random_element(r, &mut rng)).collect()
        })
        .collect();
    out.push(vec![r.one()]);
    out
}

pub fn idx(xs: impl IntoIterator<Item = Element>) -> BTreeSet<usize> {
    xs.into_iter().map(|e| e.index()).collect()
}

pub fn naive_ann(r: &Ring, v: &Element) -> BTreeSet<usize> {
    r.elements()
        .filter(|x| r.mul(x, v).unwrap().is_zero())
        .map(|x| x.index())
        .collect()
}

/// Worklist closure of `{r*g}` under addition.
pub fn naive_span(r: &Ring, gens: &[Element]) -> BTreeSet<usize> {
    let mut set: BTreeSet<usize> = BTreeSet::from([0]);
    let mut work: Vec<Element> = Vec::new();
    for g in gens {
        for x in r.elements() {
            let m = r.mul(&x, g).unwrap();
            if set.insert(m.index()) {
                work.push(m);
            }
        }
    }
    while let Some(a) = work.pop() {
        let current: Vec<usize> = set.iter().copied().collect();
        for b in current {
            let s = r.add(&a, &r.element(b).unwrap()).unwrap();
            if set.insert(s.index()) {
                work.push(s);
            }
        }
    }
    set
}

pub fn naive_is_prime(r: &Ring, ideal: &BTreeSet<usize>) -> bool {
    if ideal.contains(&r.one().index()) {
        return false;
    }
    r.elements().all(|a| {
        r.elements().all(|b| {
            let ab = r.mul(&a, &b).unwrap().index();
            !ideal.contains(&ab) || ideal.contains(&a.index()) || ideal.contains(&b.index())
        })
    })
}

/// Inclusion-maximal annihilators of nonzero elements, keyed by first source.
pub fn naive_maximal_orthogonal(r: &Ring) -> Vec<(usize, BTreeSet<usize>)> {
    let anns: Vec<(usize, BTreeSet<usize>)> = r
        .elements()
        .filter(|v| !v.is_zero())
        .map(|v| (v.index(), naive_ann(r, &v)))
        .collect();
    let mut out: Vec<(usize, BTreeSet<usize>)> = Vec::new();
    for (v, a) in &anns {
        let dominated = anns.iter().any(|(_, b)| a.is_subset(b) && a != b);
        if !dominated && !out.iter().any(|(_, b)| b == a) {
            out.push((*v, a.clone()));
        }
    }
    out
}

pub fn naive_is_regular(r: &Ring, a: &Element) -> bool {
    r.elements()
        .filter(|x| !x.is_zero())
        .all(|x| !r.mul(&x, a).unwrap().is_zero())
}

pub fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}
