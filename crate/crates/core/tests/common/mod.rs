#![allow(dead_code)]

use nci::oracle::min_nilpotency_exponent;
use nci::poly::{is_inverse_pair, Polynomial};
use nci::ring::{Elem, FiniteRing};
use rand::Rng;

pub fn zn(n: u32) -> FiniteRing {
    FiniteRing::modular(n).unwrap()
}

pub fn ring(desc: &str) -> FiniteRing {
    desc.parse().unwrap()
}

/// Cyclic rings and products that fit in `max_size` elements.
pub fn rings_up_to(max_size: u32) -> Vec<FiniteRing> {
    let mut rings: Vec<FiniteRing> = (1..=max_size).map(zn).collect();
    for a in 2..=max_size {
        for b in a..=max_size / a {
            rings.push(FiniteRing::product(zn(a), zn(b)).unwrap());
        }
    }
    for desc in ["prod:zn:2,prod:zn:2,zn:2", "prod:zn:2,prod:zn:2,zn:3", "prod:zn:2,prod:zn:2,zn:4"] {
        let r = ring(desc);
        if r.size() <= max_size {
            rings.push(r);
        }
    }
    rings
}

/// Nilpotent elements other than 0 and 1.
pub fn nontrivial_nilpotents(ring: &FiniteRing) -> Vec<Elem> {
    ring.elements()
        .filter(|&r| r != ring.zero() && r != ring.one() && min_nilpotency_exponent(ring, r).is_some())
        .collect()
}

/// A unit of degree `1..=max_degree` with a nonzero top coefficient, and its
/// inverse. Requires a ring with nonzero nilpotents.
pub fn random_unit_pair(rng: &mut impl Rng, ring: &FiniteRing, max_degree: usize) -> (Polynomial, Polynomial) {
    let units: Vec<Elem> = ring.elements().filter(|&u| ring.elements().any(|v| ring.mul(u, v) == ring.one())).collect();
    let nil = nontrivial_nilpotents(ring);
    let mut nil0 = nil.clone();
    nil0.push(ring.zero());
    let degree = rng.gen_range(1..=max_degree);
    let mut coeffs = vec![units[rng.gen_range(0..units.len())]];
    for _ in 1..degree {
        coeffs.push(nil0[rng.gen_range(0..nil0.len())]);
    }
    coeffs.push(nil[rng.gen_range(0..nil.len())]);
    let f = Polynomial::new(coeffs);
    let g = series_inverse(ring, &f);
    assert!(is_inverse_pair(ring, &f, &g), "{} has no polynomial inverse", f.display(ring));
    (f, g)
}

/// Inverse of a unit polynomial, grown term by term until the product is 1.
pub fn series_inverse(ring: &FiniteRing, f: &Polynomial) -> Polynomial {
    let a0_inv = ring.elements().find(|&u| ring.mul(u, f.coeff(0)) == ring.one()).expect("unit constant term");
    let mut b = vec![a0_inv];
    for k in 1..256 {
        let g = Polynomial::new(b.clone()).normalized();
        if is_inverse_pair(ring, f, &g) {
            return g;
        }
        let s = ring.sum((1..=k).map(|j| ring.mul(f.coeff(j), b[k - j])));
        b.push(ring.neg(ring.mul(a0_inv, s)));
    }
    panic!("no polynomial inverse within 256 terms");
}
