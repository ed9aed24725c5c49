//! Brute-force ground truth on small finite rings.

use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::generation::ideal_closure;
use crate::ring::{Elem, ElementSet, Enumeration, FiniteRing};

/// Largest ring [`all_ideals`] will enumerate by default.
pub const DEFAULT_IDEAL_BOUND: u32 = 30;

/// Least `e > 0` with `r^e = 0`, or `None` when the powers of `r` cycle
/// without reaching 0.
pub fn min_nilpotency_exponent(ring: &FiniteRing, r: Elem) -> Option<u64> {
    let mut seen = ElementSet::empty(ring);
    let mut power = r;
    let mut e = 1;
    loop {
        if power == ring.zero() {
            return Some(e);
        }
        if !seen.insert(power) {
            return None;
        }
        power = ring.mul(power, r);
        e += 1;
    }
}

pub fn nilradical(ring: &FiniteRing) -> ElementSet {
    ElementSet::from_elems(ring, ring.elements().filter(|&x| min_nilpotency_exponent(ring, x).is_some()))
}

pub fn is_ideal(ring: &FiniteRing, set: &ElementSet) -> bool {
    set.contains(ring.zero())
        && set.iter().all(|a| {
            set.iter().all(|b| set.contains(ring.add(a, b))) && ring.elements().all(|y| set.contains(ring.mul(a, y)))
        })
}

/// Every ideal, smallest first. Ideals are reached by closing `{0}` under
/// adjoining one element at a time.
pub fn all_ideals(ring: &FiniteRing, bound: u32) -> Result<Vec<ElementSet>> {
    if ring.size() > bound {
        return Err(Error::SizeBoundExceeded { size: ring.size(), bound });
    }
    let mut found = BTreeSet::new();
    let mut pending = vec![ideal_closure(ring, [])];
    while let Some(ideal) = pending.pop() {
        if !found.insert(ideal.clone()) {
            continue;
        }
        for x in ring.elements().filter(|&x| !ideal.contains(x)) {
            let bigger = ideal_closure(ring, ideal.iter().chain([x]));
            if !found.contains(&bigger) {
                pending.push(bigger);
            }
        }
    }
    let mut ideals: Vec<ElementSet> = found.into_iter().collect();
    ideals.sort_by_key(|i| (i.len(), i.iter().collect::<Vec<_>>()));
    Ok(ideals)
}

/// Proper, and `x·y ∈ I` implies `x ∈ I` or `y ∈ I`.
pub fn is_prime_ideal(ring: &FiniteRing, ideal: &ElementSet) -> bool {
    if ideal.contains(ring.one()) {
        return false;
    }
    ring.elements()
        .all(|x| ideal.contains(x) || ring.elements().all(|y| ideal.contains(y) || !ideal.contains(ring.mul(x, y))))
}

pub fn prime_ideals(ring: &FiniteRing, bound: u32) -> Result<Vec<ElementSet>> {
    Ok(all_ideals(ring, bound)?.into_iter().filter(|i| is_prime_ideal(ring, i)).collect())
}

/// Intersection of all prime ideals; the whole ring when there are none.
pub fn prime_intersection(ring: &FiniteRing, bound: u32) -> Result<ElementSet> {
    Ok(prime_ideals(ring, bound)?.iter().fold(ElementSet::full(ring), |acc, p| acc.intersect(p)))
}

pub fn prime_intersection_equals_nilradical(ring: &FiniteRing, bound: u32) -> Result<bool> {
    Ok(prime_intersection(ring, bound)? == nilradical(ring))
}

/// Builds `M` index by index: `x_n ∈ M` iff `q` holds on every element of
/// the ideal generated by `M↾n ∪ {x_n}`.
pub fn greedy_maximal(enumeration: &Enumeration, q: impl Fn(Elem) -> bool) -> Result<ElementSet> {
    let ring = enumeration.ring();
    if !ideal_closure(ring, []).iter().all(&q) {
        return Err(Error::EmptyClosureRejected);
    }
    let mut chosen = ElementSet::empty(ring);
    for &x in enumeration.elements() {
        let extended = ideal_closure(ring, chosen.iter().chain([x]));
        if extended.iter().all(&q) {
            chosen.insert(x);
        }
    }
    Ok(chosen)
}

/// The three maximality clauses: `M` is an ideal, `q` holds on `M`, and
/// adjoining any outside element produces an ideal on which `q` fails.
pub fn is_maximal(ring: &FiniteRing, set: &ElementSet, q: impl Fn(Elem) -> bool) -> bool {
    ideal_closure(ring, set.iter()) == *set
        && set.iter().all(&q)
        && ring
            .elements()
            .filter(|&x| !set.contains(x))
            .all(|x| !ideal_closure(ring, set.iter().chain([x])).iter().all(&q))
}

/// Every element `r^e` with `e > 0`.
pub fn powers(ring: &FiniteRing, r: Elem) -> ElementSet {
    let mut set = ElementSet::empty(ring);
    let mut p = r;
    while set.insert(p) {
        p = ring.mul(p, r);
    }
    set
}

#[cfg(test)]
mod tests {
    use super::*;

    fn zn(n: u32) -> FiniteRing {
        FiniteRing::modular(n).unwrap()
    }

    fn set(ring: &FiniteRing, v: &[u32]) -> ElementSet {
        ElementSet::from_elems(ring, v.iter().copied().map(Elem))
    }

    #[test]
    fn min_exponents() {
        assert_eq!(min_nilpotency_exponent(&zn(4), Elem(2)), Some(2));
        assert_eq!(min_nilpotency_exponent(&zn(8), Elem(2)), Some(3));
        assert_eq!(min_nilpotency_exponent(&zn(9), Elem(0)), Some(1));
        assert_eq!(min_nilpotency_exponent(&zn(6), Elem(2)), None);
        assert_eq!(min_nilpotency_exponent(&zn(5), Elem(1)), None);
        assert_eq!(min_nilpotency_exponent(&zn(1), Elem(0)), Some(1));
    }

    #[test]
    fn ideals_of_cyclic_rings() {
        let z4 = zn(4);
        assert_eq!(all_ideals(&z4, 30).unwrap(), vec![set(&z4, &[0]), set(&z4, &[0, 2]), ElementSet::full(&z4)]);
        let z2 = zn(2);
        assert_eq!(all_ideals(&z2, 30).unwrap(), vec![set(&z2, &[0]), ElementSet::full(&z2)]);
        let z6 = zn(6);
        assert_eq!(
            all_ideals(&z6, 30).unwrap(),
            vec![set(&z6, &[0]), set(&z6, &[0, 3]), set(&z6, &[0, 2, 4]), ElementSet::full(&z6)]
        );
        assert_eq!(all_ideals(&zn(31), 30), Err(Error::SizeBoundExceeded { size: 31, bound: 30 }));
    }

    #[test]
    fn ideal_count_matches_divisor_count() {
        for n in 1..=30u32 {
            let divisors = (1..=n).filter(|d| n % d == 0).count();
            assert_eq!(all_ideals(&zn(n), 30).unwrap().len(), divisors, "ℤ_{n}");
        }
    }

    #[test]
    fn primality() {
        let z4 = zn(4);
        assert!(is_prime_ideal(&z4, &set(&z4, &[0, 2])));
        assert!(!is_prime_ideal(&z4, &set(&z4, &[0])));
        assert!(!is_prime_ideal(&z4, &ElementSet::full(&z4)));
    }

    #[test]
    fn nilradical_equals_prime_intersection() {
        let z4 = zn(4);
        assert_eq!(nilradical(&z4), set(&z4, &[0, 2]));
        assert!(prime_intersection_equals_nilradical(&z4, 30).unwrap());
        assert!(prime_intersection_equals_nilradical(&zn(2), 30).unwrap());
        let z12 = zn(12);
        assert_eq!(nilradical(&z12), set(&z12, &[0, 6]));
        assert!(prime_intersection_equals_nilradical(&z12, 30).unwrap());
        let z1 = zn(1);
        assert!(prime_ideals(&z1, 30).unwrap().is_empty());
        assert!(prime_intersection_equals_nilradical(&z1, 30).unwrap());
    }

    #[test]
    fn product_ring_nilpotents() {
        let r = FiniteRing::product(zn(4), zn(2)).unwrap();
        // (0,0) = 0 and (2,0) = 4
        assert_eq!(nilradical(&r), set(&r, &[0, 4]));
        let r = FiniteRing::product(zn(2), zn(3)).unwrap();
        assert_eq!(nilradical(&r), set(&r, &[0]));
    }

    #[test]
    fn greedy_prime_avoiding_powers() {
        let z6 = zn(6);
        let e = Enumeration::with_target(&z6, Elem(2)).unwrap();
        let avoid = powers(&z6, Elem(2));
        let q = |x: Elem| !avoid.contains(x);
        let m = greedy_maximal(&e, q).unwrap();
        assert_eq!(m, set(&z6, &[0, 3]));
        assert!(is_prime_ideal(&z6, &m));
        assert!(is_maximal(&z6, &m, q));
    }

    #[test]
    fn greedy_maximal_ideal() {
        let z4 = zn(4);
        let q = |x: Elem| x != z4.one();
        let m = greedy_maximal(&Enumeration::canonical(&z4), q).unwrap();
        assert_eq!(m, set(&z4, &[0, 2]));
        assert!(is_maximal(&z4, &m, q));
    }

    #[test]
    fn greedy_requires_predicate_on_zero_ideal() {
        let z1 = zn(1);
        let q = |x: Elem| x != z1.one();
        assert_eq!(greedy_maximal(&Enumeration::canonical(&z1), q), Err(Error::EmptyClosureRejected));
    }
}
