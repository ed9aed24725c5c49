//! Finite commutative rings, their elements, and enumerations.
//!
//! Elements are canonical indices in `[0, size)`. They carry no reference to
//! their ring; every operation interprets its arguments against the ring it
//! is called on and panics when handed an index the ring does not contain.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// An element of a [`FiniteRing`], identified by its canonical index.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Elem(pub u32);

impl Elem {
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

impl fmt::Display for Elem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
enum Kind {
    Modular(u32),
    Product(Box<FiniteRing>, Box<FiniteRing>),
}

/// A finite commutative ring with identity: `ℤ_n` or a product of two
/// finite rings.
///
/// Product elements `(a, b)` have canonical index `a · |B| + b`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FiniteRing {
    kind: Kind,
    size: u32,
}

impl FiniteRing {
    /// `ℤ_n` with arithmetic mod `n`.
    pub fn modular(n: u32) -> Result<Self> {
        if n == 0 {
            return Err(Error::ZeroModulus);
        }
        Ok(FiniteRing { kind: Kind::Modular(n), size: n })
    }

    /// The componentwise product ring `a × b`.
    pub fn product(a: FiniteRing, b: FiniteRing) -> Result<Self> {
        let size = a.size.checked_mul(b.size).ok_or(Error::RingTooLarge)?;
        Ok(FiniteRing { kind: Kind::Product(Box::new(a), Box::new(b)), size })
    }

    pub fn size(&self) -> u32 {
        self.size
    }

    /// Never 0: every ring has at least the element 0.
    #[allow(clippy::len_without_is_empty)]
    pub fn len(&self) -> usize {
        self.size as usize
    }

    /// True only for the zero ring, where `0 = 1`.
    pub fn is_zero_ring(&self) -> bool {
        self.size == 1
    }

    pub fn contains(&self, x: Elem) -> bool {
        x.0 < self.size
    }

    pub fn element(&self, index: u64) -> Result<Elem> {
        if index < u64::from(self.size) {
            Ok(Elem(index as u32))
        } else {
            Err(Error::ElementOutOfRange { index, size: self.size })
        }
    }

    pub fn elements(&self) -> impl Iterator<Item = Elem> + Clone {
        (0..self.size).map(Elem)
    }

    #[inline]
    fn check(&self, x: Elem) {
        assert!(x.0 < self.size, "element {} used with a ring of size {}", x.0, self.size);
    }

    fn split(b: &FiniteRing, x: Elem) -> (Elem, Elem) {
        (Elem(x.0 / b.size), Elem(x.0 % b.size))
    }

    fn join(b: &FiniteRing, hi: Elem, lo: Elem) -> Elem {
        Elem(hi.0 * b.size + lo.0)
    }

    pub fn zero(&self) -> Elem {
        Elem(0)
    }

    pub fn one(&self) -> Elem {
        match &self.kind {
            Kind::Modular(n) => Elem(1 % n),
            Kind::Product(a, b) => Self::join(b, a.one(), b.one()),
        }
    }

    pub fn add(&self, x: Elem, y: Elem) -> Elem {
        self.check(x);
        self.check(y);
        match &self.kind {
            Kind::Modular(n) => Elem(((u64::from(x.0) + u64::from(y.0)) % u64::from(*n)) as u32),
            Kind::Product(a, b) => {
                let (x1, x2) = Self::split(b, x);
                let (y1, y2) = Self::split(b, y);
                Self::join(b, a.add(x1, y1), b.add(x2, y2))
            }
        }
    }

    pub fn mul(&self, x: Elem, y: Elem) -> Elem {
        self.check(x);
        self.check(y);
        match &self.kind {
            Kind::Modular(n) => Elem(((u64::from(x.0) * u64::from(y.0)) % u64::from(*n)) as u32),
            Kind::Product(a, b) => {
                let (x1, x2) = Self::split(b, x);
                let (y1, y2) = Self::split(b, y);
                Self::join(b, a.mul(x1, y1), b.mul(x2, y2))
            }
        }
    }

    pub fn neg(&self, x: Elem) -> Elem {
        self.check(x);
        match &self.kind {
            Kind::Modular(n) => Elem((n - x.0) % n),
            Kind::Product(a, b) => {
                let (x1, x2) = Self::split(b, x);
                Self::join(b, a.neg(x1), b.neg(x2))
            }
        }
    }

    pub fn sub(&self, x: Elem, y: Elem) -> Elem {
        self.add(x, self.neg(y))
    }

    /// `x^e` by repeated squaring; `x^0 = 1`.
    pub fn pow(&self, x: Elem, mut e: u64) -> Elem {
        let mut base = x;
        let mut acc = self.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    pub fn sum(&self, items: impl IntoIterator<Item = Elem>) -> Elem {
        items.into_iter().fold(self.zero(), |acc, x| self.add(acc, x))
    }

    /// Human-readable form: plain residues for `ℤ_n`, tuples for products.
    pub fn display(&self, x: Elem) -> String {
        self.check(x);
        match &self.kind {
            Kind::Modular(_) => x.0.to_string(),
            Kind::Product(a, b) => {
                let (x1, x2) = Self::split(b, x);
                format!("({},{})", a.display(x1), b.display(x2))
            }
        }
    }

    /// Parses a canonical element index.
    pub fn parse_element(&self, text: &str) -> Result<Elem> {
        let index: u64 =
            text.trim().parse().map_err(|e| Error::ElementParse { input: text.to_string(), reason: format!("{e}") })?;
        self.element(index)
    }
}

impl fmt::Display for FiniteRing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.kind {
            Kind::Modular(n) => write!(f, "zn:{n}"),
            Kind::Product(a, b) => write!(f, "prod:{a},{b}"),
        }
    }
}

/// Parses `zn:<n>` and `prod:<desc>,<desc>` (prefix notation, so products
/// nest without brackets: `prod:prod:zn:2,zn:2,zn:3`).
impl FromStr for FiniteRing {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let fail = |reason: &str| Error::RingParse { input: s.to_string(), reason: reason.to_string() };
        let (ring, rest) = parse_descriptor(s.trim()).map_err(|r| match r {
            Error::ZeroModulus => fail("modulus must be positive"),
            Error::RingParse { reason, .. } => fail(&reason),
            other => other,
        })?;
        if !rest.is_empty() {
            return Err(fail(&format!("trailing input {rest:?}")));
        }
        Ok(ring)
    }
}

fn parse_descriptor(s: &str) -> Result<(FiniteRing, &str)> {
    let bad = |reason: String| Error::RingParse { input: s.to_string(), reason };
    if let Some(rest) = s.strip_prefix("zn:") {
        let end = rest.find(|c: char| !c.is_ascii_digit()).unwrap_or(rest.len());
        if end == 0 {
            return Err(bad("expected a modulus after `zn:`".into()));
        }
        let n: u32 = rest[..end].parse().map_err(|e| bad(format!("{e}")))?;
        Ok((FiniteRing::modular(n)?, &rest[end..]))
    } else if let Some(rest) = s.strip_prefix("prod:") {
        let (a, rest) = parse_descriptor(rest)?;
        let rest = rest.strip_prefix(',').ok_or_else(|| bad("expected `,` between product factors".into()))?;
        let (b, rest) = parse_descriptor(rest)?;
        Ok((FiniteRing::product(a, b)?, rest))
    } else {
        Err(bad("expected `zn:` or `prod:`".into()))
    }
}

/// A subset of a finite ring, stored as a membership mask over canonical
/// indices.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ElementSet {
    mask: Vec<bool>,
}

impl ElementSet {
    pub fn empty(ring: &FiniteRing) -> Self {
        ElementSet { mask: vec![false; ring.len()] }
    }

    pub fn full(ring: &FiniteRing) -> Self {
        ElementSet { mask: vec![true; ring.len()] }
    }

    pub fn from_elems(ring: &FiniteRing, elems: impl IntoIterator<Item = Elem>) -> Self {
        let mut set = Self::empty(ring);
        for x in elems {
            set.insert(x);
        }
        set
    }

    /// Number of elements of the ambient ring.
    pub fn universe(&self) -> usize {
        self.mask.len()
    }

    pub fn contains(&self, x: Elem) -> bool {
        self.mask[x.index()]
    }

    /// Returns true if `x` was not already present.
    pub fn insert(&mut self, x: Elem) -> bool {
        !std::mem::replace(&mut self.mask[x.index()], true)
    }

    pub fn remove(&mut self, x: Elem) -> bool {
        std::mem::replace(&mut self.mask[x.index()], false)
    }

    pub fn len(&self) -> usize {
        self.mask.iter().filter(|&&b| b).count()
    }

    pub fn is_empty(&self) -> bool {
        !self.mask.iter().any(|&b| b)
    }

    pub fn iter(&self) -> impl Iterator<Item = Elem> + '_ {
        self.mask.iter().enumerate().filter(|(_, &b)| b).map(|(i, _)| Elem(i as u32))
    }

    pub fn is_subset(&self, other: &ElementSet) -> bool {
        self.mask.iter().zip(&other.mask).all(|(&a, &b)| !a || b)
    }

    pub fn intersect(&self, other: &ElementSet) -> ElementSet {
        ElementSet { mask: self.mask.iter().zip(&other.mask).map(|(&a, &b)| a && b).collect() }
    }

    pub fn complement(&self) -> ElementSet {
        ElementSet { mask: self.mask.iter().map(|&b| !b).collect() }
    }

    pub fn display(&self, ring: &FiniteRing) -> String {
        let items: Vec<String> = self.iter().map(|x| ring.display(x)).collect();
        format!("{{{}}}", items.join(", "))
    }
}

/// An indexed listing `x₀, x₁, …` of every ring element.
///
/// Enumerations built by [`Enumeration::with_target`] place `0`, `1` and the
/// target `r` at indices 0, 1, 2 and list the remaining elements in
/// ascending canonical order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Enumeration {
    ring: FiniteRing,
    order: Vec<Elem>,
    position: Vec<usize>,
    target: Option<Elem>,
}

impl Enumeration {
    /// `x_n` is the element with canonical index `n`.
    pub fn canonical(ring: &FiniteRing) -> Self {
        let order: Vec<Elem> = ring.elements().collect();
        Self::from_order(ring, order, None)
    }

    /// Fails with [`Error::TrivialTarget`] when `r ∈ {0, 1}`; callers are
    /// expected to short-circuit those cases.
    pub fn with_target(ring: &FiniteRing, r: Elem) -> Result<Self> {
        if !ring.contains(r) {
            return Err(Error::ElementOutOfRange { index: u64::from(r.0), size: ring.size() });
        }
        let (zero, one) = (ring.zero(), ring.one());
        if r == zero || r == one {
            return Err(Error::TrivialTarget);
        }
        let mut order = vec![zero, one, r];
        order.extend(ring.elements().filter(|&x| x != zero && x != one && x != r));
        Ok(Self::from_order(ring, order, Some(r)))
    }

    fn from_order(ring: &FiniteRing, order: Vec<Elem>, target: Option<Elem>) -> Self {
        let mut position = vec![usize::MAX; ring.len()];
        for (i, x) in order.iter().enumerate() {
            position[x.index()] = i;
        }
        debug_assert!(position.iter().all(|&p| p != usize::MAX));
        Enumeration { ring: ring.clone(), order, position, target }
    }

    pub fn ring(&self) -> &FiniteRing {
        &self.ring
    }

    pub fn target(&self) -> Option<Elem> {
        self.target
    }

    pub fn len(&self) -> usize {
        self.order.len()
    }

    pub fn is_empty(&self) -> bool {
        self.order.is_empty()
    }

    /// `x_n`. Panics when `n` is out of range.
    pub fn get(&self, n: usize) -> Elem {
        self.order[n]
    }

    pub fn index_of(&self, x: Elem) -> usize {
        self.position[x.index()]
    }

    pub fn elements(&self) -> &[Elem] {
        &self.order
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn zn(n: u32) -> FiniteRing {
        FiniteRing::modular(n).unwrap()
    }

    #[test]
    fn modular_arithmetic() {
        let z4 = zn(4);
        assert_eq!(z4.add(Elem(2), Elem(2)), Elem(0));
        assert_eq!(z4.mul(Elem(2), Elem(2)), Elem(0));
        assert_eq!(z4.mul(Elem(3), Elem(3)), Elem(1));

        let z8 = zn(8);
        assert_eq!(z8.mul(Elem(2), Elem(2)), Elem(4));
        assert_eq!(z8.mul(z8.mul(Elem(2), Elem(2)), Elem(2)), Elem(0));
        assert_eq!(z8.pow(Elem(2), 3), Elem(0));
        assert_eq!(z8.neg(Elem(3)), Elem(5));
        assert_eq!(z8.neg(Elem(0)), Elem(0));
    }

    #[test]
    fn zero_ring() {
        let z1 = zn(1);
        assert_eq!(z1.zero(), z1.one());
        assert!(z1.is_zero_ring());
        assert_eq!(z1.elements().count(), 1);
        assert_eq!(FiniteRing::modular(0), Err(Error::ZeroModulus));
    }

    #[test]
    fn product_componentwise() {
        let r = FiniteRing::product(zn(2), zn(2)).unwrap();
        // (1,0) = 2, (0,1) = 1
        assert_eq!(r.mul(Elem(2), Elem(1)), Elem(0));
        assert_eq!(r.one(), Elem(3));
        assert_eq!(r.display(Elem(2)), "(1,0)");

        let r = FiniteRing::product(zn(4), zn(2)).unwrap();
        assert_eq!(r.size(), 8);
        // (3,1) + (1,1) = (0,0)
        assert_eq!(r.add(Elem(7), Elem(3)), Elem(0));
    }

    #[test]
    #[should_panic(expected = "used with a ring of size 4")]
    fn foreign_element_panics() {
        zn(4).add(Elem(5), Elem(0));
    }

    #[test]
    fn descriptor_round_trip() {
        for text in ["zn:4", "prod:zn:4,zn:2", "prod:prod:zn:2,zn:2,zn:3", "prod:zn:3,prod:zn:2,zn:2"] {
            let ring: FiniteRing = text.parse().unwrap();
            assert_eq!(ring.to_string(), text);
        }
        let ring: FiniteRing = "prod:prod:zn:2,zn:2,zn:3".parse().unwrap();
        assert_eq!(ring.size(), 12);
        assert!("zn:0".parse::<FiniteRing>().is_err());
        assert!("zn:".parse::<FiniteRing>().is_err());
        assert!("prod:zn:2".parse::<FiniteRing>().is_err());
        assert!("zn:4x".parse::<FiniteRing>().is_err());
        assert!("qq:4".parse::<FiniteRing>().is_err());
    }

    #[test]
    fn enumeration_layout() {
        let e = Enumeration::with_target(&zn(4), Elem(2)).unwrap();
        assert_eq!(e.elements(), &[Elem(0), Elem(1), Elem(2), Elem(3)]);
        assert_eq!(e.index_of(Elem(3)), 3);

        let e = Enumeration::with_target(&zn(6), Elem(3)).unwrap();
        let order: Vec<u32> = e.elements().iter().map(|x| x.0).collect();
        assert_eq!(order, vec![0, 1, 3, 2, 4, 5]);
        assert_eq!(e.index_of(Elem(2)), 3);

        let e = Enumeration::with_target(&zn(9), Elem(3)).unwrap();
        let order: Vec<u32> = e.elements().iter().map(|x| x.0).collect();
        assert_eq!(order, vec![0, 1, 3, 2, 4, 5, 6, 7, 8]);
    }

    #[test]
    fn enumeration_rejects_trivial_targets() {
        assert_eq!(Enumeration::with_target(&zn(4), Elem(0)), Err(Error::TrivialTarget));
        assert_eq!(Enumeration::with_target(&zn(4), Elem(1)), Err(Error::TrivialTarget));
        assert!(Enumeration::with_target(&zn(4), Elem(4)).is_err());
    }

    #[test]
    fn enumeration_is_bijective() {
        let rings = [zn(7), zn(12), FiniteRing::product(zn(3), zn(4)).unwrap()];
        for ring in &rings {
            for r in ring.elements().skip(2) {
                if r == ring.one() {
                    continue;
                }
                let e = Enumeration::with_target(ring, r).unwrap();
                assert_eq!(e.len(), ring.len());
                for x in ring.elements() {
                    assert_eq!(e.get(e.index_of(x)), x);
                }
            }
        }
    }

    #[test]
    fn ring_axioms_exhaustive() {
        let rings = [
            zn(1),
            zn(2),
            zn(6),
            zn(9),
            FiniteRing::product(zn(2), zn(3)).unwrap(),
            FiniteRing::product(zn(4), zn(2)).unwrap(),
            FiniteRing::product(zn(2), FiniteRing::product(zn(2), zn(2)).unwrap()).unwrap(),
        ];
        for ring in &rings {
            let (zero, one) = (ring.zero(), ring.one());
            for a in ring.elements() {
                assert_eq!(ring.add(a, zero), a);
                assert_eq!(ring.mul(a, one), a);
                assert_eq!(ring.add(a, ring.neg(a)), zero);
                for b in ring.elements() {
                    assert_eq!(ring.add(a, b), ring.add(b, a));
                    assert_eq!(ring.mul(a, b), ring.mul(b, a));
                    for c in ring.elements() {
                        assert_eq!(ring.mul(a, ring.add(b, c)), ring.add(ring.mul(a, b), ring.mul(a, c)));
                        assert_eq!(ring.mul(a, ring.mul(b, c)), ring.mul(ring.mul(a, b), c));
                        assert_eq!(ring.add(a, ring.add(b, c)), ring.add(ring.add(a, b), c));
                    }
                }
            }
        }
    }

    #[test]
    fn element_set_ops() {
        let z6 = zn(6);
        let s = ElementSet::from_elems(&z6, [Elem(0), Elem(3)]);
        assert_eq!(s.len(), 2);
        assert_eq!(s.display(&z6), "{0, 3}");
        assert!(s.is_subset(&ElementSet::full(&z6)));
        assert_eq!(s.complement().len(), 4);
    }
}
