//! Ideal generation on finite rings and the linear-combination certificates
//! showing that a list of generators produces a power of the target.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::ring::{Elem, ElementSet, FiniteRing};

/// `Σ gensᵢ · coeffsᵢ`; the empty sum is 0.
pub fn lin_comb(ring: &FiniteRing, gens: &[Elem], coeffs: &[Elem]) -> Result<Elem> {
    if gens.len() != coeffs.len() {
        return Err(Error::LengthMismatch { generators: gens.len(), coefficients: coeffs.len() });
    }
    Ok(ring.sum(gens.iter().zip(coeffs).map(|(&a, &b)| ring.mul(a, b))))
}

/// A coefficient list `b` together with an exponent `e`.
///
/// Against generators `a₁ … a_k` the code is a counterexample to
/// "no linear combination of the `aᵢ` is a positive power of `r`" exactly
/// when `|b| = k`, `e > 0` and `Σ aᵢ·bᵢ = r^e`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct WitnessCode {
    #[serde(rename = "coeffs")]
    pub coefficients: Vec<Elem>,
    #[serde(rename = "e")]
    pub exponent: u64,
}

impl WitnessCode {
    pub fn new(coefficients: Vec<Elem>, exponent: u64) -> Self {
        WitnessCode { coefficients, exponent }
    }

    /// `([], 0)`, which refutes nothing.
    pub fn null() -> Self {
        WitnessCode { coefficients: Vec::new(), exponent: 0 }
    }

    pub fn is_null(&self) -> bool {
        self.exponent == 0 && self.coefficients.is_empty()
    }
}

/// Decides whether `code` shows that `gens` generate a positive power of `r`.
pub fn neg_r_holds(ring: &FiniteRing, gens: &[Elem], code: &WitnessCode, r: Elem) -> bool {
    code.coefficients.len() == gens.len()
        && code.exponent > 0
        && lin_comb(ring, gens, &code.coefficients).map(|sum| sum == ring.pow(r, code.exponent)).unwrap_or(false)
}

/// A self-contained claim `Σ generatorsᵢ · coefficientsᵢ = r^exponent`.
///
/// Generators are an ordered list and may repeat.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Certificate {
    #[serde(rename = "gens")]
    pub generators: Vec<Elem>,
    #[serde(rename = "coeffs")]
    pub coefficients: Vec<Elem>,
    #[serde(rename = "e")]
    pub exponent: u64,
}

impl Certificate {
    pub fn new(generators: Vec<Elem>, coefficients: Vec<Elem>, exponent: u64) -> Self {
        Certificate { generators, coefficients, exponent }
    }

    pub fn check(&self, ring: &FiniteRing, r: Elem) -> bool {
        check_certificate(ring, self, r)
    }

    pub fn code(&self) -> WitnessCode {
        WitnessCode::new(self.coefficients.clone(), self.exponent)
    }
}

pub fn check_certificate(ring: &FiniteRing, cert: &Certificate, r: Elem) -> bool {
    neg_r_holds(ring, &cert.generators, &cert.code(), r)
}

/// The ideal generated by `seed`: the least superset of `seed ∪ {0}` closed
/// under addition and under multiplication by arbitrary ring elements.
pub fn ideal_closure(ring: &FiniteRing, seed: impl IntoIterator<Item = Elem>) -> ElementSet {
    let mut set = ElementSet::empty(ring);
    let mut pending = Vec::new();
    for x in std::iter::once(ring.zero()).chain(seed) {
        if set.insert(x) {
            pending.push(x);
        }
    }
    while let Some(x) = pending.pop() {
        for y in ring.elements() {
            let product = ring.mul(x, y);
            if set.insert(product) {
                pending.push(product);
            }
        }
        let members: Vec<Elem> = set.iter().collect();
        for m in members {
            let total = ring.add(x, m);
            if set.insert(total) {
                pending.push(total);
            }
        }
    }
    set
}

#[cfg(test)]
mod tests {
    use super::*;

    fn zn(n: u32) -> FiniteRing {
        FiniteRing::modular(n).unwrap()
    }

    fn elems(v: &[u32]) -> Vec<Elem> {
        v.iter().copied().map(Elem).collect()
    }

    #[test]
    fn linear_combinations() {
        let z4 = zn(4);
        assert_eq!(lin_comb(&z4, &[], &[]), Ok(Elem(0)));
        assert_eq!(lin_comb(&z4, &elems(&[1]), &elems(&[2])), Ok(Elem(2)));
        assert_eq!(lin_comb(&z4, &elems(&[0, 2]), &elems(&[3, 2])), Ok(Elem(0)));
        assert_eq!(
            lin_comb(&z4, &elems(&[0, 2]), &elems(&[3])),
            Err(Error::LengthMismatch { generators: 2, coefficients: 1 })
        );
    }

    #[test]
    fn refutation_checks() {
        let z4 = zn(4);
        let r = Elem(2);
        assert!(neg_r_holds(&z4, &elems(&[0, 1]), &WitnessCode::new(elems(&[0, 2]), 1), r));
        assert!(!neg_r_holds(&z4, &elems(&[0, 1]), &WitnessCode::null(), r));
        assert!(!neg_r_holds(&z4, &[], &WitnessCode::null(), r));
        // 0·3 = 0 = 2²
        assert!(neg_r_holds(&z4, &elems(&[0]), &WitnessCode::new(elems(&[3]), 2), r));
        // wrong length
        assert!(!neg_r_holds(&z4, &elems(&[0]), &WitnessCode::new(elems(&[3, 1]), 2), r));
    }

    #[test]
    fn certificates() {
        let z4 = zn(4);
        let r = Elem(2);
        assert!(Certificate::new(elems(&[1]), elems(&[2]), 1).check(&z4, r));
        assert!(Certificate::new(elems(&[2]), elems(&[1]), 1).check(&z4, r));
        assert!(!Certificate::new(elems(&[2]), elems(&[1]), 2).check(&z4, r));
        assert!(!Certificate::new(elems(&[2]), elems(&[1]), 0).check(&z4, r));
    }

    #[test]
    fn certificate_json_shape() {
        let cert = Certificate::new(elems(&[1]), elems(&[2]), 1);
        let json = serde_json::to_string(&cert).unwrap();
        assert_eq!(json, r#"{"gens":[1],"coeffs":[2],"e":1}"#);
        let back: Certificate = serde_json::from_str(&json).unwrap();
        assert_eq!(back, cert);
    }

    #[test]
    fn closures() {
        let z4 = zn(4);
        assert_eq!(ideal_closure(&z4, []), ElementSet::from_elems(&z4, [Elem(0)]));
        assert_eq!(ideal_closure(&z4, [Elem(2)]), ElementSet::from_elems(&z4, elems(&[0, 2])));
        let z6 = zn(6);
        assert_eq!(ideal_closure(&z6, elems(&[2, 3])), ElementSet::full(&z6));
        assert_eq!(ideal_closure(&z6, elems(&[4])), ElementSet::from_elems(&z6, elems(&[0, 2, 4])));
    }

    fn subsets(ring: &FiniteRing) -> impl Iterator<Item = ElementSet> + '_ {
        (0u32..1 << ring.size())
            .map(move |bits| ElementSet::from_elems(ring, ring.elements().filter(|x| bits >> x.0 & 1 == 1)))
    }

    #[test]
    fn closure_is_a_closure_operator() {
        let rings = [zn(4), zn(6), zn(8), FiniteRing::product(zn(2), zn(4)).unwrap()];
        for ring in &rings {
            let all: Vec<ElementSet> = subsets(ring).collect();
            for s in &all {
                let c = ideal_closure(ring, s.iter());
                assert!(s.is_subset(&c));
                assert_eq!(ideal_closure(ring, c.iter()), c);
                for x in c.iter() {
                    let mut bigger = s.clone();
                    bigger.insert(x);
                    assert_eq!(ideal_closure(ring, bigger.iter()), c);
                }
            }
            // monotone on a sample of pairs
            for (a, b) in all.iter().zip(all.iter().skip(3)) {
                let ab = ElementSet::from_elems(ring, a.iter().chain(b.iter()));
                assert!(ideal_closure(ring, a.iter()).is_subset(&ideal_closure(ring, ab.iter())));
            }
        }
    }
}
