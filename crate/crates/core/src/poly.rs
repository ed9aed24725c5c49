//! Polynomials over a finite ring and ψ for the coefficients of a unit.
//!
//! If `f·g = 1` in `X[T]`, every coefficient `aᵢ` of `f` with `i ≥ 1` lies in
//! every prime ideal of `X`. [`InversePsi`] turns that argument into a
//! concrete functional: given `S` it finds either `aᵢ ∈ S` or an explicit
//! failure of `S` to be a prime ideal, using the identities
//! `aᵢ = −a₀ · Σ_{j<i} aⱼ·b_{i−j}` and `0 = c_{k+l} = Σ_{p+q=k+l} a_p·b_q`.

use std::fmt;

use crate::error::{Error, Result};
use crate::nilradical::{nilpotency_exponent, Extraction, PsiFunctional, PsiVerdict};
use crate::ring::{Elem, ElementSet, Enumeration, FiniteRing};

/// Coefficients `a₀, a₁, …` with index equal to the power of `T`.
/// Trailing zeros are allowed.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Polynomial {
    coefficients: Vec<Elem>,
}

impl Polynomial {
    pub fn new(coefficients: Vec<Elem>) -> Self {
        Polynomial { coefficients }
    }

    pub fn constant(c: Elem) -> Self {
        Polynomial { coefficients: vec![c] }
    }

    /// Comma-separated canonical indices, constant term first: `1,2` is `1 + 2T`.
    pub fn parse(ring: &FiniteRing, text: &str) -> Result<Self> {
        let coefficients = text.split(',').map(|c| ring.parse_element(c)).collect::<Result<Vec<_>>>()?;
        Ok(Polynomial { coefficients })
    }

    pub fn coefficients(&self) -> &[Elem] {
        &self.coefficients
    }

    /// `aᵢ`, with 0 beyond the stored coefficients.
    pub fn coeff(&self, i: usize) -> Elem {
        self.coefficients.get(i).copied().unwrap_or(Elem(0))
    }

    /// Index of the last nonzero coefficient; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coefficients.iter().rposition(|&c| c != Elem(0))
    }

    pub fn normalized(&self) -> Self {
        let len = self.degree().map_or(0, |d| d + 1);
        Polynomial { coefficients: self.coefficients[..len].to_vec() }
    }

    pub fn display(&self, ring: &FiniteRing) -> String {
        let terms: Vec<String> = self
            .coefficients
            .iter()
            .enumerate()
            .filter(|(_, &c)| c != ring.zero())
            .map(|(i, &c)| match i {
                0 => ring.display(c),
                1 => format!("{}T", ring.display(c)),
                _ => format!("{}T^{i}", ring.display(c)),
            })
            .collect();
        if terms.is_empty() {
            "0".to_string()
        } else {
            terms.join(" + ")
        }
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let items: Vec<String> = self.coefficients.iter().map(|c| c.to_string()).collect();
        write!(f, "{}", items.join(","))
    }
}

pub fn poly_mul(ring: &FiniteRing, f: &Polynomial, g: &Polynomial) -> Polynomial {
    if f.coefficients.is_empty() || g.coefficients.is_empty() {
        return Polynomial::new(Vec::new());
    }
    let mut out = vec![ring.zero(); f.coefficients.len() + g.coefficients.len() - 1];
    for (i, &a) in f.coefficients.iter().enumerate() {
        for (j, &b) in g.coefficients.iter().enumerate() {
            out[i + j] = ring.add(out[i + j], ring.mul(a, b));
        }
    }
    Polynomial::new(out)
}

pub fn is_inverse_pair(ring: &FiniteRing, f: &Polynomial, g: &Polynomial) -> bool {
    let product = poly_mul(ring, f, g).normalized();
    if ring.is_zero_ring() {
        return true;
    }
    product.coefficients == [ring.one()]
}

/// ψ for the target `aᵢ`, built from an inverse pair `f·g = 1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InversePsi {
    f: Polynomial,
    g: Polynomial,
    index: usize,
}

/// Validates `f·g = 1` and `1 ≤ i ≤ deg f`.
pub fn psi_from_inverse(ring: &FiniteRing, f: &Polynomial, g: &Polynomial, index: usize) -> Result<InversePsi> {
    if !is_inverse_pair(ring, f, g) {
        return Err(Error::NotInverse);
    }
    let degree = f.degree().unwrap_or(0);
    if index == 0 || index > degree {
        return Err(Error::CoefficientIndex { index, degree });
    }
    Ok(InversePsi { f: f.clone(), g: g.clone(), index })
}

impl InversePsi {
    pub fn target(&self) -> Elem {
        self.f.coeff(self.index)
    }

    /// Given terms in `S` (else an absorption failure is reported) whose
    /// partial sums run from `0 ∈ S` to a total outside `S`, reports the
    /// first addition that leaves `S`.
    fn walk_sum(&self, enumeration: &Enumeration, set: &ElementSet, terms: &[(Elem, Elem)]) -> Option<PsiVerdict> {
        let ring = enumeration.ring();
        let idx = |x: Elem| enumeration.index_of(x);
        // Each term is (inside factor, other factor).
        for &(inside, other) in terms {
            let product = ring.mul(inside, other);
            if !set.contains(product) {
                return Some(PsiVerdict::AbsorbViolation(idx(inside), idx(other), idx(product)));
            }
        }
        let mut partial = ring.zero();
        for &(inside, other) in terms {
            let term = ring.mul(inside, other);
            let next = ring.add(partial, term);
            if !set.contains(next) {
                return Some(PsiVerdict::AddViolation(idx(partial), idx(term), idx(next)));
            }
            partial = next;
        }
        None
    }

    fn verdict_inner(&self, enumeration: &Enumeration, set: &ElementSet) -> Option<PsiVerdict> {
        let ring = enumeration.ring();
        let (f, g, i) = (&self.f, &self.g, self.index);
        let idx = |x: Elem| enumeration.index_of(x);

        if !set.contains(ring.zero()) {
            return Some(PsiVerdict::ZeroAbsent);
        }
        if set.contains(ring.one()) {
            return Some(PsiVerdict::OneIn);
        }
        if set.contains(f.coeff(i)) {
            return Some(PsiVerdict::TargetIn);
        }

        if (1..=i).all(|j| set.contains(g.coeff(j))) {
            // aᵢ = Σ_{j<i} tⱼ with tⱼ = b_{i−j} · (−a₀·aⱼ) and b_{i−j} ∈ S.
            let neg_a0 = ring.neg(f.coeff(0));
            let terms: Vec<(Elem, Elem)> = (0..i).map(|j| (g.coeff(i - j), ring.mul(neg_a0, f.coeff(j)))).collect();
            return self.walk_sum(enumeration, set, &terms);
        }

        // Some bⱼ ∉ S with 1 ≤ j ≤ i; take k, l maximal with a_k, b_l ∉ S.
        let n = f.coefficients.len().saturating_sub(1);
        let m = g.coefficients.len().saturating_sub(1);
        let k = (1..=n).rev().find(|&p| !set.contains(f.coeff(p)))?;
        let l = (1..=m).rev().find(|&q| !set.contains(g.coeff(q)))?;
        let (ak, bl) = (f.coeff(k), g.coeff(l));
        let lead = ring.mul(ak, bl);
        if set.contains(lead) {
            return Some(PsiVerdict::PrimeViolation(idx(ak), idx(bl), idx(lead)));
        }
        // 0 = c_{k+l} = a_k·b_l + Σ rest, so Σ rest = −a_k·b_l.
        let neg_lead = ring.neg(lead);
        if set.contains(neg_lead) {
            // −1 · (−a_k·b_l) = a_k·b_l ∉ S
            return Some(PsiVerdict::AbsorbViolation(idx(neg_lead), idx(ring.neg(ring.one())), idx(lead)));
        }
        let terms: Vec<(Elem, Elem)> = (0..=k + l)
            .filter_map(|p| {
                let q = k + l - p;
                if p > n || q > m || (p == k && q == l) {
                    return None;
                }
                // p > k or q > l, so one factor lies in S by maximality
                let (a, b) = (f.coeff(p), g.coeff(q));
                Some(if p > k { (a, b) } else { (b, a) })
            })
            .collect();
        self.walk_sum(enumeration, set, &terms)
    }
}

impl PsiFunctional for InversePsi {
    fn verdict(&self, enumeration: &Enumeration, set: &ElementSet) -> Result<PsiVerdict> {
        if enumeration.target() != Some(self.target()) {
            return Err(Error::ContractViolation("enumeration target differs from the chosen coefficient".into()));
        }
        self.verdict_inner(enumeration, set).ok_or(Error::ContractUnmet)
    }
}

/// An exponent `e > 0` with `aᵢ^e = 0` for the coefficient `aᵢ` of a unit
/// `f` with inverse `g`.
pub fn nilpotent_coefficient_exponent(
    ring: &FiniteRing,
    f: &Polynomial,
    g: &Polynomial,
    index: usize,
    max_iters: usize,
) -> Result<Extraction> {
    if !is_inverse_pair(ring, f, g) {
        return Err(Error::NotInverse);
    }
    if index == 0 {
        return Err(Error::CoefficientIndex { index, degree: f.degree().unwrap_or(0) });
    }
    let target = f.coeff(index);
    if target == ring.zero() {
        return nilpotency_exponent(ring, target, crate::nilradical::FinitePsi::default(), max_iters);
    }
    let psi = psi_from_inverse(ring, f, g, index)?;
    nilpotency_exponent(ring, target, psi, max_iters)
}
