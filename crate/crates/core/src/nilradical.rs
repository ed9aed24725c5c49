//! Nilpotency exponents from evidence that an element lies in every prime
//! ideal.
//!
//! The evidence is a [`PsiFunctional`]: for any subset `S` of the ring it
//! reports either that `r ∈ S` or a concrete way in which `S` fails to be a
//! prime ideal. Running the [`engine`](crate::engine) with the functional
//! built by [`NilradicalFunctional`] ends in a state whose entry at index 0
//! (the element 0) carries a witness `⟨b, e⟩` with `r^e = 0`.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::engine::{CounterexampleFunctional, Engine, Query, Refutation, State, Trace};
use crate::error::{Error, Result};
use crate::generation::{neg_r_holds, Certificate, WitnessCode};
use crate::ring::{Elem, ElementSet, Enumeration, FiniteRing};

/// Outcome of a ψ query on a set `S`. Indices refer to the enumeration.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(into = "VerdictWire", try_from = "VerdictWire")]
pub enum PsiVerdict {
    /// `0 ∉ S`.
    ZeroAbsent,
    /// `1 ∈ S`.
    OneIn,
    /// `r ∈ S`.
    TargetIn,
    /// `x_i + x_j = x_k` with `x_i, x_j ∈ S` and `x_k ∉ S`.
    AddViolation(usize, usize, usize),
    /// `x_i · x_j = x_k` with `x_i ∈ S` and `x_k ∉ S`.
    AbsorbViolation(usize, usize, usize),
    /// `x_i · x_j = x_k` with `x_i, x_j ∉ S` and `x_k ∈ S`.
    PrimeViolation(usize, usize, usize),
}

impl PsiVerdict {
    /// The numeric case tag: 0–2 for the membership cases, 3–5 for the
    /// violations.
    pub fn case(&self) -> u8 {
        match self {
            PsiVerdict::ZeroAbsent => 0,
            PsiVerdict::OneIn => 1,
            PsiVerdict::TargetIn => 2,
            PsiVerdict::AddViolation(..) => 3,
            PsiVerdict::AbsorbViolation(..) => 4,
            PsiVerdict::PrimeViolation(..) => 5,
        }
    }

    /// Whether the verdict's claim is true of `set` under `enumeration`.
    pub fn holds_for(&self, enumeration: &Enumeration, set: &ElementSet) -> bool {
        let ring = enumeration.ring();
        let len = enumeration.len();
        let x = |n: usize| enumeration.get(n);
        let in_range = |i: usize, j: usize, k: usize| i < len && j < len && k < len;
        match *self {
            PsiVerdict::ZeroAbsent => !set.contains(ring.zero()),
            PsiVerdict::OneIn => set.contains(ring.one()),
            PsiVerdict::TargetIn => enumeration.target().is_some_and(|r| set.contains(r)),
            PsiVerdict::AddViolation(i, j, k) => {
                in_range(i, j, k)
                    && ring.add(x(i), x(j)) == x(k)
                    && set.contains(x(i))
                    && set.contains(x(j))
                    && !set.contains(x(k))
            }
            PsiVerdict::AbsorbViolation(i, j, k) => {
                in_range(i, j, k) && ring.mul(x(i), x(j)) == x(k) && set.contains(x(i)) && !set.contains(x(k))
            }
            PsiVerdict::PrimeViolation(i, j, k) => {
                in_range(i, j, k)
                    && ring.mul(x(i), x(j)) == x(k)
                    && !set.contains(x(i))
                    && !set.contains(x(j))
                    && set.contains(x(k))
            }
        }
    }
}

impl fmt::Display for PsiVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            PsiVerdict::AddViolation(i, j, k)
            | PsiVerdict::AbsorbViolation(i, j, k)
            | PsiVerdict::PrimeViolation(i, j, k) => write!(f, "({},{i},{j},{k})", self.case()),
            _ => write!(f, "{}", self.case()),
        }
    }
}

#[derive(Serialize, Deserialize)]
#[serde(untagged)]
enum VerdictWire {
    Membership(u8),
    Violation { case: u8, i: usize, j: usize, k: usize },
}

impl From<PsiVerdict> for VerdictWire {
    fn from(v: PsiVerdict) -> Self {
        match v {
            PsiVerdict::AddViolation(i, j, k)
            | PsiVerdict::AbsorbViolation(i, j, k)
            | PsiVerdict::PrimeViolation(i, j, k) => VerdictWire::Violation { case: v.case(), i, j, k },
            _ => VerdictWire::Membership(v.case()),
        }
    }
}

impl TryFrom<VerdictWire> for PsiVerdict {
    type Error = String;

    fn try_from(w: VerdictWire) -> std::result::Result<Self, String> {
        match w {
            VerdictWire::Membership(0) => Ok(PsiVerdict::ZeroAbsent),
            VerdictWire::Membership(1) => Ok(PsiVerdict::OneIn),
            VerdictWire::Membership(2) => Ok(PsiVerdict::TargetIn),
            VerdictWire::Violation { case: 3, i, j, k } => Ok(PsiVerdict::AddViolation(i, j, k)),
            VerdictWire::Violation { case: 4, i, j, k } => Ok(PsiVerdict::AbsorbViolation(i, j, k)),
            VerdictWire::Violation { case: 5, i, j, k } => Ok(PsiVerdict::PrimeViolation(i, j, k)),
            VerdictWire::Membership(c) | VerdictWire::Violation { case: c, .. } => {
                Err(format!("unknown verdict case {c}"))
            }
        }
    }
}

/// Evidence that the enumeration's target lies in every prime ideal.
pub trait PsiFunctional {
    fn verdict(&self, enumeration: &Enumeration, set: &ElementSet) -> Result<PsiVerdict>;
}

impl<P: PsiFunctional + ?Sized> PsiFunctional for &P {
    fn verdict(&self, enumeration: &Enumeration, set: &ElementSet) -> Result<PsiVerdict> {
        (**self).verdict(enumeration, set)
    }
}

/// How [`psi_finite`] picks among the violations a set exhibits.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Hash)]
pub enum ScanOrder {
    /// The violation whose certificate reaches the lowest enumeration
    /// index; ties go to the earlier case (addition, absorption, primality)
    /// and then to the lexicographically first index pair.
    #[default]
    LowestIndex,
    /// The first violation found scanning addition, then absorption, then
    /// primality, each over index pairs in lexicographic order.
    FirstHit,
}

/// ψ by exhaustive search over a finite ring.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct FinitePsi {
    pub order: ScanOrder,
}

impl FinitePsi {
    pub fn new(order: ScanOrder) -> Self {
        FinitePsi { order }
    }
}

impl PsiFunctional for FinitePsi {
    fn verdict(&self, enumeration: &Enumeration, set: &ElementSet) -> Result<PsiVerdict> {
        psi_finite_with(enumeration, set, self.order)
    }
}

pub fn psi_finite(enumeration: &Enumeration, set: &ElementSet) -> Result<PsiVerdict> {
    psi_finite_with(enumeration, set, ScanOrder::default())
}

/// Checks `0 ∉ S`, `1 ∈ S` and `r ∈ S` in that order, then searches for a
/// failure of additive closure, absorption or primality.
///
/// Fails with [`Error::NotInAllPrimes`] when `S` is a prime ideal avoiding
/// `r`, which happens exactly when `r` is not nilpotent.
///
/// The violation reported determines which element the search excludes
/// next: a certificate built from it has generators up to some enumeration
/// index `n`, and `x_n` is removed. [`ScanOrder::LowestIndex`] minimises
/// that `n`, which keeps runs short; `n` depends only on `S`, so the
/// choice is still a function of the queried set.
pub fn psi_finite_with(enumeration: &Enumeration, set: &ElementSet, order: ScanOrder) -> Result<PsiVerdict> {
    let ring = enumeration.ring();
    let r = enumeration.target().ok_or(Error::MissingTarget)?;
    if !set.contains(ring.zero()) {
        return Ok(PsiVerdict::ZeroAbsent);
    }
    if set.contains(ring.one()) {
        return Ok(PsiVerdict::OneIn);
    }
    if set.contains(r) {
        return Ok(PsiVerdict::TargetIn);
    }
    let elems = enumeration.elements();
    let len = elems.len();
    let member: Vec<bool> = elems.iter().map(|&x| set.contains(x)).collect();
    // highest[k]: the largest index below k whose element is in S
    let mut highest = vec![None; len + 1];
    for k in 1..=len {
        highest[k] = if member[k - 1] { Some(k - 1) } else { highest[k - 1] };
    }
    let reach = |below: usize, extra: usize| highest[below].map_or(extra, |h: usize| h.max(extra));

    let mut best: Option<(usize, PsiVerdict)> = None;
    let mut offer = |top: usize, verdict: PsiVerdict| -> bool {
        if best.is_none_or(|(b, _)| top < b) {
            best = Some((top, verdict));
        }
        order == ScanOrder::FirstHit
    };

    for i in (0..len).filter(|&i| member[i]) {
        for j in (0..len).filter(|&j| member[j]) {
            let k = enumeration.index_of(ring.add(elems[i], elems[j]));
            if !member[k] && offer(reach(k, i.max(j)), PsiVerdict::AddViolation(i, j, k)) {
                return Ok(best.unwrap().1);
            }
        }
    }
    for i in (0..len).filter(|&i| member[i]) {
        for j in 0..len {
            let k = enumeration.index_of(ring.mul(elems[i], elems[j]));
            if !member[k] && offer(reach(k, i), PsiVerdict::AbsorbViolation(i, j, k)) {
                return Ok(best.unwrap().1);
            }
        }
    }
    for i in (0..len).filter(|&i| !member[i]) {
        for j in (0..len).filter(|&j| !member[j]) {
            let k = enumeration.index_of(ring.mul(elems[i], elems[j]));
            if member[k] && offer(reach(i.max(j), k), PsiVerdict::PrimeViolation(i, j, k)) {
                return Ok(best.unwrap().1);
            }
        }
    }
    best.map(|(_, v)| v).ok_or_else(|| Error::NotInAllPrimes { set: set.display(ring) })
}

/// `M[s]` as a set of ring elements.
pub fn members(state: &State<WitnessCode>, enumeration: &Enumeration) -> ElementSet {
    ElementSet::from_elems(enumeration.ring(), state.members(enumeration.len()).map(|n| enumeration.get(n)))
}

fn segment(state: &State<WitnessCode>, enumeration: &Enumeration, n: usize) -> Vec<Elem> {
    state.members(n).map(|m| enumeration.get(m)).collect()
}

/// The evidence at an excluded index, split as `(b'₁…b'_p, b'_{p+1}, e)`
/// where `p = |M↾n|`.
fn stored_witness(state: &State<WitnessCode>, n: usize, prefix_len: usize) -> Result<(&[Elem], Elem, u64)> {
    let code = state.code(n).ok_or_else(|| Error::ContractViolation(format!("no evidence recorded at index {n}")))?;
    if code.coefficients.len() != prefix_len + 1 || code.exponent == 0 {
        return Err(Error::ContractViolation(format!(
            "evidence at index {n} has {} coefficients and exponent {}, expected {} coefficients",
            code.coefficients.len(),
            code.exponent,
            prefix_len + 1
        )));
    }
    let (head, last) = code.coefficients.split_at(prefix_len);
    Ok((head, last[0], code.exponent))
}

/// Turns a non-zero verdict on `M[s]` into a certificate that some
/// generators drawn from `M[s]` produce a positive power of `r`.
///
/// Violations are converted using the evidence stored in `state` for the
/// excluded elements the verdict mentions. The result is checked before it
/// is returned.
pub fn combine_witness(
    verdict: PsiVerdict,
    state: &State<WitnessCode>,
    enumeration: &Enumeration,
) -> Result<Certificate> {
    let ring = enumeration.ring();
    let r = enumeration.target().ok_or(Error::MissingTarget)?;
    let x = |n: usize| enumeration.get(n);

    let cert = match verdict {
        PsiVerdict::ZeroAbsent => {
            return Err(Error::ContractViolation("cannot build a certificate from `0 ∉ M`".into()))
        }
        PsiVerdict::OneIn => Certificate::new(vec![ring.one()], vec![r], 1),
        PsiVerdict::TargetIn => Certificate::new(vec![r], vec![ring.one()], 1),
        PsiVerdict::AddViolation(i, j, k) => {
            // M↾k·b' + (x_i + x_j)·b'_{p+1} = r^e
            let mut gens = segment(state, enumeration, k);
            let (head, last, e) = stored_witness(state, k, gens.len())?;
            let mut coeffs = head.to_vec();
            gens.extend([x(i), x(j)]);
            coeffs.extend([last, last]);
            Certificate::new(gens, coeffs, e)
        }
        PsiVerdict::AbsorbViolation(i, j, k) => {
            // M↾k·b' + x_i·(x_j·b'_{p+1}) = r^e
            let mut gens = segment(state, enumeration, k);
            let (head, last, e) = stored_witness(state, k, gens.len())?;
            let mut coeffs = head.to_vec();
            gens.push(x(i));
            coeffs.push(ring.mul(x(j), last));
            Certificate::new(gens, coeffs, e)
        }
        PsiVerdict::PrimeViolation(i, j, _) => {
            // Multiply  M↾i·b' + x_i·b'_{p+1} = r^{e'}  by  M↾j·b'' + x_j·b''_{q+1} = r^{e''}:
            //   (M↾i·b')·r^{e''} + x_i·b'_{p+1}·(M↾j·b'') + x_i·x_j·b'_{p+1}·b''_{q+1} = r^{e'+e''}
            let left = segment(state, enumeration, i);
            let right = segment(state, enumeration, j);
            let (b1, last1, e1) = stored_witness(state, i, left.len())?;
            let (b2, last2, e2) = stored_witness(state, j, right.len())?;
            let e = e1.checked_add(e2).ok_or(Error::ExponentOverflow)?;
            let scale_left = ring.pow(r, e2);
            let scale_right = ring.mul(x(i), last1);

            let mut gens = Vec::with_capacity(left.len() + right.len() + 1);
            let mut coeffs = Vec::with_capacity(gens.capacity());
            gens.extend(&left);
            coeffs.extend(b1.iter().map(|&b| ring.mul(b, scale_left)));
            gens.extend(&right);
            coeffs.extend(b2.iter().map(|&b| ring.mul(scale_right, b)));
            gens.push(ring.mul(x(i), x(j)));
            coeffs.push(ring.mul(last1, last2));
            Certificate::new(gens, coeffs, e)
        }
    };

    let inside = members(state, enumeration);
    if let Some(g) = cert.generators.iter().find(|&&g| !inside.contains(g)) {
        return Err(Error::ContractViolation(format!(
            "verdict {verdict} yields generator {} outside M",
            ring.display(*g)
        )));
    }
    if !cert.check(ring, r) {
        return Err(Error::ContractViolation(format!("verdict {verdict} yields a certificate that does not check")));
    }
    Ok(cert)
}

/// Re-expresses a certificate over the segment `M↾n ∪ {x_n}`, where `n` is
/// the largest enumeration index among its generators. Coefficients of
/// repeated generators are summed; segment elements the certificate does
/// not use get coefficient 0.
pub fn findcont(
    cert: &Certificate,
    state: &State<WitnessCode>,
    enumeration: &Enumeration,
) -> Result<(usize, WitnessCode)> {
    let ring = enumeration.ring();
    let r = enumeration.target().ok_or(Error::MissingTarget)?;
    if cert.generators.len() != cert.coefficients.len() {
        return Err(Error::LengthMismatch { generators: cert.generators.len(), coefficients: cert.coefficients.len() });
    }
    let mut indices = Vec::with_capacity(cert.generators.len());
    for &g in &cert.generators {
        let n = enumeration.index_of(g);
        if !state.is_in(n) {
            return Err(Error::ContractViolation(format!("generator {} is not in M", ring.display(g))));
        }
        indices.push(n);
    }
    let n = *indices.iter().max().ok_or_else(|| Error::ContractViolation("certificate has no generators".into()))?;

    let listing = state.segment_with(n);
    let mut coefficients = vec![ring.zero(); listing.len()];
    for (&idx, &c) in indices.iter().zip(&cert.coefficients) {
        let slot = listing.binary_search(&idx).expect("generator index lies in the segment");
        coefficients[slot] = ring.add(coefficients[slot], c);
    }
    let code = WitnessCode::new(coefficients, cert.exponent);

    let gens: Vec<Elem> = listing.iter().map(|&m| enumeration.get(m)).collect();
    if !neg_r_holds(ring, &gens, &code, r) {
        return Err(Error::ContractViolation(format!("padded witness at index {n} does not check")));
    }
    Ok((n, code))
}

/// Everything the functional derived from one state.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Derivation {
    pub verdict: PsiVerdict,
    pub certificate: Option<Certificate>,
    pub query: Query<WitnessCode>,
}

/// The functional pair `(ω, φ)` built from ψ: on a state whose `M` contains
/// 0 it returns the index and padded witness from [`findcont`], otherwise
/// `(0, ⟨[], 0⟩)`.
pub struct NilradicalFunctional<'a, P> {
    psi: P,
    enumeration: &'a Enumeration,
}

impl<'a, P: PsiFunctional> NilradicalFunctional<'a, P> {
    pub fn new(psi: P, enumeration: &'a Enumeration) -> Self {
        NilradicalFunctional { psi, enumeration }
    }

    pub fn derive(&self, state: &State<WitnessCode>) -> Result<Derivation> {
        let verdict = self.psi.verdict(self.enumeration, &members(state, self.enumeration))?;
        if verdict == PsiVerdict::ZeroAbsent {
            return Ok(Derivation { verdict, certificate: None, query: Query::new(0, WitnessCode::null()) });
        }
        let certificate = combine_witness(verdict, state, self.enumeration)?;
        let (n, code) = findcont(&certificate, state, self.enumeration)?;
        Ok(Derivation { verdict, certificate: Some(certificate), query: Query::new(n, code) })
    }
}

impl<P: PsiFunctional> CounterexampleFunctional<WitnessCode> for NilradicalFunctional<'_, P> {
    fn query(&self, state: &State<WitnessCode>) -> Result<Query<WitnessCode>> {
        self.derive(state).map(|d| d.query)
    }
}

pub fn make_omega_phi<P: PsiFunctional>(psi: P, enumeration: &Enumeration) -> NilradicalFunctional<'_, P> {
    NilradicalFunctional::new(psi, enumeration)
}

/// `¬R` over enumeration indices: the listed elements combine with the
/// code's coefficients to a positive power of the target.
#[derive(Debug, Clone, Copy)]
pub struct RingRefutation<'a> {
    enumeration: &'a Enumeration,
    target: Elem,
}

impl<'a> RingRefutation<'a> {
    pub fn new(enumeration: &'a Enumeration) -> Result<Self> {
        let target = enumeration.target().ok_or(Error::MissingTarget)?;
        Ok(RingRefutation { enumeration, target })
    }
}

impl Refutation<WitnessCode> for RingRefutation<'_> {
    fn refutes(&self, generators: &[usize], code: &WitnessCode) -> bool {
        if generators.len() != code.coefficients.len() {
            return false;
        }
        let gens: Vec<Elem> = generators.iter().map(|&n| self.enumeration.get(n)).collect();
        neg_r_holds(self.enumeration.ring(), &gens, code, self.target)
    }
}

pub type NilradicalEngine<'a, P> = Engine<WitnessCode, NilradicalFunctional<'a, P>, RingRefutation<'a>>;

pub fn nilradical_engine<P: PsiFunctional>(psi: P, enumeration: &Enumeration) -> Result<NilradicalEngine<'_, P>> {
    Ok(Engine::new(make_omega_phi(psi, enumeration), RingRefutation::new(enumeration)?, enumeration.len()))
}

/// Result of a nilpotency-exponent extraction.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Extraction {
    pub exponent: u64,
    /// `None` when `r = 0` was answered without running the search.
    pub enumeration: Option<Enumeration>,
    pub final_state: State<WitnessCode>,
    pub trace: Trace<WitnessCode>,
}

/// `10 · |X|²`.
pub fn default_max_iters(ring: &FiniteRing) -> usize {
    10 * ring.len() * ring.len()
}

/// Computes `e > 0` with `r^e = 0` from ψ.
///
/// `r = 0` is answered with `e = 1` directly; `r = 1` in a nonzero ring is
/// rejected. The exponent need not be minimal.
pub fn nilpotency_exponent<P: PsiFunctional>(
    ring: &FiniteRing,
    r: Elem,
    psi: P,
    max_iters: usize,
) -> Result<Extraction> {
    if !ring.contains(r) {
        return Err(Error::ElementOutOfRange { index: u64::from(r.0), size: ring.size() });
    }
    if r == ring.zero() {
        return Ok(Extraction {
            exponent: 1,
            enumeration: None,
            final_state: State::initial(),
            trace: Trace::default(),
        });
    }
    if r == ring.one() {
        return Err(Error::UnitTarget);
    }
    let enumeration = Enumeration::with_target(ring, r)?;
    let run = nilradical_engine(psi, &enumeration)?.run(max_iters)?;
    let exponent = terminal_exponent(ring, r, &run.final_state)?;
    Ok(Extraction { exponent, enumeration: Some(enumeration), final_state: run.final_state, trace: run.trace })
}

/// Reads `e` from the evidence at index 0 of a terminal state and confirms
/// `r^e = 0`.
pub fn terminal_exponent(ring: &FiniteRing, r: Elem, state: &State<WitnessCode>) -> Result<u64> {
    let code = state.code(0).ok_or_else(|| Error::InternalInvariant("terminal state still contains 0".into()))?;
    if code.exponent == 0 || ring.pow(r, code.exponent) != ring.zero() {
        return Err(Error::InternalInvariant(format!(
            "terminal exponent {} does not annihilate {}",
            code.exponent,
            ring.display(r)
        )));
    }
    Ok(code.exponent)
}

/// Invariant checks gathered while auditing a run.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Audit {
    pub states: usize,
    pub domain_failures: usize,
    pub certificates: usize,
    pub certificate_failures: usize,
    pub terminal_approx_max: bool,
}

impl Audit {
    pub fn passed(&self) -> bool {
        self.domain_failures == 0 && self.certificate_failures == 0 && self.terminal_approx_max
    }
}

/// Like [`nilpotency_exponent`], but re-derives every intermediate state to
/// check the stored-evidence invariant, the soundness of every certificate
/// and padded witness, and that the terminal state is an approximate
/// explicit maximal object.
pub fn audited_nilpotency_exponent<P: PsiFunctional>(
    ring: &FiniteRing,
    r: Elem,
    psi: P,
    max_iters: usize,
) -> Result<(Extraction, Audit)> {
    if r == ring.zero() || r == ring.one() || !ring.contains(r) {
        let extraction = nilpotency_exponent(ring, r, psi, max_iters)?;
        return Ok((extraction, Audit { terminal_approx_max: true, ..Audit::default() }));
    }
    let enumeration = Enumeration::with_target(ring, r)?;
    let engine = nilradical_engine(&psi, &enumeration)?;
    let mut audit = Audit::default();
    let mut derive_error = None;
    let run = engine.run_observed(max_iters, |state| {
        audit.states += 1;
        if !engine.check_domain_invariant(state) {
            audit.domain_failures += 1;
        }
        match engine.functional().derive(state) {
            Ok(d) => {
                if let Some(cert) = &d.certificate {
                    audit.certificates += 1;
                    let gens: Vec<Elem> =
                        state.segment_with(d.query.bound).iter().map(|&n| enumeration.get(n)).collect();
                    let sound =
                        cert.check(ring, r) && state.is_in(d.query.bound) && neg_r_holds(ring, &gens, &d.query.code, r);
                    if !sound {
                        audit.certificate_failures += 1;
                    }
                }
            }
            Err(e) => derive_error = Some(e),
        }
    })?;
    if let Some(e) = derive_error {
        return Err(e);
    }
    audit.terminal_approx_max = engine.verify_approx_max(&run.final_state)?;
    let exponent = terminal_exponent(ring, r, &run.final_state)?;
    Ok((Extraction { exponent, enumeration: Some(enumeration), final_state: run.final_state, trace: run.trace }, audit))
}
