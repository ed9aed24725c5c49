//! Witness extraction for maximal ideals over finite commutative rings.
//!
//! The [`engine`] runs a state-based search that produces approximate
//! explicit maximal objects for any counterexample functional. The
//! [`nilradical`] module instantiates it to turn evidence that an element lies
//! in every prime ideal into an explicit nilpotency exponent, and [`poly`]
//! supplies that evidence for coefficients of invertible polynomials.
//! [`oracle`] holds brute-force ground truth used to cross-check results.

pub mod cli;
pub mod engine;
pub mod error;
pub mod generation;
pub mod nilradical;
pub mod oracle;
pub mod poly;
pub mod ring;

pub use engine::{Engine, Outcome, Query, Run, State, StateEntry, Step, Trace, TraceStep};
pub use error::{Error, Result};
pub use generation::{check_certificate, ideal_closure, lin_comb, neg_r_holds, Certificate, WitnessCode};
pub use nilradical::{nilpotency_exponent, Extraction, FinitePsi, PsiFunctional, PsiVerdict, ScanOrder};
pub use poly::{nilpotent_coefficient_exponent, psi_from_inverse, InversePsi, Polynomial};
pub use ring::{Elem, ElementSet, Enumeration, FiniteRing};
