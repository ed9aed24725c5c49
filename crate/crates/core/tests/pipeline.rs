mod common;

use common::{nontrivial_nilpotents, ring, zn};
use nci::generation::WitnessCode;
use nci::nilradical::{
    audited_nilpotency_exponent, default_max_iters, nilpotency_exponent, nilradical_engine, terminal_exponent,
    FinitePsi,
};
use nci::oracle::min_nilpotency_exponent;
use nci::poly::{nilpotent_coefficient_exponent, Polynomial};
use nci::ring::{Elem, Enumeration, FiniteRing};
use nci::{Error, State};

fn poly(ring: &FiniteRing, text: &str) -> Polynomial {
    Polynomial::parse(ring, text).unwrap()
}

#[test]
fn z4_poly_run_matches_worked_example() {
    let z4 = zn(4);
    let f = poly(&z4, "1,2");
    let x = nilpotent_coefficient_exponent(&z4, &f, &f, 1, 100).unwrap();
    assert_eq!(x.exponent, 2);
    assert_eq!(x.trace.removals().collect::<Vec<_>>(), vec![1, 2, 0]);
    assert_eq!(x.trace.steps[0].p, WitnessCode::new(vec![Elem(0), Elem(2)], 1));
    assert_eq!(x.trace.steps[2].p.exponent, 2);
    assert_eq!(x.trace.len(), 4);
}

#[test]
fn z8_unit_gives_valid_exponent() {
    let z8 = zn(8);
    let x = nilpotent_coefficient_exponent(&z8, &poly(&z8, "1,2"), &poly(&z8, "1,6,4"), 1, 640).unwrap();
    assert!(x.exponent >= 3);
    assert_eq!(z8.pow(Elem(2), x.exponent), Elem(0));
}

#[test]
fn z8_finite_psi_is_quick() {
    let z8 = zn(8);
    let x = nilpotency_exponent(&z8, Elem(2), FinitePsi::default(), 64).unwrap();
    assert!(x.trace.len() <= 64);
    assert!(x.exponent >= 3);
}

#[test]
fn trivial_and_rejected_targets() {
    let z9 = zn(9);
    let x = nilpotency_exponent(&z9, Elem(0), FinitePsi::default(), 10).unwrap();
    assert_eq!(x.exponent, 1);
    assert!(x.trace.is_empty());
    assert_eq!(nilpotency_exponent(&z9, Elem(1), FinitePsi::default(), 10), Err(Error::UnitTarget));
    let z6 = zn(6);
    let err = nilpotency_exponent(&z6, Elem(2), FinitePsi::default(), 360).unwrap_err();
    assert!(matches!(err, Error::NotInAllPrimes { .. }));
    assert!(err.to_string().contains("not nilpotent"));
    assert!(err.is_precondition());
}

#[test]
fn polynomial_preconditions() {
    let z4 = zn(4);
    let f = poly(&z4, "1,2");
    let bad = poly(&z4, "1,3");
    assert_eq!(nilpotent_coefficient_exponent(&z4, &f, &bad, 1, 100), Err(Error::NotInverse));
    assert!(matches!(nilpotent_coefficient_exponent(&z4, &f, &f, 0, 100), Err(Error::CoefficientIndex { .. })));
}

#[test]
fn product_rings_audit_cleanly() {
    for desc in ["prod:zn:4,zn:2", "prod:zn:4,zn:9", "prod:zn:8,zn:2", "prod:zn:2,prod:zn:2,zn:4"] {
        let ring = ring(desc);
        for r in nontrivial_nilpotents(&ring) {
            let (x, audit) =
                audited_nilpotency_exponent(&ring, r, FinitePsi::default(), default_max_iters(&ring)).unwrap();
            assert!(audit.passed(), "{desc} r={}: {audit:?}", ring.display(r));
            assert!(x.exponent >= min_nilpotency_exponent(&ring, r).unwrap());
        }
    }
}

#[test]
fn corrupted_terminal_state_is_detected() {
    let z4 = zn(4);
    let enumeration = Enumeration::with_target(&z4, Elem(2)).unwrap();
    let engine = nilradical_engine(FinitePsi::default(), &enumeration).unwrap();
    let run = engine.run(100).unwrap();
    assert!(engine.verify_approx_max(&run.final_state).unwrap());

    let mut code = run.final_state.code(0).unwrap().clone();
    code.exponent = 0;
    let corrupted: State<WitnessCode> = State::initial().excluding(0, code);
    assert!(!engine.verify_approx_max(&corrupted).unwrap());
    assert!(!engine.check_domain_invariant(&corrupted));
    assert!(matches!(terminal_exponent(&z4, Elem(2), &corrupted), Err(Error::InternalInvariant(_))));
}

#[test]
fn zero_ring_has_no_search() {
    let z1 = zn(1);
    let x = nilpotency_exponent(&z1, Elem(0), FinitePsi::default(), 10).unwrap();
    assert_eq!(x.exponent, 1);
}
