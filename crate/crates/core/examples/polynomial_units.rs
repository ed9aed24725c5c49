//! Every non-constant coefficient of a unit polynomial is nilpotent. Build a
//! unit in ℤ₈[T], check its inverse, and extract an exponent per coefficient.

use nci::poly::{is_inverse_pair, nilpotent_coefficient_exponent, poly_mul, Polynomial};
use nci::ring::FiniteRing;

fn main() -> nci::Result<()> {
    let ring = FiniteRing::modular(8)?;
    let f = Polynomial::parse(&ring, "1,2")?;
    let g = Polynomial::parse(&ring, "1,6,4")?;
    println!("({}) · ({}) = {}", f.display(&ring), g.display(&ring), poly_mul(&ring, &f, &g).display(&ring));
    assert!(is_inverse_pair(&ring, &f, &g));

    let f = Polynomial::parse(&ring, "3,4,2,6")?;
    let g = inverse_by_series(&ring, &f, 12);
    println!("f = {}\ng = {}", f.display(&ring), g.display(&ring));
    assert!(is_inverse_pair(&ring, &f, &g));
    for i in 1..f.coefficients().len() {
        let x = nilpotent_coefficient_exponent(&ring, &f, &g, i, 10_000)?;
        println!("a{i} = {}: e = {} after {} steps", ring.display(f.coeff(i)), x.exponent, x.trace.len());
    }
    Ok(())
}

// Power-series inverse truncated at `terms`; exact once the tail vanishes.
fn inverse_by_series(ring: &FiniteRing, f: &Polynomial, terms: usize) -> Polynomial {
    let a0_inv = ring.elements().find(|&u| ring.mul(u, f.coeff(0)) == ring.one()).expect("unit constant term");
    let mut b = vec![a0_inv];
    for k in 1..terms {
        let s = ring.sum((1..=k).map(|j| ring.mul(f.coeff(j), b[k - j])));
        b.push(ring.neg(ring.mul(a0_inv, s)));
    }
    Polynomial::new(b).normalized()
}
