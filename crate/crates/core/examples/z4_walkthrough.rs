//! The unit 1 + 2T in ℤ₄[T] is its own inverse, so its coefficient 2 is
//! nilpotent. Run the search and print every state it passes through.

use nci::cli::summarize;
use nci::poly::{nilpotent_coefficient_exponent, psi_from_inverse, Polynomial};
use nci::ring::{Elem, FiniteRing};

fn main() -> nci::Result<()> {
    let ring = FiniteRing::modular(4)?;
    let f = Polynomial::new(vec![Elem(1), Elem(2)]);
    let g = f.clone();

    let extraction = nilpotent_coefficient_exponent(&ring, &f, &g, 1, 100)?;
    let enumeration = extraction.enumeration.as_ref().expect("a₁ ≠ 0 runs the search");
    let psi = psi_from_inverse(&ring, &f, &g, 1)?;

    println!("f = {}, g = {}", f.display(&ring), g.display(&ring));
    println!("enumeration: {:?}", enumeration.elements().iter().map(|x| x.0).collect::<Vec<_>>());
    for step in summarize(enumeration, &psi, &extraction.trace)? {
        let m: Vec<u32> = step.members.iter().map(|x| x.0).collect();
        match (step.removed, &step.evidence) {
            (Some(n), Some(code)) => println!(
                "s{}: M = {m:?}, ψ = {}, remove x{n} = {} (coefficients {:?}, e = {})",
                step.i,
                step.verdict,
                enumeration.get(n).0,
                code.coefficients.iter().map(|c| c.0).collect::<Vec<_>>(),
                code.exponent
            ),
            _ => println!("s{}: M = {m:?}, ψ = {}, terminated", step.i, step.verdict),
        }
    }
    println!("2^{} = 0 in ℤ₄", extraction.exponent);
    Ok(())
}
