//! Greedy construction of maximal ideals avoiding a property, by brute force.
//! Avoiding the powers of a non-nilpotent element yields a prime ideal.

use nci::oracle::{greedy_maximal, is_maximal, is_prime_ideal, min_nilpotency_exponent, powers};
use nci::ring::{Enumeration, FiniteRing};

fn main() -> nci::Result<()> {
    for n in [6u32, 10, 12, 18] {
        let ring = FiniteRing::modular(n)?;
        for r in ring.elements().filter(|&r| r.0 > 1 && min_nilpotency_exponent(&ring, r).is_none()) {
            let avoid = powers(&ring, r);
            let q = |x| !avoid.contains(x);
            let m = greedy_maximal(&Enumeration::with_target(&ring, r)?, q)?;
            println!(
                "ℤ{n}, r = {r:>2}: M = {:<20} maximal {} prime {}",
                m.display(&ring),
                is_maximal(&ring, &m, q),
                is_prime_ideal(&ring, &m)
            );
        }
    }

    let ring = FiniteRing::modular(12)?;
    let q = |x| x != ring.one();
    let m = greedy_maximal(&Enumeration::canonical(&ring), q)?;
    println!("ℤ12 avoiding 1: {}", m.display(&ring));
    Ok(())
}
