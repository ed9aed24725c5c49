//! Extract exponents for nilpotent elements of a few rings and compare them
//! with the least exponent found by brute force.

use nci::nilradical::{default_max_iters, nilpotency_exponent, FinitePsi};
use nci::oracle::{min_nilpotency_exponent, nilradical};
use nci::ring::FiniteRing;

fn main() -> nci::Result<()> {
    for desc in ["zn:8", "zn:12", "zn:27", "prod:zn:4,zn:9"] {
        let ring: FiniteRing = desc.parse()?;
        for r in nilradical(&ring).iter().filter(|&r| r != ring.zero()) {
            let x = nilpotency_exponent(&ring, r, FinitePsi::default(), default_max_iters(&ring))?;
            let min = min_nilpotency_exponent(&ring, r).unwrap();
            println!(
                "{desc:>16}  r = {:<6} e = {}  (least {min}, {} steps)",
                ring.display(r),
                x.exponent,
                x.trace.len()
            );
        }
    }
    Ok(())
}
