//! Cross-check every nilpotent element of several rings against the
//! brute-force oracles, with both violation scan orders.

use nci::cli::verify_rows;
use nci::nilradical::ScanOrder;
use nci::ring::FiniteRing;

fn main() -> nci::Result<()> {
    let rings = ["zn:8", "zn:16", "zn:24", "prod:zn:2,zn:4", "prod:zn:4,zn:4", "prod:zn:2,prod:zn:2,zn:4"];
    for order in [ScanOrder::LowestIndex, ScanOrder::FirstHit] {
        println!("{order:?}");
        for desc in rings {
            let ring: FiniteRing = desc.parse()?;
            let rows = verify_rows(&ring, order)?;
            let failed: Vec<_> = rows.iter().filter(|r| !r.pass).collect();
            println!("  {desc:<26} {} checks, {} failed", rows.len(), failed.len());
            for row in failed {
                println!("    {}: {}", row.check, row.detail);
            }
        }
    }
    Ok(())
}
