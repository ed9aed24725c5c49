//! Save a run as JSON lines, load it back and replay it to the same state.

use nci::engine::Trace;
use nci::generation::WitnessCode;
use nci::nilradical::{nilpotency_exponent, terminal_exponent, FinitePsi};
use nci::ring::{Elem, FiniteRing};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let ring = FiniteRing::modular(16)?;
    let r = Elem(4);
    let x = nilpotency_exponent(&ring, r, FinitePsi::default(), 2_560)?;

    let path = std::env::temp_dir().join("nci-trace.jsonl");
    std::fs::write(&path, x.trace.to_json_lines())?;
    let text = std::fs::read_to_string(&path)?;
    println!("{}", text.lines().take(3).collect::<Vec<_>>().join("\n"));
    println!("... {} lines in {}", text.lines().count(), path.display());

    let loaded: Trace<WitnessCode> = Trace::from_json_lines(&text)?;
    let state = loaded.replay();
    assert_eq!(state, x.final_state);
    println!("replayed exponent: {}", terminal_exponent(&ring, r, &state)?);
    Ok(())
}
