//! The search engine is independent of rings. Here a code is a budget and a
//! set of indices is refuted by budget b when its sum exceeds b. With a
//! fixed budget the search keeps the greedy prefix that fits and drops the
//! rest one index at a time.

use nci::engine::{Engine, Query, State};

fn main() -> nci::Result<()> {
    let universe = 10;
    let budget = 17u64;
    let functional = |_: &State<u64>| Ok(Query::new(universe - 1, budget));
    let refutes = |segment: &[usize], b: &u64| segment.iter().map(|&n| n as u64).sum::<u64>() > *b;
    let engine = Engine::new(functional, refutes, universe);
    let run = engine.run(100)?;
    for step in &run.trace.steps {
        println!("{}", serde_json::to_string(step).unwrap());
    }
    let kept: Vec<usize> = run.final_state.members(universe).collect();
    println!("kept {kept:?}, sum {}", kept.iter().sum::<usize>());
    println!("approximately maximal: {}", engine.verify_approx_max(&run.final_state)?);
    println!("stored evidence valid: {}", engine.check_domain_invariant(&run.final_state));
    Ok(())
}
