//! The quartic square-completion chain from r/s = 1469/84, checked against
//! the closed-form chain state by state.
//!
//!     cargo run --example quartic_lineage -- 3

use fermat_squares::{run_chain, run_quartic, BranchPolicy, FermatSolution};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let count = std::env::args().nth(1).map(|s| s.parse()).transpose()?.unwrap_or(3);
    run(count)
}

pub fn run(count: u64) -> Result<(), Box<dyn std::error::Error>> {
    let quartic = run_quartic(count)?;
    if let Some((k, e)) = &quartic.failure {
        println!("quartic chain stopped at k = {k}: {e}");
    }
    let closed = run_chain(&FermatSolution::seed(), count as usize, &BranchPolicy::default())?;

    for (state, step) in quartic.states().zip(closed.steps.iter()) {
        println!("k = {}: t = {}", state.k, state.t);
        println!("  sqrt z       = {}", state.e());
        println!("  sqrt (x + y) = {}", state.f()?);
        let same = state.to_solution()? == step.solution;
        println!("  matches closed-form step {}: {same}", step.solution.chain_index());
    }
    for step in &quartic.steps {
        if step.t_not_above_one {
            println!("note: t_{} = {} is not above 1", step.state.k, step.state.t);
        }
    }
    Ok(())
}
