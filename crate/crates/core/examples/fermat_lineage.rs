//! Walk the closed-form chain from the negative seed (−119, 120, 169).
//!
//! Step 1 (t1) gives the smallest positive solution; from there t1 gives the
//! next positive primitive and t2 a negative one. The negative solution from
//! the seed's t2 branch is stepped once more on both branches.
//!
//!     cargo run --example fermat_lineage

use fermat_squares::{chain_step, Branch, ChainStep, FermatSolution};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    run()
}

fn show(label: &str, step: &ChainStep) {
    let s = &step.solution;
    println!("{label}");
    println!("  (a, b, c, d) = ({}, {}, {}, {})", step.system.a, step.system.b, step.system.c, step.system.d);
    println!("  t = {}   lambda = {}", step.t, step.lambda);
    println!("  x = {}", s.x());
    println!("  y = {}", s.y());
    println!("  e = {}   f = {}   [{}]", s.e(), s.f(), s.classification());
}

pub fn run() -> Result<(), Box<dyn std::error::Error>> {
    let seed = FermatSolution::seed();
    println!("seed ({}, {}, {}), e = {}, f = {}", seed.x(), seed.y(), seed.z(), seed.e(), seed.f());

    let fermat = chain_step(&seed, Branch::T1)?;
    show("seed -t1->", &fermat);
    let negative = chain_step(&seed, Branch::T2)?;
    show("seed -t2->", &negative);

    show("fermat -t1->", &chain_step(&fermat.solution, Branch::T1)?);
    show("fermat -t2->", &chain_step(&fermat.solution, Branch::T2)?);

    show("negative -t1->", &chain_step(&negative.solution, Branch::T1)?);
    show("negative -t2->", &chain_step(&negative.solution, Branch::T2)?);
    Ok(())
}
