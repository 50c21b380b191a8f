//! Exhaustive search for x² + (x + 1)² = w⁴.
//!
//!     cargo run --release --example fourth_power_search -- 1000000

use std::time::Instant;

use fermat_squares::brute_force_w4;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let bound = std::env::args().nth(1).map(|s| s.parse()).transpose()?.unwrap_or(100_000);
    run(bound)
}

pub fn run(bound: u64) -> Result<(), Box<dyn std::error::Error>> {
    let start = Instant::now();
    let found = brute_force_w4(bound);
    for (x, w) in &found {
        println!("x = {x}, w = {w}: {x}² + ({x} + 1)² = {w}⁴");
    }
    println!("{} solution(s) with x <= {bound} in {:?}", found.len(), start.elapsed());
    Ok(())
}
