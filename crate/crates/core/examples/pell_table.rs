//! Solutions of u² − 2v² = ±1 and the index identities between them.
//!
//!     cargo run --example pell_table -- 12

use fermat_squares::pell::{pell_back, pell_double, pell_odd_from_half, pell_pairs};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let count = std::env::args().nth(1).map(|s| s.parse()).transpose()?.unwrap_or(10);
    run(count)
}

pub fn run(count: u64) -> Result<(), Box<dyn std::error::Error>> {
    println!("{:>3} {:>12} {:>12} {:>4}", "k", "u", "v", "norm");
    for p in pell_pairs(count) {
        println!("{:>3} {:>12} {:>12} {:>4}", p.k, p.u, p.v, p.norm());
        assert!(p.is_valid());
        if p.k >= 2 {
            let back = pell_back(&p)?;
            assert_eq!(pell_double(&back).k, 2 * (p.k - 1));
        }
        let odd = pell_odd_from_half(&p);
        assert_eq!(odd.norm(), odd.expected_norm());
    }
    Ok(())
}
