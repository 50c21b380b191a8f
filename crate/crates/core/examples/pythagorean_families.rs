//! The two Pell-indexed families: arm sum a square, and hypotenuse a square.
//!
//!     cargo run --example pythagorean_families -- 6

use fermat_squares::triples::{hyp_square_family, sum_square_family, FamilyRow};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let rows = std::env::args().nth(1).map(|s| s.parse()).transpose()?.unwrap_or(5);
    run(rows)
}

fn print_row(label: &str, row: &FamilyRow) {
    println!(
        "{label} {:>2}: u={} v={}  ({}, {}, {})  square root = {}",
        row.index, row.pell.u, row.pell.v, row.x, row.y, row.z, row.square_value
    );
}

pub fn run(rows: u64) -> Result<(), Box<dyn std::error::Error>> {
    println!("x + y = u²");
    for s in 1..=rows {
        let row = sum_square_family(s)?;
        assert!(row.is_valid());
        print_row("s", &row);
    }
    println!("z = v²");
    for r in 1..=rows {
        let row = hyp_square_family(r)?;
        assert!(row.is_valid());
        print_row("r", &row);
    }
    Ok(())
}
