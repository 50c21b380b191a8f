//! Check a candidate (x, y, z) against x² + y² = z² = e⁴, x + y = f².
//!
//!     cargo run --example verify_solution -- -119 120 169

use fermat_squares::cli::cmd_verify;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let args: Vec<String> = std::env::args().skip(1).collect();
    if let [x, y, z] = args.as_slice() {
        return run(&[(x.as_str(), y.as_str(), z.as_str())]);
    }
    run(&[
        ("4565486027761", "1061652293520", "4687298610289"),
        ("-119", "120", "169"),
        ("3", "4", "5"),
    ])
}

pub fn run(candidates: &[(&str, &str, &str)]) -> Result<(), Box<dyn std::error::Error>> {
    for (x, y, z) in candidates {
        let report = cmd_verify(x, y, z).map_err(|e| e.to_string())?;
        println!("{}", report.to_json_line());
    }
    Ok(())
}
