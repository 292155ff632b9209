//! Run the closed-form-versus-oracle suite on a seeded grid.
//!
//! `cargo run --release --example verify_grid -- "q=2;d=2;N=0,1" 7`

use ffperiodic::verify::{run_verify, GridSpec};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let mut args = std::env::args().skip(1);
    let grid: GridSpec = match args.next() {
        Some(g) => g.parse()?,
        None => "q=2;d=2;N=0,1;k=2".parse()?,
    };
    let seed = args.next().map(|s| s.parse()).transpose()?.unwrap_or(7);
    let report = run_verify(&grid, seed)?;
    print!("{report}");
    if !report.passed() {
        std::process::exit(2);
    }
    Ok(())
}
