//! Arithmetic in F_q and in the completion F_q((1/x)).
//!
//! `cargo run --example field_arithmetic`

use ffperiodic::ffcore::parse::{parse_element, parse_rational};
use ffperiodic::ffcore::{abs_value, expand_rational, frac_part, Field};

fn main() -> ffperiodic::Result<()> {
    // F_4 = F_2[t]/(t^2 + t + 1)
    let f4 = Field::extension(2, &[1, 1, 1])?;
    let t = f4.generator()?;
    println!("{f4}: t^3 = {}", f4.format(f4.pow(t, 3)));
    for a in f4.elements().filter(|a| !a.is_zero()) {
        println!("  {} * {} = 1", f4.format(a), f4.format(f4.inv(a)?));
    }

    let f3 = Field::prime(3)?;
    let r = parse_rational(&f3, "(x^2 + 1)/(x^3 + 2*x)")?;
    println!("r = {r}, |r| = {}", abs_value(&r));
    println!("r up to x^-8: {}", expand_rational(&r, -8));

    let s = parse_element(&f3, "x + 2 + x^-1/(x - 1)")?;
    println!("s = {s}, |s| = {}", s.abs()?);
    println!("fractional part of s: {}", frac_part(&s.to_series(-6)));
    Ok(())
}
