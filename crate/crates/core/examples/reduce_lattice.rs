//! Reduced bases and successive minima of a lattice for two convex bodies.
//!
//! `cargo run --example reduce_lattice`

use ffperiodic::ffcore::parse::parse_rational;
use ffperiodic::ffcore::Field;
use ffperiodic::lattice::{covrad_lattice, reduce_lattice, ConvexBody, Lattice};
use ffperiodic::linalg::Matrix;

fn main() -> ffperiodic::Result<()> {
    let f = Field::prime(2)?;
    let e = |s: &str| parse_rational(&f, s).expect("valid element");
    // basis vectors are the columns
    let g = Matrix::from_rows(vec![
        vec![e("x^3 + 1"), e("x^4 + x")],
        vec![e("x^2"), e("x^3 + x + 1")],
    ])?;
    let lat = Lattice::new(&f, g)?;
    println!("log_q det = {}", lat.log_det());

    for (name, body) in [
        ("unit ball", ConvexBody::unit(&f, 2)),
        ("box x^-1 O + x^2 O", ConvexBody::new(&f, Matrix::from_rows(vec![
            vec![e("x^-1"), e("0")],
            vec![e("0"), e("x^2")],
        ])?)?),
    ] {
        let red = reduce_lattice(&lat, &body)?;
        let sum: i64 = red.exponents.iter().sum();
        println!("{name}: minima exponents {:?}", red.exponents);
        println!("  sum {sum} = log det - log m(C) = {}", lat.log_det() - body.log_m());
        println!("  covering radius {}", covrad_lattice(&lat, &body)?);
        print!("{red}");
    }
    Ok(())
}
