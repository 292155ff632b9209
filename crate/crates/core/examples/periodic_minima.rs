//! Successive minima, packing and point counts of Λ(α, q^N).
//!
//! `cargo run --example periodic_minima`

use ffperiodic::ffcore::parse::parse_element;
use ffperiodic::ffcore::Field;
use ffperiodic::lattice::{ConvexBody, Lattice};
use ffperiodic::periodic::{
    count_points, packing_density, packing_radius, succ_minima_periodic, Frame, PeriodicLattice,
};

fn main() -> ffperiodic::Result<()> {
    let f = Field::prime(2)?;
    let lat = Lattice::standard(&f, 2)?;
    let alpha = [parse_element(&f, "x^-1")?, parse_element(&f, "x^-2")?];
    let body = ConvexBody::unit(&f, 2);

    for n in [0, 1] {
        let s = PeriodicLattice::alpha(&lat, &alpha, Frame::Reduced, n)?;
        let m = succ_minima_periodic(&s, &body)?;
        println!("N = {n}: period q^{}", s.period_size());
        println!("  minima exponents {:?}", m.exponents);
        for w in &m.witnesses {
            println!("    witness ({})", w.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(", "));
        }
        println!("  packing radius {}", packing_radius(&s, &body)?);
        println!("  packing density {}", packing_density(&s, &body)?);
        for r in [-1, 0, 1, 2] {
            println!("  #(S in x^{r} O^2) = {}", count_points(&s, &body, r)?);
        }
    }
    Ok(())
}
