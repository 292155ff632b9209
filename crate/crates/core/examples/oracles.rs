//! The brute-force oracles next to the closed forms they check.
//!
//! `cargo run --release --example oracles`

use ffperiodic::ffcore::Field;
use ffperiodic::lattice::ConvexBody;
use ffperiodic::oracle::{self, Window};
use ffperiodic::periodic::{count_points, packing_density, succ_minima_periodic};
use ffperiodic::random;

fn main() -> ffperiodic::Result<()> {
    let f = Field::prime(3)?;
    let mut rng = random::rng(5);
    let lat = random::lattice(&mut rng, &f, 2, -1, 2)?;
    let s = random::alpha_lattice(&mut rng, &lat, 1)?;
    let body = ConvexBody::unit(&f, 2);

    for r in 0..=2 {
        let pts = oracle::enumerate_points(&s, &body, &Window::new(r))?;
        println!("R = {r}: enumerated {}, closed form {}", pts.len(), count_points(&s, &body, r)?);
    }
    let m = succ_minima_periodic(&s, &body)?;
    println!("minima {:?}, oracle {:?}", m.exponents, oracle::succmin_oracle(&s, &body)?);
    let threshold = oracle::density_threshold(&s, &body)?;
    println!(
        "density {}, oracle at R = {threshold}: {}",
        packing_density(&s, &body)?,
        oracle::density_oracle(&s, &body, threshold)?
    );
    Ok(())
}
