//! Covering radius by the Hankel rank scan, its a priori bounds, and the brute-force oracle.
//!
//! `cargo run --release --example covering_radius`

use ffperiodic::ffcore::parse::parse_element;
use ffperiodic::ffcore::Field;
use ffperiodic::hankel::{covrad_bounds, covrad_periodic};
use ffperiodic::lattice::{ConvexBody, Lattice};
use ffperiodic::oracle::{covrad_oracle, Window};
use ffperiodic::periodic::{Frame, PeriodicLattice};
use ffperiodic::random;

fn report(s: &PeriodicLattice, body: &ConvexBody) -> ffperiodic::Result<()> {
    let r = covrad_periodic(s, body)?;
    for step in &r.steps {
        let rank = step.rank.map_or("-".to_string(), |k| k.to_string());
        println!("  l = {:>2}: target {}, rank {rank}, holds {}", step.ell, step.target, step.holds);
    }
    let b = covrad_bounds(s.lattice(), s.n().unwrap_or(0), body)?;
    let o = covrad_oracle(s, body, &Window::new(0).with_depth(12))?;
    println!("  CovRad = {} (gamma {}), oracle {o}", r.value(), r.gamma);
    println!("  bounds q^({}) .. q^{}", b.lower, b.upper);
    Ok(())
}

fn main() -> ffperiodic::Result<()> {
    let f = Field::prime(2)?;
    let lat = Lattice::standard(&f, 2)?;
    let alpha = [parse_element(&f, "x^-1")?, parse_element(&f, "x^-2")?];
    println!("alpha = (x^-1, x^-2), N = 1:");
    report(&PeriodicLattice::alpha(&lat, &alpha, Frame::Reduced, 1)?, &ConvexBody::unit(&f, 2))?;

    let mut rng = random::rng(11);
    let f3 = Field::prime(3)?;
    let lat = random::lattice(&mut rng, &f3, 3, -2, 2)?;
    let s = random::alpha_lattice(&mut rng, &lat, 1)?;
    println!("random q = 3, d = 3, N = 1:");
    report(&s, &ConvexBody::unit(&f3, 3))
}
