//! Upper bounds on the successive minima and the two-sided estimate via the d-invariant.
//!
//! `cargo run --release --example bounds_report`

use ffperiodic::ffcore::Field;
use ffperiodic::lattice::ConvexBody;
use ffperiodic::periodic::{check_bounds, d_invariant, PeriodicLattice};
use ffperiodic::random;

fn show(s: &PeriodicLattice, body: &ConvexBody) -> ffperiodic::Result<()> {
    let rep = check_bounds(s, body)?;
    println!("minima {:?}, log det {}, log m(C) {}", rep.exponents, rep.log_det, rep.log_m);
    println!("  d e_1 <= {}: {}, sum e_i <= {}: {}", rep.bound, rep.lambda1_ok, rep.bound, rep.product_ok);
    match (&rep.sandwich, &rep.sandwich_skipped) {
        (Some(sw), _) => println!(
            "  d-invariant q^{}: {} <= {} <= {} ({}, hypothesis {})",
            sw.d_exp,
            sw.lower,
            sw.product,
            sw.upper,
            if sw.holds() { "holds" } else { "violated" },
            sw.hypothesis
        ),
        (None, Some(why)) => println!("  two-sided estimate skipped: {why}"),
        (None, None) => {}
    }
    Ok(())
}

fn main() -> ffperiodic::Result<()> {
    let f = Field::prime(2)?;
    let mut rng = random::rng(3);
    for _ in 0..4 {
        let lat = random::lattice(&mut rng, &f, 2, -2, 2)?;
        let s = random::alpha_lattice(&mut rng, &lat, 1)?;
        let body = ConvexBody::unit(&f, 2);
        show(&s, &body)?;
        println!("  d(S) = {}", d_invariant(&s, &body)?);
    }
    Ok(())
}
