//! Searching a convex body for a nonzero point of a periodic lattice.
//!
//! m(C) > det(Λ)/q^{n+d} forces a point. The larger measure m(C + D ∩ S) does not: the
//! second instance satisfies it with S ∩ C = {0}.
//!
//! `cargo run --example minkowski_search`

use ffperiodic::ffcore::parse::{parse_element, parse_rational};
use ffperiodic::ffcore::Field;
use ffperiodic::lattice::{diagonal, ConvexBody, Lattice};
use ffperiodic::periodic::{minkowski_search, Frame, MinkowskiOutcome, PeriodicLattice};

fn show(name: &str, s: &PeriodicLattice, body: &ConvexBody) -> ffperiodic::Result<()> {
    let rep = minkowski_search(s, body)?;
    println!("{name}");
    println!(
        "  m(C + D∩S) = q^{}, m(C) = q^{}, det/q^(n+d) = q^{}",
        rep.measure_exp, rep.volume_exp, rep.threshold_exp
    );
    println!("  hypothesis {}, measure condition {}", rep.hypothesis_holds(), rep.measure_condition());
    match rep.outcome {
        MinkowskiOutcome::Found(v) => {
            println!("  found ({})", v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(", "))
        }
        MinkowskiOutcome::NotFound => println!("  no nonzero point of S in C"),
        MinkowskiOutcome::Inapplicable => println!("  nothing claimed"),
    }
    Ok(())
}

fn main() -> ffperiodic::Result<()> {
    let f = Field::prime(2)?;
    let e = |s: &str| parse_element(&f, s).expect("valid element");

    let w = PeriodicLattice::alpha(&Lattice::standard(&f, 2)?, &[e("x^-1"), e("x^-2")], Frame::Reduced, 1)?;
    show("alpha = (x^-1, x^-2), N = 1, ball of radius q^-1", &w, &ConvexBody::ball(&f, 2, -1))?;

    let r = |s: &str| parse_rational(&f, s).expect("valid element");
    let lat = Lattice::new(&f, diagonal(&f, &[r("x"), r("x^2")]))?;
    let s = PeriodicLattice::alpha(&lat, &[e("x^-1"), e("x^-1")], Frame::Reduced, 0)?;
    show("diag(x, x^2), alpha = (x^-1, x^-1), N = 0, unit ball", &s, &ConvexBody::unit(&f, 2))?;

    show("same lattice, ball of radius q^3", &s, &ConvexBody::ball(&f, 2, 3))
}
