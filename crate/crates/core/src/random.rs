//! Seeded random instances for property checks and `verify`.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::ffcore::{FieldRef, Fq, KInf, Poly, RationalFunc};
use crate::lattice::{ConvexBody, Lattice};
use crate::linalg::{Matrix, MatRat};
use crate::periodic::{Frame, PeriodicLattice};

pub type InstanceRng = ChaCha8Rng;

pub fn rng(seed: u64) -> InstanceRng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// An independent stream for one cell of a grid.
pub fn stream(seed: u64, tag: u64) -> InstanceRng {
    ChaCha8Rng::seed_from_u64(seed ^ tag.wrapping_mul(0x9e37_79b9_7f4a_7c15))
}

const ATTEMPTS: usize = 1000;

pub fn element<R: Rng>(rng: &mut R, field: &FieldRef) -> Fq {
    field.element(rng.gen_range(0..field.q()))
}

pub fn nonzero_element<R: Rng>(rng: &mut R, field: &FieldRef) -> Fq {
    field.element(rng.gen_range(1..field.q()))
}

/// A polynomial of degree exactly `deg`.
pub fn poly_of_degree<R: Rng>(rng: &mut R, field: &FieldRef, deg: usize) -> Poly {
    let mut c: Vec<Fq> = (0..deg).map(|_| element(rng, field)).collect();
    c.push(nonzero_element(rng, field));
    Poly::new(field, c)
}

/// A polynomial of degree at most `max_deg` (possibly zero).
pub fn poly_up_to<R: Rng>(rng: &mut R, field: &FieldRef, max_deg: usize) -> Poly {
    Poly::new(field, (0..=max_deg).map(|_| element(rng, field)).collect())
}

pub fn monic<R: Rng>(rng: &mut R, field: &FieldRef, deg: usize) -> Poly {
    let mut c: Vec<Fq> = (0..deg).map(|_| element(rng, field)).collect();
    c.push(Fq::ONE);
    Poly::new(field, c)
}

/// A Laurent polynomial `Σ_{k=lo}^{top} c_k x^k` with a random top in `[lo, hi]`, or zero
/// with probability `zero_prob`.
pub fn laurent<R: Rng>(rng: &mut R, field: &FieldRef, lo: i64, hi: i64, zero_prob: f64) -> RationalFunc {
    if rng.gen_bool(zero_prob) {
        return RationalFunc::zero(field);
    }
    let top = rng.gen_range(lo..=hi);
    let p = poly_of_degree(rng, field, (top - lo) as usize);
    RationalFunc::from_poly(p).mul(&RationalFunc::x_pow(field, lo))
}

/// A random `d x d` matrix of Laurent polynomials with entry degrees in `[lo, hi]`,
/// resampled until nonsingular.
pub fn laurent_matrix<R: Rng>(rng: &mut R, field: &FieldRef, d: usize, lo: i64, hi: i64) -> Result<MatRat> {
    for _ in 0..ATTEMPTS {
        let m = Matrix::from_fn(d, d, |_, _| laurent(rng, field, lo, hi, 0.2));
        if !crate::linalg::ratmat::det(&m, field)?.is_zero() {
            return Ok(m);
        }
    }
    Err(Error::SingularInput("no nonsingular sample".into()))
}

pub fn lattice<R: Rng>(rng: &mut R, field: &FieldRef, d: usize, lo: i64, hi: i64) -> Result<Lattice> {
    Lattice::new(field, laurent_matrix(rng, field, d, lo, hi)?)
}

pub fn body<R: Rng>(rng: &mut R, field: &FieldRef, d: usize, lo: i64, hi: i64) -> Result<ConvexBody> {
    ConvexBody::new(field, laurent_matrix(rng, field, d, lo, hi)?)
}

/// The unit body half of the time, otherwise a random body with small entries.
pub fn unit_or_body<R: Rng>(rng: &mut R, field: &FieldRef, d: usize) -> Result<ConvexBody> {
    if rng.gen_bool(0.5) {
        Ok(ConvexBody::unit(field, d))
    } else {
        body(rng, field, d, -1, 1)
    }
}

/// `Λ(α, q^N)` with α given in reduced coordinates as `a_i / D`, `deg D ∈ {N+1, N+2}`,
/// resampled until α is N-irrational.
pub fn alpha_lattice<R: Rng>(rng: &mut R, lattice: &Lattice, n: u32) -> Result<PeriodicLattice> {
    let field = lattice.field();
    let d = lattice.dim();
    for _ in 0..ATTEMPTS {
        let deg = n as usize + 1 + rng.gen_range(0..2);
        let den = monic(rng, field, deg);
        let alpha: Vec<KInf> = (0..d)
            .map(|_| RationalFunc::new(poly_up_to(rng, field, deg - 1), den.clone()).map(KInf::Exact))
            .collect::<Result<_>>()?;
        match PeriodicLattice::alpha(lattice, &alpha, Frame::Reduced, n) {
            Err(Error::NRational { .. }) => continue,
            other => return other,
        }
    }
    Err(Error::Undefined("no N-irrational sample".into()))
}

/// A coset-form periodic lattice with `k` representatives `a_i / D` in reduced coordinates,
/// resampled until they are F_q-independent modulo Λ.
pub fn coset_lattice<R: Rng>(rng: &mut R, lattice: &Lattice, k: usize) -> Result<PeriodicLattice> {
    let field = lattice.field();
    let d = lattice.dim();
    for _ in 0..ATTEMPTS {
        let deg = rng.gen_range(1..=3);
        let den = monic(rng, field, deg);
        let reps: Vec<Vec<KInf>> = (0..k)
            .map(|_| {
                (0..d)
                    .map(|_| RationalFunc::new(poly_up_to(rng, field, deg - 1), den.clone()).map(KInf::Exact))
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<_>>()?;
        match PeriodicLattice::cosets(lattice, &reps) {
            Err(Error::InvalidReps(_)) => continue,
            other => return other,
        }
    }
    Err(Error::Undefined("no independent representatives".into()))
}

/// A random coefficient vector over K_∞ with entries `p / x^k`.
pub fn kinf_vector<R: Rng>(rng: &mut R, field: &FieldRef, d: usize) -> Vec<KInf> {
    (0..d)
        .map(|_| KInf::Exact(laurent(rng, field, -4, 4, 0.15)))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ffcore::Field;

    #[test]
    fn streams_are_reproducible() {
        let f = Field::prime(3).unwrap();
        let a = lattice(&mut stream(7, 1), &f, 3, -3, 3).unwrap();
        let b = lattice(&mut stream(7, 1), &f, 3, -3, 3).unwrap();
        assert_eq!(a, b);
        let c = lattice(&mut stream(7, 2), &f, 3, -3, 3).unwrap();
        assert_ne!(a, c);
    }

    #[test]
    fn samples_respect_degree_range() {
        let f = Field::with_order(4).unwrap();
        let mut r = rng(1);
        for _ in 0..50 {
            let x = laurent(&mut r, &f, -3, 3, 0.0);
            let e = x.abs().exponent().unwrap();
            assert!((-3..=3).contains(&e));
        }
    }

    #[test]
    fn alpha_samples_are_irrational() {
        let f = Field::prime(2).unwrap();
        let mut r = rng(3);
        let lat = lattice(&mut r, &f, 2, -2, 2).unwrap();
        for n in 0..3 {
            let s = alpha_lattice(&mut r, &lat, n).unwrap();
            assert_eq!(s.n(), Some(n));
        }
        let c = coset_lattice(&mut r, &lat, 2).unwrap();
        assert_eq!(c.period_size(), 2);
    }
}
