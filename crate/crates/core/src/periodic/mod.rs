//! Periodic lattices: `Λ(α, q^N) = ⋃_{deg Q ≤ N} (Qα + Λ)` and general `(Λ, q^n)`-periodic
//! lattices given by coset representatives.
//!
//! A periodic lattice `S` is stored with its data in ambient coordinates. All invariants are
//! computed through a [`BodyView`]: the reduced basis of Λ for the chosen body together with
//! an F_q-basis of `S ∩ D` in fractional coordinates, where `D = 𝔪v^(1) + ... + 𝔪v^(d)`.

mod invariants;

pub use invariants::{
    check_bounds, count_points, d_invariant, frac_orbit, minkowski_search, packing_density,
    packing_radius, succ_minima_periodic, BoundsReport, MinkowskiOutcome, MinkowskiReport,
    Sandwich, SuccessiveMinima,
};

use crate::error::{Error, Result};
use crate::ffcore::{FieldRef, Fq, KInf, Poly, QExp};
use crate::lattice::{reduce_lattice, ConvexBody, Lattice, ReducedBasis};
use crate::linalg::MatFq;

/// Largest number of coset representatives any routine will enumerate by default.
pub const DEFAULT_CAP: u128 = 1 << 20;

/// Coordinate frame of user-supplied vectors.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Frame {
    Ambient,
    /// Coefficients with respect to the reduced basis of Λ for the unit body.
    Reduced,
}

#[derive(Debug, Clone, PartialEq)]
pub enum PeriodicForm {
    /// `Λ(α, q^N)`; `alpha` is in ambient coordinates, already reduced into D.
    Alpha { alpha: Vec<KInf>, n: u32 },
    /// `S = span_{F_q}(reps) + Λ`; `reps` in ambient coordinates.
    Coset { reps: Vec<Vec<KInf>> },
}

#[derive(Debug, Clone, PartialEq)]
pub struct PeriodicLattice {
    lattice: Lattice,
    form: PeriodicForm,
    base: ReducedBasis,
    cap: u128,
}

/// Membership in 𝔪: every coefficient at an exponent >= 0 is known and zero.
fn in_m(x: &KInf) -> Result<bool> {
    match x {
        KInf::Exact(r) => Ok(r.abs() < QExp::ONE),
        KInf::Approx(s) => {
            if s.floor() > 0 {
                Err(Error::precision("membership in the fractional domain", 0, s.floor()))
            } else {
                Ok(s.top() < 0)
            }
        }
    }
}

/// Componentwise fractional part.
pub fn frac_vec(v: &[KInf]) -> Vec<KInf> {
    v.iter().map(KInf::frac).collect()
}

/// Rank over F_q of vectors with entries in 𝔪, read off their expansion coefficients.
///
/// For exact entries the depth `deg lcm(denominators)` per coordinate is enough: a nonzero
/// combination with that denominator has absolute value at least q^{-depth}. Returns
/// `InsufficientPrecision` when truncated entries leave a dependence undecided.
pub fn fq_rank(field: &FieldRef, vectors: &[Vec<KInf>]) -> Result<usize> {
    if vectors.is_empty() {
        return Ok(0);
    }
    let d = vectors[0].len();
    let mut rows: Vec<Vec<Fq>> = Vec::new();
    let mut truncated: Option<i64> = None;
    for i in 0..d {
        let lcm = vectors
            .iter()
            .filter_map(|v| v[i].as_exact())
            .fold(Poly::one(field), |acc, r| acc.lcm(r.den()));
        // deepest exponent at which every entry of this coordinate is known
        let floor = match vectors.iter().filter_map(|v| v[i].precision()).max() {
            Some(a) => {
                truncated = Some(truncated.map_or(a, |t: i64| t.max(a)));
                a
            }
            None => -lcm.deg().max(0),
        };
        for e in (floor..=-1).rev() {
            rows.push(vectors.iter().map(|v| v[i].coeff(e)).collect::<Result<Vec<_>>>()?);
        }
    }
    let rank = if rows.is_empty() {
        0
    } else {
        MatFq::from_rows(field, &rows)?.rank()
    };
    if rank < vectors.len() {
        if let Some(f) = truncated {
            return Err(Error::precision("F_q-independence of fractional vectors", f - 1, f));
        }
    }
    Ok(rank)
}

impl PeriodicLattice {
    /// Build `Λ(α, q^N)`, reducing α into D and checking N-irrationality.
    ///
    /// For exact α the check is decisive: α is N-rational iff the lcm `L` of the
    /// denominators of its reduced coordinates has degree <= N, and then `L α ∈ Λ`.
    pub fn alpha(lattice: &Lattice, alpha: &[KInf], frame: Frame, n: u32) -> Result<Self> {
        let field = lattice.field();
        if alpha.len() != lattice.dim() {
            return Err(Error::DimensionMismatch(format!(
                "alpha has {} coordinates, lattice dimension is {}",
                alpha.len(),
                lattice.dim()
            )));
        }
        let base = reduce_lattice(lattice, &ConvexBody::unit(field, lattice.dim()))?;
        let coords = match frame {
            Frame::Ambient => base.coordinates(alpha),
            Frame::Reduced => alpha.to_vec(),
        };
        let frac = frac_vec(&coords);
        if frac.iter().all(KInf::is_exact) {
            let lcm = frac
                .iter()
                .fold(Poly::one(field), |acc, x| acc.lcm(x.as_exact().unwrap().den()));
            if lcm.deg() <= n as i64 {
                return Err(Error::NRational {
                    witness: lcm.to_string(),
                });
            }
        } else {
            let gens: Vec<Vec<KInf>> = (0..=n as usize)
                .map(|j| {
                    let xj = Poly::monomial(field, Fq::ONE, j);
                    frac_vec(&frac.iter().map(|c| c.mul_poly(&xj)).collect::<Vec<_>>())
                })
                .collect();
            let rank = fq_rank(field, &gens)?;
            if rank <= n as usize {
                return Err(Error::NRational {
                    witness: "a polynomial of degree <= N (series data)".into(),
                });
            }
        }
        Ok(PeriodicLattice {
            lattice: lattice.clone(),
            form: PeriodicForm::Alpha {
                alpha: base.ambient(&frac),
                n,
            },
            base,
            cap: DEFAULT_CAP,
        })
    }

    /// Build `S = span(reps) + Λ` from representatives given in reduced coordinates.
    pub fn cosets(lattice: &Lattice, reps: &[Vec<KInf>]) -> Result<Self> {
        let field = lattice.field();
        let d = lattice.dim();
        let base = reduce_lattice(lattice, &ConvexBody::unit(field, d))?;
        let mut floors = reps.iter().flatten().filter_map(KInf::precision);
        if let Some(first) = floors.next() {
            if floors.any(|f| f != first) {
                return Err(Error::InvalidReps(
                    "truncated representatives must share one precision floor".into(),
                ));
            }
        }
        for (j, r) in reps.iter().enumerate() {
            if r.len() != d {
                return Err(Error::InvalidReps(format!("rep {j} has {} coordinates, expected {d}", r.len())));
            }
            for x in r {
                if !in_m(x)? {
                    return Err(Error::InvalidReps(format!(
                        "rep {j} is not in the fundamental domain (a coordinate has |.| >= 1)"
                    )));
                }
            }
        }
        if fq_rank(field, reps)? < reps.len() {
            return Err(Error::InvalidReps("representatives are F_q-linearly dependent".into()));
        }
        Ok(PeriodicLattice {
            lattice: lattice.clone(),
            form: PeriodicForm::Coset {
                reps: reps.iter().map(|r| base.ambient(r)).collect(),
            },
            base,
            cap: DEFAULT_CAP,
        })
    }

    /// The lattice itself, viewed as a `(Λ, q^0)`-periodic lattice.
    pub fn plain(lattice: &Lattice) -> Result<Self> {
        PeriodicLattice::cosets(lattice, &[])
    }

    pub fn with_cap(mut self, cap: u128) -> Self {
        self.cap = cap;
        self
    }

    pub fn cap(&self) -> u128 {
        self.cap
    }

    pub fn lattice(&self) -> &Lattice {
        &self.lattice
    }

    pub fn field(&self) -> &FieldRef {
        self.lattice.field()
    }

    pub fn dim(&self) -> usize {
        self.lattice.dim()
    }

    pub fn form(&self) -> &PeriodicForm {
        &self.form
    }

    /// N for the alpha form.
    pub fn n(&self) -> Option<u32> {
        match self.form {
            PeriodicForm::Alpha { n, .. } => Some(n),
            PeriodicForm::Coset { .. } => None,
        }
    }

    /// log_q #(D ∩ S): N+1 for the alpha form, the number of reps otherwise.
    pub fn period_size(&self) -> usize {
        match &self.form {
            PeriodicForm::Alpha { n, .. } => *n as usize + 1,
            PeriodicForm::Coset { reps } => reps.len(),
        }
    }

    /// The reduced basis of Λ for the unit body (the frame of `Frame::Reduced`).
    pub fn base(&self) -> &ReducedBasis {
        &self.base
    }

    /// α in reduced coordinates for the unit body.
    pub fn alpha_reduced(&self) -> Option<Vec<KInf>> {
        match &self.form {
            PeriodicForm::Alpha { alpha, .. } => Some(frac_vec(&self.base.coordinates(alpha))),
            PeriodicForm::Coset { .. } => None,
        }
    }

    /// Reduced basis for `body` and the F_q-basis of `S ∩ D` in that frame.
    pub fn view(&self, body: &ConvexBody) -> Result<BodyView> {
        let basis = reduce_lattice(&self.lattice, body)?;
        let field = self.field().clone();
        let gens = match &self.form {
            PeriodicForm::Alpha { alpha, n } => {
                let c = frac_vec(&basis.coordinates(alpha));
                (0..=*n as usize)
                    .map(|j| {
                        let xj = Poly::monomial(&field, Fq::ONE, j);
                        frac_vec(&c.iter().map(|x| x.mul_poly(&xj)).collect::<Vec<_>>())
                    })
                    .collect()
            }
            PeriodicForm::Coset { reps } => reps.iter().map(|r| frac_vec(&basis.coordinates(r))).collect(),
        };
        Ok(BodyView {
            field,
            basis,
            gens,
            cap: self.cap,
        })
    }
}

/// S seen through the reduced basis of one body.
#[derive(Debug, Clone)]
pub struct BodyView {
    field: FieldRef,
    pub basis: ReducedBasis,
    /// F_q-basis of S ∩ D in fractional coordinates; for `Λ(α, q^N)` the j-th entry is ⟨x^j α⟩.
    pub gens: Vec<Vec<KInf>>,
    cap: u128,
}

impl BodyView {
    pub fn field(&self) -> &FieldRef {
        &self.field
    }

    pub fn exponents(&self) -> &[i64] {
        &self.basis.exponents
    }

    pub fn period_size(&self) -> usize {
        self.gens.len()
    }

    /// q^{period size}, or `CapExceeded` past the enumeration cap.
    pub fn rep_count(&self) -> Result<u64> {
        let q = self.field.q() as u128;
        let mut count: u128 = 1;
        for _ in 0..self.gens.len() {
            count = count.saturating_mul(q);
        }
        if count > self.cap {
            return Err(Error::CapExceeded {
                what: "coset representatives".into(),
                needed: count,
                cap: self.cap,
            });
        }
        Ok(count as u64)
    }

    /// The representative with base-q index `index`: digit j is the coefficient of gens[j].
    /// For `Λ(α, q^N)` this is ⟨Qα⟩ with `Q = Poly::from_index(index)`.
    pub fn rep(&self, index: u64) -> Vec<KInf> {
        let q = self.field.q() as u64;
        let d = self.basis.dim();
        let mut out = vec![KInf::zero(&self.field); d];
        let mut rest = index;
        for g in &self.gens {
            let digit = (rest % q) as u32;
            rest /= q;
            if digit == 0 {
                continue;
            }
            let c = self.field.element(digit);
            for (o, x) in out.iter_mut().zip(g) {
                *o = o.add(&x.scale(c));
            }
        }
        out
    }

    pub fn reps(&self) -> Result<Vec<Vec<KInf>>> {
        Ok((0..self.rep_count()?).map(|i| self.rep(i)).collect())
    }

    /// C-norm of the point with fractional coordinates `f`.
    pub fn norm(&self, f: &[KInf]) -> Result<QExp> {
        self.basis.norm_of_coords(f)
    }

    pub fn ambient(&self, f: &[KInf]) -> Vec<KInf> {
        self.basis.ambient(f)
    }
}

#[cfg(test)]
pub(crate) mod tests {
    use super::*;
    use crate::ffcore::parse::parse_element;
    use crate::ffcore::Field;

    pub(crate) fn w_instance(n: u32) -> PeriodicLattice {
        let f = Field::prime(2).unwrap();
        let lat = Lattice::standard(&f, 2).unwrap();
        let alpha = vec![parse_element(&f, "x^-1").unwrap(), parse_element(&f, "x^-2").unwrap()];
        PeriodicLattice::alpha(&lat, &alpha, Frame::Reduced, n).unwrap()
    }

    #[test]
    fn irrationality_check() {
        let f = Field::prime(2).unwrap();
        let lat = Lattice::standard(&f, 2).unwrap();
        let e = |s: &str| parse_element(&f, s).unwrap();
        assert!(PeriodicLattice::alpha(&lat, &[e("1/(x^3+x+1)"), e("0")], Frame::Ambient, 1).is_ok());
        match PeriodicLattice::alpha(&lat, &[e("1/x"), e("0")], Frame::Ambient, 1) {
            Err(Error::NRational { witness }) => assert_eq!(witness, "x"),
            other => panic!("expected rejection, got {other:?}"),
        }
        match PeriodicLattice::alpha(&lat, &[e("x+1"), e("x^2")], Frame::Ambient, 0) {
            Err(Error::NRational { witness }) => assert_eq!(witness, "1"),
            other => panic!("expected rejection, got {other:?}"),
        }
    }

    #[test]
    fn series_alpha_irrationality_needs_enough_coefficients() {
        let f = Field::prime(2).unwrap();
        let lat = Lattice::standard(&f, 2).unwrap();
        let s = parse_element(&f, "{floor: -8, top: -1, coeffs: [0, 0, 1, 0, 1, 1, 1, 0]}").unwrap();
        let z = parse_element(&f, "0").unwrap();
        assert!(PeriodicLattice::alpha(&lat, &[s.clone(), z.clone()], Frame::Reduced, 2).is_ok());
        let short = parse_element(&f, "{floor: -1, top: -1, coeffs: [0]}").unwrap();
        assert!(PeriodicLattice::alpha(&lat, &[short, z], Frame::Reduced, 2).is_err());
    }

    #[test]
    fn w_representatives() {
        let s = w_instance(1);
        let f = s.field().clone();
        let view = s.view(&ConvexBody::unit(&f, 2)).unwrap();
        let e = |t: &str| parse_element(&f, t).unwrap();
        let reps = view.reps().unwrap();
        assert_eq!(
            reps,
            vec![
                vec![e("0"), e("0")],
                vec![e("x^-1"), e("x^-2")],
                vec![e("0"), e("x^-1")],
                vec![e("x^-1"), e("x^-1 + x^-2")],
            ]
        );
        let norms: Vec<QExp> = reps.iter().map(|r| view.norm(r).unwrap()).collect();
        assert_eq!(norms, vec![QExp::ZERO, QExp::pow(-1), QExp::pow(-1), QExp::pow(-1)]);
    }

    #[test]
    fn coset_validation() {
        let f = Field::prime(3).unwrap();
        let lat = Lattice::standard(&f, 2).unwrap();
        let e = |t: &str| parse_element(&f, t).unwrap();
        assert!(PeriodicLattice::cosets(&lat, &[vec![e("x^-1"), e("0")], vec![e("0"), e("2*x^-3")]]).is_ok());
        assert!(matches!(
            PeriodicLattice::cosets(&lat, &[vec![e("x^-1"), e("0")], vec![e("2*x^-1"), e("0")]]),
            Err(Error::InvalidReps(_))
        ));
        assert!(matches!(
            PeriodicLattice::cosets(&lat, &[vec![e("1"), e("0")]]),
            Err(Error::InvalidReps(_))
        ));
    }
}
