//! Lattices `Λ = g R^d`, convex bodies `C = h O^d`, and reduced bases.
//!
//! Matrices are column-oriented: column `i` of `g` is the `i`-th basis vector.

use std::fmt;

use crate::error::{Error, Result};
use crate::ffcore::{FieldRef, KInf, Poly, QExp, RationalFunc};
use crate::linalg::{mul_rat_vec, popov_reduce, ratmat, MatPoly, MatRat, Matrix};

/// A full-rank R-module in K_∞^d given by a basis matrix with entries in F_q(x).
#[derive(Debug, Clone, PartialEq)]
pub struct Lattice {
    field: FieldRef,
    basis: MatRat,
    det: RationalFunc,
}

impl Lattice {
    pub fn new(field: &FieldRef, basis: MatRat) -> Result<Self> {
        if !basis.is_square() {
            return Err(Error::DimensionMismatch("lattice basis must be square".into()));
        }
        if basis.rows() < 2 {
            return Err(Error::DimensionMismatch("lattice dimension must be at least 2".into()));
        }
        let det = ratmat::det(&basis, field)?;
        if det.is_zero() {
            return Err(Error::SingularInput("lattice basis has zero determinant".into()));
        }
        Ok(Lattice {
            field: field.clone(),
            basis,
            det,
        })
    }

    /// The standard lattice R^d.
    pub fn standard(field: &FieldRef, d: usize) -> Result<Self> {
        Lattice::new(field, ratmat::identity(field, d))
    }

    pub fn from_poly(field: &FieldRef, basis: &MatPoly) -> Result<Self> {
        Lattice::new(field, ratmat::from_poly(basis))
    }

    pub fn field(&self) -> &FieldRef {
        &self.field
    }

    pub fn dim(&self) -> usize {
        self.basis.rows()
    }

    pub fn basis(&self) -> &MatRat {
        &self.basis
    }

    pub fn basis_vector(&self, i: usize) -> Vec<RationalFunc> {
        self.basis.col(i)
    }

    /// log_q det(Λ).
    pub fn log_det(&self) -> i64 {
        self.det.abs().exp()
    }

    /// The lattice x^k Λ.
    pub fn scaled(&self, k: i64) -> Self {
        let s = RationalFunc::x_pow(&self.field, k);
        let basis = self.basis.map(|r| r.mul(&s));
        Lattice::new(&self.field, basis).expect("scaling keeps the lattice nonsingular")
    }
}

/// A convex body `h O^d`.
#[derive(Debug, Clone, PartialEq)]
pub struct ConvexBody {
    h: MatRat,
    adj: MatRat,
    det: RationalFunc,
}

impl ConvexBody {
    pub fn new(field: &FieldRef, h: MatRat) -> Result<Self> {
        if !h.is_square() {
            return Err(Error::DimensionMismatch("body matrix must be square".into()));
        }
        let det = ratmat::det(&h, field)?;
        if det.is_zero() {
            return Err(Error::SingularInput("body matrix has zero determinant".into()));
        }
        let adj = ratmat::adjugate(&h, field)?;
        Ok(ConvexBody { h, adj, det })
    }

    /// The unit body O^d.
    pub fn unit(field: &FieldRef, d: usize) -> Self {
        ConvexBody::new(field, ratmat::identity(field, d)).expect("identity is invertible")
    }

    /// The sup-norm ball of radius q^r, i.e. x^r O^d.
    pub fn ball(field: &FieldRef, d: usize, r: i64) -> Self {
        let s = RationalFunc::x_pow(field, r);
        ConvexBody::new(field, ratmat::identity(field, d).map(|e| e.mul(&s))).expect("invertible")
    }

    pub fn dim(&self) -> usize {
        self.h.rows()
    }

    pub fn matrix(&self) -> &MatRat {
        &self.h
    }

    /// m(C) = |det h| as a value in q^Z.
    pub fn log_volume(&self) -> QExp {
        self.det.abs()
    }

    /// log_q m(C).
    pub fn log_m(&self) -> i64 {
        self.det.abs().exp()
    }

    /// The body x^k C.
    pub fn scaled(&self, k: i64) -> Self {
        let field = self.det.field().clone();
        let s = RationalFunc::x_pow(&field, k);
        ConvexBody::new(&field, self.h.map(|r| r.mul(&s))).expect("scaling keeps the body invertible")
    }

    /// h^{-1}, exactly.
    pub fn inverse(&self) -> Result<MatRat> {
        let inv_det = self.det.inv()?;
        Ok(self.adj.map(|r| r.mul(&inv_det)))
    }

    /// ‖v‖_C = max_i |(adj h · v)_i| / |det h|.
    pub fn norm(&self, v: &[KInf]) -> Result<QExp> {
        if v.len() != self.dim() {
            return Err(Error::DimensionMismatch(format!(
                "vector of length {} in a body of dimension {}",
                v.len(),
                self.dim()
            )));
        }
        let field = self.det.field();
        let w = mul_rat_vec(&self.adj, v, field);
        let mut best = QExp::ZERO;
        for x in &w {
            best = best.max(x.abs()?);
        }
        Ok(match best.exponent() {
            None => QExp::ZERO,
            Some(e) => QExp::pow(e - self.log_m()),
        })
    }
}

/// ‖v‖_C for a vector of K_∞ coordinates.
pub fn norm_in_body(v: &[KInf], body: &ConvexBody) -> Result<QExp> {
    body.norm(v)
}

/// A basis of successive minima of Λ with respect to a body.
///
/// For every coefficient vector `c` over K_∞, `‖Σ c_i v^(i)‖_C = max_i |c_i| q^{e_i}`.
#[derive(Debug, Clone, PartialEq)]
pub struct ReducedBasis {
    field: FieldRef,
    /// Columns `v^(1), ..., v^(d)` in ambient coordinates.
    pub vectors: MatRat,
    /// `λ_{i,C}(Λ) = q^{e_i}`, ascending.
    pub exponents: Vec<i64>,
    pub body: ConvexBody,
    /// Unimodular `U` with `vectors = g U`.
    pub transform: MatPoly,
    /// Inverse of `vectors`: maps ambient vectors to coefficients in this basis.
    coords: MatRat,
}

impl ReducedBasis {
    pub fn dim(&self) -> usize {
        self.exponents.len()
    }

    pub fn field(&self) -> &FieldRef {
        &self.field
    }

    pub fn vector(&self, i: usize) -> Vec<RationalFunc> {
        self.vectors.col(i)
    }

    pub fn vector_kinf(&self, i: usize) -> Vec<KInf> {
        self.vectors.col(i).into_iter().map(KInf::Exact).collect()
    }

    /// Coefficients of an ambient vector in this basis.
    pub fn coordinates(&self, v: &[KInf]) -> Vec<KInf> {
        mul_rat_vec(&self.coords, v, &self.field)
    }

    pub fn coordinate_matrix(&self) -> &MatRat {
        &self.coords
    }

    /// The ambient vector `Σ c_i v^(i)`.
    pub fn ambient(&self, c: &[KInf]) -> Vec<KInf> {
        mul_rat_vec(&self.vectors, c, &self.field)
    }

    /// `max_i |c_i| q^{e_i}`, the C-norm of `Σ c_i v^(i)`.
    pub fn norm_of_coords(&self, c: &[KInf]) -> Result<QExp> {
        let mut best = QExp::ZERO;
        for (x, &e) in c.iter().zip(&self.exponents) {
            best = best.max(x.abs()?.shift(e));
        }
        Ok(best)
    }

    pub fn log_det(&self) -> i64 {
        self.exponents.iter().sum::<i64>() + self.body.log_m()
    }
}

/// Reduce Λ with respect to C: clear the denominators of `h^{-1} g` by a polynomial `c`,
/// column-reduce, and shift the column degrees by `-deg c`.
pub fn reduce_lattice(lattice: &Lattice, body: &ConvexBody) -> Result<ReducedBasis> {
    let field = lattice.field();
    if body.dim() != lattice.dim() {
        return Err(Error::DimensionMismatch("body and lattice dimensions differ".into()));
    }
    let b = ratmat::mul(&body.inverse()?, lattice.basis(), field)?;
    let c = ratmat::common_denominator(&b, field);
    let poly = ratmat::clear_denominators(&b, &c)?;
    let red = popov_reduce(&poly, field)?;
    let shift = c.deg();
    let u = ratmat::from_poly(&red.transform);
    let vectors = ratmat::mul(lattice.basis(), &u, field)?;
    let coords = ratmat::inverse(&vectors, field)?;
    Ok(ReducedBasis {
        field: field.clone(),
        vectors,
        exponents: red.degrees.iter().map(|e| e - shift).collect(),
        body: body.clone(),
        transform: red.transform,
        coords,
    })
}

/// det(Λ) = |det g|.
pub fn det_lattice(lattice: &Lattice) -> QExp {
    QExp::pow(lattice.log_det())
}

/// CovRad_C(Λ) = q^{-1} λ_{d,C}(Λ).
pub fn covrad_lattice(lattice: &Lattice, body: &ConvexBody) -> Result<QExp> {
    let red = reduce_lattice(lattice, body)?;
    Ok(QExp::pow(red.exponents[red.dim() - 1] - 1))
}

/// Polynomial combination `Σ c_i v^(i)` of reduced vectors, as exact K_∞ values.
pub fn combine(red: &ReducedBasis, c: &[Poly]) -> Vec<KInf> {
    let coeffs: Vec<KInf> = c.iter().map(|p| KInf::from(p.clone())).collect();
    red.ambient(&coeffs)
}

impl fmt::Display for ReducedBasis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.dim() {
            let v: Vec<String> = self.vector(i).iter().map(|x| x.to_string()).collect();
            writeln!(f, "v{} = ({})  norm q^{}", i + 1, v.join(", "), self.exponents[i])?;
        }
        Ok(())
    }
}

/// The diagonal matrix with the given entries.
pub fn diagonal(field: &FieldRef, entries: &[RationalFunc]) -> MatRat {
    let n = entries.len();
    Matrix::from_fn(n, n, |i, j| {
        if i == j {
            entries[i].clone()
        } else {
            RationalFunc::zero(field)
        }
    })
}
