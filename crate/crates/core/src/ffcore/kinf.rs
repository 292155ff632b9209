use std::fmt;

use super::field::{FieldRef, Fq};
use super::poly::Poly;
use super::qexp::QExp;
use super::rational::RationalFunc;
use super::series::LaurentSeries;
use crate::error::Result;

/// An element of K_∞ = F_q((x^{-1})) as the library handles it: either an exact rational
/// function, or a truncated series with a precision floor.
///
/// Exact inputs stay exact through every operation; as soon as a truncated operand is
/// involved the result is a truncated series with the floor the operation can justify.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum KInf {
    Exact(RationalFunc),
    Approx(LaurentSeries),
}

impl From<RationalFunc> for KInf {
    fn from(r: RationalFunc) -> Self {
        KInf::Exact(r)
    }
}

impl From<LaurentSeries> for KInf {
    fn from(s: LaurentSeries) -> Self {
        KInf::from_series(s)
    }
}

impl From<Poly> for KInf {
    fn from(p: Poly) -> Self {
        KInf::Exact(RationalFunc::from_poly(p))
    }
}

impl KInf {
    pub fn from_series(s: LaurentSeries) -> Self {
        if s.is_exact() {
            let shift = s.floor();
            let coeffs: Vec<Fq> = s.coeffs_top_down().into_iter().rev().collect();
            let p = Poly::new(s.field(), coeffs);
            let r = RationalFunc::from_poly(p).mul(&RationalFunc::x_pow(s.field(), shift));
            KInf::Exact(r)
        } else {
            KInf::Approx(s)
        }
    }

    pub fn zero(field: &FieldRef) -> Self {
        KInf::Exact(RationalFunc::zero(field))
    }

    pub fn one(field: &FieldRef) -> Self {
        KInf::Exact(RationalFunc::one(field))
    }

    pub fn field(&self) -> &FieldRef {
        match self {
            KInf::Exact(r) => r.field(),
            KInf::Approx(s) => s.field(),
        }
    }

    pub fn is_exact(&self) -> bool {
        matches!(self, KInf::Exact(_))
    }

    pub fn as_exact(&self) -> Option<&RationalFunc> {
        match self {
            KInf::Exact(r) => Some(r),
            KInf::Approx(_) => None,
        }
    }

    /// Precision floor, `None` when exact.
    pub fn precision(&self) -> Option<i64> {
        match self {
            KInf::Exact(_) => None,
            KInf::Approx(s) => Some(s.floor()),
        }
    }

    pub fn abs(&self) -> Result<QExp> {
        match self {
            KInf::Exact(r) => Ok(r.abs()),
            KInf::Approx(s) => s.abs(),
        }
    }

    pub fn is_zero(&self) -> Result<bool> {
        Ok(self.abs()?.is_zero())
    }

    /// True when the value is exactly zero (not merely unknown).
    pub fn is_exact_zero(&self) -> bool {
        matches!(self, KInf::Exact(r) if r.is_zero())
    }

    /// Coefficient of x^e.
    pub fn coeff(&self, e: i64) -> Result<Fq> {
        match self {
            KInf::Exact(r) => r.expand(e).coeff(e),
            KInf::Approx(s) => s.coeff(e),
        }
    }

    /// The expansion down to `floor` (an approximate value keeps its own, possibly higher, floor).
    pub fn to_series(&self, floor: i64) -> LaurentSeries {
        match self {
            KInf::Exact(r) => r.expand(floor),
            KInf::Approx(s) => s.truncate(floor),
        }
    }

    pub fn frac(&self) -> Self {
        match self {
            KInf::Exact(r) => KInf::Exact(r.frac_part()),
            KInf::Approx(s) => KInf::from_series(s.frac_part()),
        }
    }

    pub fn neg(&self) -> Self {
        match self {
            KInf::Exact(r) => KInf::Exact(r.neg()),
            KInf::Approx(s) => KInf::Approx(s.neg()),
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        match (self, other) {
            (KInf::Exact(a), KInf::Exact(b)) => KInf::Exact(a.add(b)),
            (KInf::Exact(a), KInf::Approx(s)) | (KInf::Approx(s), KInf::Exact(a)) => {
                KInf::from_series(a.expand(s.floor()).add(s))
            }
            (KInf::Approx(a), KInf::Approx(b)) => KInf::from_series(a.add(b)),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        match (self, other) {
            (KInf::Exact(a), KInf::Exact(b)) => KInf::Exact(a.mul(b)),
            (KInf::Exact(a), KInf::Approx(s)) | (KInf::Approx(s), KInf::Exact(a)) => {
                if a.is_zero() {
                    return KInf::zero(a.field());
                }
                let top_a = a.abs().exp();
                let floor = s.floor() + top_a - s.top();
                KInf::from_series(a.expand(floor).mul(s))
            }
            (KInf::Approx(a), KInf::Approx(b)) => KInf::from_series(a.mul(b)),
        }
    }

    pub fn mul_poly(&self, p: &Poly) -> Self {
        match self {
            KInf::Exact(r) => KInf::Exact(r.mul_poly(p)),
            KInf::Approx(s) => KInf::from_series(s.mul_poly(p)),
        }
    }

    pub fn scale(&self, c: Fq) -> Self {
        self.mul_poly(&Poly::constant(self.field(), c))
    }

    pub fn div(&self, other: &Self) -> Result<Self> {
        match (self, other) {
            (KInf::Exact(a), KInf::Exact(b)) => Ok(KInf::Exact(a.div(b)?)),
            (_, KInf::Exact(b)) => Ok(self.mul(&KInf::Exact(b.inv()?))),
            (KInf::Exact(a), KInf::Approx(s)) => {
                let inv = s.inverse(i64::MIN / 4)?;
                Ok(KInf::Exact(a.clone()).mul(&KInf::from_series(inv)))
            }
            (KInf::Approx(a), KInf::Approx(b)) => Ok(KInf::from_series(a.div(b)?)),
        }
    }
}

impl fmt::Display for KInf {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            KInf::Exact(r) => write!(f, "{r}"),
            KInf::Approx(s) => write!(f, "{s}"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ffcore::field::Field;

    #[test]
    fn mixed_product_keeps_series_precision() {
        let f = Field::prime(2).unwrap();
        let r = RationalFunc::new(Poly::one(&f), Poly::from_ints(&f, &[1, 1, 0, 1])).unwrap();
        let s = r.expand(-20);
        let exact_times = KInf::Exact(Poly::from_ints(&f, &[1, 1, 0, 1]).into_rational()).mul(&KInf::Approx(s));
        match exact_times {
            KInf::Approx(p) => {
                assert_eq!(p.coeff(0).unwrap(), Fq::ONE);
                for e in p.floor()..0 {
                    assert_eq!(p.coeff(e).unwrap(), Fq::ZERO);
                }
                assert_eq!(p.floor(), -17);
            }
            KInf::Exact(_) => panic!("truncated input cannot give an exact product"),
        }
    }

    #[test]
    fn exact_series_become_rational() {
        let f = Field::prime(3).unwrap();
        let s = LaurentSeries::from_top_down(&f, -1, vec![Fq::ONE, Fq::ZERO, f.from_int(2)], true);
        let k = KInf::from(s);
        assert!(k.is_exact());
        assert_eq!(k.abs().unwrap(), QExp::pow(-1));
        assert_eq!(k.coeff(-3).unwrap(), f.from_int(2));
    }

    trait IntoRational {
        fn into_rational(self) -> RationalFunc;
    }
    impl IntoRational for Poly {
        fn into_rational(self) -> RationalFunc {
            RationalFunc::from_poly(self)
        }
    }
}
