use std::fmt;

use super::field::{FieldRef, Fq};
use super::poly::{format_terms, Poly};
use super::qexp::QExp;
use super::series::LaurentSeries;
use crate::error::{Error, Result};

/// An element of F_q(x) in lowest terms with a monic denominator.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct RationalFunc {
    num: Poly,
    den: Poly,
}

impl RationalFunc {
    pub fn new(num: Poly, den: Poly) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if num.is_zero() {
            return Ok(RationalFunc::zero(num.field()));
        }
        let g = num.gcd(&den);
        let num = num.exact_div(&g)?;
        let den = den.exact_div(&g)?;
        let lead_inv = num.field().inv(den.leading())?;
        Ok(RationalFunc {
            num: num.scale(lead_inv),
            den: den.scale(lead_inv),
        })
    }

    pub fn from_poly(p: Poly) -> Self {
        let one = Poly::one(p.field());
        RationalFunc { num: p, den: one }
    }

    pub fn zero(field: &FieldRef) -> Self {
        RationalFunc::from_poly(Poly::zero(field))
    }

    pub fn one(field: &FieldRef) -> Self {
        RationalFunc::from_poly(Poly::one(field))
    }

    pub fn constant(field: &FieldRef, c: Fq) -> Self {
        RationalFunc::from_poly(Poly::constant(field, c))
    }

    /// The Laurent monomial x^k.
    pub fn x_pow(field: &FieldRef, k: i64) -> Self {
        if k >= 0 {
            RationalFunc::from_poly(Poly::monomial(field, Fq::ONE, k as usize))
        } else {
            RationalFunc {
                num: Poly::one(field),
                den: Poly::monomial(field, Fq::ONE, (-k) as usize),
            }
        }
    }

    pub fn field(&self) -> &FieldRef {
        self.num.field()
    }

    pub fn num(&self) -> &Poly {
        &self.num
    }

    pub fn den(&self) -> &Poly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_poly(&self) -> bool {
        self.den.is_one()
    }

    /// |f/g| = q^(deg f - deg g); zero maps to bottom.
    pub fn abs(&self) -> QExp {
        if self.num.is_zero() {
            QExp::ZERO
        } else {
            QExp::pow(self.num.deg() - self.den.deg())
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        if self.den == other.den {
            return RationalFunc::new(&self.num + &other.num, self.den.clone()).unwrap();
        }
        let num = &(&self.num * &other.den) + &(&other.num * &self.den);
        RationalFunc::new(num, &self.den * &other.den).unwrap()
    }

    pub fn neg(&self) -> Self {
        RationalFunc {
            num: -&self.num,
            den: self.den.clone(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return RationalFunc::zero(self.field());
        }
        RationalFunc::new(&self.num * &other.num, &self.den * &other.den).unwrap()
    }

    pub fn mul_poly(&self, p: &Poly) -> Self {
        RationalFunc::new(&self.num * p, self.den.clone()).unwrap()
    }

    pub fn inv(&self) -> Result<Self> {
        RationalFunc::new(self.den.clone(), self.num.clone())
    }

    pub fn div(&self, other: &Self) -> Result<Self> {
        Ok(self.mul(&other.inv()?))
    }

    /// Polynomial part of the x^{-1}-adic expansion: num div den.
    pub fn poly_part(&self) -> Poly {
        self.num.div_rem(&self.den).expect("nonzero denominator").0
    }

    /// Fractional part (num mod den)/den, the component in x^{-1} F_q[[x^{-1}]].
    pub fn frac_part(&self) -> Self {
        let r = self.num.rem(&self.den).expect("nonzero denominator");
        RationalFunc {
            num: r,
            den: self.den.clone(),
        }
    }

    /// The x^{-1}-adic expansion down to exponent `floor`, by long division.
    /// The result is exact when the expansion terminates at or above `floor`.
    pub fn expand(&self, floor: i64) -> LaurentSeries {
        let f = self.field();
        if self.is_zero() {
            return LaurentSeries::zero(f);
        }
        let s = (-floor).max(0) as usize;
        let (quot, rem) = self.num.shift(s).div_rem(&self.den).expect("nonzero denominator");
        // num/den = x^{-s} (quot + rem/den); quot covers exponents -s ..= deg
        let series = LaurentSeries::from_low(f, -(s as i64), quot.coeffs().to_vec(), rem.is_zero());
        if (series.is_exact() && series.floor() >= floor) || floor <= series.floor() {
            return series;
        }
        series.truncate(floor)
    }

    /// If the denominator is a power of x, the Laurent form `(p, shift)` with value x^shift * p.
    pub fn as_laurent(&self) -> Option<(Poly, i64)> {
        let d = self.den.degree()?;
        (self.den == Poly::monomial(self.field(), Fq::ONE, d)).then(|| (self.num.clone(), -(d as i64)))
    }
}

fn needs_parens(p: &Poly) -> bool {
    p.coeffs().iter().filter(|c| !c.is_zero()).count() > 1
}

impl fmt::Display for RationalFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some((p, shift)) = self.as_laurent() {
            return write!(f, "{}", format_terms(self.field(), p.coeffs(), shift));
        }
        let num = if needs_parens(&self.num) { format!("({})", self.num) } else { self.num.to_string() };
        let den = if needs_parens(&self.den) { format!("({})", self.den) } else { self.den.to_string() };
        write!(f, "{num} / {den}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ffcore::field::Field;

    fn poly(f: &FieldRef, c: &[i64]) -> Poly {
        Poly::from_ints(f, c)
    }

    #[test]
    fn abs_value_examples() {
        let f = Field::prime(2).unwrap();
        let a = RationalFunc::from_poly(poly(&f, &[1, 0, 1]));
        assert_eq!(a.abs(), QExp::pow(2));
        let b = RationalFunc::new(Poly::one(&f), poly(&f, &[1, 1, 0, 1])).unwrap();
        assert_eq!(b.abs(), QExp::pow(-3));
        assert_eq!(RationalFunc::zero(&f).abs(), QExp::ZERO);
    }

    #[test]
    fn canonical_form() {
        let f = Field::prime(3).unwrap();
        let a = RationalFunc::new(poly(&f, &[0, 2]), poly(&f, &[0, 0, 2])).unwrap();
        assert_eq!(a, RationalFunc::x_pow(&f, -1));
        assert!(a.den().is_monic());
    }

    #[test]
    fn expand_terminating() {
        let f = Field::prime(2).unwrap();
        let x = poly(&f, &[0, 1]);
        let one = RationalFunc::new(x.clone(), x.clone()).unwrap();
        let s = one.expand(-5);
        assert!(s.is_exact());
        assert_eq!(s, LaurentSeries::from_poly(&Poly::one(&f)));
        let inv_x = RationalFunc::x_pow(&f, -1).expand(-3);
        assert!(inv_x.is_exact());
        assert_eq!(inv_x.top(), -1);
    }

    #[test]
    fn expand_multiplies_back() {
        // oracle: s * den must reproduce num on every exponent the precision certifies
        let f = Field::prime(2).unwrap();
        let den = poly(&f, &[1, 1, 0, 1]);
        let r = RationalFunc::new(Poly::one(&f), den.clone()).unwrap();
        let s = r.expand(-12);
        assert!(!s.is_exact());
        assert_eq!(s.floor(), -12);
        let back = s.mul_poly(&den);
        assert_eq!(back.floor(), -12 + 3);
        for e in back.floor()..=3 {
            let want = if e == 0 { Fq::ONE } else { Fq::ZERO };
            assert_eq!(back.coeff(e).unwrap(), want, "exponent {e}");
        }
        // long division by hand: 1/(x^3+x+1) = x^-3 + x^-5 + x^-6 + x^-7 + x^-10 + ...
        let expected = [0, 0, 1, 0, 1, 1, 1, 0, 0, 1, 0, 1];
        for (i, &c) in expected.iter().enumerate() {
            assert_eq!(s.coeff(-(i as i64) - 1).unwrap(), f.from_int(c), "x^-{}", i + 1);
        }
    }

    #[test]
    fn frac_part_matches_subtracting_quotient() {
        let f = Field::prime(2).unwrap();
        let r = RationalFunc::new(poly(&f, &[1, 0, 0, 1]), poly(&f, &[1, 1, 0, 1])).unwrap();
        let fr = r.frac_part();
        assert_eq!(fr, RationalFunc::new(poly(&f, &[0, 1]), poly(&f, &[1, 1, 0, 1])).unwrap());
        let lhs = r.expand(-10).frac_part();
        let rhs = fr.expand(-10);
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn display() {
        let f = Field::prime(2).unwrap();
        let r = RationalFunc::new(poly(&f, &[1, 1]), poly(&f, &[1, 1, 0, 1])).unwrap();
        assert_eq!(r.to_string(), "(x + 1) / (x^3 + x + 1)");
        let l = RationalFunc::new(poly(&f, &[1, 0, 1]), poly(&f, &[0, 1])).unwrap();
        assert_eq!(l.to_string(), "x + x^-1");
    }
}
