use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use super::field::{FieldRef, Fq};
use crate::error::{Error, Result};

/// A polynomial in F_q[x], lowest degree first, with no trailing zero coefficients.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Poly {
    field: FieldRef,
    coeffs: Vec<Fq>,
}

impl Poly {
    pub fn new(field: &FieldRef, mut coeffs: Vec<Fq>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Poly {
            field: field.clone(),
            coeffs,
        }
    }

    pub fn from_ints(field: &FieldRef, coeffs: &[i64]) -> Self {
        Poly::new(field, coeffs.iter().map(|&c| field.from_int(c)).collect())
    }

    pub fn zero(field: &FieldRef) -> Self {
        Poly::new(field, Vec::new())
    }

    pub fn one(field: &FieldRef) -> Self {
        Poly::constant(field, Fq::ONE)
    }

    pub fn constant(field: &FieldRef, c: Fq) -> Self {
        Poly::new(field, vec![c])
    }

    pub fn x(field: &FieldRef) -> Self {
        Poly::monomial(field, Fq::ONE, 1)
    }

    pub fn monomial(field: &FieldRef, c: Fq, n: usize) -> Self {
        let mut coeffs = vec![Fq::ZERO; n + 1];
        coeffs[n] = c;
        Poly::new(field, coeffs)
    }

    /// The polynomial whose coefficients are the base-q digits of `index` (lowest first),
    /// using `len` digits. This fixes the enumeration order of `R_{<=N}`.
    pub fn from_index(field: &FieldRef, mut index: u64, len: usize) -> Self {
        let q = field.q() as u64;
        let coeffs = (0..len)
            .map(|_| {
                let d = (index % q) as u32;
                index /= q;
                field.element(d)
            })
            .collect();
        Poly::new(field, coeffs)
    }

    /// Every polynomial of degree <= n, in `from_index` order (zero first).
    pub fn all_up_to_degree(field: &FieldRef, n: usize) -> impl Iterator<Item = Poly> + '_ {
        let count = (field.q() as u64).pow(n as u32 + 1);
        (0..count).map(move |i| Poly::from_index(field, i, n + 1))
    }

    pub fn field(&self) -> &FieldRef {
        &self.field
    }

    pub fn coeffs(&self) -> &[Fq] {
        &self.coeffs
    }

    /// Coefficient of x^i (zero beyond the degree).
    pub fn coeff(&self, i: usize) -> Fq {
        self.coeffs.get(i).copied().unwrap_or(Fq::ZERO)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0] == Fq::ONE
    }

    /// Degree, `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Degree as a signed integer; the zero polynomial has degree `i64::MIN`.
    pub fn deg(&self) -> i64 {
        self.degree().map_or(i64::MIN, |d| d as i64)
    }

    pub fn leading(&self) -> Fq {
        self.coeffs.last().copied().unwrap_or(Fq::ZERO)
    }

    pub fn is_monic(&self) -> bool {
        self.leading() == Fq::ONE
    }

    pub fn scale(&self, c: Fq) -> Poly {
        let f = &self.field;
        Poly::new(f, self.coeffs.iter().map(|&a| f.mul(a, c)).collect())
    }

    /// Multiply by x^n.
    pub fn shift(&self, n: usize) -> Poly {
        if self.is_zero() {
            return self.clone();
        }
        let mut coeffs = vec![Fq::ZERO; n];
        coeffs.extend_from_slice(&self.coeffs);
        Poly::new(&self.field, coeffs)
    }

    pub fn monic(&self) -> Poly {
        if self.is_zero() {
            return self.clone();
        }
        let inv = self.field.inv(self.leading()).expect("nonzero leading coefficient");
        self.scale(inv)
    }

    pub fn pow(&self, e: u32) -> Poly {
        let mut acc = Poly::one(&self.field);
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    pub fn div_rem(&self, divisor: &Poly) -> Result<(Poly, Poly)> {
        if divisor.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let f = &self.field;
        let db = divisor.coeffs.len() - 1;
        let lead_inv = f.inv(divisor.leading())?;
        let mut rem = self.coeffs.clone();
        if rem.len() <= db {
            return Ok((Poly::zero(f), self.clone()));
        }
        let mut quot = vec![Fq::ZERO; rem.len() - db];
        for i in (0..quot.len()).rev() {
            let c = f.mul(rem[i + db], lead_inv);
            quot[i] = c;
            if c.is_zero() {
                continue;
            }
            for (j, &b) in divisor.coeffs.iter().enumerate() {
                rem[i + j] = f.sub(rem[i + j], f.mul(c, b));
            }
        }
        rem.truncate(db);
        Ok((Poly::new(f, quot), Poly::new(f, rem)))
    }

    pub fn rem(&self, divisor: &Poly) -> Result<Poly> {
        Ok(self.div_rem(divisor)?.1)
    }

    /// Exact quotient; errors if the division leaves a remainder.
    pub fn exact_div(&self, divisor: &Poly) -> Result<Poly> {
        let (q, r) = self.div_rem(divisor)?;
        if !r.is_zero() {
            return Err(Error::Undefined("inexact polynomial division".into()));
        }
        Ok(q)
    }

    /// Monic greatest common divisor (zero iff both inputs are zero).
    pub fn gcd(&self, other: &Poly) -> Poly {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let r = a.rem(&b).expect("nonzero divisor");
            a = b;
            b = r;
        }
        a.monic()
    }

    pub fn lcm(&self, other: &Poly) -> Poly {
        if self.is_zero() || other.is_zero() {
            return Poly::zero(&self.field);
        }
        let g = self.gcd(other);
        (&self.exact_div(&g).expect("gcd divides") * other).monic()
    }

    fn zip_with(&self, other: &Poly, op: impl Fn(Fq, Fq) -> Fq) -> Poly {
        let n = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..n).map(|i| op(self.coeff(i), other.coeff(i))).collect();
        Poly::new(&self.field, coeffs)
    }
}

impl Add for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        let f = self.field.clone();
        self.zip_with(rhs, |a, b| f.add(a, b))
    }
}

impl Sub for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        let f = self.field.clone();
        self.zip_with(rhs, |a, b| f.sub(a, b))
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        let f = &self.field;
        Poly::new(f, self.coeffs.iter().map(|&a| f.neg(a)).collect())
    }
}

impl Mul for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        let f = &self.field;
        if self.is_zero() || rhs.is_zero() {
            return Poly::zero(f);
        }
        let mut out = vec![Fq::ZERO; self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, &b) in rhs.coeffs.iter().enumerate() {
                out[i + j] = f.add(out[i + j], f.mul(a, b));
            }
        }
        Poly::new(f, out)
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for Poly {
            type Output = Poly;
            fn $m(self, rhs: Poly) -> Poly {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

/// Write a polynomial in `x` with exponent offset `shift` (used for Laurent polynomials).
pub(crate) fn format_terms(field: &FieldRef, coeffs: &[Fq], shift: i64) -> String {
    let mut terms = Vec::new();
    for (i, &c) in coeffs.iter().enumerate().rev() {
        if c.is_zero() {
            continue;
        }
        let e = i as i64 + shift;
        let mono = match e {
            0 => String::new(),
            1 => "x".to_string(),
            _ => format!("x^{e}"),
        };
        let coef = field.format(c);
        terms.push(match (mono.is_empty(), c == Fq::ONE) {
            (true, _) => coef,
            (false, true) => mono,
            (false, false) => format!("{coef}*{mono}"),
        });
    }
    if terms.is_empty() {
        "0".to_string()
    } else {
        terms.join(" + ")
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", format_terms(&self.field, &self.coeffs, 0))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ffcore::field::Field;

    #[test]
    fn division_identity() {
        let f = Field::prime(3).unwrap();
        let a = Poly::from_ints(&f, &[1, 2, 0, 1, 2]);
        let b = Poly::from_ints(&f, &[2, 0, 1]);
        let (q, r) = a.div_rem(&b).unwrap();
        assert_eq!(&(&q * &b) + &r, a);
        assert!(r.deg() < b.deg());
    }

    #[test]
    fn gcd_and_lcm() {
        let f = Field::prime(2).unwrap();
        let x = Poly::x(&f);
        let xp1 = Poly::from_ints(&f, &[1, 1]);
        let a = &x * &xp1;
        let b = &xp1 * &xp1;
        assert_eq!(a.gcd(&b), xp1);
        assert_eq!(a.lcm(&b), &x * &b);
        assert!(Poly::zero(&f).gcd(&Poly::zero(&f)).is_zero());
    }

    #[test]
    fn enumeration_order() {
        let f = Field::prime(2).unwrap();
        let all: Vec<String> = Poly::all_up_to_degree(&f, 1).map(|p| p.to_string()).collect();
        assert_eq!(all, ["0", "1", "x", "x + 1"]);
    }

    #[test]
    fn display_extension_coefficients() {
        let f = Field::with_order(4).unwrap();
        let t = f.generator().unwrap();
        let c = f.add(t, Fq::ONE);
        let p = Poly::new(&f, vec![Fq::ONE, c, Fq::ONE]);
        assert_eq!(p.to_string(), "x^2 + (t+1)*x + 1");
    }
}
