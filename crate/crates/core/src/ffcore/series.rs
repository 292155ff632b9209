//! Truncated Laurent series in x^{-1} with an explicit precision floor.
//!
//! A series stores the coefficients of `x^top, ..., x^floor`. Coefficients below `floor`
//! are unknown unless the series is flagged `exact`, in which case they are zero and the
//! value is a Laurent polynomial. Every operation derives the deepest floor it can justify
//! and never invents a coefficient below it.

use std::fmt;

use super::field::{FieldRef, Fq};
use super::poly::Poly;
use super::qexp::QExp;
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct LaurentSeries {
    field: FieldRef,
    /// Lowest known exponent.
    floor: i64,
    /// `coeffs[i]` is the coefficient of `x^(floor + i)`; no zero at the top.
    coeffs: Vec<Fq>,
    exact: bool,
}

impl LaurentSeries {
    /// Build from coefficients listed lowest exponent first, starting at `floor`.
    pub fn from_low(field: &FieldRef, floor: i64, coeffs: Vec<Fq>, exact: bool) -> Self {
        let mut s = LaurentSeries {
            field: field.clone(),
            floor,
            coeffs,
            exact,
        };
        s.normalize();
        s
    }

    /// Build from coefficients listed from `x^top` downwards (the literal format).
    pub fn from_top_down(field: &FieldRef, top: i64, mut coeffs: Vec<Fq>, exact: bool) -> Self {
        let floor = top - coeffs.len() as i64 + 1;
        coeffs.reverse();
        LaurentSeries::from_low(field, floor, coeffs, exact)
    }

    pub fn zero(field: &FieldRef) -> Self {
        LaurentSeries::from_low(field, 0, Vec::new(), true)
    }

    /// A value about which nothing is known except that it vanishes down to `floor`.
    pub fn unknown_below(field: &FieldRef, floor: i64) -> Self {
        LaurentSeries::from_low(field, floor, Vec::new(), false)
    }

    pub fn from_poly(p: &Poly) -> Self {
        LaurentSeries::from_low(p.field(), 0, p.coeffs().to_vec(), true)
    }

    /// The exact Laurent polynomial `x^shift * p`.
    pub fn from_laurent(p: &Poly, shift: i64) -> Self {
        LaurentSeries::from_low(p.field(), shift, p.coeffs().to_vec(), true)
    }

    fn normalize(&mut self) {
        while self.coeffs.last().is_some_and(|c| c.is_zero()) {
            self.coeffs.pop();
        }
        if self.exact {
            let lead_zeros = self.coeffs.iter().take_while(|c| c.is_zero()).count();
            self.coeffs.drain(..lead_zeros);
            self.floor += lead_zeros as i64;
            if self.coeffs.is_empty() {
                self.floor = 0;
            }
        }
    }

    pub fn field(&self) -> &FieldRef {
        &self.field
    }

    pub fn is_exact(&self) -> bool {
        self.exact
    }

    /// Lowest known exponent (for exact series, the lowest stored exponent).
    pub fn floor(&self) -> i64 {
        self.floor
    }

    /// Precision floor: `None` when exact.
    pub fn precision(&self) -> Option<i64> {
        (!self.exact).then_some(self.floor)
    }

    /// Highest exponent with a possibly-nonzero coefficient.
    pub fn top(&self) -> i64 {
        self.floor + self.coeffs.len() as i64 - 1
    }

    /// Coefficients from `x^top` down to `x^floor`.
    pub fn coeffs_top_down(&self) -> Vec<Fq> {
        self.coeffs.iter().rev().copied().collect()
    }

    /// Coefficient of x^e, or an error if it lies below the known precision.
    pub fn coeff(&self, e: i64) -> Result<Fq> {
        if e > self.top() {
            return Ok(Fq::ZERO);
        }
        if e >= self.floor {
            return Ok(self.coeffs[(e - self.floor) as usize]);
        }
        if self.exact {
            Ok(Fq::ZERO)
        } else {
            Err(Error::precision("series coefficient", e, self.floor))
        }
    }

    /// |s| = q^top, provided the leading coefficient is known.
    pub fn abs(&self) -> Result<QExp> {
        if !self.coeffs.is_empty() {
            Ok(QExp::pow(self.top()))
        } else if self.exact {
            Ok(QExp::ZERO)
        } else {
            Err(Error::precision("absolute value", self.floor - 1, self.floor))
        }
    }

    pub fn is_zero(&self) -> Result<bool> {
        Ok(self.abs()?.is_zero())
    }

    /// True if every known coefficient vanishes (zero, or unknown zero).
    pub fn known_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Drop all coefficients below `floor`, making the series inexact if anything was cut.
    pub fn truncate(&self, floor: i64) -> Self {
        if floor <= self.floor {
            return self.clone();
        }
        let cut = ((floor - self.floor) as usize).min(self.coeffs.len());
        LaurentSeries::from_low(&self.field, floor, self.coeffs[cut..].to_vec(), false)
    }

    /// Multiply by x^k.
    pub fn shift(&self, k: i64) -> Self {
        LaurentSeries::from_low(&self.field, self.floor + k, self.coeffs.clone(), self.exact)
    }

    /// The part on exponents <= -1 (the component in x^{-1} F_q[[x^{-1}]]).
    pub fn frac_part(&self) -> Self {
        if self.floor > -1 {
            // only the region >= floor is known, so nothing of the tail is
            return LaurentSeries::from_low(&self.field, self.floor.min(0), Vec::new(), self.exact);
        }
        let keep = ((-1 - self.floor + 1) as usize).min(self.coeffs.len());
        LaurentSeries::from_low(&self.field, self.floor, self.coeffs[..keep].to_vec(), self.exact)
    }

    /// The polynomial part (exponents >= 0); errors if any of them is unknown.
    pub fn poly_part(&self) -> Result<Poly> {
        if !self.exact && self.floor > 0 {
            return Err(Error::precision("polynomial part", 0, self.floor));
        }
        let coeffs = (0..=self.top().max(-1)).map(|e| self.coeff(e)).collect::<Result<Vec<_>>>()?;
        Ok(Poly::new(&self.field, coeffs))
    }

    pub fn neg(&self) -> Self {
        let f = &self.field;
        LaurentSeries::from_low(
            f,
            self.floor,
            self.coeffs.iter().map(|&c| f.neg(c)).collect(),
            self.exact,
        )
    }

    pub fn scale(&self, c: Fq) -> Self {
        let f = &self.field;
        if c.is_zero() {
            return LaurentSeries::zero(f);
        }
        LaurentSeries::from_low(
            f,
            self.floor,
            self.coeffs.iter().map(|&a| f.mul(a, c)).collect(),
            self.exact,
        )
    }

    fn combine(&self, other: &Self, op: impl Fn(Fq, Fq) -> Fq) -> Self {
        let exact = self.exact && other.exact;
        let floor = match (self.precision(), other.precision()) {
            (Some(a), Some(b)) => a.max(b),
            (Some(a), None) | (None, Some(a)) => a,
            (None, None) => self.floor.min(other.floor),
        };
        let top = self.top().max(other.top());
        let coeffs = (floor..=top)
            .map(|e| {
                let a = if e >= self.floor { self.coeff(e).unwrap_or(Fq::ZERO) } else { Fq::ZERO };
                let b = if e >= other.floor { other.coeff(e).unwrap_or(Fq::ZERO) } else { Fq::ZERO };
                op(a, b)
            })
            .collect();
        LaurentSeries::from_low(&self.field, floor, coeffs, exact)
    }

    pub fn add(&self, other: &Self) -> Self {
        let f = self.field.clone();
        self.combine(other, |a, b| f.add(a, b))
    }

    pub fn sub(&self, other: &Self) -> Self {
        let f = self.field.clone();
        self.combine(other, |a, b| f.sub(a, b))
    }

    pub fn mul(&self, other: &Self) -> Self {
        let f = &self.field;
        let a_zero = self.exact && self.coeffs.is_empty();
        let b_zero = other.exact && other.coeffs.is_empty();
        if a_zero || b_zero {
            return LaurentSeries::zero(f);
        }
        // unknown part of one factor times the known top of the other
        let mut floor: Option<i64> = None;
        if let Some(fa) = self.precision() {
            floor = Some(fa + other.top());
        }
        if let Some(fb) = other.precision() {
            let c = fb + self.top();
            floor = Some(floor.map_or(c, |x| x.max(c)));
        }
        let exact = floor.is_none();
        let base = self.floor + other.floor;
        let floor = floor.unwrap_or(base);
        let top = self.top() + other.top();
        if top < floor {
            return LaurentSeries::unknown_below(f, floor);
        }
        let mut out = vec![Fq::ZERO; (top - floor + 1) as usize];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, &b) in other.coeffs.iter().enumerate() {
                let e = base + (i + j) as i64;
                if e < floor {
                    continue;
                }
                let slot = &mut out[(e - floor) as usize];
                *slot = f.add(*slot, f.mul(a, b));
            }
        }
        LaurentSeries::from_low(f, floor, out, exact)
    }

    pub fn mul_poly(&self, p: &Poly) -> Self {
        self.mul(&LaurentSeries::from_poly(p))
    }

    /// Multiplicative inverse, computed down to `min_floor` or to the precision the input
    /// supports, whichever is shallower. Exact only for exact monomials.
    pub fn inverse(&self, min_floor: i64) -> Result<Self> {
        let f = &self.field;
        if self.coeffs.is_empty() {
            return if self.exact {
                Err(Error::DivisionByZero)
            } else {
                Err(Error::precision("series inverse", self.floor - 1, self.floor))
            };
        }
        let t = self.top();
        let lead_inv = f.inv(*self.coeffs.last().unwrap())?;
        if self.exact && self.coeffs.len() == 1 {
            return Ok(LaurentSeries::from_low(f, -t, vec![lead_inv], true));
        }
        // relative precision: number of known coefficients after the leading one
        let floor = match self.precision() {
            Some(fl) => (-t - (t - fl)).max(min_floor),
            None => min_floor,
        };
        let len = (-t - floor + 1).max(0) as usize;
        // b_0 = 1/a_0, b_n = -(1/a_0) * sum_{k=1..n} a_k b_{n-k}, indexing downward from the top
        let a_down = |k: usize| -> Fq { self.coeff(t - k as i64).unwrap_or(Fq::ZERO) };
        let mut b: Vec<Fq> = Vec::with_capacity(len);
        for n in 0..len {
            if n == 0 {
                b.push(lead_inv);
                continue;
            }
            let mut acc = Fq::ZERO;
            for k in 1..=n {
                acc = f.add(acc, f.mul(a_down(k), b[n - k]));
            }
            b.push(f.neg(f.mul(lead_inv, acc)));
        }
        Ok(LaurentSeries::from_top_down(f, -t, b, false))
    }

    /// `self / other`, keeping the relative precision of the operands.
    pub fn div(&self, other: &Self) -> Result<Self> {
        let rel = match self.precision() {
            Some(fl) => self.top() - fl,
            None => 64,
        };
        let inv = other.inverse(-other.top() - rel.max(0) - 1)?;
        Ok(self.mul(&inv))
    }
}

impl fmt::Display for LaurentSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.exact {
            return write!(
                f,
                "{}",
                super::poly::format_terms(&self.field, &self.coeffs, self.floor)
            );
        }
        let coeffs: Vec<String> = self
            .coeffs_top_down()
            .into_iter()
            .map(|c| self.field.format(c))
            .collect();
        let top = if self.coeffs.is_empty() { self.floor - 1 } else { self.top() };
        write!(f, "{{floor: {}, top: {}, coeffs: [{}]}}", self.floor, top, coeffs.join(", "))
    }
}
