use std::cmp::Ordering;
use std::fmt;
use std::ops::Mul;

/// A value in `q^Z ∪ {0}`: either `q^e` or zero (bottom).
///
/// Norms, volumes, determinants and radii all live here, so they are compared and
/// multiplied exactly through their exponents.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct QExp(Option<i64>);

impl QExp {
    pub const ZERO: QExp = QExp(None);
    pub const ONE: QExp = QExp(Some(0));

    pub fn pow(e: i64) -> Self {
        QExp(Some(e))
    }

    pub fn exponent(self) -> Option<i64> {
        self.0
    }

    pub fn is_zero(self) -> bool {
        self.0.is_none()
    }

    /// The exponent, panicking on zero. Use where nonzero is an invariant.
    pub fn exp(self) -> i64 {
        self.0.expect("exponent of the zero value")
    }

    /// Multiply by `q^k`.
    pub fn shift(self, k: i64) -> Self {
        QExp(self.0.map(|e| e + k))
    }
}

impl PartialOrd for QExp {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for QExp {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self.0, other.0) {
            (None, None) => Ordering::Equal,
            (None, Some(_)) => Ordering::Less,
            (Some(_), None) => Ordering::Greater,
            (Some(a), Some(b)) => a.cmp(&b),
        }
    }
}

impl Mul for QExp {
    type Output = QExp;

    // q^a q^b = q^{a+b}
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn mul(self, rhs: QExp) -> QExp {
        match (self.0, rhs.0) {
            (Some(a), Some(b)) => QExp(Some(a + b)),
            _ => QExp::ZERO,
        }
    }
}

impl fmt::Display for QExp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.0 {
            None => write!(f, "0"),
            Some(e) => write!(f, "q^{e}"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bottom_is_below_everything() {
        assert!(QExp::ZERO < QExp::pow(-1000));
        assert!(QExp::pow(-1) < QExp::ONE);
        assert_eq!(QExp::pow(2) * QExp::pow(-3), QExp::pow(-1));
        assert_eq!(QExp::pow(2) * QExp::ZERO, QExp::ZERO);
        assert_eq!(QExp::pow(-2).to_string(), "q^-2");
    }
}
