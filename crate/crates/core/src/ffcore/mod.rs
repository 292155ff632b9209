//! Exact arithmetic in F_q, F_q[x], F_q(x) and truncated F_q((x^{-1})).

mod field;
mod kinf;
pub mod parse;
mod poly;
mod qexp;
mod rational;
mod series;

pub use field::{Field, FieldRef, Fq};
pub use kinf::KInf;
pub use poly::Poly;
pub use qexp::QExp;
pub use rational::RationalFunc;
pub use series::LaurentSeries;

/// |f| for a rational function.
pub fn abs_value(f: &RationalFunc) -> QExp {
    f.abs()
}

/// The x^{-1}-adic expansion of `f` down to exponent `floor`.
pub fn expand_rational(f: &RationalFunc, floor: i64) -> LaurentSeries {
    f.expand(floor)
}

/// The fractional part: the sub-series on exponents <= -1.
pub fn frac_part(s: &LaurentSeries) -> LaurentSeries {
    s.frac_part()
}
