//! Hankel matrices of Laurent tails and the covering radius of `Λ(α, q^N)`.
//!
//! With `e_i = log_q λ_{i,C}(Λ)` and `α_i` the reduced fractional coordinates of α, the
//! covering radius is `q^{-(1+γ)}` where γ is the largest integer ℓ with
//! `rank Δ_{α_1..α_d}(ℓ+e_1, ..., ℓ+e_d; N+1) = Σ max(ℓ+e_i, 0)`.
//! The set of such ℓ is downward closed and contains every `ℓ <= -e_d` (all blocks empty),
//! so γ is one less than the first failure of an upward scan from `-e_d`.

use num_bigint::BigInt;
use num_rational::BigRational;

use crate::error::{Error, Result};
use crate::ffcore::{Fq, KInf, QExp};
use crate::lattice::{reduce_lattice, ConvexBody, Lattice};
use crate::linalg::MatFq;
use crate::periodic::{frac_vec, PeriodicForm, PeriodicLattice};

/// `Δ_α(m, n)`: entry (i, j) (1-indexed) is the coefficient of `x^{-(i+j-1)}` in α.
/// Empty when `m <= 0` or `n <= 0`.
pub fn hankel(alpha: &KInf, m: i64, n: i64) -> Result<MatFq> {
    let field = alpha.field();
    if m <= 0 || n <= 0 {
        return Ok(MatFq::empty(field, n.max(0) as usize));
    }
    let depth = m + n - 1;
    let coeffs: Vec<Fq> = (1..=depth).map(|k| alpha.coeff(-k)).collect::<Result<_>>().map_err(|_| {
        Error::precision(
            "Hankel matrix",
            -depth,
            alpha.precision().unwrap_or(i64::MIN),
        )
    })?;
    let rows: Vec<Vec<Fq>> = (0..m as usize)
        .map(|i| (0..n as usize).map(|j| coeffs[i + j]).collect())
        .collect();
    MatFq::from_rows(field, &rows)
}

/// The stacked system `Δ_{α_1..α_d}(ℓ+e_1, ..., ℓ+e_d; n)`.
#[derive(Debug, Clone, PartialEq)]
pub struct HankelStack {
    pub ell: i64,
    /// Block heights `m_i = max(ℓ + e_i, 0)`.
    pub heights: Vec<usize>,
    pub cols: usize,
    pub matrix: MatFq,
}

impl HankelStack {
    pub fn build(alpha: &[KInf], exponents: &[i64], ell: i64, cols: usize) -> Result<Self> {
        let field = alpha
            .first()
            .ok_or_else(|| Error::DimensionMismatch("empty alpha".into()))?
            .field()
            .clone();
        let heights: Vec<usize> = exponents.iter().map(|&e| (ell + e).max(0) as usize).collect();
        let blocks = alpha
            .iter()
            .zip(&heights)
            .map(|(a, &m)| hankel(a, m as i64, cols as i64))
            .collect::<Result<Vec<_>>>()?;
        let matrix = MatFq::vstack(&field, cols, &blocks)?;
        Ok(HankelStack {
            ell,
            heights,
            cols,
            matrix,
        })
    }

    /// `Σ m_i`, the rank the condition asks for.
    pub fn target(&self) -> usize {
        self.heights.iter().sum()
    }

    pub fn rank(&self) -> usize {
        self.matrix.rank()
    }

    pub fn holds(&self) -> bool {
        self.rank() == self.target()
    }
}

/// One step of the ℓ scan.
#[derive(Debug, Clone, PartialEq)]
pub struct ScanStep {
    pub ell: i64,
    pub target: usize,
    /// `None` when the target exceeds the column count and no matrix was built.
    pub rank: Option<usize>,
    pub holds: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct CovradResult {
    /// CovRad_C(S) = q^{exponent}.
    pub exponent: i64,
    /// Largest ℓ satisfying the rank condition.
    pub gamma: i64,
    pub steps: Vec<ScanStep>,
}

impl CovradResult {
    pub fn value(&self) -> QExp {
        QExp::pow(self.exponent)
    }
}

/// The rank condition at `ell` for reduced coordinates `alpha` and minima `exponents`.
pub fn rank_condition(alpha: &[KInf], exponents: &[i64], n: u32, ell: i64) -> Result<ScanStep> {
    let target: usize = exponents.iter().map(|&e| (ell + e).max(0) as usize).sum();
    let cols = n as usize + 1;
    if target > cols {
        return Ok(ScanStep {
            ell,
            target,
            rank: None,
            holds: false,
        });
    }
    let stack = HankelStack::build(alpha, exponents, ell, cols)?;
    let rank = stack.rank();
    Ok(ScanStep {
        ell,
        target,
        rank: Some(rank),
        holds: rank == target,
    })
}

/// Reduced fractional coordinates of α for `body`, with the matching minima exponents.
pub fn reduced_alpha(s: &PeriodicLattice, body: &ConvexBody) -> Result<(Vec<KInf>, Vec<i64>, u32)> {
    let PeriodicForm::Alpha { alpha, n } = s.form() else {
        return Err(Error::Unsupported(
            "an alpha-form periodic lattice (use the oracle for coset forms)".into(),
        ));
    };
    let red = reduce_lattice(s.lattice(), body)?;
    let coords = frac_vec(&red.coordinates(alpha));
    Ok((coords, red.exponents.clone(), *n))
}

/// CovRad_C(Λ(α, q^N)) by the Hankel rank scan.
pub fn covrad_periodic(s: &PeriodicLattice, body: &ConvexBody) -> Result<CovradResult> {
    let (alpha, exps, n) = reduced_alpha(s, body)?;
    covrad_scan(&alpha, &exps, n)
}

/// The scan on reduced fractional coordinates `alpha` and minima exponents `exponents`.
/// Also meaningful for `α = 0, N = 0`, where `S = Λ`.
pub fn covrad_scan(alpha: &[KInf], exponents: &[i64], n: u32) -> Result<CovradResult> {
    let e_d = *exponents
        .last()
        .ok_or_else(|| Error::DimensionMismatch("no minima".into()))?;
    let mut steps = Vec::new();
    let mut ell = -e_d;
    loop {
        let step = rank_condition(alpha, exponents, n, ell)?;
        let holds = step.holds;
        steps.push(step);
        if !holds {
            break;
        }
        ell += 1;
    }
    Ok(CovradResult {
        exponent: -ell,
        gamma: ell - 1,
        steps,
    })
}

/// Bounds from the corollary: the lower exponent
/// `-(1 + max_i (N+1 - Σ_{j=d-i+1}^{d} e_j) / i)` as an exact rational, and the upper
/// exponent `e_d - 1`.
#[derive(Debug, Clone, PartialEq)]
pub struct CovradBounds {
    pub lower: BigRational,
    pub upper: i64,
}

impl CovradBounds {
    pub fn contains(&self, exponent: i64) -> bool {
        self.lower <= BigRational::from_integer(BigInt::from(exponent)) && exponent <= self.upper
    }
}

pub fn covrad_bounds(lattice: &Lattice, n: u32, body: &ConvexBody) -> Result<CovradBounds> {
    let red = reduce_lattice(lattice, body)?;
    Ok(bounds_from_exponents(&red.exponents, n))
}

pub fn bounds_from_exponents(exponents: &[i64], n: u32) -> CovradBounds {
    let d = exponents.len();
    let mut best: Option<BigRational> = None;
    for i in 1..=d {
        let tail: i64 = exponents[d - i..].iter().sum();
        let v = BigRational::new(BigInt::from(n as i64 + 1 - tail), BigInt::from(i as i64));
        if best.as_ref().is_none_or(|b| v > *b) {
            best = Some(v);
        }
    }
    let one = BigRational::from_integer(BigInt::from(1));
    CovradBounds {
        lower: -(one + best.expect("d >= 1")),
        upper: exponents[d - 1] - 1,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ffcore::parse::parse_element;
    use crate::ffcore::{Field, FieldRef};
    use crate::periodic::Frame;

    fn k(f: &FieldRef, s: &str) -> KInf {
        parse_element(f, s).unwrap()
    }

    #[test]
    fn hankel_layout() {
        let f = Field::prime(2).unwrap();
        let h = hankel(&k(&f, "x^-1"), 2, 2).unwrap();
        assert_eq!(h, MatFq::from_ints(&f, &[&[1, 0], &[0, 0]]).unwrap());
        assert_eq!(hankel(&k(&f, "x^-1"), 0, 3).unwrap().rank(), 0);
        let f3 = Field::prime(3).unwrap();
        let a = k(&f3, "x^-1 + 2*x^-2 + x^-3");
        assert_eq!(hankel(&a, 2, 2).unwrap(), MatFq::from_ints(&f3, &[&[1, 2], &[2, 1]]).unwrap());
    }

    #[test]
    fn hankel_needs_precision() {
        let f = Field::prime(2).unwrap();
        let a = k(&f, "{floor: -2, top: -1, coeffs: [1, 1]}");
        assert!(hankel(&a, 1, 2).is_ok());
        assert!(matches!(hankel(&a, 2, 2), Err(Error::InsufficientPrecision { .. })));
    }

    #[test]
    fn w_covering_radius() {
        let f = Field::prime(2).unwrap();
        let lat = Lattice::standard(&f, 2).unwrap();
        let s = PeriodicLattice::alpha(&lat, &[k(&f, "x^-1"), k(&f, "x^-2")], Frame::Reduced, 1).unwrap();
        let body = ConvexBody::unit(&f, 2);
        let r = covrad_periodic(&s, &body).unwrap();
        assert_eq!(r.exponent, -2);
        assert_eq!(r.gamma, 1);
        let b = covrad_bounds(&lat, 1, &body).unwrap();
        assert_eq!(b.lower, BigRational::from_integer(BigInt::from(-3)));
        assert_eq!(b.upper, -1);
        assert!(b.contains(-2));
    }

    #[test]
    fn zero_alpha_gives_lattice_covering_radius() {
        let f = Field::prime(3).unwrap();
        let lat = Lattice::standard(&f, 2).unwrap();
        let s = PeriodicLattice::cosets(&lat, &[]).unwrap();
        let body = ConvexBody::unit(&f, 2);
        assert!(covrad_periodic(&s, &body).is_err());
        // α = 0 with N = 0 is N-rational, so feed the scan directly
        let zero = vec![k(&f, "0"), k(&f, "0")];
        let e = [0, 0];
        assert!(rank_condition(&zero, &e, 0, 0).unwrap().holds);
        assert!(!rank_condition(&zero, &e, 0, 1).unwrap().holds);
        assert_eq!(covrad_scan(&zero, &[-1, 2], 0).unwrap().exponent, 1);
        let b = bounds_from_exponents(&e, 0);
        assert_eq!(b.lower, BigRational::from_integer(BigInt::from(-2)));
        assert_eq!(b.upper, -1);
    }
}
