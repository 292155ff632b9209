//! Matrices over F_q(x).

use super::matrix::Matrix;
use super::polymat::MatPoly;
use crate::error::{Error, Result};
use crate::ffcore::{FieldRef, Poly, RationalFunc};

pub type MatRat = Matrix<RationalFunc>;

pub fn from_poly(m: &MatPoly) -> MatRat {
    m.map(|p| RationalFunc::from_poly(p.clone()))
}

pub fn identity(field: &FieldRef, n: usize) -> MatRat {
    Matrix::from_fn(n, n, |i, j| {
        if i == j {
            RationalFunc::one(field)
        } else {
            RationalFunc::zero(field)
        }
    })
}

pub fn mul(a: &MatRat, b: &MatRat, field: &FieldRef) -> Result<MatRat> {
    if a.cols() != b.rows() {
        return Err(Error::DimensionMismatch(format!(
            "cannot multiply {}x{} by {}x{}",
            a.rows(),
            a.cols(),
            b.rows(),
            b.cols()
        )));
    }
    Ok(Matrix::from_fn(a.rows(), b.cols(), |i, j| {
        (0..a.cols()).fold(RationalFunc::zero(field), |acc, k| acc.add(&a.get(i, k).mul(b.get(k, j))))
    }))
}

pub fn mul_vec(a: &MatRat, v: &[RationalFunc], field: &FieldRef) -> Vec<RationalFunc> {
    (0..a.rows())
        .map(|i| {
            v.iter()
                .enumerate()
                .fold(RationalFunc::zero(field), |acc, (k, x)| acc.add(&a.get(i, k).mul(x)))
        })
        .collect()
}

/// Least common multiple of all denominators.
pub fn common_denominator(m: &MatRat, field: &FieldRef) -> Poly {
    m.iter().fold(Poly::one(field), |acc, r| acc.lcm(r.den()))
}

/// `c * m` as a polynomial matrix; `c` must clear every denominator.
pub fn clear_denominators(m: &MatRat, c: &Poly) -> Result<MatPoly> {
    m.try_map(|r| {
        let scaled = r.mul_poly(c);
        if scaled.is_poly() {
            Ok(scaled.num().clone())
        } else {
            Err(Error::DimensionMismatch("denominator not cleared".into()))
        }
    })
}

/// Determinant by Gaussian elimination over F_q(x).
pub fn det(m: &MatRat, field: &FieldRef) -> Result<RationalFunc> {
    if !m.is_square() {
        return Err(Error::DimensionMismatch("determinant of a non-square matrix".into()));
    }
    let n = m.rows();
    let mut a = m.clone();
    let mut acc = RationalFunc::one(field);
    for k in 0..n {
        let Some(piv) = (k..n).find(|&i| !a.get(i, k).is_zero()) else {
            return Ok(RationalFunc::zero(field));
        };
        if piv != k {
            a.swap_rows(piv, k);
            acc = acc.neg();
        }
        let p = a.get(k, k).clone();
        acc = acc.mul(&p);
        let p_inv = p.inv()?;
        for i in k + 1..n {
            let factor = a.get(i, k).mul(&p_inv);
            if factor.is_zero() {
                continue;
            }
            for j in k..n {
                let v = a.get(i, j).sub(&factor.mul(a.get(k, j)));
                a.set(i, j, v);
            }
        }
    }
    Ok(acc)
}

/// Inverse by Gauss-Jordan elimination.
pub fn inverse(m: &MatRat, field: &FieldRef) -> Result<MatRat> {
    if !m.is_square() {
        return Err(Error::DimensionMismatch("inverse of a non-square matrix".into()));
    }
    let n = m.rows();
    let mut a = m.clone();
    let mut inv = identity(field, n);
    for k in 0..n {
        let piv = (k..n)
            .find(|&i| !a.get(i, k).is_zero())
            .ok_or_else(|| Error::SingularInput("matrix is not invertible".into()))?;
        a.swap_rows(piv, k);
        inv.swap_rows(piv, k);
        let p_inv = a.get(k, k).inv()?;
        for j in 0..n {
            a.set(k, j, a.get(k, j).mul(&p_inv));
            inv.set(k, j, inv.get(k, j).mul(&p_inv));
        }
        for i in 0..n {
            if i == k || a.get(i, k).is_zero() {
                continue;
            }
            let factor = a.get(i, k).clone();
            for j in 0..n {
                a.set(i, j, a.get(i, j).sub(&factor.mul(a.get(k, j))));
                inv.set(i, j, inv.get(i, j).sub(&factor.mul(inv.get(k, j))));
            }
        }
    }
    Ok(inv)
}

/// adj(m) = det(m) * m^{-1}.
pub fn adjugate(m: &MatRat, field: &FieldRef) -> Result<MatRat> {
    let d = det(m, field)?;
    let inv = inverse(m, field)?;
    Ok(inv.map(|r| r.mul(&d)))
}

fn content(row: &[Poly]) -> Option<Poly> {
    let mut g: Option<Poly> = None;
    for p in row.iter().filter(|p| !p.is_zero()) {
        g = Some(match g {
            None => p.monic(),
            Some(g) => g.gcd(p),
        });
    }
    g
}

/// Rank over F_q(x): clear denominators column by column, then eliminate without
/// division, dividing each updated row by its content to keep degrees small.
pub fn rank_rational(m: &MatRat, field: &FieldRef) -> usize {
    if m.rows() == 0 || m.cols() == 0 {
        return 0;
    }
    let mut rows: Vec<Vec<Poly>> = (0..m.rows())
        .map(|_| Vec::with_capacity(m.cols()))
        .collect();
    for j in 0..m.cols() {
        let c = m.col(j).iter().fold(Poly::one(field), |acc, r| acc.lcm(r.den()));
        for (i, row) in rows.iter_mut().enumerate() {
            row.push(m.get(i, j).mul_poly(&c).num().clone());
        }
    }
    let mut rank = 0;
    for col in 0..m.cols() {
        let Some(piv) = (rank..rows.len()).find(|&i| !rows[i][col].is_zero()) else {
            continue;
        };
        rows.swap(piv, rank);
        let pivot_row = rows[rank].clone();
        for row in rows.iter_mut().skip(rank + 1) {
            if row[col].is_zero() {
                continue;
            }
            let a = pivot_row[col].clone();
            let b = row[col].clone();
            for (x, p) in row.iter_mut().zip(&pivot_row) {
                *x = &(&*x * &a) - &(p * &b);
            }
            if let Some(g) = content(row) {
                for x in row.iter_mut() {
                    *x = x.exact_div(&g).expect("content divides every entry");
                }
            }
        }
        rank += 1;
    }
    rank
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ffcore::parse::parse_rational;
    use crate::ffcore::Field;

    fn mat(f: &FieldRef, rows: &[&[&str]]) -> MatRat {
        Matrix::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|s| parse_rational(f, s).unwrap()).collect())
                .collect(),
        )
        .unwrap()
    }

    #[test]
    fn rank_examples() {
        let f = Field::prime(2).unwrap();
        assert_eq!(rank_rational(&identity(&f, 3), &f), 3);
        assert_eq!(rank_rational(&mat(&f, &[&["x", "x^2"], &["1", "x"]]), &f), 1);
        assert_eq!(rank_rational(&mat(&f, &[&["1/x", "0"], &["x^-2", "x^-1"]]), &f), 2);
        assert_eq!(rank_rational(&mat(&f, &[&["0", "0"]]), &f), 0);
    }

    #[test]
    fn inverse_roundtrip() {
        let f = Field::prime(3).unwrap();
        let m = mat(&f, &[&["x+1", "1/x", "2"], &["0", "x^2", "1"], &["1/(x+2)", "1", "x"]]);
        let inv = inverse(&m, &f).unwrap();
        assert_eq!(mul(&m, &inv, &f).unwrap(), identity(&f, 3));
        let adj = adjugate(&m, &f).unwrap();
        let d = det(&m, &f).unwrap();
        let prod = mul(&m, &adj, &f).unwrap();
        assert_eq!(prod, identity(&f, 3).map(|r| r.mul(&d)));
    }

    #[test]
    fn det_of_singular_is_zero() {
        let f = Field::prime(2).unwrap();
        assert!(det(&mat(&f, &[&["x", "x^2"], &["1", "x"]]), &f).unwrap().is_zero());
        assert!(inverse(&mat(&f, &[&["x", "x^2"], &["1", "x"]]), &f).is_err());
    }
}
