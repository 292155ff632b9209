//! Vectors and small matrices over K_∞ with precision tracking.

use super::matrix::Matrix;
use super::ratmat::{rank_rational, MatRat};
use crate::error::{Error, Result};
use crate::ffcore::{FieldRef, KInf, QExp};

pub type MatK = Matrix<KInf>;

/// `a * v` for an exact matrix and a K_∞ vector.
pub fn mul_rat_vec(a: &MatRat, v: &[KInf], field: &FieldRef) -> Vec<KInf> {
    (0..a.rows())
        .map(|i| {
            v.iter().enumerate().fold(KInf::zero(field), |acc, (k, x)| {
                let c = a.get(i, k);
                if c.is_zero() || x.is_exact_zero() {
                    acc
                } else {
                    acc.add(&KInf::Exact(c.clone()).mul(x))
                }
            })
        })
        .collect()
}

/// Sup norm of a vector: the largest |v_i|.
pub fn sup_norm(v: &[KInf]) -> Result<QExp> {
    v.iter().try_fold(QExp::ZERO, |acc, x| Ok(acc.max(x.abs()?)))
}

/// Determinant by cofactor expansion; intended for the small (k <= 4) minors used in
/// the d-invariant. Exact inputs give exact results.
pub fn det_kinf(m: &MatK, field: &FieldRef) -> Result<KInf> {
    if !m.is_square() {
        return Err(Error::DimensionMismatch("determinant of a non-square matrix".into()));
    }
    Ok(match m.rows() {
        0 => KInf::one(field),
        1 => m.get(0, 0).clone(),
        2 => m.get(0, 0).mul(m.get(1, 1)).sub(&m.get(0, 1).mul(m.get(1, 0))),
        n => {
            let mut acc = KInf::zero(field);
            for j in 0..n {
                let a = m.get(0, j);
                if a.is_exact_zero() {
                    continue;
                }
                let term = a.mul(&det_kinf(&m.minor(0, j), field)?);
                acc = if j % 2 == 0 { acc.add(&term) } else { acc.sub(&term) };
            }
            acc
        }
    })
}

/// Rank over K_∞ of the given rows.
///
/// Exact input is handed to [`rank_rational`]. Otherwise elimination picks, in each step,
/// a pivot whose absolute value is known and maximal; when the remaining entries are all
/// undecidable (known zero only down to their precision floor) and not exactly zero,
/// the rank cannot be certified and `InsufficientPrecision` is returned.
pub fn rank_kinf(rows: &[Vec<KInf>], field: &FieldRef) -> Result<usize> {
    if rows.is_empty() || rows[0].is_empty() {
        return Ok(0);
    }
    let cols = rows[0].len();
    if rows.iter().any(|r| r.len() != cols) {
        return Err(Error::DimensionMismatch("ragged rows".into()));
    }
    if rows.iter().flatten().all(KInf::is_exact) {
        let m = Matrix::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|x| x.as_exact().unwrap().clone()).collect())
                .collect(),
        )?;
        return Ok(rank_rational(&m, field));
    }
    let mut a: Vec<Vec<KInf>> = rows.to_vec();
    let mut live_rows: Vec<usize> = (0..a.len()).collect();
    let mut live_cols: Vec<usize> = (0..cols).collect();
    let mut rank = 0;
    loop {
        let mut best: Option<(usize, usize, i64)> = None;
        let mut undecided: Option<i64> = None;
        for &i in &live_rows {
            for &j in &live_cols {
                let x = &a[i][j];
                match x.abs() {
                    Ok(v) => {
                        if let Some(e) = v.exponent() {
                            if best.is_none_or(|(_, _, b)| e > b) {
                                best = Some((i, j, e));
                            }
                        }
                    }
                    Err(_) => {
                        let p = x.precision().unwrap_or(i64::MIN);
                        undecided = Some(undecided.map_or(p, |u| u.max(p)));
                    }
                }
            }
        }
        let Some((pi, pj, _)) = best else {
            if let Some(floor) = undecided {
                return Err(Error::precision("rank over K_inf", floor - 1, floor));
            }
            return Ok(rank);
        };
        let pivot = a[pi][pj].clone();
        for &i in &live_rows {
            if i == pi || a[i][pj].is_exact_zero() {
                continue;
            }
            let factor = a[i][pj].div(&pivot)?;
            for &j in &live_cols {
                if j == pj {
                    continue;
                }
                let v = a[i][j].sub(&factor.mul(&a[pi][j]));
                a[i][j] = v;
            }
            a[i][pj] = KInf::zero(field);
        }
        live_rows.retain(|&i| i != pi);
        live_cols.retain(|&j| j != pj);
        rank += 1;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ffcore::parse::parse_element;
    use crate::ffcore::Field;

    fn k(f: &FieldRef, s: &str) -> KInf {
        parse_element(f, s).unwrap()
    }

    #[test]
    fn approximate_rank_is_certified_when_pivots_are_visible() {
        let f = Field::prime(2).unwrap();
        let rows = vec![
            vec![k(&f, "{floor: -6, top: -1, coeffs: [1, 0, 1, 1, 0, 1]}"), k(&f, "x^-2")],
            vec![k(&f, "0"), k(&f, "{floor: -6, top: -1, coeffs: [1, 1, 0, 0, 0, 0]}")],
        ];
        assert_eq!(rank_kinf(&rows, &f).unwrap(), 2);
    }

    #[test]
    fn dependence_of_truncated_rows_is_undecidable() {
        let f = Field::prime(2).unwrap();
        let s = "{floor: -4, top: -1, coeffs: [1, 0, 1, 1]}";
        let rows = vec![vec![k(&f, s), k(&f, s)], vec![k(&f, "1"), k(&f, "1")]];
        assert!(matches!(rank_kinf(&rows, &f), Err(Error::InsufficientPrecision { .. })));
    }

    #[test]
    fn exact_rows_use_rational_rank() {
        let f = Field::prime(3).unwrap();
        let rows = vec![vec![k(&f, "1/x"), k(&f, "x")], vec![k(&f, "2/x"), k(&f, "2*x")]];
        assert_eq!(rank_kinf(&rows, &f).unwrap(), 1);
    }

    #[test]
    fn det_matches_rational_det() {
        let f = Field::prime(2).unwrap();
        let m = Matrix::from_rows(vec![
            vec![k(&f, "x^-1"), k(&f, "0"), k(&f, "1")],
            vec![k(&f, "x^-2"), k(&f, "x^-1"), k(&f, "x")],
            vec![k(&f, "1"), k(&f, "x+1"), k(&f, "0")],
        ])
        .unwrap();
        let d = det_kinf(&m, &f).unwrap();
        let r = m.map(|x| x.as_exact().unwrap().clone());
        assert_eq!(d.as_exact().unwrap(), &super::super::ratmat::det(&r, &f).unwrap());
    }
}
