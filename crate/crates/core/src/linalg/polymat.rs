//! Matrices over F_q[x]: fraction-free determinants and column reduction.

use super::fq::MatFq;
use super::matrix::Matrix;
use crate::error::{Error, Result};
use crate::ffcore::{FieldRef, Poly};

/// A polynomial matrix; for lattice work each column is a basis vector.
pub type MatPoly = Matrix<Poly>;

pub fn identity(field: &FieldRef, n: usize) -> MatPoly {
    Matrix::from_fn(n, n, |i, j| if i == j { Poly::one(field) } else { Poly::zero(field) })
}

pub fn mul(a: &MatPoly, b: &MatPoly, field: &FieldRef) -> Result<MatPoly> {
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
        (0..a.cols()).fold(Poly::zero(field), |acc, k| &acc + &(a.get(i, k) * b.get(k, j)))
    }))
}

/// Exact determinant by Bareiss fraction-free elimination.
pub fn det_poly(m: &MatPoly, field: &FieldRef) -> Result<Poly> {
    if !m.is_square() {
        return Err(Error::DimensionMismatch("determinant of a non-square matrix".into()));
    }
    let n = m.rows();
    if n == 0 {
        return Ok(Poly::one(field));
    }
    let mut a = m.clone();
    let mut prev = Poly::one(field);
    let mut negate = false;
    for k in 0..n - 1 {
        let Some(piv) = (k..n).find(|&i| !a.get(i, k).is_zero()) else {
            return Ok(Poly::zero(field));
        };
        if piv != k {
            a.swap_rows(piv, k);
            negate = !negate;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = &(a.get(i, j) * a.get(k, k)) - &(a.get(i, k) * a.get(k, j));
                a.set(i, j, num.exact_div(&prev)?);
            }
            a.set(i, k, Poly::zero(field));
        }
        prev = a.get(k, k).clone();
    }
    let det = a.get(n - 1, n - 1).clone();
    Ok(if negate { -&det } else { det })
}

/// Degree of each column (max entry degree); `None` for a zero column.
pub fn column_degrees(m: &MatPoly) -> Vec<Option<usize>> {
    (0..m.cols())
        .map(|j| (0..m.rows()).filter_map(|i| m.get(i, j).degree()).max())
        .collect()
}

/// Leading-coefficient matrix: entry (j, i) is the coefficient of x^{deg col_i} in m[j][i].
pub fn leading_matrix(m: &MatPoly, field: &FieldRef) -> MatFq {
    let degs = column_degrees(m);
    let mut l = MatFq::zeros(field, m.rows(), m.cols());
    for (i, d) in degs.iter().enumerate() {
        if let Some(d) = d {
            for j in 0..m.rows() {
                l.set(j, i, m.get(j, i).coeff(*d));
            }
        }
    }
    l
}

/// Output of [`popov_reduce`]: `reduced = input * transform`, columns sorted by degree.
#[derive(Debug, Clone, PartialEq)]
pub struct PopovResult {
    pub reduced: MatPoly,
    pub transform: MatPoly,
    /// Column degrees of `reduced`, ascending.
    pub degrees: Vec<i64>,
}

/// Column-reduce a nonsingular square polynomial matrix.
///
/// While the leading-coefficient matrix is singular, a kernel vector `c` of it gives a
/// combination of columns whose top-degree terms cancel; the involved column of highest
/// degree (lowest index among ties) is replaced by `sum_i c_i x^(delta - deg col_i) col_i`.
/// Each step lowers the total column degree, which is bounded below by `deg det`.
pub fn popov_reduce(m: &MatPoly, field: &FieldRef) -> Result<PopovResult> {
    if !m.is_square() {
        return Err(Error::DimensionMismatch("reduction needs a square matrix".into()));
    }
    if det_poly(m, field)?.is_zero() {
        return Err(Error::SingularInput("polynomial matrix has zero determinant".into()));
    }
    let n = m.cols();
    let mut r = m.clone();
    let mut u = identity(field, n);
    loop {
        let lead = leading_matrix(&r, field);
        let Some(c) = lead.kernel_vector() else { break };
        let degs: Vec<usize> = column_degrees(&r)
            .into_iter()
            .map(|d| d.expect("nonsingular matrix has no zero column"))
            .collect();
        let target = (0..n)
            .filter(|&i| !c[i].is_zero())
            .max_by(|&a, &b| degs[a].cmp(&degs[b]).then(b.cmp(&a)))
            .expect("kernel vector is nonzero");
        let delta = degs[target];
        let combine = |mat: &MatPoly| -> Vec<Poly> {
            (0..mat.rows())
                .map(|row| {
                    (0..n).filter(|&i| !c[i].is_zero()).fold(Poly::zero(field), |acc, i| {
                        let term = mat.get(row, i).scale(c[i]).shift(delta - degs[i]);
                        &acc + &term
                    })
                })
                .collect()
        };
        let new_r = combine(&r);
        let new_u = combine(&u);
        r.set_col(target, &new_r);
        u.set_col(target, &new_u);
    }
    let degs: Vec<i64> = column_degrees(&r)
        .into_iter()
        .map(|d| d.expect("nonzero column") as i64)
        .collect();
    let mut perm: Vec<usize> = (0..n).collect();
    perm.sort_by_key(|&i| (degs[i], i));
    Ok(PopovResult {
        reduced: r.permute_cols(&perm),
        transform: u.permute_cols(&perm),
        degrees: perm.iter().map(|&i| degs[i]).collect(),
    })
}

/// True if the determinant is a nonzero constant.
pub fn is_unimodular(m: &MatPoly, field: &FieldRef) -> Result<bool> {
    Ok(det_poly(m, field)?.degree() == Some(0))
}

/// Constant-term view of a matrix whose entries are all constants.
pub fn constant_part(m: &MatPoly, field: &FieldRef) -> MatFq {
    let mut out = MatFq::zeros(field, m.rows(), m.cols());
    for i in 0..m.rows() {
        for j in 0..m.cols() {
            out.set(i, j, m.get(i, j).coeff(0));
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ffcore::parse::parse_poly;
    use crate::ffcore::Field;

    fn mat(f: &FieldRef, rows: &[&[&str]]) -> MatPoly {
        Matrix::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|s| parse_poly(f, s).unwrap()).collect())
                .collect(),
        )
        .unwrap()
    }

    #[test]
    fn det_examples() {
        let f = Field::prime(2).unwrap();
        assert_eq!(det_poly(&mat(&f, &[&["x", "0"], &["0", "x"]]), &f).unwrap(), parse_poly(&f, "x^2").unwrap());
        // x*1 - (x+1)*1 = 1 in characteristic 2
        assert_eq!(det_poly(&mat(&f, &[&["x", "x+1"], &["1", "1"]]), &f).unwrap(), Poly::one(&f));
        assert!(det_poly(&mat(&f, &[&["x", "x^2"], &["1", "x"]]), &f).unwrap().is_zero());
    }

    #[test]
    fn det_matches_cofactor_expansion_3x3() {
        let f = Field::prime(3).unwrap();
        let m = mat(&f, &[&["x+1", "2", "x^2"], &["0", "x", "1"], &["2*x", "1", "x+2"]]);
        let cof = |i: usize, j: usize| m.get(i, j).clone();
        let d2 = |a: usize, b: usize, c: usize, d: usize| {
            &(&cof(1, a) * &cof(2, b)) - &(&cof(1, c) * &cof(2, d))
        };
        let expected = &(&(&cof(0, 0) * &d2(1, 2, 2, 1)) - &(&cof(0, 1) * &d2(0, 2, 2, 0)))
            + &(&cof(0, 2) * &d2(0, 1, 1, 0));
        assert_eq!(det_poly(&m, &f).unwrap(), expected);
    }

    #[test]
    fn diagonal_is_already_reduced() {
        let f = Field::prime(2).unwrap();
        let m = mat(&f, &[&["x^2", "0"], &["0", "x"]]);
        let res = popov_reduce(&m, &f).unwrap();
        assert_eq!(res.degrees, vec![1, 2]);
        assert_eq!(res.reduced, mat(&f, &[&["0", "x^2"], &["x", "0"]]));
    }

    #[test]
    fn hand_reduction_to_identity_degrees() {
        let f = Field::prime(2).unwrap();
        let m = mat(&f, &[&["x", "x+1"], &["1", "1"]]);
        let res = popov_reduce(&m, &f).unwrap();
        assert_eq!(res.degrees, vec![0, 0]);
        assert!(is_unimodular(&res.transform, &f).unwrap());
        assert_eq!(mul(&m, &res.transform, &f).unwrap(), res.reduced);
    }

    #[test]
    fn singular_input_is_rejected() {
        let f = Field::prime(2).unwrap();
        let m = mat(&f, &[&["x", "x^2"], &["1", "x"]]);
        assert!(matches!(popov_reduce(&m, &f), Err(Error::SingularInput(_))));
    }
}
