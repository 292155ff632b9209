use crate::error::{Error, Result};
use crate::ffcore::{FieldRef, Fq};

/// A matrix over F_q.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MatFq {
    field: FieldRef,
    rows: usize,
    cols: usize,
    data: Vec<Fq>,
}

impl MatFq {
    pub fn zeros(field: &FieldRef, rows: usize, cols: usize) -> Self {
        MatFq {
            field: field.clone(),
            rows,
            cols,
            data: vec![Fq::ZERO; rows * cols],
        }
    }

    pub fn from_rows(field: &FieldRef, rows: &[Vec<Fq>]) -> Result<Self> {
        let cols = rows.first().map_or(0, |r| r.len());
        if rows.iter().any(|r| r.len() != cols) {
            return Err(Error::DimensionMismatch("ragged rows".into()));
        }
        Ok(MatFq {
            field: field.clone(),
            rows: rows.len(),
            cols,
            data: rows.iter().flatten().copied().collect(),
        })
    }

    pub fn from_ints(field: &FieldRef, rows: &[&[i64]]) -> Result<Self> {
        let rows: Vec<Vec<Fq>> = rows
            .iter()
            .map(|r| r.iter().map(|&v| field.from_int(v)).collect())
            .collect();
        MatFq::from_rows(field, &rows)
    }

    /// An empty matrix with the given column count (zero rows).
    pub fn empty(field: &FieldRef, cols: usize) -> Self {
        MatFq::zeros(field, 0, cols)
    }

    pub fn field(&self) -> &FieldRef {
        &self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> Fq {
        self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Fq) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[Fq] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn transpose(&self) -> Self {
        let mut t = MatFq::zeros(&self.field, self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j));
            }
        }
        t
    }

    /// Stack matrices with equal column counts on top of each other.
    pub fn vstack(field: &FieldRef, cols: usize, blocks: &[MatFq]) -> Result<Self> {
        let mut data = Vec::new();
        let mut rows = 0;
        for b in blocks {
            if b.cols != cols {
                return Err(Error::DimensionMismatch(format!(
                    "block has {} columns, expected {cols}",
                    b.cols
                )));
            }
            data.extend_from_slice(&b.data);
            rows += b.rows;
        }
        Ok(MatFq {
            field: field.clone(),
            rows,
            cols,
            data,
        })
    }

    /// Reduced row echelon form and the pivot columns.
    pub fn rref(&self) -> (MatFq, Vec<usize>) {
        let f = &self.field;
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(pr) = (r..m.rows).find(|&i| !m.get(i, c).is_zero()) else {
                continue;
            };
            if pr != r {
                for j in 0..m.cols {
                    m.data.swap(pr * m.cols + j, r * m.cols + j);
                }
            }
            let inv = f.inv(m.get(r, c)).expect("pivot is nonzero");
            for j in 0..m.cols {
                m.set(r, j, f.mul(m.get(r, j), inv));
            }
            for i in 0..m.rows {
                if i == r {
                    continue;
                }
                let factor = m.get(i, c);
                if factor.is_zero() {
                    continue;
                }
                for j in 0..m.cols {
                    let v = f.sub(m.get(i, j), f.mul(factor, m.get(r, j)));
                    m.set(i, j, v);
                }
            }
            pivots.push(c);
            r += 1;
        }
        (m, pivots)
    }

    pub fn rank(&self) -> usize {
        if self.rows == 0 || self.cols == 0 {
            return 0;
        }
        self.rref().1.len()
    }

    /// A nonzero vector `c` with `M c = 0`, if one exists. The free variable is the first
    /// non-pivot column, set to 1.
    pub fn kernel_vector(&self) -> Option<Vec<Fq>> {
        let f = &self.field;
        let (r, pivots) = self.rref();
        let free = (0..self.cols).find(|c| !pivots.contains(c))?;
        let mut v = vec![Fq::ZERO; self.cols];
        v[free] = Fq::ONE;
        for (row, &pc) in pivots.iter().enumerate() {
            v[pc] = f.neg(r.get(row, free));
        }
        Some(v)
    }

    /// A basis of the right kernel, one vector per non-pivot column.
    pub fn kernel_basis(&self) -> Vec<Vec<Fq>> {
        let f = &self.field;
        let (r, pivots) = self.rref();
        (0..self.cols)
            .filter(|c| !pivots.contains(c))
            .map(|free| {
                let mut v = vec![Fq::ZERO; self.cols];
                v[free] = Fq::ONE;
                for (row, &pc) in pivots.iter().enumerate() {
                    v[pc] = f.neg(r.get(row, free));
                }
                v
            })
            .collect()
    }

    pub fn mul_vec(&self, v: &[Fq]) -> Vec<Fq> {
        let f = &self.field;
        (0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(v)
                    .fold(Fq::ZERO, |acc, (&a, &b)| f.add(acc, f.mul(a, b)))
            })
            .collect()
    }
}

/// Rank over F_q by Gaussian elimination; 0 for empty matrices.
pub fn rank_fq(m: &MatFq) -> usize {
    m.rank()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ffcore::Field;
    use proptest::prelude::*;

    #[test]
    fn rank_examples() {
        let f = Field::prime(2).unwrap();
        assert_eq!(rank_fq(&MatFq::from_ints(&f, &[&[1, 0], &[0, 1]]).unwrap()), 2);
        assert_eq!(rank_fq(&MatFq::zeros(&f, 3, 2)), 0);
        assert_eq!(rank_fq(&MatFq::from_ints(&f, &[&[1, 0], &[1, 0]]).unwrap()), 1);
        assert_eq!(rank_fq(&MatFq::empty(&f, 4)), 0);
        assert_eq!(rank_fq(&MatFq::zeros(&f, 3, 0)), 0);
    }

    #[test]
    fn kernel_vector_is_in_kernel() {
        let f = Field::prime(3).unwrap();
        let m = MatFq::from_ints(&f, &[&[1, 2, 0], &[2, 1, 0]]).unwrap();
        let k = m.kernel_vector().unwrap();
        assert!(k.iter().any(|c| !c.is_zero()));
        assert!(m.mul_vec(&k).iter().all(|c| c.is_zero()));
        let id = MatFq::from_ints(&f, &[&[1, 0], &[0, 1]]).unwrap();
        assert!(id.kernel_vector().is_none());
        let basis = m.kernel_basis();
        assert_eq!(basis.len(), 3 - m.rank());
        assert!(basis.iter().all(|b| m.mul_vec(b).iter().all(|c| c.is_zero())));
    }

    proptest! {
        #[test]
        fn rank_equals_rank_of_transpose(
            q in prop::sample::select(vec![2u32, 3, 4, 5]),
            rows in 0usize..6,
            cols in 0usize..6,
            seed in prop::collection::vec(0u32..1000, 36),
        ) {
            let f = Field::with_order(q).unwrap();
            let data: Vec<Vec<Fq>> = (0..rows)
                .map(|i| (0..cols).map(|j| f.element(seed[i * 6 + j] % q)).collect())
                .collect();
            let m = if rows == 0 { MatFq::empty(&f, cols) } else { MatFq::from_rows(&f, &data).unwrap() };
            prop_assert_eq!(m.rank(), m.transpose().rank());
            prop_assert!(m.rank() <= rows.min(cols));
        }
    }
}
