//! Row reduction over a [`Scalar`] field: determinants, rank and null spaces.

use crate::scalar::Scalar;

/// Dense row-major matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct Matrix<S> {
    rows: usize,
    cols: usize,
    data: Vec<S>,
}

impl<S: Scalar> Matrix<S> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self { rows, cols, data: vec![S::zero(); rows * cols] }
    }

    pub fn from_rows(rows: Vec<Vec<S>>, cols: usize) -> Self {
        assert!(rows.iter().all(|r| r.len() == cols), "ragged matrix");
        let n = rows.len();
        Self { rows: n, cols, data: rows.into_iter().flatten().collect() }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &S {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: S) {
        self.data[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[S] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn to_rows(&self) -> Vec<Vec<S>> {
        (0..self.rows).map(|r| self.row(r).to_vec()).collect()
    }

    /// Copy with column `skip` removed.
    pub fn without_column(&self, skip: usize) -> Self {
        let rows = (0..self.rows)
            .map(|r| {
                self.row(r)
                    .iter()
                    .enumerate()
                    .filter(|(c, _)| *c != skip)
                    .map(|(_, v)| v.clone())
                    .collect()
            })
            .collect();
        Self::from_rows(rows, self.cols - 1)
    }

    pub fn frobenius(&self) -> f64 {
        self.data.iter().map(|v| v.to_f64().powi(2)).sum::<f64>().sqrt()
    }

    pub fn max_abs(&self) -> f64 {
        crate::scalar::max_magnitude(&self.data)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a != b {
            for c in 0..self.cols {
                self.data.swap(a * self.cols + c, b * self.cols + c);
            }
        }
    }
}

/// Determinant by Bareiss elimination with partial pivoting. Every division is
/// exact over the rationals. The empty matrix has determinant one.
pub fn determinant<S: Scalar>(m: &Matrix<S>) -> S {
    assert_eq!(m.rows, m.cols, "determinant of a non-square matrix");
    let n = m.rows;
    let scale = m.max_abs();
    let mut a = m.clone();
    let mut sign = S::one();
    let mut prev = S::one();
    for k in 0..n {
        let pivot = (k..n)
            .filter(|&r| !a.get(r, k).is_negligible(scale))
            .max_by(|&x, &y| a.get(x, k).abs_f64().total_cmp(&a.get(y, k).abs_f64()));
        let Some(p) = pivot else {
            return S::zero();
        };
        if p != k {
            a.swap_rows(p, k);
            sign = -sign;
        }
        let akk = a.get(k, k).clone();
        for i in k + 1..n {
            for j in k + 1..n {
                let v = (akk.clone() * a.get(i, j).clone()
                    - a.get(i, k).clone() * a.get(k, j).clone())
                    / prev.clone();
                a.set(i, j, v);
            }
            a.set(i, k, S::zero());
        }
        prev = akk;
    }
    if n == 0 {
        S::one()
    } else {
        sign * a.get(n - 1, n - 1).clone()
    }
}

/// Reduced row echelon form in place; returns the pivot columns.
pub fn rref<S: Scalar>(m: &mut Matrix<S>) -> Vec<usize> {
    let scale = m.max_abs();
    let mut pivots = Vec::new();
    let mut row = 0;
    for col in 0..m.cols {
        if row == m.rows {
            break;
        }
        let pivot = (row..m.rows)
            .filter(|&r| !m.get(r, col).is_negligible(scale))
            .max_by(|&x, &y| m.get(x, col).abs_f64().total_cmp(&m.get(y, col).abs_f64()));
        let Some(p) = pivot else {
            for r in row..m.rows {
                m.set(r, col, S::zero());
            }
            continue;
        };
        m.swap_rows(p, row);
        let inv = S::one() / m.get(row, col).clone();
        for c in col..m.cols {
            let v = m.get(row, c).clone() * inv.clone();
            m.set(row, c, v);
        }
        for r in 0..m.rows {
            if r == row {
                continue;
            }
            let factor = m.get(r, col).clone();
            if factor.is_zero() {
                continue;
            }
            for c in col..m.cols {
                let v = m.get(r, c).clone() - factor.clone() * m.get(row, c).clone();
                m.set(r, c, v);
            }
            m.set(r, col, S::zero());
        }
        pivots.push(col);
        row += 1;
    }
    pivots
}

pub fn rank<S: Scalar>(m: &Matrix<S>) -> usize {
    rref(&mut m.clone()).len()
}

/// Null-space basis: one vector per free column, with that entry equal to one.
pub fn nullspace<S: Scalar>(m: &Matrix<S>) -> Vec<Vec<S>> {
    let mut r = m.clone();
    let pivots = rref(&mut r);
    let free: Vec<usize> = (0..m.cols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![S::zero(); m.cols];
            v[f] = S::one();
            for (i, &p) in pivots.iter().enumerate() {
                v[p] = -r.get(i, f).clone();
            }
            v
        })
        .collect()
}
