//! Dense matrices over an exact field: rank, kernel, determinant.

use std::fmt;

use super::field::Field;

#[derive(Clone, Debug, PartialEq)]
pub struct Matrix<F> {
    rows: usize,
    cols: usize,
    data: Vec<F>,
}

impl<F: Field> Matrix<F> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix { rows, cols, data: vec![F::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = F::one();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<F>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        Matrix { rows: r, cols: c, data: rows.into_iter().flatten().collect() }
    }

    pub fn nrows(&self) -> usize {
        self.rows
    }

    pub fn ncols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &[F] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<F> {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    /// Matrix formed by the given columns, in the given order.
    pub fn select_columns(&self, cols: &[usize]) -> Self {
        let rows = (0..self.rows).map(|i| cols.iter().map(|&j| self[(i, j)].clone()).collect()).collect();
        Self::from_rows(rows)
    }

    pub fn mul_vec(&self, v: &[F]) -> Vec<F> {
        assert_eq!(v.len(), self.cols);
        (0..self.rows)
            .map(|i| {
                self.row(i).iter().zip(v).fold(F::zero(), |acc, (a, b)| acc.add(&a.mul(b)))
            })
            .collect()
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    /// Fraction-free (Bareiss) forward elimination. Returns the pivot
    /// columns and the number of row swaps performed; `self` is left in row
    /// echelon form.
    fn bareiss(&mut self) -> (Vec<usize>, usize) {
        let mut pivots = Vec::new();
        let mut swaps = 0;
        let mut prev = F::one();
        let mut row = 0;
        for col in 0..self.cols {
            if row == self.rows {
                break;
            }
            let Some(p) = (row..self.rows).find(|&i| !self[(i, col)].is_zero()) else {
                continue;
            };
            if p != row {
                self.swap_rows(p, row);
                swaps += 1;
            }
            let pivot = self[(row, col)].clone();
            for i in row + 1..self.rows {
                let factor = self[(i, col)].clone();
                for j in col..self.cols {
                    let v = pivot.mul(&self[(i, j)]).sub(&factor.mul(&self[(row, j)]));
                    self[(i, j)] = v.div(&prev).expect("previous pivot is nonzero");
                }
            }
            // Columns left of the pivot in lower rows are already zero;
            // rows above keep their entries.
            prev = pivot;
            pivots.push(col);
            row += 1;
        }
        (pivots, swaps)
    }

    /// Reduced row echelon form and its pivot columns.
    pub fn rref(&self) -> (Self, Vec<usize>) {
        let mut m = self.clone();
        let (pivots, _) = m.bareiss();
        for (r, &c) in pivots.iter().enumerate().rev() {
            let inv = m[(r, c)].inv().expect("pivot is nonzero");
            for j in c..m.cols {
                m[(r, j)] = m[(r, j)].mul(&inv);
            }
            for i in 0..r {
                let factor = m[(i, c)].clone();
                if factor.is_zero() {
                    continue;
                }
                for j in c..m.cols {
                    let v = m[(i, j)].sub(&factor.mul(&m[(r, j)]));
                    m[(i, j)] = v;
                }
            }
        }
        (m, pivots)
    }

    pub fn rank(&self) -> usize {
        self.clone().bareiss().0.len()
    }

    /// Basis of the right kernel. Each vector is scaled so that its first
    /// nonzero entry is 1. A matrix of full column rank yields no vectors.
    pub fn kernel_basis(&self) -> Vec<Vec<F>> {
        let (r, pivots) = self.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        free.iter()
            .map(|&f| {
                let mut v = vec![F::zero(); self.cols];
                v[f] = F::one();
                for (row, &pc) in pivots.iter().enumerate() {
                    v[pc] = r[(row, f)].neg();
                }
                normalize_leading(v)
            })
            .collect()
    }

    pub fn determinant(&self) -> F {
        assert_eq!(self.rows, self.cols, "determinant of a non-square matrix");
        if self.rows == 0 {
            return F::one();
        }
        let mut m = self.clone();
        let (pivots, swaps) = m.bareiss();
        if pivots.len() < self.rows {
            return F::zero();
        }
        let d = m[(self.rows - 1, self.cols - 1)].clone();
        if swaps % 2 == 1 {
            d.neg()
        } else {
            d
        }
    }

    /// Matrix with row `i` and column `j` removed.
    pub fn minor(&self, i: usize, j: usize) -> Self {
        let rows = (0..self.rows)
            .filter(|&a| a != i)
            .map(|a| (0..self.cols).filter(|&b| b != j).map(|b| self[(a, b)].clone()).collect())
            .collect();
        Self::from_rows(rows)
    }
}

/// Scales `v` so that its first nonzero entry is 1.
pub fn normalize_leading<F: Field>(v: Vec<F>) -> Vec<F> {
    match v.iter().find(|x| !x.is_zero()) {
        Some(lead) if !lead.is_one() => {
            let inv = lead.inv().expect("nonzero");
            v.iter().map(|x| x.mul(&inv)).collect()
        }
        _ => v,
    }
}

impl<F> std::ops::Index<(usize, usize)> for Matrix<F> {
    type Output = F;
    fn index(&self, (i, j): (usize, usize)) -> &F {
        &self.data[i * self.cols + j]
    }
}

impl<F> std::ops::IndexMut<(usize, usize)> for Matrix<F> {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut F {
        &mut self.data[i * self.cols + j]
    }
}

impl<F: Field> fmt::Display for Matrix<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(|x| x.to_string()).collect();
            writeln!(f, "[{}]", row.join(", "))?;
        }
        Ok(())
    }
}
