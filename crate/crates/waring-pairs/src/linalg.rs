//! Dense matrices with exact rank/kernel computations and square solves.
//!
//! Ranks and kernels are only offered over [`ExactField`] domains; elimination
//! pivots on the first nonzero entry there. The square solver also works over
//! `f64`, where pivoting switches to largest magnitude with a relative
//! singularity threshold.



use thiserror::Error;

use crate::scalar::{ExactField, Field};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LinalgError {
    #[error("matrix entries drawn from mismatched scalar domains")]
    DomainMismatch,
    #[error("expected a square matrix, got {rows}x{cols}")]
    NotSquare { rows: usize, cols: usize },
    #[error("dimension mismatch: matrix has {expected} columns/rows, vector has {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("singular system: no solution")]
    Singular,
}

/// Row-major dense matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct Matrix<T> {
    rows: usize,
    cols: usize,
    entries: Vec<T>,
}

impl<T: Field> Matrix<T> {
    pub fn new(rows: usize, cols: usize, entries: Vec<T>) -> Self {
        assert_eq!(entries.len(), rows * cols, "entry count must be rows*cols");
        Matrix {
            rows,
            cols,
            entries,
        }
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix::new(rows, cols, vec![T::zero(); rows * cols])
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Matrix::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = T::one();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<T>>) -> Self {
        let nrows = rows.len();
        let ncols = rows.first().map_or(0, Vec::len);
        assert!(
            rows.iter().all(|r| r.len() == ncols),
            "ragged rows in matrix construction"
        );
        Matrix::new(nrows, ncols, rows.into_iter().flatten().collect())
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &[T] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    pub fn mul_vec(&self, v: &[T]) -> Result<Vec<T>, LinalgError> {
        if v.len() != self.cols {
            return Err(LinalgError::DimensionMismatch {
                expected: self.cols,
                got: v.len(),
            });
        }
        Ok((0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(v)
                    .fold(T::zero(), |acc, (a, b)| acc + a.clone() * b.clone())
            })
            .collect())
    }

    fn check_domain(&self) -> Result<(), LinalgError> {
        let mut witness: Option<&T> = None;
        for e in &self.entries {
            match witness {
                None => witness = Some(e),
                Some(w) => {
                    if !w.same_domain(e) {
                        return Err(LinalgError::DomainMismatch);
                    }
                }
            }
        }
        Ok(())
    }

    /// Reduced row echelon form in place; returns the pivot columns.
    fn rref(&mut self) -> Vec<usize> {
        let zero_threshold = if T::EXACT {
            0.0
        } else {
            let scale = self
                .entries
                .iter()
                .map(Field::pivot_magnitude)
                .fold(0.0, f64::max);
            scale * 1e-13
        };
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..self.cols {
            if r == self.rows {
                break;
            }
            let mut best = r;
            let mut best_mag = self[(r, c)].pivot_magnitude();
            for i in (r + 1)..self.rows {
                let mag = self[(i, c)].pivot_magnitude();
                if mag > best_mag {
                    best = i;
                    best_mag = mag;
                }
            }
            if best_mag <= zero_threshold {
                continue;
            }
            self.swap_rows(r, best);
            let inv = self[(r, c)]
                .try_inverse()
                .expect("nonzero pivot must be invertible");
            for j in c..self.cols {
                self[(r, j)] = self[(r, j)].clone() * inv.clone();
            }
            for i in 0..self.rows {
                if i == r || self[(i, c)].is_zero() {
                    continue;
                }
                let factor = self[(i, c)].clone();
                for j in c..self.cols {
                    self[(i, j)] =
                        self[(i, j)].clone() - factor.clone() * self[(r, j)].clone();
                }
            }
            pivots.push(c);
            r += 1;
        }
        pivots
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.entries.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    /// Row rank by exact elimination.
    pub fn rank(&self) -> Result<usize, LinalgError>
    where
        T: ExactField,
    {
        self.check_domain()?;
        let mut work = self.clone();
        Ok(work.rref().len())
    }

    /// Basis of the right kernel: `cols - rank` vectors `v` with `self * v = 0`.
    pub fn kernel_basis(&self) -> Result<Vec<Vec<T>>, LinalgError>
    where
        T: ExactField,
    {
        self.check_domain()?;
        let mut work = self.clone();
        let pivots = work.rref();
        let mut basis = Vec::with_capacity(self.cols - pivots.len());
        for free in 0..self.cols {
            if pivots.contains(&free) {
                continue;
            }
            let mut v = vec![T::zero(); self.cols];
            v[free] = T::one();
            for (row, &pc) in pivots.iter().enumerate() {
                v[pc] = -work[(row, free)].clone();
            }
            basis.push(v);
        }
        Ok(basis)
    }

    /// Solve the square system `self * x = b`.
    pub fn solve(&self, b: &[T]) -> Result<Vec<T>, LinalgError> {
        self.check_domain()?;
        if self.rows != self.cols {
            return Err(LinalgError::NotSquare {
                rows: self.rows,
                cols: self.cols,
            });
        }
        if b.len() != self.rows {
            return Err(LinalgError::DimensionMismatch {
                expected: self.rows,
                got: b.len(),
            });
        }
        // Augment with b and reduce; a pivot in every matrix column means a
        // unique solution.
        let mut aug = Matrix::zeros(self.rows, self.cols + 1);
        for i in 0..self.rows {
            for j in 0..self.cols {
                aug[(i, j)] = self[(i, j)].clone();
            }
            aug[(i, self.cols)] = b[i].clone();
        }
        let pivots = aug.rref();
        if pivots.len() != self.cols || pivots.iter().any(|&c| c == self.cols) {
            return Err(LinalgError::Singular);
        }
        Ok((0..self.cols).map(|i| aug[(i, self.cols)].clone()).collect())
    }
}

impl<T> std::ops::Index<(usize, usize)> for Matrix<T> {
    type Output = T;
    fn index(&self, (i, j): (usize, usize)) -> &T {
        assert!(i < self.rows && j < self.cols, "matrix index out of range");
        &self.entries[i * self.cols + j]
    }
}

impl<T> std::ops::IndexMut<(usize, usize)> for Matrix<T> {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut T {
        assert!(i < self.rows && j < self.cols, "matrix index out of range");
        &mut self.entries[i * self.cols + j]
    }
}
