use num_complex::Complex64;

use crate::error::{Error, Result};

/// Dense complex matrix, row-major storage.
#[derive(Debug, Clone, PartialEq)]
pub struct ComplexMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Complex64>,
}

impl ComplexMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        ComplexMatrix {
            rows,
            cols,
            data: vec![Complex64::new(0.0, 0.0); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = Complex64::new(1.0, 0.0);
        }
        m
    }

    /// Builds a matrix from its entries in row-major order.
    pub fn from_rows(rows: usize, cols: usize, data: Vec<Complex64>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::invalid(format!(
                "expected {} entries for a {}x{} matrix, got {}",
                rows * cols,
                rows,
                cols,
                data.len()
            )));
        }
        Ok(ComplexMatrix { rows, cols, data })
    }

    /// Builds a matrix whose j-th column is `columns[j]`.
    pub fn from_columns(columns: &[Vec<Complex64>]) -> Result<Self> {
        let cols = columns.len();
        if cols == 0 {
            return Err(Error::invalid("from_columns: no columns"));
        }
        let rows = columns[0].len();
        if columns.iter().any(|c| c.len() != rows) {
            return Err(Error::invalid("from_columns: ragged column lengths"));
        }
        let mut m = Self::zeros(rows, cols);
        for (j, col) in columns.iter().enumerate() {
            for (i, &v) in col.iter().enumerate() {
                m[(i, j)] = v;
            }
        }
        Ok(m)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn column(&self, j: usize) -> Vec<Complex64> {
        assert!(j < self.cols);
        (0..self.rows).map(|i| self[(i, j)]).collect()
    }

    pub fn set_column(&mut self, j: usize, col: &[Complex64]) {
        assert_eq!(col.len(), self.rows);
        for (i, &v) in col.iter().enumerate() {
            self[(i, j)] = v;
        }
    }

    /// The submatrix formed by the first `n` columns.
    pub fn leading_columns(&self, n: usize) -> Self {
        assert!(n <= self.cols);
        let mut m = Self::zeros(self.rows, n);
        for i in 0..self.rows {
            for j in 0..n {
                m[(i, j)] = self[(i, j)];
            }
        }
        m
    }

    /// Conjugate transpose.
    pub fn hermitian(&self) -> Self {
        let mut m = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                m[(j, i)] = self[(i, j)].conj();
            }
        }
        m
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.rows, "dimension mismatch in mul");
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self[(i, k)];
                if a == Complex64::new(0.0, 0.0) {
                    continue;
                }
                for j in 0..other.cols {
                    out[(i, j)] += a * other[(k, j)];
                }
            }
        }
        out
    }

    /// Matrix-vector product `self * v`.
    pub fn mul_vec(&self, v: &[Complex64]) -> Vec<Complex64> {
        assert_eq!(self.cols, v.len());
        (0..self.rows)
            .map(|i| {
                (0..self.cols)
                    .map(|j| self[(i, j)] * v[j])
                    .sum::<Complex64>()
            })
            .collect()
    }

    /// `self^* v`, i.e. the vector of conjugated-column inner products.
    pub fn herm_mul_vec(&self, v: &[Complex64]) -> Vec<Complex64> {
        assert_eq!(self.rows, v.len());
        (0..self.cols)
            .map(|j| (0..self.rows).map(|i| self[(i, j)].conj() * v[i]).sum())
            .collect()
    }

    pub fn scale(&self, a: Complex64) -> Self {
        let data = self.data.iter().map(|&x| x * a).collect();
        ComplexMatrix {
            rows: self.rows,
            cols: self.cols,
            data,
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(&a, &b)| a + b)
            .collect();
        ComplexMatrix {
            rows: self.rows,
            cols: self.cols,
            data,
        }
    }

    pub fn conj(&self) -> Self {
        let data = self.data.iter().map(|x| x.conj()).collect();
        ComplexMatrix {
            rows: self.rows,
            cols: self.cols,
            data,
        }
    }

    /// Largest entrywise absolute difference between two matrices.
    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        self.data
            .iter()
            .zip(&other.data)
            .map(|(&a, &b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    pub fn max_abs(&self) -> f64 {
        self.data.iter().map(|x| x.norm()).fold(0.0, f64::max)
    }

    pub fn is_finite(&self) -> bool {
        self.data
            .iter()
            .all(|x| x.re.is_finite() && x.im.is_finite())
    }

    pub fn entries(&self) -> &[Complex64] {
        &self.data
    }

    /// Solves `self * X = B` by LU factorization with partial pivoting.
    ///
    /// Fails when the pivot ratio suggests the system is rank deficient or
    /// conditioned beyond ~1e12.
    pub fn solve(&self, b: &Self) -> Result<Self> {
        if self.rows != self.cols {
            return Err(Error::invalid("solve: coefficient matrix must be square"));
        }
        if b.rows != self.rows {
            return Err(Error::invalid("solve: right-hand side has wrong row count"));
        }
        let n = self.rows;
        if n == 0 {
            return Ok(Self::zeros(0, b.cols));
        }
        let mut a = self.clone();
        let mut x = b.clone();
        let mut max_pivot: f64 = 0.0;
        let mut min_pivot = f64::INFINITY;
        for k in 0..n {
            let mut p = k;
            let mut best = a[(k, k)].norm();
            for i in (k + 1)..n {
                let v = a[(i, k)].norm();
                if v > best {
                    best = v;
                    p = i;
                }
            }
            if best == 0.0 {
                return Err(Error::singular("solve: zero pivot"));
            }
            max_pivot = max_pivot.max(best);
            min_pivot = min_pivot.min(best);
            if p != k {
                for j in 0..n {
                    a.data.swap(k * n + j, p * n + j);
                }
                for j in 0..x.cols {
                    x.data.swap(k * x.cols + j, p * x.cols + j);
                }
            }
            let pivot = a[(k, k)];
            for i in (k + 1)..n {
                let factor = a[(i, k)] / pivot;
                a[(i, k)] = factor;
                for j in (k + 1)..n {
                    let akj = a[(k, j)];
                    a[(i, j)] -= factor * akj;
                }
                for j in 0..x.cols {
                    let xkj = x[(k, j)];
                    x[(i, j)] -= factor * xkj;
                }
            }
        }
        // Pivot-ratio surrogate for the condition number.
        if min_pivot < max_pivot * 1e-12 {
            return Err(Error::domain(
                "solve: coefficient matrix is ill-conditioned",
            ));
        }
        for k in (0..n).rev() {
            let pivot = a[(k, k)];
            for j in 0..x.cols {
                let mut sum = x[(k, j)];
                for i in (k + 1)..n {
                    sum -= a[(k, i)] * x[(i, j)];
                }
                x[(k, j)] = sum / pivot;
            }
        }
        Ok(x)
    }
}

impl std::ops::Index<(usize, usize)> for ComplexMatrix {
    type Output = Complex64;

    fn index(&self, (i, j): (usize, usize)) -> &Complex64 {
        debug_assert!(i < self.rows && j < self.cols);
        &self.data[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for ComplexMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Complex64 {
        debug_assert!(i < self.rows && j < self.cols);
        &mut self.data[i * self.cols + j]
    }
}

/// Inner product `a^* b` with the conjugate on the first argument.
pub fn dot_conj(a: &[Complex64], b: &[Complex64]) -> Complex64 {
    debug_assert_eq!(a.len(), b.len());
    a.iter().zip(b).map(|(&x, &y)| x.conj() * y).sum()
}

/// Squared Euclidean norm of a complex vector.
pub fn norm_sq(v: &[Complex64]) -> f64 {
    v.iter().map(|x| x.norm_sqr()).sum()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn mul_against_hand_computed() {
        let a = ComplexMatrix::from_rows(
            2,
            2,
            vec![c(1.0, 1.0), c(2.0, 0.0), c(0.0, -1.0), c(1.0, 0.0)],
        )
        .unwrap();
        let b = ComplexMatrix::from_rows(
            2,
            2,
            vec![c(1.0, 0.0), c(0.0, 1.0), c(1.0, -1.0), c(3.0, 0.0)],
        )
        .unwrap();
        let p = a.mul(&b);
        assert_eq!(p[(0, 0)], c(3.0, -1.0));
        assert_eq!(p[(0, 1)], c(5.0, 1.0));
        assert_eq!(p[(1, 0)], c(1.0, -2.0));
        assert_eq!(p[(1, 1)], c(4.0, 0.0));
    }

    #[test]
    fn hermitian_involution() {
        let a = ComplexMatrix::from_rows(2, 3, vec![c(1.0, 2.0); 6]).unwrap();
        let ah = a.hermitian();
        assert_eq!(ah.rows(), 3);
        assert_eq!(ah[(0, 0)], c(1.0, -2.0));
        assert_eq!(ah.hermitian(), a);
    }

    #[test]
    fn solve_recovers_known_solution() {
        let a = ComplexMatrix::from_rows(
            2,
            2,
            vec![c(2.0, 0.0), c(1.0, 1.0), c(0.0, -1.0), c(3.0, 0.0)],
        )
        .unwrap();
        let x = ComplexMatrix::from_rows(2, 1, vec![c(1.0, -1.0), c(2.0, 0.5)]).unwrap();
        let b = a.mul(&x);
        let solved = a.solve(&b).unwrap();
        assert!(solved.max_abs_diff(&x) < 1e-12);
    }

    #[test]
    fn solve_rejects_singular() {
        let a = ComplexMatrix::from_rows(
            2,
            2,
            vec![c(1.0, 0.0), c(2.0, 0.0), c(2.0, 0.0), c(4.0, 0.0)],
        )
        .unwrap();
        let b = ComplexMatrix::identity(2);
        assert!(matches!(
            a.solve(&b),
            Err(Error::SingularMatrix(_)) | Err(Error::NumericDomain(_))
        ));
    }

    #[test]
    fn from_columns_round_trip() {
        let cols = vec![
            vec![c(1.0, 0.0), c(2.0, 0.0)],
            vec![c(0.0, 1.0), c(0.0, 2.0)],
        ];
        let m = ComplexMatrix::from_columns(&cols).unwrap();
        assert_eq!(m.column(0), cols[0]);
        assert_eq!(m.column(1), cols[1]);
    }
}
