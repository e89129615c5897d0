use std::fmt;

use num_traits::{One, Zero};

use super::{ExactScalar, MathError, MultiPoly};
use crate::exec::Execution;

/// Dense matrix of exact rationals, row-major.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RatMatrix {
    rows: usize,
    cols: usize,
    data: Vec<ExactScalar>,
}

impl RatMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        RatMatrix {
            rows,
            cols,
            data: vec![ExactScalar::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = ExactScalar::one();
        }
        m
    }

    pub fn diagonal(entries: &[ExactScalar]) -> Self {
        let mut m = Self::zeros(entries.len(), entries.len());
        for (i, e) in entries.iter().enumerate() {
            m[(i, i)] = e.clone();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<ExactScalar>>) -> Result<Self, MathError> {
        let nrows = rows.len();
        let ncols = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != ncols) {
            return Err(MathError::Dimension("ragged rows".into()));
        }
        Ok(RatMatrix {
            rows: nrows,
            cols: ncols,
            data: rows.into_iter().flatten().collect(),
        })
    }

    /// Matrix whose columns are the given vectors.
    pub fn from_columns(nrows: usize, cols: &[Vec<ExactScalar>]) -> Self {
        let mut m = Self::zeros(nrows, cols.len());
        for (j, c) in cols.iter().enumerate() {
            assert_eq!(c.len(), nrows, "column length");
            for (i, v) in c.iter().enumerate() {
                m[(i, j)] = v.clone();
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &[ExactScalar] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<ExactScalar> {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn to_rows(&self) -> Vec<Vec<ExactScalar>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn is_diagonal(&self) -> bool {
        (0..self.rows).all(|i| (0..self.cols).all(|j| i == j || self[(i, j)].is_zero()))
    }

    pub fn diagonal_entries(&self) -> Vec<ExactScalar> {
        (0..self.rows.min(self.cols)).map(|i| self[(i, i)].clone()).collect()
    }

    /// Nonzero entries as `(row, col, value)`.
    pub fn nonzeros(&self) -> Vec<(usize, usize, ExactScalar)> {
        let mut out = Vec::new();
        for i in 0..self.rows {
            for j in 0..self.cols {
                let v = &self[(i, j)];
                if !v.is_zero() {
                    out.push((i, j, v.clone()));
                }
            }
        }
        out
    }

    pub fn trace(&self) -> ExactScalar {
        self.diagonal_entries().into_iter().sum()
    }

    pub fn transpose(&self) -> RatMatrix {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)].clone();
            }
        }
        t
    }

    pub fn scale(&self, c: &ExactScalar) -> RatMatrix {
        RatMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|v| v * c).collect(),
        }
    }

    pub fn checked_add(&self, other: &RatMatrix) -> Result<RatMatrix, MathError> {
        self.same_shape(other)?;
        Ok(RatMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(a, b)| a + b).collect(),
        })
    }

    pub fn checked_sub(&self, other: &RatMatrix) -> Result<RatMatrix, MathError> {
        self.same_shape(other)?;
        Ok(RatMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(a, b)| a - b).collect(),
        })
    }

    fn same_shape(&self, other: &RatMatrix) -> Result<(), MathError> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(MathError::Dimension(format!(
                "{}x{} vs {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        Ok(())
    }

    pub fn checked_mul(&self, other: &RatMatrix) -> Result<RatMatrix, MathError> {
        if self.cols != other.rows {
            return Err(MathError::Dimension(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = &other[(k, j)];
                    if !b.is_zero() {
                        out[(i, j)] += a * b;
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn mul(&self, other: &RatMatrix) -> RatMatrix {
        self.checked_mul(other).expect("matrix dimension mismatch")
    }

    pub fn add(&self, other: &RatMatrix) -> RatMatrix {
        self.checked_add(other).expect("matrix dimension mismatch")
    }

    pub fn sub(&self, other: &RatMatrix) -> RatMatrix {
        self.checked_sub(other).expect("matrix dimension mismatch")
    }

    /// `[self, other] = self*other - other*self`
    pub fn commutator(&self, other: &RatMatrix) -> RatMatrix {
        self.mul(other).sub(&other.mul(self))
    }

    pub fn apply(&self, v: &[ExactScalar]) -> Vec<ExactScalar> {
        assert_eq!(v.len(), self.cols, "vector length");
        (0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(v)
                    .filter(|(a, b)| !a.is_zero() && !b.is_zero())
                    .map(|(a, b)| a * b)
                    .sum()
            })
            .collect()
    }

    /// `vᵀ · self · w`
    pub fn bilinear(&self, v: &[ExactScalar], w: &[ExactScalar]) -> ExactScalar {
        let mw = self.apply(w);
        v.iter().zip(&mw).map(|(a, b)| a * b).sum()
    }

    /// Kronecker product, with `self` indexing the outer blocks.
    pub fn kron(&self, other: &RatMatrix) -> RatMatrix {
        let mut out = Self::zeros(self.rows * other.rows, self.cols * other.cols);
        for (i, j, a) in self.nonzeros() {
            for (k, l, b) in other.nonzeros() {
                out[(i * other.rows + k, j * other.cols + l)] = &a * &b;
            }
        }
        out
    }

    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> RatMatrix {
        let mut out = Self::zeros(rows.len(), cols.len());
        for (a, &i) in rows.iter().enumerate() {
            for (b, &j) in cols.iter().enumerate() {
                out[(a, b)] = self[(i, j)].clone();
            }
        }
        out
    }

    pub fn determinant(&self) -> Result<ExactScalar, MathError> {
        if !self.is_square() {
            return Err(MathError::NonSquare {
                rows: self.rows,
                cols: self.cols,
            });
        }
        Ok(super::linalg::determinant(self))
    }

    /// Permanent by expansion along the first row; only meant for the
    /// small blocks that symmetric-power forms need.
    pub fn permanent(&self) -> Result<ExactScalar, MathError> {
        if !self.is_square() {
            return Err(MathError::NonSquare {
                rows: self.rows,
                cols: self.cols,
            });
        }
        fn perm(m: &RatMatrix, row: usize, used: &mut Vec<bool>) -> ExactScalar {
            if row == m.rows {
                return ExactScalar::one();
            }
            let mut total = ExactScalar::zero();
            for j in 0..m.cols {
                if used[j] || m[(row, j)].is_zero() {
                    continue;
                }
                used[j] = true;
                total += &m[(row, j)] * perm(m, row + 1, used);
                used[j] = false;
            }
            total
        }
        Ok(perm(self, 0, &mut vec![false; self.cols]))
    }

    pub fn inverse(&self) -> Result<RatMatrix, MathError> {
        if !self.is_square() {
            return Err(MathError::NonSquare {
                rows: self.rows,
                cols: self.cols,
            });
        }
        let n = self.rows;
        let mut aug = Self::zeros(n, 2 * n);
        for i in 0..n {
            for j in 0..n {
                aug[(i, j)] = self[(i, j)].clone();
            }
            aug[(i, n + i)] = ExactScalar::one();
        }
        let reduced = super::rref(&aug);
        if reduced.pivots.len() < n || reduced.pivots[n - 1] >= n {
            return Err(MathError::Singular);
        }
        let mut inv = Self::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                inv[(i, j)] = reduced.rows[i][n + j].clone();
            }
        }
        Ok(inv)
    }
}

impl std::ops::Index<(usize, usize)> for RatMatrix {
    type Output = ExactScalar;
    fn index(&self, (i, j): (usize, usize)) -> &ExactScalar {
        assert!(i < self.rows && j < self.cols, "index ({i},{j}) out of bounds");
        &self.data[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for RatMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut ExactScalar {
        assert!(i < self.rows && j < self.cols, "index ({i},{j}) out of bounds");
        &mut self.data[i * self.cols + j]
    }
}

impl fmt::Display for RatMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(ToString::to_string).collect();
            writeln!(f, "[{}]", row.join(", "))?;
        }
        Ok(())
    }
}

/// Dense matrix of polynomials sharing one variable count.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolyMatrix {
    rows: usize,
    cols: usize,
    nvars: usize,
    data: Vec<MultiPoly>,
}

impl PolyMatrix {
    pub fn zeros(rows: usize, cols: usize, nvars: usize) -> Self {
        PolyMatrix {
            rows,
            cols,
            nvars,
            data: vec![MultiPoly::zero(nvars); rows * cols],
        }
    }

    pub fn identity(n: usize, nvars: usize) -> Self {
        let mut m = Self::zeros(n, n, nvars);
        for i in 0..n {
            m[(i, i)] = MultiPoly::one(nvars);
        }
        m
    }

    pub fn from_constant(m: &RatMatrix, nvars: usize) -> Self {
        let mut out = Self::zeros(m.rows(), m.cols(), nvars);
        for (i, j, v) in m.nonzeros() {
            out[(i, j)] = MultiPoly::constant(nvars, v);
        }
        out
    }

    pub fn from_columns(nrows: usize, nvars: usize, cols: Vec<Vec<MultiPoly>>) -> Self {
        let mut m = Self::zeros(nrows, cols.len(), nvars);
        for (j, col) in cols.into_iter().enumerate() {
            assert_eq!(col.len(), nrows, "column length");
            for (i, p) in col.into_iter().enumerate() {
                assert_eq!(p.nvars(), nvars, "variable count");
                m[(i, j)] = p;
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn column(&self, j: usize) -> Vec<MultiPoly> {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(MultiPoly::is_zero)
    }

    pub fn max_degree(&self) -> Option<u32> {
        self.data.iter().filter_map(MultiPoly::total_degree).max()
    }

    pub fn transpose(&self) -> PolyMatrix {
        let mut t = Self::zeros(self.cols, self.rows, self.nvars);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)].clone();
            }
        }
        t
    }

    pub fn scale(&self, c: &ExactScalar) -> PolyMatrix {
        PolyMatrix {
            rows: self.rows,
            cols: self.cols,
            nvars: self.nvars,
            data: self.data.iter().map(|p| p.scale(c)).collect(),
        }
    }

    pub fn add(&self, other: &PolyMatrix) -> PolyMatrix {
        assert!(self.rows == other.rows && self.cols == other.cols, "shape mismatch");
        PolyMatrix {
            rows: self.rows,
            cols: self.cols,
            nvars: self.nvars,
            data: self.data.iter().zip(&other.data).map(|(a, b)| a + b).collect(),
        }
    }

    pub fn mul(&self, other: &PolyMatrix) -> Result<PolyMatrix, MathError> {
        self.mul_with(other, Execution::default())
    }

    /// Product with rows computed independently under `exec`.
    pub fn mul_with(&self, other: &PolyMatrix, exec: Execution) -> Result<PolyMatrix, MathError> {
        if self.cols != other.rows {
            return Err(MathError::Dimension(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        if self.nvars != other.nvars {
            return Err(MathError::VarCountMismatch {
                left: self.nvars,
                right: other.nvars,
            });
        }
        let rows = exec.map_range(self.rows, |i| {
            (0..other.cols)
                .map(|j| {
                    let mut acc = MultiPoly::zero(self.nvars);
                    for k in 0..self.cols {
                        let a = &self[(i, k)];
                        let b = &other[(k, j)];
                        if !a.is_zero() && !b.is_zero() {
                            acc = &acc + &(a * b);
                        }
                    }
                    acc
                })
                .collect::<Vec<_>>()
        });
        Ok(PolyMatrix {
            rows: self.rows,
            cols: other.cols,
            nvars: self.nvars,
            data: rows.into_iter().flatten().collect(),
        })
    }

    /// Exact `k`-th power; `k = 0` gives the identity.
    pub fn pow(&self, k: u32) -> Result<PolyMatrix, MathError> {
        self.pow_with(k, Execution::default())
    }

    pub fn pow_with(&self, k: u32, exec: Execution) -> Result<PolyMatrix, MathError> {
        if !(self.rows == self.cols) {
            return Err(MathError::NonSquare {
                rows: self.rows,
                cols: self.cols,
            });
        }
        let mut out = PolyMatrix::identity(self.rows, self.nvars);
        for _ in 0..k {
            out = out.mul_with(self, exec)?;
        }
        Ok(out)
    }

    pub fn eval(&self, point: &[ExactScalar]) -> Result<RatMatrix, MathError> {
        let mut out = RatMatrix::zeros(self.rows, self.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out[(i, j)] = self[(i, j)].eval(point)?;
            }
        }
        Ok(out)
    }

    /// `self · v` for a polynomial vector.
    pub fn apply(&self, v: &[MultiPoly]) -> Vec<MultiPoly> {
        assert_eq!(v.len(), self.cols, "vector length");
        (0..self.rows)
            .map(|i| {
                let mut acc = MultiPoly::zero(self.nvars);
                for (k, vk) in v.iter().enumerate() {
                    let a = &self[(i, k)];
                    if !a.is_zero() && !vk.is_zero() {
                        acc = &acc + &(a * vk);
                    }
                }
                acc
            })
            .collect()
    }
}

impl std::ops::Index<(usize, usize)> for PolyMatrix {
    type Output = MultiPoly;
    fn index(&self, (i, j): (usize, usize)) -> &MultiPoly {
        assert!(i < self.rows && j < self.cols, "index ({i},{j}) out of bounds");
        &self.data[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for PolyMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut MultiPoly {
        assert!(i < self.rows && j < self.cols, "index ({i},{j}) out of bounds");
        &mut self.data[i * self.cols + j]
    }
}
