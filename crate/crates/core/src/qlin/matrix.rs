use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Signed, Zero};

use super::rational::{format_rational, rat, Rational};
use super::subspace::Subspace;

/// Dense matrix over the rationals, row-major.
///
/// Matrices act on column vectors: a map `Q^n -> Q^m` is an `m x n` matrix.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RatMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Rational>,
}

/// Result of Gauss-Jordan elimination.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Rref {
    pub matrix: RatMatrix,
    pub pivots: Vec<usize>,
    pub rank: usize,
}

impl RatMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        RatMatrix {
            rows,
            cols,
            data: vec![Rational::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = RatMatrix::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = Rational::one();
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Rational) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for r in 0..rows {
            for c in 0..cols {
                data.push(f(r, c));
            }
        }
        RatMatrix { rows, cols, data }
    }

    /// Builds a matrix from row vectors; `None` if the rows are ragged.
    ///
    /// With no rows the column count is `cols_if_empty`.
    pub fn from_rows(rows: Vec<Vec<Rational>>, cols_if_empty: usize) -> Option<Self> {
        let cols = rows.first().map_or(cols_if_empty, Vec::len);
        if rows.iter().any(|r| r.len() != cols) {
            return None;
        }
        let n = rows.len();
        Some(RatMatrix {
            rows: n,
            cols,
            data: rows.into_iter().flatten().collect(),
        })
    }

    /// Integer entries, row-major. Panics if `entries.len() != rows * cols`.
    pub fn from_i64(rows: usize, cols: usize, entries: &[i64]) -> Self {
        assert_eq!(entries.len(), rows * cols, "entry count does not match shape");
        RatMatrix {
            rows,
            cols,
            data: entries.iter().map(|&e| rat(e, 1)).collect(),
        }
    }

    pub fn column_vector(v: &[Rational]) -> Self {
        RatMatrix {
            rows: v.len(),
            cols: 1,
            data: v.to_vec(),
        }
    }

    pub fn diagonal(entries: &[Rational]) -> Self {
        let n = entries.len();
        let mut m = RatMatrix::zeros(n, n);
        for (i, e) in entries.iter().enumerate() {
            m.data[i * n + i] = e.clone();
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    pub fn get(&self, r: usize, c: usize) -> &Rational {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, value: Rational) {
        self.data[r * self.cols + c] = value;
    }

    pub fn row(&self, r: usize) -> &[Rational] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn column(&self, c: usize) -> Vec<Rational> {
        (0..self.rows).map(|r| self.get(r, c).clone()).collect()
    }

    pub fn row_vectors(&self) -> Vec<Vec<Rational>> {
        (0..self.rows).map(|r| self.row(r).to_vec()).collect()
    }

    pub fn transpose(&self) -> Self {
        RatMatrix::from_fn(self.cols, self.rows, |r, c| self.get(c, r).clone())
    }

    pub fn scale(&self, factor: &Rational) -> Self {
        RatMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|e| e * factor).collect(),
        }
    }

    pub fn mul_vec(&self, v: &[Rational]) -> Vec<Rational> {
        assert_eq!(v.len(), self.cols, "vector length does not match column count");
        (0..self.rows)
            .map(|r| {
                self.row(r)
                    .iter()
                    .zip(v)
                    .filter(|(a, b)| !a.is_zero() && !b.is_zero())
                    .fold(Rational::zero(), |acc, (a, b)| acc + a * b)
            })
            .collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn is_identity(&self) -> bool {
        self.is_square() && *self == RatMatrix::identity(self.rows)
    }

    pub fn is_symmetric(&self) -> bool {
        self.is_square()
            && (0..self.rows).all(|r| (r + 1..self.cols).all(|c| self.get(r, c) == self.get(c, r)))
    }

    pub fn trace(&self) -> Rational {
        assert!(self.is_square(), "trace of a non-square matrix");
        (0..self.rows).fold(Rational::zero(), |acc, i| acc + self.get(i, i))
    }

    /// Horizontal concatenation. All blocks must share a row count; `rows`
    /// fixes it when `blocks` is empty.
    pub fn hstack(rows: usize, blocks: &[&RatMatrix]) -> Self {
        let cols = blocks.iter().map(|b| b.cols).sum();
        let mut out = RatMatrix::zeros(rows, cols);
        let mut offset = 0;
        for b in blocks {
            assert_eq!(b.rows, rows, "hstack row mismatch");
            out.set_block(0, offset, b);
            offset += b.cols;
        }
        out
    }

    /// Vertical concatenation. `cols` fixes the width when `blocks` is empty.
    pub fn vstack(cols: usize, blocks: &[&RatMatrix]) -> Self {
        let mut data = Vec::new();
        let mut rows = 0;
        for b in blocks {
            assert_eq!(b.cols, cols, "vstack column mismatch");
            data.extend_from_slice(&b.data);
            rows += b.rows;
        }
        RatMatrix { rows, cols, data }
    }

    pub fn set_block(&mut self, row: usize, col: usize, block: &RatMatrix) {
        assert!(row + block.rows <= self.rows && col + block.cols <= self.cols);
        for r in 0..block.rows {
            for c in 0..block.cols {
                self.set(row + r, col + c, block.get(r, c).clone());
            }
        }
    }

    pub fn block(&self, row: usize, col: usize, rows: usize, cols: usize) -> Self {
        RatMatrix::from_fn(rows, cols, |r, c| self.get(row + r, col + c).clone())
    }

    pub fn select_columns(&self, cols: &[usize]) -> Self {
        RatMatrix::from_fn(self.rows, cols.len(), |r, c| self.get(r, cols[c]).clone())
    }

    pub fn select_rows(&self, rows: &[usize]) -> Self {
        RatMatrix::from_fn(rows.len(), self.cols, |r, c| self.get(rows[r], c).clone())
    }

    /// Kronecker product `self (x) other`.
    pub fn kron(&self, other: &RatMatrix) -> Self {
        RatMatrix::from_fn(self.rows * other.rows, self.cols * other.cols, |r, c| {
            self.get(r / other.rows, c / other.cols) * other.get(r % other.rows, c % other.cols)
        })
    }

    pub fn max_abs_entry(&self) -> Rational {
        self.data.iter().map(|e| e.abs()).max().unwrap_or_else(Rational::zero)
    }

    /// Sum of squared entries.
    pub fn frobenius_norm_sq(&self) -> Rational {
        self.data.iter().fold(Rational::zero(), |acc, e| acc + e * e)
    }

    /// Exact reduced row-echelon form.
    pub fn rref(&self) -> Rref {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut lead_row = 0;
        for col in 0..m.cols {
            if lead_row == m.rows {
                break;
            }
            let Some(p) = (lead_row..m.rows).find(|&r| !m.get(r, col).is_zero()) else {
                continue;
            };
            m.swap_rows(lead_row, p);
            let inv = m.get(lead_row, col).recip();
            for c in col..m.cols {
                let v = m.get(lead_row, c) * &inv;
                m.set(lead_row, c, v);
            }
            for r in 0..m.rows {
                if r == lead_row || m.get(r, col).is_zero() {
                    continue;
                }
                let factor = m.get(r, col).clone();
                for c in col..m.cols {
                    if m.get(lead_row, c).is_zero() {
                        continue;
                    }
                    let v = m.get(r, c) - &factor * m.get(lead_row, c);
                    m.set(r, c, v);
                }
            }
            pivots.push(col);
            lead_row += 1;
        }
        let rank = pivots.len();
        Rref {
            matrix: m,
            pivots,
            rank,
        }
    }

    pub fn rank(&self) -> usize {
        self.rref().rank
    }

    /// Null space `{ v : self * v = 0 }`.
    pub fn kernel(&self) -> Subspace {
        let Rref { matrix, pivots, .. } = self.rref();
        let mut is_pivot = vec![false; self.cols];
        for &p in &pivots {
            is_pivot[p] = true;
        }
        let vectors = (0..self.cols)
            .filter(|&c| !is_pivot[c])
            .map(|free| {
                let mut v = vec![Rational::zero(); self.cols];
                v[free] = Rational::one();
                for (i, &p) in pivots.iter().enumerate() {
                    v[p] = -matrix.get(i, free).clone();
                }
                v
            })
            .collect();
        Subspace::span(self.cols, vectors)
    }

    /// Column space.
    pub fn image(&self) -> Subspace {
        Subspace::span(self.rows, self.transpose().row_vectors())
    }

    pub fn row_space(&self) -> Subspace {
        Subspace::span(self.cols, self.row_vectors())
    }

    pub fn inverse(&self) -> Option<RatMatrix> {
        if !self.is_square() {
            return None;
        }
        let n = self.rows;
        if n == 0 {
            return Some(RatMatrix::zeros(0, 0));
        }
        let aug = RatMatrix::hstack(n, &[self, &RatMatrix::identity(n)]);
        let Rref { matrix, pivots, .. } = aug.rref();
        if pivots.get(n - 1) != Some(&(n - 1)) {
            return None;
        }
        Some(matrix.block(0, n, n, n))
    }

    pub fn is_invertible(&self) -> bool {
        self.is_square() && self.rank() == self.rows
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for c in 0..self.cols {
            self.data.swap(a * self.cols + c, b * self.cols + c);
        }
    }
}

impl Mul for &RatMatrix {
    type Output = RatMatrix;

    fn mul(self, rhs: &RatMatrix) -> RatMatrix {
        assert_eq!(
            self.cols, rhs.rows,
            "cannot multiply {}x{} by {}x{}",
            self.rows, self.cols, rhs.rows, rhs.cols
        );
        let mut out = RatMatrix::zeros(self.rows, rhs.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(r, k);
                if a.is_zero() {
                    continue;
                }
                for c in 0..rhs.cols {
                    let b = rhs.get(k, c);
                    if b.is_zero() {
                        continue;
                    }
                    let idx = r * out.cols + c;
                    out.data[idx] = &out.data[idx] + a * b;
                }
            }
        }
        out
    }
}

impl Add for &RatMatrix {
    type Output = RatMatrix;

    fn add(self, rhs: &RatMatrix) -> RatMatrix {
        assert_eq!(self.shape(), rhs.shape(), "shape mismatch in addition");
        RatMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a + b).collect(),
        }
    }
}

impl Sub for &RatMatrix {
    type Output = RatMatrix;

    fn sub(self, rhs: &RatMatrix) -> RatMatrix {
        assert_eq!(self.shape(), rhs.shape(), "shape mismatch in subtraction");
        RatMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a - b).collect(),
        }
    }
}

impl Neg for &RatMatrix {
    type Output = RatMatrix;

    fn neg(self) -> RatMatrix {
        RatMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|a| -a).collect(),
        }
    }
}

impl fmt::Debug for RatMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RatMatrix {}x{} ", self.rows, self.cols)?;
        f.debug_list()
            .entries((0..self.rows).map(|r| {
                self.row(r).iter().map(format_rational).collect::<Vec<_>>().join(" ")
            }))
            .finish()
    }
}

impl fmt::Display for RatMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for r in 0..self.rows {
            let row: Vec<_> = self.row(r).iter().map(format_rational).collect();
            writeln!(f, "[{}]", row.join(" "))?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(rows: usize, cols: usize, e: &[i64]) -> RatMatrix {
        RatMatrix::from_i64(rows, cols, e)
    }

    #[test]
    fn rref_examples() {
        let id = RatMatrix::identity(3);
        let r = id.rref();
        assert_eq!(r.matrix, id);
        assert_eq!(r.rank, 3);

        let r = m(2, 2, &[1, 1, 1, 1]).rref();
        assert_eq!(r.matrix, m(2, 2, &[1, 1, 0, 0]));
        assert_eq!(r.rank, 1);
        assert_eq!(r.pivots, vec![0]);

        let r = m(2, 2, &[1, 2, 3, 4]).rref();
        assert_eq!(r.matrix, RatMatrix::identity(2));
        assert_eq!(r.rank, 2);
    }

    #[test]
    fn kernel_and_image_examples() {
        assert_eq!(RatMatrix::identity(3).kernel().dim(), 0);

        let k = m(1, 2, &[1, 1]).kernel();
        assert_eq!(k, Subspace::span(2, vec![vec![rat(1, 1), rat(-1, 1)]]));

        let im = m(2, 1, &[1, 2]).image();
        assert_eq!(im, Subspace::span(2, vec![vec![rat(1, 1), rat(2, 1)]]));
    }

    #[test]
    fn rank_nullity() {
        let a = m(3, 4, &[1, 2, 3, 4, 2, 4, 6, 8, 0, 1, 0, 1]);
        assert_eq!(a.rank() + a.kernel().dim(), 4);
    }

    #[test]
    fn inverse_round_trip() {
        let a = m(2, 2, &[2, 1, 1, 1]);
        let inv = a.inverse().unwrap();
        assert!((&a * &inv).is_identity());
        assert!(m(2, 2, &[1, 2, 2, 4]).inverse().is_none());
        assert_eq!(RatMatrix::zeros(0, 0).inverse(), Some(RatMatrix::zeros(0, 0)));
    }

    #[test]
    fn kron_shape_and_entries() {
        let a = m(1, 2, &[1, 2]);
        let b = m(2, 1, &[3, 4]);
        assert_eq!(a.kron(&b), m(2, 2, &[3, 6, 4, 8]));
    }
}
