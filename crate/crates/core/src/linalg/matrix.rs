use std::fmt;
use std::ops::{Index, IndexMut, Neg};

use num_traits::NumRef;

use crate::error::{Error, Result};

/// Exact field scalar.
///
/// Every algorithm in this module decides pivots with `is_zero`, so the
/// scalar must have exact equality. Rational types (`Ratio<BigInt>`,
/// `Ratio<i64>`) are the intended instances.
pub trait Scalar: NumRef + Neg<Output = Self> + Clone + fmt::Debug {}

impl<T> Scalar for T where T: NumRef + Neg<Output = T> + Clone + fmt::Debug {}

/// Dense row-major matrix. Vectors are columns; matrices act from the left.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Matrix<T> {
    rows: usize,
    cols: usize,
    data: Vec<T>,
}

impl<T: Scalar> Matrix<T> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![T::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = T::one();
        }
        m
    }

    pub fn scalar(n: usize, value: T) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = value.clone();
        }
        m
    }

    pub fn diagonal(entries: &[T]) -> Self {
        let mut m = Self::zeros(entries.len(), entries.len());
        for (i, v) in entries.iter().enumerate() {
            m[(i, i)] = v.clone();
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> T) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for r in 0..rows {
            for c in 0..cols {
                data.push(f(r, c));
            }
        }
        Matrix { rows, cols, data }
    }

    /// Builds a matrix from row vectors. All rows must have the same length.
    pub fn from_rows(rows: Vec<Vec<T>>) -> Result<Self> {
        let nrows = rows.len();
        let ncols = rows.first().map_or(0, Vec::len);
        let mut data = Vec::with_capacity(nrows * ncols);
        for (i, row) in rows.into_iter().enumerate() {
            if row.len() != ncols {
                return Err(Error::DimensionMismatch {
                    op: "from_rows",
                    left: (i, row.len()),
                    right: (0, ncols),
                });
            }
            data.extend(row);
        }
        Ok(Matrix {
            rows: nrows,
            cols: ncols,
            data,
        })
    }

    /// Builds a matrix whose columns are the given vectors.
    pub fn from_columns(dim: usize, columns: &[Vec<T>]) -> Result<Self> {
        if let Some(bad) = columns.iter().find(|c| c.len() != dim) {
            return Err(Error::DimensionMismatch {
                op: "from_columns",
                left: (bad.len(), 1),
                right: (dim, 1),
            });
        }
        Ok(Self::from_fn(dim, columns.len(), |r, c| columns[c][r].clone()))
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn dims(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn row(&self, r: usize) -> &[T] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn column(&self, c: usize) -> Vec<T> {
        (0..self.rows).map(|r| self[(r, c)].clone()).collect()
    }

    pub fn to_rows(&self) -> Vec<Vec<T>> {
        (0..self.rows).map(|r| self.row(r).to_vec()).collect()
    }

    pub fn entries(&self) -> &[T] {
        &self.data
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(T::is_zero)
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |r, c| self[(c, r)].clone())
    }

    /// Exact product `self · other`.
    pub fn mat_mul(&self, other: &Self) -> Result<Self> {
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch {
                op: "mat_mul",
                left: self.dims(),
                right: other.dims(),
            });
        }
        let mut out = Self::zeros(self.rows, other.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(r, k)];
                if a.is_zero() {
                    continue;
                }
                for c in 0..other.cols {
                    let b = &other[(k, c)];
                    if !b.is_zero() {
                        let prod = a.clone() * b;
                        let slot = &mut out.data[r * other.cols + c];
                        *slot = std::mem::replace(slot, T::zero()) + prod;
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, v: &[T]) -> Result<Vec<T>> {
        if v.len() != self.cols {
            return Err(Error::DimensionMismatch {
                op: "mul_vec",
                left: self.dims(),
                right: (v.len(), 1),
            });
        }
        let mut out = vec![T::zero(); self.rows];
        for (c, x) in v.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (r, slot) in out.iter_mut().enumerate() {
                let a = &self[(r, c)];
                if !a.is_zero() {
                    *slot = std::mem::replace(slot, T::zero()) + a.clone() * x;
                }
            }
        }
        Ok(out)
    }

    fn zip_with(&self, other: &Self, op: &'static str, f: impl Fn(T, &T) -> T) -> Result<Self> {
        if self.dims() != other.dims() {
            return Err(Error::DimensionMismatch {
                op,
                left: self.dims(),
                right: other.dims(),
            });
        }
        Ok(Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(a, b)| f(a.clone(), b))
                .collect(),
        })
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.zip_with(other, "add", |a, b| a + b)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.zip_with(other, "sub", |a, b| a - b)
    }

    pub fn scale(&self, s: &T) -> Self {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|a| a.clone() * s).collect(),
        }
    }

    pub fn neg(&self) -> Self {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|a| -a.clone()).collect(),
        }
    }

    /// `b·a − a·b`: the order matching `ρ_[x,y] = ρ_y ρ_x − ρ_x ρ_y`
    /// when called with `(ρ_x, ρ_y)`.
    pub fn commutator(a: &Self, b: &Self) -> Result<Self> {
        if !a.is_square() || a.dims() != b.dims() {
            return Err(Error::DimensionMismatch {
                op: "commutator",
                left: a.dims(),
                right: b.dims(),
            });
        }
        b.mat_mul(a)?.sub(&a.mat_mul(b)?)
    }

    /// Kronecker product: entry `((p,i),(q,j))` is `self[p][q] · other[i][j]`.
    pub fn kron(&self, other: &Self) -> Self {
        let (r2, c2) = other.dims();
        Self::from_fn(self.rows * r2, self.cols * c2, |r, c| {
            self[(r / r2, c / c2)].clone() * &other[(r % r2, c % c2)]
        })
    }

    pub fn block_diag(blocks: &[Self]) -> Self {
        let rows = blocks.iter().map(|b| b.rows).sum();
        let cols = blocks.iter().map(|b| b.cols).sum();
        let mut out = Self::zeros(rows, cols);
        let (mut r0, mut c0) = (0, 0);
        for b in blocks {
            for r in 0..b.rows {
                for c in 0..b.cols {
                    out[(r0 + r, c0 + c)] = b[(r, c)].clone();
                }
            }
            r0 += b.rows;
            c0 += b.cols;
        }
        out
    }

    /// Stacks matrices with equal column counts on top of each other.
    pub fn vstack(parts: &[Self]) -> Result<Self> {
        let cols = parts.first().map_or(0, |m| m.cols);
        if let Some(bad) = parts.iter().find(|m| m.cols != cols) {
            return Err(Error::DimensionMismatch {
                op: "vstack",
                left: bad.dims(),
                right: (0, cols),
            });
        }
        Ok(Matrix {
            rows: parts.iter().map(|m| m.rows).sum(),
            cols,
            data: parts.iter().flat_map(|m| m.data.iter().cloned()).collect(),
        })
    }

    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> Self {
        Self::from_fn(rows.len(), cols.len(), |r, c| self[(rows[r], cols[c])].clone())
    }

    /// Reduced row echelon form and the (strictly increasing) pivot columns.
    pub fn rref(&self) -> (Self, Vec<usize>) {
        let mut m = self.clone();
        let pivots = m.rref_in_place();
        (m, pivots)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a != b {
            for c in 0..self.cols {
                self.data.swap(a * self.cols + c, b * self.cols + c);
            }
        }
    }

    fn rref_in_place(&mut self) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut prow = 0;
        for col in 0..self.cols {
            if prow == self.rows {
                break;
            }
            let Some(found) = (prow..self.rows).find(|&r| !self[(r, col)].is_zero()) else {
                continue;
            };
            self.swap_rows(found, prow);
            let inv = T::one() / self[(prow, col)].clone();
            for c in col..self.cols {
                let v = std::mem::replace(&mut self[(prow, c)], T::zero());
                self[(prow, c)] = v * &inv;
            }
            for r in 0..self.rows {
                if r == prow || self[(r, col)].is_zero() {
                    continue;
                }
                let factor = self[(r, col)].clone();
                for c in col..self.cols {
                    let p = &self.data[prow * self.cols + c];
                    if p.is_zero() {
                        continue;
                    }
                    let delta = factor.clone() * p;
                    let slot = &mut self.data[r * self.cols + c];
                    *slot = std::mem::replace(slot, T::zero()) - delta;
                }
            }
            pivots.push(col);
            prow += 1;
        }
        pivots
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    pub fn inverse(&self) -> Result<Self> {
        if !self.is_square() {
            return Err(Error::DimensionMismatch {
                op: "inverse",
                left: self.dims(),
                right: self.dims(),
            });
        }
        let n = self.rows;
        let mut aug = Self::from_fn(n, 2 * n, |r, c| {
            if c < n {
                self[(r, c)].clone()
            } else if c - n == r {
                T::one()
            } else {
                T::zero()
            }
        });
        let pivots = aug.rref_in_place();
        if pivots.len() < n || (n > 0 && pivots[n - 1] >= n) {
            return Err(Error::Singular);
        }
        let cols: Vec<usize> = (n..2 * n).collect();
        let rows: Vec<usize> = (0..n).collect();
        Ok(aug.submatrix(&rows, &cols))
    }

    /// `P⁻¹ · self · P`.
    pub fn conjugate(&self, p: &Self, p_inv: &Self) -> Result<Self> {
        p_inv.mat_mul(&self.mat_mul(p)?)
    }
}

impl<T> Index<(usize, usize)> for Matrix<T> {
    type Output = T;

    fn index(&self, (r, c): (usize, usize)) -> &T {
        assert!(r < self.rows && c < self.cols, "index ({r},{c}) out of bounds");
        &self.data[r * self.cols + c]
    }
}

impl<T> IndexMut<(usize, usize)> for Matrix<T> {
    fn index_mut(&mut self, (r, c): (usize, usize)) -> &mut T {
        assert!(r < self.rows && c < self.cols, "index ({r},{c}) out of bounds");
        &mut self.data[r * self.cols + c]
    }
}

impl<T: fmt::Display> fmt::Display for Matrix<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for r in 0..self.rows {
            write!(f, "[")?;
            for c in 0..self.cols {
                if c > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{}", self.data[r * self.cols + c])?;
            }
            writeln!(f, "]")?;
        }
        Ok(())
    }
}

impl<T: fmt::Debug> fmt::Debug for Matrix<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<&[T]> = self.data.chunks(self.cols.max(1)).take(self.rows).collect();
        f.debug_struct("Matrix")
            .field("rows", &self.rows)
            .field("cols", &self.cols)
            .field("data", &rows)
            .finish()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_rational::Ratio;

    type Q = Ratio<i64>;

    fn m(rows: &[&[i64]]) -> Matrix<Q> {
        Matrix::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&x| Q::from_integer(x)).collect())
                .collect(),
        )
        .unwrap()
    }

    #[test]
    fn identity_times_x() {
        let x = m(&[&[1, 2], &[3, 4]]);
        assert_eq!(Matrix::identity(2).mat_mul(&x).unwrap(), x);
    }

    #[test]
    fn rank_one_product() {
        let a = m(&[&[0, 1], &[0, 0]]);
        let b = m(&[&[0, 0], &[1, 0]]);
        assert_eq!(a.mat_mul(&b).unwrap(), m(&[&[1, 0], &[0, 0]]));
    }

    #[test]
    fn mat_mul_dimension_mismatch() {
        let a = m(&[&[1, 2, 3]]);
        assert!(matches!(
            a.mat_mul(&a),
            Err(Error::DimensionMismatch { op: "mat_mul", .. })
        ));
    }

    #[test]
    fn commutator_edge_cases() {
        let x = m(&[&[1, 2], &[3, 4]]);
        assert!(Matrix::commutator(&x, &x).unwrap().is_zero());
        assert!(Matrix::commutator(&Matrix::identity(2), &x).unwrap().is_zero());
        assert!(Matrix::commutator(&x, &m(&[&[1]])).is_err());
    }

    #[test]
    fn rref_examples() {
        let (r, p) = Matrix::<Q>::zeros(2, 3).rref();
        assert!(r.is_zero());
        assert!(p.is_empty());
        let (r, p) = m(&[&[2, 4], &[1, 2]]).rref();
        assert_eq!(r, m(&[&[1, 2], &[0, 0]]));
        assert_eq!(p, vec![0]);
    }

    #[test]
    fn inverse_roundtrip_and_singular() {
        let a = m(&[&[2, 1], &[1, 1]]);
        let inv = a.inverse().unwrap();
        assert_eq!(a.mat_mul(&inv).unwrap(), Matrix::identity(2));
        assert_eq!(m(&[&[1, 2], &[2, 4]]).inverse(), Err(Error::Singular));
        assert_eq!(Matrix::<Q>::zeros(0, 0).inverse(), Ok(Matrix::zeros(0, 0)));
    }

    #[test]
    fn kron_indexing() {
        let a = m(&[&[0, 1], &[2, 0]]);
        let b = m(&[&[1, 2], &[3, 4]]);
        let k = a.kron(&b);
        assert_eq!(k[(0, 2)], Q::from_integer(1));
        assert_eq!(k[(3, 1)], Q::from_integer(8));
        assert_eq!(k[(0, 0)], Q::from_integer(0));
    }
}
