use crate::error::{Error, Result};

use super::matrix::{Matrix, Scalar};

/// A linear subspace of `T^n`, stored by its reduced row echelon basis.
///
/// The echelon form is unique, so two subspaces are equal exactly when
/// their stored bases are equal.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Subspace<T> {
    ambient: usize,
    basis: Matrix<T>,
}

impl<T: Scalar> Subspace<T> {
    pub fn zero(ambient: usize) -> Self {
        Subspace {
            ambient,
            basis: Matrix::zeros(0, ambient),
        }
    }

    pub fn full(ambient: usize) -> Self {
        Subspace {
            ambient,
            basis: Matrix::identity(ambient),
        }
    }

    /// Span of the rows of `m`.
    pub fn row_space(m: &Matrix<T>) -> Self {
        let (r, pivots) = m.rref();
        let keep: Vec<usize> = (0..pivots.len()).collect();
        let cols: Vec<usize> = (0..m.cols()).collect();
        Subspace {
            ambient: m.cols(),
            basis: r.submatrix(&keep, &cols),
        }
    }

    pub fn span(ambient: usize, vectors: &[Vec<T>]) -> Result<Self> {
        if vectors.is_empty() {
            return Ok(Self::zero(ambient));
        }
        let m = Matrix::from_rows(vectors.to_vec())?;
        if m.cols() != ambient {
            return Err(Error::AmbientMismatch(m.cols(), ambient));
        }
        Ok(Self::row_space(&m))
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.basis.rows()
    }

    pub fn is_zero(&self) -> bool {
        self.dim() == 0
    }

    pub fn is_full(&self) -> bool {
        self.dim() == self.ambient
    }

    /// Canonical basis as a matrix whose rows are the basis vectors.
    pub fn basis_matrix(&self) -> &Matrix<T> {
        &self.basis
    }

    pub fn basis(&self) -> Vec<Vec<T>> {
        self.basis.to_rows()
    }

    pub fn contains(&self, v: &[T]) -> bool {
        if v.len() != self.ambient {
            return false;
        }
        let mut rows = self.basis.to_rows();
        rows.push(v.to_vec());
        Matrix::from_rows(rows).is_ok_and(|m| m.rank() == self.dim())
    }

    pub fn contains_subspace(&self, other: &Self) -> bool {
        self.ambient == other.ambient && self.sum(other).is_ok_and(|s| s.dim() == self.dim())
    }

    pub fn sum(&self, other: &Self) -> Result<Self> {
        if self.ambient != other.ambient {
            return Err(Error::AmbientMismatch(self.ambient, other.ambient));
        }
        let stacked = Matrix::vstack(&[self.basis.clone(), other.basis.clone()])?;
        Ok(Self::row_space(&stacked))
    }

    /// Intersection, computed from the kernel of `[Aᵀ | −Bᵀ]`.
    pub fn intersect(&self, other: &Self) -> Result<Self> {
        if self.ambient != other.ambient {
            return Err(Error::AmbientMismatch(self.ambient, other.ambient));
        }
        if self.is_zero() || other.is_zero() {
            return Ok(Self::zero(self.ambient));
        }
        let (d1, d2) = (self.dim(), other.dim());
        let joint = Matrix::from_fn(self.ambient, d1 + d2, |r, c| {
            if c < d1 {
                self.basis[(c, r)].clone()
            } else {
                -other.basis[(c - d1, r)].clone()
            }
        });
        let kernel = nullspace(&joint);
        let vectors: Vec<Vec<T>> = kernel
            .basis()
            .into_iter()
            .map(|coeffs| {
                (0..self.ambient)
                    .map(|j| {
                        coeffs[..d1]
                            .iter()
                            .enumerate()
                            .filter(|(_, a)| !a.is_zero())
                            .fold(T::zero(), |acc, (i, a)| acc + a.clone() * &self.basis[(i, j)])
                    })
                    .collect()
            })
            .collect();
        Self::span(self.ambient, &vectors)
    }

    /// `true` when `m · S ⊆ S`.
    pub fn is_invariant_under(&self, m: &Matrix<T>) -> bool {
        if m.dims() != (self.ambient, self.ambient) {
            return false;
        }
        self.basis
            .to_rows()
            .iter()
            .all(|v| m.mul_vec(v).is_ok_and(|w| self.contains(&w)))
    }
}

/// Basis of `{v : A v = 0}`.
pub fn nullspace<T: Scalar>(a: &Matrix<T>) -> Subspace<T> {
    let (r, pivots) = a.rref();
    let n = a.cols();
    let mut is_pivot = vec![false; n];
    for &p in &pivots {
        is_pivot[p] = true;
    }
    let vectors: Vec<Vec<T>> = (0..n)
        .filter(|&f| !is_pivot[f])
        .map(|f| {
            let mut v = vec![T::zero(); n];
            v[f] = T::one();
            for (row, &p) in pivots.iter().enumerate() {
                v[p] = -r[(row, f)].clone();
            }
            v
        })
        .collect();
    Subspace::span(n, &vectors).expect("nullspace vectors have the ambient length")
}

/// `nullspace(A − λI)`.
pub fn eigenspace<T: Scalar>(a: &Matrix<T>, lambda: &T) -> Result<Subspace<T>> {
    if !a.is_square() {
        return Err(Error::DimensionMismatch {
            op: "eigenspace",
            left: a.dims(),
            right: a.dims(),
        });
    }
    let shifted = a.sub(&Matrix::scalar(a.rows(), lambda.clone()))?;
    Ok(nullspace(&shifted))
}

/// Affine solution set of `A x = b`: a particular solution (or `None` when
/// the system is inconsistent) together with the kernel of `A`.
pub fn solve_linear<T: Scalar>(a: &Matrix<T>, b: &[T]) -> Result<(Option<Vec<T>>, Subspace<T>)> {
    if a.rows() != b.len() {
        return Err(Error::DimensionMismatch {
            op: "solve_linear",
            left: a.dims(),
            right: (b.len(), 1),
        });
    }
    let n = a.cols();
    let aug = Matrix::from_fn(a.rows(), n + 1, |r, c| {
        if c < n {
            a[(r, c)].clone()
        } else {
            b[r].clone()
        }
    });
    let (r, pivots) = aug.rref();
    let kernel = nullspace(a);
    if pivots.last() == Some(&n) {
        return Ok((None, kernel));
    }
    let mut x = vec![T::zero(); n];
    for (row, &p) in pivots.iter().enumerate() {
        x[p] = r[(row, n)].clone();
    }
    Ok((Some(x), kernel))
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_rational::Ratio;

    type Q = Ratio<i64>;

    fn q(x: i64) -> Q {
        Q::from_integer(x)
    }

    fn m(rows: &[&[i64]]) -> Matrix<Q> {
        Matrix::from_rows(rows.iter().map(|r| r.iter().map(|&x| q(x)).collect()).collect()).unwrap()
    }

    #[test]
    fn nullspace_examples() {
        assert!(nullspace(&Matrix::<Q>::identity(3)).is_zero());
        let k = nullspace(&m(&[&[1, -1]]));
        assert_eq!(k, Subspace::span(2, &[vec![q(1), q(1)]]).unwrap());
    }

    #[test]
    fn eigenspace_of_diagonal() {
        let a = Matrix::diagonal(&[q(2), q(0), q(-2)]);
        let e = eigenspace(&a, &q(2)).unwrap();
        assert_eq!(e, Subspace::span(3, &[vec![q(1), q(0), q(0)]]).unwrap());
    }

    #[test]
    fn intersect_examples() {
        let s = Subspace::span(3, &[vec![q(1), q(2), q(0)]]).unwrap();
        assert_eq!(s.intersect(&Subspace::full(3)).unwrap(), s);
        let e0 = Subspace::span(2, &[vec![q(1), q(0)]]).unwrap();
        let e1 = Subspace::span(2, &[vec![q(0), q(1)]]).unwrap();
        assert!(e0.intersect(&e1).unwrap().is_zero());
        assert_eq!(e0.intersect(&Subspace::full(3)), Err(Error::AmbientMismatch(2, 3)));
    }

    #[test]
    fn intersect_of_planes_is_a_line() {
        let p1 = Subspace::span(3, &[vec![q(1), q(0), q(0)], vec![q(0), q(1), q(0)]]).unwrap();
        let p2 = Subspace::span(3, &[vec![q(0), q(1), q(0)], vec![q(0), q(0), q(1)]]).unwrap();
        let line = p1.intersect(&p2).unwrap();
        assert_eq!(line, Subspace::span(3, &[vec![q(0), q(5), q(0)]]).unwrap());
    }

    #[test]
    fn solve_linear_examples() {
        let b = vec![q(3), q(-1)];
        let (x, k) = solve_linear(&Matrix::identity(2), &b).unwrap();
        assert_eq!(x, Some(b));
        assert!(k.is_zero());

        let (x, k) = solve_linear(&m(&[&[1, 1]]), &[q(0)]).unwrap();
        assert!(x.is_some());
        assert_eq!(k.dim(), 1);

        let (x, _) = solve_linear(&m(&[&[1], &[1]]), &[q(0), q(1)]).unwrap();
        assert_eq!(x, None);
    }

    #[test]
    fn invariance_check() {
        let a = m(&[&[0, 1], &[0, 0]]);
        let e0 = Subspace::span(2, &[vec![q(1), q(0)]]).unwrap();
        let e1 = Subspace::span(2, &[vec![q(0), q(1)]]).unwrap();
        assert!(e0.is_invariant_under(&a));
        assert!(!e1.is_invariant_under(&a));
    }
}
