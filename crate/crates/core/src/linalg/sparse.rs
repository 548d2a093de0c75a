//! Incremental sparse row reduction for large, very sparse linear systems
//! (constraint systems with hundreds to thousands of unknowns).

use std::collections::BTreeMap;

use super::matrix::Scalar;

/// A sparse row: column index → nonzero coefficient.
pub type SparseRow<T> = BTreeMap<usize, T>;

/// Echelon basis built one equation at a time.
///
/// Each stored row has a leading coefficient of one at its pivot column and
/// no entries in pivot columns that existed when it was inserted.
#[derive(Clone, Debug)]
pub struct SparseEchelon<T> {
    ncols: usize,
    pivots: BTreeMap<usize, SparseRow<T>>,
}

impl<T: Scalar> SparseEchelon<T> {
    pub fn new(ncols: usize) -> Self {
        SparseEchelon {
            ncols,
            pivots: BTreeMap::new(),
        }
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    pub fn nullity(&self) -> usize {
        self.ncols - self.rank()
    }

    pub fn pivot_columns(&self) -> impl Iterator<Item = usize> + '_ {
        self.pivots.keys().copied()
    }

    fn reduce(&self, mut row: SparseRow<T>) -> SparseRow<T> {
        loop {
            let hit = row
                .iter()
                .find(|(c, _)| self.pivots.contains_key(c))
                .map(|(&c, v)| (c, v.clone()));
            let Some((col, factor)) = hit else {
                return row;
            };
            for (&c, v) in &self.pivots[&col] {
                let delta = factor.clone() * v;
                let entry = row.remove(&c).unwrap_or_else(T::zero) - delta;
                if !entry.is_zero() {
                    row.insert(c, entry);
                }
            }
        }
    }

    /// Reduces `row` against the current basis; returns the remainder.
    pub fn remainder(&self, row: impl IntoIterator<Item = (usize, T)>) -> SparseRow<T> {
        self.reduce(collect_row(row))
    }

    /// Adds an equation. Returns `true` when it increased the rank.
    pub fn insert(&mut self, row: impl IntoIterator<Item = (usize, T)>) -> bool {
        let reduced = self.reduce(collect_row(row));
        let Some((&lead, lead_val)) = reduced.iter().next() else {
            return false;
        };
        debug_assert!(lead < self.ncols);
        let inv = T::one() / lead_val.clone();
        let normalized = reduced.into_iter().map(|(c, v)| (c, v * &inv)).collect();
        self.pivots.insert(lead, normalized);
        true
    }

    /// Pivot rows with every other pivot column eliminated (the sparse RREF).
    pub fn reduced_rows(&self) -> BTreeMap<usize, SparseRow<T>> {
        let mut done: BTreeMap<usize, SparseRow<T>> = BTreeMap::new();
        for (&col, row) in self.pivots.iter().rev() {
            let mut row = row.clone();
            let hits: Vec<(usize, T)> = row
                .iter()
                .filter(|(&c, _)| c != col && done.contains_key(&c))
                .map(|(&c, v)| (c, v.clone()))
                .collect();
            for (c, factor) in hits {
                for (&j, v) in &done[&c] {
                    let delta = factor.clone() * v;
                    let entry = row.remove(&j).unwrap_or_else(T::zero) - delta;
                    if !entry.is_zero() {
                        row.insert(j, entry);
                    }
                }
            }
            done.insert(col, row);
        }
        done
    }

    /// Dense basis of the solution space, one vector per free column.
    pub fn nullspace_basis(&self) -> Vec<Vec<T>> {
        let reduced = self.reduced_rows();
        (0..self.ncols)
            .filter(|c| !reduced.contains_key(c))
            .map(|free| {
                let mut v = vec![T::zero(); self.ncols];
                v[free] = T::one();
                for (&p, row) in &reduced {
                    if let Some(x) = row.get(&free) {
                        v[p] = -x.clone();
                    }
                }
                v
            })
            .collect()
    }
}

fn collect_row<T: Scalar>(row: impl IntoIterator<Item = (usize, T)>) -> SparseRow<T> {
    let mut out = SparseRow::new();
    for (c, v) in row {
        let entry = out.remove(&c).unwrap_or_else(T::zero) + v;
        if !entry.is_zero() {
            out.insert(c, entry);
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_rational::Ratio;

    type Q = Ratio<i64>;

    fn q(x: i64) -> Q {
        Q::from_integer(x)
    }

    #[test]
    fn rank_and_kernel_of_small_system() {
        // x0 + x1 = 0, x1 - x2 = 0, x0 + x2 = 0 (dependent third row)
        let mut e = SparseEchelon::new(3);
        assert!(e.insert([(0, q(1)), (1, q(1))]));
        assert!(e.insert([(1, q(1)), (2, q(-1))]));
        assert!(!e.insert([(0, q(1)), (2, q(1))]));
        assert_eq!(e.rank(), 2);
        let basis = e.nullspace_basis();
        assert_eq!(basis, vec![vec![q(-1), q(1), q(1)]]);
    }

    #[test]
    fn duplicate_columns_in_input_are_summed() {
        let mut e = SparseEchelon::new(2);
        assert!(!e.insert([(0, q(1)), (0, q(-1))]));
        assert_eq!(e.rank(), 0);
        assert!(e.remainder([(1, q(2))]).contains_key(&1));
    }
}
