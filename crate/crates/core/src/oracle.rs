//! Brute-force count of left actions satisfying relation (6) for a fixed
//! right module.
//!
//! Every entry of `λ_e, λ_f, λ_h` is an unknown (no weight restriction), the
//! residual of each unit vector is written out entry by entry, and the rank is
//! found with fraction-free integer elimination. None of the solver's sparse
//! echelon or ansatz code is used, so agreement between the two is a real
//! cross-check.

use std::collections::{BTreeMap, HashMap};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::bimodule::{shape_rho, RightModuleShape};
use crate::classify::solve_left_linear;
use crate::error::Result;
use crate::rational::Rational;
use crate::sl2::{bracket_basis, Generator};

/// Nullity of relation (6) per ordered pair of components `(source, target)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct OracleCount {
    pub shape: RightModuleShape,
    pub unknowns: usize,
    pub total: usize,
    pub by_block: BTreeMap<String, usize>,
}

impl OracleCount {
    pub fn cross_block(&self) -> usize {
        self.by_block
            .iter()
            .filter(|(k, _)| {
                let (p, q) = k.split_once("->").expect("block key");
                p != q
            })
            .map(|(_, v)| v)
            .sum()
    }
}

/// Equation key: generator pair index, then matrix row and column.
type EqKey = (usize, usize, usize);

fn block_of(shape: &RightModuleShape, idx: usize) -> usize {
    (0..shape.components())
        .find(|&p| shape.component_range(p).contains(&idx))
        .expect("index inside module")
}

pub fn brute_force_count(shape: &RightModuleShape) -> OracleCount {
    let d = shape.total_dim();
    let rho = shape_rho(shape);
    let pairs: Vec<(Generator, Generator)> = Generator::pairs().collect();
    let unknown = |g: Generator, r: usize, c: usize| g.index() * d * d + r * d + c;
    let n_unknowns = 3 * d * d;

    // equations[key] = list of (unknown, coefficient)
    let mut equations: HashMap<EqKey, Vec<(usize, Rational)>> = HashMap::new();
    let mut push = |key: EqKey, u: usize, v: Rational| {
        if !v.is_zero() {
            equations.entry(key).or_default().push((u, v));
        }
    };
    for g in Generator::ALL {
        for r in 0..d {
            for c in 0..d {
                let u = unknown(g, r, c);
                for (pi, &(x, y)) in pairs.iter().enumerate() {
                    // λ_[x,y] − ρ_y λ_x + λ_x ρ_y applied to the unit matrix E_rc
                    let coeff = bracket_basis(x, y).coeff(g).clone();
                    push((pi, r, c), u, coeff);
                    if x == g {
                        let ry = &rho[y.index()];
                        for i in 0..d {
                            push((pi, i, c), u, -ry[(i, r)].clone());
                            push((pi, r, i), u, ry[(c, i)].clone());
                        }
                    }
                }
            }
        }
    }

    // Merge duplicate (key, unknown) terms.
    let mut rows: Vec<BTreeMap<usize, Rational>> = Vec::new();
    for (_, terms) in equations {
        let mut row: BTreeMap<usize, Rational> = BTreeMap::new();
        for (u, v) in terms {
            *row.entry(u).or_insert_with(Rational::zero) += v;
        }
        row.retain(|_, v| !v.is_zero());
        if !row.is_empty() {
            rows.push(row);
        }
    }

    // Singleton rows force their unknown to zero; repeat until stable.
    let mut forced = vec![false; n_unknowns];
    loop {
        let mut changed = false;
        for row in &mut rows {
            row.retain(|u, _| !forced[*u]);
            if row.len() == 1 {
                let u = *row.keys().next().expect("one entry");
                forced[u] = true;
                changed = true;
            }
        }
        rows.retain(|r| !r.is_empty());
        if !changed {
            break;
        }
    }

    // Connected components of unknowns linked by a shared equation.
    let mut parent: Vec<usize> = (0..n_unknowns).collect();
    fn find(parent: &mut [usize], mut x: usize) -> usize {
        while parent[x] != x {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        x
    }
    for row in &rows {
        let mut it = row.keys();
        let first = *it.next().expect("nonempty");
        for &u in it {
            let (a, b) = (find(&mut parent, first), find(&mut parent, u));
            parent[a] = b;
        }
    }
    let mut comp_rows: HashMap<usize, Vec<&BTreeMap<usize, Rational>>> = HashMap::new();
    for row in &rows {
        let root = find(&mut parent, *row.keys().next().expect("nonempty"));
        comp_rows.entry(root).or_default().push(row);
    }
    let mut comp_members: HashMap<usize, Vec<usize>> = HashMap::new();
    for u in (0..n_unknowns).filter(|&u| !forced[u]) {
        let root = find(&mut parent, u);
        comp_members.entry(root).or_default().push(u);
    }

    let mut by_block: BTreeMap<String, usize> = BTreeMap::new();
    let mut total = 0;
    for (root, members) in comp_members {
        let rank = comp_rows
            .get(&root)
            .map_or(0, |rs| integer_rank(&members, rs));
        let nullity = members.len() - rank;
        if nullity == 0 {
            continue;
        }
        total += nullity;
        let block = |u: usize| {
            let (r, c) = ((u % (d * d)) / d, u % d);
            (block_of(shape, c), block_of(shape, r))
        };
        let (p, q) = block(members[0]);
        let key = if members.iter().all(|&u| block(u) == (p, q)) {
            format!("{}->{}", p + 1, q + 1)
        } else {
            "mixed->".to_string()
        };
        *by_block.entry(key).or_insert(0) += nullity;
    }
    OracleCount {
        shape: shape.clone(),
        unknowns: n_unknowns,
        total,
        by_block,
    }
}

/// Clears denominators row by row and runs Bareiss elimination.
fn integer_rank(members: &[usize], rows: &[&BTreeMap<usize, Rational>]) -> usize {
    let col: HashMap<usize, usize> = members.iter().enumerate().map(|(i, &u)| (u, i)).collect();
    let ncols = members.len();
    let mut m: Vec<Vec<BigInt>> = rows
        .iter()
        .map(|row| {
            let lcm = row
                .values()
                .fold(BigInt::one(), |acc, v| acc.lcm(v.denom()));
            let mut out = vec![BigInt::zero(); ncols];
            for (u, v) in row.iter() {
                out[col[u]] = v.numer() * (&lcm / v.denom());
            }
            out
        })
        .collect();
    let nrows = m.len();
    let mut rank = 0;
    let mut prev = BigInt::one();
    for c in 0..ncols {
        let Some(pivot) = (rank..nrows).find(|&r| !m[r][c].is_zero()) else {
            continue;
        };
        m.swap(rank, pivot);
        for r in rank + 1..nrows {
            for j in c + 1..ncols {
                let v = (&m[rank][c] * &m[r][j] - &m[r][c] * &m[rank][j]) / &prev;
                m[r][j] = v;
            }
            m[r][c] = BigInt::zero();
        }
        prev = m[rank][c].clone();
        rank += 1;
    }
    rank
}

/// Solver and oracle counts for one shape.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CountComparison {
    pub shape: RightModuleShape,
    pub solver: usize,
    pub solver_cross_block: usize,
    pub oracle: usize,
    pub oracle_cross_block: usize,
}

impl CountComparison {
    pub fn agrees(&self) -> bool {
        self.solver == self.oracle && self.solver_cross_block == self.oracle_cross_block
    }
}

pub fn compare_counts(shape: &RightModuleShape) -> Result<CountComparison> {
    let sol = solve_left_linear(shape)?;
    let solver_cross_block = sol
        .parameters()
        .iter()
        .filter(|p| p.unknown.source.0 != p.unknown.target.0)
        .count();
    let oracle = brute_force_count(shape);
    Ok(CountComparison {
        shape: shape.clone(),
        solver: sol.parameter_count(),
        solver_cross_block,
        oracle: oracle.total,
        oracle_cross_block: oracle.cross_block(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn shape(w: &[u32]) -> RightModuleShape {
        RightModuleShape::new(w.to_vec()).unwrap()
    }

    #[test]
    fn single_modules() {
        // λ = c ρ on V(n), n ≥ 1; nothing on V(0)
        assert_eq!(brute_force_count(&shape(&[0])).total, 0);
        for n in 1..5 {
            assert_eq!(brute_force_count(&shape(&[n])).total, 1);
        }
    }

    #[test]
    fn pairs_match_solver() {
        for w in [[3, 3], [4, 2], [2, 0], [6, 2], [4, 0], [5, 2], [1, 0]] {
            let c = compare_counts(&shape(&w)).unwrap();
            assert!(c.agrees(), "{c:?}");
        }
        let c = brute_force_count(&shape(&[5, 2]));
        assert_eq!(c.cross_block(), 0);
        assert_eq!(c.total, 2);
    }

    #[test]
    fn bareiss_rank() {
        let row = |v: &[(usize, i64)]| -> BTreeMap<usize, Rational> {
            v.iter().map(|&(u, x)| (u, Rational::from_integer(x.into()))).collect()
        };
        let rows = [row(&[(0, 1), (1, 2)]), row(&[(0, 2), (1, 4)]), row(&[(1, 1), (2, 3)])];
        let refs: Vec<_> = rows.iter().collect();
        assert_eq!(integer_rank(&[0, 1, 2], &refs), 2);
    }
}
