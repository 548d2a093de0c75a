//! Weyl decomposition of the right action by highest-weight vectors.

use num_traits::{One, Zero};
use serde::Serialize;

use crate::bimodule::{shape_rho, Bimodule, RightModuleShape};
use crate::error::{Error, Result};
use crate::linalg::{eigenspace, nullspace};
use crate::rational::{int, rational_vecs, Rational};
use crate::sl2::Generator;
use crate::{MatrixQ, SubspaceQ};

/// Result of splitting the right module into irreducibles.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DecompositionReport {
    /// Nonincreasing.
    pub weights: Vec<u32>,
    #[serde(with = "rational_vecs")]
    pub highest_weight_vectors: Vec<Vec<Rational>>,
    /// Columns are the canonical basis vectors written in the original basis.
    pub change_of_basis: MatrixQ,
}

fn check_right_module(b: &Bimodule) -> Result<()> {
    let report = b.verify_axioms();
    if let Some(v) = report
        .violations
        .iter()
        .find(|v| v.equation == crate::bimodule::Relation::Rho)
    {
        return Err(Error::NotRightModule(format!(
            "relation (5) fails for pair ({}, {})",
            v.pair.0, v.pair.1
        )));
    }
    Ok(())
}

/// Highest-weight spaces `ker ρ_e ∩ ker(ρ_h − m)`, nonzero ones only, in
/// decreasing order of `m`.
pub fn highest_weight_vectors(b: &Bimodule) -> Result<Vec<(u32, SubspaceQ)>> {
    check_right_module(b)?;
    let d = b.dim();
    let h = b.rho(Generator::H);
    let mut spaces = Vec::new();
    let mut eigen_total = 0;
    let span = d as i64;
    for m in (-span..span).rev() {
        let eig = eigenspace(h, &int(m))?;
        eigen_total += eig.dim();
        if m >= 0 && !eig.is_zero() {
            spaces.push((m as u32, eig));
        }
    }
    if eigen_total != d {
        return Err(Error::Decomposition(format!(
            "rho(h) has integer eigenspaces of total dimension {eigen_total}, expected {d}"
        )));
    }
    let kernel_e = nullspace(b.rho(Generator::E));
    let mut out = Vec::new();
    for (m, eig) in spaces {
        let hw = kernel_e.intersect(&eig)?;
        if !hw.is_zero() {
            out.push((m, hw));
        }
    }
    Ok(out)
}

/// Splits the right module into irreducibles and returns the basis change
/// to the canonical basis `v_0, ρ_f v_0, …` of each summand.
pub fn decompose_right(b: &Bimodule) -> Result<DecompositionReport> {
    let d = b.dim();
    let f = b.rho(Generator::F);
    let mut weights = Vec::new();
    let mut vectors = Vec::new();
    let mut columns: Vec<Vec<Rational>> = Vec::with_capacity(d);
    for (m, space) in highest_weight_vectors(b)? {
        for v in space.basis() {
            let mut cur = v.clone();
            for _ in 0..=m {
                columns.push(cur.clone());
                cur = f.mul_vec(&cur)?;
            }
            if cur.iter().any(|x| !x.is_zero()) {
                return Err(Error::Decomposition(format!(
                    "rho(f)^{} does not annihilate a highest-weight vector of weight {m}",
                    m + 1
                )));
            }
            weights.push(m);
            vectors.push(v);
        }
    }
    if columns.len() != d {
        return Err(Error::Decomposition(format!(
            "highest-weight chains span {} vectors in dimension {d}",
            columns.len()
        )));
    }
    let p = MatrixQ::from_columns(d, &columns)?;
    let p_inv = p
        .inverse()
        .map_err(|_| Error::Decomposition("highest-weight chains are dependent".into()))?;
    let shape = RightModuleShape::new(weights.clone())?;
    let expected = shape_rho(&shape);
    for g in Generator::ALL {
        if b.rho(g).conjugate(&p, &p_inv)? != expected[g.index()] {
            return Err(Error::Decomposition(format!(
                "rho({g}) is not in canonical form after the basis change"
            )));
        }
    }
    Ok(DecompositionReport {
        weights,
        highest_weight_vectors: vectors,
        change_of_basis: p,
    })
}

/// The bimodule rewritten in the canonical basis of its right module, with
/// the shape recorded.
pub fn canonical_right_form(b: &Bimodule) -> Result<Bimodule> {
    let report = decompose_right(b)?;
    let shape = RightModuleShape::new(report.weights)?;
    b.change_of_basis(&report.change_of_basis)?.with_shape(shape)
}

/// `true` when `p` is the identity (the input was already canonical).
pub fn is_identity(p: &MatrixQ) -> bool {
    p.is_square()
        && (0..p.rows()).all(|r| {
            (0..p.cols()).all(|c| {
                let v = &p[(r, c)];
                if r == c {
                    v.is_one()
                } else {
                    v.is_zero()
                }
            })
        })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::frac;

    fn irr(m: u32) -> Bimodule {
        Bimodule::make_right_irreducible(m)
    }

    #[test]
    fn v3_highest_weight_is_v0() {
        let hw = highest_weight_vectors(&irr(3)).unwrap();
        assert_eq!(hw.len(), 1);
        assert_eq!(hw[0].0, 3);
        assert_eq!(hw[0].1.basis(), vec![vec![int(1), int(0), int(0), int(0)]]);
    }

    #[test]
    fn two_trivial_summands() {
        let b = irr(0).direct_sum(&irr(0));
        let hw = highest_weight_vectors(&b).unwrap();
        assert_eq!(hw.len(), 1);
        assert_eq!((hw[0].0, hw[0].1.dim()), (0, 2));
    }

    #[test]
    fn irreducible_is_already_canonical() {
        let r = decompose_right(&irr(4)).unwrap();
        assert_eq!(r.weights, vec![4]);
        assert!(is_identity(&r.change_of_basis));
    }

    #[test]
    fn repeated_weights() {
        let b = irr(2).symmetrize().unwrap().direct_sum(&irr(2));
        let r = decompose_right(&b).unwrap();
        assert_eq!(r.weights, vec![2, 2]);
        assert_eq!(canonical_right_form(&b).unwrap(), b.with_shape(RightModuleShape::new(vec![2, 2]).unwrap()).unwrap());
    }

    #[test]
    fn out_of_order_sum_is_reordered() {
        let b = irr(1).direct_sum(&irr(3).symmetrize().unwrap());
        assert!(b.shape().is_none());
        let c = canonical_right_form(&b).unwrap();
        assert_eq!(c.shape().unwrap().weights(), &[3, 1]);
        assert!(c.verify_axioms().pass);
        assert!(c.lambda(Generator::F).submatrix(&[4, 5], &[0, 1, 2, 3]).is_zero());
    }

    #[test]
    fn conjugated_module_is_recovered() {
        let b = irr(3).symmetrize().unwrap();
        let p = MatrixQ::from_fn(4, 4, |r, c| {
            if r == c {
                int(1)
            } else if c == r + 1 {
                frac(1, 2)
            } else if r == 3 && c == 0 {
                int(-2)
            } else {
                int(0)
            }
        });
        let moved = b.change_of_basis(&p).unwrap();
        assert_ne!(moved.rho_all(), b.rho_all());
        let c = canonical_right_form(&moved).unwrap();
        assert_eq!(c.rho_all(), b.rho_all());
        assert!(c.is_symmetric());
        assert_eq!(canonical_right_form(&c).unwrap(), c);
    }

    #[test]
    fn corrupted_input_is_rejected() {
        let mut rho = crate::bimodule::irreducible_rho(2);
        rho[2][(0, 0)] = frac(1, 2);
        let b = Bimodule::new(None, rho, [MatrixQ::zeros(3, 3), MatrixQ::zeros(3, 3), MatrixQ::zeros(3, 3)]).unwrap();
        assert!(matches!(decompose_right(&b), Err(Error::NotRightModule(_))));
    }
}
