//! The two indecomposable families on a ladder `(n, n−2, …, n−2k+2)`.
//!
//! Each constructor fixes only which `φ` parameters are `−1`, `1` or `0`;
//! every other coefficient comes from the general solution of relation (6),
//! and the result is checked against all relations before it is returned.

use std::collections::BTreeMap;

use num_traits::One;
use serde::{Deserialize, Serialize};

use crate::bimodule::{Bimodule, RightModuleShape};
use crate::classify::ansatz::solve_left_linear;
use crate::error::{Error, Result};
use crate::rational::Rational;

/// Which components carry the nonzero left action.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum LadderFamily {
    /// Even-numbered components (second, fourth, …).
    Case1,
    /// Odd-numbered components (first, third, …).
    Case2,
}

impl LadderFamily {
    fn active(self, j: u32) -> bool {
        match self {
            LadderFamily::Case1 => j.is_multiple_of(2),
            LadderFamily::Case2 => j % 2 == 1,
        }
    }
}

/// The nonzero `φ` values of a family, by one-based component numbers.
pub fn family_parameters(family: LadderFamily, k: u32) -> BTreeMap<String, Rational> {
    let mut out = BTreeMap::new();
    for j in (1..=k).filter(|&j| family.active(j)) {
        out.insert(format!("phi_{j}_{j}"), -Rational::one());
        if j > 1 {
            out.insert(format!("phi_{j}_{}", j - 1), Rational::one());
        }
        if j < k {
            out.insert(format!("phi_{j}_{}", j + 1), Rational::one());
        }
    }
    out
}

/// Builds a family member on the ladder starting at `n` with `k` components.
pub fn make_family(family: LadderFamily, n: u32, k: u32) -> Result<Bimodule> {
    let shape = RightModuleShape::ladder(n, k)?;
    let sol = solve_left_linear(&shape)?;
    let lambda = sol.instantiate_named(&family_parameters(family, k));
    let b = Bimodule::with_left_action(shape, lambda)?;
    let report = b.verify_axioms();
    if !report.pass {
        return Err(Error::Inconsistent(format!(
            "{family:?} on ladder ({n}, {k}) violates relations {:?}",
            report.equations_violated()
        )));
    }
    Ok(b)
}

pub fn make_case1(n: u32, k: u32) -> Result<Bimodule> {
    make_family(LadderFamily::Case1, n, k)
}

pub fn make_case2(n: u32, k: u32) -> Result<Bimodule> {
    make_family(LadderFamily::Case2, n, k)
}

/// All `(n, k)` ladders with `n ≤ max_n` and `min_k ≤ k ≤ ⌊n/2⌋ + 1`.
pub fn ladders(max_n: u32, min_k: u32) -> Vec<(u32, u32)> {
    (0..=max_n)
        .flat_map(|n| (min_k.max(1)..=n / 2 + 1).map(move |k| (n, k)))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::int;
    use crate::sl2::Generator;
    use crate::MatrixQ;

    #[test]
    fn degenerate_ladders_are_simple() {
        for n in 0..=5 {
            assert!(make_case1(n, 1).unwrap().is_antisymmetric());
            assert!(make_case2(n, 1).unwrap().is_symmetric());
        }
    }

    #[test]
    fn case1_first_two_components() {
        // ⟨f,w_j⟩ = v_{j+2} − w_{j+1}, V(n) annihilated by the left action.
        let b = make_case1(4, 2).unwrap();
        let f = b.lambda(Generator::F);
        for j in 0..=2usize {
            assert_eq!(f[(j + 2, 5 + j)], int(1));
            if j < 2 {
                assert_eq!(f[(5 + j + 1, 5 + j)], int(-1));
            }
        }
        let first: Vec<usize> = (0..5).collect();
        let all: Vec<usize> = (0..8).collect();
        for g in Generator::ALL {
            assert!(b.lambda(g).submatrix(&all, &first).is_zero());
        }
        // ⟨h,w_j⟩ = 2(m−j+1)v_{j+1} − (m−2j)w_j and
        // ⟨e,w_j⟩ = (m−j+1)((m−j+2)v_j + j w_{j−1}) with m = 2.
        let (h, e) = (b.lambda(Generator::H), b.lambda(Generator::E));
        for j in 0..=2i64 {
            let ju = j as usize;
            assert_eq!(h[(ju + 1, 5 + ju)], int(2 * (2 - j + 1)));
            assert_eq!(h[(5 + ju, 5 + ju)], int(-(2 - 2 * j)));
            assert_eq!(e[(ju, 5 + ju)], int((2 - j + 1) * (2 - j + 2)));
            if j > 0 {
                assert_eq!(e[(5 + ju - 1, 5 + ju)], int((2 - j + 1) * j));
            }
        }
    }

    #[test]
    fn case2_first_two_components() {
        // ⟨f,v_i⟩ = −v_{i+1} + w_i, ⟨h,v_i⟩ = −(n−2i)v_i − 2i w_{i−1},
        // ⟨e,v_i⟩ = i(n−i+1)v_{i−1} + i(i−1)w_{i−2}; V(n−2) annihilated.
        let b = make_case2(4, 2).unwrap();
        let (h, f, e) = (b.lambda(Generator::H), b.lambda(Generator::F), b.lambda(Generator::E));
        for i in 0..=4i64 {
            let iu = i as usize;
            if iu < 4 {
                assert_eq!(f[(iu + 1, iu)], int(-1));
            }
            if iu <= 2 {
                assert_eq!(f[(5 + iu, iu)], int(1));
            }
            assert_eq!(h[(iu, iu)], int(-(4 - 2 * i)));
            if (1..=3).contains(&iu) {
                assert_eq!(h[(5 + iu - 1, iu)], int(-2 * i));
            }
            if iu >= 1 {
                assert_eq!(e[(iu - 1, iu)], int(i * (4 - i + 1)));
            }
            if iu >= 2 {
                assert_eq!(e[(5 + iu - 2, iu)], int(i * (i - 1)));
            }
        }
        let second: Vec<usize> = (5..8).collect();
        let all: Vec<usize> = (0..8).collect();
        for g in Generator::ALL {
            assert!(b.lambda(g).submatrix(&all, &second).is_zero());
        }
    }

    #[test]
    fn longer_ladders_verify() {
        for (n, k) in [(6, 3), (7, 2), (8, 4), (4, 3), (2, 2)] {
            assert!(make_case1(n, k).unwrap().verify_axioms().pass);
            assert!(make_case2(n, k).unwrap().verify_axioms().pass);
        }
    }

    #[test]
    fn range_is_checked() {
        assert!(matches!(make_case1(4, 4), Err(Error::LadderRange { .. })));
        assert!(make_case2(3, 0).is_err());
        assert_eq!(ladders(3, 2), vec![(2, 2), (3, 2)]);
    }

    #[test]
    fn case1_middle_component_pattern() {
        // ⟨f,v_i^2⟩ = v_{i+2}^1 − v_{i+1}^2 + v_i^3 on the ladder (6,4,2).
        let b = make_case1(6, 3).unwrap();
        let s = b.shape().unwrap().clone();
        let f = b.lambda(Generator::F);
        let at = |p: usize, i: usize| s.flatten(p, i).unwrap();
        for i in 0..=4 {
            assert_eq!(f[(at(0, i + 2), at(1, i))], int(1));
            if i < 4 {
                assert_eq!(f[(at(1, i + 1), at(1, i))], int(-1));
            }
            if i <= 2 {
                assert_eq!(f[(at(2, i), at(1, i))], int(1));
            }
        }
        assert_eq!(f.column(at(0, 0)), MatrixQ::zeros(15, 1).column(0));
    }
}
