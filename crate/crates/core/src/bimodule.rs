//! Leibniz bimodules over sl2: the six action matrices, the axiom verifier,
//! the standard constructors, direct sums, basis changes and the square-zero
//! extension.
//!
//! A bimodule carries `rho(x)` (right action, `m ↦ [m, x]`) and `lambda(x)`
//! (left action, `m ↦ [x, m]`) for `x ∈ {e, f, h}`. The defining relations,
//! checked on all nine generator pairs, are
//!
//! * (5) `ρ_[x,y] = ρ_y ρ_x − ρ_x ρ_y`
//! * (6) `λ_[x,y] = ρ_y λ_x − λ_x ρ_y`
//! * (7) `λ_x (ρ_y + λ_y) = 0`

use std::fmt;

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rational::{int, Rational};
use crate::sl2::{bracket_basis, AlgebraTable, Generator};
use crate::MatrixQ;

/// Weights `(n_1 ≥ n_2 ≥ … ≥ n_k)` of the right-module decomposition
/// `V(n_1) ⊕ … ⊕ V(n_k)`.
///
/// Components and basis indices are zero-based here: label `(p, i)` is the
/// vector `v_i` of component `p`, and labels flatten lexicographically.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<u32>", into = "Vec<u32>")]
pub struct RightModuleShape {
    weights: Vec<u32>,
    offsets: Vec<usize>,
}

impl RightModuleShape {
    pub fn new(weights: Vec<u32>) -> Result<Self> {
        if weights.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::InvalidShape(format!(
                "weights must be nonincreasing, got {weights:?}"
            )));
        }
        let mut offsets = Vec::with_capacity(weights.len() + 1);
        let mut acc = 0;
        for &w in &weights {
            offsets.push(acc);
            acc += w as usize + 1;
        }
        offsets.push(acc);
        Ok(RightModuleShape { weights, offsets })
    }

    /// The ladder `(n, n−2, …, n−2k+2)`.
    pub fn ladder(n: u32, k: u32) -> Result<Self> {
        if k == 0 || k > n / 2 + 1 {
            return Err(Error::LadderRange { n, k });
        }
        Self::new((0..k).map(|j| n - 2 * j).collect())
    }

    pub fn weights(&self) -> &[u32] {
        &self.weights
    }

    pub fn components(&self) -> usize {
        self.weights.len()
    }

    pub fn weight(&self, p: usize) -> u32 {
        self.weights[p]
    }

    pub fn total_dim(&self) -> usize {
        *self.offsets.last().unwrap_or(&0)
    }

    pub fn offset(&self, p: usize) -> usize {
        self.offsets[p]
    }

    /// Flat indices of component `p`.
    pub fn component_range(&self, p: usize) -> std::ops::Range<usize> {
        self.offsets[p]..self.offsets[p + 1]
    }

    pub fn flatten(&self, p: usize, i: usize) -> Option<usize> {
        (p < self.components() && i <= self.weights[p] as usize).then(|| self.offsets[p] + i)
    }

    pub fn unflatten(&self, idx: usize) -> Option<(usize, usize)> {
        if idx >= self.total_dim() {
            return None;
        }
        let p = self.offsets.partition_point(|&o| o <= idx) - 1;
        Some((p, idx - self.offsets[p]))
    }

    pub fn has_distinct_weights(&self) -> bool {
        self.weights.windows(2).all(|w| w[0] != w[1])
    }
}

impl TryFrom<Vec<u32>> for RightModuleShape {
    type Error = Error;

    fn try_from(v: Vec<u32>) -> Result<Self> {
        Self::new(v)
    }
}

impl From<RightModuleShape> for Vec<u32> {
    fn from(s: RightModuleShape) -> Self {
        s.weights
    }
}

impl fmt::Display for RightModuleShape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let w: Vec<String> = self.weights.iter().map(u32::to_string).collect();
        write!(f, "({})", w.join(","))
    }
}

/// Identifies a defining relation. 1–4 are the element-level forms, 5–7
/// the operator forms.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Relation {
    /// `[m,[x,y]] = [[m,x],y] − [[m,y],x]`
    RightRight = 1,
    /// `[x,[m,y]] = [[x,m],y] − [[x,y],m]`
    LeftRight = 2,
    /// `[x,[y,m]] = [[x,y],m] − [[x,m],y]`
    LeftLeft = 3,
    /// `[x,[m,y] + [y,m]] = 0`
    LeftSum = 4,
    /// `ρ_[x,y] = ρ_y ρ_x − ρ_x ρ_y`
    Rho = 5,
    /// `λ_[x,y] = ρ_y λ_x − λ_x ρ_y`
    LambdaRho = 6,
    /// `λ_x (ρ_y + λ_y) = 0`
    LambdaSum = 7,
}

impl Serialize for Relation {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_u8(*self as u8)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Violation {
    pub equation: Relation,
    pub pair: (Generator, Generator),
    pub residual: MatrixQ,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VerificationReport {
    pub pass: bool,
    pub violations: Vec<Violation>,
}

impl VerificationReport {
    fn from_violations(mut violations: Vec<Violation>) -> Self {
        violations.sort_by_key(|a| (a.equation, a.pair));
        VerificationReport {
            pass: violations.is_empty(),
            violations,
        }
    }

    pub fn equations_violated(&self) -> Vec<Relation> {
        let mut eqs: Vec<Relation> = self.violations.iter().map(|v| v.equation).collect();
        eqs.dedup();
        eqs
    }
}

/// A finite-dimensional Leibniz bimodule given by its six action matrices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Bimodule {
    shape: Option<RightModuleShape>,
    dim: usize,
    rho: [MatrixQ; 3],
    lambda: [MatrixQ; 3],
}

/// Right action of `V(m)` in the basis `v_0, …, v_m`.
pub fn irreducible_rho(m: u32) -> [MatrixQ; 3] {
    let d = m as usize + 1;
    let mut e = MatrixQ::zeros(d, d);
    let mut f = MatrixQ::zeros(d, d);
    let mut h = MatrixQ::zeros(d, d);
    let m = i64::from(m);
    for k in 0..d {
        let ki = k as i64;
        h[(k, k)] = int(m - 2 * ki);
        if k + 1 < d {
            f[(k + 1, k)] = int(1);
        }
        if k >= 1 {
            e[(k - 1, k)] = int(-ki * (m + 1 - ki));
        }
    }
    [e, f, h]
}

/// Block-diagonal right action for a shape.
pub fn shape_rho(shape: &RightModuleShape) -> [MatrixQ; 3] {
    let blocks: Vec<[MatrixQ; 3]> = shape.weights().iter().map(|&w| irreducible_rho(w)).collect();
    let pick = |g: usize| MatrixQ::block_diag(&blocks.iter().map(|b| b[g].clone()).collect::<Vec<_>>());
    [pick(0), pick(1), pick(2)]
}

fn zero_triple(d: usize) -> [MatrixQ; 3] {
    [MatrixQ::zeros(d, d), MatrixQ::zeros(d, d), MatrixQ::zeros(d, d)]
}

impl Bimodule {
    pub fn new(
        shape: Option<RightModuleShape>,
        rho: [MatrixQ; 3],
        lambda: [MatrixQ; 3],
    ) -> Result<Self> {
        let d = rho[0].rows();
        for m in rho.iter().chain(&lambda) {
            if m.dims() != (d, d) {
                return Err(Error::DimensionMismatch {
                    op: "bimodule",
                    left: m.dims(),
                    right: (d, d),
                });
            }
        }
        if let Some(s) = &shape {
            if s.total_dim() != d {
                return Err(Error::InvalidShape(format!(
                    "shape {s} has dimension {} but matrices are {d}x{d}",
                    s.total_dim()
                )));
            }
        }
        Ok(Bimodule {
            shape,
            dim: d,
            rho,
            lambda,
        })
    }

    /// The right module `V(n_1) ⊕ … ⊕ V(n_k)` in its standard basis with the
    /// given left action.
    pub fn with_left_action(shape: RightModuleShape, lambda: [MatrixQ; 3]) -> Result<Self> {
        let rho = shape_rho(&shape);
        Self::new(Some(shape), rho, lambda)
    }

    /// `V(m)` with zero left action.
    pub fn make_right_irreducible(m: u32) -> Self {
        let shape = RightModuleShape::new(vec![m]).expect("single weight");
        let d = shape.total_dim();
        Bimodule {
            shape: Some(shape),
            dim: d,
            rho: irreducible_rho(m),
            lambda: zero_triple(d),
        }
    }

    /// Zero bimodule of dimension `d` (every action vanishes).
    pub fn zero(d: usize) -> Self {
        Bimodule {
            shape: None,
            dim: d,
            rho: zero_triple(d),
            lambda: zero_triple(d),
        }
    }

    pub fn shape(&self) -> Option<&RightModuleShape> {
        self.shape.as_ref()
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn rho(&self, g: Generator) -> &MatrixQ {
        &self.rho[g.index()]
    }

    pub fn lambda(&self, g: Generator) -> &MatrixQ {
        &self.lambda[g.index()]
    }

    pub fn rho_all(&self) -> &[MatrixQ; 3] {
        &self.rho
    }

    pub fn lambda_all(&self) -> &[MatrixQ; 3] {
        &self.lambda
    }

    /// All six action matrices, ρ first.
    pub fn actions(&self) -> impl Iterator<Item = &MatrixQ> {
        self.rho.iter().chain(self.lambda.iter())
    }

    /// Replaces one left-action matrix (used by mutation tests).
    pub fn with_lambda(&self, g: Generator, m: MatrixQ) -> Result<Self> {
        let mut lambda = self.lambda.clone();
        lambda[g.index()] = m;
        Self::new(self.shape.clone(), self.rho.clone(), lambda)
    }

    fn rho_of(&self, x: Generator, y: Generator) -> MatrixQ {
        bracket_basis(x, y).combine(&self.rho)
    }

    fn lambda_of(&self, x: Generator, y: Generator) -> MatrixQ {
        bracket_basis(x, y).combine(&self.lambda)
    }

    fn rho_violations(&self) -> Vec<Violation> {
        Generator::pairs()
            .filter_map(|(x, y)| {
                let rhs = MatrixQ::commutator(self.rho(x), self.rho(y)).expect("square");
                let residual = self.rho_of(x, y).sub(&rhs).expect("square");
                (!residual.is_zero()).then_some(Violation {
                    equation: Relation::Rho,
                    pair: (x, y),
                    residual,
                })
            })
            .collect()
    }

    /// Checks relations (5), (6), (7) on all nine generator pairs.
    pub fn verify_axioms(&self) -> VerificationReport {
        let mut out = self.rho_violations();
        for (x, y) in Generator::pairs() {
            let ry = self.rho(y);
            let (lx, ly) = (self.lambda(x), self.lambda(y));
            let rhs = ry.mat_mul(lx).and_then(|a| a.sub(&lx.mat_mul(ry)?)).expect("square");
            let residual = self.lambda_of(x, y).sub(&rhs).expect("square");
            if !residual.is_zero() {
                out.push(Violation {
                    equation: Relation::LambdaRho,
                    pair: (x, y),
                    residual,
                });
            }
            let residual = lx.mat_mul(&ry.add(ly).expect("square")).expect("square");
            if !residual.is_zero() {
                out.push(Violation {
                    equation: Relation::LambdaSum,
                    pair: (x, y),
                    residual,
                });
            }
        }
        VerificationReport::from_violations(out)
    }

    /// Checks the element-level relations (1)–(4) on every basis vector.
    ///
    /// The residual of a violation has one column per basis vector `m`.
    pub fn verify_elementwise(&self) -> VerificationReport {
        let d = self.dim;
        let mut out = Vec::new();
        for (x, y) in Generator::pairs() {
            let mut residuals = [
                MatrixQ::zeros(d, d),
                MatrixQ::zeros(d, d),
                MatrixQ::zeros(d, d),
                MatrixQ::zeros(d, d),
            ];
            let (rx, ry, lx, ly) = (self.rho(x), self.rho(y), self.lambda(x), self.lambda(y));
            let (rxy, lxy) = (self.rho_of(x, y), self.lambda_of(x, y));
            for c in 0..d {
                let mut m = vec![Rational::zero(); d];
                m[c] = int(1);
                let apply = |a: &MatrixQ, v: &[Rational]| a.mul_vec(v).expect("square");
                let sub = |a: Vec<Rational>, b: Vec<Rational>| -> Vec<Rational> {
                    a.into_iter().zip(b).map(|(p, q)| p - q).collect()
                };
                // (1) [m,[x,y]] − [[m,x],y] + [[m,y],x]
                let r1 = sub(
                    sub(apply(&rxy, &m), apply(ry, &apply(rx, &m))),
                    apply(rx, &apply(ry, &m)).into_iter().map(|t| -t).collect(),
                );
                // (2) [x,[m,y]] − [[x,m],y] + [[x,y],m]
                let r2 = sub(
                    sub(apply(lx, &apply(ry, &m)), apply(ry, &apply(lx, &m))),
                    apply(&lxy, &m).into_iter().map(|t| -t).collect(),
                );
                // (3) [x,[y,m]] − [[x,y],m] + [[x,m],y]
                let r3 = sub(
                    sub(apply(lx, &apply(ly, &m)), apply(&lxy, &m)),
                    apply(ry, &apply(lx, &m)).into_iter().map(|t| -t).collect(),
                );
                // (4) [x,[m,y] + [y,m]]
                let sum: Vec<Rational> = apply(ry, &m)
                    .into_iter()
                    .zip(apply(ly, &m))
                    .map(|(p, q)| p + q)
                    .collect();
                let r4 = apply(lx, &sum);
                for (res, col) in residuals.iter_mut().zip([r1, r2, r3, r4]) {
                    for (r, v) in col.into_iter().enumerate() {
                        res[(r, c)] = v;
                    }
                }
            }
            let ids = [
                Relation::RightRight,
                Relation::LeftRight,
                Relation::LeftLeft,
                Relation::LeftSum,
            ];
            for (equation, residual) in ids.into_iter().zip(residuals) {
                if !residual.is_zero() {
                    out.push(Violation {
                        equation,
                        pair: (x, y),
                        residual,
                    });
                }
            }
        }
        VerificationReport::from_violations(out)
    }

    fn require_right_module(&self) -> Result<()> {
        let v = self.rho_violations();
        if let Some(first) = v.first() {
            return Err(Error::NotRightModule(format!(
                "relation (5) fails for pair ({}, {})",
                first.pair.0, first.pair.1
            )));
        }
        Ok(())
    }

    /// `λ_x := −ρ_x`.
    pub fn symmetrize(&self) -> Result<Self> {
        self.require_right_module()?;
        Ok(Bimodule {
            lambda: self.rho.clone().map(|m| m.neg()),
            ..self.clone()
        })
    }

    /// `λ_x := 0`.
    pub fn antisymmetrize(&self) -> Result<Self> {
        self.require_right_module()?;
        Ok(Bimodule {
            lambda: zero_triple(self.dim),
            ..self.clone()
        })
    }

    pub fn is_symmetric(&self) -> bool {
        self.rho
            .iter()
            .zip(&self.lambda)
            .all(|(r, l)| r.add(l).is_ok_and(|s| s.is_zero()))
    }

    pub fn is_antisymmetric(&self) -> bool {
        self.lambda.iter().all(MatrixQ::is_zero)
    }

    /// Block-diagonal sum. The shape survives when the concatenated weights
    /// remain nonincreasing.
    pub fn direct_sum(&self, other: &Self) -> Self {
        let shape = match (&self.shape, &other.shape) {
            (Some(a), Some(b)) => {
                let w: Vec<u32> = a.weights().iter().chain(b.weights()).copied().collect();
                RightModuleShape::new(w).ok()
            }
            _ => None,
        };
        let bd = |a: &[MatrixQ; 3], b: &[MatrixQ; 3]| {
            [0, 1, 2].map(|g| MatrixQ::block_diag(&[a[g].clone(), b[g].clone()]))
        };
        Bimodule {
            shape,
            dim: self.dim + other.dim,
            rho: bd(&self.rho, &other.rho),
            lambda: bd(&self.lambda, &other.lambda),
        }
    }

    /// Conjugates every action by `p` (`A ↦ P⁻¹ A P`); the columns of `p` are
    /// the new basis vectors written in the old basis.
    pub fn change_of_basis(&self, p: &MatrixQ) -> Result<Self> {
        if p.dims() != (self.dim, self.dim) {
            return Err(Error::DimensionMismatch {
                op: "change_of_basis",
                left: p.dims(),
                right: (self.dim, self.dim),
            });
        }
        let p_inv = p.inverse()?;
        let conj = |ms: &[MatrixQ; 3]| -> Result<[MatrixQ; 3]> {
            Ok([
                ms[0].conjugate(p, &p_inv)?,
                ms[1].conjugate(p, &p_inv)?,
                ms[2].conjugate(p, &p_inv)?,
            ])
        };
        let rho = conj(&self.rho)?;
        let lambda = conj(&self.lambda)?;
        let shape = self.shape.clone().filter(|s| shape_rho(s) == rho);
        Ok(Bimodule {
            shape,
            dim: self.dim,
            rho,
            lambda,
        })
    }

    /// Attaches a shape after checking ρ is exactly the standard block form.
    pub fn with_shape(&self, shape: RightModuleShape) -> Result<Self> {
        if shape.total_dim() != self.dim || shape_rho(&shape) != self.rho {
            return Err(Error::InvalidShape(format!(
                "right action is not in the standard form of shape {shape}"
            )));
        }
        Ok(Bimodule {
            shape: Some(shape),
            ..self.clone()
        })
    }

    /// The algebra `sl2 ⊕ M` with basis `(e, f, h, m_0, …)`, brackets
    /// `[x, m] = λ_x m`, `[m, x] = ρ_x m` and `[m, m'] = 0`.
    pub fn square_zero(&self) -> AlgebraTable {
        let d = self.dim;
        let mut t = AlgebraTable::zero(3 + d);
        let sl2 = AlgebraTable::sl2();
        for i in 0..3 {
            for j in 0..3 {
                for k in 0..3 {
                    t.set(i, j, k, sl2.structure_constant(i, j, k).clone());
                }
            }
        }
        for g in Generator::ALL {
            let (l, r) = (self.lambda(g), self.rho(g));
            for c in 0..d {
                for row in 0..d {
                    if !l[(row, c)].is_zero() {
                        t.set(g.index(), 3 + c, 3 + row, l[(row, c)].clone());
                    }
                    if !r[(row, c)].is_zero() {
                        t.set(3 + c, g.index(), 3 + row, r[(row, c)].clone());
                    }
                }
            }
        }
        t
    }
}

#[derive(Serialize, Deserialize)]
struct ActionsJson {
    e: MatrixQ,
    f: MatrixQ,
    h: MatrixQ,
}

#[derive(Serialize, Deserialize)]
struct BimoduleJson {
    shape: Option<RightModuleShape>,
    dim: usize,
    rho: ActionsJson,
    lambda: ActionsJson,
}

impl Serialize for Bimodule {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let pack = |m: &[MatrixQ; 3]| ActionsJson {
            e: m[0].clone(),
            f: m[1].clone(),
            h: m[2].clone(),
        };
        BimoduleJson {
            shape: self.shape.clone(),
            dim: self.dim,
            rho: pack(&self.rho),
            lambda: pack(&self.lambda),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for Bimodule {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let raw = BimoduleJson::deserialize(d)?;
        let b = Bimodule::new(
            raw.shape,
            [raw.rho.e, raw.rho.f, raw.rho.h],
            [raw.lambda.e, raw.lambda.f, raw.lambda.h],
        )
        .map_err(D::Error::custom)?;
        if b.dim != raw.dim {
            return Err(D::Error::custom(format!(
                "declared dim {} but matrices are {}x{}",
                raw.dim, b.dim, b.dim
            )));
        }
        if let Some(s) = &b.shape {
            if shape_rho(s) != b.rho {
                return Err(D::Error::custom(format!(
                    "right action is not in the standard form of shape {s}"
                )));
            }
        }
        Ok(b)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::frac;

    fn sym(m: u32) -> Bimodule {
        Bimodule::make_right_irreducible(m).symmetrize().unwrap()
    }

    fn antisym(m: u32) -> Bimodule {
        Bimodule::make_right_irreducible(m).antisymmetrize().unwrap()
    }

    #[test]
    fn shape_flatten_roundtrip() {
        let s = RightModuleShape::new(vec![4, 2, 2, 0]).unwrap();
        assert_eq!(s.total_dim(), 5 + 3 + 3 + 1);
        for idx in 0..s.total_dim() {
            let (p, i) = s.unflatten(idx).unwrap();
            assert_eq!(s.flatten(p, i), Some(idx));
        }
        assert_eq!(s.unflatten(12), None);
        assert_eq!(s.flatten(1, 3), None);
        assert!(RightModuleShape::new(vec![2, 4]).is_err());
        assert!(RightModuleShape::ladder(4, 4).is_err());
        assert_eq!(RightModuleShape::ladder(6, 3).unwrap().weights(), &[6, 4, 2]);
    }

    #[test]
    fn irreducible_v0_is_zero() {
        let b = Bimodule::make_right_irreducible(0);
        assert_eq!(b.dim(), 1);
        assert!(b.actions().all(MatrixQ::is_zero));
    }

    #[test]
    fn irreducible_v2_and_v3_entries() {
        let b = Bimodule::make_right_irreducible(2);
        assert_eq!(b.rho(Generator::H), &MatrixQ::diagonal(&[int(2), int(0), int(-2)]));
        let e = b.rho(Generator::E);
        assert_eq!(e[(0, 1)], int(-2));
        assert_eq!(e[(1, 2)], int(-2));
        let b3 = Bimodule::make_right_irreducible(3);
        assert_eq!(b3.rho(Generator::E)[(1, 2)], int(-4));
    }

    #[test]
    fn commutator_of_e_f_on_v1_is_h() {
        let b = Bimodule::make_right_irreducible(1);
        let c = MatrixQ::commutator(b.rho(Generator::E), b.rho(Generator::F)).unwrap();
        assert_eq!(&c, b.rho(Generator::H));
    }

    #[test]
    fn symmetrize_v1_left_f() {
        let b = sym(1);
        assert_eq!(b.lambda(Generator::F)[(1, 0)], int(-1));
        assert!(b.is_symmetric());
        assert!(sym(0).actions().all(MatrixQ::is_zero));
    }

    #[test]
    fn simple_bimodules_verify() {
        for n in 0..=6 {
            assert!(sym(n).verify_axioms().pass, "sym V({n})");
            assert!(antisym(n).verify_axioms().pass, "antisym V({n})");
        }
        assert!(Bimodule::zero(5).verify_axioms().pass);
        let a = antisym(3);
        assert!(a.is_antisymmetric());
        assert_eq!(a.rho_all(), Bimodule::make_right_irreducible(3).rho_all());
    }

    #[test]
    fn v0_is_both_symmetric_and_antisymmetric() {
        let b = Bimodule::make_right_irreducible(0);
        assert!(b.is_symmetric() && b.is_antisymmetric());
    }

    #[test]
    fn symmetrize_rejects_broken_right_action() {
        let mut rho = irreducible_rho(2);
        rho[0][(0, 1)] = int(5);
        let b = Bimodule::new(None, rho, zero_triple(3)).unwrap();
        assert!(matches!(b.symmetrize(), Err(Error::NotRightModule(_))));
        assert!(b.antisymmetrize().is_err());
    }

    #[test]
    fn direct_sums() {
        let z = sym(0).direct_sum(&antisym(0));
        assert_eq!(z.dim(), 2);
        assert!(z.actions().all(MatrixQ::is_zero));
        let s = sym(4).direct_sum(&antisym(2));
        assert_eq!(s.dim(), 8);
        assert!(s.verify_axioms().pass);
        assert_eq!(s.shape().unwrap().weights(), &[4, 2]);
        assert!(antisym(2).direct_sum(&sym(4)).shape().is_none());
    }

    #[test]
    fn change_of_basis_by_scalars_is_identity() {
        let b = sym(3);
        assert_eq!(b.change_of_basis(&MatrixQ::identity(4)).unwrap(), b);
        assert_eq!(b.change_of_basis(&MatrixQ::scalar(4, int(2))).unwrap(), b);
        let singular = MatrixQ::zeros(4, 4);
        assert_eq!(b.change_of_basis(&singular), Err(Error::Singular));
    }

    #[test]
    fn verify_reports_exact_residual() {
        let b = sym(2);
        let mut lf = b.lambda(Generator::F).clone();
        lf[(1, 0)] = int(1);
        let bad = b.with_lambda(Generator::F, lf).unwrap();
        let r = bad.verify_axioms();
        assert!(!r.pass);
        assert!(r
            .equations_violated()
            .iter()
            .any(|e| matches!(e, Relation::LambdaRho | Relation::LambdaSum)));
        for v in &r.violations {
            assert!(!v.residual.is_zero());
        }
    }

    #[test]
    fn elementwise_and_operator_checks_agree() {
        let good = sym(3).direct_sum(&antisym(1));
        assert!(good.verify_elementwise().pass);
        let mut lh = good.lambda(Generator::H).clone();
        lh[(0, 0)] = frac(1, 2);
        let bad = good.with_lambda(Generator::H, lh).unwrap();
        assert!(!bad.verify_axioms().pass);
        assert!(!bad.verify_elementwise().pass);
    }

    #[test]
    fn square_zero_of_small_bimodules() {
        let t = Bimodule::zero(1).square_zero();
        assert_eq!(t.dim(), 4);
        assert!(t.check_leibniz_identity().passed());
        let t = sym(2).square_zero();
        let r = t.check_leibniz_identity();
        assert_eq!(r.triples_checked, 216);
        assert!(r.passed());

        let b = sym(2);
        let mut le = b.lambda(Generator::E).clone();
        le[(0, 1)] = int(3);
        let bad = b.with_lambda(Generator::E, le).unwrap();
        assert!(!bad.verify_axioms().pass);
        assert!(!bad.square_zero().check_leibniz_identity().passed());
    }

    #[test]
    fn bimodule_json_roundtrip() {
        let b = sym(2).direct_sum(&antisym(0));
        let s = serde_json::to_string(&b).unwrap();
        let back: Bimodule = serde_json::from_str(&s).unwrap();
        assert_eq!(back, b);
        let v: serde_json::Value = serde_json::from_str(&s).unwrap();
        assert_eq!(v["shape"], serde_json::json!([2, 0]));
        assert_eq!(v["rho"]["h"][0][0], "2");
        assert_eq!(v["lambda"]["h"][0][0], "-2");
    }

    #[test]
    fn bimodule_json_rejects_inconsistent_shape() {
        let b = sym(2);
        let mut v = serde_json::to_value(&b).unwrap();
        v["shape"] = serde_json::json!([1, 0]);
        assert!(serde_json::from_value::<Bimodule>(v).is_err());
    }
}
