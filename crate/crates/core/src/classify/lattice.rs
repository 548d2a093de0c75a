//! Subbimodules, decomposability certificates, the equal-weight `Φ`
//! analysis and the antisymmetric/symmetric layer structure.

use std::collections::{HashSet, VecDeque};

use num_traits::{One, Zero};
use serde::Serialize;

use crate::bimodule::{shape_rho, Bimodule, RightModuleShape};
use crate::decomposition::highest_weight_vectors;
use crate::error::{Error, Result};
use crate::linalg::{eigenspace, nullspace, SparseEchelon};
use crate::rational::{int, Rational};
use crate::sl2::Generator;
use crate::{MatrixQ, SubspaceQ};

fn require_shape(b: &Bimodule) -> Result<&RightModuleShape> {
    b.shape()
        .ok_or_else(|| Error::InvalidShape("operation needs canonical right form".into()))
}

/// Smallest subspace containing `seeds` and closed under all six actions.
pub fn closure(b: &Bimodule, seeds: &[Vec<Rational>]) -> SubspaceQ {
    let d = b.dim();
    let mut ech = SparseEchelon::new(d);
    let mut found = Vec::new();
    let mut queue: VecDeque<Vec<Rational>> = seeds.iter().cloned().collect();
    while let Some(v) = queue.pop_front() {
        if ech.insert(v.iter().cloned().enumerate().filter(|(_, x)| !x.is_zero())) {
            for a in b.actions() {
                queue.push_back(a.mul_vec(&v).expect("square action"));
            }
            found.push(v);
        }
    }
    SubspaceQ::span(d, &found).expect("vectors of ambient length")
}

/// `true` when all six actions map `s` into itself.
pub fn is_subbimodule(b: &Bimodule, s: &SubspaceQ) -> bool {
    b.actions().all(|a| s.is_invariant_under(a))
}

/// Span of the given components.
pub fn component_sum(shape: &RightModuleShape, comps: &[usize]) -> SubspaceQ {
    let d = shape.total_dim();
    let vectors: Vec<Vec<Rational>> = comps
        .iter()
        .flat_map(|&p| shape.component_range(p))
        .map(|i| unit(d, i))
        .collect();
    SubspaceQ::span(d, &vectors).expect("unit vectors")
}

fn unit(d: usize, i: usize) -> Vec<Rational> {
    let mut v = vec![Rational::zero(); d];
    v[i] = Rational::one();
    v
}

/// How thoroughly to search for subbimodules.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SearchDepth {
    /// Only sums of right-irreducible components. Complete when all
    /// component weights are distinct.
    ComponentSums,
    /// Component sums plus closures of basis vectors and pairwise sums.
    Probes,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FoundSubbimodule {
    pub space: SubspaceQ,
    /// Zero-based components when the space is a component sum.
    pub components: Option<Vec<usize>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SubbimoduleReport {
    /// Sorted by dimension, then by echelon basis.
    pub subbimodules: Vec<FoundSubbimodule>,
    /// Whether every found subbimodule is a component sum.
    pub all_component_sums: bool,
}

impl SubbimoduleReport {
    pub fn proper_nonzero(&self) -> impl Iterator<Item = &FoundSubbimodule> {
        self.subbimodules
            .iter()
            .filter(|s| !s.space.is_zero() && !s.space.is_full())
    }

    /// `true` when the subbimodules are totally ordered by inclusion.
    pub fn is_chain(&self) -> bool {
        self.subbimodules.windows(2).all(|w| w[1].space.contains_subspace(&w[0].space))
            && self
                .subbimodules
                .windows(2)
                .all(|w| w[0].space.dim() < w[1].space.dim())
    }
}

fn component_label(shape: &RightModuleShape, s: &SubspaceQ) -> Option<Vec<usize>> {
    let comps: Vec<usize> = (0..shape.components())
        .filter(|&p| {
            let r = shape.component_range(p);
            s.contains(&unit(shape.total_dim(), r.start))
        })
        .collect();
    (component_sum(shape, &comps) == *s).then_some(comps)
}

/// Invariant component sums, plus probe closures at [`SearchDepth::Probes`].
///
/// With distinct weights every subbimodule is a component sum; at the
/// probe depth this is asserted and a violation is an error.
pub fn subbimodules_with(b: &Bimodule, depth: SearchDepth) -> Result<SubbimoduleReport> {
    let shape = require_shape(b)?;
    let k = shape.components();
    if k > 20 {
        return Err(Error::InvalidShape(format!("too many components ({k})")));
    }
    let mut spaces: HashSet<SubspaceQ> = HashSet::new();
    for mask in 0u32..(1 << k) {
        let comps: Vec<usize> = (0..k).filter(|p| mask & (1 << p) != 0).collect();
        let s = component_sum(shape, &comps);
        if is_subbimodule(b, &s) {
            spaces.insert(s);
        }
    }
    if depth == SearchDepth::Probes {
        let d = b.dim();
        let mut probes: Vec<Vec<Rational>> = (0..d).map(|i| unit(d, i)).collect();
        for i in 0..d {
            for j in i + 1..d {
                let mut v = unit(d, i);
                v[j] = Rational::one();
                probes.push(v);
            }
        }
        for v in probes {
            spaces.insert(closure(b, &[v]));
        }
    }
    let mut spaces: Vec<SubspaceQ> = spaces.into_iter().collect();
    spaces.sort_by_cached_key(|s| (s.dim(), s.basis()));
    let subbimodules: Vec<FoundSubbimodule> = spaces
        .into_iter()
        .map(|space| FoundSubbimodule {
            components: component_label(shape, &space),
            space,
        })
        .collect();
    let all_component_sums = subbimodules.iter().all(|s| s.components.is_some());
    if shape.has_distinct_weights() && !all_component_sums {
        return Err(Error::Inconsistent(
            "found a subbimodule that is not a component sum although weights are distinct".into(),
        ));
    }
    Ok(SubbimoduleReport {
        subbimodules,
        all_component_sums,
    })
}

pub fn subbimodules(b: &Bimodule) -> Result<SubbimoduleReport> {
    subbimodules_with(b, SearchDepth::Probes)
}

/// Dimension of `{X : X A = A X}` over all six action matrices.
pub fn commutant_dim(b: &Bimodule) -> usize {
    let d = b.dim();
    let var = |r: usize, c: usize| r * d + c;
    let mut ech = SparseEchelon::<Rational>::new(d * d);
    // ρ_h first: it is diagonal in canonical form and kills most unknowns.
    let order = [
        b.rho(Generator::H),
        b.lambda(Generator::H),
        b.rho(Generator::E),
        b.rho(Generator::F),
        b.lambda(Generator::E),
        b.lambda(Generator::F),
    ];
    for a in order {
        let cols: Vec<Vec<(usize, Rational)>> = (0..d)
            .map(|c| (0..d).filter(|&r| !a[(r, c)].is_zero()).map(|r| (r, a[(r, c)].clone())).collect())
            .collect();
        let rows: Vec<Vec<(usize, Rational)>> = (0..d)
            .map(|r| (0..d).filter(|&c| !a[(r, c)].is_zero()).map(|c| (c, a[(r, c)].clone())).collect())
            .collect();
        // (XA − AX)[r][c] = Σ_k X[r][k] A[k][c] − Σ_k A[r][k] X[k][c]
        for r in 0..d {
            for c in 0..d {
                let row = cols[c]
                    .iter()
                    .map(|(k, v)| (var(r, *k), v.clone()))
                    .chain(rows[r].iter().map(|(k, v)| (var(*k, c), -v.clone())));
                ech.insert(row);
            }
        }
    }
    ech.nullity()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum EvidenceMethod {
    ComponentSearch,
    PhiEigenbasis,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum Verdict {
    Decomposable {
        method: EvidenceMethod,
        first: SubspaceQ,
        second: SubspaceQ,
    },
    Indecomposable {
        /// Why the search is conclusive.
        reason: String,
    },
    /// Repeated weights where neither search nor commutant settles it.
    Inconclusive,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IndecomposabilityCertificate {
    #[serde(flatten)]
    pub verdict: Verdict,
    pub subbimodules_examined: usize,
    pub commutant_dim: usize,
}

impl IndecomposabilityCertificate {
    pub fn is_indecomposable(&self) -> bool {
        matches!(self.verdict, Verdict::Indecomposable { .. })
    }

    pub fn is_decomposable(&self) -> bool {
        matches!(self.verdict, Verdict::Decomposable { .. })
    }

    /// Checks the evidence pair: both proper, invariant, and complementary.
    pub fn evidence_is_valid(&self, b: &Bimodule) -> bool {
        match &self.verdict {
            Verdict::Decomposable { first, second, .. } => {
                is_complementary_pair(b, first, second)
            }
            _ => false,
        }
    }
}

pub fn is_complementary_pair(b: &Bimodule, s: &SubspaceQ, t: &SubspaceQ) -> bool {
    let d = b.dim();
    !s.is_zero()
        && !t.is_zero()
        && s.dim() + t.dim() == d
        && s.intersect(t).is_ok_and(|i| i.is_zero())
        && is_subbimodule(b, s)
        && is_subbimodule(b, t)
}

fn find_complement(b: &Bimodule, report: &SubbimoduleReport) -> Option<(SubspaceQ, SubspaceQ)> {
    let proper: Vec<&SubspaceQ> = report.proper_nonzero().map(|s| &s.space).collect();
    for (i, s) in proper.iter().enumerate() {
        for t in &proper[i + 1..] {
            if s.dim() + t.dim() == b.dim() && s.intersect(t).is_ok_and(|x| x.is_zero()) {
                return Some(((*s).clone(), (*t).clone()));
            }
        }
    }
    None
}

pub fn is_indecomposable_with(b: &Bimodule, depth: SearchDepth) -> Result<IndecomposabilityCertificate> {
    let shape = require_shape(b)?.clone();
    let commutant_dim = commutant_dim(b);
    let k = shape.components();
    let all_equal = k >= 2 && shape.weights().iter().all(|&w| w == shape.weight(0));
    if all_equal {
        if let Ok(split) = equal_weight_split(b) {
            return Ok(IndecomposabilityCertificate {
                verdict: Verdict::Decomposable {
                    method: EvidenceMethod::PhiEigenbasis,
                    first: split.0,
                    second: split.1,
                },
                subbimodules_examined: 0,
                commutant_dim,
            });
        }
    }
    let report = subbimodules_with(b, depth)?;
    let examined = report.subbimodules.len();
    let verdict = if let Some((first, second)) = find_complement(b, &report) {
        Verdict::Decomposable {
            method: EvidenceMethod::ComponentSearch,
            first,
            second,
        }
    } else if shape.has_distinct_weights() {
        Verdict::Indecomposable {
            reason: "distinct weights: every subbimodule is a component sum and none has a complement".into(),
        }
    } else if commutant_dim == 1 {
        Verdict::Indecomposable {
            reason: "commutant is one-dimensional".into(),
        }
    } else {
        Verdict::Inconclusive
    };
    Ok(IndecomposabilityCertificate {
        verdict,
        subbimodules_examined: examined,
        commutant_dim,
    })
}

pub fn is_indecomposable(b: &Bimodule) -> Result<IndecomposabilityCertificate> {
    is_indecomposable_with(b, SearchDepth::Probes)
}

/// Eigen-decomposition of `Φ` with `(I + Φ) Φ = 0`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PhiAnalysis {
    /// Eigenvectors of `Φᵀ` for eigenvalue 0.
    pub kernel: SubspaceQ,
    /// Eigenvectors of `Φᵀ` for eigenvalue −1.
    pub minus_one: SubspaceQ,
}

impl PhiAnalysis {
    /// The full eigenbasis, eigenvalue 0 first.
    pub fn eigenbasis(&self) -> Vec<(Rational, Vec<Rational>)> {
        self.kernel
            .basis()
            .into_iter()
            .map(|v| (Rational::zero(), v))
            .chain(self.minus_one.basis().into_iter().map(|v| (-Rational::one(), v)))
            .collect()
    }
}

pub fn phi_matrix_analysis(phi: &MatrixQ) -> Result<PhiAnalysis> {
    if !phi.is_square() {
        return Err(Error::DimensionMismatch {
            op: "phi_matrix_analysis",
            left: phi.dims(),
            right: phi.dims(),
        });
    }
    let k = phi.rows();
    let test = MatrixQ::identity(k).add(phi)?.mat_mul(phi)?;
    if !test.is_zero() {
        return Err(Error::NotIdempotentType);
    }
    let t = phi.transpose();
    let kernel = eigenspace(&t, &Rational::zero())?;
    let minus_one = eigenspace(&t, &-Rational::one())?;
    if kernel.dim() + minus_one.dim() != k {
        return Err(Error::Inconsistent("Phi is not diagonalizable".into()));
    }
    Ok(PhiAnalysis { kernel, minus_one })
}

/// The bimodule on `k` copies of `V(n)` with `λ_x = Φᵀ ⊗ ρ_x`, i.e.
/// `⟨f, v_i^p⟩ = Σ_q φ^{pq} v_{i+1}^q` and likewise for `h`, `e`.
pub fn equal_weight_bimodule(n: u32, phi: &MatrixQ) -> Result<Bimodule> {
    let k = phi.rows();
    let shape = RightModuleShape::new(vec![n; k])?;
    let single = crate::bimodule::irreducible_rho(n);
    let t = phi.transpose();
    let lambda = [t.kron(&single[0]), t.kron(&single[1]), t.kron(&single[2])];
    Bimodule::with_left_action(shape, lambda)
}

/// Reads `Φ` from an equal-weight bimodule and checks it has the Kronecker
/// form; `None` when it does not.
pub fn extract_phi(b: &Bimodule) -> Option<MatrixQ> {
    let shape = b.shape()?;
    let n = shape.weight(0);
    if shape.weights().iter().any(|&w| w != n) {
        return None;
    }
    let k = shape.components();
    let phi = if n == 0 {
        MatrixQ::zeros(k, k)
    } else {
        let f = b.lambda(Generator::F);
        MatrixQ::from_fn(k, k, |p, q| {
            f[(shape.flatten(q, 1).unwrap(), shape.flatten(p, 0).unwrap())].clone()
        })
    };
    let rebuilt = equal_weight_bimodule(n, &phi).ok()?;
    (rebuilt.lambda_all() == b.lambda_all()).then_some(phi)
}

/// Splits an equal-weight bimodule along the eigenbasis of `Φᵀ`.
pub fn equal_weight_split(b: &Bimodule) -> Result<(SubspaceQ, SubspaceQ)> {
    let shape = require_shape(b)?;
    let phi = extract_phi(b).ok_or_else(|| Error::InvalidShape("not of Kronecker form".into()))?;
    let analysis = phi_matrix_analysis(&phi)?;
    let basis = analysis.eigenbasis();
    if basis.len() < 2 {
        return Err(Error::InvalidShape("a single component cannot split".into()));
    }
    let n = shape.weight(0) as usize;
    let k = shape.components();
    let lift = |xs: &[(Rational, Vec<Rational>)]| -> Result<SubspaceQ> {
        let mut vectors = Vec::new();
        for (_, x) in xs {
            for i in 0..=n {
                let mut v = vec![Rational::zero(); b.dim()];
                for (q, c) in x.iter().enumerate().take(k) {
                    v[shape.flatten(q, i).unwrap()] = c.clone();
                }
                vectors.push(v);
            }
        }
        SubspaceQ::span(b.dim(), &vectors)
    };
    let s = lift(&basis[..1])?;
    let t = lift(&basis[1..])?;
    if !is_complementary_pair(b, &s, &t) {
        return Err(Error::Inconsistent("eigenbasis split is not invariant".into()));
    }
    Ok((s, t))
}

/// The largest antisymmetric subbimodule and the quotient by it.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ExtensionReport {
    pub antisymmetric: SubspaceQ,
    /// Nonincreasing weights of the antisymmetric layer.
    pub antisymmetric_weights: Vec<u32>,
    /// Nonincreasing weights of the quotient.
    pub quotient_weights: Vec<u32>,
    pub quotient_symmetric: bool,
}

pub fn extension_report(b: &Bimodule) -> Result<ExtensionReport> {
    let d = b.dim();
    let stacked = MatrixQ::vstack(&Generator::ALL.map(|g| b.lambda(g).clone()))?;
    let a = nullspace(&stacked);
    let mut a_weights = Vec::new();
    for (m, space) in highest_weight_vectors(b)? {
        let dim = space.intersect(&a)?.dim();
        a_weights.extend(std::iter::repeat_n(m, dim));
    }
    let mut all_weights = Vec::new();
    for (m, space) in highest_weight_vectors(b)? {
        all_weights.extend(std::iter::repeat_n(m, space.dim()));
    }
    let mut quotient_weights = all_weights.clone();
    for w in &a_weights {
        let pos = quotient_weights
            .iter()
            .position(|x| x == w)
            .ok_or_else(|| Error::Inconsistent("antisymmetric layer weight not in module".into()))?;
        quotient_weights.remove(pos);
    }
    let quotient_symmetric = Generator::ALL.iter().all(|&g| {
        let sum = b.lambda(g).add(b.rho(g)).expect("square");
        (0..d).all(|c| a.contains(&sum.column(c)))
    });
    Ok(ExtensionReport {
        antisymmetric: a,
        antisymmetric_weights: a_weights,
        quotient_weights,
        quotient_symmetric,
    })
}

/// Per-component scalars `s` with `diag(s)⁻¹ λ_a diag(s) = λ_b` when both
/// share the same canonical right module.
pub fn diagonal_isomorphism(a: &Bimodule, b: &Bimodule) -> Option<Vec<Rational>> {
    let shape = a.shape()?;
    if b.shape() != Some(shape) {
        return None;
    }
    let k = shape.components();
    let mut s: Vec<Option<Rational>> = vec![None; k];
    let block_ratio = |q: usize, p: usize| -> Option<Option<Rational>> {
        // Some(None): both blocks zero. None: incompatible support.
        let mut ratio: Option<Rational> = None;
        for g in Generator::ALL {
            let (la, lb) = (a.lambda(g), b.lambda(g));
            for r in shape.component_range(q) {
                for c in shape.component_range(p) {
                    let (x, y) = (&la[(r, c)], &lb[(r, c)]);
                    match (x.is_zero(), y.is_zero()) {
                        (true, true) => {}
                        (false, false) => {
                            let rr = y.clone() / x.clone();
                            if ratio.get_or_insert_with(|| rr.clone()) != &rr {
                                return None;
                            }
                        }
                        _ => return None,
                    }
                }
            }
        }
        Some(ratio)
    };
    let mut ratios = vec![vec![None; k]; k];
    for q in 0..k {
        for p in 0..k {
            ratios[q][p] = block_ratio(q, p)?;
        }
    }
    for start in 0..k {
        if s[start].is_some() {
            continue;
        }
        s[start] = Some(Rational::one());
        let mut queue = VecDeque::from([start]);
        while let Some(u) = queue.pop_front() {
            let su = s[u].clone().unwrap();
            for w in 0..k {
                // block (q, p) scales by s_p / s_q
                let next = if let Some(r) = &ratios[w][u] {
                    Some(su.clone() / r.clone())
                } else {
                    ratios[u][w].as_ref().map(|r| su.clone() * r)
                };
                if let (Some(val), None) = (next, &s[w]) {
                    s[w] = Some(val);
                    queue.push_back(w);
                }
            }
        }
    }
    let s: Vec<Rational> = s.into_iter().map(Option::unwrap).collect();
    let p = MatrixQ::diagonal(
        &(0..b.dim())
            .map(|i| s[shape.unflatten(i).unwrap().0].clone())
            .collect::<Vec<_>>(),
    );
    let moved = a.change_of_basis(&p).ok()?;
    (moved == *b).then_some(s)
}

/// Weights of an isotypic right module spanned by `s`, read from
/// highest-weight vectors; used to describe layers.
pub fn subspace_weights(b: &Bimodule, s: &SubspaceQ) -> Result<Vec<u32>> {
    let mut out = Vec::new();
    for (m, space) in highest_weight_vectors(b)? {
        out.extend(std::iter::repeat_n(m, space.intersect(s)?.dim()));
    }
    Ok(out)
}

/// `true` when the right action is in the standard block form of `shape`.
pub fn has_standard_right_action(b: &Bimodule, shape: &RightModuleShape) -> bool {
    shape.total_dim() == b.dim() && shape_rho(shape) == *b.rho_all()
}

/// The `k×k` matrices used as equal-weight test cases: solutions of
/// `(I + Φ) Φ = 0`, several of them not diagonal.
pub fn sample_phi_matrices() -> Vec<MatrixQ> {
    let m = |rows: &[&[i64]]| {
        MatrixQ::from_rows(rows.iter().map(|r| r.iter().map(|&x| int(x)).collect()).collect())
            .expect("rectangular")
    };
    let conj = |d: &MatrixQ, p: &MatrixQ| {
        let inv = p.inverse().expect("invertible");
        d.conjugate(p, &inv).expect("square")
    };
    vec![
        m(&[&[0, 0], &[1, -1]]),
        m(&[&[-1, 1], &[0, 0]]),
        m(&[&[0, 0], &[0, -1]]),
        conj(&m(&[&[0, 0], &[0, -1]]), &m(&[&[1, 2], &[1, 3]])),
        m(&[&[-1, 0, 0], &[0, 0, 0], &[0, 0, -1]]),
        conj(
            &m(&[&[0, 0, 0], &[0, -1, 0], &[0, 0, -1]]),
            &m(&[&[1, 1, 0], &[0, 1, 1], &[1, 0, 2]]),
        ),
        conj(
            &m(&[&[0, 0, 0], &[0, 0, 0], &[0, 0, -1]]),
            &m(&[&[2, 0, 1], &[1, 1, 0], &[0, 3, 1]]),
        ),
    ]
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::classify::families::{make_case1, make_case2};

    fn sym(n: u32) -> Bimodule {
        Bimodule::make_right_irreducible(n).symmetrize().unwrap()
    }

    fn antisym(n: u32) -> Bimodule {
        Bimodule::make_right_irreducible(n)
    }

    #[test]
    fn simple_bimodules_have_trivial_lattice() {
        for n in [0, 1, 3] {
            let r = subbimodules(&sym(n)).unwrap();
            assert_eq!(r.subbimodules.len(), 2);
            assert!(r.is_chain());
            let c = is_indecomposable(&sym(n)).unwrap();
            assert!(c.is_indecomposable());
            assert_eq!(c.commutant_dim, 1);
        }
    }

    #[test]
    fn case1_k2_has_one_proper_subbimodule() {
        let b = make_case1(4, 2).unwrap();
        let r = subbimodules(&b).unwrap();
        let proper: Vec<_> = r.proper_nonzero().collect();
        assert_eq!(proper.len(), 1);
        assert_eq!(proper[0].components, Some(vec![0]));
        let e = extension_report(&b).unwrap();
        assert_eq!(e.antisymmetric_weights, vec![4]);
        assert_eq!(e.quotient_weights, vec![2]);
        assert!(e.quotient_symmetric);
    }

    #[test]
    fn sum_of_distinct_simples() {
        let b = sym(4).direct_sum(&antisym(2));
        let r = subbimodules(&b).unwrap();
        let comps: Vec<_> = r.proper_nonzero().map(|s| s.components.clone().unwrap()).collect();
        assert_eq!(comps, vec![vec![1], vec![0]]);
        let c = is_indecomposable(&b).unwrap();
        assert!(c.is_decomposable());
        assert!(c.evidence_is_valid(&b));
    }

    #[test]
    fn equal_weight_sum_is_decomposable() {
        let b = sym(2).direct_sum(&antisym(2));
        let c = is_indecomposable(&b).unwrap();
        assert!(c.is_decomposable());
        assert!(c.evidence_is_valid(&b));
        assert_eq!(c.commutant_dim, 2);
    }

    #[test]
    fn phi_analysis_examples() {
        let z = phi_matrix_analysis(&MatrixQ::zeros(2, 2)).unwrap();
        assert_eq!((z.kernel.dim(), z.minus_one.dim()), (2, 0));
        let m = phi_matrix_analysis(&MatrixQ::scalar(3, int(-1))).unwrap();
        assert_eq!((m.kernel.dim(), m.minus_one.dim()), (0, 3));
        assert_eq!(
            phi_matrix_analysis(&MatrixQ::identity(2)),
            Err(Error::NotIdempotentType)
        );
    }

    #[test]
    fn non_diagonal_phi_splits() {
        for phi in sample_phi_matrices() {
            let b = equal_weight_bimodule(2, &phi).unwrap();
            assert!(b.verify_axioms().pass);
            assert_eq!(extract_phi(&b), Some(phi.clone()));
            let c = is_indecomposable(&b).unwrap();
            assert!(matches!(
                c.verdict,
                Verdict::Decomposable { method: EvidenceMethod::PhiEigenbasis, .. }
            ));
            assert!(c.evidence_is_valid(&b));
        }
    }

    #[test]
    fn families_have_scalar_commutant() {
        assert_eq!(commutant_dim(&make_case1(6, 3).unwrap()), 1);
        let c = is_indecomposable(&make_case2(5, 2).unwrap()).unwrap();
        assert!(c.is_indecomposable());
    }

    #[test]
    fn diagonal_rescaling_is_detected() {
        let b = make_case1(6, 3).unwrap();
        let s = b.shape().unwrap().clone();
        let scales = [int(1), int(3), crate::rational::frac(-1, 2)];
        let p = MatrixQ::diagonal(
            &(0..b.dim()).map(|i| scales[s.unflatten(i).unwrap().0].clone()).collect::<Vec<_>>(),
        );
        let moved = b.change_of_basis(&p).unwrap().with_shape(s).unwrap();
        assert_ne!(moved, b);
        let found = diagonal_isomorphism(&b, &moved).unwrap();
        assert_eq!(found, scales.to_vec());
        assert!(diagonal_isomorphism(&b, &make_case2(6, 3).unwrap()).is_none());
    }

    #[test]
    fn closure_of_top_vector_in_case2() {
        let b = make_case2(4, 2).unwrap();
        let s = closure(&b, &[unit(8, 0)]);
        assert!(s.is_full());
        let s = closure(&b, &[unit(8, 5)]);
        assert_eq!(s.dim(), 3);
    }
}
