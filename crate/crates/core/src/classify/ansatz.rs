//! Left actions compatible with a fixed right module: the weight-restricted
//! ansatz, the linear solver for relation (6), and the pairwise projection
//! check.

use std::collections::{BTreeMap, HashMap};

use num_traits::{One, Zero};
use serde::Serialize;

use crate::bimodule::{shape_rho, Bimodule, Relation, RightModuleShape, VerificationReport};
use crate::error::{Error, Result};
use crate::linalg::{SparseEchelon, SparseRow};
use crate::rational::{named_rationals, Rational};
use crate::sl2::{bracket_basis, Generator};
use crate::MatrixQ;

/// One coefficient of the left action: `λ_generator` sends basis vector
/// `source = (p, i)` to a multiple of `target = (q, j)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct Unknown {
    pub generator: Generator,
    pub source: (usize, usize),
    pub target: (usize, usize),
}

impl Unknown {
    fn symbol(&self) -> &'static str {
        match self.generator {
            Generator::H => "eta",
            Generator::F => "phi",
            Generator::E => "eps",
        }
    }

    /// `phi^{12}_0` style label with one-based components.
    pub fn label(&self) -> String {
        format!(
            "{}^{{{}{}}}_{}",
            self.symbol(),
            self.source.0 + 1,
            self.target.0 + 1,
            self.source.1
        )
    }
}

/// `(n_p − n_q) / 2` when it is an integer.
pub fn block_offset(shape: &RightModuleShape, p: usize, q: usize) -> Option<i64> {
    let diff = i64::from(shape.weight(p)) - i64::from(shape.weight(q));
    (diff % 2 == 0).then_some(diff / 2)
}

/// Every coefficient allowed by the weight grading.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LeftActionAnsatz {
    shape: RightModuleShape,
    unknowns: Vec<Unknown>,
    index: HashMap<Unknown, usize>,
}

impl LeftActionAnsatz {
    pub fn shape(&self) -> &RightModuleShape {
        &self.shape
    }

    pub fn unknowns(&self) -> &[Unknown] {
        &self.unknowns
    }

    pub fn len(&self) -> usize {
        self.unknowns.len()
    }

    pub fn is_empty(&self) -> bool {
        self.unknowns.is_empty()
    }

    pub fn index_of(&self, u: &Unknown) -> Option<usize> {
        self.index.get(u).copied()
    }

    /// The unknown for `λ_g` from `(p, i)` into component `q`, if allowed.
    pub fn find(&self, g: Generator, p: usize, q: usize, i: usize) -> Option<usize> {
        let l = block_offset(&self.shape, p, q)?;
        let shift = match g {
            Generator::H => -l,
            Generator::F => 1 - l,
            Generator::E => -1 - l,
        };
        let j = i as i64 + shift;
        if j < 0 {
            return None;
        }
        self.index_of(&Unknown {
            generator: g,
            source: (p, i),
            target: (q, j as usize),
        })
    }

    /// Matrix position `(row, col)` of an unknown.
    pub fn position(&self, u: &Unknown) -> (usize, usize) {
        let s = &self.shape;
        (
            s.flatten(u.target.0, u.target.1).expect("valid target"),
            s.flatten(u.source.0, u.source.1).expect("valid source"),
        )
    }

    /// Left-action matrices with the given value for each unknown.
    pub fn assemble(&self, values: &[Rational]) -> [MatrixQ; 3] {
        let d = self.shape.total_dim();
        let mut out = [MatrixQ::zeros(d, d), MatrixQ::zeros(d, d), MatrixQ::zeros(d, d)];
        for (u, v) in self.unknowns.iter().zip(values) {
            if !v.is_zero() {
                let pos = self.position(u);
                out[u.generator.index()][pos] = v.clone();
            }
        }
        out
    }

    /// Reads the ansatz coordinates of `lambda`; `None` when `lambda` has a
    /// nonzero entry outside the ansatz support.
    pub fn coordinates(&self, lambda: &[MatrixQ; 3]) -> Option<Vec<Rational>> {
        let values: Vec<Rational> = self
            .unknowns
            .iter()
            .map(|u| lambda[u.generator.index()][self.position(u)].clone())
            .collect();
        (self.assemble(&values) == *lambda).then_some(values)
    }
}

/// Unknowns `η`, `φ`, `ε` for every block whose offset `l_pq` is an integer
/// and whose target index lies in range.
pub fn build_ansatz(shape: &RightModuleShape) -> LeftActionAnsatz {
    let k = shape.components();
    let mut unknowns = Vec::new();
    for p in 0..k {
        for i in 0..=shape.weight(p) as i64 {
            for g in [Generator::H, Generator::F, Generator::E] {
                for q in 0..k {
                    let Some(l) = block_offset(shape, p, q) else {
                        continue;
                    };
                    let j = match g {
                        Generator::H => i - l,
                        Generator::F => i + 1 - l,
                        Generator::E => i - 1 - l,
                    };
                    if (0..=i64::from(shape.weight(q))).contains(&j) {
                        unknowns.push(Unknown {
                            generator: g,
                            source: (p, i as usize),
                            target: (q, j as usize),
                        });
                    }
                }
            }
        }
    }
    unknowns.sort();
    let index = unknowns.iter().enumerate().map(|(i, u)| (*u, i)).collect();
    LeftActionAnsatz {
        shape: shape.clone(),
        unknowns,
        index,
    }
}

/// A free parameter of the solution space and the unknown it equals.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Parameter {
    pub name: String,
    pub unknown: Unknown,
}

/// The general solution of relation (6): each unknown as a linear form in
/// the parameters.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LeftActionSolution {
    ansatz: LeftActionAnsatz,
    parameters: Vec<Parameter>,
    /// One row per unknown, one column per parameter.
    expressions: Vec<Vec<Rational>>,
}

impl LeftActionSolution {
    pub fn ansatz(&self) -> &LeftActionAnsatz {
        &self.ansatz
    }

    pub fn shape(&self) -> &RightModuleShape {
        self.ansatz.shape()
    }

    pub fn parameters(&self) -> &[Parameter] {
        &self.parameters
    }

    pub fn parameter_count(&self) -> usize {
        self.parameters.len()
    }

    pub fn parameter_names(&self) -> Vec<String> {
        self.parameters.iter().map(|p| p.name.clone()).collect()
    }

    pub fn parameter_index(&self, name: &str) -> Option<usize> {
        self.parameters.iter().position(|p| p.name == name)
    }

    pub fn expression(&self, unknown: usize) -> &[Rational] {
        &self.expressions[unknown]
    }

    /// Unknown values for a parameter assignment.
    pub fn unknown_values(&self, params: &[Rational]) -> Vec<Rational> {
        self.expressions
            .iter()
            .map(|row| {
                row.iter()
                    .zip(params)
                    .filter(|(c, t)| !c.is_zero() && !t.is_zero())
                    .fold(Rational::zero(), |acc, (c, t)| acc + c * t)
            })
            .collect()
    }

    pub fn instantiate(&self, params: &[Rational]) -> Result<[MatrixQ; 3]> {
        if params.len() != self.parameter_count() {
            return Err(Error::DimensionMismatch {
                op: "instantiate",
                left: (params.len(), 1),
                right: (self.parameter_count(), 1),
            });
        }
        Ok(self.ansatz.assemble(&self.unknown_values(params)))
    }

    /// Instantiates from named values; unnamed parameters are zero and names
    /// not present in this solution are ignored.
    pub fn instantiate_named(&self, values: &BTreeMap<String, Rational>) -> [MatrixQ; 3] {
        let params: Vec<Rational> = self
            .parameters
            .iter()
            .map(|p| values.get(&p.name).cloned().unwrap_or_else(Rational::zero))
            .collect();
        self.ansatz.assemble(&self.unknown_values(&params))
    }

    /// The left action obtained by setting parameter `a` to one and every
    /// other parameter to zero.
    pub fn basis_action(&self, a: usize) -> [MatrixQ; 3] {
        let mut params = vec![Rational::zero(); self.parameter_count()];
        params[a] = Rational::one();
        self.ansatz.assemble(&self.unknown_values(&params))
    }

    /// Parameter values of `lambda` if it belongs to the solution space.
    pub fn parameters_of(&self, lambda: &[MatrixQ; 3]) -> Option<Vec<Rational>> {
        let coords = self.ansatz.coordinates(lambda)?;
        let params: Vec<Rational> = self
            .parameters
            .iter()
            .map(|p| coords[self.ansatz.index_of(&p.unknown).expect("parameter unknown")].clone())
            .collect();
        (self.unknown_values(&params) == coords).then_some(params)
    }
}

/// Linear equations of relation (6) over the ansatz, one per nonzero matrix
/// entry of `λ_[x,y] − ρ_y λ_x + λ_x ρ_y`.
pub fn linear_system(ansatz: &LeftActionAnsatz) -> Vec<SparseRow<Rational>> {
    let rho = shape_rho(ansatz.shape());
    let mut eqs: BTreeMap<(usize, usize, usize), SparseRow<Rational>> = BTreeMap::new();
    let mut add = |key: (usize, usize, usize), col: usize, v: Rational| {
        let row = eqs.entry(key).or_default();
        let e = row.remove(&col).unwrap_or_else(Rational::zero) + v;
        if !e.is_zero() {
            row.insert(col, e);
        }
    };
    let d = ansatz.shape().total_dim();
    for (idx, u) in ansatz.unknowns().iter().enumerate() {
        let (row, col) = ansatz.position(u);
        for (pair, (x, y)) in Generator::pairs().enumerate() {
            let c = bracket_basis(x, y).coeff(u.generator).clone();
            if !c.is_zero() {
                add((pair, row, col), idx, c);
            }
            if u.generator == x {
                let ry = &rho[y.index()];
                for r in 0..d {
                    if !ry[(r, row)].is_zero() {
                        add((pair, r, col), idx, -ry[(r, row)].clone());
                    }
                }
                for c in 0..d {
                    if !ry[(col, c)].is_zero() {
                        add((pair, row, c), idx, ry[(col, c)].clone());
                    }
                }
            }
        }
    }
    eqs.into_values().filter(|r| !r.is_empty()).collect()
}

fn parameter_candidates(ansatz: &LeftActionAnsatz) -> Vec<(usize, usize, usize)> {
    let shape = ansatz.shape();
    let k = shape.components();
    let mut out = Vec::new();
    for p in 0..k {
        for q in 0..k {
            if !matches!(block_offset(shape, p, q), Some(l) if l.abs() <= 1) {
                continue;
            }
            if let Some(u) = (0..=shape.weight(p) as usize).find_map(|i| ansatz.find(Generator::F, p, q, i)) {
                out.push((p, q, u));
            }
        }
    }
    out
}

/// General solution of relation (6) for the given right module.
///
/// Parameters are the `f`-coefficients `φ^{pq}` at the lowest source index
/// of each block with `|l_pq| ≤ 1`; they are named `phi_p_q` (one-based),
/// or `psi1`…`psi4` for two equal weights.
pub fn solve_left_linear(shape: &RightModuleShape) -> Result<LeftActionSolution> {
    let ansatz = build_ansatz(shape);
    let mut ech = SparseEchelon::new(ansatz.len());
    for row in linear_system(&ansatz) {
        ech.insert(row);
    }
    let basis = ech.nullspace_basis();
    let n = basis.len();

    let mut chosen: Vec<(String, usize)> = Vec::new();
    let mut selected = SparseEchelon::<Rational>::new(n);
    let mut try_pick = |name: String, u: usize, chosen: &mut Vec<(String, usize)>| {
        if chosen.len() < n && selected.insert(basis.iter().enumerate().map(|(a, v)| (a, v[u].clone()))) {
            chosen.push((name, u));
        }
    };
    for (p, q, u) in parameter_candidates(&ansatz) {
        try_pick(format!("phi_{}_{}", p + 1, q + 1), u, &mut chosen);
    }
    for u in 0..ansatz.len() {
        try_pick(ansatz.unknowns()[u].label(), u, &mut chosen);
    }
    if chosen.len() != n {
        return Err(Error::Inconsistent(format!(
            "could not choose {n} independent parameters for shape {shape}"
        )));
    }
    let psi = shape.components() == 2
        && shape.weight(0) == shape.weight(1)
        && ["phi_1_1", "phi_1_2", "phi_2_1", "phi_2_2"]
            .iter()
            .zip(&chosen)
            .filter(|(a, b)| **a == b.0)
            .count()
            == 4
        && n == 4;
    if psi {
        for (i, c) in chosen.iter_mut().enumerate() {
            c.0 = format!("psi{}", i + 1);
        }
    }

    // Re-express the kernel basis so parameter a is 1 at its own unknown.
    let s = MatrixQ::from_fn(n, n, |r, c| basis[c][chosen[r].1].clone());
    let s_inv = s.inverse()?;
    let b = MatrixQ::from_fn(ansatz.len(), n, |r, c| basis[c][r].clone());
    let normalized = b.mat_mul(&s_inv)?;
    let expressions = normalized.to_rows();
    let parameters = chosen
        .into_iter()
        .map(|(name, u)| Parameter {
            name,
            unknown: ansatz.unknowns()[u],
        })
        .collect();
    Ok(LeftActionSolution {
        ansatz,
        parameters,
        expressions,
    })
}

#[derive(Serialize)]
struct UnknownJson {
    label: String,
    generator: Generator,
    source: (usize, usize),
    target: (usize, usize),
    expression: BTreeMap<String, String>,
}

#[derive(Serialize)]
struct SolutionJson {
    shape: RightModuleShape,
    parameters: Vec<String>,
    unknowns: Vec<UnknownJson>,
}

impl Serialize for LeftActionSolution {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let names = self.parameter_names();
        let unknowns = self
            .ansatz
            .unknowns()
            .iter()
            .zip(&self.expressions)
            .map(|(u, row)| UnknownJson {
                label: u.label(),
                generator: u.generator,
                source: u.source,
                target: u.target,
                expression: names
                    .iter()
                    .zip(row)
                    .filter(|(_, c)| !c.is_zero())
                    .map(|(n, c)| (n.clone(), crate::rational::format_rational(c)))
                    .collect(),
            })
            .collect();
        SolutionJson {
            shape: self.shape().clone(),
            parameters: names,
            unknowns,
        }
        .serialize(s)
    }
}

/// Which of the two-component solution families a projection falls into.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ProjectionPattern {
    /// `i = j`: a single irreducible.
    Single,
    /// Equal weights (four parameters).
    EqualWeights,
    /// Weights differing by two (four parameters, shifted indices).
    Adjacent,
    /// Even gap of at least four (diagonal scalars only).
    Separated,
    /// Odd gap: no cross-block coefficients.
    HalfInteger,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ProjectionReport {
    pub components: (usize, usize),
    pub pattern: ProjectionPattern,
    /// Relation (6) for the projected left action; relation (7) is not
    /// expected to survive projection and is not included.
    pub relation_6: VerificationReport,
    pub in_solution_space: bool,
    #[serde(with = "named_rationals")]
    pub parameters: Vec<(String, Rational)>,
    pub pass: bool,
}

/// Projects `λ` onto components `i`, `j` (zero-based, `i ≤ j`) and checks it
/// against the two-component solution of relation (6).
pub fn projection_check(b: &Bimodule, i: usize, j: usize) -> Result<ProjectionReport> {
    let shape = b
        .shape()
        .ok_or_else(|| Error::InvalidShape("projection needs canonical right form".into()))?;
    let (i, j) = (i.min(j), i.max(j));
    if j >= shape.components() {
        return Err(Error::InvalidShape(format!(
            "component {j} out of range for shape {shape}"
        )));
    }
    let comps: Vec<usize> = if i == j { vec![i] } else { vec![i, j] };
    let idx: Vec<usize> = comps.iter().flat_map(|&c| shape.component_range(c)).collect();
    let sub_shape = RightModuleShape::new(comps.iter().map(|&c| shape.weight(c)).collect())?;
    let lambda = Generator::ALL.map(|g| b.lambda(g).submatrix(&idx, &idx));
    let projected = Bimodule::with_left_action(sub_shape.clone(), lambda.clone())?;
    let full = projected.verify_axioms();
    let relation_6 = VerificationReport {
        violations: full
            .violations
            .into_iter()
            .filter(|v| matches!(v.equation, Relation::Rho | Relation::LambdaRho))
            .collect(),
        pass: false,
    };
    let relation_6 = VerificationReport {
        pass: relation_6.violations.is_empty(),
        ..relation_6
    };
    let solution = solve_left_linear(&sub_shape)?;
    let values = solution.parameters_of(&lambda);
    let pattern = if i == j {
        ProjectionPattern::Single
    } else {
        match block_offset(&sub_shape, 0, 1) {
            None => ProjectionPattern::HalfInteger,
            Some(0) => ProjectionPattern::EqualWeights,
            Some(1) => ProjectionPattern::Adjacent,
            Some(_) => ProjectionPattern::Separated,
        }
    };
    let parameters = values
        .as_ref()
        .map(|v| solution.parameter_names().into_iter().zip(v.iter().cloned()).collect())
        .unwrap_or_default();
    Ok(ProjectionReport {
        components: (i, j),
        pattern,
        pass: relation_6.pass && values.is_some(),
        relation_6,
        in_solution_space: values.is_some(),
        parameters,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::int;

    fn shape(w: &[u32]) -> RightModuleShape {
        RightModuleShape::new(w.to_vec()).unwrap()
    }

    #[test]
    fn half_integer_gap_has_no_cross_unknowns() {
        let a = build_ansatz(&shape(&[3, 2]));
        assert!(a.unknowns().iter().all(|u| u.source.0 == u.target.0));
    }

    #[test]
    fn single_block_unknown_count() {
        // h: n+1, f: n, e: n coefficients survive range trimming.
        let a = build_ansatz(&shape(&[4]));
        assert_eq!(a.len(), 5 + 4 + 4);
    }

    #[test]
    fn adjacent_blocks_shift_indices() {
        let s = shape(&[4, 2]);
        let a = build_ansatz(&s);
        assert_eq!(block_offset(&s, 0, 1), Some(1));
        assert_eq!(block_offset(&s, 1, 0), Some(-1));
        let u = a.unknowns()[a.find(Generator::F, 1, 0, 0).unwrap()];
        assert_eq!(u.target, (0, 2));
        let u = a.unknowns()[a.find(Generator::F, 0, 1, 0).unwrap()];
        assert_eq!(u.target, (1, 0));
        assert!(a.find(Generator::F, 0, 1, 3).is_none());
    }

    #[test]
    fn parameter_counts() {
        let count = |w: &[u32]| solve_left_linear(&shape(w)).unwrap().parameter_count();
        assert_eq!(count(&[0]), 0);
        assert_eq!(count(&[3]), 1);
        assert_eq!(count(&[3, 3]), 4);
        assert_eq!(count(&[0, 0]), 0);
        assert_eq!(count(&[5, 3]), 4);
        assert_eq!(count(&[2, 0]), 3);
        assert_eq!(count(&[6, 2]), 2);
        assert_eq!(count(&[4, 0]), 1);
        assert_eq!(count(&[5, 2]), 2);
        assert_eq!(count(&[4, 2, 0]), (1 + 1 + 2 + 2));
    }

    #[test]
    fn equal_weight_parameter_names() {
        let s = solve_left_linear(&shape(&[2, 2])).unwrap();
        assert_eq!(s.parameter_names(), vec!["psi1", "psi2", "psi3", "psi4"]);
        let s = solve_left_linear(&shape(&[4, 2])).unwrap();
        assert_eq!(s.parameter_names(), vec!["phi_1_1", "phi_1_2", "phi_2_1", "phi_2_2"]);
    }

    #[test]
    fn single_block_is_multiple_of_right_action() {
        let s = solve_left_linear(&shape(&[3])).unwrap();
        let l = s.instantiate(&[int(-1)]).unwrap();
        let rho = shape_rho(&shape(&[3]));
        for g in 0..3 {
            assert_eq!(l[g], rho[g].neg());
        }
    }

    #[test]
    fn equal_weight_solution_matches_kronecker_form() {
        // ⟨f,v_i⟩ = ψ1 v_{i+1} + ψ2 w_{i+1}, ⟨h,w_i⟩ = (n−2i)(ψ3 v_i + ψ4 w_i)
        let s = solve_left_linear(&shape(&[2, 2])).unwrap();
        let l = s.instantiate(&[int(1), int(2), int(3), int(4)]).unwrap();
        let f = &l[Generator::F.index()];
        assert_eq!(f[(1, 0)], int(1));
        assert_eq!(f[(4, 0)], int(2));
        let h = &l[Generator::H.index()];
        assert_eq!(h[(0, 3)], int(2 * 3));
        assert_eq!(h[(3, 3)], int(2 * 4));
        assert_eq!(h[(4, 4)], int(0));
        let e = &l[Generator::E.index()];
        // ⟨e,v_1⟩ = −1·2·(ψ1 v_0 + ψ2 w_0)
        assert_eq!(e[(0, 1)], int(-2));
        assert_eq!(e[(3, 1)], int(-4));
    }

    #[test]
    fn adjacent_solution_matches_closed_form() {
        // Larger weight n = 4 (v), smaller m = 2 (w), φ^{12} on v, φ^{21} on w.
        let s = solve_left_linear(&shape(&[4, 2])).unwrap();
        let l = s.instantiate(&[int(0), int(1), int(0), int(0)]).unwrap();
        let (h, f, e) = (&l[2], &l[1], &l[0]);
        // ⟨f,v_i⟩ = φ^{12} w_i, ⟨h,v_i⟩ = −2i φ^{12} w_{i−1}, ⟨e,v_i⟩ = i(i−1) φ^{12} w_{i−2}
        for i in 0..=2usize {
            assert_eq!(f[(5 + i, i)], int(1));
        }
        assert_eq!(h[(5, 1)], int(-2));
        assert_eq!(h[(6, 2)], int(-4));
        assert_eq!(e[(5, 2)], int(2));
        assert_eq!(e[(6, 3)], int(6));

        // ⟨f,w_i⟩ = φ^{21} v_{i+2}, ⟨h,w_i⟩ = 2(m−i+1) φ^{21} v_{i+1},
        // ⟨e,w_i⟩ = (m−i+1)(m−i+2) φ^{21} v_i
        let l = s.instantiate(&[int(0), int(0), int(1), int(0)]).unwrap();
        let (h, f, e) = (&l[2], &l[1], &l[0]);
        let m = 2i64;
        for i in 0..=2usize {
            let ii = i as i64;
            assert_eq!(f[(i + 2, 5 + i)], int(1));
            assert_eq!(h[(i + 1, 5 + i)], int(2 * (m - ii + 1)));
            assert_eq!(e[(i, 5 + i)], int((m - ii + 1) * (m - ii + 2)));
        }

        // ⟨h,w_i⟩ has (m−2i)φ^{22} and ⟨e,w_i⟩ has −i(m−i+1)φ^{22}.
        let l = s.instantiate(&[int(0), int(0), int(0), int(1)]).unwrap();
        assert_eq!(l[2][(6, 6)], int(0));
        assert_eq!(l[0][(5, 6)], int(-2));
    }

    #[test]
    fn every_instance_satisfies_relation_6() {
        for w in [vec![3, 3], vec![4, 2], vec![6, 2], vec![5, 3, 1], vec![2, 2, 0]] {
            let sh = shape(&w);
            let s = solve_left_linear(&sh).unwrap();
            let params: Vec<Rational> = (0..s.parameter_count()).map(|a| int(a as i64 - 1)).collect();
            let b = Bimodule::with_left_action(sh, s.instantiate(&params).unwrap()).unwrap();
            let bad: Vec<_> = b
                .verify_axioms()
                .violations
                .into_iter()
                .filter(|v| v.equation != Relation::LambdaSum)
                .collect();
            assert!(bad.is_empty(), "shape {w:?}");
            assert_eq!(s.parameters_of(b.lambda_all()), Some(params));
        }
    }

    #[test]
    fn projection_of_direct_sum() {
        let b = Bimodule::make_right_irreducible(4)
            .symmetrize()
            .unwrap()
            .direct_sum(&Bimodule::make_right_irreducible(2));
        let r = projection_check(&b, 0, 1).unwrap();
        assert!(r.pass);
        assert_eq!(r.pattern, ProjectionPattern::Adjacent);
        assert_eq!(r.parameters[0], ("phi_1_1".to_string(), int(-1)));
        assert_eq!(projection_check(&b, 1, 1).unwrap().pattern, ProjectionPattern::Single);
    }
}
