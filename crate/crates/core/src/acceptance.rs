//! The acceptance suite: eight criteria, each reported as a list of named
//! checks. Used by `leibrep selftest` and by the integration tests.

use std::collections::BTreeSet;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::bimodule::{Bimodule, RightModuleShape};
use crate::classify::families::{ladders, make_family};
use crate::classify::lattice::{
    equal_weight_bimodule, sample_phi_matrices, EvidenceMethod,
};
use crate::classify::quadratic::ladder_reference_equations;
use crate::classify::ladder::enumerate_ladder;
use crate::classify::{
    diagonal_isomorphism, extension_report, is_indecomposable, quadratic_system,
    solve_left_linear, subbimodules, LadderFamily, Verdict,
};
use crate::decomposition::{decompose_right, canonical_right_form};
use crate::error::Result;
use crate::oracle::compare_counts;
use crate::rational::{int, Rational};
use crate::{MatrixQ, SubspaceQ};

/// Wall-clock budget for criterion 1.
pub const AXIOM_SUITE_BUDGET: Duration = Duration::from_secs(10);
/// Largest dimension checked on every basis triple of the square-zero algebra.
pub const FULL_TRIPLE_MAX_DIM: usize = 20;
/// Fraction of triples sampled above that dimension, in percent.
pub const SAMPLED_TRIPLE_PERCENT: usize = 10;
pub const MUTATION_CASES: usize = 50;

#[derive(Clone, Debug)]
pub struct AcceptanceConfig {
    /// Upper bound on `n`; each criterion also applies its own cap.
    pub max_n: u32,
    pub seed: u64,
}

impl Default for AcceptanceConfig {
    fn default() -> Self {
        AcceptanceConfig { max_n: 10, seed: 0x5eed_0001 }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CriterionOutcome {
    pub id: u8,
    pub title: &'static str,
    pub passed: bool,
    pub checks: Vec<Check>,
}

impl CriterionOutcome {
    fn new(id: u8, title: &'static str, checks: Vec<Check>) -> Self {
        let passed = checks.iter().all(|c| c.passed);
        CriterionOutcome { id, title, passed, checks }
    }

    pub fn check(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }

    /// One-line summary: `criterion 3 PASS decomposition (…)`.
    pub fn summary_line(&self) -> String {
        let failed: Vec<&str> = self
            .checks
            .iter()
            .filter(|c| !c.passed)
            .map(|c| c.name.as_str())
            .collect();
        let status = if self.passed { "PASS" } else { "FAIL" };
        if failed.is_empty() {
            format!("criterion {} {status} {}", self.id, self.title)
        } else {
            format!("criterion {} {status} {} (failed: {})", self.id, self.title, failed.join(", "))
        }
    }
}

fn check(name: &str, failures: &[String], total: usize) -> Check {
    let detail = if failures.is_empty() {
        format!("{total} cases")
    } else {
        let shown: Vec<&str> = failures.iter().take(5).map(String::as_str).collect();
        format!("{} of {total} failed: {}", failures.len(), shown.join("; "))
    };
    Check {
        name: name.to_string(),
        passed: failures.is_empty(),
        detail,
    }
}

fn sym(n: u32) -> Result<Bimodule> {
    Bimodule::make_right_irreducible(n).symmetrize()
}

fn antisym(n: u32) -> Bimodule {
    Bimodule::make_right_irreducible(n)
}

/// The objects of criterion 1 with a label each.
pub fn axiom_suite(max_n: u32) -> Result<Vec<(String, Bimodule)>> {
    let mut out = Vec::new();
    for n in 0..=max_n {
        out.push((format!("sym V({n})"), sym(n)?));
        out.push((format!("antisym V({n})"), antisym(n)));
    }
    for (n, k) in ladders(max_n, 1) {
        for fam in [LadderFamily::Case1, LadderFamily::Case2] {
            out.push((format!("{fam:?}({n},{k})"), make_family(fam, n, k)?));
        }
    }
    Ok(out)
}

pub fn criterion_1(cfg: &AcceptanceConfig) -> Result<CriterionOutcome> {
    let start = Instant::now();
    let suite = axiom_suite(cfg.max_n)?;
    let failures: Vec<String> = suite
        .iter()
        .filter(|(_, b)| !b.verify_axioms().pass)
        .map(|(l, _)| l.clone())
        .collect();
    let elapsed = start.elapsed();
    Ok(CriterionOutcome::new(
        1,
        "axiom suite",
        vec![
            check("verify_axioms", &failures, suite.len()),
            Check {
                name: "runtime".into(),
                passed: elapsed <= AXIOM_SUITE_BUDGET,
                detail: format!("{:.2?} (budget {:?})", elapsed, AXIOM_SUITE_BUDGET),
            },
        ],
    ))
}

fn square_zero_passes(b: &Bimodule, rng: &mut ChaCha8Rng) -> bool {
    let table = b.square_zero();
    let d = table.dim();
    if b.dim() <= FULL_TRIPLE_MAX_DIM {
        table.check_leibniz_identity().passed()
    } else {
        let count = (d * d * d * SAMPLED_TRIPLE_PERCENT).div_ceil(100);
        table.check_leibniz_identity_sampled(count, rng).passed()
    }
}

fn random_nonzero(rng: &mut ChaCha8Rng) -> Rational {
    let num = [-3, -2, -1, 1, 2, 3][rng.gen_range(0..6)];
    Rational::new(num.into(), rng.gen_range(1..=3i64).into())
}

/// Adds a random nonzero value to one entry of one of the six matrices.
fn mutate(b: &Bimodule, rng: &mut ChaCha8Rng) -> Result<Bimodule> {
    let d = b.dim();
    let mut rho = b.rho_all().clone();
    let mut lambda = b.lambda_all().clone();
    let which = rng.gen_range(0..6);
    let target = if which < 3 { &mut rho[which] } else { &mut lambda[which - 3] };
    let (r, c) = (rng.gen_range(0..d), rng.gen_range(0..d));
    let delta = random_nonzero(rng);
    *target = MatrixQ::from_fn(d, d, |i, j| {
        if (i, j) == (r, c) {
            &target[(i, j)] + &delta
        } else {
            target[(i, j)].clone()
        }
    });
    Bimodule::new(None, rho, lambda)
}

pub fn criterion_2(cfg: &AcceptanceConfig) -> Result<CriterionOutcome> {
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let suite = axiom_suite(cfg.max_n)?;
    let failures: Vec<String> = suite
        .iter()
        .filter(|(_, b)| !square_zero_passes(b, &mut rng))
        .map(|(l, _)| l.clone())
        .collect();

    // Mutations are drawn from the smaller objects so every triple is checked.
    let small: Vec<&(String, Bimodule)> =
        suite.iter().filter(|(_, b)| b.dim() <= 12).collect();
    let mut disagreements = Vec::new();
    let mut broken = 0;
    for case in 0..MUTATION_CASES {
        let (label, base) = small[rng.gen_range(0..small.len())];
        let mutant = mutate(base, &mut rng)?;
        let verifier = mutant.verify_axioms().pass;
        let square = mutant.square_zero().check_leibniz_identity().passed();
        if !verifier {
            broken += 1;
        }
        if verifier != square {
            disagreements.push(format!("case {case} from {label}: verifier {verifier}, square-zero {square}"));
        }
    }
    let mut mutation = check("mutation agreement", &disagreements, MUTATION_CASES);
    mutation.detail.push_str(&format!(", {broken} rejected by the verifier"));
    Ok(CriterionOutcome::new(
        2,
        "square-zero integration",
        vec![check("square-zero identity", &failures, suite.len()), mutation],
    ))
}

/// Product of `d` random elementary matrices `I + c E_ij` (always invertible).
pub fn random_unimodular(d: usize, rng: &mut ChaCha8Rng) -> MatrixQ {
    let mut p = MatrixQ::identity(d);
    if d < 2 {
        return p;
    }
    for _ in 0..d {
        let i = rng.gen_range(0..d);
        let mut j = rng.gen_range(0..d - 1);
        if j >= i {
            j += 1;
        }
        let c = int([-2, -1, 1, 2][rng.gen_range(0..4)]);
        // row i += c · row j
        let rows = p.to_rows();
        p = MatrixQ::from_fn(d, d, |r, col| {
            if r == i {
                &rows[i][col] + &c * &rows[j][col]
            } else {
                rows[r][col].clone()
            }
        });
    }
    p
}

pub fn criterion_3(cfg: &AcceptanceConfig) -> Result<CriterionOutcome> {
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed ^ 3);
    let mut direct = Vec::new();
    let mut conjugated = Vec::new();
    let mut total = 0;
    for (n, k) in ladders(cfg.max_n, 1) {
        let expected = RightModuleShape::ladder(n, k)?.weights().to_vec();
        for fam in [LadderFamily::Case1, LadderFamily::Case2] {
            total += 1;
            let b = make_family(fam, n, k)?;
            let label = format!("{fam:?}({n},{k})");
            match decompose_right(&b) {
                Ok(r) if r.weights == expected => {}
                Ok(r) => direct.push(format!("{label}: {:?}", r.weights)),
                Err(e) => direct.push(format!("{label}: {e}")),
            }
            let p = random_unimodular(b.dim(), &mut rng);
            let moved = b.change_of_basis(&p)?;
            match decompose_right(&moved) {
                Ok(r) if r.weights == expected => {}
                Ok(r) => conjugated.push(format!("{label}: {:?}", r.weights)),
                Err(e) => conjugated.push(format!("{label}: {e}")),
            }
        }
    }
    Ok(CriterionOutcome::new(
        3,
        "decomposition",
        vec![
            check("ladder weights", &direct, total),
            check("random conjugation", &conjugated, total),
        ],
    ))
}

/// Parameter count predicted by the closed forms, and the cross-block part.
pub fn expected_parameter_count(n: u32, m: u32) -> (usize, usize) {
    let diag = |w: u32| usize::from(w >= 1);
    let gap = n - m;
    let cross = match gap {
        0 if n == 0 => 0,
        0 => 2,
        2 => 2,
        _ => 0,
    };
    if gap == 0 {
        // ψ1..ψ4: two diagonal, two off-diagonal
        (2 * diag(n) + cross, cross)
    } else {
        (diag(n) + diag(m) + cross, cross)
    }
}

/// The two-component shapes of criterion 4.
pub fn pair_shapes(max_n: u32) -> Vec<(u32, u32)> {
    (0..=max_n).flat_map(|n| (0..=n).rev().map(move |m| (n, m))).collect()
}

pub fn criterion_4(cfg: &AcceptanceConfig) -> Result<CriterionOutcome> {
    let mut oracle = Vec::new();
    let mut closed = Vec::new();
    let shapes = pair_shapes(cfg.max_n);
    for &(n, m) in &shapes {
        let shape = RightModuleShape::new(vec![n, m])?;
        let c = compare_counts(&shape)?;
        if !c.agrees() {
            oracle.push(format!(
                "({n},{m}): solver {} / {} cross, oracle {} / {} cross",
                c.solver, c.solver_cross_block, c.oracle, c.oracle_cross_block
            ));
        }
        let (total, cross) = expected_parameter_count(n, m);
        if (c.solver, c.solver_cross_block) != (total, cross) {
            closed.push(format!(
                "({n},{m}): {} / {} cross, expected {total} / {cross}",
                c.solver, c.solver_cross_block
            ));
        }
    }
    Ok(CriterionOutcome::new(
        4,
        "parameter counts",
        vec![
            check("closed forms", &closed, shapes.len()),
            check("brute-force oracle", &oracle, shapes.len()),
        ],
    ))
}

pub fn criterion_5(cfg: &AcceptanceConfig) -> Result<CriterionOutcome> {
    let mut missing = Vec::new();
    let mut unsatisfied = Vec::new();
    let mut cases = 0;
    for (n, k) in ladders(cfg.max_n, 2).into_iter().filter(|&(_, k)| k <= 4) {
        cases += 1;
        let shape = RightModuleShape::ladder(n, k)?;
        let sol = solve_left_linear(&shape)?;
        let system = quadratic_system(&sol);
        for (label, eq) in ladder_reference_equations(&sol)? {
            if !system.contains_equation(&eq) {
                missing.push(format!("({n},{k}) {label}"));
            }
        }
        for fam in [LadderFamily::Case1, LadderFamily::Case2] {
            let b = make_family(fam, n, k)?;
            match sol.parameters_of(b.lambda_all()) {
                Some(values) if system.is_satisfied_by(&values) => {}
                _ => unsatisfied.push(format!("{fam:?}({n},{k})")),
            }
        }
    }
    Ok(CriterionOutcome::new(
        5,
        "quadratic systems",
        vec![
            check("reference equations present", &missing, cases),
            check("families satisfy system", &unsatisfied, 2 * cases),
        ],
    ))
}

pub fn criterion_6(cfg: &AcceptanceConfig) -> Result<CriterionOutcome> {
    let mut failures = Vec::new();
    let cases = ladders(cfg.max_n.min(8), 2);
    for &(n, k) in &cases {
        let e = enumerate_ladder(n, k)?;
        if e.indecomposable.len() != 2 {
            failures.push(format!("({n},{k}): {} solutions", e.indecomposable.len()));
            continue;
        }
        let mut matched = BTreeSet::new();
        for s in &e.indecomposable {
            for fam in [LadderFamily::Case1, LadderFamily::Case2] {
                if diagonal_isomorphism(&s.bimodule, &make_family(fam, n, k)?).is_some() {
                    matched.insert(fam);
                }
            }
        }
        if matched.len() != 2 {
            failures.push(format!("({n},{k}): matched {matched:?}"));
        }
    }
    Ok(CriterionOutcome::new(
        6,
        "classification",
        vec![check("two indecomposables up to diagonal isomorphism", &failures, cases.len())],
    ))
}

/// Antisymmetric socle and symmetric top weights of the two extensions:
/// `(n − 4i)` over `0 ≤ i ≤ (k−1)/2` and `(n − 4i − 2)` over `0 ≤ i < k/2`.
pub fn extension_layers(n: u32, k: u32) -> (Vec<u32>, Vec<u32>) {
    let top: Vec<u32> = (0..k).step_by(2).map(|j| n - 2 * j).collect();
    let second: Vec<u32> = (1..k).step_by(2).map(|j| n - 2 * j).collect();
    (top, second)
}

/// Maps a subspace given in canonical coordinates back through `p`.
fn pull_back(p: &MatrixQ, s: &SubspaceQ) -> Result<SubspaceQ> {
    let vecs: Vec<Vec<Rational>> = s
        .basis()
        .iter()
        .map(|v| p.mul_vec(v))
        .collect::<Result<_>>()?;
    SubspaceQ::span(p.rows(), &vecs)
}

/// Objects used for the direct-sum part of criterion 7.
fn direct_sum_pool() -> Result<Vec<(String, Bimodule)>> {
    let mut pool = Vec::new();
    for n in 0..=4 {
        pool.push((format!("sym V({n})"), sym(n)?));
        pool.push((format!("antisym V({n})"), antisym(n)));
    }
    for n in 2..=5 {
        for fam in [LadderFamily::Case1, LadderFamily::Case2] {
            pool.push((format!("{fam:?}({n},2)"), make_family(fam, n, 2)?));
        }
    }
    Ok(pool)
}

fn weights_of(b: &Bimodule) -> BTreeSet<u32> {
    b.shape().map(|s| s.weights().iter().copied().collect()).unwrap_or_default()
}

pub fn criterion_7(cfg: &AcceptanceConfig) -> Result<CriterionOutcome> {
    let mut not_chain = Vec::new();
    let mut bad_layers = Vec::new();
    let mut not_indecomposable = Vec::new();
    let cases = ladders(cfg.max_n.min(8), 1);
    for &(n, k) in &cases {
        let (top, second) = extension_layers(n, k);
        for fam in [LadderFamily::Case1, LadderFamily::Case2] {
            let b = make_family(fam, n, k)?;
            let label = format!("{fam:?}({n},{k})");
            if !subbimodules(&b)?.is_chain() {
                not_chain.push(label.clone());
            }
            // Case 1 acts on the even components, so the first component
            // lies in the antisymmetric socle.
            let (mut socle, mut quotient) = match fam {
                LadderFamily::Case1 => (top.clone(), second.clone()),
                LadderFamily::Case2 => (second.clone(), top.clone()),
            };
            // V(0) carries the zero action, so its symmetric and
            // antisymmetric versions coincide.
            if (n, k) == (0, 1) {
                socle = vec![0];
                quotient.clear();
            }
            let r = extension_report(&b)?;
            if r.antisymmetric_weights != socle || r.quotient_weights != quotient || !r.quotient_symmetric {
                bad_layers.push(format!(
                    "{label}: socle {:?} top {:?} symmetric {}",
                    r.antisymmetric_weights, r.quotient_weights, r.quotient_symmetric
                ));
            }
            if !is_indecomposable(&b)?.is_indecomposable() {
                not_indecomposable.push(label);
            }
        }
    }

    let pool = direct_sum_pool()?;
    let mut sums = Vec::new();
    let mut pairs = 0;
    for (i, (la, a)) in pool.iter().enumerate() {
        for (lb, b) in &pool[i + 1..] {
            if !weights_of(a).is_disjoint(&weights_of(b)) {
                continue;
            }
            pairs += 1;
            let sum = a.direct_sum(b);
            let report = decompose_right(&sum)?;
            let canonical = canonical_right_form(&sum)?;
            let cert = is_indecomposable(&canonical)?;
            let ok = match &cert.verdict {
                Verdict::Decomposable { first, second, .. } => {
                    let p = &report.change_of_basis;
                    crate::classify::lattice::is_complementary_pair(
                        &sum,
                        &pull_back(p, first)?,
                        &pull_back(p, second)?,
                    )
                }
                _ => false,
            };
            if !ok {
                sums.push(format!("{la} + {lb}"));
            }
        }
    }
    Ok(CriterionOutcome::new(
        7,
        "subbimodules and indecomposability",
        vec![
            check("chain lattice", &not_chain, 2 * cases.len()),
            check("extension layers", &bad_layers, 2 * cases.len()),
            check("families indecomposable", &not_indecomposable, 2 * cases.len()),
            check("direct sums split", &sums, pairs),
        ],
    ))
}

pub fn criterion_8(cfg: &AcceptanceConfig) -> Result<CriterionOutcome> {
    let mut failures = Vec::new();
    let phis = sample_phi_matrices();
    let mut cases = 0;
    for (idx, phi) in phis.iter().enumerate() {
        for n in 0..=cfg.max_n.min(6) {
            cases += 1;
            let b = equal_weight_bimodule(n, phi)?;
            let label = format!("phi #{idx}, n={n}");
            if !b.verify_axioms().pass {
                failures.push(format!("{label}: relations fail"));
                continue;
            }
            let cert = is_indecomposable(&b)?;
            let via_phi = matches!(
                cert.verdict,
                Verdict::Decomposable { method: EvidenceMethod::PhiEigenbasis, .. }
            );
            if !via_phi || !cert.evidence_is_valid(&b) {
                failures.push(label);
            }
        }
    }
    let non_diagonal = phis
        .iter()
        .filter(|p| {
            let k = p.rows();
            (0..k).any(|r| (0..k).any(|c| r != c && p[(r, c)] != int(0)))
        })
        .count();
    Ok(CriterionOutcome::new(
        8,
        "equal-weight decomposability",
        vec![
            check("split via eigenbasis", &failures, cases),
            Check {
                name: "sample family".into(),
                passed: phis.len() >= 5 && non_diagonal >= 1,
                detail: format!("{} matrices, {non_diagonal} not diagonal", phis.len()),
            },
        ],
    ))
}

pub type CriterionFn = fn(&AcceptanceConfig) -> Result<CriterionOutcome>;

pub const CRITERIA: [CriterionFn; 8] = [
    criterion_1,
    criterion_2,
    criterion_3,
    criterion_4,
    criterion_5,
    criterion_6,
    criterion_7,
    criterion_8,
];

pub fn run_all(cfg: &AcceptanceConfig) -> Result<Vec<CriterionOutcome>> {
    CRITERIA.iter().map(|f| f(cfg)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn closed_form_counts() {
        assert_eq!(expected_parameter_count(3, 3), (4, 2));
        assert_eq!(expected_parameter_count(0, 0), (0, 0));
        assert_eq!(expected_parameter_count(4, 2), (4, 2));
        assert_eq!(expected_parameter_count(2, 0), (3, 2));
        assert_eq!(expected_parameter_count(6, 2), (2, 0));
        assert_eq!(expected_parameter_count(4, 0), (1, 0));
        assert_eq!(expected_parameter_count(5, 2), (2, 0));
    }

    #[test]
    fn layers() {
        assert_eq!(extension_layers(6, 2), (vec![6], vec![4]));
        assert_eq!(extension_layers(8, 5), (vec![8, 4, 0], vec![6, 2]));
    }

    #[test]
    fn unimodular_is_invertible() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for d in [1, 2, 5, 9] {
            assert!(random_unimodular(d, &mut rng).inverse().is_ok());
        }
    }

    #[test]
    fn small_suite_runs() {
        let cfg = AcceptanceConfig { max_n: 3, ..Default::default() };
        for f in [criterion_1, criterion_3, criterion_4, criterion_8] {
            let o = f(&cfg).unwrap();
            assert!(o.passed, "{}", o.summary_line());
        }
    }
}
