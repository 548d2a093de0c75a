//! Enumeration of all indecomposable left actions on a ladder by finite case
//! analysis of the quadratic system: each branch either fixes a parameter to
//! a rational root of a univariate equation, or splits on zero/nonzero.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::bimodule::{Bimodule, RightModuleShape};
use crate::classify::ansatz::{solve_left_linear, LeftActionSolution};
use crate::classify::families::{make_family, LadderFamily};
use crate::classify::lattice::{diagonal_isomorphism, is_indecomposable_with, SearchDepth};
use crate::classify::quadratic::{quadratic_system, Polynomial};
use crate::error::{Error, Result};
use crate::rational::{named_rationals, Rational};

#[derive(Clone, Debug, PartialEq, Eq)]
struct Branch {
    values: Vec<Option<Rational>>,
    nonzero: Vec<bool>,
}

/// Divides out every variable known to be nonzero that divides all terms.
fn reduce(p: &Polynomial, nonzero: &[bool]) -> Polynomial {
    let mut cur = p.clone();
    loop {
        let common = cur
            .variables()
            .into_iter()
            .find(|&x| nonzero[x] && cur.terms().keys().all(|m| m.contains(&x)));
        let Some(x) = common else {
            return cur;
        };
        let mut next = Polynomial::zero();
        for (m, c) in cur.terms() {
            let mut m = m.clone();
            let pos = m.iter().position(|&y| y == x).expect("divisible");
            m.remove(pos);
            next.add_term(m, c.clone());
        }
        cur = next;
    }
}

fn rational_sqrt(x: &Rational) -> Option<Rational> {
    if x.is_negative() {
        return None;
    }
    let (n, d) = (x.numer(), x.denom());
    let (rn, rd): (BigInt, BigInt) = (n.sqrt(), d.sqrt());
    (&rn * &rn == *n && &rd * &rd == *d).then(|| Rational::new(rn, rd))
}

/// Rational roots of a univariate polynomial of degree at most two.
fn univariate_roots(p: &Polynomial, x: usize) -> Result<Vec<Rational>> {
    let coeff = |deg: usize| p.terms().get(&vec![x; deg]).cloned().unwrap_or_else(Rational::zero);
    let (a, b, c) = (coeff(2), coeff(1), coeff(0));
    if p.degree() > 2 {
        return Err(Error::Inconsistent("equation of degree above two".into()));
    }
    if a.is_zero() {
        return Ok(vec![-c / b]);
    }
    let disc = b.clone() * &b - Rational::from_integer(4.into()) * &a * &c;
    if disc.is_negative() {
        return Ok(Vec::new());
    }
    let root = rational_sqrt(&disc).ok_or_else(|| {
        Error::Inconsistent(format!("irrational root of {}", p.display(&vec!["x".into(); x + 1])))
    })?;
    let two_a = Rational::from_integer(2.into()) * a;
    let mut roots = vec![(-b.clone() - &root) / &two_a, (-b + root) / two_a];
    roots.sort();
    roots.dedup();
    Ok(roots)
}

fn solve_branches(eqs: &[Polynomial], branch: Branch, out: &mut Vec<Branch>) -> Result<()> {
    let mut branch = branch;
    loop {
        let mut pending = Vec::new();
        for p in eqs {
            let q = reduce(&p.substitute(&branch.values), &branch.nonzero);
            match q.constant_value() {
                Some(c) if c.is_zero() => {}
                Some(_) => return Ok(()),
                None => pending.push(q),
            }
        }
        if pending.is_empty() {
            let free = (0..branch.values.len())
                .find(|&x| branch.values[x].is_none() && !branch.nonzero[x]);
            return match free {
                Some(x) => split(eqs, branch, x, out),
                None => {
                    out.push(branch);
                    Ok(())
                }
            };
        }

        let mut progressed = false;
        for q in &pending {
            let vars = q.variables();
            if q.terms().len() == 1 && vars.len() == 1 {
                let x = *vars.iter().next().unwrap();
                branch.values[x] = Some(Rational::zero());
                progressed = true;
                break;
            }
            if vars.len() == 1 {
                let x = *vars.iter().next().unwrap();
                let mut roots = univariate_roots(q, x)?;
                if branch.nonzero[x] {
                    roots.retain(|r| !r.is_zero());
                }
                match roots.len() {
                    0 => return Ok(()),
                    1 => {
                        branch.values[x] = roots.pop();
                        progressed = true;
                        break;
                    }
                    _ => {
                        for r in roots {
                            let mut next = branch.clone();
                            next.values[x] = Some(r);
                            solve_branches(eqs, next, out)?;
                        }
                        return Ok(());
                    }
                }
            }
        }
        if progressed {
            continue;
        }
        let pick = pending
            .iter()
            .flat_map(|q| q.variables())
            .find(|&x| !branch.nonzero[x]);
        return match pick {
            Some(x) => split(eqs, branch, x, out),
            None => Err(Error::Inconsistent(format!(
                "case analysis stalled on {} equations in nonzero parameters",
                pending.len()
            ))),
        };
    }
}

fn split(eqs: &[Polynomial], branch: Branch, x: usize, out: &mut Vec<Branch>) -> Result<()> {
    let mut zero = branch.clone();
    zero.values[x] = Some(Rational::zero());
    solve_branches(eqs, zero, out)?;
    let mut nonzero = branch;
    nonzero.nonzero[x] = true;
    solve_branches(eqs, nonzero, out)
}

/// `phi_p_q` → zero-based `(p, q)`.
fn parse_phi(name: &str) -> Option<(usize, usize)> {
    let mut it = name.strip_prefix("phi_")?.split('_');
    let p: usize = it.next()?.parse().ok()?;
    let q: usize = it.next()?.parse().ok()?;
    Some((p - 1, q - 1))
}

/// Representative of a branch: free nonzero parameters set to one. This is
/// justified when they are off-diagonal couplings forming a forest, since a
/// per-component rescaling then moves any nonzero values to one.
fn representative(sol: &LeftActionSolution, branch: &Branch) -> Result<Vec<Rational>> {
    let names = sol.parameter_names();
    let k = sol.shape().components();
    let mut parent: Vec<usize> = (0..k).collect();
    fn find(parent: &mut [usize], x: usize) -> usize {
        if parent[x] != x {
            let r = find(parent, parent[x]);
            parent[x] = r;
        }
        parent[x]
    }
    let mut values = Vec::with_capacity(names.len());
    for (x, name) in names.iter().enumerate() {
        if let Some(v) = &branch.values[x] {
            values.push(v.clone());
            continue;
        }
        let edge = parse_phi(name).filter(|(p, q)| p != q).ok_or_else(|| {
            Error::Inconsistent(format!("free parameter {name} is not an off-diagonal coupling"))
        })?;
        let (a, b) = (find(&mut parent, edge.0), find(&mut parent, edge.1));
        if a == b {
            return Err(Error::Inconsistent(format!(
                "free couplings close a cycle at {name}; rescaling cannot normalize them"
            )));
        }
        parent[a] = b;
        values.push(Rational::one());
    }
    Ok(values)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LadderSolution {
    pub bimodule: Bimodule,
    #[serde(with = "named_rationals")]
    pub parameters: Vec<(String, Rational)>,
    /// The constructor family this solution is diagonally isomorphic to.
    pub family: Option<LadderFamily>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LadderEnumeration {
    pub shape: RightModuleShape,
    /// Solution families produced by the case analysis.
    pub branches: usize,
    /// Branches whose representative is decomposable.
    pub decomposable: usize,
    /// Pairwise non-isomorphic indecomposable solutions.
    pub indecomposable: Vec<LadderSolution>,
}

/// Runs the case analysis on the ladder `(n, n−2, …, n−2k+2)`.
pub fn enumerate_ladder(n: u32, k: u32) -> Result<LadderEnumeration> {
    let shape = RightModuleShape::ladder(n, k)?;
    let sol = solve_left_linear(&shape)?;
    let system = quadratic_system(&sol);
    let np = sol.parameter_count();
    let mut branches = Vec::new();
    solve_branches(
        system.equations(),
        Branch {
            values: vec![None; np],
            nonzero: vec![false; np],
        },
        &mut branches,
    )?;

    let references: Vec<(LadderFamily, Bimodule)> = [LadderFamily::Case1, LadderFamily::Case2]
        .into_iter()
        .map(|f| make_family(f, n, k).map(|b| (f, b)))
        .collect::<Result<_>>()?;

    let mut decomposable = 0;
    let mut found: Vec<LadderSolution> = Vec::new();
    for branch in &branches {
        let values = representative(&sol, branch)?;
        if !system.is_satisfied_by(&values) {
            return Err(Error::Inconsistent("branch representative violates the system".into()));
        }
        let b = Bimodule::with_left_action(shape.clone(), sol.instantiate(&values)?)?;
        if !b.verify_axioms().pass {
            return Err(Error::Inconsistent("branch representative is not a bimodule".into()));
        }
        if !is_indecomposable_with(&b, SearchDepth::ComponentSums)?.is_indecomposable() {
            decomposable += 1;
            continue;
        }
        if found.iter().any(|s| diagonal_isomorphism(&s.bimodule, &b).is_some()) {
            continue;
        }
        let family = references
            .iter()
            .find(|(_, r)| diagonal_isomorphism(&b, r).is_some())
            .map(|(f, _)| *f);
        found.push(LadderSolution {
            bimodule: b,
            parameters: sol.parameter_names().into_iter().zip(values).collect(),
            family,
        });
    }
    found.sort_by(|a, b| a.family.cmp(&b.family).then_with(|| a.parameters.cmp(&b.parameters)));
    Ok(LadderEnumeration {
        shape,
        branches: branches.len(),
        decomposable,
        indecomposable: found,
    })
}

/// All pairwise non-isomorphic indecomposable bimodules on the ladder.
pub fn enumerate_ladder_solutions(n: u32, k: u32) -> Result<Vec<Bimodule>> {
    Ok(enumerate_ladder(n, k)?
        .indecomposable
        .into_iter()
        .map(|s| s.bimodule)
        .collect())
}
