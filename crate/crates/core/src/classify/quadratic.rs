//! Relation (7) over the general solution of relation (6): a system of
//! polynomial equations of degree at most two in the parameters.

use std::collections::{BTreeMap, BTreeSet};

use num_traits::{One, Zero};
use serde::Serialize;

use crate::bimodule::shape_rho;
use crate::classify::ansatz::LeftActionSolution;
use crate::error::{Error, Result};
use crate::rational::{format_rational, Rational};
use crate::sl2::Generator;
use crate::MatrixQ;

/// Sorted parameter indices; the empty monomial is the constant term.
pub type Monomial = Vec<usize>;

/// A polynomial with rational coefficients in indexed parameters.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Polynomial {
    terms: BTreeMap<Monomial, Rational>,
}

impl Polynomial {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn constant(c: Rational) -> Self {
        let mut p = Self::zero();
        p.add_term(Vec::new(), c);
        p
    }

    pub fn var(a: usize) -> Self {
        let mut p = Self::zero();
        p.add_term(vec![a], Rational::one());
        p
    }

    pub fn terms(&self) -> &BTreeMap<Monomial, Rational> {
        &self.terms
    }

    pub fn add_term(&mut self, mut m: Monomial, c: Rational) {
        m.sort_unstable();
        let v = self.terms.remove(&m).unwrap_or_else(Rational::zero) + c;
        if !v.is_zero() {
            self.terms.insert(m, v);
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Self::zero();
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                let mut m = m1.clone();
                m.extend_from_slice(m2);
                out.add_term(m, c1.clone() * c2);
            }
        }
        out
    }

    pub fn scale(&self, s: &Rational) -> Self {
        let mut out = Self::zero();
        for (m, c) in &self.terms {
            out.add_term(m.clone(), c.clone() * s);
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn degree(&self) -> usize {
        self.terms.keys().map(Vec::len).max().unwrap_or(0)
    }

    pub fn variables(&self) -> BTreeSet<usize> {
        self.terms.keys().flatten().copied().collect()
    }

    /// Nonzero constant value, if the polynomial is constant.
    pub fn constant_value(&self) -> Option<Rational> {
        match self.terms.len() {
            0 => Some(Rational::zero()),
            1 => self.terms.get(&Vec::new()).cloned(),
            _ => None,
        }
    }

    pub fn evaluate(&self, values: &[Rational]) -> Rational {
        self.terms.iter().fold(Rational::zero(), |acc, (m, c)| {
            acc + m.iter().fold(c.clone(), |p, &a| p * &values[a])
        })
    }

    /// Replaces every variable that has a value in `values`.
    pub fn substitute(&self, values: &[Option<Rational>]) -> Self {
        let mut out = Self::zero();
        for (m, c) in &self.terms {
            let mut coeff = c.clone();
            let mut rest = Vec::new();
            for &a in m {
                match &values[a] {
                    Some(v) => coeff *= v,
                    None => rest.push(a),
                }
            }
            if !coeff.is_zero() {
                out.add_term(rest, coeff);
            }
        }
        out
    }

    /// Scales so the coefficient of the first monomial is one.
    pub fn normalized(&self) -> Self {
        match self.terms.values().next() {
            Some(lead) if !lead.is_one() => self.scale(&(Rational::one() / lead.clone())),
            _ => self.clone(),
        }
    }

    pub fn display(&self, names: &[String]) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        let mut out = String::new();
        // Higher degree first reads more naturally.
        let mut terms: Vec<_> = self.terms.iter().collect();
        terms.sort_by(|a, b| b.0.len().cmp(&a.0.len()).then(a.0.cmp(b.0)));
        for (i, (m, c)) in terms.into_iter().enumerate() {
            let negative = *c < Rational::zero();
            let abs = if negative { -c.clone() } else { c.clone() };
            if i == 0 {
                if negative {
                    out.push('-');
                }
            } else {
                out.push_str(if negative { " - " } else { " + " });
            }
            let vars = monomial_text(m, names);
            match (abs.is_one(), vars.is_empty()) {
                (true, false) => out.push_str(&vars),
                (_, true) => out.push_str(&format_rational(&abs)),
                (false, false) => {
                    out.push_str(&format_rational(&abs));
                    out.push('*');
                    out.push_str(&vars);
                }
            }
        }
        out
    }
}

fn monomial_text(m: &[usize], names: &[String]) -> String {
    let mut parts: Vec<String> = Vec::new();
    let mut i = 0;
    while i < m.len() {
        let mut j = i;
        while j < m.len() && m[j] == m[i] {
            j += 1;
        }
        let power = j - i;
        let name = &names[m[i]];
        parts.push(if power == 1 { name.clone() } else { format!("{name}^{power}") });
        i = j;
    }
    parts.join("*")
}

/// Distinct normalized equations `p = 0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuadraticSystem {
    parameters: Vec<String>,
    equations: Vec<Polynomial>,
}

impl QuadraticSystem {
    pub fn new(parameters: Vec<String>, equations: impl IntoIterator<Item = Polynomial>) -> Self {
        let set: BTreeSet<Polynomial> = equations
            .into_iter()
            .filter(|p| !p.is_zero())
            .map(|p| p.normalized())
            .collect();
        QuadraticSystem {
            parameters,
            equations: set.into_iter().collect(),
        }
    }

    pub fn parameters(&self) -> &[String] {
        &self.parameters
    }

    pub fn equations(&self) -> &[Polynomial] {
        &self.equations
    }

    pub fn len(&self) -> usize {
        self.equations.len()
    }

    pub fn is_empty(&self) -> bool {
        self.equations.is_empty()
    }

    /// `true` when some equation equals `p` up to a nonzero scalar.
    pub fn contains_equation(&self, p: &Polynomial) -> bool {
        let target = p.normalized();
        self.equations.binary_search(&target).is_ok()
    }

    pub fn is_satisfied_by(&self, values: &[Rational]) -> bool {
        self.equations.iter().all(|p| p.evaluate(values).is_zero())
    }

    pub fn display_equation(&self, i: usize) -> String {
        format!("{} = 0", self.equations[i].display(&self.parameters))
    }
}

#[derive(Serialize)]
struct TermJson {
    coefficient: String,
    monomial: Vec<String>,
}

#[derive(Serialize)]
struct EquationJson {
    text: String,
    terms: Vec<TermJson>,
}

#[derive(Serialize)]
struct SystemJson<'a> {
    parameters: &'a [String],
    equations: Vec<EquationJson>,
}

impl Serialize for QuadraticSystem {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let equations = self
            .equations
            .iter()
            .enumerate()
            .map(|(i, p)| EquationJson {
                text: self.display_equation(i),
                terms: p
                    .terms()
                    .iter()
                    .map(|(m, c)| TermJson {
                        coefficient: format_rational(c),
                        monomial: m.iter().map(|&a| self.parameters[a].clone()).collect(),
                    })
                    .collect(),
            })
            .collect();
        SystemJson {
            parameters: &self.parameters,
            equations,
        }
        .serialize(s)
    }
}

type SparseRows = Vec<Vec<(usize, Rational)>>;

fn sparse_rows(m: &MatrixQ) -> SparseRows {
    (0..m.rows())
        .map(|r| {
            (0..m.cols())
                .filter(|&c| !m[(r, c)].is_zero())
                .map(|c| (c, m[(r, c)].clone()))
                .collect()
        })
        .collect()
}

/// Expands `λ_x (ρ_y + λ_y) = 0` with `λ = Σ_a t_a L^a` entry by entry.
pub fn quadratic_system(sol: &LeftActionSolution) -> QuadraticSystem {
    let n = sol.parameter_count();
    let rho: Vec<SparseRows> = shape_rho(sol.shape()).iter().map(sparse_rows).collect();
    let basis: Vec<Vec<SparseRows>> = (0..n)
        .map(|a| sol.basis_action(a).iter().map(sparse_rows).collect())
        .collect();
    let mut entries: BTreeMap<(usize, usize, usize), Polynomial> = BTreeMap::new();
    for (pair, (x, y)) in Generator::pairs().enumerate() {
        let (xi, yi) = (x.index(), y.index());
        for a in 0..n {
            for (r, row) in basis[a][xi].iter().enumerate() {
                for (k, lv) in row {
                    for (c, rv) in &rho[yi][*k] {
                        entries
                            .entry((pair, r, *c))
                            .or_default()
                            .add_term(vec![a], lv.clone() * rv);
                    }
                    for b in 0..n {
                        for (c, rv) in &basis[b][yi][*k] {
                            entries
                                .entry((pair, r, *c))
                                .or_default()
                                .add_term(vec![a, b], lv.clone() * rv);
                        }
                    }
                }
            }
        }
    }
    QuadraticSystem::new(sol.parameter_names(), entries.into_values())
}

/// The equations the classification argument writes down for the ladder
/// triples `(f, v_0^1, f)`, `(f, v_0^1, h)`, `(f, v_0^j, f)`, `(f, v_0^j, h)`
/// and `(f, v_0^j, e)`. Parameters absent from the solution are zero, and
/// equations that become trivial are dropped.
pub fn ladder_reference_equations(sol: &LeftActionSolution) -> Result<Vec<(String, Polynomial)>> {
    let k = sol.shape().components();
    let w = sol.shape().weights();
    if w.windows(2).any(|p| p[0] != p[1] + 2) {
        return Err(Error::InvalidShape(format!("{} is not a ladder", sol.shape())));
    }
    let phi = |a: usize, b: usize| -> Polynomial {
        if a == 0 || b == 0 || a > k || b > k {
            return Polynomial::zero();
        }
        sol.parameter_index(&format!("phi_{a}_{b}"))
            .map(Polynomial::var)
            .unwrap_or_default()
    };
    let one = Polynomial::constant(Rational::one());
    let mut out = Vec::new();
    let mut push = |label: String, p: Polynomial| {
        if !p.is_zero() {
            out.push((label, p));
        }
    };

    push("(f,v_0^1,f) 1".into(), one.add(&phi(1, 1)).add(&phi(2, 2)).mul(&phi(1, 2)));
    push(
        "(f,v_0^1,f) 2".into(),
        one.add(&phi(1, 1)).mul(&phi(1, 1)).add(&phi(1, 2).mul(&phi(2, 1))),
    );
    push("(f,v_0^1,f) 3".into(), phi(1, 2).mul(&phi(2, 3)));
    push("(f,v_0^1,h) 1".into(), one.add(&phi(1, 1)).mul(&phi(1, 2)));
    push("(f,v_0^1,h) 2".into(), one.add(&phi(1, 1)).mul(&phi(1, 1)));
    for j in 2..k {
        push(
            format!("(f,v_0^{j},f) 1"),
            one.add(&phi(j - 1, j - 1)).add(&phi(j, j)).mul(&phi(j, j - 1)),
        );
        push(
            format!("(f,v_0^{j},f) 2"),
            one.add(&phi(j, j))
                .mul(&phi(j, j))
                .add(&phi(j, j - 1).mul(&phi(j - 1, j)))
                .add(&phi(j, j + 1).mul(&phi(j + 1, j))),
        );
        push(
            format!("(f,v_0^{j},f) 3"),
            one.add(&phi(j, j)).add(&phi(j + 1, j + 1)).mul(&phi(j, j + 1)),
        );
        push(format!("(f,v_0^{j},h)"), one.add(&phi(j, j)).mul(&phi(j, j + 1)));
        push(format!("(f,v_0^{j},e) 1"), phi(j, j - 1).mul(&phi(j - 1, j - 2)));
        push(format!("(f,v_0^{j},e) 2"), phi(j, j - 1).mul(&phi(j - 1, j - 1)));
        push(format!("(f,v_0^{j},e) 3"), phi(j, j - 1).mul(&phi(j - 1, j)));
    }
    Ok(out)
}
