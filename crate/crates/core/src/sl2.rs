//! sl2 over the rationals with basis (e, f, h) and products
//! `[e,f] = h`, `[e,h] = 2e`, `[f,h] = -2f`; generic structure-constant
//! tables and the right Leibniz identity checker.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rational::{int, Rational};
use crate::MatrixQ;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Generator {
    E,
    F,
    H,
}

impl Generator {
    pub const ALL: [Generator; 3] = [Generator::E, Generator::F, Generator::H];

    pub fn index(self) -> usize {
        self as usize
    }

    /// The nine ordered generator pairs `(x, y)`.
    pub fn pairs() -> impl Iterator<Item = (Generator, Generator)> {
        Self::ALL
            .into_iter()
            .flat_map(|x| Self::ALL.into_iter().map(move |y| (x, y)))
    }
}

impl fmt::Display for Generator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Generator::E => "e",
            Generator::F => "f",
            Generator::H => "h",
        })
    }
}

/// Element `c_e e + c_f f + c_h h`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Sl2Element {
    pub coeffs: [Rational; 3],
}

impl Sl2Element {
    pub fn zero() -> Self {
        Sl2Element {
            coeffs: [Rational::zero(), Rational::zero(), Rational::zero()],
        }
    }

    pub fn basis(g: Generator) -> Self {
        let mut x = Self::zero();
        x.coeffs[g.index()] = Rational::one();
        x
    }

    pub fn e() -> Self {
        Self::basis(Generator::E)
    }

    pub fn f() -> Self {
        Self::basis(Generator::F)
    }

    pub fn h() -> Self {
        Self::basis(Generator::H)
    }

    pub fn coeff(&self, g: Generator) -> &Rational {
        &self.coeffs[g.index()]
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    pub fn scale(&self, s: &Rational) -> Self {
        Sl2Element {
            coeffs: self.coeffs.clone().map(|c| c * s),
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (a, b) in out.coeffs.iter_mut().zip(&other.coeffs) {
            *a += b;
        }
        out
    }

    /// `Σ c_g · mats[g]`.
    pub fn combine(&self, mats: &[MatrixQ; 3]) -> MatrixQ {
        let n = mats[0].rows();
        let mut out = MatrixQ::zeros(n, mats[0].cols());
        for g in Generator::ALL {
            let c = self.coeff(g);
            if !c.is_zero() {
                out = out.add(&mats[g.index()].scale(c)).expect("equal dims");
            }
        }
        out
    }
}

/// Bracket of two basis elements.
pub fn bracket_basis(x: Generator, y: Generator) -> Sl2Element {
    use Generator::*;
    let (g, c) = match (x, y) {
        (E, F) => (H, 1),
        (F, E) => (H, -1),
        (E, H) => (E, 2),
        (H, E) => (E, -2),
        (F, H) => (F, -2),
        (H, F) => (F, 2),
        _ => return Sl2Element::zero(),
    };
    Sl2Element::basis(g).scale(&int(c))
}

pub fn bracket(x: &Sl2Element, y: &Sl2Element) -> Sl2Element {
    let mut out = Sl2Element::zero();
    for (a, b) in Generator::pairs() {
        let c = x.coeff(a).clone() * y.coeff(b);
        if !c.is_zero() {
            out = out.add(&bracket_basis(a, b).scale(&c));
        }
    }
    out
}

/// Matrix of the right multiplication `y ↦ [y, x]` in the basis (e, f, h).
pub fn adjoint(x: &Sl2Element) -> MatrixQ {
    let mut m = MatrixQ::zeros(3, 3);
    for g in Generator::ALL {
        let col = bracket(&Sl2Element::basis(g), x);
        for r in Generator::ALL {
            m[(r.index(), g.index())] = col.coeff(r).clone();
        }
    }
    m
}

/// Structure constants `table[i][j][k]`: `[b_i, b_j] = Σ_k table[i][j][k] b_k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlgebraTable {
    dim: usize,
    table: Vec<Vec<Vec<Rational>>>,
}

/// One failing basis triple of the Leibniz identity.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LeibnizViolation {
    pub triple: (usize, usize, usize),
    #[serde(with = "crate::rational::rational_vec")]
    pub residual: Vec<Rational>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LeibnizReport {
    pub triples_checked: usize,
    pub violations: Vec<LeibnizViolation>,
}

impl LeibnizReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

type SparseVec = Vec<(usize, Rational)>;

impl AlgebraTable {
    pub fn new(dim: usize, table: Vec<Vec<Vec<Rational>>>) -> Result<Self> {
        let ok = table.len() == dim
            && table
                .iter()
                .all(|row| row.len() == dim && row.iter().all(|v| v.len() == dim));
        if !ok {
            return Err(Error::Parse(format!("structure table is not {dim}x{dim}x{dim}")));
        }
        Ok(AlgebraTable { dim, table })
    }

    pub fn zero(dim: usize) -> Self {
        AlgebraTable {
            dim,
            table: vec![vec![vec![Rational::zero(); dim]; dim]; dim],
        }
    }

    pub fn sl2() -> Self {
        let mut t = Self::zero(3);
        for (x, y) in Generator::pairs() {
            let b = bracket_basis(x, y);
            for g in Generator::ALL {
                t.table[x.index()][y.index()][g.index()] = b.coeff(g).clone();
            }
        }
        t
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn structure_constant(&self, i: usize, j: usize, k: usize) -> &Rational {
        &self.table[i][j][k]
    }

    pub fn set(&mut self, i: usize, j: usize, k: usize, value: Rational) {
        self.table[i][j][k] = value;
    }

    pub fn table(&self) -> &[Vec<Vec<Rational>>] {
        &self.table
    }

    /// Bilinear bracket of two coordinate vectors.
    pub fn bracket(&self, u: &[Rational], v: &[Rational]) -> Vec<Rational> {
        let mut out = vec![Rational::zero(); self.dim];
        for (i, a) in u.iter().enumerate().filter(|(_, a)| !a.is_zero()) {
            for (j, b) in v.iter().enumerate().filter(|(_, b)| !b.is_zero()) {
                let ab = a.clone() * b;
                for (k, c) in self.table[i][j].iter().enumerate() {
                    if !c.is_zero() {
                        out[k] += ab.clone() * c;
                    }
                }
            }
        }
        out
    }

    fn sparse(&self) -> Vec<Vec<SparseVec>> {
        self.table
            .iter()
            .map(|row| {
                row.iter()
                    .map(|v| {
                        v.iter()
                            .enumerate()
                            .filter(|(_, c)| !c.is_zero())
                            .map(|(k, c)| (k, c.clone()))
                            .collect()
                    })
                    .collect()
            })
            .collect()
    }

    /// `[x,[y,z]] − [[x,y],z] + [[x,z],y]` on basis elements.
    fn leibniz_residual(nz: &[Vec<SparseVec>], x: usize, y: usize, z: usize) -> Vec<(usize, Rational)> {
        let mut acc: BTreeMap<usize, Rational> = BTreeMap::new();
        let mut add = |k: usize, v: Rational| {
            let e = acc.entry(k).or_insert_with(Rational::zero);
            *e += v;
        };
        for (k, c) in &nz[y][z] {
            for (l, d) in &nz[x][*k] {
                add(*l, c.clone() * d);
            }
        }
        for (k, c) in &nz[x][y] {
            for (l, d) in &nz[*k][z] {
                add(*l, -(c.clone() * d));
            }
        }
        for (k, c) in &nz[x][z] {
            for (l, d) in &nz[*k][y] {
                add(*l, c.clone() * d);
            }
        }
        acc.into_iter().filter(|(_, v)| !v.is_zero()).collect()
    }

    fn violation(&self, triple: (usize, usize, usize), sparse: Vec<(usize, Rational)>) -> LeibnizViolation {
        let mut residual = vec![Rational::zero(); self.dim];
        for (k, v) in sparse {
            residual[k] = v;
        }
        LeibnizViolation { triple, residual }
    }

    /// Evaluates the right Leibniz identity on every basis triple.
    pub fn check_leibniz_identity(&self) -> LeibnizReport {
        let nz = self.sparse();
        let d = self.dim;
        let mut violations = Vec::new();
        for x in 0..d {
            for y in 0..d {
                for z in 0..d {
                    let r = Self::leibniz_residual(&nz, x, y, z);
                    if !r.is_empty() {
                        violations.push(self.violation((x, y, z), r));
                    }
                }
            }
        }
        LeibnizReport {
            triples_checked: d * d * d,
            violations,
        }
    }

    /// Evaluates the identity on `count` basis triples drawn uniformly (with
    /// replacement) from `rng`.
    pub fn check_leibniz_identity_sampled(&self, count: usize, rng: &mut impl Rng) -> LeibnizReport {
        let nz = self.sparse();
        let d = self.dim;
        let mut violations = Vec::new();
        if d > 0 {
            for _ in 0..count {
                let t = (rng.gen_range(0..d), rng.gen_range(0..d), rng.gen_range(0..d));
                let r = Self::leibniz_residual(&nz, t.0, t.1, t.2);
                if !r.is_empty() {
                    violations.push(self.violation(t, r));
                }
            }
        }
        violations.sort_by_key(|v| v.triple);
        violations.dedup_by_key(|v| v.triple);
        LeibnizReport {
            triples_checked: if d > 0 { count } else { 0 },
            violations,
        }
    }
}

#[derive(Serialize, Deserialize)]
struct TableJson {
    dim: usize,
    table: Vec<Vec<Vec<String>>>,
}

impl Serialize for AlgebraTable {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let table = self
            .table
            .iter()
            .map(|row| {
                row.iter()
                    .map(|v| v.iter().map(crate::rational::format_rational).collect())
                    .collect()
            })
            .collect();
        TableJson { dim: self.dim, table }.serialize(s)
    }
}

impl<'de> Deserialize<'de> for AlgebraTable {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let raw = TableJson::deserialize(d)?;
        let table = raw
            .table
            .iter()
            .map(|row| {
                row.iter()
                    .map(|v| v.iter().map(|x| crate::rational::parse_rational(x)).collect())
                    .collect::<Result<Vec<Vec<_>>>>()
            })
            .collect::<Result<Vec<_>>>()
            .map_err(D::Error::custom)?;
        AlgebraTable::new(raw.dim, table).map_err(D::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn product_table() {
        assert_eq!(bracket(&Sl2Element::e(), &Sl2Element::f()), Sl2Element::h());
        assert!(bracket(&Sl2Element::e(), &Sl2Element::e()).is_zero());
        assert_eq!(
            bracket(&Sl2Element::f(), &Sl2Element::h()),
            Sl2Element::f().scale(&int(-2))
        );
        assert_eq!(
            bracket(&Sl2Element::e(), &Sl2Element::h()),
            Sl2Element::e().scale(&int(2))
        );
    }

    #[test]
    fn antisymmetry_on_basis() {
        for (x, y) in Generator::pairs() {
            assert!(bracket_basis(x, y).add(&bracket_basis(y, x)).is_zero());
        }
    }

    #[test]
    fn sl2_and_abelian_tables_are_leibniz() {
        let r = AlgebraTable::sl2().check_leibniz_identity();
        assert_eq!(r.triples_checked, 27);
        assert!(r.passed());
        assert!(AlgebraTable::zero(4).check_leibniz_identity().passed());
    }

    #[test]
    fn tampered_table_reports_triple() {
        // [e,e] = h alone is still Leibniz: every iterated product vanishes.
        let mut t = AlgebraTable::zero(3);
        t.set(0, 0, 2, int(1));
        assert!(t.check_leibniz_identity().passed());

        // With [h,e] = e added, (e,h,e) gives [e,[h,e]] − [[e,h],e] + [[e,e],h] = h.
        t.set(2, 0, 0, int(1));
        let r = t.check_leibniz_identity();
        assert!(!r.passed());
        assert!(r.violations.iter().any(|v| v.triple == (0, 2, 0)));
        let v = r.violations.iter().find(|v| v.triple == (0, 2, 0)).unwrap();
        assert_eq!(v.residual, vec![int(0), int(0), int(1)]);
    }

    #[test]
    fn adjoint_examples() {
        assert_eq!(
            adjoint(&Sl2Element::h()),
            MatrixQ::diagonal(&[int(2), int(-2), int(0)])
        );
        assert!(adjoint(&Sl2Element::zero()).is_zero());
        let c = MatrixQ::commutator(&adjoint(&Sl2Element::e()), &adjoint(&Sl2Element::f())).unwrap();
        assert_eq!(c, adjoint(&Sl2Element::h()));
    }

    #[test]
    fn adjoint_is_right_representation() {
        for (x, y) in Generator::pairs() {
            let (ax, ay) = (adjoint(&Sl2Element::basis(x)), adjoint(&Sl2Element::basis(y)));
            let lhs = adjoint(&bracket_basis(x, y));
            assert_eq!(lhs, MatrixQ::commutator(&ax, &ay).unwrap(), "pair ({x},{y})");
        }
    }

    #[test]
    fn table_json_roundtrip() {
        let t = AlgebraTable::sl2();
        let s = serde_json::to_string(&t).unwrap();
        assert!(s.starts_with(r#"{"dim":3,"table":"#));
        let back: AlgebraTable = serde_json::from_str(&s).unwrap();
        assert_eq!(back, t);
    }
}
