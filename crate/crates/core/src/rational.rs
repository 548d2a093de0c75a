//! Rational scalars and their shared JSON encoding: a rational is the string
//! `"p/q"` (or `"p"` when `q = 1`), a matrix is an array of rows of such
//! strings.

use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::linalg::Matrix;

pub type Rational = BigRational;

pub fn int(x: i64) -> Rational {
    Rational::from_integer(BigInt::from(x))
}

pub fn frac(p: i64, q: i64) -> Rational {
    Rational::new(BigInt::from(p), BigInt::from(q))
}

pub fn format_rational(x: &Rational) -> String {
    if x.denom().is_one() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

pub fn parse_rational(s: &str) -> Result<Rational> {
    let s = s.trim();
    let bad = || Error::Parse(format!("not a rational: {s:?}"));
    let (p, q) = match s.split_once('/') {
        Some((p, q)) => (p, q),
        None => (s, "1"),
    };
    let p = BigInt::from_str(p.trim()).map_err(|_| bad())?;
    let q = BigInt::from_str(q.trim()).map_err(|_| bad())?;
    if q.is_zero() {
        return Err(bad());
    }
    Ok(Rational::new(p, q))
}

/// `true` when `x` is stored in lowest terms with a positive denominator.
pub fn is_canonical(x: &Rational) -> bool {
    let rebuilt = Rational::new(x.numer().clone(), x.denom().clone());
    rebuilt.numer() == x.numer() && rebuilt.denom() == x.denom()
}

impl Serialize for Matrix<Rational> {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let rows: Vec<Vec<String>> = (0..self.rows())
            .map(|r| self.row(r).iter().map(format_rational).collect())
            .collect();
        rows.serialize(s)
    }
}

impl<'de> Deserialize<'de> for Matrix<Rational> {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let rows = Vec::<Vec<String>>::deserialize(d)?;
        let parsed = rows
            .iter()
            .map(|r| r.iter().map(|x| parse_rational(x)).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()
            .map_err(D::Error::custom)?;
        Matrix::from_rows(parsed).map_err(D::Error::custom)
    }
}

impl Serialize for crate::linalg::Subspace<Rational> {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = s.serialize_struct("Subspace", 2)?;
        st.serialize_field("dim", &self.dim())?;
        st.serialize_field("basis", self.basis_matrix())?;
        st.end()
    }
}

/// `#[serde(with = "rational_str")]` for single rationals.
pub mod rational_str {
    use super::*;

    pub fn serialize<S: Serializer>(x: &Rational, s: S) -> std::result::Result<S::Ok, S::Error> {
        format_rational(x).serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<Rational, D::Error> {
        parse_rational(&String::deserialize(d)?).map_err(D::Error::custom)
    }
}

/// `#[serde(with = "rational_vec")]` for vectors of rationals.
pub mod rational_vec {
    use super::*;

    pub fn serialize<S: Serializer>(v: &[Rational], s: S) -> std::result::Result<S::Ok, S::Error> {
        v.iter().map(format_rational).collect::<Vec<_>>().serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(
        d: D,
    ) -> std::result::Result<Vec<Rational>, D::Error> {
        Vec::<String>::deserialize(d)?
            .iter()
            .map(|x| parse_rational(x).map_err(D::Error::custom))
            .collect()
    }
}

/// `#[serde(with = "rational_vecs")]` for lists of vectors.
pub mod rational_vecs {
    use super::*;

    pub fn serialize<S: Serializer>(
        v: &[Vec<Rational>],
        s: S,
    ) -> std::result::Result<S::Ok, S::Error> {
        v.iter()
            .map(|row| row.iter().map(format_rational).collect::<Vec<_>>())
            .collect::<Vec<_>>()
            .serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(
        d: D,
    ) -> std::result::Result<Vec<Vec<Rational>>, D::Error> {
        Vec::<Vec<String>>::deserialize(d)?
            .iter()
            .map(|row| {
                row.iter()
                    .map(|x| parse_rational(x).map_err(D::Error::custom))
                    .collect()
            })
            .collect()
    }
}

/// Serializes `(name, value)` pairs as a JSON object of rational strings.
pub mod named_rationals {
    use super::*;

    pub fn serialize<S: Serializer>(
        v: &[(String, Rational)],
        s: S,
    ) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeMap;
        let mut map = s.serialize_map(Some(v.len()))?;
        for (k, x) in v {
            map.serialize_entry(k, &format_rational(x))?;
        }
        map.end()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn formatting() {
        assert_eq!(format_rational(&int(0)), "0");
        assert_eq!(format_rational(&int(-7)), "-7");
        assert_eq!(format_rational(&frac(6, -4)), "-3/2");
    }

    #[test]
    fn parsing() {
        assert_eq!(parse_rational("-3/2").unwrap(), frac(-3, 2));
        assert_eq!(parse_rational("4/2").unwrap(), int(2));
        assert_eq!(parse_rational(" 5 ").unwrap(), int(5));
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("x").is_err());
        assert!(parse_rational("").is_err());
    }

    #[test]
    fn matrix_json_shape() {
        let m = Matrix::from_rows(vec![vec![frac(1, 2), int(0)], vec![int(-1), int(3)]]).unwrap();
        let json = serde_json::to_string(&m).unwrap();
        assert_eq!(json, r#"[["1/2","0"],["-1","3"]]"#);
        let back: Matrix<Rational> = serde_json::from_str(&json).unwrap();
        assert_eq!(back, m);
        assert!(serde_json::from_str::<Matrix<Rational>>(r#"[["1"],["1","2"]]"#).is_err());
    }
}
