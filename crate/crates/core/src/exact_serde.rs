//! Serde adapters writing exact numbers as decimal strings (`"p"`, `"p/q"`).

use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{de::Error as _, Deserialize, Deserializer, Serializer};

pub fn format_rational(x: &BigRational) -> String {
    if x.denom().is_one() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

/// Parses `"p"` or `"p/q"` with optional signs; rejects zero denominators
/// and surrounding whitespace.
pub fn parse_rational(s: &str) -> Option<BigRational> {
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n, Some(d)),
        None => (s, None),
    };
    let num = parse_integer(num)?;
    let den = match den {
        Some(d) => parse_integer(d)?,
        None => BigInt::one(),
    };
    if den.is_zero() {
        return None;
    }
    Some(BigRational::new(num, den))
}

pub fn parse_integer(s: &str) -> Option<BigInt> {
    let digits = s.strip_prefix(['-', '+']).unwrap_or(s);
    if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
        return None;
    }
    BigInt::from_str(s).ok()
}

pub mod bigint {
    use super::*;

    pub fn serialize<S: Serializer>(x: &BigInt, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&x.to_string())
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<BigInt, D::Error> {
        let s = String::deserialize(d)?;
        parse_integer(&s).ok_or_else(|| D::Error::custom(format!("bad integer {s:?}")))
    }
}

pub mod bigint_vec {
    use super::*;
    use serde::ser::SerializeSeq;

    pub fn serialize<S: Serializer>(xs: &[BigInt], s: S) -> Result<S::Ok, S::Error> {
        let mut seq = s.serialize_seq(Some(xs.len()))?;
        for x in xs {
            seq.serialize_element(&x.to_string())?;
        }
        seq.end()
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<BigInt>, D::Error> {
        Vec::<String>::deserialize(d)?
            .iter()
            .map(|s| parse_integer(s).ok_or_else(|| D::Error::custom(format!("bad integer {s:?}"))))
            .collect()
    }
}

pub mod rational_vec {
    use super::*;
    use serde::ser::SerializeSeq;

    pub fn serialize<S: Serializer>(xs: &[BigRational], s: S) -> Result<S::Ok, S::Error> {
        let mut seq = s.serialize_seq(Some(xs.len()))?;
        for x in xs {
            seq.serialize_element(&format_rational(x))?;
        }
        seq.end()
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<BigRational>, D::Error> {
        Vec::<String>::deserialize(d)?
            .iter()
            .map(|s| parse_rational(s).ok_or_else(|| D::Error::custom(format!("bad rational {s:?}"))))
            .collect()
    }
}

/// Integer matrices as arrays of rows of integer strings.
pub mod int_matrix {
    use super::*;
    use crate::linalg::IntMatrix;

    pub fn serialize<S: Serializer>(m: &IntMatrix, s: S) -> Result<S::Ok, S::Error> {
        let rows: Vec<Vec<String>> = (0..m.rows())
            .map(|i| m.row(i).iter().map(|x| x.to_string()).collect())
            .collect();
        serde::Serialize::serialize(&rows, s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<IntMatrix, D::Error> {
        let rows = Vec::<Vec<String>>::deserialize(d)?;
        let cols = rows.first().map_or(0, Vec::len);
        let mut data = Vec::with_capacity(rows.len() * cols);
        for row in &rows {
            if row.len() != cols {
                return Err(D::Error::custom("ragged matrix"));
            }
            for s in row {
                data.push(parse_integer(s).ok_or_else(|| D::Error::custom(format!("bad integer {s:?}")))?);
            }
        }
        IntMatrix::new(rows.len(), cols, data).map_err(D::Error::custom)
    }
}
