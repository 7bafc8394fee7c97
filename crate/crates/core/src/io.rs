//! JSON encodings.
//!
//! Complex numbers are `[re, im]` pairs and the point at infinity is the
//! string `"inf"`. A bare JSON number is accepted wherever a complex number
//! or boundary point is expected and read as a real value.

use std::fmt;
use std::path::Path;

use num_complex::Complex64;
use serde::de::{self, Deserializer, Visitor};
use serde::ser::Serializer;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::farey::Rational;
use crate::geodesic::Geodesic;
use crate::mat2c::{GroupElement, Mat2};
use crate::point::BoundaryPoint;
use crate::words::Word;

#[derive(Deserialize)]
#[serde(untagged)]
enum ComplexRepr {
    Pair([f64; 2]),
    Real(f64),
}

impl From<ComplexRepr> for Complex64 {
    fn from(c: ComplexRepr) -> Self {
        match c {
            ComplexRepr::Pair([re, im]) => Complex64::new(re, im),
            ComplexRepr::Real(re) => Complex64::new(re, 0.0),
        }
    }
}

mod complex {
    use super::*;

    pub fn serialize<S: Serializer>(z: &Complex64, s: S) -> std::result::Result<S::Ok, S::Error> {
        [z.re, z.im].serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<Complex64, D::Error> {
        ComplexRepr::deserialize(d).map(Into::into)
    }
}

#[derive(Serialize, Deserialize)]
struct MatRepr {
    #[serde(with = "complex")]
    a: Complex64,
    #[serde(with = "complex")]
    b: Complex64,
    #[serde(with = "complex")]
    c: Complex64,
    #[serde(with = "complex")]
    d: Complex64,
}

impl Serialize for Mat2 {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        MatRepr {
            a: self.a,
            b: self.b,
            c: self.c,
            d: self.d,
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for Mat2 {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let m = MatRepr::deserialize(d)?;
        Ok(Mat2::new(m.a, m.b, m.c, m.d))
    }
}

impl Serialize for GroupElement {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.matrix().serialize(s)
    }
}

impl<'de> Deserialize<'de> for GroupElement {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        GroupElement::from_matrix(Mat2::deserialize(d)?).map_err(de::Error::custom)
    }
}

#[derive(Deserialize)]
#[serde(untagged)]
enum PointRepr {
    Complex(ComplexRepr),
    Symbol(String),
}

impl Serialize for BoundaryPoint {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            BoundaryPoint::Finite(z) => [z.re, z.im].serialize(s),
            BoundaryPoint::Infinity => s.serialize_str("inf"),
        }
    }
}

impl<'de> Deserialize<'de> for BoundaryPoint {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        match PointRepr::deserialize(d)? {
            PointRepr::Complex(c) => Ok(BoundaryPoint::Finite(c.into())),
            PointRepr::Symbol(s) if s == "inf" => Ok(BoundaryPoint::Infinity),
            PointRepr::Symbol(s) => Err(de::Error::custom(format!("expected \"inf\", found {s:?}"))),
        }
    }
}

#[derive(Serialize, Deserialize)]
struct GeodesicRepr {
    e1: BoundaryPoint,
    e2: BoundaryPoint,
}

impl Serialize for Geodesic {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let (e1, e2) = self.endpoints();
        GeodesicRepr { e1, e2 }.serialize(s)
    }
}

impl<'de> Deserialize<'de> for Geodesic {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let g = GeodesicRepr::deserialize(d)?;
        Ok(Geodesic::new(g.e1, g.e2))
    }
}

struct DisplayVisitor(&'static str);

impl<'de> Visitor<'de> for DisplayVisitor {
    type Value = String;

    fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
        f.write_str(self.0)
    }

    fn visit_str<E: de::Error>(self, v: &str) -> std::result::Result<String, E> {
        Ok(v.to_owned())
    }
}

impl Serialize for Word {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Word {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        d.deserialize_str(DisplayVisitor("a word such as \"abA\""))?
            .parse()
            .map_err(de::Error::custom)
    }
}

impl Serialize for Rational {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Rational {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        d.deserialize_str(DisplayVisitor("a rational such as \"3/5\""))?
            .parse()
            .map_err(de::Error::custom)
    }
}

/// Reals that may be infinite: numbers, or `"inf"` / `"-inf"`.
pub mod extended_real {
    use super::*;

    #[derive(Deserialize)]
    #[serde(untagged)]
    enum Repr {
        Number(f64),
        Symbol(String),
    }

    pub fn serialize<S: Serializer>(x: &f64, s: S) -> std::result::Result<S::Ok, S::Error> {
        if x.is_finite() {
            s.serialize_f64(*x)
        } else if *x == f64::INFINITY {
            s.serialize_str("inf")
        } else if *x == f64::NEG_INFINITY {
            s.serialize_str("-inf")
        } else {
            s.serialize_str("nan")
        }
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<f64, D::Error> {
        match Repr::deserialize(d)? {
            Repr::Number(x) => Ok(x),
            Repr::Symbol(s) => match s.as_str() {
                "inf" => Ok(f64::INFINITY),
                "-inf" => Ok(f64::NEG_INFINITY),
                "nan" => Ok(f64::NAN),
                _ => Err(de::Error::custom(format!(
                    "expected a number, \"inf\" or \"-inf\", found {s:?}"
                ))),
            },
        }
    }
}

/// The generator file: `{"A": matrix, "B": matrix}`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GeneratorPair {
    #[serde(rename = "A")]
    pub a: Mat2,
    #[serde(rename = "B")]
    pub b: Mat2,
}

impl GeneratorPair {
    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))
    }

    pub fn read(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?;
        Self::from_json(&text)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("matrices serialize")
    }
}

pub fn matrix_from_json(text: &str) -> Result<Mat2> {
    serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))
}
