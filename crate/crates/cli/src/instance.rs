//! JSON instance files: named tori, classes, isogenies and bundles.
//!
//! ```json
//! {
//!   "tori": [{"name": "E", "g": 1, "J": [["0", "-1"], ["1", "0"]]}],
//!   "classes": [{"name": "L", "torus": "E", "E": [[0, -1], [1, 0]], "xi": ["0", "1/2"]}],
//!   "isogenies": [{"name": "id", "source": "E", "target": "E", "A": [[1, 0], [0, 1]]}],
//!   "bundles": [{"name": "F", "isogeny": "id", "class": "L"}]
//! }
//! ```
//!
//! Rationals are strings `"p"` or `"p/q"`; integers may be JSON numbers or
//! decimal strings. A missing `xi` means the zero character.

use std::collections::BTreeMap;
use std::fmt;
use std::path::Path;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::ToPrimitive;
use serde::de::{self, Visitor};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use semihom_core::exact_serde::{format_rational, parse_integer, parse_rational};
use semihom_core::line_bundle::{HomogeneousClass, LineBundleClass};
use semihom_core::linalg::{AlternatingForm, IntMatrix, RatMatrix};
use semihom_core::semihom::SemihomBundle;
use semihom_core::torus::{ComplexTorus, Isogeny};

use crate::error::CliError;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExactInt(pub BigInt);

impl Serialize for ExactInt {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self.0.to_i64() {
            Some(v) => s.serialize_i64(v),
            None => s.serialize_str(&self.0.to_string()),
        }
    }
}

impl<'de> Deserialize<'de> for ExactInt {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        struct IntVisitor;
        impl Visitor<'_> for IntVisitor {
            type Value = ExactInt;
            fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
                f.write_str("an integer or a decimal integer string")
            }
            fn visit_i64<E: de::Error>(self, v: i64) -> Result<ExactInt, E> {
                Ok(ExactInt(v.into()))
            }
            fn visit_u64<E: de::Error>(self, v: u64) -> Result<ExactInt, E> {
                Ok(ExactInt(v.into()))
            }
            fn visit_str<E: de::Error>(self, v: &str) -> Result<ExactInt, E> {
                parse_integer(v).map(ExactInt).ok_or_else(|| E::custom(format!("bad integer {v:?}")))
            }
        }
        d.deserialize_any(IntVisitor)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExactRational(pub BigRational);

impl Serialize for ExactRational {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&format_rational(&self.0))
    }
}

impl<'de> Deserialize<'de> for ExactRational {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        parse_rational(&s)
            .map(ExactRational)
            .ok_or_else(|| de::Error::custom(format!("bad rational {s:?}")))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TorusDef {
    pub name: String,
    pub g: usize,
    #[serde(rename = "J")]
    pub j: Vec<Vec<ExactRational>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ClassDef {
    pub name: String,
    pub torus: String,
    #[serde(rename = "E")]
    pub e: Vec<Vec<ExactInt>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub xi: Option<Vec<ExactRational>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct IsogenyDef {
    pub name: String,
    pub source: String,
    pub target: String,
    #[serde(rename = "A")]
    pub a: Vec<Vec<ExactInt>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BundleDef {
    pub name: String,
    pub isogeny: String,
    pub class: String,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InstanceFile {
    #[serde(default)]
    pub tori: Vec<TorusDef>,
    #[serde(default)]
    pub classes: Vec<ClassDef>,
    #[serde(default)]
    pub isogenies: Vec<IsogenyDef>,
    #[serde(default)]
    pub bundles: Vec<BundleDef>,
}

/// A definition that failed to validate.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ObjectError {
    pub kind: String,
    pub name: String,
    pub message: String,
}

impl fmt::Display for ObjectError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} '{}': {}", self.kind, self.name, self.message)
    }
}

/// Validated objects by name. Names are unique across all kinds.
#[derive(Clone, Debug, Default)]
pub struct Model {
    pub tori: BTreeMap<String, ComplexTorus>,
    pub classes: BTreeMap<String, LineBundleClass>,
    pub isogenies: BTreeMap<String, Isogeny>,
    pub bundles: BTreeMap<String, SemihomBundle>,
}

#[derive(Clone, Copy, Debug)]
pub enum Object<'a> {
    Torus(&'a ComplexTorus),
    Class(&'a LineBundleClass),
    Isogeny(&'a Isogeny),
    Bundle(&'a SemihomBundle),
}

impl Model {
    pub fn get(&self, name: &str) -> Option<Object<'_>> {
        self.tori
            .get(name)
            .map(Object::Torus)
            .or_else(|| self.classes.get(name).map(Object::Class))
            .or_else(|| self.isogenies.get(name).map(Object::Isogeny))
            .or_else(|| self.bundles.get(name).map(Object::Bundle))
    }

    pub fn len(&self) -> usize {
        self.tori.len() + self.classes.len() + self.isogenies.len() + self.bundles.len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

fn int_matrix(rows: &[Vec<ExactInt>]) -> Result<IntMatrix, String> {
    let cols = rows.first().map_or(0, Vec::len);
    if rows.iter().any(|r| r.len() != cols) {
        return Err("ragged matrix".into());
    }
    let data = rows.iter().flatten().map(|x| x.0.clone()).collect();
    IntMatrix::new(rows.len(), cols, data).map_err(|e| e.to_string())
}

fn rat_matrix(rows: &[Vec<ExactRational>]) -> Result<RatMatrix, String> {
    let cols = rows.first().map_or(0, Vec::len);
    if rows.iter().any(|r| r.len() != cols) {
        return Err("ragged matrix".into());
    }
    let data = rows.iter().flatten().map(|x| x.0.clone()).collect();
    RatMatrix::new(rows.len(), cols, data).map_err(|e| e.to_string())
}

fn int_rows(m: &IntMatrix) -> Vec<Vec<ExactInt>> {
    (0..m.rows()).map(|i| m.row(i).iter().cloned().map(ExactInt).collect()).collect()
}

fn rat_rows(m: &RatMatrix) -> Vec<Vec<ExactRational>> {
    (0..m.rows()).map(|i| m.row(i).iter().cloned().map(ExactRational).collect()).collect()
}

impl InstanceFile {
    pub fn parse(text: &str) -> Result<Self, CliError> {
        serde_json::from_str(text).map_err(|e| CliError::Parse(e.to_string()))
    }

    pub fn load(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path)
            .map_err(|source| CliError::Io { path: path.to_path_buf(), source })?;
        Self::parse(&text)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("instance files always serialize")
    }

    /// Validates every definition in order; an object that refers to an
    /// invalid or missing one is itself reported.
    pub fn build(&self) -> (Model, Vec<ObjectError>) {
        let mut model = Model::default();
        let mut errors = Vec::new();
        let mut fail = |kind: &str, name: &str, message: String| {
            errors.push(ObjectError { kind: kind.into(), name: name.into(), message });
        };
        let mut seen = std::collections::BTreeSet::new();

        for t in &self.tori {
            if !seen.insert(t.name.clone()) {
                fail("torus", &t.name, "duplicate name".into());
                continue;
            }
            let built = rat_matrix(&t.j).and_then(|j| {
                if j.rows() != 2 * t.g || j.cols() != 2 * t.g {
                    return Err(format!("J is {}x{} but g = {}", j.rows(), j.cols(), t.g));
                }
                ComplexTorus::new(j).map_err(|e| e.to_string())
            });
            match built {
                Ok(x) => {
                    model.tori.insert(t.name.clone(), x);
                }
                Err(m) => fail("torus", &t.name, m),
            }
        }

        for c in &self.classes {
            if !seen.insert(c.name.clone()) {
                fail("class", &c.name, "duplicate name".into());
                continue;
            }
            let Some(torus) = model.tori.get(&c.torus) else {
                fail("class", &c.name, format!("unknown or invalid torus '{}'", c.torus));
                continue;
            };
            let built = int_matrix(&c.e).and_then(|e| {
                let form = AlternatingForm::new(e).map_err(|e| e.to_string())?;
                let xi = match &c.xi {
                    Some(xi) => HomogeneousClass::new(xi.iter().map(|x| x.0.clone()).collect()),
                    None => HomogeneousClass::zero(torus.rank()),
                };
                LineBundleClass::new(torus.clone(), form, xi).map_err(|e| e.to_string())
            });
            match built {
                Ok(l) => {
                    model.classes.insert(c.name.clone(), l);
                }
                Err(m) => fail("class", &c.name, m),
            }
        }

        for f in &self.isogenies {
            if !seen.insert(f.name.clone()) {
                fail("isogeny", &f.name, "duplicate name".into());
                continue;
            }
            let (Some(source), Some(target)) = (model.tori.get(&f.source), model.tori.get(&f.target)) else {
                fail("isogeny", &f.name, format!("unknown or invalid torus '{}' or '{}'", f.source, f.target));
                continue;
            };
            let built = int_matrix(&f.a)
                .and_then(|a| Isogeny::new(source.clone(), target.clone(), a).map_err(|e| e.to_string()));
            match built {
                Ok(iso) => {
                    model.isogenies.insert(f.name.clone(), iso);
                }
                Err(m) => fail("isogeny", &f.name, m),
            }
        }

        for b in &self.bundles {
            if !seen.insert(b.name.clone()) {
                fail("bundle", &b.name, "duplicate name".into());
                continue;
            }
            let (Some(iso), Some(class)) = (model.isogenies.get(&b.isogeny), model.classes.get(&b.class)) else {
                fail("bundle", &b.name, format!("unknown or invalid isogeny '{}' or class '{}'", b.isogeny, b.class));
                continue;
            };
            match SemihomBundle::new(iso.clone(), class.clone()) {
                Ok(e) => {
                    model.bundles.insert(b.name.clone(), e);
                }
                Err(e) => fail("bundle", &b.name, e.to_string()),
            }
        }
        (model, errors)
    }

    pub fn validated(&self) -> Result<Model, CliError> {
        let (model, errors) = self.build();
        if errors.is_empty() {
            Ok(model)
        } else {
            Err(CliError::InvalidObjects(errors))
        }
    }

    pub fn push_torus(&mut self, name: &str, x: &ComplexTorus) {
        self.tori.push(TorusDef { name: name.into(), g: x.dim(), j: rat_rows(x.complex_structure()) });
    }

    pub fn push_class(&mut self, name: &str, torus: &str, l: &LineBundleClass) {
        self.classes.push(ClassDef {
            name: name.into(),
            torus: torus.into(),
            e: int_rows(l.form().matrix()),
            xi: Some(l.xi().entries().iter().cloned().map(ExactRational).collect()),
        });
    }

    /// A self-contained instance holding one class and its torus.
    pub fn of_class(name: &str, l: &LineBundleClass) -> Self {
        let mut out = InstanceFile::default();
        out.push_torus("X", l.torus());
        out.push_class(name, "X", l);
        out
    }

    /// A self-contained instance holding one bundle `f_*(L)`.
    pub fn of_bundle(name: &str, e: &SemihomBundle) -> Self {
        let mut out = InstanceFile::default();
        let f = e.isogeny();
        out.push_torus("Y", f.source());
        out.push_torus("X", f.target());
        out.push_class("L", "Y", e.class());
        out.isogenies.push(IsogenyDef {
            name: "f".into(),
            source: "Y".into(),
            target: "X".into(),
            a: int_rows(f.matrix()),
        });
        out.bundles.push(BundleDef { name: name.into(), isogeny: "f".into(), class: "L".into() });
        out
    }
}
