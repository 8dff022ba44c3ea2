//! JSON input/output for filtrations and diagrams, and the plot CSV.
//!
//! Numbers are JSON numbers, or the strings `"-inf"` / `"+inf"`.

use std::fmt::Write as _;
use std::path::Path;

use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error as ThisError;

use crate::diagram::{ContinuousInterval, Diagram};
use crate::homology::{BValue, BipathFunction, SimplicialComplex};
use crate::linalg::PrimeField;
use crate::poset::{Dec, DecValue};
use crate::Error;

#[derive(Debug, ThisError, Clone, PartialEq)]
pub enum FormatError {
    #[error("cannot read {path}: {message}")]
    Read { path: String, message: String },
    #[error("malformed JSON: {0}")]
    Json(String),
    #[error("field size {0} is not a prime")]
    NotPrime(u64),
    #[error("simplex {simplex} uses vertex {label:?}, which is not in the vertex list")]
    UnknownVertex { simplex: usize, label: String },
    #[error("simplex #{simplex} needs both f1 and f2")]
    MissingValue { simplex: usize },
    #[error("in lower-star mode values belong on single vertices only, but simplex #{simplex} has them")]
    ValueOnHigherSimplex { simplex: usize },
    #[error("in lower-star mode every vertex needs a value; {0:?} has none")]
    VertexWithoutValue(String),
    #[error("{0:?} is not a number; use a JSON number, \"-inf\" or \"+inf\"")]
    BadNumber(String),
    #[error("{0:?} is not a decoration; use \"-\" or \"+\"")]
    BadDecoration(String),
    #[error("{0:?} is not an interval type; use U, D, B, L or R")]
    BadType(String),
    #[error("a {kind} point needs the endpoint {field:?}")]
    MissingEndpoint { kind: String, field: &'static str },
    #[error("a {kind} point must not carry {field:?}")]
    ExtraEndpoint { kind: String, field: &'static str },
    #[error("could not tell whether the file is a filtration or a diagram")]
    UnknownKind,
}

/// An extended real: JSON number or `"-inf"` / `"+inf"`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Num(pub f64);

impl Serialize for Num {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        if self.0 == f64::INFINITY {
            s.serialize_str("+inf")
        } else if self.0 == f64::NEG_INFINITY {
            s.serialize_str("-inf")
        } else {
            s.serialize_f64(self.0)
        }
    }
}

impl<'de> Deserialize<'de> for Num {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Raw {
            Number(f64),
            Text(String),
        }
        match Raw::deserialize(d)? {
            Raw::Number(x) => Ok(Num(x)),
            Raw::Text(t) => parse_inf(&t).map(Num).ok_or_else(|| {
                serde::de::Error::custom(FormatError::BadNumber(t))
            }),
        }
    }
}

fn parse_inf(t: &str) -> Option<f64> {
    match t.trim() {
        "+inf" | "inf" => Some(f64::INFINITY),
        "-inf" => Some(f64::NEG_INFINITY),
        _ => None,
    }
}

fn fmt_num(x: f64) -> String {
    if x == f64::INFINITY {
        "+inf".into()
    } else if x == f64::NEG_INFINITY {
        "-inf".into()
    } else {
        format!("{x}")
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Mode {
    #[default]
    Simplexwise,
    LowerStar,
}

fn default_field() -> u64 {
    2
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SimplexEntry {
    pub verts: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub f1: Option<Num>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub f2: Option<Num>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FiltrationFile {
    #[serde(default = "default_field")]
    pub field: u64,
    pub vertices: Vec<String>,
    #[serde(default)]
    pub mode: Mode,
    pub simplices: Vec<SimplexEntry>,
}

/// A parsed and validated filtration file.
#[derive(Debug, Clone)]
pub struct FiltrationInput {
    pub field: PrimeField,
    pub mode: Mode,
    pub complex: SimplicialComplex,
    pub function: BipathFunction,
    /// Per-vertex values in lower-star mode.
    pub vertex_values: Option<(Vec<BValue>, Vec<BValue>)>,
}

fn bvalue(n: Num) -> Result<BValue, Error> {
    Ok(BValue::finite(n.0)?)
}

fn field(p: u64) -> Result<PrimeField, FormatError> {
    PrimeField::new(p).map_err(|_| FormatError::NotPrime(p))
}

impl FiltrationFile {
    pub fn into_input(self) -> Result<FiltrationInput, Error> {
        let field = field(self.field)?;
        let mut simplices = Vec::with_capacity(self.simplices.len());
        for (k, s) in self.simplices.iter().enumerate() {
            let idx = s
                .verts
                .iter()
                .map(|l| {
                    self.vertices
                        .iter()
                        .position(|v| v == l)
                        .ok_or_else(|| FormatError::UnknownVertex { simplex: k, label: l.clone() })
                })
                .collect::<Result<Vec<_>, _>>()?;
            simplices.push(idx);
        }
        let complex = SimplicialComplex::new(self.vertices.clone(), simplices.clone())?;
        let (function, vertex_values) = match self.mode {
            Mode::Simplexwise => {
                let mut f1 = vec![BValue::NegInf; complex.len()];
                let mut f2 = vec![BValue::NegInf; complex.len()];
                for (k, s) in self.simplices.iter().enumerate() {
                    let (Some(a), Some(b)) = (s.f1, s.f2) else {
                        return Err(FormatError::MissingValue { simplex: k }.into());
                    };
                    let at = complex.simplex_index(&simplices[k]).expect("simplex was just inserted");
                    f1[at] = bvalue(a)?;
                    f2[at] = bvalue(b)?;
                }
                (BipathFunction::new(f1, f2), None)
            }
            Mode::LowerStar => {
                let nv = self.vertices.len();
                let mut v1: Vec<Option<BValue>> = vec![None; nv];
                let mut v2: Vec<Option<BValue>> = vec![None; nv];
                for (k, s) in self.simplices.iter().enumerate() {
                    match (simplices[k].as_slice(), s.f1, s.f2) {
                        (_, None, None) => {}
                        ([v], Some(a), Some(b)) => {
                            v1[*v] = Some(bvalue(a)?);
                            v2[*v] = Some(bvalue(b)?);
                        }
                        ([_], _, _) => return Err(FormatError::MissingValue { simplex: k }.into()),
                        _ => return Err(FormatError::ValueOnHigherSimplex { simplex: k }.into()),
                    }
                }
                let collect = |v: Vec<Option<BValue>>| -> Result<Vec<BValue>, FormatError> {
                    v.into_iter()
                        .enumerate()
                        .map(|(i, x)| x.ok_or_else(|| FormatError::VertexWithoutValue(self.vertices[i].clone())))
                        .collect()
                };
                let (v1, v2) = (collect(v1)?, collect(v2)?);
                (BipathFunction::lower_star(&complex, &v1, &v2)?, Some((v1, v2)))
            }
        };
        function.validate(&complex)?;
        Ok(FiltrationInput { field, mode: self.mode, complex, function, vertex_values })
    }
}

pub fn parse_filtration(text: &str) -> Result<FiltrationInput, Error> {
    let file: FiltrationFile = serde_json::from_str(text).map_err(|e| FormatError::Json(e.to_string()))?;
    file.into_input()
}

pub fn read_text(path: &Path) -> Result<String, FormatError> {
    std::fs::read_to_string(path).map_err(|e| FormatError::Read { path: path.display().to_string(), message: e.to_string() })
}

pub fn read_filtration(path: &Path) -> Result<FiltrationInput, Error> {
    parse_filtration(&read_text(path)?)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Endpoint {
    pub v: Num,
    pub dec: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PointEntry {
    #[serde(rename = "type")]
    pub kind: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub birth: Option<Endpoint>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub death: Option<Endpoint>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub upper: Option<Endpoint>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub lower: Option<Endpoint>,
    pub mult: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DiagramFile {
    #[serde(default = "default_field")]
    pub field: u64,
    #[serde(default)]
    pub degree: usize,
    pub points: Vec<PointEntry>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct DiagramInput {
    pub field: u64,
    pub degree: usize,
    pub diagram: Diagram,
}

fn endpoint(v: DecValue) -> Endpoint {
    let dec = match v.dec() {
        Dec::Minus => "-",
        Dec::Plus => "+",
    };
    Endpoint { v: Num(v.value()), dec: dec.into() }
}

fn dec_value(e: &Endpoint) -> Result<DecValue, Error> {
    let dec = match e.dec.as_str() {
        "-" => Dec::Minus,
        "+" => Dec::Plus,
        other => return Err(FormatError::BadDecoration(other.into()).into()),
    };
    Ok(DecValue::new(e.v.0, dec)?)
}

impl PointEntry {
    fn from_interval(i: &ContinuousInterval, mult: usize) -> Self {
        let mut p = PointEntry { kind: i.class().as_str().into(), birth: None, death: None, upper: None, lower: None, mult };
        match *i {
            ContinuousInterval::U { birth, death } | ContinuousInterval::D { birth, death } => {
                p.birth = Some(endpoint(birth));
                p.death = Some(endpoint(death));
            }
            ContinuousInterval::B => {}
            ContinuousInterval::L { upper, lower } | ContinuousInterval::R { upper, lower } => {
                p.upper = Some(endpoint(upper));
                p.lower = Some(endpoint(lower));
            }
        }
        p
    }

    fn to_interval(&self) -> Result<ContinuousInterval, Error> {
        let need = |e: &Option<Endpoint>, field: &'static str| -> Result<DecValue, Error> {
            match e {
                Some(e) => dec_value(e),
                None => Err(FormatError::MissingEndpoint { kind: self.kind.clone(), field }.into()),
            }
        };
        let forbid = |e: &Option<Endpoint>, field: &'static str| -> Result<(), FormatError> {
            match e {
                Some(_) => Err(FormatError::ExtraEndpoint { kind: self.kind.clone(), field }),
                None => Ok(()),
            }
        };
        let bar = || -> Result<(DecValue, DecValue), Error> {
            forbid(&self.upper, "upper")?;
            forbid(&self.lower, "lower")?;
            Ok((need(&self.birth, "birth")?, need(&self.death, "death")?))
        };
        let cuts = || -> Result<(DecValue, DecValue), Error> {
            forbid(&self.birth, "birth")?;
            forbid(&self.death, "death")?;
            Ok((need(&self.upper, "upper")?, need(&self.lower, "lower")?))
        };
        Ok(match self.kind.as_str() {
            "U" => {
                let (b, d) = bar()?;
                ContinuousInterval::upper_bar(b, d)?
            }
            "D" => {
                let (b, d) = bar()?;
                ContinuousInterval::lower_bar(b, d)?
            }
            "B" => {
                for (e, f) in [(&self.birth, "birth"), (&self.death, "death"), (&self.upper, "upper"), (&self.lower, "lower")] {
                    forbid(e, f)?;
                }
                ContinuousInterval::B
            }
            "L" => {
                let (u, l) = cuts()?;
                ContinuousInterval::left(u, l)?
            }
            "R" => {
                let (u, l) = cuts()?;
                ContinuousInterval::right(u, l)?
            }
            other => return Err(FormatError::BadType(other.into()).into()),
        })
    }
}

impl DiagramFile {
    pub fn from_diagram(diagram: &Diagram, field: u64, degree: usize) -> Self {
        let points = diagram.iter().map(|(i, m)| PointEntry::from_interval(i, m)).collect();
        Self { field, degree, points }
    }

    pub fn into_input(self) -> Result<DiagramInput, Error> {
        field(self.field)?;
        let mut diagram = Diagram::new();
        for p in &self.points {
            diagram.insert(p.to_interval()?, p.mult)?;
        }
        Ok(DiagramInput { field: self.field, degree: self.degree, diagram })
    }
}

pub fn parse_diagram(text: &str) -> Result<DiagramInput, Error> {
    let file: DiagramFile = serde_json::from_str(text).map_err(|e| FormatError::Json(e.to_string()))?;
    file.into_input()
}

pub fn read_diagram(path: &Path) -> Result<DiagramInput, Error> {
    parse_diagram(&read_text(path)?)
}

pub fn diagram_to_json(diagram: &Diagram, field: u64, degree: usize) -> String {
    let mut s = serde_json::to_string_pretty(&DiagramFile::from_diagram(diagram, field, degree))
        .expect("diagram serialization cannot fail");
    s.push('\n');
    s
}

/// `type,s,t,mult`, one row per distinct point; `B` rows use `-inf,+inf`.
pub fn diagram_to_csv(diagram: &Diagram) -> String {
    let mut out = String::from("type,s,t,mult\n");
    for (i, m) in diagram.iter() {
        let (s, t) = match i.plot_point() {
            Some((s, t)) => (fmt_num(s.value()), fmt_num(t.value())),
            None => ("-inf".to_string(), "+inf".to_string()),
        };
        writeln!(out, "{},{s},{t},{m}", i.class().as_str()).expect("writing to a String");
    }
    out
}

/// What kind of input file a JSON document is.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FileKind {
    Filtration,
    Diagram,
}

pub fn detect_kind(text: &str) -> Result<FileKind, FormatError> {
    let value: serde_json::Value = serde_json::from_str(text).map_err(|e| FormatError::Json(e.to_string()))?;
    let obj = value.as_object().ok_or(FormatError::UnknownKind)?;
    match (obj.contains_key("simplices"), obj.contains_key("points")) {
        (true, false) => Ok(FileKind::Filtration),
        (false, true) => Ok(FileKind::Diagram),
        _ => Err(FormatError::UnknownKind),
    }
}
