//! JSON code configuration files.
//!
//! ```json
//! {
//!   "field": {"p": 2, "e": 2, "modulus": [1, 1, 1]},
//!   "curve": {"family": "hermitian", "q0": 2},
//!   "points": "all",
//!   "m": 4
//! }
//! ```
//!
//! `points` is either `"all"` or a list of `[x, y]` element-index pairs; on
//! the rational curve `y` must be 0.

use std::path::Path;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::HarnessError;
use crate::agcode::CodeConfig;
use crate::curves::{Curve, CurveFamily, Point};
use crate::galois::{Field, FieldDescriptor};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CurveSpec {
    pub family: CurveFamily,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub q0: Option<u32>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PointsSpec {
    All,
    Explicit(Vec<[u32; 2]>),
}

#[derive(Serialize, Deserialize)]
#[serde(untagged)]
enum RawPoints {
    Keyword(String),
    List(Vec<[u32; 2]>),
}

impl Serialize for PointsSpec {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self {
            PointsSpec::All => RawPoints::Keyword("all".into()).serialize(s),
            PointsSpec::Explicit(v) => RawPoints::List(v.clone()).serialize(s),
        }
    }
}

impl<'de> Deserialize<'de> for PointsSpec {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        match RawPoints::deserialize(d)? {
            RawPoints::Keyword(k) if k == "all" => Ok(PointsSpec::All),
            RawPoints::Keyword(k) => {
                Err(serde::de::Error::custom(format!("unknown points keyword {k:?}, expected \"all\"")))
            }
            RawPoints::List(v) => Ok(PointsSpec::Explicit(v)),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CodeConfigFile {
    pub field: FieldDescriptor,
    pub curve: CurveSpec,
    pub points: PointsSpec,
    pub m: u32,
}

impl CodeConfigFile {
    pub fn load(path: &Path) -> Result<CodeConfigFile, HarnessError> {
        let text = std::fs::read_to_string(path)?;
        Ok(serde_json::from_str(&text)?)
    }

    pub fn from_json(text: &str) -> Result<CodeConfigFile, HarnessError> {
        Ok(serde_json::from_str(text)?)
    }

    pub fn to_code_config(&self) -> Result<CodeConfig, HarnessError> {
        let field = Field::from_descriptor(&self.field)?;
        let curve = match self.curve.family {
            CurveFamily::Rational => Curve::rational(&field),
            CurveFamily::Hermitian => Curve::hermitian(&field)?,
        };
        if let (Some(want), Some(have)) = (self.curve.q0, curve.q0()) {
            if want != have {
                return Err(HarnessError::Config(format!(
                    "q0 = {want} does not match the field, which gives q0 = {have}"
                )));
            }
        }
        let points = match &self.points {
            PointsSpec::All => curve.rational_points(),
            PointsSpec::Explicit(list) => list
                .iter()
                .map(|&[x, y]| Ok(Point::affine(field.element(x as u64)?, field.element(y as u64)?)))
                .collect::<Result<Vec<_>, HarnessError>>()?,
        };
        Ok(CodeConfig::new(curve, points, self.m))
    }
}
