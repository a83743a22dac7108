//! JSON documents read and written by the command line.
//!
//! Complex numbers are `[re, im]` pairs everywhere. Matrices are
//! `{"n": 2, "entries": [[[re, im], ...], ...]}` in row-major order.

use fieldscope::geometry::Ellipse;
use fieldscope::{ComplexMatrix, C64};
use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::error::CliError;

/// Removes negative zero so that emitted numbers are stable.
pub(crate) fn clean(x: f64) -> f64 {
    x + 0.0
}

pub(crate) fn pair(z: C64) -> [f64; 2] {
    [clean(z.re), clean(z.im)]
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MatrixDoc {
    pub n: usize,
    pub entries: Vec<Vec<[f64; 2]>>,
}

impl MatrixDoc {
    pub fn from_matrix(m: &ComplexMatrix) -> Self {
        Self {
            n: m.dim(),
            entries: m
                .rows()
                .map(|r| r.iter().map(|&z| pair(z)).collect())
                .collect(),
        }
    }

    pub fn to_matrix(&self) -> Result<ComplexMatrix, CliError> {
        if self.n == 0 {
            return Err(CliError::Parse("matrix dimension must be positive".into()));
        }
        if self.entries.len() != self.n || self.entries.iter().any(|r| r.len() != self.n) {
            return Err(CliError::Parse(format!(
                "\"entries\" must hold {n} rows of {n} [re, im] pairs",
                n = self.n
            )));
        }
        let flat = self
            .entries
            .iter()
            .flatten()
            .map(|&[re, im]| C64::new(re, im))
            .collect();
        Ok(ComplexMatrix::new(self.n, flat)?)
    }
}

/// Input document: one matrix, or a pair `{"a": ..., "c": ...}`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PairDoc {
    pub a: MatrixDoc,
    pub c: MatrixDoc,
}

#[derive(Debug, Clone)]
pub enum Input {
    Single(ComplexMatrix),
    Pair(ComplexMatrix, ComplexMatrix),
}

impl Input {
    pub fn primary(&self) -> &ComplexMatrix {
        match self {
            Input::Single(a) | Input::Pair(a, _) => a,
        }
    }

    pub fn require_pair(&self) -> Result<(&ComplexMatrix, &ComplexMatrix), CliError> {
        match self {
            Input::Pair(a, c) => Ok((a, c)),
            Input::Single(_) => Err(CliError::Parse(
                "this command needs a pair document {\"a\": matrix, \"c\": matrix}".into(),
            )),
        }
    }
}

pub fn parse_input(text: &str) -> Result<Input, CliError> {
    let value: Value = serde_json::from_str(text).map_err(|e| CliError::Parse(e.to_string()))?;
    let is_pair = value.get("a").is_some();
    if is_pair {
        let doc: PairDoc =
            serde_json::from_value(value).map_err(|e| CliError::Parse(e.to_string()))?;
        Ok(Input::Pair(doc.a.to_matrix()?, doc.c.to_matrix()?))
    } else {
        let doc: MatrixDoc =
            serde_json::from_value(value).map_err(|e| CliError::Parse(e.to_string()))?;
        Ok(Input::Single(doc.to_matrix()?))
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PrincipalDoc {
    pub lambda: [f64; 2],
    pub gamma: f64,
}

/// Canonical ellipse: major semi-axis first, rotation of the major axis.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EllipseDoc {
    pub center: [f64; 2],
    pub semi_axes: [f64; 2],
    pub rotation_rad: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub principal: Option<PrincipalDoc>,
}

impl EllipseDoc {
    pub fn from_ellipse(e: &Ellipse) -> Self {
        let e = e.canonical();
        Self {
            center: pair(e.center),
            semi_axes: [clean(e.axis_u), clean(e.axis_v)],
            rotation_rad: clean(e.rotation),
            principal: None,
        }
    }

    pub fn to_ellipse(&self) -> Ellipse {
        Ellipse::new(
            C64::new(self.center[0], self.center[1]),
            self.semi_axes[0],
            self.semi_axes[1],
            self.rotation_rad,
        )
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct InverseDoc {
    pub point: [f64; 2],
    pub vector: Vec<[f64; 2]>,
    /// `⟨Ah, h⟩` recomputed from the returned vector.
    pub value: [f64; 2],
    pub scale: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReductionDoc {
    pub q: MatrixDoc,
    pub b: MatrixDoc,
    pub shift: [f64; 2],
    pub residual: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RankOneDoc {
    pub c11: [f64; 2],
    pub tail_norm: f64,
    pub angles: Vec<f64>,
    pub support: Vec<f64>,
    pub hull: Vec<[f64; 2]>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PointsDoc {
    pub points: Vec<[f64; 2]>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CheckDoc {
    pub name: String,
    pub hausdorff: f64,
    pub relative_hausdorff: f64,
    pub max_outward_violation: f64,
    pub n_points: usize,
    pub pass: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerifyDoc {
    pub checks: Vec<CheckDoc>,
}

pub fn to_json<T: Serialize>(doc: &T) -> String {
    let mut s = serde_json::to_string_pretty(doc).expect("documents serialize");
    s.push('\n');
    s
}
