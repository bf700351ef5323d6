//! JSON documents read and written by the command-line tool.
//!
//! Numbers are written with 17 significant digits in scientific notation so that
//! output is byte-stable and round-trips exactly.

use num_complex::Complex64;
use serde::de::Error as _;
use serde::ser::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use serde_json::value::RawValue;

use crate::channel::{ChannelFamily, DiagonalChannel};
use crate::error::{Error, Result};
use crate::matrix::ComplexMatrix;

/// A real number serialized with 17 significant digits.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Real(pub f64);

impl Serialize for Real {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        if !self.0.is_finite() {
            return Err(S::Error::custom("cannot serialize a non-finite number"));
        }
        // normalize -0.0
        let x = if self.0 == 0.0 { 0.0 } else { self.0 };
        RawValue::from_string(format!("{x:.16e}"))
            .map_err(S::Error::custom)?
            .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for Real {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let x = f64::deserialize(deserializer)?;
        if !x.is_finite() {
            return Err(D::Error::custom("non-finite number"));
        }
        Ok(Real(x))
    }
}

/// `{"shape": [rows, cols], "entries": [[[re, im], ...], ...]}`, row-major.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MatrixDocument {
    pub shape: [usize; 2],
    pub entries: Vec<Vec<[Real; 2]>>,
}

impl MatrixDocument {
    pub fn from_matrix(m: &ComplexMatrix) -> Self {
        let entries = (0..m.rows())
            .map(|i| m.row(i).iter().map(|z| [Real(z.re), Real(z.im)]).collect())
            .collect();
        Self {
            shape: [m.rows(), m.cols()],
            entries,
        }
    }

    pub fn to_matrix(&self) -> Result<ComplexMatrix> {
        let [rows, cols] = self.shape;
        if self.entries.len() != rows || self.entries.iter().any(|r| r.len() != cols) {
            return Err(Error::Dimension {
                op: "MatrixDocument",
                expected: format!("{rows}x{cols} entry grid"),
                found: format!(
                    "{} rows with lengths {:?}",
                    self.entries.len(),
                    self.entries.iter().map(Vec::len).collect::<Vec<_>>()
                ),
            });
        }
        let data = self
            .entries
            .iter()
            .flatten()
            .map(|[re, im]| Complex64::new(re.0, im.0))
            .collect();
        ComplexMatrix::from_vec(rows, cols, data)
    }
}

/// Channel description: a named family with parameter, or a raw coefficient vector.
#[derive(Debug, Clone, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ChannelSpec {
    #[serde(default)]
    pub n: Option<usize>,
    #[serde(default)]
    pub family: Option<String>,
    #[serde(default)]
    pub p: Option<f64>,
    #[serde(default)]
    pub coefficients: Option<Vec<f64>>,
}

/// Validated form of [`ChannelSpec`].
#[derive(Debug, Clone, PartialEq)]
pub enum ChannelSource {
    Family {
        n: usize,
        family: ChannelFamily,
        p: f64,
    },
    Coefficients {
        n: usize,
        coefficients: Vec<f64>,
    },
}

impl ChannelSpec {
    pub fn validate(self) -> Result<ChannelSource> {
        match (self.family, self.coefficients) {
            (Some(_), Some(_)) => Err(Error::Domain(
                "channel spec must name either a family or coefficients, not both".into(),
            )),
            (None, None) => Err(Error::Domain(
                "channel spec needs a family (with p) or a coefficient vector".into(),
            )),
            (Some(name), None) => {
                let family: ChannelFamily = name.parse()?;
                let n = self
                    .n
                    .ok_or_else(|| Error::Domain("family spec requires n".into()))?;
                let p = self
                    .p
                    .ok_or_else(|| Error::Domain("family spec requires p".into()))?;
                if !p.is_finite() {
                    return Err(Error::Domain("p must be finite".into()));
                }
                Ok(ChannelSource::Family { n, family, p })
            }
            (None, Some(coefficients)) => {
                if self.p.is_some() {
                    return Err(Error::Domain("p is only meaningful with a family".into()));
                }
                let len = coefficients.len();
                let inferred = (len as f64).sqrt().round() as usize;
                let n = self.n.unwrap_or(inferred);
                if n * n != len {
                    return Err(Error::Dimension {
                        op: "ChannelSpec",
                        expected: format!("{} coefficients for n = {n}", n * n),
                        found: format!("{len} coefficients"),
                    });
                }
                Ok(ChannelSource::Coefficients { n, coefficients })
            }
        }
    }
}

impl ChannelSource {
    pub fn dim(&self) -> usize {
        match self {
            ChannelSource::Family { n, .. } | ChannelSource::Coefficients { n, .. } => *n,
        }
    }

    pub fn family(&self) -> Option<(ChannelFamily, f64)> {
        match self {
            ChannelSource::Family { family, p, .. } => Some((*family, *p)),
            ChannelSource::Coefficients { .. } => None,
        }
    }

    /// Families are range-checked; raw coefficient vectors are taken as given so
    /// that property checks can report on maps that are not channels.
    pub fn build(&self) -> Result<DiagonalChannel> {
        match self {
            ChannelSource::Family { n, family, p } => DiagonalChannel::from_family(*family, *n, *p),
            ChannelSource::Coefficients { n, coefficients } => {
                DiagonalChannel::from_raw(*n, coefficients.clone())
            }
        }
    }
}

/// Contents of a `--coefficients` file: a bare array, or a full channel spec object.
#[derive(Debug, Clone, Deserialize)]
#[serde(untagged)]
pub enum CoefficientFile {
    Bare(Vec<f64>),
    Spec(ChannelSpec),
}

#[derive(Debug, Clone, Serialize)]
pub struct KrausResiduals {
    pub reconstruction: Real,
    pub completeness: Real,
}

#[derive(Debug, Clone, Serialize)]
pub struct KrausMetadata {
    pub method: &'static str,
    /// 1-based rows of the Cholesky factor that produced each operator.
    pub source_rows: Vec<usize>,
    pub residuals: KrausResiduals,
}

#[derive(Debug, Clone, Serialize)]
pub struct KrausDocument {
    pub operators: Vec<MatrixDocument>,
    pub metadata: KrausMetadata,
}

#[derive(Debug, Clone, Serialize)]
pub struct VerifyReport {
    pub cp: bool,
    pub tp: bool,
    pub min_choi_eigenvalue: Real,
    pub completeness_residual: Real,
}

#[derive(Debug, Clone, Serialize)]
pub struct TransitionDocument {
    pub rows: Vec<Vec<Real>>,
    pub row_stochastic: bool,
}

/// Pretty JSON with a trailing newline.
pub fn to_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("documents serialize");
    s.push('\n');
    s
}
