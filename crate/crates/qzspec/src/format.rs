//! The tensor file format.
//!
//! ```json
//! {
//!   "order": 3,
//!   "dim": 2,
//!   "field": "complex",
//!   "symmetrize": false,
//!   "entries": [ { "idx": [1, 1, 2], "re": 0.5, "im": -1.0 } ]
//! }
//! ```
//!
//! Indices are 1-based. An entry given at one permutation of an index tuple
//! fills the whole orbit; unlisted orbits are zero. With `symmetrize: false`
//! (the default) two permutations of one orbit must carry the same value.

use num_complex::Complex64;
use qzspec_core::{ComplexSymTensor, Ingest, SymTensor};
use serde::{Deserialize, Serialize};

#[derive(Debug, thiserror::Error)]
pub enum FormatError {
    #[error("malformed tensor file: {0}")]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Tensor(#[from] qzspec_core::Error),
    #[error("entry {0} of a real tensor file carries an imaginary part")]
    ImagInRealFile(usize),
    #[error("order {0} is below 2")]
    Order(usize),
    #[error("expected a real tensor")]
    NotReal,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Field {
    Real,
    Complex,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EntryRecord {
    pub idx: Vec<usize>,
    pub re: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub im: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TensorFile {
    pub order: usize,
    pub dim: usize,
    pub field: Field,
    #[serde(default)]
    pub symmetrize: bool,
    pub entries: Vec<EntryRecord>,
}

/// A parsed tensor of either field.
#[derive(Debug, Clone, PartialEq)]
pub enum Tensor {
    Real(SymTensor),
    Complex(ComplexSymTensor),
}

impl Tensor {
    pub fn order(&self) -> usize {
        match self {
            Tensor::Real(t) => t.order(),
            Tensor::Complex(t) => t.order(),
        }
    }

    pub fn dim(&self) -> usize {
        match self {
            Tensor::Real(t) => t.dim(),
            Tensor::Complex(t) => t.dim(),
        }
    }

    /// The complex view; real tensors get a zero imaginary part.
    pub fn into_complex(self) -> ComplexSymTensor {
        match self {
            Tensor::Real(t) => ComplexSymTensor::from_real(t),
            Tensor::Complex(t) => t,
        }
    }

    /// The real tensor, also accepted from a complex file whose imaginary
    /// part is zero.
    pub fn into_real(self) -> Result<SymTensor, FormatError> {
        match self {
            Tensor::Real(t) => Ok(t),
            Tensor::Complex(t) if t.is_real() => Ok(t.real_part().clone()),
            Tensor::Complex(_) => Err(FormatError::NotReal),
        }
    }
}

impl TensorFile {
    /// Builds the tensor the file describes.
    pub fn to_tensor(&self) -> Result<Tensor, FormatError> {
        if self.order < 2 {
            return Err(FormatError::Order(self.order));
        }
        let mode = if self.symmetrize { Ingest::Average } else { Ingest::Strict };
        match self.field {
            Field::Real => {
                let mut raw = Vec::with_capacity(self.entries.len());
                for (k, e) in self.entries.iter().enumerate() {
                    if e.im.is_some() {
                        return Err(FormatError::ImagInRealFile(k));
                    }
                    raw.push((e.idx.clone(), e.re));
                }
                Ok(Tensor::Real(SymTensor::symmetrize(self.order, self.dim, &raw, mode)?))
            }
            Field::Complex => {
                let raw: Vec<_> = self
                    .entries
                    .iter()
                    .map(|e| (e.idx.clone(), Complex64::new(e.re, e.im.unwrap_or(0.0))))
                    .collect();
                Ok(Tensor::Complex(ComplexSymTensor::symmetrize(self.order, self.dim, &raw, mode)?))
            }
        }
    }

    /// Canonical form: one entry per nonzero orbit, keys sorted.
    pub fn from_real(t: &SymTensor) -> Self {
        Self {
            order: t.order(),
            dim: t.dim(),
            field: Field::Real,
            symmetrize: false,
            entries: t
                .nonzero_orbits()
                .map(|o| EntryRecord {
                    idx: o.key,
                    re: o.value,
                    im: None,
                })
                .collect(),
        }
    }

    /// Canonical form; `im` is written for every entry.
    pub fn from_complex(t: &ComplexSymTensor) -> Self {
        let im: Vec<f64> = t.imag_part().orbits().map(|o| o.value).collect();
        let entries = t
            .real_part()
            .orbits()
            .zip(im)
            .filter(|(o, b)| o.value != 0.0 || *b != 0.0)
            .map(|(o, b)| EntryRecord {
                idx: o.key,
                re: o.value,
                im: Some(b),
            })
            .collect();
        Self {
            order: t.order(),
            dim: t.dim(),
            field: Field::Complex,
            symmetrize: false,
            entries,
        }
    }

    pub fn from_tensor(t: &Tensor) -> Self {
        match t {
            Tensor::Real(t) => Self::from_real(t),
            Tensor::Complex(t) => Self::from_complex(t),
        }
    }
}

pub fn parse_tensor_file(text: &str) -> Result<Tensor, FormatError> {
    let file: TensorFile = serde_json::from_str(text)?;
    file.to_tensor()
}

/// Pretty JSON of the canonical form, newline-terminated.
pub fn to_canonical_string(t: &Tensor) -> String {
    let mut s = serde_json::to_string_pretty(&TensorFile::from_tensor(t)).expect("plain data serializes");
    s.push('\n');
    s
}
