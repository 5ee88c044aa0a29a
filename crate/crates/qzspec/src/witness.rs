//! Archive of a ratio-search witness: the tensor plus the values it was
//! archived with. Loading recomputes `Q` and `Z` and rejects the archive
//! if either moved by more than [`RECOMPUTE_TOL`].

use qzspec_core::qspec::{equality_check, Witness};
use qzspec_core::{SolverConfig, SymTensor};
use serde::{Deserialize, Serialize};

use crate::format::{FormatError, TensorFile};

pub const RECOMPUTE_TOL: f64 = 1e-8;

#[derive(Debug, thiserror::Error)]
pub enum WitnessError {
    #[error(transparent)]
    Format(#[from] FormatError),
    #[error("malformed witness archive: {0}")]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Solver(#[from] qzspec_core::Error),
    #[error("archived {what} = {stored} but recomputed {recomputed}")]
    Mismatch {
        what: &'static str,
        stored: f64,
        recomputed: f64,
    },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct WitnessMeta {
    pub ratio: f64,
    pub q: f64,
    pub z: f64,
    pub family: String,
    pub seed: u64,
    pub budget: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct WitnessArchive {
    pub tensor: TensorFile,
    pub metadata: WitnessMeta,
}

impl WitnessArchive {
    pub fn new(w: &Witness, seed: u64, budget: usize) -> Self {
        Self {
            tensor: TensorFile::from_real(&w.tensor),
            metadata: WitnessMeta {
                ratio: w.ratio,
                q: w.q,
                z: w.z,
                family: w.family.name().into(),
                seed,
                budget,
            },
        }
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("plain data serializes");
        s.push('\n');
        s
    }

    pub fn parse(text: &str) -> Result<Self, WitnessError> {
        Ok(serde_json::from_str(text)?)
    }

    /// The tensor, after checking the archived `Q`, `Z` and ratio against a
    /// fresh computation.
    pub fn verified_tensor(&self, cfg: &SolverConfig) -> Result<SymTensor, WitnessError> {
        let t = self.tensor.to_tensor()?.into_real()?;
        let rec = equality_check(&t, cfg)?;
        for (what, stored, recomputed) in [
            ("Q", self.metadata.q, rec.q),
            ("Z", self.metadata.z, rec.z),
            ("ratio", self.metadata.ratio, rec.q / rec.z),
        ] {
            if (stored - recomputed).abs() > RECOMPUTE_TOL {
                return Err(WitnessError::Mismatch {
                    what,
                    stored,
                    recomputed,
                });
            }
        }
        Ok(t)
    }
}
