//! `Q(Ψ)` versus `Z(Ψ)` for real tensors: the per-tensor equality check and
//! the search for large `Q/Z` ratios.

use alloc::vec::Vec;

use rand::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};

use super::generate::{gaussian_tensor, generate_case, CaseKind};
use super::qeig_all;
use crate::error::{Error, Result};
use crate::tensor::{ComplexSymTensor, SymTensor};
use crate::zsolve::{z_spectral_radius, SolverConfig};

/// Slack on `Q ≥ Z` for solver noise.
pub const DOMINANCE_SLACK: f64 = 1e-8;
/// `|Q − Z|` below this counts as equality.
pub const EQUALITY_GAP: f64 = 1e-6;
/// Ratios with `Z` below this are not computed.
pub const MIN_Z: f64 = 1e-8;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EqualityRecord {
    pub q: f64,
    pub z: f64,
    /// `Q − Z`.
    pub gap: f64,
    /// `|Q − Z| < 1e−6`.
    pub holds: bool,
    /// `Q ≥ Z − 1e−8`.
    pub dominance_ok: bool,
}

/// `Q(Ψ)` through the embedding and `Z(Ψ)` through the real solver for a
/// real tensor.
pub fn equality_check(t: &SymTensor, cfg: &SolverConfig) -> Result<EqualityRecord> {
    if t.is_zero() {
        return Err(Error::ZeroTensor);
    }
    let z = z_spectral_radius(t, cfg)?;
    let q = qeig_all(&ComplexSymTensor::from_real(t.clone()), cfg)?.entanglement_eigenvalue;
    let gap = q - z;
    Ok(EqualityRecord {
        q,
        z,
        gap,
        holds: gap.abs() < EQUALITY_GAP,
        dominance_ok: gap >= -DOMINANCE_SLACK,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Family {
    /// Orbit values i.i.d. `N(0, 1)`.
    Gaussian,
    /// The current best tensor plus Gaussian noise.
    Perturbation,
    /// A witness supplied up front.
    Seeded,
    /// One of the equality families, as a negative control.
    Equality(CaseKind),
}

impl Family {
    pub fn name(self) -> &'static str {
        match self {
            Family::Gaussian => "gaussian",
            Family::Perturbation => "perturbation",
            Family::Seeded => "seeded",
            Family::Equality(k) => k.name(),
        }
    }
}

impl core::str::FromStr for Family {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "gaussian" => Ok(Family::Gaussian),
            "perturbation" => Ok(Family::Perturbation),
            "seeded" => Ok(Family::Seeded),
            other => other.parse().map(Family::Equality),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct RatioSampler {
    /// Families visited round-robin, one sample per budget unit.
    pub families: Vec<Family>,
    /// Evaluated first, outside the budget.
    pub seed_witness: Option<SymTensor>,
    /// Noise scale of perturbations, relative to the witness's largest entry.
    pub perturbation: f64,
    pub seed: u64,
}

impl Default for RatioSampler {
    fn default() -> Self {
        Self {
            families: alloc::vec![Family::Gaussian, Family::Perturbation],
            seed_witness: None,
            perturbation: 0.1,
            seed: 0,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct FamilyStats {
    pub family: Family,
    pub tried: usize,
    pub skipped: usize,
    /// `None` until a sample of this family is evaluated.
    pub best_ratio: Option<f64>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Witness {
    pub tensor: SymTensor,
    pub q: f64,
    pub z: f64,
    pub ratio: f64,
    pub family: Family,
}

#[derive(Debug, Clone, PartialEq)]
pub struct RatioReport {
    pub order: usize,
    pub dim: usize,
    pub samples_tried: usize,
    pub samples_skipped: usize,
    /// Empirical lower bound on the QR-ratio of the space.
    pub best_ratio: f64,
    pub witness: Option<Witness>,
    pub families: Vec<FamilyStats>,
    /// `true` only for matrices, where the ratio is exactly 1. For higher
    /// orders the known ceiling involves suprema that are not computable
    /// here, so only the lower bound is reported.
    pub exact: bool,
}

fn evaluate(t: &SymTensor, cfg: &SolverConfig) -> Option<(f64, f64)> {
    if t.is_zero() {
        return None;
    }
    let z = z_spectral_radius(t, cfg).ok()?;
    if z < MIN_Z {
        return None;
    }
    let q = qeig_all(&ComplexSymTensor::from_real(t.clone()), cfg)
        .ok()?
        .entanglement_eigenvalue;
    Some((q, z))
}

/// Samples real symmetric tensors and keeps the one with the largest `Q/Z`.
///
/// Samples are evaluated one after another with per-sample seeds drawn
/// from `sampler.seed`, so the report is a function of the inputs only.
pub fn ratio_search(
    order: usize,
    dim: usize,
    budget: usize,
    sampler: &RatioSampler,
    cfg: &SolverConfig,
) -> Result<RatioReport> {
    if order < 2 {
        return Err(Error::InvalidOrder { order, need: ">= 2" });
    }
    if dim < 2 {
        return Err(Error::InvalidDim(dim));
    }
    cfg.validate()?;
    if order == 2 {
        return Ok(RatioReport {
            order,
            dim,
            samples_tried: 0,
            samples_skipped: 0,
            best_ratio: 1.0,
            witness: None,
            families: Vec::new(),
            exact: true,
        });
    }
    if sampler.families.is_empty() && sampler.seed_witness.is_none() {
        return Err(Error::InvalidCase("ratio search needs at least one family"));
    }
    if let Some(w) = &sampler.seed_witness {
        if w.order() != order || w.dim() != dim {
            return Err(Error::ShapeMismatch(w.order(), w.dim(), order, dim));
        }
    }

    let mut rng = ChaCha8Rng::seed_from_u64(sampler.seed);
    let mut stats: Vec<FamilyStats> = Vec::new();
    let mut best: Option<Witness> = None;
    let (mut tried, mut skipped) = (0, 0);

    let mut record = |family: Family, t: SymTensor, best: &mut Option<Witness>| {
        let idx = match stats.iter().position(|s| s.family == family) {
            Some(i) => i,
            None => {
                stats.push(FamilyStats {
                    family,
                    tried: 0,
                    skipped: 0,
                    best_ratio: None,
                });
                stats.len() - 1
            }
        };
        let s = &mut stats[idx];
        s.tried += 1;
        tried += 1;
        match evaluate(&t, cfg) {
            None => {
                s.skipped += 1;
                skipped += 1;
            }
            Some((q, z)) => {
                let ratio = q / z;
                if s.best_ratio.is_none_or(|b| ratio > b) {
                    s.best_ratio = Some(ratio);
                }
                if best.as_ref().is_none_or(|b| ratio > b.ratio) {
                    *best = Some(Witness {
                        tensor: t,
                        q,
                        z,
                        ratio,
                        family,
                    });
                }
            }
        }
    };

    if let Some(w) = &sampler.seed_witness {
        record(Family::Seeded, w.clone(), &mut best);
    }
    for i in 0..budget {
        if sampler.families.is_empty() {
            break;
        }
        let family = sampler.families[i % sampler.families.len()];
        let sample_seed = rng.next_u64();
        let mut local = ChaCha8Rng::seed_from_u64(sample_seed);
        let (family, t) = match family {
            Family::Gaussian | Family::Seeded => (Family::Gaussian, gaussian_tensor(order, dim, &mut local)?),
            Family::Perturbation => match &best {
                Some(b) => {
                    let scale = sampler.perturbation * b.tensor.max_abs_value();
                    let noise = SymTensor::from_fn(order, dim, |_| {
                        let x: f64 = StandardNormal.sample(&mut local);
                        x
                    })?;
                    (Family::Perturbation, b.tensor.add_scaled(scale, &noise)?)
                }
                None => (Family::Gaussian, gaussian_tensor(order, dim, &mut local)?),
            },
            Family::Equality(kind) => match generate_case(kind, order, dim, sample_seed) {
                Ok(t) => (family, t),
                Err(_) => continue,
            },
        };
        record(family, t, &mut best);
    }

    let best_ratio = best.as_ref().map(|b| b.ratio).ok_or(Error::InvalidCase("no sample could be evaluated"))?;
    Ok(RatioReport {
        order,
        dim,
        samples_tried: tried,
        samples_skipped: skipped,
        best_ratio,
        witness: best,
        families: stats,
        exact: false,
    })
}
