//! Z-eigenpairs of real symmetric tensors.
//!
//! `(λ, w)` is a Z-eigenpair of `T` when `T w^{m−1} = λ w` with `‖w‖₂ = 1`;
//! then `λ = T w^m`. Z-eigenvectors are exactly the stationary points of
//! `w ↦ T w^m` on the unit sphere.
//!
//! Three routes:
//!
//! - [`eig_sym_matrix`]: exact cyclic Jacobi for order 2.
//! - [`zeig_multistart`]: shifted power ascent/descent from many random
//!   starts, polished by Newton steps, then clustered.
//! - [`grid_oracle_n2`] and [`grid_oracle_n3plus`]: brute-force sphere grids
//!   for small dimensions, used to check the solver.

mod multistart;
mod oracle;
mod power;

use alloc::vec::Vec;

pub use multistart::{eig_sym_matrix, z_spectral_radius, zeig_multistart};
pub(crate) use multistart::random_unit;
pub use oracle::{distinct_values, grid_oracle_n2, grid_oracle_n3plus, zeig_oracle, DEFAULT_RESOLUTION, GRID_N2};
pub use power::{auto_shift, newton_polish, shifted_power_step};

use crate::error::{Error, Result};
use crate::math;
use crate::tensor::SymTensor;

#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub enum ShiftMode {
    /// `α = m · max|orbit value| · n^{(m−2)/2}`, doubled whenever a step
    /// would decrease the objective.
    #[default]
    Auto,
    Fixed(f64),
}

#[derive(Debug, Clone, PartialEq)]
pub struct SolverConfig {
    /// Residual acceptance `‖T w^{m−1} − λw‖₂ < tol`.
    pub tol: f64,
    pub max_iter: usize,
    /// Random starts; `None` means `100 · dim`.
    pub num_starts: Option<usize>,
    /// Eigenvalues closer than this are one cluster.
    pub dedup_tol: f64,
    pub seed: u64,
    pub shift: ShiftMode,
}

impl Default for SolverConfig {
    fn default() -> Self {
        Self {
            tol: 1e-10,
            max_iter: 5000,
            num_starts: None,
            dedup_tol: 1e-6,
            seed: 0,
            shift: ShiftMode::Auto,
        }
    }
}

impl SolverConfig {
    pub fn with_seed(seed: u64) -> Self {
        Self {
            seed,
            ..Self::default()
        }
    }

    pub fn starts_for(&self, dim: usize) -> usize {
        self.num_starts.unwrap_or(100 * dim)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.tol > 0.0) {
            return Err(Error::InvalidConfig("tol must be positive"));
        }
        if self.num_starts == Some(0) {
            return Err(Error::InvalidConfig("num_starts must be at least 1"));
        }
        if !(self.dedup_tol > self.tol) {
            return Err(Error::InvalidConfig("dedup_tol must exceed tol"));
        }
        if self.max_iter == 0 {
            return Err(Error::InvalidConfig("max_iter must be at least 1"));
        }
        if let ShiftMode::Fixed(a) = self.shift {
            if !(a > 0.0) {
                return Err(Error::InvalidConfig("fixed shift must be positive"));
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SolverKind {
    Jacobi,
    ShiftedPower,
    /// Newton's method straight from a random start.
    Newton,
    GridOracle,
}

impl SolverKind {
    pub fn name(self) -> &'static str {
        match self {
            SolverKind::Jacobi => "jacobi",
            SolverKind::ShiftedPower => "shifted_power",
            SolverKind::Newton => "newton",
            SolverKind::GridOracle => "grid_oracle",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Eigenpair {
    pub lambda: f64,
    pub vector: Vec<f64>,
    pub residual: f64,
    pub source: SolverKind,
}

impl Eigenpair {
    /// Evaluates `λ = T w^m` and the residual for a unit vector.
    pub fn from_vector(t: &SymTensor, vector: Vec<f64>, source: SolverKind) -> Result<Self> {
        let g = t.contract_m1(&vector)?;
        let lambda = math::dot(&g, &vector);
        let residual = math::eig_residual(&g, lambda, &vector);
        Ok(Self {
            lambda,
            vector,
            residual,
            source,
        })
    }
}

/// `‖T w^{m−1} − λw‖₂`.
pub fn z_residual(t: &SymTensor, lambda: f64, w: &[f64]) -> Result<f64> {
    let g = t.contract_m1(w)?;
    Ok(math::eig_residual(&g, lambda, w))
}

/// One distinct eigenvalue with a representative eigenvector.
#[derive(Debug, Clone, PartialEq)]
pub struct SpectrumEntry {
    pub lambda: f64,
    pub vector: Vec<f64>,
    pub residual: f64,
    pub source: SolverKind,
    /// Distinct eigenvectors merged into this eigenvalue (up to the sign
    /// symmetry of even orders).
    pub cluster_size: usize,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SpectrumReport {
    pub order: usize,
    pub dim: usize,
    /// Descending, pairwise separated by at least `dedup_tol`.
    pub entries: Vec<SpectrumEntry>,
    pub z_spectral_radius: f64,
    /// Largest `|T w^m|` met on any iterate; never exceeds the radius.
    pub objective_max: f64,
    /// `true` when the enumeration is not certified complete.
    pub heuristic: bool,
    pub starts_run: usize,
    pub pairs_accepted: usize,
    pub config: SolverConfig,
}

impl SpectrumReport {
    pub fn eigenvalues(&self) -> Vec<f64> {
        self.entries.iter().map(|e| e.lambda).collect()
    }

    pub fn max_eigenvalue(&self) -> f64 {
        self.entries.first().map_or(0.0, |e| e.lambda)
    }

    pub fn min_eigenvalue(&self) -> f64 {
        self.entries.last().map_or(0.0, |e| e.lambda)
    }
}

/// Flips an even-order eigenvector so its first non-negligible entry is positive.
pub(crate) fn canonical_sign(order: usize, w: &[f64]) -> Vec<f64> {
    if order % 2 == 1 {
        return w.to_vec();
    }
    let flip = w.iter().find(|x| x.abs() > 1e-6).is_some_and(|&x| x < 0.0);
    if flip {
        w.iter().map(|x| -x).collect()
    } else {
        w.to_vec()
    }
}

const VECTOR_MERGE: f64 = 1e-4;

/// Clusters accepted pairs by eigenvalue (single linkage at `dedup_tol`).
/// The input order does not matter.
pub(crate) fn dedup(mut pairs: Vec<Eigenpair>, order: usize, dedup_tol: f64) -> Vec<SpectrumEntry> {
    for p in &mut pairs {
        p.vector = canonical_sign(order, &p.vector);
    }
    pairs.sort_by(|a, b| {
        b.lambda.total_cmp(&a.lambda).then_with(|| {
            a.vector
                .iter()
                .zip(&b.vector)
                .map(|(x, y)| x.total_cmp(y))
                .find(|c| c.is_ne())
                .unwrap_or(core::cmp::Ordering::Equal)
        })
    });
    let mut out: Vec<SpectrumEntry> = Vec::new();
    let mut distinct: Vec<Vec<f64>> = Vec::new();
    let mut last_lambda = f64::INFINITY;
    for p in pairs {
        let same = last_lambda - p.lambda < dedup_tol;
        last_lambda = p.lambda;
        if same {
            let entry = out.last_mut().expect("cluster open");
            if distinct.iter().all(|v| math::dist(v, &p.vector) > VECTOR_MERGE) {
                distinct.push(p.vector.clone());
                entry.cluster_size += 1;
            }
            if p.residual < entry.residual {
                entry.lambda = p.lambda;
                entry.vector = p.vector;
                entry.residual = p.residual;
                entry.source = p.source;
            }
        } else {
            distinct.clear();
            distinct.push(p.vector.clone());
            out.push(SpectrumEntry {
                lambda: p.lambda,
                vector: p.vector,
                residual: p.residual,
                source: p.source,
                cluster_size: 1,
            });
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    fn pair(lambda: f64, v: Vec<f64>, residual: f64) -> Eigenpair {
        Eigenpair {
            lambda,
            vector: v,
            residual,
            source: SolverKind::ShiftedPower,
        }
    }

    #[test]
    fn config_validation() {
        assert!(SolverConfig::default().validate().is_ok());
        let bad = SolverConfig {
            dedup_tol: 1e-12,
            ..Default::default()
        };
        assert!(bad.validate().is_err());
        let bad = SolverConfig {
            num_starts: Some(0),
            ..Default::default()
        };
        assert!(bad.validate().is_err());
        assert_eq!(SolverConfig::default().starts_for(3), 300);
    }

    #[test]
    fn dedup_merges_sign_twins_for_even_order() {
        let ps = vec![
            pair(1.0, vec![0.6, 0.8], 1e-12),
            pair(1.0 + 1e-9, vec![-0.6, -0.8], 1e-13),
            pair(0.5, vec![1.0, 0.0], 1e-12),
        ];
        let e = dedup(ps.clone(), 4, 1e-6);
        assert_eq!(e.len(), 2);
        assert_eq!(e[0].cluster_size, 1);
        assert_eq!(e[0].residual, 1e-13);
        // odd order keeps w and −w apart
        let e3 = dedup(ps, 3, 1e-6);
        assert_eq!(e3[0].cluster_size, 2);
    }

    #[test]
    fn dedup_is_order_insensitive() {
        let ps = vec![
            pair(-2.0, vec![0.0, 1.0], 1e-12),
            pair(3.0, vec![1.0, 0.0], 1e-12),
            pair(3.0, vec![0.0, 1.0], 1e-12),
        ];
        let mut rev = ps.clone();
        rev.reverse();
        assert_eq!(dedup(ps, 2, 1e-6), dedup(rev, 2, 1e-6));
    }
}
