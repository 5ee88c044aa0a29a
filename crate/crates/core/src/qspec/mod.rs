//! Quantum eigenpairs of complex symmetric tensors.
//!
//! `(λ, z)` is a Q-eigenpair of `Ψ` when `Ψ z^{m−1} = λ z̄`, `z̄ᵀz = 1` and
//! `λ` is real. Contracting once more gives `λ = Ψ z^m`. The largest
//! Q-eigenvalue is the entanglement eigenvalue `Q(Ψ)`.
//!
//! Q-eigenvalues are computed as Z-eigenvalues of the real embedding (see
//! [`crate::embed`]), then every pair is mapped back and re-checked against
//! the complex equation. If `(λ, z)` is a Q-eigenpair then so is
//! `(−λ, z·e^{iπ/m})`, which [`pair_map_q`] implements.

mod generate;
mod overlap;
mod ratio;

use alloc::vec::Vec;
use core::f64::consts::PI;

use num_complex::Complex64;

pub use generate::{gaussian_tensor, generate_case, generate_odeco, odeco_tensor, CaseKind, OdecoParts};
pub use overlap::direct_overlap_max;
pub use ratio::{equality_check, ratio_search, EqualityRecord, Family, FamilyStats, RatioReport, RatioSampler, Witness};

use crate::embed::{embed, Variant};
use crate::error::{Error, Result};
use crate::math;
use crate::tensor::ComplexSymTensor;
use crate::zsolve::{zeig_multistart, SolverConfig, SpectrumReport};

#[derive(Debug, Clone, PartialEq)]
pub struct QEigenpair {
    pub lambda: f64,
    pub z: Vec<Complex64>,
    /// `‖Ψ z^{m−1} − λ z̄‖₂`.
    pub residual: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct QSpectrumReport {
    pub order: usize,
    pub dim: usize,
    pub variant: Variant,
    /// Distinct Q-eigenvalues, descending, one representative each.
    pub pairs: Vec<QEigenpair>,
    pub entanglement_eigenvalue: f64,
    /// Upper bound on the number of Q-eigenvalues; `None` on overflow.
    pub count_bound: Option<u128>,
    /// Every eigenvalue's `−λ` partner verified against the complex equation.
    pub pairing_ok: bool,
    /// Partners the real solver did not reach on its own.
    pub partners_added: usize,
    /// Embedded pairs whose projection failed the complex residual check.
    pub rejected: usize,
    pub embedded: SpectrumReport,
}

impl QSpectrumReport {
    pub fn eigenvalues(&self) -> Vec<f64> {
        self.pairs.iter().map(|p| p.lambda).collect()
    }

    pub fn within_count_bound(&self) -> bool {
        self.count_bound.is_none_or(|b| self.pairs.len() as u128 <= b)
    }
}

/// Result of [`verify_qeig`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QCheck {
    /// `‖Ψ z^{m−1} − λ z̄‖₂`.
    pub residual: f64,
    /// `|Ψ z^m − λ|`.
    pub overlap_gap: f64,
}

fn q_residual(psi: &ComplexSymTensor, lambda: f64, z: &[Complex64]) -> Result<f64> {
    let g = psi.contract_m1(z)?;
    Ok(math::sqrt(
        g.iter().zip(z).map(|(gi, zi)| (gi - zi.conj() * lambda).norm_sqr()).sum(),
    ))
}

fn unit_defect(z: &[Complex64]) -> f64 {
    (z.iter().map(|c| c.norm_sqr()).sum::<f64>() - 1.0).abs()
}

/// Checks a candidate Q-eigenpair directly against `Ψ z^{m−1} = λ z̄`.
pub fn verify_qeig(psi: &ComplexSymTensor, lambda: f64, z: &[Complex64]) -> Result<QCheck> {
    let defect = unit_defect(z);
    if defect > 1e-10 {
        return Err(Error::NonUnitVector(defect + 1.0));
    }
    let residual = q_residual(psi, lambda, z)?;
    let overlap_gap = (psi.apply_m(z)? - lambda).norm();
    Ok(QCheck { residual, overlap_gap })
}

/// `z ↦ z·e^{iπ/m}`, mapping a Q-eigenvector of `λ` to one of `−λ`.
pub fn pair_map_q(z: &[Complex64], order: usize) -> Vec<Complex64> {
    let rot = Complex64::from_polar(1.0, PI / order as f64);
    z.iter().map(|c| c * rot).collect()
}

/// Maximal number of Q-eigenvalues: `((m−1)^{2n} − 1)/(m − 2)` for `m ≥ 3`,
/// `2n` for matrices. `None` if `m < 2` or the value overflows.
pub fn count_bound(order: usize, dim: usize) -> Option<u128> {
    match order {
        0 | 1 => None,
        2 => Some(2 * dim as u128),
        m => {
            let p = ((m - 1) as u128).checked_pow(u32::try_from(2 * dim).ok()?)?;
            Some((p - 1) / (m - 2) as u128)
        }
    }
}

/// Picks the representative of `z·e^{2πik/m}` (all of which share `λ`)
/// whose largest-modulus entry has argument in `[0, 2π/m)`.
pub(crate) fn canonical_phase(z: &[Complex64], order: usize) -> Vec<Complex64> {
    let big = z.iter().fold(0.0f64, |m, c| m.max(c.norm()));
    let Some(lead) = z.iter().find(|c| c.norm() >= big - 1e-9) else {
        return z.to_vec();
    };
    let sector = 2.0 * PI / order as f64;
    let phi = lead.arg();
    let k = libm::floor(phi / sector);
    let rot = Complex64::from_polar(1.0, -k * sector);
    z.iter().map(|c| c * rot).collect()
}

/// All Q-eigenpairs found through the default embedding.
pub fn qeig_all(psi: &ComplexSymTensor, cfg: &SolverConfig) -> Result<QSpectrumReport> {
    qeig_all_with(psi, Variant::General, cfg)
}

/// All Q-eigenpairs found through the given embedding variant.
pub fn qeig_all_with(psi: &ComplexSymTensor, variant: Variant, cfg: &SolverConfig) -> Result<QSpectrumReport> {
    if psi.is_zero() {
        return Err(Error::ZeroTensor);
    }
    let m = psi.order();
    let emb = embed(psi, variant)?;
    let embedded = zeig_multistart(&emb.target, cfg)?;

    let mut found = Vec::new();
    let mut rejected = 0;
    for e in &embedded.entries {
        let z = emb.to_source_vector(&e.vector)?;
        let residual = q_residual(psi, e.lambda, &z)?;
        if residual < cfg.tol {
            found.push(QEigenpair {
                lambda: e.lambda,
                z,
                residual,
            });
        } else {
            rejected += 1;
        }
    }

    let mut pairing_ok = true;
    let mut partners = Vec::new();
    for p in &found {
        let z = pair_map_q(&p.z, m);
        let residual = q_residual(psi, -p.lambda, &z)?;
        if residual < cfg.tol {
            partners.push(QEigenpair {
                lambda: -p.lambda,
                z,
                residual,
            });
        } else {
            pairing_ok = false;
        }
    }
    let partners_added = partners
        .iter()
        .filter(|q| found.iter().all(|p| (p.lambda - q.lambda).abs() >= cfg.dedup_tol))
        .count();
    found.extend(partners);

    let pairs = cluster(found, m, psi, cfg.dedup_tol)?;
    let values: Vec<f64> = pairs.iter().map(|p| p.lambda).collect();
    pairing_ok &= values
        .iter()
        .all(|l| values.iter().any(|k| (k + l).abs() < cfg.dedup_tol));
    Ok(QSpectrumReport {
        order: m,
        dim: psi.dim(),
        variant: emb.variant,
        entanglement_eigenvalue: values.first().copied().unwrap_or(0.0),
        count_bound: count_bound(m, psi.dim()),
        pairing_ok,
        partners_added,
        rejected,
        pairs,
        embedded,
    })
}

fn cluster(mut found: Vec<QEigenpair>, m: usize, psi: &ComplexSymTensor, dedup_tol: f64) -> Result<Vec<QEigenpair>> {
    found.sort_by(|a, b| b.lambda.total_cmp(&a.lambda).then(a.residual.total_cmp(&b.residual)));
    let mut out: Vec<QEigenpair> = Vec::new();
    let mut last = f64::INFINITY;
    for p in found {
        let same = last - p.lambda < dedup_tol;
        last = p.lambda;
        match out.last_mut() {
            Some(rep) if same => {
                if p.residual < rep.residual {
                    *rep = p;
                }
            }
            _ => out.push(p),
        }
    }
    for p in &mut out {
        p.z = canonical_phase(&p.z, m);
        p.residual = q_residual(psi, p.lambda, &p.z)?;
    }
    Ok(out)
}

/// `Q(Ψ)`, cross-checked against [`direct_overlap_max`] to `1e−6`
/// (relative to `max(1, Q)`).
pub fn entanglement_eigenvalue(psi: &ComplexSymTensor, cfg: &SolverConfig) -> Result<f64> {
    let q = qeig_all(psi, cfg)?.entanglement_eigenvalue;
    let overlap = direct_overlap_max(psi, cfg)?;
    if (q - overlap).abs() > 1e-6 * q.abs().max(1.0) {
        return Err(Error::CrossCheck { q, overlap });
    }
    Ok(q)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tensor::SymTensor;
    use alloc::vec;

    #[test]
    fn bounds() {
        assert_eq!(count_bound(3, 2), Some(15));
        assert_eq!(count_bound(4, 2), Some(40));
        assert_eq!(count_bound(3, 3), Some(63));
        assert_eq!(count_bound(2, 5), Some(10));
        assert_eq!(count_bound(1, 5), None);
        assert_eq!(count_bound(200, 200), None);
    }

    #[test]
    fn rotation_map() {
        let z = [Complex64::new(1.0, 0.0), Complex64::new(0.0, 0.0)];
        let w = pair_map_q(&z, 2);
        assert!((w[0] - Complex64::new(0.0, 1.0)).norm() < 1e-16);
        let mut v = z.to_vec();
        for _ in 0..6 {
            v = pair_map_q(&v, 3);
        }
        assert!((v[0] - z[0]).norm() < 1e-15 && v[1].norm() < 1e-15);
    }

    #[test]
    fn zero_tensor_residual() {
        let psi = ComplexSymTensor::zeros(3, 2).unwrap();
        let r = 0.5f64.sqrt();
        let z = [Complex64::new(r, 0.0), Complex64::new(0.0, r)];
        let c = verify_qeig(&psi, 0.0, &z).unwrap();
        assert_eq!(c.residual, 0.0);
        assert!(matches!(qeig_all(&psi, &SolverConfig::default()), Err(Error::ZeroTensor)));
    }

    #[test]
    fn non_unit_rejected() {
        let psi = ComplexSymTensor::from_real(SymTensor::diagonal(3, &[1.0, 1.0]).unwrap());
        let z = [Complex64::new(1.0, 0.0), Complex64::new(1.0, 0.0)];
        assert!(matches!(verify_qeig(&psi, 1.0, &z), Err(Error::NonUnitVector(_))));
    }

    #[test]
    fn partner_of_minus_five() {
        // diag(2, −5), m = 3: (−5, e₂) maps to (5, e₂·e^{iπ/3})
        let psi = ComplexSymTensor::from_real(SymTensor::diagonal(3, &[2.0, -5.0]).unwrap());
        let e2 = [Complex64::new(0.0, 0.0), Complex64::new(1.0, 0.0)];
        assert!(verify_qeig(&psi, -5.0, &e2).unwrap().residual < 1e-15);
        let z = pair_map_q(&e2, 3);
        let c = verify_qeig(&psi, 5.0, &z).unwrap();
        assert!(c.residual < 1e-12, "{}", c.residual);
        assert!(c.overlap_gap < 1e-12);
    }

    #[test]
    fn canonical_phase_keeps_eigenvector() {
        let psi = ComplexSymTensor::from_real(SymTensor::diagonal(3, &[2.0, -5.0]).unwrap());
        let z = vec![Complex64::new(0.0, 0.0), Complex64::from_polar(1.0, 2.5)];
        let c = canonical_phase(&z, 3);
        let arg = c[1].arg();
        assert!((0.0..2.0 * PI / 3.0 + 1e-12).contains(&arg));
        // rotations by 2π/3 keep λ; e^{2.5i} is not one, so compare orbits
        let e2 = vec![Complex64::new(0.0, 0.0), Complex64::new(1.0, 0.0)];
        let c2 = canonical_phase(&pair_map_q(&pair_map_q(&e2, 3), 3), 3);
        assert!(verify_qeig(&psi, -5.0, &c2).unwrap().residual < 1e-12);
    }
}
