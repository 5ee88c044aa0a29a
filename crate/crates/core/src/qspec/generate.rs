//! Generators for the real tensor families on which `Q(Ψ) = Z(Ψ)` is known
//! to hold.

use alloc::vec::Vec;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};

use crate::error::{Error, Result};
use crate::linalg::orthonormalize;
use crate::math::binomial;
use crate::tensor::SymTensor;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CaseKind {
    /// Random diagonal entries in `[−1, 1]`.
    Diagonal,
    /// Every orbit in `[0, 1]`.
    Nonnegative,
    /// Every orbit in `[−1, 0]`.
    Nonpositive,
    /// `Σ αₖ (y⁽ᵏ⁾)^{⊗m}` over a random orthonormal basis.
    Odeco,
    /// Even `m ≥ 4`, supported on half/half index patterns and diagonally
    /// dominated by the factor `C(m−1, m/2)`.
    Case6,
}

impl CaseKind {
    pub const ALL: [CaseKind; 5] = [
        CaseKind::Diagonal,
        CaseKind::Nonnegative,
        CaseKind::Nonpositive,
        CaseKind::Odeco,
        CaseKind::Case6,
    ];

    pub fn name(self) -> &'static str {
        match self {
            CaseKind::Diagonal => "diagonal",
            CaseKind::Nonnegative => "nonnegative",
            CaseKind::Nonpositive => "nonpositive",
            CaseKind::Odeco => "odeco",
            CaseKind::Case6 => "case6",
        }
    }
}

impl core::str::FromStr for CaseKind {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        CaseKind::ALL
            .into_iter()
            .find(|k| k.name() == s)
            .ok_or(Error::InvalidCase("unknown case kind"))
    }
}

/// Weights and orthonormal directions of an odeco tensor.
#[derive(Debug, Clone, PartialEq)]
pub struct OdecoParts {
    pub alphas: Vec<f64>,
    pub basis: Vec<Vec<f64>>,
}

/// `Σ αₖ (y⁽ᵏ⁾)^{⊗m}`.
pub fn odeco_tensor(order: usize, alphas: &[f64], basis: &[Vec<f64>]) -> Result<SymTensor> {
    let n = basis.first().map_or(0, |b| b.len());
    if alphas.len() != basis.len() || basis.iter().any(|b| b.len() != n) {
        return Err(Error::InvalidCase("odeco needs one weight per basis vector of equal length"));
    }
    SymTensor::from_fn(order, n, |key| {
        alphas
            .iter()
            .zip(basis)
            .map(|(a, y)| a * key.iter().map(|&i| y[i as usize]).product::<f64>())
            .sum()
    })
}

/// Orbit values drawn i.i.d. from `N(0, 1)`.
pub fn gaussian_tensor<R: Rng>(order: usize, dim: usize, rng: &mut R) -> Result<SymTensor> {
    SymTensor::from_fn(order, dim, |_| StandardNormal.sample(rng))
}

pub fn generate_odeco(order: usize, dim: usize, seed: u64) -> Result<(SymTensor, OdecoParts)> {
    check(order, dim)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let basis = loop {
        let raw: Vec<Vec<f64>> = (0..dim)
            .map(|_| (0..dim).map(|_| StandardNormal.sample(&mut rng)).collect())
            .collect();
        if let Some(q) = orthonormalize(&raw) {
            break q;
        }
    };
    let alphas: Vec<f64> = (0..dim).map(|_| rng.random_range(-1.0..=1.0)).collect();
    let t = odeco_tensor(order, &alphas, &basis)?;
    Ok((t, OdecoParts { alphas, basis }))
}

fn check(order: usize, dim: usize) -> Result<()> {
    if order < 2 {
        return Err(Error::InvalidOrder { order, need: ">= 2" });
    }
    if dim < 2 {
        return Err(Error::InvalidDim(dim));
    }
    Ok(())
}

/// A random member of one equality family.
pub fn generate_case(kind: CaseKind, order: usize, dim: usize, seed: u64) -> Result<SymTensor> {
    check(order, dim)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    match kind {
        CaseKind::Diagonal => {
            let d: Vec<f64> = (0..dim).map(|_| rng.random_range(-1.0..=1.0)).collect();
            SymTensor::diagonal(order, &d)
        }
        CaseKind::Nonnegative => SymTensor::from_fn(order, dim, |_| rng.random_range(0.0..=1.0)),
        CaseKind::Nonpositive => SymTensor::from_fn(order, dim, |_| -rng.random_range(0.0..=1.0)),
        CaseKind::Odeco => generate_odeco(order, dim, seed).map(|(t, _)| t),
        CaseKind::Case6 => {
            if order < 4 || order % 2 == 1 {
                return Err(Error::InvalidCase("case6 needs an even order of at least 4"));
            }
            let half = order / 2;
            let factor = binomial(order as u64 - 1, half as u64) as f64;
            let diag: Vec<f64> = (0..dim)
                .map(|_| {
                    let mag = rng.random_range(0.5..=1.0);
                    if rng.random_bool(0.5) {
                        mag
                    } else {
                        -mag
                    }
                })
                .collect();
            let mut t = SymTensor::diagonal(order, &diag)?;
            for i in 0..dim {
                for k in i + 1..dim {
                    let cap = diag[i].abs().min(diag[k].abs()) / factor;
                    let v = cap * rng.random_range(-1.0..=1.0);
                    let mut idx = alloc::vec![i + 1; half];
                    idx.extend(core::iter::repeat_n(k + 1, half));
                    t.set(&idx, v)?;
                }
            }
            Ok(t)
        }
    }
}
