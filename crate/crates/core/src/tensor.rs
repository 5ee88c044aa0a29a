//! Dense symmetric tensors in canonical-orbit storage.
//!
//! Values are kept once per orbit of index permutations, so a tensor of
//! order `m` and dimension `n` stores `C(n+m-1, m)` numbers instead of
//! `n^m`. Public indices are 1-based; everything internal is 0-based.

use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;
use core::ops::{Add, Mul};

use num_complex::Complex64;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::math;
use crate::orbit::{MultiIndexOrbit, OrbitTable};

/// How [`SymTensor::symmetrize`] treats several raw values landing in the
/// same orbit.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Ingest {
    /// Reject permutations of one orbit that carry different values.
    #[default]
    Strict,
    /// Average all supplied values of an orbit.
    Average,
}

/// Real symmetric tensor of order `m ≥ 2`.
#[derive(Clone, Debug)]
pub struct SymTensor {
    table: Arc<OrbitTable>,
    values: Vec<f64>,
}

impl PartialEq for SymTensor {
    fn eq(&self, other: &Self) -> bool {
        self.order() == other.order() && self.dim() == other.dim() && self.values == other.values
    }
}

fn check_shape(order: usize, dim: usize) -> Result<()> {
    if order < 2 {
        return Err(Error::InvalidOrder { order, need: ">= 2" });
    }
    if dim == 0 || dim > u16::MAX as usize {
        return Err(Error::InvalidDim(dim));
    }
    Ok(())
}

/// Sorts a 1-based index tuple into a 0-based canonical key.
fn canonical_key(idx: &[usize], order: usize, dim: usize) -> Result<Vec<u16>> {
    if idx.len() != order {
        return Err(Error::IndexArity {
            got: idx.len(),
            expected: order,
        });
    }
    let mut key = Vec::with_capacity(order);
    for &i in idx {
        if i == 0 || i > dim {
            return Err(Error::IndexOutOfRange { index: i, dim });
        }
        key.push((i - 1) as u16);
    }
    key.sort_unstable();
    Ok(key)
}

fn conflicting(a: f64, b: f64) -> bool {
    let scale = 1f64.max(libm::fabs(a)).max(libm::fabs(b));
    libm::fabs(a - b) > 1e-12 * scale
}

impl SymTensor {
    /// The zero tensor. Dimension 1 is allowed here so that scalar
    /// examples can be embedded; ingestion from user data requires `n ≥ 2`.
    pub fn zeros(order: usize, dim: usize) -> Result<Self> {
        check_shape(order, dim)?;
        let table = Arc::new(OrbitTable::new(order, dim));
        let values = vec![0.0; table.len()];
        Ok(Self { table, values })
    }

    /// A zero tensor sharing this tensor's orbit table.
    pub fn zeros_like(&self) -> Self {
        Self {
            table: self.table.clone(),
            values: vec![0.0; self.values.len()],
        }
    }

    /// Builds a tensor from raw `(1-based index tuple, value)` records.
    ///
    /// A value given at one representative of an orbit is broadcast to the
    /// whole orbit. Several values for the same orbit are averaged in
    /// [`Ingest::Average`] mode and must agree in [`Ingest::Strict`] mode.
    pub fn symmetrize(
        order: usize,
        dim: usize,
        raw: &[(Vec<usize>, f64)],
        mode: Ingest,
    ) -> Result<Self> {
        if dim < 2 {
            return Err(Error::InvalidDim(dim));
        }
        let mut t = Self::zeros(order, dim)?;
        let mut sums = vec![0.0; t.values.len()];
        let mut counts = vec![0u32; t.values.len()];
        for (idx, v) in raw {
            let key = canonical_key(idx, order, dim)?;
            let o = t.table.position(&key).expect("canonical key is always present");
            if mode == Ingest::Strict && counts[o] > 0 && conflicting(sums[o] / counts[o] as f64, *v) {
                return Err(Error::SymmetryConflict {
                    first: sums[o] / counts[o] as f64,
                    second: *v,
                });
            }
            sums[o] += v;
            counts[o] += 1;
        }
        for o in 0..t.values.len() {
            if counts[o] > 0 {
                t.values[o] = sums[o] / counts[o] as f64;
            }
        }
        Ok(t)
    }

    /// Builds a tensor by evaluating `f` on every sorted 0-based key.
    pub(crate) fn from_fn(order: usize, dim: usize, mut f: impl FnMut(&[u16]) -> f64) -> Result<Self> {
        let mut t = Self::zeros(order, dim)?;
        for o in 0..t.values.len() {
            t.values[o] = f(t.table.key(o));
        }
        Ok(t)
    }

    /// Diagonal tensor with `a_{k…k} = diag[k]`.
    pub fn diagonal(order: usize, diag: &[f64]) -> Result<Self> {
        let mut t = Self::zeros(order, diag.len())?;
        for (k, &d) in diag.iter().enumerate() {
            let key = vec![k as u16; order];
            let o = t.table.position(&key).expect("diagonal key");
            t.values[o] = d;
        }
        Ok(t)
    }

    /// Symmetric matrix from a row-major `n × n` array; the upper triangle wins.
    pub fn from_matrix(n: usize, a: &[f64]) -> Result<Self> {
        if a.len() != n * n {
            return Err(Error::DimensionMismatch {
                got: a.len(),
                expected: n * n,
            });
        }
        Self::from_fn(2, n, |k| a[k[0] as usize * n + k[1] as usize])
    }

    #[inline]
    pub fn order(&self) -> usize {
        self.table.order()
    }

    #[inline]
    pub fn dim(&self) -> usize {
        self.table.dim()
    }

    /// Number of canonical orbits.
    pub fn orbit_count(&self) -> usize {
        self.values.len()
    }

    /// Entry at any permutation of a 1-based index tuple.
    pub fn entry(&self, idx: &[usize]) -> Result<f64> {
        let key = canonical_key(idx, self.order(), self.dim())?;
        Ok(self.values[self.table.position(&key).expect("canonical key")])
    }

    /// Sets the whole orbit of a 1-based index tuple.
    pub fn set(&mut self, idx: &[usize], value: f64) -> Result<()> {
        let key = canonical_key(idx, self.order(), self.dim())?;
        let o = self.table.position(&key).expect("canonical key");
        self.values[o] = value;
        Ok(())
    }

    /// All orbits, zero or not, in lexicographic key order.
    pub fn orbits(&self) -> impl Iterator<Item = MultiIndexOrbit> + '_ {
        (0..self.values.len()).map(move |o| MultiIndexOrbit {
            key: self.table.key(o).iter().map(|&k| k as usize + 1).collect(),
            multiplicity: self.table.multiplicity(o) as u64,
            value: self.values[o],
        })
    }

    /// Orbits with a nonzero value.
    pub fn nonzero_orbits(&self) -> impl Iterator<Item = MultiIndexOrbit> + '_ {
        self.orbits().filter(|o| o.value != 0.0)
    }

    pub fn is_zero(&self) -> bool {
        self.values.iter().all(|&v| v == 0.0)
    }

    pub fn max_abs_value(&self) -> f64 {
        self.values.iter().fold(0.0, |m, v| m.max(libm::fabs(*v)))
    }

    pub fn scaled(&self, c: f64) -> Self {
        Self {
            table: self.table.clone(),
            values: self.values.iter().map(|v| c * v).collect(),
        }
    }

    /// `self + c·other`; shapes must agree.
    pub fn add_scaled(&self, c: f64, other: &Self) -> Result<Self> {
        same_shape(self, other)?;
        Ok(Self {
            table: self.table.clone(),
            values: self.values.iter().zip(&other.values).map(|(a, b)| a + c * b).collect(),
        })
    }

    fn check_len(&self, len: usize) -> Result<()> {
        if len != self.dim() {
            return Err(Error::DimensionMismatch {
                got: len,
                expected: self.dim(),
            });
        }
        Ok(())
    }

    /// `(T w^{m−1})_i = Σ T_{i i₂…i_m} w_{i₂}…w_{i_m}`.
    pub fn contract_m1(&self, w: &[f64]) -> Result<Vec<f64>> {
        self.check_len(w.len())?;
        Ok(contract_rows(&self.table, |o| self.values[o], w))
    }

    /// `T w^m`.
    pub fn apply_m(&self, w: &[f64]) -> Result<f64> {
        self.check_len(w.len())?;
        Ok(apply_full(&self.table, |o| self.values[o], w))
    }

    /// The matrix `T w^{m−2}`, row-major `n × n`.
    pub fn contract_m2(&self, w: &[f64]) -> Result<Vec<f64>> {
        self.check_len(w.len())?;
        let n = self.dim();
        let m = self.order();
        let mut out = vec![0.0; n * n];
        for o in 0..self.values.len() {
            let v = self.values[o];
            if v == 0.0 {
                continue;
            }
            let key = self.table.key(o);
            let mult = self.table.multiplicity(o);
            let runs = runs(key);
            for &(i, pi, ci) in &runs {
                for &(j, pj, cj) in &runs {
                    let cj = if i == j { cj - 1 } else { cj };
                    if cj == 0 {
                        continue;
                    }
                    let count = mult * (ci * cj) as f64 / (m * (m - 1)) as f64;
                    let skip_b = if i == j { pi + 1 } else { pj };
                    let mut prod = 1.0;
                    for (p, &k) in key.iter().enumerate() {
                        if p != pi && p != skip_b {
                            prod *= w[k as usize];
                        }
                    }
                    out[i as usize * n + j as usize] += v * count * prod;
                }
            }
        }
        Ok(out)
    }

    /// `sqrt(Σ value²·multiplicity)` over orbits.
    pub fn frobenius_norm(&self) -> f64 {
        math::sqrt(self.frobenius_sq())
    }

    pub(crate) fn frobenius_sq(&self) -> f64 {
        self.values
            .iter()
            .enumerate()
            .map(|(o, v)| v * v * self.table.multiplicity(o))
            .sum()
    }

    /// All `n^m` entries, row-major with the last index fastest.
    pub fn to_dense(&self) -> Vec<f64> {
        let (m, n) = (self.order(), self.dim());
        let total = n.pow(m as u32);
        let mut out = Vec::with_capacity(total);
        let mut idx = vec![0u16; m];
        let mut key = vec![0u16; m];
        for _ in 0..total {
            key.copy_from_slice(&idx);
            key.sort_unstable();
            out.push(self.values[self.table.position(&key).expect("canonical key")]);
            for p in (0..m).rev() {
                idx[p] += 1;
                if (idx[p] as usize) < n {
                    break;
                }
                idx[p] = 0;
            }
        }
        out
    }
}

fn same_shape(a: &SymTensor, b: &SymTensor) -> Result<()> {
    if a.order() != b.order() || a.dim() != b.dim() {
        return Err(Error::ShapeMismatch(a.order(), a.dim(), b.order(), b.dim()));
    }
    Ok(())
}

/// `(index, first position, count)` for each run of equal indices.
fn runs(key: &[u16]) -> Vec<(u16, usize, usize)> {
    let mut out = Vec::new();
    let mut i = 0;
    while i < key.len() {
        let mut j = i;
        while j < key.len() && key[j] == key[i] {
            j += 1;
        }
        out.push((key[i], i, j - i));
        i = j;
    }
    out
}

fn contract_rows<S>(table: &OrbitTable, value: impl Fn(usize) -> S, w: &[S]) -> Vec<S>
where
    S: Copy + Zero + One + Mul<Output = S> + Add<Output = S> + Mul<f64, Output = S>,
{
    let m = table.order();
    let mut out = vec![S::zero(); table.dim()];
    let mut prefix = vec![S::one(); m + 1];
    let mut suffix = vec![S::one(); m + 1];
    for o in 0..table.len() {
        let v = value(o);
        if v.is_zero() {
            continue;
        }
        let key = table.key(o);
        for p in 0..m {
            prefix[p + 1] = prefix[p] * w[key[p] as usize];
        }
        for p in (0..m).rev() {
            suffix[p] = w[key[p] as usize] * suffix[p + 1];
        }
        let mut pos = 0;
        for &(idx, count) in table.rows(o) {
            while key[pos] != idx {
                pos += 1;
            }
            let prod = prefix[pos] * suffix[pos + 1];
            let i = idx as usize;
            out[i] = out[i] + v * prod * count;
        }
    }
    out
}

fn apply_full<S>(table: &OrbitTable, value: impl Fn(usize) -> S, w: &[S]) -> S
where
    S: Copy + Zero + One + Mul<Output = S> + Add<Output = S> + Mul<f64, Output = S>,
{
    let mut acc = S::zero();
    for o in 0..table.len() {
        let v = value(o);
        if v.is_zero() {
            continue;
        }
        let prod = table.key(o).iter().fold(S::one(), |p, &k| p * w[k as usize]);
        acc = acc + v * prod * table.multiplicity(o);
    }
    acc
}

/// Complex symmetric tensor `Ψ = A + B·i` with `A`, `B` real symmetric of
/// the same shape.
#[derive(Clone, Debug, PartialEq)]
pub struct ComplexSymTensor {
    re: SymTensor,
    im: SymTensor,
}

impl ComplexSymTensor {
    pub fn new(re: SymTensor, im: SymTensor) -> Result<Self> {
        same_shape(&re, &im)?;
        // share one table so contraction can walk both in lockstep
        let im = SymTensor {
            table: re.table.clone(),
            values: im.values,
        };
        Ok(Self { re, im })
    }

    /// `A + 0·i`.
    pub fn from_real(re: SymTensor) -> Self {
        let im = re.zeros_like();
        Self { re, im }
    }

    pub fn zeros(order: usize, dim: usize) -> Result<Self> {
        Ok(Self::from_real(SymTensor::zeros(order, dim)?))
    }

    /// Builds `Ψ` from raw complex records, with the same orbit rules as
    /// [`SymTensor::symmetrize`] applied to both parts.
    pub fn symmetrize(
        order: usize,
        dim: usize,
        raw: &[(Vec<usize>, Complex64)],
        mode: Ingest,
    ) -> Result<Self> {
        let re: Vec<_> = raw.iter().map(|(i, z)| (i.clone(), z.re)).collect();
        let im: Vec<_> = raw.iter().map(|(i, z)| (i.clone(), z.im)).collect();
        Self::new(
            SymTensor::symmetrize(order, dim, &re, mode)?,
            SymTensor::symmetrize(order, dim, &im, mode)?,
        )
    }

    pub fn real_part(&self) -> &SymTensor {
        &self.re
    }

    pub fn imag_part(&self) -> &SymTensor {
        &self.im
    }

    pub fn order(&self) -> usize {
        self.re.order()
    }

    pub fn dim(&self) -> usize {
        self.re.dim()
    }

    pub fn is_real(&self) -> bool {
        self.im.is_zero()
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn entry(&self, idx: &[usize]) -> Result<Complex64> {
        Ok(Complex64::new(self.re.entry(idx)?, self.im.entry(idx)?))
    }

    pub fn set(&mut self, idx: &[usize], value: Complex64) -> Result<()> {
        self.re.set(idx, value.re)?;
        self.im.set(idx, value.im)
    }

    pub fn scaled(&self, c: Complex64) -> Self {
        let mut re = self.re.zeros_like();
        let mut im = self.im.zeros_like();
        for o in 0..re.values.len() {
            let v = Complex64::new(self.re.values[o], self.im.values[o]) * c;
            re.values[o] = v.re;
            im.values[o] = v.im;
        }
        Self { re, im }
    }

    #[inline]
    fn value(&self, o: usize) -> Complex64 {
        Complex64::new(self.re.values[o], self.im.values[o])
    }

    /// `Ψ z^{m−1}`.
    pub fn contract_m1(&self, z: &[Complex64]) -> Result<Vec<Complex64>> {
        self.re.check_len(z.len())?;
        Ok(contract_rows(&self.re.table, |o| self.value(o), z))
    }

    /// `Ψ z^m`.
    pub fn apply_m(&self, z: &[Complex64]) -> Result<Complex64> {
        self.re.check_len(z.len())?;
        Ok(apply_full(&self.re.table, |o| self.value(o), z))
    }

    /// `sqrt(‖A‖² + ‖B‖²)`, the modulus-squared convention.
    pub fn frobenius_norm(&self) -> f64 {
        math::sqrt(self.re.frobenius_sq() + self.im.frobenius_sq())
    }

    pub fn to_dense(&self) -> Vec<Complex64> {
        self.re
            .to_dense()
            .into_iter()
            .zip(self.im.to_dense())
            .map(|(a, b)| Complex64::new(a, b))
            .collect()
    }
}
