//! Real symmetric embedding of a complex symmetric tensor.
//!
//! For `Ψ = A + B·i` of order `m` and dimension `n`, the embedded tensor `T`
//! has dimension `2n`. An index `i > n` is "high" and reduces to `î = i − n`.
//! With `k` high indices among `i₁…i_m`, the default sign rule is
//!
//! ```text
//! k = 2j     :  T = (−1)^j     A_{î₁…î_m}
//! k = 2j + 1 :  T = (−1)^(j+1) B_{î₁…î_m}
//! ```
//!
//! and `z = x + y·i` is a Q-eigenvector of `Ψ` for `λ` exactly when
//! `w = (x, y)` is a Z-eigenvector of `T` for `λ`. For `m = 2` this is the
//! block matrix `[[A, −B], [−B, −A]]`.

use alloc::vec::Vec;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::qspec::pair_map_q;
use crate::tensor::{ComplexSymTensor, SymTensor};

/// Which sign table builds the embedded tensor.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Variant {
    /// The general rule above, valid for every order.
    #[default]
    General,
    /// Order-3 alternative `A, +B, −A, −B` by number of high indices. Its
    /// Z-eigenvectors are `(x, −y)` for a Q-eigenvector `x + y·i`.
    Order3,
}

impl Variant {
    pub fn name(self) -> &'static str {
        match self {
            Variant::General => "theorem4",
            Variant::Order3 => "remark_m3",
        }
    }
}

impl core::str::FromStr for Variant {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "theorem4" => Ok(Variant::General),
            "remark_m3" => Ok(Variant::Order3),
            _ => Err(Error::InvalidConfig("variant must be theorem4 or remark_m3")),
        }
    }
}

#[derive(Debug, Clone)]
pub struct Embedding {
    pub source: ComplexSymTensor,
    pub target: SymTensor,
    pub variant: Variant,
    /// `‖target‖ / ‖source‖ = 2^{(m−1)/2}`.
    pub scale_fact: f64,
}

impl Embedding {
    /// Maps a Z-eigenvector of the target back to a Q-eigenvector of the source.
    pub fn to_source_vector(&self, w: &[f64]) -> Result<Vec<Complex64>> {
        let z = project_vector(w)?;
        Ok(match self.variant {
            Variant::General => z,
            Variant::Order3 => z.into_iter().map(|c| c.conj()).collect(),
        })
    }

    /// Maps a Q-eigenvector of the source to a Z-eigenvector of the target.
    pub fn to_target_vector(&self, z: &[Complex64]) -> Vec<f64> {
        match self.variant {
            Variant::General => lift_vector(z),
            Variant::Order3 => lift_vector(&z.iter().map(|c| c.conj()).collect::<Vec<_>>()),
        }
    }
}

#[derive(Clone, Copy)]
enum Part {
    Re,
    Im,
}

fn sign_rule(variant: Variant, high: usize) -> (Part, f64) {
    match variant {
        Variant::General => {
            let j = high / 2;
            let neg = if high % 2 == 0 { j % 2 == 1 } else { j % 2 == 0 };
            let part = if high % 2 == 0 { Part::Re } else { Part::Im };
            (part, if neg { -1.0 } else { 1.0 })
        }
        Variant::Order3 => match high {
            0 => (Part::Re, 1.0),
            1 => (Part::Im, 1.0),
            2 => (Part::Re, -1.0),
            _ => (Part::Im, -1.0),
        },
    }
}

fn build(psi: &ComplexSymTensor, variant: Variant) -> Result<SymTensor> {
    let (m, n) = (psi.order(), psi.dim());
    let (a, b) = (psi.real_part(), psi.imag_part());
    let mut hat = Vec::with_capacity(m);
    SymTensor::from_fn(m, 2 * n, |key| {
        hat.clear();
        let mut high = 0;
        for &i in key {
            let i = i as usize;
            if i >= n {
                high += 1;
                hat.push(i - n + 1);
            } else {
                hat.push(i + 1);
            }
        }
        let (part, sign) = sign_rule(variant, high);
        let src = match part {
            Part::Re => a,
            Part::Im => b,
        };
        sign * src.entry(&hat).expect("hat indices are in range")
    })
}

/// `M = [[A, −B], [−B, −A]]` for a complex symmetric matrix.
pub fn embed_matrix(psi: &ComplexSymTensor) -> Result<SymTensor> {
    if psi.order() != 2 {
        return Err(Error::InvalidOrder {
            order: psi.order(),
            need: "== 2",
        });
    }
    build(psi, Variant::General)
}

/// The order-`m ≥ 3` embedding under the chosen sign table.
pub fn embed_tensor(psi: &ComplexSymTensor, variant: Variant) -> Result<SymTensor> {
    if psi.order() < 3 {
        return Err(Error::InvalidOrder {
            order: psi.order(),
            need: ">= 3",
        });
    }
    if variant == Variant::Order3 && psi.order() != 3 {
        return Err(Error::InvalidOrder {
            order: psi.order(),
            need: "== 3 for remark_m3",
        });
    }
    build(psi, variant)
}

/// Dispatches on order: the block matrix for `m = 2`, the tensor rule otherwise.
/// `variant` is ignored for matrices.
pub fn embed(psi: &ComplexSymTensor, variant: Variant) -> Result<Embedding> {
    let (target, variant) = if psi.order() == 2 {
        (embed_matrix(psi)?, Variant::General)
    } else {
        (embed_tensor(psi, variant)?, variant)
    };
    Ok(Embedding {
        source: psi.clone(),
        target,
        variant,
        scale_fact: libm::pow(2.0, (psi.order() as f64 - 1.0) / 2.0),
    })
}

/// `z = x + y·i ↦ (x, y)`.
pub fn lift_vector(z: &[Complex64]) -> Vec<f64> {
    z.iter().map(|c| c.re).chain(z.iter().map(|c| c.im)).collect()
}

/// `(x, y) ↦ x + y·i`.
pub fn project_vector(w: &[f64]) -> Result<Vec<Complex64>> {
    if w.len() % 2 != 0 {
        return Err(Error::OddLength(w.len()));
    }
    let n = w.len() / 2;
    Ok((0..n).map(|i| Complex64::new(w[i], w[n + i])).collect())
}

/// `(x, y) ↦ (y, −x)`.
///
/// For `m = 2` this maps an eigenvector of `λ` to one of `−λ`. For general
/// order it is multiplication by `−i` in the complex picture, which pairs
/// eigenvalues only when `m ≡ 2 (mod 4)`; [`rotation_partner`] works for all
/// orders.
pub fn pair_partner(w: &[f64]) -> Result<Vec<f64>> {
    if w.len() % 2 != 0 {
        return Err(Error::OddLength(w.len()));
    }
    let n = w.len() / 2;
    Ok(w[n..].iter().copied().chain(w[..n].iter().map(|x| -x)).collect())
}

/// The `−λ` partner of an embedded Z-eigenvector: rotate every `(xᵢ, yᵢ)`
/// plane by `π/m`, i.e. `z ↦ z·e^{iπ/m}` in the complex picture.
pub fn rotation_partner(w: &[f64], order: usize) -> Result<Vec<f64>> {
    Ok(lift_vector(&pair_map_q(&project_vector(w)?, order)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::jacobi_eigh;
    use alloc::vec;

    fn matrix_of(t: &SymTensor) -> Vec<f64> {
        t.to_dense()
    }

    #[test]
    fn identity_block_form() {
        let psi = ComplexSymTensor::from_real(SymTensor::diagonal(2, &[1.0, 1.0]).unwrap());
        let m = embed_matrix(&psi).unwrap();
        let d = matrix_of(&m);
        for i in 0..4 {
            for j in 0..4 {
                let want = if i != j { 0.0 } else if i < 2 { 1.0 } else { -1.0 };
                assert_eq!(d[i * 4 + j], want);
            }
        }
    }

    #[test]
    fn scalar_three_plus_four_i() {
        let mut psi = ComplexSymTensor::zeros(2, 1).unwrap();
        psi.set(&[1, 1], Complex64::new(3.0, 4.0)).unwrap();
        let m = embed_matrix(&psi).unwrap();
        assert_eq!(matrix_of(&m), vec![3.0, -4.0, -4.0, -3.0]);
        let (vals, _) = jacobi_eigh(&matrix_of(&m), 2).unwrap();
        assert!((vals[0] - 5.0).abs() < 1e-14 && (vals[1] + 5.0).abs() < 1e-14);
    }

    #[test]
    fn imaginary_identity() {
        let psi = ComplexSymTensor::new(
            SymTensor::zeros(2, 2).unwrap(),
            SymTensor::diagonal(2, &[1.0, 1.0]).unwrap(),
        )
        .unwrap();
        let m = matrix_of(&embed_matrix(&psi).unwrap());
        assert_eq!(m[2], -1.0);
        assert_eq!(m[4 + 3], -1.0);
        assert_eq!(m[0], 0.0);
        let (vals, _) = jacobi_eigh(&m, 4).unwrap();
        let want = [1.0, 1.0, -1.0, -1.0];
        for (v, w) in vals.iter().zip(want) {
            assert!((v - w).abs() < 1e-14);
        }
    }

    #[test]
    fn order_checks() {
        let psi3 = ComplexSymTensor::zeros(3, 2).unwrap();
        let psi4 = ComplexSymTensor::zeros(4, 2).unwrap();
        let psi2 = ComplexSymTensor::zeros(2, 2).unwrap();
        assert!(embed_matrix(&psi3).is_err());
        assert!(embed_tensor(&psi2, Variant::General).is_err());
        assert!(embed_tensor(&psi4, Variant::Order3).is_err());
        assert!(embed_tensor(&psi3, Variant::Order3).is_ok());
    }

    #[test]
    fn order_three_sign_rule() {
        // A and B with distinct values on every orbit
        let a = SymTensor::symmetrize(
            3,
            2,
            &[(vec![1, 1, 1], 1.0), (vec![1, 1, 2], 2.0), (vec![1, 2, 2], 3.0), (vec![2, 2, 2], 4.0)],
            Default::default(),
        )
        .unwrap();
        let b = a.scaled(10.0);
        let psi = ComplexSymTensor::new(a.clone(), b.clone()).unwrap();
        let t = embed_tensor(&psi, Variant::General).unwrap();
        let n = 2;
        for i in 1..=n {
            for j in 1..=n {
                for k in 1..=n {
                    let aijk = a.entry(&[i, j, k]).unwrap();
                    let bijk = b.entry(&[i, j, k]).unwrap();
                    assert_eq!(t.entry(&[i, j, k]).unwrap(), aijk);
                    assert_eq!(t.entry(&[i, j + n, k + n]).unwrap(), -aijk);
                    assert_eq!(t.entry(&[i, j, k + n]).unwrap(), -bijk);
                    assert_eq!(t.entry(&[i + n, j + n, k + n]).unwrap(), bijk);
                }
            }
        }
        let r = embed_tensor(&psi, Variant::Order3).unwrap();
        assert_eq!(r.entry(&[1, 2, 3]).unwrap(), b.entry(&[1, 2, 1]).unwrap());
        assert_eq!(r.entry(&[1, 3, 4]).unwrap(), -a.entry(&[1, 1, 2]).unwrap());
        assert_eq!(r.entry(&[3, 4, 4]).unwrap(), -b.entry(&[1, 2, 2]).unwrap());
    }

    #[test]
    fn real_source_has_no_odd_entries() {
        let a = SymTensor::symmetrize(4, 2, &[(vec![1, 1, 2, 2], 0.5), (vec![1, 2, 2, 2], -0.25)], Default::default())
            .unwrap();
        let t = embed_tensor(&ComplexSymTensor::from_real(a), Variant::General).unwrap();
        for o in t.orbits() {
            let high = o.key.iter().filter(|&&i| i > 2).count();
            if high % 2 == 1 {
                assert_eq!(o.value, 0.0, "{:?}", o.key);
            }
        }
    }

    #[test]
    fn vector_maps() {
        let z = [Complex64::new(1.0, 0.0), Complex64::new(0.0, 0.0)];
        assert_eq!(lift_vector(&z), vec![1.0, 0.0, 0.0, 0.0]);
        let zi = [Complex64::new(0.0, 1.0), Complex64::new(0.0, 0.0)];
        assert_eq!(lift_vector(&zi), vec![0.0, 0.0, 1.0, 0.0]);
        assert_eq!(project_vector(&[1.0, 0.0, 0.0, 0.0]).unwrap(), z.to_vec());
        let r = 0.5f64.sqrt();
        let p = project_vector(&[0.0, r, r, 0.0]).unwrap();
        assert_eq!(p, vec![Complex64::new(0.0, r), Complex64::new(r, 0.0)]);
        assert!(matches!(project_vector(&[1.0, 2.0, 3.0]), Err(Error::OddLength(3))));
        assert_eq!(pair_partner(&[1.0, 0.0, 0.0, 0.0]).unwrap(), vec![0.0, 0.0, -1.0, 0.0]);
        assert!(pair_partner(&[1.0]).is_err());
    }
}
