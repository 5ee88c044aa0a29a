//! Spectral toolkit for symmetric tensors.
//!
//! Computes Z-eigenpairs of real symmetric tensors and quantum (Q-)
//! eigenpairs of complex symmetric tensors. A complex symmetric tensor of
//! order `m` and dimension `n` is turned into a real symmetric tensor of
//! dimension `2n` whose Z-eigenvalues are exactly its Q-eigenvalues, so one
//! real solver serves both problems.
//!
//! The crate is `no_std` and only needs `alloc`. File formats, reports and
//! the command-line front end live in the `qzspec` companion crate.
//!
//! Module map:
//!
//! - [`tensor`]: canonical-orbit storage, contractions and norms.
//! - [`embed`]: the real embedding of a complex symmetric tensor.
//! - [`zsolve`]: Z-eigenpair solvers and brute-force oracles.
//! - [`qspec`]: Q-eigenpairs, the entanglement eigenvalue, equality
//!   families and the Q/Z ratio search.
#![cfg_attr(not(test), no_std)]
#![forbid(unsafe_code)]

extern crate alloc;

pub mod embed;
mod error;
pub mod linalg;
pub(crate) mod math;
pub mod orbit;
pub mod qspec;
pub mod tensor;
pub mod zsolve;

pub use crate::embed::{Embedding, Variant};
pub use crate::error::{Error, Result};
pub use crate::orbit::MultiIndexOrbit;
pub use crate::qspec::{QEigenpair, QSpectrumReport, RatioReport};
pub use crate::tensor::{ComplexSymTensor, Ingest, SymTensor};
pub use crate::zsolve::{Eigenpair, SolverConfig, SolverKind, SpectrumReport};

pub use num_complex::Complex64;
