use thiserror::Error;

pub type Result<T> = core::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("order {order} is not supported here (need {need})")]
    InvalidOrder { order: usize, need: &'static str },
    #[error("dimension {0} is not supported (need at least 2)")]
    InvalidDim(usize),
    #[error("index tuple has length {got}, expected {expected}")]
    IndexArity { got: usize, expected: usize },
    #[error("index {index} out of range 1..={dim}")]
    IndexOutOfRange { index: usize, dim: usize },
    #[error("conflicting values {first} and {second} for permutations of one orbit")]
    SymmetryConflict { first: f64, second: f64 },
    #[error("vector length {got} does not match dimension {expected}")]
    DimensionMismatch { got: usize, expected: usize },
    #[error("tensor shapes differ: ({0}, {1}) vs ({2}, {3})")]
    ShapeMismatch(usize, usize, usize, usize),
    #[error("vector length {0} is odd")]
    OddLength(usize),
    #[error("vector is not unit length (squared norm {0})")]
    NonUnitVector(f64),
    #[error("shifted iterate vanished (shift {0} too small)")]
    DegenerateShift(f64),
    #[error("the zero tensor has no meaningful spectral quantity here")]
    ZeroTensor,
    #[error("symmetric eigensolver did not converge after {0} sweeps")]
    NoConvergence(usize),
    #[error("no start converged ({starts} starts, {max_iter} iterations each)")]
    BudgetExhausted { starts: usize, max_iter: usize },
    #[error("invalid solver configuration: {0}")]
    InvalidConfig(&'static str),
    #[error("invalid generator request: {0}")]
    InvalidCase(&'static str),
    #[error("entanglement eigenvalue {q} disagrees with direct overlap maximum {overlap}")]
    CrossCheck { q: f64, overlap: f64 },
}
