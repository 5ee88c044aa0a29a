//! File formats, reports and the command-line front end for `qzspec-core`.

pub mod cli;
pub mod format;
pub mod report;
pub mod witness;

pub use format::{parse_tensor_file, to_canonical_string, Tensor, TensorFile};
