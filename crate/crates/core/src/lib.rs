//! Exact continuous Fréchet distance between 1D time series, together with
//! its translation- and scaling-invariant variants.
//!
//! All arithmetic is done over exact rationals ([`Scalar`]). Vertex indices
//! are 0-based.

pub mod boundary;
pub mod error;
pub mod grid;
pub mod matrix;
pub mod oracle;
pub mod reach;
pub mod scalar;
pub mod scaling;
pub mod series;
pub mod signature;
pub mod sweep;
pub mod translation;

pub use error::{Error, Result};
pub use scalar::{Interval, Scalar};
pub use series::TimeSeries;
pub use signature::{
    compute_drop_thresholds, compute_extended_signature, scaling_thresholds, verify_signature,
    DropThresholds, Extended, ExtendedSignature, ScalingThresholds, SignatureViolation,
};
