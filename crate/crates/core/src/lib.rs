//! Uniformly random qubit channels under the Lebesgue measure on Choi
//! parameters.
//!
//! The crate covers both channel families (general CPTP and unital):
//!
//! * [`choi`]: Choi matrices, leading-minor positivity, bordered determinants.
//! * [`repr`]: Bloch vectors, the affine Pauli-basis action, rotations.
//! * [`analytic`]: closed-form volumes, volume densities and radial laws.
//! * [`sample`]: a rejection sampler and an exact sequential sampler per family.
//! * [`mc`]: Monte Carlo estimators, KS tests, pushforward and dynamics runs.

// `!(x > 0.0)` is used on purpose so that NaN fails positivity checks.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod analytic;
pub mod choi;
pub mod error;
pub mod mc;
pub mod quad;
pub mod repr;
pub mod rng;
pub mod sample;

pub use choi::{
    Complex, GeneralChannelParams, HermitianMatrix, HermitianMatrix4, UnitalChannelParams,
};
pub use error::{Error, Result};
pub use mc::{ChannelKind, EmpiricalDistribution, KsResult, VolumeEstimate};
pub use repr::{AffineMap, BlochVector, ClassicalChannel, Rotation3};
pub use rng::RngStream;
