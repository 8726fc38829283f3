//! Asymmetric-Laplace-Gaussian (ALG) models of proactive inhibition in the
//! stop-signal task.
//!
//! The difference between go reaction times on trials that follow a stop
//! trial (type B) and trials that follow a go trial (type A) is modelled as
//! the difference of two independent Ex-Gaussians, which is an ALG law.
//!
//! * [`dist`]: densities, distribution functions, moments and samplers.
//! * [`estimation`]: ML and Metropolis fits of ExG and ALG models.
//! * [`sst`]: trial parsing and type-A/type-B clustering.
//! * [`report`]: group statistics and paired t-tests over a parameter table.
//! * [`curves`]: tabulated pdf/cdf/hazard curves for plotting.

// `!(x > 0.0)` is used on purpose so that NaN fails the check.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod curves;
pub mod dist;
pub mod error;
pub mod estimation;
pub mod report;
pub mod special;
pub mod sst;

pub use error::{Error, Result};
