//! Amnesia-weighted heavy-tailed kernels and a from-scratch soft-margin SVM.
//!
//! The crate is split into four layers:
//!
//! - [`kernels`]: pointwise AWFK / RBF evaluation, Gram construction and PSD checks.
//! - [`solver`]: two-variable SMO over a precomputed Gram matrix, prediction and
//!   a plain-text model format.
//! - [`data`]: CSV / libsvm loaders, standardization, stratified splits and the
//!   synthetic generators used by the experiments.
//! - [`eval`]: metrics, cross-validation, grid search, decision-boundary export
//!   and timing benchmarks.
//!
//! All randomness flows through [`data::rng::SeededRng`], so every experiment is
//! a pure function of its seed.

pub mod data;
pub mod error;
pub mod eval;
pub mod kernels;
pub mod matrix;
pub mod solver;

pub use error::{Error, Result};
pub use kernels::{AwfkParams, Deformation, GramMatrix, KernelSpec, RbfParams};
pub use matrix::Matrix;
