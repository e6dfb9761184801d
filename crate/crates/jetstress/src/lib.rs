//! Verification kernel for geometric stress theory on box charts.
//!
//! The crate implements, over exact rational (or `f64`) coefficients:
//! multi-index and alternating algebra, jet and iterated-jet prolongation
//! with their norm isometries, smooth de Rham currents represented by
//! polynomial densities, and the simple-stress pipeline (traction
//! densities, the generalized Cauchy formula, generalized divergence,
//! and the virtual-work balance equation) — each identity checkable
//! exactly on polynomial data.

pub mod config;
pub mod currents;
pub mod error;
pub mod exterior;
pub mod fields;
pub mod jets;
pub mod multiindex;
pub mod report;
pub mod scalar;
pub mod stress;
pub mod suites;

pub use error::{Error, Result};
pub use scalar::{Rat, Scalar};
