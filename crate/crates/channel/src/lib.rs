//! Indoor large-scale propagation channel models for the 0.5-100 GHz
//! band, covering office and shopping-mall environments.
//!
//! What's here:
//!
//! - [`pathloss`]: FSPL anchor, CI / CIF / ABG and dual-slope path-loss
//!   models, and Gaussian shadow-fading draws.
//! - [`registry`]: the published parameter table for both environments,
//!   LOS and NLOS, single and dual slope, with JSON load/save.
//! - [`los`]: seven indoor LOS-probability curves and Bernoulli sampling.
//! - [`penetration`]: material attenuation-rate tables (dB/cm) and the
//!   thickness composition rule.
//! - [`fitting`]: parameter estimation from measured path-loss samples
//!   (closed-form CI, least-squares CIF/ABG, breakpoint-grid dual-slope)
//!   and a binned-MSE scorer for LOS curves.
//! - [`simulator`]: Monte-Carlo AP/UE link drops in parametric floor
//!   plans with map-based or stochastic LOS, and empirical CDFs.
//! - [`csvio`]: the CSV file interfaces shared with the command-line
//!   front end.
//!
//! Everything is deterministic given its inputs; random sources are
//! always explicit seeded generators passed by the caller, so concurrent
//! use needs no synchronization.

// validators use `!(x > 0.0)` so that NaN fails the check too
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod csvio;
pub mod error;
pub mod fitting;
pub mod geometry;
pub mod los;
pub mod pathloss;
pub mod penetration;
pub mod registry;
pub mod simulator;
pub mod units;

pub use error::{Error, Result};
pub use units::{Distance, Frequency, SPEED_OF_LIGHT, SUPPORTED_BAND_GHZ};
