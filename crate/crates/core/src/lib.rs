//! Optimal shape parameter selection for Gaussian RBF interpolation.
//!
//! The width parameter `beta` of the Gaussian kernel `e^{-beta |x|^2}`
//! controls interpolation quality dramatically, and this crate chooses it by
//! minimizing the beta-dependent factor of exponential-type error bounds (the
//! MN function) over the feasibility interval the bounds impose. It ships:
//!
//! * [`constants`] — every constant of the two bounds (scattered centers in a
//!   cube, evenly spaced centers on a simplex), in exact or log-domain form;
//! * [`mn`] — the four MN objective functions, closed-form and golden-section
//!   minimizers, and the advisor returning the optimal feasible `beta`;
//! * [`interpolation`] — a Gaussian h-spline interpolation engine with
//!   condition reporting and a least-squares fallback;
//! * [`geometry`] — evenly spaced simplex lattices, barycentric coordinates,
//!   and the cube density check;
//! * [`harness`] — band-limited test functions, native/spectral norms,
//!   error-bound evaluation, and beta-sweep experiments with CSV output.
//!
//! ```
//! use gshape::{advise, Criterion, ProblemConfig, Space};
//!
//! let config = ProblemConfig::new(
//!     1, 1.0, 0.03, 1.0, Space::BandLimited, Criterion::EvenlySpaced,
//! ).unwrap();
//! let result = advise(&config).unwrap();
//! assert!((result.beta_star - 0.0075).abs() < 1e-12);
//! assert!(!result.clamped);
//! ```

pub mod constants;
pub mod error;
pub mod geometry;
pub mod harness;
pub mod interpolation;
pub mod log_scalar;
pub mod mn;
mod quadrature;

pub use constants::BoundConstants;
pub use error::{Error, Result};
pub use geometry::{NodeSet, Simplex};
pub use harness::{BoundVariant, ExperimentReport, ExperimentRow, NodeLayout, TestFunction};
pub use interpolation::{Interpolant, SolveReport};
pub use log_scalar::LogScalar;
pub use mn::{advise, AdvisorResult, Criterion, MnCurve, ProblemConfig, Space};
