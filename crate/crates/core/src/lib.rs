//! Exact non-archimedean Nevanlinna theory over `Q` with the p-adic absolute value.
//!
//! Everything in this crate is exact: coefficients are arbitrary-precision
//! rationals, absolute values are tracked through their base-`p` logarithms,
//! and the Nevanlinna functions `T`, `N`, `m` are represented as piecewise
//! linear functions of the log-radius `s = log_p r` with rational breakpoints
//! and slopes. No floating point appears anywhere.
//!
//! The main entry points are:
//!
//! - [`series::EntireSeries`] — truncated entire functions, their Gauss norms
//!   and Newton polygons, and exact zero counting in disks;
//! - [`projective::ProjectiveMap`] and [`projective::Hypersurface`] — analytic
//!   maps to projective space and hypersurface pullbacks, with the
//!   characteristic, counting and proximity functions, an exact
//!   first-main-theorem residual, defects, and second-main-theorem margin
//!   reports;
//! - [`geometry`] — witness-point transversality checks, line restrictions,
//!   and the generator for the tight (equality) configurations;
//! - [`scenario`] — the TOML scenario-file front end shared by the CLI and
//!   the browser demo.

pub mod error;
pub mod geometry;
pub mod multipoly;
pub mod plf;
pub mod projective;
pub mod rat;
pub mod report;
pub mod scenario;
pub mod series;
pub mod valuation;

pub use error::{Error, Result};
pub use plf::{Interval, PLFunction};
pub use rat::Rat;
pub use valuation::{ExtLog, PrimeConfig};
