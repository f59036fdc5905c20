//! Numerical toolkit for Schwarzian distortion bounds.
//!
//! The crate computes Ahlfors Schwarzians of curves in R^n, Schwarzian
//! derivatives and Weierstrass-Enneper lifts of planar harmonic mappings,
//! the extremal profiles F and G attached to Nehari weights, and conformal
//! surface distances on a weighted grid -- and turns the corresponding
//! two-point distortion and covering inequalities into falsifiable numerical
//! checks with machine-readable reports.
//!
//! Module map:
//! - [`numerics`]: jets, adaptive RK and quadrature, finite-difference oracles
//! - [`nehari`]: Nehari weights p, profiles F and G, disconjugacy scans
//! - [`curves`]: curves as 3-jets, Ahlfors Schwarzian, Mobius maps, two-point checks
//! - [`harmonic`]: harmonic mappings, lifts, curvature, criterion margins
//! - [`metric`]: conformal grid distances, covering bounds
//! - [`report`]: serializable report types shared by the verifiers
//!
//! # Quick start
//!
//! Build the extremal profile of a weight and check the two-point bound on
//! the curve that attains it:
//!
//! ```
//! use sdl_core::curves::{verify_theorem2, CurveJet, VerifyOpts};
//! use sdl_core::nehari::{extremal_f, NehariFunction};
//!
//! let p = NehariFunction::classical();
//! let profile = extremal_f(&p, 1e-3, 1e-11)?;
//! assert!((profile.eval_f(0.5)? - 0.5 * 3.0_f64.ln()).abs() < 1e-9);
//!
//! let sharp = CurveJet::profile_line(&profile, 2)?;
//! let report = verify_theorem2(&sharp, &profile, &[(0.3, -0.5)], &VerifyOpts::default())?;
//! assert!(report.min_margin.abs() < 1e-7);
//! # Ok::<(), sdl_core::Error>(())
//! ```

pub mod curves;
pub mod error;
pub mod harmonic;
pub mod metric;
pub mod nehari;
pub mod numerics;
pub mod report;
pub mod util;

pub use error::{Error, Result};
