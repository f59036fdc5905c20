//! Crate-wide error type.

use num_complex::Complex64;
use thiserror::Error;

/// Everything that can go wrong in the toolkit.
#[derive(Debug, Error)]
pub enum Error {
    #[error("ODE coefficient evaluated to a non-finite value at x = {x}")]
    NonFiniteCoefficient { x: f64 },

    #[error("adaptive step size underflowed at x = {x} (step {step:.3e})")]
    StepUnderflow { x: f64, step: f64 },

    #[error("integrand evaluated to a non-finite value at t = {t}")]
    NonFiniteIntegrand { t: f64 },

    #[error("quadrature exceeded {max} subdivisions; worst interval [{a}, {b}] with error estimate {err:.3e}")]
    MaxSubdivisions {
        max: usize,
        a: f64,
        b: f64,
        err: f64,
    },

    #[error("finite-difference stencil of radius {radius} around z = {z} leaves the unit disk")]
    StencilOutsideDomain { z: Complex64, radius: f64 },

    #[error("unknown kind `{name}`")]
    UnknownKind { name: String },

    #[error("u0 vanishes near x = {x}: p is not disconjugate on the cut domain")]
    DoubleZeroDetected { x: f64 },

    #[error("convex solution dropped below 1 at x = {x} (u = {u}); integrator failure")]
    ConvexityViolated { x: f64, u: f64 },

    #[error("argument {x} outside the domain {domain}")]
    DomainError { x: f64, domain: &'static str },

    #[error("degenerate tangent |phi'({x})| < 1e-12")]
    DegenerateTangent { x: f64 },

    #[error("inversion center hit by the curve at x = {x}")]
    InversionSingularity { x: f64 },

    #[error("hypothesis {condition} fails at {site}: lhs = {lhs}, bound = {bound}")]
    HypothesisFailed {
        condition: &'static str,
        site: String,
        lhs: f64,
        bound: f64,
    },

    #[error("conformal factor vanishes at z = {z}")]
    ZeroConformalFactor { z: Complex64 },

    #[error(
        "sigma is not smooth at z = {z} (derivative of h or g vanishes without the limit existing)"
    )]
    NonSmoothSigma { z: Complex64 },

    #[error("Gauss curvature {k} > 0 at z = {z}: invalid Weierstrass-Enneper data")]
    PositiveCurvature { z: Complex64, k: f64 },

    #[error("integration path leaves the unit disk")]
    PathOutsideDisk,

    #[error("grid graph is disconnected between the requested nodes")]
    Disconnected,

    #[error("point z = {z} lies outside the grid (radius cut {r_max})")]
    OutOfGrid { z: Complex64, r_max: f64 },

    #[error("matrix is not orthogonal within 1e-12")]
    NotOrthogonal,

    #[error("scan baseline fails: p itself is not disconjugate at c = 1")]
    ScanBaseFails,

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
