//! Shared numerical kernels: jets, quadrature, the linear ODE integrator, and
//! finite-difference oracles.
//!
//! Everything here is pure and immutable after construction; all evaluators
//! may be called concurrently.

pub mod fd;
pub mod jet;
pub mod ode;
pub mod quad;

pub use fd::{jet3_fd, laplacian_fd, wirtinger_fd, wirtinger_fd_richardson, WirtingerFd};
pub use jet::{polynomial_jet, Jet2Complex, Jet3Complex, Jet3Real, ScalarJet3};
pub use ode::{integrate_linear_ode, integrate_linear_ode_from, rk_adaptive, OdeProfile, OdeSign};
pub use quad::{gauss7, quadrature, segment_integral};
