//! Nehari weights p(x) and their extremal profiles.
//!
//! A Nehari weight is a positive continuous even function on (-1, 1) such
//! that (1-x^2)^2 p(x) is nonincreasing on [0, 1) and u'' + p u = 0 is
//! disconjugate (no nontrivial solution vanishes twice). Three classical
//! weights are built in. From a weight we construct:
//!
//! - the profile F: F(x) = integral of 1/u0^2 from 0 to x, where u0 solves
//!   u'' + p u = 0 with u0(0) = 1, u0'(0) = 0; F has Schwarzian 2p;
//! - the companion G from u'' - p u = 0, whose Schwarzian is -2p and which
//!   drives the covering bound.
//!
//! Disconjugacy is checked numerically on a grid; results are numerical
//! evidence, never certificates. The extremality scan works in the variable
//! t = arctanh x, where u(x) = y(t)/cosh t turns u'' + c p u = 0 into
//! y'' + [c (1-x^2)^2 p(x) - 1] y = 0 and a Pruefer phase counts zeros
//! robustly all the way to the boundary; on the x-side the boundary region
//! that decides extremality is not representable in double precision.

use std::io::Write;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::numerics::{
    integrate_linear_ode, integrate_linear_ode_from, quadrature, rk_adaptive, OdeProfile, OdeSign,
};
use crate::util::linspace;

/// Default domain cut: all ODE and quadrature work happens on [-1+eps, 1-eps].
pub const DEFAULT_EPS: f64 = 1e-3;
/// Default local error tolerance for the profile integrator.
pub const DEFAULT_TOL: f64 = 1e-10;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum NehariKind {
    /// p(x) = (1-x^2)^{-2}
    ClassicalNehari,
    /// p(x) = pi^2/4
    ConstantPi2,
    /// p(x) = 2(1-x^2)^{-1}
    Pokornyi,
    Custom,
}

impl std::fmt::Display for NehariKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = match self {
            NehariKind::ClassicalNehari => "classical_nehari",
            NehariKind::ConstantPi2 => "constant_pi2",
            NehariKind::Pokornyi => "pokornyi",
            NehariKind::Custom => "custom",
        };
        f.write_str(s)
    }
}

/// Structural properties the caller claims for a weight. Builtins carry all
/// four; custom weights declare their own and the toolkit verifies claims on
/// a grid before any theorem run that needs them.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct NehariFlags {
    pub even: bool,
    pub positive: bool,
    /// (1-x^2)^2 p(x) nonincreasing on [0, 1).
    pub decay_nonincreasing: bool,
    /// p itself nondecreasing on [0, 1); needed by the covering theorem.
    pub monotone_nondecreasing: bool,
}

impl NehariFlags {
    pub const ALL: NehariFlags = NehariFlags {
        even: true,
        positive: true,
        decay_nonincreasing: true,
        monotone_nondecreasing: true,
    };
}

/// An even positive weight on (-1, 1) with declared structural flags.
#[derive(Clone)]
pub struct NehariFunction {
    eval: Arc<dyn Fn(f64) -> f64 + Send + Sync>,
    kind: NehariKind,
    label: String,
    flags: NehariFlags,
    /// Multiplicative factor relative to the base evaluator (scan rescale).
    scale: f64,
}

impl std::fmt::Debug for NehariFunction {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("NehariFunction")
            .field("kind", &self.kind)
            .field("label", &self.label)
            .field("flags", &self.flags)
            .field("scale", &self.scale)
            .finish()
    }
}

impl NehariFunction {
    pub fn classical() -> Self {
        NehariFunction {
            eval: Arc::new(|x| {
                let d = 1.0 - x * x;
                1.0 / (d * d)
            }),
            kind: NehariKind::ClassicalNehari,
            label: "classical_nehari".into(),
            flags: NehariFlags::ALL,
            scale: 1.0,
        }
    }

    pub fn constant_pi2() -> Self {
        NehariFunction {
            eval: Arc::new(|_| std::f64::consts::PI * std::f64::consts::PI / 4.0),
            kind: NehariKind::ConstantPi2,
            label: "constant_pi2".into(),
            flags: NehariFlags::ALL,
            scale: 1.0,
        }
    }

    pub fn pokornyi() -> Self {
        NehariFunction {
            eval: Arc::new(|x| 2.0 / (1.0 - x * x)),
            kind: NehariKind::Pokornyi,
            label: "pokornyi".into(),
            flags: NehariFlags::ALL,
            scale: 1.0,
        }
    }

    /// Builtin lookup by name (CLI entry point).
    pub fn builtin(name: &str) -> Result<Self> {
        match name {
            "classical" | "classical_nehari" => Ok(Self::classical()),
            "pi2" | "constant_pi2" => Ok(Self::constant_pi2()),
            "pokornyi" => Ok(Self::pokornyi()),
            other => Err(Error::UnknownKind { name: other.into() }),
        }
    }

    /// Custom weight with caller-declared flags. Positivity is spot-checked
    /// immediately; full flag verification happens in [`Self::verify_flags`].
    pub fn custom(
        label: impl Into<String>,
        flags: NehariFlags,
        eval: impl Fn(f64) -> f64 + Send + Sync + 'static,
    ) -> Result<Self> {
        let f = NehariFunction {
            eval: Arc::new(eval),
            kind: NehariKind::Custom,
            label: label.into(),
            flags,
            scale: 1.0,
        };
        for &x in &[0.0, 0.37, 0.83, -0.59] {
            let v = f.eval(x);
            if !v.is_finite() {
                return Err(Error::NonFiniteCoefficient { x });
            }
            if flags.positive && v <= 0.0 {
                return Err(Error::InvalidInput(format!(
                    "claimed-positive p({x}) = {v} <= 0"
                )));
            }
        }
        Ok(f)
    }

    pub fn eval(&self, x: f64) -> f64 {
        self.scale * (self.eval)(x)
    }

    pub fn kind(&self) -> NehariKind {
        self.kind
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn flags(&self) -> NehariFlags {
        self.flags
    }

    /// c * p with flags preserved (positive scaling keeps all four).
    pub fn scaled(&self, c: f64) -> Self {
        let mut out = self.clone();
        out.scale *= c;
        if (c - 1.0).abs() > 1e-15 {
            out.label = format!("{:.6}*{}", out.scale, self.label);
        }
        out
    }

    pub fn scale_factor(&self) -> f64 {
        self.scale
    }

    /// (1-x^2)^2 p(x) at x = tanh t, evaluated without boundary cancellation.
    ///
    /// Builtins use exact closed forms valid for every t. Custom weights are
    /// evaluated directly up to CUSTOM_TAIL_T and frozen beyond it; freezing
    /// is an upper bound whenever the decay flag holds, which is the
    /// conservative direction for a no-zeros verdict (Sturm majorant).
    fn decay_product_t(&self, t: f64) -> f64 {
        let sech2 = {
            let c = t.cosh();
            1.0 / (c * c)
        };
        match self.kind {
            NehariKind::ClassicalNehari => self.scale,
            NehariKind::ConstantPi2 => {
                self.scale * std::f64::consts::PI * std::f64::consts::PI / 4.0 * sech2 * sech2
            }
            NehariKind::Pokornyi => self.scale * 2.0 * sech2,
            NehariKind::Custom => {
                let tt = t.abs().min(CUSTOM_TAIL_T);
                let x = tt.tanh();
                let d = 1.0 - x * x;
                self.scale * d * d * (self.eval)(x)
            }
        }
    }

    /// Verify the claimed flags on a sampled grid over the cut domain.
    pub fn verify_flags(&self, eps: f64, n: usize) -> FlagReport {
        let xs = linspace(0.0, 1.0 - eps, n.max(16));
        let mut report = FlagReport {
            even_ok: true,
            positive_ok: true,
            decay_ok: true,
            monotone_ok: true,
            witness: None,
        };
        let mut prev_decay = f64::INFINITY;
        let mut prev_p = f64::NEG_INFINITY;
        for &x in &xs {
            let px = self.eval(x);
            let tol = 1e-12 * px.abs().max(1.0);
            if self.flags.positive && !(px.is_finite() && px > 0.0) {
                report.positive_ok = false;
                report.witness.get_or_insert((x, px));
            }
            if self.flags.even && (self.eval(-x) - px).abs() > tol {
                report.even_ok = false;
                report.witness.get_or_insert((x, self.eval(-x) - px));
            }
            let d = (1.0 - x * x).powi(2) * px;
            if self.flags.decay_nonincreasing && d > prev_decay + tol {
                report.decay_ok = false;
                report.witness.get_or_insert((x, d - prev_decay));
            }
            prev_decay = d.min(prev_decay);
            if self.flags.monotone_nondecreasing && px < prev_p - tol {
                report.monotone_ok = false;
                report.witness.get_or_insert((x, prev_p - px));
            }
            prev_p = px.max(prev_p);
        }
        report
    }

    /// Error out unless the named flag is claimed and survives grid checks.
    pub fn require_monotone(&self, eps: f64) -> Result<()> {
        let rep = self.verify_flags(eps, 512);
        if !self.flags.monotone_nondecreasing || !rep.monotone_ok {
            return Err(Error::HypothesisFailed {
                condition: "p nondecreasing on [0,1)",
                site: format!("p = {}", self.label),
                lhs: 0.0,
                bound: 0.0,
            });
        }
        Ok(())
    }

    /// Error out unless p carries the full Nehari structure: even, positive,
    /// and (1-x^2)^2 p(x) nonincreasing, all claimed and grid-verified. The
    /// lift theorems rest on this structure (disconjugacy is checked
    /// separately through the profile construction).
    pub fn require_nehari(&self, eps: f64) -> Result<()> {
        let rep = self.verify_flags(eps, 512);
        let claimed = self.flags.even && self.flags.positive && self.flags.decay_nonincreasing;
        if !claimed || !rep.even_ok || !rep.positive_ok || !rep.decay_ok {
            return Err(Error::HypothesisFailed {
                condition: "p is a Nehari weight (even, positive, decaying product)",
                site: format!("p = {}", self.label),
                lhs: 0.0,
                bound: 0.0,
            });
        }
        Ok(())
    }
}

/// Custom weights are evaluated in the t variable only up to this point;
/// beyond it 1 - tanh(t)^2 loses too many bits against the closed forms.
const CUSTOM_TAIL_T: f64 = 12.0;

/// Outcome of flag verification on a grid.
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct FlagReport {
    pub even_ok: bool,
    pub positive_ok: bool,
    pub decay_ok: bool,
    pub monotone_ok: bool,
    pub witness: Option<(f64, f64)>,
}

impl FlagReport {
    pub fn all_ok(&self) -> bool {
        self.even_ok && self.positive_ok && self.decay_ok && self.monotone_ok
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum ProfileKind {
    FProfile,
    GProfile,
}

/// Grid-backed extremal profile: the base solution u of u'' +/- p u = 0 and
/// the induced F (or G) with its derivative.
#[derive(Debug, Clone)]
pub struct ExtremalProfile {
    base: OdeProfile,
    /// F (or G) at the grid nodes of `base`.
    f_nodes: Vec<f64>,
    kind: ProfileKind,
    p: NehariFunction,
    eps: f64,
}

impl ExtremalProfile {
    pub fn kind(&self) -> ProfileKind {
        self.kind
    }

    pub fn p(&self) -> &NehariFunction {
        &self.p
    }

    pub fn eps(&self) -> f64 {
        self.eps
    }

    pub fn base(&self) -> &OdeProfile {
        &self.base
    }

    pub fn x_min(&self) -> f64 {
        self.base.x_min()
    }

    pub fn x_max(&self) -> f64 {
        self.base.x_max()
    }

    /// F(x) by cumulative adaptive quadrature of the interpolated 1/u^2.
    pub fn eval_f(&self, x: f64) -> Result<f64> {
        let grid = self.base.grid();
        let i = match grid.binary_search_by(|g| g.partial_cmp(&x).unwrap()) {
            Ok(i) => return Ok(self.f_nodes[i]),
            Err(0) => {
                return Err(Error::DomainError {
                    x,
                    domain: "profile grid range",
                })
            }
            Err(i) if i >= grid.len() => {
                return Err(Error::DomainError {
                    x,
                    domain: "profile grid range",
                })
            }
            Err(i) => i - 1,
        };
        let integrand = |t: f64| {
            let (u, _) = self.base.eval(t).expect("t inside node interval");
            1.0 / (u * u)
        };
        Ok(self.f_nodes[i] + segment_quadrature(&integrand, grid[i], x)?)
    }

    /// F'(x) = 1/u(x)^2.
    pub fn eval_df(&self, x: f64) -> Result<f64> {
        let (u, _) = self.base.eval(x)?;
        Ok(1.0 / (u * u))
    }

    /// F''(x) = -2 u'/u^3.
    pub fn eval_ddf(&self, x: f64) -> Result<f64> {
        let (u, du) = self.base.eval(x)?;
        Ok(-2.0 * du / (u * u * u))
    }

    /// F'''(x) = -2 u''/u^3 + 6 u'^2/u^4 with u'' from the equation.
    pub fn eval_dddf(&self, x: f64) -> Result<f64> {
        let (u, du) = self.base.eval(x)?;
        let ddu = self.base.sign().factor() * self.p.eval(x) * u;
        Ok(-2.0 * ddu / (u * u * u) + 6.0 * du * du / (u * u * u * u))
    }

    /// CSV export: x, u, du, F, dF at the grid nodes.
    pub fn write_csv(&self, mut w: impl Write) -> Result<()> {
        writeln!(w, "x,u,du,F,dF")?;
        for (i, &x) in self.base.grid().iter().enumerate() {
            let u = self.base.u()[i];
            writeln!(
                w,
                "{:.17e},{:.17e},{:.17e},{:.17e},{:.17e}",
                x,
                u,
                self.base.du()[i],
                self.f_nodes[i],
                1.0 / (u * u)
            )?;
        }
        Ok(())
    }
}

/// Per-interval tolerance of the cumulative profile quadrature. The node
/// derivatives of 1/u^2 can be enormous near the cut even when the ODE steps
/// stay wide (constant weights), so each interval gets adaptive treatment
/// with a relative floor (the absolute target is unreachable where the
/// integrand itself is ~1e5).
const F_ACCUM_TOL: f64 = 1e-13;

fn segment_quadrature(integrand: &dyn Fn(f64) -> f64, a: f64, b: f64) -> Result<f64> {
    let rough = crate::numerics::gauss7(integrand, a, b).abs();
    quadrature(integrand, a, b, F_ACCUM_TOL.max(1e-14 * rough))
}

/// Accumulate the cumulative integral of 1/u^2 over the profile grid, exact
/// zero at x = 0.
fn accumulate_profile(
    base: OdeProfile,
    kind: ProfileKind,
    p: NehariFunction,
    eps: f64,
) -> Result<ExtremalProfile> {
    let grid = base.grid().to_vec();
    let zero_idx = grid
        .iter()
        .position(|&x| x == 0.0)
        .expect("bidirectional integration always keeps the node x = 0");
    let integrand = |t: f64| {
        let (u, _) = base.eval(t).expect("t inside grid");
        1.0 / (u * u)
    };
    let mut f_nodes = vec![0.0; grid.len()];
    for i in zero_idx..grid.len() - 1 {
        f_nodes[i + 1] = f_nodes[i] + segment_quadrature(&integrand, grid[i], grid[i + 1])?;
    }
    for i in (0..zero_idx).rev() {
        f_nodes[i] = f_nodes[i + 1] - segment_quadrature(&integrand, grid[i], grid[i + 1])?;
    }
    Ok(ExtremalProfile {
        base,
        f_nodes,
        kind,
        p,
        eps,
    })
}

/// Build the F profile: solve u'' + p u = 0 with u(0) = 1, u'(0) = 0, verify
/// u never vanishes on the cut domain, and integrate 1/u^2.
pub fn extremal_f(p: &NehariFunction, eps: f64, tol: f64) -> Result<ExtremalProfile> {
    let eval = |x: f64| p.eval(x);
    let base = integrate_linear_ode(&eval, OdeSign::Plus, 1.0, 0.0, eps, tol)?;
    if base.min_u() <= 0.0 {
        let (a, b) = base
            .first_sign_change()
            .expect("min <= 0 implies a sign change from u(0)=1");
        return Err(Error::DoubleZeroDetected { x: 0.5 * (a + b) });
    }
    accumulate_profile(base, ProfileKind::FProfile, p.clone(), eps)
}

/// Build the companion G profile from u'' - p u = 0. The base solution is
/// convex with u >= 1; anything below 1 - 1e-9 flags an integrator failure.
pub fn extremal_g(p: &NehariFunction, eps: f64, tol: f64) -> Result<ExtremalProfile> {
    let eval = |x: f64| p.eval(x);
    let base = integrate_linear_ode(&eval, OdeSign::Minus, 1.0, 0.0, eps, tol)?;
    for (&x, &u) in base.grid().iter().zip(base.u()) {
        if u < 1.0 - 1e-9 {
            return Err(Error::ConvexityViolated { x, u });
        }
    }
    accumulate_profile(base, ProfileKind::GProfile, p.clone(), eps)
}

/// Closed form of F for the three builtin weights (None for custom).
pub fn closed_form_f(kind: NehariKind, x: f64) -> Option<f64> {
    match kind {
        NehariKind::ClassicalNehari => Some(0.5 * ((1.0 + x) / (1.0 - x)).ln()),
        NehariKind::ConstantPi2 => {
            Some(2.0 / std::f64::consts::PI * (std::f64::consts::PI * x / 2.0).tan())
        }
        NehariKind::Pokornyi => Some(0.25 * ((1.0 + x) / (1.0 - x)).ln() + 0.5 * x / (1.0 - x * x)),
        NehariKind::Custom => None,
    }
}

/// G for the classical weight:
/// G(x) = 2^{-1/2} [(1+x)^{sqrt2} - (1-x)^{sqrt2}] / [(1+x)^{sqrt2} + (1-x)^{sqrt2}].
pub fn closed_form_g_classical(x: f64) -> Result<f64> {
    if !(-1.0..1.0).contains(&x) {
        return Err(Error::DomainError {
            x,
            domain: "(-1, 1)",
        });
    }
    let s = std::f64::consts::SQRT_2;
    let a = (1.0 + x).powf(s);
    let b = (1.0 - x).powf(s);
    Ok((a - b) / (a + b) / s)
}

/// The convex base solution of u'' - p u = 0 for the classical weight:
/// u(x) = (1/2) sqrt(1-x^2) [ ((1+x)/(1-x))^{sqrt2/2} + ((1-x)/(1+x))^{sqrt2/2} ].
pub fn classical_convex_solution(x: f64) -> Result<f64> {
    if !(-1.0..1.0).contains(&x) {
        return Err(Error::DomainError {
            x,
            domain: "(-1, 1)",
        });
    }
    let half_s = std::f64::consts::SQRT_2 / 2.0;
    let r = (1.0 + x) / (1.0 - x);
    Ok(0.5 * (1.0 - x * x).sqrt() * (r.powf(half_s) + r.powf(-half_s)))
}

/// Numerical disconjugacy evidence on the cut domain.
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct DisconjugacyReport {
    pub ok: bool,
    /// Two abscissae where a solution vanishes, when found.
    pub witness: Option<(f64, f64)>,
}

/// Check (numerically, on the cut domain) that u'' + p u = 0 is disconjugate:
/// the even solution u0 must stay positive, and the solution vanishing at the
/// left cut must not vanish again.
pub fn disconjugacy_check(p: &NehariFunction, eps: f64) -> Result<DisconjugacyReport> {
    let eval = |x: f64| p.eval(x);
    let u0 = integrate_linear_ode(&eval, OdeSign::Plus, 1.0, 0.0, eps, DEFAULT_TOL)?;
    if u0.min_u() <= 0.0 {
        let (a, b) = u0.first_sign_change().expect("sign change exists");
        let zero = 0.5 * (a + b);
        // u0 is even for even p, so zeros pair up symmetrically.
        return Ok(DisconjugacyReport {
            ok: false,
            witness: Some((-zero.abs(), zero.abs())),
        });
    }
    let left = -1.0 + eps;
    let v =
        integrate_linear_ode_from(&eval, OdeSign::Plus, left, 0.0, 1.0, 1.0 - eps, DEFAULT_TOL)?;
    // Skip the seeded zero at the left endpoint itself.
    let second = v
        .grid()
        .windows(2)
        .zip(v.u().windows(2))
        .skip(1)
        .find(|(_, uw)| uw[0] > 0.0 && uw[1] <= 0.0)
        .map(|(gw, _)| 0.5 * (gw[0] + gw[1]));
    if let Some(z) = second {
        return Ok(DisconjugacyReport {
            ok: false,
            witness: Some((left, z)),
        });
    }
    Ok(DisconjugacyReport {
        ok: true,
        witness: None,
    })
}

/// Zero-free test for c * p in the boundary-resolving variable t = arctanh x.
///
/// With u(x) = y(t)/cosh t the scaled equation becomes y'' + q y = 0,
/// q(t) = c (1-x^2)^2 p(x) - 1, and u0's zeros are exactly y's zeros on
/// [0, infinity). Near the extremal constant the relevant solution decays,
/// which makes forward integration track an unstable separatrix; backward
/// integration of the principal solution is stable instead. So: seed the
/// decaying direction at t_max, march back to 0 (renormalizing to dodge
/// overflow), and declare a zero-free family iff w never changes sign and
/// the logarithmic slope w'(0)/w(0) lands at or below the slope 0 of u0.
/// Riccati comparison then pins u0 between 0 and the principal solution.
fn scan_passes(p: &NehariFunction, c: f64, t_max: f64) -> Result<bool> {
    let q_at = |t: f64| -> Result<f64> {
        let q = c * p.decay_product_t(t) - 1.0;
        if !q.is_finite() {
            return Err(Error::NonFiniteCoefficient { x: t.tanh() });
        }
        Ok(q)
    };
    let rhs = |t: f64, y: &[f64; 2]| -> Result<[f64; 2]> { Ok([y[1], -q_at(t)? * y[0]]) };

    // Principal direction at the far end: w'/w = -sqrt(-q) when q < 0.
    let m_end = (-q_at(t_max)?).max(0.0).sqrt();
    let mut t = t_max;
    let mut y = [1.0, -m_end];
    // March backward in windows, renormalizing between them; the backward
    // solution grows like exp(m t) and would overflow for strong weights.
    let window = 5.0;
    while t > 0.0 {
        let t_next = (t - window).max(0.0);
        let nodes = rk_adaptive(&rhs, t, y, t_next, 1e-10, 0.25)?;
        for pair in nodes.windows(2) {
            if pair[0].1[0].signum() != pair[1].1[0].signum() {
                return Ok(false); // principal solution oscillates
            }
        }
        let last = nodes.last().unwrap();
        t = last.0;
        y = last.1;
        let mag = y[0].abs().max(y[1].abs());
        if mag > 1e100 {
            y = [y[0] / mag, y[1] / mag];
        }
        if y[0] == 0.0 {
            return Ok(false);
        }
    }
    let r0 = y[1] / y[0];
    Ok(r0 <= SCAN_SLOPE_SLACK)
}

/// Tolerance on the principal slope at 0; widens the pass verdict just enough
/// to keep exactly-extremal weights (where the slope is 0) on the pass side.
const SCAN_SLOPE_SLACK: f64 = 1e-6;

/// Largest c in [1, c_max] for which c * p still looks disconjugate, located
/// by bisection. A value close to 1 supports (does not certify) extremality.
pub fn extremal_scan(p: &NehariFunction, c_max: f64, steps: usize) -> Result<f64> {
    if c_max <= 1.0 {
        return Err(Error::InvalidInput(format!(
            "c_max = {c_max} must exceed 1"
        )));
    }
    // Custom weights without the decay flag cannot be frozen past the tail,
    // so the reliable window is shorter and the resolution in c is coarser.
    let t_max = if p.kind() == NehariKind::Custom && !p.flags().decay_nonincreasing {
        CUSTOM_TAIL_T
    } else {
        60.0
    };
    if !scan_passes(p, 1.0, t_max)? {
        return Err(Error::ScanBaseFails);
    }
    let mut lo = 1.0;
    let mut hi = c_max;
    if scan_passes(p, c_max, t_max)? {
        return Ok(c_max);
    }
    for _ in 0..steps {
        let mid = 0.5 * (lo + hi);
        if scan_passes(p, mid, t_max)? {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(lo)
}

/// Report of the growth check on (1-x^2) F'(x).
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct GrowthReport {
    pub ok: bool,
    pub min_value: f64,
    /// First site where the quantity dips below 1 or decreases.
    pub first_violation: Option<(f64, f64)>,
}

/// For extremal p the quantity (1-x^2) F'(x) is nondecreasing on [0, 1) and
/// therefore at least 1. Verify both properties on the sampled profile.
pub fn check_f_growth(profile: &ExtremalProfile) -> Result<GrowthReport> {
    if profile.kind() != ProfileKind::FProfile {
        return Err(Error::InvalidInput(
            "growth check applies to F profiles".into(),
        ));
    }
    let xs: Vec<f64> = profile
        .base()
        .grid()
        .iter()
        .copied()
        .filter(|&x| (0.0..profile.x_max()).contains(&x))
        .collect();
    let mut report = GrowthReport {
        ok: true,
        min_value: f64::INFINITY,
        first_violation: None,
    };
    let mut prev = f64::NEG_INFINITY;
    for &x in &xs {
        let g = (1.0 - x * x) * profile.eval_df(x)?;
        report.min_value = report.min_value.min(g);
        if g < 1.0 - 1e-9 || g < prev - 1e-9 * prev.abs().max(1.0) {
            report.ok = false;
            report.first_violation.get_or_insert((x, g));
        }
        prev = prev.max(g);
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn builtin_values() {
        let p = NehariFunction::classical();
        assert_eq!(p.eval(0.0), 1.0);
        assert!((p.eval(0.5) - 16.0 / 9.0).abs() < 1e-15);
        let p = NehariFunction::constant_pi2();
        assert!((p.eval(0.73) - 2.4674011002723395).abs() < 1e-12);
        let p = NehariFunction::pokornyi();
        assert_eq!(p.eval(0.0), 2.0);
        assert!(NehariFunction::builtin("no_such_p").is_err());
    }

    #[test]
    fn builtin_flags_all_verify() {
        for p in [
            NehariFunction::classical(),
            NehariFunction::constant_pi2(),
            NehariFunction::pokornyi(),
        ] {
            let rep = p.verify_flags(1e-3, 512);
            assert!(rep.all_ok(), "{}: {rep:?}", p.label());
        }
    }

    #[test]
    fn f_profile_matches_closed_forms_at_half() {
        for (p, expect) in [
            (NehariFunction::classical(), 0.5 * 3.0_f64.ln()),
            (NehariFunction::constant_pi2(), 2.0 / std::f64::consts::PI),
            (
                NehariFunction::pokornyi(),
                0.25 * 3.0_f64.ln() + 0.5 * 0.5 / 0.75,
            ),
        ] {
            let prof = extremal_f(&p, 1e-3, 1e-11).unwrap();
            let f = prof.eval_f(0.5).unwrap();
            assert!((f - expect).abs() < 1e-8, "{}: {f} vs {expect}", p.label());
            assert!(prof.eval_f(0.0).unwrap().abs() < 1e-14);
            assert!((prof.eval_df(0.0).unwrap() - 1.0).abs() < 1e-10);
        }
    }

    #[test]
    fn f_profile_is_odd() {
        for p in [
            NehariFunction::classical(),
            NehariFunction::constant_pi2(),
            NehariFunction::pokornyi(),
        ] {
            let prof = extremal_f(&p, 1e-3, 1e-10).unwrap();
            for &x in &[0.1, 0.43, 0.77, 0.95] {
                let s = prof.eval_f(x).unwrap() + prof.eval_f(-x).unwrap();
                assert!(
                    s.abs() < 1e-9,
                    "{}: anti-symmetry defect {s:.2e} at {x}",
                    p.label()
                );
            }
        }
    }

    #[test]
    fn g_profile_classical_matches_eq11() {
        let prof = extremal_g(&NehariFunction::classical(), 1e-3, 1e-11).unwrap();
        let mut x = -0.99;
        while x <= 0.99 {
            let g = prof.eval_f(x).unwrap();
            let closed = closed_form_g_classical(x).unwrap();
            assert!((g - closed).abs() < 1e-7, "x={x}: {g} vs {closed}");
            x += 0.013;
        }
    }

    #[test]
    fn g_profile_degenerate_zero_weight() {
        let p = NehariFunction::custom(
            "zero",
            NehariFlags {
                positive: false,
                ..NehariFlags::ALL
            },
            |_| 0.0,
        )
        .unwrap();
        let prof = extremal_g(&p, 1e-3, 1e-10).unwrap();
        for &x in &[-0.7, 0.2, 0.5] {
            assert!((prof.eval_f(x).unwrap() - x).abs() < 1e-10);
        }
    }

    #[test]
    fn g_approaches_inverse_sqrt2() {
        let prof = extremal_g(&NehariFunction::classical(), 1e-4, 1e-10).unwrap();
        let g_edge = prof.eval_f(1.0 - 1e-4).unwrap();
        assert!(
            (g_edge - std::f64::consts::FRAC_1_SQRT_2).abs() < 2e-3,
            "{g_edge}"
        );
    }

    #[test]
    fn closed_form_g_endpoints_and_quadrature_oracle() {
        assert_eq!(closed_form_g_classical(0.0).unwrap(), 0.0);
        let near_one = closed_form_g_classical(1.0 - 1e-12).unwrap();
        assert!((near_one - std::f64::consts::FRAC_1_SQRT_2).abs() < 1e-6);
        assert!(closed_form_g_classical(1.0).is_err());
        // Independent route: quadrature of 1/u1^2 with the closed-form u1.
        let via_quad = crate::numerics::quadrature(
            &|t| {
                let u = classical_convex_solution(t).unwrap();
                1.0 / (u * u)
            },
            0.0,
            0.5,
            1e-13,
        )
        .unwrap();
        assert!((via_quad - closed_form_g_classical(0.5).unwrap()).abs() < 1e-9);
    }

    #[test]
    fn disconjugacy_verdicts() {
        let ok = disconjugacy_check(&NehariFunction::classical(), 1e-3).unwrap();
        assert!(ok.ok);

        let pi_sq = NehariFunction::custom("pi^2", NehariFlags::ALL, |_| {
            std::f64::consts::PI * std::f64::consts::PI
        })
        .unwrap();
        let bad = disconjugacy_check(&pi_sq, 1e-3).unwrap();
        assert!(!bad.ok);
        let (a, b) = bad.witness.unwrap();
        assert!(
            (a + 0.5).abs() < 5e-2 && (b - 0.5).abs() < 5e-2,
            "witness ({a}, {b})"
        );

        let zero = NehariFunction::custom(
            "zero",
            NehariFlags {
                positive: false,
                ..NehariFlags::ALL
            },
            |_| 0.0,
        )
        .unwrap();
        assert!(disconjugacy_check(&zero, 1e-3).unwrap().ok);
    }

    #[test]
    fn double_zero_weight_rejected_by_f_builder() {
        let pi_sq = NehariFunction::custom("pi^2", NehariFlags::ALL, |_| {
            std::f64::consts::PI * std::f64::consts::PI
        })
        .unwrap();
        assert!(matches!(
            extremal_f(&pi_sq, 1e-3, 1e-10),
            Err(Error::DoubleZeroDetected { .. })
        ));
    }

    #[test]
    fn scan_finds_extremal_builtins() {
        let c = extremal_scan(&NehariFunction::classical(), 4.0, 24).unwrap();
        assert!((1.0..=1.001).contains(&c), "classical c* = {c}");
        let c = extremal_scan(&NehariFunction::constant_pi2(), 4.0, 24).unwrap();
        assert!((1.0..=1.001).contains(&c), "pi2 c* = {c}");
        let c = extremal_scan(&NehariFunction::pokornyi(), 4.0, 24).unwrap();
        assert!((1.0..=1.001).contains(&c), "pokornyi c* = {c}");
    }

    #[test]
    fn scan_resolves_half_constant() {
        let half = NehariFunction::custom("pi2_over_2", NehariFlags::ALL, |_| {
            std::f64::consts::PI * std::f64::consts::PI / 8.0
        })
        .unwrap();
        let c = extremal_scan(&half, 4.0, 24).unwrap();
        assert!((c - 2.0).abs() < 5e-3, "c* = {c}");
    }

    #[test]
    fn downscaled_weight_stays_disconjugate() {
        for c in [0.9, 0.5, 0.1] {
            let p = NehariFunction::classical().scaled(c);
            assert!(disconjugacy_check(&p, 1e-3).unwrap().ok, "c = {c}");
        }
    }

    #[test]
    fn growth_check_builtins() {
        let prof = extremal_f(&NehariFunction::classical(), 1e-3, 1e-12).unwrap();
        let rep = check_f_growth(&prof).unwrap();
        assert!(rep.ok, "{rep:?}");
        // (1-x^2) F' is identically 1 for the classical weight.
        for &x in &[0.0, 0.31, 0.83] {
            let g = (1.0 - x * x) * prof.eval_df(x).unwrap();
            assert!((g - 1.0).abs() < 1e-8, "x={x}: {g}");
        }
        for p in [NehariFunction::constant_pi2(), NehariFunction::pokornyi()] {
            let prof = extremal_f(&p, 1e-3, 1e-12).unwrap();
            let rep = check_f_growth(&prof).unwrap();
            assert!(rep.ok, "{}: {rep:?}", p.label());
            let at0 = prof.eval_df(0.0).unwrap();
            assert!((at0 - 1.0).abs() < 1e-9);
        }
    }

    #[test]
    fn independent_solution_residual() {
        // u1 = u0 F solves u'' + p u = 0. u1' = u'F + 1/u is analytic in the
        // profile data, so only one differentiation is numerical.
        let p = NehariFunction::classical();
        let prof = extremal_f(&p, 1e-3, 1e-10).unwrap();
        let w = |x: f64| {
            let (u, _) = prof.base().eval(x).unwrap();
            u * prof.eval_f(x).unwrap()
        };
        let dw = |x: f64| {
            let (u, du) = prof.base().eval(x).unwrap();
            du * prof.eval_f(x).unwrap() + 1.0 / u
        };
        let h = 5e-3;
        let mut worst: f64 = 0.0;
        for &x in &[-0.8, -0.4, 0.0, 0.3, 0.6, 0.8] {
            let ddw = (-dw(x + 2.0 * h) + 8.0 * dw(x + h) - 8.0 * dw(x - h) + dw(x - 2.0 * h))
                / (12.0 * h);
            worst = worst.max((ddw + p.eval(x) * w(x)).abs());
        }
        assert!(worst <= 1e-5, "residual {worst:.2e}");
    }

    #[test]
    fn schwarzian_of_f_from_dff_is_twice_p() {
        // SF = (log F')'' - (1/2)((log F')')^2 via fourth-order differences
        // of dF (second-order stencils drown in profile noise over h^2).
        for p in [
            NehariFunction::classical(),
            NehariFunction::constant_pi2(),
            NehariFunction::pokornyi(),
        ] {
            let prof = extremal_f(&p, 1e-3, 1e-12).unwrap();
            let w = |x: f64| prof.eval_df(x).unwrap().ln();
            let h = 1e-3;
            let mut worst: f64 = 0.0;
            let mut x = -0.85;
            while x <= 0.85 {
                let w1 = (-w(x + 2.0 * h) + 8.0 * w(x + h) - 8.0 * w(x - h) + w(x - 2.0 * h))
                    / (12.0 * h);
                let w2 = (-w(x + 2.0 * h) + 16.0 * w(x + h) - 30.0 * w(x) + 16.0 * w(x - h)
                    - w(x - 2.0 * h))
                    / (12.0 * h * h);
                let sf = w2 - 0.5 * w1 * w1;
                worst = worst.max((sf - 2.0 * p.eval(x)).abs());
                x += 0.05;
            }
            assert!(worst <= 1e-4, "{}: max |SF - 2p| = {worst:.2e}", p.label());
        }
    }

    #[test]
    fn profile_csv_has_expected_columns() {
        let prof = extremal_f(&NehariFunction::constant_pi2(), 1e-2, 1e-9).unwrap();
        let mut buf = Vec::new();
        prof.write_csv(&mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        let mut lines = text.lines();
        assert_eq!(lines.next().unwrap(), "x,u,du,F,dF");
        assert!(lines.next().unwrap().split(',').count() == 5);
    }
}
