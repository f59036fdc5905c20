//! Second-order linear ODE machinery: u'' +/- p(x) u = 0.
//!
//! The integrator is an adaptive Dormand-Prince 5(4) pair on the first-order
//! system (u, u'). Accepted steps become grid nodes; queries between nodes use
//! two-point quintic Hermite interpolation of (u, u', u''), which keeps the
//! interpolant error far below the step-control tolerance (u'' is free from
//! the differential equation itself).

use crate::error::{Error, Result};

/// Which equation the profile solves.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OdeSign {
    /// u'' + p u = 0
    Plus,
    /// u'' - p u = 0
    Minus,
}

impl OdeSign {
    /// u'' = factor * p * u
    pub fn factor(self) -> f64 {
        match self {
            OdeSign::Plus => -1.0,
            OdeSign::Minus => 1.0,
        }
    }
}

/// Sampled nontrivial solution (u, u') of u'' +/- p u = 0 on a strictly
/// increasing grid inside (-1, 1).
#[derive(Debug, Clone)]
pub struct OdeProfile {
    grid: Vec<f64>,
    u: Vec<f64>,
    du: Vec<f64>,
    ddu: Vec<f64>,
    sign: OdeSign,
}

impl OdeProfile {
    pub fn grid(&self) -> &[f64] {
        &self.grid
    }

    pub fn u(&self) -> &[f64] {
        &self.u
    }

    pub fn du(&self) -> &[f64] {
        &self.du
    }

    pub fn sign(&self) -> OdeSign {
        self.sign
    }

    pub fn x_min(&self) -> f64 {
        self.grid[0]
    }

    pub fn x_max(&self) -> f64 {
        *self.grid.last().unwrap()
    }

    /// Index of the grid interval [x_i, x_{i+1}] containing x.
    fn interval(&self, x: f64) -> Result<usize> {
        if !(self.x_min()..=self.x_max()).contains(&x) {
            return Err(Error::DomainError {
                x,
                domain: "profile grid range",
            });
        }
        let i = match self.grid.binary_search_by(|g| g.partial_cmp(&x).unwrap()) {
            Ok(i) => i.min(self.grid.len() - 2),
            Err(i) => i - 1,
        };
        Ok(i)
    }

    /// Interpolated (u, u') at x, C^2 inside each interval.
    pub fn eval(&self, x: f64) -> Result<(f64, f64)> {
        let i = self.interval(x)?;
        let (x0, x1) = (self.grid[i], self.grid[i + 1]);
        let h = x1 - x0;
        let t = (x - x0) / h;
        let (p, dp) = quintic_hermite(
            t,
            h,
            (self.u[i], self.du[i], self.ddu[i]),
            (self.u[i + 1], self.du[i + 1], self.ddu[i + 1]),
        );
        Ok((p, dp))
    }

    pub fn eval_u(&self, x: f64) -> Result<f64> {
        Ok(self.eval(x)?.0)
    }

    /// Minimum of u over the grid nodes.
    pub fn min_u(&self) -> f64 {
        self.u.iter().copied().fold(f64::INFINITY, f64::min)
    }

    /// First sign change of u along the grid, bracketing interval returned.
    pub fn first_sign_change(&self) -> Option<(f64, f64)> {
        self.u
            .windows(2)
            .zip(self.grid.windows(2))
            .find(|(uw, _)| uw[0].signum() != uw[1].signum() || uw[1] == 0.0)
            .map(|(_, gw)| (gw[0], gw[1]))
    }
}

/// Two-point quintic Hermite interpolation on [0,1] from (f, f', f'') at both
/// ends; returns (p(x), p'(x)) with derivatives taken in x, interval width h.
fn quintic_hermite(t: f64, h: f64, a: (f64, f64, f64), b: (f64, f64, f64)) -> (f64, f64) {
    let t2 = t * t;
    let t3 = t2 * t;
    let t4 = t3 * t;
    let t5 = t4 * t;
    // Basis: value/slope/curvature at t=0 and t=1.
    let h00 = 1.0 - 10.0 * t3 + 15.0 * t4 - 6.0 * t5;
    let h10 = t - 6.0 * t3 + 8.0 * t4 - 3.0 * t5;
    let h20 = 0.5 * t2 - 1.5 * t3 + 1.5 * t4 - 0.5 * t5;
    let h01 = 10.0 * t3 - 15.0 * t4 + 6.0 * t5;
    let h11 = -4.0 * t3 + 7.0 * t4 - 3.0 * t5;
    let h21 = 0.5 * t3 - t4 + 0.5 * t5;

    let d00 = -30.0 * t2 + 60.0 * t3 - 30.0 * t4;
    let d10 = 1.0 - 18.0 * t2 + 32.0 * t3 - 15.0 * t4;
    let d20 = t - 4.5 * t2 + 6.0 * t3 - 2.5 * t4;
    let d01 = 30.0 * t2 - 60.0 * t3 + 30.0 * t4;
    let d11 = -12.0 * t2 + 28.0 * t3 - 15.0 * t4;
    let d21 = 1.5 * t2 - 4.0 * t3 + 2.5 * t4;

    let (f0, g0, s0) = a;
    let (f1, g1, s1) = b;
    let p = f0 * h00 + h * g0 * h10 + h * h * s0 * h20 + f1 * h01 + h * g1 * h11 + h * h * s1 * h21;
    let dp =
        (f0 * d00 + h * g0 * d10 + h * h * s0 * d20 + f1 * d01 + h * g1 * d11 + h * h * s1 * d21)
            / h;
    (p, dp)
}

/// Dormand-Prince 5(4) coefficients.
mod dp5 {
    pub const A: [[f64; 6]; 6] = [
        [1.0 / 5.0, 0.0, 0.0, 0.0, 0.0, 0.0],
        [3.0 / 40.0, 9.0 / 40.0, 0.0, 0.0, 0.0, 0.0],
        [44.0 / 45.0, -56.0 / 15.0, 32.0 / 9.0, 0.0, 0.0, 0.0],
        [
            19372.0 / 6561.0,
            -25360.0 / 2187.0,
            64448.0 / 6561.0,
            -212.0 / 729.0,
            0.0,
            0.0,
        ],
        [
            9017.0 / 3168.0,
            -355.0 / 33.0,
            46732.0 / 5247.0,
            49.0 / 176.0,
            -5103.0 / 18656.0,
            0.0,
        ],
        [
            35.0 / 384.0,
            0.0,
            500.0 / 1113.0,
            125.0 / 192.0,
            -2187.0 / 6784.0,
            11.0 / 84.0,
        ],
    ];
    pub const C: [f64; 6] = [1.0 / 5.0, 3.0 / 10.0, 4.0 / 5.0, 8.0 / 9.0, 1.0, 1.0];
    /// b - b*: weights of the embedded error estimate.
    pub const E: [f64; 7] = [
        71.0 / 57600.0,
        0.0,
        -71.0 / 16695.0,
        71.0 / 1920.0,
        -17253.0 / 339200.0,
        22.0 / 525.0,
        -1.0 / 40.0,
    ];
}

/// Adaptive DP5(4) for a small first-order system. Returns every accepted
/// node (t, y). Integrates toward `t_end`, which may be below `t0`.
#[allow(clippy::type_complexity)]
pub fn rk_adaptive<const N: usize>(
    f: &dyn Fn(f64, &[f64; N]) -> Result<[f64; N]>,
    t0: f64,
    y0: [f64; N],
    t_end: f64,
    tol: f64,
    max_step: f64,
) -> Result<Vec<(f64, [f64; N])>> {
    let dir = if t_end >= t0 { 1.0 } else { -1.0 };
    let span = (t_end - t0).abs();
    let mut out = vec![(t0, y0)];
    if span == 0.0 {
        return Ok(out);
    }
    let mut t = t0;
    let mut y = y0;
    let mut k1 = f(t, &y)?;
    let mut h = (span / 100.0).min(max_step).max(1e-10);
    let min_step = 1e-14 * span.max(1.0);

    loop {
        let remaining = (t_end - t) * dir;
        if remaining <= 0.0 {
            break;
        }
        h = h.min(remaining).min(max_step);
        let hs = h * dir;

        let mut k = [[0.0; N]; 7];
        k[0] = k1;
        for stage in 0..6 {
            let mut ys = y;
            for (j, kj) in k.iter().enumerate().take(stage + 1) {
                let a = dp5::A[stage][j];
                if a != 0.0 {
                    for n in 0..N {
                        ys[n] += hs * a * kj[n];
                    }
                }
            }
            k[stage + 1] = f(t + dp5::C[stage] * hs, &ys)?;
        }
        // 5th-order solution = stage-7 argument (FSAL): k[6] was evaluated at it.
        let mut y5 = y;
        for (j, kj) in k.iter().enumerate().take(6) {
            let a = dp5::A[5][j];
            if a != 0.0 {
                for n in 0..N {
                    y5[n] += hs * a * kj[n];
                }
            }
        }
        let mut err_norm: f64 = 0.0;
        for n in 0..N {
            let mut e = 0.0;
            for (j, kj) in k.iter().enumerate() {
                e += dp5::E[j] * kj[n];
            }
            e *= hs;
            let scale = tol + tol * y[n].abs().max(y5[n].abs());
            err_norm += (e / scale) * (e / scale);
        }
        err_norm = (err_norm / N as f64).sqrt();

        if err_norm <= 1.0 {
            t += hs;
            y = y5;
            k1 = k[6]; // FSAL
            out.push((t, y));
        }
        let factor = if err_norm == 0.0 {
            5.0
        } else {
            (0.9 * err_norm.powf(-0.2)).clamp(0.2, 5.0)
        };
        h *= factor;
        if h < min_step {
            return Err(Error::StepUnderflow { x: t, step: h });
        }
    }
    Ok(out)
}

/// Integrate u'' +/- p u = 0 outward from x = 0 over [-1+eps, 1-eps] with
/// u(0) = init_value, u'(0) = init_slope.
pub fn integrate_linear_ode(
    p: &dyn Fn(f64) -> f64,
    sign: OdeSign,
    init_value: f64,
    init_slope: f64,
    eps: f64,
    tol: f64,
) -> Result<OdeProfile> {
    if !(0.0..1.0).contains(&eps) || eps == 0.0 {
        return Err(Error::InvalidInput(format!(
            "domain cut eps = {eps} must lie in (0,1)"
        )));
    }
    if tol <= 0.0 {
        return Err(Error::InvalidInput(format!(
            "tolerance {tol} must be positive"
        )));
    }
    if init_value == 0.0 && init_slope == 0.0 {
        return Err(Error::InvalidInput("trivial initial data (0, 0)".into()));
    }
    let factor = sign.factor();
    let rhs = move |x: f64, y: &[f64; 2]| -> Result<[f64; 2]> {
        let px = p(x);
        if !px.is_finite() {
            return Err(Error::NonFiniteCoefficient { x });
        }
        Ok([y[1], factor * px * y[0]])
    };

    let y0 = [init_value, init_slope];
    let fwd = rk_adaptive(&rhs, 0.0, y0, 1.0 - eps, tol, MAX_NODE_SPACING)?;
    let bwd = rk_adaptive(&rhs, 0.0, y0, -(1.0 - eps), tol, MAX_NODE_SPACING)?;

    let total = fwd.len() + bwd.len() - 1;
    let mut grid = Vec::with_capacity(total);
    let mut u = Vec::with_capacity(total);
    let mut du = Vec::with_capacity(total);
    for (x, y) in bwd.iter().skip(1).rev().chain(fwd.iter()) {
        grid.push(*x);
        u.push(y[0]);
        du.push(y[1]);
    }
    let ddu = grid
        .iter()
        .zip(&u)
        .map(|(&x, &ux)| factor * p(x) * ux)
        .collect();
    Ok(OdeProfile {
        grid,
        u,
        du,
        ddu,
        sign,
    })
}

/// One-directional variant starting from arbitrary (x0, u0, du0); used by the
/// disconjugacy check, which imposes data at the left cut.
pub fn integrate_linear_ode_from(
    p: &dyn Fn(f64) -> f64,
    sign: OdeSign,
    x0: f64,
    u0: f64,
    du0: f64,
    x_end: f64,
    tol: f64,
) -> Result<OdeProfile> {
    let factor = sign.factor();
    let rhs = move |x: f64, y: &[f64; 2]| -> Result<[f64; 2]> {
        let px = p(x);
        if !px.is_finite() {
            return Err(Error::NonFiniteCoefficient { x });
        }
        Ok([y[1], factor * px * y[0]])
    };
    let nodes = rk_adaptive(&rhs, x0, [u0, du0], x_end, tol, MAX_NODE_SPACING)?;
    let ascending: Vec<_> = if x_end >= x0 {
        nodes
    } else {
        nodes.into_iter().rev().collect()
    };
    let grid: Vec<f64> = ascending.iter().map(|(x, _)| *x).collect();
    let u: Vec<f64> = ascending.iter().map(|(_, y)| y[0]).collect();
    let du: Vec<f64> = ascending.iter().map(|(_, y)| y[1]).collect();
    let ddu = grid
        .iter()
        .zip(&u)
        .map(|(&x, &ux)| factor * p(x) * ux)
        .collect();
    Ok(OdeProfile {
        grid,
        u,
        du,
        ddu,
        sign,
    })
}

/// Cap on accepted step size so the Hermite interpolant stays well below the
/// integration tolerance between nodes.
const MAX_NODE_SPACING: f64 = 0.05;
