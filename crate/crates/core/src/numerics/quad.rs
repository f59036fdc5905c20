//! Adaptive quadrature: Gauss-Kronrod 7-15 with interval bisection.

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Kronrod-15 abscissae on [-1, 1] (positive half; symmetric).
const XK: [f64; 8] = [
    0.991455371120813,
    0.949107912342759,
    0.864864423359769,
    0.741531185599394,
    0.586087235467691,
    0.405845151377397,
    0.207784955007898,
    0.0,
];

/// Kronrod-15 weights matching `XK`.
const WK: [f64; 8] = [
    0.022935322010529,
    0.063092092629979,
    0.104790010322250,
    0.140653259715525,
    0.169004726639267,
    0.190350578064785,
    0.204432940075298,
    0.209482141084728,
];

/// Gauss-7 weights for the embedded rule (nodes XK[1], XK[3], XK[5], XK[7]).
const WG: [f64; 4] = [
    0.129484966168870,
    0.279705391489277,
    0.381830050505119,
    0.417959183673469,
];

fn gk15(f: &dyn Fn(f64) -> f64, a: f64, b: f64) -> Result<(f64, f64)> {
    let c = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let mut kron = 0.0;
    let mut gauss = 0.0;
    for (i, (&x, &wk)) in XK.iter().zip(&WK).enumerate() {
        let (lo, hi) = (c - half * x, c + half * x);
        let (flo, fhi) = (f(lo), f(hi));
        if !flo.is_finite() {
            return Err(Error::NonFiniteIntegrand { t: lo });
        }
        if !fhi.is_finite() {
            return Err(Error::NonFiniteIntegrand { t: hi });
        }
        let pair = if x == 0.0 { flo } else { flo + fhi };
        kron += wk * pair;
        if i % 2 == 1 || x == 0.0 {
            gauss += WG[i / 2] * pair;
        }
    }
    kron *= half;
    gauss *= half;
    Ok((kron, (kron - gauss).abs()))
}

/// Adaptive estimate of the integral of f over [a, b] with absolute error
/// at most `tol`; antisymmetric under swapping the endpoints.
pub fn quadrature(f: &dyn Fn(f64) -> f64, a: f64, b: f64, tol: f64) -> Result<f64> {
    if tol <= 0.0 {
        return Err(Error::InvalidInput(format!(
            "tolerance {tol} must be positive"
        )));
    }
    if a == b {
        return Ok(0.0);
    }
    if a > b {
        return Ok(-quadrature(f, b, a, tol)?);
    }
    const MAX_SUBDIVISIONS: usize = 4000;
    // Worklist of (a, b, estimate, error).
    let (est, err) = gk15(f, a, b)?;
    let mut intervals = vec![(a, b, est, err)];
    let mut total_err: f64 = err;
    for _ in 0..MAX_SUBDIVISIONS {
        if total_err <= tol {
            return Ok(intervals.iter().map(|iv| iv.2).sum());
        }
        // Split the interval with the largest error estimate.
        let (wi, _) = intervals
            .iter()
            .enumerate()
            .max_by(|x, y| x.1 .3.partial_cmp(&y.1 .3).unwrap())
            .unwrap();
        let (ia, ib, _, ierr) = intervals.swap_remove(wi);
        total_err -= ierr;
        let mid = 0.5 * (ia + ib);
        if mid <= ia || mid >= ib {
            // Interval at float resolution; keep its estimate and stop refining it.
            let (est, _) = gk15(f, ia, ib)?;
            intervals.push((ia, ib, est, 0.0));
            continue;
        }
        for (lo, hi) in [(ia, mid), (mid, ib)] {
            let (est, err) = gk15(f, lo, hi)?;
            intervals.push((lo, hi, est, err));
            total_err += err;
        }
    }
    let worst = intervals
        .iter()
        .max_by(|x, y| x.3.partial_cmp(&y.3).unwrap())
        .unwrap();
    Err(Error::MaxSubdivisions {
        max: MAX_SUBDIVISIONS,
        a: worst.0,
        b: worst.1,
        err: worst.3,
    })
}

/// Complex line integral of an analytic integrand along the straight segment
/// from z0 to z1, adaptive to absolute tolerance `tol`.
pub fn segment_integral(
    f: &dyn Fn(Complex64) -> Complex64,
    z0: Complex64,
    z1: Complex64,
    tol: f64,
) -> Result<Complex64> {
    let dz = z1 - z0;
    if dz.norm() == 0.0 {
        return Ok(Complex64::ZERO);
    }
    let re = quadrature(&|t| (f(z0 + t * dz) * dz).re, 0.0, 1.0, tol)?;
    let im = quadrature(&|t| (f(z0 + t * dz) * dz).im, 0.0, 1.0, tol)?;
    Ok(Complex64::new(re, im))
}

/// Fixed 7-point Gauss-Legendre rule over [a, b]; used for cumulative
/// integrals of smooth interpolants where adaptivity is unnecessary.
pub fn gauss7(f: &dyn Fn(f64) -> f64, a: f64, b: f64) -> f64 {
    // Positive Gauss-7 nodes and weights on [-1, 1].
    const XG: [f64; 4] = [0.949107912342759, 0.741531185599394, 0.405845151377397, 0.0];
    let c = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let mut acc = 0.0;
    for (&x, &w) in XG.iter().zip(&WG) {
        acc += w * if x == 0.0 {
            f(c)
        } else {
            f(c - half * x) + f(c + half * x)
        };
    }
    acc * half
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn log3_over_two() {
        // Integral of (1-t^2)^{-1} over [0, 1/2] = arctanh(1/2) = ln(3)/2
        let v = quadrature(&|t| 1.0 / (1.0 - t * t), 0.0, 0.5, 1e-12).unwrap();
        assert!((v - 0.5 * 3.0_f64.ln()).abs() < 1e-12, "{v}");
    }

    #[test]
    fn empty_interval_is_zero() {
        let v = quadrature(&|t| t.exp(), 0.0, 0.0, 1e-10).unwrap();
        assert_eq!(v, 0.0);
    }

    #[test]
    fn antisymmetric_under_swap() {
        let a = quadrature(&|t| (1.0 + t * t).sqrt(), 0.2, 1.3, 1e-11).unwrap();
        let b = quadrature(&|t| (1.0 + t * t).sqrt(), 1.3, 0.2, 1e-11).unwrap();
        assert!((a + b).abs() < 1e-14);
    }

    #[test]
    fn sec_squared_near_singular_end() {
        use std::f64::consts::PI;
        let eps = 1e-3;
        let v = quadrature(&|t| (PI * t / 2.0).cos().powi(-2), 0.0, 1.0 - eps, 1e-10).unwrap();
        let expect = (2.0 / PI) * (PI * (1.0 - eps) / 2.0).tan();
        assert!((v - expect).abs() < 1e-9, "{v} vs {expect}");
    }

    #[test]
    fn additivity_within_tolerance() {
        let f = |t: f64| (3.0 * t).sin() * t.exp();
        let tol = 1e-10;
        let ab = quadrature(&f, -0.5, 0.3, tol).unwrap();
        let bc = quadrature(&f, 0.3, 1.1, tol).unwrap();
        let ac = quadrature(&f, -0.5, 1.1, tol).unwrap();
        assert!((ab + bc - ac).abs() <= 2.0 * tol);
    }

    #[test]
    fn non_finite_integrand_reported() {
        let err = quadrature(&|t| 1.0 / t, -1.0, 1.0, 1e-10).unwrap_err();
        assert!(matches!(
            err,
            Error::NonFiniteIntegrand { .. } | Error::MaxSubdivisions { .. }
        ));
    }

    #[test]
    fn segment_integral_of_identity() {
        // Integral of z dz from 0 to w = w^2/2
        let w = Complex64::new(0.5, 0.5);
        let v = segment_integral(&|z| z, Complex64::ZERO, w, 1e-12).unwrap();
        assert!((v - w * w / 2.0).norm() < 1e-12);
    }

    #[test]
    fn gauss7_is_exact_for_low_degree() {
        // degree-9 polynomial integrated exactly up to rounding
        let v = gauss7(&|t| t.powi(9) + 3.0 * t.powi(4) - t, -0.3, 0.9);
        let f = |t: f64| t.powi(10) / 10.0 + 3.0 * t.powi(5) / 5.0 - t * t / 2.0;
        assert!((v - (f(0.9) - f(-0.3))).abs() < 1e-15);
    }
}
