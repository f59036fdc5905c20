//! Finite-difference oracles.
//!
//! These estimators exist to cross-validate the analytic formulas elsewhere in
//! the crate; nothing on a production code path differentiates numerically.

use num_complex::Complex64;

use super::jet::Jet3Real;
use crate::error::{Error, Result};

/// Central-difference estimates of a scalar field and its Wirtinger
/// derivatives at z.
#[derive(Debug, Clone, Copy)]
pub struct WirtingerFd {
    pub s: Complex64,
    pub s_z: Complex64,
    pub s_zbar: Complex64,
    pub s_zz: Complex64,
}

fn stencil_check(z: Complex64, h: f64) -> Result<()> {
    if h <= 0.0 {
        return Err(Error::InvalidInput(format!(
            "step h = {h} must be positive"
        )));
    }
    if z.norm() + 2.0 * h >= 1.0 {
        return Err(Error::StencilOutsideDomain { z, radius: 2.0 * h });
    }
    Ok(())
}

/// O(h^2) Wirtinger derivatives of `field` at z from a 9-point stencil.
pub fn wirtinger_fd(
    field: &dyn Fn(Complex64) -> Complex64,
    z: Complex64,
    h: f64,
) -> Result<WirtingerFd> {
    stencil_check(z, h)?;
    let i = Complex64::i();
    let fpx = field(z + h);
    let fmx = field(z - h);
    let fpy = field(z + i * h);
    let fmy = field(z - i * h);
    let f0 = field(z);
    let fpp = field(z + h + i * h);
    let fpm = field(z + h - i * h);
    let fmp = field(z - h + i * h);
    let fmm = field(z - h - i * h);

    let dx = (fpx - fmx) / (2.0 * h);
    let dy = (fpy - fmy) / (2.0 * h);
    let dxx = (fpx - 2.0 * f0 + fmx) / (h * h);
    let dyy = (fpy - 2.0 * f0 + fmy) / (h * h);
    let dxy = (fpp - fpm - fmp + fmm) / (4.0 * h * h);

    let out = WirtingerFd {
        s: f0,
        s_z: 0.5 * (dx - i * dy),
        s_zbar: 0.5 * (dx + i * dy),
        s_zz: 0.25 * (dxx - dyy - 2.0 * i * dxy),
    };
    if !(out.s.is_finite() && out.s_z.is_finite() && out.s_zbar.is_finite() && out.s_zz.is_finite())
    {
        return Err(Error::NonFiniteIntegrand { t: z.norm() });
    }
    Ok(out)
}

/// Richardson-extrapolated Wirtinger derivatives: combines steps h and h/2
/// to cancel the leading O(h^2) truncation term.
pub fn wirtinger_fd_richardson(
    field: &dyn Fn(Complex64) -> Complex64,
    z: Complex64,
    h: f64,
) -> Result<WirtingerFd> {
    let coarse = wirtinger_fd(field, z, h)?;
    let fine = wirtinger_fd(field, z, h / 2.0)?;
    let mix = |c: Complex64, f: Complex64| (4.0 * f - c) / 3.0;
    Ok(WirtingerFd {
        s: fine.s,
        s_z: mix(coarse.s_z, fine.s_z),
        s_zbar: mix(coarse.s_zbar, fine.s_zbar),
        s_zz: mix(coarse.s_zz, fine.s_zz),
    })
}

/// O(h^2) five-point Laplacian of a real-valued field at z.
pub fn laplacian_fd(field: &dyn Fn(Complex64) -> f64, z: Complex64, h: f64) -> Result<f64> {
    stencil_check(z, h)?;
    let i = Complex64::i();
    let v = (field(z + h) + field(z - h) + field(z + i * h) + field(z - i * h) - 4.0 * field(z))
        / (h * h);
    if !v.is_finite() {
        return Err(Error::NonFiniteIntegrand { t: z.norm() });
    }
    Ok(v)
}

/// Fourth-order central-difference 3-jet of a curve from position samples
/// only. Cross-check oracle: exact jets are too noisy to reconstruct at
/// tight tolerances, so production code never calls this.
pub fn jet3_fd(f: &dyn Fn(f64) -> Vec<f64>, x: f64, h: f64) -> Result<Jet3Real> {
    if h <= 0.0 {
        return Err(Error::InvalidInput(format!(
            "step h = {h} must be positive"
        )));
    }
    let samples: Vec<Vec<f64>> = (-3..=3).map(|k| f(x + k as f64 * h)).collect();
    let n = samples[3].len();
    if samples.iter().any(|s| s.len() != n) {
        return Err(Error::InvalidInput(
            "curve dimension changed across the stencil".into(),
        ));
    }
    let at = |k: i32| &samples[(k + 3) as usize];
    let mut d1 = vec![0.0; n];
    let mut d2 = vec![0.0; n];
    let mut d3 = vec![0.0; n];
    for j in 0..n {
        d1[j] = (-at(2)[j] + 8.0 * at(1)[j] - 8.0 * at(-1)[j] + at(-2)[j]) / (12.0 * h);
        d2[j] = (-at(2)[j] + 16.0 * at(1)[j] - 30.0 * at(0)[j] + 16.0 * at(-1)[j] - at(-2)[j])
            / (12.0 * h * h);
        d3[j] = (-at(3)[j] + 8.0 * at(2)[j] - 13.0 * at(1)[j] + 13.0 * at(-1)[j] - 8.0 * at(-2)[j]
            + at(-3)[j])
            / (8.0 * h * h * h);
    }
    Jet3Real::new(at(0).clone(), d1, d2, d3)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn log_one_plus_mod_squared() {
        // sigma = log(1+|z|^2): sigma_z = zbar/(1+|z|^2)
        let f = |z: Complex64| Complex64::new((1.0 + z.norm_sqr()).ln(), 0.0);
        let z = Complex64::new(0.3, 0.0);
        let w = wirtinger_fd(&f, z, 1e-3).unwrap();
        let expect = z.conj() / (1.0 + z.norm_sqr());
        assert!(
            (w.s_z - expect).norm() < 1e-6,
            "{}",
            (w.s_z - expect).norm()
        );
    }

    #[test]
    fn constant_field_has_zero_derivatives() {
        let f = |_z: Complex64| Complex64::new(2.5, -1.0);
        let w = wirtinger_fd(&f, Complex64::new(0.1, 0.2), 1e-3).unwrap();
        assert!(w.s_z.norm() < 1e-10);
        assert!(w.s_zbar.norm() < 1e-10);
        assert!(w.s_zz.norm() < 1e-10);
    }

    #[test]
    fn real_part_field() {
        // sigma = Re z: s_z = 1/2, s_zbar = 1/2, s_zz = 0
        let f = |z: Complex64| Complex64::new(z.re, 0.0);
        let w = wirtinger_fd(&f, Complex64::new(-0.2, 0.4), 1e-4).unwrap();
        assert!((w.s_z - Complex64::new(0.5, 0.0)).norm() < 1e-8);
        assert!((w.s_zbar - Complex64::new(0.5, 0.0)).norm() < 1e-8);
        assert!(w.s_zz.norm() < 1e-8);
    }

    #[test]
    fn stencil_must_stay_inside_disk() {
        let f = |_z: Complex64| Complex64::ZERO;
        let err = wirtinger_fd(&f, Complex64::new(0.999, 0.0), 1e-2).unwrap_err();
        assert!(matches!(err, Error::StencilOutsideDomain { .. }));
    }

    #[test]
    fn halving_h_quarters_the_error() {
        // analytic field's modulus-log: sigma = log|1+z/2|, s_z = (1/2)/(2(1+z/2))
        let f = |z: Complex64| Complex64::new((1.0 + z / 2.0).norm().ln(), 0.0);
        let z = Complex64::new(0.2, 0.3);
        let exact = 0.25 / (1.0 + z / 2.0);
        let e1 = (wirtinger_fd(&f, z, 2e-3).unwrap().s_z - exact).norm();
        let e2 = (wirtinger_fd(&f, z, 1e-3).unwrap().s_z - exact).norm();
        assert!(e2 < e1 / 3.0, "e1={e1:.3e}, e2={e2:.3e}");
    }

    #[test]
    fn richardson_beats_plain_stencil() {
        let f = |z: Complex64| Complex64::new((1.0 + z.norm_sqr()).ln(), 0.0);
        let z = Complex64::new(0.25, -0.15);
        let exact = z.conj() / (1.0 + z.norm_sqr());
        let plain = (wirtinger_fd(&f, z, 1e-3).unwrap().s_z - exact).norm();
        let rich = (wirtinger_fd_richardson(&f, z, 1e-3).unwrap().s_z - exact).norm();
        assert!(rich < plain);
    }

    #[test]
    fn laplacian_of_log_one_plus_mod_squared() {
        // Laplacian of log(1+|z|^2) = 4/(1+|z|^2)^2
        let f = |z: Complex64| (1.0 + z.norm_sqr()).ln();
        let z = Complex64::new(0.3, -0.1);
        let lap = laplacian_fd(&f, z, 1e-3).unwrap();
        let expect = 4.0 / (1.0 + z.norm_sqr()).powi(2);
        assert!((lap - expect).abs() < 1e-5, "{}", (lap - expect).abs());
    }

    #[test]
    fn jet3_fd_on_polynomial_curve() {
        let f = |x: f64| vec![x * x * x, x * x];
        let jet = jet3_fd(&f, 0.4, 1e-2).unwrap();
        assert!((jet.d1[0] - 3.0 * 0.16).abs() < 1e-10);
        assert!((jet.d2[0] - 2.4).abs() < 1e-8);
        assert!((jet.d3[0] - 6.0).abs() < 1e-7);
        assert!(jet.d3[1].abs() < 1e-7);
    }
}
