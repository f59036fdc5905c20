//! Planar harmonic mappings f = h + conj(g) and their minimal-surface lifts.
//!
//! A map is supplied as analytic 3-jets for h and g together with a 2-jet for
//! the dilatation square root q (g' = q^2 h'). From these we evaluate the
//! conformal factor lambda = |h'| + |g'|, the sigma-derivatives, the harmonic
//! Schwarzian Sf = 2(sigma_zz - sigma_z^2), the Weierstrass-Enneper lift, and
//! the Gauss curvature of the lifted surface.
//!
//! sigma-derivatives are computed symbolically through the (h', q)
//! factorization lambda = |h'| (1 + |q|^2), which stays smooth at zeros of g'.
//! The direct (h', g') form needs limit bookkeeping exactly there; it is kept
//! as [`conformal_factor`] and pinned against the production route in tests.
//! Poles of q (zeros of h' with g' != 0) are out of scope and reported as
//! NonSmoothSigma.

use std::sync::Arc;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::nehari::{extremal_f, extremal_scan, ExtremalProfile, NehariFunction, NehariKind};
use crate::numerics::{polynomial_jet, segment_integral, Jet2Complex, Jet3Complex};
use crate::report::{DistortionReport, MarginSample, Site};
use crate::util::par_map;

/// Harmonic mapping as jet evaluators on the unit disk.
#[derive(Clone)]
pub struct HarmonicMap {
    h: Arc<dyn Fn(Complex64) -> Jet3Complex + Send + Sync>,
    g: Arc<dyn Fn(Complex64) -> Jet3Complex + Send + Sync>,
    q: Arc<dyn Fn(Complex64) -> Jet2Complex + Send + Sync>,
    label: String,
}

impl std::fmt::Debug for HarmonicMap {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("HarmonicMap")
            .field("label", &self.label)
            .finish()
    }
}

/// Lifted point with the local surface data attached.
#[derive(Debug, Clone, Copy)]
pub struct LiftPoint {
    pub u: f64,
    pub v: f64,
    pub w: f64,
    pub lambda: f64,
    pub k: f64,
    pub sf: Complex64,
}

impl LiftPoint {
    pub fn coords(&self) -> [f64; 3] {
        [self.u, self.v, self.w]
    }
}

/// Conformal factor and first sigma-derivative at a point.
#[derive(Debug, Clone, Copy)]
pub struct ConformalFactor {
    pub lambda: f64,
    pub sigma_z: Complex64,
}

impl HarmonicMap {
    /// Assemble from jet evaluators, validating the canonical decomposition
    /// (g(0) = 0) and the dilatation square root on a sample grid.
    pub fn from_parts(
        label: impl Into<String>,
        h: impl Fn(Complex64) -> Jet3Complex + Send + Sync + 'static,
        g: impl Fn(Complex64) -> Jet3Complex + Send + Sync + 'static,
        q: impl Fn(Complex64) -> Jet2Complex + Send + Sync + 'static,
    ) -> Result<Self> {
        let map = HarmonicMap {
            h: Arc::new(h),
            g: Arc::new(g),
            q: Arc::new(q),
            label: label.into(),
        };
        let g0 = map.g_jet(Complex64::ZERO).value;
        if g0.norm() > 1e-12 {
            return Err(Error::InvalidInput(format!(
                "canonical decomposition needs g(0) = 0, got {g0}"
            )));
        }
        for &r in &[0.0, 0.3, 0.62, 0.87] {
            for k in 0..8 {
                let theta = 2.0 * std::f64::consts::PI * k as f64 / 8.0 + 0.1;
                let z = Complex64::from_polar(r, theta);
                let (hj, gj, qj) = (map.h_jet(z), map.g_jet(z), map.q_jet(z));
                if !(hj.is_finite() && gj.is_finite() && qj.is_finite()) {
                    return Err(Error::InvalidInput(format!("non-finite jet at z = {z}")));
                }
                let lambda = hj.d1.norm() + gj.d1.norm();
                let defect = (qj.value * qj.value * hj.d1 - gj.d1).norm();
                if defect > 1e-9 * lambda * lambda {
                    return Err(Error::InvalidInput(format!(
                        "q^2 h' != g' at z = {z} (defect {defect:.3e})"
                    )));
                }
            }
        }
        Ok(map)
    }

    /// Analytic map: g = 0, q = 0.
    pub fn analytic(
        label: impl Into<String>,
        h: impl Fn(Complex64) -> Jet3Complex + Send + Sync + 'static,
    ) -> Self {
        HarmonicMap {
            h: Arc::new(h),
            g: Arc::new(|_| Jet3Complex::ZERO),
            q: Arc::new(|_| Jet2Complex::ZERO),
            label: label.into(),
        }
    }

    /// Polynomial map from ascending complex coefficients. A nonzero g needs
    /// its q coefficients: the lift exists only when the dilatation is a
    /// perfect square, and that cannot be inferred reliably from samples.
    pub fn polynomial(
        label: impl Into<String>,
        h_coeffs: Vec<Complex64>,
        g_coeffs: Vec<Complex64>,
        q_coeffs: Option<Vec<Complex64>>,
    ) -> Result<Self> {
        let g_is_zero = g_coeffs.iter().all(|c| c.norm() == 0.0);
        let q_coeffs = match (g_is_zero, q_coeffs) {
            (true, None) => vec![],
            (_, Some(q)) => q,
            (false, None) => {
                return Err(Error::InvalidInput(
                    "nonzero g requires q coefficients (dilatation must be a perfect square)"
                        .into(),
                ))
            }
        };
        let hc = h_coeffs.clone();
        let gc = g_coeffs.clone();
        let qc = q_coeffs.clone();
        HarmonicMap::from_parts(
            label,
            move |z| polynomial_jet(&hc, z),
            move |z| polynomial_jet(&gc, z),
            move |z| polynomial_jet(&qc, z).into(),
        )
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn h_jet(&self, z: Complex64) -> Jet3Complex {
        (self.h)(z)
    }

    pub fn g_jet(&self, z: Complex64) -> Jet3Complex {
        (self.g)(z)
    }

    pub fn q_jet(&self, z: Complex64) -> Jet2Complex {
        (self.q)(z)
    }

    /// f(z) = h(z) + conj(g(z)).
    pub fn f_value(&self, z: Complex64) -> Complex64 {
        self.h_jet(z).value + self.g_jet(z).value.conj()
    }

    /// lambda, sigma_z, sigma_zz through the (h', q) factorization.
    fn sigma_parts(&self, z: Complex64) -> Result<(f64, Complex64, Complex64)> {
        let h = self.h_jet(z);
        let q = self.q_jet(z);
        let h1 = h.d1;
        let q_mod2 = q.value.norm_sqr();
        let lambda = h1.norm() * (1.0 + q_mod2);
        if h1.norm() < 1e-14 {
            let g1 = self.g_jet(z).d1;
            if g1.norm() < 1e-14 {
                return Err(Error::ZeroConformalFactor { z });
            }
            // h' = 0 with g' != 0: q has a pole; sigma needs data we do not carry.
            return Err(Error::NonSmoothSigma { z });
        }
        let qbar = q.value.conj();
        let denom = 1.0 + q_mod2;
        let sigma_z = h.d2 / (2.0 * h1) + q.d1 * qbar / denom;
        let sigma_zz = h.d3 / (2.0 * h1) - h.d2 * h.d2 / (2.0 * h1 * h1) + q.d2 * qbar / denom
            - (q.d1 * qbar) * (q.d1 * qbar) / (denom * denom);
        Ok((lambda, sigma_z, sigma_zz))
    }

    /// Conformal factor lambda = |h'| + |g'|.
    pub fn lambda(&self, z: Complex64) -> Result<f64> {
        let lambda = self.h_jet(z).d1.norm() + self.g_jet(z).d1.norm();
        if lambda <= 0.0 {
            return Err(Error::ZeroConformalFactor { z });
        }
        Ok(lambda)
    }

    /// sigma_z with sigma = log lambda.
    pub fn sigma_z(&self, z: Complex64) -> Result<Complex64> {
        Ok(self.sigma_parts(z)?.1)
    }

    /// Harmonic Schwarzian Sf = 2 (sigma_zz - sigma_z^2).
    pub fn schwarzian(&self, z: Complex64) -> Result<Complex64> {
        let (_, sz, szz) = self.sigma_parts(z)?;
        Ok(2.0 * (szz - sz * sz))
    }

    /// Gauss curvature of the lift: K = -lambda^{-2} Delta(log lambda) with
    /// Delta log lambda = 4 |q'|^2 / (1 + |q|^2)^2.
    pub fn gauss_curvature(&self, z: Complex64) -> Result<f64> {
        let h1 = self.h_jet(z).d1;
        let q = self.q_jet(z);
        if h1.norm() < 1e-14 {
            return Err(Error::NonSmoothSigma { z });
        }
        let denom = h1.norm() * (1.0 + q.value.norm_sqr()).powi(2);
        let root = 2.0 * q.d1.norm() / denom;
        let k = -root * root;
        if k.is_nan() || k > 1e-9 {
            return Err(Error::PositiveCurvature { z, k });
        }
        Ok(k)
    }

    /// Criterion margin 2 p(|z|) - |Sf(z)| - lambda(z)^2 |K(z)|; the lift
    /// hypothesis holds at z iff this is nonnegative.
    pub fn criterion5_margin(&self, p: &NehariFunction, z: Complex64) -> Result<f64> {
        let (lambda, sz, szz) = self.sigma_parts(z)?;
        let sf = 2.0 * (szz - sz * sz);
        let k = self.gauss_curvature(z)?;
        Ok(2.0 * p.eval(z.norm()) - sf.norm() - lambda * lambda * k.abs())
    }
}

/// Classical Schwarzian (f''/f')' - (1/2)(f''/f')^2 from an analytic 3-jet.
pub fn classical_schwarzian(jet: &Jet3Complex) -> Result<Complex64> {
    if jet.d1.norm() < 1e-14 {
        return Err(Error::DegenerateTangent { x: f64::NAN });
    }
    let ratio = jet.d2 / jet.d1;
    Ok(jet.d3 / jet.d1 - 1.5 * ratio * ratio)
}

/// Spec-form conformal factor via |h'| and |g'| with limit-0 extension where
/// a derivative vanishes; evaluates to the same numbers as the production
/// (h', q) route wherever both are defined.
pub fn conformal_factor(f: &HarmonicMap, z: Complex64) -> Result<ConformalFactor> {
    let h = f.h_jet(z);
    let g = f.g_jet(z);
    let lambda = h.d1.norm() + g.d1.norm();
    if lambda <= 0.0 {
        return Err(Error::ZeroConformalFactor { z });
    }
    let term = |d1: Complex64, d2: Complex64| -> Result<Complex64> {
        if d1.norm() > 1e-14 * lambda {
            Ok(d2 * d1.conj() / (2.0 * d1.norm()))
        } else if d2.norm() <= 1e-7 * lambda {
            Ok(Complex64::ZERO)
        } else {
            Err(Error::NonSmoothSigma { z })
        }
    };
    let sigma_z = (term(h.d1, h.d2)? + term(g.d1, g.d2)?) / lambda;
    Ok(ConformalFactor { lambda, sigma_z })
}

/// Weierstrass-Enneper lift of f at z, integrating W along the given
/// polyline from 0 (the integrand h'q is analytic, so the path is free).
pub fn we_lift(f: &HarmonicMap, z: Complex64, path: &[Complex64]) -> Result<LiftPoint> {
    if path.is_empty() || path[0].norm() > 1e-15 {
        return Err(Error::InvalidInput("lift path must start at 0".into()));
    }
    let mut vertices: Vec<Complex64> = path.to_vec();
    if (vertices.last().unwrap() - z).norm() > 1e-15 {
        vertices.push(z);
    }
    if vertices.iter().any(|v| v.norm() >= 1.0) {
        return Err(Error::PathOutsideDisk);
    }
    let integrand = |zeta: Complex64| f.h_jet(zeta).d1 * f.q_jet(zeta).value;
    let mut p = Complex64::ZERO;
    for seg in vertices.windows(2) {
        p += segment_integral(&integrand, seg[0], seg[1], 1e-11)?;
    }
    let fv = f.f_value(z);
    let (lambda, sz, szz) = f.sigma_parts(z)?;
    Ok(LiftPoint {
        u: fv.re,
        v: fv.im,
        w: 2.0 * p.im,
        lambda,
        k: f.gauss_curvature(z)?,
        sf: 2.0 * (szz - sz * sz),
    })
}

/// Lift along the default radial path 0 -> z.
pub fn lift_radial(f: &HarmonicMap, z: Complex64) -> Result<LiftPoint> {
    we_lift(f, z, &[Complex64::ZERO, z])
}

/// Euclidean distance in R^3 between two lift points.
pub fn lift_distance(a: &LiftPoint, b: &LiftPoint) -> f64 {
    let d = [a.u - b.u, a.v - b.v, a.w - b.w];
    (d[0] * d[0] + d[1] * d[1] + d[2] * d[2]).sqrt()
}

/// Hyperbolic distance on the unit disk with density 1/(1-|z|^2):
/// d(z1, z2) = arctanh |(z1 - z2)/(1 - conj(z1) z2)|.
pub fn hyperbolic_distance(z1: Complex64, z2: Complex64) -> Result<f64> {
    if z1.norm() >= 1.0 {
        return Err(Error::DomainError {
            x: z1.norm(),
            domain: "unit disk",
        });
    }
    if z2.norm() >= 1.0 {
        return Err(Error::DomainError {
            x: z2.norm(),
            domain: "unit disk",
        });
    }
    let m = ((z1 - z2) / (1.0 - z1.conj() * z2)).norm();
    Ok(m.atanh())
}

/// Disk automorphism z -> e^{i theta} (z + alpha)/(1 + conj(alpha) z).
#[derive(Debug, Clone, Copy)]
pub struct DiskAutomorphism {
    alpha: Complex64,
    theta: f64,
}

impl DiskAutomorphism {
    pub fn new(alpha: Complex64, theta: f64) -> Result<Self> {
        if alpha.norm() >= 1.0 {
            return Err(Error::DomainError {
                x: alpha.norm(),
                domain: "|alpha| < 1",
            });
        }
        Ok(DiskAutomorphism { alpha, theta })
    }

    pub fn identity() -> Self {
        DiskAutomorphism {
            alpha: Complex64::ZERO,
            theta: 0.0,
        }
    }

    /// The transport map of the symmetric-geodesic argument:
    /// T(z) = (i rho - z)/(1 + i rho z), written as alpha = -i rho, theta = pi.
    pub fn symmetric_geodesic(rho: f64) -> Result<Self> {
        DiskAutomorphism::new(Complex64::new(0.0, -rho), std::f64::consts::PI)
    }

    pub fn alpha(&self) -> Complex64 {
        self.alpha
    }

    /// 3-jet of T at z, by jet arithmetic on (z + alpha)/(1 + conj(alpha) z).
    pub fn jet(&self, z: Complex64) -> Jet3Complex {
        let zj = Jet3Complex::variable(z);
        let num = zj.add(&Jet3Complex::constant(self.alpha));
        let den = zj
            .scale(self.alpha.conj())
            .add(&Jet3Complex::constant(Complex64::ONE));
        num.div(&den).scale(Complex64::from_polar(1.0, self.theta))
    }

    pub fn apply(&self, z: Complex64) -> Complex64 {
        self.jet(z).value
    }
}

/// Precompose f with a disk automorphism: f1 = f o T with jets propagated by
/// the chain rule and g renormalized so that g1(0) = 0 (the constant moves to
/// h1 and changes neither lambda nor sigma nor the lift geometry).
pub fn transport_by_automorphism(f: &HarmonicMap, t: &DiskAutomorphism) -> HarmonicMap {
    let chain3 = |outer: Jet3Complex, inner: &Jet3Complex| -> Jet3Complex {
        Jet3Complex {
            value: outer.value,
            d1: outer.d1 * inner.d1,
            d2: outer.d2 * inner.d1 * inner.d1 + outer.d1 * inner.d2,
            d3: outer.d3 * inner.d1 * inner.d1 * inner.d1
                + 3.0 * outer.d2 * inner.d1 * inner.d2
                + outer.d1 * inner.d3,
        }
    };
    let g_shift = f.g_jet(t.apply(Complex64::ZERO)).value;
    let (fh, fg, fq, t1) = (f.h.clone(), f.g.clone(), f.q.clone(), *t);
    let t2 = t1;
    let label = format!("transport({})", f.label());
    HarmonicMap {
        h: Arc::new(move |z| {
            let tj = t1.jet(z);
            let mut out = chain3(fh(tj.value), &tj);
            out.value += g_shift.conj();
            out
        }),
        g: Arc::new(move |z| {
            let tj = t2.jet(z);
            let mut out = chain3(fg(tj.value), &tj);
            out.value -= g_shift;
            out
        }),
        q: Arc::new(move |z| {
            let tj = t1.jet(z);
            let qj = fq(tj.value);
            Jet2Complex {
                value: qj.value,
                d1: qj.d1 * tj.d1,
                d2: qj.d2 * tj.d1 * tj.d1 + qj.d1 * tj.d2,
            }
        }),
        label,
    }
}

/// Options for the lift verifiers.
#[derive(Debug, Clone, Copy)]
pub struct LiftVerifyOpts {
    /// Rings x sectors of the criterion-scan polar grid.
    pub scan_rings: usize,
    pub scan_sectors: usize,
    /// Outer radius of the criterion scan.
    pub scan_r_max: f64,
    /// Slack allowed in the criterion before refusing (float-noise band).
    pub hypothesis_tol: f64,
    /// Integrator tolerance for the F profile.
    pub profile_tol: f64,
    /// Domain cut for the F profile.
    pub profile_eps: f64,
    /// Scan threshold above which a custom p is rescaled to c* p.
    pub rescale_threshold: f64,
}

impl Default for LiftVerifyOpts {
    fn default() -> Self {
        LiftVerifyOpts {
            scan_rings: 40,
            scan_sectors: 24,
            scan_r_max: 0.95,
            hypothesis_tol: 1e-9,
            profile_tol: 1e-12,
            profile_eps: 1e-4,
            rescale_threshold: 1e-3,
        }
    }
}

/// Criterion sweep over a polar grid: returns the minimal margin, or the
/// hypothesis-failure error with its witness.
pub fn scan_criterion5(f: &HarmonicMap, p: &NehariFunction, opts: &LiftVerifyOpts) -> Result<f64> {
    let mut sites = vec![Complex64::ZERO];
    for i in 1..=opts.scan_rings {
        let r = opts.scan_r_max * i as f64 / opts.scan_rings as f64;
        for k in 0..opts.scan_sectors {
            let theta = 2.0 * std::f64::consts::PI * k as f64 / opts.scan_sectors as f64;
            sites.push(Complex64::from_polar(r, theta));
        }
    }
    let margins = par_map(&sites, |&z| f.criterion5_margin(p, z));
    let mut min_margin = f64::INFINITY;
    for (z, m) in sites.iter().zip(margins) {
        let m = m?;
        let scale = 1.0 + 2.0 * p.eval(z.norm());
        if m < -opts.hypothesis_tol * scale {
            return Err(Error::HypothesisFailed {
                condition: "|Sf| + lambda^2 |K| <= 2p(|z|)",
                site: format!("z = {z}"),
                lhs: 2.0 * p.eval(z.norm()) - m,
                bound: 2.0 * p.eval(z.norm()),
            });
        }
        min_margin = min_margin.min(m);
    }
    Ok(min_margin)
}

/// Resolve the profile weight for Theorem 3: builtins are extremal as
/// stated; a custom p is scanned and rescaled to c* p when c* exceeds 1.
fn extremal_profile_for(
    p: &NehariFunction,
    opts: &LiftVerifyOpts,
) -> Result<(ExtremalProfile, Option<f64>)> {
    if p.kind() != NehariKind::Custom {
        return Ok((extremal_f(p, opts.profile_eps, opts.profile_tol)?, None));
    }
    let c = extremal_scan(p, 8.0, 30)?;
    if c > 1.0 + opts.rescale_threshold {
        let p1 = p.scaled(c);
        Ok((
            extremal_f(&p1, opts.profile_eps, opts.profile_tol)?,
            Some(c),
        ))
    } else {
        Ok((extremal_f(p, opts.profile_eps, opts.profile_tol)?, None))
    }
}

/// Theorem-3 check: for each pair,
/// |lift(z1) - lift(z2)| >= sqrt(lambda(z1) lambda(z2) / (F'(|z1|) F'(|z2|))) d(z1, z2),
/// with lifts taken along independent radial paths.
pub fn verify_theorem3(
    f: &HarmonicMap,
    p: &NehariFunction,
    pairs: &[(Complex64, Complex64)],
    opts: &LiftVerifyOpts,
) -> Result<DistortionReport> {
    if pairs.is_empty() {
        return Err(Error::InvalidInput("need at least one pair".into()));
    }
    p.require_nehari(opts.profile_eps)?;
    let min_slack = scan_criterion5(f, p, opts)?;
    let (profile, rescaled) = extremal_profile_for(p, opts)?;

    let samples = par_map(pairs, |&(z1, z2)| -> Result<MarginSample> {
        let l1 = lift_radial(f, z1)?;
        let l2 = lift_radial(f, z2)?;
        let lhs = lift_distance(&l1, &l2);
        let rhs = ((l1.lambda * l2.lambda)
            / (profile.eval_df(z1.norm())? * profile.eval_df(z2.norm())?))
        .sqrt()
            * hyperbolic_distance(z1, z2)?;
        Ok(MarginSample {
            site: Site::ZPair([z1.re, z1.im], [z2.re, z2.im]),
            lhs,
            rhs,
            margin: lhs - rhs,
        })
    });
    let samples: Result<Vec<_>> = samples.into_iter().collect();
    let mut report = DistortionReport::from_samples("theorem3", p.label(), min_slack, samples?);
    report.rescaled_c = rescaled;
    Ok(report)
}

/// Builtin harmonic-map catalog.
pub mod catalog {
    use super::*;

    /// f(z) = z.
    pub fn identity() -> HarmonicMap {
        HarmonicMap::analytic("identity", Jet3Complex::variable)
    }

    /// f(z) = (1/2) log((1+z)/(1-z)): analytic, maps onto a horizontal strip;
    /// equals the classical F profile on (-1, 1).
    pub fn log_mobius() -> HarmonicMap {
        HarmonicMap::analytic("log_mobius", |z| {
            let zj = Jet3Complex::variable(z);
            let one = Jet3Complex::constant(Complex64::ONE);
            one.add(&zj)
                .ln()
                .sub(&one.sub(&zj).ln())
                .scale(Complex64::new(0.5, 0.0))
        })
    }

    /// Enneper-type harmonic map z + conj(eps^2 z^3 / 3) with q = eps z.
    /// The default eps = 1/sqrt(2) gives g = z^3/6 and lambda = 1 + |z|^2/2.
    pub fn enneper_eps(eps: f64) -> HarmonicMap {
        let e2 = eps * eps;
        HarmonicMap::from_parts(
            format!("enneper_eps[{eps:.6}]"),
            Jet3Complex::variable,
            move |z| {
                let zj = Jet3Complex::variable(z);
                zj.mul(&zj).mul(&zj).scale(Complex64::new(e2 / 3.0, 0.0))
            },
            move |z| Jet2Complex {
                value: eps * z,
                d1: Complex64::new(eps, 0.0),
                d2: Complex64::ZERO,
            },
        )
        .expect("catalog map is consistent")
    }

    /// Extremal covering map G*(z) = (sqrt2/4)(1 - ((1-z)/(1+z))^{sqrt2}):
    /// analytic with a2 = -sqrt2 and Schwarzian -2(1-z^2)^{-2}; sharp for
    /// the covering bound.
    pub fn gstar() -> HarmonicMap {
        HarmonicMap::analytic("gstar", |z| {
            let zj = Jet3Complex::variable(z);
            let one = Jet3Complex::constant(Complex64::ONE);
            let ratio = one.sub(&zj).div(&one.add(&zj));
            let s = std::f64::consts::SQRT_2;
            let q4 = Complex64::new(s / 4.0, 0.0);
            one.sub(&ratio.powf(s)).scale(q4)
        })
    }

    /// Koebe function z/(1-z)^2: univalent but |Sf(0)| = 6 > 2, so the
    /// classical criterion is inconclusive. Negative control.
    pub fn koebe() -> HarmonicMap {
        HarmonicMap::analytic("koebe", |z| {
            let zj = Jet3Complex::variable(z);
            let one = Jet3Complex::constant(Complex64::ONE);
            let d = one.sub(&zj);
            zj.div(&d.mul(&d))
        })
    }

    /// Lookup by CLI name; `eps` feeds enneper_eps.
    pub fn by_name(name: &str, eps: f64) -> Result<HarmonicMap> {
        match name {
            "identity" => Ok(identity()),
            "log_mobius" => Ok(log_mobius()),
            "enneper_eps" | "enneper" => Ok(enneper_eps(eps)),
            "gstar" => Ok(gstar()),
            "koebe" => Ok(koebe()),
            other => Err(Error::UnknownKind { name: other.into() }),
        }
    }
}
