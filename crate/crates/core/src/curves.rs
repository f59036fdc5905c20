//! Curves in R^n as 3-jets: Ahlfors Schwarzian, arclength/curvature
//! decomposition, Mobius postcomposition and normalization, and the two-point
//! distortion checks for curves.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::nehari::{ExtremalProfile, ProfileKind};
use crate::numerics::{Jet3Real, ScalarJet3};
use crate::report::{DistortionReport, MarginSample, Site};
use crate::util::{linspace, par_map};

/// A regular curve x in (-1,1) -> R^n reported as exact 3-jets.
///
/// Jets are supplied analytically by the constructor; the finite-difference
/// jet builder in [`crate::numerics::fd`] exists only as a cross-check oracle.
#[derive(Clone)]
pub struct CurveJet {
    dim: usize,
    eval: Arc<dyn Fn(f64) -> Result<Jet3Real> + Send + Sync>,
    label: String,
}

impl std::fmt::Debug for CurveJet {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("CurveJet")
            .field("dim", &self.dim)
            .field("label", &self.label)
            .finish()
    }
}

impl CurveJet {
    pub fn from_fn(
        dim: usize,
        label: impl Into<String>,
        eval: impl Fn(f64) -> Result<Jet3Real> + Send + Sync + 'static,
    ) -> Self {
        CurveJet {
            dim,
            eval: Arc::new(eval),
            label: label.into(),
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn eval(&self, x: f64) -> Result<Jet3Real> {
        let jet = (self.eval)(x)?;
        if !jet.is_finite() {
            return Err(Error::InvalidInput(format!(
                "curve {} produced a non-finite jet at {x}",
                self.label
            )));
        }
        Ok(jet)
    }

    /// Straight line a + x v.
    pub fn line(a: Vec<f64>, v: Vec<f64>) -> Self {
        let dim = a.len();
        CurveJet::from_fn(dim, "line", move |x| {
            let value = a.iter().zip(&v).map(|(ai, vi)| ai + x * vi).collect();
            Jet3Real::new(value, v.clone(), vec![0.0; dim], vec![0.0; dim])
        })
    }

    /// Unit-speed circle arc (cos x, sin x).
    pub fn circle_arc() -> Self {
        CurveJet::from_fn(2, "circle_arc", |x| {
            let (s, c) = x.sin_cos();
            Jet3Real::new(vec![c, s], vec![-s, c], vec![-c, -s], vec![s, -c])
        })
    }

    /// tanh(x) e1 embedded in R^2; S1 = -2 identically.
    pub fn tanh_line() -> Self {
        CurveJet::from_fn(2, "tanh_line", |x| {
            let t = x.tanh();
            let sech2 = 1.0 - t * t;
            Jet3Real::new(
                vec![t, 0.0],
                vec![sech2, 0.0],
                vec![-2.0 * sech2 * t, 0.0],
                vec![-2.0 * sech2 * (sech2 - 2.0 * t * t), 0.0],
            )
        })
    }

    /// F(x) e1 for an F profile: the sharp curve of the distortion theorems.
    pub fn profile_line(profile: &ExtremalProfile, dim: usize) -> Result<Self> {
        if profile.kind() != ProfileKind::FProfile {
            return Err(Error::InvalidInput(
                "profile_line wants an F profile".into(),
            ));
        }
        let profile = profile.clone();
        let label = format!("line_F[{}]", profile.p().label());
        Ok(CurveJet::from_fn(dim, label, move |x| {
            let mut value = vec![0.0; dim];
            let mut d1 = vec![0.0; dim];
            let mut d2 = vec![0.0; dim];
            let mut d3 = vec![0.0; dim];
            value[0] = profile.eval_f(x)?;
            d1[0] = profile.eval_df(x)?;
            d2[0] = profile.eval_ddf(x)?;
            d3[0] = profile.eval_dddf(x)?;
            Jet3Real::new(value, d1, d2, d3)
        }))
    }

    /// (sin(3 pi x), 0): repeats values and reverses direction; negative
    /// control for the injectivity probe.
    pub fn sine_fold() -> Self {
        CurveJet::from_fn(2, "sine_fold", |x| {
            let a = 3.0 * std::f64::consts::PI;
            let (s, c) = (a * x).sin_cos();
            Jet3Real::new(
                vec![s, 0.0],
                vec![a * c, 0.0],
                vec![-a * a * s, 0.0],
                vec![-a * a * a * c, 0.0],
            )
        })
    }

    /// Helix (cos x, sin x, c x).
    pub fn helix(pitch: f64) -> Self {
        CurveJet::from_fn(3, "helix", move |x| {
            let (s, c) = x.sin_cos();
            Jet3Real::new(
                vec![c, s, pitch * x],
                vec![-s, c, pitch],
                vec![-c, -s, 0.0],
                vec![s, -c, 0.0],
            )
        })
    }

    /// Twisted cubic (x, x^2, x^3).
    pub fn twisted_cubic() -> Self {
        CurveJet::from_fn(3, "twisted_cubic", |x| {
            Jet3Real::new(
                vec![x, x * x, x * x * x],
                vec![1.0, 2.0 * x, 3.0 * x * x],
                vec![0.0, 2.0, 6.0 * x],
                vec![0.0, 0.0, 6.0],
            )
        })
    }

    /// Logarithmic spiral (e^{ax} cos x, e^{ax} sin x).
    pub fn log_spiral(a: f64) -> Self {
        CurveJet::from_fn(2, "log_spiral", move |x| {
            let e = (a * x).exp();
            let (s, c) = x.sin_cos();
            let v = vec![e * c, e * s];
            let d1 = vec![e * (a * c - s), e * (a * s + c)];
            let d2 = vec![
                e * ((a * a - 1.0) * c - 2.0 * a * s),
                e * ((a * a - 1.0) * s + 2.0 * a * c),
            ];
            let d3 = vec![
                e * (a * (a * a - 3.0) * c - (3.0 * a * a - 1.0) * s),
                e * (a * (a * a - 3.0) * s + (3.0 * a * a - 1.0) * c),
            ];
            Jet3Real::new(v, d1, d2, d3)
        })
    }

    /// (e^x, 0): a line traversed at exponential speed.
    pub fn exp_line() -> Self {
        CurveJet::from_fn(2, "exp_line", |x| {
            let e = x.exp();
            Jet3Real::new(vec![e, 0.0], vec![e, 0.0], vec![e, 0.0], vec![e, 0.0])
        })
    }

    /// Mixed trigonometric/polynomial space curve, regular on (-1,1).
    pub fn trig_poly() -> Self {
        CurveJet::from_fn(3, "trig_poly", |x| {
            let (s, c) = x.sin_cos();
            Jet3Real::new(
                vec![s, x * x + 1.0, x + 0.2 * c],
                vec![c, 2.0 * x, 1.0 - 0.2 * s],
                vec![-s, 2.0, -0.2 * c],
                vec![-c, 0.0, 0.2 * s],
            )
        })
    }
}

/// One factor of a Mobius transformation of R^n.
#[derive(Debug, Clone)]
pub enum MobiusFactor {
    Translation(Vec<f64>),
    /// Orthogonal matrix, rows listed.
    Rotation(Vec<Vec<f64>>),
    /// Positive magnification.
    Scaling(f64),
    /// x -> (x - c)/|x - c|^2.
    Inversion {
        center: Vec<f64>,
    },
    /// x -> (x - |x|^2 b) / (1 - 2<b,x> + |b|^2 |x|^2); regular at 0.
    SpecialConformal(Vec<f64>),
}

/// A Mobius transformation of R^n as a composition sequence, applied in order.
#[derive(Debug, Clone, Default)]
pub struct MobiusRn {
    factors: Vec<MobiusFactor>,
}

impl MobiusRn {
    pub fn identity() -> Self {
        MobiusRn {
            factors: Vec::new(),
        }
    }

    pub fn factors(&self) -> &[MobiusFactor] {
        &self.factors
    }

    pub fn push(&mut self, factor: MobiusFactor) -> Result<()> {
        match &factor {
            MobiusFactor::Rotation(m) => {
                let n = m.len();
                for i in 0..n {
                    if m[i].len() != n {
                        return Err(Error::NotOrthogonal);
                    }
                    for j in 0..n {
                        let d: f64 = (0..n).map(|k| m[k][i] * m[k][j]).sum();
                        let expect = if i == j { 1.0 } else { 0.0 };
                        if (d - expect).abs() > 1e-12 {
                            return Err(Error::NotOrthogonal);
                        }
                    }
                }
            }
            MobiusFactor::Scaling(s) if !s.is_finite() || *s <= 0.0 => {
                return Err(Error::InvalidInput(format!("scaling {s} must be positive")));
            }
            _ => {}
        }
        self.factors.push(factor);
        Ok(())
    }

    pub fn with(mut self, factor: MobiusFactor) -> Result<Self> {
        self.push(factor)?;
        Ok(self)
    }

    /// Propagate a 3-jet through the factor sequence; `at_x` only labels
    /// singularity errors.
    pub fn apply_jet(&self, jet: &Jet3Real, at_x: f64) -> Result<Jet3Real> {
        let mut cur = jet.clone();
        for factor in &self.factors {
            cur = match factor {
                MobiusFactor::Translation(a) => cur.translate(a),
                MobiusFactor::Rotation(m) => cur.linear_map(m),
                MobiusFactor::Scaling(s) => cur.scale(*s),
                MobiusFactor::Inversion { center } => {
                    let neg: Vec<f64> = center.iter().map(|c| -c).collect();
                    let y = cur.translate(&neg);
                    let s = y.dot_jet(&y);
                    if s.value() < 1e-24 {
                        return Err(Error::InversionSingularity { x: at_x });
                    }
                    y.mul_scalar_jet(&s.recip())
                }
                MobiusFactor::SpecialConformal(b) => {
                    let s = cur.dot_jet(&cur);
                    let b_dot = {
                        let d = |v: &[f64]| -> f64 { v.iter().zip(b).map(|(x, y)| x * y).sum() };
                        ScalarJet3([d(&cur.value), d(&cur.d1), d(&cur.d2), d(&cur.d3)])
                    };
                    let b_norm2: f64 = b.iter().map(|v| v * v).sum();
                    let denom = b_dot.scale(-2.0).add(&s.scale(b_norm2)).add_const(1.0);
                    if denom.value().abs() < 1e-24 {
                        return Err(Error::InversionSingularity { x: at_x });
                    }
                    let sb = scalar_jet_times_vector(&s, b);
                    cur.sub(&sb).mul_scalar_jet(&denom.recip())
                }
            };
        }
        Ok(cur)
    }

    /// Image of a single point.
    pub fn apply_point(&self, p: &[f64]) -> Result<Vec<f64>> {
        let n = p.len();
        let jet = Jet3Real::new(p.to_vec(), vec![0.0; n], vec![0.0; n], vec![0.0; n])?;
        Ok(self.apply_jet(&jet, f64::NAN)?.value)
    }
}

fn scalar_jet_times_vector(s: &ScalarJet3, b: &[f64]) -> Jet3Real {
    let m = |c: f64| -> Vec<f64> { b.iter().map(|v| c * v).collect() };
    Jet3Real {
        value: m(s.0[0]),
        d1: m(s.0[1]),
        d2: m(s.0[2]),
        d3: m(s.0[3]),
    }
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn norm(a: &[f64]) -> f64 {
    dot(a, a).sqrt()
}

/// Ahlfors Schwarzian of a 3-jet:
/// <phi', phi'''>/|phi'|^2 - 3 <phi', phi''>^2/|phi'|^4 + (3/2) |phi''|^2/|phi'|^2.
pub fn ahlfors_s1_jet(jet: &Jet3Real) -> Result<f64> {
    let v2 = dot(&jet.d1, &jet.d1);
    if v2 < 1e-24 {
        return Err(Error::DegenerateTangent { x: f64::NAN });
    }
    let a = dot(&jet.d1, &jet.d3) / v2;
    let b = dot(&jet.d1, &jet.d2);
    let c = dot(&jet.d2, &jet.d2) / v2;
    Ok(a - 3.0 * b * b / (v2 * v2) + 1.5 * c)
}

/// S1 of a curve at x.
pub fn ahlfors_s1(curve: &CurveJet, x: f64) -> Result<f64> {
    let jet = curve.eval(x)?;
    ahlfors_s1_jet(&jet).map_err(|e| match e {
        Error::DegenerateTangent { .. } => Error::DegenerateTangent { x },
        other => other,
    })
}

/// Pieces of the decomposition S1 = Ss + (1/2) v^2 k^2.
#[derive(Debug, Clone, Copy)]
pub struct Decomposition {
    /// Speed |phi'|.
    pub v: f64,
    /// Schwarzian of the arclength function.
    pub ss: f64,
    /// Scalar curvature of the image curve.
    pub k: f64,
    /// Ss + v^2 k^2 / 2; equals S1 identically.
    pub s1_recombined: f64,
}

/// Split S1 into the arclength Schwarzian and the curvature term.
pub fn arclength_decomposition(curve: &CurveJet, x: f64) -> Result<Decomposition> {
    let jet = curve.eval(x)?;
    let v2 = dot(&jet.d1, &jet.d1);
    if v2 < 1e-24 {
        return Err(Error::DegenerateTangent { x });
    }
    let v = v2.sqrt();
    let dv = dot(&jet.d1, &jet.d2) / v;
    let ddv = (dot(&jet.d2, &jet.d2) + dot(&jet.d1, &jet.d3) - dv * dv) / v;
    let ss = ddv / v - 1.5 * (dv / v) * (dv / v);
    // curvature: normal component of phi'' over v^2
    let tang = dot(&jet.d1, &jet.d2) / v2;
    let perp2: f64 = jet
        .d2
        .iter()
        .zip(&jet.d1)
        .map(|(a, t)| {
            let p = a - tang * t;
            p * p
        })
        .sum();
    let k = perp2.sqrt() / v2;
    Ok(Decomposition {
        v,
        ss,
        k,
        s1_recombined: ss + 0.5 * v2 * k * k,
    })
}

/// Postcompose a curve with a Mobius transformation of R^n.
pub fn mobius_postcompose(curve: &CurveJet, transform: &MobiusRn) -> CurveJet {
    let t = transform.clone();
    let inner = curve.clone();
    let label = format!("mobius({})", curve.label());
    CurveJet::from_fn(curve.dim(), label, move |x| {
        let jet = inner.eval(x)?;
        t.apply_jet(&jet, x)
    })
}

/// Postcompose with the Mobius normalizer so that the result psi satisfies
/// psi(0) = 0, |psi'(0)| = 1, <psi'(0), psi''(0)> = 0.
pub fn normalize_curve(curve: &CurveJet) -> Result<(CurveJet, MobiusRn)> {
    let jet0 = curve.eval(0.0)?;
    let speed = norm(&jet0.d1);
    if speed < 1e-12 {
        return Err(Error::DegenerateTangent { x: 0.0 });
    }
    let mut t = MobiusRn::identity();
    t.push(MobiusFactor::Translation(
        jet0.value.iter().map(|v| -v).collect(),
    ))?;
    t.push(MobiusFactor::Scaling(1.0 / speed))?;
    // After translating and scaling, kill the tangential second derivative
    // with the special conformal factor b = -(<psi', psi''>/2) psi'.
    let mid = t.apply_jet(&jet0, 0.0)?;
    let coeff = -0.5 * dot(&mid.d1, &mid.d2);
    t.push(MobiusFactor::SpecialConformal(
        mid.d1.iter().map(|v| coeff * v).collect(),
    ))?;
    Ok((mobius_postcompose(curve, &t), t))
}

/// Options shared by the curve verifiers.
#[derive(Debug, Clone, Copy)]
pub struct VerifyOpts {
    /// Nodes of the sampled-hypothesis grid.
    pub hypothesis_nodes: usize,
    /// Slack allowed in S1 <= 2p before declaring the hypothesis failed.
    pub hypothesis_tol: f64,
}

impl Default for VerifyOpts {
    fn default() -> Self {
        VerifyOpts {
            hypothesis_nodes: 2001,
            hypothesis_tol: 1e-6,
        }
    }
}

/// Sampled hypothesis scan: S1 phi <= 2p on a dense grid, a tangent floor,
/// and no tangent reversal between adjacent nodes (a reversal means the
/// tangent degenerated somewhere between samples). Returns the minimal
/// slack 2p - S1 observed.
pub fn scan_hypothesis(
    curve: &CurveJet,
    profile: &ExtremalProfile,
    lo: f64,
    hi: f64,
    opts: &VerifyOpts,
) -> Result<f64> {
    let grid = linspace(lo, hi, opts.hypothesis_nodes.max(3));
    let p = profile.p().clone();
    let slacks = par_map(&grid, |&x| -> Result<(f64, Vec<f64>)> {
        let jet = curve.eval(x)?;
        let s1 = ahlfors_s1_jet(&jet).map_err(|e| match e {
            Error::DegenerateTangent { .. } => Error::DegenerateTangent { x },
            other => other,
        })?;
        Ok((2.0 * p.eval(x) - s1, jet.d1))
    });
    let mut min_slack = f64::INFINITY;
    let mut prev_tangent: Option<(f64, Vec<f64>)> = None;
    for (&x, item) in grid.iter().zip(slacks) {
        let (slack, tangent) = item?;
        if slack < -opts.hypothesis_tol {
            return Err(Error::HypothesisFailed {
                condition: "S1 phi <= 2p",
                site: format!("x = {x}"),
                lhs: 2.0 * profile.p().eval(x) - slack,
                bound: 2.0 * profile.p().eval(x),
            });
        }
        if let Some((px, pt)) = &prev_tangent {
            if dot(pt, &tangent) <= 0.0 {
                return Err(Error::HypothesisFailed {
                    condition: "regular tangent (no reversal between samples)",
                    site: format!("x in ({px}, {x})"),
                    lhs: dot(pt, &tangent),
                    bound: 0.0,
                });
            }
        }
        prev_tangent = Some((x, tangent));
        min_slack = min_slack.min(slack);
    }
    Ok(min_slack)
}

/// Theorem-1 check on a normalized curve: (a) |phi'(x)| <= F'(x) and
/// (b) |phi'|/(1+|phi|^2) <= F'/(1+F^2) at every grid point.
pub fn verify_theorem1(
    curve: &CurveJet,
    profile: &ExtremalProfile,
    grid: &[f64],
    opts: &VerifyOpts,
) -> Result<DistortionReport> {
    let jet0 = curve.eval(0.0)?;
    let normalized = norm(&jet0.value) <= 1e-9
        && (norm(&jet0.d1) - 1.0).abs() <= 1e-9
        && dot(&jet0.d1, &jet0.d2).abs() <= 1e-9;
    if !normalized {
        return Err(Error::InvalidInput(
            "curve is not normalized; apply normalize_curve first".into(),
        ));
    }
    let (lo, hi) = grid_range(grid)?;
    let min_slack = scan_hypothesis(curve, profile, lo, hi, opts)?;

    let per_point = par_map(grid, |&x| -> Result<[MarginSample; 2]> {
        let jet = curve.eval(x)?;
        let speed = norm(&jet.d1);
        let df = profile.eval_df(x)?;
        let f = profile.eval_f(x)?;
        let a = MarginSample {
            site: Site::X(x),
            lhs: df,
            rhs: speed,
            margin: df - speed,
        };
        let lhs_b = df / (1.0 + f * f);
        let rhs_b = speed / (1.0 + dot(&jet.value, &jet.value));
        let b = MarginSample {
            site: Site::X(x),
            lhs: lhs_b,
            rhs: rhs_b,
            margin: lhs_b - rhs_b,
        };
        Ok([a, b])
    });
    let mut flat = Vec::with_capacity(2 * grid.len());
    for s in per_point {
        flat.extend(s?);
    }
    Ok(DistortionReport::from_samples(
        "theorem1",
        profile.p().label(),
        min_slack,
        flat,
    ))
}

/// Two-point rhs of Theorem 2: |F(x1)-F(x2)| / sqrt(F'(x1) F'(x2)).
pub fn theorem2_rhs(profile: &ExtremalProfile, x1: f64, x2: f64) -> Result<f64> {
    let df1 = profile.eval_df(x1)?;
    let df2 = profile.eval_df(x2)?;
    Ok((profile.eval_f(x1)? - profile.eval_f(x2)?).abs() / (df1 * df2).sqrt())
}

/// Closed-form Theorem-2 rhs for p = pi^2/4: (2/pi) sin(pi |x1 - x2| / 2).
pub fn theorem2_rhs_pi2(x1: f64, x2: f64) -> f64 {
    2.0 / std::f64::consts::PI * (std::f64::consts::PI * (x1 - x2).abs() / 2.0).sin()
}

/// Closed-form Theorem-2 rhs for the classical weight:
/// sqrt((1-x1^2)(1-x2^2)) d(x1, x2) with d the hyperbolic distance.
pub fn theorem2_rhs_classical(x1: f64, x2: f64) -> f64 {
    let d = (x1.atanh() - x2.atanh()).abs();
    ((1.0 - x1 * x1) * (1.0 - x2 * x2)).sqrt() * d
}

/// Theorem-2 check: the normalized chordal ratio dominates the F ratio on
/// every pair. No normalization of the curve is required.
pub fn verify_theorem2(
    curve: &CurveJet,
    profile: &ExtremalProfile,
    pairs: &[(f64, f64)],
    opts: &VerifyOpts,
) -> Result<DistortionReport> {
    let (mut lo, mut hi) = (f64::INFINITY, f64::NEG_INFINITY);
    for &(a, b) in pairs {
        lo = lo.min(a).min(b);
        hi = hi.max(a).max(b);
    }
    if !lo.is_finite() || lo >= hi {
        return Err(Error::InvalidInput(
            "need at least two distinct pair abscissae".into(),
        ));
    }
    let min_slack = scan_hypothesis(curve, profile, lo, hi, opts)?;

    let samples = par_map(pairs, |&(x1, x2)| -> Result<MarginSample> {
        let j1 = curve.eval(x1)?;
        let j2 = curve.eval(x2)?;
        let (v1, v2) = (norm(&j1.d1), norm(&j2.d1));
        if v1 < 1e-12 {
            return Err(Error::DegenerateTangent { x: x1 });
        }
        if v2 < 1e-12 {
            return Err(Error::DegenerateTangent { x: x2 });
        }
        let chord = j1
            .value
            .iter()
            .zip(&j2.value)
            .map(|(a, b)| (a - b) * (a - b))
            .sum::<f64>()
            .sqrt();
        let lhs = chord / (v1 * v2).sqrt();
        let rhs = theorem2_rhs(profile, x1, x2)?;
        Ok(MarginSample {
            site: Site::Pair(x1, x2),
            lhs,
            rhs,
            margin: lhs - rhs,
        })
    });
    let samples: Result<Vec<_>> = samples.into_iter().collect();
    Ok(DistortionReport::from_samples(
        "theorem2",
        profile.p().label(),
        min_slack,
        samples?,
    ))
}

/// Collision search: sample m points, gate near-coincident pairs, then zoom
/// each candidate on shrinking local grids. Returns a pair with
/// |phi(x1) - phi(x2)| < 1e-9 (1 + |phi(x1)|) and |x1 - x2| > 1e-6, if any.
pub fn injectivity_probe(
    curve: &CurveJet,
    m: usize,
    lo: f64,
    hi: f64,
) -> Result<Option<(f64, f64)>> {
    if m < 2 {
        return Err(Error::InvalidInput("need at least two samples".into()));
    }
    let xs = linspace(lo, hi, m);
    let jets: Result<Vec<Jet3Real>> = xs.iter().map(|&x| curve.eval(x)).collect();
    let jets = jets?;
    let h0 = (hi - lo) / (m - 1) as f64;

    // Coarse gate: parameter-distant samples that land spatially within one
    // coarse step of each other (local speeds set the spatial scale). The
    // best few candidates get a zoom pass.
    let mut candidates: Vec<(f64, f64, f64)> = Vec::new();
    for i in 0..m {
        for j in (i + 3)..m {
            let d2: f64 = jets[i]
                .value
                .iter()
                .zip(&jets[j].value)
                .map(|(a, b)| (a - b) * (a - b))
                .sum();
            let gate = 1.5 * (norm(&jets[i].d1) + norm(&jets[j].d1)) * h0;
            if d2.sqrt() < gate {
                candidates.push((d2, xs[i], xs[j]));
            }
        }
    }
    candidates.sort_by(|a, b| a.0.partial_cmp(&b.0).unwrap());
    candidates.truncate(64);
    let candidates: Vec<(f64, f64)> = candidates.into_iter().map(|(_, a, b)| (a, b)).collect();
    let dist = |a: f64, b: f64| -> Result<f64> {
        let pa = curve.eval(a)?.value;
        let pb = curve.eval(b)?.value;
        Ok(pa
            .iter()
            .zip(&pb)
            .map(|(x, y)| (x - y) * (x - y))
            .sum::<f64>()
            .sqrt())
    };
    for &(a0, b0) in &candidates {
        let (mut a, mut b) = (a0, b0);
        let mut h = h0;
        while h > 1e-12 {
            let mut best = (dist(a, b)?, a, b);
            for ia in -3i32..=3 {
                for ib in -3i32..=3 {
                    let (ca, cb) = (a + ia as f64 * h / 3.0, b + ib as f64 * h / 3.0);
                    if !(lo..=hi).contains(&ca) || !(lo..=hi).contains(&cb) || cb - ca <= 1e-6 {
                        continue;
                    }
                    let d = dist(ca, cb)?;
                    if d < best.0 {
                        best = (d, ca, cb);
                    }
                }
            }
            a = best.1;
            b = best.2;
            h /= 3.0;
        }
        let scale = 1.0 + norm(&curve.eval(a)?.value);
        if dist(a, b)? < 1e-9 * scale && b - a > 1e-6 {
            return Ok(Some((a, b)));
        }
    }
    Ok(None)
}

fn grid_range(grid: &[f64]) -> Result<(f64, f64)> {
    let lo = grid.iter().copied().fold(f64::INFINITY, f64::min);
    let hi = grid.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    if !lo.is_finite() || lo >= hi {
        return Err(Error::InvalidInput(
            "grid must contain at least two distinct points".into(),
        ));
    }
    Ok((lo, hi))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::nehari::{extremal_f, NehariFunction};

    #[test]
    fn line_has_zero_schwarzian() {
        let c = CurveJet::line(vec![1.0, -2.0, 0.5], vec![0.3, 0.4, 1.0]);
        for &x in &[-0.9, 0.0, 0.7] {
            assert_eq!(ahlfors_s1(&c, x).unwrap(), 0.0);
        }
    }

    #[test]
    fn circle_arc_s1_is_half() {
        let c = CurveJet::circle_arc();
        for &x in &[-0.8, -0.1, 0.33, 0.9] {
            assert!((ahlfors_s1(&c, x).unwrap() - 0.5).abs() < 1e-14);
        }
    }

    #[test]
    fn profile_line_s1_is_twice_p() {
        let p = NehariFunction::classical();
        let prof = extremal_f(&p, 1e-3, 1e-11).unwrap();
        let c = CurveJet::profile_line(&prof, 2).unwrap();
        for &x in &[-0.7, 0.0, 0.4, 0.85] {
            let s1 = ahlfors_s1(&c, x).unwrap();
            assert!((s1 - 2.0 * p.eval(x)).abs() < 1e-6, "x={x}: {s1}");
        }
    }

    #[test]
    fn decomposition_identity_and_circle_values() {
        let c = CurveJet::circle_arc();
        let d = arclength_decomposition(&c, 0.3).unwrap();
        assert!((d.v - 1.0).abs() < 1e-14);
        assert!(d.ss.abs() < 1e-12);
        assert!((d.k - 1.0).abs() < 1e-12);
        assert!((d.s1_recombined - 0.5).abs() < 1e-12);

        for curve in [
            CurveJet::helix(0.5),
            CurveJet::twisted_cubic(),
            CurveJet::log_spiral(0.1),
        ] {
            for &x in &[-0.6, 0.1, 0.8] {
                let d = arclength_decomposition(&curve, x).unwrap();
                let s1 = ahlfors_s1(&curve, x).unwrap();
                assert!(
                    (d.s1_recombined - s1).abs() <= 1e-7 * (1.0 + s1.abs()),
                    "{}: x={x}",
                    curve.label()
                );
            }
        }
    }

    #[test]
    fn unit_speed_line_decomposition() {
        let c = CurveJet::line(vec![0.0, 0.0], vec![1.0, 0.0]);
        let d = arclength_decomposition(&c, 0.5).unwrap();
        assert_eq!(d.v, 1.0);
        assert_eq!(d.ss, 0.0);
        assert_eq!(d.k, 0.0);
    }

    #[test]
    fn identity_mobius_keeps_jets() {
        let c = CurveJet::helix(0.3);
        let t = MobiusRn::identity();
        let tc = mobius_postcompose(&c, &t);
        let a = c.eval(0.4).unwrap();
        let b = tc.eval(0.4).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn inversion_speed_identity() {
        // For Phi = phi/|phi|^2: |Phi'| = |phi'|/|phi|^2, and S1 is unchanged.
        let c = CurveJet::from_fn(2, "shifted_line", |x| {
            Jet3Real::new(
                vec![1.0 + x, 0.0],
                vec![1.0, 0.0],
                vec![0.0, 0.0],
                vec![0.0, 0.0],
            )
        });
        let t = MobiusRn::identity()
            .with(MobiusFactor::Inversion {
                center: vec![0.0, 0.0],
            })
            .unwrap();
        let tc = mobius_postcompose(&c, &t);
        for &x in &[-0.5, 0.0, 0.6] {
            let jet = c.eval(x).unwrap();
            let tjet = tc.eval(x).unwrap();
            let expect = norm(&jet.d1) / dot(&jet.value, &jet.value);
            assert!((norm(&tjet.d1) - expect).abs() < 1e-9, "x={x}");
            let (s1, ts1) = (ahlfors_s1(&c, x).unwrap(), ahlfors_s1(&tc, x).unwrap());
            assert!((s1 - ts1).abs() < 1e-9);
        }
    }

    #[test]
    fn inversion_center_on_curve_errors() {
        let c = CurveJet::line(vec![0.0, 0.0], vec![1.0, 0.0]);
        let t = MobiusRn::identity()
            .with(MobiusFactor::Inversion {
                center: vec![0.5, 0.0],
            })
            .unwrap();
        let tc = mobius_postcompose(&c, &t);
        assert!(matches!(
            tc.eval(0.5),
            Err(Error::InversionSingularity { .. })
        ));
    }

    #[test]
    fn rotations_must_be_orthogonal() {
        let bad =
            MobiusRn::identity().with(MobiusFactor::Rotation(vec![vec![1.0, 0.1], vec![0.0, 1.0]]));
        assert!(matches!(bad, Err(Error::NotOrthogonal)));
    }

    #[test]
    fn normalize_curve_satisfies_identities() {
        let c = CurveJet::exp_line();
        let (psi, _t) = normalize_curve(&c).unwrap();
        let jet = psi.eval(0.0).unwrap();
        assert!(norm(&jet.value) < 1e-9);
        assert!((norm(&jet.d1) - 1.0).abs() < 1e-9);
        assert!(dot(&jet.d1, &jet.d2).abs() < 1e-9);
        // S1 preserved pointwise.
        for &x in &[-0.5, 0.2, 0.8] {
            let a = ahlfors_s1(&c, x).unwrap();
            let b = ahlfors_s1(&psi, x).unwrap();
            assert!((a - b).abs() <= 1e-7 * (1.0 + a.abs()), "x={x}: {a} vs {b}");
        }
    }

    #[test]
    fn normalize_already_normalized_is_identityish() {
        let c = CurveJet::from_fn(2, "unit_line", |x| {
            Jet3Real::new(vec![x, 0.0], vec![1.0, 0.0], vec![0.0, 0.0], vec![0.0, 0.0])
        });
        let (psi, _t) = normalize_curve(&c).unwrap();
        for &x in &[-0.4, 0.3] {
            let a = c.eval(x).unwrap();
            let b = psi.eval(x).unwrap();
            for i in 0..2 {
                assert!((a.value[i] - b.value[i]).abs() < 1e-10);
            }
        }
    }

    #[test]
    fn theorem1_sharp_on_profile_line() {
        let p = NehariFunction::classical();
        let prof = extremal_f(&p, 1e-3, 1e-12).unwrap();
        let curve = CurveJet::profile_line(&prof, 2).unwrap();
        let grid = linspace(-0.95, 0.95, 101);
        let rep = verify_theorem1(&curve, &prof, &grid, &VerifyOpts::default()).unwrap();
        assert!(
            rep.min_margin.abs() <= 1e-7,
            "sharp case margin {}",
            rep.min_margin
        );
        assert!(rep.samples.iter().all(|s| s.margin.abs() <= 1e-7));
    }

    #[test]
    fn theorem1_tanh_under_classical() {
        let p = NehariFunction::classical();
        let prof = extremal_f(&p, 1e-3, 1e-11).unwrap();
        let curve = CurveJet::tanh_line();
        let grid = linspace(-0.95, 0.95, 201);
        let rep = verify_theorem1(&curve, &prof, &grid, &VerifyOpts::default()).unwrap();
        assert!(rep.passes(1e-9), "worst at {:?}", rep.worst_site);
    }

    #[test]
    fn theorem1_line_under_pi2_positive_margins() {
        let p = NehariFunction::constant_pi2();
        let prof = extremal_f(&p, 1e-3, 1e-11).unwrap();
        let curve = CurveJet::from_fn(2, "unit_line", |x| {
            Jet3Real::new(vec![x, 0.0], vec![1.0, 0.0], vec![0.0, 0.0], vec![0.0, 0.0])
        });
        let grid = linspace(-0.9, 0.9, 101);
        let rep = verify_theorem1(&curve, &prof, &grid, &VerifyOpts::default()).unwrap();
        assert!(rep.passes(1e-12));
        // Away from zero the bound is strict: sec^2 > 1.
        for s in rep
            .samples
            .iter()
            .filter(|s| matches!(s.site, Site::X(x) if x.abs() > 0.1))
        {
            assert!(s.margin > 0.0);
        }
    }

    #[test]
    fn theorem1_rejects_unnormalized() {
        let p = NehariFunction::classical();
        let prof = extremal_f(&p, 1e-3, 1e-10).unwrap();
        let rep = verify_theorem1(
            &CurveJet::exp_line(),
            &prof,
            &linspace(-0.5, 0.5, 11),
            &VerifyOpts::default(),
        );
        assert!(rep.is_err());
    }

    #[test]
    fn theorem2_specializations_match() {
        let pairs: Vec<(f64, f64)> = (0..40)
            .map(|i| {
                let a = -0.9 + 1.8 * (i as f64) / 39.0;
                (a, 0.8 - 1.5 * (i as f64) / 39.0)
            })
            .collect();
        let prof = extremal_f(&NehariFunction::constant_pi2(), 1e-3, 1e-12).unwrap();
        for &(x1, x2) in &pairs {
            let general = theorem2_rhs(&prof, x1, x2).unwrap();
            assert!(
                (general - theorem2_rhs_pi2(x1, x2)).abs() < 1e-9,
                "({x1},{x2})"
            );
        }
        let prof = extremal_f(&NehariFunction::classical(), 1e-3, 1e-12).unwrap();
        for &(x1, x2) in &pairs {
            let general = theorem2_rhs(&prof, x1, x2).unwrap();
            assert!(
                (general - theorem2_rhs_classical(x1, x2)).abs() < 1e-9,
                "({x1},{x2})"
            );
        }
    }

    #[test]
    fn theorem2_sharp_and_symmetric() {
        let p = NehariFunction::classical();
        let prof = extremal_f(&p, 1e-3, 1e-12).unwrap();
        let curve = CurveJet::profile_line(&prof, 3).unwrap();
        let pairs = [(0.1, -0.4), (-0.8, 0.8), (0.0, 0.55)];
        let rep = verify_theorem2(&curve, &prof, &pairs, &VerifyOpts::default()).unwrap();
        for s in &rep.samples {
            assert!(s.margin.abs() < 1e-7, "{:?}", s.site);
        }
        let swapped: Vec<(f64, f64)> = pairs.iter().map(|&(a, b)| (b, a)).collect();
        let rep2 = verify_theorem2(&curve, &prof, &swapped, &VerifyOpts::default()).unwrap();
        for (a, b) in rep.samples.iter().zip(&rep2.samples) {
            assert!((a.margin - b.margin).abs() <= 1e-12);
        }
    }

    #[test]
    fn injectivity_probe_finds_sine_fold_collision() {
        let c = CurveJet::sine_fold();
        let hit = injectivity_probe(&c, 500, -0.999, 0.999).unwrap();
        let (a, b) = hit.expect("collision must be found");
        let pa = c.eval(a).unwrap().value;
        let pb = c.eval(b).unwrap().value;
        assert!((pa[0] - pb[0]).abs() < 1e-9 * (1.0 + pa[0].abs()));
        assert!(b - a > 1e-6);
    }

    #[test]
    fn injectivity_probe_clears_injective_curves() {
        let p = NehariFunction::classical();
        let prof = extremal_f(&p, 1e-3, 1e-10).unwrap();
        let line_f = CurveJet::profile_line(&prof, 2).unwrap();
        assert!(injectivity_probe(&line_f, 300, -0.99, 0.99)
            .unwrap()
            .is_none());
        assert!(injectivity_probe(&CurveJet::circle_arc(), 300, -0.99, 0.99)
            .unwrap()
            .is_none());
    }

    #[test]
    fn sine_fold_fails_hypothesis_scan() {
        let p = NehariFunction::classical();
        let prof = extremal_f(&p, 1e-3, 1e-10).unwrap();
        let err = scan_hypothesis(
            &CurveJet::sine_fold(),
            &prof,
            -0.99,
            0.99,
            &VerifyOpts::default(),
        );
        assert!(
            matches!(err, Err(Error::HypothesisFailed { .. })),
            "{err:?}"
        );
    }

    #[test]
    fn theorem1b_proof_inequality() {
        // |phi(x)|/sqrt|phi'(x)| >= |F(x)|/sqrt(F'(x)) for normalized curves.
        let p = NehariFunction::classical();
        let prof = extremal_f(&p, 1e-3, 1e-11).unwrap();
        let curve = CurveJet::tanh_line();
        for &x in &[-0.9, -0.3, 0.2, 0.7, 0.95] {
            let jet = curve.eval(x).unwrap();
            let lhs = norm(&jet.value) / norm(&jet.d1).sqrt();
            let rhs = prof.eval_f(x).unwrap().abs() / prof.eval_df(x).unwrap().sqrt();
            assert!(lhs - rhs >= -1e-9, "x={x}: {lhs} vs {rhs}");
        }
    }
}
