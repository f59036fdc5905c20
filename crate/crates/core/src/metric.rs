//! Surface-metric machinery: conformal shortest-path distance on a weighted
//! lattice, the covering bound H(r), and the Theorem-4 / Corollary-16 and
//! Lemma-12 checks.
//!
//! The disk is discretized as a Cartesian lattice clipped to |z| <= r_max.
//! Each node connects to a 32-direction stencil (axis, diagonal, and the
//! (2,1)/(3,1)/(3,2) knight classes); edge weights are Simpson estimates of
//! the lambda-length of the straight chord. Dijkstra distances then
//! overestimate the true conformal distance by at most the stencil
//! anisotropy (about 1.3% in the worst direction) plus O(h) snapping, which
//! is the safe direction when certifying lower bounds; the allowance is
//! calibrated per run against the Euclidean oracle on the same lattice.

use std::cmp::Ordering;
use std::collections::BinaryHeap;
use std::io::Write;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::harmonic::{
    scan_criterion5, transport_by_automorphism, DiskAutomorphism, HarmonicMap, LiftVerifyOpts,
};
use crate::nehari::{extremal_g, ExtremalProfile, NehariFunction, NehariKind, ProfileKind};
use crate::numerics::jet3_fd;
use crate::report::{CoveringReport, SCHEMA_VERSION};
use crate::util::par_map;

/// Neighbor stencil: one representative per direction class; all eight
/// sign/swap images are generated.
const STENCIL_CLASSES: [(i32, i32); 5] = [(1, 0), (1, 1), (2, 1), (3, 1), (3, 2)];

fn stencil_offsets() -> Vec<(i32, i32)> {
    let mut out = Vec::with_capacity(32);
    for &(a, b) in &STENCIL_CLASSES {
        for &(dx, dy) in &[
            (a, b),
            (b, a),
            (-a, b),
            (-b, a),
            (a, -b),
            (b, -a),
            (-a, -b),
            (-b, -a),
        ] {
            if !out.contains(&(dx, dy)) {
                out.push((dx, dy));
            }
        }
    }
    out
}

/// Disk lattice carrying a conformal density and precomputed edge weights.
pub struct ConformalGrid {
    r_max: f64,
    n: usize,
    h: f64,
    /// cell (row-major) -> node id, or u32::MAX outside the disk cut.
    node_of_cell: Vec<u32>,
    coords: Vec<Complex64>,
    lambda: Vec<f64>,
    offsets: Vec<u32>,
    targets: Vec<u32>,
    weights: Vec<f64>,
}

impl ConformalGrid {
    /// Build the lattice for a density; `n` nodes per side (made odd so the
    /// origin is a node), clipped to |z| <= r_max.
    pub fn build(
        density: &(dyn Fn(Complex64) -> Result<f64> + Sync),
        n: usize,
        r_max: f64,
    ) -> Result<Self> {
        if !(0.0..1.0).contains(&r_max) || r_max == 0.0 {
            return Err(Error::InvalidInput(format!(
                "r_max = {r_max} must lie in (0,1)"
            )));
        }
        let n = if n.is_multiple_of(2) { n + 1 } else { n }.max(21);
        let half = (n / 2) as i32;
        let h = r_max / half as f64;

        let mut node_of_cell = vec![u32::MAX; n * n];
        let mut coords = Vec::new();
        for j in 0..n as i32 {
            for i in 0..n as i32 {
                let z = Complex64::new((i - half) as f64 * h, (j - half) as f64 * h);
                if z.norm_sqr() <= r_max * r_max + 1e-15 {
                    node_of_cell[(j * n as i32 + i) as usize] = coords.len() as u32;
                    coords.push(z);
                }
            }
        }
        let lambda_res = par_map(&coords, |&z| density(z));
        let mut lambda = Vec::with_capacity(coords.len());
        for (z, l) in coords.iter().zip(lambda_res) {
            let l = l?;
            if !(l.is_finite() && l > 0.0) {
                return Err(Error::ZeroConformalFactor { z: *z });
            }
            lambda.push(l);
        }

        let stencil = stencil_offsets();
        let cell_of = |z: Complex64| -> (i32, i32) {
            (
                ((z.re / h).round() as i32) + half,
                ((z.im / h).round() as i32) + half,
            )
        };
        // Per-node adjacency, then flattened to CSR.
        let ids: Vec<u32> = (0..coords.len() as u32).collect();
        let adjacency = par_map(&ids, |&id| {
            let z = coords[id as usize];
            let (ci, cj) = cell_of(z);
            let mut out: Vec<(u32, f64)> = Vec::with_capacity(stencil.len());
            for &(dx, dy) in &stencil {
                let (ti, tj) = (ci + dx, cj + dy);
                if ti < 0 || tj < 0 || ti >= n as i32 || tj >= n as i32 {
                    continue;
                }
                let t = node_of_cell[(tj * n as i32 + ti) as usize];
                if t == u32::MAX {
                    continue;
                }
                let zt = coords[t as usize];
                let mid = 0.5 * (z + zt);
                let lm = match density(mid) {
                    Ok(v) => v,
                    Err(_) => 0.5 * (lambda[id as usize] + lambda[t as usize]),
                };
                let len = (zt - z).norm();
                let w = len * (lambda[id as usize] + 4.0 * lm + lambda[t as usize]) / 6.0;
                out.push((t, w));
            }
            out
        });

        let mut offsets = Vec::with_capacity(coords.len() + 1);
        let mut targets = Vec::new();
        let mut weights = Vec::new();
        offsets.push(0u32);
        for adj in adjacency {
            for (t, w) in adj {
                targets.push(t);
                weights.push(w);
            }
            offsets.push(targets.len() as u32);
        }
        Ok(ConformalGrid {
            r_max,
            n,
            h,
            node_of_cell,
            coords,
            lambda,
            offsets,
            targets,
            weights,
        })
    }

    /// Euclidean-density grid, used for per-run calibration.
    pub fn build_unit(n: usize, r_max: f64) -> Result<Self> {
        ConformalGrid::build(&|_z| Ok(1.0), n, r_max)
    }

    pub fn node_count(&self) -> usize {
        self.coords.len()
    }

    pub fn spacing(&self) -> f64 {
        self.h
    }

    pub fn r_max(&self) -> f64 {
        self.r_max
    }

    pub fn node_pos(&self, id: usize) -> Complex64 {
        self.coords[id]
    }

    pub fn node_lambda(&self, id: usize) -> f64 {
        self.lambda[id]
    }

    /// Node nearest to z; OutOfGrid beyond the radius cut plus half a cell.
    pub fn nearest_node(&self, z: Complex64) -> Result<usize> {
        if z.norm() > self.r_max + 0.5 * self.h {
            return Err(Error::OutOfGrid {
                z,
                r_max: self.r_max,
            });
        }
        let half = (self.n / 2) as i32;
        let (ci, cj) = (
            ((z.re / self.h).round() as i32) + half,
            ((z.im / self.h).round() as i32) + half,
        );
        let mut best: Option<(f64, u32)> = None;
        for dj in -1..=1 {
            for di in -1..=1 {
                let (i, j) = (ci + di, cj + dj);
                if i < 0 || j < 0 || i >= self.n as i32 || j >= self.n as i32 {
                    continue;
                }
                let id = self.node_of_cell[(j * self.n as i32 + i) as usize];
                if id == u32::MAX {
                    continue;
                }
                let d = (self.coords[id as usize] - z).norm();
                if best.is_none_or(|(bd, _)| d < bd) {
                    best = Some((d, id));
                }
            }
        }
        best.map(|(_, id)| id as usize).ok_or(Error::OutOfGrid {
            z,
            r_max: self.r_max,
        })
    }

    pub fn center_node(&self) -> Result<usize> {
        self.nearest_node(Complex64::ZERO)
    }

    /// All nodes within half a cell of the circle |z| = r.
    pub fn ring_nodes(&self, r: f64) -> Vec<usize> {
        self.coords
            .iter()
            .enumerate()
            .filter(|(_, z)| (z.norm() - r).abs() <= 0.5 * self.h)
            .map(|(i, _)| i)
            .collect()
    }

    /// Single-source shortest-path lengths over the weighted graph.
    pub fn dijkstra(&self, src: usize) -> Vec<f64> {
        #[derive(Copy, Clone, PartialEq)]
        struct State {
            cost: f64,
            node: u32,
        }
        impl Eq for State {}
        impl Ord for State {
            fn cmp(&self, other: &Self) -> Ordering {
                // reversed for a min-heap
                other
                    .cost
                    .partial_cmp(&self.cost)
                    .unwrap_or(Ordering::Equal)
            }
        }
        impl PartialOrd for State {
            fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
                Some(self.cmp(other))
            }
        }

        let mut dist = vec![f64::INFINITY; self.coords.len()];
        let mut heap = BinaryHeap::with_capacity(self.coords.len());
        dist[src] = 0.0;
        heap.push(State {
            cost: 0.0,
            node: src as u32,
        });
        while let Some(State { cost, node }) = heap.pop() {
            let u = node as usize;
            if cost > dist[u] {
                continue;
            }
            let (lo, hi) = (self.offsets[u] as usize, self.offsets[u + 1] as usize);
            for e in lo..hi {
                let v = self.targets[e] as usize;
                let next = cost + self.weights[e];
                if next < dist[v] {
                    dist[v] = next;
                    heap.push(State {
                        cost: next,
                        node: v as u32,
                    });
                }
            }
        }
        dist
    }

    /// Shortest-path estimate of the conformal distance between two points
    /// (snapped to their nearest nodes).
    pub fn distance(&self, z1: Complex64, z2: Complex64) -> Result<f64> {
        let a = self.nearest_node(z1)?;
        let b = self.nearest_node(z2)?;
        if a == b {
            return Ok(0.0);
        }
        let d = self.dijkstra(a)[b];
        if !d.is_finite() {
            return Err(Error::Disconnected);
        }
        Ok(d)
    }

    /// CSV dump of the distance field from a source node: x, y, rho.
    pub fn write_distance_field_csv(&self, dist: &[f64], mut w: impl Write) -> Result<()> {
        writeln!(w, "x,y,rho")?;
        for (z, d) in self.coords.iter().zip(dist) {
            writeln!(w, "{:.17e},{:.17e},{:.17e}", z.re, z.im, d)?;
        }
        Ok(())
    }
}

/// Covering bound H(r) = lambda(0) G(r) / (1 + |sigma_z(0)| G(r)).
pub fn h_bound(
    g_profile: &ExtremalProfile,
    lambda0: f64,
    sigma_z0_abs: f64,
    r: f64,
) -> Result<f64> {
    if g_profile.kind() != ProfileKind::GProfile {
        return Err(Error::InvalidInput("h_bound wants a G profile".into()));
    }
    if !(0.0..1.0).contains(&r) {
        return Err(Error::DomainError {
            x: r,
            domain: "[0, 1)",
        });
    }
    if !lambda0.is_finite() || lambda0 <= 0.0 {
        return Err(Error::InvalidInput(format!(
            "lambda0 = {lambda0} must be positive"
        )));
    }
    if sigma_z0_abs < 0.0 {
        return Err(Error::InvalidInput(
            "sigma_z0_abs must be nonnegative".into(),
        ));
    }
    let g = g_profile.eval_f(r)?;
    Ok(lambda0 * g / (1.0 + sigma_z0_abs * g))
}

/// G at the r -> 1 limit: exact 1/sqrt(2) for the classical weight, the
/// grid-edge value otherwise (an underestimate, hence a safe bound).
fn g_limit(g_profile: &ExtremalProfile) -> Result<f64> {
    if g_profile.p().kind() == NehariKind::ClassicalNehari
        && (g_profile.p().scale_factor() - 1.0).abs() < 1e-12
    {
        Ok(std::f64::consts::FRAC_1_SQRT_2)
    } else {
        g_profile.eval_f(g_profile.x_max())
    }
}

/// Options for the covering verifiers.
#[derive(Debug, Clone, Copy)]
pub struct CoveringOpts {
    pub grid_n: usize,
    pub grid_r_max: f64,
    pub profile_eps: f64,
    pub profile_tol: f64,
    pub lift: LiftVerifyOpts,
}

impl Default for CoveringOpts {
    fn default() -> Self {
        CoveringOpts {
            grid_n: 401,
            grid_r_max: 0.995,
            profile_eps: 1e-4,
            profile_tol: 1e-11,
            lift: LiftVerifyOpts::default(),
        }
    }
}

/// Calibrated ring error: the Euclidean-oracle deviation of the same
/// measurement pipeline (center Dijkstra, ring minimum) at each radius.
pub fn calibrate_ring_error(unit_grid: &ConformalGrid, radii: &[f64]) -> Result<Vec<f64>> {
    let dist = unit_grid.dijkstra(unit_grid.center_node()?);
    radii
        .iter()
        .map(|&r| {
            let ring = unit_grid.ring_nodes(r);
            if ring.is_empty() {
                return Err(Error::InvalidInput(format!("radius {r} has no ring nodes")));
            }
            let measured = ring.iter().map(|&i| dist[i]).fold(f64::INFINITY, f64::min);
            Ok((measured - r).abs())
        })
        .collect()
}

fn ring_minimum(grid: &ConformalGrid, dist: &[f64], r: f64) -> Result<f64> {
    let ring = grid.ring_nodes(r);
    if ring.is_empty() {
        return Err(Error::InvalidInput(format!("radius {r} has no ring nodes")));
    }
    let m = ring.iter().map(|&i| dist[i]).fold(f64::INFINITY, f64::min);
    if !m.is_finite() {
        return Err(Error::Disconnected);
    }
    Ok(m)
}

/// Theorem-4 check: for each radius, the measured minimal surface distance
/// from the lift of 0 to the lift of the circle |z| = r dominates H(r) up to
/// the calibrated grid allowance.
pub fn verify_theorem4(
    f: &HarmonicMap,
    p: &NehariFunction,
    radii: &[f64],
    opts: &CoveringOpts,
) -> Result<CoveringReport> {
    p.require_nehari(opts.profile_eps)?;
    p.require_monotone(opts.profile_eps)?;
    scan_criterion5(f, p, &opts.lift)?;
    let g_profile = extremal_g(p, opts.profile_eps, opts.profile_tol)?;

    let lambda0 = f.lambda(Complex64::ZERO)?;
    let sigma0 = f.sigma_z(Complex64::ZERO)?.norm();

    let grid = ConformalGrid::build(&|z| f.lambda(z), opts.grid_n, opts.grid_r_max)?;
    let dist = grid.dijkstra(grid.center_node()?);
    let unit = ConformalGrid::build_unit(opts.grid_n, opts.grid_r_max)?;
    let unit_err = calibrate_ring_error(&unit, radii)?;

    let mut measured = Vec::new();
    let mut bounds = Vec::new();
    let mut margins = Vec::new();
    let mut allowance = Vec::new();
    for (i, &r) in radii.iter().enumerate() {
        let m = ring_minimum(&grid, &dist, r)?;
        let b = h_bound(&g_profile, lambda0, sigma0, r)?;
        measured.push(m);
        bounds.push(b);
        margins.push(m - b);
        allowance.push(2.0 * unit_err[i] * b / r);
    }
    let g1 = g_limit(&g_profile)?;
    let covering_radius_r = lambda0 * g1 / (1.0 + sigma0 * g1);
    Ok(CoveringReport {
        schema: SCHEMA_VERSION,
        theorem: "theorem4".into(),
        map: f.label().into(),
        p_kind: p.label().into(),
        hypothesis_ok: true,
        radii: radii.to_vec(),
        measured_min_rho: measured,
        h_bound: bounds,
        margins,
        allowance,
        covering_radius_r,
        sigma_z0_abs: sigma0,
        lambda0,
        grid_nodes_per_side: opts.grid_n,
        alpha: [0.0, 0.0],
    })
}

/// Corollary-16 check (classical weight only): the minimum of rho over the
/// Mobius circle |(z-alpha)/(1-conj(alpha) z)| = r dominates
/// (1-|a|^2) lambda(a) G(r) / (1 + |(1-|a|^2) sigma_z(a) - conj(a)| G(r)).
/// Implemented by transporting f by the disk automorphism and measuring at
/// the origin of the transported map.
pub fn verify_corollary16(
    f: &HarmonicMap,
    alpha: Complex64,
    radii: &[f64],
    opts: &CoveringOpts,
) -> Result<CoveringReport> {
    let p = NehariFunction::classical();
    let t = DiskAutomorphism::new(alpha, 0.0)?;
    let f1 = transport_by_automorphism(f, &t);
    scan_criterion5(&f1, &p, &opts.lift)?;
    let g_profile = extremal_g(&p, opts.profile_eps, opts.profile_tol)?;

    // Invariant-formulation data computed from the original map.
    let lambda1 = (1.0 - alpha.norm_sqr()) * f.lambda(alpha)?;
    let sigma1 = ((1.0 - alpha.norm_sqr()) * f.sigma_z(alpha)? - alpha.conj()).norm();

    let grid = ConformalGrid::build(&|z| f1.lambda(z), opts.grid_n, opts.grid_r_max)?;
    let dist = grid.dijkstra(grid.center_node()?);
    let unit = ConformalGrid::build_unit(opts.grid_n, opts.grid_r_max)?;
    let unit_err = calibrate_ring_error(&unit, radii)?;

    let mut measured = Vec::new();
    let mut bounds = Vec::new();
    let mut margins = Vec::new();
    let mut allowance = Vec::new();
    for (i, &r) in radii.iter().enumerate() {
        let m = ring_minimum(&grid, &dist, r)?;
        let g = g_profile.eval_f(r)?;
        let b = lambda1 * g / (1.0 + sigma1 * g);
        measured.push(m);
        bounds.push(b);
        margins.push(m - b);
        allowance.push(2.0 * unit_err[i] * b / r);
    }
    let g1 = g_limit(&g_profile)?;
    let covering_radius_r = lambda1 * g1 / (1.0 + sigma1 * g1);
    Ok(CoveringReport {
        schema: SCHEMA_VERSION,
        theorem: "corollary16".into(),
        map: f.label().into(),
        p_kind: p.label().into(),
        hypothesis_ok: true,
        radii: radii.to_vec(),
        measured_min_rho: measured,
        h_bound: bounds,
        margins,
        allowance,
        covering_radius_r,
        sigma_z0_abs: sigma1,
        lambda0: lambda1,
        grid_nodes_per_side: opts.grid_n,
        alpha: [alpha.re, alpha.im],
    })
}

/// Arclength-parametrized curve in the disk with two derivatives.
#[derive(Clone)]
pub struct DiskCurve {
    eval: std::sync::Arc<dyn Fn(f64) -> (Complex64, Complex64, Complex64) + Send + Sync>,
    label: String,
}

impl std::fmt::Debug for DiskCurve {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("DiskCurve")
            .field("label", &self.label)
            .finish()
    }
}

impl DiskCurve {
    pub fn from_fn(
        label: impl Into<String>,
        eval: impl Fn(f64) -> (Complex64, Complex64, Complex64) + Send + Sync + 'static,
    ) -> Self {
        DiskCurve {
            eval: std::sync::Arc::new(eval),
            label: label.into(),
        }
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn eval(&self, t: f64) -> (Complex64, Complex64, Complex64) {
        (self.eval)(t)
    }

    /// The real diameter t -> t; unit speed, zero curvature.
    pub fn diameter() -> Self {
        DiskCurve::from_fn("diameter", |t| {
            (Complex64::new(t, 0.0), Complex64::ONE, Complex64::ZERO)
        })
    }

    /// Unit-speed circle of the given radius about 0; curvature 1/radius.
    pub fn circle(radius: f64) -> Self {
        DiskCurve::from_fn(format!("circle[{radius}]"), move |t| {
            let w = Complex64::from_polar(radius, t / radius);
            let d1 = Complex64::i() * w / radius;
            let d2 = -w / (radius * radius);
            (w, d1, d2)
        })
    }
}

/// W along the radial path by a fixed composite Gauss rule. The adaptive
/// quadrature's subdivision choices jump between nearby arguments, which is
/// fatal under third-order differencing; fixed nodes vary smoothly with z
/// and the analytic integrand makes the rule exact to machine precision.
fn lift_w_smooth(f: &HarmonicMap, z: Complex64) -> f64 {
    let segments = 8;
    let mut total = Complex64::ZERO;
    for k in 0..segments {
        let (a, b) = (k as f64 / segments as f64, (k + 1) as f64 / segments as f64);
        let re =
            crate::numerics::gauss7(&|t| (f.h_jet(t * z).d1 * f.q_jet(t * z).value * z).re, a, b);
        let im =
            crate::numerics::gauss7(&|t| (f.h_jet(t * z).d1 * f.q_jet(t * z).value * z).im, a, b);
        total += Complex64::new(re, im);
    }
    2.0 * total.im
}

/// Residual of the lift-Schwarzian identity
/// S1 phi = Re{Sf(gamma) gamma'^2} + (1/2) lambda^2 (k_e^2 + |K|) + (1/2) kappa^2,
/// with the left side measured from a finite-difference 3-jet of the lifted
/// curve and k_e extracted through the surface normal (cross product of the
/// coordinate tangents of the lift). The Gauss curvature enters through its
/// magnitude: minimal surfaces have K <= 0, and the magnitude reading is the
/// one consistent with both the arclength decomposition of S1 and the
/// curve-lift bound S1 <= |Sf| + lambda^2 |K| that the criterion rests on.
pub fn lemma12_residual(f: &HarmonicMap, gamma: &DiskCurve, t: f64) -> Result<f64> {
    let (z, dz, ddz) = gamma.eval(t);
    if (dz.norm() - 1.0).abs() > 1e-9 {
        return Err(Error::InvalidInput(format!(
            "curve {} is not unit-speed at t = {t} (|gamma'| = {})",
            gamma.label(),
            dz.norm()
        )));
    }
    let kappa = ddz.norm();

    // Left side: FD jet of the lifted curve.
    let lift_coords = |s: f64| -> Vec<f64> {
        let (w, _, _) = gamma.eval(s);
        let fv = f.f_value(w);
        vec![fv.re, fv.im, lift_w_smooth(f, w)]
    };
    let jet = jet3_fd(&lift_coords, t, 5e-3)?;
    let s1 = crate::curves::ahlfors_s1_jet(&jet)?;

    // Right side from the analytic surface data at gamma(t).
    let sf = f.schwarzian(z)?;
    let lambda = f.lambda(z)?;
    let k = f.gauss_curvature(z)?;
    let h1 = f.h_jet(z).d1;
    let g1 = f.g_jet(z).d1;
    let q = f.q_jet(z).value;
    let fx = h1 + g1.conj();
    let fy = Complex64::i() * (h1 - g1.conj());
    let p1 = h1 * q; // W_x = 2 Im(h'q), W_y = 2 Re(h'q)
    let tx = [fx.re, fx.im, 2.0 * p1.im];
    let ty = [fy.re, fy.im, 2.0 * p1.re];
    let normal = [
        tx[1] * ty[2] - tx[2] * ty[1],
        tx[2] * ty[0] - tx[0] * ty[2],
        tx[0] * ty[1] - tx[1] * ty[0],
    ];
    let nlen = (normal[0] * normal[0] + normal[1] * normal[1] + normal[2] * normal[2]).sqrt();
    if nlen < 1e-20 {
        return Err(Error::ZeroConformalFactor { z });
    }
    let speed2: f64 = jet.d1.iter().map(|v| v * v).sum();
    let acc_dot_n: f64 = jet
        .d2
        .iter()
        .zip(&normal)
        .map(|(a, nc)| a * nc / nlen)
        .sum();
    let k_e = acc_dot_n / speed2;

    let rhs =
        (sf * dz * dz).re + 0.5 * lambda * lambda * (k_e * k_e + k.abs()) + 0.5 * kappa * kappa;
    Ok((s1 - rhs).abs())
}
