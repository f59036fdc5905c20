//! Machine-readable verification reports.
//!
//! Every verifier produces one of these; the JSON layout is versioned through
//! the `schema` field so downstream CI can pin it.

use serde::{Deserialize, Serialize};
use std::io::Write;

use crate::error::Result;

pub const SCHEMA_VERSION: u32 = 1;

/// Where a sample was taken.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", content = "at")]
pub enum Site {
    /// Single abscissa on (-1, 1).
    X(f64),
    /// Abscissa pair.
    Pair(f64, f64),
    /// Point of the disk (re, im).
    Z([f64; 2]),
    /// Pair of disk points.
    ZPair([f64; 2], [f64; 2]),
}

impl std::fmt::Display for Site {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Site::X(x) => write!(f, "x = {x}"),
            Site::Pair(a, b) => write!(f, "(x1, x2) = ({a}, {b})"),
            Site::Z(z) => write!(f, "z = {} + {}i", z[0], z[1]),
            Site::ZPair(a, b) => {
                write!(f, "(z1, z2) = ({} + {}i, {} + {}i)", a[0], a[1], b[0], b[1])
            }
        }
    }
}

/// One verified inequality instance. `lhs` is the side the theorem asserts to
/// be at least `rhs`; `margin = lhs - rhs`, so nonnegative means satisfied.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct MarginSample {
    pub site: Site,
    pub lhs: f64,
    pub rhs: f64,
    pub margin: f64,
}

/// Report of a two-point / pointwise distortion sweep.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct DistortionReport {
    pub schema: u32,
    pub theorem: String,
    pub p_kind: String,
    /// Sampled-hypothesis status: the precondition held on the scan grid.
    pub hypothesis_ok: bool,
    /// Worst hypothesis slack observed during the scan (min of 2p - S1).
    pub hypothesis_min_slack: f64,
    /// Set when a non-extremal p was rescaled to c* p before profiling.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub rescaled_c: Option<f64>,
    pub samples: Vec<MarginSample>,
    pub min_margin: f64,
    pub worst_site: Site,
}

impl DistortionReport {
    pub fn from_samples(
        theorem: impl Into<String>,
        p_kind: impl Into<String>,
        hypothesis_min_slack: f64,
        samples: Vec<MarginSample>,
    ) -> Self {
        let (mut min_margin, mut worst_site) = (f64::INFINITY, Site::X(0.0));
        for s in &samples {
            if s.margin < min_margin {
                min_margin = s.margin;
                worst_site = s.site.clone();
            }
        }
        DistortionReport {
            schema: SCHEMA_VERSION,
            theorem: theorem.into(),
            p_kind: p_kind.into(),
            hypothesis_ok: true,
            hypothesis_min_slack,
            rescaled_c: None,
            samples,
            min_margin,
            worst_site,
        }
    }

    /// All margins at least -tol (float-noise band).
    pub fn passes(&self, tol: f64) -> bool {
        self.min_margin >= -tol
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serialization cannot fail")
    }

    pub fn write_csv(&self, mut w: impl Write) -> Result<()> {
        writeln!(w, "site,lhs,rhs,margin")?;
        for s in &self.samples {
            writeln!(
                w,
                "\"{}\",{:.17e},{:.17e},{:.17e}",
                s.site, s.lhs, s.rhs, s.margin
            )?;
        }
        Ok(())
    }
}

/// Report of a covering / surface-metric sweep (Theorem 4 and Corollary 16).
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CoveringReport {
    pub schema: u32,
    pub theorem: String,
    pub map: String,
    pub p_kind: String,
    pub hypothesis_ok: bool,
    pub radii: Vec<f64>,
    /// min over the |z| = r ring of the grid distance to the center.
    pub measured_min_rho: Vec<f64>,
    pub h_bound: Vec<f64>,
    pub margins: Vec<f64>,
    /// Calibrated grid allowance per radius (absolute, same units as rho).
    pub allowance: Vec<f64>,
    pub covering_radius_r: f64,
    pub sigma_z0_abs: f64,
    pub lambda0: f64,
    pub grid_nodes_per_side: usize,
    /// Mobius center for the invariant formulation; origin for Theorem 4.
    pub alpha: [f64; 2],
}

impl CoveringReport {
    /// Every margin within its allowance.
    pub fn passes(&self) -> bool {
        self.margins
            .iter()
            .zip(&self.allowance)
            .all(|(m, a)| *m >= -*a)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serialization cannot fail")
    }

    pub fn write_csv(&self, mut w: impl Write) -> Result<()> {
        writeln!(w, "r,measured_min_rho,h_bound,margin,allowance")?;
        for i in 0..self.radii.len() {
            writeln!(
                w,
                "{:.17e},{:.17e},{:.17e},{:.17e},{:.17e}",
                self.radii[i],
                self.measured_min_rho[i],
                self.h_bound[i],
                self.margins[i],
                self.allowance[i]
            )?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn worst_site_attains_min_margin() {
        let samples = vec![
            MarginSample {
                site: Site::X(0.1),
                lhs: 1.0,
                rhs: 0.5,
                margin: 0.5,
            },
            MarginSample {
                site: Site::X(0.7),
                lhs: 1.0,
                rhs: 1.2,
                margin: -0.2,
            },
            MarginSample {
                site: Site::X(0.9),
                lhs: 1.0,
                rhs: 0.9,
                margin: 0.1,
            },
        ];
        let r = DistortionReport::from_samples("theorem2", "classical_nehari", 0.3, samples);
        assert_eq!(r.min_margin, -0.2);
        assert_eq!(r.worst_site, Site::X(0.7));
        assert!(!r.passes(1e-9));
    }

    #[test]
    fn json_round_trip() {
        let samples = vec![MarginSample {
            site: Site::Pair(0.1, -0.4),
            lhs: 2.0,
            rhs: 1.0,
            margin: 1.0,
        }];
        let r = DistortionReport::from_samples("theorem2", "constant_pi2", 1.0, samples);
        let back: DistortionReport = serde_json::from_str(&r.to_json()).unwrap();
        assert_eq!(back.schema, SCHEMA_VERSION);
        assert_eq!(back.worst_site, Site::Pair(0.1, -0.4));
    }
}
