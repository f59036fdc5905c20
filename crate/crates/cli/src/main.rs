//! sdl: command-line front end for the Schwarzian distortion toolkit.
//!
//! Subcommands: `profile` (compute F/G profiles with closed-form deviation
//! stats), `verify` (run a theorem check and exit 0/1/2/3/4), and `lift-mesh`
//! (export a lifted-surface OBJ with per-vertex attributes).
//!
//! Exit codes: 0 pass, 1 margin violation, 2 configuration error,
//! 3 numerical failure, 4 hypothesis failure (inequality not challenged).
//!
//! Environment: SDL_THREADS overrides the worker count, SDL_EPS the domain
//! cut used for profiles.

use std::fs;
use std::io::Write;
use std::path::PathBuf;

use clap::{Parser, Subcommand};
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use sdl_core::curves::{
    self, injectivity_probe, normalize_curve, verify_theorem1, verify_theorem2, CurveJet,
    VerifyOpts,
};
use sdl_core::harmonic::{catalog, verify_theorem3, HarmonicMap, LiftVerifyOpts};
use sdl_core::metric::{verify_corollary16, verify_theorem4, CoveringOpts};
use sdl_core::nehari::{
    closed_form_f, closed_form_g_classical, extremal_f, extremal_g, NehariFlags, NehariFunction,
    NehariKind,
};
use sdl_core::report::SCHEMA_VERSION;
use sdl_core::util::{domain_cut_or, linspace};
use sdl_core::Error;

#[derive(Parser)]
#[command(name = "sdl", version, about = "Schwarzian distortion toolkit")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Compute the F and G profiles of a weight and export them as CSV.
    Profile {
        /// Builtin weight: classical | pi2 | pokornyi.
        #[arg(long, default_value = "classical")]
        p: String,
        /// Custom weight file: whitespace-separated even-power coefficients
        /// a0 a1 a2 ... meaning p(x) = a0 + a1 x^2 + a2 x^4 + ...
        #[arg(long)]
        p_file: Option<PathBuf>,
        /// Output CSV path (x, uF, duF, F, dF, uG, duG, G, dG).
        #[arg(long)]
        out: Option<PathBuf>,
        /// JSON summary path.
        #[arg(long)]
        summary: Option<PathBuf>,
        #[arg(long, default_value_t = 801)]
        nodes: usize,
        /// Domain cut; SDL_EPS overrides.
        #[arg(long)]
        eps: Option<f64>,
        #[arg(long, default_value_t = 1e-10)]
        tol: f64,
    },
    /// Run a theorem verification campaign.
    Verify {
        /// 1 | 2 | 3 | 4 | corollary | a-probe
        #[arg(long)]
        theorem: String,
        /// Curve name (theorems 1, 2, a-probe) or harmonic map name (3, 4,
        /// corollary). Curves: line_F, line, circle_arc, tanh_line, helix,
        /// twisted_cubic, log_spiral, exp_line, trig_poly, sine_fold.
        /// Maps: identity, log_mobius, enneper_eps, gstar, koebe.
        #[arg(long)]
        map: String,
        /// Polynomial harmonic map file (JSON with coefficient pairs:
        /// `{"h": [[re,im],..], "g": [..], "q": [..]}`).
        #[arg(long)]
        map_file: Option<PathBuf>,
        #[arg(long, default_value = "classical")]
        p: String,
        #[arg(long)]
        p_file: Option<PathBuf>,
        /// Number of random two-point pairs (theorems 2 and 3).
        #[arg(long, default_value_t = 200)]
        pairs: usize,
        /// Sample count for the injectivity probe.
        #[arg(long, default_value_t = 500)]
        samples: usize,
        #[arg(long, default_value_t = 42)]
        seed: u64,
        /// Comma-separated radii for theorem 4 / corollary.
        #[arg(long, default_value = "0.3,0.6,0.9")]
        radii: String,
        /// Mobius center for the corollary as re,im.
        #[arg(long, default_value = "0,0")]
        alpha: String,
        /// Grid nodes per side for the surface-metric checks.
        #[arg(long, default_value_t = 401)]
        grid_n: usize,
        /// Enneper parameter for enneper_eps.
        #[arg(long, default_value_t = std::f64::consts::FRAC_1_SQRT_2)]
        enneper: f64,
        /// Margin tolerance separating float noise from violations.
        #[arg(long, default_value_t = 1e-9)]
        margin_tol: f64,
        #[arg(long)]
        out: Option<PathBuf>,
        /// json | csv
        #[arg(long, default_value = "json")]
        format: String,
    },
    /// Export the Weierstrass-Enneper lift of a map as a triangulated OBJ.
    LiftMesh {
        #[arg(long)]
        map: String,
        #[arg(long)]
        map_file: Option<PathBuf>,
        #[arg(long, default_value_t = std::f64::consts::FRAC_1_SQRT_2)]
        enneper: f64,
        #[arg(long, default_value_t = 24)]
        rings: usize,
        #[arg(long, default_value_t = 48)]
        sectors: usize,
        #[arg(long, default_value_t = 0.95)]
        rmax: f64,
        /// Weight for the per-vertex criterion margin attribute.
        #[arg(long, default_value = "classical")]
        p: String,
        #[arg(long)]
        out: PathBuf,
        /// Sidecar CSV with per-vertex lambda, K, margin.
        #[arg(long)]
        attributes: Option<PathBuf>,
    },
}

fn main() {
    let cli = Cli::parse();
    let code = match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("sdl: {e}");
            exit_code_for(&e)
        }
    };
    std::process::exit(code);
}

fn exit_code_for(e: &Error) -> i32 {
    match e {
        Error::HypothesisFailed { .. } => 4,
        // A weight that is not disconjugate is inadmissible input, not a
        // breakdown of the numerics.
        Error::UnknownKind { .. }
        | Error::InvalidInput(_)
        | Error::Io(_)
        | Error::NotOrthogonal
        | Error::DoubleZeroDetected { .. }
        | Error::ScanBaseFails => 2,
        _ => 3,
    }
}

/// Wrapper adding run metadata to a serializable report.
#[derive(Serialize)]
struct RunReport<T: Serialize> {
    schema: u32,
    generated_unix: u64,
    seed: Option<u64>,
    report: T,
}

fn now_unix() -> u64 {
    std::time::SystemTime::now()
        .duration_since(std::time::UNIX_EPOCH)
        .map(|d| d.as_secs())
        .unwrap_or(0)
}

fn write_or_print(path: &Option<PathBuf>, content: &str) -> sdl_core::Result<()> {
    match path {
        Some(p) => fs::write(p, content).map_err(Error::from),
        None => {
            println!("{content}");
            Ok(())
        }
    }
}

fn parse_weight(p: &str, p_file: &Option<PathBuf>) -> sdl_core::Result<NehariFunction> {
    if let Some(path) = p_file {
        let text = fs::read_to_string(path)?;
        let coeffs: Vec<f64> = text
            .split_whitespace()
            .map(|t| {
                t.parse::<f64>()
                    .map_err(|e| Error::InvalidInput(format!("bad coefficient `{t}`: {e}")))
            })
            .collect::<sdl_core::Result<_>>()?;
        if coeffs.is_empty() {
            return Err(Error::InvalidInput("p file holds no coefficients".into()));
        }
        let eval = move |x: f64| {
            let x2 = x * x;
            coeffs.iter().rev().fold(0.0, |acc, c| acc * x2 + c)
        };
        let candidate =
            NehariFunction::custom(format!("file:{}", path.display()), NehariFlags::ALL, eval)
                .map_err(|_| Error::InvalidInput("p must be positive".into()))?;
        let rep = candidate.verify_flags(1e-3, 512);
        if !rep.positive_ok {
            return Err(Error::InvalidInput("p must be positive".into()));
        }
        if !rep.all_ok() {
            eprintln!("sdl: note: weight fails a structural check on the grid: {rep:?}");
        }
        return Ok(candidate);
    }
    NehariFunction::builtin(p)
}

fn parse_radii(radii: &str) -> sdl_core::Result<Vec<f64>> {
    radii
        .split(',')
        .map(|t| {
            t.trim()
                .parse::<f64>()
                .map_err(|e| Error::InvalidInput(format!("bad radius `{t}`: {e}")))
        })
        .collect()
}

fn parse_complex(text: &str) -> sdl_core::Result<Complex64> {
    let parts: Vec<&str> = text.split(',').collect();
    if parts.len() != 2 {
        return Err(Error::InvalidInput(format!(
            "expected re,im - got `{text}`"
        )));
    }
    let re = parts[0]
        .trim()
        .parse::<f64>()
        .map_err(|e| Error::InvalidInput(e.to_string()))?;
    let im = parts[1]
        .trim()
        .parse::<f64>()
        .map_err(|e| Error::InvalidInput(e.to_string()))?;
    Ok(Complex64::new(re, im))
}

fn harmonic_map(
    name: &str,
    map_file: &Option<PathBuf>,
    enneper: f64,
) -> sdl_core::Result<HarmonicMap> {
    if let Some(path) = map_file {
        #[derive(serde::Deserialize)]
        struct MapSpec {
            h: Vec<[f64; 2]>,
            #[serde(default)]
            g: Vec<[f64; 2]>,
            #[serde(default)]
            q: Option<Vec<[f64; 2]>>,
        }
        let text = fs::read_to_string(path)?;
        let spec: MapSpec = serde_json::from_str(&text)
            .map_err(|e| Error::InvalidInput(format!("bad map file: {e}")))?;
        let cc = |v: &[[f64; 2]]| -> Vec<Complex64> {
            v.iter().map(|c| Complex64::new(c[0], c[1])).collect()
        };
        return HarmonicMap::polynomial(
            format!("file:{}", path.display()),
            cc(&spec.h),
            cc(&spec.g),
            spec.q.as_deref().map(cc),
        );
    }
    catalog::by_name(name, enneper)
}

fn curve_by_name(name: &str, p: &NehariFunction, eps: f64) -> sdl_core::Result<CurveJet> {
    match name {
        "line_F" => {
            let prof = extremal_f(p, eps, 1e-12)?;
            CurveJet::profile_line(&prof, 2)
        }
        "line" => Ok(CurveJet::line(vec![0.0, 0.0], vec![1.0, 0.0])),
        "circle_arc" => Ok(CurveJet::circle_arc()),
        "tanh_line" => Ok(CurveJet::tanh_line()),
        "helix" => Ok(CurveJet::helix(0.5)),
        "twisted_cubic" => Ok(CurveJet::twisted_cubic()),
        "log_spiral" => Ok(CurveJet::log_spiral(0.1)),
        "exp_line" => Ok(CurveJet::exp_line()),
        "trig_poly" => Ok(CurveJet::trig_poly()),
        "sine_fold" => Ok(CurveJet::sine_fold()),
        other => Err(Error::UnknownKind { name: other.into() }),
    }
}

fn run(cli: Cli) -> sdl_core::Result<i32> {
    match cli.cmd {
        Cmd::Profile {
            p,
            p_file,
            out,
            summary,
            nodes,
            eps,
            tol,
        } => cmd_profile(&p, &p_file, &out, &summary, nodes, eps, tol),
        Cmd::Verify {
            theorem,
            map,
            map_file,
            p,
            p_file,
            pairs,
            samples,
            seed,
            radii,
            alpha,
            grid_n,
            enneper,
            margin_tol,
            out,
            format,
        } => {
            let weight = parse_weight(&p, &p_file)?;
            let radii = parse_radii(&radii)?;
            let alpha = parse_complex(&alpha)?;
            match theorem.as_str() {
                "1" => cmd_verify_theorem1(&map, &weight, margin_tol, &out, &format),
                "2" => cmd_verify_theorem2(&map, &weight, pairs, seed, margin_tol, &out, &format),
                "3" => cmd_verify_theorem3(
                    &map, &map_file, enneper, &weight, pairs, seed, margin_tol, &out, &format,
                ),
                "4" => cmd_verify_theorem4(
                    &map, &map_file, enneper, &weight, &radii, grid_n, &out, &format,
                ),
                "corollary" => cmd_verify_corollary(
                    &map, &map_file, enneper, alpha, &radii, grid_n, &out, &format,
                ),
                "a-probe" | "A-probe" => cmd_probe(&map, &weight, samples, &out),
                other => Err(Error::InvalidInput(format!(
                    "unknown theorem `{other}` (expected 1|2|3|4|corollary|a-probe)"
                ))),
            }
        }
        Cmd::LiftMesh {
            map,
            map_file,
            enneper,
            rings,
            sectors,
            rmax,
            p,
            out,
            attributes,
        } => {
            let f = harmonic_map(&map, &map_file, enneper)?;
            let weight = NehariFunction::builtin(&p)?;
            cmd_lift_mesh(&f, &weight, rings, sectors, rmax, &out, &attributes)
        }
    }
}

#[allow(clippy::too_many_arguments)]
fn cmd_profile(
    p: &str,
    p_file: &Option<PathBuf>,
    out: &Option<PathBuf>,
    summary: &Option<PathBuf>,
    nodes: usize,
    eps: Option<f64>,
    tol: f64,
) -> sdl_core::Result<i32> {
    if tol <= 0.0 {
        return Err(Error::InvalidInput(format!("tol = {tol} must be positive")));
    }
    let weight = parse_weight(p, p_file)?;
    let eps = eps.unwrap_or_else(|| domain_cut_or(1e-3));
    let f = extremal_f(&weight, eps, tol)?;
    let g = extremal_g(&weight, eps, tol)?;

    let xs = linspace(-(1.0 - eps), 1.0 - eps, nodes.max(3));
    let mut csv = String::from("x,uF,duF,F,dF,uG,duG,G,dG\n");
    let mut f_dev: f64 = 0.0;
    let mut g_dev: f64 = 0.0;
    for &x in &xs {
        let (uf, duf) = f.base().eval(x)?;
        let (ug, dug) = g.base().eval(x)?;
        let fv = f.eval_f(x)?;
        let gv = g.eval_f(x)?;
        if let Some(cf) = closed_form_f(weight.kind(), x) {
            f_dev = f_dev.max((fv - cf).abs());
        }
        if weight.kind() == NehariKind::ClassicalNehari {
            g_dev = g_dev.max((gv - closed_form_g_classical(x)?).abs());
        }
        csv.push_str(&format!(
            "{x:.17e},{uf:.17e},{duf:.17e},{fv:.17e},{:.17e},{ug:.17e},{dug:.17e},{gv:.17e},{:.17e}\n",
            f.eval_df(x)?,
            g.eval_df(x)?
        ));
    }
    write_or_print(out, &csv)?;

    #[derive(Serialize)]
    struct ProfileSummary {
        schema: u32,
        generated_unix: u64,
        p_kind: String,
        eps: f64,
        tol: f64,
        nodes: usize,
        f_closed_form_max_dev: Option<f64>,
        g_closed_form_max_dev: Option<f64>,
    }
    let has_f_closed = closed_form_f(weight.kind(), 0.0).is_some();
    let summary_doc = ProfileSummary {
        schema: SCHEMA_VERSION,
        generated_unix: now_unix(),
        p_kind: weight.label().into(),
        eps,
        tol,
        nodes: xs.len(),
        f_closed_form_max_dev: has_f_closed.then_some(f_dev),
        g_closed_form_max_dev: (weight.kind() == NehariKind::ClassicalNehari).then_some(g_dev),
    };
    let text = serde_json::to_string_pretty(&summary_doc).expect("summary serializes");
    match summary {
        Some(_) => write_or_print(summary, &text)?,
        None => eprintln!("{text}"),
    }
    Ok(0)
}

fn finish_distortion(
    report: sdl_core::report::DistortionReport,
    seed: Option<u64>,
    margin_tol: f64,
    out: &Option<PathBuf>,
    format: &str,
) -> sdl_core::Result<i32> {
    let code = if report.passes(margin_tol) { 0 } else { 1 };
    match format {
        "json" => {
            let doc = RunReport {
                schema: SCHEMA_VERSION,
                generated_unix: now_unix(),
                seed,
                report: &report,
            };
            write_or_print(
                out,
                &serde_json::to_string_pretty(&doc).expect("report serializes"),
            )?;
        }
        "csv" => {
            let mut buf = Vec::new();
            report.write_csv(&mut buf)?;
            write_or_print(out, &String::from_utf8(buf).expect("csv is utf8"))?;
        }
        other => return Err(Error::InvalidInput(format!("unknown format `{other}`"))),
    }
    if code == 1 {
        eprintln!(
            "sdl: margin violation: min margin {} at {}",
            report.min_margin, report.worst_site
        );
    }
    Ok(code)
}

fn cmd_verify_theorem1(
    map: &str,
    weight: &NehariFunction,
    margin_tol: f64,
    out: &Option<PathBuf>,
    format: &str,
) -> sdl_core::Result<i32> {
    let eps = domain_cut_or(1e-3);
    let prof = extremal_f(weight, eps, 1e-12)?;
    let curve = curve_by_name(map, weight, eps)?;
    let (normalized, _t) = normalize_curve(&curve)?;
    let grid = linspace(-0.95, 0.95, 381);
    let report = verify_theorem1(&normalized, &prof, &grid, &VerifyOpts::default())?;
    finish_distortion(report, None, margin_tol, out, format)
}

fn cmd_verify_theorem2(
    map: &str,
    weight: &NehariFunction,
    pairs: usize,
    seed: u64,
    margin_tol: f64,
    out: &Option<PathBuf>,
    format: &str,
) -> sdl_core::Result<i32> {
    let eps = domain_cut_or(1e-3);
    let prof = extremal_f(weight, eps, 1e-12)?;
    let curve = curve_by_name(map, weight, eps)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let pair_list: Vec<(f64, f64)> = (0..pairs)
        .map(|_| (rng.gen_range(-0.95..0.95), rng.gen_range(-0.95..0.95)))
        .collect();
    let report = verify_theorem2(&curve, &prof, &pair_list, &VerifyOpts::default())?;
    finish_distortion(report, Some(seed), margin_tol, out, format)
}

#[allow(clippy::too_many_arguments)]
fn cmd_verify_theorem3(
    map: &str,
    map_file: &Option<PathBuf>,
    enneper: f64,
    weight: &NehariFunction,
    pairs: usize,
    seed: u64,
    margin_tol: f64,
    out: &Option<PathBuf>,
    format: &str,
) -> sdl_core::Result<i32> {
    let f = harmonic_map(map, map_file, enneper)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut sample = || {
        let r = 0.9 * rng.gen_range(0.0..1.0_f64).sqrt();
        let theta = rng.gen_range(0.0..std::f64::consts::TAU);
        Complex64::from_polar(r, theta)
    };
    let pair_list: Vec<(Complex64, Complex64)> = (0..pairs).map(|_| (sample(), sample())).collect();
    let report = verify_theorem3(&f, weight, &pair_list, &LiftVerifyOpts::default())?;
    finish_distortion(report, Some(seed), margin_tol, out, format)
}

fn finish_covering(
    report: sdl_core::report::CoveringReport,
    out: &Option<PathBuf>,
    format: &str,
) -> sdl_core::Result<i32> {
    let code = if report.passes() { 0 } else { 1 };
    match format {
        "json" => {
            let doc = RunReport {
                schema: SCHEMA_VERSION,
                generated_unix: now_unix(),
                seed: None,
                report: &report,
            };
            write_or_print(
                out,
                &serde_json::to_string_pretty(&doc).expect("report serializes"),
            )?;
        }
        "csv" => {
            let mut buf = Vec::new();
            report.write_csv(&mut buf)?;
            write_or_print(out, &String::from_utf8(buf).expect("csv is utf8"))?;
        }
        other => return Err(Error::InvalidInput(format!("unknown format `{other}`"))),
    }
    if code == 1 {
        eprintln!(
            "sdl: covering margin violation: margins {:?}",
            report.margins
        );
    }
    Ok(code)
}

#[allow(clippy::too_many_arguments)]
fn cmd_verify_theorem4(
    map: &str,
    map_file: &Option<PathBuf>,
    enneper: f64,
    weight: &NehariFunction,
    radii: &[f64],
    grid_n: usize,
    out: &Option<PathBuf>,
    format: &str,
) -> sdl_core::Result<i32> {
    let f = harmonic_map(map, map_file, enneper)?;
    let opts = CoveringOpts {
        grid_n,
        ..CoveringOpts::default()
    };
    let report = verify_theorem4(&f, weight, radii, &opts)?;
    finish_covering(report, out, format)
}

#[allow(clippy::too_many_arguments)]
fn cmd_verify_corollary(
    map: &str,
    map_file: &Option<PathBuf>,
    enneper: f64,
    alpha: Complex64,
    radii: &[f64],
    grid_n: usize,
    out: &Option<PathBuf>,
    format: &str,
) -> sdl_core::Result<i32> {
    let f = harmonic_map(map, map_file, enneper)?;
    let opts = CoveringOpts {
        grid_n,
        ..CoveringOpts::default()
    };
    let report = verify_corollary16(&f, alpha, radii, &opts)?;
    finish_covering(report, out, format)
}

fn cmd_probe(
    map: &str,
    weight: &NehariFunction,
    samples: usize,
    out: &Option<PathBuf>,
) -> sdl_core::Result<i32> {
    let eps = domain_cut_or(1e-3);
    let curve = curve_by_name(map, weight, eps)?;
    let prof = extremal_f(weight, eps, 1e-11)?;
    let hypothesis = curves::scan_hypothesis(&curve, &prof, -0.99, 0.99, &VerifyOpts::default());
    let collision = injectivity_probe(&curve, samples, -0.999, 0.999)?;

    #[derive(Serialize)]
    struct ProbeReport {
        schema: u32,
        generated_unix: u64,
        curve: String,
        p_kind: String,
        hypothesis_ok: bool,
        hypothesis_detail: Option<String>,
        collision: Option<(f64, f64)>,
    }
    let (hyp_ok, detail) = match &hypothesis {
        Ok(_) => (true, None),
        Err(e) => (false, Some(e.to_string())),
    };
    let doc = ProbeReport {
        schema: SCHEMA_VERSION,
        generated_unix: now_unix(),
        curve: curve.label().into(),
        p_kind: weight.label().into(),
        hypothesis_ok: hyp_ok,
        hypothesis_detail: detail,
        collision,
    };
    write_or_print(
        out,
        &serde_json::to_string_pretty(&doc).expect("report serializes"),
    )?;
    if !hyp_ok {
        // The injectivity claim is not challenged when its hypothesis fails.
        return Ok(4);
    }
    Ok(if collision.is_some() { 1 } else { 0 })
}

fn cmd_lift_mesh(
    f: &HarmonicMap,
    weight: &NehariFunction,
    rings: usize,
    sectors: usize,
    rmax: f64,
    out: &PathBuf,
    attributes: &Option<PathBuf>,
) -> sdl_core::Result<i32> {
    if rings < 1 || sectors < 3 {
        return Err(Error::InvalidInput(
            "need rings >= 1 and sectors >= 3".into(),
        ));
    }
    if !(0.0..1.0).contains(&rmax) || rmax == 0.0 {
        return Err(Error::InvalidInput(format!(
            "rmax = {rmax} must lie in (0,1)"
        )));
    }
    // Vertex order: center, then ring-major, sector-minor. Deterministic.
    let mut zs = vec![Complex64::ZERO];
    for i in 1..=rings {
        let r = rmax * i as f64 / rings as f64;
        for k in 0..sectors {
            let theta = std::f64::consts::TAU * k as f64 / sectors as f64;
            zs.push(Complex64::from_polar(r, theta));
        }
    }
    let lifts: sdl_core::Result<Vec<_>> = zs
        .iter()
        .map(|&z| sdl_core::harmonic::lift_radial(f, z))
        .collect();
    let lifts = lifts?;

    let mut obj = String::new();
    obj.push_str(&format!(
        "# sdl lift mesh: map={} rings={rings} sectors={sectors} rmax={rmax}\n",
        f.label()
    ));
    obj.push_str(&format!(
        "# vertices={} (center + rings*sectors)\n",
        zs.len()
    ));
    for l in &lifts {
        obj.push_str(&format!("v {:.12} {:.12} {:.12}\n", l.u, l.v, l.w));
    }
    // center fan (1-indexed OBJ)
    let ring_base = |i: usize| 2 + (i - 1) * sectors;
    for k in 0..sectors {
        let a = ring_base(1) + k;
        let b = ring_base(1) + (k + 1) % sectors;
        obj.push_str(&format!("f 1 {a} {b}\n"));
    }
    for i in 1..rings {
        for k in 0..sectors {
            let a = ring_base(i) + k;
            let b = ring_base(i) + (k + 1) % sectors;
            let c = ring_base(i + 1) + k;
            let d = ring_base(i + 1) + (k + 1) % sectors;
            obj.push_str(&format!("f {a} {c} {d}\nf {a} {d} {b}\n"));
        }
    }
    fs::write(out, obj)?;

    if let Some(path) = attributes {
        let mut file = fs::File::create(path)?;
        writeln!(file, "index,x,y,lambda,K,criterion_margin")?;
        for (i, (z, l)) in zs.iter().zip(&lifts).enumerate() {
            let margin = f.criterion5_margin(weight, *z)?;
            writeln!(
                file,
                "{i},{:.17e},{:.17e},{:.17e},{:.17e},{:.17e}",
                z.re, z.im, l.lambda, l.k, margin
            )?;
        }
    }
    Ok(0)
}
