//! Side-by-side view of the computed F profile against its closed form for
//! the classical weight, plus the margins of the two-point bound on the
//! curve that attains it.
//!
//! ```bash
//! cargo run --example sharp_profile --release
//! ```

use sdl_core::curves::{verify_theorem2, CurveJet, VerifyOpts};
use sdl_core::nehari::{closed_form_f, extremal_f, NehariFunction};

fn main() -> sdl_core::Result<()> {
    let p = NehariFunction::classical();
    let profile = extremal_f(&p, 1e-3, 1e-11)?;

    println!("F profile for p(x) = (1-x^2)^(-2)");
    println!(
        "{:>6} {:>18} {:>18} {:>10}",
        "x", "computed", "closed form", "|dev|"
    );
    for k in 0..9 {
        let x = -0.9 + 0.225 * k as f64;
        let f = profile.eval_f(x)?;
        let closed = closed_form_f(p.kind(), x).unwrap();
        println!(
            "{x:>6.3} {f:>18.12} {closed:>18.12} {:>10.2e}",
            (f - closed).abs()
        );
    }

    let sharp = CurveJet::profile_line(&profile, 2)?;
    let pairs = [(0.25, -0.4), (0.8, 0.1), (-0.7, 0.65)];
    let report = verify_theorem2(&sharp, &profile, &pairs, &VerifyOpts::default())?;
    println!("\ntwo-point bound on the sharp curve (margins should vanish):");
    for s in &report.samples {
        println!(
            "  {}  lhs = {:.12}  rhs = {:.12}  margin = {:+.2e}",
            s.site, s.lhs, s.rhs, s.margin
        );
    }
    Ok(())
}
