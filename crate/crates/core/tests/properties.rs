//! Property-based invariants: Mobius invariance, the decomposition identity,
//! quadrature additivity, profile symmetries, and the Sturm comparison
//! property that underpins every bound in the crate.

use num_complex::Complex64;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use sdl_core::curves::{
    ahlfors_s1, arclength_decomposition, mobius_postcompose, theorem2_rhs, verify_theorem2,
    CurveJet, MobiusFactor, MobiusRn, VerifyOpts,
};
use sdl_core::harmonic::{hyperbolic_distance, DiskAutomorphism};
use sdl_core::nehari::{extremal_f, NehariFunction};
use sdl_core::numerics::{integrate_linear_ode, quadrature, OdeSign};

fn smooth_test_curve() -> CurveJet {
    CurveJet::helix(0.4)
}

/// Random Mobius transformation whose inversion centers stay well away from
/// the bounded test curves.
fn random_mobius(rng: &mut ChaCha8Rng, dim: usize) -> MobiusRn {
    let mut t = MobiusRn::identity();
    let shift: Vec<f64> = (0..dim).map(|_| rng.gen_range(-1.0..1.0)).collect();
    t.push(MobiusFactor::Translation(shift)).unwrap();
    // rotation from Givens factors
    let mut m = vec![vec![0.0; dim]; dim];
    for (i, row) in m.iter_mut().enumerate() {
        row[i] = 1.0;
    }
    for i in 0..dim {
        for j in (i + 1)..dim {
            let a = rng.gen_range(0.0..std::f64::consts::TAU);
            let (s, c) = a.sin_cos();
            for row in m.iter_mut() {
                let (x, y) = (row[i], row[j]);
                row[i] = c * x - s * y;
                row[j] = s * x + c * y;
            }
        }
    }
    t.push(MobiusFactor::Rotation(m)).unwrap();
    t.push(MobiusFactor::Scaling(rng.gen_range(0.25..4.0)))
        .unwrap();
    if rng.gen_bool(0.7) {
        let mut center: Vec<f64> = (0..dim).map(|_| rng.gen_range(-1.0..1.0)).collect();
        let norm: f64 = center.iter().map(|v| v * v).sum::<f64>().sqrt();
        let target = rng.gen_range(4.0..6.0);
        for v in &mut center {
            *v *= target / norm.max(1e-9);
        }
        t.push(MobiusFactor::Inversion { center }).unwrap();
    }
    t
}

#[test]
fn s1_is_mobius_invariant_seeded_sweep() {
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let curve = smooth_test_curve();
    for trial in 0..50 {
        let t = random_mobius(&mut rng, 3);
        let tc = mobius_postcompose(&curve, &t);
        for k in 0..20 {
            let x = -0.9 + 1.8 * k as f64 / 19.0;
            let a = ahlfors_s1(&curve, x).unwrap();
            let b = ahlfors_s1(&tc, x).unwrap();
            assert!(
                (a - b).abs() <= 1e-7 * (1.0 + a.abs()),
                "trial {trial}, x={x}: {a} vs {b}"
            );
        }
    }
}

proptest! {
    #[test]
    fn decomposition_recombines_to_s1(
        a in -0.9f64..0.9,
        b in -0.5f64..0.5,
        c in -0.5f64..0.5,
        x in -0.9f64..0.9,
    ) {
        // random regular cubic space curve: d1 at x=0 dominated by e1
        let curve = CurveJet::from_fn(3, "random_cubic", move |t| {
            sdl_core::numerics::Jet3Real::new(
                vec![t + a * t * t * t, b * t * t, c * t * t * t],
                vec![1.0 + 3.0 * a * t * t, 2.0 * b * t, 3.0 * c * t * t],
                vec![6.0 * a * t, 2.0 * b, 6.0 * c * t],
                vec![6.0 * a, 0.0, 6.0 * c],
            )
        });
        let jet = curve.eval(x).unwrap();
        let speed: f64 = jet.d1.iter().map(|v| v * v).sum::<f64>().sqrt();
        prop_assume!(speed > 1e-3);
        let s1 = ahlfors_s1(&curve, x).unwrap();
        let d = arclength_decomposition(&curve, x).unwrap();
        prop_assert!((d.s1_recombined - s1).abs() <= 1e-7 * (1.0 + s1.abs()));
    }

    #[test]
    fn quadrature_is_additive(split in -0.79f64..1.19) {
        let f = |t: f64| (2.5 * t).sin() * (1.0 + t * t).ln().cos();
        let tol = 1e-10;
        let ab = quadrature(&f, -0.8, split, tol).unwrap();
        let bc = quadrature(&f, split, 1.2, tol).unwrap();
        let ac = quadrature(&f, -0.8, 1.2, tol).unwrap();
        prop_assert!((ab + bc - ac).abs() <= 2.0 * tol);
    }

    #[test]
    fn hyperbolic_distance_is_automorphism_invariant(
        re1 in -0.7f64..0.7, im1 in -0.7f64..0.7,
        re2 in -0.7f64..0.7, im2 in -0.7f64..0.7,
        are in -0.6f64..0.6, aim in -0.6f64..0.6,
        theta in 0.0f64..std::f64::consts::TAU,
    ) {
        let (z1, z2) = (Complex64::new(re1, im1), Complex64::new(re2, im2));
        prop_assume!(z1.norm() < 0.95 && z2.norm() < 0.95);
        let alpha = Complex64::new(are, aim);
        prop_assume!(alpha.norm() < 0.85);
        let t = DiskAutomorphism::new(alpha, theta).unwrap();
        let d0 = hyperbolic_distance(z1, z2).unwrap();
        let d1 = hyperbolic_distance(t.apply(z1), t.apply(z2)).unwrap();
        prop_assert!((d0 - d1).abs() <= 1e-10 * (1.0 + d0));
    }

    #[test]
    fn wronskian_is_constant_for_random_weights(
        a0 in 0.1f64..3.0,
        a1 in 0.0f64..3.0,
        x in -0.9f64..0.9,
    ) {
        let p = move |t: f64| a0 + a1 * t * t;
        let u = integrate_linear_ode(&p, OdeSign::Plus, 1.0, 0.0, 1e-2, 1e-10).unwrap();
        let v = integrate_linear_ode(&p, OdeSign::Plus, 0.0, 1.0, 1e-2, 1e-10).unwrap();
        let (ux, dux) = u.eval(x).unwrap();
        let (vx, dvx) = v.eval(x).unwrap();
        let w = ux * dvx - vx * dux;
        prop_assert!((w - 1.0).abs() <= 1e-6);
    }

    #[test]
    fn f_profiles_are_odd_and_increasing(x in 0.01f64..0.94) {
        for p in [NehariFunction::classical(), NehariFunction::constant_pi2(), NehariFunction::pokornyi()] {
            let prof = extremal_f(&p, 1e-3, 1e-10).unwrap();
            let plus = prof.eval_f(x).unwrap();
            let minus = prof.eval_f(-x).unwrap();
            prop_assert!((plus + minus).abs() <= 1e-9, "{}", p.label());
            prop_assert!(plus > 0.0 && prof.eval_df(x).unwrap() > 0.0);
        }
    }
}

#[test]
fn sturm_comparison_with_seeded_pairs() {
    // p <= q pointwise with matching initial data: u_p >= u_q holds at every
    // node until the first zero of u_q.
    let mut rng = ChaCha8Rng::seed_from_u64(7771);
    for trial in 0..20 {
        let a0 = rng.gen_range(0.1..4.0);
        let a1 = rng.gen_range(0.0..3.0);
        let b0 = rng.gen_range(0.0..6.0);
        let b1 = rng.gen_range(0.0..3.0);
        let p = move |t: f64| a0 + a1 * t * t;
        let q = move |t: f64| a0 + b0 + (a1 + b1) * t * t;
        let up = integrate_linear_ode(&p, OdeSign::Plus, 1.0, 0.0, 1e-3, 1e-11).unwrap();
        let uq = integrate_linear_ode(&q, OdeSign::Plus, 1.0, 0.0, 1e-3, 1e-11).unwrap();
        let mut x = 0.0;
        while x <= 0.99 {
            let (uqx, _) = uq.eval(x).unwrap();
            if uqx <= 0.0 {
                break; // past the first zero of the majorant solution
            }
            let (upx, _) = up.eval(x).unwrap();
            assert!(upx >= uqx - 1e-9, "trial {trial}, x={x}: {upx} < {uqx}");
            x += 0.01;
        }
        // mirror side
        let mut x = 0.0;
        while x >= -0.99 {
            let (uqx, _) = uq.eval(x).unwrap();
            if uqx <= 0.0 {
                break;
            }
            let (upx, _) = up.eval(x).unwrap();
            assert!(upx >= uqx - 1e-9, "trial {trial}, x={x}");
            x -= 0.01;
        }
    }
}

#[test]
fn theorem2_margins_symmetric_under_swap_seeded() {
    let p = NehariFunction::classical();
    let prof = extremal_f(&p, 1e-3, 1e-11).unwrap();
    let curve = CurveJet::tanh_line();
    let mut rng = ChaCha8Rng::seed_from_u64(99);
    let pairs: Vec<(f64, f64)> = (0..60)
        .map(|_| (rng.gen_range(-0.9..0.9), rng.gen_range(-0.9..0.9)))
        .collect();
    let swapped: Vec<(f64, f64)> = pairs.iter().map(|&(a, b)| (b, a)).collect();
    let r1 = verify_theorem2(&curve, &prof, &pairs, &VerifyOpts::default()).unwrap();
    let r2 = verify_theorem2(&curve, &prof, &swapped, &VerifyOpts::default()).unwrap();
    for (a, b) in r1.samples.iter().zip(&r2.samples) {
        assert!((a.margin - b.margin).abs() <= 1e-12);
    }
}

#[test]
fn theorem2_rhs_specialization_consistency_seeded() {
    // the general profile rhs agrees with both closed-form specializations
    let mut rng = ChaCha8Rng::seed_from_u64(5150);
    let pi2 = extremal_f(&NehariFunction::constant_pi2(), 1e-3, 1e-12).unwrap();
    let classical = extremal_f(&NehariFunction::classical(), 1e-3, 1e-12).unwrap();
    for _ in 0..200 {
        let (x1, x2) = (rng.gen_range(-0.9..0.9), rng.gen_range(-0.9..0.9));
        let g = theorem2_rhs(&pi2, x1, x2).unwrap();
        assert!((g - sdl_core::curves::theorem2_rhs_pi2(x1, x2)).abs() < 1e-9);
        let g = theorem2_rhs(&classical, x1, x2).unwrap();
        assert!((g - sdl_core::curves::theorem2_rhs_classical(x1, x2)).abs() < 1e-9);
    }
}

#[test]
fn grid_distance_decreases_under_refinement() {
    // Error against both oracles shrinks monotonically over two doublings,
    // measured along lattice-resolvable directions (the anisotropy floor in
    // other directions is resolution-independent by construction).
    use sdl_core::metric::ConformalGrid;
    let pairs = [
        (
            Complex64::new(0.0111, 0.0052),
            Complex64::new(0.7643, 0.0052),
        ),
        (
            Complex64::new(-0.4021, -0.4021),
            Complex64::new(0.3487, 0.3487),
        ),
    ];
    let mut prev_unit = f64::INFINITY;
    let mut prev_poin = f64::INFINITY;
    for n in [101usize, 201, 401] {
        let unit = ConformalGrid::build_unit(n, 0.95).unwrap();
        let poin =
            ConformalGrid::build(&|z: Complex64| Ok(1.0 / (1.0 - z.norm_sqr())), n, 0.95).unwrap();
        let mut unit_err: f64 = 0.0;
        let mut poin_err: f64 = 0.0;
        for &(a, b) in &pairs {
            unit_err = unit_err.max((unit.distance(a, b).unwrap() - (a - b).norm()).abs());
            let exact = hyperbolic_distance(a, b).unwrap();
            poin_err = poin_err.max((poin.distance(a, b).unwrap() - exact).abs());
        }
        assert!(
            unit_err < prev_unit,
            "unit: {unit_err} !< {prev_unit} at n={n}"
        );
        assert!(
            poin_err < prev_poin,
            "poincare: {poin_err} !< {prev_poin} at n={n}"
        );
        prev_unit = unit_err;
        prev_poin = poin_err;
    }
}
