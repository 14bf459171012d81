use std::f64::consts::{FRAC_PI_2, FRAC_PI_4};

use arcfit::fitter::{
    fit_cubic_g0, fit_cubic_g1, fit_pattern, fit_quadratic_g0, fit_quartic_g1, fit_quartic_g2,
    EllipsePair, FitOptions,
};
use arcfit::metrics::{self, convergence_order};
use arcfit::*;

type D = DoubleDouble;

fn arc(phi: f64) -> ArcSpec {
    ArcSpec::new(phi).unwrap()
}

fn rel(a: f64, b: f64) -> f64 {
    (a - b).abs() / b.abs()
}

fn s3() -> f64 {
    3f64.sqrt()
}

#[test]
fn quadratic_g0_parameter() {
    let r = fit_quadratic_g0::<D>(arc(FRAC_PI_4)).unwrap();
    let c = FRAC_PI_4.cos();
    let expected = -2f64.sqrt() * c + (2.0 + 2.0 * 2f64.sqrt() + c * c).sqrt();
    assert!((r.params[0].as_f64() - expected).abs() < 1e-15);
    assert!((r.params[0].as_f64() - 1.308338).abs() < 1e-6);
    // Error ratio to φ⁴ tends to (3 - 2√2)/4.
    let k = (3.0 - 2.0 * 2f64.sqrt()) / 4.0;
    assert!(rel(r.max_abs_psi / FRAC_PI_4.powi(4), k) < 0.15);
    let small = fit_quadratic_g0::<D>(arc(1e-2)).unwrap();
    assert!(rel(small.max_abs_psi / 1e-8, k) < 1e-3);
    assert!(rel(small.c_constant.as_f64() / 1e-8, -0.25) < 0.01);
    // Hausdorff is about half of max|ψ| for nearly unit-length curves.
    assert!(rel(small.hausdorff / 1e-8, 0.0214) < 0.01);
}

#[test]
fn quadratic_g0_tiny_angle_error() {
    let r = fit_quadratic_g0::<D>(arc(1e-6)).unwrap();
    assert!(r.max_abs_psi < 1e-22);
    assert!((r.params[0].as_f64() - 1.0).abs() < 1e-11);
}

#[test]
fn cubic_g0_exact_half_pi_solution() {
    let r = fit_cubic_g0::<D>(arc(FRAC_PI_2)).unwrap();
    let xi = 4.0 * (2.0 + 4.0 * s3()).sqrt() / 9.0;
    let eta = (5.0 + 2.0 * s3()) / 9.0;
    assert!((r.params[0].as_f64() - xi).abs() < 1e-14);
    assert!((r.params[1].as_f64() - eta).abs() < 1e-14);
    // |C| · norm against a 10⁵-point sampling of |ψ|.
    let curve = r.curve.to_f64();
    let sampled = (0..100_000)
        .map(|i| -1.0 + 2.0 * i as f64 / 99_999.0)
        .map(|t| metrics::psi(&curve, t).unwrap().abs())
        .fold(0.0, f64::max);
    let poly = r.minimax_poly.as_ref().unwrap();
    let predicted = (r.c_constant.abs() * poly.norm()).as_f64();
    assert!(rel(sampled, predicted) < 1e-9);
}

#[test]
fn cubic_g0_quarter_pi_residuals() {
    let r = fit_cubic_g0::<f64>(arc(FRAC_PI_4)).unwrap();
    for t in [2.0 - s3(), s3() - 1.0] {
        assert!(metrics::psi(&r.curve, t).unwrap().abs() < 1e-11);
    }
    assert!(r.params[0] > 1.0 && r.params[1] > 0.0);
}

#[test]
fn cubic_g0_boundary_crossings_match_closed_forms() {
    for phi in [0.2, 0.7, FRAC_PI_4, 1.3, FRAC_PI_2] {
        let r = fit_cubic_g0::<D>(arc(phi)).unwrap();
        let bc = r.crossings.unwrap();
        let (c, s, c2) = (phi.cos(), phi.sin(), (2.0 * phi).cos());
        let xi1 = (3.0 - 4.0 * s3()) * c / 9.0
            + ((19.0 + 52.0 * s3()) / 54.0 + (37.0 - 20.0 * s3()) / 54.0 * c2).sqrt();
        let xi2 = -(3.0 + 8.0 * s3()) * c / 9.0
            + ((74.0 + 59.0 * s3()) / 27.0 + (38.0 + 5.0 * s3()) / 27.0 * c2).sqrt();
        let h = (phi / 2.0).sin();
        let eta1 = -(3.0 + 4.0 * s3()) * s / 9.0
            + (2.0 / 27.0 * (199.0 + 116.0 * s3()) + 2.0 / 27.0 * (37.0 + 20.0 * s3()) * c).sqrt()
                * h;
        let eta2 = -(9.0 + 8.0 * s3()) * s / 9.0
            + ((362.0 + 213.0 * s3()) / 27.0 + (182.0 + 99.0 * s3()) / 27.0 * c).sqrt() * h;
        assert_eq!(bc.param_names, ["xi", "eta"]);
        assert!((bc.values[0][0] - xi1).abs() < 1e-12, "{phi} {bc:?} {xi1}");
        assert!((bc.values[0][1] - xi2).abs() < 1e-12);
        assert!((bc.values[1][0] - eta1).abs() < 1e-12);
        assert!((bc.values[1][1] - eta2).abs() < 1e-12);
        assert!(bc.relation_holds());
    }
}

#[test]
fn cubic_g0_ellipse_centers_and_semiaxes() {
    let t = [2.0 - s3(), s3() - 1.0];
    for phi in [0.3, 1.0, FRAC_PI_2] {
        let pair = EllipsePair::cubic_g0(arc(phi), t).unwrap();
        let (c, s) = (phi.cos(), phi.sin());
        let centers = [
            ((3.0 - 4.0 * s3()) * c / 9.0, (-3.0 - 4.0 * s3()) * s / 9.0),
            ((-3.0 - 8.0 * s3()) * c / 9.0, (-9.0 - 8.0 * s3()) * s / 9.0),
        ];
        let axes = [
            (
                2.0 / 9.0 * (3.0 + 2.0 * s3()),
                2.0 / 9.0 * (12.0 + 7.0 * s3()),
            ),
            (
                4.0 / 9.0 * (3.0 + 2.0 * s3()),
                2.0 / 9.0 * (9.0 + 5.0 * s3()),
            ),
        ];
        for i in 0..2 {
            let e = pair.ellipses[i];
            assert!((e.center.x - centers[i].0).abs() < 1e-13);
            assert!((e.center.y - centers[i].1).abs() < 1e-13);
            assert!((e.semiaxes.0 - axes[i].0).abs() < 1e-13);
            assert!((e.semiaxes.1 - axes[i].1).abs() < 1e-13);
        }
    }
}

#[test]
fn cubic_g1_half_pi_radical() {
    let b = (2f64.sqrt() - 1.0).cbrt();
    let d = ((2.0 / 3.0) * (1.0 / b - b + 2.0)).sqrt();
    let r = fit_cubic_g1::<D>(arc(FRAC_PI_2)).unwrap();
    assert!((r.params[0].as_f64() - d).abs() < 1e-14);
    assert!((d - 1.315566).abs() < 1e-6);
}

#[test]
fn cubic_g1_tiny_angle_residual() {
    let r = fit_cubic_g1::<D>(arc(1e-3)).unwrap();
    let t1 = r.minimax_poly.as_ref().unwrap().positive_zeros()[0];
    assert!((t1.as_f64() - 0.325411).abs() < 1e-6);
    assert!(metrics::psi(&r.curve, t1).unwrap().abs().as_f64() < 1e-18);
}

#[test]
fn quartic_g1_quarter_pi() {
    let r = fit_quartic_g1::<D>(arc(FRAC_PI_4)).unwrap();
    let bc = r.crossings.unwrap();
    assert_eq!(bc.param_names, ["d", "xi"]);
    assert!((bc.values[0][0] - 0.514871).abs() < 5e-7);
    assert!((bc.values[0][1] - 0.495957).abs() < 5e-7);
    assert!((bc.values[1][0] - 1.49096).abs() < 5e-6);
    // The last crossing is 1.4964082; six printed decimals give 1.496408.
    assert!((bc.values[1][1] - 1.4964082).abs() < 5e-8);
    assert!(bc.relation_holds());
    assert!(rel(r.hausdorff, 6.34e-7) < 0.02);
}

#[test]
fn quartic_g1_half_pi() {
    let r = fit_quartic_g1::<D>(arc(FRAC_PI_2)).unwrap();
    assert!((r.params[1].as_f64() - 1.50506).abs() < 1e-4);
    assert!((r.params[0].as_f64() - 0.87152).abs() < 1e-4);
}

#[test]
fn quartic_g1_minimax_zeros_as_prescribed() {
    let a = arc(FRAC_PI_4);
    let best = fit_quartic_g1::<D>(a).unwrap();
    let zeros = best
        .minimax_poly
        .as_ref()
        .unwrap()
        .positive_zeros()
        .to_vec();
    let r = fit_prescribed_zeros::<D>(4, 1, &zeros, a).unwrap();
    for (x, y) in r.params.iter().zip(&best.params) {
        assert!((*x - *y).abs().as_f64() < 1e-25);
    }
}

#[test]
fn quartic_g1_competitor_patterns() {
    let a = arc(FRAC_PI_4);
    let z1 = (6.0 - 4.0 * s3() + 2.0 * 6f64.sqrt() * (s3() - 1.0).sqrt()).sqrt() / 3.0;
    let cases = [
        (4, 0, vec![], 3.50e-5),
        (3, 2, vec![], 3.55e-6),
        (2, 4, vec![], 2.03e-6),
        (2, 2, vec![(0.5, 1)], 1.11e-6),
        (2, 2, vec![(z1, 1)], 7.60e-7),
    ];
    for (b, o, int, expected) in cases {
        let pattern = ZeroPattern::<D>::new(
            4,
            1,
            b,
            o,
            int.iter().map(|&(w, m)| (D::from(w), m)).collect(),
        )
        .unwrap();
        let r = fit_pattern(GkCase::QuarticG1, pattern, a, &FitOptions::default()).unwrap();
        assert!(
            rel(r.hausdorff, expected) < 0.02,
            "{b} {o} {int:?}: {}",
            r.hausdorff
        );
        assert!(r.residual < 1e-25);
    }
}

#[test]
fn quartic_g2_quarter_pi() {
    let r = fit_quartic_g2::<D>(arc(FRAC_PI_4)).unwrap();
    let poly = r.minimax_poly.as_ref().unwrap();
    let t1 = poly.positive_zeros()[0];
    assert!(metrics::psi(&r.curve, t1).unwrap().abs().as_f64() < 1e-12);
    // Triple zero at both ends.
    for t in [D::from(1.0), D::from(-1.0)] {
        let d = metrics::psi_derivatives(&r.curve, t, 3).unwrap();
        for v in &d[..3] {
            assert!(v.abs().as_f64() < 1e-28);
        }
        assert!(d[3].abs().as_f64() > 1e-6);
    }
    assert!(rel(r.max_abs_psi, (r.c_constant.abs() * poly.norm()).as_f64()) < 1e-9);
}

#[test]
fn quartic_g2_small_angle_decay() {
    // Halving φ divides the error by at least 2⁸; the ratio tends to 2⁸
    // from above.
    let errs: Vec<f64> = [0.2, 0.1, 0.05]
        .iter()
        .map(|&p| fit_quartic_g2::<D>(arc(p)).unwrap().max_abs_psi)
        .collect();
    for w in errs.windows(2) {
        assert!(w[0] / w[1] >= 256.0, "{errs:?}");
    }
    let fit = convergence_order(GkCase::QuarticG2, &[0.4, 0.2, 0.1]).unwrap();
    assert!((fit.order - 8.0).abs() < 0.05, "{fit:?}");
}

#[test]
fn convergence_orders() {
    let angles = [0.2, 0.1, 0.05, 0.025];
    let q = convergence_order(GkCase::QuadraticG0, &angles).unwrap();
    assert!((q.order - 4.0).abs() < 0.05);
    assert!(rel(q.constant, (3.0 - 2.0 * 2f64.sqrt()) / 4.0) < 0.02);
    // max|ψ| / φ⁶ tends to (26 - 15√3)/32, confirmed by an independent
    // 50-digit solve at φ = 1e-3 (6.011839e-4).
    let c0 = convergence_order(GkCase::CubicG0, &angles).unwrap();
    assert!((c0.order - 6.0).abs() < 0.1);
    assert!(rel(c0.constant, (26.0 - 15.0 * s3()) / 32.0) < 0.03);
    let c1 = convergence_order(GkCase::CubicG1, &angles).unwrap();
    assert!((c1.order - 6.0).abs() < 0.1);
}

#[test]
fn cubic_g0_small_angle_constant() {
    let r = fit_cubic_g0::<D>(arc(1e-2)).unwrap();
    assert!(rel(r.max_abs_psi / 1e-12, 6.011810040011293e-4) < 1e-9);
    assert!(rel(r.max_abs_psi / 1e-12, (26.0 - 15.0 * s3()) / 32.0) < 0.01);
    // The radial distance is half of it.
    assert!(rel(r.hausdorff / 1e-12, (26.0 - 15.0 * s3()) / 64.0) < 0.01);
}

#[test]
fn curve_on_circle_at_origin_gives_zero_constant() {
    // A quadratic through (1, 0) at t = 0 with the right endpoints.
    let poly = ConstrainedMinimaxPoly::<f64>::chebyshev_k0(2);
    let a = arc(FRAC_PI_4);
    let (c, _) = a.cos_sin::<f64>();
    let xi = 2.0 - c;
    let curve = GkScaffold::new(GkCase::QuadraticG0, a)
        .instantiate(&[xi])
        .unwrap();
    assert!(arcfit::fitter::compute_c(&curve, &poly).unwrap().abs() < 1e-15);
}

#[test]
fn quadratic_psi_at_origin_is_proportional() {
    let r = fit_quadratic_g0::<f64>(arc(FRAC_PI_4)).unwrap();
    let expected = r.c_constant * -(3.0 - 2.0 * 2f64.sqrt());
    assert!((metrics::psi(&r.curve, 0.0).unwrap() - expected).abs() < 1e-12);
}
