//! Radial error functionals of a curve against the unit circle.
//!
//! `ψ(t) = |p(t)|² - 1` is polynomial and is what the fits control;
//! `ψ̃(t) = ||p(t)| - 1|` is the true radial distance, and its maximum is
//! reported as the Hausdorff distance (valid when the radial projection of
//! the curve lands on the arc, which [`ErrorReport::projection_valid`]
//! records).

use crate::error::{Error, Result};
use crate::fitter;
use crate::geometry::{ArcSpec, BezierCurve, GkCase, Point2};
use crate::real::{binomial, DoubleDouble, Real};

pub fn psi<T: Real>(curve: &BezierCurve<T>, t: T) -> Result<T> {
    Ok(curve.eval(t)?.norm_squared() - T::one())
}

pub fn psi_tilde<T: Real>(curve: &BezierCurve<T>, t: T) -> Result<T> {
    Ok((curve.eval(t)?.norm() - T::one()).abs())
}

/// `p(t), p'(t), ..., p^(m)(t)` for the polygon `points` (any length ≥ 1).
pub(crate) fn derivative_values<T: Real>(points: &[Point2<T>], t: T, m: usize) -> Vec<Point2<T>> {
    let mut out = Vec::with_capacity(m + 1);
    let mut pts = points.to_vec();
    let two = T::of(2.0);
    for _ in 0..=m {
        out.push(decasteljau(&pts, t));
        let deg = pts.len().saturating_sub(1);
        if deg == 0 {
            pts = vec![Point2::zero()];
        } else {
            let f = T::of_usize(deg) / two;
            pts = pts.windows(2).map(|w| (w[1] - w[0]) * f).collect();
        }
    }
    out
}

fn decasteljau<T: Real>(points: &[Point2<T>], t: T) -> Point2<T> {
    let u = (T::one() + t) / T::of(2.0);
    let v = T::one() - u;
    let mut pts = points.to_vec();
    let n = pts.len();
    for r in 1..n {
        for j in 0..n - r {
            pts[j] = pts[j] * v + pts[j + 1] * u;
        }
    }
    pts[0]
}

/// `Σ_j C(m, j) x^(j) · y^(m-j)`: the `m`-th derivative of `x(t) · y(t)`.
pub(crate) fn leibniz_dot<T: Real>(x: &[Point2<T>], y: &[Point2<T>], m: usize) -> T {
    (0..=m).fold(T::zero(), |acc, j| {
        acc + binomial::<T>(m, j) * x[j].dot(y[m - j])
    })
}

/// `ψ(t), ψ'(t), ..., ψ^(m)(t)`, exact via hodographs.
pub fn psi_derivatives<T: Real>(curve: &BezierCurve<T>, t: T, m: usize) -> Result<Vec<T>> {
    curve.eval(t)?;
    let d = derivative_values(curve.control_points(), t, m);
    Ok((0..=m)
        .map(|r| {
            let v = leibniz_dot(&d, &d, r);
            if r == 0 {
                v - T::one()
            } else {
                v
            }
        })
        .collect())
}

/// Maxima of the radial errors over `[-1, 1]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ErrorReport {
    pub max_abs_psi: f64,
    pub max_psi_location: f64,
    /// Signed `ψ` at `max_psi_location`.
    pub psi_at_max: f64,
    /// Maximum of `ψ̃`.
    pub hausdorff: f64,
    pub hausdorff_location: f64,
    pub num_samples: usize,
    pub refined: bool,
    /// `0 < |p(t)| < 2` and the polar angle of `p(t)` stays within the
    /// arc's angular span at every sample.
    pub projection_valid: bool,
}

/// A refined interior local maximum of `|ψ|`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Extremum {
    pub t: f64,
    pub psi: f64,
}

const GOLDEN_TOL: f64 = 1e-12;

/// Golden-section search for the maximum of `g` on `[a, b]`.
fn golden_max<F: Fn(f64) -> f64>(g: F, mut a: f64, mut b: f64) -> (f64, f64) {
    let r = (5f64.sqrt() - 1.0) / 2.0;
    let mut x1 = b - r * (b - a);
    let mut x2 = a + r * (b - a);
    let (mut g1, mut g2) = (g(x1), g(x2));
    while b - a > GOLDEN_TOL {
        if g1 >= g2 {
            b = x2;
            x2 = x1;
            g2 = g1;
            x1 = b - r * (b - a);
            g1 = g(x1);
        } else {
            a = x1;
            x1 = x2;
            g1 = g2;
            x2 = a + r * (b - a);
            g2 = g(x2);
        }
    }
    if g1 >= g2 {
        (x1, g1)
    } else {
        (x2, g2)
    }
}

fn grid(samples: usize) -> Vec<f64> {
    (0..samples)
        .map(|i| {
            if i + 1 == samples {
                1.0
            } else {
                -1.0 + 2.0 * i as f64 / (samples - 1) as f64
            }
        })
        .collect()
}

/// Indices of grid-local maxima (endpoints included when they dominate
/// their single neighbour).
fn local_max_indices(v: &[f64]) -> Vec<usize> {
    let n = v.len();
    (0..n)
        .filter(|&i| {
            let left = i == 0 || v[i] > v[i - 1];
            let right = i + 1 == n || v[i] >= v[i + 1];
            left && right
        })
        .collect()
}

/// Refines every grid-local maximum of `g` and returns the global one,
/// lowest `t` on ties.
fn refined_max<F: Fn(f64) -> f64>(g: F, ts: &[f64]) -> (f64, f64) {
    let v: Vec<f64> = ts.iter().map(|&t| g(t)).collect();
    let mut best = (ts[0], v[0]);
    for i in local_max_indices(&v) {
        let a = ts[i.saturating_sub(1)];
        let b = ts[(i + 1).min(ts.len() - 1)];
        let (mut t, mut val) = golden_max(&g, a, b);
        if v[i] > val {
            t = ts[i];
            val = v[i];
        }
        if val > best.1 || (val == best.1 && t < best.0) {
            best = (t, val);
        }
    }
    best
}

/// Samples `|ψ|` and `ψ̃` on a uniform grid of `samples` points, refines
/// every local maximum by golden-section search to `1e-12` in `t`.
pub fn max_error<T: Real>(curve: &BezierCurve<T>, samples: usize) -> Result<ErrorReport> {
    if samples < 64 {
        return Err(Error::Domain {
            name: "samples",
            value: samples as f64,
            lo: 64.0,
            hi: f64::INFINITY,
        });
    }
    let ts = grid(samples);
    let at = |t: f64| curve.eval_unchecked(T::of(t.clamp(-1.0, 1.0)));
    let abs_psi = |t: f64| (at(t).norm_squared() - T::one()).abs().as_f64();
    let rad = |t: f64| (at(t).norm() - T::one()).abs().as_f64();
    let (t_psi, max_abs_psi) = refined_max(abs_psi, &ts);
    let (t_rad, hausdorff) = refined_max(rad, &ts);

    let pts = curve.control_points();
    let end = pts[pts.len() - 1].to_f64();
    let start = pts[0].to_f64();
    let span_hi = end.y.atan2(end.x).max(start.y.atan2(start.x));
    let span_lo = end.y.atan2(end.x).min(start.y.atan2(start.x));
    let projection_valid = ts.iter().all(|&t| {
        let p = at(t).to_f64();
        let r = p.norm();
        let ang = p.y.atan2(p.x);
        r > 0.0 && r < 2.0 && ang >= span_lo - 1e-9 && ang <= span_hi + 1e-9
    });

    Ok(ErrorReport {
        max_abs_psi,
        max_psi_location: t_psi,
        psi_at_max: (at(t_psi).norm_squared() - T::one()).as_f64(),
        hausdorff,
        hausdorff_location: t_rad,
        num_samples: samples,
        refined: true,
        projection_valid,
    })
}

/// Refined interior local maxima of `|ψ|`, increasing in `t`.
pub fn local_maxima<T: Real>(curve: &BezierCurve<T>, samples: usize) -> Result<Vec<Extremum>> {
    if samples < 64 {
        return Err(Error::Domain {
            name: "samples",
            value: samples as f64,
            lo: 64.0,
            hi: f64::INFINITY,
        });
    }
    let ts = grid(samples);
    let psi_at = |t: f64| {
        curve
            .eval_unchecked(T::of(t.clamp(-1.0, 1.0)))
            .norm_squared()
            - T::one()
    };
    let g = |t: f64| psi_at(t).abs().as_f64();
    let v: Vec<f64> = ts.iter().map(|&t| g(t)).collect();
    Ok(local_max_indices(&v)
        .into_iter()
        .filter(|&i| i > 0 && i + 1 < ts.len())
        .map(|i| {
            let (t, _) = golden_max(g, ts[i - 1], ts[i + 1]);
            Extremum {
                t,
                psi: psi_at(t).as_f64(),
            }
        })
        .collect())
}

/// `y ≈ constant · x^order` by least squares on logarithms.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PowerLaw {
    pub order: f64,
    pub constant: f64,
}

pub fn fit_power_law(xs: &[f64], ys: &[f64]) -> Result<PowerLaw> {
    if xs.len() != ys.len() || xs.len() < 2 {
        return Err(Error::InvalidInput(
            "power-law fit needs at least two (x, y) pairs".into(),
        ));
    }
    if xs.iter().chain(ys).any(|&v| !(v > 0.0) || !v.is_finite()) {
        return Err(Error::InvalidInput(
            "power-law fit needs positive finite data".into(),
        ));
    }
    let lx: Vec<f64> = xs.iter().map(|x| x.ln()).collect();
    let ly: Vec<f64> = ys.iter().map(|y| y.ln()).collect();
    let n = lx.len() as f64;
    let mx = lx.iter().sum::<f64>() / n;
    let my = ly.iter().sum::<f64>() / n;
    let sxx: f64 = lx.iter().map(|x| (x - mx).powi(2)).sum();
    if sxx == 0.0 {
        return Err(Error::InvalidInput("power-law fit needs distinct x".into()));
    }
    let sxy: f64 = lx.iter().zip(&ly).map(|(x, y)| (x - mx) * (y - my)).sum();
    let order = sxy / sxx;
    Ok(PowerLaw {
        order,
        constant: (my - order * mx).exp(),
    })
}

/// Empirical order of `max |ψ|` in `φ` for the optimal fit of `case`.
///
/// `angles` must be decreasing, at least three, each in `(0, π/2]`, with
/// consecutive ratios of at least 1.5.
pub fn convergence_order(case: GkCase, angles: &[f64]) -> Result<PowerLaw> {
    if angles.len() < 3 {
        return Err(Error::InvalidInput(format!(
            "convergence order needs at least 3 angles, got {}",
            angles.len()
        )));
    }
    if angles.windows(2).any(|w| !(w[0] >= 1.5 * w[1])) {
        return Err(Error::InvalidInput(
            "angles must decrease by a factor of at least 1.5".into(),
        ));
    }
    let errors = angles
        .iter()
        .map(|&phi| {
            let arc = ArcSpec::new(phi)?;
            Ok(fitter::fit::<DoubleDouble>(case, arc)?.max_abs_psi)
        })
        .collect::<Result<Vec<f64>>>()?;
    fit_power_law(angles, &errors)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn curve(points: &[(f64, f64)]) -> BezierCurve<f64> {
        BezierCurve::new(points.iter().map(|&(x, y)| Point2::new(x, y)).collect()).unwrap()
    }

    #[test]
    fn psi_on_circle_is_zero() {
        let c = curve(&[(0.0, -1.0), (0.0, 1.0)]);
        assert_eq!(psi(&c, 0.0).unwrap(), -1.0);
        assert_eq!(psi(&c, 1.0).unwrap(), 0.0);
        assert_eq!(psi_tilde(&c, -1.0).unwrap(), 0.0);
        assert!(psi(&c, 2.0).is_err());
    }

    #[test]
    fn psi_derivatives_match_finite_differences() {
        let c = curve(&[(0.7, -0.7), (1.4, -0.2), (1.1, 0.5), (0.2, 0.9)]);
        let t = 0.3;
        let d = psi_derivatives(&c, t, 3).unwrap();
        let h = 1e-4;
        let f = |t: f64| psi(&c, t).unwrap();
        let fd1 = (f(t + h) - f(t - h)) / (2.0 * h);
        let fd2 = (f(t + h) - 2.0 * f(t) + f(t - h)) / (h * h);
        assert!((d[1] - fd1).abs() < 1e-7);
        assert!((d[2] - fd2).abs() < 1e-5);
        // ψ is degree 6 here; the 7th derivative vanishes.
        let d7 = psi_derivatives(&c, t, 7).unwrap();
        assert!(d7[7].abs() < 1e-12);
    }

    #[test]
    fn golden_section_finds_parabola_peak() {
        let (t, v) = golden_max(|x| 1.0 - (x - 0.123).powi(2), -1.0, 1.0);
        assert!((t - 0.123).abs() < 1e-6);
        assert!((v - 1.0).abs() < 1e-12);
    }

    #[test]
    fn max_error_of_chord() {
        // Chord of the quarter arc: max radial error at t = 0.
        let h = std::f64::consts::FRAC_1_SQRT_2;
        let c = curve(&[(h, -h), (h, h)]);
        let r = max_error(&c, 101).unwrap();
        assert!((r.max_abs_psi - 0.5).abs() < 1e-15);
        assert!(r.max_psi_location.abs() < 1e-7);
        assert!((r.hausdorff - (1.0 - h)).abs() < 1e-15);
        assert!(r.projection_valid);
        assert!(max_error(&c, 10).is_err());
    }

    #[test]
    fn power_law_recovers_exponent() {
        let xs = [0.2, 0.1, 0.05];
        let ys: Vec<f64> = xs.iter().map(|x: &f64| 3.0 * x.powi(4)).collect();
        let p = fit_power_law(&xs, &ys).unwrap();
        assert!((p.order - 4.0).abs() < 1e-12);
        assert!((p.constant - 3.0).abs() < 1e-10);
        assert!(fit_power_law(&[1.0], &[1.0]).is_err());
        assert!(fit_power_law(&[1.0, 2.0], &[0.0, 1.0]).is_err());
    }

    #[test]
    fn convergence_order_rejects_bad_angles() {
        assert!(convergence_order(GkCase::QuadraticG0, &[0.2, 0.1]).is_err());
        assert!(convergence_order(GkCase::QuadraticG0, &[0.2, 0.15, 0.1]).is_err());
    }
}
