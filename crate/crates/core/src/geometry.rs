//! Bernstein/Bézier evaluation over `[-1, 1]` and the symmetric control
//! polygons of `G^k` arc approximants.
//!
//! The target arc is always the unit circle restricted to polar angles
//! `[-φ, φ]`. Curves start at `(cos φ, -sin φ)` for `t = -1` and end at
//! `(cos φ, sin φ)` for `t = 1`; their control polygons are mirror
//! symmetric about the x-axis.

use std::f64::consts::FRAC_PI_2;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::error::{Error, Result};
use crate::real::{binomial, Real};

#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct Point2<T = f64> {
    pub x: T,
    pub y: T,
}

impl<T: Real> Point2<T> {
    pub fn new(x: T, y: T) -> Self {
        Self { x, y }
    }

    pub fn zero() -> Self {
        Self::new(T::zero(), T::zero())
    }

    pub fn dot(self, other: Self) -> T {
        self.x * other.x + self.y * other.y
    }

    pub fn cross(self, other: Self) -> T {
        self.x * other.y - self.y * other.x
    }

    pub fn norm_squared(self) -> T {
        self.dot(self)
    }

    pub fn norm(self) -> T {
        self.x.hypot(self.y)
    }

    /// Mirror image in the x-axis.
    pub fn reflect_x(self) -> Self {
        Self::new(self.x, -self.y)
    }

    pub fn is_finite(self) -> bool {
        self.x.is_finite() && self.y.is_finite()
    }

    pub fn to_f64(self) -> Point2<f64> {
        Point2::new(self.x.as_f64(), self.y.as_f64())
    }

    pub fn cast<U: Real>(self) -> Point2<U> {
        Point2::new(U::of(self.x.as_f64()), U::of(self.y.as_f64()))
    }
}

impl<T: Real> Add for Point2<T> {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        Self::new(self.x + o.x, self.y + o.y)
    }
}

impl<T: Real> Sub for Point2<T> {
    type Output = Self;
    fn sub(self, o: Self) -> Self {
        Self::new(self.x - o.x, self.y - o.y)
    }
}

impl<T: Real> Mul<T> for Point2<T> {
    type Output = Self;
    fn mul(self, s: T) -> Self {
        Self::new(self.x * s, self.y * s)
    }
}

impl<T: Real> Neg for Point2<T> {
    type Output = Self;
    fn neg(self) -> Self {
        Self::new(-self.x, -self.y)
    }
}

/// Unit circular arc symmetric about the x-axis, `0 < φ ≤ π/2`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ArcSpec {
    half_angle: f64,
}

impl ArcSpec {
    pub fn new(half_angle: f64) -> Result<Self> {
        if !half_angle.is_finite() || half_angle <= 0.0 {
            return Err(Error::InvalidHalfAngle(half_angle));
        }
        // Conversions such as `90.0.to_radians()` may land an ulp above π/2.
        if half_angle > FRAC_PI_2 * (1.0 + 4.0 * f64::EPSILON) {
            return Err(Error::InvalidHalfAngle(half_angle));
        }
        Ok(Self {
            half_angle: half_angle.min(FRAC_PI_2),
        })
    }

    pub fn half_angle(&self) -> f64 {
        self.half_angle
    }

    /// `(cos φ, sin φ)`, exactly on the unit circle to working precision.
    pub fn cos_sin<T: Real>(&self) -> (T, T) {
        T::unit_sin_cos(self.half_angle)
    }

    /// Start point `(cos φ, -sin φ)` and end point `(cos φ, sin φ)`.
    pub fn endpoints<T: Real>(&self) -> (Point2<T>, Point2<T>) {
        let (c, s) = self.cos_sin::<T>();
        (Point2::new(c, -s), Point2::new(c, s))
    }

    /// Unit tangent of the arc at its start point, `c'(-φ)`.
    pub fn start_tangent<T: Real>(&self) -> Point2<T> {
        let (c, s) = self.cos_sin::<T>();
        Point2::new(s, c)
    }
}

fn check_parameter<T: Real>(t: T) -> Result<()> {
    let tf = t.as_f64();
    if !tf.is_finite() {
        return Err(Error::NonFinite("curve parameter"));
    }
    if !(-1.0..=1.0).contains(&tf) {
        return Err(Error::Domain {
            name: "t",
            value: tf,
            lo: -1.0,
            hi: 1.0,
        });
    }
    Ok(())
}

/// Bernstein basis polynomial over `[-1, 1]`:
/// `C(n, j) ((1 + t)/2)^j ((1 - t)/2)^(n - j)`.
pub fn bernstein<T: Real>(n: usize, j: usize, t: T) -> Result<T> {
    if j > n {
        return Err(Error::Domain {
            name: "j",
            value: j as f64,
            lo: 0.0,
            hi: n as f64,
        });
    }
    check_parameter(t)?;
    Ok(bernstein_unchecked(n, j, t))
}

pub(crate) fn bernstein_unchecked<T: Real>(n: usize, j: usize, t: T) -> T {
    let two = T::of(2.0);
    let u = (T::one() + t) / two;
    let v = (T::one() - t) / two;
    binomial::<T>(n, j) * crate::real::ipow(u, j as u32) * crate::real::ipow(v, (n - j) as u32)
}

/// Polynomial curve in Bézier form over the parameter domain `[-1, 1]`.
#[derive(Debug, Clone, PartialEq)]
pub struct BezierCurve<T = f64> {
    control_points: Vec<Point2<T>>,
}

impl<T: Real> BezierCurve<T> {
    /// A curve of degree `control_points.len() - 1 >= 1`.
    pub fn new(control_points: Vec<Point2<T>>) -> Result<Self> {
        if control_points.len() < 2 {
            return Err(Error::InvalidInput(format!(
                "a Bezier curve needs at least 2 control points, got {}",
                control_points.len()
            )));
        }
        if control_points.iter().any(|p| !p.is_finite()) {
            return Err(Error::NonFinite("control points"));
        }
        Ok(Self { control_points })
    }

    fn from_points(control_points: Vec<Point2<T>>) -> Self {
        Self { control_points }
    }

    pub fn degree(&self) -> usize {
        self.control_points.len() - 1
    }

    pub fn control_points(&self) -> &[Point2<T>] {
        &self.control_points
    }

    pub fn eval(&self, t: T) -> Result<Point2<T>> {
        check_parameter(t)?;
        Ok(self.eval_unchecked(t))
    }

    /// De Casteljau evaluation without the domain check.
    pub(crate) fn eval_unchecked(&self, t: T) -> Point2<T> {
        let u = (T::one() + t) / T::of(2.0);
        let v = T::one() - u;
        let mut pts = self.control_points.clone();
        let n = pts.len();
        for r in 1..n {
            for j in 0..n - r {
                pts[j] = pts[j] * v + pts[j + 1] * u;
            }
        }
        pts[0]
    }

    /// Reference evaluation as an explicit sum over the Bernstein basis.
    pub fn eval_basis_sum(&self, t: T) -> Result<Point2<T>> {
        check_parameter(t)?;
        let n = self.degree();
        Ok(self
            .control_points
            .iter()
            .enumerate()
            .fold(Point2::zero(), |acc, (j, &b)| {
                acc + b * bernstein_unchecked(n, j, t)
            }))
    }

    /// Hodograph `dp/dt` (note the factor 1/2 from the `[-1, 1]` domain).
    /// The derivative of a constant curve is the zero constant curve.
    pub fn derivative(&self) -> Self {
        let n = self.degree();
        if n == 0 {
            return Self::from_points(vec![Point2::zero()]);
        }
        let f = T::of_usize(n) / T::of(2.0);
        Self::from_points(
            self.control_points
                .windows(2)
                .map(|w| (w[1] - w[0]) * f)
                .collect(),
        )
    }

    /// Derivatives `p, p', ..., p^(m)` as curves.
    pub fn derivatives(&self, m: usize) -> Vec<Self> {
        let mut out = Vec::with_capacity(m + 1);
        out.push(self.clone());
        for i in 0..m {
            let next = out[i].derivative();
            out.push(next);
        }
        out
    }

    /// Coefficient vector of `t^n` in the monomial expansion of `p(t)`.
    pub fn leading_coefficient(&self) -> Point2<T> {
        let n = self.degree();
        let scale = crate::real::ipow(T::of(0.5), n as u32);
        self.control_points
            .iter()
            .enumerate()
            .fold(Point2::zero(), |acc, (j, &b)| {
                let sign = if (n - j).is_multiple_of(2) {
                    T::one()
                } else {
                    -T::one()
                };
                acc + b * (binomial::<T>(n, j) * sign)
            })
            * scale
    }

    /// Largest deviation from the mirror symmetry `b_j = reflect_x(b_{n-j})`.
    pub fn symmetry_defect(&self) -> T {
        let n = self.degree();
        (0..=n).fold(T::zero(), |m, j| {
            let d = self.control_points[j] - self.control_points[n - j].reflect_x();
            m.max(d.x.abs()).max(d.y.abs())
        })
    }

    pub fn to_f64(&self) -> BezierCurve<f64> {
        BezierCurve::from_points(self.control_points.iter().map(|p| p.to_f64()).collect())
    }

    pub fn cast<U: Real>(&self) -> BezierCurve<U> {
        BezierCurve::from_points(self.control_points.iter().map(|p| p.cast()).collect())
    }
}

/// The five `(degree, smoothness)` combinations with a non-trivial
/// one- or two-parameter family of symmetric approximants.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum GkCase {
    QuadraticG0,
    CubicG0,
    CubicG1,
    QuarticG1,
    QuarticG2,
}

impl GkCase {
    pub const ALL: [GkCase; 5] = [
        GkCase::QuadraticG0,
        GkCase::CubicG0,
        GkCase::CubicG1,
        GkCase::QuarticG1,
        GkCase::QuarticG2,
    ];

    pub fn new(degree: usize, smoothness: usize) -> Result<Self> {
        match (degree, smoothness) {
            (2, 0) => Ok(Self::QuadraticG0),
            (3, 0) => Ok(Self::CubicG0),
            (3, 1) => Ok(Self::CubicG1),
            (4, 1) => Ok(Self::QuarticG1),
            (4, 2) => Ok(Self::QuarticG2),
            _ => Err(Error::UnsupportedCase { degree, smoothness }),
        }
    }

    pub fn degree(self) -> usize {
        match self {
            Self::QuadraticG0 => 2,
            Self::CubicG0 | Self::CubicG1 => 3,
            Self::QuarticG1 | Self::QuarticG2 => 4,
        }
    }

    pub fn smoothness(self) -> usize {
        match self {
            Self::QuadraticG0 | Self::CubicG0 => 0,
            Self::CubicG1 | Self::QuarticG1 => 1,
            Self::QuarticG2 => 2,
        }
    }

    /// `n - k - 1`.
    pub fn free_param_count(self) -> usize {
        self.degree() - self.smoothness() - 1
    }

    pub fn param_names(self) -> &'static [&'static str] {
        match self {
            Self::QuadraticG0 => &["xi"],
            Self::CubicG0 => &["xi", "eta"],
            Self::CubicG1 => &["d"],
            Self::QuarticG1 => &["d", "xi"],
            Self::QuarticG2 => &["xi"],
        }
    }

    pub fn region(self) -> &'static str {
        match self {
            Self::QuadraticG0 => "xi > 0",
            Self::CubicG0 => "D_{3,0} = {xi > 1, eta > 0}",
            Self::CubicG1 => "d > 0",
            Self::QuarticG1 => "D_{4,1} = {xi > 1, d > 0}",
            Self::QuarticG2 => "xi > 0, xi cos(phi) < 1",
        }
    }
}

impl fmt::Display for GkCase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "n={}, G{}", self.degree(), self.smoothness())
    }
}

/// Base control polygon and one direction polygon per parameter.
pub type AffineParts<T> = (Vec<Point2<T>>, Vec<Vec<Point2<T>>>);

/// Symmetric control-polygon template of a `G^k` approximant, parameterized
/// by its `n - k - 1` free unknowns.
///
/// | case        | params   | interior control points                          |
/// |-------------|----------|--------------------------------------------------|
/// | quadratic G0| `ξ`      | `b1 = (ξ, 0)`                                    |
/// | cubic G0    | `ξ, η`   | `b1 = (ξ, -η)`, `b2 = (ξ, η)`                    |
/// | cubic G1    | `d`      | `b1 = b0 + d (sin φ, cos φ)`, mirrored `b2`      |
/// | quartic G1  | `d, ξ`   | `b1 = b0 + d (sin φ, cos φ)`, `b2 = (ξ, 0)`      |
/// | quartic G2  | `ξ`      | as quartic G1 with `d = sqrt(3 (1 - ξ cos φ) / 4)`|
///
/// In the quartic G2 template the tangent length `d` is tied to `ξ` by the
/// endpoint curvature condition `κ(±1) = 1`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GkScaffold {
    case: GkCase,
    arc: ArcSpec,
}

impl GkScaffold {
    pub fn new(case: GkCase, arc: ArcSpec) -> Self {
        Self { case, arc }
    }

    pub fn case(&self) -> GkCase {
        self.case
    }

    pub fn arc(&self) -> ArcSpec {
        self.arc
    }

    pub fn degree(&self) -> usize {
        self.case.degree()
    }

    pub fn smoothness(&self) -> usize {
        self.case.smoothness()
    }

    pub fn free_param_count(&self) -> usize {
        self.case.free_param_count()
    }

    fn check_params<T: Real>(&self, params: &[T]) -> Result<()> {
        if params.len() != self.free_param_count() {
            return Err(Error::ParameterCount {
                expected: self.free_param_count(),
                got: params.len(),
            });
        }
        if params.iter().any(|p| !p.is_finite()) {
            return Err(Error::NonFinite("scaffold parameters"));
        }
        Ok(())
    }

    /// Tangent length of the quartic G2 template for a given `ξ`.
    pub fn g2_tangent_length<T: Real>(&self, xi: T) -> Result<T> {
        let (c, _) = self.arc.cos_sin::<T>();
        let rad = T::of(0.75) * (T::one() - xi * c);
        if !(rad > T::zero()) {
            return Err(Error::Domain {
                name: "xi",
                value: xi.as_f64(),
                lo: f64::NEG_INFINITY,
                hi: 1.0 / c.as_f64(),
            });
        }
        Ok(rad.sqrt())
    }

    /// Quartic control polygon with `b1 = b0 + d t0`, `b2 = (ξ, 0)`.
    fn quartic_points<T: Real>(&self, d: T, xi: T) -> Vec<Point2<T>> {
        let (b0, b4) = self.arc.endpoints::<T>();
        let tan = self.arc.start_tangent::<T>();
        let b1 = b0 + tan * d;
        vec![b0, b1, Point2::new(xi, T::zero()), b1.reflect_x(), b4]
    }

    pub fn instantiate<T: Real>(&self, params: &[T]) -> Result<BezierCurve<T>> {
        self.check_params(params)?;
        let (b0, bn) = self.arc.endpoints::<T>();
        let tan = self.arc.start_tangent::<T>();
        let pts = match self.case {
            GkCase::QuadraticG0 => vec![b0, Point2::new(params[0], T::zero()), bn],
            GkCase::CubicG0 => {
                let (xi, eta) = (params[0], params[1]);
                vec![b0, Point2::new(xi, -eta), Point2::new(xi, eta), bn]
            }
            GkCase::CubicG1 => {
                let b1 = b0 + tan * params[0];
                vec![b0, b1, b1.reflect_x(), bn]
            }
            GkCase::QuarticG1 => self.quartic_points(params[0], params[1]),
            GkCase::QuarticG2 => {
                let d = self.g2_tangent_length(params[0])?;
                self.quartic_points(d, params[0])
            }
        };
        BezierCurve::new(pts)
    }

    /// `∂b_j/∂θ_l` for every free parameter `θ_l` (outer index) and control
    /// point `b_j` (inner index).
    pub fn control_point_jacobian<T: Real>(&self, params: &[T]) -> Result<Vec<Vec<Point2<T>>>> {
        self.check_params(params)?;
        let n = self.degree();
        let z = Point2::zero();
        let tan = self.arc.start_tangent::<T>();
        let ex = Point2::new(T::one(), T::zero());
        let ey = Point2::new(T::zero(), T::one());
        let col = |entries: &[(usize, Point2<T>)]| {
            let mut v = vec![z; n + 1];
            for &(j, p) in entries {
                v[j] = p;
            }
            v
        };
        Ok(match self.case {
            GkCase::QuadraticG0 => vec![col(&[(1, ex)])],
            GkCase::CubicG0 => vec![col(&[(1, ex), (2, ex)]), col(&[(1, -ey), (2, ey)])],
            GkCase::CubicG1 => vec![col(&[(1, tan), (2, tan.reflect_x())])],
            GkCase::QuarticG1 => vec![col(&[(1, tan), (3, tan.reflect_x())]), col(&[(2, ex)])],
            GkCase::QuarticG2 => {
                let d = self.g2_tangent_length(params[0])?;
                let (c, _) = self.arc.cos_sin::<T>();
                // d(ξ) = sqrt(3 (1 - ξ c) / 4)  =>  d' = -3 c / (8 d)
                let dd = -T::of(3.0) * c / (T::of(8.0) * d);
                vec![col(&[(1, tan * dd), (2, ex), (3, tan.reflect_x() * dd)])]
            }
        })
    }

    /// For templates affine in their parameters: the base polygon (all
    /// parameters zero) and one direction polygon per parameter.
    pub fn affine_parts<T: Real>(&self) -> Option<AffineParts<T>> {
        if self.case == GkCase::QuarticG2 {
            return None;
        }
        let zeros = vec![T::zero(); self.free_param_count()];
        let base = self.instantiate(&zeros).ok()?.control_points().to_vec();
        let dirs = self.control_point_jacobian(&zeros).ok()?;
        Some((base, dirs))
    }

    /// Whether `params` lies in the open admissible region of the case.
    pub fn is_admissible<T: Real>(&self, params: &[T]) -> bool {
        if self.check_params(params).is_err() {
            return false;
        }
        let one = T::one();
        match self.case {
            GkCase::QuadraticG0 => params[0] > T::zero(),
            GkCase::CubicG0 => params[0] > one && params[1] > T::zero(),
            GkCase::CubicG1 => params[0] > T::zero(),
            GkCase::QuarticG1 => params[0] > T::zero() && params[1] > one,
            GkCase::QuarticG2 => params[0] > T::zero() && self.g2_tangent_length(params[0]).is_ok(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::{FRAC_PI_4, SQRT_2};

    #[test]
    fn bernstein_values() {
        assert_eq!(bernstein(2, 0, -1.0).unwrap(), 1.0);
        assert_eq!(bernstein(2, 1, 0.0).unwrap(), 0.5);
        assert!((bernstein(3, 2, 0.5).unwrap() - 27.0 / 64.0).abs() < 1e-16);
    }

    #[test]
    fn bernstein_domain_errors() {
        assert!(bernstein(2, 3, 0.0f64).is_err());
        assert!(bernstein(2, 1, 1.5f64).is_err());
        assert!(bernstein(2, 1, f64::NAN).is_err());
    }

    #[test]
    fn arc_bounds() {
        assert!(ArcSpec::new(0.0).is_err());
        assert!(ArcSpec::new(-0.1).is_err());
        assert!(ArcSpec::new(1.6).is_err());
        assert!(ArcSpec::new(f64::NAN).is_err());
        assert!(ArcSpec::new(FRAC_PI_2).is_ok());
        assert_eq!(
            ArcSpec::new(90f64.to_radians()).unwrap().half_angle(),
            FRAC_PI_2
        );
    }

    #[test]
    fn curve_endpoints_and_domain() {
        let c = BezierCurve::new(vec![
            Point2::new(1.0, -1.0),
            Point2::new(2.0, 0.5),
            Point2::new(0.3, 1.0),
        ])
        .unwrap();
        assert_eq!(c.eval(-1.0).unwrap(), Point2::new(1.0, -1.0));
        assert_eq!(c.eval(1.0).unwrap(), Point2::new(0.3, 1.0));
        assert!(c.eval(1.01).is_err());
        assert!(BezierCurve::new(vec![Point2::new(0.0, f64::INFINITY), Point2::zero()]).is_err());
        assert!(BezierCurve::<f64>::new(vec![Point2::zero()]).is_err());
    }

    #[test]
    fn quadratic_template() {
        let s = GkScaffold::new(GkCase::QuadraticG0, ArcSpec::new(FRAC_PI_4).unwrap());
        let c = s.instantiate(&[1.0]).unwrap();
        let h = SQRT_2 / 2.0;
        let p = c.control_points();
        assert_eq!(p[1], Point2::new(1.0, 0.0));
        assert!((p[0].x - h).abs() < 3e-16 && (p[0].y + h).abs() < 3e-16);
        assert!((p[2].x - h).abs() < 3e-16 && (p[2].y - h).abs() < 3e-16);
    }

    #[test]
    fn quadratic_midpoint() {
        // (b0 + 2 b1 + b2) / 4 at t = 0
        let s = GkScaffold::new(GkCase::QuadraticG0, ArcSpec::new(FRAC_PI_4).unwrap());
        let xi = 1.308338;
        let m = s.instantiate(&[xi]).unwrap().eval(0.0).unwrap();
        assert!((m.x - (FRAC_PI_4.cos() + xi) / 2.0).abs() < 1e-15);
        assert!((m.x - 1.007722).abs() < 1e-6);
        assert_eq!(m.y, 0.0);
    }

    #[test]
    fn cubic_g1_template_at_half_pi() {
        let s = GkScaffold::new(GkCase::CubicG1, ArcSpec::new(FRAC_PI_2).unwrap());
        let d = 1.315566;
        let p = s.instantiate(&[d]).unwrap().control_points().to_vec();
        let expect = [(0.0, -1.0), (d, -1.0), (d, 1.0), (0.0, 1.0)];
        for (q, e) in p.iter().zip(expect) {
            assert!(
                (q.x - e.0).abs() < 1e-15 && (q.y - e.1).abs() < 1e-15,
                "{q:?}"
            );
        }
    }

    #[test]
    fn quartic_g1_middle_point_is_xi() {
        let s = GkScaffold::new(GkCase::QuarticG1, ArcSpec::new(FRAC_PI_2).unwrap());
        for d in [0.1, 0.8, 2.0] {
            let p = s.instantiate(&[d, 1.7]).unwrap();
            assert_eq!(p.control_points()[2], Point2::new(1.7, 0.0));
        }
    }

    #[test]
    fn scaffold_errors() {
        let s = GkScaffold::new(GkCase::CubicG0, ArcSpec::new(0.5).unwrap());
        assert!(matches!(
            s.instantiate(&[1.0]),
            Err(Error::ParameterCount {
                expected: 2,
                got: 1
            })
        ));
        assert!(s.instantiate(&[1.0, f64::NAN]).is_err());
        assert!(GkCase::new(2, 1).is_err());
        let g2 = GkScaffold::new(GkCase::QuarticG2, ArcSpec::new(FRAC_PI_4).unwrap());
        assert!(g2.instantiate(&[2.0f64]).is_err());
    }

    #[test]
    fn g2_curvature_is_one_at_endpoints() {
        // κ(-1) = (n-1)/n |Δb0 × Δb1| / |Δb0|^3 for a degree-n Bézier curve.
        for phi in [0.2, FRAC_PI_4, 1.2, FRAC_PI_2] {
            let s = GkScaffold::new(GkCase::QuarticG2, ArcSpec::new(phi).unwrap());
            let p = s.instantiate(&[0.95]).unwrap();
            let b = p.control_points();
            let (d0, d1) = (b[1] - b[0], b[2] - b[1]);
            let kappa = 0.75 * d0.cross(d1) / d0.norm().powi(3);
            assert!((kappa - 1.0).abs() < 1e-13, "phi={phi}: {kappa}");
        }
    }

    #[test]
    fn jacobian_matches_finite_differences() {
        let arc = ArcSpec::new(0.9).unwrap();
        for case in GkCase::ALL {
            let s = GkScaffold::new(case, arc);
            let params: Vec<f64> = match case {
                GkCase::QuarticG1 => vec![0.5, 1.1],
                GkCase::CubicG0 => vec![1.2, 0.6],
                GkCase::CubicG1 => vec![0.7],
                _ => vec![1.05],
            };
            let jac = s.control_point_jacobian(&params).unwrap();
            for (l, col) in jac.iter().enumerate() {
                let h = 1e-6;
                let mut pp = params.clone();
                let mut pm = params.clone();
                pp[l] += h;
                pm[l] -= h;
                let cp = s.instantiate(&pp).unwrap();
                let cm = s.instantiate(&pm).unwrap();
                for (j, &c) in col.iter().enumerate() {
                    let fd = (cp.control_points()[j] - cm.control_points()[j]) * (0.5 / h);
                    assert!((fd - c).norm() < 1e-8, "{case} param {l} point {j}");
                }
            }
        }
    }

    #[test]
    fn leading_coefficient_of_quadratic() {
        // p(t) = b0 (1-t)^2/4 + b1 (1-t^2)/2 + b2 (1+t)^2/4
        let c = BezierCurve::new(vec![
            Point2::new(1.0, 2.0),
            Point2::new(3.0, -1.0),
            Point2::new(0.0, 5.0),
        ])
        .unwrap();
        let l = c.leading_coefficient();
        assert!((l.x - (1.0 / 4.0 - 3.0 / 2.0 + 0.0)).abs() < 1e-15);
        assert!((l.y - (2.0 / 4.0 + 1.0 / 2.0 + 5.0 / 4.0)).abs() < 1e-15);
    }
}
