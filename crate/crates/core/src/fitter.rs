//! Optimal approximants: solve `ψ(t_i) = 0` at the zeros of the constrained
//! minimax polynomial for the free control-point parameters.
//!
//! For the affine templates every condition `ψ^(m)(t) = 0` is a quadratic
//! form in the parameters. Two-parameter systems are solved by eliminating
//! the first parameter through the resultant of the two quadratics (a quartic
//! in the second), then polishing each candidate with damped Newton, merged
//! with multi-start Newton runs seeded from the boundary crossings of the
//! admissible region. Among admissible solutions the one of least `|C|` is
//! returned, where `ψ = C · p*`.

use crate::error::{Error, Result};
use crate::geometry::{ArcSpec, BezierCurve, GkCase, GkScaffold, Point2};
use crate::metrics::{self, derivative_values, leibniz_dot, ErrorReport};
use crate::minimax::ConstrainedMinimaxPoly;
use crate::poly::{quadratic_roots, Poly};
use crate::real::{ipow, Real};
use crate::solve::{newton_system, NewtonOptions};

/// Smallest half-angle the fitter accepts.
pub const MIN_HALF_ANGLE: f64 = 1e-8;

/// Largest `|ψ^(m)(t_i)|` accepted for a converged solution.
pub const RESIDUAL_TOL: f64 = 1e-10;

const DEDUPE_TOL: f64 = 1e-8;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FitOptions {
    /// Grid size for the error report.
    pub samples: usize,
}

impl Default for FitOptions {
    fn default() -> Self {
        Self { samples: 10_000 }
    }
}

/// Zero structure of the even degree-`2n` polynomial that `ψ` is forced to
/// be a multiple of:
/// `r(t) = (1 - t²)^a · t^o · Π (t² - w_i²)^(m_i)`.
#[derive(Debug, Clone, PartialEq)]
pub struct ZeroPattern<T = f64> {
    n: usize,
    k: usize,
    boundary: usize,
    origin: usize,
    interior: Vec<(T, usize)>,
}

impl<T: Real> ZeroPattern<T> {
    /// `boundary = a ≥ k + 1` is the multiplicity at `±1`, `origin` the (even)
    /// multiplicity at `0`, `interior` the positive zeros with multiplicities.
    pub fn new(
        n: usize,
        k: usize,
        boundary: usize,
        origin: usize,
        interior: Vec<(T, usize)>,
    ) -> Result<Self> {
        let bad = |msg: String| Err(Error::InvalidPattern(msg));
        if boundary < k + 1 {
            return bad(format!(
                "boundary multiplicity {boundary} is below the contact order {}",
                k + 1
            ));
        }
        if !origin.is_multiple_of(2) {
            return bad(format!(
                "multiplicity {origin} at 0 must be even for an even polynomial"
            ));
        }
        let mut prev = T::zero();
        for &(w, m) in &interior {
            if m == 0 || !w.is_finite() || !(w > prev) || !(w < T::one()) {
                return bad("interior zeros must be strictly increasing in (0, 1) with positive multiplicity".into());
            }
            prev = w;
        }
        let total = 2 * boundary + origin + 2 * interior.iter().map(|z| z.1).sum::<usize>();
        if total != 2 * n {
            return bad(format!(
                "zero count {total} does not match degree {}",
                2 * n
            ));
        }
        Ok(Self {
            n,
            k,
            boundary,
            origin,
            interior,
        })
    }

    /// Simple zeros at `±t_i` plus the minimal contact at `±1`.
    pub fn simple(n: usize, k: usize, positive_zeros: &[T]) -> Result<Self> {
        Self::new(
            n,
            k,
            k + 1,
            0,
            positive_zeros.iter().map(|&z| (z, 1)).collect(),
        )
    }

    pub fn from_minimax(poly: &ConstrainedMinimaxPoly<T>) -> Self {
        Self {
            n: poly.n(),
            k: poly.k(),
            boundary: poly.k() + 1,
            origin: 0,
            interior: poly.positive_zeros().iter().map(|&z| (z, 1)).collect(),
        }
    }

    pub fn degree(&self) -> usize {
        self.n
    }

    pub fn smoothness(&self) -> usize {
        self.k
    }

    pub fn boundary_multiplicity(&self) -> usize {
        self.boundary
    }

    pub fn origin_multiplicity(&self) -> usize {
        self.origin
    }

    pub fn interior(&self) -> &[(T, usize)] {
        &self.interior
    }

    /// Conditions `ψ^(m)(t) = 0` beyond the built-in contact at `±1`. By
    /// evenness of `ψ` only nonnegative `t` (and even orders at 0) appear.
    pub fn conditions(&self) -> Vec<(T, usize)> {
        let mut out = Vec::new();
        for m in self.k + 1..self.boundary {
            out.push((T::one(), m));
        }
        for m in (0..self.origin).step_by(2) {
            out.push((T::zero(), m));
        }
        for &(w, mult) in &self.interior {
            for m in 0..mult {
                out.push((w, m));
            }
        }
        out
    }

    pub fn eval(&self, t: T) -> T {
        let u = t * t;
        let inner = self
            .interior
            .iter()
            .fold(T::one(), |acc, &(w, m)| acc * ipow(u - w * w, m as u32));
        ipow(T::one() - u, self.boundary as u32) * ipow(t, self.origin as u32) * inner
    }

    /// `C` with `ψ = C · r`, from the leading coefficients: `ψ` has leading
    /// coefficient `|L|²` (`L` the leading coefficient vector of `p`) and `r`
    /// has `(-1)^a`.
    pub fn constant_from_leading(&self, curve: &BezierCurve<T>) -> T {
        let l = curve.leading_coefficient().norm_squared();
        if self.boundary.is_multiple_of(2) {
            l
        } else {
            -l
        }
    }

    pub fn to_f64(&self) -> ZeroPattern<f64> {
        ZeroPattern {
            n: self.n,
            k: self.k,
            boundary: self.boundary,
            origin: self.origin,
            interior: self
                .interior
                .iter()
                .map(|&(w, m)| (w.as_f64(), m))
                .collect(),
        }
    }
}

/// `C = (|p(0)|² - 1) / q*(0)`.
pub fn compute_c<T: Real>(curve: &BezierCurve<T>, poly: &ConstrainedMinimaxPoly<T>) -> Result<T> {
    let q0 = poly.q_at_zero();
    if q0.is_zero() || !q0.is_finite() {
        return Err(Error::InvalidInput(
            "minimax polynomial has q*(0) = 0; its zeros are corrupt".into(),
        ));
    }
    Ok(metrics::psi(curve, T::zero())? / q0)
}

/// The two axis-aligned ellipses `e_i(ξ, η) = 0` equivalent to the cubic
/// `G^0` conditions `ψ(t_i) = 0`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Ellipse {
    pub center: Point2<f64>,
    /// Semiaxes along `ξ` and `η`.
    pub semiaxes: (f64, f64),
}

impl Ellipse {
    /// `((ξ - p)/a)² + ((η - q)/b)² - 1`.
    pub fn eval(&self, xi: f64, eta: f64) -> f64 {
        let u = (xi - self.center.x) / self.semiaxes.0;
        let v = (eta - self.center.y) / self.semiaxes.1;
        u * u + v * v - 1.0
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EllipsePair {
    pub ellipses: [Ellipse; 2],
}

impl EllipsePair {
    /// For the cubic `G^0` template `b1 = (ξ, -η)`, `b2 = (ξ, η)`, at
    /// parameters `t_1, t_2`:
    /// `x = (B0 + B3) cos φ + (B1 + B2) ξ`, `y = (B3 - B0) sin φ + (B2 - B1) η`.
    pub fn cubic_g0(arc: ArcSpec, zeros: [f64; 2]) -> Result<Self> {
        let (c, s) = arc.cos_sin::<f64>();
        let make = |t: f64| -> Result<Ellipse> {
            let b: Vec<f64> = (0..4)
                .map(|j| crate::geometry::bernstein(3, j, t))
                .collect::<Result<_>>()?;
            let sx = b[1] + b[2];
            let sy = b[2] - b[1];
            if sx.abs() < 1e-300 || sy.abs() < 1e-300 {
                return Err(Error::InvalidInput(format!(
                    "degenerate ellipse at t = {t}"
                )));
            }
            Ok(Ellipse {
                center: Point2::new(-(b[0] + b[3]) * c / sx, -(b[3] - b[0]) * s / sy),
                semiaxes: (1.0 / sx.abs(), 1.0 / sy.abs()),
            })
        };
        Ok(Self {
            ellipses: [make(zeros[0])?, make(zeros[1])?],
        })
    }
}

/// Where each condition curve meets the two boundary lines of the
/// admissible region.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BoundaryCrossings {
    pub param_names: [&'static str; 2],
    /// `values[l][i]`: parameter `l` on the boundary line where the other
    /// parameter sits at its bound, on condition curve `i`.
    pub values: [[f64; 2]; 2],
}

impl BoundaryCrossings {
    /// The sign relation that guarantees a unique admissible intersection.
    pub fn relation_holds(&self) -> bool {
        (self.values[0][0] - self.values[0][1]) * (self.values[1][0] - self.values[1][1]) < 0.0
    }
}

/// One real solution of the condition system.
#[derive(Debug, Clone, PartialEq)]
pub struct Branch {
    pub params: Vec<f64>,
    pub c_constant: f64,
    pub max_abs_psi: f64,
    pub admissible: bool,
}

#[derive(Debug, Clone)]
pub struct FitResult<T = f64> {
    pub case: GkCase,
    pub arc: ArcSpec,
    pub curve: BezierCurve<T>,
    pub params: Vec<T>,
    pub c_constant: T,
    pub max_abs_psi: f64,
    pub hausdorff: f64,
    pub error: ErrorReport,
    /// Number of admissible solutions found.
    pub branch_count: usize,
    /// Every real solution found, admissible or not, sorted by parameters.
    pub branches: Vec<Branch>,
    pub pattern: ZeroPattern<T>,
    pub minimax_poly: Option<ConstrainedMinimaxPoly<T>>,
    pub crossings: Option<BoundaryCrossings>,
    /// Largest `|ψ^(m)(t)|` over the imposed conditions.
    pub residual: f64,
}

impl<T: Real> FitResult<T> {
    /// More than one admissible solution was found; the least-`|C|` rule
    /// picked the returned one.
    pub fn branch_ambiguous(&self) -> bool {
        self.branch_count > 1
    }

    pub fn to_f64(&self) -> FitResult<f64> {
        FitResult {
            case: self.case,
            arc: self.arc,
            curve: self.curve.to_f64(),
            params: self.params.iter().map(|p| p.as_f64()).collect(),
            c_constant: self.c_constant.as_f64(),
            max_abs_psi: self.max_abs_psi,
            hausdorff: self.hausdorff,
            error: self.error,
            branch_count: self.branch_count,
            branches: self.branches.clone(),
            pattern: self.pattern.to_f64(),
            minimax_poly: self.minimax_poly.as_ref().map(|p| p.to_f64()),
            crossings: self.crossings,
            residual: self.residual,
        }
    }
}

/// `c0 + 2 Σ b_l x_l + Σ_{l,l'} a_{ll'} x_l x_{l'}`.
#[derive(Debug, Clone)]
struct QuadForm<T> {
    c0: T,
    b: Vec<T>,
    a: Vec<Vec<T>>,
}

impl<T: Real> QuadForm<T> {
    fn new(base: &[Point2<T>], dirs: &[Vec<Point2<T>>], t: T, m: usize) -> Self {
        let db = derivative_values(base, t, m);
        let du: Vec<Vec<Point2<T>>> = dirs.iter().map(|d| derivative_values(d, t, m)).collect();
        let mut c0 = leibniz_dot(&db, &db, m);
        if m == 0 {
            c0 = c0 - T::one();
        }
        let b = du.iter().map(|u| leibniz_dot(&db, u, m)).collect();
        let a = du
            .iter()
            .map(|u| du.iter().map(|v| leibniz_dot(u, v, m)).collect())
            .collect();
        Self { c0, b, a }
    }

    fn eval(&self, x: &[T]) -> T {
        let two = T::of(2.0);
        let mut v = self.c0;
        for l in 0..x.len() {
            v = v + two * self.b[l] * x[l];
            for r in 0..x.len() {
                v = v + self.a[l][r] * x[l] * x[r];
            }
        }
        v
    }

    fn grad(&self, x: &[T]) -> Vec<T> {
        let two = T::of(2.0);
        (0..x.len())
            .map(|l| (0..x.len()).fold(two * self.b[l], |g, r| g + two * self.a[l][r] * x[r]))
            .collect()
    }

    /// Restriction to variable `l` with the other fixed at `other`, as
    /// `(α, β, γ)` of `α x² + β x + γ` (two-variable forms only).
    fn restrict(&self, l: usize, other: T) -> (T, T, T) {
        let o = 1 - l;
        let two = T::of(2.0);
        (
            self.a[l][l],
            two * self.b[l] + two * self.a[l][o] * other,
            self.c0 + two * self.b[o] * other + self.a[o][o] * other * other,
        )
    }

    /// `(α, β(y), γ(y))` as polynomials in the second variable.
    fn in_first(&self) -> (Poly<T>, Poly<T>, Poly<T>) {
        let two = T::of(2.0);
        (
            Poly::new(vec![self.a[0][0]]),
            Poly::new(vec![two * self.b[0], two * self.a[0][1]]),
            Poly::new(vec![self.c0, two * self.b[1], self.a[1][1]]),
        )
    }
}

fn condition_forms<T: Real>(
    base: &[Point2<T>],
    dirs: &[Vec<Point2<T>>],
    conditions: &[(T, usize)],
) -> Vec<QuadForm<T>> {
    conditions
        .iter()
        .map(|&(t, m)| QuadForm::new(base, dirs, t, m))
        .collect()
}

fn newton_on_forms<T: Real>(forms: &[QuadForm<T>], x0: &[T]) -> Option<Vec<T>> {
    let sys = |x: &[T]| {
        (
            forms.iter().map(|f| f.eval(x)).collect(),
            forms.iter().map(|f| f.grad(x)).collect(),
        )
    };
    let out = newton_system(sys, x0, NewtonOptions::default()).ok()?;
    (out.residual.as_f64() < RESIDUAL_TOL).then_some(out.x)
}

/// Sorts and merges solutions closer than `DEDUPE_TOL`, measured relative to
/// each parameter's distance from its boundary value (`anchors`): at small
/// angles distinct branches all crowd the corner of the admissible region.
fn sort_dedupe<T: Real>(mut sols: Vec<Vec<T>>, anchors: &[f64]) -> Vec<Vec<T>> {
    sols.retain(|s| s.iter().all(|v| v.is_finite()));
    sols.sort_by(|a, b| {
        a.iter()
            .zip(b)
            .map(|(x, y)| x.partial_cmp(y).unwrap_or(std::cmp::Ordering::Equal))
            .find(|o| o.is_ne())
            .unwrap_or(std::cmp::Ordering::Equal)
    });
    let mut out: Vec<Vec<T>> = Vec::new();
    for s in sols {
        let dup = out.iter().any(|o| {
            o.iter().zip(&s).zip(anchors).all(|((a, b), &z)| {
                let scale = (*a - T::of(z)).abs().as_f64().max(1e-300);
                (*a - *b).abs().as_f64() <= DEDUPE_TOL * scale
            })
        });
        if !dup {
            out.push(s);
        }
    }
    out
}

/// All real solutions of a single quadratic condition in one variable.
fn solve_one<T: Real>(form: &QuadForm<T>, anchors: &[f64]) -> Vec<Vec<T>> {
    let two = T::of(2.0);
    let roots = quadratic_roots(form.a[0][0], two * form.b[0], form.c0);
    sort_dedupe(
        roots
            .into_iter()
            .filter_map(|r| newton_on_forms(std::slice::from_ref(form), &[r]))
            .collect(),
        anchors,
    )
}

/// All real solutions of two quadratic conditions in two variables found by
/// resultant elimination and by Newton from `seeds`.
fn solve_two<T: Real>(forms: &[QuadForm<T>], seeds: &[Vec<T>], anchors: &[f64]) -> Vec<Vec<T>> {
    let (f1, f2) = (&forms[0], &forms[1]);
    let (a1, b1, c1) = f1.in_first();
    let (a2, b2, c2) = f2.in_first();
    let ac = a1.mul(&c2).add(&a2.mul(&c1).scale(-T::one()));
    let ab = a1.mul(&b2).add(&a2.mul(&b1).scale(-T::one()));
    let bc = b1.mul(&c2).add(&b2.mul(&c1).scale(-T::one()));
    let res = ac.mul(&ac).add(&ab.mul(&bc).scale(-T::one()));

    let mut candidates: Vec<Vec<T>> = Vec::new();
    if res.degree() > 0 {
        let bound = res.cauchy_bound().min(T::of(1e3));
        for y in res.real_roots(-bound, bound) {
            for f in [f1, f2] {
                let (a, b, c) = f.restrict(0, y);
                for x in quadratic_roots(a, b, c) {
                    candidates.push(vec![x, y]);
                }
            }
        }
    }
    candidates.extend(seeds.iter().cloned());
    sort_dedupe(
        candidates
            .iter()
            .filter_map(|x0| newton_on_forms(forms, x0))
            .collect(),
        anchors,
    )
}

/// `(d, ξ)` solutions of the quartic `G^2` condition with the curvature
/// constraint `d² = 3 (1 - ξ c) / 4` substituted, returned as `[ξ]`.
fn solve_g2<T: Real>(form: &QuadForm<T>, arc: ArcSpec) -> Vec<Vec<T>> {
    let (c, _) = arc.cos_sin::<T>();
    let two = T::of(2.0);
    let q = T::of(0.75);
    // Variables: 0 = d, 1 = ξ.
    let (add, adx, axx) = (form.a[0][0], form.a[0][1], form.a[1][1]);
    let (bd, bx) = (form.b[0], form.b[1]);
    // f(ξ) = A(ξ) + d(ξ) B(ξ)
    let a_poly = Poly::new(vec![form.c0 + add * q, two * bx - add * q * c, axx]);
    let b_poly = Poly::new(vec![two * bd, two * adx]);
    let dsq = Poly::new(vec![q, -q * c]);
    let res = a_poly
        .mul(&a_poly)
        .add(&dsq.mul(&b_poly.mul(&b_poly)).scale(-T::one()));
    let hi = if c > T::zero() {
        (T::one() / c).min(T::of(1e3))
    } else {
        T::of(1e3)
    };
    let d_of = |xi: T| (q * (T::one() - xi * c)).sqrt();
    let f = |xi: T| a_poly.eval(xi) + d_of(xi) * b_poly.eval(xi);
    let df = |xi: T| {
        let d = d_of(xi);
        a_poly.derivative().eval(xi) - q * c / (two * d) * b_poly.eval(xi)
            + d * b_poly.derivative().eval(xi)
    };
    let mut out = Vec::new();
    for xi0 in res.real_roots(T::of(-1e3), hi) {
        if !(xi0 * c < T::one()) {
            continue;
        }
        let scale = a_poly.eval(xi0).abs() + (d_of(xi0) * b_poly.eval(xi0)).abs();
        if !(f(xi0).abs() <= T::of(1e-6) * (scale + T::of(1e-300))) {
            continue; // root of A - dB, introduced by squaring
        }
        let mut xi = xi0;
        for _ in 0..8 {
            let d = df(xi);
            if d.is_zero() {
                break;
            }
            let next = xi - f(xi) / d;
            if !(next * c < T::one()) || !(f(next).abs() <= f(xi).abs()) {
                break;
            }
            xi = next;
        }
        if f(xi).abs().as_f64() < RESIDUAL_TOL {
            out.push(vec![xi]);
        }
    }
    sort_dedupe(out, &[1.0])
}

fn boundary_value(name: &str) -> f64 {
    if name == "xi" {
        1.0
    } else {
        0.0
    }
}

fn crossings<T: Real>(case: GkCase, forms: &[QuadForm<T>]) -> Option<BoundaryCrossings> {
    let names = case.param_names();
    if names.len() != 2 || forms.len() != 2 {
        return None;
    }
    let mut values = [[f64::NAN; 2]; 2];
    for l in 0..2 {
        let other = T::of(boundary_value(names[1 - l]));
        for (i, f) in forms.iter().enumerate() {
            let (a, b, c) = f.restrict(l, other);
            if let Some(r) = quadratic_roots(a, b, c).last() {
                values[l][i] = r.as_f64();
            }
        }
    }
    Some(BoundaryCrossings {
        param_names: [names[0], names[1]],
        values,
    })
}

/// 5×5 Newton seeds over the box between each parameter's boundary value
/// and its largest crossing, plus the crossing-box midpoint.
fn seeds_from(crossings: &Option<BoundaryCrossings>) -> Vec<Vec<f64>> {
    let Some(bc) = crossings else {
        return Vec::new();
    };
    if bc.values.iter().flatten().any(|v| !v.is_finite()) {
        return Vec::new();
    }
    let mut seeds = vec![vec![
        (bc.values[0][0] + bc.values[0][1]) / 2.0,
        (bc.values[1][0] + bc.values[1][1]) / 2.0,
    ]];
    let range = |l: usize| {
        let lo = boundary_value(bc.param_names[l]);
        let hi = bc.values[l][0].max(bc.values[l][1]).max(lo + 1e-3);
        (lo, hi)
    };
    let (r0, r1) = (range(0), range(1));
    for i in 0..5 {
        for j in 0..5 {
            let f = |r: (f64, f64), k: usize| r.0 + (r.1 - r.0) * (k as f64 + 0.5) / 5.0;
            seeds.push(vec![f(r0, i), f(r1, j)]);
        }
    }
    seeds
}

fn check_angle(arc: ArcSpec) -> Result<()> {
    if arc.half_angle() < MIN_HALF_ANGLE {
        return Err(Error::DegenerateHalfAngle(arc.half_angle()));
    }
    Ok(())
}

/// Real solutions of the pattern's condition system, unsorted by quality.
fn solve_pattern<T: Real>(
    scaffold: &GkScaffold,
    pattern: &ZeroPattern<T>,
) -> Result<(Vec<Vec<T>>, Option<BoundaryCrossings>)> {
    let case = scaffold.case();
    let conds = pattern.conditions();
    if conds.len() != scaffold.free_param_count() {
        return Err(Error::InvalidPattern(format!(
            "{} conditions for {} free parameters",
            conds.len(),
            scaffold.free_param_count()
        )));
    }
    if case == GkCase::QuarticG2 {
        let affine = GkScaffold::new(GkCase::QuarticG1, scaffold.arc());
        let (base, dirs) = affine.affine_parts::<T>().expect("affine template");
        let form = QuadForm::new(&base, &dirs, conds[0].0, conds[0].1);
        return Ok((solve_g2(&form, scaffold.arc()), None));
    }
    let (base, dirs) = scaffold.affine_parts::<T>().expect("affine template");
    let forms = condition_forms(&base, &dirs, &conds);
    let anchors: Vec<f64> = case
        .param_names()
        .iter()
        .map(|n| boundary_value(n))
        .collect();
    Ok(match forms.len() {
        1 => (solve_one(&forms[0], &anchors), None),
        _ => {
            let bc = crossings(case, &forms);
            let seeds: Vec<Vec<T>> = seeds_from(&bc)
                .into_iter()
                .map(|s| s.into_iter().map(T::of).collect())
                .collect();
            (solve_two(&forms, &seeds, &anchors), bc)
        }
    })
}

fn condition_residual<T: Real>(curve: &BezierCurve<T>, pattern: &ZeroPattern<T>) -> f64 {
    pattern
        .conditions()
        .iter()
        .map(|&(t, m)| {
            metrics::psi_derivatives(curve, t, m)
                .map(|d| d[m].abs().as_f64())
                .unwrap_or(f64::INFINITY)
        })
        .fold(0.0, f64::max)
}

/// Builds the result from candidate parameter vectors: keeps admissible
/// ones, picks least `|C|`.
fn assemble<T: Real>(
    scaffold: GkScaffold,
    solutions: Vec<Vec<T>>,
    pattern: ZeroPattern<T>,
    poly: Option<ConstrainedMinimaxPoly<T>>,
    crossings: Option<BoundaryCrossings>,
    opts: &FitOptions,
) -> Result<FitResult<T>> {
    struct Cand<T> {
        params: Vec<T>,
        curve: BezierCurve<T>,
        c: T,
        report: ErrorReport,
    }
    let mut branches = Vec::new();
    let mut admissible: Vec<Cand<T>> = Vec::new();
    for params in &solutions {
        let Ok(curve) = scaffold.instantiate(params) else {
            continue;
        };
        let c = match (&poly, pattern.origin_multiplicity()) {
            (Some(p), _) => compute_c(&curve, p)?,
            (None, 0) => {
                let r0 = pattern.eval(T::zero());
                metrics::psi(&curve, T::zero())? / r0
            }
            (None, _) => pattern.constant_from_leading(&curve),
        };
        let ok = scaffold.is_admissible(params);
        let report = metrics::max_error(&curve, opts.samples)?;
        branches.push(Branch {
            params: params.iter().map(|p| p.as_f64()).collect(),
            c_constant: c.as_f64(),
            max_abs_psi: report.max_abs_psi,
            admissible: ok,
        });
        if ok {
            admissible.push(Cand {
                params: params.clone(),
                curve,
                c,
                report,
            });
        }
    }
    let branch_count = admissible.len();
    let best = admissible
        .into_iter()
        .min_by(|a, b| {
            a.c.abs()
                .partial_cmp(&b.c.abs())
                .unwrap_or(std::cmp::Ordering::Equal)
        })
        .ok_or_else(|| Error::NoAdmissibleSolution {
            endpoints: solutions
                .iter()
                .map(|s| s.iter().map(|v| v.as_f64()).collect())
                .collect(),
        })?;
    let residual = condition_residual(&best.curve, &pattern);
    Ok(FitResult {
        case: scaffold.case(),
        arc: scaffold.arc(),
        curve: best.curve,
        params: best.params,
        c_constant: best.c,
        max_abs_psi: best.report.max_abs_psi,
        hausdorff: best.report.hausdorff,
        error: best.report,
        branch_count,
        branches,
        pattern,
        minimax_poly: poly,
        crossings,
        residual,
    })
}

/// Fit for a `case` forcing `ψ` onto an arbitrary zero pattern.
pub fn fit_pattern<T: Real>(
    case: GkCase,
    pattern: ZeroPattern<T>,
    arc: ArcSpec,
    opts: &FitOptions,
) -> Result<FitResult<T>> {
    check_angle(arc)?;
    if (pattern.degree(), pattern.smoothness()) != (case.degree(), case.smoothness()) {
        return Err(Error::InvalidPattern(format!(
            "pattern for n={}, k={} used with case {case}",
            pattern.degree(),
            pattern.smoothness()
        )));
    }
    let scaffold = GkScaffold::new(case, arc);
    let (solutions, bc) = solve_pattern(&scaffold, &pattern)?;
    assemble(scaffold, solutions, pattern, None, bc, opts)
}

/// Fit whose `ψ` vanishes at `±t_i` for the given positive zeros (simple)
/// and has the minimal contact order at `±1`.
pub fn fit_prescribed_zeros<T: Real>(
    n: usize,
    k: usize,
    positive_zeros: &[T],
    arc: ArcSpec,
) -> Result<FitResult<T>> {
    let case = GkCase::new(n, k)?;
    let pattern = ZeroPattern::simple(n, k, positive_zeros)?;
    fit_pattern(case, pattern, arc, &FitOptions::default())
}

/// Optimal fit for `case` using its constrained minimax polynomial.
pub fn fit_with<T: Real>(case: GkCase, arc: ArcSpec, opts: &FitOptions) -> Result<FitResult<T>> {
    check_angle(arc)?;
    let scaffold = GkScaffold::new(case, arc);
    let poly = ConstrainedMinimaxPoly::<T>::best(case.degree(), case.smoothness())?;
    let pattern = ZeroPattern::from_minimax(&poly);
    let (solutions, bc) = match case {
        GkCase::QuadraticG0 => (vec![vec![quadratic_g0_xi::<T>(arc)]], None),
        GkCase::CubicG1 => (vec![vec![cubic_g1_d::<T>(arc)?]], None),
        _ => solve_pattern(&scaffold, &pattern)?,
    };
    if matches!(case, GkCase::QuadraticG0 | GkCase::CubicG1)
        && !scaffold.is_admissible(&solutions[0])
    {
        return Err(Error::NotAdmissible {
            params: solutions[0].iter().map(|v| v.as_f64()).collect(),
            region: case.region(),
        });
    }
    assemble(scaffold, solutions, pattern, Some(poly), bc, opts)
}

pub fn fit<T: Real>(case: GkCase, arc: ArcSpec) -> Result<FitResult<T>> {
    fit_with(case, arc, &FitOptions::default())
}

/// `ξ = -√2 cos φ + √(2 + 2√2 + cos² φ)`.
fn quadratic_g0_xi<T: Real>(arc: ArcSpec) -> T {
    let (c, _) = arc.cos_sin::<T>();
    let r2 = T::of(2.0).sqrt();
    -r2 * c + (T::of(2.0) + T::of(2.0) * r2 + c * c).sqrt()
}

/// Unique positive root of
/// `(9(b²-1)(1+cos 2φ) + 12b) d² - 4 sin 2φ (3b² - 2b - 3) d + 8 sin² φ ((b-1)² - 2)`
/// with `b = ∛(√2 - 1)`.
fn cubic_g1_d<T: Real>(arc: ArcSpec) -> Result<T> {
    let (c, s) = arc.cos_sin::<T>();
    let two = T::of(2.0);
    let b = (two.sqrt() - T::one()).cube_root();
    let one_plus_cos2 = two * c * c;
    let sin2 = two * s * c;
    let qa = T::of(9.0) * (b * b - T::one()) * one_plus_cos2 + T::of(12.0) * b;
    let qb = -T::of(4.0) * sin2 * (T::of(3.0) * b * b - two * b - T::of(3.0));
    let qc = T::of(8.0) * s * s * ((b - T::one()) * (b - T::one()) - two);
    if !(qc < T::zero()) {
        return Err(Error::NoConvergence {
            method: "cubic G1 quadratic (f(0) < 0 violated)",
            iterations: 0,
            residual: qc.as_f64(),
        });
    }
    quadratic_roots(qa, qb, qc)
        .into_iter()
        .rfind(|&d| d > T::zero())
        .ok_or(Error::NotAdmissible {
            params: Vec::new(),
            region: GkCase::CubicG1.region(),
        })
}

pub fn fit_quadratic_g0<T: Real>(arc: ArcSpec) -> Result<FitResult<T>> {
    fit(GkCase::QuadraticG0, arc)
}

pub fn fit_cubic_g0<T: Real>(arc: ArcSpec) -> Result<FitResult<T>> {
    fit(GkCase::CubicG0, arc)
}

pub fn fit_cubic_g1<T: Real>(arc: ArcSpec) -> Result<FitResult<T>> {
    fit(GkCase::CubicG1, arc)
}

pub fn fit_quartic_g1<T: Real>(arc: ArcSpec) -> Result<FitResult<T>> {
    fit(GkCase::QuarticG1, arc)
}

pub fn fit_quartic_g2<T: Real>(arc: ArcSpec) -> Result<FitResult<T>> {
    fit(GkCase::QuarticG2, arc)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::real::DoubleDouble;
    use std::f64::consts::{FRAC_PI_2, FRAC_PI_4};

    fn arc(phi: f64) -> ArcSpec {
        ArcSpec::new(phi).unwrap()
    }

    #[test]
    fn quadratic_closed_form() {
        let r = fit_quadratic_g0::<f64>(arc(FRAC_PI_4)).unwrap();
        assert!((r.params[0] - 1.308338).abs() < 1e-6);
        assert_eq!(r.branch_count, 1);
        assert!(r.residual < 1e-14);
    }

    #[test]
    fn cubic_g1_half_pi() {
        let r = fit_cubic_g1::<f64>(arc(FRAC_PI_2)).unwrap();
        assert!((r.params[0] - 1.315566).abs() < 1e-6);
    }

    #[test]
    fn cubic_g0_half_pi() {
        let r = fit_cubic_g0::<f64>(arc(FRAC_PI_2)).unwrap();
        let s3 = 3f64.sqrt();
        assert!((r.params[0] - 4.0 * (2.0 + 4.0 * s3).sqrt() / 9.0).abs() < 1e-12);
        assert!((r.params[1] - (5.0 + 2.0 * s3) / 9.0).abs() < 1e-12);
        assert!(r.crossings.unwrap().relation_holds());
    }

    #[test]
    fn quartic_g1_half_pi() {
        let r = fit_quartic_g1::<f64>(arc(FRAC_PI_2)).unwrap();
        assert!((r.params[1] - 1.50506).abs() < 1e-4, "{:?}", r.params);
        assert!((r.params[0] - 0.87152).abs() < 1e-4, "{:?}", r.params);
    }

    #[test]
    fn quartic_g1_quarter_pi() {
        let r = fit_quartic_g1::<DoubleDouble>(arc(FRAC_PI_4)).unwrap();
        assert!(
            (r.hausdorff - 6.34e-7).abs() / 6.34e-7 < 0.02,
            "{}",
            r.hausdorff
        );
        let bc = r.crossings.unwrap();
        assert!((bc.values[0][0] - 0.514871).abs() < 1e-6, "{bc:?}");
        assert!((bc.values[0][1] - 0.495957).abs() < 1e-6);
        assert!((bc.values[1][0] - 1.49096).abs() < 1e-5);
        assert!(bc.relation_holds());
    }

    #[test]
    fn quartic_g2_quarter_pi() {
        let r = fit_quartic_g2::<DoubleDouble>(arc(FRAC_PI_4)).unwrap();
        assert!(r.residual < 1e-25, "{}", r.residual);
        assert!(
            (r.params[0].as_f64() - 1.1085997).abs() < 1e-6,
            "{:?}",
            r.branches
        );
    }

    #[test]
    fn refuses_tiny_angles() {
        assert!(matches!(
            fit_quadratic_g0::<f64>(arc(1e-9)),
            Err(Error::DegenerateHalfAngle(_))
        ));
    }

    #[test]
    fn pattern_validation() {
        assert!(ZeroPattern::<f64>::new(4, 1, 1, 0, vec![]).is_err());
        assert!(ZeroPattern::<f64>::new(4, 1, 2, 1, vec![]).is_err());
        assert!(ZeroPattern::<f64>::new(4, 1, 2, 2, vec![(0.5, 1)]).is_ok());
        assert!(ZeroPattern::<f64>::new(4, 1, 2, 2, vec![(0.5, 2)]).is_err());
        let p = ZeroPattern::<f64>::new(4, 1, 4, 0, vec![]).unwrap();
        assert_eq!(p.conditions(), vec![(1.0, 2), (1.0, 3)]);
    }

    #[test]
    fn ellipses_match_conditions() {
        // ψ(t_i) = (B1+B2)² (ξ-p)² + (B2-B1)² (η-q)² - 1 and the ellipse
        // form share their zero set; check both vanish together on a point of
        // each ellipse.
        let a = arc(1.0);
        let poly = ConstrainedMinimaxPoly::<f64>::chebyshev_k0(3);
        let z = poly.positive_zeros();
        let pair = EllipsePair::cubic_g0(a, [z[0], z[1]]).unwrap();
        let s = GkScaffold::new(GkCase::CubicG0, a);
        for (i, &e) in pair.ellipses.iter().enumerate() {
            for theta in [0.3f64, 1.2, 2.5] {
                let xi = e.center.x + e.semiaxes.0 * theta.cos();
                let eta = e.center.y + e.semiaxes.1 * theta.sin();
                assert!(e.eval(xi, eta).abs() < 1e-14);
                let c = s.instantiate(&[xi, eta]).unwrap();
                assert!(metrics::psi(&c, z[i]).unwrap().abs() < 1e-13);
            }
        }
    }
}
