//! Constrained minimax polynomials `p*(t) = (1 - t²)^(k+1) q(t)`, with `q`
//! even and monic of degree `2n - 2k - 2`, of least max norm on `[-1, 1]`.
//!
//! Only the positive zeros of `q` are stored; evaluation always goes
//! through the product form. Three families have closed forms or scalar
//! root equations (`k = 0`, `k = n - 2`, `k = n - 3`); everything else is
//! computed by an exchange iteration in the variable `u = t²`.

use std::fmt;

use crate::error::{Error, Result};
use crate::poly::Poly;
use crate::real::{ipow, Real};
use crate::solve::{bisect_root, newton_polish, solve_linear};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Family {
    ChebyshevK0,
    Penultimate,
    Antepenultimate,
    Remez,
}

impl Family {
    pub fn tag(self) -> &'static str {
        match self {
            Family::ChebyshevK0 => "chebyshev_k0",
            Family::Penultimate => "penultimate",
            Family::Antepenultimate => "antepenultimate",
            Family::Remez => "remez",
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

/// Auxiliary unknowns of the scalar root equations, kept for reporting.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum FamilyData<T> {
    None,
    /// `a^n + n a - (n - 1) = 0`.
    Penultimate {
        a: T,
    },
    /// `λ` from the palindromic-like equation and `a` from the first
    /// equality condition.
    Antepenultimate {
        lambda: T,
        a: T,
    },
}

#[derive(Debug, Clone, PartialEq)]
pub struct ConstrainedMinimaxPoly<T = f64> {
    n: usize,
    k: usize,
    positive_zeros: Vec<T>,
    norm: T,
    family: Family,
    data: FamilyData<T>,
}

fn check_nk(n: usize, k: usize) -> Result<()> {
    if n == 0 || k >= n {
        return Err(Error::InvalidInput(format!(
            "constrained minimax polynomial needs 0 <= k < n (got n={n}, k={k})"
        )));
    }
    Ok(())
}

impl<T: Real> ConstrainedMinimaxPoly<T> {
    /// Builds the polynomial from its positive zeros and computes the norm
    /// as the largest extremum magnitude.
    pub fn from_zeros(n: usize, k: usize, positive_zeros: Vec<T>, family: Family) -> Result<Self> {
        check_nk(n, k)?;
        let m = n - k - 1;
        if positive_zeros.len() != m {
            return Err(Error::ParameterCount {
                expected: m,
                got: positive_zeros.len(),
            });
        }
        let mut prev = T::zero();
        for &z in &positive_zeros {
            if !z.is_finite() || !(z > prev) || !(z < T::one()) {
                return Err(Error::InvalidInput(format!(
                    "positive zeros must be strictly increasing in (0, 1), got {:?}",
                    positive_zeros
                        .iter()
                        .map(|z| z.as_f64())
                        .collect::<Vec<_>>()
                )));
            }
            prev = z;
        }
        let mut poly = Self {
            n,
            k,
            positive_zeros,
            norm: T::zero(),
            family,
            data: FamilyData::None,
        };
        poly.norm = poly
            .alternation_points()
            .into_iter()
            .fold(T::zero(), |m, t| m.max(poly.eval(t).abs()));
        Ok(poly)
    }

    fn with_data(mut self, data: FamilyData<T>) -> Self {
        self.data = data;
        self
    }

    /// The best available construction for `(n, k)`: a closed-form family
    /// when one applies, the exchange iteration otherwise.
    pub fn best(n: usize, k: usize) -> Result<Self> {
        check_nk(n, k)?;
        if k == 0 {
            Ok(Self::chebyshev_k0(n))
        } else if k + 2 == n {
            Self::penultimate(n)
        } else if k + 3 == n {
            Self::antepenultimate(n)
        } else {
            Self::remez_general(n, k, T::of(1e6 * T::UNIT_ROUNDOFF))
        }
    }

    /// `k = 0`: a scaled and dilated Chebyshev polynomial of degree `2n`.
    pub fn chebyshev_k0(n: usize) -> Self {
        assert!(n >= 1, "chebyshev_k0 needs n >= 1");
        let two_n = 2 * n;
        let angle = |j: usize| T::pi() * T::of_usize(2 * j - 1) / T::of_usize(4 * n);
        // Largest and interior roots of T_{2n}, Newton-polished on the
        // recurrence so accuracy does not depend on the library cosine.
        let polish = |x: T| {
            newton_polish(
                |x| chebyshev_t(two_n, x).0,
                |x| chebyshev_t(two_n, x).1,
                x,
                3,
                T::zero(),
                T::one(),
            )
        };
        let c = polish(angle(1).cos());
        let mut zeros: Vec<T> = (2..=n).map(|j| polish(angle(j).cos()) / c).collect();
        zeros.sort_by(|a, b| a.partial_cmp(b).unwrap());
        let norm = T::of(2.0) * ipow(T::of(0.25) / (c * c), n as u32);
        Self {
            n,
            k: 0,
            positive_zeros: zeros,
            norm,
            family: Family::ChebyshevK0,
            data: FamilyData::None,
        }
    }

    /// `k = n - 2`: one positive zero, from the unique root of
    /// `a^n + n a - (n - 1)` on `(0, 1 - 1/n)`.
    pub fn penultimate(n: usize) -> Result<Self> {
        if n < 2 {
            return Err(Error::InvalidInput(format!(
                "penultimate family needs n >= 2, got {n}"
            )));
        }
        let nn = T::of_usize(n);
        let f = |a: T| ipow(a, n as u32) + nn * a - (nn - T::one());
        let df = |a: T| nn * ipow(a, n as u32 - 1) + nn;
        let hi = T::one() - T::one() / nn;
        let a = bisect_root(f, T::zero(), hi, T::of(T::NEWTON_STEP_TOL))?;
        let a = newton_polish(f, df, a, 2, T::zero(), hi);
        let t1 = (T::one() - nn * a / (nn - T::one())).sqrt();
        Ok(Self::from_zeros(n, n - 2, vec![t1], Family::Penultimate)?
            .with_data(FamilyData::Penultimate { a }))
    }

    /// `k = n - 3`: two positive zeros. `λ` is the root in `(0, 1)` of
    /// `λ^n - n/(n-2) λ^(n-1) - n/(n-2) λ + 1`, `a` the root in `(0, 1)` of
    /// the first equality condition with `b = λ a`, and the squared zeros are
    /// `1 - s` for the roots `s` of `s² - n/(n-1) (a+b) s + n/(n-2) a b`.
    pub fn antepenultimate(n: usize) -> Result<Self> {
        if n < 3 {
            return Err(Error::InvalidInput(format!(
                "antepenultimate family needs n >= 3, got {n}"
            )));
        }
        let nn = T::of_usize(n);
        let one = T::one();
        let r = nn / (nn - T::of(2.0));
        let q = nn / (nn - one);
        let tol = T::of(T::NEWTON_STEP_TOL);

        let zeta = |l: T| ipow(l, n as u32) - r * ipow(l, n as u32 - 1) - r * l + one;
        let dzeta =
            |l: T| nn * ipow(l, n as u32 - 1) - r * T::of_usize(n - 1) * ipow(l, n as u32 - 2) - r;
        let lambda = bisect_root(zeta, T::zero(), one, tol)?;
        let lambda = newton_polish(zeta, dzeta, lambda, 2, T::zero(), one);

        let cn = one / (nn - one) - nn * lambda / ((nn - one) * (nn - T::of(2.0)));
        let f = |a: T| -one + q * (one + lambda) * a - r * lambda * a * a + ipow(a, n as u32) * cn;
        let df = |a: T| {
            q * (one + lambda) - T::of(2.0) * r * lambda * a + nn * ipow(a, n as u32 - 1) * cn
        };
        let a = bisect_root(f, T::zero(), one, tol)?;
        let a = newton_polish(f, df, a, 2, T::zero(), one);
        let b = lambda * a;

        let s = crate::poly::quadratic_roots(one, -q * (a + b), r * a * b);
        if s.len() != 2 || s.iter().any(|&s| !(s > T::zero() && s < one)) {
            return Err(Error::NoConvergence {
                method: "antepenultimate zero extraction",
                iterations: 0,
                residual: f64::NAN,
            });
        }
        // s ascending => t² = 1 - s descending.
        let zeros = vec![(one - s[1]).sqrt(), (one - s[0]).sqrt()];
        Ok(Self::from_zeros(n, n - 3, zeros, Family::Antepenultimate)?
            .with_data(FamilyData::Antepenultimate { lambda, a }))
    }

    /// Exchange iteration on `P(u) = (1 - u)^(k+1) Q(u)`, `u = t²`, `Q` monic
    /// of degree `m = n - k - 1`. The reference set always contains `u = 0`
    /// plus `m` interior points; iteration stops once the extremal magnitudes
    /// agree to `tol` relative.
    pub fn remez_general(n: usize, k: usize, tol: T) -> Result<Self> {
        check_nk(n, k)?;
        if !(tol > T::zero()) {
            return Err(Error::InvalidInput(
                "remez tolerance must be positive".into(),
            ));
        }
        const MAX_ITER: usize = 200;
        let m = n - k - 1;
        if m == 0 {
            return Self::from_zeros(n, k, Vec::new(), Family::Remez);
        }
        let one = T::one();
        let w = |u: T| ipow(one - u, k as u32 + 1);
        let h = T::pi() / T::of_usize(2 * m + 2);
        let shrink = (T::pi() / T::of_usize(4 * m + 4)).cos();
        let mut reference: Vec<T> = (1..=m)
            .map(|i| {
                let t = (h * T::of_usize(i)).cos() / shrink;
                t * t
            })
            .collect();
        reference.push(T::zero());
        reference.sort_by(|a, b| a.partial_cmp(b).unwrap());

        let mut residual = f64::INFINITY;
        for _ in 0..MAX_ITER {
            // Unknowns: c_0..c_{m-1} of Q and the level E.
            let mut mat = Vec::with_capacity(m + 1);
            let mut rhs = Vec::with_capacity(m + 1);
            for (j, &u) in reference.iter().enumerate() {
                let wu = w(u);
                let mut row: Vec<T> = (0..m).map(|i| wu * ipow(u, i as u32)).collect();
                row.push(if j % 2 == 0 { -one } else { one });
                mat.push(row);
                rhs.push(-wu * ipow(u, m as u32));
            }
            let sol = solve_linear(mat, rhs).ok_or(Error::NoConvergence {
                method: "remez (singular reference system)",
                iterations: 0,
                residual,
            })?;
            let mut coeffs = sol[..m].to_vec();
            coeffs.push(one);
            let qpoly = Poly::new(coeffs);
            let ext = extremal_abscissae(&qpoly, k);
            if ext.len() != m {
                break;
            }
            let pval = |u: T| w(u) * qpoly.eval(u);
            let mut next = vec![T::zero()];
            next.extend(ext);
            let mags: Vec<T> = next.iter().map(|&u| pval(u).abs()).collect();
            let hi = mags.iter().fold(T::zero(), |a, &b| a.max(b));
            let lo = mags.iter().fold(T::infinity(), |a, &b| a.min(b));
            residual = ((hi - lo) / hi).as_f64();
            reference = next;
            if (hi - lo) / hi < tol {
                let mut zeros: Vec<T> = qpoly
                    .real_roots(T::zero(), one)
                    .into_iter()
                    .map(|u| u.sqrt())
                    .collect();
                zeros.sort_by(|a, b| a.partial_cmp(b).unwrap());
                return Self::from_zeros(n, k, zeros, Family::Remez);
            }
        }
        Err(Error::NoConvergence {
            method: "remez exchange",
            iterations: MAX_ITER,
            residual,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn positive_zeros(&self) -> &[T] {
        &self.positive_zeros
    }

    pub fn norm(&self) -> T {
        self.norm
    }

    pub fn family(&self) -> Family {
        self.family
    }

    pub fn data(&self) -> FamilyData<T> {
        self.data
    }

    /// `(1 - t²)^(k+1) Π (t² - t_i²)`.
    pub fn eval(&self, t: T) -> T {
        let u = t * t;
        let q = self
            .positive_zeros
            .iter()
            .fold(T::one(), |acc, &z| acc * (u - z * z));
        ipow(T::one() - u, self.k as u32 + 1) * q
    }

    /// `q(0) = Π (-t_i²)`.
    pub fn q_at_zero(&self) -> T {
        self.positive_zeros
            .iter()
            .fold(T::one(), |acc, &z| acc * -(z * z))
    }

    /// `Q(u)` with `q(t) = Q(t²)`, in monomial form.
    pub fn q_in_u(&self) -> Poly<T> {
        let roots: Vec<T> = self.positive_zeros.iter().map(|&z| z * z).collect();
        Poly::from_roots(&roots)
    }

    /// The `2n - 2k - 1` interior extrema of `p*`, increasing.
    pub fn alternation_points(&self) -> Vec<T> {
        let ext = extremal_abscissae(&self.q_in_u(), self.k);
        let mut pts: Vec<T> = ext.iter().rev().map(|&u| -u.sqrt()).collect();
        pts.push(T::zero());
        pts.extend(ext.iter().map(|&u| u.sqrt()));
        pts
    }

    /// Relative spread of `|p*|` over the alternation points, or infinity
    /// when consecutive extrema do not alternate in sign.
    pub fn equioscillation_residual(&self) -> f64 {
        let vals: Vec<T> = self
            .alternation_points()
            .into_iter()
            .map(|t| self.eval(t))
            .collect();
        if vals.len() != 2 * (self.n - self.k) - 1 {
            return f64::INFINITY;
        }
        if vals.windows(2).any(|w| !(w[0] * w[1] < T::zero())) {
            return f64::INFINITY;
        }
        let hi = vals.iter().fold(T::zero(), |a, &v| a.max(v.abs()));
        let lo = vals.iter().fold(T::infinity(), |a, &v| a.min(v.abs()));
        ((hi - lo) / hi).as_f64()
    }

    pub fn to_f64(&self) -> ConstrainedMinimaxPoly<f64> {
        let cast = |d: FamilyData<T>| match d {
            FamilyData::None => FamilyData::None,
            FamilyData::Penultimate { a } => FamilyData::Penultimate { a: a.as_f64() },
            FamilyData::Antepenultimate { lambda, a } => FamilyData::Antepenultimate {
                lambda: lambda.as_f64(),
                a: a.as_f64(),
            },
        };
        ConstrainedMinimaxPoly {
            n: self.n,
            k: self.k,
            positive_zeros: self.positive_zeros.iter().map(|z| z.as_f64()).collect(),
            norm: self.norm.as_f64(),
            family: self.family,
            data: cast(self.data),
        }
    }
}

/// `T_m(x)` and `T_m'(x)` by the three-term recurrences.
fn chebyshev_t<T: Real>(m: usize, x: T) -> (T, T) {
    let two = T::of(2.0);
    let (mut t0, mut t1) = (T::one(), x);
    // U_{j-1} for the derivative T_m' = m U_{m-1}.
    let (mut u0, mut u1) = (T::one(), two * x);
    if m == 0 {
        return (T::one(), T::zero());
    }
    for _ in 1..m {
        let t2 = two * x * t1 - t0;
        t0 = t1;
        t1 = t2;
        let u2 = two * x * u1 - u0;
        u0 = u1;
        u1 = u2;
    }
    (t1, T::of_usize(m) * u0)
}

/// Interior critical points in `(0, 1)` of `(1 - u)^(k+1) Q(u)`: the roots of
/// `(1 - u) Q'(u) - (k + 1) Q(u)`.
fn extremal_abscissae<T: Real>(q: &Poly<T>, k: usize) -> Vec<T> {
    let one_minus_u = Poly::new(vec![T::one(), -T::one()]);
    let r = one_minus_u
        .mul(&q.derivative())
        .add(&q.scale(-T::of_usize(k + 1)));
    r.real_roots(T::zero(), T::one())
        .into_iter()
        .filter(|&u| u > T::zero() && u < T::one())
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::real::DoubleDouble;

    fn close(a: f64, b: f64, tol: f64) -> bool {
        (a - b).abs() <= tol
    }

    #[test]
    fn chebyshev_small_cases() {
        let p2 = ConstrainedMinimaxPoly::<f64>::chebyshev_k0(2);
        assert!(close(p2.positive_zeros()[0], 2f64.sqrt() - 1.0, 1e-15));
        assert!(close(p2.norm(), 3.0 - 2.0 * 2f64.sqrt(), 1e-15));
        assert!(close(p2.eval(0.0), -(3.0 - 2.0 * 2f64.sqrt()), 1e-15));
        let p3 = ConstrainedMinimaxPoly::<f64>::chebyshev_k0(3);
        let s3 = 3f64.sqrt();
        assert!(close(p3.positive_zeros()[0], 2.0 - s3, 1e-15));
        assert!(close(p3.positive_zeros()[1], s3 - 1.0, 1e-15));
        let p1 = ConstrainedMinimaxPoly::<f64>::chebyshev_k0(1);
        assert!(p1.positive_zeros().is_empty());
        assert!(close(p1.norm(), 1.0, 1e-15));
        assert_eq!(p1.alternation_points(), vec![0.0]);
    }

    #[test]
    fn chebyshev_closed_norm_matches_extrema() {
        for n in 1..=8 {
            let p = ConstrainedMinimaxPoly::<f64>::chebyshev_k0(n);
            let from_ext = ConstrainedMinimaxPoly::from_zeros(
                n,
                0,
                p.positive_zeros().to_vec(),
                Family::ChebyshevK0,
            )
            .unwrap();
            assert!(
                (p.norm() - from_ext.norm()).abs() <= 1e-14 * p.norm(),
                "n={n}"
            );
            assert!(p.equioscillation_residual() < 1e-12, "n={n}");
        }
    }

    #[test]
    fn boundary_and_interior_zeros() {
        let p = ConstrainedMinimaxPoly::<f64>::antepenultimate(4).unwrap();
        assert_eq!(p.eval(1.0), 0.0);
        assert_eq!(p.eval(-1.0), 0.0);
        for &z in p.positive_zeros() {
            assert!(p.eval(z).abs() < 1e-15);
        }
    }

    #[test]
    fn penultimate_cubic() {
        let p = ConstrainedMinimaxPoly::<f64>::penultimate(3).unwrap();
        let FamilyData::Penultimate { a } = p.data() else {
            panic!()
        };
        let radical = (2f64.sqrt() + 1.0).cbrt() - (2f64.sqrt() - 1.0).cbrt();
        assert!(close(a, radical, 1e-14));
        assert!(close(p.positive_zeros()[0], 0.325411, 1e-6));
        assert!(close((1.5 * a - 1.0).abs(), 0.5 * a.powi(3), 1e-12));
        assert!(p.equioscillation_residual() < 1e-12);
    }

    #[test]
    fn penultimate_two_is_chebyshev() {
        let a = ConstrainedMinimaxPoly::<f64>::penultimate(2).unwrap();
        let b = ConstrainedMinimaxPoly::<f64>::chebyshev_k0(2);
        assert!(close(a.positive_zeros()[0], b.positive_zeros()[0], 1e-13));
    }

    #[test]
    fn antepenultimate_three_is_chebyshev() {
        let a = ConstrainedMinimaxPoly::<f64>::antepenultimate(3).unwrap();
        let b = ConstrainedMinimaxPoly::<f64>::chebyshev_k0(3);
        for (x, y) in a.positive_zeros().iter().zip(b.positive_zeros()) {
            assert!(close(*x, *y, 1e-12), "{x} vs {y}");
        }
    }

    #[test]
    fn antepenultimate_quartic_equioscillates() {
        let p = ConstrainedMinimaxPoly::<f64>::antepenultimate(4).unwrap();
        assert_eq!(p.alternation_points().len(), 5);
        assert!(p.equioscillation_residual() < 1e-12);
        // Equivalent quartic-in-t² factor.
        let FamilyData::Antepenultimate { lambda, a } = p.data() else {
            panic!()
        };
        let c1 = (2.0 / 3.0) * (2.0 * (lambda + 1.0) * a - 3.0);
        let c0 = (3.0 - 4.0 * (lambda + 1.0) * a + 6.0 * lambda * a * a) / 3.0;
        for &t in p.positive_zeros() {
            let t2 = t * t;
            assert!((t2 * t2 + c1 * t2 + c0).abs() < 1e-14);
        }
    }

    #[test]
    fn antepenultimate_higher_degrees() {
        for n in 5..=8 {
            let p = ConstrainedMinimaxPoly::<f64>::antepenultimate(n).unwrap();
            assert!(p.equioscillation_residual() < 1e-10, "n={n}");
            let r = ConstrainedMinimaxPoly::<f64>::remez_general(n, n - 3, 1e-11).unwrap();
            for (x, y) in p.positive_zeros().iter().zip(r.positive_zeros()) {
                assert!(close(*x, *y, 1e-10), "n={n}: {x} vs {y}");
            }
        }
    }

    #[test]
    fn remez_agrees_with_closed_forms() {
        let r = ConstrainedMinimaxPoly::<f64>::remez_general(2, 0, 1e-12).unwrap();
        assert!(close(r.positive_zeros()[0], 2f64.sqrt() - 1.0, 1e-11));
        let r = ConstrainedMinimaxPoly::<f64>::remez_general(3, 1, 1e-12).unwrap();
        let p = ConstrainedMinimaxPoly::<f64>::penultimate(3).unwrap();
        assert!(close(r.positive_zeros()[0], p.positive_zeros()[0], 1e-11));
        for n in 2..=8 {
            let r = ConstrainedMinimaxPoly::<f64>::remez_general(n, 0, 1e-11).unwrap();
            let c = ConstrainedMinimaxPoly::<f64>::chebyshev_k0(n);
            for (x, y) in r.positive_zeros().iter().zip(c.positive_zeros()) {
                assert!(close(*x, *y, 1e-10), "n={n}");
            }
        }
    }

    #[test]
    fn remez_generic_case() {
        let r = ConstrainedMinimaxPoly::<f64>::remez_general(5, 1, 1e-10).unwrap();
        assert_eq!(r.positive_zeros().len(), 3);
        assert!(r.equioscillation_residual() < 1e-9);
        let r = ConstrainedMinimaxPoly::<f64>::remez_general(5, 2, 1e-10).unwrap();
        assert_eq!(r.alternation_points().len(), 5);
        assert!(r.equioscillation_residual() < 1e-9);
    }

    #[test]
    fn double_double_families() {
        let p = ConstrainedMinimaxPoly::<DoubleDouble>::antepenultimate(4).unwrap();
        assert!(p.equioscillation_residual() < 1e-26);
        let c = ConstrainedMinimaxPoly::<DoubleDouble>::chebyshev_k0(3);
        let s3 = DoubleDouble::from(3.0).sqrt();
        assert!(
            (c.positive_zeros()[0] - (DoubleDouble::from(2.0) - s3))
                .abs()
                .as_f64()
                < 1e-29
        );
        let r = ConstrainedMinimaxPoly::<DoubleDouble>::best(6, 2).unwrap();
        assert_eq!(r.family(), Family::Remez);
        assert!(r.equioscillation_residual() < 1e-20);
    }

    #[test]
    fn invalid_inputs() {
        assert!(
            ConstrainedMinimaxPoly::<f64>::from_zeros(4, 1, vec![0.5, 0.4], Family::Remez).is_err()
        );
        assert!(ConstrainedMinimaxPoly::<f64>::from_zeros(4, 1, vec![0.5], Family::Remez).is_err());
        assert!(ConstrainedMinimaxPoly::<f64>::best(3, 3).is_err());
        assert!(ConstrainedMinimaxPoly::<f64>::penultimate(1).is_err());
    }
}
