//! Dense univariate polynomials in the monomial basis and real-root
//! isolation on an interval.

use crate::real::Real;
use crate::solve::{bisect_root, newton_polish};

/// Polynomial with coefficients in ascending order of degree.
#[derive(Debug, Clone, PartialEq)]
pub struct Poly<T> {
    coeffs: Vec<T>,
}

impl<T: Real> Poly<T> {
    pub fn new(mut coeffs: Vec<T>) -> Self {
        while coeffs.len() > 1 && coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        if coeffs.is_empty() {
            coeffs.push(T::zero());
        }
        Self { coeffs }
    }

    /// Monic polynomial `prod (x - r)`.
    pub fn from_roots(roots: &[T]) -> Self {
        let mut p = Self::new(vec![T::one()]);
        for &r in roots {
            p = p.mul(&Self::new(vec![-r, T::one()]));
        }
        p
    }

    pub fn coeffs(&self) -> &[T] {
        &self.coeffs
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn leading(&self) -> T {
        self.coeffs[self.coeffs.len() - 1]
    }

    pub fn eval(&self, x: T) -> T {
        self.coeffs
            .iter()
            .rev()
            .fold(T::zero(), |acc, &c| acc * x + c)
    }

    pub fn derivative(&self) -> Self {
        if self.coeffs.len() <= 1 {
            return Self::new(vec![T::zero()]);
        }
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, &c)| c * T::of_usize(i))
                .collect(),
        )
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = vec![T::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            for (j, &b) in other.coeffs.iter().enumerate() {
                out[i + j] = out[i + j] + a * b;
            }
        }
        Self::new(out)
    }

    pub fn add(&self, other: &Self) -> Self {
        let len = self.coeffs.len().max(other.coeffs.len());
        let get = |c: &[T], i: usize| c.get(i).copied().unwrap_or_else(T::zero);
        Self::new(
            (0..len)
                .map(|i| get(&self.coeffs, i) + get(&other.coeffs, i))
                .collect(),
        )
    }

    pub fn scale(&self, s: T) -> Self {
        Self::new(self.coeffs.iter().map(|&c| c * s).collect())
    }

    /// Upper bound on the magnitude of every complex root.
    pub fn cauchy_bound(&self) -> T {
        let lead = self.leading().abs();
        let m = self.coeffs[..self.coeffs.len() - 1]
            .iter()
            .fold(T::zero(), |m, &c| m.max(c.abs() / lead));
        T::one() + m
    }

    /// All real roots in `[lo, hi]`, increasing.
    ///
    /// Roots are isolated recursively: between consecutive critical points
    /// the polynomial is monotone, so each sign change brackets exactly one
    /// root. Critical points where the polynomial vanishes to roundoff are
    /// reported as (even-multiplicity) roots.
    pub fn real_roots(&self, lo: T, hi: T) -> Vec<T> {
        let deg = self.degree();
        if deg == 0 || lo > hi {
            return Vec::new();
        }
        if deg == 1 {
            let r = -self.coeffs[0] / self.coeffs[1];
            return if r >= lo && r <= hi {
                vec![r]
            } else {
                Vec::new()
            };
        }
        let dp = self.derivative();
        let crit = dp.real_roots(lo, hi);
        let scale = self.coeffs.iter().fold(T::zero(), |m, &c| m.max(c.abs()))
            * T::of(T::UNIT_ROUNDOFF * 64.0 * (deg as f64));
        let mut knots = Vec::with_capacity(crit.len() + 2);
        knots.push(lo);
        knots.extend(crit.iter().copied().filter(|&c| c > lo && c < hi));
        knots.push(hi);

        let mut roots: Vec<T> = Vec::new();
        let push = |roots: &mut Vec<T>, r: T| {
            let tol = T::of(1e3 * T::UNIT_ROUNDOFF) * (T::one() + r.abs());
            if roots.last().is_none_or(|&last| (r - last).abs() > tol) {
                roots.push(r);
            }
        };
        for w in knots.windows(2) {
            let (a, b) = (w[0], w[1]);
            let (fa, fb) = (self.eval(a), self.eval(b));
            if fa.is_zero() || (fa.abs() <= scale && crit.contains(&a)) {
                push(&mut roots, a);
            }
            if fa * fb < T::zero() {
                let tol = T::of(T::NEWTON_STEP_TOL) * (T::one() + a.abs().max(b.abs()));
                if let Ok(r) = bisect_root(|x| self.eval(x), a, b, tol) {
                    let r = newton_polish(|x| self.eval(x), |x| dp.eval(x), r, 2, a, b);
                    push(&mut roots, r);
                }
            }
        }
        if let Some(&b) = knots.last() {
            if self.eval(b).is_zero() {
                push(&mut roots, b);
            }
        }
        roots
    }
}

/// Real roots of `a x^2 + b x + c`, increasing, computed without
/// cancellation.
pub fn quadratic_roots<T: Real>(a: T, b: T, c: T) -> Vec<T> {
    if a.is_zero() {
        if b.is_zero() {
            return Vec::new();
        }
        return vec![-c / b];
    }
    let disc = b * b - T::of(4.0) * a * c;
    if disc < T::zero() {
        return Vec::new();
    }
    let sq = disc.sqrt();
    let q = if b >= T::zero() {
        -(b + sq) / T::of(2.0)
    } else {
        -(b - sq) / T::of(2.0)
    };
    let mut r = if q.is_zero() {
        vec![T::zero(), T::zero()]
    } else {
        vec![q / a, c / q]
    };
    r.sort_by(|x, y| x.partial_cmp(y).unwrap_or(std::cmp::Ordering::Equal));
    r
}
