//! Scalar and small-system root finders.

use crate::error::{Error, Result};
use crate::real::Real;

/// Bisection on a sign-changing bracket.
///
/// Returns a point within `tol` of a root of `f` in `[lo, hi]`. At most
/// `ceil(log2((hi - lo) / tol))` halvings are performed.
pub fn bisect_root<T, F>(f: F, lo: T, hi: T, tol: T) -> Result<T>
where
    T: Real,
    F: Fn(T) -> T,
{
    if !(tol > T::zero()) || !(lo < hi) {
        return Err(Error::InvalidInput(format!(
            "bisection needs lo < hi and tol > 0 (lo={lo}, hi={hi}, tol={tol})"
        )));
    }
    let (mut a, mut b) = (lo, hi);
    let (mut fa, fb) = (f(a), f(b));
    if fa.is_zero() {
        return Ok(a);
    }
    if fb.is_zero() {
        return Ok(b);
    }
    if !(fa * fb < T::zero()) {
        return Err(Error::NoBracket {
            lo: lo.as_f64(),
            hi: hi.as_f64(),
            f_lo: fa.as_f64(),
            f_hi: fb.as_f64(),
        });
    }
    let max_iter = ((hi - lo) / tol).as_f64().log2().ceil().max(0.0) as usize;
    for _ in 0..max_iter {
        let m = a + (b - a) / T::of(2.0);
        if m <= a || m >= b {
            break;
        }
        let fm = f(m);
        if fm.is_zero() {
            return Ok(m);
        }
        if fa * fm < T::zero() {
            b = m;
        } else {
            a = m;
            fa = fm;
        }
    }
    Ok(a + (b - a) / T::of(2.0))
}

/// A few Newton steps, rejected if they leave `[lo, hi]` or do not reduce
/// the residual.
pub fn newton_polish<T, F, D>(f: F, df: D, mut x: T, steps: usize, lo: T, hi: T) -> T
where
    T: Real,
    F: Fn(T) -> T,
    D: Fn(T) -> T,
{
    for _ in 0..steps {
        let (fx, dx) = (f(x), df(x));
        if dx.is_zero() || fx.is_zero() {
            break;
        }
        let next = x - fx / dx;
        if next < lo || next > hi || !(f(next).abs() <= fx.abs()) {
            break;
        }
        x = next;
    }
    x
}

/// Gaussian elimination with partial pivoting. Returns `None` for a
/// numerically singular matrix.
pub fn solve_linear<T: Real>(mut a: Vec<Vec<T>>, mut b: Vec<T>) -> Option<Vec<T>> {
    let n = b.len();
    for col in 0..n {
        let pivot = (col..n).max_by(|&i, &j| {
            a[i][col]
                .abs()
                .partial_cmp(&a[j][col].abs())
                .unwrap_or(std::cmp::Ordering::Equal)
        })?;
        if a[pivot][col].is_zero() || !a[pivot][col].is_finite() {
            return None;
        }
        a.swap(col, pivot);
        b.swap(col, pivot);
        for row in col + 1..n {
            let (top, rest) = a.split_at_mut(row);
            let (pivot_row, target) = (&top[col], &mut rest[0]);
            let factor = target[col] / pivot_row[col];
            for (x, &v) in target[col..].iter_mut().zip(&pivot_row[col..]) {
                *x = *x - factor * v;
            }
            b[row] = b[row] - factor * b[col];
        }
    }
    let mut x = vec![T::zero(); n];
    for row in (0..n).rev() {
        let mut s = b[row];
        for k in row + 1..n {
            s = s - a[row][k] * x[k];
        }
        x[row] = s / a[row][row];
    }
    x.iter().all(|v| v.is_finite()).then_some(x)
}

#[derive(Debug, Clone, Copy)]
pub struct NewtonOptions {
    pub max_iterations: usize,
    /// Step tolerance relative to `1 + |x|`; `None` uses the scalar's default.
    pub step_tol: Option<f64>,
}

impl Default for NewtonOptions {
    fn default() -> Self {
        Self {
            max_iterations: 100,
            step_tol: None,
        }
    }
}

#[derive(Debug, Clone)]
pub struct NewtonOutcome<T> {
    pub x: Vec<T>,
    pub residual: T,
    pub iterations: usize,
}

fn norm<T: Real>(v: &[T]) -> T {
    v.iter().fold(T::zero(), |s, &x| s + x * x).sqrt()
}

/// Damped Newton iteration for a square system.
///
/// `system` returns the residual vector and its Jacobian (row per equation).
/// Steps are halved until the residual norm decreases; iteration stops once
/// the accepted step is below the step tolerance.
pub fn newton_system<T, F>(system: F, x0: &[T], opts: NewtonOptions) -> Result<NewtonOutcome<T>>
where
    T: Real,
    F: Fn(&[T]) -> (Vec<T>, Vec<Vec<T>>),
{
    let step_tol = T::of(opts.step_tol.unwrap_or(T::NEWTON_STEP_TOL));
    let mut x = x0.to_vec();
    let (mut r, mut jac) = system(&x);
    let mut rn = norm(&r);
    for it in 0..opts.max_iterations {
        if rn.is_zero() {
            return Ok(NewtonOutcome {
                x,
                residual: rn,
                iterations: it,
            });
        }
        let rhs: Vec<T> = r.iter().map(|&v| -v).collect();
        let Some(step) = solve_linear(jac.clone(), rhs) else {
            return Err(Error::NoConvergence {
                method: "newton (singular jacobian)",
                iterations: it,
                residual: rn.as_f64(),
            });
        };
        let mut lambda = T::one();
        let mut accepted = None;
        for _ in 0..40 {
            let trial: Vec<T> = x
                .iter()
                .zip(&step)
                .map(|(&xi, &si)| xi + lambda * si)
                .collect();
            let (tr, tj) = system(&trial);
            let tn = norm(&tr);
            if tn.is_finite() && tn < rn {
                accepted = Some((trial, tr, tj, tn));
                break;
            }
            lambda = lambda / T::of(2.0);
        }
        let step_size = norm(&step) * lambda;
        let scale = T::one() + norm(&x);
        match accepted {
            Some((nx, nr, nj, nn)) => {
                x = nx;
                r = nr;
                jac = nj;
                rn = nn;
            }
            None => {
                // No decrease possible: we sit at the attainable floor.
                if step_size <= step_tol * scale * T::of(1e3) {
                    return Ok(NewtonOutcome {
                        x,
                        residual: rn,
                        iterations: it,
                    });
                }
                return Err(Error::NoConvergence {
                    method: "damped newton (line search failed)",
                    iterations: it,
                    residual: rn.as_f64(),
                });
            }
        }
        if step_size <= step_tol * scale {
            return Ok(NewtonOutcome {
                x,
                residual: rn,
                iterations: it + 1,
            });
        }
    }
    Err(Error::NoConvergence {
        method: "damped newton",
        iterations: opts.max_iterations,
        residual: rn.as_f64(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bisection_identity() {
        let r = bisect_root(|x: f64| x, -1.0, 1.0, 1e-14).unwrap();
        assert!(r.abs() < 1e-14);
    }

    #[test]
    fn bisection_requires_sign_change() {
        let e = bisect_root(|x: f64| x * x + 1.0, -1.0, 1.0, 1e-12).unwrap_err();
        assert!(matches!(e, Error::NoBracket { .. }));
    }

    #[test]
    fn bisection_iteration_budget() {
        use std::cell::Cell;
        let calls = Cell::new(0usize);
        let tol = 1e-10;
        let _ = bisect_root(
            |x: f64| {
                calls.set(calls.get() + 1);
                x - 0.3
            },
            0.0,
            1.0,
            tol,
        )
        .unwrap();
        let bound = (1.0f64 / tol).log2().ceil() as usize;
        assert!(calls.get() <= bound + 2);
    }

    #[test]
    fn linear_solve() {
        let a = vec![vec![2.0, 1.0], vec![1.0, 3.0]];
        let x = solve_linear(a, vec![3.0, 5.0]).unwrap();
        assert!((x[0] - 0.8).abs() < 1e-15 && (x[1] - 1.4).abs() < 1e-15);
        assert!(solve_linear(vec![vec![1.0, 2.0], vec![2.0, 4.0]], vec![1.0, 1.0]).is_none());
    }

    #[test]
    fn newton_on_circle_line_intersection() {
        let sys = |v: &[f64]| {
            let (x, y) = (v[0], v[1]);
            (
                vec![x * x + y * y - 1.0, x - y],
                vec![vec![2.0 * x, 2.0 * y], vec![1.0, -1.0]],
            )
        };
        let out = newton_system(sys, &[1.0, 0.2], NewtonOptions::default()).unwrap();
        let h = std::f64::consts::FRAC_1_SQRT_2;
        assert!((out.x[0] - h).abs() < 1e-14 && (out.x[1] - h).abs() < 1e-14);
    }
}
