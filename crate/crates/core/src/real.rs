//! Scalar abstraction shared by every numeric routine in the crate.
//!
//! Fits are computed either in plain `f64` or in double-double arithmetic
//! ([`DoubleDouble`]). The simplified radial error of a high-order fit drops
//! below `1e-12` at moderate angles, so proportionality and residual checks
//! only carry meaning when the control points themselves are resolved beyond
//! double precision.

use std::cmp::Ordering;
use std::fmt::{self, Debug, Display};
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_traits::{One, Zero};
use twofloat::TwoFloat;

pub trait Real:
    Copy
    + Debug
    + Display
    + Default
    + PartialEq
    + PartialOrd
    + Zero
    + One
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
    + Send
    + Sync
    + 'static
{
    /// Convergence threshold for Newton steps, relative to the iterate size.
    const NEWTON_STEP_TOL: f64;

    /// Unit roundoff of the representation.
    const UNIT_ROUNDOFF: f64;

    fn of(x: f64) -> Self;

    fn as_f64(self) -> f64;

    fn abs(self) -> Self;

    fn sqrt(self) -> Self;

    fn cube_root(self) -> Self;

    fn cos(self) -> Self;

    fn pi() -> Self;

    /// `(cos x, sin x)` renormalized so that `cos² + sin² = 1` to working
    /// precision.
    fn unit_sin_cos(x: f64) -> (Self, Self);

    fn is_finite(self) -> bool {
        self.as_f64().is_finite()
    }

    fn infinity() -> Self {
        Self::of(f64::INFINITY)
    }

    /// Larger of the two; a NaN operand yields the other one.
    fn max(self, other: Self) -> Self {
        match self.partial_cmp(&other) {
            Some(Ordering::Less) | None if !other.as_f64().is_nan() => other,
            _ => self,
        }
    }

    fn min(self, other: Self) -> Self {
        match self.partial_cmp(&other) {
            Some(Ordering::Greater) | None if !other.as_f64().is_nan() => other,
            _ => self,
        }
    }

    fn hypot(self, other: Self) -> Self {
        (self * self + other * other).sqrt()
    }

    fn of_usize(n: usize) -> Self {
        Self::of(n as f64)
    }
}

impl Real for f64 {
    const NEWTON_STEP_TOL: f64 = 1e-14;
    const UNIT_ROUNDOFF: f64 = f64::EPSILON / 2.0;

    fn of(x: f64) -> Self {
        x
    }

    fn as_f64(self) -> f64 {
        self
    }

    fn abs(self) -> Self {
        f64::abs(self)
    }

    fn sqrt(self) -> Self {
        f64::sqrt(self)
    }

    fn cube_root(self) -> Self {
        self.cbrt()
    }

    fn cos(self) -> Self {
        f64::cos(self)
    }

    fn pi() -> Self {
        std::f64::consts::PI
    }

    fn unit_sin_cos(x: f64) -> (Self, Self) {
        let (s, c) = x.sin_cos();
        let r = c.hypot(s);
        (c / r, s / r)
    }

    fn is_finite(self) -> bool {
        f64::is_finite(self)
    }

    fn max(self, other: Self) -> Self {
        f64::max(self, other)
    }

    fn min(self, other: Self) -> Self {
        f64::min(self, other)
    }

    fn hypot(self, other: Self) -> Self {
        f64::hypot(self, other)
    }
}

/// Double-double scalar (about 32 significant decimal digits).
///
/// A thin wrapper over [`TwoFloat`] that replaces its quotient of two
/// double-double values, which in twofloat 0.8 is only accurate to double
/// precision. Everything else is delegated.
#[derive(Clone, Copy, Debug, Default, PartialEq, PartialOrd)]
pub struct DoubleDouble(TwoFloat);

impl DoubleDouble {
    pub fn hi(self) -> f64 {
        self.0.hi()
    }

    pub fn lo(self) -> f64 {
        self.0.lo()
    }
}

impl From<f64> for DoubleDouble {
    fn from(x: f64) -> Self {
        Self(TwoFloat::from(x))
    }
}

impl Display for DoubleDouble {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        Display::fmt(&self.0, f)
    }
}

impl Add for DoubleDouble {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        Self(self.0 + o.0)
    }
}

impl Sub for DoubleDouble {
    type Output = Self;
    fn sub(self, o: Self) -> Self {
        Self(self.0 - o.0)
    }
}

impl Mul for DoubleDouble {
    type Output = Self;
    fn mul(self, o: Self) -> Self {
        Self(self.0 * o.0)
    }
}

impl Div for DoubleDouble {
    type Output = Self;
    fn div(self, o: Self) -> Self {
        // a / (h + l) = (a / h) (1 - l/h + O(2^-106)); the division by an
        // f64 divisor is accurate in twofloat.
        let q = self.0 / o.0.hi();
        let delta = o.0.lo() / o.0.hi();
        Self(q - q * delta)
    }
}

impl Neg for DoubleDouble {
    type Output = Self;
    fn neg(self) -> Self {
        Self(-self.0)
    }
}

impl Zero for DoubleDouble {
    fn zero() -> Self {
        Self(TwoFloat::from(0.0))
    }

    fn is_zero(&self) -> bool {
        self.0.hi() == 0.0 && self.0.lo() == 0.0
    }
}

impl One for DoubleDouble {
    fn one() -> Self {
        Self(TwoFloat::from(1.0))
    }
}

impl Real for DoubleDouble {
    const NEWTON_STEP_TOL: f64 = 1e-28;
    const UNIT_ROUNDOFF: f64 = 1.0e-32;

    fn of(x: f64) -> Self {
        Self::from(x)
    }

    fn as_f64(self) -> f64 {
        self.0.hi() + self.0.lo()
    }

    fn abs(self) -> Self {
        Self(self.0.abs())
    }

    fn sqrt(self) -> Self {
        Self(self.0.sqrt())
    }

    fn cube_root(self) -> Self {
        // One Newton correction on top of the f64 cube root.
        let x = Self::of(self.0.hi().cbrt());
        if x.is_zero() || !x.is_finite() {
            return x;
        }
        let x2 = x * x;
        x - (x2 * x - self) / (Self::of(3.0) * x2)
    }

    fn cos(self) -> Self {
        Self(self.0.cos())
    }

    fn pi() -> Self {
        Self(twofloat::consts::PI)
    }

    fn unit_sin_cos(x: f64) -> (Self, Self) {
        let (s, c) = TwoFloat::from(x).sin_cos();
        let (s, c) = (Self(s), Self(c));
        let r = (c * c + s * s).sqrt();
        (c / r, s / r)
    }
}

/// `x^n` by repeated squaring; avoids library `pow` routines whose accuracy
/// in double-double is much worse than a few multiplications.
pub fn ipow<T: Real>(x: T, mut n: u32) -> T {
    let mut base = x;
    let mut acc = T::one();
    while n > 0 {
        if n & 1 == 1 {
            acc = acc * base;
        }
        base = base * base;
        n >>= 1;
    }
    acc
}

/// Binomial coefficient as a scalar.
pub fn binomial<T: Real>(n: usize, k: usize) -> T {
    if k > n {
        return T::zero();
    }
    let k = k.min(n - k);
    let mut acc = 1.0f64;
    for i in 0..k {
        acc = acc * (n - i) as f64 / (i + 1) as f64;
    }
    T::of(acc.round())
}
