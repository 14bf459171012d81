//! Optimal geometric-continuity Bézier approximants of circular arcs.
//!
//! A degree-`n` polynomial curve `p` approximating the unit arc with
//! `G^k` contact at both ends has a simplified radial error
//! `ψ(t) = |p(t)|² - 1` that vanishes to order `k + 1` at `t = ±1`. The
//! best such curve (in the max norm of `ψ`) is obtained by forcing `ψ` to
//! be a scalar multiple of the constrained minimax polynomial
//! `(1 - t²)^(k+1) q(t)`, which reduces the approximation problem to a small
//! polynomial system in the free control-point parameters.

// Comparisons are often written negated (`!(x > 0)`) so that NaN fails them.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod error;
pub mod fitter;
pub mod geometry;
pub mod metrics;
pub mod minimax;
pub mod oracle;
pub mod poly;
pub mod real;
pub mod solve;

pub use error::{Error, Result};
pub use fitter::{fit, fit_prescribed_zeros, FitOptions, FitResult, ZeroPattern};
pub use geometry::{bernstein, ArcSpec, BezierCurve, GkCase, GkScaffold, Point2};
pub use metrics::{max_error, psi, psi_tilde, ErrorReport};
pub use minimax::{ConstrainedMinimaxPoly, Family, FamilyData};
pub use oracle::{conjecture_probe, minimax_perturbation_probe, GridSearchResult};
pub use real::{DoubleDouble, Real};
