//! Brute-force cross-checks that share no solver code with the fitter:
//! random perturbations of minimax polynomials, and exhaustive grid search
//! over control-point parameters scored by dense sampling.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::fitter;
use crate::geometry::{ArcSpec, GkCase, GkScaffold};
use crate::metrics::max_error;
use crate::minimax::ConstrainedMinimaxPoly;
use crate::real::ipow;

pub use crate::solve::bisect_root;

/// Samples per `|ψ|` evaluation inside the grid search.
pub const PROBE_SAMPLES: usize = 4096;

/// Relative slack allowed when comparing a grid optimum with the fitter.
pub const GRID_TOLERANCE: f64 = 1e-3;

const PROBE_GRID: usize = 10_000;
const PROBE_SLACK: f64 = 1e-12;

/// Seeded variant of [`minimax_perturbation_probe`].
pub fn minimax_perturbation_probe_seeded(
    poly: &ConstrainedMinimaxPoly<f64>,
    trials: usize,
    eps: f64,
    seed: u64,
) -> bool {
    let k = poly.k();
    let q = poly.q_in_u();
    let m = q.degree();
    if m == 0 {
        // q = 1: the only monic even polynomial of its degree.
        return true;
    }
    let mut ts: Vec<f64> = (0..PROBE_GRID)
        .map(|i| -1.0 + 2.0 * i as f64 / (PROBE_GRID - 1) as f64)
        .collect();
    ts.extend(poly.alternation_points());
    let weights: Vec<(f64, f64)> = ts
        .iter()
        .map(|&t| (t * t, ipow(1.0 - t * t, k as u32 + 1)))
        .collect();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let norm = poly.norm();
    for _ in 0..trials {
        // Lower-degree even perturbation r(u); both signs are tried, so any
        // first-order descent direction is detected.
        let r: Vec<f64> = (0..m).map(|_| rng.gen_range(-1.0..1.0)).collect();
        for sign in [1.0, -1.0] {
            let worst = weights
                .iter()
                .map(|&(u, w)| {
                    let ru = r.iter().rev().fold(0.0, |acc, &c| acc * u + c);
                    (w * (q.eval(u) + sign * eps * ru)).abs()
                })
                .fold(0.0, f64::max);
            if worst < norm - PROBE_SLACK {
                return false;
            }
        }
    }
    true
}

/// `true` iff no random even monic perturbation `q + εr` (`deg r < deg q`)
/// lowers the max norm on a dense grid. Seed 0.
pub fn minimax_perturbation_probe(
    poly: &ConstrainedMinimaxPoly<f64>,
    trials: usize,
    eps: f64,
) -> bool {
    minimax_perturbation_probe_seeded(poly, trials, eps, 0)
}

#[derive(Debug, Clone, PartialEq)]
pub struct GridSearchResult {
    pub case: GkCase,
    pub best_params: Vec<f64>,
    pub best_max_abs_psi: f64,
    /// Best value on the grid itself, before coordinate descent.
    pub grid_max_abs_psi: f64,
    pub grid_resolution: usize,
    /// `(lo, hi)` per parameter.
    pub search_box: Vec<(f64, f64)>,
    pub fitted_params: Vec<f64>,
    pub fitted_max_abs_psi: f64,
}

impl GridSearchResult {
    /// `(grid - fitted) / fitted`; negative means the grid beat the fitter.
    pub fn relative_gap(&self) -> f64 {
        (self.best_max_abs_psi - self.fitted_max_abs_psi) / self.fitted_max_abs_psi
    }

    /// The fitter's solution beats or matches the brute-force optimum.
    pub fn fitter_is_optimal(&self) -> bool {
        self.relative_gap() >= -GRID_TOLERANCE
    }
}

fn objective(scaffold: &GkScaffold, params: &[f64]) -> f64 {
    scaffold
        .instantiate(params)
        .and_then(|c| max_error(&c, PROBE_SAMPLES))
        .map(|r| r.max_abs_psi)
        .unwrap_or(f64::INFINITY)
}

fn lex_less(a: &(f64, Vec<f64>), b: &(f64, Vec<f64>)) -> bool {
    match a.0.partial_cmp(&b.0) {
        Some(std::cmp::Ordering::Less) => true,
        Some(std::cmp::Ordering::Equal) => a.1 < b.1,
        _ => b.0.is_nan(),
    }
}

fn golden_min<F: Fn(f64) -> f64>(g: F, mut a: f64, mut b: f64, iters: usize) -> (f64, f64) {
    let r = (5f64.sqrt() - 1.0) / 2.0;
    let mut x1 = b - r * (b - a);
    let mut x2 = a + r * (b - a);
    let (mut g1, mut g2) = (g(x1), g(x2));
    for _ in 0..iters {
        if g1 <= g2 {
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
    if g1 <= g2 {
        (x1, g1)
    } else {
        (x2, g2)
    }
}

/// Exhaustive search of `max|ψ|` over a box, then three rounds of
/// coordinate descent from the best grid node. Uses only
/// [`GkScaffold::instantiate`] and [`max_error`].
pub fn grid_search(
    scaffold: &GkScaffold,
    search_box: &[(f64, f64)],
    resolution: usize,
) -> Result<(Vec<f64>, f64, f64)> {
    if resolution < 11 {
        return Err(Error::Domain {
            name: "resolution",
            value: resolution as f64,
            lo: 11.0,
            hi: f64::INFINITY,
        });
    }
    let dim = search_box.len();
    if dim != scaffold.free_param_count() {
        return Err(Error::ParameterCount {
            expected: scaffold.free_param_count(),
            got: dim,
        });
    }
    let node = |l: usize, i: usize| {
        let (lo, hi) = search_box[l];
        lo + (hi - lo) * i as f64 / (resolution - 1) as f64
    };
    let total = resolution.pow(dim as u32);
    let best = (0..total)
        .into_par_iter()
        .map(|mut idx| {
            let p: Vec<f64> = (0..dim)
                .map(|l| {
                    let i = idx % resolution;
                    idx /= resolution;
                    node(l, i)
                })
                .collect();
            (objective(scaffold, &p), p)
        })
        .reduce_with(|a, b| if lex_less(&b, &a) { b } else { a })
        .expect("non-empty grid");
    let grid_value = best.0;
    let (mut value, mut params) = best;
    let mut h: Vec<f64> = search_box
        .iter()
        .map(|(lo, hi)| (hi - lo) / (resolution - 1) as f64)
        .collect();
    for _ in 0..3 {
        for l in 0..dim {
            let g = |x: f64| {
                let mut p = params.clone();
                p[l] = x;
                objective(scaffold, &p)
            };
            let (x, v) = golden_min(g, params[l] - h[l], params[l] + h[l], 60);
            if v < value {
                value = v;
                params[l] = x;
            }
        }
        for s in &mut h {
            *s /= 2.0;
        }
    }
    Ok((params, value, grid_value))
}

/// Brute-force check of the fitter's optimality claim for `(n, k)`: grid over
/// the fitted parameters ±50% per dimension. The fitter supplies only the box
/// center and the value compared against.
pub fn conjecture_probe(
    n: usize,
    k: usize,
    arc: ArcSpec,
    resolution: usize,
) -> Result<GridSearchResult> {
    let case = GkCase::new(n, k)?;
    if resolution < 11 {
        return Err(Error::Domain {
            name: "resolution",
            value: resolution as f64,
            lo: 11.0,
            hi: f64::INFINITY,
        });
    }
    let fitted = fitter::fit::<f64>(case, arc)?;
    let scaffold = GkScaffold::new(case, arc);
    let search_box: Vec<(f64, f64)> = fitted
        .params
        .iter()
        .map(|&p| (p - 0.5 * p.abs(), p + 0.5 * p.abs()))
        .collect();
    let (best_params, best_max_abs_psi, grid_max_abs_psi) =
        grid_search(&scaffold, &search_box, resolution)?;
    Ok(GridSearchResult {
        case,
        best_params,
        best_max_abs_psi,
        grid_max_abs_psi,
        grid_resolution: resolution,
        search_box,
        fitted_max_abs_psi: objective(&scaffold, &fitted.params),
        fitted_params: fitted.params,
    })
}
