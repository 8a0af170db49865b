//! Derivative-free numerical maximisation over the X-shaped ansatz.
//!
//! These searches work only from purities computed on the assembled matrix,
//! never from closed-form expressions for the purity gap, so they serve as an
//! independent check of the extremal less-pure-than-product family.
//!
//! Strategy: exhaustive grid over `(x1, x2) in [0, 1/2]^2`, then repeated
//! golden-section line searches around the best grid cell along the axes and
//! both diagonals until the point stops moving.

use crate::linalg::{partial_trace, Qubit};
use crate::states::ansatz_matrix;

/// Purity gap `mu_1 mu_2 - mu` of the ansatz, from the matrix itself.
pub fn ansatz_delta_mu(x1: f64, x2: f64, c: f64) -> f64 {
    let m = ansatz_matrix(x1, x2, c);
    let a = partial_trace(&m, Qubit::First).hermitian_square_trace();
    let b = partial_trace(&m, Qubit::Second).hermitian_square_trace();
    a * b - m.hermitian_square_trace()
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Maximum {
    pub x1: f64,
    pub x2: f64,
    pub value: f64,
}

const BOX_HI: f64 = 0.5;

/// Maximises a unimodal `f` on `[lo, hi]`; returns `(argmax, max)`.
pub fn golden_section_max(f: impl Fn(f64) -> f64, mut lo: f64, mut hi: f64, tol: f64) -> (f64, f64) {
    let inv_phi = (5f64.sqrt() - 1.0) / 2.0;
    let mut a = hi - inv_phi * (hi - lo);
    let mut b = lo + inv_phi * (hi - lo);
    let mut fa = f(a);
    let mut fb = f(b);
    while hi - lo > tol {
        if fa >= fb {
            hi = b;
            b = a;
            fb = fa;
            a = hi - inv_phi * (hi - lo);
            fa = f(a);
        } else {
            lo = a;
            a = b;
            fa = fb;
            b = lo + inv_phi * (hi - lo);
            fb = f(b);
        }
    }
    let x = 0.5 * (lo + hi);
    let fx = f(x);
    // keep the best point seen at the bracket ends as well
    [(x, fx), (a, fa), (b, fb)]
        .into_iter()
        .fold((x, fx), |best, cand| if cand.1 > best.1 { cand } else { best })
}

fn in_box(x1: f64, x2: f64) -> bool {
    (0.0..=BOX_HI).contains(&x1) && (0.0..=BOX_HI).contains(&x2)
}

/// Grid search at spacing `resolution` followed by line-search refinement.
pub fn maximize_on_box(objective: impl Fn(f64, f64) -> f64, resolution: f64) -> Maximum {
    assert!(resolution > 0.0 && resolution <= BOX_HI, "resolution must be in (0, 1/2]");
    let steps = (BOX_HI / resolution).round() as usize;
    let h = BOX_HI / steps as f64;

    let mut best = Maximum {
        x1: 0.0,
        x2: 0.0,
        value: f64::NEG_INFINITY,
    };
    for i in 0..=steps {
        for j in 0..=steps {
            let (x1, x2) = (i as f64 * h, j as f64 * h);
            let value = objective(x1, x2);
            if value > best.value {
                best = Maximum { x1, x2, value };
            }
        }
    }

    let s = std::f64::consts::FRAC_1_SQRT_2;
    let directions = [(1.0, 0.0), (0.0, 1.0), (s, s), (s, -s)];
    let eval = |x1: f64, x2: f64| if in_box(x1, x2) { objective(x1, x2) } else { f64::NEG_INFINITY };
    for _round in 0..500 {
        let start = best;
        for &(d1, d2) in &directions {
            let line = |t: f64| eval(best.x1 + t * d1, best.x2 + t * d2);
            let (t, value) = golden_section_max(line, -2.0 * h, 2.0 * h, 1e-13);
            if value > best.value {
                best = Maximum {
                    x1: best.x1 + t * d1,
                    x2: best.x2 + t * d2,
                    value,
                };
            }
        }
        let moved = (best.x1 - start.x1).abs().max((best.x2 - start.x2).abs());
        if moved < 1e-13 {
            break;
        }
    }
    best
}

/// Largest purity gap over separable ansatz states (`c = 0`).
pub fn maximize_delta_mu(resolution: f64) -> Maximum {
    maximize_on_box(|x1, x2| ansatz_delta_mu(x1, x2, 0.0), resolution)
}

/// Largest `c^2` of an ansatz state at `(x1, x2)` whose purity gap is at least
/// `target`. The gap decreases monotonically in `c`, so `c` is found by
/// bisection. When even `c = 0` misses the target the (negative) shortfall is
/// returned, which keeps the objective continuous across the feasibility edge.
pub fn max_tangle_at(x1: f64, x2: f64, target: f64) -> f64 {
    let gap0 = ansatz_delta_mu(x1, x2, 0.0);
    if gap0 < target {
        return gap0 - target;
    }
    let c_max = 2.0 * (x1 * x2).sqrt();
    if ansatz_delta_mu(x1, x2, c_max) >= target {
        return c_max * c_max;
    }
    let (mut lo, mut hi) = (0.0, c_max);
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        if ansatz_delta_mu(x1, x2, mid) >= target {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    lo * lo
}

/// Numerically maximal tangle of ansatz states at a fixed purity gap.
pub fn maximize_lptps_tangle(target_delta_mu: f64, resolution: f64) -> Maximum {
    maximize_on_box(|x1, x2| max_tangle_at(x1, x2, target_delta_mu), resolution)
}
