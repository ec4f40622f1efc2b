//! Deterministic adaptive panel quadrature over axis-aligned boxes.
//!
//! Each panel is integrated with a low-order and a high-order tensor
//! Gauss-Legendre rule; their difference is the panel error estimate. The
//! panel with the largest estimate is bisected along its widest axis until
//! the summed estimate meets the tolerance or the subdivision budget runs
//! out. Panels are ordered by (error, insertion sequence) under a total
//! float ordering, and the final sums run in panel creation order, so the
//! result is identical from run to run and independent of any caller-side
//! parallelism.

use std::cmp::Ordering;
use std::collections::BinaryHeap;
use std::sync::OnceLock;

use crate::error::{Error, Result};

const LOW_ORDER: usize = 7;
const HIGH_ORDER: usize = 15;

/// Integration request: box, tolerances and subdivision budget.
#[derive(Debug, Clone)]
pub struct QuadratureSpec {
    pub bounds: Vec<(f64, f64)>,
    pub rel_tol: f64,
    pub abs_tol: f64,
    pub max_subdivisions: usize,
}

impl QuadratureSpec {
    pub fn new(
        bounds: Vec<(f64, f64)>,
        rel_tol: f64,
        abs_tol: f64,
        max_subdivisions: usize,
    ) -> Result<Self> {
        if bounds.is_empty() {
            return Err(Error::invalid("quadrature box", "no axes given"));
        }
        for &(lo, hi) in &bounds {
            if !(lo.is_finite() && hi.is_finite() && lo < hi) {
                return Err(Error::invalid(
                    "quadrature box",
                    format!("degenerate interval [{lo}, {hi}]"),
                ));
            }
        }
        if rel_tol.is_nan() || rel_tol <= 0.0 {
            return Err(Error::invalid("rel_tol", format!("must be > 0, got {rel_tol}")));
        }
        if abs_tol.is_nan() || abs_tol < 0.0 {
            return Err(Error::invalid("abs_tol", format!("must be >= 0, got {abs_tol}")));
        }
        Ok(QuadratureSpec {
            bounds,
            rel_tol,
            abs_tol,
            max_subdivisions,
        })
    }
}

/// Converged integral with its error estimate.
#[derive(Debug, Clone, Copy)]
pub struct Quadrature {
    pub value: f64,
    pub error_estimate: f64,
    pub subdivisions: usize,
    pub evaluations: usize,
}

struct Panel {
    lo: Vec<f64>,
    hi: Vec<f64>,
    value: f64,
    error: f64,
    alive: bool,
}

struct HeapEntry {
    error: f64,
    seq: u64,
    index: usize,
}

impl PartialEq for HeapEntry {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}
impl Eq for HeapEntry {}
impl PartialOrd for HeapEntry {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for HeapEntry {
    fn cmp(&self, other: &Self) -> Ordering {
        // Largest error first; older panels win ties so the pop order is
        // a pure function of the input.
        self.error
            .total_cmp(&other.error)
            .then(other.seq.cmp(&self.seq))
    }
}

fn legendre_rule(order: usize) -> (Vec<f64>, Vec<f64>) {
    // Newton iteration on P_n with Chebyshev initial guesses.
    let n = order;
    let mut nodes = vec![0.0; n];
    let mut weights = vec![0.0; n];
    for i in 0..n {
        let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            let (mut p_prev, mut p) = (1.0, x);
            for k in 1..n {
                let kf = k as f64;
                let p_next = ((2.0 * kf + 1.0) * x * p - kf * p_prev) / (kf + 1.0);
                p_prev = p;
                p = p_next;
            }
            dp = (n as f64) * (x * p - p_prev) / (x * x - 1.0);
            let dx = p / dp;
            x -= dx;
            if dx.abs() < 1e-15 {
                break;
            }
        }
        nodes[i] = x;
        weights[i] = 2.0 / ((1.0 - x * x) * dp * dp);
    }
    (nodes, weights)
}

fn low_rule() -> &'static (Vec<f64>, Vec<f64>) {
    static RULE: OnceLock<(Vec<f64>, Vec<f64>)> = OnceLock::new();
    RULE.get_or_init(|| legendre_rule(LOW_ORDER))
}

fn high_rule() -> &'static (Vec<f64>, Vec<f64>) {
    static RULE: OnceLock<(Vec<f64>, Vec<f64>)> = OnceLock::new();
    RULE.get_or_init(|| legendre_rule(HIGH_ORDER))
}

/// Tensor-product rule over one panel; returns the integral estimate.
fn tensor_rule<F: Fn(&[f64]) -> f64>(
    f: &F,
    lo: &[f64],
    hi: &[f64],
    rule: &(Vec<f64>, Vec<f64>),
    evals: &mut usize,
) -> f64 {
    let dim = lo.len();
    let (nodes, weights) = rule;
    let n = nodes.len();
    let mut jacobian = 1.0;
    for d in 0..dim {
        jacobian *= 0.5 * (hi[d] - lo[d]);
    }
    let mut point = vec![0.0; dim];
    let mut index = vec![0usize; dim];
    let mut sum = 0.0;
    loop {
        let mut w = 1.0;
        for d in 0..dim {
            let t = nodes[index[d]];
            point[d] = 0.5 * (lo[d] + hi[d]) + 0.5 * (hi[d] - lo[d]) * t;
            w *= weights[index[d]];
        }
        sum += w * f(&point);
        *evals += 1;
        // odometer increment over the multi-index
        let mut d = 0;
        loop {
            index[d] += 1;
            if index[d] < n {
                break;
            }
            index[d] = 0;
            d += 1;
            if d == dim {
                return sum * jacobian;
            }
        }
    }
}

fn evaluate_panel<F: Fn(&[f64]) -> f64>(f: &F, lo: &[f64], hi: &[f64], evals: &mut usize) -> (f64, f64) {
    let coarse = tensor_rule(f, lo, hi, low_rule(), evals);
    let fine = tensor_rule(f, lo, hi, high_rule(), evals);
    (fine, (fine - coarse).abs())
}

/// Adaptive integral of `f` over the box in `spec`.
///
/// On success the summed panel error estimate satisfies
/// `error <= max(abs_tol, rel_tol * |value|)`. When the subdivision budget
/// is exhausted the best value and estimate are returned inside the error.
pub fn integrate<F: Fn(&[f64]) -> f64>(f: F, spec: &QuadratureSpec) -> Result<Quadrature> {
    let dim = spec.bounds.len();
    let lo: Vec<f64> = spec.bounds.iter().map(|b| b.0).collect();
    let hi: Vec<f64> = spec.bounds.iter().map(|b| b.1).collect();

    let mut evaluations = 0usize;
    let (value, error) = evaluate_panel(&f, &lo, &hi, &mut evaluations);
    let mut panels = vec![Panel {
        lo,
        hi,
        value,
        error,
        alive: true,
    }];
    let mut heap = BinaryHeap::new();
    let mut seq = 0u64;
    heap.push(HeapEntry {
        error,
        seq,
        index: 0,
    });
    let mut total_value = value;
    let mut total_error = error;
    let mut subdivisions = 0usize;

    let converged = |v: f64, e: f64| e <= f64::max(spec.abs_tol, spec.rel_tol * v.abs());

    while !converged(total_value, total_error) {
        if subdivisions >= spec.max_subdivisions {
            let (v, e) = final_sums(&panels);
            return Err(Error::QuadratureBudget {
                value: v,
                error_estimate: e,
                subdivisions,
            });
        }
        let worst = heap.pop().expect("worklist cannot be empty before convergence");
        let parent = &panels[worst.index];
        debug_assert!(parent.alive);

        // Bisect along the widest axis (lowest index on ties).
        let mut axis = 0;
        let mut width = parent.hi[0] - parent.lo[0];
        for d in 1..dim {
            let w = parent.hi[d] - parent.lo[d];
            if w > width {
                width = w;
                axis = d;
            }
        }
        let mid = 0.5 * (parent.lo[axis] + parent.hi[axis]);
        let (p_lo, p_hi, p_value, p_error) = (
            parent.lo.clone(),
            parent.hi.clone(),
            parent.value,
            parent.error,
        );
        panels[worst.index].alive = false;
        total_value -= p_value;
        total_error -= p_error;

        for half in 0..2 {
            let mut lo = p_lo.clone();
            let mut hi = p_hi.clone();
            if half == 0 {
                hi[axis] = mid;
            } else {
                lo[axis] = mid;
            }
            let (v, e) = evaluate_panel(&f, &lo, &hi, &mut evaluations);
            total_value += v;
            total_error += e;
            seq += 1;
            heap.push(HeapEntry {
                error: e,
                seq,
                index: panels.len(),
            });
            panels.push(Panel {
                lo,
                hi,
                value: v,
                error: e,
                alive: true,
            });
        }
        subdivisions += 1;
    }

    let (value, error_estimate) = final_sums(&panels);
    Ok(Quadrature {
        value,
        error_estimate,
        subdivisions,
        evaluations,
    })
}

/// Re-sum alive panels in creation order so the reported value does not
/// depend on the incremental update history.
fn final_sums(panels: &[Panel]) -> (f64, f64) {
    let mut value = 0.0;
    let mut error = 0.0;
    for p in panels.iter().filter(|p| p.alive) {
        value += p.value;
        error += p.error;
    }
    (value, error)
}
