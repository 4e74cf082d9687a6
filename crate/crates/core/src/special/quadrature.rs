use crate::error::{Error, Result};
use nalgebra::{DMatrix, SymmetricEigen};
use std::collections::{BinaryHeap, HashMap};
use std::cmp::Ordering;
use std::sync::{Arc, Mutex, OnceLock};

use super::beta_fn;

/// Gauss rule on `[-1, 1]` for the weight `(1 - x)^alpha (1 + x)^beta`.
#[derive(Debug, Clone)]
pub struct GaussRule {
    pub nodes: Vec<f64>,
    pub weights: Vec<f64>,
}

type RuleKey = (usize, u64, u64);

fn rule_cache() -> &'static Mutex<HashMap<RuleKey, Arc<GaussRule>>> {
    static CACHE: OnceLock<Mutex<HashMap<RuleKey, Arc<GaussRule>>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

/// Gauss–Jacobi nodes and weights via the Golub–Welsch eigenproblem.
///
/// Rules are cached per `(n, alpha, beta)`; repeated calls are cheap.
pub fn gauss_jacobi(n: usize, alpha: f64, beta: f64) -> Result<Arc<GaussRule>> {
    if n == 0 {
        return Err(Error::param("Gauss rule needs at least one node"));
    }
    if !(alpha > -1.0 && beta > -1.0) {
        return Err(Error::param(format!(
            "Jacobi exponents must exceed -1, got ({alpha}, {beta})"
        )));
    }
    let key = (n, alpha.to_bits(), beta.to_bits());
    if let Some(rule) = rule_cache().lock().expect("rule cache poisoned").get(&key) {
        return Ok(Arc::clone(rule));
    }
    let rule = Arc::new(build_jacobi(n, alpha, beta)?);
    rule_cache()
        .lock()
        .expect("rule cache poisoned")
        .insert(key, Arc::clone(&rule));
    Ok(rule)
}

fn build_jacobi(n: usize, alpha: f64, beta: f64) -> Result<GaussRule> {
    let ab = alpha + beta;
    let mut jac = DMatrix::<f64>::zeros(n, n);
    for k in 0..n {
        let kf = k as f64;
        let diag = if k == 0 {
            (beta - alpha) / (ab + 2.0)
        } else {
            (beta * beta - alpha * alpha) / ((2.0 * kf + ab) * (2.0 * kf + ab + 2.0))
        };
        jac[(k, k)] = diag;
    }
    for k in 1..n {
        let kf = k as f64;
        let b2 = if k == 1 {
            4.0 * (1.0 + alpha) * (1.0 + beta) / ((2.0 + ab).powi(2) * (3.0 + ab))
        } else {
            let s = 2.0 * kf + ab;
            4.0 * kf * (kf + alpha) * (kf + beta) * (kf + ab) / (s * s * (s + 1.0) * (s - 1.0))
        };
        let b = b2.sqrt();
        jac[(k - 1, k)] = b;
        jac[(k, k - 1)] = b;
    }
    let mu0 = 2f64.powf(ab + 1.0) * beta_fn(alpha + 1.0, beta + 1.0)?;
    let eig = SymmetricEigen::new(jac);
    let mut pairs: Vec<(f64, f64)> = (0..n)
        .map(|j| {
            let v0 = eig.eigenvectors[(0, j)];
            (eig.eigenvalues[j], mu0 * v0 * v0)
        })
        .collect();
    pairs.sort_by(|x, y| x.0.total_cmp(&y.0));
    Ok(GaussRule {
        nodes: pairs.iter().map(|p| p.0).collect(),
        weights: pairs.iter().map(|p| p.1).collect(),
    })
}

/// How `quad_weighted` refines.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum QuadMode {
    /// One rule of `node_count` points on every piece between split points.
    Fixed,
    /// Global bisection until the error estimate drops below
    /// `tol * max(1, |integral|)`.
    Adaptive { tol: f64 },
}

/// Declares an integral `∫_a^b (t-a)^left (b-t)^right f(t) dt`.
#[derive(Debug, Clone, PartialEq)]
pub struct QuadratureSpec {
    pub node_count: usize,
    pub left_exponent: f64,
    pub right_exponent: f64,
    pub split_points: Vec<f64>,
    pub mode: QuadMode,
}

impl Default for QuadratureSpec {
    fn default() -> Self {
        Self {
            node_count: 256,
            left_exponent: 0.0,
            right_exponent: 0.0,
            split_points: Vec::new(),
            mode: QuadMode::Fixed,
        }
    }
}

impl QuadratureSpec {
    pub fn fixed(node_count: usize) -> Self {
        Self { node_count, ..Self::default() }
    }

    pub fn adaptive(tol: f64) -> Self {
        Self { node_count: 16, mode: QuadMode::Adaptive { tol }, ..Self::default() }
    }

    pub fn exponents(mut self, left: f64, right: f64) -> Self {
        self.left_exponent = left;
        self.right_exponent = right;
        self
    }

    pub fn splits(mut self, points: impl IntoIterator<Item = f64>) -> Self {
        self.split_points = points.into_iter().collect();
        self
    }

    fn validate(&self, a: f64, b: f64) -> Result<()> {
        if self.node_count == 0 {
            return Err(Error::param("node_count must be positive"));
        }
        if !(self.left_exponent > -1.0 && self.right_exponent > -1.0) {
            return Err(Error::param(format!(
                "endpoint exponents must exceed -1, got ({}, {})",
                self.left_exponent, self.right_exponent
            )));
        }
        if let QuadMode::Adaptive { tol } = self.mode {
            if !(tol > 0.0) {
                return Err(Error::param("adaptive tolerance must be positive"));
            }
        }
        let mut prev = a;
        for &p in &self.split_points {
            if !(p > prev && p < b) {
                return Err(Error::param(format!(
                    "split point {p} is not strictly inside ({a}, {b}) in increasing order"
                )));
            }
            prev = p;
        }
        Ok(())
    }
}

/// Minimum segment width for adaptive refinement, relative to `b - a`.
const MIN_WIDTH: f64 = 1e-12;
const MAX_SEGMENTS: usize = 4000;

struct Problem<'f, F: Fn(f64) -> f64> {
    f: &'f F,
    a: f64,
    b: f64,
    left: f64,
    right: f64,
}

impl<F: Fn(f64) -> f64> Problem<'_, F> {
    fn piece(&self, lo: f64, hi: f64, n: usize) -> Result<f64> {
        let at_a = lo == self.a;
        let at_b = hi == self.b;
        let l = if at_a { self.left } else { 0.0 };
        let r = if at_b { self.right } else { 0.0 };
        let rule = gauss_jacobi(n, r, l)?;
        let half = 0.5 * (hi - lo);
        let mut acc = 0.0;
        for (&x, &w) in rule.nodes.iter().zip(&rule.weights) {
            let t = lo + half * (x + 1.0);
            let mut g = (self.f)(t);
            if !at_a && self.left != 0.0 {
                g *= (t - self.a).powf(self.left);
            }
            if !at_b && self.right != 0.0 {
                g *= (self.b - t).powf(self.right);
            }
            acc += w * g;
        }
        Ok(acc * half.powf(l + r + 1.0))
    }
}

#[derive(Debug)]
struct Segment {
    lo: f64,
    hi: f64,
    value: f64,
    err: f64,
}

impl PartialEq for Segment {
    fn eq(&self, other: &Self) -> bool {
        self.err == other.err
    }
}
impl Eq for Segment {}
impl PartialOrd for Segment {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for Segment {
    fn cmp(&self, other: &Self) -> Ordering {
        self.err.total_cmp(&other.err)
    }
}

/// Integrates `(t-a)^left (b-t)^right f(t)` over `[a, b]`.
///
/// The endpoint weights are absorbed by Gauss–Jacobi rules; interior split
/// points bound the pieces. With `b < a` the orientation is reversed and the
/// exponents keep referring to `a` and `b` respectively.
pub fn quad_weighted<F: Fn(f64) -> f64>(f: F, a: f64, b: f64, spec: &QuadratureSpec) -> Result<f64> {
    if a == b {
        return Ok(0.0);
    }
    if b < a {
        let mut flipped = spec.clone();
        flipped.left_exponent = spec.right_exponent;
        flipped.right_exponent = spec.left_exponent;
        flipped.split_points.reverse();
        return quad_weighted(f, b, a, &flipped).map(|v| -v);
    }
    spec.validate(a, b)?;
    let prob = Problem { f: &f, a, b, left: spec.left_exponent, right: spec.right_exponent };
    let mut edges = Vec::with_capacity(spec.split_points.len() + 2);
    edges.push(a);
    edges.extend_from_slice(&spec.split_points);
    edges.push(b);

    match spec.mode {
        QuadMode::Fixed => {
            let mut total = 0.0;
            for w in edges.windows(2) {
                total += prob.piece(w[0], w[1], spec.node_count)?;
            }
            Ok(total)
        }
        QuadMode::Adaptive { tol } => adaptive(&prob, &edges, spec.node_count, tol),
    }
}

fn adaptive<F: Fn(f64) -> f64>(prob: &Problem<'_, F>, edges: &[f64], n: usize, tol: f64) -> Result<f64> {
    let eval = |lo: f64, hi: f64| -> Result<Segment> {
        let coarse = prob.piece(lo, hi, n)?;
        let fine = prob.piece(lo, hi, 2 * n)?;
        Ok(Segment { lo, hi, value: fine, err: (fine - coarse).abs() })
    };
    let min_width = MIN_WIDTH * (prob.b - prob.a);
    let mut heap = BinaryHeap::new();
    let (mut frozen_value, mut frozen_err) = (0.0, 0.0);
    let (mut live_value, mut live_err) = (0.0, 0.0);
    for w in edges.windows(2) {
        let seg = eval(w[0], w[1])?;
        live_value += seg.value;
        live_err += seg.err;
        heap.push(seg);
    }
    let mut count = heap.len();
    loop {
        let value = frozen_value + live_value;
        if !value.is_finite() {
            return Err(Error::NotConverged { estimate: value, error: f64::INFINITY });
        }
        let target = tol * value.abs().max(1.0);
        if frozen_err + live_err <= target {
            // resum to shed drift from the running totals
            let exact_value = frozen_value + heap.iter().map(|s| s.value).sum::<f64>();
            let exact_err = frozen_err + heap.iter().map(|s| s.err).sum::<f64>();
            if exact_err <= tol * exact_value.abs().max(1.0) {
                return Ok(exact_value);
            }
            live_err = exact_err - frozen_err;
            live_value = exact_value - frozen_value;
        }
        if frozen_err > target && live_err <= 0.1 * frozen_err {
            // only unresolvable segments remain
            return Err(Error::NotConverged { estimate: value, error: frozen_err + live_err });
        }
        let Some(worst) = heap.pop() else {
            return Err(Error::NotConverged { estimate: value, error: frozen_err });
        };
        live_value -= worst.value;
        live_err -= worst.err;
        if count >= MAX_SEGMENTS {
            return Err(Error::NotConverged { estimate: value, error: frozen_err + live_err + worst.err });
        }
        if worst.hi - worst.lo < min_width {
            frozen_value += worst.value;
            frozen_err += worst.err;
            continue;
        }
        let mid = 0.5 * (worst.lo + worst.hi);
        for seg in [eval(worst.lo, mid)?, eval(mid, worst.hi)?] {
            live_value += seg.value;
            live_err += seg.err;
            heap.push(seg);
        }
        count += 1;
    }
}

/// Adaptive integration that falls back to the best estimate when the
/// tolerance is not reached.
pub(crate) fn quad_best<F: Fn(f64) -> f64>(f: F, a: f64, b: f64, spec: &QuadratureSpec) -> Result<f64> {
    match quad_weighted(f, a, b, spec) {
        Err(Error::NotConverged { estimate, .. }) if estimate.is_finite() => Ok(estimate),
        other => other,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::special::beta_fn;
    use approx::assert_relative_eq;
    use std::f64::consts::PI;

    #[test]
    fn legendre_rule_integrates_polynomials() {
        let rule = gauss_jacobi(5, 0.0, 0.0).unwrap();
        let s: f64 = rule.weights.iter().sum();
        assert_relative_eq!(s, 2.0, max_relative = 1e-14);
        let x8: f64 = rule.nodes.iter().zip(&rule.weights).map(|(x, w)| w * x.powi(8)).sum();
        assert_relative_eq!(x8, 2.0 / 9.0, max_relative = 1e-13);
    }

    #[test]
    fn chebyshev_weight_gives_pi() {
        let spec = QuadratureSpec::fixed(32).exponents(-0.5, -0.5);
        // (1-t^2)^{-1/2} = (t+1)^{-1/2}(1-t)^{-1/2}
        let v = quad_weighted(|_| 1.0, -1.0, 1.0, &spec).unwrap();
        assert_relative_eq!(v, PI, max_relative = 1e-14);
    }

    #[test]
    fn beta_integral_via_substitution_oracle() {
        // ∫_0^1 s^{a-1}(1-s^2)^{b-1} ds = B(a/2, b)/2 ; (a,b) = (3,2) gives 2/15
        let (a, b) = (3.0, 2.0);
        let spec = QuadratureSpec::fixed(40).exponents(a - 1.0, b - 1.0);
        let v = quad_weighted(|s: f64| (1.0 + s).powf(b - 1.0), 0.0, 1.0, &spec).unwrap();
        assert_relative_eq!(v, 0.5 * beta_fn(a / 2.0, b).unwrap(), max_relative = 1e-13);
        assert_relative_eq!(v, 2.0 / 15.0, max_relative = 1e-13);
    }

    #[test]
    fn spherical_slice_weight_n4() {
        let spec = QuadratureSpec::default().exponents(0.5, 0.5);
        let v = quad_weighted(|_| 1.0, -1.0, 1.0, &spec).unwrap();
        assert_relative_eq!(v, PI / 2.0, max_relative = 1e-13);
    }

    #[test]
    fn adaptive_handles_interior_kink() {
        let spec = QuadratureSpec::adaptive(1e-12);
        let v = quad_weighted(|t: f64| (t - 0.3).abs(), -1.0, 1.0, &spec).unwrap();
        assert_relative_eq!(v, 0.5 * 1.3 * 1.3 + 0.5 * 0.7 * 0.7, max_relative = 1e-11);
        let split = QuadratureSpec::fixed(8).splits([0.3]);
        let w = quad_weighted(|t: f64| (t - 0.3).abs(), -1.0, 1.0, &split).unwrap();
        assert_relative_eq!(w, 1.09, max_relative = 1e-14);
    }

    #[test]
    fn adaptive_keeps_endpoint_exponents_through_bisection() {
        let spec = QuadratureSpec::adaptive(1e-13).exponents(-0.5, -0.5);
        let v = quad_weighted(|t: f64| (20.0 * t).cos(), -1.0, 1.0, &spec).unwrap();
        // ∫ cos(20 t) / sqrt(1-t^2) = π J0(20)
        let j0_20 = 0.167_024_664_340_583_2;
        assert_relative_eq!(v, PI * j0_20, max_relative = 1e-10);
    }

    #[test]
    fn reversed_orientation() {
        let spec = QuadratureSpec::fixed(20).exponents(0.5, 0.0);
        let fwd = quad_weighted(|t: f64| t * t, 0.0, 1.0, &spec).unwrap();
        let rev = quad_weighted(|t: f64| t * t, 1.0, 0.0, &QuadratureSpec::fixed(20).exponents(0.0, 0.5)).unwrap();
        assert_relative_eq!(fwd, -rev, max_relative = 1e-14);
    }

    #[test]
    fn rejects_bad_specs() {
        assert!(quad_weighted(|_| 1.0, 0.0, 1.0, &QuadratureSpec::fixed(4).exponents(-1.0, 0.0)).is_err());
        assert!(quad_weighted(|_| 1.0, 0.0, 1.0, &QuadratureSpec::fixed(4).splits([1.5])).is_err());
        assert!(quad_weighted(|_| 1.0, 0.0, 1.0, &QuadratureSpec::adaptive(0.0)).is_err());
        assert!(quad_weighted(|_| 1.0, 0.0, 1.0, &QuadratureSpec::fixed(0)).is_err());
    }

    #[test]
    fn non_convergence_reports_estimate() {
        // 1/t near zero is not integrable; refinement must give up
        let r = quad_weighted(|t: f64| 1.0 / t, 0.0, 1.0, &QuadratureSpec::adaptive(1e-12));
        assert!(matches!(r, Err(Error::NotConverged { .. })));
    }
}
