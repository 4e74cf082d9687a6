//! One-dimensional transforms between kernel spaces.
//!
//! `t_alpha` moves a ball kernel to the equivalent disk kernel and
//! `t_alpha_inv` undoes it; `r_ab` / `q_ab` are the weighted Riemann–Liouville
//! type pair, and `pi_ball` / `pi_disk` project both representations to the
//! same zonal function on a lower-dimensional sphere.

use crate::error::{Error, Result};
use crate::kernel::{Endpoint, ZonalKernel};
use crate::special::{aitken, beta_fn, omega_alpha, quad_best, ChebInterpolant, QuadratureSpec};
use std::fmt;
use std::sync::{Arc, OnceLock};

const TOL: f64 = 1e-13;
const REFIT_DEGREE: usize = 64;

/// `∫_a^b (t-a)^left (b-t)^right f(t) dt` for `a < b`, split at interior kinks.
fn integrate(f: impl Fn(f64) -> f64, a: f64, b: f64, left: f64, right: f64, kinks: &[f64]) -> Result<f64> {
    if !(b > a) {
        return Ok(0.0);
    }
    let guard = 1e-12 * (b - a);
    let mut splits: Vec<f64> = kinks.iter().copied().filter(|&p| p > a + guard && p < b - guard).collect();
    splits.sort_by(f64::total_cmp);
    splits.dedup();
    quad_best(f, a, b, &QuadratureSpec::adaptive(TOL).exponents(left, right).splits(splits))
}

/// `1 - t^2` without cancellation near `|t| = 1`.
fn one_minus_sq(t: f64) -> f64 {
    (1.0 - t) * (1.0 + t)
}

/// `∫_lo^hi f(u) (1-u^2)^w du` for `0 <= lo <= hi < 1`; past `1/2` the
/// integration runs in `v = 1 - u` so the weight keeps full precision.
fn weighted_piece(f: impl Fn(f64) -> f64, lo: f64, hi: f64, w: f64, kinks: &[f64]) -> Result<f64> {
    let near = |u: f64| f(u) * one_minus_sq(u).powf(w);
    let mid = hi.min(0.5).max(lo);
    let mut acc = integrate(near, lo, mid, 0.0, 0.0, kinks)?;
    if hi > mid {
        let vk: Vec<f64> = kinks.iter().map(|k| 1.0 - k).collect();
        acc += integrate(|v| f(1.0 - v) * (v * (2.0 - v)).powf(w), 1.0 - hi, 1.0 - mid, 0.0, 0.0, &vk)?;
    }
    Ok(acc)
}

/// Sample points `1 - 10^{-k}`, `k = 2..6`, used for endpoint limits.
fn approach_points() -> [f64; 5] {
    [1e-2, 1e-3, 1e-4, 1e-5, 1e-6].map(|h| 1.0 - h)
}

/// `s ↦ ∫_0^s f(t) (1-t^2)^weight dt` with cached full-interval values.
struct WeightedPrimitive {
    f: ZonalKernel,
    weight: f64,
    full: [OnceLock<Result<f64>>; 2],
}

impl WeightedPrimitive {
    fn new(f: ZonalKernel, weight: f64) -> Self {
        Self { f, weight, full: [OnceLock::new(), OnceLock::new()] }
    }

    fn at(&self, s: f64) -> Result<f64> {
        if s == 0.0 {
            return Ok(0.0);
        }
        let sigma = s.signum();
        Ok(sigma * self.half(sigma, s.abs().min(1.0))?)
    }

    fn kinks(&self, sigma: f64) -> Vec<f64> {
        self.f.breakpoints().iter().map(|b| sigma * b).filter(|&u| u > 0.0).collect()
    }

    /// `∫_0^x f(σu) (1-u^2)^weight du` for `0 < x <= 1`.
    fn half(&self, sigma: f64, x: f64) -> Result<f64> {
        let kinks = self.kinks(sigma);
        match self.f.endpoint_exponent() {
            Some(e) => {
                let p = e + self.weight;
                let r = |u: f64| self.f.regular_part(sigma * u);
                if x <= 0.5 {
                    return integrate(|u| r(u) * (1.0 - u * u).powf(p), 0.0, x, 0.0, 0.0, &kinks);
                }
                let full = self.full_value(sigma, || {
                    integrate(|u| r(u) * (1.0 + u).powf(p), 0.0, 1.0, 0.0, p, &kinks)
                })?;
                if x >= 1.0 {
                    return Ok(full);
                }
                let tail = integrate(|u| r(u) * (1.0 + u).powf(p), x, 1.0, 0.0, p, &kinks)?;
                Ok(full - tail)
            }
            None => {
                let direct = |x: f64| weighted_piece(|u| self.f.eval(sigma * u), 0.0, x, self.weight, &kinks);
                if x < 1.0 {
                    return direct(x);
                }
                self.full_value(sigma, || {
                    let vals = approach_points().iter().map(|&x| direct(x)).collect::<Result<Vec<_>>>()?;
                    Ok(aitken(&vals))
                })
            }
        }
    }

    fn full_value(&self, sigma: f64, compute: impl FnOnce() -> Result<f64>) -> Result<f64> {
        let slot = if sigma > 0.0 { &self.full[0] } else { &self.full[1] };
        slot.get_or_init(compute).clone()
    }
}

/// Numerical evidence for membership of a kernel in the class `D^alpha`.
#[derive(Debug, Clone, PartialEq)]
pub struct DAlphaDiagnostics {
    pub alpha: f64,
    /// `(s, |f(s)| (1-s^2)^{alpha/2})` at `s = ±(1 - 10^{-k})`, `k = 2..6`.
    pub decay: Vec<(f64, f64)>,
    /// `(s, ∫_0^s f(t) (1-t^2)^{(alpha-2)/2} dt)` at the same points.
    pub tail: Vec<(f64, f64)>,
    /// The decay samples shrink towards zero on both sides.
    pub decays: bool,
    /// The tail samples look Cauchy on both sides.
    pub tail_cauchy: bool,
    /// The last Cauchy gap is below `1e-9` on both sides.
    pub certified: bool,
}

impl DAlphaDiagnostics {
    pub fn passed(&self) -> bool {
        self.decays && self.tail_cauchy
    }
}

impl fmt::Display for DAlphaDiagnostics {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "D^{} diagnostics (heuristic): decay {}, tail {}, certified {}",
            self.alpha,
            if self.decays { "ok" } else { "FAILED" },
            if self.tail_cauchy { "ok" } else { "FAILED" },
            self.certified
        )?;
        for ((s, v), (_, t)) in self.decay.iter().zip(&self.tail) {
            write!(f, "\n  s = {s:+.6}: decay {v:.3e}, tail {t:.10e}")?;
        }
        Ok(())
    }
}

fn shrinks(v: &[f64]) -> bool {
    let (first, last) = (v[0], v[v.len() - 1]);
    if !last.is_finite() {
        return false;
    }
    last <= 1e-10 || (last < 0.95 * first && v.windows(2).all(|w| w[1] <= w[0] * (1.0 + 1e-9)))
}

fn cauchy(v: &[f64]) -> (bool, f64) {
    let gaps: Vec<f64> = v.windows(2).map(|w| (w[1] - w[0]).abs()).collect();
    let last = gaps[gaps.len() - 1];
    if !last.is_finite() {
        return (false, f64::INFINITY);
    }
    let scale = 1.0 + v[v.len() - 1].abs();
    let ok = last < 1e-9 * scale
        || (last < 0.9 * gaps[0] && gaps.windows(2).all(|w| w[1] <= w[0] * (1.0 + 1e-9)));
    (ok, last)
}

/// Samples the two limits defining `D^alpha` near `s = ±1`.
pub fn d_alpha_diagnostics(f: &ZonalKernel, alpha: f64) -> Result<DAlphaDiagnostics> {
    if !(alpha > 0.0) {
        return Err(Error::param(format!("D^alpha diagnostics need alpha > 0, got {alpha}")));
    }
    let weight = 0.5 * (alpha - 2.0);
    let e = f.endpoint_exponent();
    let mut diag = DAlphaDiagnostics {
        alpha,
        decay: Vec::new(),
        tail: Vec::new(),
        decays: true,
        tail_cauchy: true,
        certified: true,
    };
    for sigma in [1.0, -1.0] {
        let kinks: Vec<f64> = f.breakpoints().iter().map(|b| sigma * b).filter(|&u| u > 0.0).collect();
        let (profile, w_exp): (Box<dyn Fn(f64) -> f64>, f64) = match e {
            Some(e) => (Box::new(move |u: f64| f.regular_part(sigma * u)), e + weight),
            None => (Box::new(move |u: f64| f.eval(sigma * u)), weight),
        };
        let mut decay = Vec::new();
        let mut tail = Vec::new();
        let mut acc = 0.0;
        let mut prev = 0.0;
        for x in approach_points() {
            let w = one_minus_sq(x);
            let v = match e {
                Some(e) => f.regular_part(sigma * x).abs() * w.powf(e + 0.5 * alpha),
                None => f.eval(sigma * x).abs() * w.powf(0.5 * alpha),
            };
            acc += weighted_piece(&profile, prev, x, w_exp, &kinks).unwrap_or(f64::NAN);
            prev = x;
            decay.push(v);
            tail.push(sigma * acc);
            diag.decay.push((sigma * x, v));
            diag.tail.push((sigma * x, sigma * acc));
        }
        let (ok, gap) = cauchy(&tail);
        diag.decays &= shrinks(&decay);
        diag.tail_cauchy &= ok;
        diag.certified &= gap < 1e-9;
    }
    Ok(diag)
}

fn require_d_alpha(f: &ZonalKernel, alpha: f64) -> Result<()> {
    if f.is_continuous() {
        return Ok(());
    }
    let diag = d_alpha_diagnostics(f, alpha)?;
    if diag.passed() {
        Ok(())
    } else {
        Err(Error::KernelRejected(format!("{} is not in D^{alpha}: {diag}", f.name())))
    }
}

/// `(T_α f)(s) = (1-s^2)^{α/2} f(s) + α s ∫_0^s f(t) (1-t^2)^{(α-2)/2} dt`,
/// extended continuously to `s = ±1`.
pub fn t_alpha(f: &ZonalKernel, alpha: f64) -> Result<ZonalKernel> {
    if !(alpha >= 0.0 && alpha.is_finite()) {
        return Err(Error::param(format!("t_alpha needs alpha >= 0, got {alpha}")));
    }
    if alpha == 0.0 {
        return Ok(f.clone());
    }
    require_d_alpha(f, alpha)?;
    let prim = Arc::new(WeightedPrimitive::new(f.clone(), 0.5 * (alpha - 2.0)));
    let g = f.clone();
    let e = f.endpoint_exponent();
    let value = move |s: f64| {
        if !(s.abs() <= 1.0) {
            return f64::NAN;
        }
        let first = if s.abs() == 1.0 {
            0.0
        } else {
            let w = one_minus_sq(s);
            match e {
                Some(e) => w.powf(0.5 * alpha + e) * g.regular_part(s),
                None => w.powf(0.5 * alpha) * g.eval(s),
            }
        };
        match prim.at(s) {
            Ok(i) => first + alpha * s * i,
            Err(_) => f64::NAN,
        }
    };
    Ok(ZonalKernel::new(format!("T{alpha}[{}]", f.name()), value).with_breakpoints(f.breakpoints().to_vec()))
}

/// `f(t) = (1-t^2)^{-α/2} g(t) - α t ∫_0^t g(s) (1-s^2)^{-(α+2)/2} ds` on the open interval.
pub fn t_alpha_inv(g: &ZonalKernel, alpha: f64) -> Result<ZonalKernel> {
    if !(alpha > 0.0 && alpha.is_finite()) {
        return Err(Error::param(format!("t_alpha_inv needs alpha > 0, got {alpha}")));
    }
    if !g.is_continuous() {
        return Err(Error::KernelRejected(format!("t_alpha_inv needs a continuous kernel, got {}", g.name())));
    }
    let h = g.clone();
    let weight = -0.5 * (alpha + 2.0);
    let value = move |t: f64| {
        if !(t.abs() < 1.0) {
            return f64::NAN;
        }
        let sigma = if t < 0.0 { -1.0 } else { 1.0 };
        let kinks: Vec<f64> = h.breakpoints().iter().map(|b| sigma * b).filter(|&u| u > 0.0).collect();
        match weighted_piece(|u| h.eval(sigma * u), 0.0, t.abs(), weight, &kinks) {
            Ok(v) => one_minus_sq(t).powf(-0.5 * alpha) * h.eval(t) - alpha * t * sigma * v,
            Err(_) => f64::NAN,
        }
    };
    Ok(ZonalKernel::new(format!("Tinv{alpha}[{}]", g.name()), value)
        .with_endpoint(Endpoint::Unknown)
        .singular(alpha)
        .with_breakpoints(g.breakpoints().to_vec()))
}

fn r_value(f: &ZonalKernel, a: f64, b: f64, t: f64) -> Result<f64> {
    if !(t.abs() <= 1.0) {
        return Ok(f64::NAN);
    }
    if t == 0.0 {
        return Ok(f.eval(0.0) * 0.5 * beta_fn(0.5 * a, b)?);
    }
    let kinks: Vec<f64> = f.breakpoints().iter().map(|p| p / t).filter(|&u| u > 0.0 && u < 1.0).collect();
    if t.abs() < 1.0 {
        return integrate(|s| f.eval(s * t) * (1.0 + s).powf(b - 1.0), 0.0, 1.0, a - 1.0, b - 1.0, &kinks);
    }
    match f.endpoint_exponent() {
        Some(e) => {
            let p = b - 1.0 + e;
            integrate(|s| f.regular_part(s * t) * (1.0 + s).powf(p), 0.0, 1.0, a - 1.0, p, &kinks)
        }
        None => {
            let vals = approach_points()
                .iter()
                .map(|&x| r_value(f, a, b, t.signum() * x))
                .collect::<Result<Vec<_>>>()?;
            Ok(aitken(&vals))
        }
    }
}

/// `(R_{a,b} f)(t) = ∫_0^1 f(st) s^{a-1} (1-s^2)^{b-1} ds`.
pub fn r_ab(f: &ZonalKernel, a: f64, b: f64) -> Result<ZonalKernel> {
    if !(a > 0.0 && b > 0.0) {
        return Err(Error::param(format!("r_ab needs a > 0 and b > 0, got ({a}, {b})")));
    }
    let regular = match f.endpoint_exponent() {
        Some(e) => e + b - 1.0 > -1.0,
        None => false,
    };
    let h = f.clone();
    let k = ZonalKernel::new(format!("R{a},{b}[{}]", f.name()), move |t| {
        r_value(&h, a, b, t).unwrap_or(f64::NAN)
    })
    .with_breakpoints(f.breakpoints().to_vec());
    Ok(if regular { k } else { k.with_endpoint(Endpoint::Unknown) })
}

/// Chebyshev refit so that a derivative is available.
fn refit(k: &ZonalKernel) -> Result<ZonalKernel> {
    let c = ChebInterpolant::fit(|t| k.eval(t), REFIT_DEGREE, -1.0, 1.0)?;
    if c.coeffs().iter().any(|x| !x.is_finite()) {
        return Err(Error::KernelRejected(format!("{} is not finite on [-1, 1]", k.name())));
    }
    Ok(ZonalKernel::from_cheb(k.name(), c))
}

fn q_a1(g: &ZonalKernel, a: f64) -> Result<ZonalKernel> {
    let h = if g.has_derivative() { g.clone() } else { refit(g)? };
    let name = format!("Q{a},1[{}]", g.name());
    Ok(ZonalKernel::new(name, move |s| a * h.eval(s) + s * h.derivative(s).unwrap_or(f64::NAN)))
}

fn scaled(k: ZonalKernel, c: f64, name: String) -> ZonalKernel {
    let bp = k.breakpoints().to_vec();
    let endpoint = k.endpoint();
    let inner = k.clone();
    let out = ZonalKernel::new(name, move |t| c * inner.eval(t)).with_breakpoints(bp);
    if endpoint == Endpoint::Unknown {
        out.with_endpoint(Endpoint::Unknown)
    } else {
        out
    }
}

/// Inverse of `r_ab` on smooth kernels.
pub fn q_ab(g: &ZonalKernel, a: f64, b: f64) -> Result<ZonalKernel> {
    if !(a > 0.0 && b > 0.0) {
        return Err(Error::param(format!("q_ab needs a > 0 and b > 0, got ({a}, {b})")));
    }
    if !g.is_continuous() || !g.breakpoints().is_empty() {
        return Err(Error::KernelRejected(format!("q_ab needs a smooth kernel, got {}", g.name())));
    }
    let name = format!("Q{a},{b}[{}]", g.name());
    if b == 1.0 {
        return q_a1(g, a);
    }
    if b < 1.0 {
        let inner = refit(&r_ab(g, a + 2.0 * b, 1.0 - b)?)?;
        let c = 2.0 / beta_fn(b, 1.0 - b)?;
        return Ok(scaled(q_a1(&inner, a)?, c, name));
    }
    let inner = refit(&q_a1(g, a + 2.0 * b - 2.0)?)?;
    Ok(scaled(q_ab(&inner, a, b - 1.0)?, 0.5 / (b - 1.0), name))
}

/// `(π_{α,𝔹} f)(s) = ω_α ∫_0^1 f(st) (1-t^2)^{(α-2)/2} dt`.
pub fn pi_ball(f: &ZonalKernel, alpha: f64) -> Result<ZonalKernel> {
    if !(alpha > 0.0) {
        return Err(Error::param(format!("pi_ball needs alpha > 0, got {alpha}")));
    }
    let w = omega_alpha(alpha)?;
    let r = r_ab(f, 1.0, 0.5 * alpha)?;
    Ok(scaled(r, w, format!("piB{alpha}[{}]", f.name())))
}

/// `(π_{α,𝔻} g)(s) = ω_α (1-s^2) ∫_0^1 g(st) (1-s^2t^2)^{-(α+2)/2} (1-t^2)^{(α-2)/2} dt`.
///
/// Evaluated after `t = v / sqrt(1 - s^2 + s^2 v^2)`, which leaves
/// `ω_α ∫_0^1 g(s t(v)) (1-v^2)^{(α-2)/2} sqrt(1 - s^2 + s^2 v^2) dv`,
/// regular up to and including `|s| = 1`.
pub fn pi_disk(g: &ZonalKernel, alpha: f64) -> Result<ZonalKernel> {
    if !(alpha > 0.0) {
        return Err(Error::param(format!("pi_disk needs alpha > 0, got {alpha}")));
    }
    if !g.is_continuous() {
        return Err(Error::KernelRejected(format!("pi_disk needs a continuous kernel, got {}", g.name())));
    }
    let w = omega_alpha(alpha)?;
    let p = 0.5 * (alpha - 2.0);
    let h = g.clone();
    let value = move |s: f64| {
        if !(s.abs() <= 1.0) {
            return f64::NAN;
        }
        let c = 1.0 - s * s;
        let kinks: Vec<f64> = h
            .breakpoints()
            .iter()
            .filter_map(|&b| {
                let tau = if s == 0.0 { return None } else { b / s };
                (tau > 0.0 && tau < 1.0).then(|| tau * c.sqrt() / (1.0 - tau * tau).sqrt())
            })
            .collect();
        let integrand = |v: f64| {
            let rho = (c + s * s * v * v).sqrt();
            h.eval((s * v / rho).clamp(-1.0, 1.0)) * rho * (1.0 + v).powf(p)
        };
        integrate(integrand, 0.0, 1.0, 0.0, p, &kinks).map_or(f64::NAN, |v| w * v)
    };
    Ok(ZonalKernel::new(format!("piD{alpha}[{}]", g.name()), value))
}

/// Both sides of
/// `∫_x^t s (1-s^2)^{-(α+2)/2} |s^2-t^2|^{(α-2)/2} ds = (1-x^2)^{-α/2} |t^2-x^2|^{α/2} / (α (1-t^2))`.
///
/// The identity holds for `|x| <= |t|`; outside that range the two values differ.
pub fn technical_integral_check(alpha: f64, x: f64, t: f64) -> Result<(f64, f64)> {
    if !(alpha > 0.0) || !(x.abs() < 1.0 && t.abs() < 1.0) {
        return Err(Error::param(format!(
            "technical integral needs alpha > 0 and x, t in (-1, 1), got ({alpha}, {x}, {t})"
        )));
    }
    let rhs = (1.0 - x * x).powf(-0.5 * alpha) * (t * t - x * x).abs().powf(0.5 * alpha) / (alpha * (1.0 - t * t));
    if x == t {
        return Ok((0.0, 0.0));
    }
    let p = 0.5 * (alpha - 2.0);
    let outer = |s: f64| s * (1.0 - s * s).powf(-0.5 * (alpha + 2.0));
    let (lo, hi, sign) = if x < t { (x, t, 1.0) } else { (t, x, -1.0) };
    let lhs = if t == 0.0 {
        // |s^2 - t^2|^p = |s|^{2p}; the endpoint at 0 carries exponent α - 1 after the factor s
        let f = |s: f64| (1.0 - s * s).powf(-0.5 * (alpha + 2.0)) * s.signum();
        let (l, r) = if hi == 0.0 { (0.0, alpha - 1.0) } else { (alpha - 1.0, 0.0) };
        integrate(f, lo, hi, l, r, &[])?
    } else {
        let mut pieces = vec![lo];
        if -t.abs() > lo && -t.abs() < hi {
            pieces.push(-t.abs());
        }
        if t.abs() > lo && t.abs() < hi {
            pieces.push(t.abs());
        }
        pieces.push(hi);
        let mut acc = 0.0;
        for w in pieces.windows(2) {
            let (a, b) = (w[0], w[1]);
            let sing = |e: f64| e.abs() == t.abs();
            let (l, r) = (if sing(a) { p } else { 0.0 }, if sing(b) { p } else { 0.0 });
            let f = |s: f64| {
                let mut v = outer(s);
                // keep the |s ∓ t| factors not absorbed by the endpoint weights
                for root in [t.abs(), -t.abs()] {
                    let absorbed = (root == a && l != 0.0) || (root == b && r != 0.0);
                    if !absorbed {
                        v *= (s - root).abs().powf(p);
                    }
                }
                v
            };
            acc += integrate(f, a, b, l, r, &[])?;
        }
        acc
    };
    Ok((sign * lhs, rhs))
}

/// Smooth cutoff: 1 on `|s| <= 1-ε`, 0 on `|s| >= 1-ε/2`, values in `[0, 1]`.
pub fn bump(eps: f64) -> Result<ZonalKernel> {
    if !(eps > 0.0 && eps < 1.0) {
        return Err(Error::param(format!("bump width must lie in (0, 1), got {eps}")));
    }
    let inner = 1.0 - eps;
    let outer = 1.0 - 0.5 * eps;
    let psi = |x: f64| if x <= 0.0 { 0.0 } else { (-1.0 / x).exp() };
    let f = move |s: f64| {
        let a = s.abs();
        if a <= inner {
            1.0
        } else if a >= outer {
            0.0
        } else {
            let u = (a - inner) / (outer - inner);
            psi(1.0 - u) / (psi(1.0 - u) + psi(u))
        }
    };
    Ok(ZonalKernel::new(format!("bump:{eps}"), f).with_breakpoints([-outer, -inner, inner, outer]))
}

/// `η_ε f`, a continuous kernel vanishing near `±1`.
pub fn truncate(f: &ZonalKernel, eps: f64) -> Result<ZonalKernel> {
    let eta = bump(eps)?;
    let outer = 1.0 - 0.5 * eps;
    let (g, cut) = (f.clone(), eta.clone());
    let k = ZonalKernel::new(format!("{}*bump:{eps}", f.name()), move |t| {
        if t.abs() >= outer {
            0.0
        } else {
            cut.eval(t) * g.eval(t)
        }
    });
    Ok(k.with_breakpoints(eta.breakpoints().iter().chain(f.breakpoints()).copied()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::special::omega;
    use approx::assert_abs_diff_eq;
    use std::f64::consts::PI;

    fn grid(lo: f64, hi: f64, n: usize) -> Vec<f64> {
        (0..=n).map(|k| lo + (hi - lo) * k as f64 / n as f64).collect()
    }

    fn max_err(a: &ZonalKernel, b: impl Fn(f64) -> f64, pts: &[f64]) -> f64 {
        pts.iter().map(|&s| (a.eval(s) - b(s)).abs()).fold(0.0, f64::max)
    }

    #[test]
    fn t_of_constant_at_two() {
        let t = t_alpha(&ZonalKernel::constant(1.0), 2.0).unwrap();
        assert!(max_err(&t, |s| 1.0 + s * s, &grid(-1.0, 1.0, 40)) < 1e-13);
    }

    #[test]
    fn t_fixes_linear() {
        for alpha in [0.5, 1.0, 2.0, 3.0, 4.5] {
            let t = t_alpha(&ZonalKernel::linear(1.0), alpha).unwrap();
            assert!(max_err(&t, |s| s, &grid(-1.0, 1.0, 40)) < 1e-12, "alpha {alpha}");
        }
    }

    #[test]
    fn t_zero_is_identity() {
        let t = t_alpha(&ZonalKernel::cos(), 0.0).unwrap();
        assert_eq!(t.eval(0.3), 0.3f64.cos());
        assert!(t_alpha(&ZonalKernel::cos(), -1.0).is_err());
    }

    #[test]
    fn t_endpoint_of_singular_kernel() {
        // (1-t^2)^{-1/4} with alpha = 1: T(1) = ∫_0^1 (1-t^2)^{-3/4} dt = B(1/2, 1/4) / 2
        let f = ZonalKernel::power_sing(0.25);
        let t = t_alpha(&f, 1.0).unwrap();
        let exact = 0.5 * beta_fn(0.5, 0.25).unwrap();
        assert_abs_diff_eq!(t.eval(1.0), exact, epsilon = 1e-12);
        assert_abs_diff_eq!(t.eval(-1.0), exact, epsilon = 1e-12);
        // continuity at the endpoint
        let s = 1.0 - 1e-9;
        assert!((t.eval(s) - exact).abs() < 2.0 * one_minus_sq(s).powf(0.25));
    }

    #[test]
    fn t_rejects_non_members() {
        // (1-t^2)^{-1/2} with alpha = 1 has constant decay values
        assert!(matches!(
            t_alpha(&ZonalKernel::power_sing(0.5), 1.0),
            Err(Error::KernelRejected(_))
        ));
        let ok = d_alpha_diagnostics(&ZonalKernel::power_sing(0.25), 1.0).unwrap();
        assert!(ok.passed());
        let bad = d_alpha_diagnostics(&ZonalKernel::power_sing(0.75), 1.0).unwrap();
        assert!(!bad.passed());
    }

    #[test]
    fn inverse_examples() {
        let g = ZonalKernel::poly(vec![1.0, 0.0, 1.0]);
        let f = t_alpha_inv(&g, 2.0).unwrap();
        assert!(max_err(&f, |_| 1.0, &grid(-0.99, 0.99, 40)) < 1e-10);
        let f = t_alpha_inv(&ZonalKernel::linear(1.0), 1.5).unwrap();
        assert!(max_err(&f, |s| s, &grid(-0.99, 0.99, 40)) < 1e-10);
        assert!(f.eval(1.0).is_nan());
        assert_eq!(f.singular_alpha(), Some(1.5));
        assert!(t_alpha_inv(&g, 0.0).is_err());
    }

    #[test]
    fn round_trips() {
        let pts = grid(-0.99, 0.99, 24);
        for alpha in [1.0, 2.0, 3.0] {
            let back = t_alpha_inv(&t_alpha(&ZonalKernel::cos(), alpha).unwrap(), alpha).unwrap();
            assert!(max_err(&back, f64::cos, &pts) < 1e-8, "alpha {alpha}");
        }
        let forward = t_alpha(&t_alpha_inv(&ZonalKernel::exp(), 0.5).unwrap(), 0.5).unwrap();
        assert!(max_err(&forward, f64::exp, &pts) < 1e-8);
    }

    #[test]
    fn r_examples() {
        for (a, b) in [(1.0, 1.0), (2.0, 0.5), (3.0, 2.0)] {
            let r = r_ab(&ZonalKernel::constant(1.0), a, b).unwrap();
            let exact = 0.5 * beta_fn(0.5 * a, b).unwrap();
            assert!(max_err(&r, |_| exact, &grid(-1.0, 1.0, 10)) < 1e-13);
        }
        let r = r_ab(&ZonalKernel::linear(1.0), 2.0, 1.0).unwrap();
        assert!(max_err(&r, |t| t / 3.0, &grid(-1.0, 1.0, 10)) < 1e-14);
        let q = q_ab(&r, 2.0, 1.0).unwrap();
        assert!(max_err(&q, |t| t, &grid(-1.0, 1.0, 10)) < 1e-10);
        assert!(r_ab(&ZonalKernel::cos(), 0.0, 1.0).is_err());
        assert!(q_ab(&ZonalKernel::power_sing(0.2), 1.0, 1.0).is_err());
    }

    #[test]
    fn q_inverts_r() {
        let pts = grid(-1.0, 1.0, 20);
        for (a, b) in [(1.0, 1.0), (2.0, 0.5), (1.0, 1.5), (3.0, 2.0)] {
            let back = q_ab(&r_ab(&ZonalKernel::cos(), a, b).unwrap(), a, b).unwrap();
            assert!(max_err(&back, f64::cos, &pts) < 1e-7, "({a}, {b})");
        }
    }

    #[test]
    fn projections() {
        let one = ZonalKernel::constant(1.0);
        let pb = pi_ball(&one, 2.0).unwrap();
        assert_abs_diff_eq!(pb.eval(0.4), 2.0 * PI, epsilon = 1e-12);
        for alpha in [1.0, 2.5, 3.0] {
            let pl = pi_ball(&ZonalKernel::linear(1.0), alpha).unwrap();
            let c = omega_alpha(alpha).unwrap() / alpha;
            assert!(max_err(&pl, |s| c * s, &grid(-1.0, 1.0, 10)) < 1e-12);
        }
        let pd = pi_disk(&one, 3.0).unwrap();
        assert_abs_diff_eq!(pd.eval(0.0), 0.5 * omega(4), epsilon = 1e-12);
        let both = pi_disk(&t_alpha(&one, 2.0).unwrap(), 2.0).unwrap();
        assert_abs_diff_eq!(both.eval(0.5), 2.0 * PI, epsilon = 1e-12);
    }

    #[test]
    fn pi_disk_matches_direct_formula() {
        let g = ZonalKernel::exp();
        let alpha = 3.0;
        let pd = pi_disk(&g, alpha).unwrap();
        for s in [0.3, -0.6, 0.9] {
            let direct = integrate(
                |t| g.eval(s * t) * (1.0 - s * s * t * t).powf(-2.5) * (1.0 + t).sqrt(),
                0.0,
                1.0,
                0.0,
                0.5,
                &[],
            )
            .unwrap();
            let direct = omega(3) * (1.0 - s * s) * direct;
            assert_abs_diff_eq!(pd.eval(s), direct, epsilon = 1e-10);
        }
    }

    #[test]
    fn technical_integral() {
        let (l, r) = technical_integral_check(2.0, 0.0, 0.5).unwrap();
        assert_abs_diff_eq!(r, 1.0 / 6.0, epsilon = 1e-15);
        assert_abs_diff_eq!(l, 1.0 / 6.0, epsilon = 1e-12);
        assert_eq!(technical_integral_check(1.0, 0.3, 0.3).unwrap(), (0.0, 0.0));
        for (alpha, x, t) in [(1.0, -0.2, 0.5), (0.5, 0.1, -0.7), (3.0, -0.6, 0.6), (1.5, 0.0, 0.0001)] {
            let (l, r) = technical_integral_check(alpha, x, t).unwrap();
            assert!((l - r).abs() < 1e-9 * (1.0 + r.abs()), "({alpha},{x},{t}): {l} vs {r}");
            let (l2, _) = technical_integral_check(alpha, -x, -t).unwrap();
            assert_abs_diff_eq!(l, l2, epsilon = 1e-11);
        }
    }

    #[test]
    fn bump_shape() {
        let eta = bump(0.1).unwrap();
        for s in grid(-1.0, 1.0, 400) {
            let v = eta.eval(s);
            assert!((0.0..=1.0).contains(&v));
            if s.abs() <= 0.9 {
                assert_eq!(v, 1.0);
            }
            if s.abs() >= 0.95 {
                assert_eq!(v, 0.0);
            }
        }
    }

    #[test]
    fn truncation_converges() {
        let alpha = 2.0;
        let f = ZonalKernel::power_sing(alpha / 4.0);
        let full = t_alpha(&f, alpha).unwrap();
        let mut pts = grid(-1.0, 1.0, 200);
        pts.extend(approach_points());
        let errs: Vec<f64> = [0.1, 0.05, 0.01]
            .iter()
            .map(|&e| max_err(&t_alpha(&truncate(&f, e).unwrap(), alpha).unwrap(), |s| full.eval(s), &pts))
            .collect();
        assert!(errs[0] > errs[1] && errs[1] > errs[2], "{errs:?}");
    }
}
