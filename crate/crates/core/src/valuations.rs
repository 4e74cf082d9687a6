//! Zonal valuations in the ball and disk representations.
//!
//! A valuation of degree `i` on `R^n` is given either by a kernel `f` integrated
//! against `S_i(K, ·)` or by a continuous kernel `g` integrated against
//! `S(K[i], D[n-1-i], ·)`. The two agree when `g = T_{n-i-1} f`.

use crate::bodies::RevolutionBody;
use crate::error::{Error, Result};
use crate::kernel::ZonalKernel;
use crate::measures::{
    area_measure_valuation, integrate_truncated, mixed_disk_valuation, mixed_measure, Mixer, ProfileMeasure,
};
use crate::special::{aitken, kappa, quad_weighted, richardson, ChebInterpolant, QuadratureSpec};
use crate::transforms::{t_alpha, t_alpha_inv};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use std::path::Path;

/// Which integral representation a valuation uses.
#[derive(Debug, Clone)]
pub enum Representation {
    /// `φ_{i,f}(K) = ∫ f dS_i(K, ·)`, `f` possibly singular of class `D^{n-i-1}`.
    Ball(ZonalKernel),
    /// `ψ_{i,g}(K) = ∫ g dS(K[i], D[n-1-i], ·)`, `g` continuous.
    Disk(ZonalKernel),
}

/// Target of [`convert`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum RepKind {
    Ball,
    Disk,
}

/// A zonal valuation of degree `i` on `R^n`.
#[derive(Debug, Clone)]
pub struct ValuationSpec {
    n: u32,
    i: u32,
    rep: Representation,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(untagged)]
enum KernelJson {
    Name(String),
    Csv { csv: String },
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct SpecJson {
    n: u32,
    i: u32,
    rep: RepKind,
    kernel: KernelJson,
}

impl ValuationSpec {
    pub fn new(n: u32, i: u32, rep: Representation) -> Result<Self> {
        if n < 2 || i < 1 || i > n - 1 {
            return Err(Error::param(format!("degree must satisfy 1 <= i <= n-1, got n = {n}, i = {i}")));
        }
        let alpha = f64::from(n - i - 1);
        let rep = match rep {
            Representation::Ball(f) if !f.is_continuous() => {
                if alpha == 0.0 {
                    return Err(Error::KernelRejected(format!(
                        "degree n-1 needs a continuous kernel, got {}",
                        f.name()
                    )));
                }
                match f.singular_alpha() {
                    Some(a) if a != alpha => {
                        return Err(Error::KernelRejected(format!(
                            "kernel {} is declared in D^{a}, the valuation needs D^{alpha}",
                            f.name()
                        )))
                    }
                    Some(_) => Representation::Ball(f),
                    None => Representation::Ball(f.singular(alpha)),
                }
            }
            Representation::Disk(g) if !g.is_continuous() => {
                return Err(Error::KernelRejected(format!("disk kernels must be continuous, got {}", g.name())))
            }
            other => other,
        };
        Ok(Self { n, i, rep })
    }

    pub fn ball(n: u32, i: u32, f: ZonalKernel) -> Result<Self> {
        Self::new(n, i, Representation::Ball(f))
    }

    pub fn disk(n: u32, i: u32, g: ZonalKernel) -> Result<Self> {
        Self::new(n, i, Representation::Disk(g))
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn i(&self) -> u32 {
        self.i
    }

    /// `n - i - 1`, the transform parameter linking the representations.
    pub fn alpha(&self) -> f64 {
        f64::from(self.n - self.i - 1)
    }

    pub fn representation(&self) -> &Representation {
        &self.rep
    }

    pub fn kind(&self) -> RepKind {
        match self.rep {
            Representation::Ball(_) => RepKind::Ball,
            Representation::Disk(_) => RepKind::Disk,
        }
    }

    pub fn kernel(&self) -> &ZonalKernel {
        match &self.rep {
            Representation::Ball(k) | Representation::Disk(k) => k,
        }
    }

    /// Parses `{"n", "i", "rep": "ball"|"disk", "kernel": name | {"csv": path}}`.
    pub fn from_json_str(text: &str) -> Result<Self> {
        let raw: SpecJson = serde_json::from_str(text)?;
        let kernel = match raw.kernel {
            KernelJson::Name(name) => ZonalKernel::parse(&name)?,
            KernelJson::Csv { csv } => ZonalKernel::from_csv(csv)?,
        };
        let rep = match raw.rep {
            RepKind::Ball => Representation::Ball(kernel),
            RepKind::Disk => Representation::Disk(kernel),
        };
        Self::new(raw.n, raw.i, rep)
    }

    /// Reads a spec from a file, or parses the argument as inline JSON.
    pub fn load(path_or_json: &str) -> Result<Self> {
        let trimmed = path_or_json.trim_start();
        if trimmed.starts_with('{') {
            return Self::from_json_str(trimmed);
        }
        let text = std::fs::read_to_string(Path::new(path_or_json))?;
        Self::from_json_str(&text)
    }

    /// JSON form; kernels built in code serialize under their registry name.
    pub fn to_json(&self) -> Result<String> {
        let name = self.kernel().name();
        let kernel = match name.strip_prefix("csv:") {
            Some(path) => KernelJson::Csv { csv: path.to_string() },
            None => KernelJson::Name(name.to_string()),
        };
        let raw = SpecJson { n: self.n, i: self.i, rep: self.kind(), kernel };
        Ok(serde_json::to_string(&raw)?)
    }
}

fn check_cone(n: u32, i: u32, s: f64) -> Result<()> {
    if n < 2 || i < 1 || i > n - 1 {
        return Err(Error::param(format!("degree must satisfy 1 <= i <= n-1, got n = {n}, i = {i}")));
    }
    if s == 0.0 || !(s.abs() <= 1.0) {
        return Err(Error::param(format!("cone parameter must lie in [-1, 1] without 0, got {s}")));
    }
    Ok(())
}

/// `φ_{i,f}(C_s)` in closed form:
/// `κ_{n-1} [ (1-s^2)^{k/2} f(s) / |s| + k sign(s) ∫_{-sign s}^{s} f(t) (1-t^2)^{(k-2)/2} dt ]`
/// with `k = n-i-1`.
pub fn eval_cone_ball(n: u32, i: u32, f: &ZonalKernel, s: f64) -> Result<f64> {
    check_cone(n, i, s)?;
    let kap = kappa(n - 1);
    if i == n - 1 {
        let cone = RevolutionBody::cone(n, s)?;
        return area_measure_valuation(&cone, i, f);
    }
    let k = f64::from(n - i - 1);
    let first = if s.abs() == 1.0 {
        0.0
    } else {
        let w = (1.0 - s) * (1.0 + s);
        let v = match f.endpoint_exponent() {
            Some(e) => w.powf(0.5 * k + e) * f.regular_part(s),
            None => w.powf(0.5 * k) * f.eval(s),
        };
        v / s.abs()
    };
    // the integral runs from the pole opposite to the apex direction up to s
    let pole = -s.signum();
    let p = 0.5 * (k - 2.0);
    let (e, g): (f64, Box<dyn Fn(f64) -> f64 + '_>) = match f.endpoint_exponent() {
        Some(e) => (e, Box::new(move |t: f64| f.regular_part(t))),
        None => (0.0, Box::new(move |t: f64| f.eval(t))),
    };
    let q = p + e;
    let full = s.abs() == 1.0;
    // the rule at the pole absorbs (1 - pole t)^q; the opposite factor stays explicit
    let far = move |t: f64| if full { g(t) } else { g(t) * (1.0 + pole * t).powf(q) };
    let mut splits: Vec<f64> = f.breakpoints().iter().copied().filter(|&b| (b - pole) * (s - b) > 0.0).collect();
    splits.sort_by(f64::total_cmp);
    let other = if full { q } else { 0.0 };
    let (lo, hi, left, right) = if pole < 0.0 { (-1.0, s, q, other) } else { (s, 1.0, other, q) };
    let spec = QuadratureSpec::adaptive(1e-14).exponents(left, right).splits(splits);
    let integral = match quad_weighted(&far, lo, hi, &spec) {
        Ok(v) => v,
        Err(Error::NotConverged { estimate, .. }) if estimate.is_finite() => estimate,
        Err(e) => return Err(e),
    };
    // sign(s) ∫_{-sign s}^{s} equals the integral over [lo, hi] in both orientations
    Ok(kap * (first + k * integral))
}

/// `ψ_{i,g}(C_s) = κ_{n-1} (g(-sign s) + g(s) / |s|)`.
pub fn eval_cone_disk(n: u32, i: u32, g: &ZonalKernel, s: f64) -> Result<f64> {
    check_cone(n, i, s)?;
    if !g.is_continuous() {
        return Err(Error::KernelRejected(format!("disk kernels must be continuous, got {}", g.name())));
    }
    Ok(kappa(n - 1) * (g.eval(-s.signum()) + g.eval(s) / s.abs()))
}

/// `(λ, s)` when the body is a single scaled cone.
fn single_cone(body: &RevolutionBody) -> Option<(f64, f64)> {
    let d = body.decompose();
    let bare = d.smooth.is_empty() && d.ball == 0.0 && d.disk == 0.0 && d.segment == 0.0;
    match d.cones.as_slice() {
        [(lambda, s)] if bare => Some((*lambda, *s)),
        _ => None,
    }
}

/// How [`eval`] computes a value.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum EvalMethod {
    ConeClosedForm,
    Quadrature,
    PrincipalValue,
}

pub fn eval_method(spec: &ValuationSpec, body: &RevolutionBody) -> EvalMethod {
    if single_cone(body).is_some() {
        return EvalMethod::ConeClosedForm;
    }
    match &spec.rep {
        Representation::Ball(f) if !f.is_continuous() => EvalMethod::PrincipalValue,
        _ => EvalMethod::Quadrature,
    }
}

/// Value of the valuation on a body.
pub fn eval(spec: &ValuationSpec, body: &RevolutionBody) -> Result<f64> {
    if body.dim() != spec.n {
        return Err(Error::param(format!(
            "body lives in R^{}, the valuation in R^{}",
            body.dim(),
            spec.n
        )));
    }
    let (n, i) = (spec.n, spec.i);
    if let Some((lambda, s)) = single_cone(body) {
        let scale = lambda.powi(i as i32);
        return Ok(scale
            * match &spec.rep {
                Representation::Ball(f) => eval_cone_ball(n, i, f, s)?,
                Representation::Disk(g) => eval_cone_disk(n, i, g, s)?,
            });
    }
    match &spec.rep {
        Representation::Disk(g) => mixed_disk_valuation(body, i, g),
        Representation::Ball(f) if f.is_continuous() => area_measure_valuation(body, i, f),
        Representation::Ball(f) => Ok(pv_eval(n, i, f, body)?.value),
    }
}

/// Outcome of a principal-value evaluation.
#[derive(Debug, Clone, PartialEq)]
pub struct PrincipalValue {
    pub value: f64,
    /// Difference of the last two extrapolated estimates.
    pub gap: f64,
    /// `(ε, ∫_{|t| <= 1-ε} f dS_i)` for the truncations used.
    pub truncations: Vec<(f64, f64)>,
    /// Extrapolated limit after each truncation.
    pub estimates: Vec<f64>,
}

const PV_TOL: f64 = 1e-8;

/// Exponents `q` of the density near `±1`, each contributing tails `ε^{q+1+j}`.
fn tail_exponents(measure: &ProfileMeasure, kernel: &ZonalKernel) -> Option<Vec<f64>> {
    let ke = kernel.endpoint_exponent()?;
    let mut qs: Vec<f64> = Vec::new();
    for p in measure.pieces() {
        if p.lo == -1.0 {
            qs.push(p.left_exp + ke);
        }
        if p.hi == 1.0 {
            qs.push(p.right_exp + ke);
        }
    }
    let mut exps: Vec<f64> = qs.iter().flat_map(|q| (0..5).map(move |j| q + 1.0 + f64::from(j))).collect();
    exps.sort_by(f64::total_cmp);
    exps.dedup_by(|a, b| (*a - *b).abs() < 1e-12);
    Some(exps)
}

/// Leading tail exponent read off three successive truncations on a
/// geometric ladder `hs`.
fn observed_exponent(hs: &[f64], vals: &[f64]) -> Option<f64> {
    let n = vals.len();
    if n < 3 {
        return None;
    }
    let d1 = (vals[n - 2] - vals[n - 3]).abs();
    let d2 = (vals[n - 1] - vals[n - 2]).abs();
    if d1 == 0.0 || d2 == 0.0 {
        return None;
    }
    let beta = (d1 / d2).ln() / (hs[n - 2] / hs[n - 1]).ln();
    (beta > 0.0 && beta.is_finite()).then_some(beta.min(4.0))
}

/// `lim_{ε→0} ∫_{|t| <= 1-ε} f dS_i(K, ·)` from a ladder of truncations,
/// accelerated by Richardson extrapolation in the tail exponents.
///
/// Truncations run over `ε = 10^{-k/2}`, `k = 4..=12`.
pub fn pv_eval(n: u32, i: u32, f: &ZonalKernel, body: &RevolutionBody) -> Result<PrincipalValue> {
    if body.dim() != n {
        return Err(Error::param(format!("body lives in R^{}, expected R^{n}", body.dim())));
    }
    if i == n - 1 || f.is_continuous() {
        let value = if i == n - 1 {
            crate::measures::integrate_zonal(&mixed_measure(body, i, Mixer::Disk)?, f)?
        } else {
            area_measure_valuation(body, i, f)?
        };
        return Ok(PrincipalValue { value, gap: 0.0, truncations: Vec::new(), estimates: vec![value] });
    }
    let measure = mixed_measure(body, i, Mixer::Ball)?;
    if measure.atoms().iter().any(|a| a.0.abs() == 1.0 && a.1 != 0.0) {
        return Err(Error::KernelRejected(format!(
            "singular kernel {} meets a point mass at a pole",
            f.name()
        )));
    }
    let known = tail_exponents(&measure, f);
    let mut hs = Vec::new();
    let mut vals = Vec::new();
    let mut estimates: Vec<f64> = Vec::new();
    let mut gap = f64::INFINITY;
    for k in 4..=12 {
        let eps = 10f64.powf(-0.5 * f64::from(k));
        hs.push(eps);
        vals.push(integrate_truncated(&measure, f, eps)?);
        let exps: Vec<f64> = match &known {
            Some(e) => e.clone(),
            None => match observed_exponent(&hs, &vals) {
                Some(b) => vec![b, b + 1.0],
                None => Vec::new(),
            },
        };
        let usable = exps.len().min(vals.len() - 1);
        let est = if usable == 0 {
            *vals.last().unwrap()
        } else {
            richardson(&hs, &vals, &exps[..usable]).unwrap_or_else(|_| aitken(&vals))
        };
        if let Some(prev) = estimates.last() {
            gap = (est - prev).abs();
        }
        estimates.push(est);
    }
    let value = *estimates.last().unwrap();
    let truncations = hs.into_iter().zip(vals).collect();
    if !(gap < PV_TOL * (1.0 + value.abs())) {
        return Err(Error::PrincipalValue { estimate: value, gap });
    }
    Ok(PrincipalValue { value, gap, truncations, estimates })
}

/// Number of Lobatto intervals used by [`extract_disk_kernel`].
pub const EXTRACTION_INTERVALS: usize = 80;

/// Recovers the normalized disk kernel of a zonal valuation from its values on
/// cones, the disk and the unit cylinder.
///
/// The result is `g + g(-1) t` when the evaluator is `ψ_{i,g}`.
pub fn extract_disk_kernel<F>(evaluator: F, n: u32, i: u32) -> Result<ZonalKernel>
where
    F: Fn(&RevolutionBody) -> Result<f64> + Sync,
{
    let values = extraction_samples(&evaluator, n, i)?;
    let nodes = ChebInterpolant::lobatto_nodes(EXTRACTION_INTERVALS);
    check_continuity(&nodes, &values)?;
    let cheb = ChebInterpolant::from_lobatto_values(&values, -1.0, 1.0)?;
    Ok(ZonalKernel::from_cheb(format!("extracted:n{n},i{i}"), cheb))
}

/// `ḡ_φ` at the Lobatto nodes `cos(π j / 80)`.
pub fn extraction_samples<F>(evaluator: &F, n: u32, i: u32) -> Result<Vec<f64>>
where
    F: Fn(&RevolutionBody) -> Result<f64> + Sync,
{
    if n < 2 || i < 1 || i > n - 1 {
        return Err(Error::param(format!("degree must satisfy 1 <= i <= n-1, got n = {n}, i = {i}")));
    }
    let kap = kappa(n - 1);
    let disk_value = evaluator(&RevolutionBody::disk(n)?)?;
    let nodes = ChebInterpolant::lobatto_nodes(EXTRACTION_INTERVALS);
    nodes
        .par_iter()
        .map(|&s| {
            if s == 0.0 {
                let cyl = evaluator(&RevolutionBody::cylinder(n)?)?;
                Ok((cyl - disk_value) / (f64::from(i) * kap))
            } else {
                let cone = evaluator(&RevolutionBody::cone(n, s)?)?;
                if s < 0.0 {
                    Ok(s * (disk_value - cone) / kap)
                } else {
                    Ok(s * cone / kap)
                }
            }
        })
        .collect()
}

/// One-sided polynomial extrapolation to `0` from five nodes per side.
fn check_continuity(nodes: &[f64], values: &[f64]) -> Result<()> {
    let mid = nodes.iter().position(|&x| x == 0.0).expect("Lobatto grid contains 0");
    let center = values[mid];
    let scale = 1.0 + values.iter().fold(0.0f64, |m, v| m.max(v.abs()));
    let extrapolate = |idx: Vec<usize>| -> f64 {
        idx.iter()
            .map(|&j| {
                let w: f64 = idx
                    .iter()
                    .filter(|&&m| m != j)
                    .map(|&m| (0.0 - nodes[m]) / (nodes[j] - nodes[m]))
                    .product();
                w * values[j]
            })
            .sum()
    };
    let left = extrapolate((mid + 1..=mid + 5).collect());
    let right = extrapolate((mid - 5..mid).collect());
    for (side, v) in [("negative", left), ("positive", right)] {
        if !v.is_finite() || !center.is_finite() || (v - center).abs() > 1e-5 * scale {
            return Err(Error::NotValuationLike(format!(
                "extracted kernel jumps at 0: {side} side tends to {v}, cylinder formula gives {center}"
            )));
        }
    }
    Ok(())
}

/// Switches representation: `g = T_{n-i-1} f` or `f = T_{n-i-1}^{-1} g`.
pub fn convert(spec: &ValuationSpec, target: RepKind) -> Result<ValuationSpec> {
    let alpha = spec.alpha();
    match (&spec.rep, target) {
        (Representation::Ball(_), RepKind::Ball) | (Representation::Disk(_), RepKind::Disk) => Ok(spec.clone()),
        (Representation::Ball(f), RepKind::Disk) => ValuationSpec::disk(spec.n, spec.i, t_alpha(f, alpha)?),
        (Representation::Disk(g), RepKind::Ball) => {
            if alpha == 0.0 {
                return ValuationSpec::ball(spec.n, spec.i, g.clone());
            }
            ValuationSpec::ball(spec.n, spec.i, t_alpha_inv(g, alpha)?)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bodies::body_zoo;
    use crate::measures::surface_measure;
    use crate::measures::integrate_zonal;
    use approx::assert_relative_eq;
    use std::f64::consts::PI;

    #[test]
    fn cone_ball_constant_kernel() {
        let one = ZonalKernel::constant(1.0);
        for k in 1..10 {
            let s = f64::from(k) / 10.0;
            let v = eval_cone_ball(4, 1, &one, s).unwrap();
            let exact = kappa(3) * (1.0 + s).powi(2) / s;
            assert_relative_eq!(v, exact, max_relative = 1e-12);
            let r = eval_cone_ball(4, 1, &one, -s).unwrap();
            assert_relative_eq!(r, exact, max_relative = 1e-12);
        }
        assert!(eval_cone_ball(4, 1, &one, 0.0).is_err());
    }

    #[test]
    fn cone_ball_parity() {
        let f = ZonalKernel::exp();
        let fr = f.reflect();
        for s in [0.2, 0.7, 1.0] {
            let a = eval_cone_ball(5, 2, &f, s).unwrap();
            let b = eval_cone_ball(5, 2, &fr, -s).unwrap();
            assert_relative_eq!(a, b, max_relative = 1e-12);
        }
    }

    #[test]
    fn cone_ball_matches_measure_pipeline() {
        let f = ZonalKernel::cos();
        for (n, i) in [(3, 1), (4, 1), (4, 2), (5, 3)] {
            for s in [-0.8, -0.3, 0.3, 0.8] {
                let cone = RevolutionBody::cone(n, s).unwrap();
                let a = eval_cone_ball(n, i, &f, s).unwrap();
                let b = area_measure_valuation(&cone, i, &f).unwrap();
                assert_relative_eq!(a, b, max_relative = 1e-11);
            }
        }
    }

    #[test]
    fn cone_disk_examples() {
        let one = ZonalKernel::constant(1.0);
        assert_relative_eq!(eval_cone_disk(3, 2, &one, 0.5).unwrap(), 3.0 * PI, max_relative = 1e-15);
        let cone = RevolutionBody::cone(3, 0.5).unwrap();
        let slant = integrate_zonal(&surface_measure(&cone).unwrap(), &one).unwrap();
        assert_relative_eq!(slant, 3.0 * PI, max_relative = 1e-12);
        assert_eq!(eval_cone_disk(4, 1, &ZonalKernel::linear(1.0), 0.4).unwrap(), 0.0);
        let g = ZonalKernel::exp();
        assert_relative_eq!(
            eval_cone_disk(4, 2, &g, 1.0).unwrap(),
            kappa(3) * (g.eval(-1.0) + g.eval(1.0)),
            max_relative = 1e-15
        );
    }

    #[test]
    fn cone_consistency_through_transform() {
        let kernels = [ZonalKernel::constant(1.0), ZonalKernel::poly(vec![0.0, 0.0, 1.0]), ZonalKernel::cos()];
        for n in 3..=5u32 {
            for i in 1..n - 1 {
                let alpha = f64::from(n - i - 1);
                for f in &kernels {
                    let g = t_alpha(f, alpha).unwrap();
                    for s in [-1.0, -0.4, 0.05, 0.6, 1.0] {
                        let a = eval_cone_ball(n, i, f, s).unwrap();
                        let b = eval_cone_disk(n, i, &g, s).unwrap();
                        assert!((a - b).abs() / (1.0 + a.abs()) < 1e-9, "n{n} i{i} {} s{s}", f.name());
                    }
                }
            }
        }
    }

    #[test]
    fn ball_and_disk_agree_on_spheroid() {
        let body = RevolutionBody::spheroid(4, 0.5, 1.0).unwrap();
        let f = ZonalKernel::cos();
        let ball = ValuationSpec::ball(4, 2, f.clone()).unwrap();
        let disk = convert(&ball, RepKind::Disk).unwrap();
        let a = eval(&ball, &body).unwrap();
        let b = eval(&disk, &body).unwrap();
        assert!((a - b).abs() < 1e-7, "{a} vs {b}");
    }

    #[test]
    fn ball_total_mass() {
        let spec = ValuationSpec::ball(4, 2, ZonalKernel::constant(1.0)).unwrap();
        let b = RevolutionBody::ball(4, 1.0).unwrap();
        assert_relative_eq!(eval(&spec, &b).unwrap(), crate::special::omega(4), max_relative = 1e-12);
    }

    #[test]
    fn principal_value_matches_disk_side() {
        let (n, i) = (4, 1);
        let f = ZonalKernel::power_sing(0.5);
        let g = t_alpha(&f, 2.0).unwrap();
        for body in [RevolutionBody::ball(4, 1.0).unwrap(), RevolutionBody::spheroid(4, 2.0, 1.0).unwrap()] {
            let pv = pv_eval(n, i, &f, &body).unwrap();
            let d = mixed_disk_valuation(&body, i, &g).unwrap();
            assert!((pv.value - d).abs() < 1e-6, "{} vs {d}", pv.value);
            assert!(pv.gap < 1e-8);
        }
    }

    #[test]
    fn extraction_recovers_shifted_kernel() {
        let g = ZonalKernel::cos();
        let (n, i) = (4, 2);
        let spec = ValuationSpec::disk(n, i, g.clone()).unwrap();
        let vals = extraction_samples(&|b: &RevolutionBody| eval(&spec, b), n, i).unwrap();
        let nodes = ChebInterpolant::lobatto_nodes(EXTRACTION_INTERVALS);
        for (s, v) in nodes.iter().zip(&vals) {
            assert!((v - (g.eval(*s) + g.eval(-1.0) * s)).abs() < 1e-8, "s {s}");
        }
        let k = extract_disk_kernel(|b: &RevolutionBody| eval(&spec, b), n, i).unwrap();
        assert!((k.eval(0.123) - (0.123f64.cos() + (-1f64).cos() * 0.123)).abs() < 1e-10);
    }

    #[test]
    fn extraction_flags_jumps() {
        // volume-like term that does not vanish on flat bodies
        let bad = |b: &RevolutionBody| -> Result<f64> {
            Ok(if b.support(1.0) + b.support(-1.0) > 0.0 { 1.0 } else { 0.0 })
        };
        assert!(matches!(extract_disk_kernel(bad, 3, 1), Err(Error::NotValuationLike(_))));
    }

    #[test]
    fn spec_json_round_trip() {
        let s = ValuationSpec::load(r#"{"n":4,"i":1,"rep":"ball","kernel":"power-sing:0.5"}"#).unwrap();
        assert_eq!(s.kernel().singular_alpha(), Some(2.0));
        let back = ValuationSpec::from_json_str(&s.to_json().unwrap()).unwrap();
        assert_eq!(back.kind(), RepKind::Ball);
        assert!(ValuationSpec::load(r#"{"n":4,"i":1,"rep":"disk","kernel":"power-sing:0.5"}"#).is_err());
        assert!(ValuationSpec::load(r#"{"n":4,"i":4,"rep":"disk","kernel":"cos"}"#).is_err());
        assert!(ValuationSpec::load(r#"{"n":4,"i":1,"rep":"sphere","kernel":"cos"}"#).is_err());
    }

    #[test]
    fn linear_kernels_vanish() {
        let lin = ZonalKernel::linear(1.0);
        for n in 3..=4 {
            for (name, body) in body_zoo(n).unwrap() {
                for i in 1..n {
                    let b = eval(&ValuationSpec::ball(n, i, lin.clone()).unwrap(), &body).unwrap();
                    let d = eval(&ValuationSpec::disk(n, i, lin.clone()).unwrap(), &body).unwrap();
                    assert!(b.abs() < 1e-9 && d.abs() < 1e-9, "{name} n{n} i{i}: {b} {d}");
                }
            }
        }
    }
}
