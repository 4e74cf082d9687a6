//! Verification suites and the JSON report they produce.
//!
//! Each suite evaluates an identity on a fixed parameter grid and records
//! both sides per case. Reports are deterministic for a given seed.

use crate::bodies::{body_zoo, RevolutionBody};
use crate::error::{Error, Result};
use crate::integral_geometry::{
    crofton_mc, kinematic_check, kinematic_check_with, kinematic_cone_pair, kinematic_lhs_terms,
    kinematic_rhs_terms, kubota_check, kubota_cone_closed_form, cap_mass_slope, KinematicKernel,
};
use crate::kernel::ZonalKernel;
use crate::measures::{
    mixed_disk_valuation, mixed_disk_valuation_sampled, mixed_volume_disk, mixed_volume_disk_sampled,
};
use crate::special::{beta_fn, kappa, ChebInterpolant};
use crate::transforms::{pi_ball, pi_disk, q_ab, r_ab, t_alpha, t_alpha_inv, truncate};
use crate::valuations::{
    eval, eval_cone_ball, eval_cone_disk, extraction_samples, pv_eval, ValuationSpec, EXTRACTION_INTERVALS,
};
use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Value};
use std::fmt;
use std::str::FromStr;

/// Seed used when none is given.
pub const DEFAULT_SEED: u64 = 42;

/// Monte Carlo sample count used when none is given.
pub const DEFAULT_SAMPLES: usize = 1_000_000;

/// Named verification suites.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Suite {
    ConeBall,
    Cones,
    Diagram,
    Rq,
    Inversion,
    Truncation,
    Extraction,
    Kinematic,
    Kubota,
    Crofton,
    PrincipalValue,
    FireyScaling,
    Pipeline,
}

impl Suite {
    pub const ALL: [Suite; 13] = [
        Suite::ConeBall,
        Suite::Cones,
        Suite::Diagram,
        Suite::Rq,
        Suite::Inversion,
        Suite::Truncation,
        Suite::Extraction,
        Suite::Kinematic,
        Suite::Kubota,
        Suite::Crofton,
        Suite::PrincipalValue,
        Suite::FireyScaling,
        Suite::Pipeline,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::ConeBall => "cone-ball",
            Suite::Cones => "cones",
            Suite::Diagram => "diagram",
            Suite::Rq => "rq",
            Suite::Inversion => "inversion",
            Suite::Truncation => "truncation",
            Suite::Extraction => "extraction",
            Suite::Kinematic => "kinematic",
            Suite::Kubota => "kubota",
            Suite::Crofton => "crofton",
            Suite::PrincipalValue => "pv",
            Suite::FireyScaling => "firey-scaling",
            Suite::Pipeline => "pipeline",
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Suite::ALL
            .into_iter()
            .find(|x| x.name() == s)
            .ok_or_else(|| {
                let names: Vec<_> = Suite::ALL.iter().map(|x| x.name()).collect();
                Error::Parse(format!("unknown suite `{s}`; expected one of {}", names.join(", ")))
            })
    }
}

/// Knobs shared by all suites.
#[derive(Debug, Clone, PartialEq)]
pub struct VerifyOptions {
    /// Replaces every per-case tolerance when set.
    pub tol: Option<f64>,
    pub samples: usize,
    pub seed: u64,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        Self { tol: None, samples: DEFAULT_SAMPLES, seed: DEFAULT_SEED }
    }
}

/// How a case's error is measured.
#[derive(Debug, Clone, Copy)]
enum Metric {
    /// `|lhs - rhs| / |rhs|`.
    Relative(f64),
    /// `|lhs - rhs| / (1 + |lhs|)`.
    Mixed(f64),
    /// `|lhs - rhs|`.
    Absolute(f64),
}

#[derive(Debug, Clone, Serialize, PartialEq)]
pub struct VerificationCase {
    pub params: Value,
    pub lhs: f64,
    pub rhs: f64,
    pub abs_err: f64,
    pub rel_err: f64,
    pub pass: bool,
}

impl VerificationCase {
    fn measured(params: Value, lhs: f64, rhs: f64, metric: Metric, tol: Option<f64>) -> Self {
        let abs_err = (lhs - rhs).abs();
        let mixed = abs_err / (1.0 + lhs.abs());
        let (rel_err, err, limit) = match metric {
            Metric::Relative(t) => {
                let r = abs_err / rhs.abs();
                (r, r, t)
            }
            Metric::Mixed(t) => (mixed, mixed, t),
            Metric::Absolute(t) => (mixed, abs_err, t),
        };
        let limit = tol.unwrap_or(limit);
        Self { params, lhs, rhs, abs_err, rel_err, pass: err.is_finite() && err < limit }
    }

    fn judged(params: Value, lhs: f64, rhs: f64, pass: bool) -> Self {
        let abs_err = (lhs - rhs).abs();
        Self { params, lhs, rhs, abs_err, rel_err: abs_err / (1.0 + lhs.abs()), pass }
    }

    fn failed(params: Value, err: &Error) -> Self {
        let mut params = params;
        if let Value::Object(m) = &mut params {
            m.insert("error".into(), Value::String(err.to_string()));
        }
        Self { params, lhs: f64::NAN, rhs: f64::NAN, abs_err: f64::NAN, rel_err: f64::NAN, pass: false }
    }
}

#[derive(Debug, Clone, Serialize, PartialEq)]
pub struct VerificationReport {
    pub suite: String,
    pub cases: Vec<VerificationCase>,
    /// `NaN` (serialized as `null`) if any case failed to evaluate.
    pub max_rel_err: f64,
    pub seed: u64,
}

impl VerificationReport {
    fn new(suite: Suite, cases: Vec<VerificationCase>, seed: u64) -> Self {
        let max_rel_err = cases
            .iter()
            .map(|c| c.rel_err)
            .fold(0.0f64, |m, e| if e.is_nan() || m.is_nan() { f64::NAN } else { m.max(e) });
        Self { suite: suite.name().to_string(), cases, max_rel_err, seed }
    }

    pub fn passed(&self) -> bool {
        self.cases.iter().all(|c| c.pass)
    }

    pub fn failures(&self) -> impl Iterator<Item = &VerificationCase> {
        self.cases.iter().filter(|c| !c.pass)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}

/// Runs one suite.
pub fn run_suite(suite: Suite, opts: &VerifyOptions) -> Result<VerificationReport> {
    let cases = match suite {
        Suite::ConeBall => cone_ball(opts),
        Suite::Cones => cones(opts),
        Suite::Diagram => diagram(opts),
        Suite::Rq => rq(opts),
        Suite::Inversion => inversion(opts),
        Suite::Truncation => truncation_cases(),
        Suite::Extraction => extraction(opts),
        Suite::Kinematic => kinematic(opts),
        Suite::Kubota => kubota(opts),
        Suite::Crofton => crofton(opts)?,
        Suite::PrincipalValue => principal_value(opts),
        Suite::FireyScaling => firey(opts),
        Suite::Pipeline => pipeline(opts),
    };
    Ok(VerificationReport::new(suite, cases, opts.seed))
}

/// Evaluates `f`, turning an error into a failing case.
fn case(params: Value, f: impl FnOnce() -> Result<VerificationCase>) -> VerificationCase {
    f().unwrap_or_else(|e| VerificationCase::failed(params, &e))
}

fn kernels_basic() -> Vec<ZonalKernel> {
    vec![
        ZonalKernel::constant(1.0),
        ZonalKernel::poly(vec![0.0, 1.0]),
        ZonalKernel::poly(vec![0.0, 0.0, 1.0]),
        ZonalKernel::cos(),
        ZonalKernel::exp(),
    ]
}

/// `±{0.05, 0.1, 0.2, 0.3, 0.4, 0.5, 0.7, 0.9, 1}`.
pub fn cone_parameter_grid() -> Vec<f64> {
    let pos = [0.05, 0.1, 0.2, 0.3, 0.4, 0.5, 0.7, 0.9, 1.0];
    pos.iter().flat_map(|&s| [-s, s]).collect()
}

/// 41 evenly spaced points of `[-0.99, 0.99]`.
fn interior_grid() -> Vec<f64> {
    (0..=40).map(|k| -0.99 + 1.98 * f64::from(k) / 40.0).collect()
}

fn cone_ball(opts: &VerifyOptions) -> Vec<VerificationCase> {
    let one = ZonalKernel::constant(1.0);
    (1..=9)
        .map(|k| {
            let s = f64::from(k) / 10.0;
            let params = json!({"n": 4, "i": 1, "kernel": "const:1", "s": s});
            case(params.clone(), || {
                let lhs = eval_cone_ball(4, 1, &one, s)?;
                let rhs = kappa(3) * (1.0 + s).powi(2) / s;
                Ok(VerificationCase::measured(params, lhs, rhs, Metric::Relative(1e-10), opts.tol))
            })
        })
        .collect()
}

fn cones(opts: &VerifyOptions) -> Vec<VerificationCase> {
    let kernels = vec![
        ZonalKernel::constant(1.0),
        ZonalKernel::poly(vec![0.0, 1.0]),
        ZonalKernel::poly(vec![0.0, 0.0, 1.0]),
        ZonalKernel::cos(),
    ];
    let mut jobs = Vec::new();
    for n in 3..=5u32 {
        for i in 1..n - 1 {
            for f in &kernels {
                jobs.push((n, i, f.clone()));
            }
        }
    }
    jobs.par_iter()
        .flat_map_iter(|(n, i, f)| {
            let (n, i) = (*n, *i);
            let g = t_alpha(f, f64::from(n - i - 1));
            cone_parameter_grid().into_iter().map(move |s| {
                let params = json!({"n": n, "i": i, "kernel": f.name(), "s": s});
                let g = g.clone();
                case(params.clone(), || {
                    let lhs = eval_cone_ball(n, i, f, s)?;
                    let rhs = eval_cone_disk(n, i, &g?, s)?;
                    Ok(VerificationCase::measured(params, lhs, rhs, Metric::Mixed(1e-9), opts.tol))
                })
            })
        })
        .collect()
}

fn diagram(opts: &VerifyOptions) -> Vec<VerificationCase> {
    let mut jobs = Vec::new();
    for alpha in [1.0, 2.0, 3.0] {
        for f in kernels_basic() {
            jobs.push((alpha, f));
        }
    }
    jobs.par_iter()
        .flat_map_iter(|(alpha, f)| {
            let alpha = *alpha;
            let sides = t_alpha(f, alpha)
                .and_then(|g| pi_disk(&g, alpha))
                .and_then(|d| Ok((d, pi_ball(f, alpha)?)));
            interior_grid().into_iter().map(move |s| {
                let params = json!({"alpha": alpha, "kernel": f.name(), "s": s});
                match &sides {
                    Ok((d, b)) => VerificationCase::measured(params, d.eval(s), b.eval(s), Metric::Mixed(1e-7), opts.tol),
                    Err(e) => VerificationCase::failed(params, e),
                }
            })
        })
        .collect()
}

fn rq(opts: &VerifyOptions) -> Vec<VerificationCase> {
    let cos = ZonalKernel::cos();
    let pts = [-1.0, -0.7, -0.3, 0.0, 0.4, 0.8, 1.0];
    let mut out = Vec::new();
    // R_{a2+2 b2, b1} R_{a2, b2} = B(b1, b2)/2 R_{a2, b1+b2}
    for (a2, b2, b1) in [(1.0, 1.0, 1.0), (2.0, 0.5, 1.5), (1.0, 1.5, 0.5), (3.0, 2.0, 1.0)] {
        let a1 = a2 + 2.0 * b2;
        let sides = (|| {
            let left = r_ab(&r_ab(&cos, a2, b2)?, a1, b1)?;
            let right = r_ab(&cos, a2, b1 + b2)?;
            Ok::<_, Error>((left, right, 0.5 * beta_fn(b1, b2)?))
        })();
        for &t in &pts {
            let params = json!({"identity": "composition", "a1": a1, "b1": b1, "a2": a2, "b2": b2, "t": t});
            out.push(match &sides {
                Ok((l, r, c)) => VerificationCase::measured(params, l.eval(t), c * r.eval(t), Metric::Absolute(1e-8), opts.tol),
                Err(e) => VerificationCase::failed(params, e),
            });
        }
    }
    for (a, b) in [(1.0, 1.0), (2.0, 0.5), (1.0, 1.5), (3.0, 2.0)] {
        let back = r_ab(&cos, a, b).and_then(|r| q_ab(&r, a, b));
        for &t in &pts {
            let params = json!({"identity": "q-after-r", "a": a, "b": b, "t": t});
            out.push(match &back {
                Ok(k) => VerificationCase::measured(params, k.eval(t), t.cos(), Metric::Absolute(1e-7), opts.tol),
                Err(e) => VerificationCase::failed(params, e),
            });
        }
    }
    // d/dt [t^a R_{a,1} f(t)] = t^{a-1} f(t)
    let h = 1e-5;
    for a in [1.0, 1.5, 2.0, 3.0] {
        let r = r_ab(&cos, a, 1.0);
        for t in [0.2, 0.5, 0.8] {
            let params = json!({"identity": "derivative", "a": a, "t": t, "step": h});
            out.push(match &r {
                Ok(r) => {
                    let p = |x: f64| x.powf(a) * r.eval(x);
                    let fd = (p(t + h) - p(t - h)) / (2.0 * h);
                    let exact = t.powf(a - 1.0) * t.cos();
                    VerificationCase::measured(params, fd, exact, Metric::Relative(1e-5), opts.tol)
                }
                Err(e) => VerificationCase::failed(params, e),
            });
        }
    }
    out
}

fn inversion(opts: &VerifyOptions) -> Vec<VerificationCase> {
    let mut jobs = Vec::new();
    for alpha in [0.5, 1.0, 2.0, 3.0] {
        for f in kernels_basic() {
            jobs.push((alpha, f.clone(), "T-after-Tinv"));
            jobs.push((alpha, f, "Tinv-after-T"));
        }
    }
    let pts: Vec<f64> = (0..=20).map(|k| -0.99 + 1.98 * f64::from(k) / 20.0).collect();
    jobs.par_iter()
        .flat_map_iter(|(alpha, f, order)| {
            let alpha = *alpha;
            let back = if *order == "T-after-Tinv" {
                t_alpha_inv(f, alpha).and_then(|x| t_alpha(&x, alpha))
            } else {
                t_alpha(f, alpha).and_then(|x| t_alpha_inv(&x, alpha))
            };
            let pts = pts.clone();
            pts.into_iter().map(move |s| {
                let params = json!({"identity": order, "alpha": alpha, "kernel": f.name(), "s": s});
                match &back {
                    Ok(k) => VerificationCase::measured(params, k.eval(s), f.eval(s), Metric::Mixed(1e-8), opts.tol),
                    Err(e) => VerificationCase::failed(params, e),
                }
            })
        })
        .collect()
}

/// `sup |T_α(η_ε f) - T_α f|` must shrink along `ε = 0.1, 0.05, 0.01`.
fn truncation_cases() -> Vec<VerificationCase> {
    let mut pts: Vec<f64> = (0..=200).map(|k| -1.0 + f64::from(k) / 100.0).collect();
    pts.extend([1e-2, 1e-3, 1e-4, 1e-5, 1e-6].map(|h| 1.0 - h));
    let mut out = Vec::new();
    for alpha in [1.0, 2.0, 3.0] {
        let f = ZonalKernel::power_sing(alpha / 4.0);
        let errs: Result<Vec<f64>> = (|| {
            let full = t_alpha(&f, alpha)?;
            [0.1, 0.05, 0.01]
                .par_iter()
                .map(|&e| {
                    let tr = t_alpha(&truncate(&f, e)?, alpha)?;
                    Ok(pts.iter().map(|&s| (tr.eval(s) - full.eval(s)).abs()).fold(0.0, f64::max))
                })
                .collect()
        })();
        for (k, eps) in [(1, 0.05), (2, 0.01)] {
            let params = json!({"identity": "bump-truncation", "alpha": alpha, "kernel": f.name(), "eps": eps});
            out.push(match &errs {
                Ok(e) => VerificationCase::judged(params, e[k], e[k - 1], e[k] < e[k - 1]),
                Err(err) => VerificationCase::failed(params, err),
            });
        }
    }
    out
}

fn extraction(opts: &VerifyOptions) -> Vec<VerificationCase> {
    let kernels = [ZonalKernel::cos(), ZonalKernel::exp(), ZonalKernel::poly(vec![1.0, -0.5, 2.0])];
    let nodes = ChebInterpolant::lobatto_nodes(EXTRACTION_INTERVALS);
    let mut out = Vec::new();
    for (n, i) in [(3u32, 1u32), (4, 1), (4, 2), (5, 3)] {
        for g in &kernels {
            let spec = ValuationSpec::disk(n, i, g.clone());
            let samples = spec.as_ref().map_err(Clone::clone).and_then(|sp| extraction_samples(&|b: &RevolutionBody| eval(sp, b), n, i));
            for (k, &s) in nodes.iter().enumerate() {
                let params = json!({"n": n, "i": i, "kernel": g.name(), "s": s});
                out.push(match &samples {
                    Ok(v) => VerificationCase::measured(params, v[k], g.eval(s) + g.eval(-1.0) * s, Metric::Absolute(1e-8), opts.tol),
                    Err(e) => VerificationCase::failed(params, e),
                });
            }
            let params = json!({"n": n, "i": i, "kernel": g.name(), "body": "cylinder"});
            out.push(case(params.clone(), || {
                let lhs = eval(spec.as_ref().map_err(Clone::clone)?, &RevolutionBody::cylinder(n)?)?;
                let rhs = kappa(n - 1) * (g.eval(1.0) + g.eval(-1.0) + f64::from(i) * g.eval(0.0));
                Ok(VerificationCase::measured(params, lhs, rhs, Metric::Mixed(1e-8), opts.tol))
            }));
        }
    }
    out
}

fn kinematic(opts: &VerifyOptions) -> Vec<VerificationCase> {
    let g = ZonalKernel::exp();
    let grid = [-0.8, -0.3, 0.3, 0.8];
    let mut jobs = Vec::new();
    for n in 3..=5u32 {
        for j in 1..n {
            for s in grid {
                for t in grid {
                    for lm in [(1.0, 1.0), (2.0, 0.5)] {
                        jobs.push((n, j, s, t, lm));
                    }
                }
            }
        }
    }
    let mut out: Vec<VerificationCase> = jobs
        .par_iter()
        .flat_map_iter(|&(n, j, s, t, (l, m))| {
            let base = json!({"n": n, "j": j, "kernel": g.name(), "s": s, "t": t, "lambda": l, "mu": m});
            let with = |kind: &str| {
                let mut p = base.clone();
                p["check"] = Value::String(kind.into());
                p
            };
            let closed = with("cone-closed-form");
            let pipeline = with("cone-pipeline");
            [
                case(closed.clone(), || {
                    let c = kinematic_cone_pair(n, j, &g, (l, s), (m, t))?;
                    Ok(VerificationCase::measured(closed, c.lhs, c.rhs, Metric::Mixed(1e-9), opts.tol))
                }),
                case(pipeline.clone(), || {
                    let k = RevolutionBody::cone(n, s)?.scale(l)?;
                    let b = RevolutionBody::cone(n, t)?.scale(m)?;
                    let c = kinematic_check(n, j, &g, &k, &b)?;
                    Ok(VerificationCase::measured(pipeline, c.lhs, c.rhs, Metric::Mixed(1e-9), opts.tol))
                }),
            ]
        })
        .collect();
    out.extend(kinematic_smooth(opts));
    out
}

fn smooth_pairs(n: u32) -> Result<Vec<(&'static str, RevolutionBody, RevolutionBody)>> {
    Ok(vec![
        ("spheroid(0.5,1)+ball(1)", RevolutionBody::spheroid(n, 0.5, 1.0)?, RevolutionBody::ball(n, 1.0)?),
        ("ball(0.7)+spheroid(2,1)", RevolutionBody::ball(n, 0.7)?, RevolutionBody::spheroid(n, 2.0, 1.0)?),
        ("ball(1)+ball(1)", RevolutionBody::ball(n, 1.0)?, RevolutionBody::ball(n, 1.0)?),
    ])
}

fn kinematic_smooth(opts: &VerifyOptions) -> Vec<VerificationCase> {
    let kernels = [ZonalKernel::constant(1.0), ZonalKernel::cos()];
    let mut jobs = Vec::new();
    for n in 3..=4u32 {
        for j in 1..n {
            for g in &kernels {
                jobs.push((n, j, g.clone()));
            }
        }
    }
    jobs.par_iter()
        .flat_map_iter(|(n, j, g)| {
            let (n, j) = (*n, *j);
            let pairs = smooth_pairs(n).unwrap_or_default();
            pairs.into_iter().flat_map(move |(name, k, l)| {
                let base = json!({"n": n, "j": j, "kernel": g.name(), "pair": name});
                let with = |kind: &str| {
                    let mut p = base.clone();
                    p["check"] = Value::String(kind.into());
                    p
                };
                let mut cases = Vec::new();
                let p = with("smooth");
                cases.push(case(p.clone(), || {
                    let c = kinematic_check(n, j, g, &k, &l)?;
                    Ok(VerificationCase::measured(p, c.lhs, c.rhs, Metric::Mixed(1e-6), opts.tol))
                }));
                let p = with("gauge c=3");
                cases.push(case(p.clone(), || {
                    let q = KinematicKernel::new(g.clone())?;
                    let base = kinematic_check_with(n, j, &q, &k, &l)?.rhs;
                    let gauged = kinematic_check_with(n, j, &q.with_gauge(3.0), &k, &l)?.rhs;
                    Ok(VerificationCase::measured(p, gauged, base, Metric::Absolute(1e-8), opts.tol))
                }));
                let terms = (|| {
                    let q = KinematicKernel::new(g.clone())?;
                    Ok::<_, Error>((kinematic_lhs_terms(n, j, g, &k, &l)?, kinematic_rhs_terms(n, j, &q, &k, &l)?))
                })();
                for i in 0..=j {
                    let mut p = with("degree-term");
                    p["i"] = json!(i);
                    cases.push(match &terms {
                        Ok((lt, rt)) => {
                            VerificationCase::measured(p, lt[i as usize], rt[i as usize], Metric::Mixed(1e-7), opts.tol)
                        }
                        Err(e) => VerificationCase::failed(p, e),
                    });
                }
                cases
            })
        })
        .collect()
}

fn kubota(opts: &VerifyOptions) -> Vec<VerificationCase> {
    let mut out = Vec::new();
    for n in 3..=5u32 {
        for i in 1..n {
            for s in [-0.8, -0.3, 0.3, 0.5, 0.8] {
                let closed = json!({"n": n, "i": i, "body": format!("cone({s})"), "check": "closed-form"});
                let c = kubota_cone_closed_form(n, i, s);
                out.push(VerificationCase::measured(closed, c.lhs, c.rhs, Metric::Mixed(1e-12), opts.tol));
                let params = json!({"n": n, "i": i, "body": format!("cone({s})"), "check": "pipeline"});
                out.push(case(params.clone(), || {
                    let c = kubota_check(n, i, &RevolutionBody::cone(n, s)?)?;
                    Ok(VerificationCase::measured(params, c.lhs, c.rhs, Metric::Mixed(1e-12), opts.tol))
                }));
            }
            for (name, body) in body_zoo(n).unwrap_or_default() {
                if !body.decompose().cones.is_empty() {
                    continue;
                }
                let params = json!({"n": n, "i": i, "body": name, "check": "pipeline"});
                out.push(case(params.clone(), || {
                    let c = kubota_check(n, i, &body)?;
                    Ok(VerificationCase::measured(params, c.lhs, c.rhs, Metric::Mixed(1e-6), opts.tol))
                }));
            }
        }
    }
    out
}

fn crofton(opts: &VerifyOptions) -> Result<Vec<VerificationCase>> {
    if opts.samples < 4 {
        return Err(Error::param("crofton needs at least 4 samples"));
    }
    let mut out = Vec::new();
    for (n, j) in [(3u32, 2u32), (4, 2), (4, 3)] {
        let params = json!({"n": n, "j": j, "body": "ball(1)", "samples": opts.samples});
        out.push(case(params.clone(), || {
            let est = crofton_mc(n, j, &RevolutionBody::ball(n, 1.0)?, opts.samples, opts.seed)?;
            let mut p = params;
            p["stderr"] = json!(est.stderr);
            p["z"] = json!(est.z_score());
            let pass = est.z_score() < 3.0 && est.stderr / est.rhs.abs() < 0.01;
            Ok(VerificationCase::judged(p, est.estimate, est.rhs, pass))
        }));
    }
    Ok(out)
}

fn principal_value(opts: &VerifyOptions) -> Vec<VerificationCase> {
    let mut jobs = Vec::new();
    for (n, i) in [(3u32, 1u32), (4, 1), (4, 2), (5, 1)] {
        for name in ["ball(1)", "ball(0.7)", "spheroid(0.5,1)", "spheroid(2,1)"] {
            jobs.push((n, i, name));
        }
    }
    jobs.par_iter()
        .flat_map_iter(|&(n, i, name)| {
            let alpha = f64::from(n - i - 1);
            let f = ZonalKernel::power_sing(alpha / 4.0);
            let base = json!({"n": n, "i": i, "kernel": f.name(), "body": name});
            let body = body_zoo(n).ok().and_then(|z| z.into_iter().find(|b| b.0 == name)).map(|b| b.1);
            let result = (|| {
                let body = body.ok_or_else(|| Error::param(format!("no zoo body {name}")))?;
                let pv = pv_eval(n, i, &f, &body)?;
                let disk = mixed_disk_valuation(&body, i, &t_alpha(&f, alpha)?)?;
                Ok::<_, Error>((pv, disk))
            })();
            let mut gap_params = base.clone();
            gap_params["check"] = json!("cauchy-gap at eps=1e-5");
            let mut val_params = base;
            val_params["check"] = json!("pv vs disk");
            match result {
                Ok((pv, disk)) => {
                    let at = pv.truncations.iter().position(|t| (t.0 / 1e-5 - 1.0).abs() < 1e-9);
                    let gap = match at {
                        Some(k) if k > 0 => (pv.estimates[k] - pv.estimates[k - 1]).abs(),
                        _ => pv.gap,
                    };
                    vec![
                        VerificationCase::measured(gap_params, gap, 0.0, Metric::Absolute(1e-8), opts.tol),
                        VerificationCase::measured(val_params, pv.value, disk, Metric::Absolute(1e-6), opts.tol),
                    ]
                }
                Err(e) => vec![VerificationCase::failed(gap_params, &e), VerificationCase::failed(val_params, &e)],
            }
        })
        .collect()
}

/// Cap widths for the log-log slope.
pub const FIREY_WIDTHS: [f64; 3] = [1e-2, 1e-3, 1e-4];

fn firey(opts: &VerifyOptions) -> Vec<VerificationCase> {
    let mut out = Vec::new();
    for (n, i) in [(4u32, 1u32), (5, 2)] {
        let target = f64::from(n - i - 1) / 2.0;
        let bodies = [
            ("spheroid(0.5,1)", RevolutionBody::spheroid(n, 0.5, 1.0)),
            ("spheroid(2,1)", RevolutionBody::spheroid(n, 2.0, 1.0)),
            ("ball(0.5)+disk", RevolutionBody::ball(n, 0.5).and_then(|b| {
                RevolutionBody::minkowski_sum(&[(1.0, b), (1.0, RevolutionBody::disk(n)?)])
            })),
        ];
        for (name, body) in bodies {
            let params = json!({"n": n, "i": i, "body": name, "eps": FIREY_WIDTHS});
            out.push(case(params.clone(), || {
                let slope = cap_mass_slope(&body?, i, &FIREY_WIDTHS)?;
                Ok(VerificationCase::measured(params, slope, target, Metric::Absolute(0.2), opts.tol))
            }));
        }
    }
    out
}

fn pipeline(opts: &VerifyOptions) -> Vec<VerificationCase> {
    let kernels = [ZonalKernel::cos(), ZonalKernel::exp()];
    let mut out = Vec::new();
    for n in 3..=5u32 {
        for (name, body) in body_zoo(n).unwrap_or_default() {
            let d = body.decompose();
            if !d.has_smooth_part() || d.is_conic() {
                continue;
            }
            for i in 1..n {
                for g in &kernels {
                    let params = json!({"n": n, "i": i, "body": name, "kernel": g.name(), "quantity": "mixed disk valuation"});
                    out.push(case(params.clone(), || {
                        let a = mixed_disk_valuation(&body, i, g)?;
                        let b = mixed_disk_valuation_sampled(&body, i, g)?;
                        Ok(VerificationCase::measured(params, a, b, Metric::Mixed(1e-8), opts.tol))
                    }));
                }
            }
            for i in 0..=n {
                let params = json!({"n": n, "i": i, "body": name, "quantity": "mixed volume with disk"});
                out.push(case(params.clone(), || {
                    let a = mixed_volume_disk(&body, i)?;
                    let b = mixed_volume_disk_sampled(&body, i)?;
                    Ok(VerificationCase::measured(params, a, b, Metric::Mixed(1e-8), opts.tol))
                }));
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn suite_names_round_trip() {
        for s in Suite::ALL {
            assert_eq!(s.name().parse::<Suite>().unwrap(), s);
        }
        assert!(matches!("nope".parse::<Suite>(), Err(Error::Parse(_))));
    }

    #[test]
    fn cone_ball_suite_passes() {
        let r = run_suite(Suite::ConeBall, &VerifyOptions::default()).unwrap();
        assert_eq!(r.cases.len(), 9);
        assert!(r.passed(), "{}", r.to_json());
    }

    #[test]
    fn tolerance_override_applies() {
        let opts = VerifyOptions { tol: Some(0.0), ..Default::default() };
        let r = run_suite(Suite::ConeBall, &opts).unwrap();
        assert!(r.cases.iter().any(|c| !c.pass || c.abs_err == 0.0));
    }

    #[test]
    fn nan_propagates_to_max() {
        let c = VerificationCase::failed(json!({}), &Error::param("x"));
        let r = VerificationReport::new(Suite::Rq, vec![c], 1);
        assert!(r.max_rel_err.is_nan());
        assert!(r.to_json().contains("\"max_rel_err\": null"));
    }
}
