//! Convex bodies of revolution about the axis `e_n`.
//!
//! A body is stored structurally (cone, disk, ball, segment, cylinder, smooth
//! profile, weighted Minkowski sum). Everything downstream works with the
//! support profile `eta(t) = h_K(u)` for `t = <e_n, u>` and with the flattened
//! [`Decomposition`] of a sum into its primitive summands.

use crate::error::{Error, Result};
use crate::special::ChebInterpolant;
use serde::{Deserialize, Serialize};
use std::path::Path;

/// A smooth, strictly convex support profile with known derivatives.
#[derive(Debug, Clone, PartialEq)]
pub enum SmoothProfile {
    /// Ellipsoid of revolution: semi-axis `axial` along `e_n`, `equatorial`
    /// in the orthogonal hyperplane.
    Spheroid { axial: f64, equatorial: f64 },
    /// Chebyshev series for `eta` on `[-1, 1]`.
    Cheb { eta: ChebInterpolant, d1: ChebInterpolant, d2: ChebInterpolant },
}

impl SmoothProfile {
    pub fn spheroid(axial: f64, equatorial: f64) -> Result<Self> {
        if !(axial > 0.0 && equatorial > 0.0) {
            return Err(Error::param(format!(
                "spheroid semi-axes must be positive, got ({axial}, {equatorial})"
            )));
        }
        Ok(SmoothProfile::Spheroid { axial, equatorial })
    }

    pub fn cheb(coeffs: Vec<f64>) -> Result<Self> {
        let eta = ChebInterpolant::from_coeffs(coeffs, -1.0, 1.0)?;
        let d1 = eta.diff();
        let d2 = d1.diff();
        Ok(SmoothProfile::Cheb { eta, d1, d2 })
    }

    pub fn eta(&self, t: f64) -> f64 {
        match self {
            SmoothProfile::Spheroid { axial, equatorial } => {
                (axial * axial * t * t + equatorial * equatorial * (1.0 - t * t)).sqrt()
            }
            SmoothProfile::Cheb { eta, .. } => eta.eval(t),
        }
    }

    /// `(A1 eta, A2 eta)` at `t`.
    pub fn a1_a2(&self, t: f64) -> (f64, f64) {
        match self {
            SmoothProfile::Spheroid { axial, equatorial } => {
                let (a2, b2) = (axial * axial, equatorial * equatorial);
                let eta = (a2 * t * t + b2 * (1.0 - t * t)).sqrt();
                (b2 / eta, a2 * b2 / (eta * eta * eta))
            }
            SmoothProfile::Cheb { eta, d1, d2 } => {
                let (e, e1, e2) = (eta.eval(t), d1.eval(t), d2.eval(t));
                let a1 = e - t * e1;
                (a1, (1.0 - t * t) * e2 + a1)
            }
        }
    }

    fn circumradius(&self) -> f64 {
        match self {
            SmoothProfile::Spheroid { axial, equatorial } => axial.max(*equatorial),
            SmoothProfile::Cheb { .. } => (0..=400)
                .map(|k| self.eta(-1.0 + f64::from(k) / 200.0).abs())
                .fold(0.0, f64::max),
        }
    }
}

/// Structural kind of a body of revolution.
#[derive(Debug, Clone, PartialEq)]
pub enum BodyKind {
    Smooth(SmoothProfile),
    /// `conv(D, (sqrt(1 - s^2)/s) e_n)`; `s < 0` points downward.
    Cone { s: f64 },
    /// The unit `(n-1)`-disk in `e_n^⊥`.
    Disk,
    Ball { r: f64 },
    /// The segment `[0, e_n]`.
    Segment,
    /// `Disk + Segment`.
    Cylinder,
    Sum(Vec<(f64, RevolutionBody)>),
}

/// A convex body of revolution in `R^dim` with axis `e_n`.
#[derive(Debug, Clone, PartialEq)]
pub struct RevolutionBody {
    dim: u32,
    kind: BodyKind,
    translation: f64,
}

fn check_dim(dim: u32) -> Result<()> {
    if dim < 2 {
        return Err(Error::param(format!("ambient dimension must be >= 2, got {dim}")));
    }
    Ok(())
}

impl RevolutionBody {
    fn new(dim: u32, kind: BodyKind) -> Result<Self> {
        check_dim(dim)?;
        Ok(Self { dim, kind, translation: 0.0 })
    }

    pub fn ball(dim: u32, r: f64) -> Result<Self> {
        if !(r >= 0.0) {
            return Err(Error::param(format!("ball radius must be >= 0, got {r}")));
        }
        Self::new(dim, BodyKind::Ball { r })
    }

    pub fn disk(dim: u32) -> Result<Self> {
        Self::new(dim, BodyKind::Disk)
    }

    pub fn segment(dim: u32) -> Result<Self> {
        Self::new(dim, BodyKind::Segment)
    }

    pub fn cylinder(dim: u32) -> Result<Self> {
        Self::new(dim, BodyKind::Cylinder)
    }

    pub fn cone(dim: u32, s: f64) -> Result<Self> {
        if !(s.abs() <= 1.0) || s == 0.0 {
            return Err(Error::param(format!("cone parameter must lie in [-1, 1] without 0, got {s}")));
        }
        Self::new(dim, BodyKind::Cone { s })
    }

    pub fn spheroid(dim: u32, axial: f64, equatorial: f64) -> Result<Self> {
        Self::new(dim, BodyKind::Smooth(SmoothProfile::spheroid(axial, equatorial)?))
    }

    pub fn smooth(dim: u32, profile: SmoothProfile) -> Result<Self> {
        Self::new(dim, BodyKind::Smooth(profile))
    }

    pub fn dim(&self) -> u32 {
        self.dim
    }

    pub fn kind(&self) -> &BodyKind {
        &self.kind
    }

    pub fn translation(&self) -> f64 {
        self.translation
    }

    /// Translates along the axis; valuations ignore this.
    pub fn translated(mut self, h: f64) -> Self {
        self.translation += h;
        self
    }

    /// The same profile read in another ambient dimension.
    pub fn with_dim(&self, dim: u32) -> Self {
        let kind = match &self.kind {
            BodyKind::Sum(terms) => {
                BodyKind::Sum(terms.iter().map(|(w, b)| (*w, b.with_dim(dim))).collect())
            }
            k => k.clone(),
        };
        Self { dim, kind, translation: self.translation }
    }

    /// Weighted Minkowski sum with simplifying rewrites.
    pub fn minkowski_sum(terms: &[(f64, RevolutionBody)]) -> Result<Self> {
        let Some(first) = terms.first() else {
            return Err(Error::param("Minkowski sum of no bodies"));
        };
        let dim = first.1.dim;
        let mut flat: Vec<(f64, RevolutionBody)> = Vec::new();
        for (w, b) in terms {
            if !(*w >= 0.0) {
                return Err(Error::param(format!("Minkowski weight must be >= 0, got {w}")));
            }
            if b.dim != dim {
                return Err(Error::param(format!(
                    "dimension mismatch in Minkowski sum: {} vs {dim}",
                    b.dim
                )));
            }
            match &b.kind {
                BodyKind::Sum(inner) => flat.extend(inner.iter().map(|(v, c)| (w * v, c.clone()))),
                _ => flat.push((*w, b.clone())),
            }
        }
        let translation = terms.iter().map(|(w, b)| w * b.translation).sum();
        let mut merged: Vec<(f64, RevolutionBody)> = Vec::new();
        let mut ball = 0.0;
        let mut saw_ball = false;
        for (w, b) in flat {
            if let BodyKind::Ball { r } = b.kind {
                ball += w * r;
                saw_ball = true;
                continue;
            }
            if w == 0.0 {
                continue;
            }
            let b = Self { translation: 0.0, ..b };
            if let Some(slot) = merged.iter_mut().find(|(_, c)| c.kind == b.kind) {
                slot.0 += w;
            } else {
                merged.push((w, b));
            }
        }
        if ball > 0.0 || (merged.is_empty() && saw_ball) {
            merged.push((1.0, Self::ball(dim, ball)?));
        }
        let is = |b: &RevolutionBody, k: &BodyKind| &b.kind == k;
        let body = match merged.as_slice() {
            [] => Self::ball(dim, 0.0)?,
            [(w, b)] if *w == 1.0 => b.clone(),
            [(w, b)] if matches!(b.kind, BodyKind::Ball { .. }) => Self::ball(dim, w * b.support(0.0))?,
            [(1.0, x), (1.0, y)]
                if (is(x, &BodyKind::Disk) && is(y, &BodyKind::Segment))
                    || (is(y, &BodyKind::Disk) && is(x, &BodyKind::Segment)) =>
            {
                Self::cylinder(dim)?
            }
            _ => Self::new(dim, BodyKind::Sum(merged))?,
        };
        Ok(Self { translation, ..body })
    }

    pub fn scale(&self, lambda: f64) -> Result<Self> {
        if !(lambda >= 0.0) {
            return Err(Error::param(format!("scale factor must be >= 0, got {lambda}")));
        }
        if let BodyKind::Ball { r } = self.kind {
            return Ok(Self { translation: lambda * self.translation, ..Self::ball(self.dim, lambda * r)? });
        }
        if lambda == 1.0 {
            return Ok(self.clone());
        }
        let terms = match &self.kind {
            BodyKind::Sum(t) => t.iter().map(|(w, b)| (lambda * w, b.clone())).collect(),
            _ => vec![(lambda, Self { translation: 0.0, ..self.clone() })],
        };
        Ok(Self {
            dim: self.dim,
            kind: BodyKind::Sum(terms),
            translation: lambda * self.translation,
        })
    }

    /// `eta(t) = h_K(u)` for a unit `u` with `<e_n, u> = t` (ignores translation).
    pub fn support(&self, t: f64) -> f64 {
        match &self.kind {
            BodyKind::Smooth(p) => p.eta(t),
            BodyKind::Cone { s } => cone_support(*s, t),
            BodyKind::Disk => (1.0 - t * t).max(0.0).sqrt(),
            BodyKind::Ball { r } => *r,
            BodyKind::Segment => t.max(0.0),
            BodyKind::Cylinder => (1.0 - t * t).max(0.0).sqrt() + t.max(0.0),
            BodyKind::Sum(terms) => terms.iter().map(|(w, b)| w * b.support(t)).sum(),
        }
    }

    /// `(A1 eta, A2 eta)` for kinds with a twice differentiable profile on `(-1, 1)`.
    pub fn a1_a2(&self, t: f64) -> Result<(f64, f64)> {
        match &self.kind {
            BodyKind::Smooth(p) => Ok(p.a1_a2(t)),
            BodyKind::Ball { r } => Ok((*r, *r)),
            BodyKind::Disk => Ok(((1.0 - t * t).powf(-0.5), 0.0)),
            BodyKind::Sum(terms) => terms.iter().try_fold((0.0, 0.0), |acc, (w, b)| {
                let (a1, a2) = b.a1_a2(t)?;
                Ok((acc.0 + w * a1, acc.1 + w * a2))
            }),
            k => Err(Error::UnsupportedBody(format!(
                "{} has no twice differentiable profile",
                kind_name(k)
            ))),
        }
    }

    /// Flattens the body into primitive summands.
    pub fn decompose(&self) -> Decomposition {
        let mut d = Decomposition::default();
        self.accumulate(1.0, &mut d);
        d
    }

    fn accumulate(&self, w: f64, d: &mut Decomposition) {
        match &self.kind {
            BodyKind::Smooth(p) => {
                if let Some(slot) = d.smooth.iter_mut().find(|(_, q)| q == p) {
                    slot.0 += w;
                } else {
                    d.smooth.push((w, p.clone()));
                }
            }
            BodyKind::Cone { s } if s.abs() == 1.0 => d.disk += w,
            BodyKind::Cone { s } => {
                if let Some(slot) = d.cones.iter_mut().find(|(_, t)| t == s) {
                    slot.0 += w;
                } else {
                    d.cones.push((w, *s));
                }
            }
            BodyKind::Disk => d.disk += w,
            BodyKind::Ball { r } => d.ball += w * r,
            BodyKind::Segment => d.segment += w,
            BodyKind::Cylinder => {
                d.disk += w;
                d.segment += w;
            }
            BodyKind::Sum(terms) => {
                for (v, b) in terms {
                    b.accumulate(w * v, d);
                }
            }
        }
        d.cones.retain(|(w, _)| *w != 0.0);
        d.smooth.retain(|(w, _)| *w != 0.0);
    }

    /// Grid check of `A1 eta >= 0` and `A2 eta >= 0` on 201 points.
    pub fn validate_convexity(&self) -> ConvexityReport {
        const TOL: f64 = 1e-10;
        let mut violations = Vec::new();
        let decomposition = self.decompose();
        for (w, p) in &decomposition.smooth {
            if *w < 0.0 {
                violations.push(Violation { t: f64::NAN, a1: f64::NAN, a2: f64::NAN });
                continue;
            }
            for k in 0..=200 {
                let t = -1.0 + f64::from(k) / 100.0;
                let (a1, a2) = p.a1_a2(t);
                if a1 < -TOL || a2 < -TOL || !a1.is_finite() || !a2.is_finite() {
                    violations.push(Violation { t, a1, a2 });
                }
            }
        }
        ConvexityReport { valid: violations.is_empty(), violations }
    }

    /// Radius of a centred ball containing the body.
    pub fn circumradius(&self) -> f64 {
        let d = self.decompose();
        let smooth: f64 = d.smooth.iter().map(|(w, p)| w * p.circumradius()).sum();
        let cones: f64 = d
            .cones
            .iter()
            .map(|(w, s)| w * (1.0 / s.abs()))
            .sum();
        smooth + d.ball + d.disk + d.segment + cones
    }

    /// True when the body is symmetric under `x -> -x`.
    pub fn is_origin_symmetric(&self) -> bool {
        let d = self.decompose();
        d.cones.is_empty() && d.segment == 0.0 && self.translation == 0.0 && {
            let even = (0..=20).all(|k| {
                let t = f64::from(k) / 20.0;
                (self.support(t) - self.support(-t)).abs() <= 1e-12 * (1.0 + self.support(t).abs())
            });
            even
        }
    }

    pub fn from_json_str(text: &str) -> Result<Self> {
        let raw: BodyJson = serde_json::from_str(text)?;
        raw.build(None)
    }

    /// Reads a body from a JSON file path or from inline JSON text.
    pub fn load(path_or_json: &str) -> Result<Self> {
        let trimmed = path_or_json.trim_start();
        if trimmed.starts_with('{') {
            return Self::from_json_str(trimmed);
        }
        let text = std::fs::read_to_string(Path::new(path_or_json))?;
        Self::from_json_str(&text)
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(BodyJson::from_body(self, true)).expect("body serializes")
    }
}

/// Support profile of `C_s`.
pub fn cone_support(s: f64, t: f64) -> f64 {
    let disk = (1.0 - t * t).max(0.0).sqrt();
    if (s > 0.0 && t <= s) || (s < 0.0 && t >= s) {
        disk
    } else {
        (1.0 - s * s).sqrt() / s * t
    }
}

fn kind_name(k: &BodyKind) -> &'static str {
    match k {
        BodyKind::Smooth(_) => "smooth",
        BodyKind::Cone { .. } => "cone",
        BodyKind::Disk => "disk",
        BodyKind::Ball { .. } => "ball",
        BodyKind::Segment => "segment",
        BodyKind::Cylinder => "cylinder",
        BodyKind::Sum(_) => "sum",
    }
}

/// A body flattened to `Σ w_k smooth_k + ball B + disk D + segment S + Σ λ_j C_{s_j}`.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct Decomposition {
    pub smooth: Vec<(f64, SmoothProfile)>,
    pub ball: f64,
    pub disk: f64,
    pub segment: f64,
    pub cones: Vec<(f64, f64)>,
}

impl Decomposition {
    /// True if there is a strictly convex smooth part.
    pub fn has_smooth_part(&self) -> bool {
        !self.smooth.is_empty() || self.ball > 0.0
    }

    pub fn is_conic(&self) -> bool {
        !self.cones.is_empty()
    }

    /// Profile of the smooth part (`0` when absent).
    pub fn smooth_eta(&self, t: f64) -> f64 {
        self.ball + self.smooth.iter().map(|(w, p)| w * p.eta(t)).sum::<f64>()
    }

    /// `(A1, A2)` of the smooth part.
    pub fn smooth_a1_a2(&self, t: f64) -> (f64, f64) {
        self.smooth.iter().fold((self.ball, self.ball), |acc, (w, p)| {
            let (a1, a2) = p.a1_a2(t);
            (acc.0 + w * a1, acc.1 + w * a2)
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Violation {
    pub t: f64,
    pub a1: f64,
    pub a2: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ConvexityReport {
    pub valid: bool,
    pub violations: Vec<Violation>,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "lowercase")]
enum ProfileJson {
    Spheroid { a: f64, b: f64 },
    Cheb { coeffs: Vec<f64> },
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct TermJson {
    weight: f64,
    body: BodyJson,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct BodyJson {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    dim: Option<u32>,
    kind: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    s: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    r: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    profile: Option<ProfileJson>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    terms: Option<Vec<TermJson>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    translation: Option<f64>,
}

impl BodyJson {
    fn build(self, parent_dim: Option<u32>) -> Result<RevolutionBody> {
        let dim = self
            .dim
            .or(parent_dim)
            .ok_or_else(|| Error::Parse("body is missing \"dim\"".into()))?;
        if let (Some(d), Some(p)) = (self.dim, parent_dim) {
            if d != p {
                return Err(Error::Parse(format!("summand dim {d} differs from {p}")));
            }
        }
        let need = |v: Option<f64>, field: &str| {
            v.ok_or_else(|| Error::Parse(format!("{} body needs \"{field}\"", self.kind)))
        };
        let body = match self.kind.as_str() {
            "cone" => RevolutionBody::cone(dim, need(self.s, "s")?)?,
            "disk" => RevolutionBody::disk(dim)?,
            "ball" => RevolutionBody::ball(dim, self.r.unwrap_or(1.0))?,
            "segment" => RevolutionBody::segment(dim)?,
            "cylinder" => RevolutionBody::cylinder(dim)?,
            "smooth" => {
                let profile = match self.profile {
                    Some(ProfileJson::Spheroid { a, b }) => SmoothProfile::spheroid(a, b)?,
                    Some(ProfileJson::Cheb { coeffs }) => SmoothProfile::cheb(coeffs)?,
                    None => return Err(Error::Parse("smooth body needs \"profile\"".into())),
                };
                let b = RevolutionBody::smooth(dim, profile)?;
                let report = b.validate_convexity();
                if !report.valid {
                    return Err(Error::Parse(format!(
                        "smooth profile fails the convexity check at {} grid points",
                        report.violations.len()
                    )));
                }
                b
            }
            "sum" => {
                let terms = self
                    .terms
                    .ok_or_else(|| Error::Parse("sum body needs \"terms\"".into()))?
                    .into_iter()
                    .map(|t| Ok((t.weight, t.body.build(Some(dim))?)))
                    .collect::<Result<Vec<_>>>()?;
                RevolutionBody::minkowski_sum(&terms)?
            }
            other => return Err(Error::Parse(format!("unknown body kind `{other}`"))),
        };
        Ok(body.translated(self.translation.unwrap_or(0.0)))
    }

    fn from_body(b: &RevolutionBody, top: bool) -> Self {
        let mut j = BodyJson {
            dim: top.then_some(b.dim),
            kind: kind_name(&b.kind).to_string(),
            s: None,
            r: None,
            profile: None,
            terms: None,
            translation: (b.translation != 0.0).then_some(b.translation),
        };
        match &b.kind {
            BodyKind::Cone { s } => j.s = Some(*s),
            BodyKind::Ball { r } => j.r = Some(*r),
            BodyKind::Smooth(SmoothProfile::Spheroid { axial, equatorial }) => {
                j.profile = Some(ProfileJson::Spheroid { a: *axial, b: *equatorial })
            }
            BodyKind::Smooth(SmoothProfile::Cheb { eta, .. }) => {
                j.profile = Some(ProfileJson::Cheb { coeffs: eta.coeffs().to_vec() })
            }
            BodyKind::Sum(terms) => {
                j.terms = Some(
                    terms
                        .iter()
                        .map(|(w, c)| TermJson { weight: *w, body: BodyJson::from_body(c, false) })
                        .collect(),
                )
            }
            _ => {}
        }
        j
    }
}

/// The shared test fixture: eleven bodies covering atoms, smooth densities,
/// Minkowski rewrites and both cone orientations.
pub fn body_zoo(dim: u32) -> Result<Vec<(String, RevolutionBody)>> {
    let half_ball_plus_disk = RevolutionBody::minkowski_sum(&[
        (1.0, RevolutionBody::ball(dim, 0.5)?),
        (1.0, RevolutionBody::disk(dim)?),
    ])?;
    Ok(vec![
        ("ball(1)".into(), RevolutionBody::ball(dim, 1.0)?),
        ("ball(0.7)".into(), RevolutionBody::ball(dim, 0.7)?),
        ("disk".into(), RevolutionBody::disk(dim)?),
        ("cylinder".into(), RevolutionBody::cylinder(dim)?),
        ("cone(0.3)".into(), RevolutionBody::cone(dim, 0.3)?),
        ("cone(-0.3)".into(), RevolutionBody::cone(dim, -0.3)?),
        ("cone(0.8)".into(), RevolutionBody::cone(dim, 0.8)?),
        ("cone(-0.8)".into(), RevolutionBody::cone(dim, -0.8)?),
        ("spheroid(0.5,1)".into(), RevolutionBody::spheroid(dim, 0.5, 1.0)?),
        ("spheroid(2,1)".into(), RevolutionBody::spheroid(dim, 2.0, 1.0)?),
        ("ball(0.5)+disk".into(), half_ball_plus_disk),
        ("2*cone(0.5)".into(), RevolutionBody::cone(dim, 0.5)?.scale(2.0)?),
    ])
}
