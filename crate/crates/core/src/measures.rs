//! Zonal measures on the sphere reduced to the coordinate `t = <e_n, u>`.
//!
//! A [`ProfileMeasure`] is a sum of weighted density pieces plus point masses.
//! Mixed area measures `S(K[i], P[m-1-i], ·)` with `P` the unit ball or the
//! unit disk are built in closed form: bodies with a smooth part through the
//! curvature operators, bodies made of cones through a chain of frusta glued
//! by the valuation property.

use crate::bodies::{Decomposition, RevolutionBody};
use crate::error::{Error, Result};
use crate::kernel::{Endpoint, Profile, ZonalKernel};
use crate::special::{binom, kappa, omega, quad_weighted, QuadratureSpec};
use nalgebra::{DMatrix, DVector};
use std::fmt::Write as _;
use std::sync::Arc;

const MEASURE_TOL: f64 = 1e-13;

/// `(t - lo)^left (hi - t)^right f(t)` on `[lo, hi]`.
#[derive(Clone)]
pub struct DensityPiece {
    pub lo: f64,
    pub hi: f64,
    pub left_exp: f64,
    pub right_exp: f64,
    pub f: Profile,
}

impl std::fmt::Debug for DensityPiece {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("DensityPiece")
            .field("lo", &self.lo)
            .field("hi", &self.hi)
            .field("left_exp", &self.left_exp)
            .field("right_exp", &self.right_exp)
            .finish()
    }
}

impl DensityPiece {
    /// `(1 - t^2)^e g(t)` on `[lo, hi]`, with the exponent declared at the
    /// ends that touch `±1`.
    pub fn sphere_weight(lo: f64, hi: f64, e: f64, g: impl Fn(f64) -> f64 + Send + Sync + 'static) -> Self {
        let at_lo = lo == -1.0;
        let at_hi = hi == 1.0;
        let f = move |t: f64| {
            let mut v = g(t);
            if e != 0.0 {
                if !at_lo {
                    v *= (1.0 + t).powf(e);
                }
                if !at_hi {
                    v *= (1.0 - t).powf(e);
                }
            }
            v
        };
        Self {
            lo,
            hi,
            left_exp: if at_lo { e } else { 0.0 },
            right_exp: if at_hi { e } else { 0.0 },
            f: Arc::new(f),
        }
    }

    pub fn value(&self, t: f64) -> f64 {
        if t < self.lo || t > self.hi {
            return 0.0;
        }
        let mut v = (self.f)(t);
        if self.left_exp != 0.0 {
            v *= (t - self.lo).powf(self.left_exp);
        }
        if self.right_exp != 0.0 {
            v *= (self.hi - t).powf(self.right_exp);
        }
        v
    }

    fn scaled(&self, c: f64) -> Self {
        let f = Arc::clone(&self.f);
        Self { f: Arc::new(move |t| c * f(t)), ..self.clone() }
    }
}

/// A zonal measure: density pieces plus atoms `(t, mass)`.
#[derive(Debug, Clone)]
pub struct ProfileMeasure {
    dim: u32,
    pieces: Vec<DensityPiece>,
    atoms: Vec<(f64, f64)>,
}

impl ProfileMeasure {
    pub fn zero(dim: u32) -> Self {
        Self { dim, pieces: Vec::new(), atoms: Vec::new() }
    }

    pub fn dim(&self) -> u32 {
        self.dim
    }

    pub fn pieces(&self) -> &[DensityPiece] {
        &self.pieces
    }

    /// Atoms sorted by location, coincident locations merged.
    pub fn atoms(&self) -> &[(f64, f64)] {
        &self.atoms
    }

    pub fn push_piece(&mut self, piece: DensityPiece) {
        self.pieces.push(piece);
    }

    pub fn push_atom(&mut self, t: f64, mass: f64) {
        if mass == 0.0 {
            return;
        }
        match self.atoms.binary_search_by(|a| a.0.total_cmp(&t)) {
            Ok(k) => self.atoms[k].1 += mass,
            Err(k) => self.atoms.insert(k, (t, mass)),
        }
    }

    /// `self += c * other`.
    pub fn add_scaled(&mut self, c: f64, other: &ProfileMeasure) {
        if c == 0.0 {
            return;
        }
        self.pieces.extend(other.pieces.iter().map(|p| p.scaled(c)));
        for &(t, m) in &other.atoms {
            self.push_atom(t, c * m);
        }
    }

    /// Drops atoms whose mass cancelled to rounding level.
    fn tidy(mut self, scale: f64) -> Self {
        self.atoms.retain(|a| a.1.abs() > 1e-14 * scale.max(1.0));
        self
    }

    pub fn density(&self, t: f64) -> f64 {
        self.pieces.iter().map(|p| p.value(t)).sum()
    }

    pub fn total_mass(&self) -> Result<f64> {
        integrate_zonal(self, &ZonalKernel::constant(1.0))
    }

    /// Mass of `[lo, hi]` (atoms included).
    pub fn mass_on(&self, lo: f64, hi: f64) -> Result<f64> {
        let mut total: f64 = self.atoms.iter().filter(|a| a.0 >= lo && a.0 <= hi).map(|a| a.1).sum();
        for p in &self.pieces {
            let (a, b) = (p.lo.max(lo), p.hi.min(hi));
            if b <= a {
                continue;
            }
            let spec = QuadratureSpec::adaptive(MEASURE_TOL).exponents(
                if a == p.lo { p.left_exp } else { 0.0 },
                if b == p.hi { p.right_exp } else { 0.0 },
            );
            let (plo, phi, l, r) = (p.lo, p.hi, p.left_exp, p.right_exp);
            let g = |t: f64| {
                let mut v = (p.f)(t);
                if a != plo && l != 0.0 {
                    v *= (t - plo).powf(l);
                }
                if b != phi && r != 0.0 {
                    v *= (phi - t).powf(r);
                }
                v
            };
            total += best(quad_weighted(g, a, b, &spec))?;
        }
        Ok(total)
    }

    /// CSV export: `t,density` rows at `grid` interior points preceded by an
    /// `# atoms:` comment line.
    pub fn to_csv(&self, grid: usize) -> String {
        let mut out = String::from("# atoms: ");
        let atoms: Vec<String> = self.atoms.iter().map(|(t, m)| format!("({t:.16e},{m:.16e})")).collect();
        out.push_str(&atoms.join(";"));
        out.push_str("\nt,density\n");
        for k in 0..grid {
            let t = -1.0 + (2.0 * k as f64 + 1.0) / grid as f64;
            let _ = writeln!(out, "{t:.16e},{:.16e}", self.density(t));
        }
        out
    }
}

fn best(r: Result<f64>) -> Result<f64> {
    match r {
        Err(Error::NotConverged { estimate, .. }) if estimate.is_finite() => Ok(estimate),
        other => other,
    }
}

/// Second body of the mixed measure.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Mixer {
    Ball,
    Disk,
}

/// `∫ kernel dμ`.
pub fn integrate_zonal(measure: &ProfileMeasure, kernel: &ZonalKernel) -> Result<f64> {
    let mut total = 0.0;
    for &(t, m) in &measure.atoms {
        if t.abs() == 1.0 && !kernel.is_continuous() {
            return Err(Error::param(format!(
                "kernel `{}` is singular at the atom t = {t}",
                kernel.name()
            )));
        }
        total += m * kernel.eval(t);
    }
    for p in &measure.pieces {
        total += integrate_piece(p, kernel, p.lo, p.hi)?;
    }
    Ok(total)
}

/// `∫ kernel dμ` over `[lo, hi] ∩ piece`, declaring kernel powers at `±1`.
fn integrate_piece(p: &DensityPiece, kernel: &ZonalKernel, lo: f64, hi: f64) -> Result<f64> {
    let (a, b) = (p.lo.max(lo), p.hi.min(hi));
    if b <= a {
        return Ok(0.0);
    }
    let ke = match kernel.endpoint() {
        Endpoint::Power(e) => e,
        _ => 0.0,
    };
    let touch_lo = a == p.lo;
    let touch_hi = b == p.hi;
    let mut left = if touch_lo { p.left_exp } else { 0.0 };
    let mut right = if touch_hi { p.right_exp } else { 0.0 };
    let kernel_left = a == -1.0 && ke != 0.0;
    let kernel_right = b == 1.0 && ke != 0.0;
    if kernel_left {
        left += ke;
    }
    if kernel_right {
        right += ke;
    }
    if !(left > -1.0 && right > -1.0) {
        return Err(Error::KernelRejected(format!(
            "kernel `{}` is not integrable against the measure near the poles",
            kernel.name()
        )));
    }
    let (plo, phi, pl, pr) = (p.lo, p.hi, p.left_exp, p.right_exp);
    let g = |t: f64| {
        let mut v = (p.f)(t);
        if !touch_lo && pl != 0.0 {
            v *= (t - plo).powf(pl);
        }
        if !touch_hi && pr != 0.0 {
            v *= (phi - t).powf(pr);
        }
        let k = if ke != 0.0 {
            let mut k = kernel.regular_part(t);
            if !kernel_left {
                k *= (1.0 + t).powf(ke);
            }
            if !kernel_right {
                k *= (1.0 - t).powf(ke);
            }
            k
        } else {
            kernel.eval(t)
        };
        v * k
    };
    let splits: Vec<f64> = kernel.breakpoints().iter().copied().filter(|&s| s > a && s < b).collect();
    let spec = QuadratureSpec::adaptive(MEASURE_TOL).exponents(left, right).splits(splits);
    best(quad_weighted(g, a, b, &spec))
}

/// `∫_{|t| <= 1 - eps} kernel dμ`, the truncated integral of a principal value.
pub fn integrate_truncated(measure: &ProfileMeasure, kernel: &ZonalKernel, eps: f64) -> Result<f64> {
    let edge = 1.0 - eps;
    let mut total: f64 = measure
        .atoms
        .iter()
        .filter(|a| a.0.abs() <= edge)
        .map(|a| a.1 * kernel.eval(a.0))
        .sum();
    for p in &measure.pieces {
        let (a, b) = (p.lo.max(-edge), p.hi.min(edge));
        if b <= a {
            continue;
        }
        let (plo, phi, pl, pr) = (p.lo, p.hi, p.left_exp, p.right_exp);
        let touch_lo = a == plo;
        let touch_hi = b == phi;
        let g = |t: f64| {
            let mut v = (p.f)(t) * kernel.eval(t);
            if !touch_lo && pl != 0.0 {
                v *= (t - plo).powf(pl);
            }
            if !touch_hi && pr != 0.0 {
                v *= (phi - t).powf(pr);
            }
            v
        };
        let splits: Vec<f64> = kernel.breakpoints().iter().copied().filter(|&s| s > a && s < b).collect();
        let spec = QuadratureSpec::adaptive(MEASURE_TOL)
            .exponents(if touch_lo { pl } else { 0.0 }, if touch_hi { pr } else { 0.0 })
            .splits(splits);
        total += best(quad_weighted(g, a, b, &spec))?;
    }
    Ok(total)
}

fn check_degree(m: u32, i: u32) -> Result<()> {
    if i + 1 > m {
        return Err(Error::param(format!("degree {i} out of range for dimension {m}")));
    }
    Ok(())
}

/// `S(K[i], P[m-1-i], ·)` in the ambient dimension of `body`.
pub fn mixed_measure(body: &RevolutionBody, i: u32, mixer: Mixer) -> Result<ProfileMeasure> {
    let m = body.dim();
    check_degree(m, i)?;
    let d = body.decompose();
    if d.is_conic() {
        if d.has_smooth_part() {
            return Err(Error::UnsupportedBody(
                "Minkowski sums mixing cones with smooth bodies have no closed form here".into(),
            ));
        }
        return conic_mixed_measure(&d, m, i, mixer);
    }
    Ok(smooth_class_measure(&d, m, i, mixer))
}

/// `S_{m-1}(K, ·)`, the surface area measure.
pub fn surface_measure(body: &RevolutionBody) -> Result<ProfileMeasure> {
    mixed_measure(body, body.dim() - 1, Mixer::Disk)
}

/// Bodies `η_S + δ D + σ S` with a strictly convex smooth part `η_S` (or none).
fn smooth_class_measure(d: &Decomposition, m: u32, i: u32, mixer: Mixer) -> ProfileMeasure {
    let mut out = ProfileMeasure::zero(m);
    let kap = kappa(m - 1);
    let jac = omega(m - 1);
    let mf = f64::from(m - 1);
    let (delta, sigma) = (d.disk, d.segment);
    let shared = Arc::new(d.clone());

    // A = a + δ w with w = (1 - t^2)^(-1/2); every power of w lowers the
    // sphere exponent (m - 3)/2 by one half.
    let mut push = |coef: f64, a_pow: u32, with_c: bool, q: u32| {
        if coef == 0.0 {
            return;
        }
        let dd = Arc::clone(&shared);
        let e = (f64::from(m) - 3.0 - f64::from(q)) / 2.0;
        let g = move |t: f64| {
            let (a, c) = dd.smooth_a1_a2(t);
            let mut v = coef * a.powi(a_pow as i32);
            if with_c {
                v *= c;
            }
            v
        };
        out.push_piece(DensityPiece::sphere_weight(-1.0, 1.0, e, g));
    };

    if d.has_smooth_part() && i >= 1 {
        let lead = f64::from(i) / mf * jac;
        let extra_w = match mixer {
            Mixer::Ball => 0,
            Mixer::Disk => m - 1 - i,
        };
        for j in 0..i {
            push(lead * binom(i - 1, j) * delta.powi(j as i32), i - 1 - j, true, j + extra_w);
        }
    }
    if mixer == Mixer::Ball && i < m - 1 {
        let lead = f64::from(m - 1 - i) / mf * jac;
        for j in 0..=i {
            if !d.has_smooth_part() && j < i {
                continue;
            }
            push(lead * binom(i, j) * delta.powi(j as i32), i - j, false, j);
        }
    }
    let cap = match mixer {
        Mixer::Disk => kap * delta.powi(i as i32),
        Mixer::Ball if i == m - 1 => kap * delta.powi(i as i32),
        Mixer::Ball => 0.0,
    };
    out.push_atom(-1.0, cap);
    out.push_atom(1.0, cap);
    if sigma != 0.0 && i >= 1 {
        let r0 = d.smooth_eta(0.0) + delta;
        out.push_atom(0.0, sigma * f64::from(i) * kap * r0.powi(i as i32 - 1));
    }
    out
}

/// Measure of `r C_s` for one cone, `0^0 = 1`.
fn cone_measure(m: u32, i: u32, r: f64, s: f64, mixer: Mixer) -> ProfileMeasure {
    let kap = kappa(m - 1);
    let scale = r.powi(i as i32);
    if i == 0 {
        let empty = Decomposition::default();
        return smooth_class_measure(&empty, m, 0, mixer);
    }
    let mut out = ProfileMeasure::zero(m);
    if mixer == Mixer::Disk || i == m - 1 {
        out.push_atom(-s.signum(), scale * kap);
        out.push_atom(s, scale * kap / s.abs());
        return out;
    }
    let k = f64::from(m - i - 1);
    out.push_atom(s, scale * kap * (1.0 - s * s).powf(k / 2.0) / s.abs());
    let e = (k - 2.0) / 2.0;
    let coef = scale * kap * k;
    let (lo, hi) = if s > 0.0 { (-1.0, s) } else { (s, 1.0) };
    out.push_piece(DensityPiece::sphere_weight(lo, hi, e, move |_| coef));
    out
}

/// Signed primitive of the frustum chain.
#[derive(Debug, Clone, Copy, PartialEq)]
enum Primitive {
    Cone { r: f64, s: f64 },
    /// Disk of radius `r` plus the segment of length `h`.
    Cylinder { r: f64, h: f64 },
}

/// Frusta between consecutive slopes, glued along disks; the final chain is
/// a signed sum of scaled cones and cylinders.
fn frustum_chain(d: &Decomposition) -> (Vec<(f64, Primitive)>, Frame) {
    let mut up: Vec<(f64, f64)> = d.cones.iter().copied().filter(|c| c.1 > 0.0).collect();
    let mut down: Vec<(f64, f64)> = d.cones.iter().copied().filter(|c| c.1 < 0.0).collect();
    up.sort_by(|a, b| a.1.total_cmp(&b.1));
    down.sort_by(|a, b| b.1.total_cmp(&a.1));
    let radius = d.cones.iter().map(|c| c.0).sum::<f64>() + d.disk;
    let mut prims = vec![(1.0, Primitive::Cylinder { r: radius, h: d.segment })];
    let mut frame = Frame { radius, band: d.segment, frusta: Vec::new(), top: radius, bottom: radius };
    for (chain, end) in [(&up, &mut frame.top), (&down, &mut frame.bottom)] {
        let mut rb = radius;
        for &(lambda, s) in chain.iter() {
            let rt = (rb - lambda).max(0.0);
            prims.push((1.0, Primitive::Cone { r: rb, s }));
            prims.push((-1.0, Primitive::Cone { r: rt, s }));
            prims.push((1.0, Primitive::Cylinder { r: rt, h: 0.0 }));
            prims.push((-1.0, Primitive::Cylinder { r: rb, h: 0.0 }));
            frame.frusta.push((rb, rt, s));
            rb = rt;
        }
        *end = rb;
    }
    (prims, frame)
}

/// Geometry of a conic body: band, frusta `(r_bottom, r_top, s)`, caps.
#[derive(Debug, Clone, PartialEq)]
struct Frame {
    radius: f64,
    band: f64,
    frusta: Vec<(f64, f64, f64)>,
    top: f64,
    bottom: f64,
}

fn conic_mixed_measure(d: &Decomposition, m: u32, i: u32, mixer: Mixer) -> Result<ProfileMeasure> {
    let (prims, frame) = frustum_chain(d);
    let mut out = ProfileMeasure::zero(m);
    for (c, p) in prims {
        let piece = match p {
            Primitive::Cone { r, s } => cone_measure(m, i, r, s, mixer),
            Primitive::Cylinder { r, h } => {
                let cyl = Decomposition { disk: r, segment: h, ..Decomposition::default() };
                smooth_class_measure(&cyl, m, i, mixer)
            }
        };
        out.add_scaled(c, &piece);
    }
    Ok(out.tidy(frame.radius.max(1.0).powi(i as i32) * kappa(m - 1)))
}

/// Surface area measure of a cone-class body read off its boundary:
/// frustum mantles, flat caps and the cylindrical band.
pub fn direct_surface_measure(body: &RevolutionBody) -> Result<ProfileMeasure> {
    let d = body.decompose();
    if d.has_smooth_part() {
        return Err(Error::UnsupportedBody("boundary read-off needs a body without smooth part".into()));
    }
    let m = body.dim();
    let (_, frame) = frustum_chain(&d);
    let kap = kappa(m - 1);
    let p = (m - 1) as i32;
    let mut out = ProfileMeasure::zero(m);
    for &(rb, rt, s) in &frame.frusta {
        out.push_atom(s, kap * (rb.powi(p) - rt.powi(p)) / s.abs());
    }
    out.push_atom(1.0, kap * frame.top.powi(p));
    out.push_atom(-1.0, kap * frame.bottom.powi(p));
    if frame.band > 0.0 {
        out.push_atom(0.0, omega(m - 1) * frame.radius.powi(p - 1) * frame.band);
    }
    Ok(out)
}

/// `ψ_{i,g}(K) = ∫ g dS(K[i], D[n-1-i], ·)`.
pub fn mixed_disk_valuation(body: &RevolutionBody, i: u32, g: &ZonalKernel) -> Result<f64> {
    check_degree(body.dim(), i)?;
    integrate_zonal(&mixed_measure(body, i, Mixer::Disk)?, g)
}

/// `φ_{i,f}(K) = ∫ f dS_i(K, ·)`.
pub fn area_measure_valuation(body: &RevolutionBody, i: u32, f: &ZonalKernel) -> Result<f64> {
    check_degree(body.dim(), i)?;
    integrate_zonal(&mixed_measure(body, i, Mixer::Ball)?, f)
}

/// The support profile as a kernel, with the cone kinks declared.
pub fn support_kernel(body: &RevolutionBody) -> ZonalKernel {
    let b = body.clone();
    let kinks: Vec<f64> = body.decompose().cones.iter().map(|c| c.1).chain([0.0]).collect();
    ZonalKernel::new("support", move |t| b.support(t)).with_breakpoints(kinks)
}

/// Volume `(1/m) ∫ eta dS_{m-1}`.
pub fn volume(body: &RevolutionBody) -> Result<f64> {
    let m = f64::from(body.dim());
    Ok(integrate_zonal(&surface_measure(body)?, &support_kernel(body))? / m)
}

/// `V(K[i], D[n-i])` via `(1/n) ∫ h_K dS(K[i-1], D[n-i], ·)`.
pub fn mixed_volume_disk(body: &RevolutionBody, i: u32) -> Result<f64> {
    let n = body.dim();
    if i > n {
        return Err(Error::param(format!("mixed volume degree {i} exceeds dimension {n}")));
    }
    if i == 0 {
        return Ok(0.0);
    }
    let h = support_kernel(body);
    Ok(mixed_disk_valuation(body, i - 1, &h)? / f64::from(n))
}

/// `V_m` of the body read in `R^m` with the same profile; `m = 1` gives the
/// length of its axis section.
pub fn intrinsic_volume_top(body: &RevolutionBody, m: u32) -> Result<f64> {
    match m {
        0 => Err(Error::param("intrinsic_volume_top needs m >= 1")),
        1 => Ok(body.support(1.0) + body.support(-1.0)),
        _ => volume(&body.with_dim(m)),
    }
}

/// Polynomial coefficients through the points `(x_k, y_k)` by a Vandermonde solve.
pub fn vandermonde_coefficients(xs: &[f64], ys: &[f64]) -> Result<Vec<f64>> {
    let n = xs.len();
    let mat = DMatrix::from_fn(n, n, |r, c| xs[r].powi(c as i32));
    let rhs = DVector::from_column_slice(ys);
    let sol = mat
        .lu()
        .solve(&rhs)
        .ok_or_else(|| Error::param("singular Vandermonde system"))?;
    Ok(sol.iter().copied().collect())
}

/// `ψ_{i,g}(K)` from samples of `λ -> ∫ g dS_{n-1}(λK + D)` at `λ = 1..n`.
pub fn mixed_disk_valuation_sampled(body: &RevolutionBody, i: u32, g: &ZonalKernel) -> Result<f64> {
    let n = body.dim();
    check_degree(n, i)?;
    let disk = RevolutionBody::disk(n)?;
    let xs: Vec<f64> = (1..=n).map(f64::from).collect();
    let ys = xs
        .iter()
        .map(|&l| {
            let b = RevolutionBody::minkowski_sum(&[(l, body.clone()), (1.0, disk.clone())])?;
            integrate_zonal(&surface_measure(&b)?, g)
        })
        .collect::<Result<Vec<_>>>()?;
    let coeffs = vandermonde_coefficients(&xs, &ys)?;
    Ok(coeffs[i as usize] / binom(n - 1, i))
}

/// `V(K[i], D[n-i])` from samples of `λ -> vol(λK + D)` at `λ = 0..n`.
pub fn mixed_volume_disk_sampled(body: &RevolutionBody, i: u32) -> Result<f64> {
    let n = body.dim();
    if i > n {
        return Err(Error::param(format!("mixed volume degree {i} exceeds dimension {n}")));
    }
    let disk = RevolutionBody::disk(n)?;
    let smooth = body.decompose().has_smooth_part();
    let xs: Vec<f64> = (0..=n).map(f64::from).collect();
    let ys = xs
        .iter()
        .map(|&l| {
            let b = RevolutionBody::minkowski_sum(&[(l, body.clone()), (1.0, disk.clone())])?;
            if smooth {
                volume(&b)
            } else {
                let s = direct_surface_measure(&b)?;
                Ok(integrate_zonal(&s, &support_kernel(&b))? / f64::from(n))
            }
        })
        .collect::<Result<Vec<_>>>()?;
    let coeffs = vandermonde_coefficients(&xs, &ys)?;
    Ok(coeffs[i as usize] / binom(n, i))
}
