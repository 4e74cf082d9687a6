//! Kinematic, Kubota and Crofton formulas for zonal valuations.
//!
//! For bodies of revolution the average over rotations fixing `e_n` is
//! trivial, so the kinematic formula reduces to comparing `ψ_j(K + L)` with a
//! double integral of `q(s, t) = max(s, t) g(min(s, t))` against disk-mixed
//! area measures. Crofton sections are sampled by Monte Carlo.

use crate::bodies::{BodyKind, RevolutionBody, SmoothProfile};
use crate::error::{Error, Result};
use crate::kernel::ZonalKernel;
use crate::measures::{
    integrate_zonal, intrinsic_volume_top, mixed_disk_valuation, mixed_measure, mixed_volume_disk,
    vandermonde_coefficients, Mixer, ProfileMeasure,
};
use crate::special::{binom, kappa, omega};
use nalgebra::{DMatrix, DVector};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use rayon::prelude::*;
use std::sync::Arc;

/// Left and right side of an identity.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Sides {
    pub lhs: f64,
    pub rhs: f64,
}

impl Sides {
    pub fn abs_err(&self) -> f64 {
        (self.lhs - self.rhs).abs()
    }

    /// `|lhs - rhs| / (1 + |lhs|)`.
    pub fn rel_err(&self) -> f64 {
        self.abs_err() / (1.0 + self.lhs.abs())
    }
}

/// `q(s, t) = max(s, t) g(min(s, t))`, optionally plus `c s t`.
#[derive(Clone, Debug)]
pub struct KinematicKernel {
    g: ZonalKernel,
    gauge: f64,
}

impl KinematicKernel {
    pub fn new(g: ZonalKernel) -> Result<Self> {
        if !g.is_continuous() {
            return Err(Error::KernelRejected(format!("kinematic kernels must be continuous, got {}", g.name())));
        }
        Ok(Self { g, gauge: 0.0 })
    }

    /// Adds `c s t`, which leaves the right-hand side unchanged.
    pub fn with_gauge(mut self, c: f64) -> Self {
        self.gauge = c;
        self
    }

    pub fn kernel(&self) -> &ZonalKernel {
        &self.g
    }

    pub fn eval(&self, s: f64, t: f64) -> f64 {
        s.max(t) * self.g.eval(s.min(t)) + self.gauge * (s * t)
    }
}

fn check_kinematic(n: u32, j: u32, k: &RevolutionBody, l: &RevolutionBody) -> Result<()> {
    if j < 1 || j > n - 1 {
        return Err(Error::param(format!("kinematic degree must satisfy 1 <= j <= n-1, got n = {n}, j = {j}")));
    }
    if k.dim() != n || l.dim() != n {
        return Err(Error::param(format!("bodies must live in R^{n}")));
    }
    Ok(())
}

/// `∬ q dμ ⊗ dν` with the inner integral over `μ` split at the kink `s = t`.
pub fn double_integral(q: &KinematicKernel, mu: &ProfileMeasure, nu: &ProfileMeasure) -> Result<f64> {
    let inner_mu = mu.clone();
    let qq = q.clone();
    let inner = move |t: f64| {
        let q2 = qq.clone();
        let slice = ZonalKernel::new("q(., t)", move |s| q2.eval(s, t)).with_breakpoints([t]);
        integrate_zonal(&inner_mu, &slice).unwrap_or(f64::NAN)
    };
    let outer = ZonalKernel::new("∫q dμ", inner);
    let v = integrate_zonal(nu, &outer)?;
    if v.is_finite() {
        Ok(v)
    } else {
        Err(Error::NotConverged { estimate: v, error: f64::INFINITY })
    }
}

/// Right-hand side terms `binom(j, i) ∬ q dS_i(K, D) dS_{j-i}(L, D) / κ_{n-1}^2`, `i = 0..=j`.
pub fn kinematic_rhs_terms(n: u32, j: u32, q: &KinematicKernel, k: &RevolutionBody, l: &RevolutionBody) -> Result<Vec<f64>> {
    check_kinematic(n, j, k, l)?;
    let kap2 = kappa(n - 1).powi(2);
    (0..=j)
        .into_par_iter()
        .map(|i| {
            let mu = mixed_measure(k, i, Mixer::Disk)?;
            let nu = mixed_measure(l, j - i, Mixer::Disk)?;
            Ok(binom(j, i) * double_integral(q, &mu, &nu)? / kap2)
        })
        .collect()
}

/// Both sides of the additive kinematic formula for zonal `K`, `L`:
/// `ψ_{j,g}(K + L) / κ_{n-1} = Σ_i binom(j, i) ∬ q dS_i(K, D) dS_{j-i}(L, D) / κ_{n-1}^2`.
pub fn kinematic_check(n: u32, j: u32, g: &ZonalKernel, k: &RevolutionBody, l: &RevolutionBody) -> Result<Sides> {
    let q = KinematicKernel::new(g.clone())?;
    kinematic_check_with(n, j, &q, k, l)
}

/// [`kinematic_check`] with an explicit (possibly gauged) bivariate kernel.
pub fn kinematic_check_with(
    n: u32,
    j: u32,
    q: &KinematicKernel,
    k: &RevolutionBody,
    l: &RevolutionBody,
) -> Result<Sides> {
    check_kinematic(n, j, k, l)?;
    let sum = RevolutionBody::minkowski_sum(&[(1.0, k.clone()), (1.0, l.clone())])?;
    let lhs = mixed_disk_valuation(&sum, j, q.kernel())? / kappa(n - 1);
    let rhs = kinematic_rhs_terms(n, j, q, k, l)?.iter().sum();
    Ok(Sides { lhs, rhs })
}

/// Left-hand side degree by degree: coefficients of `λ ↦ ψ_{j,g}(λK + L)/κ_{n-1}`
/// from samples at `λ = 1..=j+1`.
pub fn kinematic_lhs_terms(n: u32, j: u32, g: &ZonalKernel, k: &RevolutionBody, l: &RevolutionBody) -> Result<Vec<f64>> {
    check_kinematic(n, j, k, l)?;
    let kap = kappa(n - 1);
    let xs: Vec<f64> = (1..=j + 1).map(f64::from).collect();
    let ys = xs
        .par_iter()
        .map(|&lam| {
            let b = RevolutionBody::minkowski_sum(&[(lam, k.clone()), (1.0, l.clone())])?;
            Ok(mixed_disk_valuation(&b, j, g)? / kap)
        })
        .collect::<Result<Vec<_>>>()?;
    vandermonde_coefficients(&xs, &ys)
}

/// Closed forms for `K = λ C_s`, `L = μ C_t`.
///
/// Same orientation, `|s| <= |t|`, `σ = sign s`:
/// `((λ+μ)^j - μ^j)(g(-σ) + g(s)/|s|) + μ^j (g(-σ) + g(t)/|t|)`.
/// Opposite orientation:
/// `((λ+μ)^j - μ^j) g(s)/|s| + μ^j g(σ_s) + ((λ+μ)^j - λ^j) g(t)/|t| + λ^j g(σ_t)`.
/// The right side sums `q` over the atoms of the cone measures.
pub fn kinematic_cone_pair(n: u32, j: u32, g: &ZonalKernel, (lambda, s): (f64, f64), (mu, t): (f64, f64)) -> Result<Sides> {
    if j < 1 || j > n - 1 {
        return Err(Error::param(format!("kinematic degree must satisfy 1 <= j <= n-1, got n = {n}, j = {j}")));
    }
    for x in [s, t] {
        if x == 0.0 || !(x.abs() <= 1.0) {
            return Err(Error::param(format!("cone parameter must lie in [-1, 1] without 0, got {x}")));
        }
    }
    if !(lambda > 0.0 && mu > 0.0) {
        return Err(Error::param("cone scale factors must be positive"));
    }
    let q = KinematicKernel::new(g.clone())?;
    let ji = j as i32;
    let sum = (lambda + mu).powi(ji);
    let lhs = if s.signum() == t.signum() {
        let ((a, _), (b, mb)) = if s.abs() <= t.abs() { ((s, lambda), (t, mu)) } else { ((t, mu), (s, lambda)) };
        let sigma = a.signum();
        (sum - mb.powi(ji)) * (g.eval(-sigma) + g.eval(a) / a.abs()) + mb.powi(ji) * (g.eval(-sigma) + g.eval(b) / b.abs())
    } else {
        (sum - mu.powi(ji)) * g.eval(s) / s.abs()
            + mu.powi(ji) * g.eval(s.signum())
            + (sum - lambda.powi(ji)) * g.eval(t) / t.abs()
            + lambda.powi(ji) * g.eval(t.signum())
    };
    // normalized atoms of S_i(C_x, D)/κ: {±1: 1} at degree 0, {-sign x: 1, x: 1/|x|} otherwise
    let atoms = |x: f64, deg: u32| -> Vec<(f64, f64)> {
        if deg == 0 {
            vec![(-1.0, 1.0), (1.0, 1.0)]
        } else {
            vec![(-x.signum(), 1.0), (x, 1.0 / x.abs())]
        }
    };
    let mut rhs = 0.0;
    for i in 0..=j {
        let scale = binom(j, i) * lambda.powi(i as i32) * mu.powi((j - i) as i32);
        let mut phi = 0.0;
        for (u, a) in atoms(s, i) {
            for (v, b) in atoms(t, j - i) {
                phi += a * b * q.eval(u, v);
            }
        }
        rhs += scale * phi;
    }
    Ok(Sides { lhs, rhs })
}

/// Both sides of the Kubota-type formula
/// `V_i(K | E) = n κ_{i-1} / (i κ_{n-1}) V(K[i], D[n-i])` for `e_n ∈ E`.
pub fn kubota_check(n: u32, i: u32, k: &RevolutionBody) -> Result<Sides> {
    if i < 1 || i > n - 1 || k.dim() != n {
        return Err(Error::param(format!("Kubota needs 1 <= i <= n-1 and a body in R^{n}, got i = {i}")));
    }
    let lhs = intrinsic_volume_top(k, i)?;
    let c = f64::from(n) * kappa(i - 1) / (f64::from(i) * kappa(n - 1));
    Ok(Sides { lhs, rhs: c * mixed_volume_disk(k, i)? })
}

/// Closed forms for a cone: `κ_{i-1} h / i` and `(n κ_{i-1}/(i κ_{n-1})) (κ_{n-1}/n) h`
/// with apex height `h = sqrt(1 - s^2)/|s|`.
pub fn kubota_cone_closed_form(n: u32, i: u32, s: f64) -> Sides {
    let h = (1.0 - s * s).sqrt() / s.abs();
    let lhs = kappa(i - 1) * h / f64::from(i);
    let c = f64::from(n) * kappa(i - 1) / (f64::from(i) * kappa(n - 1));
    Sides { lhs, rhs: c * (kappa(n - 1) / f64::from(n)) * h }
}

/// `a_{n,j} = π j κ_j κ_{n-j} / ((j+1)(n-j+1) κ_{j+1} κ_n)`.
pub fn a_nj(n: u32, j: u32) -> Result<f64> {
    if j < 1 || j > n - 1 {
        return Err(Error::param(format!("a_nj needs 1 <= j <= n-1, got n = {n}, j = {j}")));
    }
    let (nf, jf) = (f64::from(n), f64::from(j));
    Ok(std::f64::consts::PI * jf * kappa(j) * kappa(n - j)
        / ((jf + 1.0) * (nf - jf + 1.0) * kappa(j + 1) * kappa(n)))
}

/// `c_{n,j} = j κ_j κ_{n-j} / ((n-j+1) n κ_n)`.
pub fn c_nj(n: u32, j: u32) -> Result<f64> {
    if j < 1 || j > n - 1 {
        return Err(Error::param(format!("c_nj needs 1 <= j <= n-1, got n = {n}, j = {j}")));
    }
    let (nf, jf) = (f64::from(n), f64::from(j));
    Ok(jf * kappa(j) * kappa(n - j) / ((nf - jf + 1.0) * nf * kappa(n)))
}

/// `ω_{j+k-n+1} ω_{n+1} / (ω_{j+1} ω_{k+1})` for `n - j <= k <= n`.
pub fn agr_constant(n: u32, j: u32, k: u32) -> Result<f64> {
    if j > n || k > n || j + k < n {
        return Err(Error::param(format!("agr_constant needs n-j <= k <= n, got n = {n}, j = {j}, k = {k}")));
    }
    Ok(omega(j + k - n + 1) * omega(n + 1) / (omega(j + 1) * omega(k + 1)))
}

/// A sampled affine `j`-flat `x + span(U)` with `x ⟂ span(U)`.
#[derive(Debug, Clone, PartialEq)]
pub struct FlatSample {
    pub direction_basis: DMatrix<f64>,
    pub offset: DVector<f64>,
    pub weight: f64,
}

/// Origin-centred ellipsoid `{y : yᵀ A y <= 1}` with diagonal `A`.
#[derive(Debug, Clone)]
struct Ellipsoid {
    inv_sq: Vec<f64>,
}

impl Ellipsoid {
    fn of(body: &RevolutionBody) -> Result<Self> {
        let n = body.dim() as usize;
        if !body.is_origin_symmetric() {
            return Err(Error::UnsupportedBody("Crofton sections need an origin-symmetric body".into()));
        }
        let d = body.decompose();
        let bare = d.cones.is_empty() && d.disk == 0.0 && d.segment == 0.0;
        let (axial, equatorial) = match (d.smooth.as_slice(), d.ball) {
            ([], r) if bare && r > 0.0 => (r, r),
            ([(w, SmoothProfile::Spheroid { axial, equatorial })], r) if bare && r == 0.0 => {
                (w * axial, w * equatorial)
            }
            _ => {
                return Err(Error::UnsupportedBody(
                    "Crofton sections are available for balls and spheroids only".into(),
                ))
            }
        };
        let mut inv_sq = vec![1.0 / (equatorial * equatorial); n];
        inv_sq[n - 1] = 1.0 / (axial * axial);
        Ok(Self { inv_sq })
    }

    /// `h_{K ∩ E}(e_n)`, or `None` for an empty section.
    fn section_height(&self, u: &DMatrix<f64>, x: &DVector<f64>) -> Option<f64> {
        let n = x.len();
        let a = DMatrix::from_diagonal(&DVector::from_column_slice(&self.inv_sq));
        let m = u.transpose() * &a * u;
        let b = u.transpose() * (&a * x);
        let chol = m.clone().cholesky()?;
        let c = -chol.solve(&b);
        let xax = x.dot(&(&a * x));
        let r2 = 1.0 - xax + c.dot(&(&m * &c));
        if r2 < 0.0 {
            return None;
        }
        let w = DVector::from_iterator(u.ncols(), (0..u.ncols()).map(|k| u[(n - 1, k)]));
        let centre = x + u * &c;
        Some(centre[n - 1] + r2.sqrt() * w.dot(&chol.solve(&w)).max(0.0).sqrt())
    }
}

/// Monte Carlo estimate of `∫_{AGr_j} h_{K∩E}(e_n) dE` with its reference value.
#[derive(Debug, Clone, PartialEq)]
pub struct CroftonEstimate {
    pub estimate: f64,
    pub stderr: f64,
    /// `a_{n,j} V(K[n-j+1], D[j-1])`.
    pub rhs: f64,
    pub samples: usize,
    pub seed: u64,
}

impl CroftonEstimate {
    /// `|estimate - rhs|` in standard errors.
    pub fn z_score(&self) -> f64 {
        (self.estimate - self.rhs).abs() / self.stderr
    }
}

const BLOCK: usize = 8192;

/// Uniform random flat meeting the ball of radius `radius`, weighted by the
/// measure `κ_{n-j} radius^{n-j}` of all such flats.
pub fn sample_flat<R: Rng + ?Sized>(rng: &mut R, n: usize, j: usize, radius: f64) -> FlatSample {
    let g = DMatrix::from_fn(n, j, |_, _| rng.sample::<f64, _>(StandardNormal));
    let q = g.qr().q();
    let u = q.columns(0, j).into_owned();
    let offset = loop {
        let z = DVector::from_fn(n, |_, _| rng.sample::<f64, _>(StandardNormal));
        let perp = &z - &u * (u.transpose() * &z);
        let norm = perp.norm();
        if norm > 1e-12 {
            let k = (n - j) as f64;
            let rho = radius * rng.random::<f64>().powf(1.0 / k);
            break perp * (rho / norm);
        }
    };
    let weight = kappa((n - j) as u32) * radius.powi((n - j) as i32);
    FlatSample { direction_basis: u, offset, weight }
}

/// Crofton-type estimate with antithetic offsets; blocks of samples draw from
/// independent streams keyed by `(seed, block)`, so results do not depend on
/// the number of worker threads.
pub fn crofton_mc(n: u32, j: u32, body: &RevolutionBody, samples: usize, seed: u64) -> Result<CroftonEstimate> {
    if j < 1 || j > n - 1 || body.dim() != n {
        return Err(Error::param(format!("Crofton needs 1 <= j <= n-1 and a body in R^{n}, got j = {j}")));
    }
    if samples < 4 {
        return Err(Error::param("Crofton needs at least 4 samples"));
    }
    let shape = Arc::new(Ellipsoid::of(body)?);
    let radius = body.circumradius();
    let pairs = samples / 2;
    let blocks = pairs.div_ceil(BLOCK);
    let (nu, ju) = (n as usize, j as usize);
    let partial: Vec<(f64, f64, usize)> = (0..blocks)
        .into_par_iter()
        .map(|b| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            rng.set_stream(b as u64);
            let count = BLOCK.min(pairs - b * BLOCK);
            let (mut sum, mut sq) = (0.0, 0.0);
            for _ in 0..count {
                let flat = sample_flat(&mut rng, nu, ju, radius);
                let h = |x: &DVector<f64>| shape.section_height(&flat.direction_basis, x).unwrap_or(0.0);
                let neg = -&flat.offset;
                let v = 0.5 * flat.weight * (h(&flat.offset) + h(&neg));
                sum += v;
                sq += v * v;
            }
            (sum, sq, count)
        })
        .collect();
    let (sum, sq, count) = partial
        .iter()
        .fold((0.0, 0.0, 0usize), |acc, p| (acc.0 + p.0, acc.1 + p.1, acc.2 + p.2));
    let m = count as f64;
    let mean = sum / m;
    let var = ((sq / m) - mean * mean).max(0.0) * m / (m - 1.0);
    let rhs = a_nj(n, j)? * mixed_volume_disk(body, n - j + 1)?;
    Ok(CroftonEstimate { estimate: mean, stderr: (var / m).sqrt(), rhs, samples: 2 * pairs, seed })
}

/// Mass of `S_i(K, ·)` on the cap `{t > 1 - ε}`.
pub fn cap_mass(body: &RevolutionBody, i: u32, eps: f64) -> Result<f64> {
    let m = mixed_measure(body, i, Mixer::Ball)?;
    m.mass_on(1.0 - eps, 1.0)
}

/// Least-squares slope of `log cap_mass` against `log ε` over the given widths.
pub fn cap_mass_slope(body: &RevolutionBody, i: u32, eps: &[f64]) -> Result<f64> {
    let pts = eps
        .iter()
        .map(|&e| Ok((e.ln(), cap_mass(body, i, e)?.ln())))
        .collect::<Result<Vec<_>>>()?;
    let k = pts.len() as f64;
    let mx = pts.iter().map(|p| p.0).sum::<f64>() / k;
    let my = pts.iter().map(|p| p.1).sum::<f64>() / k;
    let sxy: f64 = pts.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    let sxx: f64 = pts.iter().map(|p| (p.0 - mx).powi(2)).sum();
    Ok(sxy / sxx)
}

/// Axis-aligned body check used by the Crofton sampler.
pub fn crofton_supported(body: &RevolutionBody) -> bool {
    matches!(body.kind(), BodyKind::Ball { .. } | BodyKind::Smooth(SmoothProfile::Spheroid { .. }) | BodyKind::Sum(_))
        && Ellipsoid::of(body).is_ok()
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;
    use std::f64::consts::PI;

    #[test]
    fn constants() {
        assert_relative_eq!(agr_constant(3, 2, 2).unwrap(), PI / 4.0, max_relative = 1e-14);
        assert_relative_eq!(agr_constant(5, 5, 5).unwrap(), 1.0, max_relative = 1e-14);
        let n = 4;
        for j in 1..n {
            let particular = omega(j) * omega(n + 1) / (omega(j + 1) * omega(n));
            assert_relative_eq!(agr_constant(n, j, n - 1).unwrap(), particular, max_relative = 1e-14);
        }
        assert!(agr_constant(4, 1, 2).is_err());
        assert_relative_eq!(a_nj(3, 2).unwrap(), 0.375, max_relative = 1e-14);
        assert_relative_eq!(a_nj(3, 1).unwrap(), 0.25, max_relative = 1e-14);
    }

    #[test]
    fn cone_pairs_closed_forms() {
        let g = ZonalKernel::exp();
        for n in 3..=5u32 {
            for j in 1..n {
                for s in [-0.8, -0.3, 0.3, 0.8] {
                    for t in [-0.8, -0.3, 0.3, 0.8] {
                        for (l, m) in [(1.0, 1.0), (2.0, 0.5)] {
                            let c = kinematic_cone_pair(n, j, &g, (l, s), (m, t)).unwrap();
                            assert!(c.abs_err() < 1e-9 * (1.0 + c.lhs.abs()), "n{n} j{j} s{s} t{t}: {c:?}");
                            let k = RevolutionBody::cone(n, s).unwrap().scale(l).unwrap();
                            let b = RevolutionBody::cone(n, t).unwrap().scale(m).unwrap();
                            let q = kinematic_check(n, j, &g, &k, &b).unwrap();
                            assert!((q.lhs - c.lhs).abs() < 1e-9 * (1.0 + c.lhs.abs()), "{q:?} {c:?}");
                            assert!((q.rhs - c.rhs).abs() < 1e-9 * (1.0 + c.rhs.abs()), "{q:?} {c:?}");
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn smooth_pair_and_gauge() {
        let n = 4;
        let k = RevolutionBody::spheroid(n, 0.5, 1.0).unwrap();
        let l = RevolutionBody::ball(n, 1.0).unwrap();
        let g = ZonalKernel::cos();
        let c = kinematic_check(n, 2, &g, &k, &l).unwrap();
        assert!(c.abs_err() < 1e-6 * c.lhs.abs(), "{c:?}");
        let q = KinematicKernel::new(g).unwrap();
        let base = kinematic_check_with(n, 2, &q, &k, &l).unwrap().rhs;
        let gauged = kinematic_check_with(n, 2, &q.clone().with_gauge(3.0), &k, &l).unwrap().rhs;
        assert!((base - gauged).abs() < 1e-8);
    }

    #[test]
    fn kubota_on_cones_and_balls() {
        for n in 3..=5 {
            for i in 1..n {
                for s in [-0.8, 0.3, 0.5] {
                    let cone = RevolutionBody::cone(n, s).unwrap();
                    let c = kubota_check(n, i, &cone).unwrap();
                    let closed = kubota_cone_closed_form(n, i, s);
                    assert_relative_eq!(closed.lhs, closed.rhs, max_relative = 1e-14);
                    assert!(c.abs_err() < 1e-12 * (1.0 + c.lhs.abs()), "{c:?}");
                    assert_relative_eq!(c.lhs, closed.lhs, max_relative = 1e-12);
                }
                let ball = RevolutionBody::ball(n, 1.0).unwrap();
                let c = kubota_check(n, i, &ball).unwrap();
                assert!(c.rel_err() < 1e-7, "n{n} i{i} {c:?}");
            }
        }
    }

    #[test]
    fn crofton_small_run_is_deterministic() {
        let b = RevolutionBody::ball(3, 1.0).unwrap();
        let a = crofton_mc(3, 2, &b, 20_000, 7).unwrap();
        let c = crofton_mc(3, 2, &b, 20_000, 7).unwrap();
        assert_eq!(a, c);
        assert_relative_eq!(a.rhs, PI * PI / 8.0, max_relative = 1e-10);
        assert!(a.z_score() < 4.0, "{a:?}");
        // line sections are chords, so the j = 1 estimate does not vanish
        let line = crofton_mc(3, 1, &b, 200_000, 7).unwrap();
        assert_relative_eq!(line.rhs, PI / 3.0, max_relative = 1e-10);
        assert!(line.z_score() < 4.0, "{line:?}");
        let sph = crofton_mc(4, 2, &RevolutionBody::spheroid(4, 2.0, 1.0).unwrap(), 200_000, 3).unwrap();
        assert!(sph.z_score() < 4.0, "{sph:?}");
        assert!(crofton_mc(3, 2, &RevolutionBody::cone(3, 0.5).unwrap(), 100, 1).is_err());
    }

    #[test]
    fn section_of_spheroid_along_axis() {
        let e = Ellipsoid::of(&RevolutionBody::spheroid(3, 2.0, 1.0).unwrap()).unwrap();
        // the vertical plane through the axis cuts the full ellipse, top at height 2
        let u = DMatrix::from_column_slice(3, 2, &[1.0, 0.0, 0.0, 0.0, 0.0, 1.0]);
        let x = DVector::from_column_slice(&[0.0, 0.0, 0.0]);
        assert_relative_eq!(e.section_height(&u, &x).unwrap(), 2.0, max_relative = 1e-14);
        let x = DVector::from_column_slice(&[0.0, 0.5, 0.0]);
        assert_relative_eq!(e.section_height(&u, &x).unwrap(), 2.0 * 0.75f64.sqrt(), max_relative = 1e-14);
    }
}
