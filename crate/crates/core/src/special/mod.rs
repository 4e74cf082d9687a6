//! Exact constants and weighted one-dimensional quadrature.
//!
//! Every integral in the crate is reduced to a single variable on an interval
//! with known endpoint behaviour, so the numerics live here: unit-ball and
//! sphere constants, Gauss–Jacobi rules, an adaptive weighted integrator, and
//! Chebyshev / barycentric interpolants for tabulated kernels.

mod cheb;
mod extrapolate;
mod interp;
mod quadrature;

pub use cheb::ChebInterpolant;
pub use extrapolate::{aitken, richardson};
pub use interp::BarycentricTable;
pub(crate) use quadrature::quad_best;
pub use quadrature::{gauss_jacobi, quad_weighted, GaussRule, QuadMode, QuadratureSpec};

use crate::error::{Error, Result};
use statrs::function::gamma::{gamma, ln_gamma};
use std::f64::consts::PI;

/// Volume of the unit ball in `R^m`, with `kappa(0) = 1`.
pub fn kappa(m: u32) -> f64 {
    // two-step recurrence keeps integer dimensions exact to rounding
    let (mut k, start) = if m % 2 == 0 { (1.0, 0) } else { (2.0, 1) };
    let mut d = start;
    while d < m {
        d += 2;
        k *= 2.0 * PI / f64::from(d);
    }
    k
}

/// `kappa` extended to real dimension: `pi^(x/2) / Gamma(x/2 + 1)`.
pub fn kappa_real(x: f64) -> f64 {
    (0.5 * x * PI.ln() - ln_gamma(0.5 * x + 1.0)).exp()
}

/// Surface area of the unit sphere in `R^m`, i.e. `m * kappa(m)`.
pub fn omega(m: u32) -> f64 {
    f64::from(m) * kappa(m)
}

/// `2 pi^(alpha/2) / Gamma(alpha/2)` for real `alpha > 0`.
pub fn omega_alpha(alpha: f64) -> Result<f64> {
    if !(alpha > 0.0) || !alpha.is_finite() {
        return Err(Error::param(format!("omega_alpha needs alpha > 0, got {alpha}")));
    }
    if alpha.fract() == 0.0 && alpha <= 64.0 {
        return Ok(omega(alpha as u32));
    }
    Ok(2.0 * (0.5 * alpha * PI.ln() - ln_gamma(0.5 * alpha)).exp())
}

/// Classical beta function `Gamma(x) Gamma(y) / Gamma(x + y)`.
pub fn beta_fn(x: f64, y: f64) -> Result<f64> {
    if !(x > 0.0 && y > 0.0) {
        return Err(Error::param(format!("beta_fn needs positive arguments, got ({x}, {y})")));
    }
    if x + y < 100.0 {
        Ok(gamma(x) * gamma(y) / gamma(x + y))
    } else {
        Ok((ln_gamma(x) + ln_gamma(y) - ln_gamma(x + y)).exp())
    }
}

/// Binomial coefficient as a float.
pub fn binom(n: u32, k: u32) -> f64 {
    if k > n {
        return 0.0;
    }
    let k = k.min(n - k);
    (0..k).fold(1.0, |acc, j| acc * f64::from(n - j) / f64::from(j + 1))
}
