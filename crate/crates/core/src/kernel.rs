//! Zonal kernels: profile functions on `[-1, 1]` with endpoint metadata.

use crate::error::{Error, Result};
use crate::special::{BarycentricTable, ChebInterpolant};
use std::fmt;
use std::path::Path;
use std::sync::Arc;

pub type Profile = Arc<dyn Fn(f64) -> f64 + Send + Sync>;

/// Endpoint behaviour of a kernel near `t = ±1`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Endpoint {
    /// Continuous on the closed interval.
    Regular,
    /// The value is `(1 - t^2)^e` times a regular function.
    Power(f64),
    /// Defined on the open interval only; behaviour known only numerically.
    Unknown,
}

/// A zonal function `f(<e_n, u>)` on the sphere, stored as its profile.
#[derive(Clone)]
pub struct ZonalKernel {
    name: String,
    regular: Profile,
    derivative: Option<Profile>,
    endpoint: Endpoint,
    singular_alpha: Option<f64>,
    breakpoints: Vec<f64>,
}

impl fmt::Debug for ZonalKernel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("ZonalKernel")
            .field("name", &self.name)
            .field("endpoint", &self.endpoint)
            .field("singular_alpha", &self.singular_alpha)
            .field("has_derivative", &self.derivative.is_some())
            .finish()
    }
}

impl ZonalKernel {
    /// A continuous kernel from a closure.
    pub fn new(name: impl Into<String>, f: impl Fn(f64) -> f64 + Send + Sync + 'static) -> Self {
        Self {
            name: name.into(),
            regular: Arc::new(f),
            derivative: None,
            endpoint: Endpoint::Regular,
            singular_alpha: None,
            breakpoints: Vec::new(),
        }
    }

    /// Interior points where the kernel may have a kink.
    pub fn with_breakpoints(mut self, points: impl IntoIterator<Item = f64>) -> Self {
        self.breakpoints.extend(points.into_iter().filter(|t| t.abs() < 1.0));
        self.breakpoints.sort_by(f64::total_cmp);
        self.breakpoints.dedup();
        self
    }

    pub fn breakpoints(&self) -> &[f64] {
        &self.breakpoints
    }

    pub fn with_derivative(mut self, d: impl Fn(f64) -> f64 + Send + Sync + 'static) -> Self {
        self.derivative = Some(Arc::new(d));
        self
    }

    /// `(1 - t^2)^exponent * regular(t)`.
    pub fn with_power(mut self, exponent: f64) -> Self {
        self.endpoint = if exponent == 0.0 { Endpoint::Regular } else { Endpoint::Power(exponent) };
        if exponent < 0.0 {
            self.derivative = None;
        }
        self
    }

    /// Marks the kernel as a singular candidate of class `D^alpha`.
    pub fn singular(mut self, alpha: f64) -> Self {
        self.singular_alpha = Some(alpha);
        self
    }

    pub(crate) fn with_endpoint(mut self, endpoint: Endpoint) -> Self {
        self.endpoint = endpoint;
        self
    }

    pub fn constant(c: f64) -> Self {
        Self::new(format!("const:{c}"), move |_| c).with_derivative(|_| 0.0)
    }

    /// Polynomial with coefficients in increasing degree.
    pub fn poly(coeffs: Vec<f64>) -> Self {
        let name = format!(
            "poly:{}",
            coeffs.iter().map(|c| c.to_string()).collect::<Vec<_>>().join(",")
        );
        let c1 = coeffs.clone();
        let f = move |t: f64| c1.iter().rev().fold(0.0, |acc, &c| acc * t + c);
        let d = move |t: f64| {
            coeffs
                .iter()
                .enumerate()
                .skip(1)
                .rev()
                .fold(0.0, |acc, (k, &c)| acc * t + k as f64 * c)
        };
        Self::new(name, f).with_derivative(d)
    }

    pub fn linear(c: f64) -> Self {
        Self::poly(vec![0.0, c])
    }

    pub fn cos() -> Self {
        Self::new("cos", f64::cos).with_derivative(|t: f64| -t.sin())
    }

    pub fn exp() -> Self {
        Self::new("exp", f64::exp).with_derivative(f64::exp)
    }

    /// `(1 - t^2)^(-gamma)`.
    pub fn power_sing(gamma: f64) -> Self {
        let mut k = Self::new(format!("power-sing:{gamma}"), |_| 1.0).with_power(-gamma);
        if gamma == 0.0 {
            k = k.with_derivative(|_| 0.0);
        }
        k
    }

    /// Continuous kernel from a Chebyshev series with its derivative attached.
    pub fn from_cheb(name: impl Into<String>, c: ChebInterpolant) -> Self {
        let d = c.diff();
        Self::new(name, move |t| c.eval(t)).with_derivative(move |t| d.eval(t))
    }

    /// Tabulated kernel from a `t,value` CSV file covering `[-1, 1]`.
    pub fn from_csv(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        let mut rdr = csv::ReaderBuilder::new()
            .comment(Some(b'#'))
            .trim(csv::Trim::All)
            .from_path(path)?;
        let mut rows: Vec<(f64, f64)> = Vec::new();
        for rec in rdr.records() {
            let rec = rec?;
            if rec.len() < 2 {
                return Err(Error::Parse(format!("{}: expected rows `t,value`", path.display())));
            }
            let t: f64 = rec[0].parse().map_err(|e| Error::Parse(format!("bad t `{}`: {e}", &rec[0])))?;
            let v: f64 = rec[1].parse().map_err(|e| Error::Parse(format!("bad value `{}`: {e}", &rec[1])))?;
            rows.push((t, v));
        }
        rows.sort_by(|a, b| a.0.total_cmp(&b.0));
        let (xs, ys): (Vec<f64>, Vec<f64>) = rows.into_iter().unzip();
        let table = BarycentricTable::new(xs, ys)?;
        let (lo, hi) = table.range();
        let open = lo > -1.0 || hi < 1.0;
        if lo > -0.999 || hi < 0.999 {
            return Err(Error::param(format!(
                "tabulated kernel {} covers [{lo}, {hi}], needs [-1, 1]",
                path.display()
            )));
        }
        let k = Self::new(format!("csv:{}", path.display()), move |t| table.eval(t));
        Ok(if open { k.with_endpoint(Endpoint::Unknown) } else { k })
    }

    /// Parses a registry name such as `const:1`, `poly:0,1`, `cos`, `exp`,
    /// `power-sing:0.25` or `csv:path`.
    pub fn parse(spec: &str) -> Result<Self> {
        let spec = spec.trim();
        let (head, arg) = match spec.split_once(':') {
            Some((h, a)) => (h, Some(a)),
            None => (spec, None),
        };
        let num = |s: &str| -> Result<f64> {
            s.trim()
                .parse::<f64>()
                .map_err(|_| Error::Parse(format!("bad number `{s}` in kernel `{spec}`")))
        };
        match (head, arg) {
            ("const", Some(a)) => Ok(Self::constant(num(a)?)),
            ("poly", Some(a)) => {
                let coeffs = a.split(',').map(num).collect::<Result<Vec<_>>>()?;
                Ok(Self::poly(coeffs))
            }
            ("cos", None) => Ok(Self::cos()),
            ("exp", None) => Ok(Self::exp()),
            ("power-sing", Some(a)) => {
                let g = num(a)?;
                if !g.is_finite() || g < 0.0 {
                    return Err(Error::Parse(format!("power-sing exponent must be >= 0, got {g}")));
                }
                Ok(Self::power_sing(g))
            }
            ("csv", Some(p)) => Self::from_csv(p),
            _ => Err(Error::Parse(format!("unknown kernel `{spec}`"))),
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn renamed(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    pub fn endpoint(&self) -> Endpoint {
        self.endpoint
    }

    pub fn singular_alpha(&self) -> Option<f64> {
        self.singular_alpha
    }

    /// Exponent `e` of the `(1 - t^2)^e` factor, if known.
    pub fn endpoint_exponent(&self) -> Option<f64> {
        match self.endpoint {
            Endpoint::Regular => Some(0.0),
            Endpoint::Power(e) => Some(e),
            Endpoint::Unknown => None,
        }
    }

    /// True when the kernel is continuous on the closed interval.
    pub fn is_continuous(&self) -> bool {
        match self.endpoint {
            Endpoint::Regular => true,
            Endpoint::Power(e) => e >= 0.0,
            Endpoint::Unknown => false,
        }
    }

    /// The smooth factor left after removing `(1 - t^2)^e`.
    pub fn regular_part(&self, t: f64) -> f64 {
        (self.regular)(t)
    }

    pub fn eval(&self, t: f64) -> f64 {
        let r = (self.regular)(t);
        match self.endpoint {
            Endpoint::Power(e) => (1.0 - t * t).max(0.0).powf(e) * r,
            _ => r,
        }
    }

    pub fn has_derivative(&self) -> bool {
        self.derivative.is_some()
    }

    pub fn derivative(&self, t: f64) -> Option<f64> {
        let d = self.derivative.as_ref()?;
        match self.endpoint {
            Endpoint::Regular => Some(d(t)),
            Endpoint::Power(e) => {
                let w = 1.0 - t * t;
                Some(w.powf(e) * d(t) - 2.0 * e * t * w.powf(e - 1.0) * (self.regular)(t))
            }
            Endpoint::Unknown => None,
        }
    }

    /// Shared handle to the profile, usable inside `Send + Sync` closures.
    pub fn as_fn(&self) -> Profile {
        let k = self.clone();
        Arc::new(move |t| k.eval(t))
    }

    /// `a * self + b * other`, both continuous.
    pub fn combine(&self, a: f64, other: &ZonalKernel, b: f64) -> Result<Self> {
        if !self.is_continuous() || !other.is_continuous() {
            return Err(Error::param("linear combination needs continuous kernels"));
        }
        let (p, q) = (self.clone(), other.clone());
        let mut k = Self::new(format!("{a}*{}+{b}*{}", p.name, q.name), move |t| {
            a * p.eval(t) + b * q.eval(t)
        })
        .with_breakpoints(self.breakpoints.iter().chain(&other.breakpoints).copied());
        if self.has_derivative() && other.has_derivative() {
            let (p, q) = (self.clone(), other.clone());
            k = k.with_derivative(move |t| {
                a * p.derivative(t).unwrap_or(0.0) + b * q.derivative(t).unwrap_or(0.0)
            });
        }
        Ok(k)
    }

    /// Reflected kernel `t -> f(-t)`.
    pub fn reflect(&self) -> Self {
        let p = self.clone();
        let mut k = Self {
            name: format!("{}(-t)", self.name),
            regular: Arc::new(move |t| (p.regular)(-t)),
            derivative: None,
            endpoint: self.endpoint,
            singular_alpha: self.singular_alpha,
            breakpoints: self.breakpoints.iter().rev().map(|t| -t).collect(),
        };
        if let Some(d) = self.derivative.clone() {
            k.derivative = Some(Arc::new(move |t| -d(-t)));
        }
        k
    }
}
