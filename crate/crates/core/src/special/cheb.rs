use crate::error::{Error, Result};
use std::f64::consts::PI;

/// Chebyshev series `Σ c_k T_k(x)` on the domain `[a, b]`.
#[derive(Debug, Clone, PartialEq)]
pub struct ChebInterpolant {
    coeffs: Vec<f64>,
    a: f64,
    b: f64,
}

impl ChebInterpolant {
    pub fn from_coeffs(coeffs: Vec<f64>, a: f64, b: f64) -> Result<Self> {
        if coeffs.is_empty() {
            return Err(Error::param("Chebyshev series needs at least one coefficient"));
        }
        if !(b > a) {
            return Err(Error::param(format!("empty Chebyshev domain [{a}, {b}]")));
        }
        Ok(Self { coeffs, a, b })
    }

    /// Interpolates `f` at the `degree + 1` first-kind Chebyshev points.
    pub fn fit<F: Fn(f64) -> f64>(f: F, degree: usize, a: f64, b: f64) -> Result<Self> {
        if degree < 1 {
            return Err(Error::param("Chebyshev degree must be at least 1"));
        }
        if !(b > a) {
            return Err(Error::param(format!("empty Chebyshev domain [{a}, {b}]")));
        }
        let n = degree + 1;
        let nodes = Self::nodes(degree);
        let values: Vec<f64> = nodes
            .iter()
            .map(|&x| f(0.5 * (a + b) + 0.5 * (b - a) * x))
            .collect();
        let mut coeffs = vec![0.0; n];
        for (k, c) in coeffs.iter_mut().enumerate() {
            let mut acc = 0.0;
            for (j, v) in values.iter().enumerate() {
                acc += v * (PI * k as f64 * (j as f64 + 0.5) / n as f64).cos();
            }
            *c = 2.0 * acc / n as f64;
        }
        coeffs[0] *= 0.5;
        Ok(Self { coeffs, a, b })
    }

    /// Interpolant through values at the Lobatto points `cos(pi j / N)`, `j = 0..=N`.
    pub fn from_lobatto_values(values: &[f64], a: f64, b: f64) -> Result<Self> {
        if values.len() < 2 {
            return Err(Error::param("Lobatto interpolation needs at least two values"));
        }
        if !(b > a) {
            return Err(Error::param(format!("empty Chebyshev domain [{a}, {b}]")));
        }
        let n = values.len() - 1;
        let half = |j: usize| if j == 0 || j == n { 0.5 } else { 1.0 };
        let mut coeffs: Vec<f64> = (0..=n)
            .map(|k| {
                let acc: f64 = values
                    .iter()
                    .enumerate()
                    .map(|(j, v)| half(j) * v * (PI * (j * k) as f64 / n as f64).cos())
                    .sum();
                2.0 * acc / n as f64
            })
            .collect();
        coeffs[0] *= 0.5;
        coeffs[n] *= 0.5;
        Ok(Self { coeffs, a, b })
    }

    /// Lobatto points `cos(pi j / N)` on `[-1, 1]`, from `1` down to `-1`.
    pub fn lobatto_nodes(n: usize) -> Vec<f64> {
        (0..=n)
            .map(|j| if 2 * j == n { 0.0 } else { (PI * j as f64 / n as f64).cos() })
            .collect()
    }

    /// First-kind points `cos(pi (j + 1/2) / (degree + 1))` on `[-1, 1]`.
    pub fn nodes(degree: usize) -> Vec<f64> {
        let n = degree + 1;
        (0..n).map(|j| (PI * (j as f64 + 0.5) / n as f64).cos()).collect()
    }

    pub fn coeffs(&self) -> &[f64] {
        &self.coeffs
    }

    pub fn domain(&self) -> (f64, f64) {
        (self.a, self.b)
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    /// Clenshaw evaluation.
    pub fn eval(&self, t: f64) -> f64 {
        let x = (2.0 * t - self.a - self.b) / (self.b - self.a);
        let (mut b1, mut b2) = (0.0, 0.0);
        for &c in self.coeffs.iter().skip(1).rev() {
            let b0 = 2.0 * x * b1 - b2 + c;
            b2 = b1;
            b1 = b0;
        }
        x * b1 - b2 + self.coeffs[0]
    }

    /// Term-wise derivative, one degree lower.
    pub fn diff(&self) -> Self {
        let n = self.coeffs.len();
        if n == 1 {
            return Self { coeffs: vec![0.0], a: self.a, b: self.b };
        }
        let mut d = vec![0.0; n + 1];
        for k in (1..n).rev() {
            d[k - 1] = d[k + 1] + 2.0 * k as f64 * self.coeffs[k];
        }
        d[0] *= 0.5;
        d.truncate(n - 1);
        let scale = 2.0 / (self.b - self.a);
        d.iter_mut().for_each(|c| *c *= scale);
        Self { coeffs: d, a: self.a, b: self.b }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    #[test]
    fn reproduces_samples_at_nodes() {
        let f = |t: f64| (3.0 * t).exp() - t;
        let c = ChebInterpolant::fit(f, 12, -1.0, 1.0).unwrap();
        for x in ChebInterpolant::nodes(12) {
            assert_abs_diff_eq!(c.eval(x), f(x), epsilon = 1e-12);
        }
    }

    #[test]
    fn square_differentiates_to_double() {
        let c = ChebInterpolant::fit(|t| t * t, 2, -1.0, 1.0).unwrap().diff();
        for k in 0..=20 {
            let t = -1.0 + 0.1 * f64::from(k);
            assert_abs_diff_eq!(c.eval(t), 2.0 * t, epsilon = 1e-12);
        }
    }

    #[test]
    fn constant_differentiates_to_zero() {
        let c = ChebInterpolant::fit(|_| 1.0, 4, -1.0, 1.0).unwrap().diff();
        assert_abs_diff_eq!(c.eval(0.37), 0.0, epsilon = 1e-14);
    }

    #[test]
    fn cosine_derivative() {
        let c = ChebInterpolant::fit(f64::cos, 30, -1.0, 1.0).unwrap().diff();
        assert_abs_diff_eq!(c.eval(0.3), -(0.3f64).sin(), epsilon = 1e-10);
    }

    #[test]
    fn shifted_domain() {
        let c = ChebInterpolant::fit(|t: f64| t.powi(3), 5, 0.0, 2.0).unwrap();
        assert_abs_diff_eq!(c.eval(1.5), 3.375, epsilon = 1e-12);
        assert_abs_diff_eq!(c.diff().eval(1.5), 6.75, epsilon = 1e-11);
    }

    #[test]
    fn rejects_degree_zero() {
        assert!(ChebInterpolant::fit(|t| t, 0, -1.0, 1.0).is_err());
    }

    #[test]
    fn lobatto_values_are_reproduced() {
        let xs = ChebInterpolant::lobatto_nodes(20);
        assert_eq!(xs[10], 0.0);
        let ys: Vec<f64> = xs.iter().map(|x| (2.0 * x).sin() + x * x).collect();
        let c = ChebInterpolant::from_lobatto_values(&ys, -1.0, 1.0).unwrap();
        for (x, y) in xs.iter().zip(&ys) {
            assert!((c.eval(*x) - y).abs() < 1e-14);
        }
        assert!((c.eval(0.123) - ((0.246f64).sin() + 0.123 * 0.123)).abs() < 1e-12);
    }
}
