use crate::error::{Error, Result};

/// Floater–Hormann rational interpolant through tabulated samples.
#[derive(Debug, Clone, PartialEq)]
pub struct BarycentricTable {
    xs: Vec<f64>,
    ys: Vec<f64>,
    weights: Vec<f64>,
}

const BLEND_DEGREE: usize = 8;

impl BarycentricTable {
    /// Builds the interpolant; abscissae must be strictly increasing.
    pub fn new(xs: Vec<f64>, ys: Vec<f64>) -> Result<Self> {
        if xs.len() != ys.len() || xs.len() < 2 {
            return Err(Error::param("table needs at least two (t, value) rows"));
        }
        if xs.windows(2).any(|w| !(w[1] > w[0])) {
            return Err(Error::param("table abscissae must be strictly increasing"));
        }
        let n = xs.len() - 1;
        let d = BLEND_DEGREE.min(n);
        let mut weights = vec![0.0; n + 1];
        for (k, w) in weights.iter_mut().enumerate() {
            let lo = k.saturating_sub(d);
            let hi = k.min(n - d);
            let mut acc = 0.0;
            for i in lo..=hi {
                let mut prod = 1.0;
                for j in i..=i + d {
                    if j != k {
                        prod /= (xs[k] - xs[j]).abs();
                    }
                }
                acc += prod;
            }
            let sign = if (k + d) % 2 == 0 { 1.0 } else { -1.0 };
            *w = sign * acc;
        }
        Ok(Self { xs, ys, weights })
    }

    pub fn range(&self) -> (f64, f64) {
        (self.xs[0], self.xs[self.xs.len() - 1])
    }

    pub fn eval(&self, t: f64) -> f64 {
        let (mut num, mut den) = (0.0, 0.0);
        for ((&x, &y), &w) in self.xs.iter().zip(&self.ys).zip(&self.weights) {
            let diff = t - x;
            if diff == 0.0 {
                return y;
            }
            let c = w / diff;
            num += c * y;
            den += c;
        }
        num / den
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    #[test]
    fn exact_on_low_degree_polynomials() {
        let xs: Vec<f64> = (0..=40).map(|k| -1.0 + 0.05 * f64::from(k)).collect();
        let ys: Vec<f64> = xs.iter().map(|x| 1.0 - 2.0 * x + x.powi(3)).collect();
        let table = BarycentricTable::new(xs, ys).unwrap();
        assert_abs_diff_eq!(table.eval(0.123), 1.0 - 0.246 + 0.123f64.powi(3), epsilon = 1e-12);
    }

    #[test]
    fn smooth_function_accuracy() {
        let xs: Vec<f64> = (0..=200).map(|k| -1.0 + 0.01 * f64::from(k)).collect();
        let ys: Vec<f64> = xs.iter().map(|x| x.cos()).collect();
        let table = BarycentricTable::new(xs, ys).unwrap();
        for t in [-0.995, -0.3, 0.0123, 0.77] {
            assert_abs_diff_eq!(table.eval(t), t.cos(), epsilon = 1e-12);
        }
    }

    #[test]
    fn rejects_unsorted() {
        assert!(BarycentricTable::new(vec![0.0, 0.0], vec![1.0, 2.0]).is_err());
        assert!(BarycentricTable::new(vec![0.0], vec![1.0]).is_err());
    }
}
