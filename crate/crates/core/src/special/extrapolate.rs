use crate::error::{Error, Result};
use nalgebra::{DMatrix, DVector};

/// Limit of `v(h)` as `h -> 0` assuming `v(h) = L + Σ c_j h^{p_j}`.
///
/// Uses the last `exponents.len() + 1` samples.
pub fn richardson(hs: &[f64], values: &[f64], exponents: &[f64]) -> Result<f64> {
    let m = exponents.len() + 1;
    if hs.len() != values.len() || hs.len() < m {
        return Err(Error::param("richardson needs one more sample than exponents"));
    }
    let off = hs.len() - m;
    let mat = DMatrix::from_fn(m, m, |r, c| if c == 0 { 1.0 } else { hs[off + r].powf(exponents[c - 1]) });
    let rhs = DVector::from_column_slice(&values[off..]);
    let sol = mat
        .lu()
        .solve(&rhs)
        .ok_or_else(|| Error::param("degenerate Richardson system"))?;
    Ok(sol[0])
}

/// Aitken's delta-squared on the last three terms of a sequence.
pub fn aitken(values: &[f64]) -> f64 {
    let n = values.len();
    if n < 3 {
        return *values.last().unwrap_or(&f64::NAN);
    }
    let (a, b, c) = (values[n - 3], values[n - 2], values[n - 1]);
    let denom = (c - b) - (b - a);
    if denom.abs() < 1e-300 || !denom.is_finite() {
        c
    } else {
        c - (c - b) * (c - b) / denom
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    #[test]
    fn removes_known_powers() {
        let hs: Vec<f64> = (2..=6).map(|k| 10f64.powi(-k)).collect();
        let vs: Vec<f64> = hs.iter().map(|h| 3.0 + 2.0 * h.powf(0.5) - h.powf(1.5)).collect();
        let l = richardson(&hs, &vs, &[0.5, 1.5]).unwrap();
        assert_abs_diff_eq!(l, 3.0, epsilon = 1e-12);
    }

    #[test]
    fn aitken_geometric() {
        let vs: Vec<f64> = (0..6).map(|k| 1.0 + 0.5f64.powi(k)).collect();
        assert_abs_diff_eq!(aitken(&vs), 1.0, epsilon = 1e-14);
    }
}
