//! Log-log slopes and rational fits of level-indexed data.

use nalgebra::DMatrix;
use num_complex::Complex64;
use serde::Serialize;

use crate::error::{Error, Result};

/// Least-squares slope of log y against log x over the points with y > 0.
pub fn loglog_slope(pts: &[(f64, f64)]) -> Option<f64> {
    let logs: Vec<(f64, f64)> = pts.iter().filter(|(x, y)| *x > 0.0 && *y > 0.0 && y.is_finite()).map(|(x, y)| (x.ln(), y.ln())).collect();
    if logs.len() < 2 {
        return None;
    }
    let n = logs.len() as f64;
    let mx = logs.iter().map(|p| p.0).sum::<f64>() / n;
    let my = logs.iter().map(|p| p.1).sum::<f64>() / n;
    let sxx: f64 = logs.iter().map(|p| (p.0 - mx).powi(2)).sum();
    let sxy: f64 = logs.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    (sxx > 0.0).then(|| sxy / sxx)
}

/// v(t) ≈ P(t)/Q(t), stored as p(s)/q(s) in s = 1/t with deg p, deg q ≤ m.
#[derive(Clone, Debug, Serialize)]
pub struct RationalFit {
    pub m: usize,
    pub p: Vec<Complex64>,
    pub q: Vec<Complex64>,
    /// max |p/q − v| / max(1, |v|) over the points.
    pub residual: f64,
    pub deg_p: usize,
    pub deg_q: usize,
    pub finite_at_infinity: bool,
    pub pointwise: Vec<(f64, f64)>,
}

fn horner(c: &[Complex64], s: f64) -> Complex64 {
    c.iter().rev().fold(Complex64::new(0.0, 0.0), |acc, x| acc * s + x)
}

/// Degree in t of t^m c(1/t).
fn t_degree(c: &[Complex64], m: usize) -> usize {
    let top = c.iter().map(|x| x.norm()).fold(0.0, f64::max);
    let lowest = c.iter().position(|x| x.norm() > 1e-8 * top).unwrap_or(m);
    m - lowest
}

/// Smallest m ≤ `max_degree` whose linearized fit p(s) − v q(s) = 0 has
/// residual below `tol`; otherwise the best fit found.
pub fn rational_fit(pts: &[(f64, Complex64)], max_degree: usize, tol: f64) -> Result<RationalFit> {
    let mut best: Option<RationalFit> = None;
    for m in 0..=max_degree {
        let cols = 2 * m + 2;
        if pts.len() < cols {
            break;
        }
        let a = DMatrix::from_fn(pts.len(), cols, |j, c| {
            let (t, v) = pts[j];
            let s = 1.0 / t;
            if c <= m {
                Complex64::new(s.powi(c as i32), 0.0)
            } else {
                -v * s.powi((c - m - 1) as i32)
            }
        });
        let svd = a.svd(false, true);
        let vt = svd.v_t.ok_or_else(|| Error::Internal("SVD without V".into()))?;
        let (imin, _) = svd.singular_values.iter().enumerate().fold((0, f64::INFINITY), |acc, (i, &x)| if x < acc.1 { (i, x) } else { acc });
        let v: Vec<Complex64> = vt.row(imin).iter().map(|x| x.conj()).collect();
        let (p, qv) = (v[..=m].to_vec(), v[m + 1..].to_vec());
        let pointwise: Vec<(f64, f64)> = pts
            .iter()
            .map(|&(t, val)| {
                let s = 1.0 / t;
                let r = horner(&p, s) / horner(&qv, s);
                (t, (r - val).norm() / val.norm().max(1.0))
            })
            .collect();
        let residual = pointwise.iter().map(|x| x.1).fold(0.0, f64::max);
        let deg_p = t_degree(&p, m);
        let deg_q = t_degree(&qv, m);
        let fit = RationalFit { m, p, q: qv, residual, deg_p, deg_q, finite_at_infinity: deg_p <= deg_q, pointwise };
        if residual < tol {
            return Ok(fit);
        }
        if best.as_ref().is_none_or(|b| fit.residual < b.residual) {
            best = Some(fit);
        }
    }
    best.ok_or_else(|| Error::Usage("too few points for a rational fit".into()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn slope_of_power_law() {
        let pts: Vec<(f64, f64)> = (1..10).map(|n| (n as f64, 3.0 / (n as f64).powi(2))).collect();
        assert!((loglog_slope(&pts).unwrap() + 2.0).abs() < 1e-12);
        assert!(loglog_slope(&[(1.0, 0.0), (2.0, 0.0)]).is_none());
    }

    #[test]
    fn recovers_rational_function() {
        let f = |t: f64| Complex64::new((2.0 * t * t + 1.0) / (t * t + 3.0 * t + 5.0), 0.5 / t);
        let pts: Vec<(f64, Complex64)> = (4..=24).map(|n| (n as f64, f(n as f64))).collect();
        let fit = rational_fit(&pts, 4, 1e-10).unwrap();
        assert!(fit.residual < 1e-10);
        assert!(fit.finite_at_infinity);
        let c: Vec<(f64, Complex64)> = (4..=24).map(|n| (n as f64, Complex64::new(2.5, 0.0))).collect();
        let fit = rational_fit(&c, 3, 1e-12).unwrap();
        assert_eq!(fit.m, 0);
        assert!(fit.residual < 1e-14);
    }
}
