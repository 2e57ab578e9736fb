//! Least-squares fits of p^{−n}·value against Σ_{r ≤ maxOrder} a_r p^{−r}.

use crate::error::LabError;
use nalgebra::{DMatrix, DVector};
use serde::Serialize;

#[derive(Clone, Debug, Serialize)]
pub struct AsymptoticFit {
    pub samples: Vec<(usize, f64)>,
    pub coefficients: Vec<f64>,
    pub residual: f64,
    /// ‖residual‖ / ‖p^{−n}·values‖
    pub relative_residual: f64,
    /// Ratio of extreme singular values of the design matrix.
    pub condition: f64,
}

impl AsymptoticFit {
    pub fn a(&self, r: usize) -> f64 {
        self.coefficients.get(r).copied().unwrap_or(0.0)
    }
}

/// Reciprocal condition below which the design counts as rank deficient.
const RCOND: f64 = 1e-13;

pub fn fit(samples: &[(usize, f64)], n: i32, max_order: usize) -> Result<AsymptoticFit, LabError> {
    let unknowns = max_order + 1;
    let mut ps: Vec<usize> = samples.iter().map(|s| s.0).collect();
    ps.sort_unstable();
    ps.dedup();
    let (pmin, pmax) = (ps.first().copied().unwrap_or(0), ps.last().copied().unwrap_or(0));
    let deficient = |condition: f64| LabError::RankDeficient { pmin, pmax, samples: samples.len(), unknowns, condition };
    if ps.len() < unknowns + 1 || ps.contains(&0) {
        return Err(deficient(f64::INFINITY));
    }
    // columns scaled by pmin^r to keep the design well balanced
    let scale: Vec<f64> = (0..unknowns).map(|r| (pmin as f64).powi(r as i32)).collect();
    let x = DMatrix::from_fn(samples.len(), unknowns, |s, r| (samples[s].0 as f64).powi(-(r as i32)) * scale[r]);
    let y = DVector::from_iterator(samples.len(), samples.iter().map(|(p, v)| v * (*p as f64).powi(-n)));
    let svd = x.clone().svd(true, true);
    let sv = &svd.singular_values;
    let (smax, smin) = (sv.max(), sv.min());
    let condition = if smin > 0.0 { smax / smin } else { f64::INFINITY };
    if smax == 0.0 || smin / smax < RCOND {
        return Err(deficient(condition));
    }
    let sol = svd.solve(&y, smax * RCOND).map_err(|_| deficient(condition))?;
    let resid = (&x * &sol - &y).norm();
    Ok(AsymptoticFit {
        samples: samples.to_vec(),
        coefficients: sol.iter().zip(&scale).map(|(a, s)| a * s).collect(),
        residual: resid,
        relative_residual: resid / y.norm().max(f64::MIN_POSITIVE),
        condition,
    })
}

/// Slope of log(value) against log(p) by least squares.
pub fn loglog_slope(samples: &[(usize, f64)]) -> f64 {
    let pts: Vec<(f64, f64)> = samples.iter().map(|(p, v)| ((*p as f64).ln(), v.ln())).collect();
    let n = pts.len() as f64;
    let (mx, my) = (pts.iter().map(|t| t.0).sum::<f64>() / n, pts.iter().map(|t| t.1).sum::<f64>() / n);
    let sxy: f64 = pts.iter().map(|(x, y)| (x - mx) * (y - my)).sum();
    let sxx: f64 = pts.iter().map(|(x, _)| (x - mx) * (x - mx)).sum();
    sxy / sxx
}

/// Exponent s in log(value) ≈ s log p + c₀ + c₁/p, which absorbs the first
/// finite-p correction that biases the plain log-log slope.
pub fn fitted_exponent(samples: &[(usize, f64)]) -> f64 {
    let x = DMatrix::from_fn(samples.len(), 3, |i, c| {
        let p = samples[i].0 as f64;
        [p.ln(), 1.0, 1.0 / p][c]
    });
    let y = DVector::from_iterator(samples.len(), samples.iter().map(|(_, v)| v.ln()));
    let svd = x.svd(true, true);
    match svd.solve(&y, 1e-14) {
        Ok(sol) => sol[0],
        Err(_) => f64::NAN,
    }
}
