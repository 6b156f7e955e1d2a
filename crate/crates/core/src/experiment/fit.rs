//! Log-log fits and goodness-of-fit statistics.

use serde::Serialize;

use crate::error::{invalid, EfnError, Result};
use crate::theory::gumbel_cdf;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct LogLogFit {
    pub slope: f64,
    pub intercept: f64,
    pub r2: f64,
}

/// Least squares on `(ln x, ln y)`.
pub fn fit_loglog_slope(points: &[(f64, f64)]) -> Result<LogLogFit> {
    if points.len() < 3 {
        return Err(invalid(format!("need at least 3 points, got {}", points.len())));
    }
    if let Some(p) = points.iter().find(|(x, y)| !(*x > 0.0 && *y > 0.0 && x.is_finite() && y.is_finite())) {
        return Err(invalid(format!("points must be positive, got ({}, {})", p.0, p.1)));
    }
    let n = points.len() as f64;
    let lx: Vec<f64> = points.iter().map(|p| p.0.ln()).collect();
    let ly: Vec<f64> = points.iter().map(|p| p.1.ln()).collect();
    let mx = lx.iter().sum::<f64>() / n;
    let my = ly.iter().sum::<f64>() / n;
    let sxx: f64 = lx.iter().map(|x| (x - mx).powi(2)).sum();
    let sxy: f64 = lx.iter().zip(&ly).map(|(x, y)| (x - mx) * (y - my)).sum();
    let syy: f64 = ly.iter().map(|y| (y - my).powi(2)).sum();
    if sxx == 0.0 {
        return Err(invalid("x values must not all be equal"));
    }
    let slope = sxy / sxx;
    let intercept = my - slope * mx;
    let sse: f64 = lx.iter().zip(&ly).map(|(x, y)| (y - intercept - slope * x).powi(2)).sum();
    let r2 = if syy == 0.0 { 1.0 } else { 1.0 - sse / syy };
    Ok(LogLogFit { slope, intercept, r2 })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum ReferenceCdf {
    GumbelStandard,
}

impl ReferenceCdf {
    pub fn cdf(&self, x: f64) -> f64 {
        match self {
            ReferenceCdf::GumbelStandard => gumbel_cdf(x),
        }
    }
}

pub const MIN_KS_SAMPLES: usize = 100;

/// Kolmogorov-Smirnov distance `sup_x |F_n(x) - F(x)|`.
pub fn ks_statistic(samples: &[f64], reference: ReferenceCdf) -> Result<f64> {
    if samples.len() < MIN_KS_SAMPLES {
        return Err(EfnError::InsufficientData(format!(
            "KS needs at least {MIN_KS_SAMPLES} samples, got {}",
            samples.len()
        )));
    }
    let mut sorted = samples.to_vec();
    if sorted.iter().any(|v| v.is_nan()) {
        return Err(invalid("samples contain NaN"));
    }
    sorted.sort_by(f64::total_cmp);
    let n = sorted.len() as f64;
    Ok(sorted.iter().enumerate().fold(0.0f64, |acc, (i, &x)| {
        let f = reference.cdf(x);
        acc.max(((i + 1) as f64 / n - f).abs()).max((f - i as f64 / n).abs())
    }))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exact_laws() {
        let pts: Vec<(f64, f64)> = [1.0, 2.0, 5.0, 11.0].iter().map(|&x| (x, 7.0 / x)).collect();
        let f = fit_loglog_slope(&pts).unwrap();
        assert!((f.slope + 1.0).abs() < 1e-12 && (f.r2 - 1.0).abs() < 1e-12);
        let pts: Vec<(f64, f64)> = [1.0, 3.0, 4.0].iter().map(|&x| (x, 0.5 * x * x)).collect();
        assert!((fit_loglog_slope(&pts).unwrap().slope - 2.0).abs() < 1e-12);
    }

    #[test]
    fn fit_errors() {
        assert!(fit_loglog_slope(&[(1.0, 1.0), (2.0, 2.0)]).is_err());
        assert!(fit_loglog_slope(&[(1.0, 1.0), (2.0, 0.0), (3.0, 1.0)]).is_err());
    }

    #[test]
    fn ks_degenerate() {
        assert!(ks_statistic(&[0.0; 99], ReferenceCdf::GumbelStandard).is_err());
        let ks = ks_statistic(&[50.0; 200], ReferenceCdf::GumbelStandard).unwrap();
        assert!(ks > 0.99);
    }
}
