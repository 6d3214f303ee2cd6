//! Ordinary least-squares line fits.

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct LineFit {
    pub slope: f64,
    pub intercept: f64,
    pub r_squared: f64,
}

/// Fits `y = slope · x + intercept`. Needs at least two finite points with
/// distinct `x`. `r²` is 1 when `y` is constant and exactly fitted.
pub fn fit_line(x: &[f64], y: &[f64]) -> Result<LineFit> {
    if x.len() != y.len() {
        return Err(Error::InsufficientData(format!("{} x values but {} y values", x.len(), y.len())));
    }
    if x.len() < 2 {
        return Err(Error::InsufficientData(format!("need at least 2 points, got {}", x.len())));
    }
    if x.iter().chain(y).any(|v| !v.is_finite()) {
        return Err(Error::InsufficientData("non-finite value in fit data".into()));
    }
    let n = x.len() as f64;
    let mx = x.iter().sum::<f64>() / n;
    let my = y.iter().sum::<f64>() / n;
    let sxx: f64 = x.iter().map(|v| (v - mx).powi(2)).sum();
    if sxx == 0.0 {
        return Err(Error::InsufficientData("all x values are equal".into()));
    }
    let sxy: f64 = x.iter().zip(y).map(|(a, b)| (a - mx) * (b - my)).sum();
    let slope = sxy / sxx;
    let intercept = my - slope * mx;
    let ss_tot: f64 = y.iter().map(|v| (v - my).powi(2)).sum();
    let ss_res: f64 = x.iter().zip(y).map(|(a, b)| (b - slope * a - intercept).powi(2)).sum();
    let r_squared = if ss_tot == 0.0 { 1.0 } else { 1.0 - ss_res / ss_tot };
    Ok(LineFit {
        slope,
        intercept,
        r_squared,
    })
}
