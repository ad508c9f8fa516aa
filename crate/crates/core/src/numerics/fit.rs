use crate::error::{Error, Result};

/// Least-squares slope of ln(y) against ln(x).
pub fn fit_power_law(points: &[(f64, f64)]) -> Result<f64> {
    if points.len() < 3 {
        return Err(Error::InvalidArgument(format!(
            "power-law fit needs at least 3 points, got {}",
            points.len()
        )));
    }
    if let Some(&(x, y)) = points
        .iter()
        .find(|(x, y)| !(x.is_finite() && y.is_finite() && *x > 0.0 && *y > 0.0))
    {
        return Err(Error::InvalidArgument(format!(
            "power-law fit needs positive values, got ({x:e}, {y:e})"
        )));
    }
    let n = points.len() as f64;
    let logs: Vec<(f64, f64)> = points.iter().map(|(x, y)| (x.ln(), y.ln())).collect();
    let mx = logs.iter().map(|p| p.0).sum::<f64>() / n;
    let my = logs.iter().map(|p| p.1).sum::<f64>() / n;
    let (sxy, sxx) = logs.iter().fold((0.0, 0.0), |(sxy, sxx), (lx, ly)| {
        (sxy + (lx - mx) * (ly - my), sxx + (lx - mx) * (lx - mx))
    });
    if sxx == 0.0 {
        return Err(Error::InvalidArgument(
            "power-law fit needs at least two distinct abscissae".into(),
        ));
    }
    Ok(sxy / sxx)
}
