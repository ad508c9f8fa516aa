use crate::biphoton::{Plane, SignalField};
use crate::error::{Error, Result};
use crate::geometry::GridSpec;
use crate::numerics::SampledProfile;

use super::{CcrProfile, DetectorSpec};

/// Diffraction pattern of one focal-plane point.
#[derive(Debug, Clone, PartialEq)]
pub struct FocalComponent {
    pub x_d1: f64,
    /// Quadrature weight in ν = x_D1/(λ f_c); 1 for a lone sample.
    pub weight: f64,
    /// |g(x_D1, x_3s)|², scaled by the same factor as the normalized sum.
    pub intensity: SampledProfile,
    /// Intensity-weighted mean position.
    pub centroid: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct IncoherentSum {
    pub components: Vec<FocalComponent>,
    pub sum: CcrProfile,
}

pub(super) fn decompose(
    field: &SignalField<'_>,
    x_d1: &[f64],
    grid: &GridSpec,
) -> Result<IncoherentSum> {
    let s = field.scenario();
    if x_d1.len() == 2 || x_d1.is_empty() {
        return Err(Error::InvalidArgument(format!(
            "need one focal-plane sample or at least three, got {}",
            x_d1.len()
        )));
    }
    if x_d1.iter().any(|x| !x.is_finite()) || x_d1.windows(2).any(|p| p[1] <= p[0]) {
        return Err(Error::InvalidArgument(
            "focal-plane samples must be finite and strictly increasing".into(),
        ));
    }
    let scale = 1.0 / (s.lambda * s.f_c);
    let nus: Vec<f64> = x_d1.iter().map(|x| x * scale).collect();
    let weights = trapezoid(&nus);

    let t = field.transport(*grid, true)?;
    let rows = field.g_ghost(&nus, t.nodes(), field.resolution().slit_panels)?;
    let raw: Vec<Vec<f64>> = rows
        .iter()
        .map(|g| t.apply(g).iter().map(|a| a.norm_sqr()).collect())
        .collect();
    let mut total = vec![0.0; grid.n_points()];
    for (r, w) in raw.iter().zip(&weights) {
        for (a, v) in total.iter_mut().zip(r) {
            *a += w * v;
        }
    }
    let peak = total.iter().copied().fold(0.0, f64::max);
    if peak == 0.0 {
        return Err(Error::ZeroProfile);
    }
    let xs = grid.points();
    let components = raw
        .into_iter()
        .zip(x_d1.iter().zip(&weights))
        .map(|(r, (&x, &weight))| {
            let mass: f64 = r.iter().sum();
            let centroid = r.iter().zip(&xs).map(|(v, x)| v * x).sum::<f64>() / mass;
            let scaled = r.into_iter().map(|v| v * weight / peak).collect();
            Ok(FocalComponent {
                x_d1: x,
                weight,
                intensity: SampledProfile::intensity(*grid, scaled)?,
                centroid,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let detector = DetectorSpec {
        focal_plane_grid: None,
        ..DetectorSpec::integrating()
    };
    let sum = CcrProfile::new(s, detector, Plane::Diffraction, *grid, total)?;
    Ok(IncoherentSum { components, sum })
}

/// Trapezoid weights for sorted, possibly uneven samples.
fn trapezoid(x: &[f64]) -> Vec<f64> {
    if x.len() == 1 {
        return vec![1.0];
    }
    let n = x.len();
    (0..n)
        .map(|i| {
            let left = if i > 0 { x[i] - x[i - 1] } else { 0.0 };
            let right = if i + 1 < n { x[i + 1] - x[i] } else { 0.0 };
            0.5 * (left + right)
        })
        .collect()
}
