use std::f64::consts::PI;

use num_complex::Complex64;
use rayon::prelude::*;

use crate::biphoton::{Plane, Resolution, SignalField};
use crate::error::{Error, Result};
use crate::geometry::{GridSpec, Scenario};
use crate::numerics::sampled_weights;

/// Minimum share of the idler energy the focal-plane window must capture
/// before the analytic tail is added.
pub const FOCAL_CAPTURE_MIN: f64 = 0.99;

const NU_CHUNK: usize = 16;

pub(crate) struct DirectResult {
    pub intensity: Vec<f64>,
    pub captured: f64,
}

/// Focal-plane window ±K·λf_c/u_e with `focal_density` samples per λf_c/w.
pub(crate) fn default_focal_grid(s: &Scenario, res: &Resolution) -> Result<GridSpec> {
    let nu_max = res.focal_window / s.ghost_blur();
    let samples = (2.0 * nu_max * s.w * res.focal_density).ceil() as usize;
    let n = (samples + 1).max(crate::geometry::MIN_GRID_POINTS + 1);
    GridSpec::symmetric(nu_max * s.lambda * s.f_c, n + 1 - n % 2)
}

/// ∫ dν |g(ν, x)|² over the window, plus the contribution beyond it.
///
/// Far from the axis g(ν) is dominated by the slit edges,
/// g ≈ [f(w/2) e^{-iπνw} - f(-w/2) e^{iπνw}] / (-2πiν), so the region
/// |ν| > ν_edge adds (|f(w/2)|² + |f(-w/2)|²)/(4π² ν_edge) per side once the
/// cross term has averaged out.
pub(crate) fn direct(
    field: &SignalField<'_>,
    plane: Plane,
    grid: &GridSpec,
    focal: &GridSpec,
) -> Result<DirectResult> {
    let s = field.scenario();
    let res = field.resolution();
    let scale = 1.0 / (s.lambda * s.f_c);
    let (nu_lo, nu_hi) = (focal.x_min() * scale, focal.x_max() * scale);
    if !(nu_lo < 0.0 && nu_hi > 0.0) {
        return Err(Error::InvalidArgument(
            "focal-plane window must straddle x_D1 = 0".into(),
        ));
    }
    let nus: Vec<f64> = focal.points().iter().map(|x| x * scale).collect();
    let weights = sampled_weights(nus.len(), focal.spacing() * scale);
    let nu_reach = nu_lo.abs().max(nu_hi);
    // The tilt e^{-2πi x_1i ν} must be resolved across the slit.
    let tilt_panels = (2.0 * PI * nu_reach * s.w / res.phase_step).ceil() as usize;
    let panels = res.slit_panels.max(tilt_panels);
    let half = 0.5 * s.w;

    let (nu0, dnu, n_nu) = (nus[0], focal.spacing() * scale, nus.len());
    let window: Vec<f64>;
    let edges: [Vec<Complex64>; 2];
    match plane {
        Plane::Ghost => {
            let x2s = grid.points();
            window = field
                .g_ghost_columns(nu0, dnu, n_nu, &x2s, panels)?
                .iter()
                .map(|col| {
                    col.iter()
                        .zip(&weights)
                        .map(|(g, w)| w * g.norm_sqr())
                        .sum()
                })
                .collect();
            edges = [field.f_ghost(-half, &x2s), field.f_ghost(half, &x2s)];
        }
        Plane::Diffraction => {
            let t = field.transport(*grid, true)?;
            let cols = field.g_ghost_columns(nu0, dnu, n_nu, t.nodes(), panels)?;
            // Fixed-size chunks summed in order keep the result independent
            // of thread scheduling.
            let partial: Vec<Vec<f64>> = (0..n_nu)
                .collect::<Vec<_>>()
                .par_chunks(NU_CHUNK)
                .map(|chunk| {
                    let mut acc = vec![0.0; grid.n_points()];
                    for &i in chunk {
                        let row: Vec<Complex64> = cols.iter().map(|c| c[i]).collect();
                        for (a, v) in acc.iter_mut().zip(t.apply(&row)) {
                            *a += weights[i] * v.norm_sqr();
                        }
                    }
                    acc
                })
                .collect();
            let mut acc = vec![0.0; grid.n_points()];
            for p in &partial {
                acc.iter_mut().zip(p).for_each(|(a, b)| *a += b);
            }
            window = acc;
            edges = [
                t.apply(&field.f_ghost(-half, t.nodes())),
                t.apply(&field.f_ghost(half, t.nodes())),
            ];
        }
    }
    let reach = (1.0 / nu_hi + 1.0 / nu_lo.abs()) / (4.0 * PI * PI);
    let tail: Vec<f64> = edges[0]
        .iter()
        .zip(&edges[1])
        .map(|(l, r)| (l.norm_sqr() + r.norm_sqr()) * reach)
        .collect();
    let inside: f64 = window.iter().sum();
    let outside: f64 = tail.iter().sum();
    let captured = inside / (inside + outside);
    if captured < FOCAL_CAPTURE_MIN {
        return Err(Error::FocalCapture { captured });
    }
    let intensity = window.iter().zip(&tail).map(|(a, b)| a + b).collect();
    Ok(DirectResult {
        intensity,
        captured,
    })
}
