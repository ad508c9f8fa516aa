use std::f64::consts::PI;

use num_complex::Complex64;
use rayon::prelude::*;

use super::chirpz::ChirpZ;
use super::Resolution;
use crate::error::{Error, Result};
use crate::geometry::GridSpec;
use crate::numerics::{chirp_panels, required_panels, sampled_weights, SampledProfile};

/// Sum `Σ_j c_j · exp(-i·κ·x·(x0 + j·h))` for every `x` in `xs`.
///
/// Works for arbitrary `xs`. The per-node phase factors follow a geometric
/// progression, so each output needs one `sincos` plus a rotor product per
/// node. Four outputs run side by side to break the rotor's dependency chain.
pub(crate) fn linear_phase_sums(
    re: &[f64],
    im: &[f64],
    x0: f64,
    h: f64,
    kappa: f64,
    xs: &[f64],
) -> Vec<Complex64> {
    const LANES: usize = 4;
    let mut out = vec![Complex64::new(0.0, 0.0); xs.len()];
    out.par_chunks_mut(LANES)
        .zip(xs.par_chunks(LANES))
        .for_each(|(dst, xs)| {
            let mut zr = [0.0; LANES];
            let mut zi = [0.0; LANES];
            let mut rr = [1.0; LANES];
            let mut ri = [0.0; LANES];
            for (l, &x) in xs.iter().enumerate() {
                let (s, c) = (-kappa * x * x0).sin_cos();
                zr[l] = c;
                zi[l] = s;
                let (s, c) = (-kappa * x * h).sin_cos();
                rr[l] = c;
                ri[l] = s;
            }
            let mut ar = [0.0; LANES];
            let mut ai = [0.0; LANES];
            for (&cr, &ci) in re.iter().zip(im) {
                for l in 0..LANES {
                    ar[l] += cr * zr[l] - ci * zi[l];
                    ai[l] += cr * zi[l] + ci * zr[l];
                    let nr = zr[l] * rr[l] - zi[l] * ri[l];
                    zi[l] = zr[l] * ri[l] + zi[l] * rr[l];
                    zr[l] = nr;
                }
            }
            for (l, d) in dst.iter_mut().enumerate() {
                *d = Complex64::new(ar[l], ai[l]);
            }
        });
    out
}

pub(crate) fn cis(phase: f64) -> Complex64 {
    let (s, c) = phase.sin_cos();
    Complex64::new(c, s)
}

/// Quadrature that carries a field sampled on `[-b, b]` in one plane to an
/// output grid a distance `dz` downstream.
///
/// Chirped: `e^{iπx²/λdz} ∫ dx' e^{iπx'²/λdz} e^{-2πi x x'/λdz} a(x')`.
/// Plain: `∫ dx' e^{-2πi x x'/λdz} a(x')`, the far-field transform.
pub(crate) struct Transport {
    nodes: Vec<f64>,
    pre: Vec<Complex64>,
    post: Option<Vec<Complex64>>,
    sums: ChirpZ,
}

impl Transport {
    pub(crate) fn new(
        b: f64,
        lambda: f64,
        dz: f64,
        out: GridSpec,
        res: &Resolution,
        chirped: bool,
    ) -> Result<Self> {
        if !(dz > 0.0) {
            return Err(Error::InvalidArgument(format!(
                "propagation distance must be > 0, got {dz:e}"
            )));
        }
        let reach = if chirped {
            b + out.extent()
        } else {
            out.extent()
        };
        let panels = chirp_panels(
            2.0 * b,
            reach,
            lambda,
            dz,
            res.phase_step,
            res.transport_panels,
        );
        // Phase advance per panel must stay below π, whatever the resolution
        // settings asked for.
        let nyquist = chirp_panels(2.0 * b, reach, lambda, dz, PI, 2);
        let minimum = required_panels(lambda, dz, b).max(nyquist);
        if panels < minimum {
            return Err(Error::Nyquist {
                panels,
                required: minimum,
            });
        }
        let grid = GridSpec::new(-b, b, panels + 1)?;
        let nodes = grid.points();
        let h = grid.spacing();
        let weights = sampled_weights(nodes.len(), h);
        let chirp = |x: f64| cis(PI * x * x / (lambda * dz));
        let pre = nodes
            .iter()
            .zip(&weights)
            .map(|(&x, &w)| {
                if chirped {
                    chirp(x) * w
                } else {
                    Complex64::new(w, 0.0)
                }
            })
            .collect();
        let post = chirped.then(|| out.points().into_iter().map(chirp).collect());
        let kappa = 2.0 * PI / (lambda * dz);
        let sums = ChirpZ::new(
            nodes.len(),
            -b,
            h,
            out.n_points(),
            out.x_min(),
            out.spacing(),
            kappa,
        );
        Ok(Self {
            nodes,
            pre,
            post,
            sums,
        })
    }

    pub(crate) fn nodes(&self) -> &[f64] {
        &self.nodes
    }

    pub(crate) fn apply(&self, field: &[Complex64]) -> Vec<Complex64> {
        debug_assert_eq!(field.len(), self.nodes.len());
        let c: Vec<Complex64> = field.iter().zip(&self.pre).map(|(a, p)| a * p).collect();
        let mut out = self.sums.apply(&c);
        if let Some(post) = &self.post {
            for (v, p) in out.iter_mut().zip(post) {
                *v *= p;
            }
        }
        out
    }
}

/// One Fresnel propagation step over `dz`: convolution with the quadratic
/// phase kernel `e^{iπ(x-x')²/λdz}` times the plane-wave phase `e^{ik·dz}`.
///
/// The `1/√(iλdz)` prefactor is omitted, so powers scale by `λ·dz`.
pub fn fresnel_step(
    p: &SampledProfile,
    lambda: f64,
    dz: f64,
    out_grid: &GridSpec,
) -> Result<SampledProfile> {
    if !(dz > 0.0 && dz.is_finite()) {
        return Err(Error::InvalidArgument(format!(
            "propagation distance must be > 0, got {dz:e}"
        )));
    }
    if !(lambda > 0.0 && lambda.is_finite()) {
        return Err(Error::InvalidArgument(format!(
            "wavelength must be > 0, got {lambda:e}"
        )));
    }
    let a = p
        .as_amplitude()
        .ok_or_else(|| Error::InvalidArgument("fresnel_step needs an amplitude profile".into()))?;
    let g = p.grid();
    g.check_chirp_nyquist(lambda, dz, g.extent() + out_grid.extent())?;
    let h = g.spacing();
    let w = sampled_weights(a.len(), h);
    let c: Vec<Complex64> = g
        .points()
        .iter()
        .zip(a)
        .zip(&w)
        .map(|((&x, &v), &wt)| v * cis(PI * x * x / (lambda * dz)) * wt)
        .collect();
    let xs = out_grid.points();
    let kappa = 2.0 * PI / (lambda * dz);
    let sums = ChirpZ::new(
        c.len(),
        g.x_min(),
        h,
        xs.len(),
        out_grid.x_min(),
        out_grid.spacing(),
        kappa,
    );
    let mut out = sums.apply(&c);
    let plane_wave = cis((2.0 * PI / lambda * dz).rem_euclid(2.0 * PI));
    for (v, &x) in out.iter_mut().zip(&xs) {
        *v *= plane_wave * cis(PI * x * x / (lambda * dz));
    }
    SampledProfile::amplitude(*out_grid, out)
}
