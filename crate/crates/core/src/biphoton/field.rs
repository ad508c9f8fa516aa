use std::f64::consts::PI;

use num_complex::Complex64;
use rayon::prelude::*;

use super::chirpz::ChirpZ;
use super::transport::{cis, linear_phase_sums, Transport};
use super::{FieldPath, Resolution};
use crate::error::Result;
use crate::geometry::{GridSpec, Scenario};
use crate::numerics::{gaussian_fourier_amplitude, simpson_rule};

/// Crystal integral truncated at ±8 pump radii; beyond that e^{-64} < 1e-27.
const CRYSTAL_REACH: f64 = 8.0;

/// Ghost-plane aperture reach beyond the slit image when no signal slit is
/// fitted, in units of the blur half-width u_e.
pub const OPEN_APERTURE_BLUR_MULTIPLE: f64 = 8.0;

/// Mode functions of one scenario at fixed resolution and evaluation path.
pub(crate) struct SignalField<'a> {
    s: &'a Scenario,
    path: FieldPath,
    res: Resolution,
    crystal_nodes: Vec<f64>,
    crystal_re: Vec<f64>,
    crystal_im: Vec<f64>,
    crystal_h: f64,
}

impl<'a> SignalField<'a> {
    pub(crate) fn new(s: &'a Scenario, path: FieldPath, res: &Resolution) -> Result<Self> {
        let (crystal_nodes, crystal_re, crystal_h) = match path {
            FieldPath::SemiAnalytic => (Vec::new(), Vec::new(), 0.0),
            FieldPath::FullNumeric => {
                let r = CRYSTAL_REACH * s.a_p;
                let (nodes, w) = simpson_rule(-r, r, res.crystal_panels)?;
                let re = nodes
                    .iter()
                    .zip(&w)
                    .map(|(x, w)| w * (-(x / s.a_p) * (x / s.a_p)).exp())
                    .collect();
                let h = nodes[1] - nodes[0];
                (nodes, re, h)
            }
        };
        let crystal_im = vec![0.0; crystal_re.len()];
        Ok(Self {
            s,
            path,
            res: *res,
            crystal_nodes,
            crystal_re,
            crystal_im,
            crystal_h,
        })
    }

    pub(crate) fn scenario(&self) -> &Scenario {
        self.s
    }

    pub(crate) fn resolution(&self) -> &Resolution {
        &self.res
    }

    /// `∫ dx e^{-x²/a_p²} e^{-2πi x u/λd2}` for each shifted coordinate
    /// `u = m·x_1i + x_2s`.
    fn crystal(&self, us: &[f64]) -> Vec<Complex64> {
        let q_per_u = 2.0 * PI / (self.s.lambda * self.s.d2);
        match self.path {
            FieldPath::SemiAnalytic => us
                .iter()
                .map(|u| {
                    gaussian_fourier_amplitude(self.s.a_p, q_per_u * u)
                        .expect("pump radius validated by Scenario")
                })
                .collect(),
            FieldPath::FullNumeric => match uniform_step(us) {
                Some(du) => {
                    let c: Vec<Complex64> = self
                        .crystal_re
                        .iter()
                        .map(|&w| Complex64::new(w, 0.0))
                        .collect();
                    let n = self.crystal_nodes.len();
                    ChirpZ::new(
                        n,
                        self.crystal_nodes[0],
                        self.crystal_h,
                        us.len(),
                        us[0],
                        du,
                        q_per_u,
                    )
                    .apply(&c)
                }
                None => linear_phase_sums(
                    &self.crystal_re,
                    &self.crystal_im,
                    self.crystal_nodes[0],
                    self.crystal_h,
                    q_per_u,
                    us,
                ),
            },
        }
    }

    fn ghost_chirp(&self, x2: f64) -> Complex64 {
        cis(PI * x2 * x2 / (self.s.lambda * self.s.d2))
    }

    /// f(x_1i, x_2s) over the given ghost-plane coordinates.
    pub(crate) fn f_ghost(&self, x1: f64, x2s: &[f64]) -> Vec<Complex64> {
        let us: Vec<f64> = x2s.iter().map(|x2| self.s.m * x1 + x2).collect();
        self.crystal(&us)
            .into_iter()
            .zip(x2s)
            .map(|(c, &x2)| c * self.ghost_chirp(x2))
            .collect()
    }

    /// Simpson nodes and weights across the idler slit.
    pub(crate) fn slit_rule(&self, panels: usize) -> Result<(Vec<f64>, Vec<f64>)> {
        let h = 0.5 * self.s.w;
        simpson_rule(-h, h, panels + panels % 2)
    }

    /// g(ν, x_2s) = ∫_slit dx_1i e^{-2πi x_1i ν} f(x_1i, x_2s), with
    /// ν = x_D1/(λ f_c), for several ν at once.
    pub(crate) fn g_ghost(
        &self,
        nus: &[f64],
        x2s: &[f64],
        slit_panels: usize,
    ) -> Result<Vec<Vec<Complex64>>> {
        let (x1s, w1) = self.slit_rule(slit_panels)?;
        // rows[k][j] = w_k f(x1_k, x2_j) without the x2 chirp, which is
        // common to every term and applied once at the end.
        let rows: Vec<Vec<Complex64>> = x1s
            .par_iter()
            .zip(&w1)
            .map(|(&x1, &w)| {
                let us: Vec<f64> = x2s.iter().map(|x2| self.s.m * x1 + x2).collect();
                self.crystal(&us).into_iter().map(|c| c * w).collect()
            })
            .collect();
        let chirp: Vec<Complex64> = x2s.iter().map(|&x2| self.ghost_chirp(x2)).collect();
        Ok(nus
            .par_iter()
            .map(|&nu| {
                let tilt: Vec<Complex64> = x1s.iter().map(|&x1| cis(-2.0 * PI * x1 * nu)).collect();
                let mut acc = vec![Complex64::new(0.0, 0.0); x2s.len()];
                for (row, t) in rows.iter().zip(&tilt) {
                    for (a, r) in acc.iter_mut().zip(row) {
                        *a += r * t;
                    }
                }
                acc.iter().zip(&chirp).map(|(a, c)| a * c).collect()
            })
            .collect())
    }

    /// g(ν_i, x) for a uniform run ν_i = ν0 + i·dν, returned per x as a
    /// column over ν. The slit sum for every ν is one chirp-z transform.
    pub(crate) fn g_ghost_columns(
        &self,
        nu0: f64,
        dnu: f64,
        n_nu: usize,
        x2s: &[f64],
        slit_panels: usize,
    ) -> Result<Vec<Vec<Complex64>>> {
        let (x1s, w1) = self.slit_rule(slit_panels)?;
        let h1 = x1s[1] - x1s[0];
        let sums = ChirpZ::new(x1s.len(), x1s[0], h1, n_nu, nu0, dnu, 2.0 * PI);
        Ok(x2s
            .par_iter()
            .map(|&x2| {
                let us: Vec<f64> = x1s.iter().map(|x1| self.s.m * x1 + x2).collect();
                let c: Vec<Complex64> = self
                    .crystal(&us)
                    .into_iter()
                    .zip(&w1)
                    .map(|(v, w)| v * w)
                    .collect();
                let chirp = self.ghost_chirp(x2);
                sums.apply(&c).into_iter().map(|v| v * chirp).collect()
            })
            .collect())
    }

    /// Ghost-plane half-aperture b for the diffraction integral.
    pub(crate) fn aperture(&self) -> f64 {
        match self.s.signal_slit {
            Some(width) => 0.5 * width,
            None => self.s.image_half_width() + OPEN_APERTURE_BLUR_MULTIPLE * self.s.ghost_blur(),
        }
    }

    /// Transport from the ghost plane to the diffraction plane on `out`.
    pub(crate) fn transport(&self, out: GridSpec, chirped: bool) -> Result<Transport> {
        Transport::new(
            self.aperture(),
            self.s.lambda,
            self.s.gap(),
            out,
            &self.res,
            chirped,
        )
    }
}

/// Common spacing of an evenly spaced run of at least 64 values.
fn uniform_step(us: &[f64]) -> Option<f64> {
    if us.len() < 64 {
        return None;
    }
    let n = us.len() - 1;
    let du = (us[n] - us[0]) / n as f64;
    let tol = 1e-9 * du.abs();
    let even = us
        .iter()
        .enumerate()
        .all(|(i, u)| (u - (us[0] + i as f64 * du)).abs() <= tol);
    (du != 0.0 && even).then_some(du)
}
