//! Biphoton mode functions in the ghost-image and diffraction planes and the
//! Fresnel transport step between planes.

mod chirpz;
mod field;
mod transport;

use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;

pub(crate) use field::SignalField;
pub use field::OPEN_APERTURE_BLUR_MULTIPLE;
pub use transport::fresnel_step;

use crate::error::{Error, Result};
use crate::geometry::{GridSpec, Scenario};
use crate::numerics::SampledProfile;

/// Signal-arm observation plane.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Plane {
    /// z = d2, conjugate to the idler slit.
    Ghost,
    /// z = d3, downstream of the ghost plane.
    Diffraction,
}

impl Plane {
    pub fn name(self) -> &'static str {
        match self {
            Plane::Ghost => "ghost",
            Plane::Diffraction => "diffraction",
        }
    }
}

impl fmt::Display for Plane {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Plane {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "ghost" => Ok(Plane::Ghost),
            "diffraction" => Ok(Plane::Diffraction),
            _ => Err(Error::InvalidArgument(format!(
                "unknown plane `{s}` (expected ghost or diffraction)"
            ))),
        }
    }
}

/// How the crystal-surface integral is evaluated.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum FieldPath {
    /// Closed-form Gaussian Fourier transform.
    #[default]
    SemiAnalytic,
    /// Simpson quadrature across ±8 pump radii.
    FullNumeric,
}

impl FieldPath {
    pub fn name(self) -> &'static str {
        match self {
            FieldPath::SemiAnalytic => "semi-analytic",
            FieldPath::FullNumeric => "full-numeric",
        }
    }
}

impl fmt::Display for FieldPath {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for FieldPath {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "semi-analytic" => Ok(FieldPath::SemiAnalytic),
            "full-numeric" => Ok(FieldPath::FullNumeric),
            _ => Err(Error::InvalidArgument(format!(
                "unknown field path `{s}` (expected semi-analytic or full-numeric)"
            ))),
        }
    }
}

/// Panel and sample counts shared by every mode-function evaluation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Resolution {
    pub ghost_points: usize,
    pub diffraction_points: usize,
    /// Simpson panels across the idler slit.
    pub slit_panels: usize,
    pub crystal_panels: usize,
    /// Floor on the ghost-to-diffraction quadrature panel count.
    pub transport_panels: usize,
    /// Largest kernel phase advance per transport panel, radians.
    pub phase_step: f64,
    /// Focal-plane half-window of the direct integrating detector, in units
    /// of 1/u_e in ν = x_D1/(λ f_c).
    pub focal_window: f64,
    /// Focal-plane samples per 1/w in ν.
    pub focal_density: f64,
}

impl Default for Resolution {
    fn default() -> Self {
        Self {
            ghost_points: 2048,
            diffraction_points: 2048,
            slit_panels: 512,
            crystal_panels: 1024,
            transport_panels: 1024,
            phase_step: PI / 8.0,
            focal_window: 10.0,
            focal_density: 4.0,
        }
    }
}

impl Resolution {
    /// Every count doubled and the phase step halved.
    pub fn doubled(&self) -> Self {
        Self {
            ghost_points: 2 * self.ghost_points,
            diffraction_points: 2 * self.diffraction_points,
            slit_panels: 2 * self.slit_panels,
            crystal_panels: 2 * self.crystal_panels,
            transport_panels: 2 * self.transport_panels,
            phase_step: 0.5 * self.phase_step,
            focal_window: self.focal_window,
            focal_density: 2.0 * self.focal_density,
        }
    }
}

/// Ghost-plane grid ±(m·w/2 + 6·u_e).
pub fn default_ghost_grid(s: &Scenario, res: &Resolution) -> Result<GridSpec> {
    GridSpec::symmetric(
        s.image_half_width() + 6.0 * s.ghost_blur(),
        res.ghost_points,
    )
}

/// Diffraction-plane grid ±4·max(σ_d, λ(d3 - d2)/(m·w)).
pub fn default_diffraction_grid(s: &Scenario, res: &Resolution) -> Result<GridSpec> {
    let sigma_d = s.gap() * s.a_p / (std::f64::consts::SQRT_2 * s.d2);
    let fourier = s.lambda * s.gap() / (s.m * s.w);
    GridSpec::symmetric(4.0 * sigma_d.max(fourier), res.diffraction_points)
}

pub fn default_grid(s: &Scenario, plane: Plane, res: &Resolution) -> Result<GridSpec> {
    match plane {
        Plane::Ghost => default_ghost_grid(s, res),
        Plane::Diffraction => default_diffraction_grid(s, res),
    }
}

/// A single mode-function evaluation: f(x_1i, ·) in one plane.
#[derive(Debug, Clone, PartialEq)]
pub struct ModeFunctionRequest {
    pub scenario: Scenario,
    pub plane: Plane,
    pub x_1i: f64,
    pub grid: GridSpec,
    pub path: FieldPath,
}

impl ModeFunctionRequest {
    pub fn evaluate(&self, res: &Resolution) -> Result<SampledProfile> {
        self.scenario.validate()?;
        if !self.x_1i.is_finite() {
            return Err(Error::InvalidArgument("x_1i must be finite".into()));
        }
        let field = SignalField::new(&self.scenario, self.path, res)?;
        match self.plane {
            Plane::Ghost => {
                SampledProfile::amplitude(self.grid, field.f_ghost(self.x_1i, &self.grid.points()))
            }
            Plane::Diffraction => {
                let t = field.transport(self.grid, true)?;
                let ghost = field.f_ghost(self.x_1i, t.nodes());
                SampledProfile::amplitude(self.grid, t.apply(&ghost))
            }
        }
    }
}

/// f(x_1i, x_2s) in the ghost plane: the pump Gaussian's Fourier transform
/// at spatial frequency (m·x_1i + x_2s)/(λ d2), times the d2 chirp.
pub fn mode_f_ghost(
    s: &Scenario,
    x_1i: f64,
    grid: &GridSpec,
    path: FieldPath,
) -> Result<SampledProfile> {
    ModeFunctionRequest {
        scenario: *s,
        plane: Plane::Ghost,
        x_1i,
        grid: *grid,
        path,
    }
    .evaluate(&Resolution::default())
}

/// f(x_1i, x_3s) in the diffraction plane: the ghost-plane mode carried
/// over d3 - d2 through the aperture [-b, b].
pub fn mode_f_diffraction(
    s: &Scenario,
    x_1i: f64,
    grid: &GridSpec,
    path: FieldPath,
) -> Result<SampledProfile> {
    ModeFunctionRequest {
        scenario: *s,
        plane: Plane::Diffraction,
        x_1i,
        grid: *grid,
        path,
    }
    .evaluate(&Resolution::default())
}

/// g(x_D1, ·): the mode function summed coherently across the idler slit
/// with the focal-plane phase tilt e^{-2πi x_1i x_D1/λf_c}.
pub fn mode_g(
    s: &Scenario,
    x_d1: f64,
    plane: Plane,
    grid: &GridSpec,
    path: FieldPath,
) -> Result<SampledProfile> {
    mode_g_with(s, x_d1, plane, grid, path, &Resolution::default())
}

pub fn mode_g_with(
    s: &Scenario,
    x_d1: f64,
    plane: Plane,
    grid: &GridSpec,
    path: FieldPath,
    res: &Resolution,
) -> Result<SampledProfile> {
    s.validate()?;
    if !x_d1.is_finite() {
        return Err(Error::InvalidArgument("x_D1 must be finite".into()));
    }
    let field = SignalField::new(s, path, res)?;
    let nu = x_d1 / (s.lambda * s.f_c);
    let values = match plane {
        Plane::Ghost => field.g_ghost(&[nu], &grid.points(), res.slit_panels)?,
        Plane::Diffraction => {
            // Both integrals are finite sums, so transporting the slit sum
            // equals summing the transported modes term by term.
            let t = field.transport(*grid, true)?;
            let ghost = field.g_ghost(&[nu], t.nodes(), res.slit_panels)?;
            vec![t.apply(&ghost[0])]
        }
    };
    SampledProfile::amplitude(*grid, values.into_iter().next().expect("one row"))
}
