//! Correlated counting rates for integrating and point idler detectors in
//! the ghost-image and diffraction planes.

mod decompose;
mod focal;

use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;
use rayon::prelude::*;

pub use decompose::{FocalComponent, IncoherentSum};
pub use focal::FOCAL_CAPTURE_MIN;

use crate::biphoton::{default_grid, fresnel_step, FieldPath, Plane, Resolution, SignalField};
use crate::error::{Error, Result};
use crate::geometry::{fresnel_number, GridSpec, Scenario, FRAUNHOFER_LIMIT};
use crate::numerics::{fwhm, peak_normalize, FwhmResult, SampledProfile};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum DetectorModel {
    /// Collects every idler photon across the collector focal plane.
    Integrating,
    /// Single point in the collector focal plane.
    Point,
}

impl DetectorModel {
    pub fn name(self) -> &'static str {
        match self {
            DetectorModel::Integrating => "integrating",
            DetectorModel::Point => "point",
        }
    }
}

impl fmt::Display for DetectorModel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for DetectorModel {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "integrating" => Ok(DetectorModel::Integrating),
            "point" => Ok(DetectorModel::Point),
            _ => Err(Error::InvalidArgument(format!(
                "unknown detector `{s}` (expected integrating or point)"
            ))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DetectorSpec {
    pub model: DetectorModel,
    /// Focal-plane position of a point detector, meters.
    pub x_d1: f64,
    /// Focal-plane window of the direct integrating method, meters.
    pub focal_plane_grid: Option<GridSpec>,
}

impl DetectorSpec {
    pub fn integrating() -> Self {
        Self {
            model: DetectorModel::Integrating,
            x_d1: 0.0,
            focal_plane_grid: None,
        }
    }

    pub fn point() -> Self {
        Self {
            model: DetectorModel::Point,
            x_d1: 0.0,
            focal_plane_grid: None,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum IntegratingMethod {
    /// Integrates |g|² over a focal-plane window, plus the analytic tail.
    Direct,
    /// ∫_slit |f|² dx_1i, equal to the focal-plane integral by Parseval.
    #[default]
    Parseval,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum PointMethod {
    /// Far-field Fourier transform of the ghost-plane amplitude.
    Fraunhofer,
    /// Fresnel propagation of the ghost-plane amplitude.
    #[default]
    Fresnel,
}

impl IntegratingMethod {
    pub fn name(self) -> &'static str {
        match self {
            Self::Direct => "direct",
            Self::Parseval => "parseval",
        }
    }
}

impl PointMethod {
    pub fn name(self) -> &'static str {
        match self {
            Self::Fraunhofer => "fraunhofer",
            Self::Fresnel => "fresnel",
        }
    }
}

impl FromStr for IntegratingMethod {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "direct" => Ok(Self::Direct),
            "parseval" => Ok(Self::Parseval),
            _ => Err(Error::InvalidArgument(format!(
                "unknown integrating method `{s}` (expected direct or parseval)"
            ))),
        }
    }
}

impl FromStr for PointMethod {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "fraunhofer" => Ok(Self::Fraunhofer),
            "fresnel" => Ok(Self::Fresnel),
            _ => Err(Error::InvalidArgument(format!(
                "unknown point method `{s}` (expected fraunhofer or fresnel)"
            ))),
        }
    }
}

/// Method choice for each detector model.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct Methods {
    pub integrating: IntegratingMethod,
    pub point: PointMethod,
}

/// Peak-normalized correlated counting rate and its FWHM.
#[derive(Debug, Clone, PartialEq)]
pub struct CcrProfile {
    pub scenario: Scenario,
    pub detector: DetectorSpec,
    pub plane: Plane,
    pub profile: SampledProfile,
    pub fwhm: FwhmResult,
    /// Share of the idler energy inside the focal window (direct method only).
    pub focal_capture: Option<f64>,
}

impl CcrProfile {
    fn new(
        scenario: &Scenario,
        detector: DetectorSpec,
        plane: Plane,
        grid: GridSpec,
        raw: Vec<f64>,
    ) -> Result<Self> {
        // Round-off can leave a sum of squares a hair below zero.
        let raw = raw.into_iter().map(|v| v.max(0.0)).collect();
        let profile = peak_normalize(&SampledProfile::intensity(grid, raw)?)?;
        let fwhm = fwhm(&profile)?;
        Ok(Self {
            scenario: *scenario,
            detector,
            plane,
            profile,
            fwhm,
            focal_capture: None,
        })
    }

    pub fn grid(&self) -> &GridSpec {
        self.profile.grid()
    }

    pub fn intensity(&self) -> &[f64] {
        self.profile
            .as_intensity()
            .expect("CcrProfile always holds intensities")
    }
}

/// Assembles counting-rate profiles at a fixed resolution and field path.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct CcrSolver {
    pub resolution: Resolution,
    pub path: FieldPath,
}

impl CcrSolver {
    pub fn new(resolution: Resolution, path: FieldPath) -> Self {
        Self { resolution, path }
    }

    fn field<'a>(&self, s: &'a Scenario) -> Result<SignalField<'a>> {
        s.validate()?;
        SignalField::new(s, self.path, &self.resolution)
    }

    pub fn ghost_integrating(
        &self,
        s: &Scenario,
        grid: &GridSpec,
        method: IntegratingMethod,
    ) -> Result<CcrProfile> {
        self.integrating(s, Plane::Ghost, grid, method, None)
    }

    pub fn diffraction_integrating(
        &self,
        s: &Scenario,
        grid: &GridSpec,
        method: IntegratingMethod,
    ) -> Result<CcrProfile> {
        self.integrating(s, Plane::Diffraction, grid, method, None)
    }

    /// Direct integrating detector over an explicit focal-plane window
    /// (meters); the window must straddle x_D1 = 0.
    pub fn integrating_direct_on(
        &self,
        s: &Scenario,
        plane: Plane,
        grid: &GridSpec,
        focal_plane_grid: &GridSpec,
    ) -> Result<CcrProfile> {
        self.integrating(
            s,
            plane,
            grid,
            IntegratingMethod::Direct,
            Some(*focal_plane_grid),
        )
    }

    fn integrating(
        &self,
        s: &Scenario,
        plane: Plane,
        grid: &GridSpec,
        method: IntegratingMethod,
        focal: Option<GridSpec>,
    ) -> Result<CcrProfile> {
        let field = self.field(s)?;
        let mut detector = DetectorSpec::integrating();
        let (raw, captured) = match method {
            IntegratingMethod::Parseval => (parseval(&field, plane, grid)?, None),
            IntegratingMethod::Direct => {
                let focal = match focal {
                    Some(g) => g,
                    None => focal::default_focal_grid(s, &self.resolution)?,
                };
                detector.focal_plane_grid = Some(focal);
                let r = focal::direct(&field, plane, grid, &focal)?;
                (r.intensity, Some(r.captured))
            }
        };
        let mut out = CcrProfile::new(s, detector, plane, *grid, raw)?;
        out.focal_capture = captured;
        Ok(out)
    }

    /// Any plane and detector on `grid`, or on the plane's default grid.
    pub fn profile(
        &self,
        s: &Scenario,
        plane: Plane,
        model: DetectorModel,
        methods: Methods,
        grid: Option<&GridSpec>,
    ) -> Result<CcrProfile> {
        let grid = match grid {
            Some(g) => *g,
            None => default_grid(s, plane, &self.resolution)?,
        };
        match (plane, model) {
            (Plane::Ghost, DetectorModel::Integrating) => {
                self.ghost_integrating(s, &grid, methods.integrating)
            }
            (Plane::Ghost, DetectorModel::Point) => self.ghost_point(s, &grid),
            (Plane::Diffraction, DetectorModel::Integrating) => {
                self.diffraction_integrating(s, &grid, methods.integrating)
            }
            (Plane::Diffraction, DetectorModel::Point) => {
                self.diffraction_point(s, &grid, methods.point)
            }
        }
    }

    /// |g(0, x_2s)|².
    pub fn ghost_point(&self, s: &Scenario, grid: &GridSpec) -> Result<CcrProfile> {
        let field = self.field(s)?;
        let g = field.g_ghost(&[0.0], &grid.points(), self.resolution.slit_panels)?;
        let raw = g[0].iter().map(|a| a.norm_sqr()).collect();
        CcrProfile::new(s, DetectorSpec::point(), Plane::Ghost, *grid, raw)
    }

    /// |g(0, x_3s)|², from g(0, x_2s) restricted to [-b, b].
    pub fn diffraction_point(
        &self,
        s: &Scenario,
        grid: &GridSpec,
        method: PointMethod,
    ) -> Result<CcrProfile> {
        let field = self.field(s)?;
        let amplitude = match method {
            PointMethod::Fraunhofer => {
                let nf = fresnel_number(s);
                if nf >= FRAUNHOFER_LIMIT {
                    return Err(Error::NotFraunhofer { fresnel_number: nf });
                }
                let t = field.transport(*grid, false)?;
                let g = field.g_ghost(&[0.0], t.nodes(), self.resolution.slit_panels)?;
                t.apply(&g[0])
            }
            PointMethod::Fresnel => {
                let t = field.transport(*grid, true)?;
                let nodes = t.nodes();
                let g = field.g_ghost(&[0.0], nodes, self.resolution.slit_panels)?;
                let node_grid = GridSpec::new(nodes[0], nodes[nodes.len() - 1], nodes.len())?;
                let ghost = SampledProfile::amplitude(node_grid, g.into_iter().next().unwrap())?;
                let out = fresnel_step(&ghost, s.lambda, s.gap(), grid)?;
                out.as_amplitude().unwrap().to_vec()
            }
        };
        let raw = amplitude.iter().map(|a| a.norm_sqr()).collect();
        CcrProfile::new(s, DetectorSpec::point(), Plane::Diffraction, *grid, raw)
    }

    /// Diffraction-plane patterns of individual focal-plane points and their
    /// quadrature-weighted sum.
    pub fn decompose_incoherent_sum(
        &self,
        s: &Scenario,
        x_d1_samples: &[f64],
        grid: &GridSpec,
    ) -> Result<IncoherentSum> {
        let field = self.field(s)?;
        decompose::decompose(&field, x_d1_samples, grid)
    }

    /// FWHM on the default grid for each value of one scenario field.
    ///
    /// Each value goes through the override path, so changing d1, d2 or s_o
    /// also moves m.
    #[allow(clippy::too_many_arguments)]
    pub fn sweep(
        &self,
        base: &Scenario,
        field: &str,
        values: &[f64],
        plane: Plane,
        model: DetectorModel,
        methods: Methods,
    ) -> Result<Vec<(f64, f64)>> {
        base.get(field)?;
        if values.len() < 2 {
            return Err(Error::InvalidArgument(
                "a sweep needs at least two values".into(),
            ));
        }
        values
            .iter()
            .map(|&v| {
                if !v.is_finite() {
                    return Err(Error::InvalidValue {
                        key: field.to_owned(),
                        value: v.to_string(),
                        reason: "not finite".into(),
                    });
                }
                let s = base.with_overrides(&[format!("{field}={v:e}")])?;
                let p = self.profile(&s, plane, model, methods, None)?;
                Ok((v, p.fwhm.fwhm))
            })
            .collect()
    }
}

/// ∫_slit |f(x_1i, x)|² dx_1i.
fn parseval(field: &SignalField<'_>, plane: Plane, grid: &GridSpec) -> Result<Vec<f64>> {
    let (x1s, w1) = field.slit_rule(field.resolution().slit_panels)?;
    let rows: Vec<Vec<Complex64>> = match plane {
        Plane::Ghost => {
            let x2s = grid.points();
            x1s.par_iter().map(|&x1| field.f_ghost(x1, &x2s)).collect()
        }
        Plane::Diffraction => {
            let t = field.transport(*grid, true)?;
            x1s.par_iter()
                .map(|&x1| t.apply(&field.f_ghost(x1, t.nodes())))
                .collect()
        }
    };
    let mut acc = vec![0.0; grid.n_points()];
    for (row, w) in rows.iter().zip(&w1) {
        for (a, v) in acc.iter_mut().zip(row) {
            *a += w * v.norm_sqr();
        }
    }
    Ok(acc)
}

pub fn ccr_ghost_integrating(
    s: &Scenario,
    grid: &GridSpec,
    method: IntegratingMethod,
) -> Result<CcrProfile> {
    CcrSolver::default().ghost_integrating(s, grid, method)
}

pub fn ccr_ghost_point(s: &Scenario, grid: &GridSpec) -> Result<CcrProfile> {
    CcrSolver::default().ghost_point(s, grid)
}

pub fn ccr_diffraction_integrating(
    s: &Scenario,
    grid: &GridSpec,
    method: IntegratingMethod,
) -> Result<CcrProfile> {
    CcrSolver::default().diffraction_integrating(s, grid, method)
}

pub fn ccr_diffraction_point(
    s: &Scenario,
    grid: &GridSpec,
    method: PointMethod,
) -> Result<CcrProfile> {
    CcrSolver::default().diffraction_point(s, grid, method)
}

pub fn decompose_incoherent_sum(
    s: &Scenario,
    x_d1_samples: &[f64],
    grid: &GridSpec,
) -> Result<IncoherentSum> {
    CcrSolver::default().decompose_incoherent_sum(s, x_d1_samples, grid)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::biphoton::{default_diffraction_grid, default_ghost_grid};
    use crate::geometry::Preset;

    fn coarse() -> Resolution {
        Resolution {
            ghost_points: 513,
            diffraction_points: 513,
            ..Resolution::default()
        }
    }

    #[test]
    fn names_parse() {
        for d in [DetectorModel::Integrating, DetectorModel::Point] {
            assert_eq!(d.name().parse::<DetectorModel>().unwrap(), d);
        }
        assert!("area".parse::<DetectorModel>().is_err());
        assert_eq!(
            "direct".parse::<IntegratingMethod>().unwrap(),
            IntegratingMethod::Direct
        );
        assert_eq!(
            "fresnel".parse::<PointMethod>().unwrap(),
            PointMethod::Fresnel
        );
        assert!("fft".parse::<PointMethod>().is_err());
    }

    #[test]
    fn profiles_are_normalized_and_even() {
        let res = coarse();
        let solver = CcrSolver::new(res, FieldPath::SemiAnalytic);
        let s = Preset::Fig4.scenario();
        let g = default_ghost_grid(&s, &res).unwrap();
        for p in [
            solver.ghost_point(&s, &g).unwrap(),
            solver
                .ghost_integrating(&s, &g, IntegratingMethod::Parseval)
                .unwrap(),
        ] {
            let peak = p.intensity().iter().copied().fold(0.0, f64::max);
            assert_eq!(peak, 1.0);
            assert!(p.intensity().iter().all(|v| *v >= 0.0));
            assert!(p.profile.symmetry_error() < 1e-6);
        }
    }

    #[test]
    fn fraunhofer_refused_in_near_field() {
        let s = build(&["w=2e-3"]);
        let g = default_diffraction_grid(&s, &coarse()).unwrap();
        let err = CcrSolver::new(coarse(), FieldPath::SemiAnalytic)
            .diffraction_point(&s, &g, PointMethod::Fraunhofer)
            .unwrap_err();
        assert!(matches!(err, Error::NotFraunhofer { .. }));
    }

    fn build(overrides: &[&str]) -> Scenario {
        crate::geometry::build_scenario("fig3_noslit", overrides).unwrap()
    }

    #[test]
    fn signal_slit_never_narrows_diffraction() {
        let res = coarse();
        let solver = CcrSolver::new(res, FieldPath::SemiAnalytic);
        for (open, slit) in [
            (Preset::Fig3NoSlit, Preset::Fig3Slit),
            (Preset::Fig6NoSlit, Preset::Fig6Slit),
        ] {
            let (a, b) = (open.scenario(), slit.scenario());
            let g = default_diffraction_grid(&a, &res).unwrap();
            let wa = solver
                .diffraction_integrating(&a, &g, IntegratingMethod::Parseval)
                .unwrap()
                .fwhm
                .fwhm;
            let wb = solver
                .diffraction_integrating(&b, &g, IntegratingMethod::Parseval)
                .unwrap()
                .fwhm
                .fwhm;
            assert!(wb >= wa, "{open}: {wb} < {wa}");
        }
    }
}
