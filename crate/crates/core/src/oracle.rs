//! Closed-form results used to check the numerical assembly: the Gaussian
//! diffraction-plane law and the erf-difference ghost profile.

use std::f64::consts::{PI, SQRT_2};

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::geometry::{GridSpec, Scenario};
use crate::numerics::{erf_halfnorm, peak_normalize, SampledProfile};

/// Gaussian 1/e half-width of the integrating-detector diffraction pattern,
/// (d3 - d2)·a_p/(√2·d2). Depends on neither λ nor w.
pub fn sigma_d(s: &Scenario) -> Result<f64> {
    if !(s.d3 > s.d2) {
        return Err(Error::Invariant(format!(
            "d3 ({:e}) must exceed d2 ({:e})",
            s.d3, s.d2
        )));
    }
    Ok((s.d3 - s.d2) * s.a_p / (SQRT_2 * s.d2))
}

/// Effective numerical-aperture half-angle a_p/(√2·d2), radians.
pub fn na_angle(s: &Scenario) -> f64 {
    s.a_p / (SQRT_2 * s.d2)
}

/// FWHM of exp(-(x/σ)²).
pub fn gaussian_fwhm(sigma: f64) -> f64 {
    2.0 * 2f64.ln().sqrt() * sigma
}

/// exp(-(x/σ_d)²) on the grid.
pub fn analytic_diffraction_ccr(s: &Scenario, grid: &GridSpec) -> Result<SampledProfile> {
    let sd = sigma_d(s)?;
    let v = grid
        .points()
        .iter()
        .map(|x| (-(x / sd) * (x / sd)).exp())
        .collect();
    peak_normalize(&SampledProfile::intensity(*grid, v)?)
}

/// Point-detector ghost amplitude E(c(x + m·w/2)) - E(c(x - m·w/2)), with
/// E = ∫₀ᵘ e^{-y²}dy and c = π·a_p/(λ·d2).
pub fn erf_ghost_profile(s: &Scenario, grid: &GridSpec) -> Result<SampledProfile> {
    erf_ghost_profile_with(s, grid, erf_halfnorm)
}

/// As [`erf_ghost_profile`] with a caller-supplied E, so a degraded special
/// function can be substituted to confirm the validation suite notices.
pub fn erf_ghost_profile_with(
    s: &Scenario,
    grid: &GridSpec,
    e: impl Fn(f64) -> f64,
) -> Result<SampledProfile> {
    let c = PI * s.a_p / (s.lambda * s.d2);
    let half = s.image_half_width();
    let v = grid
        .points()
        .iter()
        .map(|x| Complex64::new(e(c * (x + half)) - e(c * (x - half)), 0.0))
        .collect();
    SampledProfile::amplitude(*grid, v)
}

/// Largest |a - b| / max(a, b) over points where max(a, b) > threshold.
///
/// Amplitude profiles are compared through their squared moduli.
pub fn compare_profiles(a: &SampledProfile, b: &SampledProfile, threshold: f64) -> Result<f64> {
    if a.grid() != b.grid() {
        return Err(Error::GridMismatch);
    }
    let (ia, ib) = (a.intensities(), b.intensities());
    Ok(ia
        .iter()
        .zip(&ib)
        .filter_map(|(&x, &y)| {
            let m = x.max(y);
            (m > threshold).then(|| (x - y).abs() / m)
        })
        .fold(0.0, f64::max))
}

/// Named closed-form intensity law.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum AnalyticLaw {
    /// Integrating detector, diffraction plane, no signal slit.
    DiffractionGaussian,
    /// Point detector at x_D1 = 0, ghost plane.
    GhostErf,
}

impl AnalyticLaw {
    pub fn name(self) -> &'static str {
        match self {
            AnalyticLaw::DiffractionGaussian => "diffraction_gaussian",
            AnalyticLaw::GhostErf => "ghost_erf",
        }
    }

    /// Scenario fields the law reads.
    pub fn parameters(self) -> &'static [&'static str] {
        match self {
            AnalyticLaw::DiffractionGaussian => &["a_p", "d2", "d3"],
            AnalyticLaw::GhostErf => &["lambda", "a_p", "d2", "m", "w"],
        }
    }

    /// Peak-normalized intensity on the grid.
    pub fn evaluate(self, s: &Scenario, grid: &GridSpec) -> Result<SampledProfile> {
        match self {
            AnalyticLaw::DiffractionGaussian => analytic_diffraction_ccr(s, grid),
            AnalyticLaw::GhostErf => peak_normalize(&erf_ghost_profile(s, grid)?.to_intensity()),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::Preset;
    use crate::numerics::fwhm;

    const SQRT_PI: f64 = 1.772_453_850_905_516;

    #[test]
    fn sigma_d_values() {
        let s = Preset::Fig3NoSlit.scenario();
        let sd = sigma_d(&s).unwrap();
        assert!((sd - 0.7119e-3).abs() < 0.0001e-3, "{sd}");
        assert!((gaussian_fwhm(sd) - 1.185e-3).abs() < 0.001e-3);
        let l = Preset::Fig6NoSlit.scenario();
        let sd = sigma_d(&l).unwrap();
        assert!((sd - 3.559e-3).abs() < 0.001e-3, "{sd}");
        assert!((gaussian_fwhm(sd) - 5.93e-3).abs() < 0.01e-3);
    }

    #[test]
    fn sigma_d_degenerates_and_rejects() {
        let mut s = Preset::Fig4.scenario();
        s.d3 = s.d2 * (1.0 + 1e-12);
        assert!(sigma_d(&s).unwrap() < 1e-14);
        s.d3 = s.d2;
        assert!(sigma_d(&s).is_err());
    }

    #[test]
    fn na_angle_values() {
        let b = na_angle(&Preset::Fig4.scenario());
        let l = na_angle(&Preset::Fig5.scenario());
        assert!((b - 1.4237e-3).abs() < 1e-7);
        // 745/149 is exactly 5.
        assert!((l / b - 5.0).abs() < 1e-12);
        assert!((l - 7.1185e-3).abs() < 1e-7, "{l}");
        for p in Preset::ALL {
            let s = p.scenario();
            let lhs = sigma_d(&s).unwrap();
            let rhs = s.gap() * na_angle(&s);
            assert!((lhs - rhs).abs() <= 1e-15 * lhs);
        }
    }

    #[test]
    fn sigma_d_ignores_lambda_and_width() {
        let s = Preset::Fig3NoSlit.scenario();
        let mut t = s;
        t.lambda = 500e-9;
        t.w = 320e-6;
        assert_eq!(sigma_d(&s).unwrap(), sigma_d(&t).unwrap());
        assert!(!AnalyticLaw::DiffractionGaussian
            .parameters()
            .contains(&"lambda"));
        assert!(!AnalyticLaw::DiffractionGaussian.parameters().contains(&"w"));
    }

    #[test]
    fn diffraction_law_points() {
        let s = Preset::Fig3NoSlit.scenario();
        let sd = sigma_d(&s).unwrap();
        let g = GridSpec::new(-sd, sd, 17).unwrap();
        let p = analytic_diffraction_ccr(&s, &g).unwrap();
        let v = p.as_intensity().unwrap();
        assert!((v[8] - 1.0).abs() < 1e-15);
        assert!((v[16] - (-1.0f64).exp()).abs() < 1e-15);
    }

    #[test]
    fn erf_ghost_peak_and_wide_slit_limit() {
        let s = Preset::Fig4.scenario();
        let g = GridSpec::symmetric(1e-4, 17).unwrap();
        let g0 = GridSpec::new(0.0, 1e-4, 16).unwrap();
        let p = erf_ghost_profile(&s, &g0).unwrap();
        let c = PI * s.a_p / (s.lambda * s.d2);
        let want = 2.0 * erf_halfnorm(s.image_half_width() * c);
        assert!((p.as_amplitude().unwrap()[0].re - want).abs() < 1e-15);
        let mut wide = s;
        wide.w = 1.0;
        let p = erf_ghost_profile(&wide, &g).unwrap();
        for a in p.as_amplitude().unwrap() {
            assert!((a.re - SQRT_PI).abs() < 1e-14);
        }
    }

    #[test]
    fn erf_ghost_fwhm_baseline() {
        let s = Preset::Fig4.scenario();
        let g = GridSpec::symmetric(600e-6, 6001).unwrap();
        let w = fwhm(&AnalyticLaw::GhostErf.evaluate(&s, &g).unwrap())
            .unwrap()
            .fwhm;
        assert!((w - 155e-6).abs() < 1e-6, "{w}");
    }

    #[test]
    fn erf_ghost_sharp_image_limit() {
        // Pump radius ×100 shrinks the blur 100-fold.
        let mut s = Preset::Fig5.scenario();
        s.a_p *= 100.0;
        let mw = 2.0 * s.image_half_width();
        let g = GridSpec::symmetric(mw, 8001).unwrap();
        let w = fwhm(&AnalyticLaw::GhostErf.evaluate(&s, &g).unwrap())
            .unwrap()
            .fwhm;
        assert!((w - mw).abs() < 0.01 * mw, "{w} vs {mw}");
    }

    #[test]
    fn erf_ghost_narrow_slit_is_gaussian() {
        let mut s = Preset::Fig4.scenario();
        let ue = s.ghost_blur();
        s.w = ue / 100.0;
        let g = GridSpec::symmetric(2.0 * ue, 401).unwrap();
        let p = erf_ghost_profile(&s, &g).unwrap();
        let a = p.as_amplitude().unwrap();
        let peak = a.iter().map(|v| v.norm()).fold(0.0, f64::max);
        for (v, x) in a.iter().zip(g.points()) {
            let gauss = (-(x / ue) * (x / ue)).exp();
            assert!(
                (v.norm() / peak - gauss).abs() < 0.01 * gauss.max(1e-2),
                "{x}"
            );
        }
    }

    #[test]
    fn compare_profiles_contract() {
        let s = Preset::Fig4.scenario();
        let g = GridSpec::symmetric(4e-4, 101).unwrap();
        let p = AnalyticLaw::GhostErf.evaluate(&s, &g).unwrap();
        assert_eq!(compare_profiles(&p, &p, 0.0).unwrap(), 0.0);
        let other = GridSpec::symmetric(5e-4, 101).unwrap();
        let q = AnalyticLaw::GhostErf.evaluate(&s, &other).unwrap();
        assert!(matches!(
            compare_profiles(&p, &q, 0.0),
            Err(Error::GridMismatch)
        ));
    }
}
