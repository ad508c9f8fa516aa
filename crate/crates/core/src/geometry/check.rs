use super::scenario::{Scenario, MAGNIFICATION_TOLERANCE};

/// Relative tolerance on the thin-lens relation.
pub const THIN_LENS_TOLERANCE: f64 = 1e-9;
/// Largest Fresnel number treated as far field.
pub const FRAUNHOFER_LIMIT: f64 = 0.1;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GeometryCheckKind {
    ThinLens,
    Magnification,
    Fraunhofer,
}

#[derive(Debug, Clone, PartialEq)]
pub struct GeometryCheck {
    pub kind: GeometryCheckKind,
    pub name: &'static str,
    /// Residual (thin lens, magnification) or Fresnel number.
    pub value: f64,
    pub limit: f64,
    pub pass: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct GeometryReport {
    pub checks: Vec<GeometryCheck>,
}

impl GeometryReport {
    pub fn get(&self, kind: GeometryCheckKind) -> &GeometryCheck {
        self.checks
            .iter()
            .find(|c| c.kind == kind)
            .expect("every check kind is always reported")
    }

    pub fn all_pass(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }
}

/// Fresnel number of the slit image over the ghost-to-diffraction gap.
pub fn fresnel_number(s: &Scenario) -> f64 {
    let half = s.image_half_width();
    half * half / (s.lambda * s.gap())
}

/// Thin-lens, magnification and far-field checks. Failures are reported,
/// never raised.
pub fn validate_geometry(s: &Scenario) -> GeometryReport {
    let s_i = s.d1 + s.d2;
    let inv_f = 1.0 / s.f_l1;
    let thin_lens = (1.0 / s.s_o + 1.0 / s_i - inv_f).abs() / inv_f;
    let mag = s.imaging_magnification();
    let mag_residual = (s.m - mag).abs() / mag;
    let n_f = fresnel_number(s);
    GeometryReport {
        checks: vec![
            GeometryCheck {
                kind: GeometryCheckKind::ThinLens,
                name: "thin lens 1/s_o + 1/(d1+d2) = 1/f",
                value: thin_lens,
                limit: THIN_LENS_TOLERANCE,
                pass: thin_lens <= THIN_LENS_TOLERANCE,
            },
            GeometryCheck {
                kind: GeometryCheckKind::Magnification,
                name: "magnification m = (d1+d2)/s_o",
                value: mag_residual,
                limit: MAGNIFICATION_TOLERANCE,
                pass: mag_residual <= MAGNIFICATION_TOLERANCE,
            },
            GeometryCheck {
                kind: GeometryCheckKind::Fraunhofer,
                name: "Fresnel number (m w/2)^2 / (lambda (d3-d2))",
                value: n_f,
                limit: FRAUNHOFER_LIMIT,
                pass: n_f < FRAUNHOFER_LIMIT,
            },
        ],
    }
}
