use std::fmt;
use std::str::FromStr;

use super::scenario::Scenario;
use crate::error::{Error, Result};

/// Built-in scenario configurations, one per reproduced figure.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Preset {
    Fig3NoSlit,
    Fig3Slit,
    Fig4,
    Fig5,
    Fig6NoSlit,
    Fig6Slit,
    Fig8,
    Fig9NoSlit,
    Fig9Slit,
    Custom,
}

impl Preset {
    pub const ALL: [Preset; 10] = [
        Preset::Fig3NoSlit,
        Preset::Fig3Slit,
        Preset::Fig4,
        Preset::Fig5,
        Preset::Fig6NoSlit,
        Preset::Fig6Slit,
        Preset::Fig8,
        Preset::Fig9NoSlit,
        Preset::Fig9Slit,
        Preset::Custom,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Preset::Fig3NoSlit => "fig3_noslit",
            Preset::Fig3Slit => "fig3_slit",
            Preset::Fig4 => "fig4",
            Preset::Fig5 => "fig5",
            Preset::Fig6NoSlit => "fig6_noslit",
            Preset::Fig6Slit => "fig6_slit",
            Preset::Fig8 => "fig8",
            Preset::Fig9NoSlit => "fig9_noslit",
            Preset::Fig9Slit => "fig9_slit",
            Preset::Custom => "custom",
        }
    }

    pub fn is_large_aperture(self) -> bool {
        matches!(
            self,
            Preset::Fig5
                | Preset::Fig6NoSlit
                | Preset::Fig6Slit
                | Preset::Fig8
                | Preset::Fig9NoSlit
                | Preset::Fig9Slit
        )
    }

    pub fn has_signal_slit(self) -> bool {
        matches!(self, Preset::Fig3Slit | Preset::Fig6Slit | Preset::Fig9Slit)
    }

    /// One-line description including where each non-obvious value comes from.
    pub fn provenance(self) -> &'static str {
        match self {
            Preset::Fig3NoSlit => {
                "published geometry, integrating idler detector, no signal slit (diffraction plane)"
            }
            Preset::Fig3Slit => "published geometry with a 160 um slit in the signal ghost plane",
            Preset::Fig4 => {
                "published geometry, ghost plane, integrating and point idler detectors"
            }
            Preset::Fig5 => {
                "d2 = 149 mm (5x aperture), d1 held at 255 mm so m = 0.404; ghost plane"
            }
            Preset::Fig6NoSlit => {
                "large aperture, d3 - d2 kept at 500 mm; diffraction plane, no signal slit"
            }
            Preset::Fig6Slit => "large aperture with a 160 um signal slit; diffraction plane",
            Preset::Fig8 => "large aperture, point idler detector, ghost plane (erf profile)",
            Preset::Fig9NoSlit => {
                "large aperture, point idler detector, diffraction plane, no signal slit"
            }
            Preset::Fig9Slit => {
                "large aperture, point idler detector, diffraction plane, 160 um signal slit"
            }
            Preset::Custom => "published geometry as a starting point for --set overrides",
        }
    }

    pub fn scenario(self) -> Scenario {
        let mut s = if self.is_large_aperture() {
            large_aperture()
        } else {
            published()
        };
        if self.has_signal_slit() {
            s.signal_slit = Some(s.w);
        }
        s
    }
}

/// Wavelength assumed for the degenerate pair (not stated with the geometry).
pub const DEFAULT_LAMBDA: f64 = 702e-9;
/// Half the 3 mm pump diameter at the 1/e² intensity point.
pub const DEFAULT_PUMP_RADIUS: f64 = 1.5e-3;
pub const DEFAULT_SLIT_WIDTH: f64 = 160e-6;
/// Collector focal length; no reported quantity depends on it.
pub const DEFAULT_COLLECTOR_FOCAL: f64 = 0.1;

fn published() -> Scenario {
    let d1 = 0.255;
    let d2 = 0.745;
    let s_o = 1.0;
    Scenario {
        lambda: DEFAULT_LAMBDA,
        a_p: DEFAULT_PUMP_RADIUS,
        d1,
        d2,
        d3: 1.245,
        s_o,
        f_l1: 0.5,
        f_c: DEFAULT_COLLECTOR_FOCAL,
        m: (d1 + d2) / s_o,
        w: DEFAULT_SLIT_WIDTH,
        signal_slit: None,
    }
}

fn large_aperture() -> Scenario {
    let mut s = published();
    s.d2 = 0.149;
    s.d3 = 0.649;
    s.m = s.imaging_magnification();
    s
}

impl fmt::Display for Preset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Preset {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Preset::ALL
            .iter()
            .copied()
            .find(|p| p.name() == s)
            .ok_or_else(|| Error::UnknownPreset(s.to_owned()))
    }
}

/// Resolves a preset by name and applies `key=value` overrides.
pub fn build_scenario<S: AsRef<str>>(preset_name: &str, overrides: &[S]) -> Result<Scenario> {
    let preset: Preset = preset_name.parse()?;
    preset.scenario().with_overrides(overrides)
}
