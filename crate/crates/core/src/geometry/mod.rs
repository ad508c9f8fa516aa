//! Experiment parameters, named presets and geometric consistency checks.

mod check;
mod grid;
mod preset;
mod scenario;

pub use check::{
    fresnel_number, validate_geometry, GeometryCheck, GeometryCheckKind, GeometryReport,
    FRAUNHOFER_LIMIT, THIN_LENS_TOLERANCE,
};
pub use grid::{GridSpec, MIN_GRID_POINTS};
pub use preset::{
    build_scenario, Preset, DEFAULT_COLLECTOR_FOCAL, DEFAULT_LAMBDA, DEFAULT_PUMP_RADIUS,
    DEFAULT_SLIT_WIDTH,
};
pub use scenario::{Scenario, MAGNIFICATION_TOLERANCE};

#[cfg(test)]
mod tests {
    use super::*;
    use crate::error::Error;

    const NONE: [&str; 0] = [];

    #[test]
    fn fig3_noslit_preset() {
        let s = build_scenario("fig3_noslit", &NONE).unwrap();
        assert_eq!(s.d2, 0.745);
        assert_eq!(s.w, 160e-6);
        assert_eq!(s.signal_slit, None);
        assert_eq!(s.lambda, 702e-9);
        assert_eq!(s.a_p, 1.5e-3);
        assert!((s.m - 1.0).abs() < 1e-15);
    }

    #[test]
    fn fig6_noslit_preset() {
        let s = build_scenario("fig6_noslit", &NONE).unwrap();
        assert_eq!(s.d2, 0.149);
        assert_eq!(s.d3, 0.649);
        assert!((s.m - 0.404).abs() < 1e-12);
        assert!((s.gap() - 0.5).abs() < 1e-12);
    }

    #[test]
    fn slit_presets_use_idler_width() {
        for name in ["fig3_slit", "fig6_slit", "fig9_slit"] {
            let s = build_scenario(name, &NONE).unwrap();
            assert_eq!(s.signal_slit, Some(s.w));
        }
    }

    #[test]
    fn zero_width_rejected() {
        let err = build_scenario("fig3_noslit", &["w=0"]).unwrap_err();
        assert!(matches!(err, Error::Invariant(ref m) if m.contains('w')));
    }

    #[test]
    fn bad_names_rejected() {
        assert!(matches!(
            build_scenario("fig7", &NONE),
            Err(Error::UnknownPreset(_))
        ));
        assert!(matches!(
            build_scenario("fig4", &["zeta=1"]),
            Err(Error::UnknownField(_))
        ));
        assert!(build_scenario("fig4", &["w"]).is_err());
        assert!(build_scenario("fig4", &["w=abc"]).is_err());
    }

    #[test]
    fn d3_must_exceed_d2() {
        assert!(build_scenario("fig4", &["d3=0.7"]).is_err());
    }

    #[test]
    fn geometry_override_recomputes_m() {
        let s = build_scenario("custom", &["d2=0.149", "d3=0.649"]).unwrap();
        assert!((s.m - 0.404).abs() < 1e-12);
        // An explicit, inconsistent m is an invariant violation.
        assert!(build_scenario("custom", &["d2=0.149", "m=1"]).is_err());
    }

    #[test]
    fn presets_are_deterministic_and_consistent() {
        for p in Preset::ALL {
            let a = build_scenario(p.name(), &NONE).unwrap();
            let b = build_scenario(p.name(), &NONE).unwrap();
            assert_eq!(a, b);
            assert_eq!(format!("{a:?}"), format!("{b:?}"));
            assert!(
                (a.m - (a.d1 + a.d2) / a.s_o).abs() <= MAGNIFICATION_TOLERANCE * a.m,
                "{p}"
            );
        }
    }

    #[test]
    fn published_geometry_passes_all_checks() {
        let s = Preset::Fig3NoSlit.scenario();
        let r = validate_geometry(&s);
        assert!(r.all_pass(), "{r:?}");
        let nf = r.get(GeometryCheckKind::Fraunhofer).value;
        // (80e-6)² / (702e-9 · 0.5)
        assert!((nf - 0.018_233_618_233_618).abs() < 1e-12);
    }

    #[test]
    fn large_aperture_fails_only_thin_lens() {
        for p in Preset::ALL.iter().filter(|p| p.is_large_aperture()) {
            let r = validate_geometry(&p.scenario());
            assert!(!r.get(GeometryCheckKind::ThinLens).pass);
            assert!(r.get(GeometryCheckKind::Magnification).pass);
            assert!(r.get(GeometryCheckKind::Fraunhofer).pass);
        }
    }

    #[test]
    fn kv_round_trip_is_exact() {
        for p in Preset::ALL {
            let s = p.scenario();
            let text = format!("# preset {p}\n{}", s.to_kv_string());
            let back: Scenario = text.parse().unwrap();
            assert_eq!(s, back);
        }
    }

    #[test]
    fn kv_rejects_unknown_and_missing_keys() {
        let s = Preset::Fig4.scenario();
        let text = s.to_kv_string();
        assert!(format!("{text}extra = 1\n").parse::<Scenario>().is_err());
        let partial: String = text.lines().skip(1).map(|l| format!("{l}\n")).collect();
        assert!(partial.parse::<Scenario>().is_err());
        assert!("lambda 1".parse::<Scenario>().is_err());
    }
}
