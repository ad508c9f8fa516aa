//! Cross-module physical properties of the assembled counting rates.

use ghostsim::biphoton::{
    default_diffraction_grid, default_ghost_grid, FieldPath, Plane, Resolution,
};
use ghostsim::detection::{CcrSolver, DetectorModel, IntegratingMethod, Methods, PointMethod};
use ghostsim::geometry::{GridSpec, Preset};
use ghostsim::numerics::fwhm;
use ghostsim::oracle::{compare_profiles, AnalyticLaw};
use proptest::prelude::*;

fn solver() -> CcrSolver {
    CcrSolver::default()
}

#[test]
fn far_field_and_fresnel_agree_at_large_aperture() {
    let s = Preset::Fig9NoSlit.scenario();
    let g = default_diffraction_grid(&s, &Resolution::default()).unwrap();
    let fresnel = solver()
        .diffraction_point(&s, &g, PointMethod::Fresnel)
        .unwrap();
    let far = solver()
        .diffraction_point(&s, &g, PointMethod::Fraunhofer)
        .unwrap();
    let (a, b) = (fresnel.fwhm.fwhm, far.fwhm.fwhm);
    assert!((a - b).abs() < 0.01 * a, "{a} vs {b}");
}

#[test]
fn large_aperture_diffraction_follows_gaussian_law() {
    let s = Preset::Fig6NoSlit.scenario();
    let g = default_diffraction_grid(&s, &Resolution::default()).unwrap();
    let p = solver()
        .diffraction_integrating(&s, &g, IntegratingMethod::Parseval)
        .unwrap();
    let law = AnalyticLaw::DiffractionGaussian.evaluate(&s, &g).unwrap();
    let dev = compare_profiles(&p.profile, &law, 1e-2).unwrap();
    assert!(dev < 0.02, "{dev}");
    let w = fwhm(&law).unwrap().fwhm;
    assert!((p.fwhm.fwhm - w).abs() < 2e-3 * w);
}

#[test]
fn focal_plane_decomposition_rebuilds_integrating_pattern() {
    let s = Preset::Fig6NoSlit.scenario();
    let res = Resolution::default();
    let g = GridSpec::symmetric(default_diffraction_grid(&s, &res).unwrap().x_max(), 513).unwrap();
    let reach = 3.0 * s.lambda * s.f_c / s.ghost_blur();
    let samples: Vec<f64> = (0..=120)
        .map(|i| -reach + 2.0 * reach * i as f64 / 120.0)
        .collect();
    let sum = solver().decompose_incoherent_sum(&s, &samples, &g).unwrap();
    let whole = solver()
        .diffraction_integrating(&s, &g, IntegratingMethod::Parseval)
        .unwrap();
    let (a, b) = (sum.sum.fwhm.fwhm, whole.fwhm.fwhm);
    assert!((a - b).abs() < 5e-3 * b, "{a} vs {b}");

    // Mirror symmetry: the pattern for -x_D1 is the reflection of the one
    // for +x_D1. Centroids oscillate with x_D1 rather than track it.
    let k = &sum.components;
    let n = k.len();
    for i in 0..n / 2 {
        let (a, b) = (&k[i], &k[n - 1 - i]);
        assert!((a.x_d1 + b.x_d1).abs() < 1e-15);
        assert!((a.centroid + b.centroid).abs() < 1e-9 * g.x_max(), "{i}");
        let (va, vb) = (
            a.intensity.as_intensity().unwrap(),
            b.intensity.as_intensity().unwrap(),
        );
        let m = va.len();
        for j in 0..m {
            assert!((va[j] - vb[m - 1 - j]).abs() < 1e-9);
        }
    }
}

#[test]
fn collector_focal_length_drops_out_of_direct_sum() {
    let s = Preset::Fig4.scenario();
    let mut t = s;
    t.f_c *= 4.0;
    let res = Resolution {
        ghost_points: 257,
        ..Resolution::default()
    };
    let sv = CcrSolver::new(res, FieldPath::SemiAnalytic);
    let g = default_ghost_grid(&s, &res).unwrap();
    let a = sv
        .ghost_integrating(&s, &g, IntegratingMethod::Direct)
        .unwrap();
    let b = sv
        .ghost_integrating(&t, &g, IntegratingMethod::Direct)
        .unwrap();
    assert!(compare_profiles(&a.profile, &b.profile, 1e-9).unwrap() < 1e-12);
}

#[test]
fn signal_slit_barely_matters_at_large_aperture() {
    for model in [DetectorModel::Integrating, DetectorModel::Point] {
        let open = Preset::Fig6NoSlit.scenario();
        let slit = Preset::Fig6Slit.scenario();
        let a = solver()
            .profile(&open, Plane::Diffraction, model, Methods::default(), None)
            .unwrap();
        let b = solver()
            .profile(&slit, Plane::Diffraction, model, Methods::default(), None)
            .unwrap();
        let (a, b) = (a.fwhm.fwhm, b.fwhm.fwhm);
        assert!(b >= a && b < 1.01 * a, "{model}: {a} vs {b}");
    }
}

#[test]
fn slit_widens_baseline_pattern() {
    let a = solver()
        .profile(
            &Preset::Fig3NoSlit.scenario(),
            Plane::Diffraction,
            DetectorModel::Integrating,
            Methods::default(),
            None,
        )
        .unwrap();
    let b = solver()
        .profile(
            &Preset::Fig3Slit.scenario(),
            Plane::Diffraction,
            DetectorModel::Integrating,
            Methods::default(),
            None,
        )
        .unwrap();
    assert!(b.fwhm.fwhm > 1.5 * a.fwhm.fwhm);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    /// The point-detector ghost image is the erf-difference law for any
    /// slit width and pump radius.
    #[test]
    fn ghost_point_is_erf_law(w in 40e-6..400e-6f64, a_p in 0.5e-3..3e-3f64) {
        let s = Preset::Fig4.scenario().with_overrides(&[format!("w={w:e}"), format!("a_p={a_p:e}")]).unwrap();
        let res = Resolution { ghost_points: 401, ..Resolution::default() };
        let g = default_ghost_grid(&s, &res).unwrap();
        let p = CcrSolver::new(res, FieldPath::SemiAnalytic).ghost_point(&s, &g).unwrap();
        let law = AnalyticLaw::GhostErf.evaluate(&s, &g).unwrap();
        prop_assert!(compare_profiles(&p.profile, &law, 1e-6).unwrap() < 1e-6);
    }

    /// Integrating and point ghost images are even in x and peak at 1.
    #[test]
    fn ghost_images_are_even(w in 40e-6..400e-6f64, d1 in 0.1..0.5f64) {
        let s = Preset::Fig5.scenario().with_overrides(&[format!("w={w:e}"), format!("d1={d1:e}")]).unwrap();
        let res = Resolution { ghost_points: 201, slit_panels: 128, ..Resolution::default() };
        let g = default_ghost_grid(&s, &res).unwrap();
        let sv = CcrSolver::new(res, FieldPath::SemiAnalytic);
        for p in [sv.ghost_point(&s, &g).unwrap(), sv.ghost_integrating(&s, &g, IntegratingMethod::Parseval).unwrap()] {
            let v = p.intensity();
            let n = v.len();
            prop_assert_eq!(v.iter().cloned().fold(0.0, f64::max), 1.0);
            for i in 0..n / 2 {
                prop_assert!((v[i] - v[n - 1 - i]).abs() < 1e-9);
            }
        }
    }
}
