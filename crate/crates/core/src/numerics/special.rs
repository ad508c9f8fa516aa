use num_complex::Complex64;

use crate::error::{Error, Result};

const SQRT_PI: f64 = 1.772_453_850_905_516;
const FRAC_2_SQRT_PI: f64 = std::f64::consts::FRAC_2_SQRT_PI;

/// Beyond this |x|, 1 - erf(x) < 2.2e-17 and erf rounds to ±1.
const ERF_SATURATION: f64 = 6.0;

/// Below this |x| the power series is used, above it the continued fraction
/// for erfc.
const SERIES_LIMIT: f64 = 2.5;

/// Standard error function, absolute error a few ulps.
pub fn erf(x: f64) -> f64 {
    if x.is_nan() {
        return f64::NAN;
    }
    let ax = x.abs();
    let v = if ax >= ERF_SATURATION {
        1.0
    } else if ax < SERIES_LIMIT {
        erf_series(ax)
    } else {
        1.0 - erfc_fraction(ax)
    };
    v.copysign(x)
}

/// erf(x) = 2/√π · e^{-x²} · Σ (2x²)ⁿ x / (1·3·…·(2n+1)). Every term is
/// positive, so nothing cancels.
fn erf_series(x: f64) -> f64 {
    let two_x2 = 2.0 * x * x;
    let mut term = x;
    let mut sum = x;
    let mut n = 0u32;
    loop {
        n += 1;
        term *= two_x2 / f64::from(2 * n + 1);
        sum += term;
        if term <= sum * 1e-17 {
            break;
        }
    }
    (FRAC_2_SQRT_PI * (-x * x).exp() * sum).min(1.0)
}

/// erfc(x) = e^{-x²}/√π · 1/(x + (1/2)/(x + 1/(x + (3/2)/(x + …)))),
/// evaluated from the tail; 80 levels converge to full precision for x ≥ 2.5.
fn erfc_fraction(x: f64) -> f64 {
    let mut t = x;
    for n in (1..=80u32).rev() {
        t = x + 0.5 * f64::from(n) / t;
    }
    (-x * x).exp() / (SQRT_PI * t)
}

/// `∫₀ᵘ e^{-y²} dy`, the error function without its 2/√π normalization.
pub fn erf_halfnorm(u: f64) -> f64 {
    0.5 * SQRT_PI * erf(u)
}

/// `∫ exp(-x²/a²)·exp(-iqx) dx` over the real line: a·√π·exp(-q²a²/4).
pub fn gaussian_fourier_amplitude(a: f64, q: f64) -> Result<Complex64> {
    if !(a > 0.0 && a.is_finite()) {
        return Err(Error::InvalidArgument(format!(
            "Gaussian radius must be > 0, got {a:e}"
        )));
    }
    let e = 0.5 * q * a;
    Ok(Complex64::new(a * SQRT_PI * (-e * e).exp(), 0.0))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::integrate_complex;

    /// Independent oracle: Simpson on the defining integral.
    fn erf_halfnorm_by_quadrature(u: f64) -> f64 {
        if u == 0.0 {
            return 0.0;
        }
        let v = integrate_complex(
            |y| Complex64::new((-y * y).exp(), 0.0),
            0.0,
            u.abs(),
            20_000,
        )
        .unwrap()
        .re;
        v.copysign(u)
    }

    #[test]
    fn halfnorm_values() {
        assert_eq!(erf_halfnorm(0.0), 0.0);
        assert!((erf_halfnorm(10.0) - 0.886_226_925_452_758).abs() < 1e-15);
        assert!((erf_halfnorm(1.0) - 0.746_824_132_812_427).abs() < 1e-13);
        assert!((erf(1.0) - 0.842_700_792_949_715).abs() < 1e-14);
    }

    #[test]
    fn matches_quadrature_oracle() {
        for i in 0..=80 {
            let u = -4.0 + 0.1 * i as f64;
            let want = erf_halfnorm_by_quadrature(u);
            let got = erf_halfnorm(u);
            assert!((got - want).abs() < 1e-12, "u={u}: {got} vs {want}");
        }
    }

    #[test]
    fn saturation_is_continuous() {
        let below = erf(ERF_SATURATION - 1e-9);
        assert!((below - 1.0).abs() < 1e-15);
        assert_eq!(erf(ERF_SATURATION), 1.0);
        assert_eq!(erf(-50.0), -1.0);
        assert!(erf(f64::NAN).is_nan());
    }

    #[test]
    fn gaussian_fourier_closed_form() {
        let a = 1.5e-3;
        let z = gaussian_fourier_amplitude(a, 0.0).unwrap();
        assert!((z.re - a * SQRT_PI).abs() < 1e-18);
        assert_eq!(z.im, 0.0);
        let q = 2.0 / a;
        let z = gaussian_fourier_amplitude(a, q).unwrap();
        assert!((z.re - a * SQRT_PI * (-1.0f64).exp()).abs() < 1e-18);
        assert!(gaussian_fourier_amplitude(0.0, 1.0).is_err());
        assert!(gaussian_fourier_amplitude(-1.0, 1.0).is_err());
    }

    #[test]
    fn gaussian_fourier_matches_quadrature() {
        let a = 1.5e-3;
        for &q in &[0.0, 1000.0, 2500.0, 3900.0] {
            let num = integrate_complex(
                |x| Complex64::new(0.0, -q * x).exp() * (-(x / a) * (x / a)).exp(),
                -6.0 * a,
                6.0 * a,
                2048,
            )
            .unwrap();
            let exact = gaussian_fourier_amplitude(a, q).unwrap();
            assert!((num - exact).norm() <= 1e-9 * exact.norm(), "q={q}");
        }
    }

    proptest::proptest! {
        #[test]
        fn halfnorm_is_odd(u in -8.0f64..8.0) {
            proptest::prop_assert!((erf_halfnorm(-u) + erf_halfnorm(u)).abs() <= 1e-15);
        }

        #[test]
        fn erf_is_monotone(u in -6.5f64..6.5, du in 1e-6f64..0.1) {
            proptest::prop_assert!(erf(u + du) >= erf(u));
        }

        #[test]
        fn gaussian_fourier_agrees_with_wide_quadrature(qa in -10.0f64..10.0) {
            let a = 1.5e-3;
            let q = qa / a;
            let num = integrate_complex(
                |x| Complex64::new(0.0, -q * x).exp() * (-(x / a) * (x / a)).exp(),
                -8.0 * a,
                8.0 * a,
                1024,
            )
            .unwrap();
            let exact = gaussian_fourier_amplitude(a, q).unwrap();
            let err = (num - exact).norm();
            // Past |qa| = 6 the value drops under e^-9 of the summed terms and
            // rounding in the sum dominates; compare absolutely there.
            if qa.abs() <= 6.0 {
                proptest::prop_assert!(err <= 1e-9 * exact.norm());
            } else {
                proptest::prop_assert!(err <= 1e-14 * a * SQRT_PI);
            }
        }
    }
}
